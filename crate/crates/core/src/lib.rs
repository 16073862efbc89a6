//! Divergences between zeta distributions and between fixed-scale Pareto
//! distributions.
//!
//! Both families are one-parameter exponential families with natural
//! parameter `θ = s`, sufficient statistic `t(x) = -ln x` and cumulant
//!
//! | family  | support        | cumulant `F(θ)`  |
//! |---------|----------------|------------------|
//! | zeta    | `1, 2, 3, …`   | `ln ζ(θ)`        |
//! | Hurwitz | `k0, k0+1, …`  | `ln ζ(θ, k0)`    |
//! | Pareto  | `(1, ∞)`       | `-ln(θ - 1)`     |
//!
//! so α-divergences, Sharma–Mittal, Rényi and Tsallis divergences reduce to
//! skewed Jensen gaps of `F`, and the Kullback–Leibler divergence to a
//! Bregman divergence of `F`. The [`special`] module supplies the zeta-type
//! series those closed forms need, each with a truncation certificate; the
//! [`divergence::oracle`] module supplies brute-force counterparts.

pub mod divergence;
pub mod error;
pub mod family;
pub mod quadrature;
pub mod special;
pub mod verify;

pub use divergence::{
    alpha_divergence, bhattacharyya_coeff, hellinger_squared, jensen_skewed, kl_divergence,
    kl_from_mangoldt, renyi, sharma_mittal, tsallis, Certificate, DivergenceInputs,
    DivergenceKind, DivergenceResult, ExactAlphaDivergence, KlMethod, SharmaMittalSpec,
};
pub use error::{Error, Result};
pub use family::{Family, GeneralizedZetaParam, MomentParam, ParetoParam, SampleSet, ZetaParam};
pub use special::{ExactRational, PiPowerValue, SeriesMethod, SeriesPolicy, SeriesValue};
