//! Zeta-type special functions on the real half-line `s > 1`, with
//! truncation certificates, plus exact rational evaluation at even integers.

pub mod bernoulli;
pub mod exact;
pub mod mangoldt;
pub mod series;
pub mod zeta;

pub use bernoulli::{bernoulli_numbers, bernoulli_numbers_capped, zeta_even_exact, DEFAULT_BERNOULLI_CAP};
pub use exact::{ExactRational, PiPowerValue};
pub use mangoldt::{euler_product_zeta, literal_mangoldt_sum, von_mangoldt, zeta_log_derivative, mangoldt_series};
pub use series::{SeriesMethod, SeriesPolicy, SeriesValue};
pub use zeta::{hurwitz_log_weighted_series, hurwitz_zeta, hurwitz_zeta_difference, log_weighted_zeta_series, zeta_real};
