use super::expfam::{cumulant, moment_series, natural_from_moment};
use super::{Family, MomentParam, SampleKind, SampleSet};
use crate::error::{Error, Result};
use crate::special::SeriesPolicy;

/// Maximum-likelihood estimate of the natural parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MleFit {
    pub theta: f64,
    /// Empirical moment `η̂ = -(1/n) Σ ln x_i`.
    pub eta: MomentParam,
    pub n: usize,
    /// `Σ ln p_θ̂(x_i) = n (θ̂ η̂ - F(θ̂))`.
    pub log_likelihood: f64,
}

/// Solves `η(θ̂) = η̂` for an iid sample.
///
/// A sample with every observation at the bottom of the support (all ones
/// for the zeta distribution) has no finite maximizer and returns
/// [`Error::DegenerateSample`].
pub fn mle_fit(family: Family, data: &SampleSet, tol: f64, policy: &SeriesPolicy) -> Result<MleFit> {
    family.validate()?;
    let expected = match family {
        Family::Pareto => SampleKind::Continuous,
        _ => SampleKind::Discrete,
    };
    if data.kind() != expected {
        return Err(Error::domain(format!("{} samples required for the {family} family", kind_name(expected))));
    }
    if let Some(k0) = family.offset() {
        if data.min() < k0 as f64 {
            return Err(Error::domain(format!("observations must be at least {k0}")));
        }
    }
    let eta_hat = -data.mean_log();
    let sup = family.offset().map_or(0.0, |k0| -(k0 as f64).ln());
    if eta_hat >= sup {
        return Err(Error::DegenerateSample(format!(
            "every observation sits at the lower support edge (eta = {eta_hat})"
        )));
    }
    let eta = MomentParam::new(eta_hat);
    let theta = match natural_from_moment(family, eta, tol, policy) {
        Ok(t) => t,
        // The inverse only fails to bracket when η̂ is within a rounding
        // of the supremum, which is the same degenerate situation.
        Err(Error::Convergence(msg)) if msg.contains("above") => {
            return Err(Error::DegenerateSample(format!("eta = {eta_hat} is at the moment boundary")))
        }
        Err(e) => return Err(e),
    };
    debug_assert!(family == Family::Pareto || (moment_series(family, theta, policy)?.0 - eta_hat).abs() <= tol);
    let n = data.len();
    let log_likelihood = n as f64 * (theta * eta_hat - cumulant(family, theta, policy)?);
    Ok(MleFit { theta, eta, n, log_likelihood })
}

fn kind_name(kind: SampleKind) -> &'static str {
    match kind {
        SampleKind::Discrete => "integer",
        SampleKind::Continuous => "real",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{sample_pareto, sample_zeta, ParetoParam, ZetaParam};

    fn pol() -> SeriesPolicy {
        SeriesPolicy::default()
    }

    #[test]
    fn all_twos() {
        let data = SampleSet::discrete(vec![2; 10]).unwrap();
        let fit = mle_fit(Family::Zeta, &data, 1e-12, &pol()).unwrap();
        let eta = moment_series(Family::Zeta, fit.theta, &pol()).unwrap().0;
        assert!((eta + 2f64.ln()).abs() <= 1e-12);
        assert_eq!(fit.n, 10);
    }

    #[test]
    fn all_ones_is_degenerate() {
        let data = SampleSet::discrete(vec![1, 1, 1]).unwrap();
        assert!(matches!(mle_fit(Family::Zeta, &data, 1e-10, &pol()), Err(Error::DegenerateSample(_))));
        let data = SampleSet::discrete(vec![3, 3]).unwrap();
        let fam = Family::Generalized { k0: 3 };
        assert!(matches!(mle_fit(fam, &data, 1e-10, &pol()), Err(Error::DegenerateSample(_))));
    }

    #[test]
    fn support_and_kind_checks() {
        let data = SampleSet::discrete(vec![1, 2]).unwrap();
        assert!(matches!(mle_fit(Family::Generalized { k0: 2 }, &data, 1e-10, &pol()), Err(Error::Domain(_))));
        assert!(matches!(mle_fit(Family::Pareto, &data, 1e-10, &pol()), Err(Error::Domain(_))));
    }

    #[test]
    fn recovers_shape_from_samples() {
        let data = sample_zeta(ZetaParam::new(2.5).unwrap(), 100_000, 11).unwrap();
        let fit = mle_fit(Family::Zeta, &data, 1e-12, &pol()).unwrap();
        assert!((fit.theta - 2.5).abs() < 0.05, "{}", fit.theta);
        let data = sample_pareto(ParetoParam::new(4.0).unwrap(), 100_000, 11).unwrap();
        let fit = mle_fit(Family::Pareto, &data, 1e-12, &pol()).unwrap();
        assert!((fit.theta - 4.0).abs() < 0.05, "{}", fit.theta);
    }

    #[test]
    fn likelihood_is_maximal_at_fit() {
        let data = SampleSet::discrete(vec![1, 1, 2, 3, 1, 7, 2, 1]).unwrap();
        let fit = mle_fit(Family::Zeta, &data, 1e-13, &pol()).unwrap();
        let ll = |t: f64| data.len() as f64 * (t * fit.eta.eta - cumulant(Family::Zeta, t, &pol()).unwrap());
        assert!((ll(fit.theta) - fit.log_likelihood).abs() < 1e-12);
        assert!(ll(fit.theta + 0.01) < fit.log_likelihood);
        assert!(ll(fit.theta - 0.01) < fit.log_likelihood);
    }
}
