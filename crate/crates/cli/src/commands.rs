use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use zetadiv::divergence::oracle::{brute_force_bhattacharyya, brute_force_kl};
use zetadiv::family::{
    conjugate_value, cumulant, family_entropy, mle_fit, moment_from_natural, natural_from_moment, sample_pareto,
    sample_zeta, SampleKind,
};
use zetadiv::special::{hurwitz_zeta, zeta_even_exact};
use zetadiv::verify::{self, CheckOutcome};
use zetadiv::{
    alpha_divergence, bhattacharyya_coeff, hellinger_squared, kl_divergence, renyi, sharma_mittal, tsallis,
    DivergenceResult, Error, Family, KlMethod, ParetoParam, SampleSet, SharmaMittalSpec, ZetaParam,
};

use crate::args::{
    DivergenceArgs, FamilyArg, FitArgs, KindArg, KlMethodArg, PlotArgs, SampleArgs, TableArgs, VerifyArgs, ZetaArgs,
};
use crate::output::{sig15, OutputRecord, TableRow, Value};

/// Failures mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Usage(String),
    /// A self-check disagreed with its oracle.
    Check(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Check(_) => 1,
            CliError::Lib(e) => match e {
                Error::Domain(_) | Error::ResourceLimit { .. } | Error::Parse { .. } => 2,
                Error::DegenerateSample(_) => 3,
                Error::Convergence(_) | Error::Io(_) => 1,
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Usage(m) => format!("usage: {m}"),
            CliError::Check(m) => m.clone(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn family_of(arg: FamilyArg, k0: Option<u64>) -> CliResult<Family> {
    match (arg, k0) {
        (FamilyArg::Pareto, Some(_)) => Err(CliError::Usage("--k0 applies to the zeta family only".into())),
        (FamilyArg::Pareto, None) => Ok(Family::Pareto),
        (FamilyArg::Zeta, None | Some(1)) => Ok(Family::Zeta),
        (FamilyArg::Zeta, Some(k0)) => {
            let f = Family::Generalized { k0 };
            f.validate()?;
            Ok(f)
        }
    }
}

pub fn cmd_zeta(args: &ZetaArgs) -> CliResult<OutputRecord> {
    let policy = args.policy.policy();
    policy.validate()?;
    let k0 = args.hurwitz_k0.unwrap_or(1);
    let mut rec = OutputRecord::new("zeta").input("s", args.s);
    if args.hurwitz_k0.is_some() {
        rec = rec.input("k0", k0);
    }
    if args.exact_even {
        if args.hurwitz_k0.is_some_and(|k| k != 1) {
            return Err(CliError::Usage("--exact-even cannot be combined with --hurwitz-k0".into()));
        }
        if !(args.s > 1.0) {
            return Err(Error::domain("s must exceed 1").into());
        }
        if args.s.fract() != 0.0 || args.s % 2.0 != 0.0 || args.s > u32::MAX as f64 {
            return Err(Error::domain("exact form needs an even integer s").into());
        }
        let exact = zeta_even_exact(args.s as u32)?;
        let v = exact.to_f64();
        let mut rec = rec.value("value", v).value("exact", exact.to_string());
        rec.headline = Some(format!("{exact} = {}", sig15(v)));
        rec.certificate = Some("closed-form".into());
        rec.method = Some("bernoulli".into());
        return Ok(rec);
    }
    let z = hurwitz_zeta(args.s, k0, &policy)?;
    let mut rec = rec.value("value", z.value);
    rec.certificate = Some(z.truncation_bound.into());
    rec.method = Some(z.method.as_str().into());
    rec.terms_used = Some(z.terms_used);
    Ok(rec)
}

fn require(v: Option<f64>, flag: &str, kind: &str) -> CliResult<f64> {
    v.ok_or_else(|| CliError::Usage(format!("{kind} needs {flag}")))
}

fn reject(v: Option<f64>, flag: &str, kind: &str) -> CliResult<()> {
    match v {
        Some(_) => Err(CliError::Usage(format!("{flag} does not apply to {kind}"))),
        None => Ok(()),
    }
}

pub fn cmd_divergence(args: &DivergenceArgs) -> CliResult<OutputRecord> {
    let family = family_of(args.family, args.k0)?;
    let policy = args.policy.policy();
    policy.validate()?;
    let kind_name = match args.kind {
        KindArg::Alpha => "alpha",
        KindArg::Hellinger2 => "hellinger2",
        KindArg::SharmaMittal => "sharma-mittal",
        KindArg::Renyi => "renyi",
        KindArg::Tsallis => "tsallis",
        KindArg::Kl => "kl",
    };
    if args.kind != KindArg::Kl && args.kl_method != KlMethodArg::LogSeries {
        return Err(CliError::Usage(format!("--kl-method does not apply to {kind_name}")));
    }
    if !(args.kind == KindArg::Kl && args.kl_method == KlMethodArg::Epsilon) {
        reject(args.epsilon, "--epsilon", kind_name)?;
    }
    if args.kind != KindArg::SharmaMittal {
        reject(args.beta, "--beta", kind_name)?;
    }

    let r: DivergenceResult = match args.kind {
        KindArg::Alpha => alpha_divergence(family, args.s1, args.s2, require(args.alpha, "--alpha", kind_name)?, &policy)?,
        KindArg::Hellinger2 => {
            reject(args.alpha, "--alpha", kind_name)?;
            hellinger_squared(family, args.s1, args.s2, &policy)?
        }
        KindArg::SharmaMittal => {
            let spec = SharmaMittalSpec::new(
                require(args.alpha, "--alpha", kind_name)?,
                require(args.beta, "--beta", kind_name)?,
            )?;
            sharma_mittal(family, args.s1, args.s2, spec, &policy)?
        }
        KindArg::Renyi => renyi(family, args.s1, args.s2, require(args.alpha, "--alpha", kind_name)?, &policy)?,
        KindArg::Tsallis => tsallis(family, args.s1, args.s2, require(args.alpha, "--alpha", kind_name)?, &policy)?,
        KindArg::Kl => {
            let method = match args.kl_method {
                KlMethodArg::LogSeries => KlMethod::LogSeries,
                KlMethodArg::Entropy => KlMethod::EntropyForm,
                KlMethodArg::Mangoldt => KlMethod::MangoldtForm,
                KlMethodArg::FenchelYoung => KlMethod::FenchelYoung,
                KlMethodArg::Epsilon => {
                    let w = match (args.alpha, args.epsilon) {
                        (Some(w), None) => w,
                        (None, Some(e)) => 1.0 - e,
                        _ => {
                            return Err(CliError::Usage(
                                "the epsilon method needs exactly one of --alpha (weight on s1) or --epsilon".into(),
                            ))
                        }
                    };
                    KlMethod::EpsilonApprox(w)
                }
            };
            if !matches!(method, KlMethod::EpsilonApprox(_)) {
                reject(args.alpha, "--alpha", "this KL method")?;
            }
            kl_divergence(family, args.s1, args.s2, method, &policy)?
        }
    };

    let mut rec = OutputRecord::new(format!("divergence {kind_name}"))
        .input("family", family.to_string())
        .input("s1", args.s1)
        .input("s2", args.s2);
    if let Some(a) = r.inputs.alpha {
        rec = rec.input("alpha", a);
    }
    if let Some(b) = r.inputs.beta {
        rec = rec.input("beta", b);
    }
    rec = rec.value("value", r.value);
    if let Some(e) = &r.exact {
        rec = rec.value("exact", e.to_string());
    }
    rec.certificate = Some(match r.certificate {
        zetadiv::Certificate::ClosedForm => Value::Text("closed-form".into()),
        zetadiv::Certificate::Bound(b) => Value::Number(b),
    });
    rec.method = Some(r.method.to_string());
    rec.terms_used = Some(r.terms_used);

    if args.oracle {
        let (oracle, bound, slack) = oracle_for(args.kind, family, &r, args.oracle_terms)?;
        let diff = (r.value - oracle).abs();
        let allowed = bound + r.certificate.bound() + slack;
        rec = rec.value("oracle", oracle).value("oracle_discrepancy", diff).value("oracle_allowance", allowed);
        if !(diff <= allowed) {
            return Err(CliError::Check(format!(
                "oracle disagreement: value {} vs oracle {} (|diff| = {:e} > {:e})",
                sig15(r.value),
                sig15(oracle),
                diff,
                allowed
            )));
        }
    }
    Ok(rec)
}

/// Brute-force value, its bound and a rounding allowance for `r`.
fn oracle_for(kind: KindArg, family: Family, r: &DivergenceResult, terms: usize) -> CliResult<(f64, f64, f64)> {
    let (s1, s2) = (r.inputs.s1, r.inputs.s2);
    let eps = f64::EPSILON;
    let scale = r.value.abs().max(1.0);
    if kind == KindArg::Kl && r.method != "epsilon_approx" {
        let o = brute_force_kl(family, s1, s2, terms)?;
        return Ok((o.value, o.truncation_bound, 1e-12 * scale));
    }
    let alpha = r.inputs.alpha.unwrap_or(0.5);
    let i = brute_force_bhattacharyya(family, s1, s2, alpha, terms)?;
    let (iv, ib) = (i.value, i.truncation_bound);
    Ok(match kind {
        KindArg::Alpha | KindArg::Hellinger2 | KindArg::Kl => {
            let c = 1.0 / (alpha * (1.0 - alpha));
            (c * (1.0 - iv), c * ib, 64.0 * eps * c + 1e-12 * scale)
        }
        KindArg::Renyi => {
            let c = 1.0 / (alpha - 1.0).abs();
            (iv.ln() / (alpha - 1.0), c * ib / iv, 64.0 * eps * c + 1e-12 * scale)
        }
        KindArg::Tsallis => {
            let c = 1.0 / (alpha - 1.0).abs();
            ((iv - 1.0) / (alpha - 1.0), c * ib, 64.0 * eps * c + 1e-12 * scale)
        }
        KindArg::SharmaMittal => {
            let beta = r.inputs.beta.expect("sharma-mittal has beta");
            let p = (1.0 - beta) / (1.0 - alpha);
            let c = 1.0 / (beta - 1.0).abs();
            let v = (iv.powf(p) - 1.0) / (beta - 1.0);
            let d = c * p.abs() * iv.powf(p - 1.0);
            (v, d * ib, 64.0 * eps * (c + d) + 1e-12 * scale)
        }
    })
}

pub fn cmd_fit(args: &FitArgs) -> CliResult<OutputRecord> {
    let family = family_of(args.family, args.k0)?;
    let policy = args.policy.policy();
    policy.validate()?;
    let kind = if family == Family::Pareto { SampleKind::Continuous } else { SampleKind::Discrete };
    let data = SampleSet::from_file(&args.input, kind)?;
    let fit = mle_fit(family, &data, args.tol, &policy)?;
    let mut rec = OutputRecord::new("fit")
        .input("family", family.to_string())
        .input("input", args.input.display().to_string())
        .input("tol", args.tol)
        .value("theta", fit.theta)
        .value("eta", fit.eta.eta)
        .value("n", fit.n)
        .value("log_likelihood", fit.log_likelihood);
    rec.method = Some(if family == Family::Pareto { "closed_form" } else { "bisection" }.into());
    Ok(rec)
}

pub fn cmd_plot_cumulant(args: &PlotArgs) -> CliResult<OutputRecord> {
    let family = family_of(args.family, args.k0)?;
    let policy = args.policy.policy();
    policy.validate()?;
    if !(args.min > 1.0) {
        return Err(Error::domain("min must exceed 1").into());
    }
    if !(args.max > args.min) || !args.max.is_finite() {
        return Err(Error::domain("max must exceed min").into());
    }
    if !(args.step > 0.0) {
        return Err(Error::domain("step must be positive").into());
    }
    let n = ((args.max - args.min) / args.step + 1e-9).floor() as usize + 1;
    let mut csv = String::from("theta,F(theta)\n");
    for k in 0..n {
        let theta = args.min + k as f64 * args.step;
        let f = cumulant(family, theta, &policy)?;
        let _ = writeln!(csv, "{theta},{f}");
    }
    let mut rec = OutputRecord::new("plot-cumulant")
        .input("family", family.to_string())
        .input("min", args.min)
        .input("max", args.max)
        .input("step", args.step)
        .value("rows", n);
    match &args.out {
        Some(path) => {
            write_file(path, &csv)?;
            rec = rec.value("out", path.display().to_string());
        }
        None => print!("{csv}"),
    }
    Ok(rec)
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Lib(Error::Io(format!("{}: {e}", path.display()))))
}

pub fn cmd_table(args: &TableArgs) -> CliResult<OutputRecord> {
    let policy = args.policy.policy();
    policy.validate()?;
    let (s1, s2, alpha) = (args.s1, args.s2, args.alpha);
    let mut rows = Vec::new();
    let mut cells = |quantity: &str, note: Option<&str>, f: &dyn Fn(Family) -> zetadiv::Result<f64>| -> CliResult<()> {
        rows.push(TableRow {
            quantity: quantity.into(),
            zeta: f(Family::Zeta)?.into(),
            pareto: f(Family::Pareto)?.into(),
            note: note.map(str::to_string),
        });
        Ok(())
    };
    cells("cumulant F(s1)", None, &|fam| cumulant(fam, s1, &policy))?;
    cells("cumulant F(s2)", None, &|fam| cumulant(fam, s2, &policy))?;
    cells("moment eta(s1)", None, &|fam| Ok(moment_from_natural(fam, s1, &policy)?.eta))?;
    cells("natural theta(eta(s1))", Some("zeta: numeric inverse"), &|fam| {
        natural_from_moment(fam, moment_from_natural(fam, s1, &policy)?, 1e-14, &policy)
    })?;
    cells("entropy H(s1)", None, &|fam| Ok(family_entropy(fam, s1, &policy)?.value))?;
    cells("conjugate F*(eta(s1))", Some("zeta: numeric"), &|fam| {
        conjugate_value(fam, moment_from_natural(fam, s1, &policy)?, 1e-14, &policy)
    })?;
    cells("bhattacharyya I_alpha", None, &|fam| bhattacharyya_coeff(fam, s1, s2, alpha, &policy))?;
    cells("alpha-divergence", None, &|fam| Ok(alpha_divergence(fam, s1, s2, alpha, &policy)?.value))?;
    cells("kl(s1:s2)", None, &|fam| Ok(kl_divergence(fam, s1, s2, KlMethod::LogSeries, &policy)?.value))?;
    let mut rec = OutputRecord::new("table").input("s1", s1).input("s2", s2).input("alpha", alpha);
    rec.table = rows;
    rec.notes.push("the zeta conjugate has no closed form; it is computed by inverting the moment map".into());
    Ok(rec)
}

pub fn cmd_verify(args: &VerifyArgs) -> CliResult<(OutputRecord, bool)> {
    let outcomes: Vec<CheckOutcome> = match &args.item {
        Some(id) => match verify::run_item(id, args.perturb.as_deref())? {
            Some(o) => vec![o],
            None => {
                return Err(CliError::Usage(format!(
                    "unknown item {id}; known items: {}",
                    verify::item_ids().join(", ")
                )))
            }
        },
        None => verify::run_all(args.perturb.as_deref())?,
    };
    let mut rec = OutputRecord::new("verify");
    if let Some(p) = &args.perturb {
        rec = rec.input("perturb", p.as_str());
    }
    let mut failed = Vec::new();
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {}: computed {} published {} (|diff| {:.1e}, tol {:.0e}); oracle |diff| {:.1e} <= {:.1e}",
            o.id,
            sig15(o.computed),
            sig15(o.published),
            o.published_error(),
            o.tolerance,
            o.oracle_error(),
            o.oracle_tolerance,
        );
        if let Some(e) = &o.exact {
            let _ = write!(line, "; exact {e}");
        }
        rec.notes.push(line);
        if !o.passed {
            failed.push(o.id);
        }
    }
    rec = rec.value("passed", outcomes.len() - failed.len()).value("failed", failed.len());
    if !failed.is_empty() {
        rec.notes.push(format!("failing items: {}", failed.join(", ")));
    }
    Ok((rec, failed.is_empty()))
}

pub fn cmd_sample(args: &SampleArgs) -> CliResult<OutputRecord> {
    let set = match args.family {
        FamilyArg::Zeta => sample_zeta(ZetaParam::new(args.s)?, args.count, args.seed)?,
        FamilyArg::Pareto => sample_pareto(ParetoParam::new(args.s)?, args.count, args.seed)?,
    };
    let text = set.to_string();
    let mut rec = OutputRecord::new("sample")
        .input("s", args.s)
        .input("count", args.count)
        .input("seed", args.seed);
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            rec = rec.value("out", path.display().to_string());
        }
        None => print!("{text}"),
    }
    Ok(rec)
}
