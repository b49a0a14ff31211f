use std::fmt::Write as _;

use serde_json::json;

use hermdecay::bargmann::ray_bound_check;
use hermdecay::gaussians::closed_form_coefficients;
use hermdecay::hermite::{hermite_coefficients_with, required_order};
use hermdecay::{decay_rate, gauss_hermite, solve_lemma21, CoefficientSequence, TestFunction};

use crate::{emit, fmt_num, CliError, CliResult, CoeffsArgs, ConstantsArgs, Format, FunctionSelector, Method, RayArgs};

const LN_10: f64 = std::f64::consts::LN_10;

pub fn constants_json(args: &ConstantsArgs) -> CliResult<serde_json::Value> {
    let k = solve_lemma21(&args.pair.pair()?)?;
    let r = k.residuals();
    Ok(json!({
        "a": k.a,
        "b": k.b,
        "mu": k.mu,
        "nu": k.nu,
        "A": k.rate,
        "tau": k.tau,
        "theta0": k.theta0,
        "theta1": k.theta1,
        "m": k.m,
        "residual_rate_ab": r.rate_ab,
        "residual_rate_mu_nu": r.rate_mu_nu,
        "residual_theta0_sin": r.theta0_sin,
        "residual_theta0_cos": r.theta0_cos,
        "residual_theta1_sin": r.theta1_sin,
        "residual_theta1_cos": r.theta1_cos,
        "ordering_holds": r.ordering_holds,
        "near_degenerate": k.near_degenerate,
    }))
}

pub fn cmd_constants(args: &ConstantsArgs) -> CliResult<()> {
    let doc = constants_json(args)?;
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let map = doc.as_object().expect("object");
            let header: Vec<&str> = map.keys().map(String::as_str).collect();
            let row: Vec<String> = map
                .values()
                .map(|v| match v.as_f64() {
                    Some(x) => fmt_num(x),
                    None => v.to_string(),
                })
                .collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
    };
    emit(args.output.as_deref(), &text)
}

pub fn coefficient_table(args: &CoeffsArgs) -> CliResult<(CoefficientSequence, f64)> {
    let pair = args.pair.pair()?;
    let rate = decay_rate(&pair)?;
    let selector: FunctionSelector = args.function.parse()?;
    let f = selector.build(&pair)?;
    let seq = match (args.method, &f) {
        (Method::Closed, TestFunction::Gaussian(g)) => closed_form_coefficients(g, args.n_max)?,
        (Method::Closed, TestFunction::Expansion(seq)) => {
            let mut entries = seq.entries().to_vec();
            entries.resize(args.n_max + 1, hermdecay::LogPolar::ZERO);
            CoefficientSequence::new(seq.kind(), entries)
        }
        (Method::Quadrature, _) => {
            let order = args.quad_order.unwrap_or_else(|| required_order(args.n_max));
            let rule = gauss_hermite(order)?;
            hermite_coefficients_with(&f, args.n_max, &rule, args.allow_low_order)?
        }
        (Method::Closed, TestFunction::Sampled(_)) => unreachable!("selectors never build sampled functions"),
    };
    Ok((seq, rate))
}

pub fn coefficients_csv(seq: &CoefficientSequence, rate: f64) -> String {
    let mut out = String::from("n,log10_abs,phase_rad,log10_envelope\n");
    for (n, c) in seq.entries().iter().enumerate() {
        let nf = n as f64;
        let envelope = if n == 0 {
            0.0
        } else {
            (-0.25 * nf.ln() + 0.5 * nf * rate.ln()) / LN_10
        };
        let _ = writeln!(
            out,
            "{n},{},{},{}",
            fmt_num(c.log_abs / LN_10),
            fmt_num(c.phase),
            fmt_num(envelope)
        );
    }
    out
}

pub fn cmd_coeffs(args: &CoeffsArgs) -> CliResult<()> {
    let (seq, rate) = coefficient_table(args)?;
    emit(args.output.as_deref(), &coefficients_csv(&seq, rate))
}

pub fn cmd_bargmann_ray(args: &RayArgs) -> CliResult<()> {
    let pair = args.pair.pair()?;
    let k = solve_lemma21(&pair)?;
    let theta = match args.theta.as_str() {
        "peak" => k.peak_angle(),
        "theta0" => k.theta0,
        "theta1" => k.theta1,
        s => s
            .parse::<f64>()
            .map_err(|_| CliError::Input(format!("invalid --theta '{s}'")))?,
    };
    let r_max = args.r_max.unwrap_or_else(|| (120.0 / k.rate).sqrt());
    let f = args.function.parse::<FunctionSelector>()?.build(&pair)?;
    let rep = ray_bound_check(&f, &pair, theta, r_max, args.samples)?;
    let mut out = String::from("r,log10_abs_Bf,log10_bound,excess\n");
    for ((r, v), bnd) in rep.r_samples.iter().zip(&rep.log_transform).zip(&rep.log_bound) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_num(*r),
            fmt_num(v / LN_10),
            fmt_num(bnd / LN_10),
            fmt_num((v - bnd) / LN_10)
        );
    }
    emit(args.output.as_deref(), &out)?;
    eprintln!(
        "max_excess={} bound={} theta={} C={}",
        fmt_num(rep.max_excess / LN_10),
        rep.applicable_bound.as_str(),
        fmt_num(theta),
        fmt_num(rep.constant)
    );
    Ok(())
}
