//! Subcommand implementations. Each builds its full payload in memory, so a
//! failing command never emits a partial document.

use xpoint::{
    builtin_case, compare_with_tolerance, decompose, fit_linear, generate_synthetic, load_dataset,
    plan_target, xpoint as crossing, AffineFunction, Approach, CaseId, Constraints, Decomposition,
    GroundTruth, LinearFit, NonlinearChoiceModel, SyntheticSpec, TableSchema,
};

use crate::chart::{self, Marker, Series};
use crate::cli::{
    ArgmaxArgs, ChartArg, CompareArgs, DecomposeArgs, FitArgs, PlanArgs, PlotArgs, SimulateArgs,
    SourceArgs, XpointArgs,
};
use crate::payload::{fmt_sig, Doc};

/// Exit classes: 1 usage, 2 data, 3 numeric.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<xpoint::Error> for CliError {
    fn from(err: xpoint::Error) -> Self {
        use xpoint::Error::*;
        let code = match err {
            Io(_)
            | Csv(_)
            | MissingColumn { .. }
            | InvalidCell { .. }
            | EmptyDataset
            | InsufficientData { .. }
            | DegenerateDesign { .. } => 2,
            ParallelLines { .. }
            | NoInteriorMaximum { .. }
            | IndistinguishableConstraints { .. }
            | NonPositiveScale { .. } => 3,
            _ => 1,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: 1,
        message: message.into(),
    }
}

/// What a command hands back: a key/value payload or pre-rendered text.
pub enum Output {
    Doc(Doc),
    Raw(String),
}

struct Source {
    label: String,
    dec: Decomposition<f64>,
    default_eps: Option<f64>,
}

fn resolve_source(args: &SourceArgs) -> Result<Source, CliError> {
    if let Some(case) = &args.case {
        let id: CaseId = case.parse()?;
        let p = builtin_case::<f64>(id);
        let constraints = Constraints::with_lambda(p.eps_u0, p.eps_n0, args.lambda.unwrap_or(1.0))?;
        let dec = decompose(&LinearFit::exact(p.alpha, p.beta), &constraints)?;
        Ok(Source {
            label: id.as_str().to_string(),
            dec,
            default_eps: Some(p.eps_ref_default),
        })
    } else {
        let (Some(alpha), Some(beta), Some(eps_u0), Some(eps_n0)) =
            (args.alpha, args.beta, args.eps_u0, args.eps_n0)
        else {
            return Err(usage(
                "provide --case or all of --alpha, --beta, --eps-u0, --eps-n0",
            ));
        };
        let constraints = Constraints::with_lambda(eps_u0, eps_n0, args.lambda.unwrap_or(1.0))?;
        let dec = decompose(&LinearFit::exact(alpha, beta), &constraints)?;
        Ok(Source {
            label: "parameters".to_string(),
            dec,
            default_eps: None,
        })
    }
}

/// Case id or an inline `alpha,beta,eps_u0,eps_n0[,lambda]` tuple.
fn resolve_side(text: &str) -> Result<(String, Decomposition<f64>), CliError> {
    if let Ok(id) = text.parse::<CaseId>() {
        return Ok((
            id.as_str().to_string(),
            builtin_case::<f64>(id).decomposition(),
        ));
    }
    if text.contains(',') {
        let numbers: Result<Vec<f64>, _> =
            text.split(',').map(|p| p.trim().parse::<f64>()).collect();
        match numbers.as_deref() {
            Ok([alpha, beta, eps_u0, eps_n0]) => {
                let dec = decompose(
                    &LinearFit::exact(*alpha, *beta),
                    &Constraints::new(*eps_u0, *eps_n0)?,
                )?;
                return Ok((text.to_string(), dec));
            }
            Ok([alpha, beta, eps_u0, eps_n0, lambda]) => {
                let dec = decompose(
                    &LinearFit::exact(*alpha, *beta),
                    &Constraints::with_lambda(*eps_u0, *eps_n0, *lambda)?,
                )?;
                return Ok((text.to_string(), dec));
            }
            Ok(_) => {
                return Err(usage(format!(
                    "parameter set {text:?} needs 4 or 5 comma-separated numbers"
                )))
            }
            Err(_) => return Err(usage(format!("cannot parse {text:?} as numbers"))),
        }
    }
    Err(text.parse::<CaseId>().unwrap_err().into())
}

fn delimiter_byte(c: char) -> Result<u8, CliError> {
    u8::try_from(c).map_err(|_| usage(format!("delimiter {c:?} must be a single ASCII character")))
}

fn line_rule(slope: f64, intercept: f64) -> String {
    match (slope == 0.0, intercept == 0.0) {
        (true, true) => "0".to_string(),
        (true, false) => fmt_sig(intercept),
        (false, true) => format!("{}*eps", fmt_sig(slope)),
        (false, false) if intercept < 0.0 => {
            format!("{}*eps - {}", fmt_sig(slope), fmt_sig(-intercept))
        }
        (false, false) => format!("{}*eps + {}", fmt_sig(slope), fmt_sig(intercept)),
    }
}

fn push_parameters(doc: &mut Doc, prefix: &str, dec: &Decomposition<f64>) {
    doc.num(format!("{prefix}alpha"), dec.fit.alpha)
        .num(format!("{prefix}beta"), dec.fit.beta)
        .num(format!("{prefix}eps_u0"), dec.constraints.eps_u0())
        .num(format!("{prefix}eps_n0"), dec.constraints.eps_n0())
        .num(format!("{prefix}lambda"), dec.constraints.lambda())
        .num(format!("{prefix}kappa_u"), dec.coefficients.kappa_u)
        .num(format!("{prefix}lambda_u"), dec.coefficients.lambda_u)
        .num(format!("{prefix}kappa_n"), dec.coefficients.kappa_n)
        .num(format!("{prefix}lambda_n"), dec.coefficients.lambda_n)
        .text(format!("{prefix}u_intercept_rule"), "0")
        .text(
            format!("{prefix}n_intercept_rule"),
            line_rule(
                dec.constraints.lambda() * dec.fit.alpha,
                dec.constraints.lambda() * dec.fit.beta,
            ),
        );
}

fn push_pair(doc: &mut Doc, prefix: &str, dec: &Decomposition<f64>, eps: f64) {
    let (u, n) = dec.affine_at(eps);
    doc.num(format!("{prefix}eps"), eps)
        .num(format!("{prefix}u_slope"), u.slope)
        .num(format!("{prefix}u_intercept"), u.intercept)
        .num(format!("{prefix}n_slope"), n.slope)
        .num(format!("{prefix}n_intercept"), n.intercept)
        .num(format!("{prefix}xpoint"), dec.predicted_action(eps));
}

fn push_report(
    doc: &mut Doc,
    prefix: &str,
    report: &xpoint::InterventionReport<f64>,
    before: &str,
    after: &str,
) {
    doc.text(format!("{prefix}before"), before)
        .text(format!("{prefix}after"), after)
        .num(format!("{prefix}eps_ref"), report.eps_ref)
        .num(
            format!("{prefix}delta.u_slope"),
            report.deltas.utility_slope,
        )
        .num(format!("{prefix}delta.n_slope"), report.deltas.norm_slope)
        .num(
            format!("{prefix}delta.u_intercept"),
            report.deltas.utility_intercept,
        )
        .num(
            format!("{prefix}delta.n_intercept"),
            report.deltas.norm_intercept,
        );
    for approach in Approach::ALL {
        doc.text(
            format!("{prefix}approach.{approach}"),
            report.flag(approach).to_string(),
        );
    }
    doc.text(format!("{prefix}narrative"), &report.narrative);
}

pub fn fit(args: &FitArgs) -> Result<Output, CliError> {
    let schema = TableSchema::new(&args.env_col, &args.action_col)
        .with_delimiter(delimiter_byte(args.delimiter)?);
    let mut dataset = load_dataset::<f64>(&args.input, &schema)?;
    if let Some(weights) = &args.smooth_weights {
        let [w0, w1, w2] = weights.as_slice() else {
            return Err(usage("--smooth-weights needs exactly 3 values, e.g. 2,1,1"));
        };
        dataset = dataset.smoothed_env([*w0, *w1, *w2])?;
    }
    let fit = fit_linear(&dataset)?;
    let mut doc = Doc::new();
    doc.text("input", args.input.display().to_string())
        .int("n_samples", fit.n_samples as i64)
        .num("alpha", fit.alpha)
        .num("beta", fit.beta)
        .num("r_squared", fit.r_squared)
        .num("residual_sse", fit.residual_sse);
    Ok(Output::Doc(doc))
}

pub fn decompose_cmd(args: &DecomposeArgs) -> Result<Output, CliError> {
    let source = resolve_source(&args.source)?;
    let mut eps_list = args.eps.clone();
    if eps_list.is_empty() {
        if let Some(default) = source.default_eps {
            eps_list.push(default);
        }
    }
    let mut doc = Doc::new();
    doc.text("source", &source.label);
    push_parameters(&mut doc, "", &source.dec);
    for (i, &eps) in eps_list.iter().enumerate() {
        push_pair(&mut doc, &format!("eps.{i}."), &source.dec, eps);
    }
    Ok(Output::Doc(doc))
}

pub fn xpoint_cmd(args: &XpointArgs) -> Result<Output, CliError> {
    let u = AffineFunction::new(args.u_slope, args.u_intercept)?;
    let n = AffineFunction::new(args.n_slope, args.n_intercept)?;
    let x = crossing(&u, &n)?;
    let mut doc = Doc::new();
    doc.num("xpoint", x)
        .num("u_at_xpoint", u.eval(x))
        .num("n_at_xpoint", n.eval(x));
    Ok(Output::Doc(doc))
}

pub fn argmax(args: &ArgmaxArgs) -> Result<Output, CliError> {
    let model =
        NonlinearChoiceModel::new(args.ua, args.nb, args.na, args.noff, args.lower, args.upper)?;
    let result = model.argmax_value()?;
    let value = model.evaluate(result.action)?;
    let mut doc = Doc::new();
    doc.num("x_vmax", result.action)
        .num("foc_residual", result.foc_residual)
        .num("bracket_lower", result.bracket.0)
        .num("bracket_upper", result.bracket.1)
        .num("value", value.value);
    Ok(Output::Doc(doc))
}

pub fn compare_cmd(args: &CompareArgs, tolerance: f64) -> Result<Output, CliError> {
    let (before_label, before) = resolve_side(&args.before)?;
    let (after_label, after) = resolve_side(&args.after)?;
    let report = compare_with_tolerance(&before, &after, args.eps_ref, tolerance);
    let mut doc = Doc::new();
    doc.num("tolerance", tolerance);
    push_report(&mut doc, "", &report, &before_label, &after_label);
    Ok(Output::Doc(doc))
}

pub fn plan(args: &PlanArgs) -> Result<Output, CliError> {
    let source = resolve_source(&args.source)?;
    let plan = plan_target(
        &source.dec,
        args.alpha_target,
        args.beta_target,
        args.eps_ref,
        args.u_slope_target,
        args.n_slope_target,
    );
    let mut doc = Doc::new();
    doc.text("source", &source.label)
        .num("eps_ref", plan.eps_ref)
        .num("alpha_target", plan.alpha_target)
        .num("beta_target", plan.beta_target)
        .num("current_action", plan.current_action)
        .num("target_action", plan.target_action);
    for entry in &plan.entries {
        let pre = format!("approach.{}.", entry.approach);
        doc.text(format!("{pre}parameter"), entry.approach.parameter_name());
        match entry.value {
            Some(v) => doc.num(format!("{pre}value"), v),
            None => doc.text(format!("{pre}value"), "none"),
        };
        doc.flag(format!("{pre}feasible"), entry.feasible())
            .text(format!("{pre}note"), &entry.note);
    }
    Ok(Output::Doc(doc))
}

pub fn simulate(args: &SimulateArgs) -> Result<Output, CliError> {
    let env_grid = match (&args.grid, &args.eps) {
        (Some(_), Some(_)) => return Err(usage("give either --grid or --eps, not both")),
        (None, None) => {
            return Err(usage(
                "give an environment grid via --grid lo:hi:count or --eps",
            ))
        }
        (Some(spec), None) => parse_grid(spec)?,
        (None, Some(list)) => list.clone(),
    };
    let spec = SyntheticSpec {
        truth: GroundTruth {
            alpha: args.alpha,
            beta: args.beta,
            eps_u0: args.eps_u0,
            eps_n0: args.eps_n0,
            lambda: args.lambda,
        },
        env_grid,
        noise_sd: args.noise_sd,
        seed: args.seed,
    };
    let dataset = generate_synthetic(&spec)?;
    let mut buf = Vec::new();
    dataset
        .write_to(&mut buf, delimiter_byte(args.delimiter)?)
        .map_err(CliError::from)?;
    Ok(Output::Raw(
        String::from_utf8(buf).expect("dataset text is UTF-8"),
    ))
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, count] = parts.as_slice() else {
        return Err(usage(format!("grid {spec:?} must be lo:hi:count")));
    };
    let lo: f64 = lo
        .parse()
        .map_err(|_| usage(format!("bad grid start {lo:?}")))?;
    let hi: f64 = hi
        .parse()
        .map_err(|_| usage(format!("bad grid end {hi:?}")))?;
    let count: usize = count
        .parse()
        .map_err(|_| usage(format!("bad grid count {count:?}")))?;
    if count < 2 || !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(usage("grid needs lo < hi and count >= 2"));
    }
    Ok((0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect())
}

pub fn reproduce(tolerance: f64) -> Result<Output, CliError> {
    let mut doc = Doc::new();
    for id in CaseId::ALL {
        let p = builtin_case::<f64>(id);
        let dec = p.decomposition();
        let pre = format!("case.{id}.");
        doc.text(format!("{pre}id"), id.as_str())
            .text(format!("{pre}env_unit"), p.env_unit)
            .text(format!("{pre}action_unit"), p.action_unit);
        push_parameters(&mut doc, &pre, &dec);
        push_pair(&mut doc, &format!("{pre}at."), &dec, p.eps_ref_default);
    }

    let power_before = builtin_case::<f64>(CaseId::PowerBefore);
    let power_report = compare_with_tolerance(
        &power_before.decomposition(),
        &builtin_case::<f64>(CaseId::PowerAfter).decomposition(),
        power_before.eps_ref_default,
        tolerance,
    );
    push_report(
        &mut doc,
        "compare.power.",
        &power_report,
        CaseId::PowerBefore.as_str(),
        CaseId::PowerAfter.as_str(),
    );

    let co2_high = builtin_case::<f64>(CaseId::Co2High);
    let co2_report = compare_with_tolerance(
        &co2_high.decomposition(),
        &builtin_case::<f64>(CaseId::Co2Low).decomposition(),
        co2_high.eps_ref_default,
        tolerance,
    );
    push_report(
        &mut doc,
        "compare.co2.",
        &co2_report,
        CaseId::Co2High.as_str(),
        CaseId::Co2Low.as_str(),
    );
    Ok(Output::Doc(doc))
}

pub fn plot(args: &PlotArgs) -> Result<Output, CliError> {
    let source = resolve_source(&args.source)?;
    if args.eps.is_empty() {
        return Err(usage("--eps needs at least one environment value"));
    }

    const POINTS: usize = 51;
    let mut table = String::from("eps,x,u,n\n");
    let mut series = Vec::new();
    let mut markers = Vec::new();
    for &eps in &args.eps {
        let (u, n) = source.dec.affine_at(eps);
        let x_eq = source.dec.predicted_action(eps);
        let lo = 0.0f64.min(1.25 * x_eq);
        let mut hi = 0.0f64.max(1.25 * x_eq);
        if lo == hi {
            hi = lo + 1.0;
        }
        let mut u_points = Vec::with_capacity(POINTS);
        let mut n_points = Vec::with_capacity(POINTS);
        for i in 0..POINTS {
            let x = lo + (hi - lo) * i as f64 / (POINTS - 1) as f64;
            u_points.push((x, u.eval(x)));
            n_points.push((x, n.eval(x)));
            table.push_str(&format!(
                "{},{},{},{}\n",
                fmt_sig(eps),
                fmt_sig(x),
                fmt_sig(u.eval(x)),
                fmt_sig(n.eval(x))
            ));
        }
        series.push(Series {
            label: format!("u at eps={}", fmt_sig(eps)),
            points: u_points,
            color: chart::UTILITY_COLOR,
        });
        series.push(Series {
            label: format!("n at eps={}", fmt_sig(eps)),
            points: n_points,
            color: chart::NORM_COLOR,
        });
        markers.push(Marker {
            x: x_eq,
            y: u.eval(x_eq),
            label: format!("x={}", fmt_sig(x_eq)),
        });
    }

    match args.chart {
        ChartArg::Table => Ok(Output::Raw(table)),
        ChartArg::Svg => Ok(Output::Raw(chart::render_svg(
            &source.label,
            "action",
            "value",
            &series,
            &markers,
        ))),
    }
}
