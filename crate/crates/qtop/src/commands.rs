//! Subcommand implementations. Each returns the JSON document and the
//! process exit code.

use serde::Serialize;

use qtop_core::invariants::manifold::{
    homology_order, nr, nr0_knot, nr0_knot_cabled, nr0_knot_cabled_auto, nr0_knot_limit, wrt, wrt_so3, ComponentRole,
    Triple,
};
use qtop_core::invariants::skein::jones_skein;
use qtop_core::invariants::{f_prime, jones_rt};
use qtop_core::links::{describe, knot_table, ColoredBraidClosure};
use qtop_core::verify::{run_suite, CheckReport};
use qtop_core::{rel_err, QParams, Scalar, DEFAULT_TOL};

use crate::cli::{Cli, Command, JonesMethod, LinkArgs, Nr0Method};
use crate::color::{parse_color, parse_complex, ColorSpec};
use crate::input::{load, LinkInput};
use crate::output::{to_json, Cx, Num};
use crate::{tolerance, CliError, EXIT_NUMERIC, EXIT_OK};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub json: String,
    pub exit: i32,
    /// Human-readable notes for stderr.
    pub notes: Vec<String>,
}

impl Outcome {
    fn ok<T: Serialize>(value: &T) -> Self {
        Self { json: to_json(value), exit: EXIT_OK, notes: Vec::new() }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Jones { r, link, colors, method, both } => jones(*r, link, colors, *method, *both),
        Command::Ado { r, link, alpha, colors, grid, im } => ado(*r, link, alpha.as_deref(), colors.as_deref(), grid.as_deref(), *im),
        Command::Nr0 { r, link, f, omega, method, alpha } => nr0(*r, link, *f, *omega, *method, alpha.as_deref()),
        Command::Wrt { r, surgery, link, colors, omega, so3 } => wrt_cmd(*r, surgery, link, colors.as_deref(), *omega, *so3),
        Command::Nr { r, link, colors } => nr_cmd(*r, link, colors.as_deref()),
        Command::Verify { suite, r, knot, seed } => verify(*r, suite, knot.as_deref(), *seed),
    }
}

fn params(r: u32) -> Result<QParams, CliError> {
    Ok(QParams::new(r)?)
}

fn load_link(link: &LinkArgs) -> Result<LinkInput, CliError> {
    load(link.braid.as_deref(), link.knot.as_deref(), link.input.as_deref())
}

fn framings(link: &LinkArgs, input: &LinkInput) -> Result<Vec<i64>, CliError> {
    let m = input.components();
    let f = link.framings.clone().or_else(|| input.framings.clone()).unwrap_or_else(|| vec![0; m]);
    if f.len() != m {
        return Err(CliError::Contract(format!("{m} components need {m} framings, got {}", f.len())));
    }
    Ok(f)
}

fn color_specs(flag: Option<&[String]>, input: &LinkInput, fill: Option<&str>) -> Result<Vec<ColorSpec>, CliError> {
    let m = input.components();
    let texts: Vec<String> = match (flag, &input.colors, fill) {
        (Some(c), _, _) => c.to_vec(),
        (None, Some(c), _) => c.clone(),
        (None, None, Some(f)) => vec![f.to_string(); m],
        (None, None, None) => return Err(CliError::Contract("no colors given (use --colors)".into())),
    };
    if texts.len() != m {
        return Err(CliError::Contract(format!("{m} components need {m} colors, got {}", texts.len())));
    }
    texts.iter().map(|t| parse_color(t)).collect()
}

#[derive(Serialize)]
struct JonesOut {
    value: Cx,
    path: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    other: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deviation: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

fn jones(r: u32, link: &LinkArgs, colors: &[u32], method: JonesMethod, both: bool) -> Result<Outcome, CliError> {
    let p = params(r)?;
    let input = load_link(link)?;
    let f = framings(link, &input)?;
    let eval = |m: JonesMethod| -> Result<Scalar, CliError> {
        Ok(match m {
            JonesMethod::Rt => jones_rt(p, &input.braid, colors, &f)?,
            JonesMethod::Skein => jones_skein(p, &input.braid, colors, &f)?,
        })
    };
    let value = eval(method)?;
    let path = match method {
        JonesMethod::Rt => "rt",
        JonesMethod::Skein => "skein",
    };
    if !both {
        return Ok(Outcome::ok(&JonesOut { value: Cx(value), path, other: None, deviation: None, agree: None }));
    }
    let other = eval(if method == JonesMethod::Rt { JonesMethod::Skein } else { JonesMethod::Rt })?;
    let dev = rel_err(value, other);
    let agree = dev <= tolerance(DEFAULT_TOL)?;
    let mut out = Outcome::ok(&JonesOut { value: Cx(value), path, other: Some(Cx(other)), deviation: Some(Num(dev)), agree: Some(agree) });
    if !agree {
        out.exit = EXIT_NUMERIC;
        out.notes.push(format!("rt and skein routes differ by {dev:e}"));
    }
    Ok(out)
}

#[derive(Serialize)]
struct AdoOut {
    value: Cx,
    alpha: Option<Cx>,
    cut: usize,
}

#[derive(Serialize)]
struct Sample {
    alpha: Cx,
    value: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct GridOut {
    samples: Vec<Sample>,
}

fn ado(r: u32, link: &LinkArgs, alpha: Option<&str>, colors: Option<&[String]>, grid: Option<&str>, im: f64) -> Result<Outcome, CliError> {
    let p = params(r)?;
    let input = load_link(link)?;
    let f = framings(link, &input)?;
    let cut = link.cut.or(input.cut);
    let evaluate = |fill: Option<String>| -> Result<(Scalar, usize), CliError> {
        let specs = color_specs(colors, &input, fill.as_deref())?;
        let cs = specs.iter().map(|s| s.color(p)).collect::<Result<Vec<_>, _>>()?;
        let c = ColoredBraidClosure::new(input.braid.clone(), cs, f.clone(), cut)?;
        let used = qtop_core::invariants::typical_cut(&c)?;
        Ok((f_prime(&c)?, used))
    };
    if let Some(g) = grid {
        if alpha.is_some() {
            return Err(CliError::Parse("--grid replaces --alpha".into()));
        }
        let mut samples = Vec::new();
        for re in parse_grid(g)? {
            let a = Scalar::new(re, im);
            let s = match evaluate(Some(format!("V{}{:+}i", a.re, a.im))) {
                Ok((v, _)) => Sample { alpha: Cx(a), value: Some(Cx(v)), error: None },
                Err(CliError::Core(e)) => Sample { alpha: Cx(a), value: None, error: Some(e.to_string()) },
                Err(e) => return Err(e),
            };
            samples.push(s);
        }
        return Ok(Outcome::ok(&GridOut { samples }));
    }
    let a = alpha.map(parse_complex).transpose()?;
    let fill = a.map(|a| format!("V{}{:+}i", a.re, a.im));
    let (value, used) = evaluate(fill)?;
    Ok(Outcome::ok(&AdoOut { value: Cx(value), alpha: a.map(Cx), cut: used }))
}

fn parse_grid(g: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Parse(format!("--grid {g:?}: expected min:max:count"));
    let parts: Vec<&str> = g.split(':').collect();
    let [lo, hi, n] = parts[..] else { return Err(bad()) };
    let (lo, hi): (f64, f64) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
    let n: usize = n.parse().map_err(|_| bad())?;
    Ok(match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    })
}

#[derive(Serialize)]
struct Nr0Out {
    value: Cx,
    method: &'static str,
    knot: String,
    f: i64,
    omega: u8,
    homology_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<Cx>,
}

fn nr0(r: u32, link: &LinkArgs, f: i64, omega: u8, method: Nr0Method, alpha: Option<&str>) -> Result<Outcome, CliError> {
    let p = params(r)?;
    let input = load_link(link)?;
    let k = &input.braid;
    let a = alpha.map(parse_complex).transpose()?;
    let (value, name) = match method {
        Nr0Method::Closed => (nr0_knot(p, k, f, omega)?, "closed"),
        Nr0Method::Cabled => match a {
            Some(a) => (nr0_knot_cabled(p, k, f, omega, a)?, "cabled"),
            None => (nr0_knot_cabled_auto(p, k, f, omega)?, "cabled"),
        },
        Nr0Method::Limit => (nr0_knot_limit(p, k, f, omega)?, "limit"),
    };
    Ok(Outcome::ok(&Nr0Out {
        value: Cx(value),
        method: name,
        knot: describe(k),
        f,
        omega,
        homology_order: f.unsigned_abs(),
        alpha: if method == Nr0Method::Cabled { a.map(Cx) } else { None },
    }))
}

#[derive(Serialize)]
struct ManifoldOut {
    value: Cx,
    homology_order: String,
}

fn triple_from(p: QParams, link: &LinkArgs, input: &LinkInput, specs: &[ColorSpec]) -> Result<Triple, CliError> {
    let roles = specs.iter().map(|s| s.role(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(Triple::new(input.braid.clone(), roles, framings(link, input)?)?)
}

fn parse_surgery(s: &str) -> Result<(qtop_core::BraidWord, i64), CliError> {
    let (name, f) = s.rsplit_once(':').ok_or_else(|| CliError::Parse(format!("--surgery {s:?}: expected name:framing")))?;
    let f = f.trim().trim_start_matches('+').parse().map_err(|_| CliError::Parse(format!("--surgery {s:?}: bad framing")))?;
    Ok((knot_table(name.trim())?, f))
}

fn wrt_cmd(r: u32, surgery: &[String], link: &LinkArgs, colors: Option<&[String]>, omega: u8, so3: bool) -> Result<Outcome, CliError> {
    let p = params(r)?;
    if omega > 1 {
        return Err(CliError::Core(qtop_core::Error::OutOfRange { what: "omega", value: omega as i64 }));
    }
    let has_link = link.braid.is_some() || link.knot.is_some() || link.input.is_some();
    let eval = |t: &Triple| -> Result<Scalar, CliError> { Ok(if so3 { wrt_so3(p, t)? } else { wrt(p, t)? }) };
    let mut value = Scalar::new(1.0, 0.0);
    let mut order: u128 = 1;
    if has_link {
        let input = load_link(link)?;
        let specs = color_specs(colors, &input, Some(&format!("OmegaRT{omega}")))?;
        if specs.iter().any(|s| matches!(s, ColorSpec::Kirby(_))) {
            return Err(CliError::Contract("WRT surgery components take OmegaRT<0|1> colors".into()));
        }
        let t = triple_from(p, link, &input, &specs)?;
        value *= eval(&t)?;
        order *= homology_order(&t);
    }
    for s in surgery {
        let (k, f) = parse_surgery(s)?;
        let t = Triple::knot_surgery(&k, f, omega)?;
        value *= eval(&t)?;
        order *= homology_order(&t);
    }
    Ok(Outcome::ok(&ManifoldOut { value: Cx(value), homology_order: order.to_string() }))
}

fn nr_cmd(r: u32, link: &LinkArgs, colors: Option<&[String]>) -> Result<Outcome, CliError> {
    let p = params(r)?;
    let input = load_link(link)?;
    let specs = color_specs(colors, &input, None)?;
    if specs.iter().any(|s| matches!(s, ColorSpec::KirbyRt(_))) {
        return Err(CliError::Contract("N_r surgery components take Omega<g> colors with non-integral g".into()));
    }
    let t = triple_from(p, link, &input, &specs)?;
    if !t.roles().iter().any(ComponentRole::is_surgery) {
        return Err(CliError::Contract("no surgery component (color one with Omega<g>)".into()));
    }
    let value = nr(p, &t)?;
    Ok(Outcome::ok(&ManifoldOut { value: Cx(value), homology_order: homology_order(&t).to_string() }))
}

#[derive(Serialize)]
struct WitnessOut<'a> {
    input: &'a str,
    lhs: Cx,
    rhs: Cx,
}

#[derive(Serialize)]
struct ReportOut<'a> {
    name: &'a str,
    parameters: serde_json::Map<String, serde_json::Value>,
    max_abs_error: Num,
    tolerance: Num,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<&'a str>,
    failures: &'a [String],
    witnesses: Vec<WitnessOut<'a>>,
}

impl<'a> From<&'a CheckReport> for ReportOut<'a> {
    fn from(r: &'a CheckReport) -> Self {
        Self {
            name: &r.name,
            parameters: r.parameters.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect(),
            max_abs_error: Num(r.max_abs_error),
            tolerance: Num(r.tolerance),
            pass: r.pass,
            skipped: r.skipped.as_deref(),
            failures: &r.failures,
            witnesses: r.witnesses.iter().map(|w| WitnessOut { input: &w.input, lhs: Cx(w.lhs), rhs: Cx(w.rhs) }).collect(),
        }
    }
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    suite: &'a str,
    r: u32,
    pass: bool,
    reports: Vec<ReportOut<'a>>,
}

fn verify(r: u32, suite: &str, knot: Option<&str>, seed: u64) -> Result<Outcome, CliError> {
    let p = params(r)?;
    let reports = run_suite(p, suite, knot, seed)?;
    let pass = reports.iter().all(|x| x.skipped.is_some() || x.pass);
    let mut notes: Vec<String> = reports
        .iter()
        .filter_map(|x| x.skipped.as_ref().map(|why| format!("skipped {}: {why}", x.name)))
        .collect();
    notes.dedup();
    for x in reports.iter().filter(|x| x.skipped.is_none() && !x.pass) {
        notes.push(format!("FAILED {}: {:e} > {:e}", x.name, x.max_abs_error, x.tolerance));
    }
    let out = VerifyOut { suite, r, pass, reports: reports.iter().map(ReportOut::from).collect() };
    Ok(Outcome { json: to_json(&out), exit: if pass { EXIT_OK } else { EXIT_NUMERIC }, notes })
}
