use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use xop::ratpoly::{fmt_rat, int, parse_rat, to_f64};
use xop::suites::{run, Suite, SuiteOptions};
use xop::xm::admissible as xm_admissible;
use xop::{Bound, Family, XmParams};

use crate::spec::{parse_index_range, parse_x_range, FamilyKind, ParamArgs};
use crate::{Format, Outcome};

type CmdResult = Result<(String, Outcome), String>;

#[derive(Serialize)]
struct Row {
    n: usize,
    eigenvalue: String,
    coeffs: Vec<String>,
    value_at_1: String,
}

#[derive(Serialize)]
struct Table {
    family: &'static str,
    params: BTreeMap<&'static str, String>,
    rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnosis: Option<String>,
}

fn diagnosis(fam: &Family) -> Result<Option<String>, String> {
    let Family::XmJacobi(p) = fam else { return Ok(None) };
    let adm = xm_admissible(p).map_err(|e| e.to_string())?;
    Ok((!adm.is_admissible()).then(|| format!("{}: {}", adm.verdict, adm.reasons.join("; "))))
}

pub fn gen(kind: FamilyKind, params: &ParamArgs, n: &str, format: Format) -> CmdResult {
    let fam = params.family(kind)?;
    let (lo, hi) = parse_index_range(n)?;
    let first = fam.first_degree();
    if lo < first {
        return Err(format!("{fam} starts at n = {first}, requested {lo}"));
    }
    let mut rows = Vec::with_capacity(hi - lo + 1);
    for n in lo..=hi {
        let y = fam.poly(n).map_err(|e| e.to_string())?;
        rows.push(Row {
            n,
            eigenvalue: fmt_rat(&fam.eigenvalue(n)),
            coeffs: y.coeffs().iter().map(fmt_rat).collect(),
            value_at_1: fmt_rat(&y.eval(&int(1))),
        });
    }
    let table = Table {
        family: fam.name(),
        params: fam.params().into_iter().map(|(k, v)| (k, fmt_rat(&v))).collect(),
        rows,
        diagnosis: diagnosis(&fam)?,
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&table).map_err(|e| e.to_string())? + "\n",
        Format::Csv => table_csv(&table)?,
        Format::Text => return Err("gen supports --format json or csv".into()),
    };
    Ok((text, Outcome::Ok))
}

fn table_csv(t: &Table) -> Result<String, String> {
    let width = t.rows.iter().map(|r| r.coeffs.len()).max().unwrap_or(0);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n".to_string(), "eigenvalue".into(), "value_at_1".into()];
    header.extend((0..width).map(|i| format!("c{i}")));
    w.write_record(&header).map_err(|e| e.to_string())?;
    for r in &t.rows {
        let mut rec = vec![r.n.to_string(), r.eigenvalue.clone(), r.value_at_1.clone()];
        rec.extend(r.coeffs.iter().cloned());
        rec.resize(3 + width, "0".into());
        w.write_record(&rec).map_err(|e| e.to_string())?;
    }
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct AdmissibilityReport {
    params: BTreeMap<&'static str, String>,
    verdict: String,
    reasons: Vec<String>,
    interior_roots: usize,
}

pub fn admissible(alpha: &str, beta: &str, m: usize, format: Format) -> CmdResult {
    let parse = |name: &str, s: &str| parse_rat(s).map_err(|_| format!("--{name}: cannot parse {s:?} as a rational"));
    let p = XmParams::new(parse("alpha", alpha)?, parse("beta", beta)?, m);
    let adm = match xm_admissible(&p) {
        Ok(a) => a,
        Err(e) => return Ok((format!("{p}\nerror: {e}\n"), Outcome::CheckFailed)),
    };
    let outcome = if adm.is_admissible() { Outcome::Ok } else { Outcome::CheckFailed };
    let text = match format {
        Format::Json => {
            let report = AdmissibilityReport {
                params: [("alpha", fmt_rat(&p.alpha)), ("beta", fmt_rat(&p.beta)), ("m", m.to_string())].into(),
                verdict: adm.verdict.to_string(),
                reasons: adm.reasons.clone(),
                interior_roots: adm.interior_roots,
            };
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
        }
        Format::Text => {
            let mut s = format!("{p}\nverdict: {}\n", adm.verdict);
            for r in &adm.reasons {
                let _ = writeln!(s, "reason: {r}");
            }
            let _ = writeln!(s, "interior roots of xi_(alpha+1,beta-1,m): {}", adm.interior_roots);
            s
        }
        Format::Csv => return Err("admissible supports --format text or json".into()),
    };
    Ok((text, outcome))
}

pub struct VerifyArgs {
    pub suite: String,
    pub family: Option<FamilyKind>,
    pub params: ParamArgs,
    pub example: Option<u8>,
    pub count: usize,
    pub tol: f64,
    pub kmax: usize,
    pub format: Format,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    name: &'a str,
    passed: bool,
    residual: &'a str,
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let suite: Suite = args.suite.parse().map_err(|e: xop::Error| e.to_string())?;
    let family = match args.family.or_else(|| args.params.infer()) {
        Some(kind) => Some(args.params.family(kind)?),
        None => None,
    };
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err("--tol must be positive".into());
    }
    let opts = SuiteOptions { family, example: args.example, count: args.count, kmax: args.kmax, tol: args.tol };
    let checks = run(suite, &opts);
    let passed = checks.iter().filter(|c| c.passed).count();
    let all = passed == checks.len() && !checks.is_empty();
    let text = match args.format {
        Format::Json => {
            let records: Vec<CheckRecord> =
                checks.iter().map(|c| CheckRecord { name: &c.name, passed: c.passed, residual: &c.residual }).collect();
            let v = serde_json::json!({ "suite": args.suite, "passed": all, "checks": records });
            serde_json::to_string_pretty(&v).map_err(|e| e.to_string())? + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            for c in &checks {
                let _ = writeln!(s, "{c}");
            }
            let _ = writeln!(s, "{passed}/{} checks passed", checks.len());
            s
        }
        Format::Csv => return Err("verify supports --format text or json".into()),
    };
    Ok((text, if all { Outcome::Ok } else { Outcome::CheckFailed }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sampled {
    Weight,
    Poly,
}

pub fn sample(
    kind: FamilyKind,
    params: &ParamArgs,
    what: Sampled,
    n: Option<usize>,
    points: usize,
    range: Option<&str>,
) -> CmdResult {
    let fam = params.family(kind)?;
    if points == 0 {
        return Err("--points must be positive".into());
    }
    let iv = fam.interval();
    let xs: Vec<f64> = match range {
        Some(r) => {
            let (lo, hi) = parse_x_range(r)?;
            let inside = |x: &xop::Rat| {
                let above = match &iv.lo {
                    Bound::Finite(a) => x >= a,
                    Bound::NegInf => true,
                    Bound::PosInf => false,
                };
                let below = match &iv.hi {
                    Bound::Finite(b) => x <= b,
                    Bound::PosInf => true,
                    Bound::NegInf => false,
                };
                above && below
            };
            if !inside(&lo) || !inside(&hi) {
                return Err(format!("range {r} is outside the interval {iv}"));
            }
            let (a, b) = (to_f64(&lo), to_f64(&hi));
            if points == 1 {
                vec![a]
            } else {
                (0..points).map(|i| a + (b - a) * i as f64 / (points - 1) as f64).collect()
            }
        }
        None => iv.sample_points(points),
    };
    let mut out = String::from("x,value\n");
    match what {
        Sampled::Weight => {
            let w = fam.weight();
            for x in xs {
                let v = w.eval(x).map_err(|e| e.to_string())?;
                let _ = writeln!(out, "{x},{v}");
            }
        }
        Sampled::Poly => {
            let n = n.ok_or("--n is required to sample a polynomial")?;
            let y = fam.poly(n).map_err(|e| e.to_string())?;
            for x in xs {
                let _ = writeln!(out, "{x},{}", y.eval_f64(x));
            }
        }
    }
    Ok((out, Outcome::Ok))
}
