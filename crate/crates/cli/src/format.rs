//! JSON and CSV encodings of exact values.
//!
//! * `Cyclo`: `["c0","c1","c2","c3"]`, coefficients of `1, ζ, ζ², ζ³`.
//! * `RatFun`: `{"num": [[e1, e2, Cyclo], ...], "den": [...], "text": "..."}`
//!   with terms in descending graded-lex order.
//! * `Series`: `{"vars": [...], "caps": [...], "groups": [...], "terms":
//!   [{"exp": [...], "coeff": RatFun}, ...]}` sorted by graded-lex exponent.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crepant_core::pcrc::{CovMap, Line, LinearForm, LogTerm};
use crepant_core::report::Report;
use crepant_core::{rational, Cyclo, Poly2, RatFun, Rational, Series, Var, VarSet};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::CliError;

fn bad(what: &str) -> CliError {
    CliError::Usage(format!("malformed {}", what))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(rational::to_string(r))
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad("rational"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err(bad("rational"));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// A rational written as `p`, `p/q` or a decimal float (converted exactly).
pub fn parse_number(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).or_else(|_| {
        let x: f64 = s.trim().parse().map_err(|_| bad("number"))?;
        Rational::from_float(x).ok_or_else(|| bad("number"))
    })
}

fn rational_from_json(v: &Value) -> Result<Rational, CliError> {
    parse_rational(v.as_str().ok_or_else(|| bad("rational"))?)
}

pub fn cyclo_to_json(c: &Cyclo) -> Value {
    Value::Array(c.coeffs().iter().map(rational_to_json).collect())
}

pub fn cyclo_from_json(v: &Value) -> Result<Cyclo, CliError> {
    let a = v.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad("cyclotomic number"))?;
    let c: Vec<Rational> = a.iter().map(rational_from_json).collect::<Result<_, _>>()?;
    let [c0, c1, c2, c3]: [Rational; 4] = c.try_into().expect("length checked");
    Ok(Cyclo::new(c0, c1, c2, c3))
}

fn poly_to_json(p: &Poly2) -> Value {
    Value::Array(
        p.terms_grlex()
            .into_iter()
            .map(|((a, b), c)| json!([a, b, cyclo_to_json(&c)]))
            .collect(),
    )
}

fn poly_from_json(v: &Value) -> Result<Poly2, CliError> {
    let terms = v.as_array().ok_or_else(|| bad("polynomial"))?;
    let mut out = Vec::new();
    for t in terms {
        let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("polynomial term"))?;
        let e = |k: usize| t[k].as_u64().map(|x| x as u32).ok_or_else(|| bad("exponent"));
        out.push(((e(0)?, e(1)?), cyclo_from_json(&t[2])?));
    }
    Ok(Poly2::from_terms(out))
}

pub fn ratfun_to_json(r: &RatFun) -> Value {
    json!({"num": poly_to_json(r.num()), "den": poly_to_json(r.den()), "text": r.to_string()})
}

pub fn ratfun_from_json(v: &Value) -> Result<RatFun, CliError> {
    let num = poly_from_json(v.get("num").ok_or_else(|| bad("rational function"))?)?;
    let den = poly_from_json(v.get("den").ok_or_else(|| bad("rational function"))?)?;
    Ok(RatFun::new(num, den)?)
}

pub fn varset_fields(vs: &VarSet) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("vars".into(), json!(vs.vars().iter().map(|v| v.name()).collect::<Vec<_>>()));
    m.insert("caps".into(), json!(vs.caps()));
    m.insert(
        "groups".into(),
        Value::Array(
            vs.groups()
                .into_iter()
                .map(|(g, c)| json!({"vars": g.iter().map(|v| v.name()).collect::<Vec<_>>(), "cap": c}))
                .collect(),
        ),
    );
    m
}

pub fn series_to_json(s: &Series) -> Value {
    let mut m = varset_fields(s.varset());
    m.insert(
        "terms".into(),
        Value::Array(
            s.terms_sorted()
                .into_iter()
                .map(|(e, c)| json!({"exp": e, "coeff": ratfun_to_json(c)}))
                .collect(),
        ),
    );
    Value::Object(m)
}

fn var_from_json(v: &Value) -> Result<Var, CliError> {
    let name = v.as_str().ok_or_else(|| bad("variable"))?;
    Var::from_name(name).ok_or_else(|| CliError::Usage(format!("unknown variable {}", name)))
}

pub fn series_from_json(v: &Value) -> Result<Series, CliError> {
    let vars: Vec<Var> = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("series"))?
        .iter()
        .map(var_from_json)
        .collect::<Result<_, _>>()?;
    let caps: Vec<u32> = v
        .get("caps")
        .and_then(Value::as_array)
        .filter(|c| c.len() == vars.len())
        .ok_or_else(|| bad("series caps"))?
        .iter()
        .map(|c| c.as_u64().map(|x| x as u32).ok_or_else(|| bad("cap")))
        .collect::<Result<_, _>>()?;
    let spec: Vec<(Var, u32)> = vars.iter().copied().zip(caps).collect();
    let mut vs = VarSet::new(&spec);
    for g in v.get("groups").and_then(Value::as_array).into_iter().flatten() {
        let gv: Vec<Var> = g
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("group"))?
            .iter()
            .map(var_from_json)
            .collect::<Result<_, _>>()?;
        let cap = g.get("cap").and_then(Value::as_u64).ok_or_else(|| bad("group cap"))?;
        vs = vs.with_group(&gv, cap as u32)?;
    }
    let mut terms = Vec::new();
    for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms"))? {
        let e: Vec<u32> = t
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("exponent"))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad("exponent")))
            .collect::<Result<_, _>>()?;
        if !vs.admits(&e) {
            return Err(CliError::Core(crepant_core::Error::OutOfCap));
        }
        terms.push((e, ratfun_from_json(t.get("coeff").ok_or_else(|| bad("coefficient"))?)?));
    }
    Ok(Series::from_terms(&vs, terms)?)
}

/// CSV rows `section,<exponents...>,num,den` for several named series that
/// share one variable set.
pub fn series_csv(sections: &[(&str, &Series)]) -> String {
    let mut out = String::new();
    if let Some((_, first)) = sections.first() {
        out.push_str("section");
        for v in first.varset().vars() {
            let _ = write!(out, ",{}", v);
        }
        out.push_str(",num,den\n");
    }
    for (name, s) in sections {
        for (e, c) in s.terms_sorted() {
            out.push_str(name);
            for x in e {
                let _ = write!(out, ",{}", x);
            }
            let _ = writeln!(out, ",{},{}", csv_field(&c.num().to_string()), csv_field(&c.den().to_string()));
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn report_to_json(r: &Report) -> Value {
    json!({
        "suite": r.suite,
        "cases": r.cases.iter().map(|c| json!({
            "key": c.key,
            "pass": c.pass,
            "first_mismatch": c.first_mismatch,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn reports_csv(reports: &[Report]) -> String {
    let mut out = String::from("suite,key,pass,first_mismatch\n");
    for r in reports {
        for c in &r.cases {
            let mismatch = c
                .first_mismatch
                .as_ref()
                .map(|e| e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{}", r.suite, csv_field(&c.key), c.pass, mismatch);
        }
    }
    out
}

fn form_to_json(f: &LinearForm) -> Value {
    let m: Map<String, Value> = f.terms().map(|(v, c)| (v.name().to_string(), cyclo_to_json(c))).collect();
    Value::Object(m)
}

fn form_from_json(v: &Value) -> Result<LinearForm, CliError> {
    let m = v.as_object().ok_or_else(|| bad("linear form"))?;
    let terms = m
        .iter()
        .map(|(k, c)| Ok((var_from_json(&Value::String(k.clone()))?, cyclo_from_json(c)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(LinearForm::from_terms(terms))
}

fn line_to_json(l: &Line) -> Value {
    match l {
        Line::Linear(f) => json!({"linear": form_to_json(f)}),
        Line::PhaseExp { phase, form } => json!({"phase_exp": {"phase": phase, "form": form_to_json(form)}}),
        Line::Scaled { scalar, target } => json!({"scaled": {"scalar": cyclo_to_json(scalar), "target": target.name()}}),
        Line::Log(terms) => json!({"log": terms.iter().map(|t| json!({
            "scale": cyclo_to_json(&t.scale), "arg": t.arg.name(), "phase": t.phase,
        })).collect::<Vec<_>>()}),
        Line::AffinePi { pi_coeff, form } => {
            json!({"affine_pi": {"pi_coeff": cyclo_to_json(pi_coeff), "form": form_to_json(form)}})
        }
    }
}

fn line_from_json(v: &Value) -> Result<Line, CliError> {
    let (kind, body) = v
        .as_object()
        .and_then(|m| m.iter().next())
        .ok_or_else(|| bad("line"))?;
    let field = |k: &str| body.get(k).ok_or_else(|| bad("line"));
    let phase = |k: &str| field(k)?.as_i64().ok_or_else(|| bad("phase"));
    Ok(match kind.as_str() {
        "linear" => Line::Linear(form_from_json(body)?),
        "phase_exp" => Line::PhaseExp {
            phase: phase("phase")?,
            form: form_from_json(field("form")?)?,
        },
        "scaled" => Line::Scaled {
            scalar: cyclo_from_json(field("scalar")?)?,
            target: var_from_json(field("target")?)?,
        },
        "log" => Line::Log(
            body.as_array()
                .ok_or_else(|| bad("log line"))?
                .iter()
                .map(|t| {
                    Ok(LogTerm {
                        scale: cyclo_from_json(t.get("scale").ok_or_else(|| bad("log term"))?)?,
                        arg: var_from_json(t.get("arg").ok_or_else(|| bad("log term"))?)?,
                        phase: t.get("phase").and_then(Value::as_i64).ok_or_else(|| bad("log term"))?,
                    })
                })
                .collect::<Result<_, CliError>>()?,
        ),
        "affine_pi" => Line::AffinePi {
            pi_coeff: cyclo_from_json(field("pi_coeff")?)?,
            form: form_from_json(field("form")?)?,
        },
        _ => return Err(bad("line kind")),
    })
}

pub fn covmap_to_json(m: &CovMap) -> Value {
    let lines: Map<String, Value> = m.lines().map(|(v, l)| (v.name().to_string(), line_to_json(l))).collect();
    json!({"branch": m.branch(), "lines": lines})
}

pub fn covmap_from_json(v: &Value) -> Result<CovMap, CliError> {
    let branch = v.get("branch").and_then(Value::as_i64).ok_or_else(|| bad("branch"))?;
    let lines = v.get("lines").and_then(Value::as_object).ok_or_else(|| bad("lines"))?;
    let lines: BTreeMap<Var, Line> = lines
        .iter()
        .map(|(k, l)| Ok((var_from_json(&Value::String(k.clone()))?, line_from_json(l)?)))
        .collect::<Result<_, CliError>>()?;
    Ok(CovMap::new(lines, branch))
}

/// `x` with 15 significant digits, in plain decimal notation unless the
/// magnitude is extreme.
pub fn sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.14e}", x)
    }
}
