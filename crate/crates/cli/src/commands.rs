//! The four subcommands. Each returns the rendered output and whether the
//! run counts as a success.

use crepant_core::pcrc::{verify_bracket_identity, verify_corollary, verify_corollary_remark, verify_residual_thirdderiv};
use crepant_core::potentials::{
    classical_part, degree0_triple, extended, extended_varset, gw_invariant, headroom_varset, potential,
    quantum_part, stacky_degree0, standard_varset, CohClass,
};
use crepant_core::report::Report;
use crepant_core::verify::{verify_assembly, verify_degree0, verify_resummation};
use crepant_core::{Series, VarSet};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::config::{expand_suites, Format, RunConfig};
use crate::format::{ratfun_to_json, report_to_json, reports_csv, series_csv, series_to_json, sig15};
use crate::CliError;

pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Classical,
    StackyDegree0,
    Quantum,
    Total,
}

impl Part {
    pub const ALL: [Part; 4] = [Part::Classical, Part::StackyDegree0, Part::Quantum, Part::Total];

    pub fn name(self) -> &'static str {
        match self {
            Part::Classical => "classical",
            Part::StackyDegree0 => "stacky_degree0",
            Part::Quantum => "quantum",
            Part::Total => "total",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        Part::ALL
            .into_iter()
            .find(|p| p.name() == s || (s == "stacky" && *p == Part::StackyDegree0))
            .ok_or_else(|| CliError::Usage(format!("unknown part {:?}", s)))
    }

    fn build(self, vs: &VarSet) -> crepant_core::Result<Series> {
        match self {
            Part::Classical => classical_part(vs),
            Part::StackyDegree0 => stacky_degree0(vs),
            Part::Quantum => quantum_part(vs),
            Part::Total => potential(vs),
        }
    }
}

/// The variable set selected by `cfg`.
pub fn target_varset(cfg: &RunConfig) -> VarSet {
    if cfg.extended {
        extended_varset(cfg.qmax(), cfg.zorder(), cfg.uorder())
    } else {
        standard_varset(cfg.qmax(), cfg.zorder())
    }
}

/// One part of the potential, or of the extended potential, in the
/// variable set selected by `cfg`.
pub fn section(cfg: &RunConfig, part: Part) -> Result<Series, CliError> {
    let vs = target_varset(cfg);
    if cfg.extended {
        let source = headroom_varset(&vs)?;
        Ok(extended(&part.build(&source)?, &vs)?)
    } else {
        Ok(part.build(&vs)?)
    }
}

pub fn cmd_potential(cfg: &RunConfig) -> Result<Output, CliError> {
    let sections: Vec<(&str, Series)> = Part::ALL
        .iter()
        .map(|p| Ok((p.name(), section(cfg, *p)?)))
        .collect::<Result<_, CliError>>()?;
    let text = match cfg.format() {
        Format::Json => {
            let m: Map<String, Value> = sections.iter().map(|(n, s)| (n.to_string(), series_to_json(s))).collect();
            render(&Value::Object(m))
        }
        Format::Csv => series_csv(&sections.iter().map(|(n, s)| (*n, s)).collect::<Vec<_>>()),
    };
    Ok(Output::ok(text))
}

pub fn parse_class(s: &str) -> Result<CohClass, CliError> {
    match s.trim() {
        "1" => Ok(CohClass::One),
        "H" | "h" => Ok(CohClass::H),
        "S" | "s" => Ok(CohClass::S),
        other => Err(CliError::Usage(format!("unknown class {:?}, expected 1, H or S", other))),
    }
}

fn class_name(c: CohClass) -> &'static str {
    match c {
        CohClass::One => "1",
        CohClass::H => "H",
        CohClass::S => "S",
    }
}

#[derive(Clone, Debug, Default)]
pub struct InvariantQuery {
    pub degree: u32,
    pub n1: Option<u32>,
    pub n2: Option<u32>,
    pub classes: Option<String>,
}

/// `<H^{n1} S^{n2}>_d` for `d ≥ 1`; for `d = 0` a triple intersection given
/// by `classes`, or by `n1, n2` padded with fundamental classes.
pub fn cmd_invariants(q: &InvariantQuery, format: Format) -> Result<Output, CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage("csv output is only available for coefficient tables".into()));
    }
    let v = if q.degree == 0 {
        let classes: Vec<CohClass> = match (&q.classes, q.n1, q.n2) {
            (Some(c), _, _) => c.split(',').map(parse_class).collect::<Result<_, _>>()?,
            (None, n1, n2) => {
                let (n1, n2) = (n1.unwrap_or(0), n2.unwrap_or(0));
                if n1 + n2 > 3 {
                    return Err(CliError::Usage("degree 0 invariants have three insertions".into()));
                }
                let mut c = vec![CohClass::One; (3 - n1 - n2) as usize];
                c.extend(std::iter::repeat_n(CohClass::H, n1 as usize));
                c.extend(std::iter::repeat_n(CohClass::S, n2 as usize));
                c
            }
        };
        let [a, b, c]: [CohClass; 3] = classes
            .try_into()
            .map_err(|_| CliError::Usage("degree 0 invariants have three insertions".into()))?;
        json!({
            "degree": 0,
            "classes": [class_name(a), class_name(b), class_name(c)],
            "value": ratfun_to_json(&degree0_triple(a, b, c)),
        })
    } else {
        if q.classes.is_some() {
            return Err(CliError::Usage("--classes only applies to degree 0".into()));
        }
        let (n1, n2) = (q.n1.unwrap_or(0), q.n2.unwrap_or(0));
        json!({
            "degree": q.degree,
            "n1": n1,
            "n2": n2,
            "value": ratfun_to_json(&gw_invariant(n1, n2, q.degree)?),
        })
    };
    Ok(Output::ok(render(&v)))
}

/// Run one suite at the caps in `cfg`.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Report, CliError> {
    let (qmax, order) = (cfg.qmax(), cfg.zorder());
    Ok(match name {
        "degree0" => verify_degree0()?,
        "resummation" => verify_resummation(qmax, order)?,
        "assembly" => verify_assembly(qmax.max(1), order / 2)?,
        "bracket" => verify_bracket_identity(qmax, order)?,
        "residual" => verify_residual_thirdderiv(order)?,
        "corollary" => {
            let mut r = verify_corollary()?;
            r.cases.extend(verify_corollary_remark()?.cases);
            r
        }
        _ => return Err(CliError::Usage(format!("unknown suite {:?}", name))),
    })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Output, CliError> {
    if cfg.suites.is_empty() {
        return Err(CliError::Usage("no suite selected, pass --suite <name|all>".into()));
    }
    // validated before any computation
    let names = expand_suites(&cfg.suites)?;
    let reports: Vec<Report> = names.iter().map(|n| run_suite(n, cfg)).collect::<Result<_, _>>()?;
    let ok = reports.iter().all(Report::passed);
    let text = match cfg.format() {
        Format::Json if reports.len() == 1 => render(&report_to_json(&reports[0])),
        Format::Json => render(&Value::Array(reports.iter().map(report_to_json).collect())),
        Format::Csv => reports_csv(&reports),
    };
    Ok(Output { text, ok })
}

/// Numeric value of one part of the truncated potential. The result
/// depends on the truncation orders.
pub fn cmd_eval(cfg: &RunConfig, part: Part) -> Result<Output, CliError> {
    if cfg.format() == Format::Csv {
        return Err(CliError::Usage("csv output is only available for coefficient tables".into()));
    }
    let p = cfg
        .eval_point
        .as_ref()
        .ok_or_else(|| CliError::Usage("eval needs --at t1=..,t2=..".into()))?;
    let (t1, t2) = match (&p.t1, &p.t2) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(CliError::Usage("eval needs values for both t1 and t2".into())),
    };
    let vs = target_varset(cfg);
    if let Some((v, _)) = p.vars.iter().find(|(v, _)| !vs.contains(*v)) {
        return Err(CliError::Usage(format!("variable {} is not in the series", v)));
    }
    let s = section(cfg, part)?;
    let point: Vec<_> = p.vars.iter().map(|(v, x)| (*v, Complex64::new(*x, 0.0))).collect();
    let z = s.eval(t1, t2, &point)?;
    Ok(Output::ok(render(&json!({"part": part.name(), "re": sig15(z.re), "im": sig15(z.im)}))))
}
