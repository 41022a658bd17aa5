//! Run configuration: an optional JSON file overlaid by command-line flags.

use std::path::Path;

use crepant_core::{Rational, Var};
use serde_json::Value;

use crate::format::parse_number;
use crate::CliError;

pub const SUITES: [&str; 6] = ["degree0", "resummation", "assembly", "bracket", "residual", "corollary"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::Usage(format!("unknown format {:?}, expected json or csv", s))),
        }
    }
}

/// A point for numeric evaluation. Torus weights are exact; series
/// variables are floats.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvalPoint {
    pub t1: Option<Rational>,
    pub t2: Option<Rational>,
    pub vars: Vec<(Var, f64)>,
}

impl EvalPoint {
    /// Parse `k=v,k=v,...`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let mut p = EvalPoint::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected k=v, got {:?}", item)))?;
            p.set(k.trim(), v.trim())?;
        }
        Ok(p)
    }

    fn set(&mut self, k: &str, v: &str) -> Result<(), CliError> {
        let value = parse_number(v)?;
        match k {
            "t1" => self.t1 = Some(value),
            "t2" => self.t2 = Some(value),
            _ => {
                let var = Var::from_name(k).ok_or_else(|| CliError::Usage(format!("unknown variable {:?}", k)))?;
                let x = crepant_core::rational::to_f64(&value);
                self.vars.retain(|(w, _)| *w != var);
                self.vars.push((var, x));
            }
        }
        Ok(())
    }

    fn from_json(v: &Value) -> Result<Self, CliError> {
        match v {
            Value::String(s) => Self::parse(s),
            Value::Object(m) => {
                let mut p = EvalPoint::default();
                for (k, x) in m {
                    let text = match x {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(CliError::Usage(format!("bad value for {}", k))),
                    };
                    p.set(k, &text)?;
                }
                Ok(p)
            }
            _ => Err(CliError::Usage("eval_point must be a string or object".into())),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub qmax: Option<u32>,
    pub zorder: Option<u32>,
    pub uorder: Option<u32>,
    pub extended: bool,
    pub suites: Vec<String>,
    pub format: Option<Format>,
    pub eval_point: Option<EvalPoint>,
}

impl RunConfig {
    pub const DEFAULT_QMAX: u32 = 3;
    pub const DEFAULT_ZORDER: u32 = 6;
    pub const DEFAULT_UORDER: u32 = 2;

    pub fn qmax(&self) -> u32 {
        self.qmax.unwrap_or(Self::DEFAULT_QMAX)
    }

    pub fn zorder(&self) -> u32 {
        self.zorder.unwrap_or(Self::DEFAULT_ZORDER)
    }

    pub fn uorder(&self) -> u32 {
        self.uorder.unwrap_or(Self::DEFAULT_UORDER)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {}", path.display(), e)))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {}", path.display(), e)))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self, CliError> {
        let m = v.as_object().ok_or_else(|| CliError::Usage("config must be a JSON object".into()))?;
        let mut cfg = RunConfig::default();
        for (k, x) in m {
            let nat = || {
                x.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| CliError::Usage(format!("{} must be a natural number", k)))
            };
            match k.as_str() {
                "qmax" => cfg.qmax = Some(nat()?),
                "zorder" => cfg.zorder = Some(nat()?),
                "uorder" => cfg.uorder = Some(nat()?),
                "extended" => {
                    cfg.extended = x.as_bool().ok_or_else(|| CliError::Usage("extended must be a boolean".into()))?
                }
                "suites" | "suite" => {
                    let names: Vec<&str> = match x {
                        Value::String(s) => vec![s.as_str()],
                        Value::Array(a) => a
                            .iter()
                            .map(|s| s.as_str().ok_or_else(|| CliError::Usage("suite names must be strings".into())))
                            .collect::<Result<_, _>>()?,
                        _ => return Err(CliError::Usage("suites must be a string or list".into())),
                    };
                    cfg.suites = expand_suites(&names)?;
                }
                "format" => {
                    cfg.format = Some(Format::parse(
                        x.as_str().ok_or_else(|| CliError::Usage("format must be a string".into()))?,
                    )?)
                }
                "eval_point" | "at" => cfg.eval_point = Some(EvalPoint::from_json(x)?),
                _ => return Err(CliError::Usage(format!("unknown config key {:?}", k))),
            }
        }
        Ok(cfg)
    }

    /// Fields set in `flags` replace those in `self`.
    pub fn overlay(mut self, flags: RunConfig) -> RunConfig {
        self.qmax = flags.qmax.or(self.qmax);
        self.zorder = flags.zorder.or(self.zorder);
        self.uorder = flags.uorder.or(self.uorder);
        self.extended |= flags.extended;
        if !flags.suites.is_empty() {
            self.suites = flags.suites;
        }
        self.format = flags.format.or(self.format);
        self.eval_point = flags.eval_point.or(self.eval_point);
        self
    }
}

/// Validate suite names and expand `all`, keeping the canonical order.
pub fn expand_suites<S: AsRef<str>>(names: &[S]) -> Result<Vec<String>, CliError> {
    let mut picked = [false; SUITES.len()];
    for n in names {
        let n = n.as_ref();
        if n == "all" {
            picked = [true; SUITES.len()];
        } else {
            let k = SUITES
                .iter()
                .position(|s| *s == n)
                .ok_or_else(|| CliError::Usage(format!("unknown suite {:?}", n)))?;
            picked[k] = true;
        }
    }
    Ok(SUITES.iter().zip(picked).filter(|(_, p)| *p).map(|(s, _)| s.to_string()).collect())
}
