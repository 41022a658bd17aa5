//! Changes of variables between the potentials of `[C^2/Z_3]` (variables
//! `x`, `s`), its `A_2` resolution (variables `y`, `q1`, `q2`) and local
//! `P(1,2)` (variables `z`, `q`, `u`), and exact checks of the identities
//! relating them.
//!
//! A [`CovMap`] assigns to each source variable a [`Line`]: an expression in
//! target variables. Roots of unity are stored as exponents of `ζ = e^{iπ/6}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cyclotomic::Cyclo;
use crate::potentials::g_series;
use crate::ratfun::RatFun;
use crate::rational;
use crate::report::{Case, Report};
use crate::series::{Image, Series, Var, VarSet};
use crate::{Error, Result};

/// Representative of `k mod 12` in `-5..=6`.
pub fn principal(k: i64) -> i64 {
    let r = k.rem_euclid(12);
    if r > 6 {
        r - 12
    } else {
        r
    }
}

/// `Σ c_v v` over `Cyclo`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinearForm {
    terms: BTreeMap<Var, Cyclo>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn var(v: Var) -> Self {
        Self::term(Cyclo::one(), v)
    }

    pub fn term(c: Cyclo, v: Var) -> Self {
        Self::from_terms([(v, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Var, Cyclo)>>(it: I) -> Self {
        let mut f = LinearForm::zero();
        for (v, c) in it {
            f.add_term(v, &c);
        }
        f
    }

    fn add_term(&mut self, v: Var, c: &Cyclo) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(v).or_insert_with(Cyclo::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Var, &Cyclo)> {
        self.terms.iter()
    }

    pub fn coeff(&self, v: Var) -> Cyclo {
        self.terms.get(&v).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(*v, c);
        }
        out
    }

    pub fn scale(&self, c: &Cyclo) -> LinearForm {
        LinearForm::from_terms(self.terms.iter().map(|(v, x)| (*v, x * c)))
    }

    /// The form as a series in `vs`.
    pub fn to_series(&self, vs: &VarSet) -> Result<Series> {
        self.terms.iter().try_fold(Series::zero(vs), |acc, (v, c)| {
            acc.add(&Series::var(vs, *v)?.scale_cyclo(c))
        })
    }

    /// Substitute linear forms for the variables.
    fn compose(&self, map: &BTreeMap<Var, LinearForm>) -> Option<LinearForm> {
        let mut out = LinearForm::zero();
        for (v, c) in &self.terms {
            out = out.add(&map.get(v)?.scale(c));
        }
        Some(out)
    }
}

/// One term `scale · (log arg - log ζ^phase)` of a logarithmic line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogTerm {
    pub scale: Cyclo,
    pub arg: Var,
    pub phase: i64,
}

/// Right-hand side of one line of a change of variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Line {
    /// A linear form in the target variables.
    Linear(LinearForm),
    /// `ζ^phase · exp(form)`.
    PhaseExp { phase: i64, form: LinearForm },
    /// `scalar · target`.
    Scaled { scalar: Cyclo, target: Var },
    /// `Σ scale (log arg - log ζ^phase)`, the logarithm of `ζ^phase` taken
    /// on the map's branch.
    Log(Vec<LogTerm>),
    /// `π · pi_coeff + form`.
    AffinePi { pi_coeff: Cyclo, form: LinearForm },
}

impl Line {
    fn affine(pi_coeff: Cyclo, form: LinearForm) -> Line {
        if pi_coeff.is_zero() {
            Line::Linear(form)
        } else {
            Line::AffinePi { pi_coeff, form }
        }
    }
}

/// A change of variables: each source variable equals a [`Line`] in the
/// target variables. `branch` selects the logarithm used by [`Line::Log`]
/// lines: `log ζ^k` on branch `b` is `iπ(principal(k)/6 + 2b)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CovMap {
    lines: BTreeMap<Var, Line>,
    branch: i64,
}

impl CovMap {
    pub fn new<I: IntoIterator<Item = (Var, Line)>>(lines: I, branch: i64) -> Self {
        CovMap {
            lines: lines.into_iter().collect(),
            branch,
        }
    }

    /// Every variable in `vars` mapped to itself.
    pub fn identity(vars: &[Var]) -> Self {
        CovMap::new(vars.iter().map(|v| (*v, Line::Linear(LinearForm::var(*v)))), 0)
    }

    pub fn line(&self, v: Var) -> Option<&Line> {
        self.lines.get(&v)
    }

    pub fn lines(&self) -> impl Iterator<Item = (&Var, &Line)> {
        self.lines.iter()
    }

    pub fn branch(&self) -> i64 {
        self.branch
    }

    /// Source variables with a linear line and the matrix of their
    /// coefficients against `cols`.
    pub fn linear_matrix(&self, cols: &[Var]) -> Vec<(Var, Vec<Cyclo>)> {
        self.lines
            .iter()
            .filter_map(|(v, l)| match l {
                Line::Linear(f) => Some((*v, cols.iter().map(|c| f.coeff(*c)).collect())),
                _ => None,
            })
            .collect()
    }
}

fn i_over_sqrt3() -> Cyclo {
    Cyclo::i() * Cyclo::sqrt3().inv().expect("nonzero")
}

fn form2(c1: Cyclo, v1: Var, c2: Cyclo, v2: Var) -> LinearForm {
    LinearForm::from_terms([(v1, c1), (v2, c2)])
}

/// From the resolution to local `P(1,2)`: `y0 = z0`, `y1 = i z2`,
/// `y2 = z1 - (i/2) z2`, `q1 = -e^{iu}`, `q2 = i q`.
pub fn build_cov() -> CovMap {
    let i = Cyclo::i();
    CovMap::new(
        [
            (Var::Y0, Line::Linear(LinearForm::var(Var::Z0))),
            (Var::Y1, Line::Linear(LinearForm::term(i.clone(), Var::Z2))),
            (
                Var::Y2,
                Line::Linear(form2(Cyclo::one(), Var::Z1, -(&i * &Cyclo::frac(1, 2)), Var::Z2)),
            ),
            (
                Var::Q1,
                Line::PhaseExp {
                    phase: 6,
                    form: LinearForm::term(i.clone(), Var::U),
                },
            ),
            (Var::Q2, Line::Scaled { scalar: i, target: Var::Q }),
        ],
        0,
    )
}

/// From the resolution to `[C^2/Z_3]`: `y0 = x0`,
/// `y1 = (i/√3)(ω x1 + ω̄ x2)`, `y2 = (i/√3)(ω̄ x1 + ω x2)`,
/// `q1 = ω e^{(i/√3)(ω s1 + ω̄ s2)}`, `q2 = ω e^{(i/√3)(ω̄ s1 + ω s2)}`.
pub fn build_covbgp() -> CovMap {
    let k = i_over_sqrt3();
    let (w, wb) = (Cyclo::omega(), Cyclo::omega_bar());
    let omega_phase = 4;
    CovMap::new(
        [
            (Var::Y0, Line::Linear(LinearForm::var(Var::X0))),
            (Var::Y1, Line::Linear(form2(&k * &w, Var::X1, &k * &wb, Var::X2))),
            (Var::Y2, Line::Linear(form2(&k * &wb, Var::X1, &k * &w, Var::X2))),
            (
                Var::Q1,
                Line::PhaseExp {
                    phase: omega_phase,
                    form: form2(&k * &w, Var::S1, &k * &wb, Var::S2),
                },
            ),
            (
                Var::Q2,
                Line::PhaseExp {
                    phase: omega_phase,
                    form: form2(&k * &wb, Var::S1, &k * &w, Var::S2),
                },
            ),
        ],
        0,
    )
}

/// From local `P(1,2)` to `[C^2/Z_3]`: `z0 = x0`,
/// `z1 = (i/(2√3))((ω̄-1) x1 + (ω-1) x2)`, `z2 = (1/√3)(ω x1 + ω̄ x2)`,
/// `q = -iω e^{(i/√3)(ω̄ s1 + ω s2)}`, `u = -π/3 + (1/√3)(ω s1 + ω̄ s2)`.
pub fn build_corollary() -> CovMap {
    let k = i_over_sqrt3();
    let r = Cyclo::sqrt3().inv().expect("nonzero");
    let (w, wb) = (Cyclo::omega(), Cyclo::omega_bar());
    let one = Cyclo::one();
    let half_k = &k * &Cyclo::frac(1, 2);
    // -iω = ζ^9 ζ^4 = ζ
    let q_phase = (-(Cyclo::i() * &w))
        .root_of_unity_index()
        .expect("root of unity");
    CovMap::new(
        [
            (Var::Z0, Line::Linear(LinearForm::var(Var::X0))),
            (
                Var::Z1,
                Line::Linear(form2(&half_k * &(&wb - &one), Var::X1, &half_k * &(&w - &one), Var::X2)),
            ),
            (Var::Z2, Line::Linear(form2(&r * &w, Var::X1, &r * &wb, Var::X2))),
            (
                Var::Q,
                Line::PhaseExp {
                    phase: q_phase,
                    form: form2(&k * &wb, Var::S1, &k * &w, Var::S2),
                },
            ),
            (
                Var::U,
                Line::AffinePi {
                    pi_coeff: Cyclo::frac(-1, 3),
                    form: form2(&r * &w, Var::S1, &r * &wb, Var::S2),
                },
            ),
        ],
        0,
    )
}

/// Gauss–Jordan inverse of a square matrix over `Q(ζ_12)`.
fn invert_matrix(m: &[Vec<Cyclo>]) -> Result<Vec<Vec<Cyclo>>> {
    let n = m.len();
    let mut a: Vec<Vec<Cyclo>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|c| if c == r { Cyclo::one() } else { Cyclo::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularLinearPart)?;
        a.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..2 * n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= &sub;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solve the block `sources_j = Σ_k M_jk targets_k` for the targets.
fn solve_block(rows: &[(Var, &LinearForm)]) -> Result<(Vec<Var>, Vec<Vec<Cyclo>>)> {
    let mut cols: Vec<Var> = rows.iter().flat_map(|(_, f)| f.terms().map(|(v, _)| *v)).collect();
    cols.sort();
    cols.dedup();
    if cols.len() != rows.len() {
        return Err(Error::SingularLinearPart);
    }
    let m: Vec<Vec<Cyclo>> = rows
        .iter()
        .map(|(_, f)| cols.iter().map(|c| f.coeff(*c)).collect())
        .collect();
    Ok((cols, invert_matrix(&m)?))
}

/// Express the target variables of `m` in terms of its source variables.
/// Exponential lines are inverted with logarithms on `branch`.
pub fn invert(m: &CovMap, branch: i64) -> Result<CovMap> {
    let mut out: BTreeMap<Var, Line> = BTreeMap::new();
    let mut insert = |v: Var, l: Line| -> Result<()> {
        match out.insert(v, l) {
            None => Ok(()),
            Some(_) => Err(Error::SingularLinearPart),
        }
    };

    let linear: Vec<(Var, &LinearForm)> = m
        .lines
        .iter()
        .filter_map(|(v, l)| match l {
            Line::Linear(f) => Some((*v, f)),
            _ => None,
        })
        .collect();
    if !linear.is_empty() {
        let (cols, inv) = solve_block(&linear)?;
        for (k, w) in cols.iter().enumerate() {
            let form = LinearForm::from_terms(linear.iter().enumerate().map(|(j, (v, _))| (*v, inv[k][j].clone())));
            insert(*w, Line::Linear(form))?;
        }
    }

    let exps: Vec<(Var, i64, &LinearForm)> = m
        .lines
        .iter()
        .filter_map(|(v, l)| match l {
            Line::PhaseExp { phase, form } => Some((*v, *phase, form)),
            _ => None,
        })
        .collect();
    if !exps.is_empty() {
        let rows: Vec<(Var, &LinearForm)> = exps.iter().map(|(v, _, f)| (*v, *f)).collect();
        let (cols, inv) = solve_block(&rows)?;
        for (k, w) in cols.iter().enumerate() {
            let terms = exps
                .iter()
                .enumerate()
                .filter(|(j, _)| !inv[k][*j].is_zero())
                .map(|(j, (v, phase, _))| LogTerm {
                    scale: inv[k][j].clone(),
                    arg: *v,
                    phase: *phase,
                })
                .collect();
            insert(*w, Line::Log(terms))?;
        }
    }

    let logs: Vec<(Var, &Vec<LogTerm>)> = m
        .lines
        .iter()
        .filter_map(|(v, l)| match l {
            Line::Log(t) => Some((*v, t)),
            _ => None,
        })
        .collect();
    if !logs.is_empty() {
        // v_j = Σ_k C_jk (log w_k - log ζ^{p_k})  ⇒  w_k = ζ^{p_k} e^{(C^{-1} v)_k}
        let mut phases: BTreeMap<Var, i64> = BTreeMap::new();
        let forms: Vec<LinearForm> = logs
            .iter()
            .map(|(_, ts)| {
                for t in ts.iter() {
                    if *phases.entry(t.arg).or_insert(t.phase) != t.phase {
                        return Err(Error::Unsupported(String::from("inconsistent log phases")));
                    }
                }
                Ok(LinearForm::from_terms(ts.iter().map(|t| (t.arg, t.scale.clone()))))
            })
            .collect::<Result<_>>()?;
        let rows: Vec<(Var, &LinearForm)> = logs.iter().zip(&forms).map(|((v, _), f)| (*v, f)).collect();
        let (cols, inv) = solve_block(&rows)?;
        for (k, w) in cols.iter().enumerate() {
            let form = LinearForm::from_terms(rows.iter().enumerate().map(|(j, (v, _))| (*v, inv[k][j].clone())));
            insert(*w, Line::PhaseExp { phase: phases[w], form })?;
        }
    }

    let affine: Vec<(Var, &Cyclo, &LinearForm)> = m
        .lines
        .iter()
        .filter_map(|(v, l)| match l {
            Line::AffinePi { pi_coeff, form } => Some((*v, pi_coeff, form)),
            _ => None,
        })
        .collect();
    if !affine.is_empty() {
        let rows: Vec<(Var, &LinearForm)> = affine.iter().map(|(v, _, f)| (*v, *f)).collect();
        let (cols, inv) = solve_block(&rows)?;
        for (k, w) in cols.iter().enumerate() {
            let form = LinearForm::from_terms(rows.iter().enumerate().map(|(j, (v, _))| (*v, inv[k][j].clone())));
            let pi = affine
                .iter()
                .enumerate()
                .fold(Cyclo::zero(), |acc, (j, (_, p, _))| &acc - &(&inv[k][j] * *p));
            insert(*w, Line::affine(pi, form))?;
        }
    }

    for (v, l) in &m.lines {
        if let Line::Scaled { scalar, target } = l {
            insert(
                *target,
                Line::Scaled {
                    scalar: scalar.inv()?,
                    target: *v,
                },
            )?;
        }
    }

    Ok(CovMap { lines: out, branch })
}

fn unsupported(what: &str) -> Error {
    Error::Unsupported(String::from(what))
}

/// Substitute the lines of `b` into the lines of `a`: if `a` expresses its
/// sources in `b`'s sources, the result expresses them in `b`'s targets.
/// The result keeps `a`'s branch.
pub fn compose(a: &CovMap, b: &CovMap) -> Result<CovMap> {
    let linear_b: BTreeMap<Var, LinearForm> = b
        .lines
        .iter()
        .filter_map(|(v, l)| match l {
            Line::Linear(f) => Some((*v, f.clone())),
            _ => None,
        })
        .collect();
    let mut lines = BTreeMap::new();
    for (v, line) in &a.lines {
        let composed = match line {
            Line::Linear(f) => match f.compose(&linear_b) {
                Some(g) => Line::Linear(g),
                None => compose_single(f, b)?,
            },
            Line::AffinePi { pi_coeff, form } => Line::affine(
                pi_coeff.clone(),
                form.compose(&linear_b).ok_or_else(|| unsupported("affine line over a non-linear variable"))?,
            ),
            Line::Scaled { scalar, target } => {
                compose_scaled(scalar, b.line(*target).ok_or(Error::UnknownVariable(*target))?)?
            }
            Line::PhaseExp { phase, form } => compose_exp(*phase, form, b, &linear_b)?,
            Line::Log(terms) => compose_log(terms, a.branch, b)?,
        };
        lines.insert(*v, composed);
    }
    Ok(CovMap {
        lines,
        branch: a.branch,
    })
}

/// A linear line `c·w` whose variable maps to a scaled line.
fn compose_single(f: &LinearForm, b: &CovMap) -> Result<Line> {
    let mut it = f.terms();
    match (it.next(), it.next()) {
        (Some((w, c)), None) => compose_scaled(c, b.line(*w).ok_or(Error::UnknownVariable(*w))?),
        _ => Err(unsupported("linear combination of non-linear lines")),
    }
}

fn compose_scaled(s: &Cyclo, inner: &Line) -> Result<Line> {
    Ok(match inner {
        Line::Scaled { scalar, target } => Line::Scaled {
            scalar: s * scalar,
            target: *target,
        },
        Line::PhaseExp { phase, form } => Line::PhaseExp {
            phase: principal(s.root_of_unity_index().ok_or(Error::NotARootOfUnity)? + phase),
            form: form.clone(),
        },
        Line::Linear(f) => Line::Linear(f.scale(s)),
        Line::AffinePi { pi_coeff, form } => Line::affine(pi_coeff * s, form.scale(s)),
        Line::Log(terms) => Line::Log(
            terms
                .iter()
                .map(|t| LogTerm {
                    scale: &t.scale * s,
                    ..t.clone()
                })
                .collect(),
        ),
    })
}

fn compose_exp(phase: i64, form: &LinearForm, b: &CovMap, linear_b: &BTreeMap<Var, LinearForm>) -> Result<Line> {
    if let Some(g) = form.compose(linear_b) {
        return Ok(Line::PhaseExp { phase, form: g });
    }
    // ζ^k exp(log w - log ζ^p) = ζ^{k-p} w
    let mut it = form.terms();
    if let (Some((w, c)), None) = (it.next(), it.next()) {
        if let Some(Line::Log(terms)) = b.line(*w) {
            if let [t] = terms.as_slice() {
                if (c * &t.scale).is_one() {
                    return Ok(Line::Scaled {
                        scalar: Cyclo::zeta_pow(phase - t.phase),
                        target: t.arg,
                    });
                }
            }
        }
    }
    Err(unsupported("exponential of a non-linear line"))
}

fn compose_log(terms: &[LogTerm], branch: i64, b: &CovMap) -> Result<Line> {
    let mut pi = Cyclo::zero();
    let mut form = LinearForm::zero();
    let mut rest: Vec<LogTerm> = Vec::new();
    for t in terms {
        match b.line(t.arg).ok_or(Error::UnknownVariable(t.arg))? {
            // log(ζ^j e^f) - log ζ^p = f + iπ (principal(j - p)/6 - 2·branch)
            Line::PhaseExp { phase, form: f } => {
                let turns = rational::frac(principal(phase - t.phase), 6) - rational::int(2 * branch);
                pi += &(&t.scale * &Cyclo::i()).scale(&turns);
                form = form.add(&f.scale(&t.scale));
            }
            Line::Scaled { scalar, target } => {
                let j = scalar.root_of_unity_index().ok_or(Error::NotARootOfUnity)?;
                rest.push(LogTerm {
                    scale: t.scale.clone(),
                    arg: *target,
                    phase: principal(t.phase - j),
                });
            }
            _ => return Err(unsupported("logarithm of a non-exponential line")),
        }
    }
    if rest.is_empty() {
        Ok(Line::affine(pi, form))
    } else if pi.is_zero() && form.is_zero() {
        Ok(Line::Log(rest))
    } else {
        Err(unsupported("mixed logarithmic and affine line"))
    }
}

/// Substitute the lines of `m` into `f`, truncating into `target`.
/// Exponential lines become `phase · exp(form)` images, so each such source
/// variable must occur polynomially below its cap.
pub fn apply(m: &CovMap, f: &Series, target: &VarSet) -> Result<Series> {
    let src = f.varset();
    let mut map = Vec::new();
    for (k, v) in src.vars().iter().enumerate() {
        let used = f.terms().any(|(e, _)| e[k] > 0);
        let image = match m.line(*v) {
            None if used => return Err(Error::UnknownVariable(*v)),
            None => Image::Series(Series::zero(target)),
            Some(Line::Linear(form)) => Image::Series(form.to_series(target)?),
            Some(Line::Scaled { scalar, target: w }) => Image::Series(Series::var(target, *w)?.scale_cyclo(scalar)),
            Some(Line::PhaseExp { phase, form }) => Image::PhaseExp {
                phase: Cyclo::zeta_pow(*phase),
                form: form.to_series(target)?,
            },
            Some(Line::AffinePi { pi_coeff, form }) if pi_coeff.is_zero() => Image::Series(form.to_series(target)?),
            Some(Line::AffinePi { .. }) => {
                return Err(unsupported("a nonzero multiple of π has no exact series image"))
            }
            Some(Line::Log(_)) => return Err(unsupported("logarithmic line has no series image")),
        };
        map.push((*v, image));
    }
    f.substitute(&map, target)
}

/// Variables `z1, z2, u, q` with `z`/`u` total degree capped at `order`.
pub fn bracket_varset(qmax: u32, order: u32) -> VarSet {
    VarSet::new(&[(Var::Z1, order), (Var::Z2, order), (Var::U, order), (Var::Q, qmax)])
        .with_group(&[Var::Z1, Var::Z2, Var::U], order)
        .expect("variables present")
}

/// The two sides of the bracket identity at degree `d`.
pub struct BracketSides {
    /// `i^d (e^{-iθ} + (-1)^d e^{iθ})/2` with `θ = d(z2+u)/2`, via exponentials.
    pub bracket: Series,
    /// `(-1)^{(d-1)/2} sin θ` or `(-1)^{d/2} cos θ`, via the Taylor series.
    pub trig: Series,
    /// `(q e^{z1})^d / d³`.
    pub prefactor: Series,
    /// `e^{idu/2}`.
    pub twist: Series,
}

pub fn bracket_sides(d: u32, vs: &VarSet) -> Result<BracketSides> {
    let i = RatFun::from_cyclo(Cyclo::i());
    let half_d = RatFun::frac(d as i64, 2);
    let theta = Series::var(vs, Var::Z2)?
        .add(&Series::var(vs, Var::U)?)?
        .scale(&half_d);
    let i_theta = theta.scale(&i);
    let sign = RatFun::from_rational(rational::sign(d % 2 == 1));
    let bracket = i_theta
        .neg()
        .exp()?
        .add(&i_theta.exp()?.scale(&sign))?
        .scale(&RatFun::frac(1, 2))
        .scale_cyclo(&Cyclo::i().pow(d));
    let trig = if d % 2 == 1 {
        theta.sin()?.scale_rational(&rational::sign((d - 1) / 2 % 2 == 1))
    } else {
        theta.cos()?.scale_rational(&rational::sign(d / 2 % 2 == 1))
    };
    let q = Series::var(vs, Var::Q)?;
    let e1 = Series::var(vs, Var::Z1)?.exp()?;
    let prefactor = q
        .mul(&e1)?
        .pow(d)
        .scale_rational(&rational::frac(1, (d as i64).pow(3)));
    let twist = Series::var(vs, Var::U)?.scale(&(&i * &half_d)).exp()?;
    Ok(BracketSides {
        bracket,
        trig,
        prefactor,
        twist,
    })
}

/// For each `1 ≤ d ≤ qmax`, check
/// `P_d e^{idu/2} i^d [(e^{-iθ} + (-1)^d e^{iθ})/2] = P_d e^{idu/2} (±sin θ or ±cos θ)`
/// exactly in `z1, z2, u, q`, with `P_d = (q e^{z1})^d/d³`.
pub fn verify_bracket_identity(qmax: u32, order: u32) -> Result<Report> {
    let vs = bracket_varset(qmax, order);
    let mut report = Report::new("bracket");
    for d in 1..=qmax {
        let s = bracket_sides(d, &vs)?;
        let common = s.prefactor.mul(&s.twist)?;
        let lhs = common.mul(&s.bracket)?;
        let rhs = common.mul(&s.trig)?;
        report.push(Case::series(format!("d={}", d), lhs.first_difference(&rhs)?));
    }
    Ok(report)
}

/// The same comparison with `e^{idu/2}` on the left side only. It fails
/// from the `z2 u` term on, which is why the twist has to be carried on
/// both sides.
pub fn verify_bracket_literal(qmax: u32, order: u32) -> Result<Report> {
    let vs = bracket_varset(qmax, order);
    let mut report = Report::new("bracket-literal");
    for d in 1..=qmax {
        let s = bracket_sides(d, &vs)?;
        let lhs = s.prefactor.mul(&s.twist)?.mul(&s.bracket)?;
        let rhs = s.prefactor.mul(&s.trig)?;
        report.push(Case::series(format!("d={}", d), lhs.first_difference(&rhs)?));
    }
    Ok(report)
}

/// Both sides of `-G'''(θ) + i/2 = i e^{iθ}/(1 + e^{iθ})` to `θ^order`.
pub fn residual_sides(order: u32) -> Result<(Series, Series)> {
    let vs = VarSet::new(&[(Var::Theta, order)]);
    let mut g = g_series(order + 3);
    for _ in 0..3 {
        g = g.differentiate(Var::Z2)?;
    }
    let rename = [(Var::Z2, Image::Series(Series::var(&vs, Var::Theta)?))];
    let g3 = g.substitute(&rename, &vs)?;
    let half_i = RatFun::from_cyclo(Cyclo::i().scale(&rational::frac(1, 2)));
    let lhs = g3.neg().add(&Series::constant(&vs, half_i))?;
    let w = Series::var(&vs, Var::Theta)?
        .scale_cyclo(&Cyclo::i())
        .exp()?;
    let rhs = w
        .mul(&Series::one(&vs).add(&w)?.inv()?)?
        .scale_cyclo(&Cyclo::i());
    Ok((lhs, rhs))
}

/// One case per `θ` power.
pub fn verify_residual_thirdderiv(order: u32) -> Result<Report> {
    let (lhs, rhs) = residual_sides(order)?;
    let mut report = Report::new("residual");
    for k in 0..=order {
        let (a, b) = (lhs.coeff(&[(Var::Theta, k)])?, rhs.coeff(&[(Var::Theta, k)])?);
        let mut case = Case::new(format!("theta^{}", k), a == b, format!("{} vs {}", a, b));
        if !case.pass {
            case.first_mismatch = Some(alloc::vec![k]);
        }
        report.push(case);
    }
    Ok(report)
}

/// Compare `compose(invert(cov, 0), covbgp)` with the printed map, line by line.
pub fn verify_corollary() -> Result<Report> {
    let composed = compose(&invert(&build_cov(), 0)?, &build_covbgp())?;
    let expected = build_corollary();
    let mut report = Report::new("corollary");
    for (v, line) in expected.lines() {
        let got = composed.line(*v);
        let pass = got == Some(line);
        report.push(Case::new(
            format!("{}", v),
            pass,
            if pass { String::new() } else { format!("got {:?}", got) },
        ));
    }
    if composed.lines.len() != expected.lines.len() {
        report.push(Case::new(String::from("line-count"), false, String::new()));
    }
    Ok(report)
}

/// Constant part of the `u` line of `compose(invert(cov, b), covbgp)`:
/// `π · pi_coeff`, with `e^{i π pi_coeff} = ζ^phase`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchConstant {
    pub branch: i64,
    pub pi_coeff: Cyclo,
    pub phase: Option<i64>,
}

pub fn corollary_branch_constant(branch: i64) -> Result<BranchConstant> {
    let composed = compose(&invert(&build_cov(), branch)?, &build_covbgp())?;
    let pi_coeff = match composed.line(Var::U) {
        Some(Line::AffinePi { pi_coeff, .. }) => pi_coeff.clone(),
        Some(Line::Linear(_)) => Cyclo::zero(),
        other => return Err(Error::Unsupported(format!("unexpected u line {:?}", other))),
    };
    // e^{iπ p} = ζ^{6p} when 6p is an integer
    let phase = pi_coeff.as_rational().and_then(|p| {
        let six_p = p * rational::int(6);
        six_p
            .is_integer()
            .then(|| principal(num_traits::ToPrimitive::to_i64(&six_p.to_integer()).expect("small")))
    });
    Ok(BranchConstant {
        branch,
        pi_coeff,
        phase,
    })
}

/// Every logarithm branch `b ∈ -6..=5` gives a nonzero constant in the `u`
/// line, with phase `ζ^{-2}`, and branch 0 gives exactly `-π/3`.
pub fn verify_corollary_remark() -> Result<Report> {
    let mut report = Report::new("corollary-remark");
    for b in -6..=5 {
        let c = corollary_branch_constant(b)?;
        let mut pass = !c.pi_coeff.is_zero() && c.phase.is_some_and(|p| p != 0);
        if b == 0 {
            pass &= c.pi_coeff == Cyclo::frac(-1, 3) && c.phase == Some(-2);
        }
        report.push(Case::new(
            format!("branch={}", b),
            pass,
            format!("pi_coeff = {}, phase = {:?}", c.pi_coeff, c.phase),
        ));
    }
    Ok(report)
}
