//! Truncated multivariate power series with [`RatFun`] coefficients.
//!
//! Every series carries a [`VarSet`]: an ordered list of variables, a cap on
//! the exponent of each, and optional caps on the total degree of groups of
//! variables. The set of admitted exponents is downward closed, so products
//! and compositions never corrupt retained coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclo;
use crate::ratfun::RatFun;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Formal variables that can appear in a series.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Z0,
    Z1,
    Z2,
    Q,
    U,
    X0,
    X1,
    X2,
    S1,
    S2,
    Y0,
    Y1,
    Y2,
    Q1,
    Q2,
    Theta,
    Psi,
    SAux,
}

impl Var {
    pub const ALL: [Var; 18] = [
        Var::Z0,
        Var::Z1,
        Var::Z2,
        Var::Q,
        Var::U,
        Var::X0,
        Var::X1,
        Var::X2,
        Var::S1,
        Var::S2,
        Var::Y0,
        Var::Y1,
        Var::Y2,
        Var::Q1,
        Var::Q2,
        Var::Theta,
        Var::Psi,
        Var::SAux,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Var::Z0 => "z0",
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::Q => "q",
            Var::U => "u",
            Var::X0 => "x0",
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::S1 => "s1",
            Var::S2 => "s2",
            Var::Y0 => "y0",
            Var::Y1 => "y1",
            Var::Y2 => "y2",
            Var::Q1 => "q1",
            Var::Q2 => "q2",
            Var::Theta => "theta",
            Var::Psi => "psi",
            Var::SAux => "s_aux",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered variables with truncation caps.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarSet {
    vars: Vec<Var>,
    caps: Vec<u32>,
    groups: Vec<(Vec<usize>, u32)>,
}

impl VarSet {
    /// Variables with per-variable caps. Panics on a repeated variable.
    pub fn new(spec: &[(Var, u32)]) -> Self {
        let vars: Vec<Var> = spec.iter().map(|(v, _)| *v).collect();
        for (k, v) in vars.iter().enumerate() {
            assert!(!vars[..k].contains(v), "variable {} repeated", v);
        }
        VarSet {
            vars,
            caps: spec.iter().map(|(_, c)| *c).collect(),
            groups: Vec::new(),
        }
    }

    /// Add a cap on the total degree in `group`.
    pub fn with_group(mut self, group: &[Var], cap: u32) -> Result<Self> {
        let idx = group
            .iter()
            .map(|v| self.index(*v).ok_or(Error::UnknownVariable(*v)))
            .collect::<Result<Vec<_>>>()?;
        self.groups.push((idx, cap));
        Ok(self)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    /// Group caps as `(variables, cap)`.
    pub fn groups(&self) -> Vec<(Vec<Var>, u32)> {
        self.groups
            .iter()
            .map(|(idx, c)| (idx.iter().map(|k| self.vars[*k]).collect(), *c))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|w| *w == v)
    }

    pub fn cap(&self, v: Var) -> Option<u32> {
        self.index(v).map(|k| self.caps[k])
    }

    pub fn contains(&self, v: Var) -> bool {
        self.index(v).is_some()
    }

    pub fn admits(&self, e: &[u32]) -> bool {
        e.iter().zip(&self.caps).all(|(x, c)| x <= c)
            && self
                .groups
                .iter()
                .all(|(idx, c)| idx.iter().map(|k| e[*k]).sum::<u32>() <= *c)
    }

    fn exps(&self, mono: &[(Var, u32)]) -> Result<Vec<u32>> {
        let mut e = vec![0; self.len()];
        for (v, k) in mono {
            let i = self.index(*v).ok_or(Error::UnknownVariable(*v))?;
            e[i] += *k;
        }
        Ok(e)
    }
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let (sa, sb): (u32, u32) = (a.iter().sum(), b.iter().sum());
    sa.cmp(&sb).then_with(|| b.cmp(a))
}

/// Image of a variable under [`Series::substitute`].
#[derive(Clone, Debug)]
pub enum Image {
    /// A series with zero constant term.
    Series(Series),
    /// `phase · exp(form)`; `form` must have zero constant term. The source
    /// variable must occur polynomially below its cap for the result to be
    /// exact, which is the caller's responsibility.
    PhaseExp { phase: Cyclo, form: Series },
}

/// Truncated power series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    vs: VarSet,
    terms: BTreeMap<Vec<u32>, RatFun>,
}

impl Series {
    pub fn zero(vs: &VarSet) -> Self {
        Series {
            vs: vs.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vs: &VarSet, c: RatFun) -> Self {
        let mut s = Series::zero(vs);
        s.add_term(vec![0; vs.len()], &c);
        s
    }

    pub fn one(vs: &VarSet) -> Self {
        Self::constant(vs, RatFun::one())
    }

    /// The series `v`, or zero if `v` has cap 0.
    pub fn var(vs: &VarSet, v: Var) -> Result<Self> {
        Self::monomial(vs, &[(v, 1)], RatFun::one())
    }

    /// `c · Π v^k`; zero when the monomial lies beyond the caps.
    pub fn monomial(vs: &VarSet, mono: &[(Var, u32)], c: RatFun) -> Result<Self> {
        let e = vs.exps(mono)?;
        let mut s = Series::zero(vs);
        if vs.admits(&e) {
            s.add_term(e, &c);
        }
        Ok(s)
    }

    /// Build from raw exponent vectors, dropping those beyond the caps.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, RatFun)>>(vs: &VarSet, it: I) -> Result<Self> {
        let mut s = Series::zero(vs);
        for (e, c) in it {
            if e.len() != vs.len() {
                return Err(Error::VarSetMismatch);
            }
            if vs.admits(&e) {
                s.add_term(e, &c);
            }
        }
        Ok(s)
    }

    pub fn varset(&self) -> &VarSet {
        &self.vs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RatFun)> {
        self.terms.iter()
    }

    /// Terms sorted by graded-lex exponent, lowest degree first.
    pub fn terms_sorted(&self) -> Vec<(&Vec<u32>, &RatFun)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(a.0, b.0));
        v
    }

    fn add_term(&mut self, e: Vec<u32>, c: &RatFun) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn constant_term(&self) -> RatFun {
        self.terms
            .get(&vec![0; self.vs.len()])
            .cloned()
            .unwrap_or_else(RatFun::zero)
    }

    /// Coefficient of `Π v^k`; variables not listed have exponent 0.
    pub fn coeff(&self, mono: &[(Var, u32)]) -> Result<RatFun> {
        let e = self.vs.exps(mono)?;
        self.coeff_exps(&e)
    }

    pub fn coeff_exps(&self, e: &[u32]) -> Result<RatFun> {
        if e.len() != self.vs.len() {
            return Err(Error::VarSetMismatch);
        }
        if !self.vs.admits(e) {
            return Err(Error::OutOfCap);
        }
        Ok(self.terms.get(e).cloned().unwrap_or_else(RatFun::zero))
    }

    fn check(&self, rhs: &Series) -> Result<()> {
        if self.vs == rhs.vs {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn add(&self, rhs: &Series) -> Result<Series> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Series) -> Result<Series> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            vs: self.vs.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Series) -> Result<Series> {
        self.check(rhs)?;
        let mut out = Series::zero(&self.vs);
        let mut e = vec![0; self.vs.len()];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                for k in 0..e.len() {
                    e[k] = ea[k] + eb[k];
                }
                if self.vs.admits(&e) {
                    out.add_term(e.clone(), &(ca * cb));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFun) -> Series {
        if c.is_zero() {
            return Series::zero(&self.vs);
        }
        Series {
            vs: self.vs.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn scale_cyclo(&self, c: &Cyclo) -> Series {
        self.scale(&RatFun::from_cyclo(c.clone()))
    }

    pub fn scale_rational(&self, c: &Rational) -> Series {
        self.scale(&RatFun::from_rational(c.clone()))
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut acc = Series::one(&self.vs);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same varset");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same varset");
            }
        }
        acc
    }

    fn require_no_constant(&self, what: &'static str) -> Result<()> {
        if self.constant_term().is_zero() {
            Ok(())
        } else {
            Err(Error::NonZeroConstantTerm(what))
        }
    }

    /// `Σ_k sign(k) f^k / k!` over the k selected by `pick`, which returns
    /// the sign to use or `None` to skip.
    fn taylor(&self, pick: impl Fn(u32) -> Option<bool>) -> Series {
        let mut out = Series::zero(&self.vs);
        let mut power = Series::one(&self.vs);
        let mut k = 0u32;
        loop {
            if let Some(neg) = pick(k) {
                let c = rational::sign(neg) / rational::factorial(k);
                out = out.add(&power.scale_rational(&c)).expect("same varset");
            }
            k += 1;
            power = power.mul(self).expect("same varset");
            if power.is_zero() {
                return out;
            }
        }
    }

    pub fn exp(&self) -> Result<Series> {
        self.require_no_constant("exp")?;
        Ok(self.taylor(|_| Some(false)))
    }

    pub fn sin(&self) -> Result<Series> {
        self.require_no_constant("sin")?;
        Ok(self.taylor(|k| (k % 2 == 1).then_some(k % 4 == 3)))
    }

    pub fn cos(&self) -> Result<Series> {
        self.require_no_constant("cos")?;
        Ok(self.taylor(|k| (k % 2 == 0).then_some(k % 4 == 2)))
    }

    pub fn tan(&self) -> Result<Series> {
        self.require_no_constant("tan")?;
        self.sin()?.mul(&self.cos()?.inv()?)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Series> {
        let c = self.constant_term();
        let c_inv = c.inv()?;
        // f = c (1 + g) with g having zero constant term
        let g = self.scale(&c_inv).sub(&Series::one(&self.vs))?;
        let neg_g = g.neg();
        let mut out = Series::one(&self.vs);
        let mut power = Series::one(&self.vs);
        loop {
            power = power.mul(&neg_g)?;
            if power.is_zero() {
                return Ok(out.scale(&c_inv));
            }
            out = out.add(&power)?;
        }
    }

    /// `∂f/∂v`. The result lives in a varset where the cap of `v`, and of any
    /// group containing `v`, is one lower.
    pub fn differentiate(&self, v: Var) -> Result<Series> {
        let i = self.vs.index(v).ok_or(Error::UnknownVariable(v))?;
        let mut vs = self.vs.clone();
        vs.caps[i] = vs.caps[i].saturating_sub(1);
        for (idx, c) in vs.groups.iter_mut() {
            if idx.contains(&i) {
                *c = c.saturating_sub(1);
            }
        }
        let mut out = Series::zero(&vs);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            if vs.admits(&e2) {
                out.add_term(e2, &c.scale(&Cyclo::from_int(e[i] as i64)));
            }
        }
        Ok(out)
    }

    /// Antiderivative in `v` with zero constant of integration. The cap of
    /// `v`, and of any group containing `v`, grows by one.
    pub fn integrate(&self, v: Var) -> Result<Series> {
        let i = self.vs.index(v).ok_or(Error::UnknownVariable(v))?;
        let mut vs = self.vs.clone();
        vs.caps[i] += 1;
        for (idx, c) in vs.groups.iter_mut() {
            if idx.contains(&i) {
                *c += 1;
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] += 1;
                (e2, c.scale(&Cyclo::frac(1, e[i] as i64 + 1)))
            })
            .collect();
        Ok(Series { vs, terms })
    }

    /// Re-express in `target`, dropping terms beyond its caps. Fails if a
    /// term involves a variable that `target` lacks.
    pub fn convert(&self, target: &VarSet) -> Result<Series> {
        let map = self
            .vs
            .vars
            .iter()
            .map(|v| target.index(*v))
            .collect::<Vec<_>>();
        let mut out = Series::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (k, x) in e.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                match map[k] {
                    Some(j) => e2[j] = *x,
                    None => return Err(Error::UnknownVariable(self.vs.vars[k])),
                }
            }
            if target.admits(&e2) {
                out.add_term(e2, c);
            }
        }
        Ok(out)
    }

    /// Ring homomorphism sending each mapped variable to its image and every
    /// other variable to itself, with the result truncated to `target`.
    pub fn substitute(&self, map: &[(Var, Image)], target: &VarSet) -> Result<Series> {
        let mut bases: Vec<Series> = Vec::with_capacity(self.vs.len());
        for v in &self.vs.vars {
            let base = match map.iter().find(|(w, _)| w == v) {
                Some((_, Image::Series(s))) => {
                    if s.vs != *target {
                        return Err(Error::VarSetMismatch);
                    }
                    s.require_no_constant("substitution image")?;
                    s.clone()
                }
                Some((_, Image::PhaseExp { phase, form })) => {
                    if form.vs != *target {
                        return Err(Error::VarSetMismatch);
                    }
                    form.exp()?.scale_cyclo(phase)
                }
                None => {
                    if target.contains(*v) {
                        Series::var(target, *v)?
                    } else if self.terms.keys().any(|e| e[bases.len()] > 0) {
                        return Err(Error::UnknownVariable(*v));
                    } else {
                        Series::zero(target)
                    }
                }
            };
            bases.push(base);
        }
        // cached powers of every base
        let mut powers: Vec<Vec<Series>> = bases.iter().map(|_| vec![Series::one(target)]).collect();
        let mut out = Series::zero(target);
        for (e, c) in &self.terms {
            let mut term = Series::constant(target, c.clone());
            for (k, x) in e.iter().enumerate() {
                let x = *x as usize;
                while powers[k].len() <= x {
                    let next = powers[k].last().unwrap().mul(&bases[k])?;
                    powers[k].push(next);
                }
                if x > 0 {
                    term = term.mul(&powers[k][x])?;
                }
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Apply `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&RatFun) -> RatFun) -> Series {
        let mut out = Series::zero(&self.vs);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &f(c));
        }
        out
    }

    /// First exponent (graded-lex) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Series) -> Result<Option<Vec<u32>>> {
        let d = self.sub(other)?;
        Ok(d.terms_sorted().first().map(|(e, _)| (*e).clone()))
    }

    /// Numerical value at `t1, t2` and a point given by `(variable, value)`
    /// pairs; unlisted variables are set to zero.
    pub fn eval(&self, t1: &Rational, t2: &Rational, point: &[(Var, Complex64)]) -> Result<Complex64> {
        let mut vals = vec![Complex64::new(0.0, 0.0); self.vs.len()];
        for (v, x) in point {
            let i = self.vs.index(*v).ok_or(Error::UnknownVariable(*v))?;
            vals[i] = *x;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = c.eval(t1, t2)?.embed();
            for (k, x) in e.iter().enumerate() {
                for _ in 0..*x {
                    m *= vals[k];
                }
            }
            acc += m;
        }
        Ok(acc)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_sorted();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut mono = String::new();
            for (j, x) in e.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(self.vs.vars[j].name());
                if *x > 1 {
                    mono.push_str(&alloc::format!("^{}", x));
                }
            }
            if mono.is_empty() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*{}", c, mono)?;
            }
        }
        Ok(())
    }
}
