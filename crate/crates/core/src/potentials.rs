//! Builders for the genus-0 potential of local `P(1,2)` and its extension by
//! the twisted-sector parameter `u`.
//!
//! The potential lives in the variables `z0, z1, z2` dual to `1, H, S` and
//! the curve-degree parameter `q`:
//!
//! ```text
//! F = classical + (-(t1+t2) G) + (t1+t2) Σ_d I_d(z2) e^{d z1} q^d
//! ```
//!
//! where `G''' = tan(z2/2)/2` and `I_d` is `(-1)^((d-1)/2) (2/d³) sin(d z2/2)`
//! for odd `d` and `(-1)^(d/2) (2/d³) cos(d z2/2)` for even `d`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::localization::{degree0_fixed_point_sum, Degree0Geometry};
use crate::ratfun::RatFun;
use crate::rational::{self, Rational};
use crate::series::{Image, Series, Var, VarSet};
use crate::{Error, Result};

/// Basis of the Chen–Ruan cohomology: fundamental class, point class of the
/// untwisted sector, fundamental class of the twisted sector.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CohClass {
    One,
    H,
    S,
}

impl CohClass {
    /// The dual variable in the potential.
    pub fn var(self) -> Var {
        match self {
            CohClass::One => Var::Z0,
            CohClass::H => Var::Z1,
            CohClass::S => Var::Z2,
        }
    }
}

/// A local invariant `<S^n>_d`, checked against the parity law: the number
/// of stacky insertions has the parity of the degree.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct LocalInvariantKey {
    d: u32,
    n: u32,
}

impl LocalInvariantKey {
    pub fn new(d: u32, n: u32) -> Result<Self> {
        if d % 2 != n % 2 {
            return Err(Error::ParityViolation { degree: d, insertions: n });
        }
        Ok(LocalInvariantKey { d, n })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn insertions(&self) -> u32 {
        self.n
    }

    /// Genus of the hyperelliptic cover: `n = 2g+1` for odd degree,
    /// `n = 2g+2` for even degree (so `g = -1` when `n = 0`).
    pub fn genus(&self) -> i64 {
        if self.d % 2 == 1 {
            (self.n as i64 - 1) / 2
        } else {
            self.n as i64 / 2 - 1
        }
    }
}

/// `t1 + t2`.
pub fn t_sum() -> RatFun {
    &RatFun::t1() + &RatFun::t2()
}

/// Equivariant triple intersection `<a, b, c>_0`.
pub fn degree0_triple(a: CohClass, b: CohClass, c: CohClass) -> RatFun {
    degree0_fixed_point_sum(&[a, b, c], &Degree0Geometry::standard())
}

/// Standard variable set: `z0, z1, z2` capped at `zorder` individually and
/// in total degree, `q` capped at `qmax`.
pub fn standard_varset(qmax: u32, zorder: u32) -> VarSet {
    VarSet::new(&[(Var::Z0, zorder), (Var::Z1, zorder), (Var::Z2, zorder), (Var::Q, qmax)])
        .with_group(&[Var::Z0, Var::Z1, Var::Z2], zorder)
        .expect("variables present")
}

/// Standard variable set plus `u` capped at `uorder`.
pub fn extended_varset(qmax: u32, zorder: u32, uorder: u32) -> VarSet {
    VarSet::new(&[
        (Var::Z0, zorder),
        (Var::Z1, zorder),
        (Var::Z2, zorder),
        (Var::Q, qmax),
        (Var::U, uorder),
    ])
    .with_group(&[Var::Z0, Var::Z1, Var::Z2], zorder)
    .expect("variables present")
}

fn mono_term(vs: &VarSet, mono: &[(Var, u32)], c: RatFun) -> Result<Series> {
    Series::monomial(vs, mono, c)
}

/// The cubic terms of the potential:
/// `z0³/(18 t1 t2) - z0 z1²/3 + z0 z2²/4 - (t1/4) z1 z2² - ((t1+2t2)/9) z1³`.
pub fn classical_part(vs: &VarSet) -> Result<Series> {
    let (t1, t2) = (RatFun::t1(), RatFun::t2());
    let c000 = RatFun::frac(1, 18).checked_div(&(&t1 * &t2))?;
    let c_z1z2 = &t1 * &RatFun::frac(-1, 4);
    let c_z1 = &(&t1 + &(&t2 * &RatFun::from_int(2))) * &RatFun::frac(-1, 9);
    let parts = [
        mono_term(vs, &[(Var::Z0, 3)], c000)?,
        mono_term(vs, &[(Var::Z0, 1), (Var::Z1, 2)], RatFun::frac(-1, 3))?,
        mono_term(vs, &[(Var::Z0, 1), (Var::Z2, 2)], RatFun::frac(1, 4))?,
        mono_term(vs, &[(Var::Z1, 1), (Var::Z2, 2)], c_z1z2)?,
        mono_term(vs, &[(Var::Z1, 3)], c_z1)?,
    ];
    parts.iter().try_fold(Series::zero(vs), |acc, p| acc.add(p))
}

/// `G` in the single variable `z2` up to `z2^order`: the triple
/// antiderivative of `tan(z2/2)/2` with zero integration constants.
pub fn g_series(order: u32) -> Series {
    let base = order.saturating_sub(3);
    let vs = VarSet::new(&[(Var::Z2, base)]);
    let z2 = Series::var(&vs, Var::Z2).expect("z2 present");
    let tan = z2
        .scale(&RatFun::frac(1, 2))
        .tan()
        .expect("zero constant term");
    let mut g = tan.scale(&RatFun::frac(1, 2));
    for _ in 0..3 {
        g = g.integrate(Var::Z2).expect("z2 present");
    }
    if order < 3 {
        // every term of G has degree at least 4
        return Series::zero(&VarSet::new(&[(Var::Z2, order)]));
    }
    g
}

/// `-(t1+t2) G` in `vs`.
pub fn stacky_degree0(vs: &VarSet) -> Result<Series> {
    let order = vs.cap(Var::Z2).ok_or(Error::UnknownVariable(Var::Z2))?;
    g_series(order).scale(&-t_sum()).convert(vs)
}

/// `[z2^b] I_d(z2)`, the Taylor coefficient of the closed-form local series.
pub fn local_series_coeff(d: u32, b: u32) -> Rational {
    if d % 2 != b % 2 || d == 0 {
        return Rational::zero();
    }
    let d_r = rational::int(d as i64);
    let outer = if d % 2 == 1 {
        rational::sign((d - 1) / 2 % 2 == 1)
    } else {
        rational::sign(d / 2 % 2 == 1)
    } * rational::int(2)
        / rational::powi(&d_r, 3);
    // sin or cos Taylor sign: (-1)^floor(b/2)
    let inner = rational::sign(b / 2 % 2 == 1) * rational::powi(&(d_r / rational::int(2)), b as i64)
        / rational::factorial(b);
    outer * inner
}

/// Closed form of the local invariant `I_{d,n} = n! [z2^n] I_d(z2)`.
pub fn local_invariant(key: LocalInvariantKey) -> Result<Rational> {
    if key.d == 0 {
        return Err(Error::InvalidDegree(format!(
            "degree 0 local invariants come from G, got n = {}",
            key.n
        )));
    }
    Ok(rational::factorial(key.n) * local_series_coeff(key.d, key.n))
}

/// `(t1+t2) Σ_{d ≤ qcap} I_d(z2) e^{d z1} q^d`, built coefficient by coefficient.
pub fn quantum_part(vs: &VarSet) -> Result<Series> {
    let qmax = vs.cap(Var::Q).ok_or(Error::UnknownVariable(Var::Q))?;
    let (i1, i2, iq) = (
        vs.index(Var::Z1).ok_or(Error::UnknownVariable(Var::Z1))?,
        vs.index(Var::Z2).ok_or(Error::UnknownVariable(Var::Z2))?,
        vs.index(Var::Q).unwrap(),
    );
    let (c1, c2) = (vs.caps()[i1], vs.caps()[i2]);
    let ts = t_sum();
    let mut terms = Vec::new();
    for d in 1..=qmax {
        let d_r = rational::int(d as i64);
        for b in (d % 2..=c2).step_by(2) {
            let cb = local_series_coeff(d, b);
            for a in 0..=c1 {
                let mut e = vec![0; vs.len()];
                e[i1] = a;
                e[i2] = b;
                e[iq] = d;
                if !vs.admits(&e) {
                    continue;
                }
                let c = &cb * rational::powi(&d_r, a as i64) / rational::factorial(a);
                terms.push((e, ts.scale(&c.into())));
            }
        }
    }
    Series::from_terms(vs, terms)
}

/// The full potential in `vs`.
pub fn potential(vs: &VarSet) -> Result<Series> {
    classical_part(vs)?
        .add(&stacky_degree0(vs)?)?
        .add(&quantum_part(vs)?)
}

/// Substitute `z2 ↦ z2 + u`, truncating into `target`. Exact when the
/// `z2` cap of `f` is at least the `z2` cap plus the `u` cap of `target`
/// and any total-degree cap of `f` has the same headroom.
pub fn extended(f: &Series, target: &VarSet) -> Result<Series> {
    if !target.contains(Var::U) {
        return Err(Error::UnknownVariable(Var::U));
    }
    let shift = Series::var(target, Var::Z2)?.add(&Series::var(target, Var::U)?)?;
    f.substitute(&[(Var::Z2, Image::Series(shift))], target)
}

/// The extended potential in `target`, computed from a potential with
/// enough `z2` headroom that every retained coefficient is exact.
pub fn extended_potential(target: &VarSet) -> Result<Series> {
    let source = headroom_varset(target)?;
    extended(&potential(&source)?, target)
}

/// The extended quantum part in `target`.
pub fn extended_quantum_part(target: &VarSet) -> Result<Series> {
    let source = headroom_varset(target)?;
    extended(&quantum_part(&source)?, target)
}

/// Drop `u` and raise the caps of `z2` and of every group containing it by
/// the `u` cap.
pub fn headroom_varset(target: &VarSet) -> Result<VarSet> {
    let m = target.cap(Var::U).ok_or(Error::UnknownVariable(Var::U))?;
    let spec: Vec<(Var, u32)> = target
        .vars()
        .iter()
        .zip(target.caps())
        .filter(|(v, _)| **v != Var::U)
        .map(|(v, c)| (*v, if *v == Var::Z2 { c + m } else { *c }))
        .collect();
    let mut vs = VarSet::new(&spec);
    for (group, cap) in target.groups() {
        let group: Vec<Var> = group.into_iter().filter(|v| *v != Var::U).collect();
        let extra = if group.contains(&Var::Z2) { m } else { 0 };
        vs = vs.with_group(&group, cap + extra)?;
    }
    Ok(vs)
}

/// `<H^{n1} S^{n2}>_d = d^{n1} (t1+t2) I_{d,n2}` for `d ≥ 1`.
pub fn gw_invariant(n1: u32, n2: u32, d: u32) -> Result<RatFun> {
    if d == 0 {
        return Err(Error::InvalidDegree(format!("expected d >= 1, got {}", d)));
    }
    let key = LocalInvariantKey::new(d, n2)?;
    let value = rational::powi(&rational::int(d as i64), n1 as i64) * local_invariant(key)?;
    Ok(t_sum().scale(&value.into()))
}

/// The `q^d` slice of a series, as a series in the same variables.
pub fn q_slice(f: &Series, d: u32) -> Result<Series> {
    let iq = f.varset().index(Var::Q).ok_or(Error::UnknownVariable(Var::Q))?;
    Series::from_terms(
        f.varset(),
        f.terms()
            .filter(|(e, _)| e[iq] == d)
            .map(|(e, c)| (e.clone(), c.clone())),
    )
}

/// `n!` for each exponent, the symmetry factor turning a coefficient into
/// an invariant.
pub fn symmetry_factor(exps: &[u32]) -> Rational {
    exps.iter()
        .fold(Rational::one(), |acc, e| acc * rational::factorial(*e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use CohClass::*;

    fn t1() -> RatFun {
        RatFun::t1()
    }
    fn t2() -> RatFun {
        RatFun::t2()
    }

    #[test]
    fn triple_intersections() {
        let q = RatFun::frac;
        assert_eq!(
            degree0_triple(One, One, One),
            q(1, 3).checked_div(&(&t1() * &t2())).unwrap()
        );
        assert!(degree0_triple(One, One, H).is_zero());
        assert_eq!(degree0_triple(One, H, H), q(-2, 3));
        assert_eq!(degree0_triple(One, S, S), q(1, 2));
        assert_eq!(degree0_triple(H, S, S), &t1() * &q(-1, 2));
        assert!(degree0_triple(One, One, S).is_zero());
        assert!(degree0_triple(S, S, S).is_zero());
        // symmetric in its arguments
        assert_eq!(degree0_triple(S, H, S), degree0_triple(H, S, S));
    }

    #[test]
    fn classical_coefficients() {
        let vs = standard_varset(0, 3);
        let f = classical_part(&vs).unwrap();
        assert_eq!(f.coeff(&[(Var::Z0, 1), (Var::Z2, 2)]).unwrap(), RatFun::frac(1, 4));
        assert!(f.coeff(&[(Var::Z0, 2), (Var::Z1, 1)]).unwrap().is_zero());
        let z13 = &(&t1() + &(&t2() * &RatFun::from_int(2))) * &RatFun::frac(-1, 9);
        assert_eq!(f.coeff(&[(Var::Z1, 3)]).unwrap(), z13);
        assert_eq!(f.len(), 5);
    }

    #[test]
    fn g_series_coefficients() {
        let g = g_series(8);
        let c = |k| g.coeff(&[(Var::Z2, k)]).unwrap();
        for k in 0..4 {
            assert!(c(k).is_zero());
        }
        assert_eq!(c(4), RatFun::frac(1, 96));
        assert_eq!(c(6), RatFun::frac(1, 5760));
        // <S^4>_0 = -(t1+t2) 4!/96
        let vs = standard_varset(0, 6);
        let s4 = stacky_degree0(&vs).unwrap().coeff(&[(Var::Z2, 4)]).unwrap();
        assert_eq!(s4.scale(&crate::Cyclo::from_int(24)), t_sum().scale(&crate::Cyclo::frac(-1, 4)));
    }

    #[test]
    fn quantum_coefficients() {
        let vs = standard_varset(4, 4);
        let f = quantum_part(&vs).unwrap();
        assert_eq!(f.coeff(&[(Var::Q, 1), (Var::Z2, 1)]).unwrap(), t_sum());
        assert_eq!(
            f.coeff(&[(Var::Q, 2)]).unwrap(),
            t_sum().scale(&crate::Cyclo::frac(-1, 4))
        );
        assert!(f.coeff(&[(Var::Q, 1), (Var::Z2, 2)]).unwrap().is_zero());
        assert!(f.coeff(&[(Var::Q, 1), (Var::Z2, 2), (Var::Z1, 1)]).unwrap().is_zero());
    }

    #[test]
    fn invariants() {
        assert_eq!(gw_invariant(1, 1, 1).unwrap(), t_sum());
        assert_eq!(gw_invariant(0, 0, 2).unwrap(), t_sum().scale(&crate::Cyclo::frac(-1, 4)));
        assert_eq!(gw_invariant(0, 1, 1).unwrap(), t_sum());
        assert_eq!(
            gw_invariant(0, 2, 1),
            Err(Error::ParityViolation { degree: 1, insertions: 2 })
        );
        assert!(matches!(gw_invariant(0, 4, 0), Err(Error::InvalidDegree(_))));
        let key = |d, n| LocalInvariantKey::new(d, n).unwrap();
        assert_eq!(local_invariant(key(1, 3)).unwrap(), rational::frac(-1, 4));
        assert_eq!(local_invariant(key(3, 1)).unwrap(), rational::frac(-1, 9));
        assert_eq!(local_invariant(key(2, 2)).unwrap(), rational::frac(1, 4));
        assert_eq!(local_invariant(key(4, 0)).unwrap(), rational::frac(1, 32));
        assert_eq!(key(2, 0).genus(), -1);
        assert_eq!(key(3, 5).genus(), 2);
    }

    #[test]
    fn extension_by_u() {
        let target = extended_varset(2, 3, 2);
        let fq = extended_quantum_part(&target).unwrap();
        let q = quantum_part(&standard_varset(2, 3)).unwrap();
        // u^1 z2^0 q^1 matches z2^1 q^1
        assert_eq!(
            fq.coeff(&[(Var::U, 1), (Var::Q, 1)]).unwrap(),
            q.coeff(&[(Var::Z2, 1), (Var::Q, 1)]).unwrap()
        );
        assert!(fq.coeff(&[(Var::U, 1), (Var::Z2, 1), (Var::Q, 1)]).unwrap().is_zero());
        // u -> 0 recovers the potential
        let full = extended_potential(&target).unwrap();
        let zero_u = full
            .substitute(
                &[(Var::U, Image::Series(Series::zero(&standard_varset(2, 3))))],
                &standard_varset(2, 3),
            )
            .unwrap();
        assert_eq!(zero_u, potential(&standard_varset(2, 3)).unwrap());
    }
}
