//! Torus localization for the local invariants `I_{d,n}`.
//!
//! Only one fixed locus contributes: a contracted genus-`g` hyperelliptic
//! curve `F` over `0` carrying the marked points, glued to a degree-`d` cover
//! `C` of `P(1,2)` fully ramified over `0` and `∞`. Contributions are Laurent
//! monomials in the auxiliary weight `s` ([`AuxMonomial`]); a fully
//! assembled invariant must have `s`-degree zero.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Mul;

use num_traits::{One, Zero};

use crate::potentials::{local_invariant, CohClass, LocalInvariantKey};
use crate::ratfun::RatFun;
use crate::rational::{self, Rational};
use crate::series::{Series, Var, VarSet};
use crate::{Error, Result};

/// Geometry entering the degree-0 fixed-point sums: tangent weights and
/// restrictions of `H` at the fixed points `0` and `∞`, and the orbifold
/// automorphism factor at each.
#[derive(Clone, Debug)]
pub struct Degree0Geometry {
    pub tangent: [[RatFun; 2]; 2],
    pub h: [RatFun; 2],
    pub aut: [Rational; 2],
}

impl Degree0Geometry {
    /// Base and fiber weights `(t2 - t1/2, 3t1/2)` at `0` and
    /// `(t1 - 2t2, 3t2)` at `∞`; `H|0 = -t1`, `H|∞ = -2t2`; `Z_2` at `0`.
    pub fn standard() -> Self {
        let (t1, t2) = (RatFun::t1(), RatFun::t2());
        let half = RatFun::frac(1, 2);
        let two = RatFun::from_int(2);
        let three = RatFun::from_int(3);
        Degree0Geometry {
            tangent: [
                [&t2 - &(&t1 * &half), &(&t1 * &three) * &half],
                [&t1 - &(&t2 * &two), &t2 * &three],
            ],
            h: [-&t1, -&(&t2 * &two)],
            aut: [rational::frac(1, 2), Rational::one()],
        }
    }
}

/// `<a, b, c>_0` by localization. With no `S` insertion this is the sum
/// over both fixed points; with two it is the twisted-sector point over `0`,
/// which has no moving normal directions; with an odd number it vanishes.
pub fn degree0_fixed_point_sum(classes: &[CohClass; 3], geom: &Degree0Geometry) -> RatFun {
    let n_s = classes.iter().filter(|c| **c == CohClass::S).count();
    let restrict = |p: usize| {
        classes.iter().fold(RatFun::one(), |acc, c| match c {
            CohClass::One | CohClass::S => acc,
            CohClass::H => &acc * &geom.h[p],
        })
    };
    match n_s {
        0 => (0..2).fold(RatFun::zero(), |acc, p| {
            let euler = &geom.tangent[p][0] * &geom.tangent[p][1];
            let term = restrict(p)
                .checked_div(&euler)
                .expect("nonzero tangent weights")
                .scale(&geom.aut[p].clone().into());
            &acc + &term
        }),
        2 => restrict(0).scale(&geom.aut[0].clone().into()),
        _ => RatFun::zero(),
    }
}

/// Rational multiple of `s^(half/2)`, with the power stored in half-units.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AuxMonomial {
    pub coeff: Rational,
    pub half_power: i32,
}

impl AuxMonomial {
    pub fn new(coeff: Rational, half_power: i32) -> Self {
        AuxMonomial { coeff, half_power }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, 0)
    }

    /// `c · s^k`.
    pub fn s_pow(c: Rational, k: i32) -> Self {
        Self::new(c, 2 * k)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.coeff.is_zero() {
            return Err(Error::ZeroWeight);
        }
        Ok(Self::new(self.coeff.recip(), -self.half_power))
    }

    /// The rational value, provided the `s` power has cancelled.
    pub fn value(&self) -> Result<Rational> {
        if self.half_power != 0 && !self.coeff.is_zero() {
            return Err(Error::AuxWeightNotCancelled(self.half_power));
        }
        Ok(self.coeff.clone())
    }
}

impl Mul for AuxMonomial {
    type Output = AuxMonomial;
    fn mul(self, rhs: AuxMonomial) -> AuxMonomial {
        AuxMonomial::new(self.coeff * rhs.coeff, self.half_power + rhs.half_power)
    }
}

/// Line bundles whose sections enter the edge terms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bundle {
    OMinusOne,
    OMinusHalf,
    Tangent,
}

impl Bundle {
    pub const ALL: [Bundle; 3] = [Bundle::OMinusOne, Bundle::OMinusHalf, Bundle::Tangent];

    /// Degree on `P(1,2)`.
    pub fn degree(self) -> Rational {
        match self {
            Bundle::OMinusOne => rational::int(-1),
            Bundle::OMinusHalf => rational::frac(-1, 2),
            Bundle::Tangent => rational::frac(3, 2),
        }
    }

    /// Character of the `Z_2` stabilizer over `0` on the fiber.
    fn character(self) -> u32 {
        match self {
            Bundle::OMinusOne => 0,
            Bundle::OMinusHalf | Bundle::Tangent => 1,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Weights (in units of `s`) of the lifted action over `0` and `∞`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightTable {
    pub over_zero: [Rational; 3],
    pub over_infinity: [Rational; 3],
}

impl WeightTable {
    /// The tabulated lifting, with the tangent weight over `∞` set to `-1`
    /// as stated for the canonical linearization.
    pub fn standard() -> Self {
        WeightTable {
            over_zero: [rational::int(0), rational::frac(-1, 2), rational::frac(1, 2)],
            over_infinity: [rational::int(1), rational::int(0), rational::int(-1)],
        }
    }

    /// The table entry by entry, including `0` for the tangent bundle
    /// over `∞`.
    pub fn printed() -> Self {
        let mut t = Self::standard();
        t.over_infinity[Bundle::Tangent.index()] = rational::int(0);
        t
    }

    /// Bundles whose weight difference over the two points differs from
    /// their degree.
    pub fn inconsistencies(&self) -> Vec<Bundle> {
        Bundle::ALL
            .into_iter()
            .filter(|b| {
                &self.over_zero[b.index()] - &self.over_infinity[b.index()] != b.degree()
            })
            .collect()
    }

    pub fn check(&self) -> Result<()> {
        match self.inconsistencies().first() {
            None => Ok(()),
            Some(b) => Err(Error::Unsupported(format!(
                "weights of {:?} do not differ by its degree",
                b
            ))),
        }
    }
}

/// Weights of `H^0` and `H^1` of `f*L` on the degree-`d` edge, in units of
/// `s`. For odd `d` sections are `Y0^m` of weight `λ0 - m/(2d)` with
/// `m` of the parity of the `Z_2` character; for even `d` they are `Z0^m`
/// of weight `λ0 - m/d`. The zero weight of the tangent bundle (the
/// infinitesimal automorphism) is removed.
pub fn edge_weights(table: &WeightTable, bundle: Bundle, d: u32) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if d == 0 {
        return Err(Error::InvalidDegree(String::from("edge degree must be positive")));
    }
    let odd = d % 2 == 1;
    let scale = if odd { 2 * d } else { d } as i64;
    let lam0 = &table.over_zero[bundle.index()];
    let diff = lam0 - &table.over_infinity[bundle.index()];
    let top = &diff * rational::int(scale);
    if !top.is_integer() {
        return Err(Error::Unsupported(format!(
            "non-integral section range for {:?} in degree {}",
            bundle, d
        )));
    }
    let top: i64 = num_traits::ToPrimitive::to_i64(&top.to_integer()).expect("small");
    let admissible = |m: i64| !odd || m.rem_euclid(2) == bundle.character() as i64;
    let weight = |m: i64| lam0 - rational::frac(m, scale);
    let (mut h0, mut h1) = (Vec::new(), Vec::new());
    if top >= 0 {
        h0 = (0..=top).filter(|m| admissible(*m)).map(weight).collect();
    } else {
        h1 = (top + 1..0).filter(|m| admissible(*m)).map(weight).collect();
    }
    if bundle == Bundle::Tangent {
        if let Some(k) = h0.iter().position(Zero::is_zero) {
            h0.remove(k);
        }
    }
    if h0.iter().any(Zero::is_zero) {
        return Err(Error::ZeroWeight);
    }
    Ok((h0, h1))
}

/// Product of `H^1` weights over `H^0` weights for all three bundles.
pub fn edge_contribution(table: &WeightTable, d: u32) -> Result<AuxMonomial> {
    let mut acc = AuxMonomial::one();
    for b in Bundle::ALL {
        let (h0, h1) = edge_weights(table, b, d)?;
        for w in h1 {
            acc = acc * AuxMonomial::s_pow(w, 1);
        }
        for w in h0 {
            acc = acc * AuxMonomial::s_pow(w, 1).inv()?;
        }
    }
    Ok(acc)
}

/// `e(E^∨(1/2) ⊕ E^∨(-1/2))` on a genus-`g` curve. Mumford's relation
/// `c(E) c(E^∨) = 1` gives `(-1)^g (s/2)^{2g}`; `signed = false` drops the
/// `(-1)^g`.
pub fn vertex_contribution(g: i64, signed: bool) -> AuxMonomial {
    let c = rational::powi(&rational::frac(1, 2), 2 * g);
    let sign = rational::sign(signed && g.rem_euclid(2) == 1);
    AuxMonomial::s_pow(sign * c, 2 * g as i32)
}

/// Node-smoothing and automorphism factor `-(s/d) (a s - b ψ)^{-1}`,
/// expanded geometrically in `ψ`.
#[derive(Clone, Debug)]
pub struct PsiExpansion {
    d: u32,
    a: Rational,
    b: Rational,
}

impl PsiExpansion {
    /// Stacky node: `-(s/d)(s/(2d) - ψ/2)^{-1}`.
    pub fn odd(d: u32) -> Self {
        PsiExpansion {
            d,
            a: rational::frac(1, 2 * d as i64),
            b: rational::frac(1, 2),
        }
    }

    /// Non-stacky node: `-(s/d)(s/d - ψ)^{-1}`.
    pub fn even(d: u32) -> Self {
        PsiExpansion {
            d,
            a: rational::frac(1, d as i64),
            b: Rational::one(),
        }
    }

    /// Coefficient of `ψ^k`, namely `-(1/(d a)) (b/a)^k s^{-k}`. Negative
    /// `k` continues the formula to the unstable cases (`g = 0` odd,
    /// `g = -1` even), where it reproduces the factor the missing vertex
    /// leaves behind.
    pub fn coeff(&self, k: i64) -> AuxMonomial {
        let d = rational::int(self.d as i64);
        let c = -(self.a.clone() * d).recip() * rational::powi(&(&self.b / &self.a), k);
        AuxMonomial::s_pow(c, -(k as i32))
    }
}

/// Every factor of one fixed-locus contribution.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub d: u32,
    pub g: i64,
    pub edge: AuxMonomial,
    pub vertex: AuxMonomial,
    pub flag: AuxMonomial,
    pub node_top: AuxMonomial,
    /// `∫ψ^top` over admissible covers, the hyperelliptic Hurwitz number.
    pub hurwitz: Rational,
    pub gluing: Rational,
    pub edge_automorphism: Rational,
}

impl Assembly {
    pub fn total(&self) -> AuxMonomial {
        self.edge.clone()
            * self.vertex.clone()
            * self.flag.clone()
            * self.node_top.clone()
            * AuxMonomial::constant(&self.hurwitz * &self.gluing * &self.edge_automorphism)
    }

    pub fn value(&self) -> Result<Rational> {
        self.total().value()
    }
}

/// Odd degree, `2g+1` insertions: stacky node, no flag term, top power
/// `ψ^{2g-1}`, and the `1/d` automorphism of the edge cover.
pub fn assembly_odd(d: u32, g: u32, table: &WeightTable) -> Result<Assembly> {
    if d.is_multiple_of(2) {
        return Err(Error::InvalidDegree(format!("expected odd degree, got {}", d)));
    }
    let g = g as i64;
    Ok(Assembly {
        d,
        g,
        edge: edge_contribution(table, d)?,
        vertex: vertex_contribution(g, true),
        flag: AuxMonomial::one(),
        node_top: PsiExpansion::odd(d).coeff(2 * g - 1),
        hurwitz: rational::frac(1, 2),
        gluing: Rational::one(),
        edge_automorphism: rational::frac(1, d as i64),
    })
}

/// Even degree, `2g+2` insertions (`g = -1` is the invariant with no
/// insertions): non-stacky node with gluing factor 2, flag terms `s/2` from
/// the tangent bundle and `-s/2` from `O(-1/2)`, top power `ψ^{2g}`.
pub fn assembly_even(d: u32, g: i64, table: &WeightTable) -> Result<Assembly> {
    if d == 0 || d % 2 == 1 {
        return Err(Error::InvalidDegree(format!("expected positive even degree, got {}", d)));
    }
    if g < -1 {
        return Err(Error::InvalidDegree(format!("genus must be at least -1, got {}", g)));
    }
    Ok(Assembly {
        d,
        g,
        edge: edge_contribution(table, d)?,
        vertex: vertex_contribution(g, true),
        flag: AuxMonomial::s_pow(rational::frac(1, 2), 1) * AuxMonomial::s_pow(rational::frac(-1, 2), 1),
        node_top: PsiExpansion::even(d).coeff(2 * g),
        hurwitz: rational::frac(1, 2),
        gluing: rational::int(2),
        edge_automorphism: rational::frac(1, d as i64),
    })
}

/// `I_{d,2g+1}` from the assembled fixed-locus contribution.
pub fn assemble_odd(d: u32, g: u32) -> Result<Rational> {
    assembly_odd(d, g, &WeightTable::standard())?.value()
}

/// `I_{d,2g+2}` from the assembled fixed-locus contribution.
pub fn assemble_even(d: u32, g: i64) -> Result<Rational> {
    assembly_even(d, g, &WeightTable::standard())?.value()
}

/// `(-1)^{g+(d-1)/2} (d/2)^{2g-1} · 1/2`, the odd-degree formula with the
/// Hurwitz number inserted. It differs from the closed form by a factor `d`.
pub fn odd_formula_without_automorphism(d: u32, g: u32) -> Rational {
    let sign = rational::sign((g + (d - 1) / 2) % 2 == 1);
    sign * rational::powi(&rational::frac(d as i64, 2), 2 * g as i64 - 1) * rational::frac(1, 2)
}

/// Outcome of reading the printed edge, vertex and node terms literally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiteralReading {
    pub d: u32,
    pub g: i64,
    /// Leftover power of `s`, in half-units.
    pub half_power: i32,
    /// The rational value when the terms are rational and `s` cancels.
    pub value: Option<Rational>,
    pub note: String,
}

/// Literal odd-degree product: edge terms
/// `s^{(d-1)/2}(d-1)!!/(2d)^{(d-1)/2}`, `s^{d-1}(2d-2)!/(2d)^{d-1}` over
/// `-s^{(3d-1)/2}(2d)!!(d-1)!!/(2d)^{(3d-1)/2}`, unsigned vertex, node top
/// coefficient and `1/2`, with no edge automorphism.
pub fn literal_odd(d: u32, g: u32) -> Result<LiteralReading> {
    if d.is_multiple_of(2) {
        return Err(Error::InvalidDegree(format!("expected odd degree, got {}", d)));
    }
    let (di, two_d) = (d as i64, rational::int(2 * d as i64));
    let e1 = rational::double_factorial(di - 1) / rational::powi(&two_d, (di - 1) / 2);
    let e2 = rational::factorial(2 * d - 2) / rational::powi(&two_d, di - 1);
    let den = -(rational::double_factorial(2 * di) * rational::double_factorial(di - 1))
        / rational::powi(&two_d, (3 * di - 1) / 2);
    let edge = AuxMonomial::new(e1, (d - 1) as i32)
        * AuxMonomial::new(e2, 2 * (d - 1) as i32)
        * AuxMonomial::new(den, (3 * d - 1) as i32).inv()?;
    let g = g as i64;
    let total = edge
        * vertex_contribution(g, false)
        * PsiExpansion::odd(d).coeff(2 * g - 1)
        * AuxMonomial::constant(rational::frac(1, 2));
    let value = total.value().ok();
    Ok(LiteralReading {
        d,
        g,
        half_power: total.half_power,
        value,
        note: String::from("printed edge terms with (2d-2)!, unsigned vertex, no 1/d"),
    })
}

/// Literal even-degree product. The first printed edge term carries
/// `(2d)^{(d-1)/2}`, irrational for even `d`, and the `s` powers leave a
/// half-integral remainder, so no rational value exists.
pub fn literal_even(d: u32, g: i64) -> Result<LiteralReading> {
    if d == 0 || d % 2 == 1 {
        return Err(Error::InvalidDegree(format!("expected positive even degree, got {}", d)));
    }
    let e1 = d as i32 - 1; // s^{(d-1)/2}
    let e2 = 2 * (d as i32 - 1); // s^{d-1}
    let den = 3 * d as i32; // s^{3d/2}
    let flag = 2; // s/2
    let vertex = 4 * g as i32; // (s/2)^{2g}
    let node = -4 * g as i32; // top ψ^{2g} coefficient
    let half_power = e1 + e2 - den + flag + vertex + node;
    Ok(LiteralReading {
        d,
        g,
        half_power,
        value: None,
        note: format!(
            "(2d)^((d-1)/2) is irrational for d = {} and s^({}/2) survives",
            d, half_power
        ),
    })
}

/// `(-1)^{(d-1)/2} (2/d³) sin(d z2/2)` to `z2^order`, via the sine series.
pub fn resummed_odd(d: u32, order: u32) -> Result<Series> {
    if d.is_multiple_of(2) {
        return Err(Error::InvalidDegree(format!("expected odd degree, got {}", d)));
    }
    let (arg, prefactor) = resummed_parts(d, order, (d - 1) / 2);
    Ok(arg.sin()?.scale(&prefactor))
}

/// `(-1)^{d/2} (2/d³) cos(d z2/2)` to `z2^order`, via the cosine series.
pub fn resummed_even(d: u32, order: u32) -> Result<Series> {
    if d == 0 || d % 2 == 1 {
        return Err(Error::InvalidDegree(format!("expected positive even degree, got {}", d)));
    }
    let (arg, prefactor) = resummed_parts(d, order, d / 2);
    Ok(arg.cos()?.scale(&prefactor))
}

fn resummed_parts(d: u32, order: u32, sign_exp: u32) -> (Series, RatFun) {
    let vs = VarSet::new(&[(Var::Z2, order)]);
    let arg = Series::var(&vs, Var::Z2)
        .expect("z2 present")
        .scale(&RatFun::frac(d as i64, 2));
    let d3 = rational::powi(&rational::int(d as i64), 3);
    let c = rational::sign(sign_exp % 2 == 1) * rational::int(2) / d3;
    (arg, RatFun::from_rational(c))
}

/// `n! [z2^n]` of a resummed series.
pub fn invariant_from_series(f: &Series, n: u32) -> Result<Rational> {
    let c = f.coeff(&[(Var::Z2, n)])?;
    let c = c
        .as_cyclo()
        .and_then(|c| c.as_rational().cloned())
        .ok_or_else(|| Error::Unsupported(String::from("coefficient is not rational")))?;
    Ok(rational::factorial(n) * c)
}

/// Closed-form value of the same invariant, for comparison.
pub fn closed_form(d: u32, n: u32) -> Result<Rational> {
    local_invariant(LocalInvariantKey::new(d, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        rational::frac(n, d)
    }

    #[test]
    fn weight_table() {
        assert!(WeightTable::standard().check().is_ok());
        assert_eq!(WeightTable::printed().inconsistencies(), [Bundle::Tangent]);
    }

    #[test]
    fn edge_weights_odd() {
        let t = WeightTable::standard();
        let (h0, h1) = edge_weights(&t, Bundle::Tangent, 3).unwrap();
        assert!(h1.is_empty());
        assert_eq!(h0, [q(1, 3), q(-1, 3), q(-2, 3), q(-1, 1)]);
        let (h0, h1) = edge_weights(&t, Bundle::OMinusOne, 3).unwrap();
        assert!(h0.is_empty());
        assert_eq!(h1, [q(2, 3), q(1, 3)]);
        let (_, h1) = edge_weights(&t, Bundle::OMinusHalf, 3).unwrap();
        assert_eq!(h1, [q(-1, 3)]);
    }

    #[test]
    fn small_assemblies() {
        assert_eq!(assemble_odd(1, 0).unwrap(), q(1, 1));
        assert_eq!(assemble_odd(3, 0).unwrap(), q(-1, 9));
        assert_eq!(assemble_odd(1, 1).unwrap(), q(-1, 4));
        assert_eq!(assemble_even(2, -1).unwrap(), q(-1, 4));
        assert_eq!(assemble_even(2, 0).unwrap(), q(1, 4));
        assert_eq!(assemble_even(4, -1).unwrap(), q(1, 32));
        assert!(assemble_even(3, 0).is_err());
        assert!(assemble_odd(2, 0).is_err());
    }

    #[test]
    fn assembly_matches_closed_form() {
        for d in (1..=9).step_by(2) {
            for g in 0..=4 {
                let a = assembly_odd(d, g, &WeightTable::standard()).unwrap();
                assert_eq!(a.total().half_power, 0, "d={} g={}", d, g);
                assert_eq!(a.value().unwrap(), closed_form(d, 2 * g + 1).unwrap());
                // the closed form is d times smaller than the formula without 1/d
                assert_eq!(
                    odd_formula_without_automorphism(d, g) / rational::int(d as i64),
                    a.value().unwrap()
                );
            }
        }
        for d in (2..=8).step_by(2) {
            for g in -1..=4 {
                let n = (2 * g + 2) as u32;
                assert_eq!(assemble_even(d, g).unwrap(), closed_form(d, n).unwrap());
            }
        }
    }

    #[test]
    fn resummed_series() {
        let f = resummed_odd(1, 3).unwrap();
        assert_eq!(invariant_from_series(&f, 1).unwrap(), q(1, 1));
        assert_eq!(invariant_from_series(&f, 3).unwrap(), q(-1, 4));
        assert_eq!(f.coeff(&[(Var::Z2, 3)]).unwrap(), RatFun::frac(-1, 24));
        let e = resummed_even(2, 2).unwrap();
        assert_eq!(e.coeff(&[]).unwrap(), RatFun::frac(-1, 4));
        assert_eq!(e.coeff(&[(Var::Z2, 2)]).unwrap(), RatFun::frac(1, 8));
        let f5 = resummed_odd(5, 1).unwrap();
        assert_eq!(f5.coeff(&[(Var::Z2, 1)]).unwrap(), RatFun::frac(1, 25));
    }

    #[test]
    fn literal_readings() {
        let r = literal_odd(3, 1).unwrap();
        assert_eq!(r.half_power, 0);
        // (2d-2)! 2d / (2^d d!) · d^{2g-1} / 4^g
        let expect = rational::factorial(4) * q(6, 1) / (q(8, 1) * rational::factorial(3)) * q(3, 4);
        assert_eq!(r.value, Some(expect));
        let e = literal_even(4, 0).unwrap();
        assert_eq!(e.value, None);
        assert_eq!(e.half_power, -1);
    }

    #[test]
    fn mumford_vertex() {
        assert_eq!(vertex_contribution(1, true), AuxMonomial::s_pow(q(-1, 4), 2));
        assert_eq!(vertex_contribution(2, false), AuxMonomial::s_pow(q(1, 16), 4));
    }
}
