//! The cyclotomic field `Q(ζ)` with `ζ = e^{iπ/6}` a primitive 12th root of unity.
//!
//! Elements are stored in the power basis `{1, ζ, ζ², ζ³}` and every product is
//! reduced with `Φ₁₂(ζ) = ζ⁴ − ζ² + 1 = 0`, so the representation is canonical
//! and structural equality is field equality. The field contains every scalar
//! needed for the change-of-variable maps: `i`, `ω`, `ω̄`, `√3` and all
//! twelfth roots of unity.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

/// `cos(π/6)`, the real part of `ζ` under the standard embedding.
const COS_PI_6: f64 = 0.866_025_403_784_438_6;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclo {
    c: [Rational; 4],
}

impl Cyclo {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Cyclo { c: [c0, c1, c2, c3] }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclo::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Cyclo::from_rational(rational::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Cyclo::from_rational(rational::frac(n, d))
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    /// `ζ = e^{iπ/6}`.
    pub fn zeta() -> Self {
        Self::basis(1)
    }

    /// `ζ^k` for any integer `k` (negative powers allowed).
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        let mut coeffs = [0i64; 12];
        coeffs[k] = 1;
        Self::reduce_ints(&coeffs)
    }

    /// `i = ζ³`.
    pub fn i() -> Self {
        Self::basis(3)
    }

    /// `ω = e^{2πi/3} = ζ² − 1`.
    pub fn omega() -> Self {
        Cyclo::new(
            rational::int(-1),
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
        )
    }

    /// `ω̄ = ω² = −ζ²`.
    pub fn omega_bar() -> Self {
        Self::omega().conj()
    }

    /// `√3 = 2ζ − ζ³`.
    pub fn sqrt3() -> Self {
        Cyclo::new(
            Rational::zero(),
            rational::int(2),
            Rational::zero(),
            rational::int(-1),
        )
    }

    fn basis(k: usize) -> Self {
        let mut c = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        c[k] = Rational::one();
        Cyclo { c }
    }

    fn reduce_ints(coeffs: &[i64]) -> Self {
        let v: Vec<Rational> = coeffs.iter().map(|&n| rational::int(n)).collect();
        Self::reduce(v)
    }

    /// Reduce a polynomial in `ζ` of any degree modulo `Φ₁₂`.
    fn reduce(mut v: Vec<Rational>) -> Self {
        // ζ^k = ζ^{k-2} − ζ^{k-4} for k ≥ 4
        while v.len() > 4 {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = v.len();
            v[k - 2] += &top;
            v[k - 4] -= &top;
        }
        v.resize(4, Rational::zero());
        let mut it = v.into_iter();
        Cyclo::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// The element as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclo {
            c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r],
        }
    }

    /// Complex conjugation, the field automorphism `ζ ↦ ζ¹¹ = ζ − ζ³`.
    pub fn conj(&self) -> Self {
        // images of 1, ζ, ζ², ζ³ under ζ ↦ ζ^{-1}
        let zb = Self::zeta_pow(-1);
        let zb2 = Self::zeta_pow(-2);
        let zb3 = Self::zeta_pow(-3);
        Self::from_rational(self.c[0].clone())
            + zb.scale(&self.c[1])
            + zb2.scale(&self.c[2])
            + zb3.scale(&self.c[3])
    }

    /// Multiplicative inverse, found by solving the 4×4 rational system for
    /// multiplication by `self`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // column j of the matrix is self·ζ^j
        let mut m: Vec<Vec<Rational>> = (0..4).map(|_| Vec::with_capacity(5)).collect();
        let mut col = self.clone();
        for _ in 0..4 {
            for (row, entry) in m.iter_mut().zip(col.c.iter()) {
                row.push(entry.clone());
            }
            col = &col * &Self::zeta();
        }
        for (r, row) in m.iter_mut().enumerate() {
            row.push(if r == 0 { Rational::one() } else { Rational::zero() });
        }
        let x = solve_dense(m).ok_or(Error::DivisionByZero)?;
        let mut it = x.into_iter();
        Ok(Cyclo::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Cyclo::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// If `self = ζ^k` for some `k`, return `k` in `0..12`.
    pub fn root_of_unity_index(&self) -> Option<i64> {
        (0..12).find(|&k| Self::zeta_pow(k) == *self)
    }

    /// Image under the embedding `ζ ↦ e^{iπ/6}`.
    pub fn embed(&self) -> Complex64 {
        let z = Complex64::new(COS_PI_6, 0.5);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for c in &self.c {
            acc += p * rational::to_f64(c);
            p *= z;
        }
        acc
    }
}

/// Gaussian elimination on an augmented `n × (n+1)` rational matrix.
pub(crate) fn solve_dense(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for entry in m[col].iter_mut() {
            *entry *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo::new(
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        )
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo::from_rational(Rational::one())
    }
}

impl From<Rational> for Cyclo {
    fn from(r: Rational) -> Self {
        Cyclo::from_rational(r)
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        Cyclo {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        Cyclo {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        // rational fast path
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let mut v: Vec<Rational> = (0..7).map(|_| Rational::zero()).collect();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Cyclo::reduce(v)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: Cyclo) -> Cyclo {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: &Cyclo) -> Cyclo {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Cyclo> for &'a Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: Cyclo) -> Cyclo {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, rhs: &Cyclo) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a -= b;
        }
    }
}

impl MulAssign<&Cyclo> for Cyclo {
    fn mul_assign(&mut self, rhs: &Cyclo) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["", "ζ", "ζ^2", "ζ^3"];
        let mut first = true;
        for (c, name) in self.c.iter().zip(NAMES) {
            if c.is_zero() {
                continue;
            }
            let s = rational::to_string(c);
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, s.as_str()),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if name.is_empty() {
                f.write_str(body)?;
            } else if body == "1" {
                f.write_str(name)?;
            } else {
                write!(f, "{}*{}", body, name)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn named_constants() {
        let i = Cyclo::i();
        assert_eq!(&i * &i, Cyclo::from_int(-1));
        let w = Cyclo::omega();
        assert_eq!(w.pow(3), Cyclo::one());
        assert_ne!(w, Cyclo::one());
        assert_eq!(Cyclo::sqrt3().pow(2), Cyclo::from_int(3));
        // e^{-iπ/3} = ζ^{-2} = 1 − ζ²
        let e = Cyclo::zeta_pow(-2);
        assert_eq!(
            e,
            Cyclo::new(
                Rational::one(),
                Rational::zero(),
                rational::int(-1),
                Rational::zero()
            )
        );
        assert_eq!(Cyclo::zeta_pow(6), Cyclo::from_int(-1));
        assert_eq!(Cyclo::zeta_pow(-1) * Cyclo::zeta(), Cyclo::one());
    }

    #[test]
    fn inverses() {
        assert_eq!(Cyclo::one().inv().unwrap(), Cyclo::one());
        assert_eq!(Cyclo::i().inv().unwrap(), -Cyclo::i());
        assert_eq!(Cyclo::omega().inv().unwrap(), Cyclo::omega().conj());
        assert_eq!(Cyclo::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        assert_eq!(Cyclo::i().conj(), -Cyclo::i());
        assert_eq!(Cyclo::omega().conj(), Cyclo::omega().pow(2));
        assert_eq!(Cyclo::sqrt3().conj(), Cyclo::sqrt3());
        assert_eq!(Cyclo::zeta().conj(), Cyclo::zeta_pow(11));
    }

    #[test]
    fn embedding() {
        let i = Cyclo::i().embed();
        assert!((i.re).abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
        let s = Cyclo::sqrt3().embed();
        assert!((s.re - 1.732_050_807_568_877_2).abs() < 1e-12 && s.im.abs() < 1e-12);
        let w = Cyclo::omega().embed();
        assert!((w.re + 0.5).abs() < 1e-12 && (w.im - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn display() {
        assert_eq!(Cyclo::omega().to_string(), "-1 + ζ^2");
        assert_eq!(Cyclo::zero().to_string(), "0");
        assert_eq!((-Cyclo::i()).to_string(), "-ζ^3");
    }

    fn arb_cyclo() -> impl Strategy<Value = Cyclo> {
        proptest::array::uniform4((-20i64..20, 1i64..7)).prop_map(|c| {
            Cyclo::new(
                rational::frac(c[0].0, c[0].1),
                rational::frac(c[1].0, c[1].1),
                rational::frac(c[2].0, c[2].1),
                rational::frac(c[3].0, c[3].1),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn inverse_round_trip(a in arb_cyclo()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(&a * &a.inv().unwrap(), Cyclo::one());
        }

        #[test]
        fn field_laws(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn conj_is_an_involutive_automorphism(a in arb_cyclo(), b in arb_cyclo()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
            let lhs = a.conj().embed();
            let rhs = a.embed().conj();
            prop_assert!((lhs - rhs).norm_sqr() < 1e-18 * (1.0 + rhs.norm_sqr()));
            // a·conj(a) is real
            prop_assert!((&a * &a.conj()).embed().im.abs() < 1e-9 * (1.0 + a.embed().norm_sqr()));
        }

        #[test]
        fn embedding_is_multiplicative(a in arb_cyclo(), b in arb_cyclo()) {
            let lhs = (&a * &b).embed();
            let rhs = a.embed() * b.embed();
            prop_assert!((lhs - rhs).norm_sqr() <= 1e-20 * (1.0 + rhs.norm_sqr()));
        }

        #[test]
        fn reduction_is_canonical(a in arb_cyclo()) {
            // rewrite a via ζ⁴ = ζ² − 1 in reverse: multiply by ζ^12 = 1 through
            // the unreduced polynomial route and compare
            let mut raw: Vec<Rational> = (0..16).map(|_| Rational::zero()).collect();
            for (k, c) in a.coeffs().iter().enumerate() {
                raw[k + 12] = c.clone();
            }
            prop_assert_eq!(Cyclo::reduce(raw), a);
        }
    }
}
