//! Polynomials and rational functions in the equivariant weights `t1, t2`
//! with coefficients in `Q(ζ_12)`.
//!
//! A [`RatFun`] is always stored in lowest terms with a denominator whose
//! leading coefficient (graded-lex order, `t1 > t2`) is `1`, so two rational
//! functions are equal exactly when their stored parts are.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::cyclotomic::Cyclo;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Exponent pair `(e1, e2)` of the monomial `t1^e1 t2^e2`.
pub type Exp2 = (u32, u32);

fn grlex(a: &Exp2, b: &Exp2) -> Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

/// Sparse bivariate polynomial in `t1, t2`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly2 {
    terms: BTreeMap<Exp2, Cyclo>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Cyclo) -> Self {
        Self::monomial((0, 0), c)
    }

    pub fn monomial(e: Exp2, c: Cyclo) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly2 { terms }
    }

    pub fn t1() -> Self {
        Self::monomial((1, 0), Cyclo::one())
    }

    pub fn t2() -> Self {
        Self::monomial((0, 1), Cyclo::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp2, Cyclo)>>(it: I) -> Self {
        let mut p = Poly2::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp2, &Cyclo)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order.
    pub fn terms_grlex(&self) -> Vec<(Exp2, Cyclo)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by(|a, b| grlex(&b.0, &a.0));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if this polynomial has no `t` dependence.
    pub fn as_constant(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(Cyclo::is_one)
    }

    fn add_term(&mut self, e: Exp2, c: &Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    /// Leading term under graded-lex order with `t1 > t2`.
    pub fn leading(&self) -> Option<(Exp2, &Cyclo)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn eval(&self, t1: &Rational, t2: &Rational) -> Cyclo {
        let mut acc = Cyclo::zero();
        for ((a, b), c) in &self.terms {
            let w = rational::powi(t1, *a as i64) * rational::powi(t2, *b as i64);
            acc += &c.scale(&w);
        }
        acc
    }

    /// Exact division; fails if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Poly2) -> Result<Poly2> {
        let (lf, lc) = rhs.leading().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut q = Poly2::zero();
        let mut r = self.clone();
        while let Some((le, c)) = r.leading() {
            if le.0 < lf.0 || le.1 < lf.1 {
                return Err(Error::InexactDivision);
            }
            let m = Poly2::monomial((le.0 - lf.0, le.1 - lf.1), c * &lc_inv);
            r = &r - &(&m * rhs);
            q = &q + &m;
        }
        Ok(q)
    }

    /// Greatest common divisor, normalized to leading coefficient `1`.
    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        let g = rec::gcd(&rec::from_poly(self), &rec::from_poly(other));
        let g = rec::to_poly(&g);
        match g.leading() {
            Some((_, c)) => g.scale(&c.inv().expect("nonzero leading coefficient")),
            None => g,
        }
    }
}

impl<'a> Add<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term((ea.0 + eb.0, ea.1 + eb.1), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

/// Recursive view `K[t2][t1]` used by the gcd: index `k` holds the
/// coefficient of `t1^k` as a dense polynomial in `t2`.
mod rec {
    use super::*;

    pub type UPoly = Vec<Cyclo>;
    pub type RPoly = Vec<UPoly>;

    fn trim<T>(v: &mut Vec<T>, is_zero: impl Fn(&T) -> bool) {
        while v.last().is_some_and(&is_zero) {
            v.pop();
        }
    }

    fn u_is_zero(a: &UPoly) -> bool {
        a.is_empty()
    }

    fn u_add(a: &UPoly, b: &UPoly) -> UPoly {
        let n = a.len().max(b.len());
        let mut out: UPoly = (0..n)
            .map(|k| match (a.get(k), b.get(k)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => Cyclo::zero(),
            })
            .collect();
        trim(&mut out, Cyclo::is_zero);
        out
    }

    fn u_neg(a: &UPoly) -> UPoly {
        a.iter().map(|c| -c).collect()
    }

    fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out: UPoly = (0..a.len() + b.len() - 1).map(|_| Cyclo::zero()).collect();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        trim(&mut out, Cyclo::is_zero);
        out
    }

    fn u_divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
        let lc_inv = b.last().expect("nonzero divisor").inv().expect("nonzero");
        let mut r = a.clone();
        let mut q: UPoly = Vec::new();
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * &lc_inv;
            if q.len() < shift + 1 {
                q.resize(shift + 1, Cyclo::zero());
            }
            q[shift] = c.clone();
            for (k, bk) in b.iter().enumerate() {
                let sub = &c * bk;
                r[shift + k] -= &sub;
            }
            trim(&mut r, Cyclo::is_zero);
        }
        trim(&mut q, Cyclo::is_zero);
        (q, r)
    }

    fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let (_, r) = u_divrem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(lc) = a.last() {
            let inv = lc.inv().unwrap();
            a = a.iter().map(|c| c * &inv).collect();
        }
        a
    }

    pub fn from_poly(p: &Poly2) -> RPoly {
        let mut out: RPoly = Vec::new();
        for ((e1, e2), c) in p.terms() {
            let (e1, e2) = (*e1 as usize, *e2 as usize);
            if out.len() <= e1 {
                out.resize(e1 + 1, Vec::new());
            }
            if out[e1].len() <= e2 {
                out[e1].resize(e2 + 1, Cyclo::zero());
            }
            out[e1][e2] = c.clone();
        }
        out
    }

    pub fn to_poly(p: &RPoly) -> Poly2 {
        Poly2::from_terms(p.iter().enumerate().flat_map(|(e1, u)| {
            u.iter()
                .enumerate()
                .map(move |(e2, c)| ((e1 as u32, e2 as u32), c.clone()))
        }))
    }

    fn content(p: &RPoly) -> UPoly {
        p.iter()
            .filter(|u| !u_is_zero(u))
            .fold(Vec::new(), |g, u| u_gcd(&g, u))
    }

    fn divide_content(p: &RPoly, c: &UPoly) -> RPoly {
        p.iter()
            .map(|u| {
                if u.is_empty() {
                    Vec::new()
                } else {
                    u_divrem(u, c).0
                }
            })
            .collect()
    }

    fn scale(p: &RPoly, c: &UPoly) -> RPoly {
        let mut out: RPoly = p.iter().map(|u| u_mul(u, c)).collect();
        trim(&mut out, u_is_zero);
        out
    }

    /// Pseudo-remainder of `a` by `b` in `K[t2][t1]`.
    fn prem(a: &RPoly, b: &RPoly) -> RPoly {
        let lc = b.last().unwrap();
        let mut r = a.clone();
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let lr = r.last().unwrap().clone();
            let mut next = scale(&r, lc);
            next.resize(next.len().max(shift + b.len()), Vec::new());
            for (k, bk) in b.iter().enumerate() {
                let sub = u_neg(&u_mul(&lr, bk));
                next[shift + k] = u_add(&next[shift + k], &sub);
            }
            trim(&mut next, u_is_zero);
            r = next;
        }
        r
    }

    fn primitive(p: &RPoly) -> RPoly {
        let c = content(p);
        if c.is_empty() {
            return p.clone();
        }
        divide_content(p, &c)
    }

    pub fn gcd(a: &RPoly, b: &RPoly) -> RPoly {
        if a.is_empty() {
            return b.clone();
        }
        if b.is_empty() {
            return a.clone();
        }
        let c = u_gcd(&content(a), &content(b));
        let (mut p, mut q) = (primitive(a), primitive(b));
        if p.len() < q.len() {
            core::mem::swap(&mut p, &mut q);
        }
        while !q.is_empty() {
            if q.len() == 1 {
                // q is constant in t1 and primitive, hence a unit
                p = vec![vec![Cyclo::one()]];
                break;
            }
            let r = prem(&p, &q);
            p = q;
            q = if r.is_empty() { r } else { primitive(&r) };
        }
        scale(&primitive(&p), &c)
    }
}

/// Rational function `num/den` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly2,
    den: Poly2,
}

impl RatFun {
    /// Build and normalize `num/den`.
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly2, den: Poly2) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero denominator");
            return RatFun {
                num: num.scale(&inv),
                den: Poly2::constant(Cyclo::one()),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc_inv = den.leading().unwrap().1.inv().unwrap();
        RatFun {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }

    pub fn from_poly(p: Poly2) -> Self {
        RatFun {
            num: p,
            den: Poly2::constant(Cyclo::one()),
        }
    }

    pub fn from_cyclo(c: Cyclo) -> Self {
        Self::from_poly(Poly2::constant(c))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_cyclo(Cyclo::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rational::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rational::frac(n, d))
    }

    pub fn t1() -> Self {
        Self::from_poly(Poly2::t1())
    }

    pub fn t2() -> Self {
        Self::from_poly(Poly2::t2())
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a scalar, if independent of `t1, t2`.
    pub fn as_cyclo(&self) -> Option<Cyclo> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = RatFun::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at rational weights.
    pub fn eval(&self, t1: &Rational, t2: &Rational) -> Result<Cyclo> {
        let d = self.den.eval(t1, t2);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(t1, t2) * d.inv()?)
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun {
            num: Poly2::zero(),
            den: Poly2::constant(Cyclo::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::from_cyclo(Cyclo::one())
    }
}

impl From<Cyclo> for RatFun {
    fn from(c: Cyclo) -> Self {
        RatFun::from_cyclo(c)
    }
}

impl From<Rational> for RatFun {
    fn from(r: Rational) -> Self {
        RatFun::from_rational(r)
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.is_polynomial() {
                return RatFun::from_poly(num);
            }
            return RatFun::normalized(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::normalized(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = rhs.as_cyclo() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_cyclo() {
            return rhs.scale(&c);
        }
        RatFun::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $f(self, rhs: RatFun) -> RatFun {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFun> for RatFun {
            type Output = RatFun;
            fn $f(self, rhs: &RatFun) -> RatFun {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<RatFun> for &'a RatFun {
            type Output = RatFun;
            fn $f(self, rhs: RatFun) -> RatFun {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_grlex();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((a, b), c)) in terms.iter().enumerate() {
            let mut mono = alloc::string::String::new();
            for (name, e) in [("t1", *a), ("t2", *b)] {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(name);
                if e > 1 {
                    mono.push_str(&alloc::format!("^{}", e));
                }
            }
            let coeff = match c.as_rational() {
                Some(r) => rational::to_string(r),
                None => alloc::format!("({})", c),
            };
            let (neg, body) = match coeff.strip_prefix('-') {
                Some(rest) => (true, alloc::string::String::from(rest)),
                None => (false, coeff.clone()),
            };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (mono.is_empty(), body.as_str()) {
                (true, _) => f.write_str(&body)?,
                (false, "1") => f.write_str(&mono)?,
                (false, _) => write!(f, "{}*{}", body, mono)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn t1() -> RatFun {
        RatFun::t1()
    }
    fn t2() -> RatFun {
        RatFun::t2()
    }
    fn q(n: i64, d: i64) -> RatFun {
        RatFun::frac(n, d)
    }

    #[test]
    fn normalization_cancels_common_factors() {
        let num = &(&t1() * &t1()) - &(&t2() * &t2());
        let den = &t1() - &t2();
        let r = num.checked_div(&den).unwrap();
        assert_eq!(r, &t1() + &t2());
        assert!(r.den().is_one());
    }

    #[test]
    fn small_identities() {
        let a = q(1, 3).checked_div(&(&t1() * &t2())).unwrap();
        assert_eq!(&a + &RatFun::zero(), a);
        let s = &t1() + &t2();
        assert_eq!(&s * &s.inv().unwrap(), RatFun::one());
        assert_eq!(RatFun::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn denominator_is_monic_in_grlex() {
        // 1/(3 t1 t2) stores denominator t1*t2 and numerator 1/3
        let a = q(1, 3).checked_div(&(&t1() * &t2())).unwrap();
        assert_eq!(a.den().leading().unwrap().1, &Cyclo::one());
        assert_eq!(a.num().as_constant(), Some(Cyclo::frac(1, 3)));
        // (t2 − t1/2) has leading monomial t1
        let b = RatFun::one().checked_div(&(&t2() - &(&t1() * &q(1, 2)))).unwrap();
        let (e, c) = b.den().leading().unwrap();
        assert_eq!(e, (1, 0));
        assert!(c.is_one());
    }

    #[test]
    fn gcd_with_cyclotomic_coefficients() {
        let i = RatFun::from_cyclo(Cyclo::i());
        let f = &t1() + &(&i * &t2());
        let g = &t1() - &(&i * &t2());
        let num = &f * &(&g * &g);
        let den = &(&f * &f) * &g;
        assert_eq!(num.checked_div(&den).unwrap(), g.checked_div(&f).unwrap());
        // t1² + t2² = (t1 + i t2)(t1 − i t2)
        let sum_sq = &(&t1() * &t1()) + &(&t2() * &t2());
        assert_eq!(sum_sq.checked_div(&f).unwrap(), g);
    }

    #[test]
    fn gcd_with_content_in_t2() {
        // (t2 (t1 + 1)) / (t2² (t1 + t2))
        let one = RatFun::one();
        let a = &t2() * &(&t1() + &one);
        let b = &(&t2() * &t2()) * &(&t1() + &t2());
        let r = a.checked_div(&b).unwrap();
        let expect = (&t1() + &one).checked_div(&(&t2() * &(&t1() + &t2()))).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn evaluation() {
        let a = (&t1() + &t2()).checked_div(&(&t1() * &t2())).unwrap();
        assert_eq!(
            a.eval(&rational::int(1), &rational::int(2)).unwrap(),
            Cyclo::frac(3, 2)
        );
        let hhh = &q(-2, 3) * &(&t1() + &(&q(2, 1) * &t2()));
        assert_eq!(
            hhh.eval(&rational::int(1), &rational::int(1)).unwrap(),
            Cyclo::from_int(-2)
        );
        let hss = &q(-1, 2) * &t1();
        assert_eq!(
            hss.eval(&rational::int(3), &rational::int(5)).unwrap(),
            Cyclo::frac(-3, 2)
        );
        assert_eq!(
            a.eval(&rational::int(0), &rational::int(2)),
            Err(Error::Pole)
        );
    }

    #[test]
    fn display() {
        let a = q(1, 3).checked_div(&(&t1() * &t2())).unwrap();
        assert_eq!(a.to_string(), "(1/3)/(t1*t2)");
        let b = &(&q(-2, 3) * &t1()) - &(&q(4, 3) * &t2());
        assert_eq!(b.to_string(), "-2/3*t1 - 4/3*t2");
    }

    fn arb_poly() -> impl Strategy<Value = RatFun> {
        proptest::collection::vec((0u32..3, 0u32..3, -4i64..5), 1..4).prop_map(|ts| {
            RatFun::from_poly(Poly2::from_terms(
                ts.into_iter().map(|(a, b, c)| ((a, b), Cyclo::from_int(c))),
            ))
        })
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        (arb_poly(), arb_poly()).prop_filter_map("nonzero denominator", |(n, d)| {
            if d.is_zero() {
                None
            } else {
                Some(n.checked_div(&d).unwrap())
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn canonical_equality_matches_cross_multiplication(a in arb_ratfun(), b in arb_ratfun()) {
            let cross = &a.num * &b.den == &b.num * &a.den;
            prop_assert_eq!(a == b, cross);
            // a + b − b recovers the canonical form of a
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn normalization_is_idempotent(a in arb_ratfun()) {
            let again = RatFun::new(a.num.clone(), a.den.clone()).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_ratfun(), b in arb_ratfun(), x in -5i64..6, y in -5i64..6) {
            let (x, y) = (rational::int(x), rational::int(y));
            if let (Ok(va), Ok(vb)) = (a.eval(&x, &y), b.eval(&x, &y)) {
                if let Ok(vs) = (&a + &b).eval(&x, &y) {
                    prop_assert_eq!(vs, &va + &vb);
                }
                if let Ok(vp) = (&a * &b).eval(&x, &y) {
                    prop_assert_eq!(vp, &va * &vb);
                }
            }
        }
    }
}
