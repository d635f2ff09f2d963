use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Laurent polynomial in the parameter `r` with rational coefficients.
///
/// Negative exponents carry powers of `alpha = 1/r`. No stored coefficient is
/// zero, so structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RLaurent {
    terms: BTreeMap<i32, Rational>,
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl RLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The parameter `r` itself.
    pub fn r() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `alpha = 1/r`.
    pub fn alpha() -> Self {
        Self::monomial(Rational::one(), -1)
    }

    pub fn r_pow(k: i32) -> Self {
        Self::monomial(Rational::one(), k)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(rat(c), 0)
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::monomial(q, 0)
    }

    /// `q * r^k`.
    pub fn monomial(q: Rational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(k, q);
        }
        Self { terms }
    }

    /// `c0 + c1*r`, the shape of every rho-shifted coordinate.
    pub fn linear(c0: i64, c1: i64) -> Self {
        Self::from_terms([(0, rat(c0)), (1, rat(c1))])
    }

    /// Builds a Laurent polynomial from `(exponent, coefficient)` pairs,
    /// accumulating repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, q) in iter {
            out.add_term(k, &q);
        }
        out
    }

    fn add_term(&mut self, k: i32, q: &Rational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|q| q.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(k, q)| (*k, q))
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Returns the constant if this has no `r` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Multiplies by `r^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, q)| (e + k, q.clone())).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at a rational value of `r`.
    pub fn eval(&self, r: &Rational) -> Result<Rational> {
        if r.is_zero() && self.min_exp().is_some_and(|k| k < 0) {
            return Err(Error::DivisionByZero);
        }
        let mut acc = Rational::zero();
        for (k, q) in self.terms() {
            let p = if k >= 0 {
                num_traits::pow(r.clone(), k as usize)
            } else {
                num_traits::pow(r.recip(), (-k) as usize)
            };
            acc += q * p;
        }
        Ok(acc)
    }

    /// True when no negative exponent occurs.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|k| k >= 0)
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.terms.values().all(|q| q.is_integer() && !q.is_negative())
    }

    /// Splits `self = q * r^k * p` with `p` a monic polynomial and `p(0) != 0`.
    ///
    /// The units of `Q[r, 1/r]` are exactly the `q * r^k`, so `p` is the
    /// canonical associate used by gcd and by the fraction types.
    pub fn split_unit(&self) -> Option<(Rational, i32, RLaurent)> {
        let lo = self.min_exp()?;
        let hi = self.max_exp()?;
        let lead = self.terms[&hi].clone();
        let inv = lead.recip();
        let p = Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e - lo, c * &inv))
                .collect(),
        };
        Some((lead, lo, p))
    }

    /// Exact quotient in `Q[r, 1/r]`; a nonzero remainder is an error.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (dq, dk, dp) = d.split_unit().ok_or(Error::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (shift, dense) = self.to_dense();
        let (_, ddense) = dp.to_dense();
        let (quot, rem) = dense_divrem(&dense, &ddense);
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible(format!("({self}) / ({d})")));
        }
        Ok(Self::from_dense(shift - dk, &quot).scale(&dq.recip()))
    }

    /// Normalized gcd (monic polynomial with nonzero constant term).
    /// The gcd with zero is the normalized associate of the other argument.
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.split_unit(), other.split_unit()) {
            (None, None) => Self::zero(),
            (Some((_, _, p)), None) | (None, Some((_, _, p))) => p,
            (Some((_, _, a)), Some((_, _, b))) => {
                let (_, a) = a.to_dense();
                let (_, b) = b.to_dense();
                let g = dense_gcd(a, b);
                Self::from_dense(0, &g)
            }
        }
    }

    /// `(lowest exponent, coefficients from that exponent upwards)`.
    fn to_dense(&self) -> (i32, Vec<Rational>) {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return (0, Vec::new());
        };
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (k, q) in &self.terms {
            v[(k - lo) as usize] = q.clone();
        }
        (lo, v)
    }

    fn from_dense(shift: i32, v: &[Rational]) -> Self {
        Self::from_terms(
            v.iter()
                .enumerate()
                .map(|(i, q)| (shift + i as i32, q.clone())),
        )
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Long division of dense polynomials (lowest degree first).
fn dense_divrem(a: &[Rational], d: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut d = d.to_vec();
    trim(&mut d);
    assert!(!d.is_empty(), "division by the zero polynomial");
    if rem.len() < d.len() {
        return (Vec::new(), rem);
    }
    let dl = d.len() - 1;
    let lead_inv = d[dl].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dl];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dl] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn dense_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = dense_divrem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        let inv = lead.recip();
        for c in a.iter_mut() {
            *c *= &inv;
        }
    }
    a
}

impl From<i64> for RLaurent {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<Rational> for RLaurent {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a RLaurent> for &'a RLaurent {
    type Output = RLaurent;
    fn add(self, rhs: &RLaurent) -> RLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&RLaurent> for RLaurent {
    fn add_assign(&mut self, rhs: &RLaurent) {
        for (k, q) in &rhs.terms {
            self.add_term(*k, q);
        }
    }
}

impl<'a> Sub<&'a RLaurent> for &'a RLaurent {
    type Output = RLaurent;
    fn sub(self, rhs: &RLaurent) -> RLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&RLaurent> for RLaurent {
    fn sub_assign(&mut self, rhs: &RLaurent) {
        for (k, q) in &rhs.terms {
            self.add_term(*k, &-q);
        }
    }
}

impl<'a> Mul<&'a RLaurent> for &'a RLaurent {
    type Output = RLaurent;
    fn mul(self, rhs: &RLaurent) -> RLaurent {
        let mut out = RLaurent::zero();
        for (ka, qa) in &self.terms {
            for (kb, qb) in &rhs.terms {
                out.add_term(ka + kb, &(qa * qb));
            }
        }
        out
    }
}

impl MulAssign<&RLaurent> for RLaurent {
    fn mul_assign(&mut self, rhs: &RLaurent) {
        *self = &*self * rhs;
    }
}

impl Neg for &RLaurent {
    type Output = RLaurent;
    fn neg(self) -> RLaurent {
        RLaurent {
            terms: self.terms.iter().map(|(k, q)| (*k, -q)).collect(),
        }
    }
}

impl Neg for RLaurent {
    type Output = RLaurent;
    fn neg(self) -> RLaurent {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RLaurent> for RLaurent {
            type Output = RLaurent;
            fn $m(self, rhs: RLaurent) -> RLaurent {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RLaurent> for RLaurent {
            type Output = RLaurent;
            fn $m(self, rhs: &RLaurent) -> RLaurent {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<RLaurent> for &'a RLaurent {
            type Output = RLaurent;
            fn $m(self, rhs: RLaurent) -> RLaurent {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Zero for RLaurent {
    fn zero() -> Self {
        RLaurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for RLaurent {
    fn one() -> Self {
        RLaurent::one()
    }
}

impl Sum for RLaurent {
    fn sum<I: Iterator<Item = RLaurent>>(iter: I) -> Self {
        let mut acc = RLaurent::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl<'a> Sum<&'a RLaurent> for RLaurent {
    fn sum<I: Iterator<Item = &'a RLaurent>>(iter: I) -> Self {
        let mut acc = RLaurent::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl fmt::Display for RLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::laurent_to_text(self))
    }
}

impl fmt::Debug for RLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RLaurent({self})")
    }
}
