use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::laurent::{RLaurent, Rational};
use crate::error::{Error, Result};

/// Exponent vector of a monomial `x_1^e_1 ... x_n^e_n`.
///
/// Ordered canonically: higher total degree first, then lexicographically
/// larger exponent vectors first. Iterating a [`MPoly`] therefore yields the
/// terms in print order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `x_1..x_n` over [`RLaurent`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Monomial, RLaurent>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, RLaurent::one())
    }

    pub fn constant(n: usize, c: RLaurent) -> Self {
        Self::monomial(n, &vec![0; n], c)
    }

    /// The variable `x_i`, 1-based.
    ///
    /// Panics when `i` is not in `1..=n`.
    pub fn var(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "x{i} is not a variable of an {n}-variate ring");
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Self::monomial(n, &e, RLaurent::one())
    }

    /// `c * x^exps`. Panics when `exps.len() != n`.
    pub fn monomial(n: usize, exps: &[u32], c: RLaurent) -> Self {
        assert_eq!(exps.len(), n, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps.to_vec()), c);
        }
        Self { n, terms }
    }

    /// Accumulates `(exponents, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, RLaurent)>>(n: usize, iter: I) -> Self {
        let mut out = Self::zero(n);
        for (e, c) in iter {
            assert_eq!(e.len(), n, "exponent vector length");
            out.add_term(Monomial(e), &c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &RLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &RLaurent)> + '_ {
        self.terms.iter().map(|(m, c)| (m.exps(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> RLaurent {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Total `x`-degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// The terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.n, other.n))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RLaurent) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&RLaurent::from_rational(q.clone()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
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

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<F: FnMut(&RLaurent) -> RLaurent>(&self, mut f: F) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Like [`MPoly::map_coeffs`] for fallible maps.
    pub fn try_map_coeffs<F: FnMut(&RLaurent) -> Result<RLaurent>>(&self, mut f: F) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}` (0-based indices).
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.n];
            for (i, &p) in perm.iter().enumerate() {
                e[p] = m.0[i];
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Evaluates at a point of `RLaurent` coordinates.
    pub fn eval(&self, point: &[RLaurent]) -> Result<RLaurent> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch(self.n, point.len()));
        }
        let mut powers: Vec<Vec<RLaurent>> = point.iter().map(|p| vec![RLaurent::one(), p.clone()]).collect();
        let mut acc = RLaurent::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &point[i];
                    powers[i].push(next);
                }
                t *= &powers[i][e];
                if t.is_zero() {
                    break;
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i -> images[i]`; the result lives in the ring of the images.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.n {
            return Err(Error::DimensionMismatch(self.n, images.len()));
        }
        let m = images.first().map_or(0, MPoly::n);
        if let Some(bad) = images.iter().find(|p| p.n != m) {
            return Err(Error::DimensionMismatch(m, bad.n));
        }
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(m), p.clone()]).collect();
        let mut acc = MPoly::zero(m);
        for (mono, c) in &self.terms {
            let mut t = MPoly::constant(m, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Exact quotient by the linear form `x_i - x_{i+1}` (1-based `i`).
    ///
    /// Performs division with `x_i` as leading variable; a nonzero remainder
    /// (which equals `f` restricted to `x_i = x_{i+1}`) means the input was
    /// not divisible, which callers treat as a broken invariant.
    pub fn divide_exact_by_linear(&self, i: usize) -> Result<MPoly> {
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.n.saturating_sub(1),
            });
        }
        let (a, b) = (i - 1, i);
        // keyed by the x_a exponent first so the largest is popped first
        let mut work: BTreeMap<(u32, Vec<u32>), RLaurent> = BTreeMap::new();
        for (m, c) in &self.terms {
            work.insert((m.0[a], m.0.clone()), c.clone());
        }
        let mut quot = MPoly::zero(self.n);
        while let Some(((ea, e), c)) = work.pop_last() {
            if ea == 0 {
                return Err(Error::NotDivisible(format!(
                    "remainder term with exponents {e:?} dividing by x{i} - x{}",
                    i + 1
                )));
            }
            let mut q = e.clone();
            q[a] -= 1;
            quot.add_term(Monomial(q.clone()), &c);
            q[b] += 1;
            let key = (q[a], q);
            let slot = work.entry(key.clone()).or_default();
            *slot += &c;
            if slot.is_zero() {
                work.remove(&key);
            }
        }
        Ok(quot)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    /// Panics on dimension mismatch; see [`MPoly::checked_add`].
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("MPoly addition")
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("MPoly subtraction")
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("MPoly multiplication")
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        assert_eq!(self.n, rhs.n, "MPoly addition");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        assert_eq!(self.n, rhs.n, "MPoly subtraction");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::to_text(self))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[n={}]({self})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::var(2, i)
    }

    fn c(v: i64) -> MPoly {
        MPoly::constant(2, RLaurent::from_int(v))
    }

    fn r() -> MPoly {
        MPoly::constant(2, RLaurent::r())
    }

    #[test]
    fn additive_inverse_is_zero() {
        assert!((x(1) + -x(1)).is_zero());
    }

    #[test]
    fn disjoint_supports_add() {
        let s = (x(1) + r()) + x(2);
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_string(), "x1 + x2 + r");
    }

    #[test]
    fn expands_two_variable_bar_monomial() {
        let f = (x(1) + c(1) + r()) * (x(1) + r()) + r() * x(2);
        assert_eq!(f.to_string(), "x1^2 + (2*r + 1)*x1 + r*x2 + r^2 + r");
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!((x(1) - x(2)) * (x(1) + x(2)), x(1).pow(2) - x(2).pow(2));
        assert_eq!(MPoly::one(2) * x(2), x(2));
        assert_eq!(((x(2) + c(1) + r()) * x(2)).to_string(), "x2^2 + (r + 1)*x2");
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = MPoly::var(2, 1);
        let b = MPoly::var(3, 1);
        assert_eq!(a.checked_add(&b), Err(Error::DimensionMismatch(2, 3)));
        assert_eq!(a.checked_mul(&b), Err(Error::DimensionMismatch(2, 3)));
        assert!(a.eval(&[RLaurent::one()]).is_err());
    }

    #[test]
    fn eval_product() {
        let a = RLaurent::linear(2, 1);
        let b = RLaurent::linear(-1, 3);
        assert_eq!((x(1) * x(2)).eval(&[a.clone(), b.clone()]).unwrap(), a * b);
    }

    #[test]
    fn linear_division() {
        let f = x(1).pow(2) - x(2).pow(2);
        assert_eq!(f.divide_exact_by_linear(1).unwrap(), x(1) + x(2));
        assert!(MPoly::zero(2).divide_exact_by_linear(1).unwrap().is_zero());
        let g = x(2).pow(2) - x(1).pow(2);
        assert_eq!(g.divide_exact_by_linear(1).unwrap(), -(x(1) + x(2)));
        assert!(matches!(x(1).divide_exact_by_linear(1), Err(Error::NotDivisible(_))));
        assert!(matches!(x(1).divide_exact_by_linear(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn substitution_composes() {
        // f(x1, x2) = x1*x2 at (x2 + 1, x1) gives x1*x2 + x1
        let f = x(1) * x(2);
        let g = f.substitute(&[x(2) + c(1), x(1)]).unwrap();
        assert_eq!(g, x(1) * x(2) + x(1));
    }

    #[test]
    fn canonical_term_order() {
        let f = x(2) + x(1).pow(2) + c(3) + x(1);
        let exps: Vec<Vec<u32>> = f.terms().map(|(e, _)| e.to_vec()).collect();
        assert_eq!(exps, vec![vec![2, 0], vec![1, 0], vec![0, 1], vec![0, 0]]);
    }
}
