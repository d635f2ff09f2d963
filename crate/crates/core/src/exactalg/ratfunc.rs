//! Fractions over `Q[r, 1/r]`.
//!
//! Nonsymmetric Jack polynomials and the monic interpolation polynomials have
//! coefficients such as `r/(1+r)`, which are not Laurent polynomials. They are
//! carried as a numerator over a single common denominator; the normalized
//! families (`F`, `J`) clear that denominator exactly.

use std::fmt;


use super::laurent::{RLaurent, Rational};
use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// `num / den` with `den` a monic polynomial in `r` with `den(0) != 0`,
/// coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: RLaurent,
    den: RLaurent,
}

impl RatFunc {
    pub fn new(num: RLaurent, den: RLaurent) -> Result<Self> {
        let (q, k, den_p) = den.split_unit().ok_or(Error::DivisionByZero)?;
        let num = num.shift(-k).scale(&q.recip());
        let g = num.gcd(&den_p);
        if g.is_one() || num.is_zero() {
            let den = if num.is_zero() { RLaurent::one() } else { den_p };
            return Ok(Self { num, den });
        }
        Ok(Self {
            num: num.div_exact(&g)?,
            den: den_p.div_exact(&g)?,
        })
    }

    pub fn from_laurent(num: RLaurent) -> Self {
        Self {
            num,
            den: RLaurent::one(),
        }
    }

    pub fn num(&self) -> &RLaurent {
        &self.num
    }

    pub fn den(&self) -> &RLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this equals, if any.
    pub fn to_laurent(&self) -> Option<RLaurent> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)
            .expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn eval(&self, r: &Rational) -> Result<Rational> {
        let d = self.den.eval(r)?;
        if d == Rational::from_integer(0.into()) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(r)? / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// A polynomial in `x` with coefficients in `Q(r)`, stored as
/// `num / den` with a normalized common denominator `den` in `Q[r]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMPoly {
    num: MPoly,
    den: RLaurent,
}

impl RatMPoly {
    pub fn new(num: MPoly, den: RLaurent) -> Result<Self> {
        let (q, k, den_p) = den.split_unit().ok_or(Error::DivisionByZero)?;
        let unit = RLaurent::monomial(q.recip(), -k);
        let num = num.scale(&unit);
        if num.is_zero() {
            return Ok(Self::from_mpoly(num));
        }
        let mut g = den_p.clone();
        for (_, c) in num.terms() {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if g.is_one() {
            return Ok(Self { num, den: den_p });
        }
        Ok(Self {
            num: num.try_map_coeffs(|c| c.div_exact(&g))?,
            den: den_p.div_exact(&g)?,
        })
    }

    pub fn from_mpoly(num: MPoly) -> Self {
        Self {
            num,
            den: RLaurent::one(),
        }
    }

    pub fn n(&self) -> usize {
        self.num.n()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &RLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial over `Q[r, 1/r]` this equals, if any.
    pub fn to_mpoly(&self) -> Option<MPoly> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn coeff(&self, exps: &[u32]) -> RatFunc {
        RatFunc::new(self.num.coeff(exps), self.den.clone()).expect("nonzero denominator")
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.num.total_degree()
    }

    pub fn scale(&self, c: &RatFunc) -> Result<Self> {
        Self::new(self.num.scale(c.num()), &self.den * c.den())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let num = self.num.scale(&other.den).checked_add(&other.num.scale(&self.den))?;
        Self::new(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&Self {
            num: -&other.num,
            den: other.den.clone(),
        })
    }

    /// Applies a `Q(r)`-linear map to the numerator.
    pub fn map_linear<F: FnOnce(&MPoly) -> Result<MPoly>>(&self, f: F) -> Result<Self> {
        Self::new(f(&self.num)?, self.den.clone())
    }

    /// Value at a point, as a fraction.
    pub fn eval(&self, point: &[RLaurent]) -> Result<RatFunc> {
        RatFunc::new(self.num.eval(point)?, self.den.clone())
    }
}

impl From<MPoly> for RatMPoly {
    fn from(p: MPoly) -> Self {
        Self::from_mpoly(p)
    }
}

impl fmt::Display for RatMPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatMPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMPoly[n={}]({self})", self.n())
    }
}
