//! Independent oracles for the integration tests.
//!
//! Everything here works at a numeric value of `r` with plain linear algebra
//! over the rationals, so it shares no code path with the symbolic
//! recursions, games or operators under test.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use barmon::{Composition, MPoly, RLaurent, RatMPoly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type NumPoly = BTreeMap<Vec<u32>, Rational>;

pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn comp(s: &str) -> Composition {
    s.parse().expect("valid composition literal")
}

/// Specializes every coefficient at `r`, dropping zeros.
pub fn specialize(p: &MPoly, r: &Rational) -> NumPoly {
    let mut out = NumPoly::new();
    for (e, c) in p.terms() {
        let v = c.eval(r).expect("nonzero r");
        if !v.is_zero() {
            out.insert(e.to_vec(), v);
        }
    }
    out
}

pub fn specialize_rat(p: &RatMPoly, r: &Rational) -> NumPoly {
    let den = p.den().eval(r).expect("nonzero r");
    assert!(!den.is_zero(), "denominator vanishes at r = {r}");
    specialize(p.num(), r).into_iter().map(|(e, c)| (e, c / &den)).collect()
}

/// Exponent vectors of total degree `d` in `n` variables, any order.
pub fn exponents_of_degree(d: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exponents_of_degree(d - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn exponents_below(d: u32, n: usize) -> Vec<Vec<u32>> {
    (0..d).flat_map(|k| exponents_of_degree(k, n)).collect()
}

/// `gamma_i + r * (#{j : gamma_j < gamma_i} + #{j > i : gamma_j = gamma_i})`,
/// computed from an explicit stable sort rather than the closed form.
pub fn rho_point_numeric(gamma: &[u32], r: &Rational) -> Vec<Rational> {
    let n = gamma.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Stable decreasing sort: ties keep their left-to-right order.
    order.sort_by(|&a, &b| gamma[b].cmp(&gamma[a]));
    let mut point = vec![Rational::zero(); n];
    for (pos, &i) in order.iter().enumerate() {
        // delta = (n-1, ..., 1, 0) is assigned along the sorted order.
        let delta = (n - 1 - pos) as i64;
        point[i] = Rational::from_integer(BigInt::from(gamma[i])) + r * Rational::from_integer(BigInt::from(delta));
    }
    point
}

pub fn eval_monomial(e: &[u32], point: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for (x, &k) in point.iter().zip(e) {
        for _ in 0..k {
            v *= x;
        }
    }
    v
}

pub fn eval_num(p: &NumPoly, point: &[Rational]) -> Rational {
    p.iter().map(|(e, c)| c * eval_monomial(e, point)).fold(Rational::zero(), |a, b| a + b)
}

/// Solves `a x = b` by Gauss-Jordan elimination; `None` if singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !a[row][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = a[row][col].clone();
                for k in col..n {
                    let t = &f * &a[col][k];
                    a[row][k] -= t;
                }
                let t = &f * &b[col];
                b[row] -= t;
            }
        }
    }
    Some(b)
}

/// Finds `lead + sum c_j basis_j` vanishing at every point; `basis`
/// and `points` must have equal length.
fn interpolate(lead: &NumPoly, basis: &[NumPoly], points: &[Vec<Rational>]) -> NumPoly {
    assert_eq!(basis.len(), points.len(), "oracle system must be square");
    let a: Vec<Vec<Rational>> = points.iter().map(|p| basis.iter().map(|f| eval_num(f, p)).collect()).collect();
    let b: Vec<Rational> = points.iter().map(|p| -eval_num(lead, p)).collect();
    let c = solve(a, b).expect("oracle system is nonsingular");
    let mut out = lead.clone();
    for (f, cj) in basis.iter().zip(c) {
        for (e, v) in f {
            *out.entry(e.clone()).or_insert_with(Rational::zero) += &cj * v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn mono(e: &[u32]) -> NumPoly {
    NumPoly::from([(e.to_vec(), Rational::one())])
}

/// The bar monomial at numeric `r`: `x^eta` plus lower-degree terms,
/// vanishing at `-bar gamma` for every `|gamma| < |eta|`.
pub fn oracle_barmon(eta: &[u32], r: &Rational) -> NumPoly {
    let n = eta.len();
    let d: u32 = eta.iter().sum();
    let lower = exponents_below(d, n);
    let basis: Vec<NumPoly> = lower.iter().map(|e| mono(e)).collect();
    let points: Vec<Vec<Rational>> =
        lower.iter().map(|g| rho_point_numeric(g, r).into_iter().map(|v| -v).collect()).collect();
    interpolate(&mono(eta), &basis, &points)
}

/// `E^{r delta}_eta` at numeric `r`: coefficient of `x^eta` is one, degree
/// at most `|eta|`, vanishing at `bar gamma` for `|gamma| <= |eta|`, `gamma != eta`.
pub fn oracle_e_rdelta(eta: &[u32], r: &Rational) -> NumPoly {
    let n = eta.len();
    let d: u32 = eta.iter().sum();
    let others: Vec<Vec<u32>> = (0..=d).flat_map(|k| exponents_of_degree(k, n)).filter(|g| g != eta).collect();
    let basis: Vec<NumPoly> = others.iter().map(|e| mono(e)).collect();
    let points: Vec<Vec<Rational>> = others.iter().map(|g| rho_point_numeric(g, r)).collect();
    interpolate(&mono(eta), &basis, &points)
}

fn is_partition(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

fn monomial_symmetric(lambda: &[u32]) -> NumPoly {
    let n = lambda.len();
    exponents_of_degree(lambda.iter().sum(), n)
        .into_iter()
        .filter(|e| {
            let mut s = e.clone();
            s.sort_unstable_by(|a, b| b.cmp(a));
            s == lambda
        })
        .map(|e| (e, Rational::one()))
        .collect()
}

/// The symmetric interpolation polynomial at numeric `r`: `m_lambda` plus
/// lower `m_mu`, vanishing at `mu + r delta` for `|mu| <= |lambda|`, `mu != lambda`.
pub fn oracle_p_interp(lambda: &[u32], r: &Rational) -> NumPoly {
    let n = lambda.len();
    let d: u32 = lambda.iter().sum();
    let others: Vec<Vec<u32>> = (0..=d)
        .flat_map(|k| exponents_of_degree(k, n))
        .filter(|g| is_partition(g) && g != lambda)
        .collect();
    let basis: Vec<NumPoly> = others.iter().map(|m| monomial_symmetric(m)).collect();
    let points: Vec<Vec<Rational>> = others.iter().map(|g| rho_point_numeric(g, r)).collect();
    interpolate(&monomial_symmetric(lambda), &basis, &points)
}

/// Sample values of `r` avoiding the poles of the normalizations used.
pub fn sample_rs() -> Vec<Rational> {
    vec![q(2, 1), q(1, 3), q(5, 7)]
}

/// Reference divided difference on one monomial, from the geometric-series
/// closed form of `(s_i m - m) / (x_i - x_{i+1})` (0-based `i`).
pub fn div_diff_monomial(e: &[u32], i: usize) -> Vec<(Vec<u32>, i64)> {
    let (a, b) = (e[i], e[i + 1]);
    let (lo, span, sign) = if a > b { (b, a - b, -1) } else { (a, b - a, 1) };
    (0..span)
        .map(|t| {
            let mut f = e.to_vec();
            f[i] = lo + t;
            f[i + 1] = lo + span - 1 - t;
            (f, sign)
        })
        .collect()
}

pub fn laurent_from_int(c: i64) -> RLaurent {
    RLaurent::from_int(c)
}
