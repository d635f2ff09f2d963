//! Operators on polynomials in `x_1..x_n`: transpositions, divided
//! differences, the intertwiners `sigma_i^±` and `Phi`, `Phi^±`, the affine
//! shift `omega~`, the sign flip `S`, and the dehomogenization operator `Xi`.
//!
//! Indexed operators take a 1-based `i` with `1 <= i <= n - 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{MPoly, RLaurent, RatMPoly};
use crate::games::BarMonomialCache;
use crate::shapes::Composition;

fn check_index(f: &MPoly, i: usize) -> Result<()> {
    if i == 0 || i >= f.n() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: f.n().saturating_sub(1),
        });
    }
    Ok(())
}

/// `s_i f`: interchanges `x_i` and `x_{i+1}`.
pub fn apply_si(f: &MPoly, i: usize) -> Result<MPoly> {
    check_index(f, i)?;
    let mut perm: Vec<usize> = (0..f.n()).collect();
    perm.swap(i - 1, i);
    Ok(f.permute_vars(&perm))
}

/// `d_i f = (s_i f - f) / (x_i - x_{i+1})`. Note `d_i(x_i) = -1`.
pub fn div_diff(f: &MPoly, i: usize) -> Result<MPoly> {
    let diff = &apply_si(f, i)? - f;
    diff.divide_exact_by_linear(i)
        .map_err(|e| Error::Invariant(format!("divided difference: {e}")))
}

/// `sigma_i^+ = s_i + r d_i`.
pub fn sigma_plus(f: &MPoly, i: usize) -> Result<MPoly> {
    Ok(apply_si(f, i)? + div_diff(f, i)?.scale(&RLaurent::r()))
}

/// `sigma_i^- = s_i - r d_i`.
pub fn sigma_minus(f: &MPoly, i: usize) -> Result<MPoly> {
    Ok(apply_si(f, i)? - div_diff(f, i)?.scale(&RLaurent::r()))
}

/// `f(x_n, x_1, ..., x_{n-1})`.
fn rotate(f: &MPoly) -> MPoly {
    let n = f.n();
    if n == 0 {
        return f.clone();
    }
    let perm: Vec<usize> = (0..n).map(|i| if i == 0 { n - 1 } else { i - 1 }).collect();
    f.permute_vars(&perm)
}

/// `f` with `x_n` replaced by `x_n + c`.
fn shift_last(f: &MPoly, c: i64) -> MPoly {
    let n = f.n();
    let images: Vec<MPoly> = (1..=n)
        .map(|j| {
            let x = MPoly::var(n, j);
            if j == n {
                x + MPoly::constant(n, RLaurent::from_int(c))
            } else {
                x
            }
        })
        .collect();
    f.substitute(&images).expect("images share dimension")
}

fn times_last(f: &MPoly) -> MPoly {
    let n = f.n();
    f * &MPoly::var(n, n)
}

/// `Phi f = x_n f(x_n, x_1, ..., x_{n-1})`.
pub fn phi(f: &MPoly) -> MPoly {
    times_last(&rotate(f))
}

/// `Phi^+ f = x_n f(x_n + 1, x_1, ..., x_{n-1})`.
pub fn phi_plus(f: &MPoly) -> MPoly {
    times_last(&shift_last(&rotate(f), 1))
}

/// `Phi^- f = x_n f(x_n - 1, x_1, ..., x_{n-1})`.
pub fn phi_minus(f: &MPoly) -> MPoly {
    times_last(&shift_last(&rotate(f), -1))
}

/// `omega~ f = f(x_n + 1, x_1, ..., x_{n-1})`.
pub fn omega_tilde(f: &MPoly) -> MPoly {
    shift_last(&rotate(f), 1)
}

/// `S f = f(-x)`.
pub fn sign_flip(f: &MPoly) -> MPoly {
    let n = f.n();
    MPoly::from_terms(
        n,
        f.terms().map(|(e, c)| {
            let odd = e.iter().map(|&a| a as u64).sum::<u64>() % 2 == 1;
            (e.to_vec(), if odd { -c } else { c.clone() })
        }),
    )
}

/// `Xi f`, extended linearly from `Xi(x^eta) = x^{bar eta}`.
pub fn dehomogenize_xi(f: &MPoly, cache: &BarMonomialCache) -> Result<MPoly> {
    if f.n() != cache.n() {
        return Err(Error::DimensionMismatch(cache.n(), f.n()));
    }
    let mut acc = MPoly::zero(f.n());
    for (e, c) in f.terms() {
        let bar = cache.get(&Composition::new(e.to_vec()));
        acc += &bar.scale(c);
    }
    Ok(acc)
}

/// `Xi` on a polynomial with a common `r`-denominator.
pub fn dehomogenize_xi_rat(f: &RatMPoly, cache: &BarMonomialCache) -> Result<RatMPoly> {
    f.map_linear(|num| dehomogenize_xi(num, cache))
}

/// `Psi = S Xi S`.
pub fn psi(f: &MPoly, cache: &BarMonomialCache) -> Result<MPoly> {
    Ok(sign_flip(&dehomogenize_xi(&sign_flip(f), cache)?))
}

/// An operator as a value, so recursion paths can be logged and replayed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorTag {
    Si(usize),
    DivDiff(usize),
    SigmaPlus(usize),
    SigmaMinus(usize),
    Phi,
    PhiPlus,
    PhiMinus,
    OmegaTilde,
    SignFlip,
    Xi,
}

impl OperatorTag {
    /// `Xi` needs the bar-monomial cache; every other operator ignores it.
    pub fn apply(&self, f: &MPoly, cache: Option<&BarMonomialCache>) -> Result<MPoly> {
        match *self {
            Self::Si(i) => apply_si(f, i),
            Self::DivDiff(i) => div_diff(f, i),
            Self::SigmaPlus(i) => sigma_plus(f, i),
            Self::SigmaMinus(i) => sigma_minus(f, i),
            Self::Phi => Ok(phi(f)),
            Self::PhiPlus => Ok(phi_plus(f)),
            Self::PhiMinus => Ok(phi_minus(f)),
            Self::OmegaTilde => Ok(omega_tilde(f)),
            Self::SignFlip => Ok(sign_flip(f)),
            Self::Xi => match cache {
                Some(c) => dehomogenize_xi(f, c),
                None => Err(Error::Invariant("Xi requires a bar-monomial cache".into())),
            },
        }
    }
}

impl fmt::Display for OperatorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Si(i) => write!(f, "s{i}"),
            Self::DivDiff(i) => write!(f, "d{i}"),
            Self::SigmaPlus(i) => write!(f, "sigma{i}+"),
            Self::SigmaMinus(i) => write!(f, "sigma{i}-"),
            Self::Phi => f.write_str("Phi"),
            Self::PhiPlus => f.write_str("Phi+"),
            Self::PhiMinus => f.write_str("Phi-"),
            Self::OmegaTilde => f.write_str("omega~"),
            Self::SignFlip => f.write_str("S"),
            Self::Xi => f.write_str("Xi"),
        }
    }
}

/// One step of the canonical path from `0` up to a composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStep {
    /// `zeta -> Phi zeta`.
    Cyclic,
    /// `zeta -> s_i zeta` with `zeta_i = 0 < zeta_{i+1}`.
    Swap(usize),
}

/// The last step of the canonical path to `eta`: if the last nonzero index
/// is `n`, undo `Phi`; otherwise move that last nonzero part one place right
/// and undo `s_i`. `None` for `eta = 0`.
pub fn predecessor(eta: &Composition) -> Option<(PathStep, Composition)> {
    let i = eta.last_nonzero()?;
    Some(if i == eta.n() {
        (PathStep::Cyclic, eta.phi_inverse().expect("last part nonzero"))
    } else {
        (PathStep::Swap(i), eta.s(i))
    })
}

/// The path `0 = zeta_0 -> ... -> zeta_t = eta`, each entry the step taken
/// and the composition it starts from.
pub fn recursion_path(eta: &Composition) -> Vec<(PathStep, Composition)> {
    let mut out = Vec::new();
    let mut cur = eta.clone();
    while let Some((step, prev)) = predecessor(&cur) {
        out.push((step, prev.clone()));
        cur = prev;
    }
    out.reverse();
    out
}

/// The operator sequence building `x^{bar eta}` from `1`.
pub fn barmon_path_tags(eta: &Composition) -> Vec<OperatorTag> {
    recursion_path(eta)
        .into_iter()
        .map(|(step, _)| match step {
            PathStep::Cyclic => OperatorTag::PhiPlus,
            PathStep::Swap(i) => OperatorTag::SigmaPlus(i),
        })
        .collect()
}

/// Applies `tags` left to right starting from `f`.
pub fn replay(tags: &[OperatorTag], f: &MPoly, cache: Option<&BarMonomialCache>) -> Result<MPoly> {
    tags.iter().try_fold(f.clone(), |acc, t| t.apply(&acc, cache))
}
