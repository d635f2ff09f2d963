//! Compositions, partitions and Ferrers-diagram statistics.
//!
//! Rows and columns are 1-based throughout, matching the `(i, j)` box
//! convention of English Ferrers diagrams.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{rat, RLaurent};

/// A vector of nonnegative integers of fixed length `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

/// The critical box `(k, m)` of a nonzero composition and its leg `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalBox {
    /// Critical row, 1-based: the first row of maximal length.
    pub k: usize,
    /// Maximal part.
    pub m: u32,
    /// Critical leg.
    pub l: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Self(parts)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Unit vector `e_i` (1-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        Self(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `|eta|`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    /// Part `eta_i`, 1-based.
    pub fn part(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// `eta^+`, the decreasing rearrangement.
    pub fn sorted_decreasing(&self) -> Composition {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Self(v)
    }

    /// Largest 1-based index with a nonzero part.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.0.iter().rposition(|&p| p != 0).map(|i| i + 1)
    }

    /// `s_i eta`: swaps parts `i` and `i+1` (1-based). Panics if `i` is not in `1..n`.
    pub fn s(&self, i: usize) -> Composition {
        assert!(i >= 1 && i < self.n(), "s_{i} undefined for n = {}", self.n());
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Self(v)
    }

    /// `Phi eta = (eta_2, ..., eta_n, eta_1 + 1)`.
    pub fn phi(&self) -> Composition {
        let mut v: Vec<u32> = self.0[1..].to_vec();
        v.push(self.0[0] + 1);
        Self(v)
    }

    /// The preimage under `Phi`, defined when `eta_n > 0`.
    pub fn phi_inverse(&self) -> Option<Composition> {
        let last = *self.0.last()?;
        if last == 0 {
            return None;
        }
        let mut v = vec![last - 1];
        v.extend_from_slice(&self.0[..self.n() - 1]);
        Some(Self(v))
    }

    /// `omega eta = (eta_2, ..., eta_n, eta_1)`.
    pub fn omega(&self) -> Composition {
        let mut v: Vec<u32> = self.0[1..].to_vec();
        v.push(self.0[0]);
        Self(v)
    }

    pub fn critical_box(&self) -> Result<CriticalBox> {
        critical_box(self)
    }

    /// `eta^*`: the composition with its critical box deleted.
    pub fn star(&self) -> Result<Composition> {
        eta_star(self)
    }

    pub fn with_part(&self, i: usize, v: u32) -> Composition {
        let mut out = self.0.clone();
        out[i - 1] = v;
        Self(out)
    }
}

impl Deref for Composition {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses `1,0,4` (surrounding parentheses and spaces are tolerated).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Err(Error::Parse("empty composition".into()));
        }
        t.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad part {:?} in {s:?}", p.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl From<Vec<u32>> for Composition {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// A weakly decreasing [`Composition`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Composition);

impl Partition {
    pub fn new(c: Composition) -> Result<Self> {
        if c.is_partition() {
            Ok(Self(c))
        } else {
            Err(Error::NotAPartition(c.to_string()))
        }
    }

    pub fn as_composition(&self) -> &Composition {
        &self.0
    }

    pub fn into_composition(self) -> Composition {
        self.0
    }
}

impl Deref for Partition {
    type Target = Composition;
    fn deref(&self) -> &Composition {
        &self.0
    }
}

impl TryFrom<Composition> for Partition {
    type Error = Error;
    fn try_from(c: Composition) -> Result<Self> {
        Self::new(c)
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

pub fn critical_box(eta: &Composition) -> Result<CriticalBox> {
    let m = eta.iter().copied().max().unwrap_or(0);
    if m == 0 {
        return Err(Error::ZeroComposition);
    }
    let k = eta.iter().position(|&p| p == m).unwrap() + 1;
    let below = eta[k..].iter().filter(|&&p| p == m).count();
    let above = eta[..k - 1].iter().filter(|&&p| p + 1 == m).count();
    Ok(CriticalBox {
        k,
        m,
        l: (below + above) as u32,
    })
}

pub fn eta_star(eta: &Composition) -> Result<Composition> {
    let cb = critical_box(eta)?;
    Ok(eta.with_part(cb.k, cb.m - 1))
}

fn check_box(eta: &Composition, i: usize, j: usize) -> Result<()> {
    if i == 0 || i > eta.n() || j == 0 || j > eta.part(i) as usize {
        return Err(Error::BoxOutsideDiagram {
            row: i,
            col: j,
            shape: eta.to_string(),
        });
    }
    Ok(())
}

/// Arm `eta_i - j` of the box `(i, j)`.
pub fn arm(eta: &Composition, i: usize, j: usize) -> Result<u32> {
    check_box(eta, i, j)?;
    Ok(eta.part(i) - j as u32)
}

/// Leg of the box `(i, j)`: rows below with `j <= eta_k <= eta_i` plus rows
/// above with `j <= eta_k + 1 <= eta_i`.
pub fn leg(eta: &Composition, i: usize, j: usize) -> Result<u32> {
    check_box(eta, i, j)?;
    let (j, ei) = (j as u32, eta.part(i));
    let below = eta[i..].iter().filter(|&&p| j <= p && p <= ei).count();
    let above = eta[..i - 1].iter().filter(|&&p| j <= p + 1 && p < ei).count();
    Ok((below + above) as u32)
}

/// The rho-shifted point `gamma-bar = gamma + w_gamma(r*delta)`.
///
/// The shortest sorting permutation hands the `delta` entries out in stable
/// decreasing order, so coordinate `i` receives
/// `#{j : gamma_j < gamma_i} + #{j > i : gamma_j = gamma_i}` copies of `r`.
pub fn rho_point(gamma: &Composition) -> Vec<RLaurent> {
    (0..gamma.n())
        .map(|i| {
            let g = gamma[i];
            let smaller = gamma.iter().filter(|&&p| p < g).count();
            let equal_after = gamma[i + 1..].iter().filter(|&&p| p == g).count();
            RLaurent::linear(g as i64, (smaller + equal_after) as i64)
        })
        .collect()
}

/// `-gamma-bar`, where bar monomials vanish.
pub fn neg_rho_point(gamma: &Composition) -> Vec<RLaurent> {
    rho_point(gamma).into_iter().map(|c| -c).collect()
}

/// `c_lambda(alpha) = prod_s (alpha*a(s) + l(s) + 1)` in the `r`-variable.
pub fn c_lambda(lambda: &Partition) -> RLaurent {
    let mut acc = RLaurent::one();
    for i in 1..=lambda.n() {
        for j in 1..=lambda.part(i) {
            let a = lambda.part(i) - j;
            let l = lambda[i..].iter().filter(|&&p| p >= j).count();
            let factor = RLaurent::from_terms([(-1, rat(a as i64)), (0, rat(l as i64 + 1))]);
            acc *= &factor;
        }
    }
    acc
}

/// `d_eta(alpha) = prod_s (alpha*(a(s) + 1) + l(s) + 1)` in the `r`-variable.
pub fn d_eta(eta: &Composition) -> RLaurent {
    let mut acc = RLaurent::one();
    for i in 1..=eta.n() {
        for j in 1..=eta.part(i) as usize {
            let a = arm(eta, i, j).expect("box inside diagram");
            let l = leg(eta, i, j).expect("box inside diagram");
            let factor = RLaurent::from_terms([(-1, rat(a as i64 + 1)), (0, rat(l as i64 + 1))]);
            acc *= &factor;
        }
    }
    acc
}

/// All distinct rearrangements of `lambda`, in lexicographically decreasing order
/// (so `lambda` itself comes first).
pub fn rearrangements(lambda: &Partition) -> Vec<Composition> {
    let mut cur = lambda.0 .0.clone();
    let mut out = vec![Composition(cur.clone())];
    // previous permutation in lexicographic order
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] > cur[i]) else {
            return out;
        };
        let pivot = i - 1;
        let j = (i..cur.len()).rev().find(|&j| cur[j] < cur[pivot]).unwrap();
        cur.swap(pivot, j);
        cur[i..].reverse();
        out.push(Composition(cur.clone()));
    }
}

/// Compositions of size `d` with `n` parts, lexicographically decreasing.
pub fn compositions_of_size(d: u32, n: usize) -> Vec<Composition> {
    fn rec(rest: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if slots == 1 {
            cur.push(rest);
            out.push(Composition(cur.clone()));
            cur.pop();
            return;
        }
        for first in (0..=rest).rev() {
            cur.push(first);
            rec(rest - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Composition(Vec::new()));
        }
        return out;
    }
    rec(d, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All compositions with `|gamma| <= max_norm`, in graded order: by size,
/// then lexicographically decreasing.
pub fn compositions_up_to(max_norm: u32, n: usize) -> Vec<Composition> {
    (0..=max_norm).flat_map(|d| compositions_of_size(d, n)).collect()
}

/// Partitions with at most `n` parts and `|lambda| <= max_norm`, graded.
pub fn partitions_up_to(max_norm: u32, n: usize) -> Vec<Partition> {
    compositions_up_to(max_norm, n)
        .into_iter()
        .filter(Composition::is_partition)
        .map(Partition)
        .collect()
}
