//! Nonsymmetric Jack polynomials `E^(alpha)`, interpolation polynomials
//! `E^{r delta}`, their normalizations `F`, the symmetric families `P` and
//! `J`, basis expansions and binomial-coefficient evaluation.
//!
//! `alpha` is always `1/r`. `E` and `P` carry coefficients in `Q(r)` and are
//! returned as [`RatMPoly`]; `F` and `J` have Laurent coefficients and are
//! returned as [`MPoly`], with the conversion checked exactly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{MPoly, RLaurent, RatFunc, RatMPoly};
use crate::games::{sym_barmon, BarMonomialCache};
use crate::operators::{
    apply_si, dehomogenize_xi, dehomogenize_xi_rat, phi, phi_minus, predecessor, sigma_minus, sign_flip, PathStep,
};
use crate::shapes::{c_lambda, d_eta, neg_rho_point, rho_point, Composition, Partition};

/// The polynomial families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    EAlpha,
    ERdelta,
    FAlpha,
    FRdelta,
    PAlpha,
    JAlpha,
    PRdelta,
    JRdelta,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Self::EAlpha,
        Self::ERdelta,
        Self::FAlpha,
        Self::FRdelta,
        Self::PAlpha,
        Self::JAlpha,
        Self::PRdelta,
        Self::JRdelta,
    ];

    /// Builds a family from its letter (`E`, `F`, `J`, `P`) and variant
    /// (`alpha` or `rdelta`).
    pub fn from_parts(letter: &str, variant: &str) -> Result<Self> {
        let rdelta = match variant.to_ascii_lowercase().as_str() {
            "alpha" | "a" => false,
            "rdelta" | "rd" => true,
            other => return Err(Error::Parse(format!("unknown variant {other:?}"))),
        };
        Ok(match (letter.to_ascii_uppercase().as_str(), rdelta) {
            ("E", false) => Self::EAlpha,
            ("E", true) => Self::ERdelta,
            ("F", false) => Self::FAlpha,
            ("F", true) => Self::FRdelta,
            ("P", false) => Self::PAlpha,
            ("P", true) => Self::PRdelta,
            ("J", false) => Self::JAlpha,
            ("J", true) => Self::JRdelta,
            (other, _) => return Err(Error::Parse(format!("unknown family {other:?}"))),
        })
    }

    pub fn is_symmetric(self) -> bool {
        matches!(self, Self::PAlpha | Self::JAlpha | Self::PRdelta | Self::JRdelta)
    }

    pub fn is_homogeneous(self) -> bool {
        matches!(self, Self::EAlpha | Self::FAlpha | Self::PAlpha | Self::JAlpha)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::EAlpha => "E_alpha",
            Self::ERdelta => "E_rdelta",
            Self::FAlpha => "F_alpha",
            Self::FRdelta => "F_rdelta",
            Self::PAlpha => "P_alpha",
            Self::JAlpha => "J_alpha",
            Self::PRdelta => "P_rdelta",
            Self::JRdelta => "J_rdelta",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    /// Parses `E_alpha`, `J_rdelta`, ...
    fn from_str(s: &str) -> Result<Self> {
        let (l, v) = s
            .split_once('_')
            .ok_or_else(|| Error::Parse(format!("expected FAMILY_VARIANT, got {s:?}")))?;
        Self::from_parts(l, v)
    }
}

/// A computed family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFamilyEntry {
    pub family: Family,
    pub index: Composition,
    pub value: RatMPoly,
}

impl PolyFamilyEntry {
    /// The value over `Q[r, 1/r]`, when its coefficients are Laurent.
    pub fn as_mpoly(&self) -> Option<MPoly> {
        self.value.to_mpoly()
    }
}

impl Serialize for PolyFamilyEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PolyFamilyEntry", 4)?;
        st.serialize_field("family", self.family.name())?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.serialize_field("laurent", &self.as_mpoly())?;
        st.end()
    }
}

/// `c_i^eta` and `d_i^eta` of the Hecke recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeScalars {
    pub c: RatFunc,
    pub d: RatFunc,
}

/// `c_i^eta = r / (bar eta_{i+1} - bar eta_i)`, and `d_i^eta = 1` when
/// `eta_i < eta_{i+1}`, else `1 - c^2`. The denominator never vanishes since
/// the `r`-parts of distinct coordinates of `bar eta` differ.
pub fn hecke_scalars(eta: &Composition, i: usize) -> Result<HeckeScalars> {
    if i == 0 || i >= eta.n() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: eta.n().saturating_sub(1),
        });
    }
    let bar = rho_point(eta);
    let c = RatFunc::new(RLaurent::r(), &bar[i] - &bar[i - 1])?;
    let d = if eta.part(i) < eta.part(i + 1) {
        RatFunc::from_laurent(RLaurent::one())
    } else {
        RatFunc::from_laurent(RLaurent::one()).sub(&c.mul(&c))
    };
    Ok(HeckeScalars { c, d })
}

#[derive(Debug, Default)]
struct Memo<K, V>(RwLock<HashMap<K, Arc<V>>>);

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    fn get(&self, k: &K) -> Option<Arc<V>> {
        self.0.read().expect("memo lock").get(k).cloned()
    }

    fn insert(&self, k: K, v: V) -> Arc<V> {
        let v = Arc::new(v);
        Arc::clone(self.0.write().expect("memo lock").entry(k).or_insert(v))
    }
}

/// Memoized computation of every family for one ambient `n`. Caches follow
/// the same contract as [`BarMonomialCache`]: atomic get-or-compute,
/// duplicate work tolerated.
#[derive(Debug)]
pub struct JackContext {
    n: usize,
    barmons: BarMonomialCache,
    memo: Memo<(Family, Composition), RatMPoly>,
}

impl JackContext {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            barmons: BarMonomialCache::new(n),
            memo: Memo(RwLock::new(HashMap::new())),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn barmons(&self) -> &BarMonomialCache {
        &self.barmons
    }

    fn check_len(&self, eta: &Composition) -> Result<()> {
        if eta.n() != self.n {
            return Err(Error::DimensionMismatch(self.n, eta.n()));
        }
        Ok(())
    }

    fn cached(
        &self,
        family: Family,
        eta: &Composition,
        compute: impl FnOnce() -> Result<RatMPoly>,
    ) -> Result<Arc<RatMPoly>> {
        self.check_len(eta)?;
        let key = (family, eta.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v);
        }
        let v = compute()?;
        Ok(self.memo.insert(key, v))
    }

    /// One step of the `E` recursion. For a swap step `zeta -> s_i zeta`
    /// (`zeta_i < zeta_{i+1}`, so `d_i^zeta = 1`) this is
    /// `E_{s_i zeta} = (T + c_i^zeta) E_zeta` with `T = s_i` or `sigma_i^-`.
    fn e_step(&self, rdelta: bool, step: PathStep, zeta: &Composition, prev: &RatMPoly) -> Result<RatMPoly> {
        match step {
            PathStep::Cyclic => prev.map_linear(|f| Ok(if rdelta { phi_minus(f) } else { phi(f) })),
            PathStep::Swap(i) => {
                if zeta.part(i) >= zeta.part(i + 1) {
                    return Err(Error::Invariant(format!("d_{i} != 1 at {zeta:?}")));
                }
                let bar = rho_point(zeta);
                let delta = &bar[i] - &bar[i - 1];
                let num = prev.num();
                let t = if rdelta { sigma_minus(num, i)? } else { apply_si(num, i)? };
                let new_num = t.scale(&delta) + num.scale(&RLaurent::r());
                RatMPoly::new(new_num, prev.den() * &delta)
            }
        }
    }

    fn e_family(&self, rdelta: bool, eta: &Composition) -> Result<Arc<RatMPoly>> {
        let family = if rdelta { Family::ERdelta } else { Family::EAlpha };
        self.cached(family, eta, || match predecessor(eta) {
            None => Ok(RatMPoly::from_mpoly(MPoly::one(self.n))),
            Some((step, zeta)) => {
                let prev = self.e_family(rdelta, &zeta)?;
                self.e_step(rdelta, step, &zeta, &prev)
            }
        })
    }

    /// `E^(alpha)_eta`, monic in `x^eta` and homogeneous of degree `|eta|`.
    pub fn e_alpha(&self, eta: &Composition) -> Result<Arc<RatMPoly>> {
        self.e_family(false, eta)
    }

    /// `E^{r delta}_eta`, monic in `x^eta` and vanishing at `bar gamma` for
    /// `|gamma| <= |eta|`, `gamma != eta`.
    pub fn e_rdelta(&self, eta: &Composition) -> Result<Arc<RatMPoly>> {
        self.e_family(true, eta)
    }

    /// `F^(alpha)_eta = d_eta E^(alpha)_eta`.
    pub fn f_alpha(&self, eta: &Composition) -> Result<MPoly> {
        let v = self.cached(Family::FAlpha, eta, || {
            self.e_alpha(eta)?.scale(&RatFunc::from_laurent(d_eta(eta)))
        })?;
        laurent(&v, Family::FAlpha, eta)
    }

    /// `F^{r delta}_eta(x) = (-1)^{|eta|} d_eta E^{r delta}_eta(-x)`.
    pub fn f_rdelta(&self, eta: &Composition) -> Result<MPoly> {
        let v = self.cached(Family::FRdelta, eta, || {
            let mut d = d_eta(eta);
            if eta.size() % 2 == 1 {
                d = -d;
            }
            self.e_rdelta(eta)?
                .map_linear(|f| Ok(sign_flip(f)))?
                .scale(&RatFunc::from_laurent(d))
        })?;
        laurent(&v, Family::FRdelta, eta)
    }

    /// `P^(alpha)_lambda`: `E^(alpha)_lambda` summed over all `n!` variable
    /// permutations, rescaled so the coefficient of `x^lambda` is `1`.
    pub fn p_alpha(&self, lambda: &Partition) -> Result<Arc<RatMPoly>> {
        self.cached(Family::PAlpha, lambda, || {
            let e = self.e_alpha(lambda)?;
            let mut sum = MPoly::zero(self.n);
            for perm in permutations(self.n) {
                sum += &e.num().permute_vars(&perm);
            }
            let sym = RatMPoly::new(sum, e.den().clone())?;
            let lead = sym.coeff(lambda);
            if lead.is_zero() {
                return Err(Error::Invariant(format!("zero m_lambda coefficient for {lambda:?}")));
            }
            sym.scale(&lead.recip()?)
        })
    }

    /// `J^(alpha)_lambda = c_lambda P^(alpha)_lambda`.
    pub fn j_alpha(&self, lambda: &Partition) -> Result<MPoly> {
        let v = self.cached(Family::JAlpha, lambda, || {
            self.p_alpha(lambda)?.scale(&RatFunc::from_laurent(c_lambda(lambda)))
        })?;
        laurent(&v, Family::JAlpha, lambda)
    }

    /// `J^{r delta}_lambda = Xi(J^(alpha)_lambda)`.
    pub fn j_rdelta(&self, lambda: &Partition) -> Result<MPoly> {
        let v = self.cached(Family::JRdelta, lambda, || {
            Ok(RatMPoly::from_mpoly(dehomogenize_xi(&self.j_alpha(lambda)?, &self.barmons)?))
        })?;
        laurent(&v, Family::JRdelta, lambda)
    }

    /// `Xi(P^(alpha)_lambda) = J^{r delta}_lambda / c_lambda`: the symmetric
    /// polynomial with leading part `P^(alpha)_lambda` vanishing at
    /// `-mu - r delta` for `|mu| < |lambda|`.
    pub fn p_rdelta(&self, lambda: &Partition) -> Result<Arc<RatMPoly>> {
        self.cached(Family::PRdelta, lambda, || {
            dehomogenize_xi_rat(&*self.p_alpha(lambda)?, &self.barmons)
        })
    }

    /// The classical symmetric interpolation polynomial
    /// `(-1)^{|lambda|} p_rdelta(lambda)(-x)`, vanishing at `mu + r delta`.
    pub fn p_interp(&self, lambda: &Partition) -> Result<RatMPoly> {
        let p = self.p_rdelta(lambda)?;
        let flipped = p.map_linear(|f| Ok(sign_flip(f)))?;
        if lambda.size() % 2 == 1 {
            flipped.scale(&RatFunc::from_laurent(-RLaurent::one()))
        } else {
            Ok(flipped)
        }
    }

    /// Dispatches on `family`; symmetric families require a partition index.
    pub fn entry(&self, family: Family, index: &Composition) -> Result<PolyFamilyEntry> {
        let value = if family.is_symmetric() {
            let lambda = Partition::new(index.clone())?;
            match family {
                Family::PAlpha => (*self.p_alpha(&lambda)?).clone(),
                Family::JAlpha => self.j_alpha(&lambda)?.into(),
                Family::PRdelta => (*self.p_rdelta(&lambda)?).clone(),
                _ => self.j_rdelta(&lambda)?.into(),
            }
        } else {
            match family {
                Family::EAlpha => (*self.e_alpha(index)?).clone(),
                Family::ERdelta => (*self.e_rdelta(index)?).clone(),
                Family::FAlpha => self.f_alpha(index)?.into(),
                _ => self.f_rdelta(index)?.into(),
            }
        };
        Ok(PolyFamilyEntry {
            family,
            index: index.clone(),
            value,
        })
    }

    /// `G_eta(y) = E^{r delta}_eta(y - (n-1) r 1)`, so that
    /// `E^{r delta}_eta(x) = G_eta(x + (n-1) r 1)`. `G_eta` vanishes at
    /// `bar gamma + (n-1) r 1`.
    pub fn g_variant(&self, eta: &Composition) -> Result<RatMPoly> {
        let shift = RLaurent::linear(0, self.n as i64 - 1);
        self.e_rdelta(eta)?
            .map_linear(|f| f.substitute(&shifted_vars(self.n, &(-&shift))))
    }

    /// Checks `E^{r delta}_eta(x) = G_eta(x + (n-1) r 1)` and the shifted
    /// vanishing of `G_eta`.
    pub fn g_shift_self_test(&self, eta: &Composition) -> Result<bool> {
        let shift = RLaurent::linear(0, self.n as i64 - 1);
        let g = self.g_variant(eta)?;
        let back = g.map_linear(|f| f.substitute(&shifted_vars(self.n, &shift)))?;
        if back != *self.e_rdelta(eta)? {
            return Ok(false);
        }
        for gamma in crate::shapes::compositions_up_to(eta.size(), self.n) {
            if &gamma == eta {
                continue;
            }
            let pt: Vec<RLaurent> = rho_point(&gamma).iter().map(|c| c + &shift).collect();
            if !g.eval(&pt)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `m_{bar lambda}`.
    pub fn sym_barmon(&self, lambda: &Partition) -> MPoly {
        sym_barmon(lambda, &self.barmons)
    }

    /// `(-r)^{|lambda|} J^{r delta}_lambda(-mu - r delta)`, or the unscaled
    /// value when `scaled` is false.
    pub fn binomial_value(&self, lambda: &Partition, mu: &Partition, scaled: bool) -> Result<RLaurent> {
        self.check_len(mu)?;
        let raw = self.j_rdelta(lambda)?.eval(&neg_rho_point(mu))?;
        Ok(if scaled {
            let mut s = RLaurent::r_pow(lambda.size() as i32);
            if lambda.size() % 2 == 1 {
                s = -s;
            }
            raw * s
        } else {
            raw
        })
    }

    /// `F^{r delta}_eta(-bar gamma)`.
    pub fn f_rdelta_at_neg_rho(&self, eta: &Composition, gamma: &Composition) -> Result<RLaurent> {
        self.check_len(gamma)?;
        self.f_rdelta(eta)?.eval(&neg_rho_point(gamma))
    }
}

fn laurent(v: &RatMPoly, family: Family, eta: &Composition) -> Result<MPoly> {
    v.to_mpoly()
        .ok_or_else(|| Error::Invariant(format!("{family}{eta:?} has non-Laurent coefficients")))
}

fn shifted_vars(n: usize, c: &RLaurent) -> Vec<MPoly> {
    (1..=n)
        .map(|j| MPoly::var(n, j) + MPoly::constant(n, c.clone()))
        .collect()
}

/// All permutations of `0..n` (as 0-based images).
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Target bases for [`expansion_coeffs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `x^gamma`.
    Monomials,
    /// `x^{bar gamma}`.
    BarMonomials,
    /// `m_mu`; the input must be symmetric.
    SymmetricMonomials,
    /// `m_{bar mu}`; the input must be symmetric.
    SymmetricBar,
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monomials" | "x" => Ok(Self::Monomials),
            "bar" | "bar_monomials" => Ok(Self::BarMonomials),
            "sym" | "symmetric_monomials" | "m" => Ok(Self::SymmetricMonomials),
            "symbar" | "symmetric_bar" => Ok(Self::SymmetricBar),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

fn is_symmetric(f: &MPoly) -> bool {
    (1..f.n()).all(|i| apply_si(f, i).map(|g| &g == f).unwrap_or(false))
}

/// Coefficients of `f` in `basis`, keyed by index. Bar bases are solved by
/// peeling the leading term, since `x^{bar eta} = x^eta + lower degree`.
pub fn expansion_coeffs(f: &MPoly, basis: Basis, cache: &BarMonomialCache) -> Result<BTreeMap<Composition, RLaurent>> {
    let mut out = BTreeMap::new();
    let symmetric = matches!(basis, Basis::SymmetricMonomials | Basis::SymmetricBar);
    if symmetric && !is_symmetric(f) {
        return Err(Error::Invariant("symmetric basis requested for a non-symmetric polynomial".into()));
    }
    match basis {
        Basis::Monomials => {
            for (e, c) in f.terms() {
                out.insert(Composition::new(e.to_vec()), c.clone());
            }
        }
        Basis::SymmetricMonomials => {
            for (e, c) in f.terms() {
                let comp = Composition::new(e.to_vec());
                if comp.is_partition() {
                    out.insert(comp, c.clone());
                }
            }
        }
        Basis::BarMonomials | Basis::SymmetricBar => {
            let mut rest = f.clone();
            // each step removes the leading term and adds only lower-degree ones
            let budget = f.len().saturating_mul(1 << 20);
            let mut steps = 0usize;
            loop {
                let lead = rest.terms().next().map(|(e, c)| (e.to_vec(), c.clone()));
                let Some((e, c)) = lead else { break };
                steps += 1;
                if steps > budget {
                    return Err(Error::Invariant("basis reduction did not terminate".into()));
                }
                let comp = Composition::new(e);
                let elem = if symmetric {
                    let lambda = Partition::new(comp.clone())
                        .map_err(|_| Error::Invariant(format!("leading term {comp:?} of a symmetric polynomial")))?;
                    sym_barmon(&lambda, cache)
                } else {
                    (*cache.get(&comp)).clone()
                };
                rest -= &elem.scale(&c);
                out.insert(comp, c);
            }
        }
    }
    Ok(out)
}

/// [`expansion_coeffs`] for a polynomial with a common denominator.
pub fn expansion_coeffs_rat(
    f: &RatMPoly,
    basis: Basis,
    cache: &BarMonomialCache,
) -> Result<BTreeMap<Composition, RatFunc>> {
    expansion_coeffs(f.num(), basis, cache)?
        .into_iter()
        .map(|(k, c)| Ok((k, RatFunc::new(c, f.den().clone())?)))
        .collect()
}
