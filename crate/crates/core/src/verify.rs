//! Finite-range verification suites.
//!
//! Every audit walks its range in graded order (size ascending, then
//! lexicographically descending), fans out over compositions with rayon and
//! collects failures in range order, so reports are reproducible.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{to_text, MPoly, RLaurent, RatFunc};
use crate::games::{
    barmon_games, barmon_recursion, count_games, covers_p, enumerate_games, game_weight, trivial_weight,
    BarMonomialCache,
};
use crate::interp::{expansion_coeffs, Basis, JackContext};
use crate::operators::{apply_si, dehomogenize_xi, phi, phi_plus, sigma_minus, sigma_plus};
use crate::shapes::{
    compositions_up_to, critical_box, eta_star, neg_rho_point, partitions_up_to, rho_point, Composition, Partition,
};

/// Default limit on the number of games enumerated for one composition.
pub const DEFAULT_GUARD: u64 = 1_000_000;

/// A failed check with enough detail to rerun it in isolation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub index: String,
    pub witness: String,
}

/// The range is `|gamma| <= max_norm` in `n` variables. JSON round-trips
/// exactly; `elapsed` is stored as whole nanoseconds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub suite: String,
    pub max_norm: u32,
    pub n: usize,
    pub checked: u64,
    pub failures: Vec<Failure>,
    #[serde(rename = "elapsed_ns", with = "nanos")]
    pub elapsed: Duration,
}

mod nanos {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(u64::try_from(d.as_nanos()).unwrap_or(u64::MAX))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        u64::deserialize(d).map(Duration::from_nanos)
    }
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{status} {} (max_norm={}, n={}): {} checked, {} failures, {:.1} ms",
            self.suite,
            self.max_norm,
            self.n,
            self.checked,
            self.failures.len(),
            self.elapsed.as_secs_f64() * 1000.0
        );
        for f in &self.failures {
            let _ = writeln!(s, "  {}: {}", f.index, f.witness);
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// The audit suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    TheoremA,
    TheoremB,
    TheoremC,
    Vanishing,
    Cross,
    Lemma,
    Uniqueness,
    Structural,
    Intertwining,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Self::TheoremA,
        Self::TheoremB,
        Self::TheoremC,
        Self::Vanishing,
        Self::Cross,
        Self::Lemma,
        Self::Uniqueness,
        Self::Structural,
        Self::Intertwining,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::TheoremA => "theoremA",
            Self::TheoremB => "theoremB",
            Self::TheoremC => "theoremC",
            Self::Vanishing => "vanishing",
            Self::Cross => "cross",
            Self::Lemma => "lemma",
            Self::Uniqueness => "uniqueness",
            Self::Structural => "structural",
            Self::Intertwining => "intertwining",
        }
    }

    pub fn run(self, max_norm: u32, n: usize, guard: u64) -> AuditReport {
        match self {
            Self::TheoremA => audit_theorem_a(max_norm, n),
            Self::TheoremB => audit_theorem_b(max_norm, n),
            Self::TheoremC => audit_theorem_c(max_norm, n),
            Self::Vanishing => audit_vanishing(max_norm, n),
            Self::Cross => audit_cross_methods(max_norm, n, guard),
            Self::Lemma => audit_lemma_exceptions(max_norm, n),
            Self::Uniqueness => audit_uniqueness(max_norm, n),
            Self::Structural => audit_structural(max_norm, n),
            Self::Intertwining => audit_intertwining(max_norm, n),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Runs `check` on every item in parallel; each call returns how many checks
/// it made and its failures.
fn run_audit<T: Sync, F>(suite: &str, max_norm: u32, n: usize, items: &[T], check: F) -> AuditReport
where
    F: Fn(&T) -> (u64, Vec<Failure>) + Sync,
{
    let start = Instant::now();
    let results: Vec<(u64, Vec<Failure>)> = items.par_iter().map(&check).collect();
    let checked = results.iter().map(|r| r.0).sum();
    let failures = results.into_iter().flat_map(|r| r.1).collect();
    AuditReport {
        suite: suite.to_string(),
        max_norm,
        n,
        checked,
        failures,
        elapsed: start.elapsed(),
    }
}

fn fail(index: impl std::fmt::Display, witness: impl Into<String>) -> Failure {
    Failure {
        index: index.to_string(),
        witness: witness.into(),
    }
}

/// Whether `c` lies in `N[r]` with `r`-degree at most `max_deg`.
pub fn is_nat_poly_bounded(c: &RLaurent, max_deg: i64) -> bool {
    c.is_polynomial() && c.has_nonneg_integer_coeffs() && c.max_exp().is_none_or(|e| e as i64 <= max_deg)
}

/// The `alpha`-positivity window: `c * r^{shift}` has only nonpositive
/// `r`-exponents and nonnegative integer coefficients, i.e. is in `N[alpha]`.
pub fn is_nat_alpha_window(c: &RLaurent, shift: i32) -> bool {
    let s = c.shift(shift);
    s.has_nonneg_integer_coeffs() && s.max_exp().is_none_or(|e| e <= 0)
}

/// Bar positivity: every `c_{eta,gamma}(r)` is in `N[r]` of degree `<= |eta| - |gamma|`.
pub fn audit_theorem_c(max_norm: u32, n: usize) -> AuditReport {
    let cache = BarMonomialCache::new(n);
    let items = compositions_up_to(max_norm, n);
    run_audit("theoremC", max_norm, n, &items, |eta| {
        let f = cache.get(eta);
        let mut out = Vec::new();
        let mut checked = 0;
        for (g, c) in f.terms() {
            checked += 1;
            let gamma = Composition::new(g.to_vec());
            let bound = eta.size() as i64 - gamma.size() as i64;
            if !is_nat_poly_bounded(c, bound) {
                out.push(fail(format!("{eta:?}"), format!("c[{gamma:?}] = {c} (degree bound {bound})")));
            }
        }
        (checked, out)
    })
}

/// Bar monomials: `x^eta` plus lower-degree terms, vanishing at `-bar gamma`
/// for `|gamma| < |eta|`.
pub fn audit_vanishing(max_norm: u32, n: usize) -> AuditReport {
    let cache = BarMonomialCache::new(n);
    let items = compositions_up_to(max_norm, n);
    let points: Vec<(Composition, Vec<RLaurent>)> = items.iter().map(|g| (g.clone(), neg_rho_point(g))).collect();
    run_audit("vanishing", max_norm, n, &items, |eta| {
        let f = cache.get(eta);
        let mut out = Vec::new();
        let mut checked = 1;
        let top = f.homogeneous_part(eta.size());
        if top != MPoly::monomial(n, eta, RLaurent::one()) {
            out.push(fail(format!("{eta:?}"), format!("top-degree part is {top}")));
        }
        for (gamma, pt) in points.iter().take_while(|(g, _)| g.size() < eta.size()) {
            checked += 1;
            match f.eval(pt) {
                Ok(v) if v.is_zero() => {}
                Ok(v) => out.push(fail(format!("{eta:?}"), format!("value {v} at -bar{gamma:?}"))),
                Err(e) => out.push(fail(format!("{eta:?}"), e.to_string())),
            }
        }
        (checked, out)
    })
}

/// Games, transition formula and operator recursion agree. Game sums are
/// skipped for shapes with more than `guard` games.
pub fn audit_cross_methods(max_norm: u32, n: usize, guard: u64) -> AuditReport {
    let cache = BarMonomialCache::new(n);
    let items = compositions_up_to(max_norm, n);
    run_audit("cross", max_norm, n, &items, |eta| {
        let t = cache.get(eta);
        let rec = barmon_recursion(eta);
        let mut out = Vec::new();
        let mut checked = 1;
        if rec != *t {
            out.push(fail(format!("{eta:?}"), format!("transition {t} != recursion {rec}")));
        }
        if count_games(eta) <= guard.into() {
            checked += 1;
            let g = barmon_games(eta);
            if g != *t {
                out.push(fail(format!("{eta:?}"), format!("games {g} != transition {t}")));
            }
        }
        (checked, out)
    })
}

fn a_poly(eta: &Composition, cache: &BarMonomialCache) -> MPoly {
    let mut acc = MPoly::zero(eta.n());
    for g in covers_p(eta).expect("nonzero") {
        acc += &*cache.get(&g);
    }
    acc
}

fn b_poly(eta: &Composition, cache: &BarMonomialCache) -> MPoly {
    &trivial_weight(eta).expect("nonzero") * &*cache.get(&eta_star(eta).expect("nonzero"))
}

/// Checks the `A`, `B`, `C` recursions at one composition; returns the
/// number of checks made.
fn lemma_checks(eta: &Composition, cache: &BarMonomialCache, out: &mut Vec<Failure>) -> u64 {
    let n = eta.n();
    let r = RLaurent::r();
    let (a, b) = (a_poly(eta, cache), b_poly(eta, cache));
    let c = &b + &a.scale(&r);
    let mut checked = 0;
    let phi_eta = eta.phi();
    checked += 1;
    if phi_plus(&a) != a_poly(&phi_eta, cache) || phi_plus(&b) != b_poly(&phi_eta, cache) {
        out.push(fail(format!("{eta:?}"), "Phi+ does not carry A/B to Phi eta"));
    }
    let k = critical_box(eta).expect("nonzero").k;
    for i in 1..n {
        let (ei, ej) = (eta.part(i), eta.part(i + 1));
        if ei == ej {
            continue;
        }
        checked += 1;
        let s = eta.s(i);
        let (as_, bs) = (a_poly(&s, cache), b_poly(&s, cache));
        let cs = &bs + &as_.scale(&r);
        if sigma_plus(&c, i).expect("index") != cs {
            out.push(fail(format!("{eta:?} i={i}"), "sigma+ C_eta != C_{s_i eta}"));
        }
        if ei < ej {
            continue;
        }
        let da = sigma_plus(&a, i).expect("index") - as_;
        let db = sigma_plus(&b, i).expect("index") - bs;
        let star = (*cache.get(&eta_star(eta).expect("nonzero"))).clone();
        let (want_a, want_b) = if i == k && ei - 1 > ej {
            (star.clone(), -star.scale(&r))
        } else {
            (MPoly::zero(n), MPoly::zero(n))
        };
        if da != want_a || db != want_b {
            out.push(fail(
                format!("{eta:?} i={i}"),
                format!("sigma+ A - A_s = {da}, sigma+ B - B_s = {db}"),
            ));
        }
    }
    checked
}

/// Transformation rules for `A_eta`, `B_eta`, `C_eta = B_eta + r A_eta`.
pub fn audit_lemma_exceptions(max_norm: u32, n: usize) -> AuditReport {
    let cache = BarMonomialCache::new(n);
    let items: Vec<Composition> = compositions_up_to(max_norm, n).into_iter().filter(|e| !e.is_zero()).collect();
    run_audit("lemma", max_norm, n, &items, |eta| {
        let mut out = Vec::new();
        let checked = lemma_checks(eta, &cache, &mut out);
        (checked, out)
    })
}

/// Nonsymmetric alpha-positivity: coefficients of `x^gamma` in `F^{r delta}_eta` lie in
/// `alpha^{|eta| - |gamma|} N[alpha]`.
pub fn audit_theorem_b(max_norm: u32, n: usize) -> AuditReport {
    let ctx = JackContext::new(n);
    let items = compositions_up_to(max_norm, n);
    run_audit("theoremB", max_norm, n, &items, |eta| {
        let mut out = Vec::new();
        let f = match ctx.f_rdelta(eta) {
            Ok(f) => f,
            Err(e) => return (1, vec![fail(format!("{eta:?}"), e.to_string())]),
        };
        let mut checked = 0;
        for (g, c) in f.terms() {
            checked += 1;
            let shift = g.iter().sum::<u32>() as i32 - eta.size() as i32;
            if !is_nat_alpha_window(c, shift) {
                out.push(fail(format!("{eta:?}"), format!("b[{g:?}] = {c}")));
            }
        }
        (checked, out)
    })
}

/// Symmetric alpha-positivity: `m_mu` coefficients of `J^{r delta}_lambda` lie in
/// `alpha^{|lambda| - |mu|} N[alpha]`.
pub fn audit_theorem_a(max_norm: u32, n: usize) -> AuditReport {
    let ctx = JackContext::new(n);
    let items = partitions_up_to(max_norm, n);
    run_audit("theoremA", max_norm, n, &items, |lambda| {
        let mut out = Vec::new();
        let coeffs = ctx
            .j_rdelta(lambda)
            .and_then(|j| expansion_coeffs(&j, Basis::SymmetricMonomials, ctx.barmons()));
        let coeffs = match coeffs {
            Ok(c) => c,
            Err(e) => return (1, vec![fail(format!("{lambda:?}"), e.to_string())]),
        };
        let mut checked = 0;
        for (mu, c) in &coeffs {
            checked += 1;
            let shift = mu.size() as i32 - lambda.size() as i32;
            if !is_nat_alpha_window(c, shift) {
                out.push(fail(format!("{lambda:?}"), format!("a[{mu:?}] = {c}")));
            }
        }
        (checked, out)
    })
}

/// `E^{r delta}_eta` is monic in `x^eta`, of degree `|eta|`, has top part
/// `E^(alpha)_eta`, and vanishes at `bar gamma` for `|gamma| <= |eta|`,
/// `gamma != eta`.
pub fn audit_uniqueness(max_norm: u32, n: usize) -> AuditReport {
    let ctx = JackContext::new(n);
    let items = compositions_up_to(max_norm, n);
    let points: Vec<(Composition, Vec<RLaurent>)> = items.iter().map(|g| (g.clone(), rho_point(g))).collect();
    run_audit("uniqueness", max_norm, n, &items, |eta| {
        let id = format!("{eta:?}");
        let (e, ea) = match (ctx.e_rdelta(eta), ctx.e_alpha(eta)) {
            (Ok(e), Ok(a)) => (e, a),
            (Err(x), _) | (_, Err(x)) => return (1, vec![fail(id, x.to_string())]),
        };
        let mut out = Vec::new();
        let mut checked = 2;
        if e.coeff(eta) != RatFunc::from_laurent(RLaurent::one()) || e.total_degree() != Some(eta.size()) {
            out.push(fail(&id, format!("not monic of degree |eta|: {e}")));
        }
        let top = e.num().homogeneous_part(eta.size());
        if top.scale(ea.den()) != ea.num().scale(e.den()) {
            out.push(fail(&id, "top-degree part differs from E^(alpha)"));
        }
        for (gamma, pt) in points.iter().take_while(|(g, _)| g.size() <= eta.size()) {
            if gamma == eta {
                continue;
            }
            checked += 1;
            match e.eval(pt) {
                Ok(v) if v.is_zero() => {}
                Ok(v) => out.push(fail(&id, format!("value {v} at bar{gamma:?}"))),
                Err(x) => out.push(fail(&id, x.to_string())),
            }
        }
        (checked, out)
    })
}

fn sorted(v: Vec<Composition>) -> BTreeSet<Composition> {
    v.into_iter().collect()
}

/// Combinatorial equivariance of the critical box, critical leg, `eta*` and
/// `P[eta]`, plus `(sigma_i^±)^2 = 1` on bar monomials.
pub fn audit_structural(max_norm: u32, n: usize) -> AuditReport {
    let cache = BarMonomialCache::new(n);
    let items: Vec<Composition> = compositions_up_to(max_norm, n).into_iter().filter(|e| !e.is_zero()).collect();
    run_audit("structural", max_norm, n, &items, |eta| {
        let mut out = Vec::new();
        let mut checked = 0u64;
        let id = format!("{eta:?}");
        let cb = critical_box(eta).expect("nonzero");
        let star = eta_star(eta).expect("nonzero");
        let p = sorted(covers_p(eta).expect("nonzero"));

        let pe = eta.phi();
        let cbp = critical_box(&pe).expect("nonzero");
        checked += 4;
        let want = if cb.k > 1 { (cb.k - 1, cb.m) } else { (n, cb.m + 1) };
        if (cbp.k, cbp.m) != want {
            out.push(fail(&id, format!("critical box of Phi eta is {cbp:?}")));
        }
        if cbp.l != cb.l {
            out.push(fail(&id, "l[Phi eta] != l[eta]"));
        }
        if eta_star(&pe).expect("nonzero") != star.phi() {
            out.push(fail(&id, "(Phi eta)* != Phi(eta*)"));
        }
        if sorted(covers_p(&pe).expect("nonzero")) != p.iter().map(Composition::phi).collect() {
            out.push(fail(&id, "P[Phi eta] != Phi(P[eta])"));
        }

        for i in 1..n {
            let (ei, ej) = (eta.part(i), eta.part(i + 1));
            if ei == ej {
                continue;
            }
            checked += 4;
            let se = eta.s(i);
            let cbs = critical_box(&se).expect("nonzero");
            let si_k = if cb.k == i {
                i + 1
            } else if cb.k == i + 1 {
                i
            } else {
                cb.k
            };
            if (cbs.k, cbs.m) != (si_k, cb.m) {
                out.push(fail(format!("{id} i={i}"), format!("critical box of s_i eta is {cbs:?}")));
            }
            let want_l = if cb.k == i && ej + 1 == ei {
                cb.l + 1
            } else if cb.k == i + 1 && ei + 1 == ej {
                cb.l - 1
            } else {
                cb.l
            };
            if cbs.l != want_l {
                out.push(fail(format!("{id} i={i}"), format!("l[s_i eta] = {}, expected {want_l}", cbs.l)));
            }
            if eta_star(&se).expect("nonzero") != star.s(i) {
                out.push(fail(format!("{id} i={i}"), "(s_i eta)* != s_i(eta*)"));
            }
            let mut want_p: BTreeSet<Composition> = p.iter().map(|g| g.s(i)).collect();
            let diff = ej as i64 - ei as i64;
            if i + 1 == cb.k && diff > 1 {
                want_p.insert(star.clone());
            } else if i == cb.k && diff < -1 {
                want_p.remove(&star);
            }
            if sorted(covers_p(&se).expect("nonzero")) != want_p {
                out.push(fail(format!("{id} i={i}"), "P[s_i eta] differs from the equivariance table"));
            }
        }

        let f = cache.get(eta);
        for i in 1..n {
            checked += 1;
            let twice_plus = sigma_plus(&sigma_plus(&f, i).expect("index"), i).expect("index");
            let twice_minus = sigma_minus(&sigma_minus(&f, i).expect("index"), i).expect("index");
            if twice_plus != *f || twice_minus != *f {
                out.push(fail(format!("{id} i={i}"), "(sigma_i^±)^2 != 1 on x^{bar eta}"));
            }
        }
        (checked, out)
    })
}

/// `Xi Phi = Phi^+ Xi` and `Xi s_i = sigma_i^+ Xi` on monomials, and `Xi`
/// preserves symmetry on every `m_lambda`.
pub fn audit_intertwining(max_norm: u32, n: usize) -> AuditReport {
    let cache = BarMonomialCache::new(n);
    let items = compositions_up_to(max_norm, n);
    run_audit("intertwining", max_norm, n, &items, |eta| {
        let id = format!("{eta:?}");
        let mut out = Vec::new();
        let mut checked = 1;
        let x = MPoly::monomial(n, eta, RLaurent::one());
        let xi = |f: &MPoly| dehomogenize_xi(f, &cache).expect("dimension");
        let xf = xi(&x);
        if xi(&phi(&x)) != phi_plus(&xf) {
            out.push(fail(&id, "Xi Phi != Phi+ Xi"));
        }
        for i in 1..n {
            checked += 1;
            if xi(&apply_si(&x, i).expect("index")) != sigma_plus(&xf, i).expect("index") {
                out.push(fail(format!("{id} i={i}"), "Xi s_i != sigma_i^+ Xi"));
            }
        }
        if eta.is_partition() {
            checked += 1;
            let lambda = Partition::new(eta.clone()).expect("partition");
            let m = crate::shapes::rearrangements(&lambda)
                .iter()
                .fold(MPoly::zero(n), |acc, g| acc + MPoly::monomial(n, g, RLaurent::one()));
            let xm = xi(&m);
            if (1..n).any(|i| apply_si(&xm, i).expect("index") != xm) {
                out.push(fail(&id, "Xi(m_lambda) is not symmetric"));
            }
        }
        (checked, out)
    })
}

/// Weight of each game on `eta` evaluated at `point`, in enumeration order.
pub fn per_game_contributions(eta: &Composition, point: &[RLaurent], guard: u64) -> Result<Vec<(usize, RLaurent)>> {
    if count_games(eta) > guard.into() {
        return Err(Error::GuardExceeded(guard));
    }
    enumerate_games(eta)
        .enumerate()
        .map(|(i, g)| Ok((i, game_weight(&g).eval(point)?)))
        .collect()
}

/// One line per game: id, shapes, weight and value.
pub fn contributions_text(eta: &Composition, point: &[RLaurent], guard: u64) -> Result<String> {
    let vals = per_game_contributions(eta, point, guard)?;
    let mut s = String::new();
    for ((i, v), g) in vals.iter().zip(enumerate_games(eta)) {
        let shapes: Vec<String> = g.shapes().iter().map(|c| format!("({c})")).collect();
        let _ = writeln!(s, "{i}: {} weight {} -> {v}", shapes.join(" > "), to_text(&game_weight(&g)));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_audits_pass() {
        for suite in Suite::ALL {
            let rep = suite.run(3, 2, DEFAULT_GUARD);
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn vacuous_range() {
        let rep = audit_theorem_c(0, 2);
        assert!(rep.passed());
        assert_eq!(rep.checked, 1);
    }

    #[test]
    fn windows() {
        assert!(is_nat_poly_bounded(&RLaurent::linear(0, 1), 1));
        assert!(!is_nat_poly_bounded(&RLaurent::linear(0, 1), 0));
        assert!(!is_nat_poly_bounded(&RLaurent::r_pow(-1), 3));
        assert!(is_nat_alpha_window(&RLaurent::linear(2, 2).shift(-1), 0));
        assert!(!is_nat_alpha_window(&RLaurent::linear(1, -1), 0));
    }

    #[test]
    fn contributions_30() {
        let point = vec![RLaurent::linear(-1, -1), RLaurent::from_int(-1)];
        let c = per_game_contributions(&"3,0".parse().unwrap(), &point, DEFAULT_GUARD).unwrap();
        let sum: RLaurent = c.iter().map(|x| x.1.clone()).sum();
        assert!(sum.is_zero());
        assert_eq!(c.len(), 4);
        assert!(per_game_contributions(&"3,0".parse().unwrap(), &point, 3).is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
