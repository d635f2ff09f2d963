//! Glissades, the bar order, bar games and three routes to bar monomials.
//!
//! A glissade on `eta` deletes the critical box `(k, m)` and optionally slides
//! `l >= 1` further boxes from row `k` to row `j`. Row `j` must lie above `k`
//! with `eta_k - eta_j - l - 1 > 0`, or below with that quantity `>= 0`.
//! A bar game is a chain of `|eta|` glissades ending at `0`; the bar monomial
//! is the sum of game weights.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{to_text, MPoly, RLaurent};
use crate::operators::{phi_plus, recursion_path, sigma_plus, PathStep};
use crate::shapes::{compositions_up_to, critical_box, rearrangements, Composition, Partition};

/// One covering step `source ⋗ target` of the bar order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlissadeMove {
    pub source: Composition,
    pub target: Composition,
    pub k: usize,
    pub m: u32,
    /// Boxes slid out of row `k` besides the deleted one.
    pub l: u32,
    /// Destination row; `None` for the trivial move.
    pub j: Option<usize>,
    pub weight: MPoly,
}

impl GlissadeMove {
    pub fn is_trivial(&self) -> bool {
        self.l == 0
    }
}

impl Serialize for GlissadeMove {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GlissadeMove", 7)?;
        st.serialize_field("from", &self.source)?;
        st.serialize_field("to", &self.target)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("j", &self.j)?;
        st.serialize_field("weight", &to_text(&self.weight))?;
        st.end()
    }
}

/// `w_eta = x_k + (m - 1) + r(n - 1 - l[eta])`.
pub fn trivial_weight(eta: &Composition) -> Result<MPoly> {
    let cb = critical_box(eta)?;
    let n = eta.n();
    let c = RLaurent::linear(cb.m as i64 - 1, n as i64 - 1 - cb.l as i64);
    Ok(MPoly::var(n, cb.k) + MPoly::constant(n, c))
}

/// All glissades on `eta`: the trivial move first, then `(j, l)` ascending.
pub fn glissades(eta: &Composition) -> Result<Vec<GlissadeMove>> {
    let cb = critical_box(eta)?;
    let n = eta.n();
    let (k, ek) = (cb.k, cb.m);
    let mut out = vec![GlissadeMove {
        source: eta.clone(),
        target: eta.with_part(k, ek - 1),
        k,
        m: cb.m,
        l: 0,
        j: None,
        weight: trivial_weight(eta)?,
    }];
    let r = MPoly::constant(n, RLaurent::r());
    for j in (1..=n).filter(|&j| j != k) {
        let ej = eta.part(j);
        // largest l with eps = ek - ej - l - 1 above the threshold
        let strict = u32::from(j < k);
        let Some(max_l) = ek.checked_sub(ej + 1 + strict) else {
            continue;
        };
        for l in 1..=max_l {
            out.push(GlissadeMove {
                source: eta.clone(),
                target: eta.with_part(k, ek - 1 - l).with_part(j, ej + l),
                k,
                m: cb.m,
                l,
                j: Some(j),
                weight: r.clone(),
            });
        }
    }
    Ok(out)
}

/// `P[eta]`: targets of the nontrivial glissades.
pub fn covers_p(eta: &Composition) -> Result<Vec<Composition>> {
    Ok(glissades(eta)?.into_iter().skip(1).map(|g| g.target).collect())
}

/// A maximal chain of glissades from `eta` down to `0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BarGame {
    #[serde(skip)]
    n: usize,
    moves: Vec<GlissadeMove>,
}

impl BarGame {
    pub fn new(n: usize, moves: Vec<GlissadeMove>) -> Result<Self> {
        for w in moves.windows(2) {
            if w[0].target != w[1].source {
                return Err(Error::Invariant(format!("moves do not chain at {:?}", w[0].target)));
            }
        }
        if let Some(last) = moves.last() {
            if !last.target.is_zero() {
                return Err(Error::Invariant(format!("game ends at {:?}", last.target)));
            }
        }
        Ok(Self { n, moves })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn moves(&self) -> &[GlissadeMove] {
        &self.moves
    }

    /// The shapes `eta = eta^(0), ..., eta^(d) = 0`.
    pub fn shapes(&self) -> Vec<Composition> {
        let mut out: Vec<Composition> = self.moves.iter().map(|m| m.source.clone()).collect();
        out.push(Composition::zeros(self.n));
        out
    }

    /// Whether every move is trivial (the distinguished game).
    pub fn is_distinguished(&self) -> bool {
        self.moves.iter().all(GlissadeMove::is_trivial)
    }
}

pub fn game_weight(game: &BarGame) -> MPoly {
    game.moves
        .iter()
        .fold(MPoly::one(game.n), |acc, m| &acc * &m.weight)
}

/// Depth-first stream of the games on a composition, children in
/// [`glissades`] order. The first game is the all-trivial one.
pub struct GameIter {
    n: usize,
    stack: Vec<(Vec<GlissadeMove>, usize)>,
    path: Vec<GlissadeMove>,
    pending_empty: bool,
}

impl Iterator for GameIter {
    type Item = BarGame;

    fn next(&mut self) -> Option<BarGame> {
        if self.pending_empty {
            self.pending_empty = false;
            return Some(BarGame {
                n: self.n,
                moves: Vec::new(),
            });
        }
        loop {
            let (moves, next) = self.stack.last_mut()?;
            if *next >= moves.len() {
                self.stack.pop();
                self.path.pop();
                continue;
            }
            let mv = moves[*next].clone();
            *next += 1;
            let target = mv.target.clone();
            self.path.push(mv);
            if target.is_zero() {
                let game = BarGame {
                    n: self.n,
                    moves: self.path.clone(),
                };
                self.path.pop();
                return Some(game);
            }
            let children = glissades(&target).expect("nonzero target");
            self.stack.push((children, 0));
        }
    }
}

pub fn enumerate_games(eta: &Composition) -> GameIter {
    let zero = eta.is_zero();
    GameIter {
        n: eta.n(),
        stack: if zero {
            Vec::new()
        } else {
            vec![(glissades(eta).expect("nonzero"), 0)]
        },
        path: Vec::new(),
        pending_empty: zero,
    }
}

/// `|G(eta)|`, by dynamic programming over the bar order.
pub fn count_games(eta: &Composition) -> BigUint {
    fn rec(eta: &Composition, memo: &mut HashMap<Composition, BigUint>) -> BigUint {
        if eta.is_zero() {
            return BigUint::one();
        }
        if let Some(c) = memo.get(eta) {
            return c.clone();
        }
        let mut total = BigUint::zero();
        for g in glissades(eta).expect("nonzero") {
            total += rec(&g.target, memo);
        }
        memo.insert(eta.clone(), total.clone());
        total
    }
    rec(eta, &mut HashMap::new())
}

/// Fails with [`Error::GuardExceeded`] when `eta` has more than `guard` games.
pub fn check_guard(eta: &Composition, guard: u64) -> Result<()> {
    if count_games(eta) > BigUint::from(guard) {
        return Err(Error::GuardExceeded(guard));
    }
    Ok(())
}

/// `sum_G w(G)`, enumerating every game.
pub fn barmon_games(eta: &Composition) -> MPoly {
    let mut acc = MPoly::zero(eta.n());
    for g in enumerate_games(eta) {
        acc += &game_weight(&g);
    }
    acc
}

/// [`barmon_games`], refusing shapes with more than `guard` games.
pub fn barmon_games_guarded(eta: &Composition, guard: u64) -> Result<MPoly> {
    check_guard(eta, guard)?;
    Ok(barmon_games(eta))
}

/// Memo of bar monomials for one ambient `n`, filled through the transition
/// formula. Lookups and inserts are atomic; racing threads may compute the
/// same entry twice, and either result is kept.
#[derive(Debug)]
pub struct BarMonomialCache {
    n: usize,
    map: RwLock<HashMap<Composition, Arc<MPoly>>>,
}

impl BarMonomialCache {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `x^{bar eta}`. Panics if `eta` has the wrong length.
    pub fn get(&self, eta: &Composition) -> Arc<MPoly> {
        assert_eq!(eta.n(), self.n, "composition length differs from cache dimension");
        if let Some(v) = self.map.read().expect("cache lock").get(eta) {
            return Arc::clone(v);
        }
        let value = Arc::new(self.compute(eta));
        let mut w = self.map.write().expect("cache lock");
        Arc::clone(w.entry(eta.clone()).or_insert(value))
    }

    /// `x^{bar eta} = w_eta x^{bar eta*} + r sum_{P[eta]} x^{bar gamma}`.
    fn compute(&self, eta: &Composition) -> MPoly {
        if eta.is_zero() {
            return MPoly::one(self.n);
        }
        let moves = glissades(eta).expect("nonzero");
        let mut rest = MPoly::zero(self.n);
        for g in &moves[1..] {
            rest += &*self.get(&g.target);
        }
        let trivial = &moves[0];
        &trivial.weight * &*self.get(&trivial.target) + rest.scale(&RLaurent::r())
    }
}

/// Bar monomial via the memoized transition formula.
pub fn barmon_transition(eta: &Composition, cache: &BarMonomialCache) -> MPoly {
    (*cache.get(eta)).clone()
}

/// Bar monomial via `Phi^+` and `sigma_i^+` applied to `1` along
/// [`recursion_path`].
pub fn barmon_recursion(eta: &Composition) -> MPoly {
    let mut f = MPoly::one(eta.n());
    for (step, _) in recursion_path(eta) {
        f = match step {
            PathStep::Cyclic => phi_plus(&f),
            PathStep::Swap(i) => sigma_plus(&f, i).expect("index in range"),
        };
    }
    f
}

/// `m_{bar lambda}`: the sum of bar monomials over rearrangements of `lambda`.
pub fn sym_barmon(lambda: &Partition, cache: &BarMonomialCache) -> MPoly {
    let mut acc = MPoly::zero(lambda.n());
    for eta in rearrangements(lambda) {
        acc += &*cache.get(&eta);
    }
    acc
}

/// Searches for a game on `eta` whose move weights are exactly the multiset
/// `factors`, so a product display can be matched to a concrete game.
pub fn find_game_with_weights(eta: &Composition, factors: &[MPoly]) -> Option<BarGame> {
    fn rec(
        eta: &Composition,
        pool: &mut BTreeMap<String, (MPoly, usize)>,
        path: &mut Vec<GlissadeMove>,
    ) -> bool {
        if eta.is_zero() {
            return pool.values().all(|(_, c)| *c == 0);
        }
        for mv in glissades(eta).expect("nonzero") {
            let key = to_text(&mv.weight);
            let Some(slot) = pool.get_mut(&key).filter(|s| s.1 > 0) else {
                continue;
            };
            slot.1 -= 1;
            let target = mv.target.clone();
            path.push(mv);
            if rec(&target, pool, path) {
                return true;
            }
            path.pop();
            pool.get_mut(&key).unwrap().1 += 1;
        }
        false
    }
    if factors.len() != eta.size() as usize {
        return None;
    }
    let mut pool: BTreeMap<String, (MPoly, usize)> = BTreeMap::new();
    for f in factors {
        pool.entry(to_text(f)).or_insert_with(|| (f.clone(), 0)).1 += 1;
    }
    let mut path = Vec::new();
    rec(eta, &mut pool, &mut path).then(|| BarGame { n: eta.n(), moves: path })
}

/// The bar order restricted to `|gamma| <= max_norm`; edges are coverings.
#[derive(Clone, Debug, Serialize)]
pub struct BarOrderDag {
    pub nodes: Vec<Composition>,
    /// `(from, to)` indices into `nodes`, with `from ⋗ to`.
    pub edges: Vec<(usize, usize)>,
}

impl BarOrderDag {
    pub fn rank(&self, node: usize) -> u32 {
        self.nodes[node].size()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph bar_order {\n  rankdir=TB;\n");
        for (i, c) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"({c})\", rank={}];", c.size());
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

pub fn bar_order_dag(max_norm: u32, n: usize) -> BarOrderDag {
    let nodes = compositions_up_to(max_norm, n);
    let index: HashMap<&Composition, usize> = nodes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut edges = Vec::new();
    for (a, c) in nodes.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let mut targets: Vec<usize> = glissades(c)
            .expect("nonzero")
            .iter()
            .map(|g| index[&g.target])
            .collect();
        targets.sort_unstable();
        targets.dedup();
        edges.extend(targets.into_iter().map(|b| (a, b)));
    }
    BarOrderDag { nodes, edges }
}

/// DOT rendering of the game tree of `eta`, refusing more than `guard` games.
pub fn game_tree_dot(eta: &Composition, guard: u64) -> Result<String> {
    check_guard(eta, guard)?;
    fn rec(c: &Composition, id: &mut usize, out: &mut String) -> usize {
        let me = *id;
        *id += 1;
        let _ = writeln!(out, "  n{me} [label=\"({c})\"];");
        if !c.is_zero() {
            for g in glissades(c).expect("nonzero") {
                let child = rec(&g.target, id, out);
                let _ = writeln!(out, "  n{me} -> n{child} [label=\"{}\"];", to_text(&g.weight));
            }
        }
        me
    }
    let mut out = String::from("digraph games {\n");
    rec(eta, &mut 0, &mut out);
    out.push_str("}\n");
    Ok(out)
}
