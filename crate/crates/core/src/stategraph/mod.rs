//! Exact extremal densities from finite window-state digraphs.
//!
//! A periodic pattern is cut into windows; a state is what a window holds
//! and arcs join windows that may follow one another. Bi-infinite walks are
//! exactly the valid patterns, the density of a pattern is the mean state
//! weight along its walk, and the extremum over all walks is attained by a
//! simple cycle. So the best density is a maximum (or minimum) mean cycle,
//! and that cycle decodes to a periodic witness.
//!
//! Two transition modes are offered:
//!
//! * [`Transition::Block`] — consecutive disjoint windows of length `ℓ`
//!   (`ℓ = s`, `2s`, `6s` for independence, domination and identifying
//!   codes), arcs tested pairwise;
//! * [`Transition::Sliding`] — windows advance one position at a time, so
//!   each state has at most two successors (`k` for colorings). The window
//!   is `s`, `2s` and `4s` respectively. This is the default for the density
//!   computations; its graphs have the same admissible windows but far fewer
//!   arcs, which is what makes `max(S)` around 20 tractable.
//!
//! Both modes store the weight `|T|` and report `Σ|T| / (ℓ · cycle length)`.

mod build;
mod check;
mod karp;

use alloc::vec;
use alloc::vec::Vec;

pub use check::{is_dominating, is_identifying_code, is_proper_coloring};

use crate::{normalize, power_distance_set, BlockList, DistanceSet, Error, Rational};
use karp::Csr;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ProblemKind {
    Independence,
    Domination,
    /// 1-identifying codes; radius `r` is handled by building on the power
    /// set (see [`min_identifying_density`]).
    IdentifyingCode,
    /// Proper colorings with the given number of colors.
    Coloring(u32),
}

impl ProblemKind {
    /// Window length `ℓ` for `s = max(S)`. The block lengths follow the
    /// classical constructions; sliding windows are shorter for the two
    /// covering kinds because only the newest position must be settled.
    pub fn window(self, s: u32) -> u32 {
        self.window_for(s, Transition::Sliding)
    }

    pub fn window_for(self, s: u32, t: Transition) -> u32 {
        match (self, t) {
            (ProblemKind::Independence | ProblemKind::Coloring(_), _) => s,
            (ProblemKind::Domination, _) => 2 * s,
            (ProblemKind::IdentifyingCode, Transition::Sliding) => 4 * s,
            (ProblemKind::IdentifyingCode, Transition::Block) => 6 * s,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Default)]
pub enum Transition {
    Block,
    #[default]
    Sliding,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Max,
    Min,
}

/// Size limits for state-graph construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StateLimits {
    /// Admissible states before pruning.
    pub max_states: usize,
    pub max_arcs: usize,
}

impl StateLimits {
    /// Mean-cycle search is quadratic in the number of states.
    pub const MEAN_CYCLE_STATES: usize = 1 << 15;
    /// Colorings only need some cycle, which is linear.
    pub const COLORING_STATES: usize = 1 << 20;

    pub fn for_kind(kind: ProblemKind) -> Self {
        match kind {
            ProblemKind::Coloring(_) => StateLimits { max_states: Self::COLORING_STATES, max_arcs: 1 << 25 },
            _ => StateLimits::default(),
        }
    }
}

impl Default for StateLimits {
    fn default() -> Self {
        StateLimits { max_states: Self::MEAN_CYCLE_STATES, max_arcs: 1 << 25 }
    }
}

/// Pruned window-state digraph. Every state has an incoming and an outgoing
/// arc. States are sorted by code, so indices follow bitmask order.
#[derive(Clone, Debug)]
pub struct StateGraph {
    kind: ProblemKind,
    transition: Transition,
    set: DistanceSet,
    window: u32,
    states: Vec<u64>,
    weights: Vec<u32>,
    succ_start: Vec<u32>,
    succ: Vec<u32>,
    pred_start: Vec<u32>,
    pred: Vec<u32>,
}

fn to_csr(n: usize, arcs: &[(u32, u32)], reverse: bool) -> (Vec<u32>, Vec<u32>) {
    let mut start = vec![0u32; n + 1];
    for &(a, b) in arcs {
        start[if reverse { b } else { a } as usize + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut adj = vec![0u32; arcs.len()];
    for &(a, b) in arcs {
        let (x, y) = if reverse { (b, a) } else { (a, b) };
        adj[fill[x as usize] as usize] = y;
        fill[x as usize] += 1;
    }
    for v in 0..n {
        adj[start[v] as usize..start[v + 1] as usize].sort_unstable();
    }
    (start, adj)
}

impl StateGraph {
    /// Build from raw arcs, pruning states that cannot lie on a bi-infinite
    /// walk.
    pub(crate) fn from_arcs(
        kind: ProblemKind,
        transition: Transition,
        set: DistanceSet,
        window: u32,
        states: Vec<u64>,
        weights: Vec<u32>,
        arcs: Vec<(u32, u32)>,
    ) -> Self {
        let n = states.len();
        let mut outdeg = vec![0u32; n];
        let mut indeg = vec![0u32; n];
        for &(a, b) in &arcs {
            outdeg[a as usize] += 1;
            indeg[b as usize] += 1;
        }
        let (ss, sa) = to_csr(n, &arcs, false);
        let (ps, pa) = to_csr(n, &arcs, true);
        let mut alive = vec![true; n];
        let mut queue: Vec<usize> = (0..n).filter(|&v| outdeg[v] == 0 || indeg[v] == 0).collect();
        for &v in &queue {
            alive[v] = false;
        }
        while let Some(v) = queue.pop() {
            for &u in &pa[ps[v] as usize..ps[v + 1] as usize] {
                let u = u as usize;
                outdeg[u] -= 1;
                if alive[u] && outdeg[u] == 0 {
                    alive[u] = false;
                    queue.push(u);
                }
            }
            for &u in &sa[ss[v] as usize..ss[v + 1] as usize] {
                let u = u as usize;
                indeg[u] -= 1;
                if alive[u] && indeg[u] == 0 {
                    alive[u] = false;
                    queue.push(u);
                }
            }
        }
        let mut index = vec![u32::MAX; n];
        let mut kept_states = Vec::new();
        let mut kept_weights = Vec::new();
        for v in 0..n {
            if alive[v] {
                index[v] = kept_states.len() as u32;
                kept_states.push(states[v]);
                kept_weights.push(weights[v]);
            }
        }
        let kept_arcs: Vec<(u32, u32)> = arcs
            .into_iter()
            .filter(|&(a, b)| alive[a as usize] && alive[b as usize])
            .map(|(a, b)| (index[a as usize], index[b as usize]))
            .collect();
        let m = kept_states.len();
        let (succ_start, succ) = to_csr(m, &kept_arcs, false);
        let (pred_start, pred) = to_csr(m, &kept_arcs, true);
        StateGraph {
            kind,
            transition,
            set,
            window,
            states: kept_states,
            weights: kept_weights,
            succ_start,
            succ,
            pred_start,
            pred,
        }
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn transition(&self) -> Transition {
        self.transition
    }

    /// Distance set the graph was built on (the power set for identifying
    /// codes of radius > 1).
    pub fn set(&self) -> &DistanceSet {
        &self.set
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// State codes (bitmasks, or base-k color codes), ascending.
    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn successors(&self, i: usize) -> &[u32] {
        &self.succ[self.succ_start[i] as usize..self.succ_start[i + 1] as usize]
    }

    pub fn arc_count(&self) -> usize {
        self.succ.len()
    }

    pub fn index_of(&self, state: u64) -> Option<usize> {
        self.states.binary_search(&state).ok()
    }

    pub fn has_arc(&self, from: u64, to: u64) -> bool {
        match (self.index_of(from), self.index_of(to)) {
            (Some(a), Some(b)) => self.successors(a).binary_search(&(b as u32)).is_ok(),
            _ => false,
        }
    }

    fn succ_csr(&self) -> Csr<'_> {
        Csr { start: &self.succ_start, adj: &self.succ }
    }

    fn pred_csr(&self) -> Csr<'_> {
        Csr { start: &self.pred_start, adj: &self.pred }
    }

    /// One period of the pattern traced by a cycle of state indices: bits
    /// for subset kinds, colors for colorings.
    fn decode(&self, cycle: &[usize]) -> Vec<u32> {
        let l = self.window;
        let cell = |code: u64, j: u32| -> u32 {
            match self.kind {
                ProblemKind::Coloring(k) => (code / (k as u64).pow(j) % k as u64) as u32,
                _ => (code >> j & 1) as u32,
            }
        };
        match self.transition {
            Transition::Block => cycle.iter().flat_map(|&i| (0..l).map(move |j| cell(self.states[i], j))).collect(),
            // Each state's newest position is the one just appended.
            Transition::Sliding => cycle.iter().map(|&i| cell(self.states[i], l - 1)).collect(),
        }
    }

    fn witness(&self, cycle: Vec<usize>) -> CycleWitness {
        let weight_sum: u64 = cycle.iter().map(|&i| self.weights[i] as u64).sum();
        let density = Rational::new(weight_sum as i128, self.window as i128 * cycle.len() as i128);
        CycleWitness {
            kind: self.kind,
            pattern: self.decode(&cycle),
            states: cycle.iter().map(|&i| self.states[i]).collect(),
            weight_sum,
            density,
        }
    }
}

/// A simple cycle of the state graph and the periodic object it encodes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleWitness {
    pub kind: ProblemKind,
    /// The cycle's states, without repetition.
    pub states: Vec<u64>,
    /// Total state weight along the cycle.
    pub weight_sum: u64,
    /// `weight_sum / (ℓ · cycle length)`.
    pub density: Rational,
    /// One period: 0/1 membership for subset kinds, colors for colorings.
    pub pattern: Vec<u32>,
}

impl CycleWitness {
    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    /// The periodic set as a block list; `None` for colorings or an empty
    /// set.
    pub fn period_set(&self) -> Option<BlockList> {
        if matches!(self.kind, ProblemKind::Coloring(_)) {
            return None;
        }
        let pos: Vec<u64> = (0..self.pattern.len() as u64).filter(|&i| self.pattern[i as usize] == 1).collect();
        BlockList::from_positions(&pos, self.pattern.len() as u64)
    }
}

/// Block-mode state graph with default limits.
pub fn build_state_graph(s: &DistanceSet, kind: ProblemKind) -> Result<StateGraph, Error> {
    build_state_graph_with(s, kind, Transition::Block, &StateLimits::for_kind(kind))
}

pub fn build_state_graph_with(
    s: &DistanceSet,
    kind: ProblemKind,
    transition: Transition,
    limits: &StateLimits,
) -> Result<StateGraph, Error> {
    build::build(s, kind, transition, limits)
}

/// The cycle of extremal mean state weight.
pub fn extremal_mean_cycle(g: &StateGraph, direction: Direction) -> Result<CycleWitness, Error> {
    let sign = match direction {
        Direction::Max => 1,
        Direction::Min => -1,
    };
    let w: Vec<i64> = g.weights.iter().map(|&x| sign * x as i64).collect();
    let (_, _, cycle) = karp::max_mean_cycle(&w, &g.succ_csr(), &g.pred_csr()).ok_or(Error::NoCycle)?;
    Ok(g.witness(cycle))
}

/// Some cycle of the graph (the one found first from the smallest state).
pub fn any_cycle(g: &StateGraph) -> Option<CycleWitness> {
    karp::find_cycle(g.len(), &g.succ_csr(), |_, _| true).map(|c| g.witness(c))
}

/// Maximum density of an independent set in `G(S)` straight from the
/// sliding state graph, without normalizing `S`. Returns the density, a
/// verified witness and the number of states.
pub fn max_independent_density(s: &DistanceSet, limits: &StateLimits) -> Result<(Rational, BlockList, usize), Error> {
    let g = build_state_graph_with(s, ProblemKind::Independence, Transition::Sliding, limits)?;
    let w = extremal_mean_cycle(&g, Direction::Max)?;
    let bl = w.period_set().expect("independence ratio is positive");
    debug_assert!(crate::verify_periodic_independent(&bl, s).is_independent());
    assert_eq!(bl.density(), w.density, "decoded witness must match the cycle mean");
    Ok((w.density, bl, g.len()))
}

/// `ᾱ(S)` with a periodic witness: divide out the gcd, answer `1/2` for
/// all-odd sets, otherwise take the maximum mean cycle.
pub fn independence_ratio_exact(s: &DistanceSet) -> Result<(Rational, BlockList), Error> {
    let n = normalize(s);
    let (value, witness) = if n.all_odd {
        (Rational::new(1, 2), BlockList::new(vec![2]).expect("valid"))
    } else {
        let (v, w, _) = max_independent_density(&n.reduced, &StateLimits::default())?;
        (v, w)
    };
    let witness = witness.scaled(n.divisor);
    assert!(crate::verify_periodic_independent(&witness, s).is_independent());
    Ok((value, witness))
}

/// Minimum density of a dominating set of `G(S)`.
pub fn min_dominating_density(s: &DistanceSet) -> Result<(Rational, CycleWitness), Error> {
    let g = build_state_graph_with(s, ProblemKind::Domination, Transition::Sliding, &StateLimits::default())?;
    let w = extremal_mean_cycle(&g, Direction::Min)?;
    assert!(is_dominating(&w.pattern, s), "decoded witness must dominate");
    Ok((w.density.clone(), w))
}

/// Minimum density of an `r`-identifying code of `G(S)`, i.e. a
/// 1-identifying code of `G(S')` where `S'` holds every distance reachable in
/// at most `r` steps.
pub fn min_identifying_density(s: &DistanceSet, r: u32) -> Result<(Rational, CycleWitness), Error> {
    if r == 0 {
        return Err(Error::Parameter("radius must be positive".into()));
    }
    let sr = power_distance_set(s, r);
    let g = build_state_graph_with(&sr, ProblemKind::IdentifyingCode, Transition::Sliding, &StateLimits::default())?;
    let w = extremal_mean_cycle(&g, Direction::Min)?;
    assert!(is_identifying_code(&w.pattern, &sr), "decoded witness must identify");
    Ok((w.density.clone(), w))
}

/// A periodic proper `k`-coloring of `G(S)`, or `None` if none exists.
pub fn periodic_coloring(s: &DistanceSet, k: u32) -> Result<Option<CycleWitness>, Error> {
    let kind = ProblemKind::Coloring(k);
    let g = build_state_graph_with(s, kind, Transition::Sliding, &StateLimits::for_kind(kind))?;
    let w = any_cycle(&g);
    if let Some(w) = &w {
        assert!(is_proper_coloring(&w.pattern, s), "decoded coloring must be proper");
    }
    Ok(w)
}

/// `χ_f(S) = 1/ᾱ(S)`, failing with [`Error::Inexact`] if the ratio could not
/// be pinned down within the default budget.
pub fn fractional_chromatic(s: &DistanceSet) -> Result<Rational, Error> {
    let r = crate::compute(s, crate::Method::Auto, crate::Budget::default())?;
    match r.value {
        Some(v) => Ok(v.recip().expect("positive ratio")),
        None => Err(Error::Inexact { lower: r.lower, upper: r.upper }),
    }
}
