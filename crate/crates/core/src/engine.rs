//! Top-level ratio computation: normalization, the all-odd shortcut, and
//! dispatch to the state-graph or search engine.

use crate::search;
use crate::stategraph::{self, StateLimits};
use crate::{normalize, BlockList, DistanceSet, Error, Rational};

/// Caller-supplied stop signal (e.g. a wall-clock deadline), polled
/// periodically by long-running searches.
pub trait Interrupt {
    fn interrupted(&self) -> bool;
}

/// Work limits for the search engine.
#[derive(Clone, Copy)]
pub struct Budget<'a> {
    /// Maximum number of search-tree nodes over a whole computation.
    pub max_nodes: u64,
    pub interrupt: Option<&'a dyn Interrupt>,
}

impl Budget<'_> {
    pub const DEFAULT_NODES: u64 = 100_000_000;

    pub fn nodes(max_nodes: u64) -> Budget<'static> {
        Budget { max_nodes, interrupt: None }
    }
}

impl Default for Budget<'_> {
    fn default() -> Self {
        Budget { max_nodes: Self::DEFAULT_NODES, interrupt: None }
    }
}

impl core::fmt::Debug for Budget<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Budget")
            .field("max_nodes", &self.max_nodes)
            .field("interrupt", &self.interrupt.is_some())
            .finish()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Exact,
    Bounded,
    /// No engine ran; the value is a closed-form prediction.
    RegistryOnly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::Bounded => "bounded",
            Status::RegistryOnly => "registry_only",
        }
    }
}

/// Engine requested by the caller.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Method {
    /// State graph when the reduced set fits the state limit, else search.
    #[default]
    Auto,
    Search,
    StateGraph,
}

/// Engine that actually produced a report.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MethodUsed {
    StateGraph,
    Search,
    Shortcut,
}

impl MethodUsed {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodUsed::StateGraph => "stategraph",
            MethodUsed::Search => "search",
            MethodUsed::Shortcut => "shortcut",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatioReport {
    pub set: DistanceSet,
    pub status: Status,
    pub value: Option<Rational>,
    pub lower: Rational,
    pub upper: Rational,
    /// Periodic independent set with density `lower`.
    pub lower_witness: BlockList,
    /// An `m` with `α(G(S)[m])/m = upper`, when the upper bound came from an
    /// interval.
    pub upper_witness_n: Option<u64>,
    pub method: MethodUsed,
    /// Search-tree nodes spent.
    pub nodes: u64,
    /// States in the pruned state graph, when one was built.
    pub states: Option<usize>,
}

impl RatioReport {
    pub(crate) fn exact(set: DistanceSet, value: Rational, witness: BlockList, method: MethodUsed) -> Self {
        RatioReport {
            set,
            status: Status::Exact,
            lower: value.clone(),
            upper: value.clone(),
            value: Some(value),
            lower_witness: witness,
            upper_witness_n: None,
            method,
            nodes: 0,
            states: None,
        }
    }

    /// Re-express a report on `S/d` as one on the original `S`.
    fn lifted(mut self, original: &DistanceSet, d: u32) -> Self {
        self.set = original.clone();
        self.lower_witness = self.lower_witness.scaled(d);
        self.upper_witness_n = self.upper_witness_n.map(|m| m * d as u64);
        self
    }
}

/// `ᾱ(S)` by the requested engine, after dividing out the gcd and taking the
/// all-odd shortcut. Budget exhaustion is reported as [`Status::Bounded`];
/// `Method::StateGraph` fails with [`Error::ResourceCap`] on sets too large
/// for the state limit.
pub fn compute(s: &DistanceSet, method: Method, budget: Budget<'_>) -> Result<RatioReport, Error> {
    compute_with(s, method, budget, &StateLimits::default())
}

pub fn compute_with(
    s: &DistanceSet,
    method: Method,
    budget: Budget<'_>,
    limits: &StateLimits,
) -> Result<RatioReport, Error> {
    let n = normalize(s);
    if n.all_odd {
        let witness = BlockList::new(alloc::vec![2]).expect("valid").scaled(n.divisor);
        let mut r = RatioReport::exact(s.clone(), Rational::new(1, 2), witness, MethodUsed::Shortcut);
        r.upper_witness_n = Some(2 * n.divisor as u64);
        return Ok(r);
    }
    let report = match method {
        Method::Search => search::compute_ratio(&n.reduced, budget),
        Method::StateGraph => stategraph_report(&n.reduced, limits)?,
        Method::Auto => match stategraph_report(&n.reduced, limits) {
            Ok(r) => r,
            Err(Error::ResourceCap { .. }) => search::compute_ratio(&n.reduced, budget),
            Err(e) => return Err(e),
        },
    };
    Ok(report.lifted(s, n.divisor))
}

fn stategraph_report(s: &DistanceSet, limits: &StateLimits) -> Result<RatioReport, Error> {
    let (value, witness, states) = stategraph::max_independent_density(s, limits)?;
    let mut r = RatioReport::exact(s.clone(), value, witness, MethodUsed::StateGraph);
    r.states = Some(states);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify_periodic_independent;

    fn ds(v: &[u32]) -> DistanceSet {
        DistanceSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn dispatch() {
        let r = compute(&ds(&[2, 6]), Method::Auto, Budget::default()).unwrap();
        assert_eq!(r.method, MethodUsed::Shortcut);
        assert_eq!(r.value, Some(Rational::new(1, 2)));
        assert!(verify_periodic_independent(&r.lower_witness, &r.set).is_independent());

        for method in [Method::Auto, Method::Search, Method::StateGraph] {
            let r = compute(&ds(&[2, 8, 14]), method, Budget::default()).unwrap();
            assert_eq!(r.status, Status::Exact);
            assert_eq!(r.value, Some(Rational::new(3, 8)));
            assert_eq!(r.lower_witness.density(), Rational::new(3, 8));
            assert!(verify_periodic_independent(&r.lower_witness, &r.set).is_independent());
        }
    }
}
