//! Known closed forms for `ᾱ(S)`: theorems, conjectures, one-sided bounds
//! and asymptotic limits over parameterised families of distance sets,
//! with a harness that checks each against the exact engines.
//!
//! Every family maps a parameter vector to a set and a prediction. The
//! catalog order is the lookup precedence: theorems, then conjectures,
//! then bounds, then limits.

mod families;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::{
    compute, expand_blocks, normalize, verify_periodic_independent, BlockStructure, Budget, DistanceSet, Error, Method,
    Rational, Status,
};

/// Parameter arithmetic is done in `i128` so products of two `u64`
/// parameters cannot overflow.
pub(crate) type P = i128;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyKind {
    Theorem,
    Conjecture,
    LowerBound,
    UpperBound,
    /// Finite-parameter lower bounds from the constructions behind a limit.
    Limit,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Theorem => "theorem",
            FamilyKind::Conjecture => "conjecture",
            FamilyKind::LowerBound => "lower_bound",
            FamilyKind::UpperBound => "upper_bound",
            FamilyKind::Limit => "limit",
        }
    }
}

/// How `ᾱ(S)` relates to the predicted value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Equal,
    AtLeast,
    AtMost,
    Below,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Equal => "=",
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::Below => "<",
        }
    }

    /// Decide the relation from certified bounds `lower ≤ ᾱ ≤ upper`.
    /// `None` when the bounds do not settle it.
    pub fn decide(self, value: &Rational, lower: &Rational, upper: &Rational) -> Option<bool> {
        let exact = lower == upper;
        match self {
            Relation::Equal if exact => Some(lower == value),
            Relation::Equal => (value < lower || value > upper).then_some(false),
            Relation::AtLeast if lower >= value => Some(true),
            Relation::AtLeast => (upper < value).then_some(false),
            Relation::AtMost if upper <= value => Some(true),
            Relation::AtMost => (lower > value).then_some(false),
            Relation::Below if upper < value => Some(true),
            Relation::Below => (lower >= value).then_some(false),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Prediction {
    pub relation: Relation,
    pub value: Rational,
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.relation {
            Relation::Equal => write!(f, "{}", self.value),
            r => write!(f, "{} {}", r.symbol(), self.value),
        }
    }
}

/// How a disagreement with the engines is reported.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Severity {
    /// A proven statement disagrees: a bug somewhere.
    Failure,
    /// A conjecture (or a clause with unnamed exceptions) disagrees.
    Finding,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Failure => "failure",
            Severity::Finding => "finding",
        }
    }
}

/// Why a parameter point has no prediction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outside {
    /// Side conditions not met.
    Domain,
    /// Listed as an exception.
    Excluded,
}

impl Outside {
    pub fn as_str(self) -> &'static str {
        match self {
            Outside::Domain => "out_of_domain",
            Outside::Excluded => "excluded",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Param {
    pub name: &'static str,
    pub min: u64,
    pub default: u64,
}

/// One catalog entry. Constructed only inside this module.
pub struct Family {
    pub id: &'static str,
    pub kind: FamilyKind,
    pub params: &'static [Param],
    /// Index of the parameter a `verify` range sweeps.
    pub sweep: usize,
    pub domain: &'static str,
    pub source: &'static str,
    pub rule_text: &'static str,
    pub severity: Severity,
    strict: bool,
    /// Covers every set with a property; parameters only index samples, so
    /// reverse lookup does not rebuild the set.
    generic: bool,
    set: fn(&[P]) -> Vec<P>,
    rule: fn(&[P]) -> Result<Rational, Outside>,
    witness: Option<fn(&[P]) -> Option<BlockStructure>>,
    limit: Option<fn(&[P]) -> Rational>,
    matcher: fn(&[u32]) -> Vec<Vec<P>>,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family").field("id", &self.id).field("kind", &self.kind).finish()
    }
}

#[allow(clippy::too_many_arguments)]
impl Family {
    const fn new(
        id: &'static str,
        kind: FamilyKind,
        params: &'static [Param],
        domain: &'static str,
        source: &'static str,
        rule_text: &'static str,
        set: fn(&[P]) -> Vec<P>,
        rule: fn(&[P]) -> Result<Rational, Outside>,
        matcher: fn(&[u32]) -> Vec<Vec<P>>,
    ) -> Family {
        let severity = match kind {
            FamilyKind::Conjecture => Severity::Finding,
            _ => Severity::Failure,
        };
        Family {
            id,
            kind,
            params,
            sweep: 0,
            domain,
            source,
            rule_text,
            severity,
            strict: false,
            generic: false,
            set,
            rule,
            witness: None,
            limit: None,
            matcher,
        }
    }

    const fn sweep(mut self, index: usize) -> Self {
        self.sweep = index;
        self
    }

    const fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    const fn finding(mut self) -> Self {
        self.severity = Severity::Finding;
        self
    }

    const fn generic(mut self) -> Self {
        self.generic = true;
        self
    }

    const fn witness(mut self, f: fn(&[P]) -> Option<BlockStructure>) -> Self {
        self.witness = Some(f);
        self
    }

    const fn limit(mut self, f: fn(&[P]) -> Rational) -> Self {
        self.limit = Some(f);
        self
    }

    pub fn relation(&self) -> Relation {
        match self.kind {
            FamilyKind::Theorem | FamilyKind::Conjecture => Relation::Equal,
            FamilyKind::LowerBound | FamilyKind::Limit => Relation::AtLeast,
            FamilyKind::UpperBound if self.strict => Relation::Below,
            FamilyKind::UpperBound => Relation::AtMost,
        }
    }

    pub fn has_witness(&self) -> bool {
        self.witness.is_some()
    }

    fn check_len(&self, params: &[u64]) -> Result<Vec<P>, Error> {
        if params.len() != self.params.len() {
            return Err(Error::Parameter(format!(
                "family `{}` takes {} parameters, got {}",
                self.id,
                self.params.len(),
                params.len()
            )));
        }
        Ok(params.iter().map(|&x| x as P).collect())
    }

    /// The distance set for these parameters.
    pub fn set(&self, params: &[u64]) -> Result<DistanceSet, Error> {
        let v = self.check_len(params)?;
        let elems = (self.set)(&v);
        let mut out = Vec::with_capacity(elems.len());
        for x in elems {
            if x <= 0 {
                return Err(Error::NonPositive(x as i64));
            }
            out.push(u32::try_from(x).map_err(|_| Error::Parameter(format!("distance {x} too large")))?);
        }
        DistanceSet::new(out)
    }

    /// The prediction at these parameters, or why there is none.
    pub fn predict(&self, params: &[u64]) -> Result<Result<Prediction, Outside>, Error> {
        let v = self.check_len(params)?;
        if params.iter().zip(self.params).any(|(&x, p)| x < p.min) || self.set(params).is_err() {
            return Ok(Err(Outside::Domain));
        }
        Ok((self.rule)(&v).map(|value| Prediction { relation: self.relation(), value }))
    }

    /// Periodic witness for the predicted value, when the family has one at
    /// these parameters. Only meaningful inside the domain.
    pub fn witness_at(&self, params: &[u64]) -> Option<BlockStructure> {
        let v = self.check_len(params).ok()?;
        (self.witness?)(&v)
    }

    /// Limiting value (limit families only).
    pub fn limit_at(&self, params: &[u64]) -> Option<Rational> {
        let v = self.check_len(params).ok()?;
        Some((self.limit?)(&v))
    }

    /// Parameters with defaults, overridden by `fixed`.
    pub fn params_with(&self, fixed: &[(&str, u64)]) -> Result<Vec<u64>, Error> {
        let mut out: Vec<u64> = self.params.iter().map(|p| p.default).collect();
        for (name, value) in fixed {
            let j = self
                .params
                .iter()
                .position(|p| p.name == *name)
                .ok_or_else(|| Error::Parameter(format!("family `{}` has no parameter `{name}`", self.id)))?;
            out[j] = *value;
        }
        Ok(out)
    }
}

/// The whole catalog, in precedence order.
pub fn list_families() -> &'static [Family] {
    families::FAMILIES
}

pub fn find_family(id: &str) -> Result<&'static Family, Error> {
    list_families().iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFamily(id.into()))
}

/// A family instance covering a given set.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub family: &'static Family,
    pub params: Vec<u64>,
    pub prediction: Prediction,
}

impl ClosedForm {
    pub fn named_params(&self) -> Vec<(&'static str, u64)> {
        self.family.params.iter().map(|p| p.name).zip(self.params.iter().copied()).collect()
    }
}

/// Every family instance whose set is `S / gcd(S)` and whose prediction is
/// defined there, in precedence order (at most one per family).
pub fn matching_families(s: &DistanceSet) -> Vec<ClosedForm> {
    let reduced = normalize(s).reduced;
    let mut out = Vec::new();
    for family in list_families() {
        for cand in (family.matcher)(reduced.as_slice()) {
            let Ok(params) = cand.iter().map(|&x| u64::try_from(x)).collect::<Result<Vec<u64>, _>>() else {
                continue;
            };
            if !family.generic && family.set(&params).ok().as_ref() != Some(&reduced) {
                continue;
            }
            if let Ok(Ok(prediction)) = family.predict(&params) {
                out.push(ClosedForm { family, params, prediction });
                break;
            }
        }
    }
    out
}

/// The first theorem or conjecture giving an exact value for `S`. Bound
/// and limit families are not considered (see [`matching_families`]).
pub fn closed_form(s: &DistanceSet) -> Option<ClosedForm> {
    matching_families(s).into_iter().find(|c| c.prediction.relation == Relation::Equal)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Agreement {
    Match,
    Mismatch,
    Unresolved,
}

impl Agreement {
    pub fn as_str(self) -> &'static str {
        match self {
            Agreement::Match => "match",
            Agreement::Mismatch => "mismatch",
            Agreement::Unresolved => "unresolved",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessCheck {
    pub blocks: BlockStructure,
    pub independent: bool,
    pub density: Rational,
    /// Independent and of exactly the predicted density.
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct FormulaVerdict {
    pub family: &'static str,
    pub params: Vec<(&'static str, u64)>,
    pub set: Option<DistanceSet>,
    pub prediction: Option<Prediction>,
    pub skipped: Option<Outside>,
    pub computed: Option<Rational>,
    pub computed_status: Option<Status>,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
    pub agreement: Agreement,
    pub witness: Option<WitnessCheck>,
    /// Set when the engines or the witness contradict the prediction.
    pub severity: Option<Severity>,
    /// Engine error, if the computation failed outright.
    pub error: Option<String>,
}

/// Expand and check the family's witness against its prediction.
pub fn check_witness(family: &Family, params: &[u64]) -> Option<WitnessCheck> {
    let Ok(Ok(pred)) = family.predict(params) else { return None };
    let set = family.set(params).ok()?;
    let blocks = family.witness_at(params)?;
    let list = expand_blocks(&blocks).ok()?;
    let independent = verify_periodic_independent(&list, &set).is_independent();
    let density = list.density();
    let consistent = independent && density == pred.value;
    Some(WitnessCheck { blocks, independent, density, consistent })
}

/// Predict, compute and compare at one parameter point.
pub fn verify_point(family: &'static Family, params: &[u64], budget: Budget<'_>) -> Result<FormulaVerdict, Error> {
    let prediction = family.predict(params)?;
    let mut v = FormulaVerdict {
        family: family.id,
        params: family.params.iter().map(|p| p.name).zip(params.iter().copied()).collect(),
        set: family.set(params).ok(),
        prediction: None,
        skipped: None,
        computed: None,
        computed_status: None,
        lower: None,
        upper: None,
        agreement: Agreement::Unresolved,
        witness: None,
        severity: None,
        error: None,
    };
    let pred = match prediction {
        Ok(p) => p,
        Err(why) => {
            v.skipped = Some(why);
            return Ok(v);
        }
    };
    let set = v.set.clone().expect("in-domain parameters build a set");
    match compute(&set, Method::Auto, budget) {
        Ok(r) => {
            v.agreement = match pred.relation.decide(&pred.value, &r.lower, &r.upper) {
                Some(true) => Agreement::Match,
                Some(false) => Agreement::Mismatch,
                None => Agreement::Unresolved,
            };
            v.computed = r.value;
            v.computed_status = Some(r.status);
            v.lower = Some(r.lower);
            v.upper = Some(r.upper);
        }
        Err(e) => v.error = Some(format!("{e}")),
    }
    v.witness = check_witness(family, params);
    let witness_bad = v.witness.as_ref().is_some_and(|w| !w.consistent);
    if v.agreement == Agreement::Mismatch || witness_bad {
        v.severity = Some(family.severity);
    }
    v.prediction = Some(pred);
    Ok(v)
}

/// Sweep the family's sweep parameter over `range`, the others fixed (at
/// their defaults unless given in `fixed`).
pub fn verify_family(
    id: &str,
    range: RangeInclusive<u64>,
    fixed: &[(&str, u64)],
    budget: Budget<'_>,
) -> Result<Vec<FormulaVerdict>, Error> {
    let family = find_family(id)?;
    let mut params = family.params_with(fixed)?;
    let mut out = Vec::new();
    for x in range {
        params[family.sweep] = x;
        out.push(verify_point(family, &params, budget)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
