//! Serializable views of engine results. Field order is fixed, and nothing
//! time-dependent is included, so identical runs give identical bytes.

use std::collections::BTreeMap;

use dgratio_core::registry::{ClosedForm, Family, FormulaVerdict, Prediction};
use dgratio_core::stategraph::CycleWitness;
use dgratio_core::{DistanceSet, RatioReport, Rational};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub result: T,
}

pub fn frac(r: &Rational) -> String {
    r.fraction_string()
}

pub fn set_elems(s: &DistanceSet) -> Vec<u32> {
    s.as_slice().to_vec()
}

#[derive(Serialize)]
pub struct PredictionDto {
    pub relation: &'static str,
    pub value: String,
}

impl From<&Prediction> for PredictionDto {
    fn from(p: &Prediction) -> Self {
        PredictionDto { relation: p.relation.symbol(), value: frac(&p.value) }
    }
}

#[derive(Serialize)]
pub struct ClosedFormDto {
    pub family: &'static str,
    pub kind: &'static str,
    pub params: BTreeMap<&'static str, u64>,
    pub prediction: PredictionDto,
}

impl From<&ClosedForm> for ClosedFormDto {
    fn from(c: &ClosedForm) -> Self {
        ClosedFormDto {
            family: c.family.id,
            kind: c.family.kind.as_str(),
            params: c.named_params().into_iter().collect(),
            prediction: (&c.prediction).into(),
        }
    }
}

#[derive(Serialize)]
pub struct Work {
    pub nodes: u64,
    pub states: Option<usize>,
}

#[derive(Serialize)]
pub struct RatioDto {
    pub set: Vec<u32>,
    pub status: &'static str,
    pub value: Option<String>,
    pub lower: String,
    pub upper: String,
    pub lower_witness: String,
    pub upper_witness_n: Option<u64>,
    pub method: &'static str,
    pub work: Work,
    pub notes: Vec<String>,
    pub known: Vec<ClosedFormDto>,
}

impl RatioDto {
    pub fn new(r: &RatioReport, notes: Vec<String>, known: &[ClosedForm]) -> Self {
        RatioDto {
            set: set_elems(&r.set),
            status: r.status.as_str(),
            value: r.value.as_ref().map(frac),
            lower: frac(&r.lower),
            upper: frac(&r.upper),
            lower_witness: r.lower_witness.to_string(),
            upper_witness_n: r.upper_witness_n,
            method: r.method.as_str(),
            work: Work { nodes: r.nodes, states: r.states },
            notes,
            known: known.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct BlocksDto {
    pub set: Vec<u32>,
    pub blocks: String,
    pub period: u64,
    pub count: usize,
    pub density: String,
    pub independent: bool,
    /// `[x, y, d]` for the first offending pair.
    pub violation: Option<[u64; 3]>,
}

#[derive(Serialize)]
pub struct WitnessDto {
    pub blocks: String,
    pub independent: bool,
    pub density: String,
    pub consistent: bool,
}

#[derive(Serialize)]
pub struct VerdictDto {
    pub params: BTreeMap<&'static str, u64>,
    pub set: Option<Vec<u32>>,
    pub predicted: Option<PredictionDto>,
    pub skipped: Option<&'static str>,
    pub computed: Option<String>,
    pub computed_status: Option<&'static str>,
    pub lower: Option<String>,
    pub upper: Option<String>,
    pub agreement: &'static str,
    pub severity: Option<&'static str>,
    pub witness: Option<WitnessDto>,
    pub error: Option<String>,
}

impl From<&FormulaVerdict> for VerdictDto {
    fn from(v: &FormulaVerdict) -> Self {
        VerdictDto {
            params: v.params.iter().copied().collect(),
            set: v.set.as_ref().map(set_elems),
            predicted: v.prediction.as_ref().map(Into::into),
            skipped: v.skipped.map(|s| s.as_str()),
            computed: v.computed.as_ref().map(frac),
            computed_status: v.computed_status.map(|s| s.as_str()),
            lower: v.lower.as_ref().map(frac),
            upper: v.upper.as_ref().map(frac),
            agreement: v.agreement.as_str(),
            severity: v.severity.map(|s| s.as_str()),
            witness: v.witness.as_ref().map(|w| WitnessDto {
                blocks: w.blocks.to_string(),
                independent: w.independent,
                density: frac(&w.density),
                consistent: w.consistent,
            }),
            error: v.error.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct VerifyDto {
    pub family: &'static str,
    pub kind: &'static str,
    pub verdicts: Vec<VerdictDto>,
    pub matches: usize,
    pub mismatches: usize,
    pub unresolved: usize,
    pub skipped: usize,
    pub failures: usize,
    pub findings: usize,
}

#[derive(Serialize)]
pub struct ParamDto {
    pub name: &'static str,
    pub min: u64,
}

#[derive(Serialize)]
pub struct FamilyDto {
    pub id: &'static str,
    pub kind: &'static str,
    pub params: Vec<ParamDto>,
    pub sweep: &'static str,
    pub domain: &'static str,
    pub rule: &'static str,
    pub anchor: &'static str,
    pub witness: bool,
}

impl From<&Family> for FamilyDto {
    fn from(f: &Family) -> Self {
        FamilyDto {
            id: f.id,
            kind: f.kind.as_str(),
            params: f.params.iter().map(|p| ParamDto { name: p.name, min: p.min }).collect(),
            sweep: f.params[f.sweep].name,
            domain: f.domain,
            rule: f.rule_text,
            anchor: f.source,
            witness: f.has_witness(),
        }
    }
}

#[derive(Serialize)]
pub struct CycleDto {
    pub set: Vec<u32>,
    pub density: Option<String>,
    pub period: usize,
    pub pattern: String,
    pub blocks: Option<String>,
    pub states: usize,
}

impl CycleDto {
    pub fn new(set: &DistanceSet, w: &CycleWitness, density: bool) -> Self {
        CycleDto {
            set: set_elems(set),
            density: density.then(|| frac(&w.density)),
            period: w.period(),
            pattern: pattern_string(&w.pattern),
            blocks: w.period_set().map(|b| b.to_string()),
            states: w.states.len(),
        }
    }
}

/// Digits when every entry is a single digit, else comma separated.
pub fn pattern_string(p: &[u32]) -> String {
    if p.iter().all(|&x| x < 10) {
        p.iter().map(|x| char::from_digit(*x, 10).unwrap()).collect()
    } else {
        p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

#[derive(Serialize)]
pub struct TableSummary {
    pub rows: usize,
    pub exact: usize,
    pub lower_bound: usize,
    pub inconclusive: usize,
    pub fixture_agree: usize,
    pub fixture_disagree: Vec<[u64; 2]>,
    pub fixture_open: usize,
    pub out: Option<String>,
}
