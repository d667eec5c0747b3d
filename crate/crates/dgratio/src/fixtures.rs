//! The bundled reference grid for `S = {1, 1+k, 1+k+i}`, `1 ≤ k ≤ 50`,
//! `1 ≤ i ≤ 40`. Cells are either exact values or lower bounds only; a few
//! lower-bound cells hold the placeholder `1/99` and carry no information.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use dgratio_core::Rational;
use serde::Deserialize;

const CSV: &str = include_str!("../data/reference_grid.csv");

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Exact,
    LowerBound,
    /// Placeholder entry.
    Unknown,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cell {
    pub value: Rational,
    pub status: CellStatus,
}

#[derive(Deserialize)]
struct Row {
    k: u64,
    i: u64,
    value_num: i128,
    value_den: i128,
    status: CellStatus,
}

fn grid() -> &'static BTreeMap<(u64, u64), Cell> {
    static GRID: OnceLock<BTreeMap<(u64, u64), Cell>> = OnceLock::new();
    GRID.get_or_init(|| {
        csv::Reader::from_reader(CSV.as_bytes())
            .deserialize::<Row>()
            .map(|r| {
                let r = r.expect("bundled table is well formed");
                ((r.k, r.i), Cell { value: Rational::new(r.value_num, r.value_den), status: r.status })
            })
            .collect()
    })
}

pub fn cell(k: u64, i: u64) -> Option<&'static Cell> {
    grid().get(&(k, i))
}

pub fn cells() -> impl Iterator<Item = (&'static (u64, u64), &'static Cell)> {
    grid().iter()
}

/// Outcome of comparing a computed cell with the fixture.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Comparison {
    Agrees,
    Disagrees,
    /// Not decided by the computed bounds, or nothing to compare.
    Open,
}

/// Exact cells must be reproduced exactly; lower-bound cells only need
/// `ᾱ ≥ value`.
pub fn compare(cell: &Cell, lower: &Rational, upper: &Rational) -> Comparison {
    match cell.status {
        CellStatus::Unknown => Comparison::Open,
        CellStatus::Exact if lower == upper => {
            if *lower == cell.value {
                Comparison::Agrees
            } else {
                Comparison::Disagrees
            }
        }
        CellStatus::Exact if cell.value < *lower || cell.value > *upper => Comparison::Disagrees,
        CellStatus::Exact => Comparison::Open,
        CellStatus::LowerBound if *upper < cell.value => Comparison::Disagrees,
        CellStatus::LowerBound if *lower >= cell.value => Comparison::Agrees,
        CellStatus::LowerBound => Comparison::Open,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads() {
        assert_eq!(cells().count(), 1500);
        let c = cell(3, 3).unwrap();
        assert_eq!((c.value.clone(), c.status), (Rational::new(3, 8), CellStatus::Exact));
        assert_eq!(cell(1, 7).unwrap().value, Rational::new(3, 10));
        assert_eq!(cell(2, 5).unwrap().value, Rational::new(4, 11));
        assert_eq!(cells().filter(|(_, c)| c.status == CellStatus::Unknown).count(), 17);
        assert!(cells().filter(|(_, c)| c.status == CellStatus::Unknown).all(|(_, c)| c.value == Rational::new(1, 99)));
    }

    #[test]
    fn comparison_rules() {
        let c = Cell { value: Rational::new(1, 3), status: CellStatus::LowerBound };
        assert_eq!(compare(&c, &Rational::new(1, 3), &Rational::new(2, 5)), Comparison::Agrees);
        assert_eq!(compare(&c, &Rational::new(1, 4), &Rational::new(2, 5)), Comparison::Open);
        assert_eq!(compare(&c, &Rational::new(1, 5), &Rational::new(1, 4)), Comparison::Disagrees);
    }
}
