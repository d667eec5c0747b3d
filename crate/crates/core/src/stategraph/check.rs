//! Direct checks of periodic patterns, independent of the state graphs.
//! A pattern is one period; position `i` of `ℤ` reads `pattern[i mod p]`.

use alloc::vec::Vec;

use crate::DistanceSet;

#[inline]
fn at(pattern: &[u32], i: i64) -> u32 {
    pattern[i.rem_euclid(pattern.len() as i64) as usize]
}

/// Every integer is in the set or has a neighbour in it.
pub fn is_dominating(pattern: &[u32], s: &DistanceSet) -> bool {
    !pattern.is_empty()
        && (0..pattern.len() as i64).all(|v| {
            at(pattern, v) == 1 || s.iter().any(|d| at(pattern, v - d as i64) == 1 || at(pattern, v + d as i64) == 1)
        })
}

/// `N[v] ∩ X` as sorted offsets from `v`.
fn code(pattern: &[u32], s: &DistanceSet, v: i64) -> Vec<i64> {
    let mut c: Vec<i64> = s
        .iter()
        .flat_map(|d| [v - d as i64, v + d as i64])
        .chain(core::iter::once(v))
        .filter(|&x| at(pattern, x) == 1)
        .collect();
    c.sort_unstable();
    c
}

/// Every `N[v] ∩ X` is nonempty and no two coincide. Closed
/// neighbourhoods of vertices more than `2·max(S)` apart are disjoint, so
/// only nearer pairs need comparing.
pub fn is_identifying_code(pattern: &[u32], s: &DistanceSet) -> bool {
    let reach = 2 * s.max_element() as i64;
    !pattern.is_empty()
        && (0..pattern.len() as i64).all(|v| {
            let cv = code(pattern, s, v);
            !cv.is_empty() && (1..=reach).all(|t| code(pattern, s, v + t) != cv)
        })
}

/// No two integers at a distance in `S` share a color.
pub fn is_proper_coloring(pattern: &[u32], s: &DistanceSet) -> bool {
    !pattern.is_empty()
        && (0..pattern.len() as i64).all(|v| s.iter().all(|d| at(pattern, v) != at(pattern, v + d as i64)))
}
