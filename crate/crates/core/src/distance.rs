use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::Error;

/// A nonempty finite set of positive distances, kept sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DistanceSet(Vec<u32>);

impl DistanceSet {
    pub fn new<I: IntoIterator<Item = u32>>(items: I) -> Result<Self, Error> {
        let mut v: Vec<u32> = items.into_iter().collect();
        if let Some(&z) = v.iter().find(|&&d| d == 0) {
            return Err(Error::NonPositive(z as i64));
        }
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(DistanceSet(v))
    }

    /// Like [`DistanceSet::new`] but from signed input, rejecting `d <= 0`.
    pub fn from_signed<I: IntoIterator<Item = i64>>(items: I) -> Result<Self, Error> {
        let mut v = Vec::new();
        for d in items {
            if d <= 0 || d > u32::MAX as i64 {
                return Err(Error::NonPositive(d));
            }
            v.push(d as u32);
        }
        Self::new(v)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn max_element(&self) -> u32 {
        *self.0.last().expect("nonempty")
    }

    pub fn min_element(&self) -> u32 {
        self.0[0]
    }

    pub fn contains(&self, d: u32) -> bool {
        self.0.binary_search(&d).is_ok()
    }

    pub fn gcd(&self) -> u32 {
        self.0.iter().fold(0u32, |g, &d| g.gcd(&d))
    }

    pub fn all_odd(&self) -> bool {
        self.0.iter().all(|d| d % 2 == 1)
    }

    /// `k·S`.
    pub fn scaled(&self, k: u32) -> DistanceSet {
        assert!(k > 0);
        DistanceSet(self.0.iter().map(|&d| d * k).collect())
    }

    /// `S ∪ T`.
    pub fn union(&self, other: &DistanceSet) -> DistanceSet {
        DistanceSet::new(self.iter().chain(other.iter())).expect("nonempty")
    }
}

impl fmt::Display for DistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

/// `S` split as `divisor · reduced` with `gcd(reduced) = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalizedSet {
    pub original: DistanceSet,
    pub reduced: DistanceSet,
    pub divisor: u32,
    /// Every element of `reduced` is odd, so `ᾱ(S) = 1/2` outright.
    pub all_odd: bool,
}

/// Divide out the gcd. `G(d·S)` is `d` disjoint copies of `G(S)`, so the
/// ratio is unchanged.
pub fn normalize(s: &DistanceSet) -> NormalizedSet {
    let g = s.gcd();
    let reduced = DistanceSet(s.0.iter().map(|&d| d / g).collect());
    let all_odd = reduced.all_odd();
    NormalizedSet { original: s.clone(), reduced, divisor: g, all_odd }
}

/// Distances realised by paths of at most `r` steps in `G(S)`: the positive
/// values of `Σ ±dᵢ` over at most `r` terms (repetition allowed).
pub fn power_distance_set(s: &DistanceSet, r: u32) -> DistanceSet {
    assert!(r >= 1, "radius must be positive");
    let mut frontier: BTreeSet<i64> = BTreeSet::new();
    frontier.insert(0);
    let mut seen = frontier.clone();
    for _ in 0..r {
        let mut next = BTreeSet::new();
        for &x in &frontier {
            for d in s.iter() {
                for y in [x + d as i64, x - d as i64] {
                    if seen.insert(y) {
                        next.insert(y);
                    }
                }
            }
        }
        frontier = next;
    }
    DistanceSet::new(seen.into_iter().filter(|&x| x > 0).map(|x| x as u32)).expect("r >= 1 reaches every element of S")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(v: &[u32]) -> DistanceSet {
        DistanceSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn normalization() {
        let n = normalize(&ds(&[2, 6, 10]));
        assert_eq!(n.reduced, ds(&[1, 3, 5]));
        assert_eq!(n.divisor, 2);
        assert!(n.all_odd);
        let n = normalize(&ds(&[1, 4, 12]));
        assert_eq!(n.divisor, 1);
        assert!(!n.all_odd);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(DistanceSet::new([]), Err(Error::EmptySet));
        assert_eq!(DistanceSet::from_signed([3, -1]), Err(Error::NonPositive(-1)));
    }

    #[test]
    fn powers() {
        assert_eq!(power_distance_set(&ds(&[1]), 2), ds(&[1, 2]));
        assert_eq!(power_distance_set(&ds(&[1, 3]), 2), ds(&[1, 2, 3, 4, 6]));
        assert_eq!(power_distance_set(&ds(&[2, 5]), 1), ds(&[2, 5]));
    }
}
