//! Branch and bound for `α(G(S)[n])` and `α(G(n,S))`, and the schedule that
//! squeezes `ᾱ(S)` between them:
//!
//! ```text
//! α(G(n,S))/n  ≤  ᾱ(S)  ≤  α(G(S)[m])/m
//! ```
//!
//! Interval values are built for `n = 1, 2, …`; since `α(n) ≤ α(n−1) + 1`,
//! each step only asks whether a set of size `α(n−1) + 1` containing `n`
//! exists. Vertices are tried in decreasing order and a branch is cut when
//! the chosen set plus an upper bound on what remains cannot reach the
//! target. The remaining candidates `B` are kept as a bitset; its maximal
//! runs give the bound `β(B) = Σ α(run length)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{Budget, MethodUsed, RatioReport, Status};
use crate::{BlockList, DistanceSet, Error, Rational};

/// Largest `n` accepted by [`brute_force_alpha_interval`].
pub const BRUTE_FORCE_MAX_N: u32 = 26;

/// Memoized `α(G(S)[n])` for `n = 0, 1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTable {
    interval_alpha: Vec<u32>,
}

impl Default for AlphaTable {
    fn default() -> Self {
        AlphaTable { interval_alpha: vec![0] }
    }
}

impl AlphaTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Largest `n` with a known value.
    pub fn max_n(&self) -> u32 {
        (self.interval_alpha.len() - 1) as u32
    }

    pub fn get(&self, n: u32) -> Option<u32> {
        self.interval_alpha.get(n as usize).copied()
    }

    pub fn values(&self) -> &[u32] {
        &self.interval_alpha
    }
}

/// Node counter shared by every search in one computation.
pub(crate) struct Work<'a> {
    pub used: u64,
    budget: Budget<'a>,
}

impl<'a> Work<'a> {
    pub fn new(budget: Budget<'a>) -> Self {
        Work { used: 0, budget }
    }

    #[inline]
    fn tick(&mut self) -> Result<(), Error> {
        self.used += 1;
        if self.used > self.budget.max_nodes {
            return Err(Error::BudgetExhausted);
        }
        if self.used & 0x3fff == 0 {
            if let Some(i) = self.budget.interrupt {
                if i.interrupted() {
                    return Err(Error::BudgetExhausted);
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Bitset helpers. Vertex v ∈ [1, n] is bit v − 1.

#[inline]
fn set_bit(b: &mut [u64], v: u32) {
    b[(v - 1) as usize / 64] |= 1 << ((v - 1) % 64);
}

#[inline]
fn clear_bit(b: &mut [u64], v: u32) {
    b[(v - 1) as usize / 64] &= !(1 << ((v - 1) % 64));
}

/// `dst = src ∩ [1, v−1]`.
#[inline]
fn copy_below(dst: &mut [u64], src: &[u64], v: u32) {
    let bits = (v - 1) as usize;
    let full = bits / 64;
    dst[..full].copy_from_slice(&src[..full]);
    if full < dst.len() {
        let rem = bits % 64;
        dst[full] = if rem == 0 { 0 } else { src[full] & ((1u64 << rem) - 1) };
        for w in &mut dst[full + 1..] {
            *w = 0;
        }
    }
}

/// `Σ alpha[len]` over the maximal runs of set bits.
#[inline]
fn beta(b: &[u64], alpha: &[u32]) -> u32 {
    let mut total = 0;
    let mut run = 0usize;
    for &w in b {
        if w == u64::MAX {
            run += 64;
            continue;
        }
        if w == 0 {
            if run > 0 {
                total += alpha[run];
                run = 0;
            }
            continue;
        }
        let mut w = w;
        let mut left = 64u32;
        while left > 0 {
            if w & 1 == 1 {
                let ones = (!w).trailing_zeros().min(left);
                run += ones as usize;
                w = w.checked_shr(ones).unwrap_or(0);
                left -= ones;
            } else {
                if run > 0 {
                    total += alpha[run];
                    run = 0;
                }
                if w == 0 {
                    break;
                }
                let zeros = w.trailing_zeros();
                w >>= zeros;
                left -= zeros;
            }
        }
    }
    if run > 0 {
        total += alpha[run];
    }
    total
}

/// Highest vertex in `b` that is `< below` (1-based), if any.
#[inline]
fn highest_below(b: &[u64], below: u32) -> Option<u32> {
    if below <= 1 {
        return None;
    }
    let bits = (below - 1) as usize; // candidates are bits 0..bits
    let mut wi = (bits - 1) / 64;
    let top = bits - wi * 64; // number of usable bits in word wi
    let mut w = if top == 64 { b[wi] } else { b[wi] & ((1u64 << top) - 1) };
    loop {
        if w != 0 {
            return Some((wi * 64 + 63 - w.leading_zeros() as usize) as u32 + 1);
        }
        if wi == 0 {
            return None;
        }
        wi -= 1;
        w = b[wi];
    }
}

// ---------------------------------------------------------------------------

/// One "is there an independent set of size `target` containing the top
/// vertex?" query.
struct Query<'q, 'w> {
    dists: &'q [u32],
    /// `0` for intervals, else the circulant order.
    modulus: u32,
    /// Upper bounds: `alpha[len]` for every length below the top vertex.
    alpha: &'q [u32],
    target: u32,
    words: usize,
    levels: &'q mut Vec<Vec<u64>>,
    chosen: &'q mut Vec<u32>,
    work: &'q mut Work<'w>,
}

impl Query<'_, '_> {
    /// Seeds level 0 with the candidates compatible with `top` and searches.
    fn run(&mut self, top: u32) -> Result<bool, Error> {
        self.chosen.clear();
        self.chosen.push(top);
        if self.levels.is_empty() {
            self.levels.push(vec![0; self.words]);
        }
        let (first, _) = self.levels.split_at_mut(1);
        let b = &mut first[0];
        for w in b.iter_mut() {
            *w = 0;
        }
        for v in 1..top {
            set_bit(b, v);
        }
        remove_neighbours(b, top, self.dists, self.modulus);
        self.search(0, 1)
    }

    fn search(&mut self, depth: usize, size: u32) -> Result<bool, Error> {
        if size >= self.target {
            return Ok(true);
        }
        if size + beta(&self.levels[depth], self.alpha) < self.target {
            return Ok(false);
        }
        if self.levels.len() <= depth + 1 {
            self.levels.push(vec![0; self.words]);
        }
        let mut cursor = u32::MAX;
        loop {
            let v = match highest_below(&self.levels[depth], cursor.min(self.words as u32 * 64 + 1)) {
                Some(v) => v,
                None => return Ok(false),
            };
            cursor = v;
            if size + self.alpha[v as usize] < self.target {
                return Ok(false);
            }
            self.work.tick()?;
            let (lo, hi) = self.levels.split_at_mut(depth + 1);
            let child = &mut hi[0];
            copy_below(child, &lo[depth], v);
            remove_neighbours(child, v, self.dists, self.modulus);
            self.chosen.push(v);
            if self.search(depth + 1, size + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
    }
}

/// Clear the neighbours of `v` that lie below it.
#[inline]
fn remove_neighbours(b: &mut [u64], v: u32, dists: &[u32], modulus: u32) {
    for &d in dists {
        if d < v {
            clear_bit(b, v - d);
        }
        if modulus > 0 && v + d > modulus && v + d - modulus < v {
            clear_bit(b, v + d - modulus);
        }
    }
}

fn interval_step(s: &DistanceSet, table: &mut AlphaTable, work: &mut Work<'_>) -> Result<(), Error> {
    let n = table.interval_alpha.len() as u32;
    let prev = table.interval_alpha[n as usize - 1];
    let (mut levels, mut chosen) = (Vec::new(), Vec::new());
    let mut q = Query {
        dists: s.as_slice(),
        modulus: 0,
        alpha: &table.interval_alpha,
        target: prev + 1,
        words: (n as usize).div_ceil(64),
        levels: &mut levels,
        chosen: &mut chosen,
        work,
    };
    let found = q.run(n)?;
    table.interval_alpha.push(if found { prev + 1 } else { prev });
    Ok(())
}

/// `α(G(S)[n])`, extending `table` as needed. On budget exhaustion the
/// table keeps every value completed so far.
pub fn alpha_interval(s: &DistanceSet, n: u32, table: &mut AlphaTable, budget: Budget<'_>) -> Result<u32, Error> {
    let mut work = Work::new(budget);
    alpha_interval_with(s, n, table, &mut work)
}

pub(crate) fn alpha_interval_with(
    s: &DistanceSet,
    n: u32,
    table: &mut AlphaTable,
    work: &mut Work<'_>,
) -> Result<u32, Error> {
    while table.max_n() < n {
        interval_step(s, table, work)?;
    }
    Ok(table.interval_alpha[n as usize])
}

/// `α(G(n,S))` for `n > max(S)`.
pub fn alpha_circulant(s: &DistanceSet, n: u32, budget: Budget<'_>) -> Result<u32, Error> {
    let mut work = Work::new(budget);
    Ok(circulant_with(s, n, &mut work)?.len() as u32)
}

/// A maximum independent set of `G(n,S)` (vertices `1..=n`), built from the
/// prefix values `α(n, i)`, `i = 1..n`.
pub(crate) fn circulant_with(s: &DistanceSet, n: u32, work: &mut Work<'_>) -> Result<Vec<u32>, Error> {
    assert!(n > s.max_element(), "circulant order must exceed max(S)");
    let mut prefix = vec![0u32];
    let mut best = Vec::new();
    let (mut levels, mut chosen) = (Vec::new(), Vec::new());
    for i in 1..=n {
        let prev = prefix[i as usize - 1];
        // An arc of `len < n` consecutive vertices of the circulant induces
        // the same graph as the prefix [1, len], so prefix values bound runs.
        let found = Query {
            dists: s.as_slice(),
            modulus: n,
            alpha: &prefix,
            target: prev + 1,
            words: (n as usize).div_ceil(64),
            levels: &mut levels,
            chosen: &mut chosen,
            work: &mut *work,
        }
        .run(i)?;
        if found {
            prefix.push(prev + 1);
            best.clone_from(&chosen);
        } else {
            prefix.push(prev);
        }
    }
    best.sort_unstable();
    Ok(best)
}

/// Exhaustive `α(G(S)[n])` over all `2ⁿ` subsets; an oracle for testing.
pub fn brute_force_alpha_interval(s: &DistanceSet, n: u32) -> Result<u32, Error> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::ResourceCap {
            what: "brute-force interval length",
            needed: n as u128,
            limit: BRUTE_FORCE_MAX_N as u128,
        });
    }
    let ds: Vec<u32> = s.iter().filter(|&d| d < n).collect();
    let mut best = 0;
    for mask in 0u64..(1u64 << n) {
        let c = mask.count_ones();
        if c > best && ds.iter().all(|&d| mask & (mask >> d) == 0) {
            best = c;
        }
    }
    Ok(best)
}

/// Bound `ᾱ(S)` by interleaving interval and circulant computations: for
/// each `n`, `α(2n−1)` and `α(2n)`, and `α(G(n,S))` once `n > max(S)`.
/// Stops when the bounds meet or the budget runs out.
///
/// Intended for normalized sets that are not all odd (see
/// [`crate::compute`]), though it is correct for any `S`.
pub fn compute_ratio(s: &DistanceSet, budget: Budget<'_>) -> RatioReport {
    let mut work = Work::new(budget);
    let smax = s.max_element();
    // `(max S + 1)ℤ` is always independent.
    let mut lower = Rational::new(1, smax as i128 + 1);
    let mut lower_witness = BlockList::new(vec![smax + 1]).expect("valid");
    let mut upper = Rational::one();
    let mut upper_m = None;
    let mut table = AlphaTable::new();

    let mut step = |n: u32,
                    work: &mut Work<'_>,
                    lower: &mut Rational,
                    lower_witness: &mut BlockList,
                    upper: &mut Rational,
                    upper_m: &mut Option<u64>|
     -> Result<(), Error> {
        for m in [2 * n - 1, 2 * n] {
            let a = alpha_interval_with(s, m, &mut table, work)?;
            let r = Rational::new(a as i128, m as i128);
            if r < *upper {
                *upper = r;
                *upper_m = Some(m as u64);
            }
        }
        if n > smax {
            let set = circulant_with(s, n, work)?;
            let r = Rational::new(set.len() as i128, n as i128);
            if r > *lower {
                let pos: Vec<u64> = set.iter().map(|&v| (v - 1) as u64).collect();
                *lower_witness = BlockList::from_positions(&pos, n as u64).expect("nonempty");
                *lower = r;
            }
        }
        Ok(())
    };

    let mut n = 1u32;
    let status = loop {
        if lower == upper {
            break Status::Exact;
        }
        if step(n, &mut work, &mut lower, &mut lower_witness, &mut upper, &mut upper_m).is_err() {
            break Status::Bounded;
        }
        n += 1;
    };
    RatioReport {
        set: s.clone(),
        status,
        value: (status == Status::Exact).then(|| lower.clone()),
        lower,
        upper,
        lower_witness,
        upper_witness_n: upper_m,
        method: MethodUsed::Search,
        nodes: work.used,
        states: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify_periodic_independent;

    fn ds(v: &[u32]) -> DistanceSet {
        DistanceSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn bit_helpers() {
        let mut b = vec![0u64; 3];
        for v in [1, 2, 3, 10, 64, 65, 66, 130] {
            set_bit(&mut b, v);
        }
        let alpha: Vec<u32> = (0..200).collect();
        assert_eq!(beta(&b, &alpha), 3 + 1 + 3 + 1);
        assert_eq!(highest_below(&b, 193), Some(130));
        assert_eq!(highest_below(&b, 130), Some(66));
        assert_eq!(highest_below(&b, 64), Some(10));
        assert_eq!(highest_below(&b, 2), Some(1));
        assert_eq!(highest_below(&b, 1), None);
        let mut c = vec![0u64; 3];
        copy_below(&mut c, &b, 66);
        assert_eq!(beta(&c, &alpha), 3 + 1 + 2);
        let full = vec![u64::MAX; 2];
        assert_eq!(beta(&full, &alpha), 128);
    }

    #[test]
    fn interval_examples() {
        let mut t = AlphaTable::new();
        assert_eq!(alpha_interval(&ds(&[1, 2]), 7, &mut t, Budget::default()), Ok(3));
        let mut t = AlphaTable::new();
        assert_eq!(alpha_interval(&ds(&[1, 2, 3]), 9, &mut t, Budget::default()), Ok(3));
        let mut t = AlphaTable::new();
        assert_eq!(alpha_interval(&ds(&[1, 4, 7]), 8, &mut t, Budget::default()), Ok(3));
        assert_eq!(t.get(1), Some(1));
    }

    #[test]
    fn circulant_examples() {
        assert_eq!(alpha_circulant(&ds(&[1, 4]), 5, Budget::default()), Ok(2));
        assert_eq!(alpha_circulant(&ds(&[1, 2]), 6, Budget::default()), Ok(2));
        // 6 would give density 2/5 > 3/8 = ᾱ({1,4,7}); exhaustive search agrees on 5.
        assert_eq!(alpha_circulant(&ds(&[1, 4, 7]), 15, Budget::default()), Ok(5));
        assert_eq!(alpha_circulant(&ds(&[1, 4, 7]), 8, Budget::default()), Ok(3));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_alpha_interval(&ds(&[1]), 5), Ok(3));
        assert_eq!(brute_force_alpha_interval(&ds(&[1, 2]), 4), Ok(2));
        assert_eq!(brute_force_alpha_interval(&ds(&[2, 3]), 10), Ok(4));
        assert!(brute_force_alpha_interval(&ds(&[1]), 27).is_err());
    }

    #[test]
    fn ratio_examples() {
        for (s, p, q) in [(&[1, 2, 3][..], 1, 4), (&[1, 4, 7], 3, 8), (&[1, 2, 5], 1, 3)] {
            let r = compute_ratio(&ds(s), Budget::default());
            assert_eq!(r.status, Status::Exact);
            assert_eq!(r.value, Some(Rational::new(p, q)));
            assert_eq!(r.lower_witness.density(), r.lower);
            assert!(verify_periodic_independent(&r.lower_witness, &r.set).is_independent());
        }
    }

    #[test]
    fn budget_exhaustion_is_bounded() {
        let r = compute_ratio(&ds(&[1, 4, 7]), Budget::nodes(5));
        assert_eq!(r.status, Status::Bounded);
        assert!(r.lower <= r.upper);
        assert_eq!(r.value, None);
        let mut t = AlphaTable::new();
        assert_eq!(alpha_interval(&ds(&[1, 4, 7]), 60, &mut t, Budget::nodes(10)), Err(Error::BudgetExhausted));
        assert!(t.max_n() >= 1);
    }
}
