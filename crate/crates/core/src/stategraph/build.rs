//! Window-state digraphs for each problem kind.
//!
//! Subset states are bitmasks: bit `j` is position `j + 1` of the window, so
//! bit 0 is the oldest position. Coloring states are base-`k` numbers with
//! digit `j` the color of position `j + 1`.

use alloc::vec;
use alloc::vec::Vec;

use super::{ProblemKind, StateGraph, StateLimits, Transition};
use crate::{DistanceSet, Error};

fn cap_error(what: &'static str, needed: u128, limit: usize) -> Error {
    Error::ResourceCap { what, needed, limit: limit as u128 }
}

/// `back[p]`: bits `p − d` for `d ∈ S`, `d ≤ p` — the earlier positions that
/// clash with position `p`.
fn back_masks(s: &DistanceSet, len: u32) -> Vec<u64> {
    (0..len).map(|p| s.iter().filter(|&d| d <= p).fold(0u64, |m, d| m | 1 << (p - d))).collect()
}

/// Closed neighbourhood of each position of a window of `len` bits,
/// truncated to the window.
fn closed_nbhd(s: &DistanceSet, len: u32) -> Vec<u64> {
    (0..len)
        .map(|p| {
            s.iter().fold(1u64 << p, |mut m, d| {
                if d <= p {
                    m |= 1 << (p - d);
                }
                if p + d < len {
                    m |= 1 << (p + d);
                }
                m
            })
        })
        .collect()
}

/// Independent subsets of the window contained in `allowed`, in increasing
/// order. Output-sensitive: the family is closed under taking prefixes.
fn independent_subsets(back: &[u64], allowed: u64, cap: usize) -> Result<Vec<u64>, usize> {
    fn go(back: &[u64], allowed: u64, p: usize, cur: u64, out: &mut Vec<u64>, cap: usize) -> bool {
        if p == back.len() {
            out.push(cur);
            return out.len() <= cap;
        }
        if !go(back, allowed, p + 1, cur, out, cap) {
            return false;
        }
        if allowed >> p & 1 == 1 && cur & back[p] == 0 {
            return go(back, allowed, p + 1, cur | 1 << p, out, cap);
        }
        true
    }
    let mut out = Vec::new();
    if !go(back, allowed, 0, 0, &mut out, cap) {
        return Err(out.len());
    }
    out.sort_unstable();
    Ok(out)
}

/// Proper colorings of a window of `len` positions with `k` colors.
fn proper_colorings(s: &DistanceSet, len: u32, k: u32, cap: usize) -> Result<Vec<u64>, usize> {
    let mut out = Vec::new();
    let mut colors = vec![0u32; len as usize];
    fn go(s: &DistanceSet, k: u32, p: usize, colors: &mut [u32], out: &mut Vec<u64>, cap: usize) -> bool {
        if p == colors.len() {
            let code = colors.iter().rev().fold(0u64, |acc, &c| acc * k as u64 + c as u64);
            out.push(code);
            return out.len() <= cap;
        }
        for c in 0..k {
            if s.iter().all(|d| d as usize > p || colors[p - d as usize] != c) {
                colors[p] = c;
                if !go(s, k, p + 1, colors, out, cap) {
                    return false;
                }
            }
        }
        true
    }
    if !go(s, k, 0, &mut colors, &mut out, cap) {
        return Err(out.len());
    }
    out.sort_unstable();
    Ok(out)
}

fn digit(code: u64, j: u32, k: u32) -> u32 {
    (code / (k as u64).pow(j) % k as u64) as u32
}

/// Collects arcs for a sorted list of states.
struct ArcSink<'a> {
    states: &'a [u64],
    arcs: Vec<(u32, u32)>,
    max_arcs: usize,
}

impl ArcSink<'_> {
    fn push(&mut self, from: usize, to_state: u64) -> Result<(), Error> {
        if let Ok(to) = self.states.binary_search(&to_state) {
            if self.arcs.len() >= self.max_arcs {
                return Err(cap_error("state-graph arcs", self.arcs.len() as u128 + 1, self.max_arcs));
            }
            self.arcs.push((from as u32, to as u32));
        }
        Ok(())
    }
}

pub(super) fn build(
    s: &DistanceSet,
    kind: ProblemKind,
    transition: Transition,
    limits: &StateLimits,
) -> Result<StateGraph, Error> {
    let smax = s.max_element();
    let window = kind.window_for(smax, transition);
    let bits_needed = match transition {
        Transition::Sliding => window + 1,
        Transition::Block => 2 * window,
    };
    if !matches!(kind, ProblemKind::Coloring(_)) && bits_needed > 64 {
        return Err(Error::ResourceCap { what: "window bits", needed: bits_needed as u128, limit: 64 });
    }
    let cap = limits.max_states;

    let states: Vec<u64> = match kind {
        ProblemKind::Independence => independent_subsets(&back_masks(s, window), u64::MAX, cap)
            .map_err(|n| cap_error("independent window states", n as u128, cap))?,
        ProblemKind::Domination | ProblemKind::IdentifyingCode => {
            let n = 1u128 << window;
            if n > cap as u128 {
                return Err(cap_error("window states (2^window)", n, cap));
            }
            (0..n as u64).collect()
        }
        ProblemKind::Coloring(k) => {
            if k == 0 {
                return Err(Error::Parameter("number of colors must be positive".into()));
            }
            let n = (k as u128).checked_pow(window).unwrap_or(u128::MAX);
            if n > cap as u128 {
                return Err(cap_error("coloring states (k^window)", n, cap));
            }
            proper_colorings(s, window, k, cap).map_err(|n| cap_error("coloring states", n as u128, cap))?
        }
    };

    let mut sink = ArcSink { states: &states, arcs: Vec::new(), max_arcs: limits.max_arcs };
    let l = window;
    match (kind, transition) {
        (ProblemKind::Independence, Transition::Sliding) => {
            let back = back_masks(s, l + 1);
            let top = back[l as usize];
            for (i, &t) in states.iter().enumerate() {
                sink.push(i, t >> 1)?;
                if t & top == 0 {
                    sink.push(i, (t | 1 << l) >> 1)?;
                }
            }
        }
        (ProblemKind::Independence, Transition::Block) => {
            let back = back_masks(s, l);
            for (i, &t) in states.iter().enumerate() {
                // Positions of the next window that clash with `t`.
                let mut forbidden = 0u64;
                for a in 0..l {
                    if t >> a & 1 == 1 {
                        for d in s.iter() {
                            if a + d >= l && a + d < 2 * l {
                                forbidden |= 1 << (a + d - l);
                            }
                        }
                    }
                }
                let allowed = !forbidden & ((1u64 << l) - 1);
                let next = independent_subsets(&back, allowed, usize::MAX).expect("uncapped");
                for t2 in next {
                    sink.push(i, t2)?;
                }
            }
        }
        (ProblemKind::Domination, Transition::Sliding) => {
            // Appending position 2s + 1 settles position s + 1.
            let nb = closed_nbhd(s, l + 1)[smax as usize];
            for (i, &t) in states.iter().enumerate() {
                for b in 0..2u64 {
                    let w = t | b << l;
                    if w & nb != 0 {
                        sink.push(i, w >> 1)?;
                    }
                }
            }
        }
        (ProblemKind::Domination, Transition::Block) => {
            let nb = closed_nbhd(s, 2 * l);
            let lo = smax as usize;
            for (i, &t) in states.iter().enumerate() {
                for &t2 in states.iter() {
                    let w = t | t2 << l;
                    if nb[lo..3 * lo].iter().all(|&m| w & m != 0) {
                        sink.push(i, t2)?;
                    }
                }
            }
        }
        (ProblemKind::IdentifyingCode, Transition::Sliding) => {
            // Appending position 4s + 1 settles position v = 3s + 1 against
            // every u within distance 2s below it.
            let nb = closed_nbhd(s, l + 1);
            let v = 3 * smax as usize;
            for (i, &t) in states.iter().enumerate() {
                for b in 0..2u64 {
                    let w = t | b << l;
                    let cv = w & nb[v];
                    if cv != 0 && (v - 2 * smax as usize..v).all(|u| w & nb[u] != cv) {
                        sink.push(i, w >> 1)?;
                    }
                }
            }
        }
        (ProblemKind::IdentifyingCode, Transition::Block) => {
            let nb = closed_nbhd(s, 2 * l);
            let s1 = smax as usize;
            for (i, &t) in states.iter().enumerate() {
                for &t2 in states.iter() {
                    let w = t | t2 << l;
                    let ok = (3 * s1..9 * s1).all(|u| {
                        let cu = w & nb[u];
                        cu != 0 && (s1..11 * s1).all(|v| v == u || w & nb[v] != cu)
                    });
                    if ok {
                        sink.push(i, t2)?;
                    }
                }
            }
        }
        (ProblemKind::Coloring(k), Transition::Sliding) => {
            let top = (k as u64).pow(l - 1);
            for (i, &t) in states.iter().enumerate() {
                for c in 0..k {
                    // New position l (0-based) clashes with l − d.
                    if s.iter().all(|d| digit(t, l - d, k) != c) {
                        sink.push(i, t / k as u64 + c as u64 * top)?;
                    }
                }
            }
        }
        (ProblemKind::Coloring(k), Transition::Block) => {
            for (i, &t) in states.iter().enumerate() {
                for &t2 in states.iter() {
                    let ok = (0..l).all(|p| {
                        let c = digit(t2, p, k);
                        s.iter().all(|d| d <= p || digit(t, l + p - d, k) != c)
                    });
                    if ok {
                        sink.push(i, t2)?;
                    }
                }
            }
        }
    }
    let arcs = sink.arcs;
    let weights = states
        .iter()
        .map(|&t| match kind {
            ProblemKind::Coloring(_) => 0,
            _ => t.count_ones(),
        })
        .collect();
    Ok(StateGraph::from_arcs(kind, transition, s.clone(), window, states, weights, arcs))
}
