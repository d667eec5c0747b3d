//! Maximum mean cycle in a vertex-weighted digraph, exact in integers.
//!
//! Karp's characterisation with a super-source (`D₀(v) = 0` for all `v`):
//!
//! ```text
//! λ* = max_v min_{0≤k<n} (Dₙ(v) − D_k(v)) / (n − k)
//! ```
//!
//! where `D_k(v)` is the heaviest `k`-arc walk ending at `v` (an arc into
//! `v` weighs `w(v)`). Storing every `D_k` costs `O(n²)` memory, so the rows
//! are recomputed instead: one pass for `Dₙ`, one for `λ* = p/q`, and one for
//! the potentials `π(v) = max_k (q·D_k(v) − k·p)`. Every arc on a maximum
//! mean cycle is tight (`π(u) + q·w(v) − p = π(v)`), and every cycle of tight
//! arcs has mean exactly `λ*`, so a cycle search in the tight subgraph
//! recovers a witness. Time `O(n·m)`, memory `O(n + m)`.

use alloc::vec;
use alloc::vec::Vec;

const NEG: i64 = i64::MIN / 4;

/// CSR adjacency.
pub(crate) struct Csr<'a> {
    pub start: &'a [u32],
    pub adj: &'a [u32],
}

impl Csr<'_> {
    #[inline]
    fn of(&self, v: usize) -> &[u32] {
        &self.adj[self.start[v] as usize..self.start[v + 1] as usize]
    }
}

fn relax(prev: &[i64], cur: &mut [i64], w: &[i64], pred: &Csr<'_>) {
    for (v, c) in cur.iter_mut().enumerate() {
        let mut best = NEG;
        for &u in pred.of(v) {
            best = best.max(prev[u as usize]);
        }
        *c = if best == NEG { NEG } else { best + w[v] };
    }
}

/// `a/b < c/d` for positive denominators.
#[inline]
fn less(a: i64, b: i64, c: i64, d: i64) -> bool {
    (a as i128) * (d as i128) < (c as i128) * (b as i128)
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Maximum mean cycle as `(numerator, denominator, cycle)`; the cycle is a
/// vertex sequence `v₀ → v₁ → … → v₀` rotated to start at its smallest
/// index. `None` if the graph is acyclic.
pub(crate) fn max_mean_cycle(w: &[i64], succ: &Csr<'_>, pred: &Csr<'_>) -> Option<(i64, i64, Vec<usize>)> {
    let n = w.len();
    if n == 0 {
        return None;
    }
    // Pass 1: Dₙ.
    let mut prev = vec![0i64; n];
    let mut cur = vec![0i64; n];
    for _ in 0..n {
        relax(&prev, &mut cur, w, pred);
        core::mem::swap(&mut prev, &mut cur);
    }
    let dn = prev;

    // Pass 2: λ*.
    let mut best_num = vec![i64::MAX; n];
    let mut best_den = vec![1i64; n];
    let mut row = vec![0i64; n];
    let mut next = vec![0i64; n];
    for k in 0..n {
        for v in 0..n {
            if dn[v] != NEG && row[v] != NEG {
                let (a, b) = (dn[v] - row[v], (n - k) as i64);
                if best_num[v] == i64::MAX || less(a, b, best_num[v], best_den[v]) {
                    best_num[v] = a;
                    best_den[v] = b;
                }
            }
        }
        relax(&row, &mut next, w, pred);
        core::mem::swap(&mut row, &mut next);
    }
    let mut lam: Option<(i64, i64)> = None;
    for v in 0..n {
        if dn[v] == NEG || best_num[v] == i64::MAX {
            continue;
        }
        match lam {
            Some((p, q)) if !less(p, q, best_num[v], best_den[v]) => {}
            _ => lam = Some((best_num[v], best_den[v])),
        }
    }
    let (p, q) = lam?;
    let g = gcd(p, q).max(1);
    let (p, q) = (p / g, q / g);

    // Pass 3: potentials.
    let mut pi = vec![NEG; n];
    let mut row = vec![0i64; n];
    for k in 0..=n {
        for v in 0..n {
            if row[v] != NEG {
                pi[v] = pi[v].max(q * row[v] - k as i64 * p);
            }
        }
        if k < n {
            relax(&row, &mut next, w, pred);
            core::mem::swap(&mut row, &mut next);
        }
    }

    let tight = |u: usize, v: usize| pi[u] != NEG && pi[v] != NEG && pi[u] + q * w[v] - p == pi[v];
    let cycle = find_cycle(n, succ, tight)?;
    debug_assert_eq!(
        cycle.iter().map(|&v| w[v]).sum::<i64>() * q,
        p * cycle.len() as i64,
        "tight cycle must attain the optimum mean"
    );
    Some((p, q, cycle))
}

/// Any cycle using only arcs accepted by `keep`, found by iterative DFS from
/// vertices in increasing order; rotated to start at its smallest vertex.
pub(crate) fn find_cycle(n: usize, succ: &Csr<'_>, keep: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on stack, 2 = done.
    let mut color = vec![0u8; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        color[root] = 1;
        stack.push((root, 0));
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            let out = succ.of(u);
            if *i == out.len() {
                color[u] = 2;
                stack.pop();
                continue;
            }
            let v = out[*i] as usize;
            *i += 1;
            if !keep(u, v) {
                continue;
            }
            match color[v] {
                0 => {
                    color[v] = 1;
                    stack.push((v, 0));
                }
                1 => {
                    let at = stack.iter().position(|&(x, _)| x == v).expect("on stack");
                    let mut cyc: Vec<usize> = stack[at..].iter().map(|&(x, _)| x).collect();
                    let m = (0..cyc.len()).min_by_key(|&j| cyc[j]).expect("nonempty");
                    cyc.rotate_left(m);
                    return Some(cyc);
                }
                _ => {}
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csr(n: usize, arcs: &[(u32, u32)], reverse: bool) -> (Vec<u32>, Vec<u32>) {
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
        (start, adj)
    }

    fn run(w: &[i64], arcs: &[(u32, u32)]) -> Option<(i64, i64, Vec<usize>)> {
        let (ss, sa) = csr(w.len(), arcs, false);
        let (ps, pa) = csr(w.len(), arcs, true);
        max_mean_cycle(w, &Csr { start: &ss, adj: &sa }, &Csr { start: &ps, adj: &pa })
    }

    #[test]
    fn small_graphs() {
        assert_eq!(run(&[1], &[(0, 0)]), Some((1, 1, vec![0])));
        assert_eq!(run(&[0, 1], &[(0, 1), (1, 0)]), Some((1, 2, vec![0, 1])));
        // Two cycles: 0↔1 (mean 3/2) and 2↔3↔4 (mean 5/3).
        let w = [1, 2, 1, 2, 2];
        let arcs = [(0, 1), (1, 0), (1, 2), (2, 3), (3, 4), (4, 2)];
        assert_eq!(run(&w, &arcs), Some((5, 3, vec![2, 3, 4])));
        assert_eq!(run(&[1, 1], &[(0, 1)]), None);
    }

    #[test]
    fn negative_weights() {
        let w = [-1, -3, -2];
        let arcs = [(0, 1), (1, 0), (1, 2), (2, 1), (0, 0)];
        assert_eq!(run(&w, &arcs), Some((-1, 1, vec![0])));
    }
}
