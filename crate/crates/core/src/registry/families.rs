//! The catalog itself. Residue-class rules are tables of rows
//! `(a·x + b) / (c·x + d)` indexed by `x mod modulus`, so a transcription
//! error is confined to one row.

use alloc::vec;
use alloc::vec::Vec;

use super::{Family, FamilyKind, Outside, Param, P};
use crate::{BlockList, BlockStructure, Rational};

use FamilyKind::{Conjecture, Limit, LowerBound, Theorem, UpperBound};

/// `(a·x + b) / (c·x + d)`.
#[derive(Clone, Copy)]
struct Affine(P, P, P, P);

impl Affine {
    fn at(self, x: P) -> Rational {
        Rational::new(self.0 * x + self.1, self.2 * x + self.3)
    }
}

const fn constant(n: P, d: P) -> Affine {
    Affine(0, n, 0, d)
}

struct Residues {
    modulus: P,
    rows: &'static [Affine],
}

impl Residues {
    fn at(&self, x: P) -> Rational {
        self.rows[x.rem_euclid(self.modulus) as usize].at(x)
    }
}

// {1,4,k}, k > 4
const ONE_FOUR_K: Residues = Residues {
    modulus: 5,
    rows: &[
        Affine(2, 0, 5, 5),  // k ≡ 0: 2k/(5k+5)
        constant(2, 5),      // k ≡ 1: 2/5
        Affine(2, 1, 5, 5),  // k ≡ 2: (2k+1)/(5k+5)
        Affine(2, -1, 5, 5), // k ≡ 3: (2k-1)/(5k+5)
        constant(2, 5),      // k ≡ 4: 2/5
    ],
};

// {1,6,k}, k > 6
const ONE_SIX_K: Residues = Residues {
    modulus: 7,
    rows: &[
        Affine(3, 0, 7, 7),  // k ≡ 0: 3k/(7k+7)
        constant(3, 7),      // k ≡ 1: 3/7
        Affine(3, 1, 7, 7),  // k ≡ 2: (3k+1)/(7k+7)
        Affine(3, -2, 7, 7), // k ≡ 3: (3k-2)/(7k+7)
        Affine(3, 2, 7, 7),  // k ≡ 4: (3k+2)/(7k+7)
        Affine(3, -1, 7, 7), // k ≡ 5: (3k-1)/(7k+7)
        constant(3, 7),      // k ≡ 6: 3/7
    ],
};

// {1,8,k}, k > 8
const ONE_EIGHT_K: Residues = Residues {
    modulus: 9,
    rows: &[
        Affine(4, 0, 9, 9),   // k ≡ 0: 4k/(9k+9)
        constant(4, 9),       // k ≡ 1: 4/9
        Affine(4, 1, 9, 9),   // k ≡ 2: (4k+1)/(9k+9)
        Affine(4, 24, 9, 72), // k ≡ 3: (4k+24)/(9k+72)
        Affine(4, 2, 9, 9),   // k ≡ 4: (4k+2)/(9k+9)
        Affine(4, 1, 9, 16),  // k ≡ 5: (4k+1)/(9k+16)
        Affine(4, 3, 9, 9),   // k ≡ 6: (4k+3)/(9k+9)
        Affine(4, -1, 9, 9),  // k ≡ 7: (4k-1)/(9k+9)
        constant(4, 9),       // k ≡ 8: 4/9
    ],
};

// {1,k,k+1}, k ≥ 2
const K_KP1: Residues = Residues {
    modulus: 3,
    rows: &[
        Affine(2, 0, 6, 3), // k ≡ 0: 2k/(6k+3)
        constant(1, 3),     // k ≡ 1: 1/3
        Affine(1, 1, 3, 6), // k ≡ 2: (k+1)/(3k+6)
    ],
};

// {1,k,k+3}, k ≥ 3
const K_KP3: Residues = Residues {
    modulus: 5,
    rows: &[
        Affine(2, 5, 5, 20),  // k ≡ 0: (2k+5)/(5k+20)
        constant(2, 5),       // k ≡ 1: 2/5
        Affine(2, 6, 5, 20),  // k ≡ 2: (2k+6)/(5k+20)
        Affine(4, 3, 10, 15), // k ≡ 3: (4k+3)/(10k+15)
        Affine(2, 7, 5, 20),  // k ≡ 4: (2k+7)/(5k+20)
    ],
};

// {1,k,k+5}, k ≥ 6
const K_KP5: Residues = Residues {
    modulus: 7,
    rows: &[
        Affine(3, 14, 7, 42),  // k ≡ 0: (3k+14)/(7k+42)
        constant(3, 7),        // k ≡ 1: 3/7
        Affine(3, 15, 7, 42),  // k ≡ 2: (3k+15)/(7k+42)
        Affine(6, 10, 14, 35), // k ≡ 3: (6k+10)/(14k+35)
        Affine(3, 16, 7, 42),  // k ≡ 4: (3k+16)/(7k+42)
        Affine(3, 13, 7, 42),  // k ≡ 5: (3k+13)/(7k+42)
        Affine(3, 17, 7, 42),  // k ≡ 6: (3k+17)/(7k+42)
    ],
};

// {1,k,k+7}, k ≥ 8
const K_KP7: Residues = Residues {
    modulus: 9,
    rows: &[
        Affine(4, 27, 9, 72),  // k ≡ 0: (4k+27)/(9k+72)
        constant(4, 9),        // k ≡ 1: 4/9
        Affine(4, 28, 9, 72),  // k ≡ 2: (4k+28)/(9k+72)
        Affine(8, 21, 18, 63), // k ≡ 3: (8k+21)/(18k+63)
        Affine(4, 29, 9, 72),  // k ≡ 4: (4k+29)/(9k+72)
        Affine(4, -2, 9, 9),   // k ≡ 5: (4k-2)/(9k+9)
        Affine(4, 30, 9, 72),  // k ≡ 6: (4k+30)/(9k+72)
        Affine(4, 26, 9, 72),  // k ≡ 7: (4k+26)/(9k+72)
        Affine(4, 31, 9, 72),  // k ≡ 8: (4k+31)/(9k+72)
    ],
};

// ---------------------------------------------------------------------------
// helpers

fn q(n: P, d: P) -> Rational {
    Rational::new(n, d)
}

fn need(ok: bool) -> Result<(), Outside> {
    if ok {
        Ok(())
    } else {
        Err(Outside::Domain)
    }
}

fn not_in(x: P, list: &[P]) -> Result<(), Outside> {
    if list.contains(&x) {
        Err(Outside::Excluded)
    } else {
        Ok(())
    }
}

fn gcd(a: P, b: P) -> P {
    num_integer::Integer::gcd(&a, &b)
}

fn gcd3(a: P, b: P, c: P) -> P {
    gcd(gcd(a, b), c)
}

fn odd(x: P) -> bool {
    x % 2 != 0
}

fn u(x: P) -> Option<u32> {
    u32::try_from(x).ok()
}

fn bs() -> BlockStructure {
    BlockStructure::default()
}

fn range(lo: P, hi: P) -> impl Iterator<Item = P> {
    lo..=hi
}

/// `[1, m] \ [k, k']`.
fn interval_minus(m: P, k: P, k2: P) -> Vec<P> {
    range(1, m).filter(|&x| x < k || x > k2).collect()
}

/// `[1, max] \ S`, ascending.
fn missing(s: &[u32]) -> Vec<P> {
    let max = *s.last().unwrap_or(&0) as P;
    range(1, max).filter(|&x| s.binary_search(&(x as u32)).is_err()).collect()
}

fn is_run(v: &[P]) -> bool {
    v.windows(2).all(|w| w[1] == w[0] + 1)
}

fn triple(s: &[u32]) -> Option<(P, P, P)> {
    match *s {
        [a, b, c] => Some((a as P, b as P, c as P)),
        _ => None,
    }
}

/// Matcher for sets of the form `{1, fixed, k}` with `k > fixed`.
fn one_fixed_k(s: &[u32], fixed: P) -> Vec<Vec<P>> {
    match triple(s) {
        Some((1, b, c)) if b == fixed => vec![vec![c]],
        _ => vec![],
    }
}

fn one_k_kpd(s: &[u32], d: P) -> Vec<Vec<P>> {
    match triple(s) {
        Some((1, b, c)) if c - b == d => vec![vec![b]],
        _ => vec![],
    }
}

// ---------------------------------------------------------------------------
// parameter lists

const fn p(name: &'static str, min: u64, default: u64) -> Param {
    Param { name, min, default }
}

const M_ODD: &[Param] = &[p("m", 1, 3)];
const ELL: &[Param] = &[p("l", 1, 4)];
const GZ: &[Param] = &[p("k", 1, 4), p("k2", 1, 9)];
const CLZ12: &[Param] = &[p("m", 1, 12), p("k", 1, 4)];
const CLZ3: &[Param] = &[p("m", 1, 12), p("k", 1, 3), p("s", 1, 2)];
const LL13: &[Param] = &[p("m", 1, 12), p("k", 1, 4), p("i", 0, 1)];
const LL45: &[Param] = &[p("m", 1, 12), p("k", 1, 4), p("s", 1, 2), p("i", 0, 1)];
const LL4: &[Param] = &[p("m", 1, 10), p("k", 1, 4), p("s", 1, 2), p("i", 0, 1)];
const CLZ1: &[Param] = &[p("m", 1, 7), p("k", 1, 4)];
const LL1: &[Param] = &[p("m", 1, 7), p("k", 1, 5), p("i", 0, 1)];
const LL2: &[Param] = &[p("m", 1, 9), p("k", 1, 4), p("i", 0, 2)];
const AB_ODD: &[Param] = &[p("a", 1, 3), p("b", 1, 7)];
const ABC_ODD: &[Param] = &[p("a", 1, 3), p("b", 1, 5), p("c", 1, 9)];
const K_ELL_CONJ: &[Param] = &[p("k", 1, 5), p("l", 1, 4)];
const AK4: &[Param] = &[p("a", 1, 3), p("k", 1, 1)];
const LZ1: &[Param] = &[p("a", 1, 1), p("m", 2, 3), p("b", 1, 7)];
const AB: &[Param] = &[p("a", 1, 2), p("b", 1, 5)];
const M1: &[Param] = &[p("m", 1, 2)];
const K1: &[Param] = &[p("k", 1, 3)];
const ABC: &[Param] = &[p("a", 1, 2), p("b", 1, 5), p("c", 1, 9)];
const AK: &[Param] = &[p("a", 1, 2), p("k", 1, 1)];
const KL_MULT: &[Param] = &[p("k", 2, 3), p("l", 2, 2)];
const LK_INTERVAL: &[Param] = &[p("k", 3, 7), p("l", 2, 3)];
const IK_LIMIT: &[Param] = &[p("k", 1, 10), p("i", 1, 1)];
const IK_LIMIT0: &[Param] = &[p("k", 2, 10), p("i", 0, 1)];
const I_ELL: &[Param] = &[p("i", 1, 14), p("l", 3, 9)];
const I2: &[Param] = &[p("i", 2, 2)];
const I5: &[Param] = &[p("i", 5, 5)];
const I11: &[Param] = &[p("i", 11, 11)];
const K_ELL: &[Param] = &[p("k", 1, 3), p("l", 1, 1)];
const K5: &[Param] = &[p("k", 5, 5)];
const K7: &[Param] = &[p("k", 7, 8)];
const K9: &[Param] = &[p("k", 9, 11)];
const K2: &[Param] = &[p("k", 2, 2)];
const K3: &[Param] = &[p("k", 3, 3)];
const K6: &[Param] = &[p("k", 6, 6)];
const K8: &[Param] = &[p("k", 8, 8)];

// ---------------------------------------------------------------------------
// the catalog, in precedence order

pub(super) static FAMILIES: &[Family] = &[
    // -- theorems ---------------------------------------------------------
    Family::new(
        "all-odd",
        Theorem,
        M_ODD,
        "every element odd (sampled as {1,3,…,2m-1})",
        "all-odd observation",
        "1/2",
        |v| range(1, v[0]).map(|j| 2 * j - 1).collect(),
        |_| Ok(q(1, 2)),
        |s| {
            if s.iter().all(|&x| x % 2 == 1) {
                vec![vec![s.len() as P]]
            } else {
                vec![]
            }
        },
    )
    .generic()
    .witness(|_| Some(BlockStructure::literal(2))),
    Family::new(
        "consecutive",
        Theorem,
        ELL,
        "S = {1,…,l}, l ≥ 1",
        "consecutive distances",
        "1/(l+1)",
        |v| range(1, v[0]).collect(),
        |v| Ok(q(1, v[0] + 1)),
        |s| {
            if s.iter().enumerate().all(|(j, &x)| x as usize == j + 1) {
                vec![vec![s.len() as P]]
            } else {
                vec![]
            }
        },
    )
    .witness(|v| Some(BlockStructure::literal(u(v[0] + 1)?))),
    Family::new(
        "gao-zhu",
        Theorem,
        GZ,
        "S = [k, k2], 4·k2 ≥ 5·k",
        "Gao–Zhu, interval part",
        "k/(k+k2)",
        |v| range(v[0], v[1]).collect(),
        |v| {
            need(v[1] >= v[0] && 4 * v[1] >= 5 * v[0])?;
            Ok(q(v[0], v[0] + v[1]))
        },
        |s| {
            let v: Vec<P> = s.iter().map(|&x| x as P).collect();
            if is_run(&v) {
                vec![vec![v[0], v[v.len() - 1]]]
            } else {
                vec![]
            }
        },
    )
    .sweep(1),
    Family::new(
        "clz-1",
        Theorem,
        CLZ1,
        "S = [m] \\ {k}, 2k > m, S nonempty",
        "Chang–Liu–Zhu, part 1",
        "1/k",
        |v| interval_minus(v[0], v[1], v[1]),
        |v| {
            need(v[1] <= v[0] && 2 * v[1] > v[0] && v[0] >= 2)?;
            Ok(q(1, v[1]))
        },
        clz_matcher,
    ),
    Family::new(
        "clz-2",
        Theorem,
        CLZ12,
        "S = [m] \\ {k}, 2k ≤ m",
        "Chang–Liu–Zhu, part 2",
        "2/(m+k+1)",
        |v| interval_minus(v[0], v[1], v[1]),
        |v| {
            need(2 * v[1] <= v[0])?;
            Ok(q(2, v[0] + v[1] + 1))
        },
        clz_matcher,
    ),
    Family::new(
        "clz-3",
        Theorem,
        CLZ3,
        "S = [m] \\ {k, 2k, …, sk}, m ≥ (s+1)k",
        "Chang–Liu–Zhu, part 3",
        "(s+1)/(m+sk+1)",
        |v| range(1, v[0]).filter(|&x| !(x % v[1] == 0 && x / v[1] <= v[2])).collect(),
        |v| {
            need(v[0] >= (v[2] + 1) * v[1])?;
            Ok(q(v[2] + 1, v[0] + v[2] * v[1] + 1))
        },
        |s| {
            let miss = missing(s);
            let Some(&k) = miss.first() else { return vec![] };
            let multiples = miss.iter().enumerate().all(|(j, &x)| x == (j as P + 1) * k);
            if multiples {
                vec![vec![*s.last().unwrap() as P, k, miss.len() as P]]
            } else {
                vec![]
            }
        },
    ),
    Family::new(
        "lam-lin-1",
        Theorem,
        LL1,
        "S = [m] \\ [k, k+i], k+i ≤ m < 2k, S nonempty",
        "Lam–Lin, part 1",
        "1/k",
        |v| interval_minus(v[0], v[1], v[1] + v[2]),
        |v| {
            need(v[1] + v[2] <= v[0] && v[0] < 2 * v[1] && v[1] >= 2)?;
            Ok(q(1, v[1]))
        },
        lam_lin_13_matcher,
    ),
    Family::new(
        "lam-lin-2",
        Theorem,
        LL2,
        "S = [m] \\ [k, k+i], 1 ≤ i ≤ k-1, 2k ≤ m < 2k+2i",
        "Lam–Lin, part 2",
        "2/(m+1)",
        |v| interval_minus(v[0], v[1], v[1] + v[2]),
        |v| {
            need(1 <= v[2] && v[2] < v[1] && 2 * v[1] <= v[0] && v[0] < 2 * v[1] + 2 * v[2])?;
            Ok(q(2, v[0] + 1))
        },
        lam_lin_13_matcher,
    ),
    Family::new(
        "lam-lin-3",
        Theorem,
        LL13,
        "S = [m] \\ [k, k+i], 1 ≤ i ≤ k-1, m ≥ 2k+2i",
        "Lam–Lin, part 3",
        "2/(m+k+1)",
        |v| interval_minus(v[0], v[1], v[1] + v[2]),
        |v| {
            need(1 <= v[2] && v[2] < v[1] && v[0] >= 2 * v[1] + 2 * v[2])?;
            Ok(q(2, v[0] + v[1] + 1))
        },
        lam_lin_13_matcher,
    ),
    Family::new(
        "lam-lin-4",
        Theorem,
        LL4,
        "S = [m] \\ [k, sk+i], sk+i ≤ m < (s+1)k, S nonempty",
        "Lam–Lin, part 4",
        "1/k",
        |v| interval_minus(v[0], v[1], v[2] * v[1] + v[3]),
        |v| {
            need(v[2] * v[1] + v[3] <= v[0] && v[0] < (v[2] + 1) * v[1] && v[1] >= 2)?;
            Ok(q(1, v[1]))
        },
        lam_lin_45_matcher,
    ),
    Family::new(
        "lam-lin-5",
        Theorem,
        LL45,
        "S = [m] \\ [k, sk+i], 1 ≤ i ≤ k-1, (s+1)k ≤ m < (s+1)k+i",
        "Lam–Lin, part 5",
        "(s+1)/(m+1)",
        |v| interval_minus(v[0], v[1], v[2] * v[1] + v[3]),
        |v| {
            let (m, k, s, i) = (v[0], v[1], v[2], v[3]);
            need(1 <= i && i < k && (s + 1) * k <= m && m < (s + 1) * k + i)?;
            Ok(q(s + 1, m + 1))
        },
        lam_lin_45_matcher,
    ),
    Family::new(
        "lz04-1",
        Theorem,
        LZ1,
        "S = {a, 2a, …, (m-1)a, b} with a = 1, b > m-1",
        "Liu–Zhu, part 1",
        "k/(km+1) if b = km, else 1/m",
        |v| {
            let mut out: Vec<P> = range(1, v[1] - 1).map(|j| j * v[0]).collect();
            out.push(v[2]);
            out
        },
        |v| {
            let (a, m, b) = (v[0], v[1], v[2]);
            // The rule only holds for a = 1: {2,3} has ratio 2/5, not 1/2.
            need(a == 1 && b > (m - 1) * a)?;
            Ok(if b % m == 0 { q(b / m, b + 1) } else { q(1, m) })
        },
        |s| {
            let a = s[0] as P;
            let body = &s[..s.len() - 1];
            if s.len() >= 2 && body.iter().enumerate().all(|(j, &x)| x as P == (j as P + 1) * a) {
                vec![vec![a, s.len() as P, *s.last().unwrap() as P]]
            } else {
                vec![]
            }
        },
    )
    .sweep(2),
    Family::new(
        "lz04-2",
        Theorem,
        AB,
        "S = {a, b, a+b}, 0 < a < b, gcd(a,b) = 1",
        "Liu–Zhu, part 2",
        "by (b-a) mod 3: 1/3; (a+k)/(3a+3k+1); (a+2k+1)/(3a+6k+4)",
        |v| vec![v[0], v[1], v[0] + v[1]],
        |v| {
            let (a, b) = (v[0], v[1]);
            need(a < b && gcd(a, b) == 1)?;
            let k = (b - a) / 3;
            Ok(match (b - a) % 3 {
                0 => q(1, 3),
                1 => q(a + k, 3 * a + 3 * k + 1),
                _ => q(a + 2 * k + 1, 3 * a + 6 * k + 4),
            })
        },
        |s| match triple(s) {
            Some((a, b, c)) if c == a + b => vec![vec![a, b]],
            _ => vec![],
        },
    )
    .sweep(1),
    Family::new(
        "lz04-3",
        Theorem,
        AB,
        "S = {a, b, b-a, a+b}, 0 < a < b, a ≢ b (mod 2), gcd(a,b) = 1",
        "Liu–Zhu, part 3",
        "1/4",
        |v| vec![v[0], v[1], v[1] - v[0], v[0] + v[1]],
        |v| {
            let (a, b) = (v[0], v[1]);
            need(a < b && odd(a + b) && gcd(a, b) == 1)?;
            Ok(q(1, 4))
        },
        |s| {
            let c = *s.last().unwrap() as P;
            s.iter().map(|&a| a as P).filter(|&a| 2 * a < c).map(|a| vec![a, c - a]).collect()
        },
    )
    .sweep(1),
    Family::new(
        "lz04-4",
        Theorem,
        M1,
        "S = {1, 2m, 2m+1, 2m+2}, m ≥ 1",
        "Liu–Zhu, part 4",
        "m/(4m+1)",
        |v| vec![1, 2 * v[0], 2 * v[0] + 1, 2 * v[0] + 2],
        |v| Ok(q(v[0], 4 * v[0] + 1)),
        |s| match *s {
            [1, b, _, _] if b % 2 == 0 => vec![vec![b as P / 2]],
            _ => vec![],
        },
    ),
    Family::new(
        "chz-1",
        Theorem,
        AB_ODD,
        "S = {a, b}, a < b both odd, gcd(a,b) = 1",
        "Chang–Huang–Zhu / Collins, part 1",
        "1/2",
        |v| vec![v[0], v[1]],
        |v| {
            need(v[0] < v[1] && odd(v[0]) && odd(v[1]) && gcd(v[0], v[1]) == 1)?;
            Ok(q(1, 2))
        },
        pair_matcher,
    )
    .sweep(1),
    Family::new(
        "1-2k",
        Theorem,
        K1,
        "S = {1, 2k}, k ≥ 1",
        "Chang–Huang–Zhu / Collins, special case",
        "k/(2k+1)",
        |v| vec![1, 2 * v[0]],
        |v| Ok(q(v[0], 2 * v[0] + 1)),
        |s| match *s {
            [1, b] if b % 2 == 0 => vec![vec![b as P / 2]],
            _ => vec![],
        },
    )
    .witness(|v| Some(bs().lit_pow(2, u(v[0] - 1)?).lit(3))),
    Family::new(
        "chz-2",
        Theorem,
        AB,
        "S = {a, b}, a < b not both odd, gcd(a,b) = 1",
        "Chang–Huang–Zhu / Collins, part 2",
        "(a+b-1)/(2a+2b)",
        |v| vec![v[0], v[1]],
        |v| {
            need(v[0] < v[1] && !(odd(v[0]) && odd(v[1])) && gcd(v[0], v[1]) == 1)?;
            Ok(q(v[0] + v[1] - 1, 2 * (v[0] + v[1])))
        },
        pair_matcher,
    )
    .sweep(1),
    Family::new(
        "zhu-1",
        Theorem,
        ABC_ODD,
        "S = {a, b, c}, a < b < c all odd",
        "Zhu, part 1",
        "1/2",
        |v| vec![v[0], v[1], v[2]],
        |v| {
            need(v[0] < v[1] && v[1] < v[2] && odd(v[0]) && odd(v[1]) && odd(v[2]))?;
            Ok(q(1, 2))
        },
        abc_matcher,
    )
    .sweep(2),
    Family::new(
        "zhu-2",
        Theorem,
        K1,
        "S = {1, 2, 3k}, k ≥ 1",
        "Zhu, part 2",
        "k/(3k+1)",
        |v| vec![1, 2, 3 * v[0]],
        |v| Ok(q(v[0], 3 * v[0] + 1)),
        |s| match *s {
            [1, 2, c] if c % 3 == 0 => vec![vec![c as P / 3]],
            _ => vec![],
        },
    )
    .witness(|v| Some(bs().lit_pow(3, u(v[0] - 1)?).lit(4))),
    Family::new(
        "zhu-3",
        Theorem,
        AK,
        "S = {a, a+3k, 2a+3k}, k ≥ 1, gcd(S) = 1",
        "Zhu, part 3",
        "1/3",
        |v| vec![v[0], v[0] + 3 * v[1], 2 * v[0] + 3 * v[1]],
        |v| {
            need(gcd(v[0], 3 * v[1]) == 1)?;
            Ok(q(1, 3))
        },
        |s| zhu_matcher(s, 0),
    )
    .sweep(1),
    Family::new(
        "interval-and-k",
        Theorem,
        LK_INTERVAL,
        "S = {1, …, l-1, k}, l ≥ 2, k > l",
        "interval plus one distance",
        "1/l if l ∤ k, else k/(l(k+1))",
        |v| {
            let mut out: Vec<P> = range(1, v[1] - 1).collect();
            out.push(v[0]);
            out
        },
        |v| {
            let (k, l) = (v[0], v[1]);
            need(k > l)?;
            Ok(if k % l == 0 { q(k, l * (k + 1)) } else { q(1, l) })
        },
        |s| {
            let n = s.len();
            if n >= 2 && s[..n - 1].iter().enumerate().all(|(j, &x)| x as usize == j + 1) {
                vec![vec![s[n - 1] as P, n as P]]
            } else {
                vec![]
            }
        },
    )
    .witness(|v| {
        let (k, l) = (v[0], v[1]);
        Some(if k % l == 0 {
            bs().lit_pow(u(l)?, u(k / l - 1)?).lit(u(l + 1)?)
        } else {
            BlockStructure::literal(u(l)?)
        })
    }),
    Family::new(
        "one-and-multiples",
        Theorem,
        KL_MULT,
        "S = {1, k, 2k, …, lk}, k ≥ 2, l ≥ 2",
        "one and a run of multiples",
        "1/(l+1)",
        |v| {
            let mut out = vec![1];
            out.extend(range(1, v[1]).map(|j| j * v[0]));
            out
        },
        |v| Ok(q(1, v[1] + 1)),
        |s| {
            let k = match s.get(1) {
                Some(&k) if s[0] == 1 => k as P,
                _ => return vec![],
            };
            if s[1..].iter().enumerate().all(|(j, &x)| x as P == (j as P + 1) * k) {
                vec![vec![k, s.len() as P - 1]]
            } else {
                vec![]
            }
        },
    )
    .witness(one_and_multiples_witness),
    Family::new(
        "1-3-2i",
        Theorem,
        I2,
        "S = {1, 3, 2i}, i ≥ 2",
        "{1,3,2i} theorem",
        "i/(2i+3)",
        |v| vec![1, 3, 2 * v[0]],
        |v| Ok(q(v[0], 2 * v[0] + 3)),
        |s| one_l_2i_matcher(s, 3),
    )
    .witness(|v| Some(bs().lit_pow(2, u(v[0] - 1)?).lit(5))),
    Family::new(
        "1-5-2i",
        Theorem,
        I5,
        "S = {1, 5, 2i}, i ≥ 5",
        "{1,5,2i} theorem",
        "i/(2i+5)",
        |v| vec![1, 5, 2 * v[0]],
        |v| Ok(q(v[0], 2 * v[0] + 5)),
        |s| one_l_2i_matcher(s, 5),
    )
    .witness(|v| Some(bs().lit_pow(2, u(v[0] - 1)?).lit(7))),
    Family::new(
        "1-2k-2kp2l",
        Theorem,
        K_ELL,
        "S = {1, 2k, 2k+2l}, 1 ≤ l ≤ 3, k ≥ l",
        "{1,2k,2k+2l} theorem",
        "2k/(4k+2l)",
        |v| vec![1, 2 * v[0], 2 * v[0] + 2 * v[1]],
        |v| {
            need(v[1] <= 3 && v[0] >= v[1])?;
            Ok(q(2 * v[0], 4 * v[0] + 2 * v[1]))
        },
        two_k_matcher,
    )
    .witness(two_k_witness),
    Family::new(
        "1-4-k",
        Theorem,
        K5,
        "S = {1, 4, k}, k > 4",
        "{1,4,k} five-residue theorem",
        "residue table mod 5",
        |v| vec![1, 4, v[0]],
        |v| Ok(ONE_FOUR_K.at(v[0])),
        |s| one_fixed_k(s, 4),
    )
    .witness(one_four_k_witness),
    Family::new(
        "1-k-kp1",
        Theorem,
        K2,
        "S = {1, k, k+1}, k ≥ 2",
        "{1,k,k+1} three-residue theorem",
        "residue table mod 3",
        |v| vec![1, v[0], v[0] + 1],
        |v| Ok(K_KP1.at(v[0])),
        |s| one_k_kpd(s, 1),
    )
    .witness(k_kp1_witness),
    Family::new(
        "1-k-kp3",
        Theorem,
        K3,
        "S = {1, k, k+3}, k ≥ 3",
        "{1,k,k+3} five-residue theorem",
        "residue table mod 5",
        |v| vec![1, v[0], v[0] + 3],
        |v| Ok(K_KP3.at(v[0])),
        |s| one_k_kpd(s, 3),
    )
    .witness(k_kp3_witness),
    // -- conjectures ------------------------------------------------------
    Family::new(
        "1-7-2i",
        Conjecture,
        I11,
        "S = {1, 7, 2i}, i ≥ 11",
        "{1,7,2i}, claimed without proof",
        "i/(2i+7)",
        |v| vec![1, 7, 2 * v[0]],
        |v| Ok(q(v[0], 2 * v[0] + 7)),
        |s| one_l_2i_matcher(s, 7),
    )
    .witness(|v| Some(bs().lit_pow(2, u(v[0] - 1)?).lit(9))),
    Family::new(
        "1-l-2i",
        Conjecture,
        I_ELL,
        "S = {1, l, 2i}, l ≥ 3 odd, 2i ≥ 3l",
        "{1,l,2i} conjecture",
        "i/(2i+l)",
        |v| vec![1, v[1], 2 * v[0]],
        |v| {
            need(odd(v[1]) && 2 * v[0] >= 3 * v[1])?;
            Ok(q(v[0], 2 * v[0] + v[1]))
        },
        |s| match triple(s) {
            Some((1, l, c)) if c % 2 == 0 => vec![vec![c / 2, l]],
            _ => vec![],
        },
    )
    .witness(|v| Some(bs().lit_pow(2, u(v[0] - 1)?).lit(u(v[1] + 2)?))),
    Family::new(
        "1-2k-2kp2l-conj",
        Conjecture,
        K_ELL_CONJ,
        "S = {1, 2k, 2k+2l}, k ≥ 1, l ≥ 1, outside the proven range",
        "{1,2k,2k+2l} conjecture",
        "2k/(4k+2l)",
        |v| vec![1, 2 * v[0], 2 * v[0] + 2 * v[1]],
        |v| {
            need(!(v[1] <= 3 && v[0] >= v[1]))?;
            Ok(q(2 * v[0], 4 * v[0] + 2 * v[1]))
        },
        two_k_matcher,
    )
    .witness(two_k_witness),
    Family::new(
        "1-6-k",
        Conjecture,
        K7,
        "S = {1, 6, k}, k > 6, k ∉ {7, 10, 12, 17}",
        "{1,6,k} seven-residue conjecture",
        "residue table mod 7",
        |v| vec![1, 6, v[0]],
        |v| {
            not_in(v[0], &[7, 10, 12, 17])?;
            Ok(ONE_SIX_K.at(v[0]))
        },
        |s| one_fixed_k(s, 6),
    )
    .witness(one_six_k_witness),
    Family::new(
        "1-8-k",
        Conjecture,
        K9,
        "S = {1, 8, k}, k > 8, k ∉ {9, 10, 14, 16, 18, 23, 25, 32}",
        "{1,8,k} nine-residue conjecture",
        "residue table mod 9",
        |v| vec![1, 8, v[0]],
        |v| {
            not_in(v[0], &[9, 10, 14, 16, 18, 23, 25, 32])?;
            Ok(ONE_EIGHT_K.at(v[0]))
        },
        |s| one_fixed_k(s, 8),
    ),
    Family::new(
        "1-k-kp5",
        Conjecture,
        K6,
        "S = {1, k, k+5}, k ≥ 6, k ∉ {7, 12}",
        "{1,k,k+5} seven-residue conjecture",
        "residue table mod 7",
        |v| vec![1, v[0], v[0] + 5],
        |v| {
            not_in(v[0], &[7, 12])?;
            Ok(K_KP5.at(v[0]))
        },
        |s| one_k_kpd(s, 5),
    ),
    Family::new(
        "1-k-kp7",
        Conjecture,
        K8,
        "S = {1, k, k+7}, k ≥ 8, k ∉ {9, 11, 16, 18, 25}",
        "{1,k,k+7} nine-residue conjecture",
        "residue table mod 9",
        |v| vec![1, v[0], v[0] + 7],
        |v| {
            not_in(v[0], &[9, 11, 16, 18, 25])?;
            Ok(K_KP7.at(v[0]))
        },
        |s| one_k_kpd(s, 7),
    ),
    // -- bounds -----------------------------------------------------------
    Family::new(
        "zhu-4-lower",
        LowerBound,
        AK4,
        "S = {a, a+3k+1, 2a+3k+1}, k ≥ 1, gcd(S) = 1",
        "Zhu, part 4",
        "≥ (a+k)/(3(a+k)+1)",
        |v| vec![v[0], v[0] + 3 * v[1] + 1, 2 * v[0] + 3 * v[1] + 1],
        |v| {
            need(gcd(v[0], 3 * v[1] + 1) == 1)?;
            Ok(q(v[0] + v[1], 3 * (v[0] + v[1]) + 1))
        },
        |s| zhu_matcher(s, 1),
    )
    .sweep(1),
    Family::new(
        "zhu-4-upper",
        UpperBound,
        AK4,
        "S = {a, a+3k+1, 2a+3k+1}, k ≥ 1, gcd(S) = 1",
        "Zhu, part 4",
        "≤ (a+2k)/(3(a+2k)+1)",
        |v| vec![v[0], v[0] + 3 * v[1] + 1, 2 * v[0] + 3 * v[1] + 1],
        |v| {
            need(gcd(v[0], 3 * v[1] + 1) == 1)?;
            Ok(q(v[0] + 2 * v[1], 3 * (v[0] + 2 * v[1]) + 1))
        },
        |s| zhu_matcher(s, 1),
    )
    .sweep(1),
    Family::new(
        "zhu-5-lower",
        LowerBound,
        AK,
        "S = {a, a+3k+2, 2a+3k+2}, k ≥ 1, gcd(S) = 1",
        "Zhu, part 5",
        "≥ (a+2k+1)/(3(a+2k+2)+1)",
        |v| vec![v[0], v[0] + 3 * v[1] + 2, 2 * v[0] + 3 * v[1] + 2],
        |v| {
            need(gcd(v[0], 3 * v[1] + 2) == 1)?;
            Ok(q(v[0] + 2 * v[1] + 1, 3 * (v[0] + 2 * v[1] + 2) + 1))
        },
        |s| zhu_matcher(s, 2),
    )
    .sweep(1),
    Family::new(
        "zhu-5-upper",
        UpperBound,
        AK,
        "S = {a, a+3k+2, 2a+3k+2}, k ≥ 1, gcd(S) = 1",
        "Zhu, part 5",
        "≤ (a+2k+2)/(3(a+2k+2)+1)",
        |v| vec![v[0], v[0] + 3 * v[1] + 2, 2 * v[0] + 3 * v[1] + 2],
        |v| {
            need(gcd(v[0], 3 * v[1] + 2) == 1)?;
            Ok(q(v[0] + 2 * v[1] + 2, 3 * (v[0] + 2 * v[1] + 2) + 1))
        },
        |s| zhu_matcher(s, 2),
    )
    .sweep(1),
    Family::new(
        "zhu-6-lower",
        LowerBound,
        ABC,
        "S = {a, b, c}, a < b < c, gcd(S) = 1, not all odd, c ≠ a+b, S ≠ {1,2,3k}",
        "Zhu, part 6",
        "≥ 1/3",
        |v| vec![v[0], v[1], v[2]],
        |v| {
            zhu_6(v)?;
            Ok(q(1, 3))
        },
        abc_matcher,
    )
    .sweep(2),
    Family::new(
        "zhu-6-upper",
        UpperBound,
        ABC,
        "S = {a, b, c}, a < b < c, gcd(S) = 1, not all odd, c ≠ a+b, S ≠ {1,2,3k}",
        "Zhu, part 6",
        "< 1/2",
        |v| vec![v[0], v[1], v[2]],
        |v| {
            zhu_6(v)?;
            Ok(q(1, 2))
        },
        abc_matcher,
    )
    .sweep(2)
    .strict(),
    Family::new(
        "zhu-7-lower",
        LowerBound,
        ABC,
        "as zhu-6, and also c ≠ 2b, b ≠ 2a, c ≠ 2a; finitely many unnamed exceptions",
        "Zhu, part 7",
        "≥ 3/8",
        |v| vec![v[0], v[1], v[2]],
        |v| {
            zhu_6(v)?;
            need(v[2] != 2 * v[1] && v[1] != 2 * v[0] && v[2] != 2 * v[0])?;
            Ok(q(3, 8))
        },
        abc_matcher,
    )
    .sweep(2)
    .finding(),
    // -- limits -----------------------------------------------------------
    Family::new(
        "limit-1-odd-2k",
        Limit,
        IK_LIMIT,
        "S = {1, 2i+1, 2k}, i ≥ 1, k ≥ 1; limit as k → ∞",
        "asymptotic, odd middle distance",
        "→ 1/2; finite k: ≥ k/(2k+2i+1)",
        |v| vec![1, 2 * v[1] + 1, 2 * v[0]],
        |v| Ok(q(v[0], 2 * v[0] + 2 * v[1] + 1)),
        |s| match triple(s) {
            Some((1, b, c)) if odd(b) && !odd(c) => vec![vec![c / 2, (b - 1) / 2]],
            Some((1, b, c)) if !odd(b) && odd(c) => vec![vec![b / 2, (c - 1) / 2]],
            _ => vec![],
        },
    )
    .witness(|v| Some(bs().lit_pow(2, u(v[0] - 1)?).lit(u(2 * v[1] + 3)?)))
    .limit(|_| q(1, 2)),
    Family::new(
        "limit-1-2i-k",
        Limit,
        IK_LIMIT,
        "S = {1, 2i, k}, i ≥ 1, k = (2i+1)q + r with q ≥ 1, 1 ≤ r ≤ 2i; limit as k → ∞",
        "asymptotic, even middle distance",
        "→ i/(2i+1); finite k: ≥ (iq-i+1)/((2i+1)q+r+1)",
        |v| vec![1, 2 * v[1], v[0]],
        |v| {
            let (k, i) = (v[0], v[1]);
            let (qq, r) = (k / (2 * i + 1), k % (2 * i + 1));
            need(qq >= 1 && r >= 1 && k != 2 * i)?;
            Ok(q(i * qq - i + 1, (2 * i + 1) * qq + r + 1))
        },
        |s| match triple(s) {
            Some((1, b, c)) => {
                let mut out = vec![];
                if !odd(b) {
                    out.push(vec![c, b / 2]);
                }
                if !odd(c) {
                    out.push(vec![b, c / 2]);
                }
                out
            }
            _ => vec![],
        },
    )
    .witness(|v| {
        let (k, i) = (v[0], v[1]);
        let (qq, r) = (k / (2 * i + 1), k % (2 * i + 1));
        let body = bs().lit_pow(2, u(i - 1)?).lit(3);
        Some(bs().group_pow(body, u(qq - 1)?).lit(u(2 * i + 2 + r)?))
    })
    .limit(|v| q(v[1], 2 * v[1] + 1)),
    Family::new(
        "limit-1-k-kp2i1",
        Limit,
        IK_LIMIT0,
        "S = {1, k, k+2i+1}, i ≥ 0, k ≥ 2; limit as k → ∞",
        "asymptotic, odd gap",
        "→ (i+1)/(2i+3); finite k: ≥ ((i+1)(q-1)+1)/((2i+3)q+r)",
        |v| vec![1, v[0], v[0] + 2 * v[1] + 1],
        |v| {
            let (k, i) = (v[0], v[1]);
            let n = k + 2 * i + 2;
            let (qq, r) = (n / (2 * i + 3), n % (2 * i + 3));
            Ok(q((i + 1) * (qq - 1) + 1, (2 * i + 3) * qq + r))
        },
        |s| match triple(s) {
            Some((1, b, c)) if odd(c - b) => vec![vec![b, (c - b - 1) / 2]],
            _ => vec![],
        },
    )
    .witness(|v| {
        let (k, i) = (v[0], v[1]);
        let n = k + 2 * i + 2;
        let (qq, r) = (n / (2 * i + 3), n % (2 * i + 3));
        let body = bs().lit_pow(2, u(i)?).lit(3);
        Some(bs().group_pow(body, u(qq - 1)?).lit(u(2 * i + 3 + r)?))
    })
    .limit(|v| q(v[1] + 1, 2 * v[1] + 3)),
];

// ---------------------------------------------------------------------------
// matchers and witnesses shared by several entries

fn clz_matcher(s: &[u32]) -> Vec<Vec<P>> {
    match missing(s)[..] {
        [k] => vec![vec![*s.last().unwrap() as P, k]],
        _ => vec![],
    }
}

fn lam_lin_13_matcher(s: &[u32]) -> Vec<Vec<P>> {
    let miss = missing(s);
    if miss.is_empty() || !is_run(&miss) {
        return vec![];
    }
    let (k, k2) = (miss[0], miss[miss.len() - 1]);
    vec![vec![*s.last().unwrap() as P, k, k2 - k]]
}

fn lam_lin_45_matcher(s: &[u32]) -> Vec<Vec<P>> {
    let miss = missing(s);
    if miss.is_empty() || !is_run(&miss) {
        return vec![];
    }
    let (k, k2) = (miss[0], miss[miss.len() - 1]);
    let m = *s.last().unwrap() as P;
    range(1, k2 / k).map(|sm| vec![m, k, sm, k2 - sm * k]).collect()
}

fn pair_matcher(s: &[u32]) -> Vec<Vec<P>> {
    match *s {
        [a, b] => vec![vec![a as P, b as P]],
        _ => vec![],
    }
}

fn abc_matcher(s: &[u32]) -> Vec<Vec<P>> {
    match triple(s) {
        Some((a, b, c)) => vec![vec![a, b, c]],
        None => vec![],
    }
}

/// `{a, a+3k+off, 2a+3k+off}`.
fn zhu_matcher(s: &[u32], off: P) -> Vec<Vec<P>> {
    match triple(s) {
        Some((a, b, c)) if c == a + b && (b - a - off) % 3 == 0 && b - a - off >= 3 => {
            vec![vec![a, (b - a - off) / 3]]
        }
        _ => vec![],
    }
}

fn zhu_6(v: &[P]) -> Result<(), Outside> {
    let (a, b, c) = (v[0], v[1], v[2]);
    need(a < b && b < c && gcd3(a, b, c) == 1)?;
    need(!(odd(a) && odd(b) && odd(c)))?;
    need(c != a + b)?;
    need(!(a == 1 && b == 2 && c % 3 == 0))
}

fn one_l_2i_matcher(s: &[u32], l: P) -> Vec<Vec<P>> {
    match triple(s) {
        Some((1, b, c)) if b == l && c % 2 == 0 => vec![vec![c / 2]],
        _ => vec![],
    }
}

fn two_k_matcher(s: &[u32]) -> Vec<Vec<P>> {
    match triple(s) {
        Some((1, b, c)) if b % 2 == 0 && c % 2 == 0 => vec![vec![b / 2, (c - b) / 2]],
        _ => vec![],
    }
}

/// `2^{k-1} 3 2^{k-1} (2l+1)` for `1 ≤ l ≤ k`, `k ≥ 2`; `3` for `k = l = 1`.
fn two_k_witness(v: &[P]) -> Option<BlockStructure> {
    let (k, l) = (v[0], v[1]);
    if k == 1 && l == 1 {
        return Some(BlockStructure::literal(3));
    }
    if !(k >= 2 && l <= k) {
        return None;
    }
    let e = u(k - 1)?;
    Some(bs().lit_pow(2, e).lit(3).lit_pow(2, e).lit(u(2 * l + 1)?))
}

/// Translates `2j` (odd `k`), or `2j` / `2j+1` split at `k/2` (even `k`), of
/// the multiples of `k(l+1)`.
fn one_and_multiples_witness(v: &[P]) -> Option<BlockStructure> {
    let (k, l) = (v[0], v[1]);
    let period = u64::try_from(k * (l + 1)).ok()?;
    let positions: Vec<u64> =
        (0..k as u64).map(|j| if k % 2 == 0 && j >= k as u64 / 2 { 2 * j + 1 } else { 2 * j }).collect();
    Some(BlockList::from_positions(&positions, period)?.compress())
}

fn two_three(e: P) -> Option<BlockStructure> {
    Some(bs().group_pow(bs().lit(2).lit(3), u(e)?))
}

fn one_four_k_witness(v: &[P]) -> Option<BlockStructure> {
    let k = v[0];
    let i = k / 5;
    match k % 5 {
        0 => Some(two_three(i - 1)?.lit_pow(3, 2)),
        2 => Some(two_three(i)?.lit(3)),
        3 => Some(two_three(i - 1)?.lit_pow(3, 3)),
        _ => two_three(1),
    }
}

fn k_kp1_witness(v: &[P]) -> Option<BlockStructure> {
    let k = v[0];
    let i = k / 3;
    match k % 3 {
        0 => {
            let e = u(i - 1)?;
            Some(bs().lit(2).lit_pow(3, e).lit(5).lit_pow(3, e))
        }
        1 => Some(BlockStructure::literal(3)),
        // Exponent i, not i-1: only `3^i 4` has density (k+1)/(3k+6).
        _ => Some(bs().lit_pow(3, u(i)?).lit(4)),
    }
}

fn k_kp3_witness(v: &[P]) -> Option<BlockStructure> {
    let k = v[0];
    let i = k / 5;
    match k % 5 {
        // Three trailing 3s: four would give density (2i+2)/(5i+7).
        0 => Some(two_three(i - 1)?.lit_pow(3, 3)),
        1 => two_three(1),
        2 => Some(two_three(i)?.lit_pow(3, 2)),
        3 => Some(two_three(i)?.lit(2).group_pow(bs().lit(2).lit(3), u(i)?).lit(2).lit(5)),
        _ => Some(two_three(i + 1)?.lit(3)),
    }
}

/// Extremal sets for `k ≥ 21`, where the tabulated structures apply.
fn one_six_k_witness(v: &[P]) -> Option<BlockStructure> {
    let k = v[0];
    if k < 21 {
        return None;
    }
    let i = k / 7;
    let two_two_three = |e: P| Some(bs().group_pow(bs().lit(2).lit(2).lit(3), u(e)?));
    match k % 7 {
        0 => Some(two_two_three(i - 2)?.group_pow(bs().lit(2).lit(3), 3)),
        2 => Some(two_two_three(i - 1)?.group_pow(bs().lit(2).lit(3), 2)),
        // The tabulated `(2 2 3)^{i-1} 2 3 4 3` is not independent and has
        // the wrong density; this arrangement achieves (3i+1)/(7i+4).
        3 => Some(two_two_three(i - 3)?.group_pow(bs().lit(2).lit(3), 5)),
        4 => Some(two_two_three(i)?.lit(2).lit(3)),
        5 => Some(two_two_three(i - 2)?.group_pow(bs().lit(2).lit(3), 4)),
        _ => Some(bs().lit(2).lit(2).lit(3)),
    }
}
