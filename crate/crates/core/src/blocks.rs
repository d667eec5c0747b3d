//! Block notation: a periodic subset of ℤ written as the gaps between
//! consecutive elements, e.g. `(2 3)^5 7 (3 4)^2`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::{DistanceSet, Error, ParseError, Rational};

/// Default upper limit on the number of blocks an expansion may produce.
pub const DEFAULT_EXPANSION_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Term {
    Literal(u32),
    /// `body^exponent`; a one-literal body renders as `n^e`.
    Power(BlockStructure, u32),
}

/// Parsed block notation. Juxtaposition concatenates, `^` repeats.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BlockStructure {
    pub items: Vec<Term>,
}

impl BlockStructure {
    pub fn new(items: Vec<Term>) -> Self {
        BlockStructure { items }
    }

    pub fn literal(n: u32) -> Self {
        BlockStructure { items: vec![Term::Literal(n)] }
    }

    /// Append `n`.
    pub fn lit(mut self, n: u32) -> Self {
        self.items.push(Term::Literal(n));
        self
    }

    /// Append `n^e`; nothing when `e = 0`, a bare literal when `e = 1`.
    pub fn lit_pow(self, n: u32, e: u32) -> Self {
        self.group_pow(BlockStructure::literal(n), e)
    }

    /// Append `(body)^e`; nothing when `e = 0`, the body inline when `e = 1`.
    pub fn group_pow(mut self, body: BlockStructure, e: u32) -> Self {
        match e {
            0 => {}
            1 => self.items.extend(body.items),
            _ => self.items.push(Term::Power(body, e)),
        }
        self
    }

    /// Number of blocks in the expansion (saturating).
    pub fn expanded_len(&self) -> u128 {
        self.items
            .iter()
            .map(|t| match t {
                Term::Literal(_) => 1,
                Term::Power(b, e) => b.expanded_len().saturating_mul(*e as u128),
            })
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    fn expand_into(&self, out: &mut Vec<u32>) {
        for t in &self.items {
            match t {
                Term::Literal(n) => out.push(*n),
                Term::Power(b, e) => {
                    for _ in 0..*e {
                        b.expand_into(out);
                    }
                }
            }
        }
    }
}

impl fmt::Display for BlockStructure {
    /// Canonical rendering; reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_char(' ')?;
            }
            match t {
                Term::Literal(n) => write!(f, "{n}")?,
                Term::Power(b, e) => match b.items.as_slice() {
                    [Term::Literal(n)] => write!(f, "{n}^{e}")?,
                    _ => write!(f, "({b})^{e}")?,
                },
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &'static str) -> ParseError {
        ParseError { offset: self.pos, message }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn int(&mut self, zero_msg: &'static str) -> Result<u32, ParseError> {
        match self.peek() {
            Some(b'0') => return Err(self.err(zero_msg)),
            Some(b'1'..=b'9') => {}
            _ => return Err(self.err("expected a positive integer")),
        }
        let start = self.pos;
        let mut v: u32 = 0;
        while let Some(c @ b'0'..=b'9') = self.peek() {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u32))
                .ok_or(ParseError { offset: start, message: "integer too large" })?;
            self.pos += 1;
        }
        Ok(v)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        self.pos += 1; // '^'
        self.int("zero exponent")
    }

    /// `structure := term (WS term)*`, stopping before `)` or end of input.
    fn structure(&mut self, nested: bool) -> Result<BlockStructure, ParseError> {
        let mut items = Vec::new();
        loop {
            let term = match self.peek() {
                Some(b'(') => {
                    let open = self.pos;
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek() == Some(b')') {
                        return Err(self.err("empty group"));
                    }
                    let body = self.structure(true)?;
                    if self.peek() != Some(b')') {
                        return Err(ParseError { offset: open, message: "unbalanced parenthesis" });
                    }
                    self.pos += 1;
                    if self.peek() != Some(b'^') {
                        return Err(self.err("expected '^' after group"));
                    }
                    Term::Power(body, self.exponent()?)
                }
                None => return Err(self.err("empty input")),
                _ => {
                    let n = self.int("zero block size")?;
                    if self.peek() == Some(b'^') {
                        Term::Power(BlockStructure::literal(n), self.exponent()?)
                    } else {
                        Term::Literal(n)
                    }
                }
            };
            items.push(term);
            let spaced = self.skip_ws();
            match self.peek() {
                None => break,
                Some(b')') if nested => break,
                Some(b')') => return Err(self.err("unbalanced parenthesis")),
                Some(_) if !spaced => return Err(self.err("expected whitespace between terms")),
                Some(_) => {}
            }
        }
        Ok(BlockStructure { items })
    }
}

/// Parse block notation (`INT`, `INT^INT`, `(structure)^INT`, separated by
/// whitespace).
pub fn parse_block_notation(text: &str) -> Result<BlockStructure, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty input"));
    }
    p.structure(false)
}

impl core::str::FromStr for BlockStructure {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_block_notation(s)
    }
}

// ---------------------------------------------------------------------------
// Block lists

/// Gap sizes of one period of a periodic set; each block holds one element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockList {
    sizes: Vec<u32>,
    period: u64,
}

impl BlockList {
    pub fn new(sizes: Vec<u32>) -> Result<Self, Error> {
        if sizes.is_empty() {
            return Err(Error::EmptySet);
        }
        if sizes.contains(&0) {
            return Err(Error::NonPositive(0));
        }
        let period = sizes.iter().map(|&x| x as u64).sum();
        Ok(BlockList { sizes, period })
    }

    /// Block list of the set `{x + k·period}` for the given residues.
    /// Returns `None` when `positions` is empty.
    pub fn from_positions(positions: &[u64], period: u64) -> Option<Self> {
        let mut p: Vec<u64> = positions.iter().map(|&x| x % period).collect();
        p.sort_unstable();
        p.dedup();
        let first = *p.first()?;
        let mut sizes: Vec<u32> = p.windows(2).map(|w| (w[1] - w[0]) as u32).collect();
        sizes.push((first + period - p[p.len() - 1]) as u32);
        Some(BlockList { sizes, period })
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn density(&self) -> Rational {
        Rational::new(self.sizes.len() as i128, self.period as i128)
    }

    /// Element offsets within one period, starting at 0.
    pub fn offsets(&self) -> Vec<u64> {
        let mut acc = 0u64;
        self.sizes
            .iter()
            .map(|&g| {
                let x = acc;
                acc += g as u64;
                x
            })
            .collect()
    }

    /// Witness for `d·S` built from one for `S`: `⋃_{r<d} (d·X + r)`.
    pub fn scaled(&self, d: u32) -> BlockList {
        if d == 1 {
            return self.clone();
        }
        let mut sizes = Vec::with_capacity(self.sizes.len() * d as usize);
        for &g in &self.sizes {
            sizes.extend(core::iter::repeat(1).take(d as usize - 1));
            sizes.push(g * d - (d - 1));
        }
        BlockList { sizes, period: self.period * d as u64 }
    }

    /// Compact notation: greedy detection of repeated runs of up to eight
    /// blocks.
    pub fn compress(&self) -> BlockStructure {
        const MAX_PATTERN: usize = 8;
        let s = &self.sizes;
        let mut out = BlockStructure::default();
        let mut i = 0;
        while i < s.len() {
            let mut best = (1usize, 1u32);
            for len in 1..=MAX_PATTERN.min(s.len() - i) {
                let pat = &s[i..i + len];
                let mut reps = 1u32;
                while i + (reps as usize + 1) * len <= s.len()
                    && &s[i + reps as usize * len..i + (reps as usize + 1) * len] == pat
                {
                    reps += 1;
                }
                if reps >= 2 && len * reps as usize > best.0 * best.1 as usize {
                    best = (len, reps);
                }
            }
            let (len, reps) = best;
            let body = BlockStructure::new(s[i..i + len].iter().map(|&n| Term::Literal(n)).collect());
            out = out.group_pow(body, reps);
            i += len * reps as usize;
        }
        out
    }
}

impl fmt::Display for BlockList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.compress())
    }
}

/// Expand with the default cap of [`DEFAULT_EXPANSION_CAP`] blocks.
pub fn expand_blocks(bs: &BlockStructure) -> Result<BlockList, Error> {
    expand_blocks_capped(bs, DEFAULT_EXPANSION_CAP)
}

pub fn expand_blocks_capped(bs: &BlockStructure, cap: usize) -> Result<BlockList, Error> {
    let len = bs.expanded_len();
    if len > cap as u128 {
        return Err(Error::ExpansionTooLarge { len, cap });
    }
    let mut sizes = Vec::with_capacity(len as usize);
    bs.expand_into(&mut sizes);
    BlockList::new(sizes)
}

pub fn block_density(bl: &BlockList) -> Rational {
    bl.density()
}

/// Outcome of checking a periodic set against `G(S)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Independent,
    /// Two elements of the periodic set (positions measured from an element
    /// at 0) whose difference lies in `S`.
    Violation {
        first: u64,
        second: u64,
        distance: u32,
    },
}

impl Verdict {
    pub fn is_independent(&self) -> bool {
        matches!(self, Verdict::Independent)
    }
}

/// Check that no two elements of the periodic set differ by an element of
/// `S`. Scans pairs at distance ≤ max(S) over ⌈max(S)/period⌉ + 2 periods.
pub fn verify_periodic_independent(bl: &BlockList, s: &DistanceSet) -> Verdict {
    let max = s.max_element() as u64;
    let mut member = vec![false; max as usize + 1];
    for d in s.iter() {
        member[d as usize] = true;
    }
    let periods = max.div_ceil(bl.period) + 2;
    let base = bl.offsets();
    let mut pos = Vec::with_capacity(base.len() * periods as usize);
    for k in 0..periods {
        pos.extend(base.iter().map(|&x| x + k * bl.period));
    }
    // Every violating pair is a translate of one whose first element lies
    // in the first period.
    for (j, &x) in pos.iter().enumerate().take(base.len()) {
        for &y in &pos[j + 1..] {
            let d = y - x;
            if d > max {
                break;
            }
            if member[d as usize] {
                return Verdict::Violation { first: x, second: y, distance: d as u32 };
            }
        }
    }
    Verdict::Independent
}
