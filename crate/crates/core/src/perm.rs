//! Permutations of `[n] = {0, ..., n}` multiplied left to right, so that
//! `a.compose(b)` sends `i` to `b(a(i))`.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `[n]` in one-line image form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..=n).collect(),
        }
    }

    /// `images[i]` is the image of `i`. The ground set is `[images.len() - 1]`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation {
                n: 0,
                detail: "empty image list".into(),
            });
        }
        let n = images.len() - 1;
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x > n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation {
                    n,
                    detail: format!("{images:?}"),
                });
            }
        }
        Ok(Permutation { images })
    }

    /// Product of the given cycles (which must be disjoint).
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..=n).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x > n || std::mem::replace(&mut touched[x], true) {
                    return Err(Error::InvalidPermutation {
                        n,
                        detail: format!("cycles {cycles:?} are not disjoint on [0, {n}]"),
                    });
                }
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(0 2)(5 6 4)"`; `"()"` or `""` is
    /// the identity.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Self::from_cycles(n, &parse_cycles(text)?)
    }

    pub fn n(&self) -> usize {
        self.images.len() - 1
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        })
    }

    /// `self` followed by `tau`, in place.
    pub fn mul_transposition(&mut self, tau: Transposition) {
        for x in self.images.iter_mut() {
            *x = tau.apply(*x);
        }
    }

    /// `tau` followed by `self`, in place.
    pub fn premul_transposition(&mut self, tau: Transposition) {
        self.images.swap(tau.lo, tau.hi);
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycles in normal form: each starts at its minimum and cycles are
    /// sorted by minimum. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut count = 0;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        count
    }

    pub fn is_full_cycle(&self) -> bool {
        self.cycle_count() == 1
    }

    /// Whether `a` and `b` lie on the same cycle.
    pub fn same_cycle(&self, a: usize, b: usize) -> bool {
        let mut x = self.images[a];
        loop {
            if x == b {
                return true;
            }
            if x == a {
                return a == b;
            }
            x = self.images[x];
        }
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points suppressed; the identity is `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write_cycle(f, &cycle)?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

fn write_cycle(f: &mut fmt::Formatter<'_>, cycle: &[usize]) -> fmt::Result {
    f.write_str("(")?;
    for (k, x) in cycle.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// Splits `"(a b c)(d e)"` into its cycles. Whitespace and commas inside a
/// cycle are both accepted as separators.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' at {rest:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
        let entries = parse_numbers(&body[..close])?;
        if !entries.is_empty() {
            cycles.push(entries);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

pub(crate) fn parse_numbers(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a nonnegative integer: {s:?}")))
        })
        .collect()
}

/// A transposition `(lo hi)` with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    lo: usize,
    hi: usize,
}

impl Transposition {
    /// Normalizes the endpoints; `a == b` is rejected.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Transposition { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Transposition { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(Error::InvalidTransposition(a, b)),
        }
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    #[inline]
    pub fn apply(self, x: usize) -> usize {
        if x == self.lo {
            self.hi
        } else if x == self.hi {
            self.lo
        } else {
            x
        }
    }

    pub fn moves(self, x: usize) -> bool {
        x == self.lo || x == self.hi
    }

    pub fn to_permutation(self, n: usize) -> Result<Permutation> {
        if self.hi > n {
            return Err(Error::OutOfRange(format!("{self} is not in Sym([{n}])")));
        }
        let mut p = Permutation::identity(n);
        p.premul_transposition(self);
        Ok(p)
    }

    /// Conjugation by `i -> n - i`.
    pub fn reflect_conjugate(self, n: usize) -> Self {
        Transposition {
            lo: n - self.hi,
            hi: n - self.lo,
        }
    }

    /// The transposition `(p(lo) p(hi))`, renormalized.
    pub fn map_endpoints(self, p: impl Fn(usize) -> usize) -> Self {
        Transposition::new(p(self.lo), p(self.hi)).expect("a bijection keeps endpoints distinct")
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Cut,
    Join,
}

/// Whether multiplying `rho` on the right by `tau` merges two cycles
/// (join) or splits one (cut).
pub fn classify_factor(rho: &Permutation, tau: Transposition) -> FactorKind {
    if rho.same_cycle(tau.lo, tau.hi) {
        FactorKind::Cut
    } else {
        FactorKind::Join
    }
}

/// A full cycle `(s_0 s_1 ... s_n)` recorded by its visit word, `s_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FullCycle {
    word: Vec<usize>,
}

impl FullCycle {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        if word.first() != Some(&0) {
            return Err(Error::NotFullCycle(format!(
                "visit word {word:?} must begin with 0"
            )));
        }
        Permutation::from_images(word.clone())
            .map_err(|_| Error::NotFullCycle(format!("{word:?} is not a permutation of [0, {}]", word.len() - 1)))?;
        Ok(FullCycle { word })
    }

    /// `sigma_n = (0 1 ... n)`.
    pub fn canonical(n: usize) -> Self {
        FullCycle {
            word: (0..=n).collect(),
        }
    }

    /// Accepts `"0 2 3 5 6 4 1"`, optionally parenthesized or comma separated.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(trimmed);
        Self::new(parse_numbers(inner)?)
    }

    pub fn from_permutation(p: &Permutation) -> Result<Self> {
        let mut word = Vec::with_capacity(p.n() + 1);
        let mut x = 0;
        loop {
            word.push(x);
            x = p.apply(x);
            if x == 0 {
                break;
            }
        }
        if word.len() != p.n() + 1 {
            return Err(Error::NotFullCycle(p.to_string()));
        }
        Ok(FullCycle { word })
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut images = vec![0; self.word.len()];
        for (i, &s) in self.word.iter().enumerate() {
            images[s] = self.word[(i + 1) % self.word.len()];
        }
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.word.len() - 1
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `positions()[v]` is the index `i` with `s_i = v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.word.len()];
        for (i, &s) in self.word.iter().enumerate() {
            pos[s] = i;
        }
        pos
    }

    /// Index `N` with `s_N = n`.
    pub fn peak(&self) -> usize {
        self.positions()[self.n()]
    }

    /// `0 < s_1 < ... < s_N = n > s_{N+1} > ... > s_n`.
    pub fn is_unimodal(&self) -> bool {
        let peak = self.peak();
        self.word[..=peak].windows(2).all(|w| w[0] < w[1])
            && self.word[peak..].windows(2).all(|w| w[0] > w[1])
    }

    /// Smallest `i` with `s_{i-1} > s_i < s_{i+1}`, if any.
    pub fn first_valley(&self) -> Option<usize> {
        (1..self.n()).find(|&i| self.word[i - 1] > self.word[i] && self.word[i] < self.word[i + 1])
    }

    /// `gamma sigma gamma` with `gamma(i) = n - i`.
    pub fn reflect_conjugate(&self) -> Self {
        let n = self.n();
        let p = self.to_permutation();
        let images = (0..=n).map(|i| n - p.apply(n - i)).collect();
        Self::from_permutation(&Permutation { images }).expect("conjugate of a full cycle")
    }
}

impl fmt::Display for FullCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_cycle(f, &self.word)
    }
}

/// The `2^{n-1}` unimodal cycles of `[n]`, one per ascent set
/// `{s_1, ..., s_{N-1}} ⊆ [1, n-1]`, in order of the ascent-set bitmask.
pub fn unimodal_cycles(n: usize) -> Result<impl Iterator<Item = FullCycle>> {
    if n == 0 || n > 62 {
        return Err(Error::OutOfRange(format!("unimodal_cycles needs 1 <= n <= 62, got {n}")));
    }
    Ok((0u64..1 << (n - 1)).map(move |mask| {
        let inner = 1..n;
        let rising = inner.clone().filter(|v| mask >> (v - 1) & 1 == 1);
        let falling = inner.rev().filter(|v| mask >> (v - 1) & 1 == 0);
        let word = std::iter::once(0)
            .chain(rising)
            .chain(std::iter::once(n))
            .chain(falling)
            .collect();
        FullCycle { word }
    }))
}

/// All `n!` full cycles on `[n]`, with visit words in lexicographic order.
pub fn full_cycles(n: usize) -> impl Iterator<Item = FullCycle> {
    let mut tail: Option<Vec<usize>> = Some((1..=n).collect());
    std::iter::from_fn(move || {
        let current = tail.take()?;
        let mut next = current.clone();
        if next_permutation(&mut next) {
            tail = Some(next);
        }
        let mut word = Vec::with_capacity(n + 1);
        word.push(0);
        word.extend(current);
        Some(FullCycle { word })
    })
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).expect("suffix has a larger entry");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Whether every cycle of `pi` is a window `(s_i s_{i+1} ... s_j)` of the
/// visit word of `sigma` (fixed points are windows of length one).
pub fn is_sigma_contiguous(pi: &Permutation, sigma: &FullCycle) -> Result<bool> {
    if pi.n() != sigma.n() {
        return Err(Error::SizeMismatch(pi.n(), sigma.n()));
    }
    let pos = sigma.positions();
    let word = sigma.word();
    for cycle in pi.cycles() {
        let start = cycle.iter().map(|&v| pos[v]).min().expect("cycles are nonempty");
        let end = start + cycle.len() - 1;
        if end > sigma.n() {
            return Ok(false);
        }
        for i in start..=end {
            let expected = if i == end { word[start] } else { word[i + 1] };
            if pi.apply(word[i]) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
