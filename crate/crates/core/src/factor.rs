//! Minimal transposition factorizations, their lower and upper sequences,
//! enumeration of `F_sigma`, the restricted families over `sigma_n`, and the
//! rotation `phi_k` on simple factorizations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parking::{MajorSequence, ParkingFunction};
use crate::perm::{parse_cycles, FullCycle, Permutation, Transposition};
use crate::poly::{BivariatePoly, TermCounter};

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A sequence of transpositions on `[n]`, multiplied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "FactorizationRepr", try_from = "FactorizationRepr")]
pub struct Factorization {
    n: usize,
    factors: Vec<Transposition>,
}

#[derive(Serialize, Deserialize)]
struct FactorizationRepr {
    n: usize,
    factors: Vec<[usize; 2]>,
}

impl From<Factorization> for FactorizationRepr {
    fn from(f: Factorization) -> Self {
        FactorizationRepr {
            n: f.n,
            factors: f.factors.iter().map(|t| [t.lo(), t.hi()]).collect(),
        }
    }
}

impl TryFrom<FactorizationRepr> for Factorization {
    type Error = Error;

    fn try_from(r: FactorizationRepr) -> Result<Self> {
        let factors = r
            .factors
            .iter()
            .map(|&[a, b]| Transposition::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Factorization::new(r.n, factors)
    }
}

/// Union-find over `[n]`, used for the forest test and the join prefilter.
#[derive(Clone, Debug)]
struct Components {
    parent: Vec<usize>,
}

impl Components {
    fn new(size: usize) -> Self {
        Components {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they already agreed.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl Factorization {
    pub fn new(n: usize, factors: Vec<Transposition>) -> Result<Self> {
        if let Some(t) = factors.iter().find(|t| t.hi() > n) {
            return Err(Error::OutOfRange(format!("{t} is not a transposition of [0, {n}]")));
        }
        Ok(Factorization { n, factors })
    }

    pub fn empty(n: usize) -> Self {
        Factorization { n, factors: Vec::new() }
    }

    /// Parses `"(1 2)(3 5)..."` on the ground set `[n]`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let factors = parse_cycles(text)?
            .into_iter()
            .map(|c| match c[..] {
                [a, b] => Transposition::new(a, b),
                _ => Err(Error::Parse(format!("factor {c:?} is not a transposition"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, factors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Transposition] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> Permutation {
        let mut p = Permutation::identity(self.n);
        for &t in &self.factors {
            p.mul_transposition(t);
        }
        p
    }

    /// True when the product is `pi` and the factor graph is a forest whose
    /// trees span exactly the cycles of `pi`.
    pub fn is_minimal_for(&self, pi: &Permutation) -> bool {
        if pi.n() != self.n || self.product() != *pi {
            return false;
        }
        let mut comps = Components::new(self.n + 1);
        if !self.factors.iter().all(|t| comps.union(t.lo(), t.hi())) {
            return false;
        }
        let by_graph = pi
            .cycles()
            .iter()
            .all(|c| c.iter().all(|&v| comps.find(v) == comps.find(c[0])));
        let by_length = self.factors.len() == self.n + 1 - pi.cycle_count();
        debug_assert_eq!(by_graph, by_length, "forest test and length test disagree on {self}");
        by_graph
    }

    /// The full cycle this factorization is minimal for, if any.
    pub fn full_cycle(&self) -> Result<FullCycle> {
        let product = self.product();
        if self.factors.len() != self.n || !product.is_full_cycle() {
            return Err(Error::NotMinimal(self.to_string()));
        }
        FullCycle::from_permutation(&product)
    }

    pub fn lower(&self) -> Vec<usize> {
        self.factors.iter().map(|t| t.lo()).collect()
    }

    pub fn upper(&self) -> Vec<usize> {
        self.factors.iter().map(|t| t.hi()).collect()
    }

    pub fn lower_parking(&self) -> Result<ParkingFunction> {
        self.full_cycle()?;
        ParkingFunction::new(self.lower())
    }

    pub fn upper_major(&self) -> Result<MajorSequence> {
        self.full_cycle()?;
        MajorSequence::new(self.upper())
    }

    pub fn area_lower(&self) -> Result<usize> {
        self.full_cycle()?;
        Ok(binom2(self.n) - self.lower().iter().sum::<usize>())
    }

    pub fn area_upper(&self) -> Result<usize> {
        self.full_cycle()?;
        Ok(self.upper().iter().sum::<usize>() - binom2(self.n))
    }

    /// `sum (b_i - a_i)`, which is `area_lower + area_upper`.
    pub fn total_difference(&self) -> Result<usize> {
        self.full_cycle()?;
        Ok(self.factors.iter().map(|t| t.hi() - t.lo()).sum())
    }

    /// The 1-based position of the factor `(0 n)`, if present.
    pub fn simple_index(&self) -> Option<usize> {
        let top = Transposition::new(0, self.n).ok()?;
        let mut hits = self.factors.iter().enumerate().filter(|(_, &t)| t == top);
        let first = hits.next().map(|(k, _)| k + 1);
        debug_assert!(hits.next().is_none(), "(0 n) repeated in {self}");
        first
    }

    pub fn is_simple(&self) -> bool {
        self.simple_index().is_some()
    }

    /// Conjugation by `i -> n - i`; a factorization of `sigma` becomes one
    /// of `gamma sigma gamma`.
    pub fn reflect_conjugate(&self) -> Self {
        Factorization {
            n: self.n,
            factors: self.factors.iter().map(|t| t.reflect_conjugate(self.n)).collect(),
        }
    }

    /// Reflection followed by reversal; maps `F_n` to itself.
    pub fn reflect_reverse(&self) -> Self {
        let mut f = self.reflect_conjugate();
        f.factors.reverse();
        f
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("()");
        }
        for t in &self.factors {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Parses with `n` taken as the number of factors, the length of a minimal
/// factorization of a full cycle.
impl FromStr for Factorization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = parse_cycles(s)?.len();
        Self::parse(n, s)
    }
}

/// Depth-first enumeration of the minimal factorizations of a permutation.
///
/// Every factor must be a join. A prefix with product `pi_i` is kept only if
/// `pi_i^{-1} pi` has `c(pi) + i` cycles, which is exactly the condition for
/// it to extend, so the search never walks into a dead end.
pub struct Factorizations {
    target: Permutation,
    target_cycles: usize,
    length: usize,
    candidates: Vec<Transposition>,
    base: usize,
    prefix: Vec<Transposition>,
    products: Vec<Permutation>,
    cursors: Vec<usize>,
    done: bool,
}

impl Factorizations {
    pub fn new(target: &Permutation) -> Self {
        Self::with_prefix(target, &[]).expect("the empty prefix always extends")
    }

    /// Only the factorizations beginning with `prefix`. Splitting on the
    /// first factor partitions the work.
    pub fn with_prefix(target: &Permutation, prefix: &[Transposition]) -> Result<Self> {
        let n = target.n();
        let target_cycles = target.cycle_count();
        let candidates = (0..=n)
            .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
            .map(|(a, b)| Transposition::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        let mut it = Factorizations {
            target: target.clone(),
            target_cycles,
            length: n + 1 - target_cycles,
            candidates,
            base: prefix.len(),
            prefix: Vec::new(),
            products: vec![Permutation::identity(n)],
            cursors: vec![0],
            done: false,
        };
        for &t in prefix {
            if t.hi() > n || it.prefix.len() == it.length || !it.extends(t) {
                return Err(Error::NotMinimal(format!("{t} cannot extend the prefix to a minimal factorization")));
            }
            it.push(t);
        }
        it.cursors = vec![0];
        Ok(it)
    }

    /// The factors that can start a minimal factorization of `target`.
    pub fn first_factors(target: &Permutation) -> Vec<Transposition> {
        let it = Self::new(target);
        it.candidates.iter().copied().filter(|&t| it.extends(t)).collect()
    }

    fn extends(&self, t: Transposition) -> bool {
        let current = self.products.last().expect("nonempty");
        if current.same_cycle(t.lo(), t.hi()) {
            return false;
        }
        let mut next = current.clone();
        next.mul_transposition(t);
        let rest = next.inverse().compose(&self.target).expect("same ground set");
        rest.cycle_count() == self.target_cycles + self.prefix.len() + 1
    }

    fn push(&mut self, t: Transposition) {
        let mut next = self.products.last().expect("nonempty").clone();
        next.mul_transposition(t);
        self.prefix.push(t);
        self.products.push(next);
        self.cursors.push(0);
    }

    fn backtrack(&mut self) {
        if self.prefix.len() == self.base {
            self.done = true;
            return;
        }
        self.prefix.pop();
        self.products.pop();
        self.cursors.pop();
    }
}

impl Iterator for Factorizations {
    type Item = Factorization;

    fn next(&mut self) -> Option<Factorization> {
        while !self.done {
            if self.prefix.len() == self.length {
                let f = Factorization {
                    n: self.target.n(),
                    factors: self.prefix.clone(),
                };
                self.backtrack();
                return Some(f);
            }
            let mut cursor = *self.cursors.last().expect("nonempty");
            let mut found = None;
            while cursor < self.candidates.len() {
                let t = self.candidates[cursor];
                cursor += 1;
                if self.extends(t) {
                    found = Some(t);
                    break;
                }
            }
            *self.cursors.last_mut().expect("nonempty") = cursor;
            match found {
                Some(t) => self.push(t),
                None => self.backtrack(),
            }
        }
        None
    }
}

/// `F_sigma`, each element exactly once.
pub fn enumerate_factorizations(sigma: &FullCycle) -> Factorizations {
    Factorizations::new(&sigma.to_permutation())
}

/// `sum over F_sigma of q^area_L t^area_U`.
pub fn factorization_enumerator(sigma: &FullCycle) -> BivariatePoly {
    let mut counter = TermCounter::new();
    for f in enumerate_factorizations(sigma) {
        let (al, au) = area_pair(&f);
        counter.record(al, au);
    }
    counter.into_poly()
}

fn area_pair(f: &Factorization) -> (u32, u32) {
    let n = f.n;
    let low: usize = f.factors.iter().map(|t| t.lo()).sum();
    let high: usize = f.factors.iter().map(|t| t.hi()).sum();
    ((binom2(n) - low) as u32, (high - binom2(n)) as u32)
}

/// Enumerators of the restricted subfamilies of `F_n = F_{sigma_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedEnumerators {
    /// containing the factor `(0 n)`
    pub simple: BivariatePoly,
    /// lower sequence weakly increasing
    pub increasing: BivariatePoly,
    /// lower sequence weakly decreasing
    pub decreasing: BivariatePoly,
    /// total difference equal to `binom(n+1, 2)`
    pub max_diff: BivariatePoly,
    /// lower sequence a permutation of `[0, n-1]`
    pub perm_lower: BivariatePoly,
}

pub fn restricted_enumerators(n: usize) -> RestrictedEnumerators {
    let mut simple = TermCounter::new();
    let mut increasing = TermCounter::new();
    let mut decreasing = TermCounter::new();
    let mut max_diff = TermCounter::new();
    let mut perm_lower = TermCounter::new();
    let top = n * (n + 1) / 2;
    for f in enumerate_factorizations(&FullCycle::canonical(n)) {
        let (al, au) = area_pair(&f);
        let lower = f.lower();
        if f.is_simple() {
            simple.record(al, au);
        }
        if lower.windows(2).all(|w| w[0] <= w[1]) {
            increasing.record(al, au);
        }
        if lower.windows(2).all(|w| w[0] >= w[1]) {
            decreasing.record(al, au);
        }
        if (al + au) as usize == top {
            max_diff.record(al, au);
        }
        let mut sorted = lower;
        sorted.sort_unstable();
        if sorted.iter().enumerate().all(|(k, &a)| k == a) {
            perm_lower.record(al, au);
        }
    }
    RestrictedEnumerators {
        simple: simple.into_poly(),
        increasing: increasing.into_poly(),
        decreasing: decreasing.into_poly(),
        max_diff: max_diff.into_poly(),
        perm_lower: perm_lower.into_poly(),
    }
}

/// The permutation-lower enumerator read off `F_n(0, t)`.
pub fn perm_lower_by_evaluation(n: usize) -> BivariatePoly {
    factorization_enumerator(&FullCycle::canonical(n)).eval_q(&0.into())
}

/// `phi_k(f) = (tau'_{k+1}, ..., tau'_n, tau_1, ..., tau_{k-1})` where
/// `tau' = (a-1 b-1)`; requires the `k`-th factor (1-based) to be `(0 n)`.
pub fn phi_k(f: &Factorization, k: usize) -> Result<Factorization> {
    let n = f.n;
    let not_simple = || Error::NotSimpleAt {
        k,
        n,
        factorization: f.to_string(),
    };
    if n == 0 || k == 0 || k > f.factors.len() || f.factors[k - 1] != Transposition::new(0, n)? {
        return Err(not_simple());
    }
    let mut factors = Vec::with_capacity(f.factors.len() - 1);
    for &t in &f.factors[k..] {
        if t.lo() == 0 {
            return Err(Error::NotMinimal(format!("{t} after (0 {n}) in {f}")));
        }
        factors.push(Transposition::new(t.lo() - 1, t.hi() - 1)?);
    }
    for &t in &f.factors[..k - 1] {
        if t.hi() == n {
            return Err(Error::NotMinimal(format!("{t} before (0 {n}) in {f}")));
        }
        factors.push(t);
    }
    Factorization::new(n - 1, factors)
}

/// Inverse of `phi_k`: `g` on `[n-1]` becomes
/// `(g_{n-k+1}, ..., g_{n-1}, (0 n), g'_1, ..., g'_{n-k})` with `g' = (a+1 b+1)`.
pub fn phi_k_inverse(g: &Factorization, k: usize, n: usize) -> Result<Factorization> {
    if n == 0 || g.n + 1 != n || g.factors.len() != n - 1 || k == 0 || k > n {
        return Err(Error::OutOfRange(format!(
            "phi_k_inverse needs g in F_(n-1) and 1 <= k <= n (k = {k}, n = {n}, g = {g})"
        )));
    }
    let split = n - k;
    let mut factors = g.factors[split..].to_vec();
    factors.push(Transposition::new(0, n)?);
    factors.extend(
        g.factors[..split]
            .iter()
            .map(|t| Transposition::new(t.lo() + 1, t.hi() + 1).expect("distinct endpoints")),
    );
    Factorization::new(n, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parking::{is_major, is_parking};
    use crate::perm::full_cycles;
    use crate::poly::{catalan_qt, qt_bracket, qt_factorial_product};
    use crate::trees::inversion_enumerator;
    use std::collections::HashSet;

    fn fact(s: &str) -> Factorization {
        s.parse().unwrap()
    }

    fn sigma(s: &str) -> FullCycle {
        FullCycle::parse(s).unwrap()
    }

    fn running_example() -> Factorization {
        fact("(1 2)(3 5)(1 3)(7 8)(0 6)(7 9)(0 7)(1 6)(4 5)")
    }

    fn poly(terms: &[(u32, u32, i64)]) -> BivariatePoly {
        BivariatePoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn products() {
        assert_eq!(fact("(0 1)(0 2)").product(), FullCycle::canonical(2).to_permutation());
        assert!(Factorization::empty(3).product().is_identity());
        assert_eq!(
            fact("(2 3)(4 5)(0 2)(1 2)(4 6)(0 4)").product(),
            FullCycle::canonical(6).to_permutation()
        );
        assert!(running_example().product().is_full_cycle());
    }

    #[test]
    fn minimality() {
        assert!(fact("(0 1)(0 2)").is_minimal_for(&FullCycle::canonical(2).to_permutation()));
        let f = Factorization::parse(1, "(0 1)(0 1)").unwrap();
        assert!(!f.is_minimal_for(&Permutation::identity(1)));
        let f = Factorization::parse(5, "(1 4)(1 5)(3 4)(0 2)(0 4)").unwrap();
        assert!(f.is_minimal_for(&sigma("0 2 4 5 1 3").to_permutation()));
        let f = Factorization::parse(4, "(0 1)(2 3)").unwrap();
        assert!(f.is_minimal_for(&Permutation::parse(4, "(0 1)(2 3)").unwrap()));
        assert!(!f.is_minimal_for(&Permutation::parse(4, "(0 1)").unwrap()));
    }

    #[test]
    fn small_enumerations() {
        let f1: Vec<_> = enumerate_factorizations(&FullCycle::canonical(1)).collect();
        assert_eq!(f1, vec![fact("(0 1)")]);
        let f2: HashSet<_> = enumerate_factorizations(&FullCycle::canonical(2)).collect();
        let expected: HashSet<_> = ["(0 1)(0 2)", "(0 2)(1 2)", "(1 2)(0 1)"].iter().map(|s| fact(s)).collect();
        assert_eq!(f2, expected);
        let f: Vec<_> = enumerate_factorizations(&sigma("0 1 3 2")).collect();
        assert_eq!(f.len(), 16);
        assert!(f.contains(&fact("(0 3)(1 3)(0 2)")));
        assert!(f.contains(&fact("(1 2)(0 1)(2 3)")));
        let f0: Vec<_> = enumerate_factorizations(&FullCycle::canonical(0)).collect();
        assert_eq!(f0, vec![Factorization::empty(0)]);
    }

    #[test]
    fn hurwitz_count_for_every_full_cycle() {
        for n in 1..=5usize {
            let expected = (n as u64 + 1).pow(n as u32 - 1);
            for s in full_cycles(n) {
                let mut seen = HashSet::new();
                for f in enumerate_factorizations(&s) {
                    assert!(f.is_minimal_for(&s.to_permutation()));
                    assert!(is_parking(&f.lower()).unwrap(), "lower of {f} for {s}");
                    assert!(is_major(&f.upper()).unwrap(), "upper of {f} for {s}");
                    assert!(seen.insert(f));
                }
                assert_eq!(seen.len() as u64, expected, "{s}");
            }
        }
        assert_eq!(enumerate_factorizations(&FullCycle::canonical(6)).count(), 16807);
    }

    #[test]
    fn work_splitting_partitions_the_enumeration() {
        let s = sigma("0 2 3 1 4");
        let target = s.to_permutation();
        let mut total = 0;
        for t in Factorizations::first_factors(&target) {
            for f in Factorizations::with_prefix(&target, &[t]).unwrap() {
                assert_eq!(f.factors()[0], t);
                total += 1;
            }
        }
        assert_eq!(total, 125);
        let bad = Transposition::new(0, 1).unwrap();
        assert!(Factorizations::with_prefix(&target, &[bad, bad]).is_err());
    }

    #[test]
    fn sequences_and_areas() {
        let f = running_example();
        assert_eq!(f.lower(), vec![1, 3, 1, 7, 0, 7, 0, 1, 4]);
        assert_eq!(f.upper(), vec![2, 5, 3, 8, 6, 9, 7, 6, 5]);
        assert_eq!((f.area_lower().unwrap(), f.area_upper().unwrap()), (12, 15));
        assert_eq!(f.total_difference().unwrap(), 27);
        let f = fact("(0 1)");
        assert_eq!((f.lower(), f.upper()), (vec![0], vec![1]));
        assert_eq!((f.area_lower().unwrap(), f.area_upper().unwrap(), f.total_difference().unwrap()), (0, 1, 1));
        let f = fact("(0 3)(1 3)(0 2)");
        assert_eq!((f.area_lower().unwrap(), f.area_upper().unwrap()), (2, 5));
        assert!(Factorization::parse(2, "(0 1)(0 1)").unwrap().area_lower().is_err());
    }

    #[test]
    fn enumerator_examples() {
        assert_eq!(
            factorization_enumerator(&FullCycle::canonical(2)),
            poly(&[(1, 2, 1), (0, 3, 1), (0, 2, 1)])
        );
        let e = factorization_enumerator(&sigma("0 1 3 2"));
        assert!(e.coeff(2, 5) > 0.into());
        assert!(e.coeff(0, 3) > 0.into());
        assert_eq!(factorization_enumerator(&FullCycle::canonical(0)), BivariatePoly::one());
    }

    #[test]
    fn canonical_enumerator_matches_trees() {
        for n in 0..=5 {
            assert_eq!(factorization_enumerator(&FullCycle::canonical(n)), inversion_enumerator(n), "n = {n}");
        }
    }

    #[test]
    fn restricted_examples_at_two() {
        let r = restricted_enumerators(2);
        assert_eq!(r.simple, poly(&[(1, 2, 1), (0, 3, 1)]));
        assert_eq!(r.increasing, poly(&[(1, 2, 1), (0, 3, 1)]));
        assert_eq!(r.decreasing, poly(&[(1, 2, 1), (0, 2, 1)]));
        assert_eq!(r.max_diff, poly(&[(0, 3, 1), (1, 2, 1)]));
    }

    #[test]
    fn restricted_families_match_closed_forms() {
        for n in 1..=5u32 {
            let r = restricted_enumerators(n as usize);
            let tn = BivariatePoly::monomial(1, 0, n);
            let prev = factorization_enumerator(&FullCycle::canonical(n as usize - 1));
            assert_eq!(r.simple, &(&BivariatePoly::t() * &qt_bracket(n).unwrap()) * &prev);
            assert_eq!(r.increasing, &tn * &catalan_qt(n as usize));
            assert_eq!(r.decreasing, &tn * &catalan_qt(n as usize).eval_t(&1.into()));
            assert_eq!(r.max_diff, qt_factorial_product(n));
            assert_eq!(r.perm_lower, perm_lower_by_evaluation(n as usize));
        }
    }

    #[test]
    fn phi_examples() {
        let f = fact("(0 1)(0 2)");
        assert_eq!(f.simple_index(), Some(2));
        let g = phi_k(&f, 2).unwrap();
        assert_eq!(g, fact("(0 1)"));
        assert_eq!((g.area_lower().unwrap(), g.area_upper().unwrap()), (0, 1));
        let f = fact("(0 2)(1 2)");
        assert_eq!(phi_k(&f, 1).unwrap(), fact("(0 1)"));
        assert!(matches!(phi_k(&f, 2), Err(Error::NotSimpleAt { .. })));
        assert_eq!(phi_k_inverse(&fact("(0 1)"), 1, 2).unwrap(), f);
    }

    #[test]
    fn phi_round_trips_with_area_shifts() {
        for n in 1..=5 {
            let mut per_k = vec![0u64; n + 1];
            for f in enumerate_factorizations(&FullCycle::canonical(n)) {
                let Some(k) = f.simple_index() else { continue };
                per_k[k] += 1;
                let g = phi_k(&f, k).unwrap();
                assert!(g.full_cycle().unwrap() == FullCycle::canonical(n - 1));
                assert_eq!(f.area_lower().unwrap(), g.area_lower().unwrap() + k - 1);
                assert_eq!(f.area_upper().unwrap(), g.area_upper().unwrap() + n - k + 1);
                assert_eq!(phi_k_inverse(&g, k, n).unwrap(), f);
            }
            let f_prev = (n as u64).pow(n.saturating_sub(2) as u32);
            assert!(per_k[1..].iter().all(|&c| c == f_prev), "each class is in bijection with F_(n-1)");
        }
    }

    #[test]
    fn reflections() {
        for n in 1..=5 {
            let canonical = FullCycle::canonical(n);
            for f in enumerate_factorizations(&canonical) {
                let r = f.reflect_reverse();
                assert_eq!(r.full_cycle().unwrap(), canonical);
                let mut from_lower: Vec<usize> = r.lower().iter().map(|&a| n - a).collect();
                from_lower.reverse();
                assert_eq!(f.upper(), from_lower);
                assert_eq!(r.reflect_reverse(), f);
            }
            for s in full_cycles(n).take(6) {
                for f in enumerate_factorizations(&s).take(20) {
                    assert_eq!(f.reflect_conjugate().full_cycle().unwrap(), s.reflect_conjugate());
                }
            }
        }
    }

    #[test]
    fn text_and_json_forms() {
        let f = running_example();
        assert_eq!(f.to_string(), "(1 2)(3 5)(1 3)(7 8)(0 6)(7 9)(0 7)(1 6)(4 5)");
        let json = serde_json::to_string(&fact("(0 1)(0 2)")).unwrap();
        assert_eq!(json, r#"{"n":2,"factors":[[0,1],[0,2]]}"#);
        assert_eq!(serde_json::from_str::<Factorization>(&json).unwrap(), fact("(0 1)(0 2)"));
        assert!(serde_json::from_str::<Factorization>(r#"{"n":1,"factors":[[0,2]]}"#).is_err());
        assert_eq!(Factorization::empty(0).to_string(), "()");
        assert_eq!(fact("()"), Factorization::empty(0));
        assert_eq!(Factorization::parse(2, "(2 1)").unwrap().to_string(), "(1 2)");
        assert!("(1 2)".parse::<Factorization>().is_err());
        assert!("(0 1 2)".parse::<Factorization>().is_err());
    }
}
