//! Trees on `[n]` rooted at 0 and their inversion statistics.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{BivariatePoly, TermCounter};

/// Rooted tree on `[n]` stored as a parent map. `parent[0] == 0` marks the
/// root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "TreeRepr", try_from = "TreeRepr")]
pub struct LabelledTree {
    parent: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    n: usize,
    parent: Vec<usize>,
}

impl From<LabelledTree> for TreeRepr {
    fn from(t: LabelledTree) -> Self {
        TreeRepr {
            n: t.n(),
            parent: t.parent[1..].to_vec(),
        }
    }
}

impl TryFrom<TreeRepr> for LabelledTree {
    type Error = Error;

    fn try_from(r: TreeRepr) -> Result<Self> {
        if r.parent.len() != r.n {
            return Err(Error::InvalidTree(format!(
                "expected {} parents, got {}",
                r.n,
                r.parent.len()
            )));
        }
        let mut parent = vec![0];
        parent.extend(r.parent);
        LabelledTree::from_parents(parent)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeStats {
    pub inv: usize,
    pub coinv: usize,
    pub depth: usize,
}

impl LabelledTree {
    /// `parent[0]` is ignored and normalized to 0.
    pub fn from_parents(mut parent: Vec<usize>) -> Result<Self> {
        if parent.is_empty() {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        parent[0] = 0;
        let n = parent.len() - 1;
        for (v, &p) in parent.iter().enumerate().skip(1) {
            if p > n || p == v {
                return Err(Error::InvalidTree(format!("bad parent {p} for vertex {v}")));
            }
        }
        if !reaches_root(&parent) {
            return Err(Error::InvalidTree(format!("parent map {parent:?} has a cycle")));
        }
        Ok(LabelledTree { parent })
    }

    /// The isolated root.
    pub fn singleton() -> Self {
        LabelledTree { parent: vec![0] }
    }

    /// Builds the tree whose children lists are given, rooted at 0.
    pub fn from_children(children: &[Vec<usize>]) -> Result<Self> {
        let n = children.len() - 1;
        let mut parent = vec![usize::MAX; n + 1];
        parent[0] = 0;
        for (v, kids) in children.iter().enumerate() {
            for &c in kids {
                if c == 0 || c > n || parent[c] != usize::MAX {
                    return Err(Error::InvalidTree(format!("vertex {c} has two parents or is the root")));
                }
                parent[c] = v;
            }
        }
        if parent.contains(&usize::MAX) {
            return Err(Error::InvalidTree("some vertex has no parent".into()));
        }
        Self::from_parents(parent)
    }

    pub fn n(&self) -> usize {
        self.parent.len() - 1
    }

    /// Parent of `v`; `None` for the root.
    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != 0).then(|| self.parent[v])
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    /// Children lists, each sorted increasingly.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut kids = vec![Vec::new(); self.parent.len()];
        for v in 1..self.parent.len() {
            kids[self.parent[v]].push(v);
        }
        kids
    }

    /// Proper descendants of every vertex, sorted.
    pub fn descendants(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.parent.len()];
        for v in 1..self.parent.len() {
            let mut a = self.parent[v];
            loop {
                out[a].push(v);
                if a == 0 {
                    break;
                }
                a = self.parent[a];
            }
        }
        out
    }

    /// One depth-first pass carrying the ancestor stack: each vertex counts
    /// its larger ancestors (inversions) and smaller ones (coinversions).
    pub fn stats(&self) -> TreeStats {
        let kids = self.children();
        let mut inv = 0;
        let mut coinv = 0;
        let mut ancestors: Vec<usize> = Vec::with_capacity(self.parent.len());
        // (vertex, next child index)
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next == 0 {
                inv += ancestors.iter().filter(|&&a| a > v).count();
                coinv += ancestors.iter().filter(|&&a| a < v).count();
                ancestors.push(v);
            }
            if let Some(&c) = kids[v].get(*next) {
                *next += 1;
                stack.push((c, 0));
            } else {
                stack.pop();
                ancestors.pop();
            }
        }
        TreeStats {
            inv,
            coinv,
            depth: inv + coinv,
        }
    }

    pub fn inv(&self) -> usize {
        self.stats().inv
    }

    pub fn coinv(&self) -> usize {
        self.stats().coinv
    }

    /// Sum of root distances, which equals `inv + coinv`.
    pub fn depth(&self) -> usize {
        self.stats().depth
    }

    pub fn is_path(&self) -> bool {
        self.children().iter().all(|k| k.len() <= 1)
    }

    /// `[-,p_1,...,p_n]`.
    pub fn to_bracket_string(&self) -> String {
        let parts: Vec<String> = std::iter::once("-".to_string())
            .chain(self.parent[1..].iter().map(|p| p.to_string()))
            .collect();
        format!("[{}]", parts.join(","))
    }
}

fn reaches_root(parent: &[usize]) -> bool {
    // 0 = unknown, 1 = on current walk, 2 = reaches root
    let mut state = vec![0u8; parent.len()];
    state[0] = 2;
    for start in 1..parent.len() {
        let mut path = Vec::new();
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = parent[v];
        }
        if state[v] == 1 {
            return false;
        }
        for u in path {
            state[u] = 2;
        }
    }
    true
}

impl fmt::Display for LabelledTree {
    /// `0:-,1:0,2:1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("0:-")?;
        for (v, p) in self.parent.iter().enumerate().skip(1) {
            write!(f, ",{v}:{p}")?;
        }
        Ok(())
    }
}

impl FromStr for LabelledTree {
    type Err = Error;

    /// Accepts `0:-,1:0,2:1` (the `0:-` entry is optional) or the bracket
    /// form `[-,0,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let mut parent = Vec::new();
            for (i, tok) in inner.split(',').map(str::trim).enumerate() {
                if i == 0 && (tok == "-" || tok == "0") {
                    parent.push(0);
                    continue;
                }
                parent.push(
                    tok.parse()
                        .map_err(|_| Error::Parse(format!("bad parent entry {tok:?}")))?,
                );
            }
            return Self::from_parents(parent);
        }
        let mut pairs = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (v, p) = tok
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected vertex:parent, got {tok:?}")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex {v:?}")))?;
            let p = p.trim();
            if v == 0 {
                if p != "-" && p != "0" {
                    return Err(Error::Parse("the root has no parent".into()));
                }
                continue;
            }
            let p: usize = p.parse().map_err(|_| Error::Parse(format!("bad parent {p:?}")))?;
            pairs.push((v, p));
        }
        let n = pairs.len();
        let mut parent = vec![usize::MAX; n + 1];
        parent[0] = 0;
        for (v, p) in pairs {
            if v > n || parent[v] != usize::MAX {
                return Err(Error::Parse(format!("vertex {v} repeated or out of range")));
            }
            parent[v] = p;
        }
        Self::from_parents(parent)
    }
}

/// `(n+1)^{n-1}`, the number of trees on `[n]` (1 for `n = 0`).
pub fn cayley_count(n: usize) -> u64 {
    if n == 0 {
        1
    } else {
        (n as u64 + 1).pow(n as u32 - 1)
    }
}

/// Every tree on `[n]`, by filtering all parent vectors for acyclicity.
/// Costs `n^n`; meant for small `n` and for cross-checking.
pub fn trees_by_parent_vectors(n: usize) -> impl Iterator<Item = LabelledTree> {
    // odometer over parent[1..=n], each digit in [0, n] minus itself
    let mut digits: Option<Vec<usize>> = Some(vec![0; n + 1]);
    std::iter::from_fn(move || loop {
        let current = digits.as_mut()?;
        let candidate = current.clone();
        if !advance_odometer(current, n) {
            digits = None;
        }
        if candidate.iter().enumerate().skip(1).all(|(v, &p)| p != v) && reaches_root(&candidate) {
            return Some(LabelledTree { parent: candidate });
        }
    })
}

fn advance_odometer(digits: &mut [usize], n: usize) -> bool {
    for d in digits.iter_mut().skip(1) {
        if *d < n {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// Decodes the Prüfer sequence of rank `rank` (digits base `n+1`, most
/// significant first) into a tree rooted at 0.
pub fn prufer_unrank(n: usize, rank: u64) -> Result<LabelledTree> {
    if rank >= cayley_count(n) {
        return Err(Error::OutOfRange(format!(
            "rank {rank} >= {} trees on [{n}]",
            cayley_count(n)
        )));
    }
    if n == 0 {
        return Ok(LabelledTree::singleton());
    }
    let base = n as u64 + 1;
    let mut seq = vec![0usize; n - 1];
    let mut r = rank;
    for slot in seq.iter_mut().rev() {
        *slot = (r % base) as usize;
        r /= base;
    }
    Ok(prufer_decode(n, &seq))
}

fn prufer_decode(n: usize, seq: &[usize]) -> LabelledTree {
    let mut degree = vec![1usize; n + 1];
    for &x in seq {
        degree[x] += 1;
    }
    let mut adj = vec![Vec::new(); n + 1];
    for &x in seq {
        let leaf = (0..=n).find(|&v| degree[v] == 1).expect("a leaf exists");
        adj[leaf].push(x);
        adj[x].push(leaf);
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let mut last = (0..=n).filter(|&v| degree[v] == 1);
    let (u, w) = (last.next().expect("two vertices remain"), last.next().expect("two vertices remain"));
    adj[u].push(w);
    adj[w].push(u);

    let mut parent = vec![usize::MAX; n + 1];
    parent[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &c in &adj[v] {
            if parent[c] == usize::MAX {
                parent[c] = v;
                queue.push_back(c);
            }
        }
    }
    LabelledTree { parent }
}

/// The trees with Prüfer ranks in `ranks`; disjoint ranges split the
/// enumeration for independent consumers.
pub fn trees_in_range(n: usize, ranks: Range<u64>) -> impl Iterator<Item = LabelledTree> {
    let end = ranks.end.min(cayley_count(n));
    (ranks.start..end).map(move |r| prufer_unrank(n, r).expect("rank in range"))
}

pub fn trees_by_prufer(n: usize) -> impl Iterator<Item = LabelledTree> {
    trees_in_range(n, 0..cayley_count(n))
}

/// Each tree on `[n]` exactly once: parent-vector filtering for `n <= 4`,
/// Prüfer unranking above.
pub fn enumerate_trees(n: usize) -> Box<dyn Iterator<Item = LabelledTree>> {
    if n <= 4 {
        Box::new(trees_by_parent_vectors(n))
    } else {
        Box::new(trees_by_prufer(n))
    }
}

/// `I_n(q,t) = sum_T q^inv(T) t^coinv(T)` by brute force.
pub fn inversion_enumerator(n: usize) -> BivariatePoly {
    let mut counter = TermCounter::new();
    for tree in enumerate_trees(n) {
        let s = tree.stats();
        counter.record(s.inv as u32, s.coinv as u32);
    }
    counter.into_poly()
}

/// `D_n(q) = sum_T q^depth(T)`, univariate in `q`.
pub fn depth_enumerator(n: usize) -> BivariatePoly {
    let mut counter = TermCounter::new();
    for tree in enumerate_trees(n) {
        counter.record(tree.depth() as u32, 0);
    }
    counter.into_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn tree(s: &str) -> LabelledTree {
        s.parse().unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_trees(0).count(), 1);
        assert_eq!(enumerate_trees(2).count(), 3);
        assert_eq!(enumerate_trees(3).count(), 16);
    }

    #[test]
    fn counts_match_cayley_up_to_seven() {
        for n in 0..=7 {
            assert_eq!(enumerate_trees(n).count() as u64, cayley_count(n), "n = {n}");
        }
    }

    #[test]
    fn both_generators_agree() {
        for n in 0..=5 {
            let a: HashSet<_> = trees_by_parent_vectors(n).collect();
            let b: HashSet<_> = trees_by_prufer(n).collect();
            assert_eq!(a.len() as u64, cayley_count(n));
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn range_split_covers_everything() {
        let n = 5;
        let total = cayley_count(n);
        let mut seen = HashSet::new();
        for start in (0..total).step_by(100) {
            seen.extend(trees_in_range(n, start..start + 100));
        }
        assert_eq!(seen.len() as u64, total);
        assert!(prufer_unrank(n, total).is_err());
    }

    #[test]
    fn statistic_examples() {
        let path = tree("0:-,1:0,2:1");
        assert_eq!(path.stats(), TreeStats { inv: 0, coinv: 3, depth: 3 });
        let star = tree("1:0,2:0,3:0,4:0");
        assert_eq!(star.stats(), TreeStats { inv: 0, coinv: 4, depth: 4 });
        let bent = tree("0:-,1:2,2:0");
        assert_eq!(bent.stats(), TreeStats { inv: 1, coinv: 2, depth: 3 });
    }

    #[test]
    fn every_tree_has_root_coinversions() {
        for n in 0..=6 {
            for t in enumerate_trees(n) {
                let s = t.stats();
                assert_eq!(s.inv + s.coinv, s.depth);
                assert!(s.coinv >= n);
                let by_distance: usize = t.descendants().iter().map(Vec::len).sum();
                assert_eq!(by_distance, s.depth);
            }
        }
    }

    #[test]
    fn max_depth_is_attained_exactly_by_paths() {
        for n in 1..=6 {
            let max = n * (n + 1) / 2;
            for t in enumerate_trees(n) {
                let d = t.depth();
                assert!(d <= max);
                assert_eq!(d == max, t.is_path(), "{t}");
            }
        }
    }

    #[test]
    fn enumerator_pins() {
        assert_eq!(inversion_enumerator(0), BivariatePoly::one());
        assert_eq!(
            inversion_enumerator(2),
            BivariatePoly::from_terms([(0, 2, 1), (0, 3, 1), (1, 2, 1)])
        );
        assert_eq!(
            depth_enumerator(2),
            BivariatePoly::from_terms([(2, 0, 1), (3, 0, 2)])
        );
        assert_eq!(
            depth_enumerator(3),
            BivariatePoly::from_terms([(3, 0, 1), (4, 0, 6), (5, 0, 3), (6, 0, 6)])
        );
    }

    #[test]
    fn depth_is_diagonal_of_inversions() {
        for n in 0..=5 {
            assert_eq!(depth_enumerator(n), inversion_enumerator(n).diagonal());
        }
    }

    #[test]
    fn text_forms() {
        let t = tree("[-,2,0]");
        assert_eq!(t.to_string(), "0:-,1:2,2:0");
        assert_eq!(t.to_bracket_string(), "[-,2,0]");
        assert_eq!(tree(&t.to_string()), t);
        assert!("0:-,1:2,2:1".parse::<LabelledTree>().is_err());
        assert!("1:1".parse::<LabelledTree>().is_err());
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"n":2,"parent":[2,0]}"#);
        assert_eq!(serde_json::from_str::<LabelledTree>(&json).unwrap(), t);
    }

    #[test]
    fn children_round_trip() {
        for t in enumerate_trees(4) {
            assert_eq!(LabelledTree::from_children(&t.children()).unwrap(), t);
        }
    }
}
