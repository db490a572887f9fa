//! Arch diagrams: factorizations drawn with the vertices of a full cycle's
//! visit word along an axis and each factor as a labelled semicircle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::perm::{FullCycle, Transposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub left: usize,
    pub right: usize,
    pub label: usize,
}

impl Arc {
    fn nests(&self, other: &Arc) -> bool {
        self.left <= other.left && other.right <= self.right && self != other
    }

    fn crosses(&self, other: &Arc) -> bool {
        (self.left < other.left && other.left < self.right && self.right < other.right)
            || (other.left < self.left && self.left < other.right && other.right < self.right)
    }
}

/// Arcs on positions `0..=n`, stored in label order. Vertex labels are not
/// kept; a full cycle supplies them on conversion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ArchRepr", try_from = "ArchRepr")]
pub struct ArchDiagram {
    n: usize,
    arcs: Vec<Arc>,
}

#[derive(Serialize, Deserialize)]
struct ArchRepr {
    n: usize,
    arcs: Vec<[usize; 3]>,
}

impl From<ArchDiagram> for ArchRepr {
    fn from(a: ArchDiagram) -> Self {
        ArchRepr {
            n: a.n,
            arcs: a.arcs.iter().map(|e| [e.left, e.right, e.label]).collect(),
        }
    }
}

impl TryFrom<ArchRepr> for ArchDiagram {
    type Error = Error;

    fn try_from(r: ArchRepr) -> Result<Self> {
        let arcs = r
            .arcs
            .iter()
            .map(|&[left, right, label]| Arc { left, right, label })
            .collect();
        ArchDiagram::new(r.n, arcs)
    }
}

impl ArchDiagram {
    /// Checks shape only (`left < right <= n`, labels `1..=m` each once);
    /// see [`is_valid_arch`] for the tree and rotator conditions.
    pub fn new(n: usize, mut arcs: Vec<Arc>) -> Result<Self> {
        arcs.sort_by_key(|a| a.label);
        for (k, a) in arcs.iter().enumerate() {
            if a.label != k + 1 {
                return Err(Error::InvalidArch(format!("labels must be 1..={}", arcs.len())));
            }
            if a.left >= a.right || a.right > n {
                return Err(Error::InvalidArch(format!(
                    "arc ({}, {}) is not inside [0, {n}]",
                    a.left, a.right
                )));
            }
        }
        Ok(ArchDiagram { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Labels read counter-clockwise around position `v` from the axis:
    /// arcs leaving to the right by increasing right end, then arcs
    /// arriving from the left by increasing left end.
    pub fn rotator(&self, v: usize) -> Vec<usize> {
        let mut rightward: Vec<&Arc> = self.arcs.iter().filter(|a| a.left == v).collect();
        rightward.sort_by_key(|a| a.right);
        let mut leftward: Vec<&Arc> = self.arcs.iter().filter(|a| a.right == v).collect();
        leftward.sort_by_key(|a| a.left);
        rightward.iter().chain(&leftward).map(|a| a.label).collect()
    }

    /// Arcs not nested under any other arc, left to right.
    pub fn caps(&self) -> Vec<Arc> {
        let mut caps: Vec<Arc> = self
            .arcs
            .iter()
            .filter(|a| !self.arcs.iter().any(|b| b.nests(a)))
            .copied()
            .collect();
        caps.sort();
        caps
    }

    pub fn is_simple(&self) -> bool {
        self.caps().len() == 1
    }
}

/// Places `s_i` at position `i` and draws factor `k` as an arc labelled `k`.
pub fn sigma_diagram(f: &Factorization, sigma: &FullCycle) -> Result<ArchDiagram> {
    if f.n() != sigma.n() {
        return Err(Error::SizeMismatch(f.n(), sigma.n()));
    }
    let pos = sigma.positions();
    let arcs = f
        .factors()
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let (x, y) = (pos[t.lo()], pos[t.hi()]);
            Arc {
                left: x.min(y),
                right: x.max(y),
                label: k + 1,
            }
        })
        .collect();
    ArchDiagram::new(f.n(), arcs)
}

fn is_tree(a: &ArchDiagram) -> bool {
    if a.arcs.len() != a.n {
        return false;
    }
    let mut parent: Vec<usize> = (0..=a.n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    a.arcs.iter().all(|e| {
        let (x, y) = (find(&mut parent, e.left), find(&mut parent, e.right));
        parent[x] = y;
        x != y
    })
}

fn is_noncrossing(a: &ArchDiagram) -> bool {
    a.arcs
        .iter()
        .enumerate()
        .all(|(i, e)| a.arcs[i + 1..].iter().all(|g| !e.crosses(g)))
}

fn rotators_increase(a: &ArchDiagram) -> bool {
    (0..=a.n).all(|v| a.rotator(v).windows(2).all(|w| w[0] < w[1]))
}

/// Tree, noncrossing (shared endpoints allowed), every rotator increasing.
pub fn is_valid_arch(a: &ArchDiagram) -> bool {
    is_tree(a) && is_noncrossing(a) && rotators_increase(a)
}

/// Factor `k` joins the vertex labels at the ends of arc `k`.
pub fn arch_to_factorization(a: &ArchDiagram, sigma: &FullCycle) -> Result<Factorization> {
    if a.n != sigma.n() {
        return Err(Error::SizeMismatch(a.n, sigma.n()));
    }
    if !is_valid_arch(a) {
        return Err(Error::InvalidArch(format!("{:?}", a.arcs)));
    }
    let word = sigma.word();
    let factors = a
        .arcs
        .iter()
        .map(|e| Transposition::new(word[e.left], word[e.right]))
        .collect::<Result<Vec<_>>>()?;
    Factorization::new(a.n, factors)
}

/// A simple piece of a decomposition together with the original labels of
/// its arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimplePart {
    pub diagram: ArchDiagram,
    /// sorted; local label `i` stands for `labels[i - 1]`
    pub labels: Vec<usize>,
}

impl SimplePart {
    pub fn cap_label(&self) -> usize {
        let cap = self.diagram.caps()[0];
        self.labels[cap.label - 1]
    }
}

/// Splits a valid diagram at its caps. Parts come back left to right, each
/// shifted to start at position 0 and relabelled order-preservingly.
pub fn decompose_simple(a: &ArchDiagram) -> Result<Vec<SimplePart>> {
    if !is_valid_arch(a) {
        return Err(Error::InvalidArch(format!("{:?}", a.arcs)));
    }
    let mut parts = Vec::new();
    for cap in a.caps() {
        let mut under: Vec<Arc> = a
            .arcs
            .iter()
            .filter(|e| cap.left <= e.left && e.right <= cap.right)
            .copied()
            .collect();
        under.sort_by_key(|e| e.label);
        let labels: Vec<usize> = under.iter().map(|e| e.label).collect();
        let arcs = under
            .iter()
            .enumerate()
            .map(|(k, e)| Arc {
                left: e.left - cap.left,
                right: e.right - cap.left,
                label: k + 1,
            })
            .collect();
        parts.push(SimplePart {
            diagram: ArchDiagram::new(cap.right - cap.left, arcs)?,
            labels,
        });
    }
    Ok(parts)
}

/// Places the parts left to right by decreasing cap label and restores the
/// original labels. Input order does not matter.
pub fn recompose(parts: &[SimplePart]) -> Result<ArchDiagram> {
    let mut ordered: Vec<&SimplePart> = parts.iter().collect();
    for p in &ordered {
        if !p.diagram.is_simple() || p.labels.len() != p.diagram.arcs.len() {
            return Err(Error::InvalidArch("every part must be simple with one label per arc".into()));
        }
    }
    ordered.sort_by_key(|p| std::cmp::Reverse(p.cap_label()));
    let mut offset = 0;
    let mut arcs = Vec::new();
    for p in ordered {
        for e in &p.diagram.arcs {
            arcs.push(Arc {
                left: e.left + offset,
                right: e.right + offset,
                label: p.labels[e.label - 1],
            });
        }
        offset += p.diagram.n;
    }
    let out = ArchDiagram::new(offset, arcs)?;
    if !is_valid_arch(&out) {
        return Err(Error::InvalidArch("parts do not recompose to a valid diagram".into()));
    }
    Ok(out)
}

/// All arch diagrams with `n` arcs, built directly from noncrossing
/// spanning trees and their edge labellings.
pub fn enumerate_arch_diagrams(n: usize) -> Vec<ArchDiagram> {
    let edges: Vec<(usize, usize)> = (0..=n)
        .flat_map(|l| (l + 1..=n).map(move |r| (l, r)))
        .collect();
    let mut trees = Vec::new();
    let mut chosen = Vec::new();
    noncrossing_trees(&edges, 0, n, &mut chosen, &mut trees);

    let mut out = Vec::new();
    for tree in trees {
        let mut labels: Vec<usize> = (1..=n).collect();
        loop {
            let arcs = tree
                .iter()
                .zip(&labels)
                .map(|(&(left, right), &label)| Arc { left, right, label })
                .collect();
            let a = ArchDiagram::new(n, arcs).expect("well-formed");
            if rotators_increase(&a) {
                out.push(a);
            }
            if !next_permutation(&mut labels) {
                break;
            }
        }
    }
    out
}

fn noncrossing_trees(
    edges: &[(usize, usize)],
    from: usize,
    n: usize,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if chosen.len() == n {
        let arcs = chosen
            .iter()
            .enumerate()
            .map(|(k, &(left, right))| Arc { left, right, label: k + 1 })
            .collect();
        if is_tree(&ArchDiagram::new(n, arcs).expect("well-formed")) {
            out.push(chosen.clone());
        }
        return;
    }
    for k in from..edges.len() {
        let (l, r) = edges[k];
        let candidate = Arc { left: l, right: r, label: 0 };
        let clash = chosen
            .iter()
            .any(|&(a, b)| candidate.crosses(&Arc { left: a, right: b, label: 0 }));
        if !clash {
            chosen.push((l, r));
            noncrossing_trees(edges, k + 1, n, chosen, out);
            chosen.pop();
        }
    }
}

fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = (1..xs.len()).rev().find(|&i| xs[i - 1] < xs[i]).map(|i| i - 1) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).expect("larger entry exists");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}
