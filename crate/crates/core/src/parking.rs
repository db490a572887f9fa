//! Parking functions, major sequences, their labelled Dyck paths, and the
//! statistics defined on them: area, bounce, `pinv`/`copinv` through the
//! `C_i`/`D_i` sets, and `jump`/`cojump` from the parking process.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::parse_numbers;
use crate::poly::{BivariatePoly, TermCounter};
use crate::trees::LabelledTree;

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Sorted test `a'_i <= i - 1` and counting test "at least `i` entries less
/// than `i`"; they must agree.
pub fn is_parking(entries: &[usize]) -> Result<bool> {
    let n = entries.len();
    let mut sorted = entries.to_vec();
    sorted.sort_unstable();
    let by_sort = sorted.iter().enumerate().all(|(k, &a)| a <= k);
    let by_count = (1..=n).all(|i| entries.iter().filter(|&&a| a < i).count() >= i);
    if by_sort != by_count {
        return Err(Error::Internal(format!(
            "parking tests disagree on {entries:?}"
        )));
    }
    Ok(by_sort)
}

/// Sorted test `i <= b'_i <= n` and counting test "at least `i` entries
/// greater than `n - i`" (with every entry at most `n`); they must agree.
pub fn is_major(entries: &[usize]) -> Result<bool> {
    let n = entries.len();
    let mut sorted = entries.to_vec();
    sorted.sort_unstable();
    let by_sort = sorted.iter().enumerate().all(|(k, &b)| k < b && b <= n);
    let by_count = entries.iter().all(|&b| b <= n)
        && (1..=n).all(|i| entries.iter().filter(|&&b| b > n - i).count() >= i);
    if by_sort != by_count {
        return Err(Error::Internal(format!("major tests disagree on {entries:?}")));
    }
    Ok(by_sort)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "SequenceRepr", try_from = "SequenceRepr")]
pub struct ParkingFunction {
    entries: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "SequenceRepr", try_from = "SequenceRepr")]
pub struct MajorSequence {
    entries: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SequenceRepr {
    n: usize,
    entries: Vec<usize>,
    kind: SequenceKind,
}

#[derive(Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum SequenceKind {
    Parking,
    Major,
}

impl From<ParkingFunction> for SequenceRepr {
    fn from(p: ParkingFunction) -> Self {
        SequenceRepr {
            n: p.n(),
            entries: p.entries,
            kind: SequenceKind::Parking,
        }
    }
}

impl From<MajorSequence> for SequenceRepr {
    fn from(m: MajorSequence) -> Self {
        SequenceRepr {
            n: m.n(),
            entries: m.entries,
            kind: SequenceKind::Major,
        }
    }
}

impl TryFrom<SequenceRepr> for ParkingFunction {
    type Error = Error;

    fn try_from(r: SequenceRepr) -> Result<Self> {
        if r.kind != SequenceKind::Parking || r.n != r.entries.len() {
            return Err(Error::Parse("expected a parking record with n entries".into()));
        }
        ParkingFunction::new(r.entries)
    }
}

impl TryFrom<SequenceRepr> for MajorSequence {
    type Error = Error;

    fn try_from(r: SequenceRepr) -> Result<Self> {
        if r.kind != SequenceKind::Major || r.n != r.entries.len() {
            return Err(Error::Parse("expected a major record with n entries".into()));
        }
        MajorSequence::new(r.entries)
    }
}

impl ParkingFunction {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if !is_parking(&entries)? {
            return Err(Error::NotParking(format!("{entries:?}")));
        }
        Ok(ParkingFunction { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `binom(n, 2) - sum a_i`.
    pub fn area(&self) -> usize {
        binom2(self.n()) - self.entries.iter().sum::<usize>()
    }

    /// `(n - a_1, ..., n - a_n)`.
    pub fn complement(&self) -> MajorSequence {
        let n = self.n();
        MajorSequence {
            entries: self.entries.iter().map(|&a| n - a).collect(),
        }
    }

    pub fn sorted(&self) -> Vec<usize> {
        let mut s = self.entries.clone();
        s.sort_unstable();
        s
    }

    pub fn is_increasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    /// Whether the entries are a permutation of `[0, n-1]`.
    pub fn is_permutation(&self) -> bool {
        self.sorted().iter().enumerate().all(|(k, &a)| k == a)
    }

    pub fn to_path(&self) -> LabelledDyckPath {
        LabelledDyckPath::from_sequence(&self.entries, Side::Below)
    }

    pub fn from_path(path: &LabelledDyckPath) -> Result<Self> {
        if path.side != Side::Below {
            return Err(Error::InvalidPath("a parking function needs a path below the diagonal".into()));
        }
        Self::new(path.to_sequence())
    }
}

impl MajorSequence {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if !is_major(&entries)? {
            return Err(Error::NotMajor(format!("{entries:?}")));
        }
        Ok(MajorSequence { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `sum b_i - binom(n, 2)`.
    pub fn area(&self) -> usize {
        self.entries.iter().sum::<usize>() - binom2(self.n())
    }

    pub fn complement(&self) -> ParkingFunction {
        let n = self.n();
        ParkingFunction {
            entries: self.entries.iter().map(|&b| n - b).collect(),
        }
    }

    pub fn to_path(&self) -> LabelledDyckPath {
        LabelledDyckPath::from_sequence(&self.entries, Side::Above)
    }

    pub fn from_path(path: &LabelledDyckPath) -> Result<Self> {
        if path.side != Side::Above {
            return Err(Error::InvalidPath("a major sequence needs a path above the diagonal".into()));
        }
        Self::new(path.to_sequence())
    }
}

fn write_entries(f: &mut fmt::Formatter<'_>, entries: &[usize]) -> fmt::Result {
    for (k, x) in entries.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for ParkingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.entries)
    }
}

impl fmt::Display for MajorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.entries)
    }
}

fn parse_sequence(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    parse_numbers(inner)
}

impl FromStr for ParkingFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_sequence(s)?)
    }
}

impl FromStr for MajorSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_sequence(s)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// weakly below `y = x`: parking functions
    Below,
    /// weakly above `y = x`: major sequences
    Above,
}

/// Lattice path from `(0,0)` to `(n,n)` whose `j`-th horizontal step sits
/// at height `heights[j]` and carries `labels[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelledDyckPath {
    heights: Vec<usize>,
    labels: Vec<usize>,
    side: Side,
}

impl LabelledDyckPath {
    pub fn new(heights: Vec<usize>, labels: Vec<usize>, side: Side) -> Result<Self> {
        let n = heights.len();
        if labels.len() != n {
            return Err(Error::InvalidPath("heights and labels differ in length".into()));
        }
        let mut seen = vec![false; n + 1];
        for &l in &labels {
            if l == 0 || l > n || std::mem::replace(&mut seen[l], true) {
                return Err(Error::InvalidPath(format!("labels {labels:?} are not a permutation of [1, {n}]")));
            }
        }
        for k in 1..n {
            if heights[k - 1] > heights[k] {
                return Err(Error::InvalidPath("heights must be non-decreasing".into()));
            }
            if heights[k - 1] == heights[k] && labels[k - 1] < labels[k] {
                return Err(Error::InvalidPath("labels at equal height must decrease".into()));
            }
        }
        let in_range = heights.iter().enumerate().all(|(k, &h)| match side {
            Side::Below => h <= k,
            Side::Above => k < h && h <= n,
        });
        if !in_range {
            return Err(Error::InvalidPath(format!("heights {heights:?} cross the diagonal")));
        }
        Ok(LabelledDyckPath { heights, labels, side })
    }

    fn from_sequence(entries: &[usize], side: Side) -> Self {
        let mut order: Vec<usize> = (1..=entries.len()).collect();
        order.sort_by(|&x, &y| entries[x - 1].cmp(&entries[y - 1]).then(y.cmp(&x)));
        LabelledDyckPath {
            heights: order.iter().map(|&l| entries[l - 1]).collect(),
            labels: order,
            side,
        }
    }

    fn to_sequence(&self) -> Vec<usize> {
        let mut entries = vec![0; self.labels.len()];
        for (&h, &l) in self.heights.iter().zip(&self.labels) {
            entries[l - 1] = h;
        }
        entries
    }

    pub fn n(&self) -> usize {
        self.heights.len()
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Vertices of the path from `(0,0)` to `(n,n)` in order.
    pub fn lattice_points(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut pts = vec![(0, 0)];
        let (mut x, mut y) = (0, 0);
        for &h in &self.heights {
            while y < h {
                y += 1;
                pts.push((x, y));
            }
            x += 1;
            pts.push((x, y));
        }
        while y < n {
            y += 1;
            pts.push((x, y));
        }
        pts
    }
}

/// The bounce path and the `C`/`D` sets of a parking function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BounceData {
    /// `0 = i_1 < ... < i_k = n`
    pub contacts: Vec<usize>,
    /// `w_0 = 0` followed by the path labels left to right
    pub w: Vec<usize>,
    /// `children[v]` is `C_v`, labels in decreasing order
    pub children: Vec<Vec<usize>>,
    /// `descendants[v]` is `D_v`, sorted increasingly
    pub descendants: Vec<Vec<usize>>,
}

impl BounceData {
    /// `sum_j (n - i_j)`.
    pub fn bounce(&self) -> usize {
        let n = self.w.len() - 1;
        self.contacts.iter().map(|&i| n - i).sum()
    }

    /// `(x, labels)` for the vertical run of the bounce path at each contact
    /// `x > 0`, preceded by `(0, [0])` for the root.
    pub fn vertical_runs(&self) -> Vec<(usize, Vec<usize>)> {
        let mut runs = vec![(0, vec![0])];
        for pair in self.contacts.windows(2) {
            runs.push((pair[1], self.w[pair[0] + 1..=pair[1]].to_vec()));
        }
        runs
    }

    /// Elements of `D_v` below and above `v`.
    pub fn binv_cobinv(&self, v: usize) -> (usize, usize) {
        let d = &self.descendants[v];
        let below = d.iter().filter(|&&x| x < v).count();
        (below, d.len() - below)
    }

    pub fn pinv(&self) -> usize {
        (0..self.w.len()).map(|v| self.binv_cobinv(v).0).sum()
    }

    pub fn copinv(&self) -> usize {
        (0..self.w.len()).map(|v| self.binv_cobinv(v).1).sum()
    }
}

/// Contacts via `i_{j+1} = #{m : a'_m <= i_j}`.
pub fn bounce_contacts(p: &ParkingFunction) -> Vec<usize> {
    let n = p.n();
    let sorted = p.sorted();
    let mut contacts = vec![0];
    let mut i = 0;
    while i < n {
        let next = sorted.partition_point(|&a| a <= i);
        debug_assert!(next > i, "parking functions always advance");
        i = next;
        contacts.push(i);
    }
    contacts
}

pub fn cd_sets(p: &ParkingFunction) -> BounceData {
    let n = p.n();
    let path = p.to_path();
    let mut w = Vec::with_capacity(n + 1);
    w.push(0);
    w.extend_from_slice(path.labels());

    let mut children = vec![Vec::new(); n + 1];
    for (&h, &label) in path.heights().iter().zip(path.labels()) {
        children[w[h]].push(label);
    }
    let mut descendants: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &v in w.iter().rev() {
        let mut d = children[v].clone();
        for &c in &children[v] {
            d.extend_from_slice(&descendants[c]);
        }
        d.sort_unstable();
        descendants[v] = d;
    }
    BounceData {
        contacts: bounce_contacts(p),
        w,
        children,
        descendants,
    }
}

/// The bounce data together with `bounce(p)`.
pub fn bounce(p: &ParkingFunction) -> (BounceData, usize) {
    let data = cd_sets(p);
    let value = data.bounce();
    (data, value)
}

/// The tree whose children of `v` are `C_v`.
pub fn theta(p: &ParkingFunction) -> LabelledTree {
    LabelledTree::from_children(&cd_sets(p).children).expect("C sets form a tree")
}

/// Rebuilds `w` breadth-first (children in decreasing order) and sets
/// `a_j` to the position of `j`'s parent in `w`.
pub fn theta_inverse(tree: &LabelledTree) -> ParkingFunction {
    let n = tree.n();
    let children = tree.children();
    let mut w = Vec::with_capacity(n + 1);
    w.push(0);
    let mut position = vec![0; n + 1];
    let mut entries = vec![0; n];
    let mut head = 0;
    while head < w.len() {
        let v = w[head];
        position[v] = head;
        for &c in children[v].iter().rev() {
            entries[c - 1] = head;
            w.push(c);
        }
        head += 1;
    }
    ParkingFunction { entries }
}

pub fn pinv(p: &ParkingFunction) -> usize {
    cd_sets(p).pinv()
}

pub fn copinv(p: &ParkingFunction) -> usize {
    cd_sets(p).copinv()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParkOutcome {
    /// stall taken by each car
    pub stalls: Vec<usize>,
    pub jump: usize,
    pub cojump: usize,
}

/// Runs the parking process on a lot infinite in both directions. After car
/// `i` parks, `d_i` is the nearest empty stall strictly west of it; stalls
/// west of 0 are always empty.
pub fn park_process(p: &ParkingFunction) -> ParkOutcome {
    let n = p.n();
    let mut occupied = vec![false; n + 1];
    let mut stalls = Vec::with_capacity(n);
    let mut jump = 0;
    let mut cojump = 0;
    for &a in p.entries() {
        let mut c = a;
        while occupied[c] {
            c += 1;
        }
        occupied[c] = true;
        stalls.push(c);
        jump += c - a;
        let d = (0..c).rev().find(|&s| !occupied[s]).map_or(-1, |s| s as i64);
        cojump += (a as i64 - d) as usize;
    }
    ParkOutcome { stalls, jump, cojump }
}

fn advance_odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        if *d + 1 < radix {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// Every parking function of length `n`.
pub fn enumerate_parking(n: usize) -> impl Iterator<Item = ParkingFunction> {
    let mut digits = Some(vec![0usize; n]);
    std::iter::from_fn(move || loop {
        let current = digits.as_mut()?;
        let candidate = current.clone();
        if !advance_odometer(current, n) {
            digits = None;
        }
        let ok = (1..=n).all(|i| candidate.iter().filter(|&&a| a < i).count() >= i);
        if ok {
            return Some(ParkingFunction { entries: candidate });
        }
    })
}

pub fn enumerate_major(n: usize) -> impl Iterator<Item = MajorSequence> {
    enumerate_parking(n).map(|p| p.complement())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParkingEnumerators {
    /// `sum q^area(p)`
    pub area: BivariatePoly,
    /// `sum q^bounce(p)`
    pub bounce: BivariatePoly,
    /// `sum q^jump(p) t^cojump(p)`
    pub jump_cojump: BivariatePoly,
    /// `B_n(q,t) = sum q^pinv(p) t^copinv(p)`
    pub pinv_copinv: BivariatePoly,
}

pub fn parking_enumerators(n: usize) -> ParkingEnumerators {
    let mut area = TermCounter::new();
    let mut bounce_c = TermCounter::new();
    let mut jc = TermCounter::new();
    let mut pc = TermCounter::new();
    for p in enumerate_parking(n) {
        area.record(p.area() as u32, 0);
        let data = cd_sets(&p);
        bounce_c.record(data.bounce() as u32, 0);
        pc.record(data.pinv() as u32, data.copinv() as u32);
        let run = park_process(&p);
        jc.record(run.jump as u32, run.cojump as u32);
    }
    ParkingEnumerators {
        area: area.into_poly(),
        bounce: bounce_c.into_poly(),
        jump_cojump: jc.into_poly(),
        pinv_copinv: pc.into_poly(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{cayley_count, enumerate_trees};
    use std::collections::HashSet;

    fn pf(s: &str) -> ParkingFunction {
        s.parse().unwrap()
    }

    fn running_example() -> ParkingFunction {
        pf("1,3,1,7,0,7,0,1,4")
    }

    #[test]
    fn recognizers() {
        assert!(is_parking(&[1, 3, 1, 7, 0, 7, 0, 1, 4]).unwrap());
        assert!(is_parking(&[0; 6]).unwrap());
        assert!(is_parking(&[]).unwrap());
        assert!(!is_parking(&[1, 1]).unwrap());
        assert!(is_major(&[2, 5, 3, 8, 6, 9, 7, 6, 5]).unwrap());
        assert!(!is_major(&[0, 2]).unwrap());
        assert!(!is_major(&[3, 2]).unwrap());
    }

    #[test]
    fn recognizers_agree_exhaustively() {
        for n in 0..=5usize {
            let mut digits = vec![0usize; n];
            loop {
                is_parking(&digits).unwrap();
                is_major(&digits).unwrap();
                if !advance_odometer(&mut digits, n + 2) {
                    break;
                }
            }
        }
    }

    #[test]
    fn areas() {
        assert_eq!(running_example().area(), 12);
        let m: MajorSequence = "2,5,3,8,6,9,7,6,5".parse().unwrap();
        assert_eq!(m.area(), 15);
        for n in 1..=7 {
            let increasing = ParkingFunction::new((0..n).collect()).unwrap();
            assert_eq!(increasing.area(), 0);
            assert_eq!(increasing.complement().area(), n);
        }
    }

    #[test]
    fn complement_is_a_bijection_shifting_area_by_n() {
        for n in 0..=7 {
            let mut majors = HashSet::new();
            let mut count = 0u64;
            for p in enumerate_parking(n) {
                count += 1;
                let m = p.complement();
                assert!(is_major(m.entries()).unwrap());
                assert_eq!(m.area(), p.area() + n);
                assert_eq!(m.complement(), p);
                majors.insert(m);
            }
            assert_eq!(count, cayley_count(n));
            assert_eq!(majors.len() as u64, count);
        }
    }

    #[test]
    fn path_examples() {
        let path = running_example().to_path();
        assert_eq!(path.heights(), &[0, 0, 1, 1, 1, 3, 4, 7, 7]);
        assert_eq!(path.labels(), &[7, 5, 8, 3, 1, 2, 9, 6, 4]);
        assert_eq!(ParkingFunction::from_path(&path).unwrap(), running_example());
        let single = pf("0").to_path();
        assert_eq!((single.heights(), single.labels()), (&[0][..], &[1][..]));
        assert_eq!(pf("").to_path().n(), 0);
    }

    #[test]
    fn path_validation() {
        assert!(LabelledDyckPath::new(vec![0, 0], vec![1, 2], Side::Below).is_err());
        assert!(LabelledDyckPath::new(vec![0, 2], vec![1, 2], Side::Below).is_err());
        assert!(LabelledDyckPath::new(vec![0, 1], vec![2, 1], Side::Below).is_ok());
        assert!(LabelledDyckPath::new(vec![1, 2], vec![1, 2], Side::Above).is_ok());
        assert!(LabelledDyckPath::new(vec![1, 1], vec![1, 2], Side::Above).is_err());
    }

    #[test]
    fn path_round_trips() {
        for n in 0..=5 {
            for p in enumerate_parking(n) {
                let path = p.to_path();
                let rebuilt = LabelledDyckPath::new(path.heights().to_vec(), path.labels().to_vec(), Side::Below).unwrap();
                assert_eq!(ParkingFunction::from_path(&rebuilt).unwrap(), p);
                let m = p.complement();
                assert_eq!(MajorSequence::from_path(&m.to_path()).unwrap(), m);
                assert_eq!(path.lattice_points().len(), 2 * n + 1);
            }
        }
    }

    #[test]
    fn bounce_examples() {
        let (data, value) = bounce(&running_example());
        assert_eq!(data.contacts, vec![0, 2, 5, 7, 9]);
        assert_eq!(value, 22);
        for n in 1..=7 {
            let (d, v) = bounce(&ParkingFunction::new(vec![0; n]).unwrap());
            assert_eq!((d.contacts, v), (vec![0, n], n));
            let (d, v) = bounce(&ParkingFunction::new((0..n).collect()).unwrap());
            assert_eq!(d.contacts, (0..=n).collect::<Vec<_>>());
            assert_eq!(v, n * (n + 1) / 2);
        }
        let (d, v) = bounce(&pf(""));
        assert_eq!((d.contacts, v), (vec![0], 0));
    }

    #[test]
    fn cd_sets_of_the_worked_example() {
        let data = cd_sets(&running_example());
        assert_eq!(data.w, vec![0, 7, 5, 8, 3, 1, 2, 9, 6, 4]);
        let mut c7 = data.children[7].clone();
        c7.sort_unstable();
        assert_eq!(c7, vec![1, 3, 8]);
        assert_eq!(data.children[7], vec![8, 3, 1]);
        assert_eq!(data.children[0], vec![7, 5]);
        assert_eq!(data.children[9], vec![6, 4]);
        assert_eq!(data.children[3], vec![9]);
        assert_eq!(data.children[8], vec![2]);
        for v in [4, 6, 2, 1, 5] {
            assert!(data.children[v].is_empty());
            assert!(data.descendants[v].is_empty());
        }
        assert_eq!(data.descendants[7], vec![1, 2, 3, 4, 6, 8, 9]);
        assert_eq!(data.descendants[0], (1..=9).collect::<Vec<_>>());
        assert_eq!(data.descendants[9], vec![4, 6]);
        assert_eq!(data.descendants[3], vec![4, 6, 9]);
        assert_eq!(data.descendants[8], vec![2]);
        assert_eq!(data.binv_cobinv(9), (2, 0));
        assert_eq!(data.binv_cobinv(8), (1, 0));
        assert_eq!(data.binv_cobinv(7), (5, 2));
        assert_eq!(data.binv_cobinv(3), (0, 3));
        assert_eq!(data.binv_cobinv(0), (0, 9));
        assert_eq!((data.pinv(), data.copinv()), (8, 14));
    }

    #[test]
    fn cd_sets_of_two_zeros() {
        let data = cd_sets(&pf("0,0"));
        assert_eq!(data.w, vec![0, 2, 1]);
        assert_eq!(data.children, vec![vec![2, 1], vec![], vec![]]);
        assert_eq!(data.descendants, vec![vec![1, 2], vec![], vec![]]);
    }

    #[test]
    fn bounce_data_properties() {
        for n in 0..=6 {
            for p in enumerate_parking(n) {
                let data = cd_sets(&p);
                assert_eq!(data.descendants[0], (1..=n).collect::<Vec<_>>());
                for v in 0..=n {
                    assert!(!data.descendants[v].contains(&v));
                }
                for (x, labels) in data.vertical_runs() {
                    let mut union: Vec<usize> = labels.iter().flat_map(|&v| data.descendants[v].clone()).collect();
                    let total = union.len();
                    union.sort_unstable();
                    union.dedup();
                    assert_eq!(union.len(), total, "D sets on a run must be disjoint");
                    assert_eq!(total, n - x);
                }
                let by_d: usize = data.descendants.iter().map(Vec::len).sum();
                assert_eq!(by_d, data.bounce());
                assert_eq!(data.pinv() + data.copinv(), data.bounce());
            }
        }
    }

    #[test]
    fn theta_examples() {
        let tree = theta(&running_example());
        let kids = tree.children();
        assert_eq!(kids[0], vec![5, 7]);
        assert_eq!(kids[7], vec![1, 3, 8]);
        for n in 1..=6 {
            let star = theta(&ParkingFunction::new(vec![0; n]).unwrap());
            assert_eq!(star.children()[0], (1..=n).collect::<Vec<_>>());
            let path = theta(&ParkingFunction::new((0..n).collect()).unwrap());
            for v in 1..=n {
                assert_eq!(path.parent(v), Some(v - 1));
            }
        }
    }

    #[test]
    fn theta_is_a_statistic_preserving_bijection() {
        for n in 0..=6 {
            let mut image = HashSet::new();
            for p in enumerate_parking(n) {
                let t = theta(&p);
                let data = cd_sets(&p);
                let stats = t.stats();
                assert_eq!((data.pinv(), data.copinv()), (stats.inv, stats.coinv));
                assert_eq!(t.descendants(), data.descendants);
                assert_eq!(theta_inverse(&t), p);
                image.insert(t);
            }
            assert_eq!(image.len() as u64, cayley_count(n));
            for t in enumerate_trees(n.min(4)) {
                if n <= 4 {
                    assert_eq!(theta(&theta_inverse(&t)), t);
                }
            }
        }
    }

    #[test]
    fn park_process_examples() {
        assert_eq!(park_process(&running_example()).jump, 12);
        let inc = park_process(&pf("0,1,2,3"));
        assert_eq!((inc.stalls, inc.jump), (vec![0, 1, 2, 3], 0));
        let zz = park_process(&pf("0,0"));
        assert_eq!(zz, ParkOutcome { stalls: vec![0, 1], jump: 1, cojump: 2 });
    }

    #[test]
    fn jump_is_area_and_stalls_fill_the_lot() {
        for n in 0..=7 {
            for p in enumerate_parking(n) {
                let run = park_process(&p);
                assert_eq!(run.jump, p.area());
                let mut stalls = run.stalls.clone();
                stalls.sort_unstable();
                assert_eq!(stalls, (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn enumerators_at_small_n() {
        let i2 = BivariatePoly::from_terms([(0, 2, 1), (0, 3, 1), (1, 2, 1)]);
        let e2 = parking_enumerators(2);
        assert_eq!(e2.pinv_copinv, i2);
        assert_eq!(e2.jump_cojump, i2);
        let e3 = parking_enumerators(3);
        assert_eq!(
            e3.bounce,
            BivariatePoly::from_terms([(3, 0, 1), (4, 0, 6), (5, 0, 3), (6, 0, 6)])
        );
        let e0 = parking_enumerators(0);
        for poly in [e0.area, e0.bounce, e0.jump_cojump, e0.pinv_copinv] {
            assert_eq!(poly, BivariatePoly::one());
        }
    }

    #[test]
    fn json_and_text_forms() {
        let p = running_example();
        assert_eq!(p.to_string(), "1,3,1,7,0,7,0,1,4");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"n":9,"entries":[1,3,1,7,0,7,0,1,4],"kind":"parking"}"#);
        assert_eq!(serde_json::from_str::<ParkingFunction>(&json).unwrap(), p);
        assert!(serde_json::from_str::<MajorSequence>(&json).is_err());
        let m = p.complement();
        let back: MajorSequence = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!("1,1".parse::<ParkingFunction>().is_err());
        assert_eq!(pf("(0, 0)"), pf("0,0"));
    }
}
