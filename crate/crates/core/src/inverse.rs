//! Inverting the lower and upper maps for unimodal cycles, the pushing
//! description of the upper path, and explicit collisions for cycles that
//! are not unimodal.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::parking::{LabelledDyckPath, MajorSequence, ParkingFunction, Side};
use crate::perm::{is_sigma_contiguous, FullCycle, Permutation, Transposition};

/// Direction in which half-edges at a vertex are extended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Extend {
    /// the vertex sits before `n` in the visit word
    Rightward,
    /// the vertex sits after `n`
    Leftward,
}

/// Which way half-edges at `v < n` are extended.
pub fn extend_direction(sigma: &FullCycle, v: usize) -> Extend {
    if sigma.positions()[v] < sigma.peak() {
        Extend::Rightward
    } else {
        Extend::Leftward
    }
}

/// Values in `[0, n-1]` placed before / after the peak.
pub fn split_by_peak(sigma: &FullCycle) -> (Vec<usize>, Vec<usize>) {
    let peak = sigma.peak();
    let word = sigma.word();
    let mut left: Vec<usize> = word[..peak].to_vec();
    let mut right: Vec<usize> = word[peak + 1..].to_vec();
    left.sort_unstable();
    right.sort_unstable();
    (left, right)
}

fn require_unimodal(sigma: &FullCycle) -> Result<()> {
    if sigma.is_unimodal() {
        Ok(())
    } else {
        Err(Error::NotUnimodal(sigma.to_string()))
    }
}

/// The order in which factor slots are filled: slots `j` grouped by
/// decreasing `a_j`; within a group increasing for rightward vertices and
/// decreasing for leftward ones. Slots are 1-based.
pub fn omega(sigma: &FullCycle, p: &ParkingFunction) -> Result<Vec<usize>> {
    require_unimodal(sigma)?;
    if sigma.n() != p.n() {
        return Err(Error::SizeMismatch(sigma.n(), p.n()));
    }
    let n = p.n();
    let mut order = Vec::with_capacity(n);
    for value in (0..n).rev() {
        let mut group: Vec<usize> = (1..=n).filter(|&j| p.entries()[j - 1] == value).collect();
        if extend_direction(sigma, value) == Extend::Leftward {
            group.reverse();
        }
        order.extend(group);
    }
    Ok(order)
}

/// One iteration of the construction, as recorded by [`l_inverse_traced`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    /// 1-based iteration number
    pub iteration: usize,
    /// 1-based factor slot being filled
    pub slot: usize,
    pub lower: usize,
    pub direction: Extend,
    /// the neighbouring window endpoint `s_{l+1}` or `s_{l-1}`
    pub partner: usize,
    pub upper: usize,
    /// partial product before this iteration, in cycle notation
    pub partial_product: String,
}

/// Partial products are unions of windows of the visit word; `cut[k]`
/// separates positions `k` and `k+1`.
struct Windows<'a> {
    sigma: &'a FullCycle,
    cut: Vec<bool>,
}

impl<'a> Windows<'a> {
    fn new(sigma: &'a FullCycle) -> Self {
        Windows {
            sigma,
            cut: vec![true; sigma.n()],
        }
    }

    fn window(&self, k: usize) -> (usize, usize) {
        let mut start = k;
        while start > 0 && !self.cut[start - 1] {
            start -= 1;
        }
        let mut end = k;
        while end < self.cut.len() && !self.cut[end] {
            end += 1;
        }
        (start, end)
    }

    fn permutation(&self) -> Permutation {
        let word = self.sigma.word();
        let mut images: Vec<usize> = (0..word.len()).collect();
        let mut start = 0;
        for k in 0..word.len() {
            if k == self.cut.len() || self.cut[k] {
                for x in start..k {
                    images[word[x]] = word[x + 1];
                }
                images[word[k]] = word[start];
                start = k + 1;
            }
        }
        Permutation::from_images(images).expect("windows give a permutation")
    }
}

fn product_of_slots(n: usize, slots: &[Option<Transposition>]) -> Permutation {
    let mut p = Permutation::identity(n);
    for t in slots.iter().flatten() {
        p.mul_transposition(*t);
    }
    p
}

fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(what()))
    }
}

fn run(p: &ParkingFunction, sigma: &FullCycle, check: bool, trace: Option<&mut Vec<Step>>) -> Result<Factorization> {
    let order = omega(sigma, p)?;
    let n = p.n();
    let word = sigma.word();
    let pos = sigma.positions();
    let mut slots: Vec<Option<Transposition>> = vec![None; n];
    let mut windows = Windows::new(sigma);
    let mut steps = Vec::new();

    for (idx, &j) in order.iter().enumerate() {
        let i = idx + 1;
        let a = p.entries()[j - 1];
        let pi = windows.permutation();
        let k = pos[a];
        let (start, end) = windows.window(k);

        if check {
            invariant(pi == product_of_slots(n, &slots), || format!("step {i}: windows disagree with the factors"))?;
            invariant(is_sigma_contiguous(&pi, sigma)?, || format!("step {i}: {pi} is not contiguous"))?;
            invariant(pi.cycle_count() == n + 2 - i, || format!("step {i}: {pi} has the wrong number of cycles"))?;
            invariant((0..a).all(|x| pi.apply(x) == x), || format!("step {i}: {pi} moves something below {a}"))?;
            let support: Vec<usize> = word[start..=end].to_vec();
            invariant(!(a..=n).all(|x| support.contains(&x)), || format!("step {i}: cycle of {a} covers [{a}, {n}]"))?;
        }

        let direction = extend_direction(sigma, a);
        let (partner, b) = match direction {
            Extend::Rightward => {
                if start != k || end >= n {
                    return Err(Error::Internal(format!("step {i}: window of {a} is ({start}, {end})")));
                }
                // pi^{-1}, then sigma, then tau_n, ..., tau_{j+1}
                let mut x = sigma.to_permutation().apply(pi.inverse().apply(a));
                let partner = x;
                for t in slots[j..].iter().rev().flatten() {
                    x = t.apply(x);
                }
                windows.cut[end] = false;
                (partner, x)
            }
            Extend::Leftward => {
                if end != k || start == 0 {
                    return Err(Error::Internal(format!("step {i}: window of {a} is ({start}, {end})")));
                }
                // pi, then sigma^{-1}, then tau_1, ..., tau_{j-1}
                let mut x = sigma.to_permutation().inverse().apply(pi.apply(a));
                let partner = x;
                for t in slots[..j - 1].iter().flatten() {
                    x = t.apply(x);
                }
                windows.cut[start - 1] = false;
                (partner, x)
            }
        };
        if b <= a {
            return Err(Error::Internal(format!("step {i}: partner {b} is not above {a}")));
        }
        slots[j - 1] = Some(Transposition::new(a, b)?);
        steps.push(Step {
            iteration: i,
            slot: j,
            lower: a,
            direction,
            partner,
            upper: b,
            partial_product: pi.to_string(),
        });
    }

    let factors: Vec<Transposition> = slots.into_iter().map(|t| t.expect("every slot filled")).collect();
    let f = Factorization::new(n, factors)?;
    if check {
        invariant(f.product() == sigma.to_permutation(), || format!("{f} does not multiply to {sigma}"))?;
        invariant(f.lower() == p.entries(), || format!("{f} has the wrong lower sequence"))?;
    }
    if let Some(out) = trace {
        *out = steps;
    }
    Ok(f)
}

/// The unique `f` in `F_sigma` with lower sequence `p`. Loop invariants are
/// checked in debug builds.
pub fn l_inverse(p: &ParkingFunction, sigma: &FullCycle) -> Result<Factorization> {
    run(p, sigma, cfg!(debug_assertions), None)
}

/// Like [`l_inverse`], always checking every loop invariant, and returning
/// the per-iteration record.
pub fn l_inverse_traced(p: &ParkingFunction, sigma: &FullCycle) -> Result<(Factorization, Vec<Step>)> {
    let mut steps = Vec::new();
    let f = run(p, sigma, true, Some(&mut steps))?;
    Ok((f, steps))
}

/// The unique `f` in `F_sigma` with upper sequence `m`, through the
/// reflection `i -> n - i`.
pub fn u_inverse(m: &MajorSequence, sigma: &FullCycle) -> Result<Factorization> {
    require_unimodal(sigma)?;
    let reflected = l_inverse(&m.complement(), &sigma.reflect_conjugate())?;
    Ok(reflected.reflect_conjugate())
}

/// Rebuilds the upper path of `L^{-1}(p)` under `sigma_n` from the lower
/// path alone: each label starts at the left end of its step and, taken
/// left to right, moves diagonally until it reaches a point of the path
/// that is unlabelled or carries a smaller label.
pub fn push_upper_path(lower: &LabelledDyckPath) -> Result<LabelledDyckPath> {
    if lower.side() != Side::Below {
        return Err(Error::InvalidPath("pushing starts from a path below the diagonal".into()));
    }
    let n = lower.n();
    let on_path = lower.lattice_points();
    let mut label_at = std::collections::HashMap::new();
    for (x, (&h, &l)) in lower.heights().iter().zip(lower.labels()).enumerate() {
        label_at.insert((x, h), l);
    }
    let mut rest = vec![0; n];
    for (x, (&h, &l)) in lower.heights().iter().zip(lower.labels()).enumerate() {
        let (mut px, mut py) = (x, h);
        loop {
            px += 1;
            py += 1;
            if px > n || py > n {
                return Err(Error::Internal(format!("label {l} pushed off the grid")));
            }
            if !on_path.contains(&(px, py)) {
                continue;
            }
            match label_at.get(&(px, py)) {
                Some(&other) if other > l => continue,
                _ => break,
            }
        }
        rest[l - 1] = py;
    }
    Ok(MajorSequence::new(rest)?.to_path())
}

/// For a cycle with a valley at `i` (the first one), the parking function
/// `(0, ..., 0, s_i)` and two distinct factorizations of `sigma` sharing it
/// as lower sequence.
pub fn non_unimodal_witness(sigma: &FullCycle) -> Result<(ParkingFunction, Factorization, Factorization)> {
    let i = sigma.first_valley().ok_or_else(|| Error::Unimodal(sigma.to_string()))?;
    let n = sigma.n();
    let s = sigma.word();
    let star = |skip: usize| -> Result<Vec<Transposition>> {
        (1..=n)
            .filter(|&k| k != skip)
            .map(|k| Transposition::new(0, s[k]))
            .collect()
    };
    let mut first = star(i)?;
    first.push(Transposition::new(s[i], s[i + 1])?);
    let mut second = star(i - 1)?;
    second.push(Transposition::new(s[i], s[i - 1])?);

    let mut entries = vec![0; n];
    entries[n - 1] = s[i];
    let p = ParkingFunction::new(entries)?;
    let f1 = Factorization::new(n, first)?;
    let f2 = Factorization::new(n, second)?;
    let target = sigma.to_permutation();
    for f in [&f1, &f2] {
        invariant(f.product() == target && f.lower() == p.entries(), || {
            format!("witness {f} fails for {sigma}")
        })?;
    }
    invariant(f1 != f2, || "witnesses coincide".into())?;
    Ok((p, f1, f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::enumerate_factorizations;
    use crate::parking::{enumerate_major, enumerate_parking};
    use crate::perm::{full_cycles, unimodal_cycles};
    use std::collections::HashSet;

    fn pf(s: &str) -> ParkingFunction {
        s.parse().unwrap()
    }

    fn example_cycle() -> FullCycle {
        FullCycle::parse("0 2 3 5 6 4 1").unwrap()
    }

    #[test]
    fn omega_examples() {
        let p = pf("2,4,0,1,4,0");
        assert_eq!(omega(&example_cycle(), &p).unwrap(), vec![5, 2, 1, 4, 3, 6]);
        assert_eq!(omega(&FullCycle::canonical(6), &p).unwrap(), vec![2, 5, 1, 4, 3, 6]);
        assert_eq!(omega(&FullCycle::canonical(4), &pf("0,0,0,0")).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(split_by_peak(&example_cycle()), (vec![0, 2, 3, 5], vec![1, 4]));
        assert!(omega(&FullCycle::parse("0 2 1 3").unwrap(), &pf("0,0,0")).is_err());
    }

    #[test]
    fn omega_visits_weakly_decreasing_values() {
        for s in unimodal_cycles(4).unwrap() {
            for p in enumerate_parking(4) {
                let order = omega(&s, &p).unwrap();
                let values: Vec<usize> = order.iter().map(|&j| p.entries()[j - 1]).collect();
                assert!(values.windows(2).all(|w| w[0] >= w[1]));
                let mut sorted = order.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, vec![1, 2, 3, 4]);
            }
        }
    }

    #[test]
    fn worked_runs() {
        let p = pf("2,4,0,1,4,0");
        let (f, steps) = l_inverse_traced(&p, &FullCycle::canonical(6)).unwrap();
        assert_eq!(f.to_string(), "(2 3)(4 5)(0 2)(1 2)(4 6)(0 4)");
        let uppers: Vec<usize> = steps.iter().map(|s| s.upper).collect();
        assert_eq!(uppers, vec![5, 6, 3, 2, 2, 4]);
        assert_eq!(steps[2].partial_product, "(4 5 6)");

        let (f, steps) = l_inverse_traced(&p, &example_cycle()).unwrap();
        assert_eq!(f.to_string(), "(2 3)(4 5)(0 2)(1 5)(4 6)(0 5)");
        let partners: Vec<usize> = steps.iter().map(|s| s.partner).collect();
        assert_eq!(partners, vec![6, 5, 3, 4, 2, 5]);
        let uppers: Vec<usize> = steps.iter().map(|s| s.upper).collect();
        assert_eq!(uppers, vec![6, 5, 3, 5, 2, 5]);
        assert_eq!(steps[4].partial_product, "(1 5 6 4)(2 3)");

        assert_eq!(l_inverse(&pf("0"), &FullCycle::canonical(1)).unwrap().to_string(), "(0 1)");
    }

    #[test]
    fn l_inverse_inverts_lower_for_every_unimodal_cycle() {
        for n in 1..=5 {
            for s in unimodal_cycles(n).unwrap() {
                let mut seen = HashSet::new();
                for p in enumerate_parking(n) {
                    let (f, _) = l_inverse_traced(&p, &s).unwrap();
                    assert!(f.is_minimal_for(&s.to_permutation()));
                    assert_eq!(f.lower(), p.entries());
                    seen.insert(f);
                }
                let all: HashSet<_> = enumerate_factorizations(&s).collect();
                assert_eq!(seen, all, "{s}");
            }
        }
    }

    #[test]
    fn u_inverse_inverts_upper() {
        assert_eq!(u_inverse(&"1".parse().unwrap(), &FullCycle::canonical(1)).unwrap().to_string(), "(0 1)");
        let m: MajorSequence = "2,5,3,8,6,9,7,6,5".parse().unwrap();
        assert_eq!(
            u_inverse(&m, &FullCycle::canonical(9)).unwrap().to_string(),
            "(1 2)(3 5)(1 3)(7 8)(0 6)(7 9)(0 7)(1 6)(4 5)"
        );
        for n in 1..=4 {
            for s in unimodal_cycles(n).unwrap() {
                for m in enumerate_major(n) {
                    let f = u_inverse(&m, &s).unwrap();
                    assert_eq!(f.upper(), m.entries());
                    assert_eq!(f.product(), s.to_permutation());
                }
            }
        }
        assert!(u_inverse(&"1,2,3".parse().unwrap(), &FullCycle::parse("0 2 1 3").unwrap()).is_err());
    }

    #[test]
    fn pushing_examples() {
        let lower = pf("1,3,1,7,0,7,0,1,4").to_path();
        let upper: MajorSequence = "2,5,3,8,6,9,7,6,5".parse().unwrap();
        assert_eq!(push_upper_path(&lower).unwrap(), upper.to_path());
        let one: MajorSequence = "1".parse().unwrap();
        assert_eq!(push_upper_path(&pf("0").to_path()).unwrap(), one.to_path());
    }

    #[test]
    fn pushing_matches_the_algorithm() {
        for n in 0..=5 {
            let s = FullCycle::canonical(n);
            for p in enumerate_parking(n) {
                let f = l_inverse(&p, &s).unwrap();
                let pushed = push_upper_path(&p.to_path()).unwrap();
                assert_eq!(pushed, f.upper_major().unwrap().to_path(), "{p}");
                let lifted = pushed
                    .labels()
                    .iter()
                    .zip(pushed.heights())
                    .all(|(&l, &h)| h > p.entries()[l - 1]);
                assert!(lifted);
            }
        }
    }

    #[test]
    fn witnesses() {
        let (p, f1, f2) = non_unimodal_witness(&FullCycle::parse("0 2 1 3").unwrap()).unwrap();
        assert_eq!(p.entries(), &[0, 0, 1]);
        assert_eq!(f1.to_string(), "(0 2)(0 3)(1 3)");
        assert_eq!(f2.to_string(), "(0 1)(0 3)(1 2)");
        assert!(non_unimodal_witness(&FullCycle::parse("0 1 4 3 5 2").unwrap()).is_ok());
        assert!(matches!(
            non_unimodal_witness(&FullCycle::canonical(4)),
            Err(Error::Unimodal(_))
        ));
        for n in 3..=5 {
            for s in full_cycles(n) {
                assert_eq!(non_unimodal_witness(&s).is_ok(), !s.is_unimodal());
            }
        }
    }
}
