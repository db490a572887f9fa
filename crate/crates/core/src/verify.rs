//! Named executable checks of the identities relating trees, parking
//! functions and factorizations. Each suite takes an upper bound `n` for its
//! exhaustive range and reports the first counterexample it meets.

use std::collections::HashSet;

use serde::Serialize;

use crate::arch::{decompose_simple, enumerate_arch_diagrams, is_valid_arch, recompose, sigma_diagram, arch_to_factorization};
use crate::error::{Error, Result};
use crate::factor::{
    enumerate_factorizations, factorization_enumerator, perm_lower_by_evaluation, phi_k, phi_k_inverse,
    restricted_enumerators, Factorization,
};
use crate::inverse::{l_inverse, l_inverse_traced, non_unimodal_witness, push_upper_path};
use crate::parking::{bounce, cd_sets, enumerate_parking, parking_enumerators, theta, MajorSequence, ParkingFunction};
use crate::perm::{full_cycles, unimodal_cycles, FullCycle, Transposition};
use crate::poly::{catalan_qt, qt_bracket, qt_factorial_product, tree_recursion_i, BivariatePoly};
use crate::trees::{cayley_count, depth_enumerator, enumerate_trees, inversion_enumerator};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub suite: &'static str,
    /// the bound actually used after clamping to the suite's range
    pub n: usize,
    pub checks: u64,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Default)]
pub struct Checker {
    checks: u64,
    failure: Option<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
        ok
    }

    fn eq<T: PartialEq + std::fmt::Display>(&mut self, got: &T, want: &T, what: impl FnOnce() -> String) -> bool {
        self.check(got == want, || format!("{}: got {got}, expected {want}", what()))
    }

    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        self.checks += 1;
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                if self.failure.is_none() {
                    self.failure = Some(format!("{}: {e}", what()));
                }
                None
            }
        }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    /// largest `n` accepted; larger requests are clamped
    pub max_n: usize,
    run: fn(&mut Checker, usize),
}

pub const SUITES: &[Suite] = &[
    Suite { name: "cardinalities", summary: "trees, parking functions, factorizations and arch diagrams all number (n+1)^(n-1)", max_n: 7, run: cardinalities },
    Suite { name: "polynomial-pins", summary: "I_0..I_3 and D_0..D_4 match their published expansions", max_n: 4, run: polynomial_pins },
    Suite { name: "trees-factorizations", summary: "inversions on trees and areas on factorizations of sigma_n share a distribution", max_n: 7, run: trees_factorizations },
    Suite { name: "bounce", summary: "B_n = I_n = F_n, and pinv + copinv = bounce for every parking function", max_n: 7, run: bounce_suite },
    Suite { name: "area-jump", summary: "I_n(q,1) is the area enumerator and jump/cojump is distributed as I_n", max_n: 7, run: area_jump },
    Suite { name: "unimodal", summary: "L and U are bijective exactly for unimodal cycles", max_n: 6, run: unimodal },
    Suite { name: "algorithm", summary: "the inverse construction hits every parking function for every unimodal cycle", max_n: 6, run: algorithm },
    Suite { name: "arch-validity", summary: "minimality coincides with arch-diagram validity over all transposition sequences", max_n: 4, run: arch_validity },
    Suite { name: "simple-decomposition", summary: "simple enumerator formula, cap decomposition, and rotation area shifts", max_n: 7, run: simple_decomposition },
    Suite { name: "restricted-families", summary: "max-difference, increasing, decreasing and permutation-lower enumerators", max_n: 7, run: restricted_families },
    Suite { name: "worked-examples", summary: "the n = 9 running example and the (0 1 3 2) enumerator", max_n: 9, run: worked_examples },
    Suite { name: "pushing", summary: "pushing labels off the lower path reproduces the upper path", max_n: 7, run: pushing },
    Suite { name: "symmetry", summary: "t^(-n) I_n(q,t) is symmetric in q and t", max_n: 8, run: symmetry },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

pub fn run_suite(name: &str, n: usize) -> Result<Outcome> {
    let suite = SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::OutOfRange(format!("unknown suite {name:?}; known: {}", suite_names().join(", "))))?;
    let n = n.min(suite.max_n);
    let mut checker = Checker::default();
    (suite.run)(&mut checker, n);
    Ok(Outcome {
        suite: suite.name,
        n,
        checks: checker.checks,
        failure: checker.failure,
    })
}

/// Runs the named suites on separate threads; results keep the input order.
pub fn run_many(names: &[&str], n: usize) -> Result<Vec<Outcome>> {
    for name in names {
        if !SUITES.iter().any(|s| s.name == *name) {
            return Err(Error::OutOfRange(format!("unknown suite {name:?}")));
        }
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|name| scope.spawn(move || run_suite(name, n)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().map_err(|_| Error::Internal("suite panicked".into()))?)
            .collect()
    })
}

fn poly(terms: &[(u32, u32, i64)]) -> BivariatePoly {
    BivariatePoly::from_terms(terms.iter().copied())
}

fn cardinalities(c: &mut Checker, n: usize) {
    for k in 0..=n {
        let want = cayley_count(k);
        let s = FullCycle::canonical(k);
        let mut counts = vec![
            ("trees", enumerate_trees(k).count() as u64),
            ("parking functions", enumerate_parking(k).count() as u64),
            ("factorizations", enumerate_factorizations(&s).count() as u64),
        ];
        // the independent arch generator walks k! labelings per tree shape
        if k <= 6 {
            counts.push(("arch diagrams", enumerate_arch_diagrams(k).len() as u64));
        }
        for (what, got) in counts {
            c.eq(&got, &want, || format!("number of {what} at n = {k}"));
        }
    }
}

pub fn published_inversion_enumerators() -> Vec<BivariatePoly> {
    vec![
        BivariatePoly::one(),
        BivariatePoly::t(),
        poly(&[(0, 2, 1), (0, 3, 1), (1, 2, 1)]),
        poly(&[
            (0, 6, 1),
            (1, 5, 2),
            (2, 4, 2),
            (3, 3, 1),
            (0, 5, 1),
            (1, 4, 1),
            (2, 3, 1),
            (0, 4, 3),
            (1, 3, 3),
            (0, 3, 1),
        ]),
    ]
}

pub fn published_depth_enumerators() -> Vec<BivariatePoly> {
    let shifted = |k: u32, coeffs: &[i64]| {
        BivariatePoly::from_terms(coeffs.iter().enumerate().map(|(e, &a)| (k + e as u32, 0, a)))
    };
    vec![
        BivariatePoly::one(),
        BivariatePoly::q(),
        shifted(2, &[1, 2]),
        shifted(3, &[1, 6, 3, 6]),
        shifted(4, &[1, 12, 24, 28, 24, 12, 24]),
    ]
}

fn polynomial_pins(c: &mut Checker, _n: usize) {
    for (k, want) in published_inversion_enumerators().iter().enumerate() {
        c.eq(&inversion_enumerator(k), want, || format!("I_{k}"));
    }
    for (k, want) in published_depth_enumerators().iter().enumerate() {
        c.eq(&depth_enumerator(k), want, || format!("D_{k}"));
    }
}

fn trees_factorizations(c: &mut Checker, n: usize) {
    for k in 0..=n {
        c.eq(
            &factorization_enumerator(&FullCycle::canonical(k)),
            &inversion_enumerator(k),
            || format!("F_{k} against I_{k}"),
        );
    }
}

fn bounce_suite(c: &mut Checker, n: usize) {
    for k in 0..=n {
        let i = inversion_enumerator(k);
        let e = parking_enumerators(k);
        c.eq(&e.pinv_copinv, &i, || format!("B_{k} against I_{k}"));
        c.eq(&factorization_enumerator(&FullCycle::canonical(k)), &i, || format!("F_{k} against I_{k}"));
        c.eq(&e.bounce, &depth_enumerator(k), || format!("bounce enumerator against D_{k}"));
        for p in enumerate_parking(k) {
            let data = cd_sets(&p);
            let ok = data.pinv() + data.copinv() == data.bounce();
            if !c.check(ok, || format!("pinv + copinv differs from bounce at {p}")) {
                return;
            }
        }
    }
}

fn area_jump(c: &mut Checker, n: usize) {
    for k in 0..=n {
        let i = inversion_enumerator(k);
        let e = parking_enumerators(k);
        c.eq(&e.area, &i.eval_t(&1.into()), || format!("area enumerator against I_{k}(q,1)"));
        c.eq(&e.jump_cojump, &i, || format!("jump/cojump enumerator against I_{k}"));
    }
}

fn unimodal(c: &mut Checker, n: usize) {
    for k in 3..=n {
        let total = cayley_count(k) as usize;
        let mut unimodal_count = 0u64;
        for s in full_cycles(k) {
            let mut lowers = HashSet::new();
            let mut uppers = HashSet::new();
            let mut size = 0;
            for f in enumerate_factorizations(&s) {
                size += 1;
                lowers.insert(f.lower());
                uppers.insert(f.upper());
            }
            c.eq(&size, &total, || format!("|F_sigma| for {s}"));
            let uni = s.is_unimodal();
            unimodal_count += uni as u64;
            c.check((lowers.len() == total) == uni, || format!("L bijectivity disagrees with unimodality at {s}"));
            c.check((uppers.len() == total) == uni, || format!("U bijectivity disagrees with unimodality at {s}"));
            if !uni {
                if let Some((p, f1, f2)) = c.ok(non_unimodal_witness(&s), || format!("witness for {s}")) {
                    let target = s.to_permutation();
                    c.check(
                        f1 != f2 && f1.is_minimal_for(&target) && f2.is_minimal_for(&target) && f1.lower() == p.entries() && f2.lower() == p.entries(),
                        || format!("witness {f1}, {f2} for {s}"),
                    );
                }
            }
        }
        c.eq(&unimodal_count, &(1u64 << (k - 1)), || format!("unimodal cycles at n = {k}"));
    }
}

/// The two worked runs of the inverse construction.
pub fn algorithm_pins() -> [(FullCycle, ParkingFunction, &'static str); 2] {
    let p: ParkingFunction = "2,4,0,1,4,0".parse().expect("parking");
    [
        (FullCycle::canonical(6), p.clone(), "(2 3)(4 5)(0 2)(1 2)(4 6)(0 4)"),
        (FullCycle::parse("0 2 3 5 6 4 1").expect("full cycle"), p, "(2 3)(4 5)(0 2)(1 5)(4 6)(0 5)"),
    ]
}

fn algorithm(c: &mut Checker, n: usize) {
    for (s, p, want) in algorithm_pins() {
        if let Some((f, _)) = c.ok(l_inverse_traced(&p, &s), || format!("construction for {p} under {s}")) {
            c.eq(&f.to_string(), &want.to_string(), || format!("construction for {p} under {s}"));
        }
    }
    for k in 1..=n {
        for s in unimodal_cycles(k).expect("k >= 1") {
            let target = s.to_permutation();
            for p in enumerate_parking(k) {
                let Some((f, _)) = c.ok(l_inverse_traced(&p, &s), || format!("construction for {p} under {s}")) else {
                    return;
                };
                if !c.check(f.product() == target && f.lower() == p.entries(), || format!("{f} for {p} under {s}")) {
                    return;
                }
            }
        }
    }
}

fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

fn arch_validity(c: &mut Checker, n: usize) {
    for k in 1..=n {
        let pairs: Vec<Transposition> = (0..=k)
            .flat_map(|a| (a + 1..=k).map(move |b| Transposition::new(a, b).expect("a < b")))
            .collect();
        let mut cycles = vec![FullCycle::canonical(k)];
        cycles.extend(unimodal_cycles(k).expect("k >= 1").filter(|s| *s != FullCycle::canonical(k)).take(2));
        for s in &cycles {
            let target = s.to_permutation();
            let mut digits = vec![0; k];
            loop {
                let f = Factorization::new(k, digits.iter().map(|&d| pairs[d]).collect()).expect("in range");
                let member = f.is_minimal_for(&target);
                let valid = is_valid_arch(&sigma_diagram(&f, s).expect("sizes match"));
                if !c.check(member == valid, || format!("{f} under {s}: member {member}, valid diagram {valid}")) {
                    return;
                }
                if !advance(&mut digits, pairs.len()) {
                    break;
                }
            }
        }
    }
}

fn simple_decomposition(c: &mut Checker, n: usize) {
    let mut previous = factorization_enumerator(&FullCycle::canonical(0));
    for k in 1..=n {
        let s = FullCycle::canonical(k);
        let mut simple = BivariatePoly::zero();
        let mut full = BivariatePoly::zero();
        for f in enumerate_factorizations(&s) {
            let (al, au) = (f.area_lower().expect("member"), f.area_upper().expect("member"));
            let term = BivariatePoly::monomial(1, al as u32, au as u32);
            full += &term;
            if let Some(j) = f.simple_index() {
                simple += &term;
                let Some(g) = c.ok(phi_k(&f, j), || format!("rotation of {f}")) else { return };
                let shifts_ok = g.area_lower().ok() == Some(al - (j - 1)) && g.area_upper().ok() == Some(au - (k - j + 1));
                c.check(shifts_ok, || format!("area shifts of {f} at k = {j}"));
                c.check(phi_k_inverse(&g, j, k).ok().as_ref() == Some(&f), || format!("rotation of {f} does not invert"));
            }
            let a = sigma_diagram(&f, &s).expect("sizes match");
            let Some(parts) = c.ok(decompose_simple(&a), || format!("decomposition of {f}")) else { return };
            c.check(recompose(&parts).ok().as_ref() == Some(&a), || format!("recomposition of {f}"));
            let (mut low, mut up) = (0, 0);
            for part in &parts {
                let Some(g) = c.ok(arch_to_factorization(&part.diagram, &FullCycle::canonical(part.diagram.n())), || format!("part of {f}")) else { return };
                low += g.area_lower().expect("member");
                up += g.area_upper().expect("member");
            }
            c.check((low, up) == (al, au), || format!("areas of the parts of {f} sum to ({low}, {up})"));
            if c.failed() {
                return;
            }
        }
        let want = &(&BivariatePoly::t() * &qt_bracket(k as u32).expect("k >= 1")) * &previous;
        c.eq(&simple, &want, || format!("simple enumerator at n = {k}"));
        previous = full;
    }
}

fn restricted_families(c: &mut Checker, n: usize) {
    for k in 1..=n {
        let r = restricted_enumerators(k);
        let tk = BivariatePoly::monomial(1, 0, k as u32);
        let i = inversion_enumerator(k);
        c.eq(&r.max_diff, &qt_factorial_product(k as u32), || format!("max-difference enumerator at n = {k}"));
        c.eq(&r.increasing, &(&tk * &catalan_qt(k)), || format!("increasing enumerator at n = {k}"));
        c.eq(&r.decreasing, &(&tk * &catalan_qt(k).eval_t(&1.into())), || format!("decreasing enumerator at n = {k}"));
        c.eq(&r.perm_lower, &perm_lower_by_evaluation(k), || format!("permutation-lower enumerator at n = {k}"));
        c.eq(&r.perm_lower, &i.eval_q(&0.into()), || format!("permutation-lower against I_{k}(0,t)"));
        let mut max_diff = 0;
        for f in enumerate_factorizations(&FullCycle::canonical(k)) {
            max_diff = max_diff.max(f.total_difference().expect("member"));
            if f.lower().windows(2).all(|w| w[0] >= w[1]) {
                c.eq(&f.area_upper().expect("member"), &k, || format!("upper area of decreasing {f}"));
            }
        }
        c.eq(&max_diff, &(k * (k + 1) / 2), || format!("maximum total difference at n = {k}"));
    }
}

/// The running n = 9 example.
pub fn worked_factorization() -> Factorization {
    "(1 2)(3 5)(1 3)(7 8)(0 6)(7 9)(0 7)(1 6)(4 5)".parse().expect("valid")
}

fn worked_examples(c: &mut Checker, _n: usize) {
    let f = worked_factorization();
    c.eq(&format!("{:?}", f.lower()), &"[1, 3, 1, 7, 0, 7, 0, 1, 4]".to_string(), || "lower sequence".into());
    c.eq(&format!("{:?}", f.upper()), &"[2, 5, 3, 8, 6, 9, 7, 6, 5]".to_string(), || "upper sequence".into());
    c.check(f.area_lower().ok() == Some(12) && f.area_upper().ok() == Some(15), || "areas of the running example".into());
    let p = f.lower_parking().expect("parking");
    let (data, value) = bounce(&p);
    c.eq(&value, &22, || "bounce".into());
    c.eq(&format!("{:?}", data.contacts), &"[0, 2, 5, 7, 9]".to_string(), || "bounce contacts".into());
    c.eq(&format!("{:?}", data.w), &"[0, 7, 5, 8, 3, 1, 2, 9, 6, 4]".to_string(), || "w".into());
    let children: [(usize, &[usize]); 10] = [
        (4, &[]), (6, &[]), (9, &[4, 6]), (2, &[]), (1, &[]), (3, &[9]), (8, &[2]), (5, &[]), (7, &[1, 3, 8]), (0, &[5, 7]),
    ];
    let descendants: [(usize, &[usize]); 10] = [
        (4, &[]), (6, &[]), (9, &[4, 6]), (2, &[]), (1, &[]), (3, &[4, 6, 9]), (8, &[2]), (5, &[]),
        (7, &[1, 2, 3, 4, 6, 8, 9]), (0, &[1, 2, 3, 4, 5, 6, 7, 8, 9]),
    ];
    let tree = theta(&p);
    let tree_children = tree.children();
    let tree_descendants = tree.descendants();
    for (v, want) in children {
        let mut got = data.children[v].clone();
        got.sort_unstable();
        c.check(got == want && tree_children[v] == want, || format!("C_{v} = {got:?}"));
    }
    for (v, want) in descendants {
        c.check(data.descendants[v] == want && tree_descendants[v] == want, || format!("D_{v} = {:?}", data.descendants[v]));
    }
    let e = factorization_enumerator(&FullCycle::parse("0 1 3 2").expect("full cycle"));
    c.check(e.coeff(2, 5) > 0.into() && e.coeff(0, 3) > 0.into(), || format!("enumerator {e} lacks q^2*t^5 or t^3"));
}

fn pushing(c: &mut Checker, n: usize) {
    let upper: MajorSequence = "2,5,3,8,6,9,7,6,5".parse().expect("major");
    let lower = worked_factorization().lower_parking().expect("parking");
    c.check(push_upper_path(&lower.to_path()).ok() == Some(upper.to_path()), || "pushing the running example".into());
    for k in 0..=n {
        let s = FullCycle::canonical(k);
        for p in enumerate_parking(k) {
            let Some(f) = c.ok(l_inverse(&p, &s), || format!("construction for {p}")) else { return };
            let want = f.upper_major().map(|m| m.to_path()).ok();
            if !c.check(push_upper_path(&p.to_path()).ok() == want, || format!("pushing {p}")) {
                return;
            }
        }
    }
}

fn symmetry(c: &mut Checker, n: usize) {
    let recursion = tree_recursion_i(n);
    for (k, expected) in recursion.iter().enumerate().take(n + 1) {
        let i = inversion_enumerator(k);
        c.eq(&i, expected, || format!("I_{k} against the recursion"));
        match i.div_t_pow(k as u32) {
            Ok(reduced) => {
                c.eq(&reduced.swap_qt(), &reduced, || format!("t^-{k} I_{k} under q <-> t"));
            }
            Err(e) => {
                c.check(false, || format!("t^{k} does not divide I_{k}: {e}"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_n() {
        for name in suite_names() {
            let out = run_suite(name, 4).unwrap();
            assert!(out.passed(), "{name}: {:?}", out.failure);
            assert!(out.checks > 0, "{name} checked nothing");
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nope", 3).is_err());
        assert!(run_many(&["bounce", "nope"], 3).is_err());
    }

    #[test]
    fn bounds_are_clamped() {
        assert_eq!(run_suite("arch-validity", 9).unwrap().n, 4);
    }

    #[test]
    fn run_many_keeps_order() {
        let out = run_many(&["symmetry", "bounce"], 3).unwrap();
        assert_eq!(out.iter().map(|o| o.suite).collect::<Vec<_>>(), vec!["symmetry", "bounce"]);
    }

    #[test]
    fn checker_keeps_first_failure() {
        let mut c = Checker::default();
        c.check(false, || "first".into());
        c.check(false, || "second".into());
        assert_eq!(c.failure.as_deref(), Some("first"));
        assert_eq!(c.checks, 2);
    }
}
