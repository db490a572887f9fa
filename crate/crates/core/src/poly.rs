//! Exact sparse polynomials in two indeterminates `q` and `t`.
//!
//! Every enumerator in the crate is a [`BivariatePoly`]. Coefficients are
//! [`BigInt`], so no family count can overflow. Univariate enumerators such
//! as the depth polynomial are stored with every `t` exponent equal to zero.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finitely supported map `(e_q, e_t) -> coefficient` with no zero entries.
///
/// The key order of the underlying map (ascending `e_q`, then ascending
/// `e_t`) is the canonical term order used for display and serialization.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<TermRepr>", try_from = "Vec<TermRepr>")]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TermRepr {
    q: u32,
    t: u32,
    c: String,
}

impl From<BivariatePoly> for Vec<TermRepr> {
    fn from(p: BivariatePoly) -> Self {
        p.terms
            .into_iter()
            .map(|((q, t), c)| TermRepr {
                q,
                t,
                c: c.to_string(),
            })
            .collect()
    }
}

impl TryFrom<Vec<TermRepr>> for BivariatePoly {
    type Error = Error;

    fn try_from(reprs: Vec<TermRepr>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for r in reprs {
            let c: BigInt = r
                .c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", r.c)))?;
            if terms.insert((r.q, r.t), c).is_some() {
                return Err(Error::Parse(format!(
                    "duplicate exponent pair (q^{}, t^{})",
                    r.q, r.t
                )));
            }
        }
        terms.retain(|_, c: &mut BigInt| !c.is_zero());
        Ok(BivariatePoly { terms })
    }
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c * q^eq * t^et`.
    pub fn monomial(c: impl Into<BigInt>, eq: u32, et: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(eq, et, c.into());
        p
    }

    /// Builds a polynomial from `(e_q, e_t, c)` triples; repeated exponent
    /// pairs are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (eq, et, c) in terms {
            p.add_term(eq, et, c.into());
        }
        p
    }

    /// Adds `c * q^eq * t^et` in place, pruning a cancelled term.
    pub fn add_term(&mut self, eq: u32, et: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((eq, et)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(eq, et));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, eq: u32, et: u32) -> BigInt {
        self.terms.get(&(eq, et)).cloned().unwrap_or_default()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> + '_ {
        self.terms.iter().map(|(&(eq, et), c)| (eq, et, c))
    }

    pub fn total_degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|&(a, b)| a + b)
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn min_total_degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|&(a, b)| a + b)
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    /// The terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&(a, b), _)| a + b == d)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        BivariatePoly { terms }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn eval(&self, q: &BigInt, t: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * num_traits::pow(q.clone(), a as usize) * num_traits::pow(t.clone(), b as usize))
            .sum()
    }

    /// Substitutes a value for `t`, leaving a polynomial in `q` alone.
    pub fn eval_t(&self, t: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a, 0, c * num_traits::pow(t.clone(), b as usize));
        }
        out
    }

    /// Substitutes a value for `q`, leaving a polynomial in `t` alone.
    pub fn eval_q(&self, q: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(0, b, c * num_traits::pow(q.clone(), a as usize));
        }
        out
    }

    /// The specialization `t = q`, written in `q`.
    pub fn diagonal(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a + b, 0, c.clone());
        }
        out
    }

    /// Exchanges the roles of `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| ((b, a), c.clone()))
            .collect();
        BivariatePoly { terms }
    }

    pub fn mul_monomial(&self, eq: u32, et: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| ((a + eq, b + et), c.clone()))
            .collect();
        BivariatePoly { terms }
    }

    /// Divides out `t^k`; fails unless every term carries at least `t^k`.
    pub fn div_t_pow(&self, k: u32) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if b < k {
                return Err(Error::NotDivisible(format!("t^{k}")));
            }
            terms.insert((a, b - k), c.clone());
        }
        Ok(BivariatePoly { terms })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(&k, v)| (k, v * c)).collect();
        BivariatePoly { terms }
    }

    /// Sum of the coefficients, i.e. the value at `q = t = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for BivariatePoly {
    /// `c*q^a*t^b + ...` in canonical order; unit coefficients and zero
    /// exponents are elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            match a {
                0 => {}
                1 => factors.push("q".to_string()),
                _ => factors.push(format!("q^{a}")),
            }
            match b {
                0 => {}
                1 => factors.push("t".to_string()),
                _ => factors.push(format!("t^{b}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;

    fn add(self, rhs: &'a BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;

    fn add(mut self, rhs: BivariatePoly) -> BivariatePoly {
        self += &rhs;
        self
    }
}

impl Add<&BivariatePoly> for BivariatePoly {
    type Output = BivariatePoly;

    fn add(mut self, rhs: &BivariatePoly) -> BivariatePoly {
        self += rhs;
        self
    }
}

impl Sub<&BivariatePoly> for BivariatePoly {
    type Output = BivariatePoly;

    fn sub(mut self, rhs: &BivariatePoly) -> BivariatePoly {
        self += &-rhs;
        self
    }
}

impl AddAssign<&BivariatePoly> for BivariatePoly {
    fn add_assign(&mut self, rhs: &BivariatePoly) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;

    fn neg(self) -> BivariatePoly {
        let terms = self.terms.iter().map(|(&k, c)| (k, -c)).collect();
        BivariatePoly { terms }
    }
}

impl Neg for BivariatePoly {
    type Output = BivariatePoly;

    fn neg(self) -> BivariatePoly {
        -&self
    }
}

impl<'a> Sub<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;

    fn sub(self, rhs: &'a BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        out += &-rhs;
        out
    }
}

impl Sub for BivariatePoly {
    type Output = BivariatePoly;

    fn sub(self, rhs: BivariatePoly) -> BivariatePoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, rhs: &'a BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        &self * &rhs
    }
}

impl Sum for BivariatePoly {
    fn sum<I: Iterator<Item = BivariatePoly>>(iter: I) -> Self {
        iter.fold(BivariatePoly::zero(), |acc, p| acc + p)
    }
}

impl Product for BivariatePoly {
    fn product<I: Iterator<Item = BivariatePoly>>(iter: I) -> Self {
        iter.fold(BivariatePoly::one(), |acc, p| acc * p)
    }
}

/// Accumulates `q^a t^b` terms with machine counters and converts once.
///
/// Exhaustive enumerators add millions of unit terms; counting in a map of
/// `u64` first avoids a bignum addition per object.
#[derive(Clone, Debug, Default)]
pub struct TermCounter {
    counts: BTreeMap<(u32, u32), u64>,
}

impl TermCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, eq: u32, et: u32) {
        *self.counts.entry((eq, et)).or_insert(0) += 1;
    }

    pub fn merge(&mut self, other: &TermCounter) {
        for (&k, &c) in &other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn into_poly(self) -> BivariatePoly {
        BivariatePoly::from_terms(self.counts.into_iter().map(|((a, b), c)| (a, b, c)))
    }
}

/// `t^{n-1} + t^{n-2} q + ... + q^{n-1}`.
pub fn qt_bracket(n: u32) -> Result<BivariatePoly> {
    if n == 0 {
        return Err(Error::OutOfRange("qt_bracket needs n >= 1".into()));
    }
    Ok(BivariatePoly::from_terms((0..n).map(|j| (j, n - 1 - j, 1))))
}

/// `t^n * prod_{i=1..n} qt_bracket(i)`, the inversion polynomial of
/// permutations shifted by `t^n`. Realized without any division.
pub fn qt_factorial_product(n: u32) -> BivariatePoly {
    let product: BivariatePoly = (1..=n)
        .map(|i| qt_bracket(i).expect("i >= 1"))
        .product();
    product.mul_monomial(0, n)
}

/// `C_0..=C_{n_max}` from `C_n = sum_k q^k t^{n-k-1} C_k C_{n-k-1}`.
pub fn catalan_qt_sequence(n_max: usize) -> Vec<BivariatePoly> {
    let mut c: Vec<BivariatePoly> = vec![BivariatePoly::one()];
    for n in 1..=n_max {
        let next = (0..n)
            .map(|k| (&c[k] * &c[n - k - 1]).mul_monomial(k as u32, (n - k - 1) as u32))
            .sum();
        c.push(next);
    }
    c
}

pub fn catalan_qt(n: usize) -> BivariatePoly {
    catalan_qt_sequence(n).pop().expect("sequence is nonempty")
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `I_0..=I_{n_max}` computed only from the recursion
/// `I_{n+1} = sum_i binom(n, i) * t * qt_bracket(i + 1) * I_i * I_{n-i}`.
pub fn tree_recursion_i(n_max: usize) -> Vec<BivariatePoly> {
    let mut seq = vec![BivariatePoly::one()];
    for n in 0..n_max {
        let next = (0..=n)
            .map(|i| {
                let bracket = qt_bracket(i as u32 + 1).expect("i + 1 >= 1");
                let weight = bracket.mul_monomial(0, 1).scale(&binomial(n as u64, i as u64));
                &(&weight * &seq[i]) * &seq[n - i]
            })
            .sum();
        seq.push(next);
    }
    seq
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, u32, i64)]) -> BivariatePoly {
        BivariatePoly::from_terms(terms.iter().copied())
    }

    fn q() -> BivariatePoly {
        BivariatePoly::q()
    }

    fn t() -> BivariatePoly {
        BivariatePoly::t()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&(q() + t()) + &BivariatePoly::zero(), q() + t());
        assert!((q() + -q()).is_zero());
        let lhs = p(&[(0, 2, 1), (0, 3, 1), (1, 2, 1)]);
        assert_eq!(lhs + p(&[(0, 3, 1)]), p(&[(0, 2, 1), (0, 3, 2), (1, 2, 1)]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!((q() + t()) * BivariatePoly::one(), q() + t());
        assert_eq!(t() * (t() + q()) * t(), p(&[(1, 2, 1), (0, 3, 1)]));
        assert_eq!((q() + t()) * (q() - t()), p(&[(2, 0, 1), (0, 2, -1)]));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(BivariatePoly::zero().total_degree(), Err(Error::ZeroPolynomial));
        assert_eq!(p(&[(2, 3, 1), (0, 1, 4)]).total_degree(), Ok(5));
    }

    #[test]
    fn qt_bracket_examples() {
        assert_eq!(qt_bracket(1).unwrap(), BivariatePoly::one());
        assert_eq!(qt_bracket(2).unwrap(), t() + q());
        assert_eq!(
            qt_bracket(4).unwrap(),
            p(&[(0, 3, 1), (1, 2, 1), (2, 1, 1), (3, 0, 1)])
        );
        assert!(qt_bracket(0).is_err());
        assert_eq!(qt_bracket(7).unwrap().len(), 7);
    }

    #[test]
    fn qt_factorial_product_examples() {
        assert_eq!(qt_factorial_product(0), BivariatePoly::one());
        assert_eq!(qt_factorial_product(1), t());
        assert_eq!(qt_factorial_product(2), p(&[(0, 3, 1), (1, 2, 1)]));
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_qt(0), BivariatePoly::one());
        assert_eq!(catalan_qt(2), q() + t());
        let one = BigInt::one();
        assert_eq!(catalan_qt(3).eval(&one, &one), BigInt::from(5));
    }

    #[test]
    fn catalan_numbers_up_to_twelve() {
        let known = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012];
        let seq = catalan_qt_sequence(12);
        for (n, &c) in known.iter().enumerate() {
            assert_eq!(seq[n].coefficient_sum(), BigInt::from(c), "n = {n}");
        }
    }

    #[test]
    fn recursion_initial_values() {
        let seq = tree_recursion_i(3);
        assert_eq!(seq[0], BivariatePoly::one());
        assert_eq!(seq[1], t());
        assert_eq!(seq[2], p(&[(0, 2, 1), (0, 3, 1), (1, 2, 1)]));
        let i3 = p(&[
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
        ]);
        assert_eq!(seq[3], i3);
    }

    /// Univariate recursion at `t = 1`, written independently of the
    /// bivariate one.
    fn mallows_riordan(n_max: usize) -> Vec<Vec<i64>> {
        let mut seq: Vec<Vec<i64>> = vec![vec![1]];
        for n in 0..n_max {
            let mut next = vec![0i64; n * (n + 1) / 2 + 2];
            for i in 0..=n {
                let binom = binomial(n as u64, i as u64).to_string().parse::<i64>().unwrap();
                for (x, &cx) in seq[i].iter().enumerate() {
                    for (y, &cy) in seq[n - i].iter().enumerate() {
                        for s in 0..=i {
                            next[x + y + s] += binom * cx * cy;
                        }
                    }
                }
            }
            while next.last() == Some(&0) {
                next.pop();
            }
            seq.push(next);
        }
        seq
    }

    #[test]
    fn recursion_specializes_to_mallows_riordan() {
        let bivariate = tree_recursion_i(8);
        let univariate = mallows_riordan(8);
        for n in 0..=8 {
            let at_one = bivariate[n].eval_t(&BigInt::one());
            let expected = BivariatePoly::from_terms(
                univariate[n].iter().enumerate().map(|(k, &c)| (k as u32, 0, c)),
            );
            assert_eq!(at_one, expected, "n = {n}");
        }
    }

    #[test]
    fn recursion_and_catalan_are_nonnegative() {
        for (n, poly) in tree_recursion_i(8).iter().enumerate() {
            assert!(poly.is_nonnegative(), "I_{n}");
        }
        for (n, poly) in catalan_qt_sequence(8).iter().enumerate() {
            assert!(poly.is_nonnegative(), "C_{n}");
        }
    }

    #[test]
    fn reduced_inversion_enumerator_is_symmetric() {
        for (n, poly) in tree_recursion_i(8).iter().enumerate() {
            let reduced = poly.div_t_pow(n as u32).unwrap();
            assert_eq!(reduced, reduced.swap_qt(), "n = {n}");
        }
    }

    #[test]
    fn display_is_canonical() {
        let i2 = p(&[(1, 2, 1), (0, 3, 1), (0, 2, 1)]);
        assert_eq!(i2.to_string(), "t^2 + t^3 + q*t^2");
        assert_eq!(p(&[(0, 0, 1)]).to_string(), "1");
        assert_eq!(p(&[(2, 0, 1), (0, 2, -1)]).to_string(), "-t^2 + q^2");
        assert_eq!(p(&[(1, 1, 3)]).to_string(), "3*q*t");
        assert_eq!(BivariatePoly::zero().to_string(), "0");
    }

    #[test]
    fn json_form() {
        let poly = p(&[(1, 2, 1), (0, 3, -12)]);
        let json = serde_json::to_string(&poly).unwrap();
        assert_eq!(json, r#"[{"q":0,"t":3,"c":"-12"},{"q":1,"t":2,"c":"1"}]"#);
        let back: BivariatePoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, poly);
        let dup = r#"[{"q":0,"t":3,"c":"1"},{"q":0,"t":3,"c":"2"}]"#;
        assert!(serde_json::from_str::<BivariatePoly>(dup).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = BivariatePoly> {
            prop::collection::vec((0u32..4, 0u32..4, -5i64..=5), 0..6)
                .prop_map(BivariatePoly::from_terms)
        }

        proptest! {
            #[test]
            fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &BivariatePoly::one(), a.clone());
                prop_assert_eq!(&a + &BivariatePoly::zero(), a.clone());
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn no_zero_terms_survive(a in arb_poly(), b in arb_poly()) {
                let s = &a * &b + &a - &b;
                prop_assert!(s.terms().all(|(_, _, c)| !c.is_zero()));
            }

            #[test]
            fn json_round_trip(a in arb_poly()) {
                let json = serde_json::to_string(&a).unwrap();
                let back: BivariatePoly = serde_json::from_str(&json).unwrap();
                prop_assert_eq!(back, a);
            }
        }
    }
}
