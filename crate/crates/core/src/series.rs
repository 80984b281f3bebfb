//! Truncated Hahn polynomials in a formal variable q with rational exponents,
//! and the magnitude of a finite metric space.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::causal::{achievable_lengths, achievable_lengths_between, lightlike_sequences};
use crate::checks::magnitude_homology;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::rational::{ceil_div, Rational};

/// Σ c_r q^r over finitely many exponents 0 ≤ r ≤ truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HahnPolynomial {
    terms: BTreeMap<Rational, Rational>,
    truncation: Rational,
}

impl HahnPolynomial {
    pub fn zero(truncation: &Rational) -> Self {
        Self { terms: BTreeMap::new(), truncation: truncation.clone() }
    }

    pub fn one(truncation: &Rational) -> Self {
        Self::monomial(Rational::one(), Rational::zero(), truncation)
    }

    /// c q^e, or zero if e exceeds the truncation.
    pub fn monomial(coeff: Rational, exponent: Rational, truncation: &Rational) -> Self {
        let mut p = Self::zero(truncation);
        p.add_term(exponent, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Rational, Rational)>>(terms: I, truncation: &Rational) -> Self {
        let mut p = Self::zero(truncation);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: Rational, coeff: Rational) {
        assert!(!exponent.is_negative(), "negative exponent");
        if exponent > self.truncation || coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn truncation(&self) -> &Rational {
        &self.truncation
    }

    pub fn coeff(&self, exponent: &Rational) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<Rational, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lowest_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    /// The same series cut at a smaller threshold.
    pub fn truncate(&self, truncation: &Rational) -> Self {
        let t = truncation.min(&self.truncation).clone();
        Self {
            terms: self.terms.iter().filter(|(e, _)| **e <= t).map(|(e, c)| (e.clone(), c.clone())).collect(),
            truncation: t,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (e.clone(), x * c)), &self.truncation)
    }

    fn common(&self, other: &Self) -> Rational {
        self.truncation.clone().min(other.truncation.clone())
    }
}

impl Add for &HahnPolynomial {
    type Output = HahnPolynomial;
    fn add(self, other: &HahnPolynomial) -> HahnPolynomial {
        let mut out = self.truncate(&self.common(other));
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &HahnPolynomial {
    type Output = HahnPolynomial;
    fn sub(self, other: &HahnPolynomial) -> HahnPolynomial {
        self + &(-other)
    }
}

impl Neg for &HahnPolynomial {
    type Output = HahnPolynomial;
    fn neg(self) -> HahnPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &HahnPolynomial {
    type Output = HahnPolynomial;
    fn mul(self, other: &HahnPolynomial) -> HahnPolynomial {
        let t = self.common(other);
        let mut out = HahnPolynomial::zero(&t);
        for (e1, c1) in &self.terms {
            if e1 > &t {
                break;
            }
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if e > t {
                    break;
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for HahnPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "q^{e}")?;
            } else {
                write!(f, "{mag} q^{e}")?;
            }
        }
        Ok(())
    }
}

/// A square matrix of truncated series indexed by points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesMatrix {
    pub entries: Vec<Vec<HahnPolynomial>>,
}

impl SeriesMatrix {
    pub fn identity(n: usize, truncation: &Rational) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { HahnPolynomial::one(truncation) } else { HahnPolynomial::zero(truncation) })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &HahnPolynomial {
        &self.entries[i][j]
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&HahnPolynomial, &HahnPolynomial) -> HahnPolynomial) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Self { entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.len();
        let t = self.entries[0][0].common(&other.entries[0][0]);
        let entries = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = HahnPolynomial::zero(&t);
                        for k in 0..n {
                            if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                                acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(HahnPolynomial::is_zero)
    }
}

/// Z_X = (q^{d(x,y)}), truncated.
pub fn z_matrix(x: &MetricSpace, ell_max: &Rational) -> SeriesMatrix {
    let n = x.len();
    let entries = (0..n)
        .map(|i| (0..n).map(|j| HahnPolynomial::monomial(Rational::one(), x.d(i, j).clone(), ell_max)).collect())
        .collect();
    SeriesMatrix { entries }
}

/// Number of Neumann terms needed below `ell_max`.
pub fn neumann_terms(x: &MetricSpace, ell_max: &Rational) -> u64 {
    x.min_positive_distance().map_or(0, |r0| ceil_div(ell_max, &r0))
}

/// Z_X^{-1} as Σ_{k ≤ K} (I − Z_X)^k.
pub fn z_inverse(x: &MetricSpace, ell_max: &Rational) -> SeriesMatrix {
    let n = x.len();
    let id = SeriesMatrix::identity(n, ell_max);
    let m = id.sub(&z_matrix(x, ell_max));
    let mut sum = id.clone();
    let mut power = id;
    for _ in 0..neumann_terms(x, ell_max) {
        power = power.mul(&m);
        if power.is_zero() {
            break;
        }
        sum = sum.add(&power);
    }
    sum
}

/// The signed path sum Σ_k (−1)^k Σ_{deg 𝒙 = k, a→b} q^{d(𝒙)}.
pub fn perturbative_inverse(x: &MetricSpace, a: usize, b: usize, ell_max: &Rational) -> HahnPolynomial {
    let mut out = HahnPolynomial::zero(ell_max);
    for ell in achievable_lengths_between(x, a, b, ell_max) {
        let c: i64 = lightlike_sequences(x, a, b, &ell).iter().map(|s| if s.degree() % 2 == 0 { 1 } else { -1 }).sum();
        out.add_term(ell, Rational::from_integer(c.into()));
    }
    out
}

pub fn weighting(x: &MetricSpace, ell_max: &Rational) -> Vec<HahnPolynomial> {
    row_sums(&z_inverse(x, ell_max), ell_max)
}

fn row_sums(inv: &SeriesMatrix, ell_max: &Rational) -> Vec<HahnPolynomial> {
    inv.entries.iter().map(|row| row.iter().fold(HahnPolynomial::zero(ell_max), |acc, p| &acc + p)).collect()
}

pub fn magnitude(x: &MetricSpace, ell_max: &Rational) -> HahnPolynomial {
    weighting(x, ell_max).iter().fold(HahnPolynomial::zero(ell_max), |acc, p| &acc + p)
}

#[derive(Debug, Clone)]
pub struct EulerMismatch {
    pub ell: Rational,
    pub a: usize,
    pub b: usize,
    pub series: Rational,
    pub euler: i64,
}

#[derive(Debug, Clone)]
pub struct EulerReport {
    pub checked: usize,
    pub mismatches: Vec<EulerMismatch>,
    pub weighting_ok: bool,
    pub magnitude_ok: bool,
}

impl EulerReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty() && self.weighting_ok && self.magnitude_ok
    }
}

/// Coefficients of Z^{-1} against Euler characteristics of magnitude homology.
pub fn euler_check(x: &MetricSpace, ell_max: &Rational) -> Result<EulerReport> {
    let inv = z_inverse(x, ell_max);
    let n = x.len();
    let lengths = achievable_lengths(x, ell_max);
    let tasks: Vec<(Rational, usize, usize)> =
        lengths.iter().flat_map(|l| (0..n).flat_map(move |a| (0..n).map(move |b| (l.clone(), a, b)))).collect();
    let chis: Vec<Result<i64>> =
        tasks.par_iter().map(|(l, a, b)| Ok(magnitude_homology(x, *a, *b, l)?.euler_characteristic())).collect();
    let mut mismatches = Vec::new();
    let mut chi_of = BTreeMap::new();
    for ((l, a, b), chi) in tasks.iter().zip(chis) {
        let chi = chi?;
        let series = inv.get(*a, *b).coeff(l);
        if series != Rational::from_integer(chi.into()) {
            mismatches.push(EulerMismatch { ell: l.clone(), a: *a, b: *b, series, euler: chi });
        }
        chi_of.insert((l.clone(), *a, *b), chi);
    }
    // exponents of Z^{-1} must all be achievable lengths
    for a in 0..n {
        for b in 0..n {
            for (e, c) in inv.get(a, b).terms() {
                if !chi_of.contains_key(&(e.clone(), a, b)) {
                    mismatches.push(EulerMismatch { ell: e.clone(), a, b, series: c.clone(), euler: 0 });
                }
            }
        }
    }
    let w = row_sums(&inv, ell_max);
    let mag = w.iter().fold(HahnPolynomial::zero(ell_max), |acc, p| &acc + p);
    let mut weighting_ok = true;
    let mut magnitude_ok = true;
    for l in &lengths {
        let mut total = 0i64;
        for (a, wa) in w.iter().enumerate() {
            let s: i64 = (0..n).map(|b| chi_of[&(l.clone(), a, b)]).sum();
            weighting_ok &= wa.coeff(l) == Rational::from_integer(s.into());
            total += s;
        }
        magnitude_ok &= mag.coeff(l) == Rational::from_integer(total.into());
    }
    Ok(EulerReport { checked: tasks.len(), mismatches, weighting_ok, magnitude_ok })
}

/// χ̃(𝓜^ℓ(X; a, b)) for every achievable ℓ and pair, from alternating sequence counts.
pub fn euler_table(x: &MetricSpace, ell_max: &Rational) -> BTreeMap<(Rational, usize, usize), i64> {
    let mut out = BTreeMap::new();
    for a in 0..x.len() {
        for b in 0..x.len() {
            for l in achievable_lengths_between(x, a, b, ell_max) {
                let chi: i64 =
                    lightlike_sequences(x, a, b, &l).iter().map(|s| if s.degree() % 2 == 0 { 1 } else { -1 }).sum();
                if chi != 0 {
                    out.insert((l, a, b), chi);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct RecoverReport {
    pub ell_max: Rational,
    pub euler_tables_equal: bool,
    pub distances_equal: bool,
    pub witness: Option<(Rational, usize, usize)>,
}

impl RecoverReport {
    pub fn is_isometry(&self) -> bool {
        self.distances_equal
    }

    /// The Euler tables and the distance comparison agree.
    pub fn consistent(&self) -> bool {
        self.euler_tables_equal == self.distances_equal
    }
}

/// Decides whether `f: X → Y` is an isometry from Euler characteristics of magnitude homotopy types.
pub fn recover_check(x: &MetricSpace, y: &MetricSpace, f: &[usize]) -> Result<RecoverReport> {
    if x.len() != y.len() || f.len() != x.len() {
        return Err(Error::SizeMismatch(x.len(), y.len()));
    }
    if let Some(&bad) = f.iter().find(|&&p| p >= y.len()) {
        return Err(Error::PointOutOfRange(bad));
    }
    let ell_max = x.diameter().max(y.diameter()) * Rational::from_integer(3.into());
    let tx = euler_table(x, &ell_max);
    let ty = euler_table(y, &ell_max);
    let mapped: BTreeMap<(Rational, usize, usize), i64> =
        tx.iter().map(|((l, a, b), c)| ((l.clone(), f[*a], f[*b]), *c)).collect();
    let witness = mapped
        .iter()
        .find(|(k, v)| ty.get(*k) != Some(*v))
        .map(|(k, _)| k.clone())
        .or_else(|| ty.keys().find(|k| !mapped.contains_key(*k)).cloned())
        .map(|(l, a, b)| {
            let inv_a = f.iter().position(|&p| p == a).unwrap_or(a);
            let inv_b = f.iter().position(|&p| p == b).unwrap_or(b);
            (l, inv_a, inv_b)
        });
    let n = x.len();
    let distances_equal = (0..n).all(|a| (0..n).all(|b| x.d(a, b) == y.d(f[a], f[b])));
    Ok(RecoverReport { ell_max, euler_tables_equal: witness.is_none(), distances_equal, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::tests::{c4, complete, graph};
    use crate::rational::{frac, int};

    fn poly(terms: &[(i64, i64)], t: i64) -> HahnPolynomial {
        HahnPolynomial::from_terms(terms.iter().map(|&(e, c)| (int(e), int(c))), &int(t))
    }

    #[test]
    fn arithmetic_and_display() {
        let p = poly(&[(0, 1), (1, 1)], 3);
        let sq = &p * &p;
        assert_eq!(sq, poly(&[(0, 1), (1, 2), (2, 1)], 3));
        assert_eq!(sq.to_string(), "1 + 2 q^1 + q^2");
        assert_eq!(HahnPolynomial::zero(&int(1)).to_string(), "0");
        let r = HahnPolynomial::monomial(frac(-1, 2), frac(3, 2), &int(2));
        assert_eq!(r.to_string(), "-1/2 q^3/2");
        assert!((&r * &r).is_zero());
    }

    #[test]
    fn two_point_inverse_and_magnitude() {
        let two = complete(2);
        let inv = z_inverse(&two, &int(3));
        assert_eq!(inv.get(0, 0), &poly(&[(0, 1), (2, 1)], 3));
        assert_eq!(inv.get(0, 1), &poly(&[(1, -1), (3, -1)], 3));
        let mag = magnitude(&two, &int(3));
        assert_eq!(mag.to_string(), "2 - 2 q^1 + 2 q^2 - 2 q^3");
        assert_eq!(magnitude(&complete(1), &int(3)).to_string(), "1");
        assert_eq!(perturbative_inverse(&two, 0, 0, &int(2)), poly(&[(0, 1), (2, 1)], 2));
        assert_eq!(perturbative_inverse(&two, 0, 1, &int(1)), poly(&[(1, -1)], 1));
    }

    #[test]
    fn inverse_multiplies_back() {
        for x in [complete(3), c4(), graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")])] {
            let t = int(4);
            let prod = z_matrix(&x, &t).mul(&z_inverse(&x, &t));
            assert_eq!(prod, SeriesMatrix::identity(x.len(), &t));
        }
    }

    #[test]
    fn neumann_tail_vanishes() {
        let x = c4();
        let t = int(3);
        let m = SeriesMatrix::identity(4, &t).sub(&z_matrix(&x, &t));
        let mut p = SeriesMatrix::identity(4, &t);
        for _ in 0..=neumann_terms(&x, &t) {
            p = p.mul(&m);
        }
        assert!(p.is_zero());
    }

    #[test]
    fn euler_identity_small() {
        assert!(euler_check(&complete(3), &int(3)).unwrap().pass());
        assert!(euler_check(&c4(), &int(4)).unwrap().pass());
    }

    #[test]
    fn recovery() {
        let x = c4();
        let rot: Vec<usize> = {
            // a-c-b-d-a rotated one step: a->c, c->b, b->d, d->a
            let [a, b, c, d] = ["a", "b", "c", "d"].map(|l| x.resolve(l).unwrap());
            let mut f = vec![0; 4];
            f[a] = c;
            f[c] = b;
            f[b] = d;
            f[d] = a;
            f
        };
        let r = recover_check(&x, &x, &rot).unwrap();
        assert!(r.is_isometry() && r.consistent());
        let p3 = graph(&["0", "1", "2", "3"], &[("0", "1"), ("1", "2"), ("2", "3")]);
        let r = recover_check(&x, &p3, &[0, 1, 2, 3]).unwrap();
        assert!(!r.is_isometry() && r.consistent());
        let k3 = complete(3);
        let mut d: Vec<Vec<Rational>> = k3.distances().to_vec();
        d[0][1] = frac(3, 2);
        d[1][0] = frac(3, 2);
        let bent = MetricSpace::from_distance_matrix(k3.labels().to_vec(), d).unwrap();
        let r = recover_check(&bent, &k3, &[0, 1, 2]).unwrap();
        assert!(!r.is_isometry() && r.consistent());
        assert!(matches!(recover_check(&k3, &c4(), &[0, 1, 2]), Err(Error::SizeMismatch(3, 4))));
    }
}
