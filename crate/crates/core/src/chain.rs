//! Integer chain complexes and their homology.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::causal::lightlike_sequences;
use crate::complex::SimplicialPair;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::rational::Rational;
use crate::sequence::PointSequence;
use crate::snf::{normalize, snf_of_columns};

/// Integer matrix stored by columns; each column lists `(row, value)` with nonzero values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.columns[j].iter().find(|(r, _)| *r == i).map_or(0, |(_, v)| *v)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i][j] += v;
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex<K> {
    min_degree: i32,
    basis: Vec<Vec<K>>,
    /// `boundary[i]` maps degree `min_degree + i` to the degree below it.
    boundary: Vec<SparseMatrix>,
}

impl<K> ChainComplex<K> {
    pub fn new(min_degree: i32, basis: Vec<Vec<K>>, boundary: Vec<SparseMatrix>) -> Self {
        assert_eq!(basis.len(), boundary.len());
        Self { min_degree, basis, boundary }
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.basis.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.min_degree..=self.max_degree()
    }

    fn slot(&self, d: i32) -> Option<usize> {
        (d >= self.min_degree && d <= self.max_degree()).then(|| (d - self.min_degree) as usize)
    }

    pub fn basis(&self, d: i32) -> &[K] {
        self.slot(d).map_or(&[], |i| &self.basis[i])
    }

    pub fn rank(&self, d: i32) -> usize {
        self.basis(d).len()
    }

    /// The boundary out of degree `d`.
    pub fn boundary(&self, d: i32) -> Option<&SparseMatrix> {
        self.slot(d).map(|i| &self.boundary[i])
    }

    pub fn is_zero(&self) -> bool {
        self.basis.iter().all(Vec::is_empty)
    }

    /// Σ (-1)^d rank C_d.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|d| if d.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(d) as i64).sum()
    }

    /// The quotient by the span of the basis elements rejected by `keep`.
    /// Only meaningful when the rejected elements span a subcomplex.
    pub fn quotient(&self, keep: impl Fn(&K) -> bool) -> ChainComplex<K>
    where
        K: Clone,
    {
        let kept: Vec<Vec<Option<usize>>> = self
            .basis
            .iter()
            .map(|b| {
                let mut next = 0;
                b.iter()
                    .map(|s| {
                        keep(s).then(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let mut basis = Vec::with_capacity(self.basis.len());
        let mut boundary = Vec::with_capacity(self.basis.len());
        for (i, b) in self.basis.iter().enumerate() {
            basis.push(b.iter().zip(&kept[i]).filter(|(_, k)| k.is_some()).map(|(s, _)| s.clone()).collect::<Vec<_>>());
            let rows = if i == 0 { self.boundary[0].rows } else { basis[i - 1].len() };
            let columns = self.boundary[i]
                .columns
                .iter()
                .zip(&kept[i])
                .filter(|(_, k)| k.is_some())
                .map(|(col, _)| {
                    col.iter()
                        .filter_map(|&(r, v)| if i == 0 { Some((r, v)) } else { kept[i - 1][r].map(|r| (r, v)) })
                        .collect()
                })
                .collect();
            boundary.push(SparseMatrix { rows, columns });
        }
        ChainComplex::new(self.min_degree, basis, boundary)
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for d in self.degrees() {
            let (Some(outer), Some(inner)) = (self.boundary(d - 1), self.boundary(d)) else { continue };
            for col in &inner.columns {
                let mut acc: HashMap<usize, i128> = HashMap::new();
                for &(k, v) in col {
                    for &(i, w) in &outer.columns[k] {
                        *acc.entry(i).or_insert(0) += v as i128 * w as i128;
                    }
                }
                if acc.values().any(|&x| x != 0) {
                    return Err(Error::BoundarySquareNonzero(d));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 { "Z".to_string() } else { format!("Z^{}", self.betti) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Nonzero homology groups by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologySummary {
    pub groups: BTreeMap<i32, HomologyGroup>,
}

impl HomologySummary {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_betti(betti: &[(i32, usize)]) -> Self {
        let mut s = Self::zero();
        for &(d, b) in betti {
            s.insert(d, HomologyGroup { betti: b, torsion: vec![] });
        }
        s
    }

    fn insert(&mut self, d: i32, g: HomologyGroup) {
        if !g.is_zero() {
            self.groups.insert(d, g);
        }
    }

    pub fn group(&self, d: i32) -> HomologyGroup {
        self.groups.get(&d).cloned().unwrap_or_default()
    }

    pub fn betti(&self, d: i32) -> usize {
        self.groups.get(&d).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, d: i32) -> &[BigInt] {
        self.groups.get(&d).map_or(&[], |g| &g.torsion)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn total_betti(&self) -> usize {
        self.groups.values().map(|g| g.betti).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|(d, g)| if d.rem_euclid(2) == 0 { 1 } else { -1 } * g.betti as i64).sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.values().all(|g| g.torsion.is_empty())
    }

    /// Degrees shifted up by `k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { groups: self.groups.iter().map(|(d, g)| (d + k, g.clone())).collect() }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        let degrees: std::collections::BTreeSet<i32> = self.groups.keys().chain(other.groups.keys()).copied().collect();
        for d in degrees {
            let (x, y) = (self.group(d), other.group(d));
            let factors = normalize(x.torsion.into_iter().chain(y.torsion).collect());
            let torsion = factors.into_iter().filter(|t| !t.is_one()).collect();
            out.insert(d, HomologyGroup { betti: x.betti + y.betti, torsion });
        }
        out
    }

    /// Betti numbers only, by degree.
    pub fn betti_vector(&self) -> BTreeMap<i32, usize> {
        self.groups.iter().filter(|(_, g)| g.betti > 0).map(|(d, g)| (*d, g.betti)).collect()
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.groups.iter().map(|(d, g)| format!("H{d} = {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

pub fn homology<K>(cc: &ChainComplex<K>) -> Result<HomologySummary> {
    cc.check_square_zero()?;
    let mut out = HomologySummary::zero();
    let mut ranks: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for d in cc.degrees() {
        let m = cc.boundary(d).expect("degree in range");
        ranks.push(snf_of_columns(m.rows, &m.columns));
    }
    for (i, d) in cc.degrees().enumerate() {
        let out_rank = ranks[i].0;
        let (in_rank, torsion) = ranks.get(i + 1).cloned().unwrap_or_default();
        let betti = cc.rank(d) - out_rank - in_rank;
        out.insert(d, HomologyGroup { betti, torsion });
    }
    Ok(out)
}

/// The magnitude chain complex MC_*^ℓ(X; a, b).
pub fn magnitude_chain_complex(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> ChainComplex<PointSequence> {
    let seqs = lightlike_sequences(x, a, b, ell);
    let top = seqs.iter().map(PointSequence::degree).max();
    let Some(top) = top else {
        return ChainComplex::new(0, vec![], vec![]);
    };
    let mut basis: Vec<Vec<PointSequence>> = vec![Vec::new(); top + 1];
    for s in seqs {
        basis[s.degree()].push(s);
    }
    let index: Vec<HashMap<&[usize], usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(i, s)| (s.points(), i)).collect()).collect();
    let mut boundary = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let rows = if k == 0 { 0 } else { basis[k - 1].len() };
        let columns = basis[k]
            .iter()
            .map(|s| {
                let p = s.points();
                let mut col = Vec::new();
                for i in 1..k {
                    if x.between(p[i - 1], p[i], p[i + 1]) {
                        let face = [&p[..i], &p[i + 1..]].concat();
                        let row = index[k - 1][face.as_slice()];
                        col.push((row, if i % 2 == 0 { 1 } else { -1 }));
                    }
                }
                merge_column(col)
            })
            .collect();
        boundary.push(SparseMatrix { rows, columns });
    }
    ChainComplex::new(0, basis, boundary)
}

fn merge_column(mut col: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    col.sort_unstable();
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

/// Chains of the pair C_*(total) / C_*(sub). With augmentation the empty simplex
/// is a generator in degree −1 exactly when the total complex is not void and the
/// subcomplex is void.
pub fn relative_chain_complex<V>(pair: &SimplicialPair<V>, augmented: bool) -> ChainComplex<Vec<usize>> {
    let rel = pair.relative_simplices();
    let top = rel.iter().map(|s| s.len()).max().unwrap_or(0);
    let min_degree = if augmented { -1 } else { 0 };
    // slot i holds simplices with i + (1 + min_degree) vertices
    let offset = (1 + min_degree) as usize;
    let slots = (top + 1).saturating_sub(offset).max(if augmented { 1 } else { 0 });
    let mut basis: Vec<Vec<Vec<usize>>> = vec![Vec::new(); slots];
    if augmented && !pair.total.is_void() && pair.sub.is_void() {
        basis[0].push(Vec::new());
    }
    for s in rel {
        basis[s.len() - offset].push(s.clone());
    }
    let index: Vec<HashMap<&[usize], usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();
    let mut boundary = Vec::with_capacity(slots);
    for k in 0..slots {
        let rows = if k == 0 { 0 } else { basis[k - 1].len() };
        let columns = basis[k]
            .iter()
            .map(|s| {
                if k == 0 {
                    return Vec::new();
                }
                let mut col = Vec::new();
                for i in 0..s.len() {
                    let face = [&s[..i], &s[i + 1..]].concat();
                    if let Some(&row) = index[k - 1].get(face.as_slice()) {
                        col.push((row, if i % 2 == 0 { 1 } else { -1 }));
                    }
                }
                merge_column(col)
            })
            .collect();
        boundary.push(SparseMatrix { rows, columns });
    }
    ChainComplex::new(min_degree, basis, boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{order_complex_pair, SimplicialComplex};
    use crate::metric::tests::{c4, complete, graph};
    use crate::rational::int;

    #[test]
    fn magnitude_complex_examples() {
        let two = complete(2);
        let cc = magnitude_chain_complex(&two, 0, 1, &int(1));
        assert_eq!(cc.rank(1), 1);
        assert_eq!(homology(&cc).unwrap(), HomologySummary::from_betti(&[(1, 1)]));
        let k3 = complete(3);
        let cc = magnitude_chain_complex(&k3, 0, 1, &int(2));
        assert_eq!(cc.basis(2).len(), 1);
        assert_eq!(homology(&cc).unwrap(), HomologySummary::from_betti(&[(2, 1)]));
        let cc = magnitude_chain_complex(&k3, 1, 1, &int(0));
        assert_eq!(homology(&cc).unwrap(), HomologySummary::from_betti(&[(0, 1)]));
    }

    #[test]
    fn c4_antipodal_is_a_two_sphere() {
        let x = c4();
        let [a, b] = ["a", "b"].map(|l| x.resolve(l).unwrap());
        let h = homology(&magnitude_chain_complex(&x, a, b, &int(2))).unwrap();
        assert_eq!(h, HomologySummary::from_betti(&[(2, 1)]));
    }

    #[test]
    fn path_has_no_homology_through_the_middle() {
        let p = graph(&["a", "c", "b"], &[("a", "c"), ("c", "b")]);
        let h = homology(&magnitude_chain_complex(&p, 0, 2, &int(2))).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn augmented_relative_examples() {
        let point =
            SimplicialPair::new(vec![0], SimplicialComplex::from_facets([vec![0]]), SimplicialComplex::Void).unwrap();
        let cc = relative_chain_complex(&point, true);
        assert_eq!((cc.rank(-1), cc.rank(0)), (1, 1));
        assert!(homology(&cc).unwrap().is_zero());

        let empty = SimplicialPair::<usize>::new(vec![], SimplicialComplex::empty(), SimplicialComplex::Void).unwrap();
        let cc = relative_chain_complex(&empty, true);
        assert_eq!(homology(&cc).unwrap(), HomologySummary::from_betti(&[(-1, 1)]));

        let s0 = SimplicialPair::new(
            vec![0, 1],
            SimplicialComplex::from_facets([vec![0], vec![1]]),
            SimplicialComplex::Void,
        )
        .unwrap();
        let h = homology(&relative_chain_complex(&s0, true)).unwrap();
        assert_eq!(h, HomologySummary::from_betti(&[(0, 1)]));
        let h = homology(&relative_chain_complex(&s0, false)).unwrap();
        assert_eq!(h, HomologySummary::from_betti(&[(0, 2)]));
    }

    #[test]
    fn torsion_of_projective_plane() {
        // six-vertex triangulation of RP^2
        let facets = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![2, 4, 5],
        ];
        let pair =
            SimplicialPair::new((0..6).collect(), SimplicialComplex::from_facets(facets), SimplicialComplex::Void)
                .unwrap();
        let h = homology(&relative_chain_complex(&pair, false)).unwrap();
        assert_eq!(h.betti(0), 1);
        assert_eq!(h.betti(1), 0);
        assert_eq!(h.torsion(1), &[BigInt::from(2)]);
        assert_eq!(h.betti(2), 0);
    }

    #[test]
    fn mainisom_small_case() {
        let k3 = complete(3);
        let pair = order_complex_pair(&k3, 0, 1, &int(2));
        let h = homology(&relative_chain_complex(&pair, true)).unwrap();
        assert_eq!(h, HomologySummary::from_betti(&[(2, 1)]));
    }

    #[test]
    fn direct_sum_normalizes_torsion() {
        let mut a = HomologySummary::zero();
        a.insert(1, HomologyGroup { betti: 1, torsion: vec![BigInt::from(2)] });
        let mut b = HomologySummary::zero();
        b.insert(1, HomologyGroup { betti: 0, torsion: vec![BigInt::from(3)] });
        let s = a.direct_sum(&b);
        assert_eq!(s.group(1), HomologyGroup { betti: 1, torsion: vec![BigInt::from(6)] });
        assert_eq!(s.shift(2).betti(3), 1);
    }
}
