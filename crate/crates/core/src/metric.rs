//! Finite metric spaces with exact rational distances.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sequence::PointSequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Rational>>,
    index: HashMap<String, usize>,
}

impl MetricSpace {
    pub fn from_distance_matrix(labels: Vec<String>, entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            let cols = entries.iter().map(Vec::len).max().unwrap_or(0);
            return Err(Error::DimensionMismatch { labels: n, rows: entries.len(), cols });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let d = &entries[i][j];
                if d.is_negative() {
                    return Err(Error::NegativeDistance(i, j));
                }
                if i == j && !d.is_zero() {
                    return Err(Error::NonzeroDiagonal(i));
                }
                if i != j && d.is_zero() {
                    return Err(Error::ZeroOffDiagonal(i, j));
                }
                if entries[j][i] != *d {
                    return Err(Error::Asymmetry(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if entries[i][k] > &entries[i][j] + &entries[j][k] {
                        return Err(Error::TriangleViolation { i, j, k });
                    }
                }
            }
        }
        Ok(Self { labels, dist: entries, index })
    }

    /// Shortest-path metric of a connected graph with positive rational edge weights.
    pub fn from_weighted_graph(vertices: Vec<String>, edges: &[(String, String, Rational)]) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in vertices.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = Some(Rational::zero());
        }
        for (u, v, w) in edges {
            let iu = *index.get(u).ok_or_else(|| Error::UnknownLabel(u.clone()))?;
            let iv = *index.get(v).ok_or_else(|| Error::UnknownLabel(v.clone()))?;
            if !w.is_positive() {
                return Err(Error::NonpositiveWeight(u.clone(), v.clone(), w.clone()));
            }
            if iu == iv {
                return Err(Error::SelfLoop(u.clone()));
            }
            let better = d[iu][iv].as_ref().is_none_or(|old| w < old);
            if better {
                d[iu][iv] = Some(w.clone());
                d[iv][iu] = Some(w.clone());
            }
        }
        for k in 0..n {
            for i in 0..n {
                let Some(dik) = d[i][k].clone() else { continue };
                for j in 0..n {
                    if let Some(dkj) = &d[k][j] {
                        let via = &dik + dkj;
                        if d[i][j].as_ref().is_none_or(|cur| via < *cur) {
                            d[i][j] = Some(via);
                        }
                    }
                }
            }
        }
        let mut dist = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                match d[i][j].take() {
                    Some(x) => row.push(x),
                    None => return Err(Error::DisconnectedGraph(vertices[i].clone(), vertices[j].clone())),
                }
            }
            dist.push(row);
        }
        Ok(Self { labels: vertices, dist, index })
    }

    /// The product with the sum metric; point `(i, j)` has index `i * |other| + j`.
    pub fn product(&self, other: &MetricSpace) -> MetricSpace {
        let (n, m) = (self.len(), other.len());
        let mut labels = Vec::with_capacity(n * m);
        for x in &self.labels {
            for y in &other.labels {
                labels.push(format!("({x},{y})"));
            }
        }
        let mut dist = vec![vec![Rational::zero(); n * m]; n * m];
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        dist[i1 * m + j1][i2 * m + j2] = &self.dist[i1][i2] + &other.dist[j1][j2];
                    }
                }
            }
        }
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        MetricSpace { labels, dist, index }
    }

    /// The induced subspace on `points`, in the given order.
    pub fn subspace(&self, points: &[usize]) -> Result<MetricSpace> {
        let labels = points.iter().map(|&p| self.labels[p].clone()).collect();
        let dist = points.iter().map(|&p| points.iter().map(|&q| self.dist[p][q].clone()).collect()).collect();
        MetricSpace::from_distance_matrix(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn resolve(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    pub fn distances(&self) -> &[Vec<Rational>] {
        &self.dist
    }

    /// d(x_0, ..., x_n) for an arbitrary list of points.
    pub fn path_length(&self, points: &[usize]) -> Rational {
        points.windows(2).fold(Rational::zero(), |acc, w| acc + &self.dist[w[0]][w[1]])
    }

    pub fn seq_length(&self, s: &PointSequence) -> Rational {
        self.path_length(s.points())
    }

    pub fn diameter(&self) -> Rational {
        self.dist.iter().flatten().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_positive_distance(&self) -> Option<Rational> {
        self.dist.iter().flatten().filter(|d| d.is_positive()).min().cloned()
    }

    /// True when `y` lies between `x` and `z`: d(x,y) + d(y,z) = d(x,z).
    pub fn between(&self, x: usize, y: usize, z: usize) -> bool {
        &self.dist[x][y] + &self.dist[y][z] == self.dist[x][z]
    }

    pub fn interval(&self, a: usize, b: usize, kind: IntervalKind) -> IntervalPoset {
        let mut carrier: Vec<usize> = (0..self.len())
            .filter(|&x| self.between(a, x, b))
            .filter(|&x| match kind {
                IntervalKind::Closed => true,
                IntervalKind::Open => x != a && x != b,
                IntervalKind::HalfOpenLeft => x != a,
                IntervalKind::HalfOpenRight => x != b,
            })
            .collect();
        carrier.sort_by(|&x, &y| self.dist[a][x].cmp(&self.dist[a][y]).then(x.cmp(&y)));
        let dab = &self.dist[a][b];
        let leq = carrier
            .iter()
            .map(|&x| carrier.iter().map(|&y| self.path_length(&[a, x, y, b]) == *dab).collect())
            .collect();
        IntervalPoset { a, b, kind, carrier, leq }
    }

    /// Whether the k-th point of `s` is smooth. Endpoints are always singular.
    pub fn is_smooth(&self, s: &PointSequence, k: usize) -> bool {
        let p = s.points();
        k >= 1 && k + 1 < p.len() && self.between(p[k - 1], p[k], p[k + 1])
    }

    /// Positions of the singular points of `s`, endpoints included.
    pub fn singular_positions(&self, s: &PointSequence) -> Vec<usize> {
        (0..s.points().len()).filter(|&k| !self.is_smooth(s, k)).collect()
    }

    /// All 4-cuts, in lexicographic order, with the minimal length among them.
    pub fn four_cuts(&self) -> (Vec<[usize; 4]>, CutLength) {
        let n = self.len();
        let mut cuts = Vec::new();
        let mut best: Option<Rational> = None;
        for x0 in 0..n {
            for x1 in (0..n).filter(|&x| x != x0) {
                for x2 in (0..n).filter(|&x| x != x1) {
                    for x3 in (0..n).filter(|&x| x != x2) {
                        let full = self.path_length(&[x0, x1, x2, x3]);
                        if self.dist[x0][x3] < full
                            && self.path_length(&[x0, x2, x3]) == full
                            && self.path_length(&[x0, x1, x3]) == full
                        {
                            if best.as_ref().is_none_or(|b| full < *b) {
                                best = Some(full);
                            }
                            cuts.push([x0, x1, x2, x3]);
                        }
                    }
                }
            }
        }
        (cuts, best.map_or(CutLength::Infinite, CutLength::Finite))
    }

    /// The pawful condition for graph metrics of diameter at most 2.
    pub fn is_pawful(&self) -> bool {
        let one = Rational::from_integer(1.into());
        let two = Rational::from_integer(2.into());
        if self.diameter() > two {
            return false;
        }
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if self.dist[x][y] != two {
                    continue;
                }
                for z in 0..n {
                    if self.dist[y][z] != two || self.dist[x][z] != one {
                        continue;
                    }
                    let has_apex =
                        (0..n).any(|a| self.dist[a][x] == one && self.dist[a][y] == one && self.dist[a][z] == one);
                    if !has_apex {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks that `f` (an index map from `self` into `other`) preserves distances.
    pub fn is_isometric_embedding(&self, other: &MetricSpace, f: &[usize]) -> bool {
        f.len() == self.len()
            && (0..self.len()).all(|i| (0..self.len()).all(|j| self.dist[i][j] == other.dist[f[i]][f[j]]))
    }

    /// Searches for an isometry by backtracking. Returns the point map if one exists.
    pub fn find_isometry(&self, other: &MetricSpace) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let profile = |m: &MetricSpace, i: usize| {
            let mut r: Vec<Rational> = m.dist[i].clone();
            r.sort();
            r
        };
        let ps: Vec<_> = (0..self.len()).map(|i| profile(self, i)).collect();
        let po: Vec<_> = (0..other.len()).map(|i| profile(other, i)).collect();
        let mut map = Vec::with_capacity(self.len());
        let mut used = vec![false; other.len()];
        fn go(
            a: &MetricSpace,
            b: &MetricSpace,
            ps: &[Vec<Rational>],
            po: &[Vec<Rational>],
            map: &mut Vec<usize>,
            used: &mut [bool],
        ) -> bool {
            let i = map.len();
            if i == a.len() {
                return true;
            }
            for j in 0..b.len() {
                if used[j] || ps[i] != po[j] {
                    continue;
                }
                if (0..i).all(|k| a.dist[i][k] == b.dist[j][map[k]]) {
                    used[j] = true;
                    map.push(j);
                    if go(a, b, ps, po, map, used) {
                        return true;
                    }
                    map.pop();
                    used[j] = false;
                }
            }
            false
        }
        go(self, other, &ps, &po, &mut map, &mut used).then_some(map)
    }

    /// Histogram of all off-diagonal distances.
    pub fn distance_spectrum(&self) -> BTreeMap<Rational, usize> {
        let mut h = BTreeMap::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j {
                    *h.entry(self.dist[i][j].clone()).or_insert(0) += 1;
                }
            }
        }
        h
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    Closed,
    Open,
    HalfOpenLeft,
    HalfOpenRight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalPoset {
    pub a: usize,
    pub b: usize,
    pub kind: IntervalKind,
    /// Points of the interval, sorted by distance from `a`.
    pub carrier: Vec<usize>,
    leq: Vec<Vec<bool>>,
}

impl IntervalPoset {
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// Order on carrier positions.
    pub fn leq_pos(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Order on point indices; false when either point is outside the carrier.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        match (self.position(x), self.position(y)) {
            (Some(i), Some(j)) => self.leq[i][j],
            _ => false,
        }
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.carrier.iter().position(|&c| c == x)
    }
}

/// m_X: the least length of a 4-cut, or infinity when there is none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutLength {
    Finite(Rational),
    Infinite,
}

impl CutLength {
    /// Whether `ell < m_X`.
    pub fn exceeds(&self, ell: &Rational) -> bool {
        match self {
            CutLength::Finite(m) => ell < m,
            CutLength::Infinite => true,
        }
    }
}

impl fmt::Display for CutLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutLength::Finite(m) => write!(f, "{m}"),
            CutLength::Infinite => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::int;

    pub fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    pub fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> MetricSpace {
        let e: Vec<_> = edges.iter().map(|(u, v)| (u.to_string(), v.to_string(), int(1))).collect();
        MetricSpace::from_weighted_graph(labels(vertices), &e).unwrap()
    }

    pub fn c4() -> MetricSpace {
        graph(&["a", "b", "c", "d"], &[("a", "c"), ("c", "b"), ("b", "d"), ("d", "a")])
    }

    pub fn complete(n: usize) -> MetricSpace {
        let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let d = (0..n).map(|i| (0..n).map(|j| int((i != j) as i64)).collect()).collect();
        MetricSpace::from_distance_matrix(names, d).unwrap()
    }

    fn matrix(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    fn seq(p: &[usize]) -> PointSequence {
        PointSequence::new(p.to_vec()).unwrap()
    }

    #[test]
    fn validates_axioms() {
        let two = MetricSpace::from_distance_matrix(labels(&["a", "b"]), matrix(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(two.d(0, 1), &int(1));
        assert_eq!(
            MetricSpace::from_distance_matrix(labels(&["a", "b"]), matrix(&[&[0, 1], &[2, 0]])),
            Err(Error::Asymmetry(0, 1))
        );
        assert_eq!(
            MetricSpace::from_distance_matrix(labels(&["a", "b", "c"]), matrix(&[&[0, 1, 3], &[1, 0, 1], &[3, 1, 0]])),
            Err(Error::TriangleViolation { i: 0, j: 1, k: 2 })
        );
        assert_eq!(
            MetricSpace::from_distance_matrix(labels(&["a", "b"]), matrix(&[&[0, 0], &[0, 0]])),
            Err(Error::ZeroOffDiagonal(0, 1))
        );
        assert_eq!(
            MetricSpace::from_distance_matrix(labels(&["a", "b"]), matrix(&[&[0, -1], &[-1, 0]])),
            Err(Error::NegativeDistance(0, 1))
        );
        assert_eq!(
            MetricSpace::from_distance_matrix(labels(&["a", "a"]), matrix(&[&[0, 1], &[1, 0]])),
            Err(Error::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn graph_metrics() {
        let c4 = c4();
        let (a, b, c) = (c4.resolve("a").unwrap(), c4.resolve("b").unwrap(), c4.resolve("c").unwrap());
        assert_eq!(c4.d(a, b), &int(2));
        assert_eq!(c4.d(a, c), &int(1));
        let p = graph(&["a", "c", "b"], &[("a", "c"), ("c", "b")]);
        assert_eq!(p.d(0, 2), &int(2));
        let disconnected = MetricSpace::from_weighted_graph(labels(&["a", "b"]), &[]);
        assert!(matches!(disconnected, Err(Error::DisconnectedGraph(_, _))));
        let bad = MetricSpace::from_weighted_graph(labels(&["a", "b"]), &[("a".into(), "b".into(), int(0))]);
        assert!(matches!(bad, Err(Error::NonpositiveWeight(_, _, _))));
    }

    #[test]
    fn products() {
        let k2 = complete(2);
        let sq = k2.product(&k2);
        assert!(sq.find_isometry(&c4()).is_some());
        let one = complete(1);
        assert!(k2.product(&one).find_isometry(&k2).is_some());
        let p2 = graph(&["x", "y", "z"], &[("x", "y"), ("y", "z")]);
        let prod = k2.product(&p2);
        assert_eq!(prod.len(), 6);
        assert_eq!(prod.diameter(), int(3));
        for i in 0..2 {
            for j in 0..3 {
                for k in 0..2 {
                    for l in 0..3 {
                        assert_eq!(prod.d(i * 3 + j, k * 3 + l), &(k2.d(i, k) + p2.d(j, l)));
                    }
                }
            }
        }
    }

    #[test]
    fn intervals() {
        let c4 = c4();
        let [a, b, c, d] = ["a", "b", "c", "d"].map(|l| c4.resolve(l).unwrap());
        let i = c4.interval(a, b, IntervalKind::Closed);
        assert_eq!(i.len(), 4);
        assert!(i.leq(a, c) && i.leq(c, b) && i.leq(a, d) && i.leq(d, b));
        assert!(!i.leq(c, d) && !i.leq(d, c));
        assert_eq!(c4.interval(a, b, IntervalKind::Open).carrier.len(), 2);
        let k3 = complete(3);
        assert!(k3.interval(0, 1, IntervalKind::Open).is_empty());
        assert_eq!(k3.interval(2, 2, IntervalKind::Closed).carrier, vec![2]);
    }

    #[test]
    fn lengths_and_smoothness() {
        let k3 = complete(3);
        assert_eq!(k3.seq_length(&seq(&[0, 2, 1])), int(2));
        assert_eq!(k3.seq_length(&seq(&[0])), int(0));
        assert!(!k3.is_smooth(&seq(&[0, 2, 1]), 1));
        let c4 = c4();
        let s = seq(&[0, 2, 1, 3]);
        assert_eq!(c4.seq_length(&s), int(3));
        let p = graph(&["a", "c", "b"], &[("a", "c"), ("c", "b")]);
        assert!(p.is_smooth(&seq(&[0, 1, 2]), 1));
        assert!(!p.is_smooth(&seq(&[0, 1, 2]), 0));
        assert!(!p.is_smooth(&seq(&[0, 1, 2]), 2));
    }

    #[test]
    fn four_cuts_of_small_spaces() {
        let c4 = c4();
        let (cuts, m) = c4.four_cuts();
        let [a, b, c, d] = ["a", "b", "c", "d"].map(|l| c4.resolve(l).unwrap());
        assert!(cuts.contains(&[a, c, b, d]));
        assert_eq!(m, CutLength::Finite(int(3)));
        let tree = graph(&["r", "x", "y", "z"], &[("r", "x"), ("r", "y"), ("r", "z")]);
        assert_eq!(tree.four_cuts(), (vec![], CutLength::Infinite));
        assert_eq!(complete(2).four_cuts(), (vec![], CutLength::Infinite));
        assert_eq!(complete(1).four_cuts(), (vec![], CutLength::Infinite));
        assert_eq!(complete(4).four_cuts().1, CutLength::Infinite);
    }

    #[test]
    fn pawful_scan() {
        assert!(complete(3).is_pawful());
        // C4: d(a,b)=2, d(b,a)=2 but d(a,a)=0; no triple with the trigger pattern
        assert!(c4().is_pawful());
        let p2 = graph(&["x", "y", "z"], &[("x", "y"), ("y", "z")]);
        assert!(p2.is_pawful());
        // paw-free obstruction: C5 has diameter 2 and triples (x, y, z) with no common neighbour
        let c5 = graph(&["0", "1", "2", "3", "4"], &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("4", "0")]);
        assert!(!c5.is_pawful());
        let p3 = graph(&["0", "1", "2", "3"], &[("0", "1"), ("1", "2"), ("2", "3")]);
        assert!(!p3.is_pawful());
    }
}
