//! Light-like sequences and the essential causal poset.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;

use crate::metric::MetricSpace;
use crate::rational::Rational;
use crate::sequence::PointSequence;

/// A point of X × ℚ. Orders by time first, then by point index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CausalPoint {
    pub time: Rational,
    pub point: usize,
}

impl CausalPoint {
    pub fn new(point: usize, time: Rational) -> Self {
        Self { time, point }
    }

    /// The causal order: d(x, x') ≤ t' − t.
    pub fn precedes(&self, other: &CausalPoint, x: &MetricSpace) -> bool {
        x.d(self.point, other.point) <= &(&other.time - &self.time)
    }
}

/// All sequences from `a` to `b` of length exactly `ell`, in lexicographic order.
pub fn lightlike_sequences(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> Vec<PointSequence> {
    let mut out = Vec::new();
    if x.d(a, b) > ell {
        return out;
    }
    let mut path = vec![a];
    walk(x, b, ell.clone(), &mut path, &mut out);
    out
}

fn walk(x: &MetricSpace, b: usize, remaining: Rational, path: &mut Vec<usize>, out: &mut Vec<PointSequence>) {
    let cur = *path.last().unwrap();
    if cur == b && remaining.is_zero() {
        out.push(PointSequence::new_unchecked(path.clone()));
        return;
    }
    for next in 0..x.len() {
        if next == cur {
            continue;
        }
        let rest = &remaining - x.d(cur, next);
        if x.d(next, b) <= &rest {
            path.push(next);
            walk(x, b, rest, path, out);
            path.pop();
        }
    }
}

/// Time stamps t_i = d(x_0, …, x_i) of a sequence.
pub fn time_stamps(x: &MetricSpace, s: &PointSequence) -> Vec<CausalPoint> {
    let mut t = Rational::zero();
    let p = s.points();
    let mut out = Vec::with_capacity(p.len());
    for (i, &pt) in p.iter().enumerate() {
        if i > 0 {
            t += x.d(p[i - 1], pt);
        }
        out.push(CausalPoint::new(pt, t.clone()));
    }
    out
}

/// The finite poset Cau_ess^ℓ(X; a, b) of causal points on light-like sequences.
#[derive(Debug, Clone)]
pub struct CausalPoset {
    pub a: usize,
    pub b: usize,
    pub ell: Rational,
    /// Sorted by (time, point).
    pub elements: Vec<CausalPoint>,
    less: Vec<Vec<bool>>,
}

impl CausalPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Strict order on element positions.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    pub fn position(&self, p: &CausalPoint) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn minimum(&self) -> Option<&CausalPoint> {
        self.elements.first()
    }

    pub fn maximum(&self) -> Option<&CausalPoint> {
        self.elements.last()
    }

    /// All nonempty chains, as ascending position lists, in lexicographic order.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        chains_of(self.len(), |i, j| self.less[i][j])
    }
}

/// Nonempty chains of a poset on `0..n` whose strict order is compatible with index order.
pub(crate) fn chains_of(n: usize, less: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(n: usize, less: &dyn Fn(usize, usize) -> bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = cur.last().map_or(0, |&l| l + 1);
        for v in start..n {
            if cur.last().is_none_or(|&l| less(l, v)) {
                cur.push(v);
                out.push(cur.clone());
                go(n, less, cur, out);
                cur.pop();
            }
        }
    }
    go(n, &less, &mut cur, &mut out);
    out
}

pub fn essential_poset(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> CausalPoset {
    let mut set = BTreeSet::new();
    for s in lightlike_sequences(x, a, b, ell) {
        set.extend(time_stamps(x, &s));
    }
    let elements: Vec<CausalPoint> = set.into_iter().collect();
    let less = elements.iter().map(|p| elements.iter().map(|q| p != q && p.precedes(q, x)).collect()).collect();
    CausalPoset { a, b, ell: ell.clone(), elements, less }
}

/// Lengths ℓ ≤ `ell_max` realised by some sequence of X, ascending.
pub fn achievable_lengths(x: &MetricSpace, ell_max: &Rational) -> Vec<Rational> {
    let mut out = BTreeSet::new();
    for a in 0..x.len() {
        out.extend(reachable(x, a, ell_max).into_iter().map(|(_, t)| t));
    }
    out.into_iter().collect()
}

/// Lengths ℓ ≤ `ell_max` realised by some sequence from `a` to `b`, ascending.
pub fn achievable_lengths_between(x: &MetricSpace, a: usize, b: usize, ell_max: &Rational) -> Vec<Rational> {
    reachable(x, a, ell_max).into_iter().filter(|(p, _)| *p == b).map(|(_, t)| t).collect()
}

fn reachable(x: &MetricSpace, a: usize, ell_max: &Rational) -> BTreeSet<(usize, Rational)> {
    let mut seen = BTreeSet::new();
    if ell_max < &Rational::zero() {
        return seen;
    }
    let mut queue = VecDeque::new();
    seen.insert((a, Rational::zero()));
    queue.push_back((a, Rational::zero()));
    while let Some((p, t)) = queue.pop_front() {
        for q in 0..x.len() {
            if q == p {
                continue;
            }
            let t2 = &t + x.d(p, q);
            if &t2 <= ell_max && seen.insert((q, t2.clone())) {
                queue.push_back((q, t2));
            }
        }
    }
    seen
}

/// Connected blocks of the graph joining points at distance ≤ ℓ.
/// Pairs in different blocks have no sequences of length ≤ ℓ between them.
pub fn disjoint_split(x: &MetricSpace, ell: &Rational) -> Vec<Vec<usize>> {
    let n = x.len();
    let mut block = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if block[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        block[s] = id;
        let mut i = 0;
        while i < members.len() {
            let p = members[i];
            for q in 0..n {
                if block[q] == usize::MAX && x.d(p, q) <= ell {
                    block[q] = id;
                    members.push(q);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::tests::{c4, complete, graph};
    use crate::rational::{frac, int};

    fn naive(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> Vec<PointSequence> {
        // unpruned enumeration of all sequences with at most ell / r0 steps
        let r0 = x.min_positive_distance().unwrap();
        let max_steps = crate::rational::ceil_div(ell, &r0) as usize;
        let mut out = Vec::new();
        let mut frontier = vec![vec![a]];
        for _ in 0..=max_steps {
            let mut next = Vec::new();
            for p in frontier {
                if *p.last().unwrap() == b && x.path_length(&p) == *ell {
                    out.push(PointSequence::new(p.clone()).unwrap());
                }
                for q in 0..x.len() {
                    if q != *p.last().unwrap() {
                        let mut e = p.clone();
                        e.push(q);
                        next.push(e);
                    }
                }
            }
            frontier = next;
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_examples() {
        let k3 = complete(3);
        let s = lightlike_sequences(&k3, 0, 1, &int(2));
        assert_eq!(s, vec![PointSequence::new(vec![0, 2, 1]).unwrap()]);
        let two = complete(2);
        assert!(lightlike_sequences(&two, 0, 1, &int(2)).is_empty());
        assert_eq!(lightlike_sequences(&two, 1, 1, &int(0)), vec![PointSequence::single(1)]);
    }

    #[test]
    fn enumeration_matches_naive() {
        let spaces = [complete(3), complete(4), c4(), graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")])];
        for x in &spaces {
            for a in 0..x.len() {
                for b in 0..x.len() {
                    for l in 0..=4 {
                        let ell = int(l);
                        assert_eq!(lightlike_sequences(x, a, b, &ell), naive(x, a, b, &ell));
                    }
                }
            }
        }
    }

    #[test]
    fn essential_poset_examples() {
        let k3 = complete(3);
        let p = essential_poset(&k3, 0, 1, &int(2));
        assert_eq!(
            p.elements,
            vec![CausalPoint::new(0, int(0)), CausalPoint::new(2, int(1)), CausalPoint::new(1, int(2))]
        );
        assert!(p.less(0, 1) && p.less(1, 2) && p.less(0, 2));
        let two = complete(2);
        assert!(essential_poset(&two, 0, 1, &int(2)).is_empty());
        let p = essential_poset(&two, 0, 1, &int(1));
        assert_eq!(p.elements, vec![CausalPoint::new(0, int(0)), CausalPoint::new(1, int(1))]);
    }

    #[test]
    fn essential_poset_has_endpoints() {
        let x = c4();
        for a in 0..4 {
            for b in 0..4 {
                for l in 0..=4 {
                    let ell = int(l);
                    let p = essential_poset(&x, a, b, &ell);
                    if p.is_empty() {
                        continue;
                    }
                    assert_eq!(p.minimum(), Some(&CausalPoint::new(a, int(0))));
                    assert_eq!(p.maximum(), Some(&CausalPoint::new(b, ell.clone())));
                    let n = p.len();
                    for i in 1..n - 1 {
                        assert!(p.less(0, i) && p.less(i, n - 1));
                    }
                }
            }
        }
    }

    #[test]
    fn lengths_are_subset_sums() {
        let two = complete(2);
        assert_eq!(achievable_lengths(&two, &int(3)), (0..=3).map(int).collect::<Vec<_>>());
        assert_eq!(achievable_lengths_between(&two, 0, 1, &int(3)), vec![int(1), int(3)]);
        let x = MetricSpace::from_distance_matrix(
            vec!["a".into(), "b".into()],
            vec![vec![int(0), frac(3, 2)], vec![frac(3, 2), int(0)]],
        )
        .unwrap();
        assert_eq!(achievable_lengths(&x, &int(3)), vec![int(0), frac(3, 2), int(3)]);
    }

    #[test]
    fn split_by_threshold() {
        let d = |i: usize, j: usize| {
            if i == j {
                int(0)
            } else if i / 3 == j / 3 {
                int(1)
            } else {
                int(10)
            }
        };
        let x = MetricSpace::from_distance_matrix(
            (0..6).map(|i| i.to_string()).collect(),
            (0..6).map(|i| (0..6).map(|j| d(i, j)).collect()).collect(),
        )
        .unwrap();
        assert_eq!(disjoint_split(&x, &int(2)), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(disjoint_split(&c4(), &int(2)).len(), 1);
        let far = MetricSpace::from_distance_matrix(
            (0..3).map(|i| i.to_string()).collect(),
            (0..3).map(|i| (0..3).map(|j| int(if i == j { 0 } else { 5 })).collect()).collect(),
        )
        .unwrap();
        assert_eq!(disjoint_split(&far, &int(1)).len(), 3);
    }
}
