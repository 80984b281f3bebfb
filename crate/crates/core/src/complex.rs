//! Finite simplicial complexes and pairs, with the void / empty distinction.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::causal::{chains_of, essential_poset, CausalPoint};
use crate::error::{Error, Result};
use crate::metric::{IntervalKind, MetricSpace};
use crate::rational::Rational;

/// Simplices are ascending lists of vertex positions. The empty simplex is never stored;
/// `Faces` with no simplices is the empty complex, which still carries the empty simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicialComplex {
    Void,
    Faces(BTreeSet<Vec<usize>>),
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex::Faces(BTreeSet::new())
    }

    /// Closure of the given simplices under taking nonempty faces.
    pub fn from_facets<I: IntoIterator<Item = Vec<usize>>>(facets: I) -> Self {
        let mut set = BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            let n = f.len();
            for mask in 1u64..(1u64 << n) {
                set.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        SimplicialComplex::Faces(set)
    }

    pub fn is_void(&self) -> bool {
        matches!(self, SimplicialComplex::Void)
    }

    /// True for the complex whose only simplex is the empty one.
    pub fn is_empty_complex(&self) -> bool {
        matches!(self, SimplicialComplex::Faces(s) if s.is_empty())
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        match self {
            SimplicialComplex::Void => false,
            SimplicialComplex::Faces(s) => simplex.is_empty() || s.contains(simplex),
        }
    }

    /// Nonempty simplices in lexicographic order.
    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        let set = match self {
            SimplicialComplex::Void => None,
            SimplicialComplex::Faces(s) => Some(s),
        };
        set.into_iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.simplices().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dimension(&self) -> Option<i32> {
        match self {
            SimplicialComplex::Void => None,
            SimplicialComplex::Faces(s) => Some(s.iter().map(|x| x.len() as i32 - 1).max().unwrap_or(-1)),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.simplices().all(|s| s.len() < 2 || (0..s.len()).all(|i| self.contains(&[&s[..i], &s[i + 1..]].concat())))
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        match (self, other) {
            (SimplicialComplex::Void, _) => true,
            (_, SimplicialComplex::Void) => false,
            _ => self.simplices().all(|s| other.contains(s)),
        }
    }

    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let all: Vec<&Vec<usize>> = self.simplices().collect();
        all.iter()
            .filter(|s| !all.iter().any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v))))
            .map(|s| (*s).clone())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialPair<V> {
    pub vertices: Vec<V>,
    pub total: SimplicialComplex,
    pub sub: SimplicialComplex,
}

impl<V> SimplicialPair<V> {
    pub fn new(vertices: Vec<V>, total: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        if !sub.is_subcomplex_of(&total) {
            return Err(Error::NotASubcomplex);
        }
        Ok(Self { vertices, total, sub })
    }

    /// Simplices of the total complex outside the subcomplex.
    pub fn relative_simplices(&self) -> Vec<&Vec<usize>> {
        self.total.simplices().filter(|s| !self.sub.contains(s)).collect()
    }

    /// One simplex per line, flagged `T` when only in the total complex and `S` when in the subcomplex.
    pub fn dump(&self, show: impl Fn(&V) -> String) -> String {
        let mut out = String::new();
        let tag = |c: &SimplicialComplex| match c {
            SimplicialComplex::Void => "void",
            SimplicialComplex::Faces(s) if s.is_empty() => "empty",
            _ => "complex",
        };
        let _ = writeln!(out, "# total {} sub {}", tag(&self.total), tag(&self.sub));
        for s in self.total.simplices() {
            let verts: Vec<String> = s.iter().map(|&v| show(&self.vertices[v])).collect();
            let flag = if self.sub.contains(s) { 'S' } else { 'T' };
            let _ = writeln!(out, "{}\t{flag}", verts.join(" "));
        }
        out
    }
}

impl SimplicialPair<CausalPoint> {
    pub fn dump_causal(&self, x: &MetricSpace) -> String {
        self.dump(|p| format!("({},{})", x.label(p.point), p.time))
    }
}

/// The pair (Δ Cau_ess, Δ̇ Cau_ess): all chains, and the chains shorter than ℓ.
pub fn order_complex_pair(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> SimplicialPair<CausalPoint> {
    let poset = essential_poset(x, a, b, ell);
    let chains = poset.chains();
    let sub = chains.iter().filter(|c| &chain_length(x, &poset.elements, c) < ell).cloned().collect();
    SimplicialPair {
        vertices: poset.elements,
        total: SimplicialComplex::Faces(chains.into_iter().collect()),
        sub: SimplicialComplex::Faces(sub),
    }
}

fn chain_length(x: &MetricSpace, elements: &[CausalPoint], chain: &[usize]) -> Rational {
    let pts: Vec<usize> = chain.iter().map(|&i| elements[i].point).collect();
    x.path_length(&pts)
}

/// The pair (K_ℓ, K'_ℓ) built on the interior of Cau_ess.
pub fn ai_pair(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> Result<SimplicialPair<CausalPoint>> {
    if ell <= &Rational::from_integer(0.into()) {
        return Err(Error::InvalidLength(ell.clone()));
    }
    let dab = x.d(a, b);
    let poset = essential_poset(x, a, b, ell);
    let start = CausalPoint::new(a, Rational::from_integer(0.into()));
    let end = CausalPoint::new(b, ell.clone());
    let keep: Vec<usize> =
        (0..poset.len()).filter(|&i| poset.elements[i] != start && poset.elements[i] != end).collect();
    let vertices: Vec<CausalPoint> = keep.iter().map(|&i| poset.elements[i].clone()).collect();
    let chains = chains_of(keep.len(), |i, j| poset.less(keep[i], keep[j]));
    let total =
        if dab > ell { SimplicialComplex::Void } else { SimplicialComplex::Faces(chains.iter().cloned().collect()) };
    let sub = if dab >= ell {
        SimplicialComplex::Void
    } else {
        let short = chains.into_iter().filter(|c| {
            let mut pts = vec![a];
            pts.extend(c.iter().map(|&i| vertices[i].point));
            pts.push(b);
            &x.path_length(&pts) < ell
        });
        SimplicialComplex::Faces(short.collect())
    };
    Ok(SimplicialPair { vertices, total, sub })
}

/// The pair (Δ I[a,b], chains not containing both a and b); vertices are point indices.
pub fn interval_complex(x: &MetricSpace, a: usize, b: usize) -> SimplicialPair<usize> {
    let poset = x.interval(a, b, IntervalKind::Closed);
    let chains = chains_of(poset.len(), |i, j| i != j && poset.leq_pos(i, j));
    let pa = poset.position(a);
    let pb = poset.position(b);
    let sub = chains
        .iter()
        .filter(|c| !(pa.is_some_and(|p| c.contains(&p)) && pb.is_some_and(|p| c.contains(&p))))
        .cloned()
        .collect();
    SimplicialPair {
        vertices: poset.carrier,
        total: SimplicialComplex::Faces(chains.into_iter().collect()),
        sub: SimplicialComplex::Faces(sub),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal::lightlike_sequences;
    use crate::metric::tests::{c4, complete, graph};
    use crate::rational::int;

    #[test]
    fn k3_order_complex() {
        let k3 = complete(3);
        let pair = order_complex_pair(&k3, 0, 1, &int(2));
        assert_eq!(pair.total.len(), 7);
        assert_eq!(pair.relative_simplices(), vec![&vec![0, 1, 2]]);
        assert!(pair.total.is_closed() && pair.sub.is_closed());
    }

    #[test]
    fn two_point_order_complex() {
        let two = complete(2);
        let pair = order_complex_pair(&two, 0, 1, &int(1));
        assert_eq!(pair.total.len(), 3);
        assert_eq!(pair.sub.len(), 2);
        let zero = order_complex_pair(&two, 0, 0, &int(0));
        assert_eq!(zero.total.len(), 1);
        assert!(zero.sub.is_empty_complex());
    }

    #[test]
    fn relative_simplices_are_lightlike_sequences() {
        let x = c4();
        for a in 0..4 {
            for b in 0..4 {
                for l in 0..=4 {
                    let ell = int(l);
                    let pair = order_complex_pair(&x, a, b, &ell);
                    let mut got: Vec<Vec<usize>> = pair
                        .relative_simplices()
                        .iter()
                        .map(|s| s.iter().map(|&v| pair.vertices[v].point).collect())
                        .collect();
                    got.sort();
                    let want: Vec<Vec<usize>> =
                        lightlike_sequences(&x, a, b, &ell).into_iter().map(|s| s.into_points()).collect();
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn ai_pair_case_table() {
        let k3 = complete(3);
        let p = ai_pair(&k3, 0, 1, &int(2)).unwrap();
        assert_eq!(p.total.len(), 1);
        assert!(p.sub.is_empty_complex());
        let path = graph(&["a", "c", "b"], &[("a", "c"), ("c", "b")]);
        let p = ai_pair(&path, 0, 2, &int(2)).unwrap();
        assert_eq!(p.total.len(), 1);
        assert!(p.sub.is_void());
        let two = complete(2);
        let p = ai_pair(&two, 0, 1, &int(2)).unwrap();
        assert!(p.total.is_empty_complex() && p.sub.is_empty_complex());
        let p = ai_pair(&path, 0, 2, &int(1)).unwrap();
        assert!(p.total.is_void() && p.sub.is_void());
        assert!(matches!(ai_pair(&k3, 0, 1, &int(0)), Err(Error::InvalidLength(_))));
    }

    #[test]
    fn interval_complex_of_c4() {
        let x = c4();
        let [a, b] = ["a", "b"].map(|l| x.resolve(l).unwrap());
        let pair = interval_complex(&x, a, b);
        assert_eq!(pair.total.maximal_simplices().len(), 2);
        assert_eq!(pair.total.dimension(), Some(2));
        // sub: the four vertices and four boundary edges
        assert_eq!(pair.sub.len(), 8);
        assert_eq!(pair.relative_simplices().len(), 3);
    }

    #[test]
    fn from_facets_closes() {
        let c = SimplicialComplex::from_facets(vec![vec![2, 0, 1]]);
        assert_eq!(c.len(), 7);
        assert!(c.is_closed());
        assert_eq!(c.maximal_simplices(), vec![vec![0, 1, 2]]);
        assert!(SimplicialComplex::Void.is_subcomplex_of(&SimplicialComplex::empty()));
        assert!(!SimplicialComplex::empty().is_subcomplex_of(&SimplicialComplex::Void));
    }

    #[test]
    fn dump_flags() {
        let pair = order_complex_pair(&complete(2), 0, 1, &int(1));
        let d = pair.dump_causal(&complete(2));
        assert!(d.contains("(a,0) (b,1)\tT"));
        assert!(d.contains("(a,0)\tS"));
    }
}
