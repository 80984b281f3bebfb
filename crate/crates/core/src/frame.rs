//! Frames of sequences, singular sequences and the framed Betti prediction.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::causal::chains_of;
use crate::chain::{homology, relative_chain_complex};
use crate::complex::{SimplicialComplex, SimplicialPair};
use crate::error::{Error, Result};
use crate::metric::{CutLength, IntervalKind, MetricSpace};
use crate::rational::Rational;
use crate::sequence::{LabelTuple, PointSequence};

/// The singular subsequence (a_0, …, a_m) of a sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frame {
    pub points: Vec<usize>,
}

impl Frame {
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn length(&self, x: &MetricSpace) -> Rational {
        x.path_length(&self.points)
    }

    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        LabelTuple { points: &self.points, labels }
    }
}

pub fn frame_of(x: &MetricSpace, s: &PointSequence) -> Frame {
    Frame { points: x.singular_positions(s).into_iter().map(|k| s.points()[k]).collect() }
}

fn require_below_cut(x: &MetricSpace, ell: &Rational) -> Result<()> {
    match x.four_cuts().1 {
        CutLength::Finite(m) if ell >= &m => {
            Err(Error::FourCutObstruction { ell: Box::new(ell.clone()), m_x: Box::new(m) })
        }
        _ => Ok(()),
    }
}

/// Sequences of length `ell` in which every point is singular, optionally ending at `target`
/// and optionally with every consecutive open interval empty.
fn singular_walks(x: &MetricSpace, start: usize, target: Option<usize>, ell: &Rational, thin: bool) -> Vec<Vec<usize>> {
    let n = x.len();
    let thin_step: Vec<Vec<bool>> =
        (0..n).map(|p| (0..n).map(|q| (0..n).all(|z| z == p || z == q || !x.between(p, z, q))).collect()).collect();
    let mut out = Vec::new();
    let mut path = vec![start];
    #[allow(clippy::too_many_arguments)]
    fn go(
        x: &MetricSpace,
        target: Option<usize>,
        rest: Rational,
        thin: bool,
        thin_step: &[Vec<bool>],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let cur = *path.last().unwrap();
        if rest == Rational::from_integer(0.into()) {
            if target.is_none_or(|b| b == cur) {
                out.push(path.clone());
            }
            return;
        }
        for next in 0..x.len() {
            if next == cur || (thin && !thin_step[cur][next]) {
                continue;
            }
            if path.len() >= 2 && x.between(path[path.len() - 2], cur, next) {
                continue;
            }
            let r = &rest - x.d(cur, next);
            let ok = match target {
                Some(b) => x.d(next, b) <= &r,
                None => r >= Rational::from_integer(0.into()),
            };
            if ok {
                path.push(next);
                go(x, target, r, thin, thin_step, path, out);
                path.pop();
            }
        }
    }
    go(x, target, ell.clone(), thin, &thin_step, &mut path, &mut out);
    out
}

/// All singular sequences from `a` to `b` of length `ell`; requires ℓ < m_X.
pub fn singular_sequences(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> Result<Vec<Frame>> {
    require_below_cut(x, ell)?;
    Ok(singular_walks(x, a, Some(b), ell, false).into_iter().map(|points| Frame { points }).collect())
}

/// Singular sequences of length `ell` with every I(a_{i−1}, a_i) empty, over all endpoints.
pub fn thin_frames(x: &MetricSpace, ell: &Rational) -> Vec<Frame> {
    (0..x.len()).flat_map(|a| singular_walks(x, a, None, ell, true)).map(|points| Frame { points }).collect()
}

/// Reduced rational Betti numbers of the order complex of the open interval I(p, q).
pub fn open_interval_betti(x: &MetricSpace, p: usize, q: usize) -> Result<BTreeMap<i32, usize>> {
    let poset = x.interval(p, q, IntervalKind::Open);
    let chains = chains_of(poset.len(), |i, j| i != j && poset.leq_pos(i, j));
    let pair = SimplicialPair {
        vertices: poset.carrier.clone(),
        total: SimplicialComplex::Faces(chains.into_iter().collect()),
        sub: SimplicialComplex::Void,
    };
    Ok(homology(&relative_chain_complex(&pair, true))?.betti_vector())
}

fn convolve(a: &BTreeMap<i32, usize>, b: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

/// Predicted rank of MH_k^ℓ(X; a, b) from the frames of length ℓ.
pub fn framed_betti_prediction(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> Result<BTreeMap<i32, usize>> {
    let frames = singular_sequences(x, a, b, ell)?;
    let per_frame: Vec<Result<BTreeMap<i32, usize>>> = frames
        .par_iter()
        .map(|f| {
            let mut acc = BTreeMap::from([(0, 1)]);
            for w in f.points.windows(2) {
                let shifted = open_interval_betti(x, w[0], w[1])?.into_iter().map(|(k, v)| (k + 2, v)).collect();
                acc = convolve(&acc, &shifted);
            }
            Ok(acc)
        })
        .collect();
    let mut total = BTreeMap::new();
    for p in per_frame {
        for (k, v) in p? {
            *total.entry(k).or_insert(0) += v;
        }
    }
    Ok(total)
}

/// The Hasse diagram of the extended face poset of a complex, as a weighted graph.
#[derive(Debug, Clone)]
pub struct HasseGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, Rational)>,
    pub bottom: String,
    pub top: String,
    pub ell: Rational,
    pub dimension: usize,
}

impl HasseGraph {
    pub fn space(&self) -> Result<MetricSpace> {
        MetricSpace::from_weighted_graph(self.vertices.clone(), &self.edges)
    }
}

pub const BOTTOM: &str = "0^";
pub const TOP: &str = "1^";

/// Builds the weighted Hasse graph; edges from a maximal face σ to the top weigh n + 1 − dim σ.
pub fn hasse_graph(facets: &[Vec<String>]) -> Result<HasseGraph> {
    let mut names: Vec<String> = facets.iter().flatten().cloned().collect();
    names.sort();
    names.dedup();
    if names.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let complex = SimplicialComplex::from_facets(
        facets.iter().map(|f| f.iter().map(|v| names.binary_search(v).expect("collected above")).collect()),
    );
    let label = |s: &[usize]| format!("{{{}}}", s.iter().map(|&v| names[v].as_str()).collect::<Vec<_>>().join(","));
    let dimension = complex.dimension().expect("nonempty") as usize;
    let mut faces: Vec<&Vec<usize>> = complex.simplices().collect();
    faces.sort_by(|s, t| s.len().cmp(&t.len()).then(s.cmp(t)));
    let mut vertices = vec![BOTTOM.to_string()];
    vertices.extend(faces.iter().map(|s| label(s)));
    vertices.push(TOP.to_string());
    let one = Rational::from_integer(1.into());
    let mut edges = Vec::new();
    for s in &faces {
        if s.len() == 1 {
            edges.push((BOTTOM.to_string(), label(s), one.clone()));
        } else {
            for i in 0..s.len() {
                let face = [&s[..i], &s[i + 1..]].concat();
                edges.push((label(&face), label(s), one.clone()));
            }
        }
    }
    for s in complex.maximal_simplices() {
        let w = (dimension + 2 - s.len()) as i64;
        edges.push((label(&s), TOP.to_string(), Rational::from_integer(w.into())));
    }
    Ok(HasseGraph {
        vertices,
        edges,
        bottom: BOTTOM.to_string(),
        top: TOP.to_string(),
        ell: Rational::from_integer(((dimension + 2) as i64).into()),
        dimension,
    })
}
