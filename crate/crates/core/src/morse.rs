//! Partial matchings on finite cell posets: validity, acyclicity and boundedness.

use std::collections::{BTreeMap, VecDeque};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Pairs `(face, coface)` with the face of codimension one in the coface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching<K> {
    pub pairs: Vec<(K, K)>,
}

impl<K> Default for Matching<K> {
    fn default() -> Self {
        Self { pairs: Vec::new() }
    }
}

impl<K> Matching<K> {
    pub fn new(pairs: Vec<(K, K)>) -> Self {
        Self { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcyclicReport<K> {
    pub acyclic: bool,
    /// A closed walk alternating between matched cofaces and faces, when one exists.
    pub cycle: Option<Vec<K>>,
    pub critical: Vec<K>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedReport<K> {
    pub bounded: bool,
    /// Longest alternating descent a = a_0 ≻ b_0 ≺ a_1 ≻ … starting at each cell, counted in cofaces.
    pub depth: BTreeMap<K, usize>,
}

impl<K> BoundedReport<K> {
    pub fn max_depth(&self) -> usize {
        self.depth.values().copied().max().unwrap_or(0)
    }
}

struct Indexed<K> {
    cells: Vec<K>,
    partner: Vec<Option<usize>>,
    /// Whether the cell is the coface of its pair.
    is_upper: Vec<bool>,
    facets: Vec<Vec<usize>>,
}

fn index<K: Ord + Clone>(cells: &[K], facets: &dyn Fn(&K) -> Vec<K>, m: &Matching<K>) -> Result<Indexed<K>> {
    let mut sorted: Vec<K> = cells.to_vec();
    sorted.sort();
    sorted.dedup();
    let pos: BTreeMap<&K, usize> = sorted.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let n = sorted.len();
    let facet_ids: Vec<Vec<usize>> =
        sorted.iter().map(|c| facets(c).iter().filter_map(|f| pos.get(f).copied()).collect()).collect();
    let mut partner = vec![None; n];
    let mut is_upper = vec![false; n];
    for (k, (b, a)) in m.pairs.iter().enumerate() {
        let (Some(&ib), Some(&ia)) = (pos.get(b), pos.get(a)) else {
            return Err(Error::NotAMatching(format!("pair {k} uses a cell outside the complex")));
        };
        if !facet_ids[ia].contains(&ib) {
            return Err(Error::NotAMatching(format!("pair {k} is not a codimension-one face relation")));
        }
        for i in [ib, ia] {
            if partner[i].is_some() {
                return Err(Error::NotAMatching(format!("pair {k} reuses a matched cell")));
            }
        }
        partner[ib] = Some(ia);
        partner[ia] = Some(ib);
        is_upper[ia] = true;
    }
    Ok(Indexed { cells: sorted, partner, is_upper, facets: facet_ids })
}

impl<K> Indexed<K> {
    /// Edges of the modified Hasse digraph: up along matched pairs, down otherwise.
    fn successors(&self, c: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.facets[c].iter().copied().filter(|&f| !(self.partner[c] == Some(f) && self.is_upper[c])).collect();
        if let Some(p) = self.partner[c] {
            if !self.is_upper[c] {
                out.push(p);
            }
        }
        out
    }
}

/// Tests a matching for alternating cycles with a topological sort.
pub fn verify_acyclic<K: Ord + Clone>(
    cells: &[K],
    facets: impl Fn(&K) -> Vec<K>,
    m: &Matching<K>,
) -> Result<AcyclicReport<K>> {
    let ix = index(cells, &facets, m)?;
    let n = ix.cells.len();
    let succ: Vec<Vec<usize>> = (0..n).map(|c| ix.successors(c)).collect();
    let mut indeg = vec![0usize; n];
    for s in &succ {
        for &t in s {
            indeg[t] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut done = vec![false; n];
    while let Some(c) = queue.pop_front() {
        done[c] = true;
        for &t in &succ[c] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push_back(t);
            }
        }
    }
    let critical = (0..n).filter(|&i| ix.partner[i].is_none()).map(|i| ix.cells[i].clone()).collect();
    let cycle = (0..n).find(|&i| !done[i]).map(|start| {
        // every unfinished cell has an unfinished successor; walk until a repeat
        let mut seen = vec![usize::MAX; n];
        let mut walk = Vec::new();
        let mut c = start;
        while seen[c] == usize::MAX {
            seen[c] = walk.len();
            walk.push(c);
            c = *succ[c].iter().find(|&&t| !done[t]).expect("cycle continues");
        }
        walk[seen[c]..].iter().map(|&i| ix.cells[i].clone()).collect()
    });
    Ok(AcyclicReport { acyclic: cycle.is_none(), cycle, critical })
}

/// Longest alternating descents; finite whenever the matching is acyclic.
pub fn verify_bounded<K: Ord + Clone>(
    cells: &[K],
    facets: impl Fn(&K) -> Vec<K>,
    m: &Matching<K>,
) -> Result<BoundedReport<K>> {
    let ix = index(cells, &facets, m)?;
    let n = ix.cells.len();
    // a → a' when a ≻ b ≺ a' with (b, a') matched and a' ≠ a
    let next: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            ix.facets[a]
                .iter()
                .filter_map(|&b| match ix.partner[b] {
                    Some(p) if ix.is_upper[p] && p != a => Some(p),
                    _ => None,
                })
                .collect()
        })
        .collect();
    let mut depth = vec![0usize; n];
    let mut state = vec![0u8; n];
    let mut bounded = true;
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (c, ref mut i)) = stack.last_mut() {
            if *i < next[c].len() {
                let t = next[c][*i];
                *i += 1;
                match state[t] {
                    0 => {
                        state[t] = 1;
                        stack.push((t, 0));
                    }
                    1 => bounded = false,
                    _ => {}
                }
            } else {
                depth[c] = 1 + next[c].iter().map(|&t| if state[t] == 2 { depth[t] } else { 0 }).max().unwrap_or(0);
                state[c] = 2;
                stack.pop();
            }
        }
    }
    let depth = (0..n).map(|i| (ix.cells[i].clone(), depth[i])).collect();
    Ok(BoundedReport { bounded, depth })
}

/// Codimension-one faces of a simplex.
#[allow(clippy::ptr_arg)]
pub fn simplex_facets(s: &Vec<usize>) -> Vec<Vec<usize>> {
    if s.len() < 2 {
        return Vec::new();
    }
    (0..s.len()).map(|i| [&s[..i], &s[i + 1..]].concat()).collect()
}

pub fn verify_acyclic_simplicial(c: &SimplicialComplex, m: &Matching<Vec<usize>>) -> Result<AcyclicReport<Vec<usize>>> {
    let cells: Vec<Vec<usize>> = c.simplices().cloned().collect();
    verify_acyclic(&cells, simplex_facets, m)
}

pub fn verify_bounded_simplicial(c: &SimplicialComplex, m: &Matching<Vec<usize>>) -> Result<BoundedReport<Vec<usize>>> {
    let cells: Vec<Vec<usize>> = c.simplices().cloned().collect();
    verify_bounded(&cells, simplex_facets, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn segment() -> SimplicialComplex {
        SimplicialComplex::from_facets([vec![0, 1]])
    }

    #[test]
    fn segment_matching() {
        let m = Matching::new(vec![(vec![1], vec![0, 1])]);
        let r = verify_acyclic_simplicial(&segment(), &m).unwrap();
        assert!(r.acyclic);
        assert_eq!(r.critical, vec![vec![0]]);
        let b = verify_bounded_simplicial(&segment(), &m).unwrap();
        assert!(b.bounded);
    }

    #[test]
    fn cyclic_matching_on_triangle_boundary() {
        let c = SimplicialComplex::from_facets([vec![0, 1], vec![1, 2], vec![0, 2]]);
        let m = Matching::new(vec![(vec![0], vec![0, 1]), (vec![1], vec![1, 2]), (vec![2], vec![0, 2])]);
        let r = verify_acyclic_simplicial(&c, &m).unwrap();
        assert!(!r.acyclic);
        let cycle = r.cycle.unwrap();
        assert_eq!(cycle.len(), 6);
        let b = verify_bounded_simplicial(&c, &m).unwrap();
        assert!(!b.bounded);
    }

    #[test]
    fn empty_matching() {
        let c = SimplicialComplex::from_facets([vec![0, 1, 2]]);
        let r = verify_acyclic_simplicial(&c, &Matching::default()).unwrap();
        assert!(r.acyclic);
        assert_eq!(r.critical.len(), 7);
        let b = verify_bounded_simplicial(&c, &Matching::default()).unwrap();
        assert_eq!(b.max_depth(), 1);
    }

    #[test]
    fn rejects_invalid_matchings() {
        let c = SimplicialComplex::from_facets([vec![0, 1, 2]]);
        let twice = Matching::new(vec![(vec![0], vec![0, 1]), (vec![0], vec![0, 2])]);
        assert!(matches!(verify_acyclic_simplicial(&c, &twice), Err(Error::NotAMatching(_))));
        let far = Matching::new(vec![(vec![0], vec![0, 1, 2])]);
        assert!(matches!(verify_acyclic_simplicial(&c, &far), Err(Error::NotAMatching(_))));
    }

    #[test]
    fn collapsing_a_path_has_linear_depth() {
        // path 0-1-2-3 collapsed toward 0
        let c = SimplicialComplex::from_facets([vec![0, 1], vec![1, 2], vec![2, 3]]);
        let m = Matching::new(vec![(vec![1], vec![0, 1]), (vec![2], vec![1, 2]), (vec![3], vec![2, 3])]);
        assert!(verify_acyclic_simplicial(&c, &m).unwrap().acyclic);
        let b = verify_bounded_simplicial(&c, &m).unwrap();
        assert!(b.bounded);
        assert_eq!(b.depth[&vec![2, 3]], 3);
    }
}
