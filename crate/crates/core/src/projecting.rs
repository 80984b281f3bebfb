//! Flat, sticky and twistable sequences in a glued space, and the projecting matching.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::causal::lightlike_sequences;
use crate::error::{Error, Result};
use crate::gluing::GluingSpec;
use crate::morse::{verify_acyclic, verify_bounded, Matching};
use crate::rational::Rational;
use crate::sequence::PointSequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceClass {
    /// Contained in G ∪ H_0 or in H.
    Flat,
    /// Concatenation of flat pieces at neutral points; the split positions are listed.
    Twistable { splits: Vec<usize> },
    /// All sticky subsequences as `(start, end)` positions, first one first.
    Sticky { subsequences: Vec<(usize, usize)> },
}

impl SequenceClass {
    pub fn is_twistable(&self) -> bool {
        !matches!(self, SequenceClass::Sticky { .. })
    }
}

pub fn is_flat(g: &GluingSpec, pts: &[usize]) -> bool {
    pts.iter().all(|&x| g.in_g(x) || g.is_neutral(x)) || pts.iter().all(|&x| g.in_h(x))
}

/// Sticky subsequences ordered by start position.
pub fn sticky_subsequences(g: &GluingSpec, pts: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..pts.len() {
        let start_g = g.in_interior_g(pts[i]);
        if !start_g && !g.is_biased(pts[i]) {
            continue;
        }
        let mut j = i + 1;
        while j < pts.len() && g.in_k(pts[j]) {
            j += 1;
        }
        if j < pts.len() {
            let end = pts[j];
            if (start_g && g.is_biased(end)) || (!start_g && g.in_interior_g(end)) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn classify_sequence(g: &GluingSpec, s: &PointSequence) -> SequenceClass {
    let pts = s.points();
    let sticky = sticky_subsequences(g, pts);
    if !sticky.is_empty() {
        return SequenceClass::Sticky { subsequences: sticky };
    }
    if is_flat(g, pts) {
        return SequenceClass::Flat;
    }
    SequenceClass::Twistable { splits: flat_splits(g, pts) }
}

/// Split positions of a sticky-free sequence into flat pieces joined at neutral points.
pub fn flat_splits(g: &GluingSpec, pts: &[usize]) -> Vec<usize> {
    let mut splits = Vec::new();
    let mut start = 0;
    loop {
        let mut k = start;
        while k + 1 < pts.len() && is_flat(g, &pts[start..k + 2]) {
            k += 1;
        }
        if k + 1 >= pts.len() {
            return splits;
        }
        // the last point before the trailing run of K points
        let mut j = k;
        while g.in_k(pts[j]) {
            j -= 1;
        }
        assert!(g.is_neutral(pts[j]) && j > start, "sticky-free sequence splits at a neutral point");
        splits.push(j);
        start = j;
    }
}

/// Flat pieces of a twistable sequence.
pub fn flat_pieces<'a>(pts: &'a [usize], splits: &[usize]) -> Vec<&'a [usize]> {
    let mut bounds = vec![0];
    bounds.extend_from_slice(splits);
    bounds.push(pts.len() - 1);
    bounds.windows(2).map(|w| &pts[w[0]..=w[1]]).collect()
}

/// The projecting partner of a light-like sequence, with `true` when the partner is the coface.
pub fn projecting_partner(g: &GluingSpec, s: &PointSequence) -> Result<Option<(PointSequence, bool)>> {
    let pts = s.points();
    let Some(&(i, j)) = sticky_subsequences(g, pts).first() else { return Ok(None) };
    let (end, inner, after) = if g.is_biased(pts[i]) {
        (i, i + 1, true)
    } else if g.is_biased(pts[j]) {
        (j, j - 1, false)
    } else {
        return Err(Error::NotAMatching("sticky subsequence without a biased endpoint".into()));
    };
    let gate = g.gate(pts[end]).ok_or(Error::GateMissing(pts[end]))?;
    let mut p = pts.to_vec();
    if pts[inner] == gate {
        p.remove(inner);
        Ok(Some((PointSequence::new(p)?, false)))
    } else {
        p.insert(if after { i + 1 } else { j }, gate);
        Ok(Some((PointSequence::new(p)?, true)))
    }
}

#[derive(Debug, Clone)]
pub struct ProjectingMatching {
    pub ell: Rational,
    /// Light-like sequences of every pair (a, b).
    pub cells: Vec<PointSequence>,
    pub matching: Matching<PointSequence>,
    /// Unmatched light-like sequences.
    pub critical: Vec<PointSequence>,
}

impl ProjectingMatching {
    /// Critical light-like cells counted by dimension.
    pub fn critical_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for s in &self.critical {
            *out.entry(s.degree()).or_insert(0) += 1;
        }
        out
    }

    /// Σ (−1)^k #critical cells of dimension k.
    pub fn critical_euler(&self) -> i64 {
        self.critical.iter().map(|s| if s.degree() % 2 == 0 { 1 } else { -1 }).sum()
    }
}

pub fn all_lightlike(g: &GluingSpec, ell: &Rational) -> Vec<PointSequence> {
    let x = &g.glued;
    let n = x.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    pairs.par_iter().flat_map_iter(|&(a, b)| lightlike_sequences(x, a, b, ell)).collect()
}

pub fn projecting_matching(g: &GluingSpec, ell: &Rational) -> Result<ProjectingMatching> {
    let cells = all_lightlike(g, ell);
    let set: BTreeSet<&PointSequence> = cells.iter().collect();
    let mut pairs = BTreeSet::new();
    let mut critical = Vec::new();
    let mut partner_of: BTreeMap<&PointSequence, PointSequence> = BTreeMap::new();
    for s in &cells {
        match projecting_partner(g, s)? {
            None => critical.push(s.clone()),
            Some((p, up)) => {
                if !set.contains(&p) {
                    return Err(Error::NotAMatching(format!(
                        "partner {:?} of {:?} is not light-like",
                        p.points(),
                        s.points()
                    )));
                }
                partner_of.insert(s, p.clone());
                pairs.insert(if up { (s.clone(), p) } else { (p, s.clone()) });
            }
        }
    }
    for (s, p) in &partner_of {
        if partner_of.get(p) != Some(*s) {
            return Err(Error::NotAMatching(format!("{:?} and {:?} disagree", s.points(), p.points())));
        }
    }
    Ok(ProjectingMatching { ell: ell.clone(), cells, matching: Matching::new(pairs.into_iter().collect()), critical })
}

/// Light-like faces of a light-like sequence: drop a smooth interior point.
pub fn lightlike_facets(g: &GluingSpec, s: &PointSequence) -> Vec<PointSequence> {
    let p = s.points();
    let x = &g.glued;
    (1..p.len().saturating_sub(1))
        .filter(|&i| x.between(p[i - 1], p[i], p[i + 1]))
        .filter_map(|i| s.without(i))
        .collect()
}

#[derive(Debug, Clone)]
pub struct MatchingCheck {
    pub acyclic: bool,
    pub bounded: bool,
    pub max_depth: usize,
    pub cycle: Option<Vec<PointSequence>>,
}

/// Runs the generic verifiers on the projecting matching, over light-like cells.
pub fn check_projecting_matching(g: &GluingSpec, pm: &ProjectingMatching) -> Result<MatchingCheck> {
    let facets = |s: &PointSequence| lightlike_facets(g, s);
    let a = verify_acyclic(&pm.cells, facets, &pm.matching)?;
    let b = verify_bounded(&pm.cells, facets, &pm.matching)?;
    Ok(MatchingCheck { acyclic: a.acyclic, bounded: b.bounded, max_depth: b.max_depth(), cycle: a.cycle })
}

#[derive(Debug, Clone)]
pub struct CriticalCells {
    pub ell: Rational,
    pub twistable: Vec<PointSequence>,
    pub unmatched: Vec<PointSequence>,
}

impl CriticalCells {
    /// Unmatched light-like cells are exactly the twistable ones.
    pub fn consistent(&self) -> bool {
        self.twistable == self.unmatched
    }
}

pub fn critical_cells(g: &GluingSpec, ell: &Rational) -> Result<CriticalCells> {
    let pm = projecting_matching(g, ell)?;
    let twistable = pm.cells.iter().filter(|s| classify_sequence(g, s).is_twistable()).cloned().collect();
    Ok(CriticalCells { ell: ell.clone(), twistable, unmatched: pm.critical })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::metric::tests::graph;
    use crate::metric::MetricSpace;
    use crate::rational::int;

    /// G: p–g3–q, q–g4–p, p–g5–g6–q, q–g5.
    pub fn sycamore_g() -> MetricSpace {
        graph(
            &["p", "q", "g3", "g4", "g5", "g6"],
            &[("p", "g3"), ("g3", "q"), ("q", "g4"), ("g4", "p"), ("p", "g5"), ("g5", "g6"), ("g6", "q"), ("q", "g5")],
        )
    }

    /// H: p–h3–q, q–h4–p, p–h5–q, with h6 pendant at q.
    pub fn sycamore_h() -> MetricSpace {
        graph(
            &["p", "q", "h3", "h4", "h5", "h6"],
            &[("p", "h3"), ("h3", "q"), ("q", "h4"), ("h4", "p"), ("p", "h5"), ("h5", "q"), ("q", "h6")],
        )
    }

    pub fn sycamore_x() -> GluingSpec {
        GluingSpec::glue(sycamore_g(), sycamore_h(), vec![0, 1], vec![0, 1]).unwrap()
    }

    fn seq(g: &GluingSpec, labels: &[&str]) -> PointSequence {
        PointSequence::new(labels.iter().map(|l| g.glued.resolve(l).unwrap()).collect()).unwrap()
    }

    #[test]
    fn sycamore_regions() {
        let g = sycamore_x();
        let neutral: Vec<&str> = g.neutral_x().iter().map(|&x| g.glued.label(x)).collect();
        assert_eq!(neutral, vec!["h3", "h4", "h5"]);
        let h6 = g.glued.resolve("h6").unwrap();
        assert_eq!(g.gate(h6), Some(1));
    }

    #[test]
    fn classification() {
        let g = sycamore_x();
        assert_eq!(classify_sequence(&g, &seq(&g, &["g3", "p", "g4"])), SequenceClass::Flat);
        assert_eq!(
            classify_sequence(&g, &seq(&g, &["g5", "q", "h6"])),
            SequenceClass::Sticky { subsequences: vec![(0, 2)] }
        );
        assert_eq!(classify_sequence(&g, &seq(&g, &["g3", "h3", "h6"])), SequenceClass::Twistable { splits: vec![1] });
        assert_eq!(
            classify_sequence(&g, &seq(&g, &["h6", "q", "p", "g5"])),
            SequenceClass::Sticky { subsequences: vec![(0, 3)] }
        );
    }

    #[test]
    fn projecting_partner_cases() {
        let g = sycamore_x();
        // (g3, p, q, h6): sticky from g3 to h6 through K; gate of h6 is q, already adjacent: delete
        let s = seq(&g, &["g3", "p", "q", "h6"]);
        let (p, up) = projecting_partner(&g, &s).unwrap().unwrap();
        assert!(!up);
        assert_eq!(p, seq(&g, &["g3", "p", "h6"]));
        let (back, up) = projecting_partner(&g, &p).unwrap().unwrap();
        assert!(up);
        assert_eq!(back, s);
        assert!(projecting_partner(&g, &seq(&g, &["g3", "h3"])).unwrap().is_none());
    }

    #[test]
    fn matching_is_acyclic_and_critical_cells_are_twistable() {
        let g = sycamore_x();
        for l in 0..=3 {
            let pm = projecting_matching(&g, &int(l)).unwrap();
            let check = check_projecting_matching(&g, &pm).unwrap();
            assert!(check.acyclic && check.bounded, "{l}: {:?}", check.cycle);
            assert!(critical_cells(&g, &int(l)).unwrap().consistent());
        }
    }

    #[test]
    fn no_op_gluing_matches_nothing() {
        let k = graph(&["p", "q"], &[("p", "q")]);
        let g = GluingSpec::glue(crate::metric::tests::complete(3), k, vec![0, 1], vec![0, 1]).unwrap();
        let pm = projecting_matching(&g, &int(2)).unwrap();
        assert!(pm.matching.is_empty());
        assert_eq!(pm.critical.len(), pm.cells.len());
    }
}
