//! Sycamore twists: regluing H to G through an isometry of K that neutral points cannot see.

use std::collections::{BTreeMap, BTreeSet};

use crate::causal::achievable_lengths;
use crate::error::{Error, Result};
use crate::gluing::GluingSpec;
use crate::metric::MetricSpace;
use crate::projecting::{
    check_projecting_matching, classify_sequence, flat_pieces, is_flat, projecting_matching, SequenceClass,
};
use crate::rational::Rational;
use crate::sequence::PointSequence;
use crate::series::{magnitude, HahnPolynomial};

#[derive(Debug, Clone)]
pub struct SycamoreTwist {
    /// G ∪ H identifying i_G(k) with i_H(k).
    pub x: GluingSpec,
    /// G ∪ H identifying i_G(k) with i_H(α(k)).
    pub y: GluingSpec,
    /// α on K positions.
    pub alpha: Vec<usize>,
    alpha_inv: Vec<usize>,
}

impl SycamoreTwist {
    pub fn new(
        g: MetricSpace,
        h: MetricSpace,
        k_in_g: Vec<usize>,
        k_in_h: Vec<usize>,
        alpha: Vec<usize>,
    ) -> Result<Self> {
        let m = k_in_g.len();
        let mut alpha_inv = vec![usize::MAX; m];
        if alpha.len() != m {
            return Err(Error::NotASycamoreTwist(format!("alpha has {} entries for {m} points of K", alpha.len())));
        }
        for (i, &a) in alpha.iter().enumerate() {
            if a >= m || alpha_inv[a] != usize::MAX {
                return Err(Error::NotASycamoreTwist("alpha is not a permutation of K".into()));
            }
            alpha_inv[a] = i;
        }
        for i in 0..m {
            for j in 0..m {
                if g.d(k_in_g[i], k_in_g[j]) != g.d(k_in_g[alpha[i]], k_in_g[alpha[j]]) {
                    return Err(Error::NotASycamoreTwist(format!(
                        "alpha does not preserve d({}, {})",
                        g.label(k_in_g[i]),
                        g.label(k_in_g[j])
                    )));
                }
            }
        }
        let twisted: Vec<usize> = alpha.iter().map(|&a| k_in_h[a]).collect();
        let x = GluingSpec::glue(g.clone(), h.clone(), k_in_g.clone(), k_in_h.clone())?;
        for &y in &x.neutral {
            for i in 0..m {
                let (d1, d2) = (h.d(y, k_in_h[i]), h.d(y, k_in_h[alpha[i]]));
                if d1 != d2 {
                    return Err(Error::NotASycamoreTwist(format!(
                        "neutral point {} has d({0}, {}) = {d1} but d({0}, {}) = {d2}",
                        h.label(y),
                        h.label(k_in_h[i]),
                        h.label(k_in_h[alpha[i]])
                    )));
                }
            }
        }
        let y = GluingSpec::glue(g, h, k_in_g, twisted)?;
        Ok(Self { x, y, alpha, alpha_inv })
    }

    /// The twist from Y back to X, through α⁻¹.
    pub fn inverse(&self) -> Result<SycamoreTwist> {
        SycamoreTwist::new(
            self.y.g.clone(),
            self.y.h.clone(),
            self.y.k_in_g.clone(),
            self.y.k_in_h.clone(),
            self.alpha_inv.clone(),
        )
    }

    fn tau_h(&self, p: usize) -> usize {
        match self.x.k_points().iter().position(|&k| k == p) {
            Some(i) => self.x.k_points()[self.alpha_inv[i]],
            None => p,
        }
    }

    /// τ on a twistable sequence of X; `None` when the sequence has a sticky subsequence.
    pub fn tau(&self, s: &PointSequence) -> Option<PointSequence> {
        let pts = s.points();
        let splits = match classify_sequence(&self.x, s) {
            SequenceClass::Sticky { .. } => return None,
            SequenceClass::Flat => vec![],
            SequenceClass::Twistable { splits } => splits,
        };
        let mut out = vec![pts[0]];
        let mut first = true;
        for piece in flat_pieces(pts, &splits) {
            let in_g = piece.iter().all(|&p| self.x.in_g(p) || self.x.is_neutral(p));
            let mapped: Vec<usize> = piece.iter().map(|&p| if in_g { p } else { self.tau_h(p) }).collect();
            if first {
                out[0] = mapped[0];
                first = false;
            }
            out.extend_from_slice(&mapped[1..]);
        }
        debug_assert!(is_flat(&self.x, pts) || !splits.is_empty());
        PointSequence::new(out).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SycamoreRow {
    pub ell: Rational,
    pub dim: usize,
    pub critical_x: usize,
    pub critical_y: usize,
}

impl SycamoreRow {
    pub fn matches(&self) -> bool {
        self.critical_x == self.critical_y
    }
}

#[derive(Debug, Clone)]
pub struct SycamoreReport {
    pub rows: Vec<SycamoreRow>,
    /// χ̃(𝓜^ℓ) from all light-like cells, for X and Y.
    pub euler: Vec<(Rational, i64, i64)>,
    pub magnitude_x: HahnPolynomial,
    pub magnitude_y: HahnPolynomial,
    pub failures: Vec<String>,
}

impl SycamoreReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
            && self.rows.iter().all(SycamoreRow::matches)
            && self.euler.iter().all(|(_, a, b)| a == b)
            && self.magnitude_x == self.magnitude_y
    }
}

pub fn verify_sycamore(twist: &SycamoreTwist, ell_max: &Rational) -> Result<SycamoreReport> {
    let (x, y) = (&twist.x, &twist.y);
    let back = twist.inverse()?;
    let lengths: BTreeSet<Rational> =
        achievable_lengths(&x.glued, ell_max).into_iter().chain(achievable_lengths(&y.glued, ell_max)).collect();
    let mut rows = Vec::new();
    let mut euler = Vec::new();
    let mut failures = Vec::new();
    for ell in &lengths {
        let pmx = projecting_matching(x, ell)?;
        let pmy = projecting_matching(y, ell)?;
        for (name, g, pm) in [("X", x, &pmx), ("Y", y, &pmy)] {
            let c = check_projecting_matching(g, pm)?;
            if !c.acyclic || !c.bounded {
                failures.push(format!("l={ell}: projecting matching on {name} is not bounded acyclic"));
            }
            for s in &pm.critical {
                if !classify_sequence(g, s).is_twistable() {
                    failures.push(format!("l={ell}: critical cell {:?} of {name} is not twistable", s.points()));
                }
            }
        }
        let ty: BTreeSet<&PointSequence> = pmy.critical.iter().collect();
        let mut images = BTreeSet::new();
        for s in &pmx.critical {
            let Some(t) = twist.tau(s) else {
                failures.push(format!("l={ell}: tau undefined on {:?}", s.points()));
                continue;
            };
            if t.degree() != s.degree() || &y.glued.seq_length(&t) != ell || !ty.contains(&t) {
                failures.push(format!("l={ell}: tau({:?}) = {:?} is not a critical cell of Y", s.points(), t.points()));
            }
            if back.tau(&t).as_ref() != Some(s) {
                failures.push(format!("l={ell}: tau does not invert on {:?}", s.points()));
            }
            if !images.insert(t) {
                failures.push(format!("l={ell}: tau is not injective"));
            }
        }
        if images.len() != ty.len() {
            failures.push(format!("l={ell}: tau hits {} of {} critical cells of Y", images.len(), ty.len()));
        }
        let cx = pmx.critical_counts();
        let cy = pmy.critical_counts();
        let dims: BTreeSet<usize> = cx.keys().chain(cy.keys()).copied().collect();
        for dim in dims {
            rows.push(SycamoreRow {
                ell: ell.clone(),
                dim,
                critical_x: cx.get(&dim).copied().unwrap_or(0),
                critical_y: cy.get(&dim).copied().unwrap_or(0),
            });
        }
        let chi =
            |cells: &[PointSequence]| -> i64 { cells.iter().map(|s| if s.degree() % 2 == 0 { 1 } else { -1 }).sum() };
        let (ex, ey) = (chi(&pmx.cells), chi(&pmy.cells));
        if ex != pmx.critical_euler() || ey != pmy.critical_euler() {
            failures.push(format!("l={ell}: critical cells do not reproduce the Euler characteristic"));
        }
        euler.push((ell.clone(), ex, ey));
    }
    Ok(SycamoreReport {
        rows,
        euler,
        magnitude_x: magnitude(&x.glued, ell_max),
        magnitude_y: magnitude(&y.glued, ell_max),
        failures,
    })
}

/// Critical-cell counts by (ℓ, dimension) for a single gluing.
pub fn critical_table(g: &GluingSpec, ell_max: &Rational) -> Result<BTreeMap<(Rational, usize), usize>> {
    let mut out = BTreeMap::new();
    for ell in achievable_lengths(&g.glued, ell_max) {
        for (dim, c) in projecting_matching(g, &ell)?.critical_counts() {
            out.insert((ell.clone(), dim), c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::tests::graph;
    use crate::projecting::tests::{sycamore_g, sycamore_h};
    use crate::rational::int;

    fn twist() -> SycamoreTwist {
        SycamoreTwist::new(sycamore_g(), sycamore_h(), vec![0, 1], vec![0, 1], vec![1, 0]).unwrap()
    }

    #[test]
    fn sycamore_pair_small_lengths() {
        let t = twist();
        assert!(t.x.glued.find_isometry(&t.y.glued).is_none());
        let r = verify_sycamore(&t, &int(3)).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
        assert_eq!(r.magnitude_x.to_string(), "10 - 30 q^1 + 76 q^2 - 168 q^3");
    }

    #[test]
    fn identity_twist_is_trivial() {
        let t = SycamoreTwist::new(sycamore_g(), sycamore_h(), vec![0, 1], vec![0, 1], vec![0, 1]).unwrap();
        let r = verify_sycamore(&t, &int(2)).unwrap();
        assert!(r.pass());
    }

    #[test]
    fn tau_on_pieces() {
        let t = twist();
        let x = &t.x.glued;
        let s = |l: &[&str]| PointSequence::new(l.iter().map(|v| x.resolve(v).unwrap()).collect()).unwrap();
        assert_eq!(t.tau(&s(&["g3", "p", "g4"])), Some(s(&["g3", "p", "g4"])));
        assert_eq!(t.tau(&s(&["h6", "q", "h4"])), Some(s(&["h6", "p", "h4"])));
        assert_eq!(t.tau(&s(&["g5", "q", "h6"])), None);
    }

    #[test]
    fn asymmetric_neutral_point_is_rejected() {
        let h = graph(
            &["p", "q", "h3", "h4", "h5", "h6"],
            &[("p", "h3"), ("h3", "q"), ("q", "h4"), ("h4", "p"), ("p", "h5"), ("h5", "h6"), ("h6", "q"), ("q", "h5")],
        );
        let e = SycamoreTwist::new(sycamore_g(), h, vec![0, 1], vec![0, 1], vec![1, 0]).unwrap_err();
        assert!(matches!(e, Error::NotASycamoreTwist(ref m) if m.contains("h6")), "{e}");
    }
}
