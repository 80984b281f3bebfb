//! Additivity of magnitude homology under gated gluings (no neutral points).

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::causal::achievable_lengths;
use crate::chain::{homology, magnitude_chain_complex, HomologySummary};
use crate::checks::betti_table_for;
use crate::error::Result;
use crate::gluing::GluingSpec;
use crate::metric::MetricSpace;
use crate::rational::Rational;

/// A gluing in which every point of H∖K is biased.
#[derive(Debug, Clone)]
pub struct GatedGluing {
    pub base: GluingSpec,
}

/// Why a gluing is not gated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotGated {
    /// X index of a neutral point.
    pub witness: usize,
    pub label: String,
    pub neutral_count: usize,
}

impl std::fmt::Display for NotGated {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "not gated: {} is neutral ({} neutral point{})",
            self.label,
            self.neutral_count,
            if self.neutral_count == 1 { "" } else { "s" }
        )
    }
}

pub fn check_gated(g: GluingSpec) -> std::result::Result<GatedGluing, NotGated> {
    let neutral = g.neutral_x();
    match neutral.first() {
        None => Ok(GatedGluing { base: g }),
        Some(&w) => Err(NotGated { witness: w, label: g.glued.label(w).to_string(), neutral_count: neutral.len() }),
    }
}

/// Triples a, c ∈ K, b ∈ H∖K with d(a,c) = d(a,b) + d(b,c).
pub fn shortcut_violations(g: &GatedGluing) -> Vec<(usize, usize, usize)> {
    let s = &g.base;
    let x = &s.glued;
    let mut out = Vec::new();
    for &a in s.k_points() {
        for &c in s.k_points() {
            for b in (0..x.len()).filter(|&b| s.in_interior_h(b)) {
                if x.between(a, b, c) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

fn total_homology(x: &MetricSpace, ell: &Rational) -> Result<HomologySummary> {
    Ok(betti_table_for(x, std::slice::from_ref(ell), None, None)?.total(ell))
}

/// Homology of the light-like sequences of H that touch H∖K, modulo those inside K.
pub fn interior_part_betti(g: &GatedGluing, ell: &Rational) -> Result<HomologySummary> {
    let s = &g.base;
    let h = &s.h;
    let interior: BTreeSet<usize> = (0..h.len()).filter(|y| !s.k_in_h.contains(y)).collect();
    let n = h.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| h.d(a, b) <= ell).collect();
    let parts: Vec<Result<HomologySummary>> = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let cc = magnitude_chain_complex(h, a, b, ell);
            homology(&cc.quotient(|seq| seq.points().iter().any(|p| interior.contains(p))))
        })
        .collect();
    parts.into_iter().try_fold(HomologySummary::zero(), |acc, p| Ok(acc.direct_sum(&p?)))
}

#[derive(Debug, Clone)]
pub struct UnionRow {
    pub ell: Rational,
    pub glued: HomologySummary,
    pub interior: HomologySummary,
    pub g: HomologySummary,
}

impl UnionRow {
    pub fn pass(&self) -> bool {
        self.glued == self.interior.direct_sum(&self.g)
    }
}

#[derive(Debug, Clone)]
pub struct UnionReport {
    pub rows: Vec<UnionRow>,
    pub shortcut_violations: Vec<(usize, usize, usize)>,
}

impl UnionReport {
    pub fn pass(&self) -> bool {
        self.shortcut_violations.is_empty() && self.rows.iter().all(UnionRow::pass)
    }
}

fn lengths(g: &GatedGluing, ell_max: &Rational) -> Vec<Rational> {
    let s = &g.base;
    let mut all: BTreeSet<Rational> = achievable_lengths(&s.glued, ell_max).into_iter().collect();
    all.extend(achievable_lengths(&s.g, ell_max));
    all.extend(achievable_lengths(&s.h, ell_max));
    all.into_iter().collect()
}

/// MH(X) against the interior part of H plus MH(G), per length.
pub fn verify_union(g: &GatedGluing, ell_max: &Rational) -> Result<UnionReport> {
    let s = &g.base;
    let mut rows = Vec::new();
    for ell in lengths(g, ell_max) {
        rows.push(UnionRow {
            glued: total_homology(&s.glued, &ell)?,
            interior: interior_part_betti(g, &ell)?,
            g: total_homology(&s.g, &ell)?,
            ell,
        });
    }
    Ok(UnionReport { rows, shortcut_violations: shortcut_violations(g) })
}

#[derive(Debug, Clone)]
pub struct MvRow {
    pub ell: Rational,
    pub degree: i32,
    /// Ranks of X, K, G, H.
    pub ranks: [usize; 4],
    pub rank_ok: bool,
    pub torsion_ok: bool,
}

#[derive(Debug, Clone)]
pub struct MvReport {
    pub rows: Vec<MvRow>,
}

impl MvReport {
    pub fn rank_failures(&self) -> impl Iterator<Item = &MvRow> {
        self.rows.iter().filter(|r| !r.rank_ok)
    }

    pub fn torsion_failures(&self) -> impl Iterator<Item = &MvRow> {
        self.rows.iter().filter(|r| !r.torsion_ok)
    }

    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.rank_ok && r.torsion_ok)
    }
}

/// MH(X) ⊕ MH(K) against MH(G) ⊕ MH(H), per length and degree.
pub fn verify_mv(g: &GatedGluing, ell_max: &Rational) -> Result<MvReport> {
    let s = &g.base;
    let k = s.g.subspace(&s.k_in_g)?;
    let mut rows = Vec::new();
    for ell in lengths(g, ell_max) {
        let hx = total_homology(&s.glued, &ell)?;
        let hk = total_homology(&k, &ell)?;
        let hg = total_homology(&s.g, &ell)?;
        let hh = total_homology(&s.h, &ell)?;
        let left = hx.direct_sum(&hk);
        let right = hg.direct_sum(&hh);
        let degrees: BTreeSet<i32> = [&hx, &hk, &hg, &hh]
            .iter()
            .flat_map(|h| h.betti_vector().into_keys().chain(h.groups.keys().copied()))
            .collect();
        for degree in degrees {
            rows.push(MvRow {
                ell: ell.clone(),
                degree,
                ranks: [hx.betti(degree), hk.betti(degree), hg.betti(degree), hh.betti(degree)],
                rank_ok: left.betti(degree) == right.betti(degree),
                torsion_ok: left.torsion(degree) == right.torsion(degree),
            });
        }
    }
    Ok(MvReport { rows })
}
