//! Chain-level and homology-level cross-checks between the models.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use rayon::prelude::*;

use crate::causal::{achievable_lengths, achievable_lengths_between, time_stamps};
use crate::chain::{homology, magnitude_chain_complex, relative_chain_complex, HomologySummary};
use crate::complex::{ai_pair, order_complex_pair};
use crate::error::Result;
use crate::metric::MetricSpace;
use crate::rational::Rational;

pub fn magnitude_homology(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> Result<HomologySummary> {
    homology(&magnitude_chain_complex(x, a, b, ell))
}

#[derive(Debug, Clone)]
pub struct MainIsomReport {
    pub pass: bool,
    pub witness: Option<String>,
    pub magnitude: HomologySummary,
    pub relative: HomologySummary,
}

/// Compares the magnitude chain complex with the augmented relative chains of
/// (Δ Cau_ess, Δ̇ Cau_ess) under the time-stamp bijection.
pub fn verify_mainisom(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> Result<MainIsomReport> {
    let mc = magnitude_chain_complex(x, a, b, ell);
    let pair = order_complex_pair(x, a, b, ell);
    let rc = relative_chain_complex(&pair, true);
    let magnitude = homology(&mc)?;
    let relative = homology(&rc)?;
    let witness = mainisom_witness(x, &mc, &pair, &rc);
    let pass = witness.is_none() && magnitude == relative;
    let witness = witness.or_else(|| (!pass).then(|| format!("homology differs: {magnitude} vs {relative}")));
    Ok(MainIsomReport { pass, witness, magnitude, relative })
}

fn mainisom_witness(
    x: &MetricSpace,
    mc: &crate::chain::ChainComplex<crate::sequence::PointSequence>,
    pair: &crate::complex::SimplicialPair<crate::causal::CausalPoint>,
    rc: &crate::chain::ChainComplex<Vec<usize>>,
) -> Option<String> {
    let labels = x.labels();
    let lo = mc.min_degree().min(rc.min_degree());
    let hi = mc.max_degree().max(rc.max_degree());
    let mut maps: HashMap<i32, Vec<usize>> = HashMap::new();
    for d in lo..=hi {
        if mc.rank(d) != rc.rank(d) {
            return Some(format!("degree {d}: {} sequences vs {} simplices", mc.rank(d), rc.rank(d)));
        }
        let index: HashMap<&[usize], usize> = rc.basis(d).iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut map = Vec::with_capacity(mc.rank(d));
        for s in mc.basis(d) {
            let stamped = time_stamps(x, s);
            let simplex: Option<Vec<usize>> = stamped.iter().map(|p| pair.vertices.binary_search(p).ok()).collect();
            let Some(simplex) = simplex else {
                return Some(format!("{} has a time stamp outside Cau_ess", s.display_with(labels)));
            };
            match index.get(simplex.as_slice()) {
                Some(&i) => map.push(i),
                None => return Some(format!("{} has no relative simplex", s.display_with(labels))),
            }
        }
        let mut seen = map.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != map.len() {
            return Some(format!("degree {d}: time-stamp map is not injective"));
        }
        maps.insert(d, map);
    }
    for d in lo..=hi {
        let (Some(dm), Some(dr)) = (mc.boundary(d), rc.boundary(d)) else { continue };
        if d - 1 < lo {
            continue;
        }
        let (src, tgt) = (&maps[&d], &maps[&(d - 1)]);
        for (j, col) in dm.columns.iter().enumerate() {
            let mut image: Vec<(usize, i64)> = col.iter().map(|&(i, v)| (tgt[i], v)).collect();
            image.sort_unstable();
            let mut other = dr.columns[src[j]].clone();
            other.sort_unstable();
            if image != other {
                return Some(format!("boundary of {} does not commute", mc.basis(d)[j].display_with(labels)));
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct DoubleSuspensionReport {
    pub pass: bool,
    pub magnitude: HomologySummary,
    /// Augmented homology of (K_ℓ, K'_ℓ), shifted up by two.
    pub shifted_pair: HomologySummary,
}

pub fn verify_double_suspension(x: &MetricSpace, a: usize, b: usize, ell: &Rational) -> Result<DoubleSuspensionReport> {
    let pair = ai_pair(x, a, b, ell)?;
    let magnitude = magnitude_homology(x, a, b, ell)?;
    let shifted_pair = homology(&relative_chain_complex(&pair, true))?.shift(2);
    Ok(DoubleSuspensionReport { pass: magnitude == shifted_pair, magnitude, shifted_pair })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiEntry {
    pub ell: Rational,
    pub a: usize,
    pub b: usize,
    pub homology: HomologySummary,
}

/// Magnitude homology for every achievable ℓ up to a bound and every ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub lengths: Vec<Rational>,
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    pub fn get(&self, ell: &Rational, a: usize, b: usize) -> HomologySummary {
        self.entries
            .iter()
            .find(|e| &e.ell == ell && e.a == a && e.b == b)
            .map(|e| e.homology.clone())
            .unwrap_or_default()
    }

    /// MH^ℓ(X) as the direct sum over all pairs.
    pub fn total(&self, ell: &Rational) -> HomologySummary {
        self.entries
            .iter()
            .filter(|e| &e.ell == ell)
            .fold(HomologySummary::zero(), |acc, e| acc.direct_sum(&e.homology))
    }

    /// Tab-separated rows `ℓ a b k betti torsion` for nonzero groups.
    pub fn render(&self, x: &MetricSpace) -> String {
        let mut out = String::from("l\ta\tb\tk\tbetti\ttorsion\n");
        for e in &self.entries {
            for (k, g) in &e.homology.groups {
                let tors: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{k}\t{}\t{}",
                    e.ell,
                    x.label(e.a),
                    x.label(e.b),
                    g.betti,
                    tors.join(",")
                );
            }
        }
        out
    }
}

pub fn betti_table(x: &MetricSpace, ell_max: &Rational) -> Result<BettiTable> {
    let lengths = achievable_lengths(x, ell_max);
    betti_table_for(x, &lengths, None, None)
}

/// Table restricted to the given lengths and optional endpoints.
pub fn betti_table_for(
    x: &MetricSpace,
    lengths: &[Rational],
    from: Option<usize>,
    to: Option<usize>,
) -> Result<BettiTable> {
    let n = x.len();
    let mut tasks = Vec::new();
    for ell in lengths {
        for a in from.map_or(0..n, |f| f..f + 1) {
            for b in to.map_or(0..n, |t| t..t + 1) {
                if x.d(a, b) <= ell {
                    tasks.push((ell.clone(), a, b));
                }
            }
        }
    }
    let results: Vec<Result<BettiEntry>> = tasks
        .into_par_iter()
        .map(|(ell, a, b)| {
            let homology = magnitude_homology(x, a, b, &ell)?;
            Ok(BettiEntry { ell, a, b, homology })
        })
        .collect();
    let mut entries = Vec::new();
    for r in results {
        let e = r?;
        if !e.homology.is_zero() {
            entries.push(e);
        }
    }
    Ok(BettiTable { lengths: lengths.to_vec(), entries })
}

#[derive(Debug, Clone)]
pub struct KunnethMismatch {
    pub ell: Rational,
    pub a: usize,
    pub b: usize,
    pub predicted: BTreeMap<i32, usize>,
    pub actual: BTreeMap<i32, usize>,
}

#[derive(Debug, Clone)]
pub struct KunnethReport {
    pub product: MetricSpace,
    pub checked: usize,
    pub mismatches: Vec<KunnethMismatch>,
    pub torsion_failures: usize,
}

impl KunnethReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty() && self.torsion_failures == 0
    }
}

/// Rational Betti numbers of X × Y against the convolution of the factors.
pub fn kunneth(x: &MetricSpace, y: &MetricSpace, ell_max: &Rational) -> Result<KunnethReport> {
    let p = x.product(y);
    let tx = betti_table(x, ell_max)?;
    let ty = betti_table(y, ell_max)?;
    let tp = betti_table(&p, ell_max)?;
    let m = y.len();
    let lookup = |t: &BettiTable| -> HashMap<(Rational, usize, usize), HomologySummary> {
        t.entries.iter().map(|e| ((e.ell.clone(), e.a, e.b), e.homology.clone())).collect()
    };
    let (lx, ly, lp) = (lookup(&tx), lookup(&ty), lookup(&tp));
    let mut mismatches = Vec::new();
    let mut torsion_failures = 0;
    let mut checked = 0;
    for ell in &tp.lengths {
        for pa in 0..p.len() {
            for pb in 0..p.len() {
                let (xa, ya, xb, yb) = (pa / m, pa % m, pb / m, pb % m);
                let mut predicted: BTreeMap<i32, usize> = BTreeMap::new();
                let mut factors_free = true;
                for l1 in achievable_lengths_between(x, xa, xb, ell) {
                    let l2 = ell - &l1;
                    let (Some(hx), Some(hy)) = (lx.get(&(l1.clone(), xa, xb)), ly.get(&(l2, ya, yb))) else {
                        continue;
                    };
                    factors_free &= hx.is_torsion_free() && hy.is_torsion_free();
                    for (i, bi) in hx.betti_vector() {
                        for (j, bj) in hy.betti_vector() {
                            *predicted.entry(i + j).or_insert(0) += bi * bj;
                        }
                    }
                }
                let hp = lp.get(&(ell.clone(), pa, pb)).cloned().unwrap_or_default();
                let actual = hp.betti_vector();
                checked += 1;
                if predicted != actual {
                    mismatches.push(KunnethMismatch { ell: ell.clone(), a: pa, b: pb, predicted, actual });
                }
                if factors_free && !hp.is_torsion_free() {
                    torsion_failures += 1;
                }
            }
        }
    }
    Ok(KunnethReport { product: p, checked, mismatches, torsion_failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::tests::{c4, complete, graph};
    use crate::rational::int;

    #[test]
    fn mainisom_on_small_spaces() {
        for x in [complete(2), complete(3), c4()] {
            for a in 0..x.len() {
                for b in 0..x.len() {
                    for l in 0..=4 {
                        let r = verify_mainisom(&x, a, b, &int(l)).unwrap();
                        assert!(r.pass, "{:?}", r.witness);
                    }
                }
            }
        }
    }

    #[test]
    fn double_suspension_examples() {
        let k3 = complete(3);
        let r = verify_double_suspension(&k3, 0, 1, &int(2)).unwrap();
        assert!(r.pass);
        assert_eq!(r.magnitude, HomologySummary::from_betti(&[(2, 1)]));
        let path = graph(&["a", "c", "b"], &[("a", "c"), ("c", "b")]);
        let r = verify_double_suspension(&path, 0, 2, &int(2)).unwrap();
        assert!(r.pass && r.magnitude.is_zero());
        let two = complete(2);
        let r = verify_double_suspension(&two, 0, 1, &int(2)).unwrap();
        assert!(r.pass && r.magnitude.is_zero());
    }

    #[test]
    fn two_point_table() {
        let t = betti_table(&complete(2), &int(3)).unwrap();
        assert_eq!(t.lengths, (0..=3).map(int).collect::<Vec<_>>());
        for e in &t.entries {
            let l: usize = e.ell.to_integer().try_into().unwrap();
            assert_eq!(e.homology, HomologySummary::from_betti(&[(l as i32, 1)]));
            assert_eq!((e.a + e.b) % 2, l % 2);
        }
        assert_eq!(t.entries.len(), 8);
    }

    #[test]
    fn complete_graph_totals() {
        let t = betti_table(&complete(3), &int(2)).unwrap();
        for l in 0..=2 {
            assert_eq!(t.total(&int(l)), HomologySummary::from_betti(&[(l as i32, 3 << l)]));
        }
    }

    #[test]
    fn kunneth_square() {
        let r = kunneth(&complete(2), &complete(2), &int(3)).unwrap();
        assert!(r.pass(), "{:?}", r.mismatches);
        let t = betti_table(&r.product, &int(2)).unwrap();
        assert_eq!(t.total(&int(2)).betti(2), 12);
    }
}
