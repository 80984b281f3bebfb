//! Metric gluing X = G ∪_K H along a common isometric subspace.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::rational::Rational;

/// Which part of the glued space a point of X belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// A point of G not in K.
    InteriorG,
    /// A point of K, by position in the gluing maps.
    Glue(usize),
    /// A point of H∖K that projects to K through its gate (an X index).
    Biased { gate: usize },
    /// A point of H∖K with no gate.
    Neutral,
}

#[derive(Debug, Clone)]
pub struct GluingSpec {
    pub g: MetricSpace,
    pub h: MetricSpace,
    pub k_in_g: Vec<usize>,
    pub k_in_h: Vec<usize>,
    pub glued: MetricSpace,
    /// X index of every H point.
    pub h_to_x: Vec<usize>,
    /// H indices of the biased points H_*, ascending.
    pub biased: Vec<usize>,
    /// Gate π(y) of each biased point, both as H indices.
    pub gates: BTreeMap<usize, usize>,
    /// H indices of the neutral points H_0, ascending.
    pub neutral: Vec<usize>,
    regions: Vec<Region>,
}

impl GluingSpec {
    /// Glues `h` to `g`; X lists the points of G first, then H∖K in H order.
    pub fn glue(g: MetricSpace, h: MetricSpace, k_in_g: Vec<usize>, k_in_h: Vec<usize>) -> Result<Self> {
        if k_in_g.is_empty() || k_in_h.is_empty() {
            return Err(Error::EmptyK);
        }
        if k_in_g.len() != k_in_h.len() {
            return Err(Error::GluingSizeMismatch(k_in_g.len(), k_in_h.len()));
        }
        for map in [(&k_in_g, g.len()), (&k_in_h, h.len())] {
            for (i, &p) in map.0.iter().enumerate() {
                if p >= map.1 {
                    return Err(Error::PointOutOfRange(p));
                }
                if map.0[..i].contains(&p) {
                    return Err(Error::NotInjective(i));
                }
            }
        }
        let nk = k_in_g.len();
        for i in 0..nk {
            for j in 0..nk {
                if g.d(k_in_g[i], k_in_g[j]) != h.d(k_in_h[i], k_in_h[j]) {
                    return Err(Error::NotIsometricEmbedding(i, j));
                }
            }
        }

        let ng = g.len();
        let mut h_to_x = vec![usize::MAX; h.len()];
        for (i, &kh) in k_in_h.iter().enumerate() {
            h_to_x[kh] = k_in_g[i];
        }
        let mut labels: Vec<String> = g.labels().to_vec();
        let mut next = ng;
        for (y, slot) in h_to_x.iter_mut().enumerate() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
                let l = h.label(y);
                labels.push(if g.index_of(l).is_some() { format!("{l}'") } else { l.to_string() });
            }
        }
        let n = next;
        let mut x_to_h = vec![None; n];
        for (y, &x) in h_to_x.iter().enumerate() {
            x_to_h[x] = Some(y);
        }
        let dist_between = |x: usize, y: usize| -> Rational {
            match (x < ng, x_to_h[x], y < ng, x_to_h[y]) {
                (true, _, true, _) => g.d(x, y).clone(),
                (_, Some(hx), _, Some(hy)) => h.d(hx, hy).clone(),
                (true, _, false, Some(hy)) => cross(&g, &h, &k_in_g, &k_in_h, x, hy),
                (false, Some(hx), true, _) => cross(&g, &h, &k_in_g, &k_in_h, y, hx),
                _ => unreachable!("every point lies in G or H"),
            }
        };
        let dist: Vec<Vec<Rational>> = (0..n).map(|x| (0..n).map(|y| dist_between(x, y)).collect()).collect();
        let glued = MetricSpace::from_distance_matrix(labels, dist)?;

        let mut biased = Vec::new();
        let mut neutral = Vec::new();
        let mut gates = BTreeMap::new();
        let mut regions = vec![Region::InteriorG; n];
        for (i, &kg) in k_in_g.iter().enumerate() {
            regions[kg] = Region::Glue(i);
        }
        for y in 0..h.len() {
            if k_in_h.contains(&y) {
                continue;
            }
            let candidates: Vec<usize> = k_in_h
                .iter()
                .copied()
                .filter(|&p| k_in_h.iter().all(|&k| *h.d(k, y) == h.d(k, p) + h.d(p, y)))
                .collect();
            match candidates.as_slice() {
                [] => {
                    neutral.push(y);
                    regions[h_to_x[y]] = Region::Neutral;
                }
                [p] => {
                    biased.push(y);
                    gates.insert(y, *p);
                    regions[h_to_x[y]] = Region::Biased { gate: h_to_x[*p] };
                }
                [p1, p2, ..] => return Err(Error::AmbiguousGate(y, *p1, *p2)),
            }
        }
        Ok(Self { g, h, k_in_g, k_in_h, glued, h_to_x, biased, gates, neutral, regions })
    }

    pub fn region(&self, x: usize) -> Region {
        self.regions[x]
    }

    pub fn len(&self) -> usize {
        self.glued.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glued.is_empty()
    }

    pub fn in_g(&self, x: usize) -> bool {
        x < self.g.len()
    }

    pub fn in_k(&self, x: usize) -> bool {
        matches!(self.regions[x], Region::Glue(_))
    }

    pub fn in_h(&self, x: usize) -> bool {
        !matches!(self.regions[x], Region::InteriorG)
    }

    pub fn in_interior_g(&self, x: usize) -> bool {
        matches!(self.regions[x], Region::InteriorG)
    }

    pub fn in_interior_h(&self, x: usize) -> bool {
        matches!(self.regions[x], Region::Biased { .. } | Region::Neutral)
    }

    pub fn is_biased(&self, x: usize) -> bool {
        matches!(self.regions[x], Region::Biased { .. })
    }

    pub fn is_neutral(&self, x: usize) -> bool {
        matches!(self.regions[x], Region::Neutral)
    }

    /// Gate of a biased point, as an X index.
    pub fn gate(&self, x: usize) -> Option<usize> {
        match self.regions[x] {
            Region::Biased { gate } => Some(gate),
            _ => None,
        }
    }

    /// X indices of K, in gluing-map order.
    pub fn k_points(&self) -> &[usize] {
        &self.k_in_g
    }

    /// H index of an X point lying in H.
    pub fn x_to_h(&self, x: usize) -> Option<usize> {
        self.h_to_x.iter().position(|&p| p == x)
    }

    /// X indices of the neutral points.
    pub fn neutral_x(&self) -> Vec<usize> {
        self.neutral.iter().map(|&y| self.h_to_x[y]).collect()
    }

    pub fn is_gated(&self) -> bool {
        self.neutral.is_empty()
    }
}

fn cross(g: &MetricSpace, h: &MetricSpace, kg: &[usize], kh: &[usize], x: usize, y: usize) -> Rational {
    kg.iter().zip(kh).map(|(&a, &b)| g.d(x, a) + h.d(b, y)).min().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::tests::{complete, graph};
    use crate::rational::int;

    #[test]
    fn one_point_gluing_of_edges_is_a_path() {
        let e1 = graph(&["a", "k"], &[("a", "k")]);
        let e2 = graph(&["k", "b"], &[("k", "b")]);
        let spec = GluingSpec::glue(e1, e2, vec![1], vec![0]).unwrap();
        let x = &spec.glued;
        assert_eq!(x.len(), 3);
        assert_eq!(x.d(x.resolve("a").unwrap(), x.resolve("b").unwrap()), &int(2));
        assert_eq!(spec.biased, vec![1]);
        assert!(spec.neutral.is_empty());
    }

    #[test]
    fn degenerate_gluing_has_no_interior() {
        let k = complete(2);
        let spec = GluingSpec::glue(complete(3), k.clone(), vec![0, 1], vec![0, 1]).unwrap();
        assert!(spec.biased.is_empty() && spec.neutral.is_empty());
        assert_eq!(spec.glued.distances(), complete(3).distances());
    }

    #[test]
    fn rejects_bad_maps() {
        let g = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let h = complete(3);
        assert_eq!(
            GluingSpec::glue(g.clone(), h.clone(), vec![0, 2], vec![0, 1]).unwrap_err(),
            Error::NotIsometricEmbedding(0, 1)
        );
        assert_eq!(GluingSpec::glue(g.clone(), h.clone(), vec![], vec![]).unwrap_err(), Error::EmptyK);
        assert_eq!(GluingSpec::glue(g, h, vec![0, 0], vec![0, 1]).unwrap_err(), Error::NotInjective(1));
    }

    #[test]
    fn glued_metric_restricts_and_projects() {
        // G = path p-g-q, H = 4-cycle p-h1-q-h2 plus pendant t at h1
        let g = graph(&["p", "g", "q"], &[("p", "g"), ("g", "q")]);
        let h = graph(&["p", "h1", "q", "h2", "t"], &[("p", "h1"), ("h1", "q"), ("q", "h2"), ("h2", "p"), ("h1", "t")]);
        let spec = GluingSpec::glue(g.clone(), h.clone(), vec![0, 2], vec![0, 2]).unwrap();
        let x = &spec.glued;
        for i in 0..g.len() {
            for j in 0..g.len() {
                assert_eq!(x.d(i, j), g.d(i, j));
            }
        }
        for i in 0..h.len() {
            for j in 0..h.len() {
                assert_eq!(x.d(spec.h_to_x[i], spec.h_to_x[j]), h.d(i, j));
            }
        }
        // every point of H∖K sees both p and q at distance 1 or 2 symmetrically: h1, h2 neutral
        let h1 = spec.h_to_x[1];
        assert!(spec.is_neutral(h1));
        let t = x.resolve("t").unwrap();
        assert!(spec.is_neutral(t));
        for &y in &spec.biased {
            let xy = spec.h_to_x[y];
            let gate = spec.gate(xy).unwrap();
            for xg in 0..g.len() {
                assert_eq!(*x.d(xg, xy), x.d(xg, gate) + x.d(gate, xy));
            }
        }
    }
}
