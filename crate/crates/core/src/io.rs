//! JSON documents for spaces, gluings, twists and simplicial complexes.
//!
//! Numbers are bare integers or `"p/q"` strings; decimals are refused.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frame::HasseGraph;
use crate::gluing::GluingSpec;
use crate::metric::MetricSpace;
use crate::rational::{parse_rational, Rational};
use crate::sycamore::SycamoreTwist;

/// A rational as it appears in documents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Exact;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Exact, E> {
                Ok(Exact(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Exact, E> {
                Ok(Exact(Rational::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Exact, E> {
                Err(E::custom(format!("decimal number {v} is not accepted; write it as \"p/q\"")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Exact, E> {
                parse_rational(v).map(Exact).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SpaceDoc {
    Matrix { labels: Vec<String>, dist: Vec<Vec<Exact>> },
    Graph { vertices: Vec<String>, edges: Vec<(String, String, Exact)> },
}

impl SpaceDoc {
    pub fn build(&self) -> Result<MetricSpace> {
        match self {
            SpaceDoc::Matrix { labels, dist } => MetricSpace::from_distance_matrix(
                labels.clone(),
                dist.iter().map(|r| r.iter().map(|e| e.0.clone()).collect()).collect(),
            ),
            SpaceDoc::Graph { vertices, edges } => {
                let edges: Vec<_> = edges.iter().map(|(a, b, w)| (a.clone(), b.clone(), w.0.clone())).collect();
                MetricSpace::from_weighted_graph(vertices.clone(), &edges)
            }
        }
    }

    pub fn from_space(x: &MetricSpace) -> Self {
        SpaceDoc::Matrix {
            labels: x.labels().to_vec(),
            dist: x.distances().iter().map(|r| r.iter().cloned().map(Exact).collect()).collect(),
        }
    }
}

/// A space given inline or as a path relative to the referring document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Path(PathBuf),
    Inline(SpaceDoc),
}

impl SpaceRef {
    fn load(&self, base: Option<&Path>) -> Result<MetricSpace> {
        match self {
            SpaceRef::Inline(doc) => doc.build(),
            SpaceRef::Path(p) => {
                let p = base.map_or_else(|| p.clone(), |b| b.join(p));
                load_space(&p)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GluingDoc {
    pub g: SpaceRef,
    pub h: SpaceRef,
    pub k_in_g: Vec<String>,
    pub k_in_h: Vec<String>,
    /// Present for twist documents: pairs `[k, α(k)]` of K labels as named in G.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<(String, String)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub facets: Vec<Vec<String>>,
}

/// Weighted-graph document for an extended face poset, with the suggested endpoints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HasseDoc {
    #[serde(flatten)]
    pub graph: SpaceDoc,
    pub from: String,
    pub to: String,
    pub l: Exact,
    pub dimension: usize,
}

impl HasseDoc {
    pub fn new(h: &HasseGraph) -> Self {
        HasseDoc {
            graph: SpaceDoc::Graph {
                vertices: h.vertices.clone(),
                edges: h.edges.iter().map(|(a, b, w)| (a.clone(), b.clone(), Exact(w.clone()))).collect(),
            },
            from: h.bottom.clone(),
            to: h.top.clone(),
            l: Exact(h.ell.clone()),
            dimension: h.dimension,
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_space(text: &str) -> Result<MetricSpace> {
    parse::<SpaceDoc>(text)?.build()
}

pub fn load_space(path: &Path) -> Result<MetricSpace> {
    parse_space(&read(path)?)
}

pub fn parse_complex(text: &str) -> Result<Vec<Vec<String>>> {
    Ok(parse::<ComplexDoc>(text)?.facets)
}

pub fn load_complex(path: &Path) -> Result<Vec<Vec<String>>> {
    parse_complex(&read(path)?)
}

fn resolve_all(x: &MetricSpace, labels: &[String]) -> Result<Vec<usize>> {
    labels.iter().map(|l| x.resolve(l)).collect()
}

impl GluingDoc {
    fn parts(&self, base: Option<&Path>) -> Result<(MetricSpace, MetricSpace, Vec<usize>, Vec<usize>)> {
        let g = self.g.load(base)?;
        let h = self.h.load(base)?;
        let kg = resolve_all(&g, &self.k_in_g)?;
        let kh = resolve_all(&h, &self.k_in_h)?;
        Ok((g, h, kg, kh))
    }

    pub fn gluing(&self, base: Option<&Path>) -> Result<GluingSpec> {
        let (g, h, kg, kh) = self.parts(base)?;
        GluingSpec::glue(g, h, kg, kh)
    }

    pub fn twist(&self, base: Option<&Path>) -> Result<SycamoreTwist> {
        let (g, h, kg, kh) = self.parts(base)?;
        let pairs = self.alpha.as_ref().ok_or_else(|| Error::Parse("twist document needs an `alpha` field".into()))?;
        let position = |l: &str| -> Result<usize> {
            self.k_in_g.iter().position(|k| k == l).ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let mut alpha: Vec<Option<usize>> = vec![None; kg.len()];
        for (from, to) in pairs {
            alpha[position(from)?] = Some(position(to)?);
        }
        let alpha = alpha
            .into_iter()
            .enumerate()
            .map(|(i, a)| {
                a.ok_or_else(|| Error::NotASycamoreTwist(format!("alpha is undefined on {}", self.k_in_g[i])))
            })
            .collect::<Result<Vec<_>>>()?;
        SycamoreTwist::new(g, h, kg, kh, alpha)
    }
}

pub fn load_gluing_doc(path: &Path) -> Result<GluingDoc> {
    parse(&read(path)?)
}

pub fn load_gluing(path: &Path) -> Result<GluingSpec> {
    load_gluing_doc(path)?.gluing(path.parent())
}

pub fn load_twist(path: &Path) -> Result<SycamoreTwist> {
    load_gluing_doc(path)?.twist(path.parent())
}
