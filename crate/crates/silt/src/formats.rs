//! JSON documents: algebra input files, exchange-quiver posets and torsion
//! Hasse diagrams.

use serde::{Deserialize, Serialize};

use silt_core::algebra::{Arrow, Path, Presentation, Quiver, Relation};
use silt_core::exactmat::{PrimeField, DEFAULT_PRIME};
use silt_core::explorer::ExchangeQuiver;
use silt_core::orders::{TorsHasse, TorsKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

/// Vertex labels may be written as strings or integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Text(String),
    Int(i64),
}

impl Label {
    pub fn text(&self) -> String {
        match self {
            Label::Text(s) => s.clone(),
            Label::Int(i) => i.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<Label>,
    /// `[label, source, target]`.
    pub arrows: Vec<(String, Label, Label)>,
}

/// `{"field": {"p": ..}, "quiver": {..}, "relations": [[[coeff, [arrows..]], ..], ..], "nilpotency_bound": N}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default)]
    pub field: FieldSpec,
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub relations: Vec<Vec<(i64, Vec<String>)>>,
    pub nilpotency_bound: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(#[from] silt_core::Error),
    #[error("relation {relation}, term {term}: {reason}")]
    Term {
        relation: usize,
        term: usize,
        reason: String,
    },
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Validated presentation; `prime` overrides the file's field.
    pub fn presentation(&self, prime: Option<u32>) -> Result<Presentation, InputError> {
        let field = PrimeField::new(prime.unwrap_or(self.field.p))?;
        let vertices: Vec<String> = self.quiver.vertices.iter().map(Label::text).collect();
        let find = |l: &Label| {
            let name = l.text();
            vertices
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| silt_core::Error::InvalidQuiver(format!("unknown vertex {name:?}")))
        };
        let mut arrows = Vec::with_capacity(self.quiver.arrows.len());
        for (label, s, t) in &self.quiver.arrows {
            arrows.push(Arrow {
                label: label.clone(),
                source: find(s)?,
                target: find(t)?,
            });
        }
        let quiver = Quiver::new(vertices, arrows)?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for (ri, rel) in self.relations.iter().enumerate() {
            let mut terms = Vec::with_capacity(rel.len());
            for (ti, (coeff, word)) in rel.iter().enumerate() {
                let err = |reason: String| InputError::Term {
                    relation: ri,
                    term: ti,
                    reason,
                };
                let arrows = word
                    .iter()
                    .map(|l| quiver.arrow_index(l).ok_or_else(|| err(format!("unknown arrow {l:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if arrows.is_empty() {
                    return Err(err("empty path".into()));
                }
                let path = Path::from_arrows(&quiver, arrows).map_err(|e| err(e.to_string()))?;
                terms.push((field.reduce(*coeff), path));
            }
            relations.push(Relation { terms });
        }
        Ok(Presentation::new(field, quiver, relations, self.nilpotency_bound)?)
    }

    /// The normalized form of a presentation (coefficients in `0..p`).
    pub fn from_presentation(p: &Presentation) -> Self {
        let q = p.quiver();
        let label = |v: usize| Label::Text(q.vertices()[v].clone());
        Self {
            field: FieldSpec { p: p.field().p() },
            quiver: QuiverSpec {
                vertices: q.vertices().iter().cloned().map(Label::Text).collect(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| (a.label.clone(), label(a.source), label(a.target)))
                    .collect(),
            },
            relations: p
                .relations()
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| {
                            let word = path.arrows.iter().map(|&a| q.arrow(a).label.clone()).collect();
                            (i64::from(*c), word)
                        })
                        .collect()
                })
                .collect(),
            nilpotency_bound: p.nilpotency_bound(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub dims: Vec<usize>,
    pub gvec: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub summands: Vec<SummandJson>,
    pub proj_part: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub at: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub algebra: AlgebraFile,
    pub complete: bool,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

impl PosetJson {
    pub fn new(algebra: AlgebraFile, eq: &ExchangeQuiver) -> Self {
        let nodes = eq
            .nodes
            .iter()
            .enumerate()
            .map(|(id, pair)| NodeJson {
                id,
                summands: pair
                    .summands
                    .iter()
                    .map(|&s| {
                        let e = eq.registry.get(s);
                        SummandJson {
                            dims: e.dims().to_vec(),
                            gvec: e.gvec.clone(),
                        }
                    })
                    .collect(),
                proj_part: pair.proj_part.clone(),
            })
            .collect();
        let edges = eq
            .edges
            .iter()
            .map(|e| EdgeJson {
                from: e.from,
                to: e.to,
                at: e.at,
            })
            .collect();
        Self {
            algebra,
            complete: eq.complete,
            nodes,
            edges,
        }
    }

    pub fn sincere_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.proj_part.is_empty()).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KindJson {
    Fac,
    FacFl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsNodeJson {
    pub id: usize,
    pub kind: KindJson,
    /// Id of the exchange-quiver node.
    pub pair: usize,
}

/// The torsion Hasse diagram together with the exchange quiver its nodes
/// refer to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsJson {
    pub nodes: Vec<TorsNodeJson>,
    pub edges: Vec<(usize, usize)>,
    pub exchange: PosetJson,
}

impl TorsJson {
    pub fn new(t: &TorsHasse, exchange: PosetJson) -> Self {
        Self {
            nodes: t
                .nodes
                .iter()
                .enumerate()
                .map(|(id, n)| TorsNodeJson {
                    id,
                    kind: match n.kind {
                        TorsKind::Fac => KindJson::Fac,
                        TorsKind::FacFl => KindJson::FacFl,
                    },
                    pair: n.pair,
                })
                .collect(),
            edges: t.edges.clone(),
            exchange,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use silt_core::algebra::Algebra;

    const NAKAYAMA: &str = r#"{
        "field": {"p": 101},
        "quiver": {"vertices": ["1", "2"], "arrows": [["a1", "1", "2"], ["a2", "2", "1"]]},
        "relations": [[[1, ["a1", "a2"]]], [[1, ["a2", "a1"]]]],
        "nilpotency_bound": 2
    }"#;

    #[test]
    fn parse_and_echo() {
        let file = AlgebraFile::parse(NAKAYAMA).unwrap();
        let p = file.presentation(None).unwrap();
        assert_eq!(p.field().p(), 101);
        let a = Algebra::build(p.clone()).unwrap();
        assert_eq!(a.dimension(), 4);
        let echo = AlgebraFile::from_presentation(&p);
        assert_eq!(echo.presentation(None).unwrap(), p);
        let text = serde_json::to_string(&echo).unwrap();
        assert_eq!(AlgebraFile::parse(&text).unwrap(), echo);
    }

    #[test]
    fn coefficients_reduce_and_prime_override() {
        let text = NAKAYAMA.replace("[[1, [\"a1\", \"a2\"]]]", "[[-100, [\"a1\", \"a2\"]]]");
        let p = AlgebraFile::parse(&text).unwrap().presentation(None).unwrap();
        assert_eq!(p.relations()[0].terms[0].0, 1);
        let q = AlgebraFile::parse(NAKAYAMA).unwrap().presentation(Some(7)).unwrap();
        assert_eq!(q.field().p(), 7);
    }

    #[test]
    fn bad_relation_is_named() {
        let text = NAKAYAMA.replace("[[1, [\"a2\", \"a1\"]]]", "[[1, [\"a2\", \"zz\"]]]");
        let err = AlgebraFile::parse(&text).unwrap().presentation(None).unwrap_err();
        assert!(err.to_string().contains("relation 1"), "{err}");
        let text = NAKAYAMA.replace("[[1, [\"a2\", \"a1\"]]]", "[[1, [\"a2\"]]]");
        let err = AlgebraFile::parse(&text).unwrap().presentation(None).unwrap_err();
        assert!(err.to_string().contains("relation 1"), "{err}");
        assert!(AlgebraFile::parse("{\"quiver\": 3}").is_err());
    }
}
