//! Construction specs as JSON documents, and the sidecar written next to each graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use turangap_core::constructions::{
    make_f, make_f_plus_k, make_g4, make_gr, make_pentagon_blowup, make_turan, petersen, BlowupSpec,
    ConstructionError, PartitionedGraph, RecursiveSpec,
};
use turangap_core::Graph;

use crate::formats::{to_graph6, GraphFormat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ConstructionSpec {
    F { d: usize },
    FPlusK { d: usize, s: usize },
    Turan { n: usize, k: usize },
    Complete { n: usize },
    Cycle { n: usize },
    Petersen,
    Pentagon { blowup: BlowupSpec },
    G4 { blowup: BlowupSpec, apex: usize },
    Gr { spec: RecursiveSpec },
}

/// A built graph and, for multi-part families, its part structure.
#[derive(Debug, Clone)]
pub struct Built {
    pub graph: Graph,
    pub parts: Option<PartitionedGraph>,
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Built, ConstructionError> {
        let plain = |graph: Graph| Built { graph, parts: None };
        let parted = |p: PartitionedGraph| Built {
            graph: p.graph.clone(),
            parts: Some(p),
        };
        Ok(match self {
            ConstructionSpec::F { d } => plain(make_f(*d)?),
            ConstructionSpec::FPlusK { d, s } => plain(make_f_plus_k(*d, *s)?),
            ConstructionSpec::Turan { n, k } => parted(make_turan(*n, *k)?),
            ConstructionSpec::Complete { n } => plain(Graph::complete(*n)),
            ConstructionSpec::Cycle { n } => plain(Graph::cycle(*n)),
            ConstructionSpec::Petersen => plain(petersen()),
            ConstructionSpec::Pentagon { blowup } => parted(make_pentagon_blowup(blowup)?),
            ConstructionSpec::G4 { blowup, apex } => parted(make_g4(blowup, *apex)?),
            ConstructionSpec::Gr { spec } => parted(make_gr(spec)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub e: usize,
    pub min_degree: Option<usize>,
    pub max_degree: Option<usize>,
    /// degree → number of vertices with that degree
    pub degree_histogram: BTreeMap<usize, usize>,
}

impl GraphStats {
    pub fn of(g: &Graph) -> Self {
        let mut degree_histogram = BTreeMap::new();
        for d in g.degrees() {
            *degree_histogram.entry(d).or_insert(0) += 1;
        }
        Self {
            n: g.n(),
            e: g.edge_count(),
            min_degree: g.min_degree(),
            max_degree: g.max_degree(),
            degree_histogram,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub spec: ConstructionSpec,
    pub stats: GraphStats,
    pub format: GraphFormat,
    pub graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part_sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_edges: Option<usize>,
}

impl Sidecar {
    pub fn new(spec: &ConstructionSpec, built: &Built, format: GraphFormat) -> Self {
        Self {
            spec: spec.clone(),
            stats: GraphStats::of(&built.graph),
            format,
            graph6: to_graph6(&built.graph),
            part_sizes: built.parts.as_ref().map(|p| p.part_sizes.clone()),
            theta_edges: built.parts.as_ref().map(|p| p.theta_edges.len()),
        }
    }
}

/// Reads either a bare spec or a sidecar (whose `spec` member is used).
pub fn spec_from_json(text: &str) -> Result<ConstructionSpec, serde_json::Error> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value.get("spec") {
        Some(inner) => serde_json::from_value(inner.clone()),
        None => serde_json::from_value(value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use turangap_core::Fraction;

    #[test]
    fn spec_round_trip() {
        let specs = [
            ConstructionSpec::F { d: 3 },
            ConstructionSpec::Turan { n: 6, k: 3 },
            ConstructionSpec::Petersen,
            ConstructionSpec::G4 {
                blowup: BlowupSpec::new([2, 2, 2, 2, 2], Fraction::new(1, 8)).with_seed(7),
                apex: 4,
            },
        ];
        for spec in specs {
            let text = serde_json::to_string(&spec).unwrap();
            assert_eq!(spec_from_json(&text).unwrap(), spec);
            let built = spec.build().unwrap();
            let side = Sidecar::new(&spec, &built, GraphFormat::Graph6);
            let again = spec_from_json(&serde_json::to_string(&side).unwrap()).unwrap();
            assert_eq!(again.build().unwrap().graph, built.graph);
        }
    }

    #[test]
    fn json_shape() {
        let text = serde_json::to_string(&ConstructionSpec::F { d: 3 }).unwrap();
        assert_eq!(text, r#"{"family":"f","d":3}"#);
        let g4: ConstructionSpec = serde_json::from_str(
            r#"{"family":"g4","apex":4,"blowup":{"part_sizes":[2,2,2,2,2],"theta":"0.125","seed":7}}"#,
        )
        .unwrap();
        let built = g4.build().unwrap();
        assert_eq!(built.graph.n(), 14);
    }

    #[test]
    fn stats() {
        let s = GraphStats::of(&make_f(3).unwrap());
        assert_eq!((s.n, s.e, s.min_degree), (8, 12, Some(3)));
        assert_eq!(s.degree_histogram.get(&3), Some(&8));
    }
}
