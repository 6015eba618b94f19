//! File formats: JSON instances, JSON set systems, and plain-text trees.
//!
//! An instance file lists labels, weights, and the strictly lower
//! triangle of the distance matrix, with every number written as an exact
//! rational string:
//!
//! ```json
//! {
//!   "points": ["a", "b", "c"],
//!   "weights": ["0", "1/2", "0"],
//!   "distances": [[], ["2"], ["1", "2"]]
//! }
//! ```
//!
//! An optional `"selfdist"` list turns the instance into a full triple.

use serde::{Deserialize, Serialize};

use crate::constructions::WeightedTree;
use crate::error::{Error, Result};
use crate::greedoid::SetSystem;
use crate::pointset::PointSet;
use crate::rational::{self, Rational};
use crate::triple::{FullUltraTriple, UltraTriple};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub points: Vec<String>,
    pub weights: Vec<String>,
    pub distances: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selfdist: Option<Vec<String>>,
}

/// A parsed instance: either kind of triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Plain(UltraTriple),
    Full(FullUltraTriple),
}

impl Instance {
    /// The triple without self-distances.
    pub fn triple(&self) -> &UltraTriple {
        match self {
            Instance::Plain(t) => t,
            Instance::Full(f) => f.restriction(),
        }
    }

    pub fn full(&self) -> Option<&FullUltraTriple> {
        match self {
            Instance::Plain(_) => None,
            Instance::Full(f) => Some(f),
        }
    }
}

fn parse_all(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|v| rational::parse(v)).collect()
}

fn format_all(values: &[Rational]) -> Vec<String> {
    values.iter().map(rational::format).collect()
}

impl InstanceFile {
    pub fn from_triple(t: &UltraTriple) -> Self {
        InstanceFile {
            points: t.labels().to_vec(),
            weights: format_all(t.weights()),
            distances: t.rows().iter().map(|row| format_all(row)).collect(),
            selfdist: None,
        }
    }

    pub fn from_full(t: &FullUltraTriple) -> Self {
        InstanceFile {
            selfdist: Some(format_all(t.self_distances())),
            ..Self::from_triple(t.restriction())
        }
    }

    pub fn from_instance(instance: &Instance) -> Self {
        match instance {
            Instance::Plain(t) => Self::from_triple(t),
            Instance::Full(f) => Self::from_full(f),
        }
    }

    /// Converts to a triple. Shape and label problems are errors; the
    /// ultrametric inequality is not checked here.
    pub fn to_instance(&self) -> Result<Instance> {
        let weights = parse_all(&self.weights)?;
        let rows = self
            .distances
            .iter()
            .map(|row| parse_all(row))
            .collect::<Result<Vec<_>>>()?;
        let base = UltraTriple::new(self.points.clone(), weights, rows)?;
        match &self.selfdist {
            None => Ok(Instance::Plain(base)),
            Some(selfdist) => Ok(Instance::Full(FullUltraTriple::new(base, parse_all(selfdist)?)?)),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Shape(format!("instance JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files always serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSystemFile {
    pub ground: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetSystemFile {
    pub fn from_system(s: &SetSystem) -> Self {
        SetSystemFile {
            ground: s.ground(),
            sets: s.iter().map(PointSet::to_vec).collect(),
        }
    }

    pub fn to_system(&self) -> Result<SetSystem> {
        SetSystem::from_lists(self.ground, &self.sets)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Shape(format!("set system JSON: {e}")))
    }
}

/// Parses the plain-text tree format: one edge `u v weight` per line, a
/// `root r` line, an optional `leaves a,b,c` line, blank lines, and `#`
/// comments.
pub fn parse_tree(text: &str) -> Result<WeightedTree> {
    let mut edges = Vec::new();
    let mut root = None;
    let mut leaves = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::InvalidTree(format!("line {}: cannot parse {raw:?}", lineno + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["root", r] => root = Some(r.to_string()),
            ["leaves", list] => {
                leaves = Some(list.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>())
            }
            [u, v, w] => edges.push((u.to_string(), v.to_string(), rational::parse(w).map_err(|_| bad())?)),
            _ => return Err(bad()),
        }
    }
    let root = root.ok_or_else(|| Error::InvalidTree("missing `root` line".into()))?;
    let tree = WeightedTree::from_labeled_edges(&edges, &root)?;
    match leaves {
        None => Ok(tree),
        Some(names) => {
            let ids = names
                .iter()
                .map(|n| tree.vertex_index(n).ok_or_else(|| Error::UnknownLabel(n.clone())))
                .collect::<Result<Vec<_>>>()?;
            tree.with_leaves(ids)
        }
    }
}
