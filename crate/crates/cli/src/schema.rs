//! Serde mirror of the workspace file format.
//!
//! Complex numbers are `[re, im]` pairs. Every top-level section is a map from object name
//! to definition; maps are ordered by name so serialization is canonical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub type Complex = [f64; 2];

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lattices: BTreeMap<String, LatticeDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subspaces: BTreeMap<String, SubspaceDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub observables: BTreeMap<String, ObservableDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub graphs: BTreeMap<String, GraphDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub words: BTreeMap<String, WordDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub filters: BTreeMap<String, FilterDef>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    /// `MO_size`.
    Mo,
    /// Boolean lattice with `size` atoms.
    Boolean,
    /// The non-orthomodular hexagon; rejected by validation.
    Hexagon,
}

/// Either `{"builtin": .., "size": ..}` or an explicit table
/// `{"elements": [..], "leq": [[x, y], ..], "ortho": [[x, x'], ..]}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<Builtin>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ortho: Option<Vec<[String; 2]>>,
}

/// Span of `vectors` in `C^ambient`; the vectors need not be orthonormal or independent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDef {
    pub ambient: usize,
    pub vectors: Vec<Vec<Complex>>,
}

/// A lattice element or subspace.
///
/// Strings name a subspace of the workspace or an element of the context lattice;
/// `top`/`bottom` (or `⊤`/`⊥`) name the bounds in either context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Name(String),
    Ortho { ortho: Box<Label> },
    Inline(SubspaceDef),
}

/// Observables, words, graphs and filters carry a label context: exactly one of
/// `lattice` (a finite lattice name) or `ambient` (the dimension of `C^d`).
pub trait HasContext {
    fn lattice(&self) -> Option<&str>;
    fn ambient(&self) -> Option<usize>;
}

macro_rules! has_context {
    ($($t:ty),*) => {$(
        impl HasContext for $t {
            fn lattice(&self) -> Option<&str> {
                self.lattice.as_deref()
            }
            fn ambient(&self) -> Option<usize> {
                self.ambient
            }
        }
    )*};
}

has_context!(ObservableDef, GraphDef, WordDef, FilterDef);

/// Parts given directly, or as the eigenspaces of a Hermitian matrix (rows of `[re, im]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hermitian: Option<Vec<Vec<Complex>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Implicit {
    Hilbert,
    Lattice,
}

/// An explicit graph (`vertices` and `[from, label, to]` edges) or a canonical model
/// (`implicit`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub implicit: Option<Implicit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(String, Label, String)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<usize>,
    pub labels: Vec<Label>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    /// The up-set of the single generator.
    Principal,
    /// The Sasaki filter generated by the generators.
    #[default]
    Generated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<usize>,
    #[serde(default)]
    pub kind: FilterKind,
    pub generators: Vec<Label>,
}
