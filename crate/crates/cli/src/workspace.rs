//! Resolution and validation of workspace files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use qlogic::models::{Edge, ExplicitGraph};
use qlogic::observables::{eigenspaces, validate_observable, Observable, ObservableDefect};
use qlogic::{CMat, CVec, Complex64, FiniteOml, HilbertLattice, LatticeElement, OrthoLattice, Subspace, Tolerances};

use crate::error::{CliError, CliResult};
use crate::schema::{
    Builtin, Complex, FilterDef, FilterKind, GraphDef, HasContext, Implicit, Label, LatticeDef, ObservableDef,
    SubspaceDef, WordDef, WorkspaceFile,
};

/// A resolved label sequence in one lattice.
#[derive(Debug, Clone)]
pub enum Labels {
    Finite { lattice: String, elements: Vec<LatticeElement> },
    Hilbert { ambient: usize, subspaces: Vec<Subspace> },
}

impl Labels {
    pub fn len(&self) -> usize {
        match self {
            Self::Finite { elements, .. } => elements.len(),
            Self::Hilbert { subspaces, .. } => subspaces.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone)]
pub enum Graph {
    ExplicitFinite { lattice: String, graph: ExplicitGraph<FiniteOml> },
    ExplicitHilbert { ambient: usize, graph: ExplicitGraph<HilbertLattice> },
    HilbertModel { ambient: usize },
    LatticeModelFinite { lattice: String },
    LatticeModelHilbert { ambient: usize },
}

#[derive(Debug, Clone)]
pub struct Filter {
    pub kind: FilterKind,
    pub generators: Labels,
}

/// A fully validated workspace.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub tolerances: Tolerances,
    pub lattices: BTreeMap<String, FiniteOml>,
    pub subspaces: BTreeMap<String, Subspace>,
    pub observables: BTreeMap<String, Labels>,
    pub graphs: BTreeMap<String, Graph>,
    pub words: BTreeMap<String, Labels>,
    pub filters: BTreeMap<String, Filter>,
}

/// Deserializes a workspace file, reporting the failing field with line and column.
pub fn parse_file(text: &str) -> CliResult<WorkspaceFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        let (line, column) = (inner.line(), inner.column());
        let full = inner.to_string();
        let suffix = format!(" at line {line} column {column}");
        let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
        CliError::Parse { field, line, column, message }
    })
}

pub fn load(path: &Path, tolerances: Tolerances) -> CliResult<Workspace> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    Workspace::resolve(&parse_file(&text)?, tolerances)
}

enum Ctx<'a> {
    Finite(&'a str, &'a FiniteOml),
    Hilbert(HilbertLattice),
}

fn is_top(name: &str) -> bool {
    matches!(name, "top" | "⊤")
}

fn is_bottom(name: &str) -> bool {
    matches!(name, "bottom" | "⊥")
}

fn complex(c: &Complex) -> Complex64 {
    Complex64::new(c[0], c[1])
}

fn pair(z: Complex64) -> Complex {
    [z.re, z.im]
}

impl Workspace {
    pub fn resolve(file: &WorkspaceFile, tolerances: Tolerances) -> CliResult<Self> {
        tolerances.validate().map_err(CliError::at("tolerances"))?;
        let mut ws = Workspace {
            tolerances,
            lattices: BTreeMap::new(),
            subspaces: BTreeMap::new(),
            observables: BTreeMap::new(),
            graphs: BTreeMap::new(),
            words: BTreeMap::new(),
            filters: BTreeMap::new(),
        };
        for (name, def) in &file.lattices {
            let l = resolve_lattice(def, &format!("lattices.{name}"))?;
            ws.lattices.insert(name.clone(), l);
        }
        for (name, def) in &file.subspaces {
            let s = ws.build_subspace(def, &format!("subspaces.{name}"))?;
            ws.subspaces.insert(name.clone(), s);
        }
        for (name, def) in &file.observables {
            let o = ws.resolve_observable(def, &format!("observables.{name}"))?;
            ws.observables.insert(name.clone(), o);
        }
        for (name, def) in &file.graphs {
            let g = ws.resolve_graph(def, &format!("graphs.{name}"))?;
            ws.graphs.insert(name.clone(), g);
        }
        for (name, def) in &file.words {
            let w = ws.resolve_word(def, &format!("words.{name}"))?;
            ws.words.insert(name.clone(), w);
        }
        for (name, def) in &file.filters {
            let f = ws.resolve_filter(def, &format!("filters.{name}"))?;
            ws.filters.insert(name.clone(), f);
        }
        Ok(ws)
    }

    pub fn space(&self, ambient: usize) -> CliResult<HilbertLattice> {
        HilbertLattice::with_tolerances(ambient, self.tolerances).map_err(CliError::at("ambient"))
    }

    pub fn lattice(&self, name: &str) -> CliResult<&FiniteOml> {
        self.lattices
            .get(name)
            .ok_or_else(|| CliError::validation("lattice", format!("no lattice named `{name}`")))
    }

    fn build_subspace(&self, def: &SubspaceDef, path: &str) -> CliResult<Subspace> {
        let space = HilbertLattice::with_tolerances(def.ambient, self.tolerances).map_err(CliError::at(path))?;
        let mut vectors = Vec::with_capacity(def.vectors.len());
        for (i, v) in def.vectors.iter().enumerate() {
            if v.len() != def.ambient {
                return Err(CliError::validation(
                    format!("{path}.vectors[{i}]"),
                    format!("expected {} coordinates, found {}", def.ambient, v.len()),
                ));
            }
            if v.iter().flatten().any(|x| !x.is_finite()) {
                return Err(CliError::validation(format!("{path}.vectors[{i}]"), "coordinates must be finite"));
            }
            vectors.push(CVec::from_iterator(v.len(), v.iter().map(complex)));
        }
        space.span(&vectors).map_err(CliError::at(path))
    }

    fn context<'a>(&'a self, def: &dyn HasContext, path: &str) -> CliResult<Ctx<'a>> {
        match (def.lattice(), def.ambient()) {
            (Some(name), None) => {
                let (name, l) = self
                    .lattices
                    .get_key_value(name)
                    .ok_or_else(|| CliError::validation(format!("{path}.lattice"), format!("no lattice named `{name}`")))?;
                Ok(Ctx::Finite(name, l))
            }
            (None, Some(d)) => Ok(Ctx::Hilbert(
                HilbertLattice::with_tolerances(d, self.tolerances).map_err(CliError::at(format!("{path}.ambient")))?,
            )),
            _ => Err(CliError::validation(path, "exactly one of `lattice` and `ambient` is required")),
        }
    }

    pub fn element(&self, lattice: &FiniteOml, label: &Label, path: &str) -> CliResult<LatticeElement> {
        match label {
            Label::Name(n) => match lattice.element(n) {
                Some(e) => Ok(e),
                None if is_top(n) => Ok(lattice.top()),
                None if is_bottom(n) => Ok(lattice.bottom()),
                None => Err(CliError::validation(path, format!("no element named `{n}`"))),
            },
            Label::Ortho { ortho } => Ok(lattice.ortho(&self.element(lattice, ortho, path)?)?),
            Label::Inline(_) => Err(CliError::validation(path, "subspace given where a lattice element is expected")),
        }
    }

    pub fn subspace(&self, space: &HilbertLattice, label: &Label, path: &str) -> CliResult<Subspace> {
        let s = match label {
            Label::Name(n) if is_top(n) => space.top(),
            Label::Name(n) if is_bottom(n) => space.bottom(),
            Label::Name(n) => self
                .subspaces
                .get(n)
                .cloned()
                .ok_or_else(|| CliError::validation(path, format!("no subspace named `{n}`")))?,
            Label::Ortho { ortho } => space.ortho(&self.subspace(space, ortho, path)?).map_err(CliError::at(path))?,
            Label::Inline(def) => self.build_subspace(def, path)?,
        };
        if s.ambient_dim() != space.dim() {
            return Err(CliError::validation(
                path,
                format!("subspace lives in C^{}, expected C^{}", s.ambient_dim(), space.dim()),
            ));
        }
        Ok(s)
    }

    fn labels(&self, ctx: &Ctx, labels: &[Label], path: &str) -> CliResult<Labels> {
        Ok(match ctx {
            Ctx::Finite(name, l) => Labels::Finite {
                lattice: name.to_string(),
                elements: labels
                    .iter()
                    .enumerate()
                    .map(|(i, x)| self.element(l, x, &format!("{path}[{i}]")))
                    .collect::<CliResult<_>>()?,
            },
            Ctx::Hilbert(space) => Labels::Hilbert {
                ambient: space.dim(),
                subspaces: labels
                    .iter()
                    .enumerate()
                    .map(|(i, x)| self.subspace(space, x, &format!("{path}[{i}]")))
                    .collect::<CliResult<_>>()?,
            },
        })
    }

    fn resolve_observable(&self, def: &ObservableDef, path: &str) -> CliResult<Labels> {
        let ctx = self.context(def, path)?;
        let labels = match (&def.parts, &def.hermitian, &ctx) {
            (Some(parts), None, _) => self.labels(&ctx, parts, &format!("{path}.parts"))?,
            (None, Some(rows), Ctx::Hilbert(space)) => {
                let d = space.dim();
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(CliError::validation(format!("{path}.hermitian"), format!("expected a {d} × {d} matrix")));
                }
                let h = CMat::from_fn(d, d, |i, j| complex(&rows[i][j]));
                let o = eigenspaces(space, &h).map_err(CliError::at(format!("{path}.hermitian")))?;
                Labels::Hilbert { ambient: d, subspaces: o.parts }
            }
            (None, Some(_), Ctx::Finite(..)) => {
                return Err(CliError::validation(path, "`hermitian` requires `ambient`"));
            }
            _ => return Err(CliError::validation(path, "exactly one of `parts` and `hermitian` is required")),
        };
        let report = match (&labels, &ctx) {
            (Labels::Finite { elements, .. }, Ctx::Finite(_, l)) => {
                validate_observable(*l, &Observable::new(elements.clone()))?
            }
            (Labels::Hilbert { subspaces, .. }, Ctx::Hilbert(space)) => {
                validate_observable(space, &Observable::new(subspaces.clone())).map_err(CliError::at(path))?
            }
            _ => unreachable!("labels follow their context"),
        };
        if let Some(defect) = report.defects.first() {
            let message = match defect {
                ObservableDefect::Empty => "an observable needs at least one part".to_string(),
                ObservableDefect::BottomPart(i) => format!("part {i} is ⊥"),
                ObservableDefect::NotOrthogonal(i, j) => format!("parts {i} and {j} are not orthogonal"),
                ObservableDefect::JoinNotTop => "the parts do not join to ⊤".to_string(),
            };
            return Err(CliError::validation(path, message));
        }
        Ok(labels)
    }

    fn resolve_graph(&self, def: &GraphDef, path: &str) -> CliResult<Graph> {
        let ctx = self.context(def, path)?;
        if let Some(kind) = def.implicit {
            if def.vertices.is_some() || def.edges.is_some() {
                return Err(CliError::validation(path, "implicit graphs take no `vertices` or `edges`"));
            }
            return match (kind, ctx) {
                (Implicit::Hilbert, Ctx::Hilbert(space)) => Ok(Graph::HilbertModel { ambient: space.dim() }),
                (Implicit::Hilbert, Ctx::Finite(..)) => {
                    Err(CliError::validation(path, "the Hilbert graph requires `ambient`"))
                }
                (Implicit::Lattice, Ctx::Hilbert(space)) => Ok(Graph::LatticeModelHilbert { ambient: space.dim() }),
                (Implicit::Lattice, Ctx::Finite(name, _)) => Ok(Graph::LatticeModelFinite { lattice: name.to_string() }),
            };
        }
        let vertices = def
            .vertices
            .clone()
            .ok_or_else(|| CliError::validation(path, "explicit graphs need `vertices`"))?;
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(CliError::validation(format!("{path}.vertices"), format!("duplicate vertex `{v}`")));
            }
        }
        let index = |name: &str, at: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| CliError::validation(at, format!("unknown vertex `{name}`")))
        };
        let raw = def.edges.as_deref().unwrap_or(&[]);
        match ctx {
            Ctx::Finite(name, l) => {
                let mut edges = Vec::with_capacity(raw.len());
                for (i, (a, p, b)) in raw.iter().enumerate() {
                    let at = format!("{path}.edges[{i}]");
                    edges.push(Edge { from: index(a, &at)?, label: self.element(l, p, &at)?, to: index(b, &at)? });
                }
                let graph = ExplicitGraph::new(l.clone(), vertices, edges).map_err(CliError::at(path))?;
                Ok(Graph::ExplicitFinite { lattice: name.to_string(), graph })
            }
            Ctx::Hilbert(space) => {
                let mut edges = Vec::with_capacity(raw.len());
                for (i, (a, p, b)) in raw.iter().enumerate() {
                    let at = format!("{path}.edges[{i}]");
                    edges.push(Edge { from: index(a, &at)?, label: self.subspace(&space, p, &at)?, to: index(b, &at)? });
                }
                let ambient = space.dim();
                let graph = ExplicitGraph::new(space, vertices, edges).map_err(CliError::at(path))?;
                Ok(Graph::ExplicitHilbert { ambient, graph })
            }
        }
    }

    fn resolve_word(&self, def: &WordDef, path: &str) -> CliResult<Labels> {
        let ctx = self.context(def, path)?;
        self.labels(&ctx, &def.labels, &format!("{path}.labels"))
    }

    fn resolve_filter(&self, def: &FilterDef, path: &str) -> CliResult<Filter> {
        let ctx = self.context(def, path)?;
        let generators = self.labels(&ctx, &def.generators, &format!("{path}.generators"))?;
        match (def.kind, generators.len()) {
            (_, 0) => Err(CliError::validation(format!("{path}.generators"), "at least one generator is required")),
            (FilterKind::Principal, n) if n != 1 => {
                Err(CliError::validation(format!("{path}.generators"), "a principal filter has exactly one generator"))
            }
            (kind, _) => Ok(Filter { kind, generators }),
        }
    }

    /// Canonical file form: explicit lattice tables, orthonormal subspace bases and inline
    /// subspace labels.
    pub fn to_file(&self) -> WorkspaceFile {
        let mut file = WorkspaceFile::default();
        for (name, l) in &self.lattices {
            file.lattices.insert(name.clone(), lattice_def(l));
        }
        for (name, s) in &self.subspaces {
            file.subspaces.insert(name.clone(), subspace_def(s));
        }
        for (name, o) in &self.observables {
            let (lattice, ambient, parts) = self.label_defs(o);
            file.observables.insert(name.clone(), ObservableDef { lattice, ambient, parts: Some(parts), hermitian: None });
        }
        for (name, g) in &self.graphs {
            file.graphs.insert(name.clone(), self.graph_def(g));
        }
        for (name, w) in &self.words {
            let (lattice, ambient, labels) = self.label_defs(w);
            file.words.insert(name.clone(), WordDef { lattice, ambient, labels });
        }
        for (name, f) in &self.filters {
            let (lattice, ambient, generators) = self.label_defs(&f.generators);
            file.filters.insert(name.clone(), FilterDef { lattice, ambient, kind: f.kind, generators });
        }
        file
    }

    fn label_defs(&self, labels: &Labels) -> (Option<String>, Option<usize>, Vec<Label>) {
        match labels {
            Labels::Finite { lattice, elements } => {
                let l = &self.lattices[lattice];
                let names = elements.iter().map(|e| Label::Name(element_name(l, *e))).collect();
                (Some(lattice.clone()), None, names)
            }
            Labels::Hilbert { ambient, subspaces } => {
                (None, Some(*ambient), subspaces.iter().map(|s| Label::Inline(subspace_def(s))).collect())
            }
        }
    }

    fn graph_def(&self, g: &Graph) -> GraphDef {
        let implicit = |lattice: Option<String>, ambient: Option<usize>, kind| GraphDef {
            lattice,
            ambient,
            implicit: Some(kind),
            vertices: None,
            edges: None,
        };
        match g {
            Graph::HilbertModel { ambient } => implicit(None, Some(*ambient), Implicit::Hilbert),
            Graph::LatticeModelHilbert { ambient } => implicit(None, Some(*ambient), Implicit::Lattice),
            Graph::LatticeModelFinite { lattice } => implicit(Some(lattice.clone()), None, Implicit::Lattice),
            Graph::ExplicitFinite { lattice, graph } => {
                let l = &self.lattices[lattice];
                let names = graph.names();
                let edges = graph
                    .edges()
                    .iter()
                    .map(|e| (names[e.from].clone(), Label::Name(element_name(l, e.label)), names[e.to].clone()))
                    .collect();
                GraphDef {
                    lattice: Some(lattice.clone()),
                    ambient: None,
                    implicit: None,
                    vertices: Some(names.to_vec()),
                    edges: Some(edges),
                }
            }
            Graph::ExplicitHilbert { ambient, graph } => {
                let names = graph.names();
                let edges = graph
                    .edges()
                    .iter()
                    .map(|e| (names[e.from].clone(), Label::Inline(subspace_def(&e.label)), names[e.to].clone()))
                    .collect();
                GraphDef {
                    lattice: None,
                    ambient: Some(*ambient),
                    implicit: None,
                    vertices: Some(names.to_vec()),
                    edges: Some(edges),
                }
            }
        }
    }

    /// Structural equality up to the equality tolerance on subspaces.
    pub fn equivalent(&self, other: &Self) -> bool {
        let keys_match = |a: Vec<&String>, b: Vec<&String>| a == b;
        if !keys_match(self.lattices.keys().collect(), other.lattices.keys().collect())
            || !keys_match(self.subspaces.keys().collect(), other.subspaces.keys().collect())
            || !keys_match(self.observables.keys().collect(), other.observables.keys().collect())
            || !keys_match(self.graphs.keys().collect(), other.graphs.keys().collect())
            || !keys_match(self.words.keys().collect(), other.words.keys().collect())
            || !keys_match(self.filters.keys().collect(), other.filters.keys().collect())
        {
            return false;
        }
        let eq = self.tolerances.eq;
        let same_sub = |a: &Subspace, b: &Subspace| {
            a.ambient_dim() == b.ambient_dim() && (a.projector() - b.projector()).norm() < eq
        };
        let same_labels = |a: &Labels, b: &Labels| match (a, b) {
            (Labels::Finite { lattice: la, elements: ea }, Labels::Finite { lattice: lb, elements: eb }) => {
                la == lb
                    && ea.iter().map(|e| e.index()).eq(eb.iter().map(|e| e.index()))
            }
            (Labels::Hilbert { ambient: da, subspaces: sa }, Labels::Hilbert { ambient: db, subspaces: sb }) => {
                da == db && sa.len() == sb.len() && sa.iter().zip(sb).all(|(x, y)| same_sub(x, y))
            }
            _ => false,
        };
        let same_graph = |a: &Graph, b: &Graph| match (a, b) {
            (Graph::HilbertModel { ambient: x }, Graph::HilbertModel { ambient: y })
            | (Graph::LatticeModelHilbert { ambient: x }, Graph::LatticeModelHilbert { ambient: y }) => x == y,
            (Graph::LatticeModelFinite { lattice: x }, Graph::LatticeModelFinite { lattice: y }) => x == y,
            (Graph::ExplicitFinite { lattice: la, graph: ga }, Graph::ExplicitFinite { lattice: lb, graph: gb }) => {
                la == lb
                    && ga.names() == gb.names()
                    && ga.edges().len() == gb.edges().len()
                    && ga.edges().iter().zip(gb.edges()).all(|(x, y)| {
                        x.from == y.from && x.to == y.to && x.label.index() == y.label.index()
                    })
            }
            (Graph::ExplicitHilbert { ambient: da, graph: ga }, Graph::ExplicitHilbert { ambient: db, graph: gb }) => {
                da == db
                    && ga.names() == gb.names()
                    && ga.edges().len() == gb.edges().len()
                    && ga
                        .edges()
                        .iter()
                        .zip(gb.edges())
                        .all(|(x, y)| x.from == y.from && x.to == y.to && same_sub(&x.label, &y.label))
            }
            _ => false,
        };
        self.lattices.iter().zip(&other.lattices).all(|((_, a), (_, b))| a.same_structure(b))
            && self.subspaces.iter().zip(&other.subspaces).all(|((_, a), (_, b))| same_sub(a, b))
            && self.observables.iter().zip(&other.observables).all(|((_, a), (_, b))| same_labels(a, b))
            && self.graphs.iter().zip(&other.graphs).all(|((_, a), (_, b))| same_graph(a, b))
            && self.words.iter().zip(&other.words).all(|((_, a), (_, b))| same_labels(a, b))
            && self.filters.iter().zip(&other.filters).all(|((_, a), (_, b))| {
                a.kind == b.kind && same_labels(&a.generators, &b.generators)
            })
    }
}

fn resolve_lattice(def: &LatticeDef, path: &str) -> CliResult<FiniteOml> {
    let l = match (def.builtin, &def.elements) {
        (Some(kind), None) => {
            if def.leq.is_some() || def.ortho.is_some() {
                return Err(CliError::validation(path, "builtin lattices take no `leq` or `ortho`"));
            }
            match (kind, def.size) {
                (Builtin::Mo, Some(k)) => FiniteOml::mo(k),
                (Builtin::Boolean, Some(k)) => FiniteOml::boolean(k),
                (Builtin::Hexagon, None) => FiniteOml::hexagon(),
                (Builtin::Hexagon, Some(_)) => return Err(CliError::validation(path, "the hexagon takes no `size`")),
                (_, None) => return Err(CliError::validation(path, "`size` is required")),
            }
        }
        (None, Some(elements)) => {
            if def.size.is_some() {
                return Err(CliError::validation(path, "`size` only applies to builtin lattices"));
            }
            let names: Vec<&str> = elements.iter().map(String::as_str).collect();
            fn pairs(v: &Option<Vec<[String; 2]>>) -> Vec<(&str, &str)> {
                v.iter().flatten().map(|[a, b]| (a.as_str(), b.as_str())).collect()
            }
            FiniteOml::from_names(&names, &pairs(&def.leq), &pairs(&def.ortho))
        }
        _ => return Err(CliError::validation(path, "exactly one of `builtin` and `elements` is required")),
    }
    .map_err(CliError::at(path))?;
    let report = l.validate();
    if let Some(v) = report.violations.first() {
        let more = report.violations.len() - 1;
        let suffix = if more > 0 { format!(" (and {more} more violations)") } else { String::new() };
        return Err(CliError::validation(path, format!("not an orthomodular lattice: {v}{suffix}")));
    }
    Ok(l)
}

pub fn element_name(l: &FiniteOml, e: LatticeElement) -> String {
    l.name(e).map(str::to_string).unwrap_or_else(|_| format!("#{}", e.index()))
}

pub fn subspace_def(s: &Subspace) -> SubspaceDef {
    SubspaceDef {
        ambient: s.ambient_dim(),
        vectors: s.basis().column_iter().map(|c| c.iter().copied().map(pair).collect()).collect(),
    }
}

fn lattice_def(l: &FiniteOml) -> LatticeDef {
    let names = l.names();
    let ortho = l.ortho_table();
    LatticeDef {
        builtin: None,
        size: None,
        elements: Some(names.to_vec()),
        leq: Some(l.covers().into_iter().map(|(a, b)| [names[a].clone(), names[b].clone()]).collect()),
        ortho: Some(
            (0..names.len())
                .filter(|&i| i <= ortho[i])
                .map(|i| [names[i].clone(), names[ortho[i]].clone()])
                .collect(),
        ),
    }
}
