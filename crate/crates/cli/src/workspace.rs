//! Named objects read from `.qd` files, validated and cross-linked.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use qloid_core::diagonal::dq_from_quantale;
use qloid_core::diagonal::dq_from_quantaloid;
use qloid_core::distributor::Distributor;
use qloid_core::order_algebra::Quantale;
use qloid_core::qcat::{QCategory, QFunctor, TypedSet};
use qloid_core::qset::{validate_qvalued_set, QValuedRelation};
use qloid_core::quantaloid::{Morphism, Quantaloid};

use crate::format::{self, Block, Located, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{file}:{error}")]
    Parse { file: String, error: ParseError },
    #[error("cannot read {file}: {message}")]
    Io { file: String, message: String },
    #[error("unresolved reference `{0}`")]
    Unresolved(String),
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("{item}: {error}")]
    Invalid { item: String, error: qloid_core::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { error: qloid_core::Error::EnumerationBudgetExceeded { .. }, .. } => 3,
            _ => 2,
        }
    }

    pub fn is_budget(&self) -> bool {
        self.exit_code() == 3
    }
}

pub(crate) fn invalid(item: &str) -> impl Fn(qloid_core::Error) -> CliError + '_ {
    move |error| CliError::Invalid { item: item.to_string(), error }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CategoryEntry {
    pub name: String,
    pub over: String,
    pub category: Arc<QCategory>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapEntry<T> {
    pub name: String,
    pub from: String,
    pub to: String,
    pub item: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QSetEntry {
    pub name: String,
    pub over: String,
    pub set: QValuedRelation,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub quantales: Vec<(String, Quantale)>,
    pub quantaloids: Vec<(String, Arc<Quantaloid>)>,
    pub categories: Vec<CategoryEntry>,
    pub functors: Vec<MapEntry<QFunctor>>,
    pub distributors: Vec<MapEntry<Distributor>>,
    pub qsets: Vec<QSetEntry>,
    bases: HashMap<String, Arc<Quantaloid>>,
}

impl PartialEq for Workspace {
    fn eq(&self, o: &Self) -> bool {
        self.quantales == o.quantales
            && self.quantaloids == o.quantaloids
            && self.categories == o.categories
            && self.functors == o.functors
            && self.distributors == o.distributors
            && self.qsets == o.qsets
    }
}

fn find<'a, T>(items: &'a [T], name: &str, key: impl Fn(&T) -> &str) -> Option<&'a T> {
    items.iter().find(|t| key(t) == name)
}

impl Workspace {
    pub fn load<P: AsRef<Path>>(files: &[P]) -> Result<Self, CliError> {
        let mut blocks = Vec::new();
        for f in files {
            let file = f.as_ref().display().to_string();
            let src = std::fs::read_to_string(f).map_err(|e| CliError::Io { file: file.clone(), message: e.to_string() })?;
            blocks.extend(format::parse(&src).map_err(|error| CliError::Parse { file, error })?);
        }
        Self::from_blocks(&blocks)
    }

    pub fn parse_str(src: &str) -> Result<Self, CliError> {
        let blocks = format::parse(src).map_err(|error| CliError::Parse { file: "<input>".into(), error })?;
        Self::from_blocks(&blocks)
    }

    /// Builds in dependency order: algebras, then categories, then maps.
    pub fn from_blocks(blocks: &[Located]) -> Result<Self, CliError> {
        let mut ws = Workspace::default();
        let mut names: HashMap<(&'static str, &str), ()> = HashMap::new();
        for l in blocks {
            let kind = kind_of(&l.block);
            if names.insert((kind, l.block.name()), ()).is_some() {
                return Err(CliError::Duplicate { kind, name: l.block.name().to_string() });
            }
        }
        for l in blocks {
            match &l.block {
                Block::Quantale { name, spec } => {
                    let q = spec.build().map_err(invalid(name))?;
                    ws.quantales.push((name.clone(), q));
                }
                Block::Quantaloid { name, spec } => {
                    let k = spec.build().map_err(invalid(name))?;
                    ws.quantaloids.push((name.clone(), Arc::new(k)));
                }
                _ => {}
            }
        }
        for l in blocks {
            if let Block::QCategory { name, over, objects, homs } = &l.block {
                let c = ws.build_category(name, over, objects, homs)?;
                ws.categories.push(CategoryEntry { name: name.clone(), over: over.clone(), category: Arc::new(c) });
            }
        }
        for l in blocks {
            match &l.block {
                Block::Functor { name, from, to, map } => {
                    let (x, y) = (ws.category(from)?.clone(), ws.category(to)?.clone());
                    let mut m = vec![None; x.len()];
                    for (a, b) in map {
                        let i = x.index_of(a).map_err(invalid(name))?;
                        let j = y.index_of(b).map_err(invalid(name))?;
                        if m[i].replace(j).is_some_and(|k| k != j) {
                            return Err(invalid(name)(qloid_core::Error::ConflictingEntry(a.clone())));
                        }
                    }
                    let m = m
                        .into_iter()
                        .enumerate()
                        .map(|(i, v)| v.ok_or_else(|| invalid(name)(qloid_core::Error::MissingEntry(x.name(i).to_string()))))
                        .collect::<Result<Vec<_>, _>>()?;
                    let f = QFunctor::new(x, y, m).map_err(invalid(name))?;
                    ws.functors.push(MapEntry { name: name.clone(), from: from.clone(), to: to.clone(), item: f });
                }
                Block::Distributor { name, from, to, at } => {
                    let (x, y) = (ws.category(from)?.clone(), ws.category(to)?.clone());
                    let b = x.base();
                    let mut m: Vec<Option<Morphism>> = vec![None; x.len() * y.len()];
                    for (ys, xs, v) in at {
                        let i = x.index_of(xs).map_err(invalid(name))?;
                        let j = y.index_of(ys).map_err(invalid(name))?;
                        let u = b.morphism(x.type_of(i), y.type_of(j), v).map_err(invalid(name))?;
                        if m[j * x.len() + i].replace(u).is_some_and(|w| w != u) {
                            return Err(invalid(name)(qloid_core::Error::ConflictingEntry(format!("({ys}, {xs})"))));
                        }
                    }
                    let entries = m
                        .into_iter()
                        .enumerate()
                        .map(|(k, u)| u.unwrap_or_else(|| b.bottom(x.type_of(k % x.len()), y.type_of(k / x.len()))))
                        .collect();
                    let d = Distributor::new(x, y, entries).map_err(invalid(name))?;
                    ws.distributors.push(MapEntry { name: name.clone(), from: from.clone(), to: to.clone(), item: d });
                }
                Block::QSet { name, over, elements, eps } => {
                    let q = ws.quantale(over)?.clone();
                    let mut names: Vec<String> = elements.clone();
                    for (x, y, _) in eps {
                        for s in [x, y] {
                            if !names.contains(s) {
                                names.push(s.clone());
                            }
                        }
                    }
                    let n = names.len();
                    let mut psi: Vec<Option<usize>> = vec![None; n * n];
                    for (x, y, v) in eps {
                        let i = names.iter().position(|s| s == x).expect("collected");
                        let j = names.iter().position(|s| s == y).expect("collected");
                        let e = q.index_of(v).map_err(invalid(name))?;
                        if psi[i * n + j].replace(e).is_some_and(|w| w != e) {
                            return Err(invalid(name)(qloid_core::Error::ConflictingEntry(format!("({x}, {y})"))));
                        }
                    }
                    let psi = psi.into_iter().map(|e| e.unwrap_or(q.bottom())).collect();
                    let set = validate_qvalued_set(&q, names, psi).map_err(invalid(name))?;
                    ws.qsets.push(QSetEntry { name: name.clone(), over: over.clone(), set });
                }
                _ => {}
            }
        }
        Ok(ws)
    }

    fn build_category(
        &mut self,
        name: &str,
        over: &str,
        objects: &[(String, String)],
        homs: &[(String, String, String)],
    ) -> Result<QCategory, CliError> {
        let base = self.base(over)?;
        let mut types = Vec::with_capacity(objects.len());
        for (_, t) in objects {
            types.push(base.object_index(t).map_err(invalid(name))?);
        }
        let carrier = TypedSet::new(objects.iter().map(|o| o.0.clone()).collect(), types);
        let n = carrier.len();
        let index = |s: &str| {
            carrier
                .names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| invalid(name)(qloid_core::Error::UnknownElement(s.to_string())))
        };
        let mut m: Vec<Option<Morphism>> = vec![None; n * n];
        for (xs, ys, v) in homs {
            let (x, y) = (index(xs)?, index(ys)?);
            let u = base.morphism(carrier.types[y], carrier.types[x], v).map_err(invalid(name))?;
            if m[x * n + y].replace(u).is_some_and(|w| w != u) {
                return Err(invalid(name)(qloid_core::Error::ConflictingEntry(format!("({xs}, {ys})"))));
            }
        }
        let entries = m
            .into_iter()
            .enumerate()
            .map(|(k, u)| u.unwrap_or_else(|| base.bottom(carrier.types[k % n], carrier.types[k / n])))
            .collect();
        QCategory::new(base, carrier, entries).map_err(invalid(name))
    }

    /// Resolves `NAME` (a quantaloid, or the one-object quantaloid of a
    /// unital quantale) or `dq(NAME)`. Results are shared.
    pub fn base(&mut self, reference: &str) -> Result<Arc<Quantaloid>, CliError> {
        if let Some(b) = self.bases.get(reference) {
            return Ok(b.clone());
        }
        let built = if let Some(inner) = reference.strip_prefix("dq(").and_then(|r| r.strip_suffix(')')) {
            if let Some((_, q)) = find(&self.quantales, inner, |e| &e.0) {
                dq_from_quantale(q).map_err(invalid(reference))?
            } else if let Some((_, k)) = find(&self.quantaloids, inner, |e| &e.0) {
                dq_from_quantaloid(k, k.is_involutive()).map_err(invalid(reference))?
            } else {
                return Err(CliError::Unresolved(inner.to_string()));
            }
        } else if let Some((_, k)) = find(&self.quantaloids, reference, |e| &e.0) {
            (**k).clone()
        } else if let Some((_, q)) = find(&self.quantales, reference, |e| &e.0) {
            Quantaloid::from_unital_quantale(q).map_err(invalid(reference))?
        } else {
            return Err(CliError::Unresolved(reference.to_string()));
        };
        let b = Arc::new(built);
        self.bases.insert(reference.to_string(), b.clone());
        Ok(b)
    }

    pub fn quantale(&self, name: &str) -> Result<&Quantale, CliError> {
        find(&self.quantales, name, |e| &e.0).map(|e| &e.1).ok_or_else(|| CliError::Unresolved(name.into()))
    }

    pub fn quantaloid(&self, name: &str) -> Result<&Arc<Quantaloid>, CliError> {
        find(&self.quantaloids, name, |e| &e.0).map(|e| &e.1).ok_or_else(|| CliError::Unresolved(name.into()))
    }

    pub fn category_entry(&self, name: &str) -> Result<&CategoryEntry, CliError> {
        find(&self.categories, name, |e| &e.name).ok_or_else(|| CliError::Unresolved(name.into()))
    }

    pub fn category(&self, name: &str) -> Result<&Arc<QCategory>, CliError> {
        self.category_entry(name).map(|e| &e.category)
    }

    pub fn functor(&self, name: &str) -> Result<&MapEntry<QFunctor>, CliError> {
        find(&self.functors, name, |e| &e.name).ok_or_else(|| CliError::Unresolved(name.into()))
    }

    pub fn distributor(&self, name: &str) -> Result<&MapEntry<Distributor>, CliError> {
        find(&self.distributors, name, |e| &e.name).ok_or_else(|| CliError::Unresolved(name.into()))
    }

    pub fn qset(&self, name: &str) -> Result<&QSetEntry, CliError> {
        find(&self.qsets, name, |e| &e.name).ok_or_else(|| CliError::Unresolved(name.into()))
    }

    /// Canonical blocks describing the workspace.
    pub fn to_blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        for (name, q) in &self.quantales {
            out.push(Block::Quantale { name: name.clone(), spec: q.to_spec() });
        }
        for (name, k) in &self.quantaloids {
            out.push(Block::Quantaloid { name: name.clone(), spec: k.to_spec() });
        }
        for e in &self.categories {
            out.push(category_block(&e.name, &e.over, &e.category));
        }
        for e in &self.functors {
            let (x, y) = (e.item.source(), e.item.target());
            let map = x.elements().map(|i| (x.name(i).to_string(), y.name(e.item.apply(i)).to_string())).collect();
            out.push(Block::Functor { name: e.name.clone(), from: e.from.clone(), to: e.to.clone(), map });
        }
        for e in &self.distributors {
            out.push(distributor_block(&e.name, &e.from, &e.to, &e.item));
        }
        for e in &self.qsets {
            let s = &e.set;
            let n = s.len();
            let eps = (0..n * n)
                .filter(|&k| s.psi[k] != s.quantale.bottom())
                .map(|k| (s.names[k / n].clone(), s.names[k % n].clone(), s.quantale.name(s.psi[k]).to_string()))
                .collect();
            out.push(Block::QSet { name: e.name.clone(), over: e.over.clone(), elements: s.names.clone(), eps });
        }
        out
    }

    pub fn emit(&self) -> String {
        self.to_blocks().iter().map(format::emit).collect::<Vec<_>>().join("\n")
    }
}

fn kind_of(b: &Block) -> &'static str {
    match b {
        Block::Quantale { .. } => "quantale",
        Block::Quantaloid { .. } => "quantaloid",
        Block::QCategory { .. } => "qcategory",
        Block::Functor { .. } => "functor",
        Block::Distributor { .. } => "distributor",
        Block::QSet { .. } => "qset",
    }
}

/// A category as a block; bottom entries are left out.
pub fn category_block(name: &str, over: &str, c: &QCategory) -> Block {
    let b = c.base();
    let objects = c.elements().map(|x| (c.name(x).to_string(), b.object_name(c.type_of(x)).to_string())).collect();
    let mut homs = Vec::new();
    for x in c.elements() {
        for y in c.elements() {
            let u = c.alpha(x, y);
            if u != b.bottom(u.dom, u.cod) {
                homs.push((c.name(x).to_string(), c.name(y).to_string(), b.value_name(u).to_string()));
            }
        }
    }
    Block::QCategory { name: name.into(), over: over.into(), objects, homs }
}

/// A distributor as a block; bottom entries are left out.
pub fn distributor_block(name: &str, from: &str, to: &str, d: &Distributor) -> Block {
    let (x, y) = (d.source(), d.target());
    let b = x.base();
    let mut at = Vec::new();
    for j in y.elements() {
        for i in x.elements() {
            let u = d.at(j, i);
            if u != b.bottom(u.dom, u.cod) {
                at.push((y.name(j).to_string(), x.name(i).to_string(), b.value_name(u).to_string()));
            }
        }
    }
    Block::Distributor { name: name.into(), from: from.into(), to: to.into(), at }
}
