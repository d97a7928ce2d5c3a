//! Categories enriched in a quantaloid, and functors between them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result, Violation};
use crate::order_algebra::Elem;
use crate::quantaloid::{Morphism, Quantaloid};
use crate::Budget;

/// A finite set of named elements, each typed by an object of the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedSet {
    pub names: Vec<String>,
    pub types: Vec<usize>,
}

impl TypedSet {
    pub fn new(names: Vec<String>, types: Vec<usize>) -> Self {
        TypedSet { names, types }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A category enriched in `base`: `α(x, y): |y| → |x|` with
/// `α(x,y) ∘ α(y,z) ≤ α(x,z)` and `1_|x| ≤ α(x,x)`.
#[derive(Clone, Debug)]
pub struct QCategory {
    base: Arc<Quantaloid>,
    names: Vec<String>,
    types: Vec<usize>,
    hom: Vec<Morphism>,
}

impl PartialEq for QCategory {
    fn eq(&self, other: &Self) -> bool {
        same_base(&self.base, &other.base)
            && self.names == other.names
            && self.types == other.types
            && self.hom == other.hom
    }
}

impl Eq for QCategory {}

pub(crate) fn same_base(a: &Arc<Quantaloid>, b: &Arc<Quantaloid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl QCategory {
    /// Validates every axiom instance and reports all failures.
    /// `entries[x * n + y]` is `α(x, y)`.
    pub fn new(base: Arc<Quantaloid>, carrier: TypedSet, entries: Vec<Morphism>) -> Result<Self> {
        let n = carrier.len();
        let mut seen = HashMap::with_capacity(n);
        for s in &carrier.names {
            if seen.insert(s.as_str(), ()).is_some() {
                return Err(Error::DuplicateName(s.clone()));
            }
        }
        if carrier.types.len() != n || entries.len() != n * n {
            return Err(Error::InternalInconsistency("carrier and matrix sizes differ".into()));
        }
        if let Some(&t) = carrier.types.iter().find(|&&t| t >= base.len()) {
            return Err(Error::UnknownObject(format!("#{t}")));
        }
        let x = QCategory { base, names: carrier.names, types: carrier.types, hom: entries };
        let v = x.violations();
        if v.is_empty() {
            Ok(x)
        } else {
            Err(Error::InvalidCategory(v))
        }
    }

    /// Like [`QCategory::new`] with entries given as values in `hom(|y|, |x|)`.
    pub fn from_values(base: Arc<Quantaloid>, carrier: TypedSet, values: Vec<Elem>) -> Result<Self> {
        let n = carrier.len();
        if values.len() != n * n || carrier.types.len() != n {
            return Err(Error::InternalInconsistency("carrier and matrix sizes differ".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                entries.push(Morphism::new(carrier.types[y], carrier.types[x], values[x * n + y]));
            }
        }
        if let Some(m) = entries.iter().find(|m| {
            m.dom >= base.len() || m.cod >= base.len() || m.value >= base.hom(m.dom, m.cod).len()
        }) {
            return Err(Error::UnknownElement(format!("#{}", m.value)));
        }
        Self::new(base, carrier, entries)
    }

    fn violations(&self) -> Vec<Violation> {
        let n = self.len();
        let b = &self.base;
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let a = self.hom[x * n + y];
                if a.dom != self.types[y] || a.cod != self.types[x] || a.value >= b.hom(a.dom, a.cod).len() {
                    out.push(Violation::TypeMismatch(format!("({}, {})", self.names[x], self.names[y])));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in 0..n {
            if !b.leq(b.identity(self.types[x]), self.alpha(x, x)) {
                out.push(Violation::NoIdentity(self.names[x].clone()));
            }
            for y in 0..n {
                for z in 0..n {
                    if !b.leq(b.compose(self.alpha(x, y), self.alpha(y, z)), self.alpha(x, z)) {
                        out.push(Violation::NotTransitive(format!(
                            "({}, {}, {})",
                            self.names[x], self.names[y], self.names[z]
                        )));
                    }
                }
            }
        }
        if out.is_empty() {
            for x in 0..n {
                for y in 0..n {
                    let a = self.alpha(x, y);
                    assert_eq!(b.compose(self.alpha(x, x), a), a, "left unit law for a valid category");
                    assert_eq!(b.compose(a, self.alpha(y, y)), a, "right unit law for a valid category");
                }
            }
        }
        out
    }

    /// `δ(x, x) = 1_|x|`, bottom elsewhere.
    pub fn discrete(base: Arc<Quantaloid>, carrier: TypedSet) -> Result<Self> {
        let n = carrier.len();
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (tx, ty) = (carrier.types[x], carrier.types[y]);
                entries.push(if x == y { base.identity(tx) } else { base.bottom(ty, tx) });
            }
        }
        Self::new(base, carrier, entries)
    }

    /// `(Q, τ)`: the objects of the base typed by themselves, `τ(p, q) = ⋁hom(q, p)`.
    pub fn terminal(base: Arc<Quantaloid>) -> Self {
        let carrier = TypedSet::new(base.object_names().to_vec(), base.objects().collect());
        let mut entries = Vec::new();
        for p in base.objects() {
            for q in base.objects() {
                entries.push(base.tau(p, q));
            }
        }
        Self::new(base, carrier, entries).expect("the terminal category is valid")
    }

    pub fn base(&self) -> &Arc<Quantaloid> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn type_of(&self, x: usize) -> usize {
        self.types[x]
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn carrier(&self) -> TypedSet {
        TypedSet::new(self.names.clone(), self.types.clone())
    }

    /// `α(x, y): |y| → |x|`.
    pub fn alpha(&self, x: usize, y: usize) -> Morphism {
        self.hom[x * self.len() + y]
    }

    pub fn entries(&self) -> &[Morphism] {
        &self.hom
    }

    /// First pair of distinct same-type elements that dominate each other.
    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        let b = &self.base;
        for x in self.elements() {
            for y in (x + 1)..self.len() {
                if self.types[x] == self.types[y]
                    && b.leq(b.identity(self.types[x]), self.alpha(x, y))
                    && b.leq(b.identity(self.types[y]), self.alpha(y, x))
                {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_separated(&self) -> bool {
        self.separation_witness().is_none()
    }

    /// First pair with `α(x, y) ≠ j(α(y, x))`.
    pub fn symmetry_witness(&self) -> Result<Option<(usize, usize)>> {
        for x in self.elements() {
            for y in x..self.len() {
                if self.alpha(x, y) != self.base.j(self.alpha(y, x))? {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_symmetric(&self) -> Result<bool> {
        Ok(self.symmetry_witness()?.is_none())
    }

    /// `α(x, y) ∧ j(α(y, x))`.
    pub fn symmetrize(&self) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.hom.len());
        for x in self.elements() {
            for y in self.elements() {
                entries.push(self.base.meet(self.alpha(x, y), self.base.j(self.alpha(y, x))?));
            }
        }
        Self::new(self.base.clone(), self.carrier(), entries)
    }

    /// The full subcategory on `keep`, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        let types = keep.iter().map(|&x| self.types[x]).collect();
        let mut hom = Vec::with_capacity(keep.len() * keep.len());
        for &x in keep {
            for &y in keep {
                hom.push(self.alpha(x, y));
            }
        }
        QCategory { base: self.base.clone(), names, types, hom }
    }

    /// Same category with renamed elements.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::InternalInconsistency("wrong number of names".into()));
        }
        Self::new(self.base.clone(), TypedSet::new(names, self.types.clone()), self.hom.clone())
    }

    /// `value: dom -> cod` for `α(x, y)`.
    pub fn describe(&self, x: usize, y: usize) -> String {
        self.base.describe(self.alpha(x, y))
    }
}

/// A type-preserving map with `α(x1, x2) ≤ β(φ(x1), φ(x2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFunctor {
    source: Arc<QCategory>,
    target: Arc<QCategory>,
    map: Vec<usize>,
}

impl QFunctor {
    pub fn new(source: Arc<QCategory>, target: Arc<QCategory>, map: Vec<usize>) -> Result<Self> {
        if !same_base(source.base(), target.base()) {
            return Err(Error::BaseMismatch);
        }
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::InternalInconsistency("functor map has the wrong shape".into()));
        }
        let b = source.base();
        let mut out = Vec::new();
        for x in source.elements() {
            if target.type_of(map[x]) != source.type_of(x) {
                out.push(Violation::TypeMismatch(format!("{} -> {}", source.name(x), target.name(map[x]))));
            }
        }
        if out.is_empty() {
            for x1 in source.elements() {
                for x2 in source.elements() {
                    if !b.leq(source.alpha(x1, x2), target.alpha(map[x1], map[x2])) {
                        out.push(Violation::NotEnriched(format!("({}, {})", source.name(x1), source.name(x2))));
                    }
                }
            }
        }
        if out.is_empty() {
            Ok(QFunctor { source, target, map })
        } else {
            Err(Error::InvalidFunctor(out))
        }
    }

    pub fn identity(x: Arc<QCategory>) -> Self {
        let map = x.elements().collect();
        QFunctor { source: x.clone(), target: x, map }
    }

    /// The type map into the terminal category.
    pub fn type_map(x: Arc<QCategory>) -> Self {
        let t = Arc::new(QCategory::terminal(x.base().clone()));
        let map = x.types().to_vec();
        QFunctor::new(x, t, map).expect("the type map is a functor")
    }

    pub fn source(&self) -> &Arc<QCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self` then `next`.
    pub fn then(&self, next: &QFunctor) -> Result<QFunctor> {
        if *self.target != *next.source {
            return Err(Error::CategoryMismatch("functors are not composable".into()));
        }
        let map = self.map.iter().map(|&y| next.map[y]).collect();
        QFunctor::new(self.source.clone(), next.target.clone(), map)
    }
}

/// Every functor between two categories, in lexicographic order of the map.
pub fn enumerate_functors(source: &Arc<QCategory>, target: &Arc<QCategory>, budget: Budget) -> Result<Vec<QFunctor>> {
    if !same_base(source.base(), target.base()) {
        return Err(Error::BaseMismatch);
    }
    let b = source.base();
    let choices: Vec<Vec<usize>> = source
        .elements()
        .map(|x| target.elements().filter(|&y| target.type_of(y) == source.type_of(x)).collect())
        .collect();
    budget.check(choices.iter().fold(1u128, |a, c| a.saturating_mul(c.len() as u128)))?;
    let mut out = Vec::new();
    let mut map = vec![0; source.len()];
    fn go(
        i: usize,
        map: &mut Vec<usize>,
        choices: &[Vec<usize>],
        ok: &dyn Fn(&[usize], usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == map.len() {
            out.push(map.clone());
            return;
        }
        for &y in &choices[i] {
            map[i] = y;
            if ok(map, i) {
                go(i + 1, map, choices, ok, out);
            }
        }
    }
    let ok = |m: &[usize], i: usize| {
        (0..=i).all(|k| {
            b.leq(source.alpha(i, k), target.alpha(m[i], m[k])) && b.leq(source.alpha(k, i), target.alpha(m[k], m[i]))
        })
    };
    let mut maps = Vec::new();
    go(0, &mut map, &choices, &ok, &mut maps);
    for m in maps {
        out.push(QFunctor { source: source.clone(), target: target.clone(), map: m });
    }
    Ok(out)
}
