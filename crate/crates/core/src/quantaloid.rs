//! Finite quantaloids: categories whose hom-sets are complete lattices and
//! whose composition preserves joins in each variable.
//!
//! `compose(g, f)` is "g after f". In a one-object quantaloid built from a
//! quantale it is `g∗f`.

use std::collections::HashMap;

use crate::diagonal::DiagonalSource;
use crate::error::{Error, Result};
use crate::order_algebra::{Elem, Lattice, Quantale};

/// An arrow `dom → cod` whose value indexes into `hom(dom, cod)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub dom: usize,
    pub cod: usize,
    pub value: Elem,
}

impl Morphism {
    pub fn new(dom: usize, cod: usize, value: Elem) -> Self {
        Morphism { dom, cod, value }
    }
}

/// One hom-lattice in a [`QuantaloidSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpec {
    pub dom: String,
    pub cod: String,
    pub elements: Vec<String>,
    pub le: Vec<(String, String)>,
}

/// `g ∘ f = h` with `f: p → q` and `g: q → r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeEntry {
    pub p: String,
    pub q: String,
    pub r: String,
    pub g: String,
    pub f: String,
    pub h: String,
}

/// Name-level description of a quantaloid.
///
/// Homs not listed are the one-element lattice `{0}`. Composites involving a
/// bottom may be omitted. Involution entries `(p, q, u, v)` say that `u: p → q`
/// and `v: q → p` are swapped; unlisted elements of endo-homs are fixed, and
/// unlisted elements of other homs go to the element of the same name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuantaloidSpec {
    pub objects: Vec<String>,
    pub homs: Vec<HomSpec>,
    pub compose: Vec<ComposeEntry>,
    pub identities: Vec<(String, String)>,
    pub involution: Option<Vec<(String, String, String, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantaloid {
    objects: Vec<String>,
    homs: Vec<Lattice>,
    compose: Vec<Vec<Elem>>,
    identities: Vec<Elem>,
    involution: Option<Vec<Vec<Elem>>>,
    diagonal: Option<DiagonalSource>,
}

impl QuantaloidSpec {
    pub fn build(&self) -> Result<Quantaloid> {
        let n = self.objects.len();
        let obj = object_index(&self.objects)?;
        let ob = |s: &str| obj.get(s).copied().ok_or_else(|| Error::UnknownObject(s.to_string()));
        let mut homs: Vec<Option<Lattice>> = vec![None; n * n];
        for h in &self.homs {
            let (p, q) = (ob(&h.dom)?, ob(&h.cod)?);
            if homs[p * n + q].is_some() {
                return Err(Error::ConflictingEntry(format!("hom {} {}", h.dom, h.cod)));
            }
            homs[p * n + q] = Some(Lattice::new(&h.elements, &h.le)?);
        }
        let homs: Vec<Lattice> = homs
            .into_iter()
            .map(|h| h.unwrap_or_else(|| Lattice::new(&["0"], &[]).expect("one-element lattice")))
            .collect();
        let hom = |p: usize, q: usize| &homs[p * n + q];
        let mut tables: Vec<Vec<Option<Elem>>> = Vec::with_capacity(n * n * n);
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let (f_len, g_len) = (hom(p, q).len(), hom(q, r).len());
                    let mut t = vec![None; g_len * f_len];
                    let bot = hom(p, r).bottom();
                    for g in 0..g_len {
                        for f in 0..f_len {
                            if g == hom(q, r).bottom() || f == hom(p, q).bottom() {
                                t[g * f_len + f] = Some(bot);
                            }
                        }
                    }
                    tables.push(t);
                }
            }
        }
        for e in &self.compose {
            let (p, q, r) = (ob(&e.p)?, ob(&e.q)?, ob(&e.r)?);
            let f = hom(p, q).index_of(&e.f)?;
            let g = hom(q, r).index_of(&e.g)?;
            let h = hom(p, r).index_of(&e.h)?;
            let f_len = hom(p, q).len();
            let slot = &mut tables[(p * n + q) * n + r][g * f_len + f];
            match *slot {
                Some(old) if old != h => {
                    return Err(Error::ConflictingEntry(format!(
                        "{} o {} at {} -> {} -> {}",
                        e.g, e.f, e.p, e.q, e.r
                    )))
                }
                _ => *slot = Some(h),
            }
        }
        let mut compose = Vec::with_capacity(tables.len());
        for (i, t) in tables.into_iter().enumerate() {
            let (p, q, r) = (i / (n * n), (i / n) % n, i % n);
            let f_len = hom(p, q).len();
            let mut out = Vec::with_capacity(t.len());
            for (k, v) in t.into_iter().enumerate() {
                out.push(v.ok_or_else(|| {
                    Error::MissingEntry(format!(
                        "{} o {} at {} -> {} -> {}",
                        hom(q, r).name(k / f_len),
                        hom(p, q).name(k % f_len),
                        self.objects[p],
                        self.objects[q],
                        self.objects[r]
                    ))
                })?);
            }
            compose.push(out);
        }
        let mut identities: Vec<Option<Elem>> = vec![None; n];
        for (p, e) in &self.identities {
            let p = ob(p)?;
            identities[p] = Some(hom(p, p).index_of(e)?);
        }
        let identities = identities
            .into_iter()
            .enumerate()
            .map(|(p, e)| e.ok_or_else(|| Error::BadIdentity(format!("no identity at {}", self.objects[p]))))
            .collect::<Result<Vec<_>>>()?;
        let involution = match &self.involution {
            None => None,
            Some(pairs) => {
                let mut j: Vec<Vec<Option<Elem>>> =
                    (0..n * n).map(|i| vec![None; homs[i].len()]).collect();
                for (p, q, u, v) in pairs {
                    let (p, q) = (ob(p)?, ob(q)?);
                    let u = hom(p, q).index_of(u)?;
                    let v = hom(q, p).index_of(v)?;
                    for (a, b, x, y) in [(p, q, u, v), (q, p, v, u)] {
                        match j[a * n + b][x] {
                            Some(old) if old != y => {
                                return Err(Error::BadInvolution(format!(
                                    "{} sent to two values",
                                    hom(a, b).name(x)
                                )))
                            }
                            _ => j[a * n + b][x] = Some(y),
                        }
                    }
                }
                let mut full = Vec::with_capacity(n * n);
                for p in 0..n {
                    for q in 0..n {
                        let mut row = Vec::with_capacity(hom(p, q).len());
                        for x in hom(p, q).elements() {
                            let y = match j[p * n + q][x] {
                                Some(y) => y,
                                None if x == hom(p, q).bottom() => hom(q, p).bottom(),
                                None if p == q => x,
                                None => hom(q, p).index_of(hom(p, q).name(x)).map_err(|_| {
                                    Error::BadInvolution(format!(
                                        "no image for {} in hom({}, {})",
                                        hom(p, q).name(x),
                                        self.objects[q],
                                        self.objects[p]
                                    ))
                                })?,
                            };
                            row.push(y);
                        }
                        full.push(row);
                    }
                }
                Some(full)
            }
        };
        Quantaloid::from_tables(self.objects.clone(), homs, compose, identities, involution)
    }
}

fn object_index(objects: &[String]) -> Result<HashMap<&str, usize>> {
    let mut m = HashMap::with_capacity(objects.len());
    for (i, s) in objects.iter().enumerate() {
        if m.insert(s.as_str(), i).is_some() {
            return Err(Error::DuplicateName(s.clone()));
        }
    }
    Ok(m)
}

impl Quantaloid {
    /// Validates complete tables.
    ///
    /// `homs[p*n + q]` is `hom(p, q)`. `compose[(p*n + q)*n + r]` is indexed by
    /// `g * |hom(p,q)| + f` for `f: p → q`, `g: q → r`. `involution[p*n + q]`
    /// maps `hom(p, q)` into `hom(q, p)`.
    pub fn from_tables(
        objects: Vec<String>,
        homs: Vec<Lattice>,
        compose: Vec<Vec<Elem>>,
        identities: Vec<Elem>,
        involution: Option<Vec<Vec<Elem>>>,
    ) -> Result<Self> {
        object_index(&objects)?;
        let n = objects.len();
        if homs.len() != n * n || compose.len() != n * n * n || identities.len() != n {
            return Err(Error::InternalInconsistency("table dimensions".into()));
        }
        let q = Quantaloid { objects, homs, compose, identities, involution, diagonal: None };
        q.check_shapes()?;
        q.check_identities()?;
        q.check_joins()?;
        q.check_associative()?;
        q.check_involution()?;
        Ok(q)
    }

    /// The one-object quantaloid of a unital quantale. The object is named `*`.
    pub fn from_unital_quantale(q: &Quantale) -> Result<Self> {
        let e = q.unit().ok_or(Error::NotUnital)?;
        let mut table = Vec::with_capacity(q.len() * q.len());
        for g in q.elements() {
            for f in q.elements() {
                table.push(q.mult(g, f));
            }
        }
        let involution = q.involution().map(|t| vec![t.to_vec()]);
        Quantaloid::from_tables(vec!["*".into()], vec![q.lattice().clone()], vec![table], vec![e], involution)
    }

    pub(crate) fn set_diagonal(&mut self, d: DiagonalSource) {
        self.diagonal = Some(d);
    }

    /// Present when this quantaloid was built as the diagonal of a quantale.
    pub fn diagonal_source(&self) -> Option<&DiagonalSource> {
        self.diagonal.as_ref()
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.len();
        for p in 0..n {
            if self.identities[p] >= self.hom(p, p).len() {
                return Err(Error::InternalInconsistency("identity out of range".into()));
            }
            for q in 0..n {
                for r in 0..n {
                    let t = &self.compose[(p * n + q) * n + r];
                    if t.len() != self.hom(p, q).len() * self.hom(q, r).len()
                        || t.iter().any(|&h| h >= self.hom(p, r).len())
                    {
                        return Err(Error::InternalInconsistency("composition table shape".into()));
                    }
                }
                if let Some(j) = &self.involution {
                    let row = &j[p * n + q];
                    if row.len() != self.hom(p, q).len() || row.iter().any(|&v| v >= self.hom(q, p).len()) {
                        return Err(Error::BadInvolution("involution table shape".into()));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_identities(&self) -> Result<()> {
        for p in self.objects() {
            for q in self.objects() {
                for f in self.morphisms(p, q) {
                    if self.compose(f, self.identity(p)) != f || self.compose(self.identity(q), f) != f {
                        return Err(Error::BadIdentity(format!(
                            "{} fails the unit law for {}",
                            self.describe(f),
                            self.describe(self.identity(p))
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_joins(&self) -> Result<()> {
        for p in self.objects() {
            for q in self.objects() {
                for r in self.objects() {
                    for g in self.morphisms(q, r) {
                        for f1 in self.morphisms(p, q) {
                            for f2 in self.morphisms(p, q) {
                                let lhs = self.compose(g, self.join(f1, f2));
                                let rhs = self.join(self.compose(g, f1), self.compose(g, f2));
                                if lhs != rhs {
                                    return Err(Error::NotJoinPreserving(format!(
                                        "{} after {} v {}",
                                        self.describe(g),
                                        self.describe(f1),
                                        self.describe(f2)
                                    )));
                                }
                            }
                        }
                    }
                    for f in self.morphisms(p, q) {
                        for g1 in self.morphisms(q, r) {
                            for g2 in self.morphisms(q, r) {
                                let lhs = self.compose(self.join(g1, g2), f);
                                let rhs = self.join(self.compose(g1, f), self.compose(g2, f));
                                if lhs != rhs {
                                    return Err(Error::NotJoinPreserving(format!(
                                        "{} v {} after {}",
                                        self.describe(g1),
                                        self.describe(g2),
                                        self.describe(f)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        for p in self.objects() {
            for q in self.objects() {
                for r in self.objects() {
                    for s in self.objects() {
                        for f in self.morphisms(p, q) {
                            for g in self.morphisms(q, r) {
                                let gf = self.compose(g, f);
                                for h in self.morphisms(r, s) {
                                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                                        return Err(Error::NotAssociative(format!(
                                            "({}, {}, {})",
                                            self.describe(h),
                                            self.describe(g),
                                            self.describe(f)
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_involution(&self) -> Result<()> {
        if self.involution.is_none() {
            return Ok(());
        }
        let j = |u| self.involute(u).expect("involution present");
        for p in self.objects() {
            for q in self.objects() {
                for u in self.morphisms(p, q) {
                    if j(j(u)) != u {
                        return Err(Error::BadInvolution(format!("{} is not involutive", self.describe(u))));
                    }
                    for v in self.morphisms(p, q) {
                        if self.leq(u, v) && !self.leq(j(u), j(v)) {
                            return Err(Error::BadInvolution(format!(
                                "order not preserved at ({}, {})",
                                self.describe(u),
                                self.describe(v)
                            )));
                        }
                    }
                    for r in self.objects() {
                        for g in self.morphisms(q, r) {
                            if j(self.compose(g, u)) != self.compose(j(u), j(g)) {
                                return Err(Error::BadInvolution(format!(
                                    "not contravariant at ({}, {})",
                                    self.describe(g),
                                    self.describe(u)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.objects.len()
    }

    pub fn object_name(&self, p: usize) -> &str {
        &self.objects[p]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn hom(&self, p: usize, q: usize) -> &Lattice {
        &self.homs[p * self.len() + q]
    }

    pub fn morphisms(&self, p: usize, q: usize) -> impl Iterator<Item = Morphism> + '_ {
        self.hom(p, q).elements().map(move |v| Morphism::new(p, q, v))
    }

    /// The morphism `p → q` named `name`.
    pub fn morphism(&self, p: usize, q: usize, name: &str) -> Result<Morphism> {
        Ok(Morphism::new(p, q, self.hom(p, q).index_of(name)?))
    }

    pub fn value_name(&self, u: Morphism) -> &str {
        self.hom(u.dom, u.cod).name(u.value)
    }

    /// `value: dom -> cod`.
    pub fn describe(&self, u: Morphism) -> String {
        format!("{}: {} -> {}", self.value_name(u), self.objects[u.dom], self.objects[u.cod])
    }

    pub fn identity(&self, p: usize) -> Morphism {
        Morphism::new(p, p, self.identities[p])
    }

    pub fn bottom(&self, p: usize, q: usize) -> Morphism {
        Morphism::new(p, q, self.hom(p, q).bottom())
    }

    pub fn top(&self, p: usize, q: usize) -> Morphism {
        Morphism::new(p, q, self.hom(p, q).top())
    }

    /// `τ(p, q) = ⋁hom(q, p)`.
    pub fn tau(&self, p: usize, q: usize) -> Morphism {
        self.top(q, p)
    }

    /// `g ∘ f`. Panics if `f.cod != g.dom`.
    pub fn compose(&self, g: Morphism, f: Morphism) -> Morphism {
        assert_eq!(f.cod, g.dom, "composing non-composable morphisms");
        let n = self.len();
        let (p, q, r) = (f.dom, f.cod, g.cod);
        let f_len = self.hom(p, q).len();
        Morphism::new(p, r, self.compose[(p * n + q) * n + r][g.value * f_len + f.value])
    }

    pub fn try_compose(&self, g: Morphism, f: Morphism) -> Result<Morphism> {
        if f.cod != g.dom {
            return Err(Error::NotComposable(format!("{} after {}", self.describe(g), self.describe(f))));
        }
        Ok(self.compose(g, f))
    }

    /// `h ∘ g ∘ f`.
    pub fn compose3(&self, h: Morphism, g: Morphism, f: Morphism) -> Morphism {
        self.compose(h, self.compose(g, f))
    }

    fn same_hom(u: Morphism, v: Morphism) {
        assert!(u.dom == v.dom && u.cod == v.cod, "morphisms in different hom-sets");
    }

    pub fn leq(&self, u: Morphism, v: Morphism) -> bool {
        Self::same_hom(u, v);
        self.hom(u.dom, u.cod).leq(u.value, v.value)
    }

    pub fn join(&self, u: Morphism, v: Morphism) -> Morphism {
        Self::same_hom(u, v);
        Morphism::new(u.dom, u.cod, self.hom(u.dom, u.cod).join(u.value, v.value))
    }

    pub fn meet(&self, u: Morphism, v: Morphism) -> Morphism {
        Self::same_hom(u, v);
        Morphism::new(u.dom, u.cod, self.hom(u.dom, u.cod).meet(u.value, v.value))
    }

    /// Join in `hom(p, q)`; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = Morphism>>(&self, p: usize, q: usize, it: I) -> Morphism {
        it.into_iter().fold(self.bottom(p, q), |acc, u| self.join(acc, u))
    }

    /// Meet in `hom(p, q)`; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = Morphism>>(&self, p: usize, q: usize, it: I) -> Morphism {
        it.into_iter().fold(self.top(p, q), |acc, u| self.meet(acc, u))
    }

    /// `u ↙ v` for `u: p → q`, `v: p → r`: the largest `h: r → q` with `h ∘ v ≤ u`.
    pub fn left_residual(&self, u: Morphism, v: Morphism) -> Morphism {
        assert_eq!(u.dom, v.dom, "left residual needs a common domain");
        let (r, q) = (v.cod, u.cod);
        self.join_all(r, q, self.morphisms(r, q).filter(|&h| self.leq(self.compose(h, v), u)))
    }

    /// `v ↘ u` for `u: p → q`, `v: r → q`: the largest `h: p → r` with `v ∘ h ≤ u`.
    pub fn right_residual(&self, v: Morphism, u: Morphism) -> Morphism {
        assert_eq!(u.cod, v.cod, "right residual needs a common codomain");
        let (p, r) = (u.dom, v.dom);
        self.join_all(p, r, self.morphisms(p, r).filter(|&h| self.leq(self.compose(v, h), u)))
    }

    pub fn is_involutive(&self) -> bool {
        self.involution.is_some()
    }

    /// `j(u): cod → dom`, if an involution is present.
    pub fn involute(&self, u: Morphism) -> Option<Morphism> {
        let j = self.involution.as_ref()?;
        Some(Morphism::new(u.cod, u.dom, j[u.dom * self.len() + u.cod][u.value]))
    }

    pub fn j(&self, u: Morphism) -> Result<Morphism> {
        self.involute(u).ok_or(Error::NoInvolution)
    }

    /// `1_q ≤ τ(q, p) ∘ τ(p, q)` for every object `q`.
    pub fn is_stable_at(&self, p: usize) -> bool {
        self.objects()
            .all(|q| self.leq(self.identity(q), self.compose(self.tau(q, p), self.tau(p, q))))
    }

    pub fn stable_objects(&self) -> Vec<usize> {
        self.objects().filter(|&p| self.is_stable_at(p)).collect()
    }

    /// `u ∘ τ(dom u, dom u) ≤ u`.
    pub fn is_right_sided(&self, u: Morphism) -> bool {
        self.leq(self.compose(u, self.tau(u.dom, u.dom)), u)
    }

    /// Right-sided morphisms with domain `r`, by codomain then value.
    pub fn right_sided_morphisms(&self, r: usize) -> Vec<Morphism> {
        self.objects()
            .flat_map(|q| self.morphisms(r, q))
            .filter(|&u| self.is_right_sided(u))
            .collect()
    }

    /// The full subquantaloid on `keep`, in the given order.
    pub fn full_subquantaloid(&self, keep: &[usize]) -> Result<Self> {
        let n = self.len();
        let objects = keep.iter().map(|&p| self.objects[p].clone()).collect();
        let mut homs = Vec::new();
        let mut involution = self.involution.as_ref().map(|_| Vec::new());
        for &p in keep {
            for &q in keep {
                homs.push(self.hom(p, q).clone());
                if let (Some(out), Some(j)) = (involution.as_mut(), self.involution.as_ref()) {
                    out.push(j[p * n + q].clone());
                }
            }
        }
        let mut compose = Vec::new();
        for &p in keep {
            for &q in keep {
                for &r in keep {
                    compose.push(self.compose[(p * n + q) * n + r].clone());
                }
            }
        }
        let identities = keep.iter().map(|&p| self.identities[p]).collect();
        let mut sub = Quantaloid::from_tables(objects, homs, compose, identities, involution)?;
        if let Some(d) = &self.diagonal {
            sub.diagonal = Some(d.restrict(keep, n));
        }
        Ok(sub)
    }

    /// Name-level description that rebuilds this quantaloid.
    pub fn to_spec(&self) -> QuantaloidSpec {
        let n = self.len();
        let on = |p: usize| self.objects[p].clone();
        let mut homs = Vec::new();
        let mut compose = Vec::new();
        for p in 0..n {
            for q in 0..n {
                let h = self.hom(p, q);
                homs.push(HomSpec {
                    dom: on(p),
                    cod: on(q),
                    elements: h.names().to_vec(),
                    le: h.covers().into_iter().map(|(a, b)| (h.name(a).into(), h.name(b).into())).collect(),
                });
                for r in 0..n {
                    for f in self.morphisms(p, q).filter(|f| f.value != h.bottom()) {
                        for g in self.morphisms(q, r).filter(|g| g.value != self.hom(q, r).bottom()) {
                            compose.push(ComposeEntry {
                                p: on(p),
                                q: on(q),
                                r: on(r),
                                g: self.value_name(g).into(),
                                f: self.value_name(f).into(),
                                h: self.value_name(self.compose(g, f)).into(),
                            });
                        }
                    }
                }
            }
        }
        let identities = (0..n).map(|p| (on(p), self.value_name(self.identity(p)).into())).collect();
        let involution = self.involution.as_ref().map(|_| {
            let mut pairs = Vec::new();
            for p in 0..n {
                for q in p..n {
                    for u in self.morphisms(p, q) {
                        let v = self.involute(u).expect("involution present");
                        if p == q && v.value <= u.value {
                            continue;
                        }
                        pairs.push((on(p), on(q), self.value_name(u).into(), self.value_name(v).into()));
                    }
                }
            }
            pairs
        });
        QuantaloidSpec { objects: (0..n).map(on).collect(), homs, compose, identities, involution }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn two_object() -> QuantaloidSpec {
        // objects p, q; every hom is {0 < 1}; composition is meet-like
        let s = |x: &str| x.to_string();
        let mut spec = QuantaloidSpec { objects: vec![s("p"), s("q")], ..Default::default() };
        for a in ["p", "q"] {
            for b in ["p", "q"] {
                spec.homs.push(HomSpec {
                    dom: s(a),
                    cod: s(b),
                    elements: vec![s("0"), s("1")],
                    le: vec![(s("0"), s("1"))],
                });
                for c in ["p", "q"] {
                    spec.compose.push(ComposeEntry {
                        p: s(a),
                        q: s(b),
                        r: s(c),
                        g: s("1"),
                        f: s("1"),
                        h: s("1"),
                    });
                }
            }
            spec.identities.push((s(a), s("1")));
        }
        spec.involution = Some(vec![]);
        spec
    }

    #[test]
    fn indiscrete_two_object_quantaloid() {
        let k = two_object().build().unwrap();
        assert_eq!(k.len(), 2);
        assert!(k.is_stable_at(0) && k.is_stable_at(1));
        assert_eq!(k.to_spec().build().unwrap(), k);
    }

    #[test]
    fn missing_identity_is_reported() {
        let mut spec = two_object();
        spec.identities.pop();
        assert!(matches!(spec.build().unwrap_err(), Error::BadIdentity(_)));
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut spec = two_object();
        spec.compose.pop();
        assert!(matches!(spec.build().unwrap_err(), Error::MissingEntry(_)));
    }

    #[test]
    fn one_object_quantaloid_matches_quantale() {
        let q = catalog::cyclic_three();
        let k = Quantaloid::from_unital_quantale(&q).unwrap();
        for a in q.elements() {
            for b in q.elements() {
                let (u, v) = (Morphism::new(0, 0, a), Morphism::new(0, 0, b));
                assert_eq!(k.compose(u, v).value, q.mult(a, b));
                assert_eq!(k.left_residual(u, v).value, q.left_residual(a, b));
                assert_eq!(k.right_residual(v, u).value, q.right_residual(b, a));
            }
        }
        assert!(matches!(
            Quantaloid::from_unital_quantale(&catalog::diamond_idempotent()),
            Err(Error::NotUnital)
        ));
    }

    #[test]
    fn residual_galois_law_in_quantaloid() {
        let k = two_object().build().unwrap();
        for p in k.objects() {
            for q in k.objects() {
                for r in k.objects() {
                    for u in k.morphisms(p, q) {
                        for v in k.morphisms(p, r) {
                            let res = k.left_residual(u, v);
                            for h in k.morphisms(r, q) {
                                assert_eq!(k.leq(k.compose(h, v), u), k.leq(h, res));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "non-composable")]
    fn composing_mismatched_morphisms_panics() {
        let k = two_object().build().unwrap();
        k.compose(Morphism::new(0, 1, 1), Morphism::new(0, 1, 1));
    }

    #[test]
    fn try_compose_reports_mismatch() {
        let k = two_object().build().unwrap();
        assert!(matches!(
            k.try_compose(Morphism::new(0, 1, 1), Morphism::new(0, 1, 1)),
            Err(Error::NotComposable(_))
        ));
    }
}
