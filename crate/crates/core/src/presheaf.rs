//! Presheaves, presheaf categories, presingletons and the Cauchy completion,
//! sup maps and the presheaf functor.

use std::collections::HashMap;
use std::sync::Arc;

use crate::distributor::Distributor;
use crate::error::{Error, Result};
use crate::qcat::{QCategory, QFunctor, TypedSet};
use crate::quantaloid::{Morphism, Quantaloid};
use crate::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    /// `f(x): |x| → p` with `f(x1) ∘ α(x1, x2) ≤ f(x2)`.
    Covariant,
    /// `g(x): p → |x|` with `α(x1, x2) ∘ g(x2) ≤ g(x1)`.
    Contravariant,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presheaf {
    pub variance: Variance,
    pub ty: usize,
    pub values: Vec<Morphism>,
}

fn product_size(x: &QCategory, p: usize, variance: Variance) -> u128 {
    let b = x.base();
    x.elements()
        .map(|i| match variance {
            Variance::Covariant => b.hom(x.type_of(i), p).len() as u128,
            Variance::Contravariant => b.hom(p, x.type_of(i)).len() as u128,
        })
        .fold(1u128, |acc, k| acc.saturating_mul(k))
}

/// All presheaves of type `p`, in lexicographic order of their values with
/// the first element most significant.
pub fn enumerate_presheaves(x: &QCategory, p: usize, variance: Variance, budget: Budget) -> Result<Vec<Presheaf>> {
    budget.check(product_size(x, p, variance))?;
    Ok(enumerate_unchecked(x, p, variance))
}

fn enumerate_unchecked(x: &QCategory, p: usize, variance: Variance) -> Vec<Presheaf> {
    let b = x.base();
    let n = x.len();
    let hom_of = |i: usize| match variance {
        Variance::Covariant => (x.type_of(i), p),
        Variance::Contravariant => (p, x.type_of(i)),
    };
    // does the partial assignment stay valid after fixing position i
    let ok = |vals: &[Morphism], i: usize| -> bool {
        (0..=i).all(|k| {
            let pairs = [(i, k), (k, i)];
            pairs.iter().all(|&(x1, x2)| match variance {
                Variance::Covariant => b.leq(b.compose(vals[x1], x.alpha(x1, x2)), vals[x2]),
                Variance::Contravariant => b.leq(b.compose(x.alpha(x1, x2), vals[x2]), vals[x1]),
            })
        })
    };
    let mut out = Vec::new();
    let mut vals: Vec<Morphism> = (0..n).map(|i| {
        let (d, c) = hom_of(i);
        Morphism::new(d, c, 0)
    }).collect();
    fn go(
        i: usize,
        n: usize,
        vals: &mut Vec<Morphism>,
        hom_len: &dyn Fn(usize) -> usize,
        ok: &dyn Fn(&[Morphism], usize) -> bool,
        emit: &mut dyn FnMut(&[Morphism]),
    ) {
        if i == n {
            emit(vals);
            return;
        }
        for v in 0..hom_len(i) {
            vals[i].value = v;
            if ok(vals, i) {
                go(i + 1, n, vals, hom_len, ok, emit);
            }
        }
    }
    let hom_len = |i: usize| {
        let (d, c) = hom_of(i);
        b.hom(d, c).len()
    };
    go(0, n, &mut vals, &hom_len, &ok, &mut |v| {
        out.push(Presheaf { variance, ty: p, values: v.to_vec() })
    });
    out
}

/// A presheaf category with its presheaves in canonical order.
#[derive(Clone, Debug)]
pub struct PresheafCategory {
    pub variance: Variance,
    pub source: Arc<QCategory>,
    pub presheaves: Vec<Presheaf>,
    pub category: Arc<QCategory>,
    index: HashMap<Presheaf, usize>,
}

impl PresheafCategory {
    pub fn position(&self, p: &Presheaf) -> Option<usize> {
        self.index.get(p).copied()
    }
}

fn presheaf_name(b: &Quantaloid, p: &Presheaf) -> String {
    let vals: Vec<&str> = p.values.iter().map(|&m| b.value_name(m)).collect();
    format!("{}:[{}]", b.object_name(p.ty), vals.join(","))
}

/// All presheaves of every type, with `π(g1, g2) = ⋀_x g1(x) ↘ g2(x)` in the
/// contravariant case and `υ(f1, f2) = ⋀_x f1(x) ↙ f2(x)` in the covariant one.
pub fn presheaf_category(x: &Arc<QCategory>, variance: Variance, budget: Budget) -> Result<PresheafCategory> {
    let b = x.base().clone();
    let total = b
        .objects()
        .map(|p| product_size(x, p, variance))
        .fold(0u128, |a, k| a.saturating_add(k));
    budget.check(total)?;
    let presheaves: Vec<Presheaf> = b.objects().flat_map(|p| enumerate_unchecked(x, p, variance)).collect();
    let n = presheaves.len();
    let mut entries = Vec::with_capacity(n * n);
    for s in &presheaves {
        for t in &presheaves {
            let parts = x.elements().map(|i| match variance {
                Variance::Contravariant => b.right_residual(s.values[i], t.values[i]),
                Variance::Covariant => b.left_residual(s.values[i], t.values[i]),
            });
            entries.push(b.meet_all(t.ty, s.ty, parts));
        }
    }
    let carrier = TypedSet::new(
        presheaves.iter().map(|p| presheaf_name(&b, p)).collect(),
        presheaves.iter().map(|p| p.ty).collect(),
    );
    let category = Arc::new(QCategory::new(b, carrier, entries)?);
    let index = presheaves.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(PresheafCategory { variance, source: x.clone(), presheaves, category, index })
}

/// `η(x) = (|x|, α(·, x))`.
pub fn yoneda_presheaf(x: &QCategory, i: usize) -> Presheaf {
    Presheaf {
        variance: Variance::Contravariant,
        ty: x.type_of(i),
        values: x.elements().map(|k| x.alpha(k, i)).collect(),
    }
}

/// The Yoneda embedding into a contravariant presheaf category of its source.
pub fn yoneda(pcat: &PresheafCategory) -> Result<QFunctor> {
    if pcat.variance != Variance::Contravariant {
        return Err(Error::NotApplicable("Yoneda lands in contravariant presheaves".into()));
    }
    let x = &pcat.source;
    let map = x
        .elements()
        .map(|i| pcat.position(&yoneda_presheaf(x, i)).expect("representables are presheaves"))
        .collect();
    QFunctor::new(x.clone(), pcat.category.clone(), map)
}

/// An adjoint pair of presheaves `(f, p, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presingleton {
    pub ty: usize,
    /// Covariant part, `f(x): |x| → p`.
    pub f: Vec<Morphism>,
    /// Contravariant part, `g(x): p → |x|`.
    pub g: Vec<Morphism>,
}

impl Presingleton {
    /// `x̃ = (α(x, ·), |x|, α(·, x))`.
    pub fn representable(x: &QCategory, i: usize) -> Self {
        Presingleton {
            ty: x.type_of(i),
            f: x.elements().map(|k| x.alpha(i, k)).collect(),
            g: x.elements().map(|k| x.alpha(k, i)).collect(),
        }
    }

    pub fn describe(&self, b: &Quantaloid) -> String {
        let show = |v: &[Morphism]| v.iter().map(|&m| b.value_name(m)).collect::<Vec<_>>().join(",");
        format!("({}; {}; {})", show(&self.f), b.object_name(self.ty), show(&self.g))
    }
}

/// `f(y) = ⋀_x g(x) ↘ α(x, y)`, the covariant partner of `g`.
pub fn covariant_partner(x: &QCategory, p: usize, g: &[Morphism]) -> Vec<Morphism> {
    let b = x.base();
    x.elements()
        .map(|y| b.meet_all(x.type_of(y), p, x.elements().map(|i| b.right_residual(g[i], x.alpha(i, y)))))
        .collect()
}

/// Every presingleton, grouped by type in object order.
pub fn enumerate_presingletons(x: &QCategory, budget: Budget) -> Result<Vec<Presingleton>> {
    let b = x.base();
    let total = b
        .objects()
        .map(|p| product_size(x, p, Variance::Contravariant))
        .fold(0u128, |a, k| a.saturating_add(k));
    budget.check(total)?;
    let mut out = Vec::new();
    for p in b.objects() {
        for g in enumerate_unchecked(x, p, Variance::Contravariant) {
            let f = covariant_partner(x, p, &g.values);
            let unit = b.join_all(p, p, x.elements().map(|i| b.compose(f[i], g.values[i])));
            if !b.leq(b.identity(p), unit) {
                continue;
            }
            for x1 in x.elements() {
                for x2 in x.elements() {
                    assert!(
                        b.leq(b.compose(g.values[x1], f[x2]), x.alpha(x1, x2)),
                        "counit condition holds for the residual partner"
                    );
                }
            }
            out.push(Presingleton { ty: p, f, g: g.values });
        }
    }
    Ok(out)
}

/// The presingleton space `X̂` with `α̂(μ1, μ2) = ⋁_x f1(x) ∘ g2(x)`, and the
/// isomorphism `Ξ: X → X̂`, `Ξ(μ, x) = f(x)`.
#[derive(Clone, Debug)]
pub struct PresingletonSpace {
    pub source: Arc<QCategory>,
    pub presingletons: Vec<Presingleton>,
    pub category: Arc<QCategory>,
    pub xi: Distributor,
    /// Position of `x̃` for each element `x`.
    pub representatives: Vec<usize>,
    index: HashMap<Presingleton, usize>,
}

impl PresingletonSpace {
    pub fn position(&self, m: &Presingleton) -> Option<usize> {
        self.index.get(m).copied()
    }
}

pub fn presingleton_space(x: &Arc<QCategory>, budget: Budget) -> Result<PresingletonSpace> {
    let b = x.base().clone();
    let ps = enumerate_presingletons(x, budget)?;
    let index: HashMap<Presingleton, usize> = ps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let representatives: Vec<usize> = x
        .elements()
        .map(|i| index[&Presingleton::representable(x, i)])
        .collect();
    let names: Vec<String> = (0..ps.len())
        .map(|k| match representatives.iter().position(|&r| r == k) {
            Some(i) => format!("~{}", x.name(i)),
            None => format!("m{k}"),
        })
        .collect();
    let mut entries = Vec::with_capacity(ps.len() * ps.len());
    for m1 in &ps {
        for m2 in &ps {
            entries.push(b.join_all(m2.ty, m1.ty, x.elements().map(|i| b.compose(m1.f[i], m2.g[i]))));
        }
    }
    let carrier = TypedSet::new(names, ps.iter().map(|m| m.ty).collect());
    let category = Arc::new(QCategory::new(b, carrier, entries)?);
    let mut xi = Vec::with_capacity(ps.len() * x.len());
    for m in &ps {
        xi.extend_from_slice(&m.f);
    }
    let xi = Distributor::new(x.clone(), category.clone(), xi)?;
    if !xi.is_iso()? {
        return Err(Error::InternalInconsistency("comparison with the presingleton space is not an iso".into()));
    }
    Ok(PresingletonSpace { source: x.clone(), presingletons: ps, category, xi, representatives, index })
}

/// Why a category fails to be Cauchy complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CauchyFailure {
    Unrepresented(Presingleton),
    Repeated { presingleton: Presingleton, first: usize, second: usize },
}

pub fn cauchy_failure(x: &QCategory, budget: Budget) -> Result<Option<CauchyFailure>> {
    for m in enumerate_presingletons(x, budget)? {
        let reps: Vec<usize> = x.elements().filter(|&i| Presingleton::representable(x, i) == m).collect();
        match reps.as_slice() {
            [] => return Ok(Some(CauchyFailure::Unrepresented(m))),
            [_] => {}
            [a, b, ..] => return Ok(Some(CauchyFailure::Repeated { presingleton: m, first: *a, second: *b })),
        }
    }
    Ok(None)
}

pub fn is_cauchy_complete(x: &QCategory, budget: Budget) -> Result<bool> {
    Ok(cauchy_failure(x, budget)?.is_none())
}

/// The element-wise description of `sup: P(X) → X`.
#[derive(Clone, Debug)]
pub struct SupMap {
    pub presheaves: PresheafCategory,
    /// `map[k]` is the sup of presheaf `k`.
    pub map: Vec<usize>,
}

impl SupMap {
    pub fn functor(&self) -> Result<QFunctor> {
        QFunctor::new(self.presheaves.category.clone(), self.presheaves.source.clone(), self.map.clone())
    }

    pub fn sup_of(&self, p: &Presheaf) -> Option<usize> {
        self.presheaves.position(p).map(|k| self.map[k])
    }
}

#[derive(Clone, Debug)]
pub enum SupOutcome {
    Cocomplete(SupMap),
    /// A presheaf with no element representing its residual.
    NotCocomplete(Presheaf),
}

/// For each contravariant `(p, g)`, the unique `x0` of type `p` with
/// `α(x0, y) = ⋀_x g(x) ↘ α(x, y)` for all `y`.
pub fn sup_map(x: &Arc<QCategory>, budget: Budget) -> Result<SupOutcome> {
    if let Some((a, c)) = x.separation_witness() {
        return Err(Error::NotSeparated(format!("{} and {}", x.name(a), x.name(c))));
    }
    let pcat = presheaf_category(x, Variance::Contravariant, budget)?;
    let mut map = Vec::with_capacity(pcat.presheaves.len());
    for g in &pcat.presheaves {
        let want = covariant_partner(x, g.ty, &g.values);
        match x
            .elements()
            .find(|&i| x.type_of(i) == g.ty && x.elements().all(|y| x.alpha(i, y) == want[y]))
        {
            Some(i) => map.push(i),
            None => return Ok(SupOutcome::NotCocomplete(g.clone())),
        }
    }
    let s = SupMap { presheaves: pcat, map };
    s.functor()?;
    Ok(SupOutcome::Cocomplete(s))
}

/// The sup map, or `NotCocomplete`.
pub fn require_sup(x: &Arc<QCategory>, budget: Budget) -> Result<SupMap> {
    match sup_map(x, budget)? {
        SupOutcome::Cocomplete(s) => Ok(s),
        SupOutcome::NotCocomplete(p) => Err(Error::NotCocomplete(presheaf_name(x.base(), &p))),
    }
}

/// `(ℙφ(p, g))(y) = ⋁_x β(y, φ(x)) ∘ g(x)`.
pub fn push_forward(phi: &QFunctor, g: &Presheaf) -> Presheaf {
    let (x, y) = (phi.source(), phi.target());
    let b = x.base();
    Presheaf {
        variance: Variance::Contravariant,
        ty: g.ty,
        values: y
            .elements()
            .map(|j| b.join_all(g.ty, y.type_of(j), x.elements().map(|i| b.compose(y.alpha(j, phi.apply(i)), g.values[i]))))
            .collect(),
    }
}

/// `ℙφ: P(X) → P(Y)` on materialized presheaf categories.
pub fn apply_p(phi: &QFunctor, px: &PresheafCategory, py: &PresheafCategory) -> Result<QFunctor> {
    if *px.source != **phi.source() || *py.source != **phi.target() {
        return Err(Error::CategoryMismatch("presheaf categories do not match the functor".into()));
    }
    let map = px
        .presheaves
        .iter()
        .map(|g| py.position(&push_forward(phi, g)).expect("pushforward is a presheaf"))
        .collect();
    QFunctor::new(px.category.clone(), py.category.clone(), map)
}

/// `μ: P(P(X)) → P(X)`, `(μ(p, G))(x) = ⋁_{(q,g)} g(x) ∘ G(q, g)`.
pub fn mu(px: &PresheafCategory, ppx: &PresheafCategory) -> Result<QFunctor> {
    if *ppx.source != *px.category {
        return Err(Error::CategoryMismatch("outer presheaf category is not over the inner one".into()));
    }
    let x = &px.source;
    let b = x.base();
    let mut map = Vec::with_capacity(ppx.presheaves.len());
    for big in &ppx.presheaves {
        let values = x
            .elements()
            .map(|i| {
                b.join_all(
                    big.ty,
                    x.type_of(i),
                    px.presheaves.iter().enumerate().map(|(k, g)| b.compose(g.values[i], big.values[k])),
                )
            })
            .collect();
        let p = Presheaf { variance: Variance::Contravariant, ty: big.ty, values };
        map.push(px.position(&p).expect("multiplication lands in presheaves"));
    }
    QFunctor::new(ppx.category.clone(), px.category.clone(), map)
}

/// `sup_Y ∘ ℙφ = φ ∘ sup_X`.
pub fn is_cocontinuous(phi: &QFunctor, budget: Budget) -> Result<bool> {
    let sx = require_sup(phi.source(), budget)?;
    let sy = require_sup(phi.target(), budget)?;
    Ok(sx.presheaves.presheaves.iter().enumerate().all(|(k, g)| {
        sy.sup_of(&push_forward(phi, g)) == Some(phi.apply(sx.map[k]))
    }))
}

/// `sup ∘ μ = sup ∘ ℙ(sup)` on `P(P(X))`.
pub fn algebra_square_holds(x: &Arc<QCategory>, budget: Budget) -> Result<bool> {
    let s = require_sup(x, budget)?;
    let px = &s.presheaves;
    let ppx = presheaf_category(&px.category, Variance::Contravariant, budget)?;
    let m = mu(px, &ppx)?;
    let lifted = apply_p(&s.functor()?, &ppx, px)?;
    Ok(ppx.category.elements().all(|k| s.map[m.apply(k)] == s.map[lifted.apply(k)]))
}
