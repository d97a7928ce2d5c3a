//! The weak subobject classifier of type `r` among separated cocomplete
//! categories: right-sided morphisms out of `r` with `ρ(u, v) = u ↙ v`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presheaf::{push_forward, require_sup, SupMap};
use crate::qcat::{QCategory, QFunctor, TypedSet};
use crate::quantaloid::{Morphism, Quantaloid};
use crate::Budget;

#[derive(Clone, Debug)]
pub struct Classifier {
    pub r: usize,
    /// Carrier, ordered by codomain then value.
    pub elements: Vec<Morphism>,
    pub category: Arc<QCategory>,
    pub sup: SupMap,
}

fn element_name(b: &Quantaloid, u: Morphism) -> String {
    format!("{}@{}", b.value_name(u), b.object_name(u.cod))
}

/// `sup(p, g) = ⋀_u g(u) ↘ u` on the classifier of type `r`.
fn sup_formula(b: &Quantaloid, r: usize, p: usize, elements: &[Morphism], g: &[Morphism]) -> Morphism {
    b.meet_all(r, p, elements.iter().zip(g).map(|(&u, &gu)| b.right_residual(gu, u)))
}

pub fn build_classifier(base: &Arc<Quantaloid>, r: usize, budget: Budget) -> Result<Classifier> {
    if r >= base.len() {
        return Err(Error::UnknownObject(format!("#{r}")));
    }
    let b = base.as_ref();
    let elements = b.right_sided_morphisms(r);
    let carrier = TypedSet::new(
        elements.iter().map(|&u| element_name(b, u)).collect(),
        elements.iter().map(|u| u.cod).collect(),
    );
    let mut entries = Vec::with_capacity(elements.len() * elements.len());
    for &u in &elements {
        for &v in &elements {
            entries.push(b.left_residual(u, v));
        }
    }
    let category = Arc::new(QCategory::new(base.clone(), carrier, entries)?);
    let sup = require_sup(&category, budget)?;
    for (k, g) in sup.presheaves.presheaves.iter().enumerate() {
        let s = sup_formula(b, r, g.ty, &elements, &g.values);
        assert!(b.is_right_sided(s), "sup of a presheaf on the classifier is right-sided");
        assert_eq!(elements[sup.map[k]], s, "classifier sup agrees with the residual formula");
    }
    Ok(Classifier { r, elements, category, sup })
}

impl Classifier {
    pub fn base(&self) -> &Arc<Quantaloid> {
        self.category.base()
    }

    pub fn position(&self, u: Morphism) -> Option<usize> {
        self.elements.iter().position(|&v| v == u)
    }

    /// The residual formula for the sup of `(p, g)`.
    pub fn sup_by_formula(&self, p: usize, g: &[Morphism]) -> Morphism {
        sup_formula(self.base(), self.r, p, &self.elements, g)
    }
}

/// `q ↦ τ(q, r)` from `(Q, τ)`.
pub fn true_arrow(cls: &Classifier) -> Result<QFunctor> {
    let b = cls.base().clone();
    let terminal = Arc::new(QCategory::terminal(b.clone()));
    let map = b
        .objects()
        .map(|q| cls.position(b.tau(q, cls.r)).expect("τ(q, r) is right-sided"))
        .collect();
    let t = QFunctor::new(terminal, cls.category.clone(), map)?;
    for q in b.objects() {
        for (k, &u) in cls.elements.iter().enumerate() {
            assert_eq!(
                cls.category.alpha(t.apply(q), k),
                b.tau(q, u.cod),
                "true arrow satisfies the point condition"
            );
        }
    }
    Ok(t)
}

/// `α(φ(r'), x) = τ(r', |x|)` for every object `r'` and element `x`.
pub fn is_point(phi: &QFunctor) -> bool {
    let b = phi.source().base();
    if **phi.source() != QCategory::terminal(b.clone()) {
        return false;
    }
    let x = phi.target();
    b.objects()
        .all(|q| x.elements().all(|e| x.alpha(phi.apply(q), e) == b.tau(q, x.type_of(e))))
}

/// `χ(x) = ⋁_y α(x, φ(y)) ∘ τ(|y|, r)`.
pub fn characteristic_form(phi: &QFunctor, r: usize) -> Vec<Morphism> {
    let (y, x) = (phi.source(), phi.target());
    let b = x.base();
    x.elements()
        .map(|e| {
            let chi = b.join_all(
                r,
                x.type_of(e),
                y.elements().map(|d| b.compose(x.alpha(e, phi.apply(d)), b.tau(y.type_of(d), r))),
            );
            assert!(b.is_right_sided(chi), "characteristic values are right-sided");
            chi
        })
        .collect()
}

/// The characteristic form as a cocontinuous functor into the classifier.
pub fn characteristic_functor(cls: &Classifier, phi: &QFunctor, budget: Budget) -> Result<QFunctor> {
    let chi = characteristic_form(phi, cls.r);
    let chi = into_classifier(cls, phi.target(), &chi)?;
    assert!(crate::presheaf::is_cocontinuous(&chi, budget)?, "characteristic morphism is cocontinuous");
    Ok(chi)
}

fn into_classifier(cls: &Classifier, x: &Arc<QCategory>, values: &[Morphism]) -> Result<QFunctor> {
    let map = values
        .iter()
        .map(|&u| cls.position(u).ok_or_else(|| Error::InternalInconsistency(format!("{} is not right-sided", cls.base().describe(u)))))
        .collect::<Result<Vec<_>>>()?;
    QFunctor::new(x.clone(), cls.category.clone(), map)
}

#[derive(Clone, Debug)]
pub struct PointReport {
    pub chi: QFunctor,
    pub cones_verified: usize,
    /// Supplied functors that are not cones over the square.
    pub cones_skipped: usize,
}

impl fmt::Display for PointReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "square commutes; verified on {} cones", self.cones_verified)?;
        if self.cones_skipped > 0 {
            write!(f, " ({} non-cones skipped)", self.cones_skipped)?;
        }
        Ok(())
    }
}

/// `χ = α(·, φ(r))`, with the pullback property checked on each supplied
/// cocontinuous `ψ` satisfying `α(ψ(y), φ(r)) = τ(|y|, r)`.
pub fn classify_point(cls: &Classifier, phi: &QFunctor, cones: &[QFunctor], budget: Budget) -> Result<PointReport> {
    let b = cls.base().clone();
    let r = cls.r;
    if !b.is_stable_at(r) {
        return Err(Error::NotStable(b.object_name(r).to_string()));
    }
    if !is_point(phi) {
        return Err(Error::NotApplicable("functor is not a point".into()));
    }
    let x = phi.target();
    require_sup(x, budget)?;
    let top = phi.apply(r);
    let values: Vec<Morphism> = x.elements().map(|e| x.alpha(e, top)).collect();
    let chi = into_classifier(cls, x, &values)?;
    for q in b.objects() {
        assert_eq!(x.alpha(phi.apply(q), top), b.tau(q, r), "classifying square commutes");
    }
    let (mut verified, mut skipped) = (0, 0);
    for psi in cones {
        if **psi.target() != **x {
            return Err(Error::CategoryMismatch("cone does not land in the classified category".into()));
        }
        let y = psi.source();
        let is_cone = y.elements().all(|d| x.alpha(psi.apply(d), top) == b.tau(y.type_of(d), r))
            && crate::presheaf::is_cocontinuous(psi, budget)?;
        if !is_cone {
            skipped += 1;
            continue;
        }
        if let Some(d) = y.elements().find(|&d| psi.apply(d) != phi.apply(y.type_of(d))) {
            return Err(Error::ConeFails(format!(
                "{} goes to {}, not through the point",
                y.name(d),
                x.name(psi.apply(d))
            )));
        }
        verified += 1;
    }
    Ok(PointReport { chi, cones_verified: verified, cones_skipped: skipped })
}

/// The binary product of a classifier with itself:
/// pairs of equal type with `(ρ×ρ)((λ1,λ2),(μ1,μ2)) = (λ1↙μ1) ∧ (λ2↙μ2)`.
#[derive(Clone, Debug)]
pub struct ClassifierSquare {
    pub pairs: Vec<(usize, usize)>,
    pub category: Arc<QCategory>,
    pub sup: SupMap,
    pub projections: [QFunctor; 2],
}

pub fn classifier_square(cls: &Classifier, budget: Budget) -> Result<ClassifierSquare> {
    let b = cls.base().clone();
    let c = &cls.category;
    let pairs: Vec<(usize, usize)> = c
        .elements()
        .flat_map(|i| c.elements().map(move |k| (i, k)))
        .filter(|&(i, k)| c.type_of(i) == c.type_of(k))
        .collect();
    let carrier = TypedSet::new(
        pairs.iter().map(|&(i, k)| format!("({},{})", c.name(i), c.name(k))).collect(),
        pairs.iter().map(|&(i, _)| c.type_of(i)).collect(),
    );
    let mut entries = Vec::with_capacity(pairs.len() * pairs.len());
    for &(i1, i2) in &pairs {
        for &(k1, k2) in &pairs {
            entries.push(b.meet(c.alpha(i1, k1), c.alpha(i2, k2)));
        }
    }
    let category = Arc::new(QCategory::new(b, carrier, entries)?);
    let projections = [
        QFunctor::new(category.clone(), c.clone(), pairs.iter().map(|p| p.0).collect())?,
        QFunctor::new(category.clone(), c.clone(), pairs.iter().map(|p| p.1).collect())?,
    ];
    let sup = require_sup(&category, budget)?;
    for (k, g) in sup.presheaves.presheaves.iter().enumerate() {
        let comp = |i: usize| {
            cls.sup
                .sup_of(&push_forward(&projections[i], g))
                .expect("projected presheaf is enumerated")
        };
        assert_eq!(pairs[sup.map[k]], (comp(0), comp(1)), "product sup is componentwise");
    }
    Ok(ClassifierSquare { pairs, category, sup, projections })
}

/// `⟨true_r, true_r⟩` into the square.
pub fn diagonal_point(cls: &Classifier, sq: &ClassifierSquare) -> Result<QFunctor> {
    let t = true_arrow(cls)?;
    let map = t
        .map()
        .iter()
        .map(|&u| sq.pairs.iter().position(|&p| p == (u, u)).expect("diagonal pair exists"))
        .collect();
    QFunctor::new(t.source().clone(), sq.category.clone(), map)
}

/// The characteristic morphism of the diagonal point, per pair.
pub fn chi_wedge(cls: &Classifier, sq: &ClassifierSquare) -> Result<Vec<Morphism>> {
    let point = diagonal_point(cls, sq)?;
    Ok(characteristic_form(&point, cls.r))
}
