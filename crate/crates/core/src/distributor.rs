//! Distributors between Q-categories: composition, adjunction, and the
//! (epi, extremal mono) factorization of left adjoints.

use std::sync::Arc;

use crate::error::{Error, Result, Violation};
use crate::order_algebra::Elem;
use crate::presheaf::{presingleton_space, Presingleton};
use crate::qcat::{same_base, QCategory, QFunctor, TypedSet};
use crate::quantaloid::Morphism;
use crate::Budget;

/// `Φ: X → Y` with `Φ(y, x): |x| → |y|`, compatible with both hom-assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distributor {
    source: Arc<QCategory>,
    target: Arc<QCategory>,
    matrix: Vec<Morphism>,
}

impl Distributor {
    /// Validates `entries[y * |X| + x] = Φ(y, x)`, reporting every failure.
    pub fn new(source: Arc<QCategory>, target: Arc<QCategory>, entries: Vec<Morphism>) -> Result<Self> {
        if !same_base(source.base(), target.base()) {
            return Err(Error::BaseMismatch);
        }
        if entries.len() != source.len() * target.len() {
            return Err(Error::InternalInconsistency("distributor matrix has the wrong size".into()));
        }
        let d = Distributor { source, target, matrix: entries };
        let v = d.violations();
        if v.is_empty() {
            Ok(d)
        } else {
            Err(Error::InvalidDistributor(v))
        }
    }

    /// Like [`Distributor::new`] with values in `hom(|x|, |y|)`.
    pub fn from_values(source: Arc<QCategory>, target: Arc<QCategory>, values: Vec<Elem>) -> Result<Self> {
        let mut entries = Vec::with_capacity(values.len());
        for y in target.elements() {
            for x in source.elements() {
                let v = *values
                    .get(y * source.len() + x)
                    .ok_or_else(|| Error::InternalInconsistency("distributor matrix has the wrong size".into()))?;
                let m = Morphism::new(source.type_of(x), target.type_of(y), v);
                if v >= source.base().hom(m.dom, m.cod).len() {
                    return Err(Error::UnknownElement(format!("#{v}")));
                }
                entries.push(m);
            }
        }
        Self::new(source, target, entries)
    }

    fn violations(&self) -> Vec<Violation> {
        let (x, y) = (&self.source, &self.target);
        let b = x.base();
        let mut out = Vec::new();
        for j in y.elements() {
            for i in x.elements() {
                let m = self.at(j, i);
                if m.dom != x.type_of(i) || m.cod != y.type_of(j) || m.value >= b.hom(m.dom, m.cod).len() {
                    out.push(Violation::TypeMismatch(format!("({}, {})", y.name(j), x.name(i))));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for j in y.elements() {
            for i in x.elements() {
                for j2 in y.elements() {
                    if !b.leq(b.compose(y.alpha(j, j2), self.at(j2, i)), self.at(j, i)) {
                        out.push(Violation::NotCompatible(format!(
                            "target ({}, {}) at {}",
                            y.name(j),
                            y.name(j2),
                            x.name(i)
                        )));
                    }
                }
                for i2 in x.elements() {
                    if !b.leq(b.compose(self.at(j, i), x.alpha(i, i2)), self.at(j, i2)) {
                        out.push(Violation::NotCompatible(format!(
                            "source ({}, {}) at {}",
                            x.name(i),
                            x.name(i2),
                            y.name(j)
                        )));
                    }
                }
            }
        }
        if out.is_empty() {
            for j in y.elements() {
                for i in x.elements() {
                    let m = self.at(j, i);
                    assert_eq!(b.compose(y.alpha(j, j), m), m, "target unit law for a distributor");
                    assert_eq!(b.compose(m, x.alpha(i, i)), m, "source unit law for a distributor");
                }
            }
        }
        out
    }

    /// The hom-assignment of `X` as a distributor `X → X`; the unit for `⊗`.
    pub fn identity(x: Arc<QCategory>) -> Self {
        let matrix = x.entries().to_vec();
        Distributor { source: x.clone(), target: x, matrix }
    }

    pub fn source(&self) -> &Arc<QCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory> {
        &self.target
    }

    /// `Φ(y, x)`.
    pub fn at(&self, y: usize, x: usize) -> Morphism {
        self.matrix[y * self.source.len() + x]
    }

    pub fn entries(&self) -> &[Morphism] {
        &self.matrix
    }

    /// `(Ψ ⊗ Φ)(z, x) = ⋁_y Ψ(z, y) ∘ Φ(y, x)` where `self` is `Ψ`.
    pub fn after(&self, phi: &Distributor) -> Result<Distributor> {
        if !same_base(self.source.base(), phi.source.base()) {
            return Err(Error::BaseMismatch);
        }
        if *phi.target != *self.source {
            return Err(Error::CategoryMismatch("middle categories differ".into()));
        }
        let b = phi.source.base();
        let (x, y, z) = (&phi.source, &phi.target, &self.target);
        let mut matrix = Vec::with_capacity(z.len() * x.len());
        for k in z.elements() {
            for i in x.elements() {
                matrix.push(b.join_all(
                    x.type_of(i),
                    z.type_of(k),
                    y.elements().map(|j| b.compose(self.at(k, j), phi.at(j, i))),
                ));
            }
        }
        Ok(Distributor { source: x.clone(), target: z.clone(), matrix })
    }

    /// `Ψ(x, y) = ⋀_{y1} Φ(y1, x) ↘ β(y1, y)`.
    ///
    /// Always returns this candidate; whether it is a right adjoint is a
    /// separate question answered by [`Distributor::adjoint_witness`].
    pub fn right_adjoint(&self) -> Distributor {
        let (x, y) = (&self.source, &self.target);
        let b = x.base();
        let mut matrix = Vec::with_capacity(x.len() * y.len());
        for i in x.elements() {
            for j in y.elements() {
                matrix.push(b.meet_all(
                    y.type_of(j),
                    x.type_of(i),
                    y.elements().map(|j1| b.right_residual(self.at(j1, i), y.alpha(j1, j))),
                ));
            }
        }
        Distributor::new(y.clone(), x.clone(), matrix).expect("the residual candidate is a distributor")
    }

    /// First failing instance of the adjunction conditions for `self ⊣ psi`.
    pub fn adjoint_witness(&self, psi: &Distributor) -> Option<String> {
        let (x, y) = (&self.source, &self.target);
        if *psi.source != **y || *psi.target != **x {
            return Some("categories do not match".into());
        }
        let b = x.base();
        for i in x.elements() {
            let t = x.type_of(i);
            let s = b.join_all(t, t, y.elements().map(|j| b.compose(psi.at(i, j), self.at(j, i))));
            if !b.leq(b.identity(t), s) {
                return Some(format!("unit fails at {}", x.name(i)));
            }
        }
        for j1 in y.elements() {
            for j2 in y.elements() {
                for i in x.elements() {
                    if !b.leq(b.compose(self.at(j1, i), psi.at(i, j2)), y.alpha(j1, j2)) {
                        return Some(format!("counit fails at ({}, {}) through {}", y.name(j1), y.name(j2), x.name(i)));
                    }
                }
            }
        }
        None
    }

    pub fn is_adjoint_pair(&self, psi: &Distributor) -> bool {
        self.adjoint_witness(psi).is_none()
    }

    pub fn is_left_adjoint(&self) -> bool {
        self.is_adjoint_pair(&self.right_adjoint())
    }

    /// The right adjoint, or `NotLeftAdjoint`.
    pub fn require_left_adjoint(&self) -> Result<Distributor> {
        let psi = self.right_adjoint();
        match self.adjoint_witness(&psi) {
            None => Ok(psi),
            Some(w) => Err(Error::NotLeftAdjoint(w)),
        }
    }

    pub fn leq(&self, other: &Distributor) -> bool {
        let b = self.source.base();
        self.matrix.len() == other.matrix.len()
            && self.matrix.iter().zip(&other.matrix).all(|(&u, &v)| u.dom == v.dom && u.cod == v.cod && b.leq(u, v))
    }

    /// `β(y, y) ≤ ⋁_x Φ(y, x) ∘ Ψ(x, y)`.
    pub fn is_epi(&self) -> Result<bool> {
        let psi = self.require_left_adjoint()?;
        let (x, y) = (&self.source, &self.target);
        let b = x.base();
        let holds = y.elements().all(|j| {
            let t = y.type_of(j);
            b.leq(y.alpha(j, j), b.join_all(t, t, x.elements().map(|i| b.compose(self.at(j, i), psi.at(i, j)))))
        });
        if holds {
            let back = self.after_right(&psi);
            assert_eq!(back.matrix, y.entries(), "an epi satisfies the two-sided form");
        }
        Ok(holds)
    }

    /// `Ψ(x1, y) ∘ Φ(y, x2) ≤ α(x1, x2)`.
    pub fn is_extremal_mono(&self) -> Result<bool> {
        let psi = self.require_left_adjoint()?;
        let (x, y) = (&self.source, &self.target);
        let b = x.base();
        let holds = x.elements().all(|i1| {
            x.elements().all(|i2| y.elements().all(|j| b.leq(b.compose(psi.at(i1, j), self.at(j, i2)), x.alpha(i1, i2))))
        });
        if holds {
            let round = psi.after(self).expect("adjoint pair composes");
            assert_eq!(round.matrix, x.entries(), "an extremal mono satisfies the two-sided form");
        }
        Ok(holds)
    }

    /// `Ψ ⊗ Φ = α` and `Φ ⊗ Ψ = β`.
    pub fn is_iso(&self) -> Result<bool> {
        let psi = self.require_left_adjoint()?;
        let there = psi.after(self)?;
        let back = self.after_right(&psi);
        Ok(there.matrix == self.source.entries() && back.matrix == self.target.entries())
    }

    fn after_right(&self, psi: &Distributor) -> Distributor {
        self.after(psi).expect("adjoint pair composes")
    }
}

/// `φ_b(y, x) = β(y, φ(x))` and `φ^b(x, y) = β(φ(x), y)`.
pub fn graph_of_functor(phi: &QFunctor) -> (Distributor, Distributor) {
    let (x, y) = (phi.source(), phi.target());
    let mut left = Vec::with_capacity(x.len() * y.len());
    for j in y.elements() {
        for i in x.elements() {
            left.push(y.alpha(j, phi.apply(i)));
        }
    }
    let mut right = Vec::with_capacity(x.len() * y.len());
    for i in x.elements() {
        for j in y.elements() {
            right.push(y.alpha(phi.apply(i), j));
        }
    }
    let left = Distributor::new(x.clone(), y.clone(), left).expect("functor graph is a distributor");
    let right = Distributor::new(y.clone(), x.clone(), right).expect("functor cograph is a distributor");
    assert!(left.is_adjoint_pair(&right), "functor graphs are adjoint");
    left.assert_right_adjoint(&right);
    (left, right)
}

impl Distributor {
    fn assert_right_adjoint(&self, psi: &Distributor) {
        assert_eq!(self.right_adjoint().matrix, psi.matrix, "right adjoints are unique");
    }
}

/// `Φ(p, x) = τ(p, |x|)`, the unique left adjoint into `(Q, τ)`.
pub fn terminal_distributor(x: Arc<QCategory>) -> Distributor {
    let t = Arc::new(QCategory::terminal(x.base().clone()));
    let b = x.base().clone();
    let mut m = Vec::with_capacity(t.len() * x.len());
    for p in t.elements() {
        for i in x.elements() {
            m.push(b.tau(p, x.type_of(i)));
        }
    }
    let phi = Distributor::new(x, t, m).expect("terminal distributor is a distributor");
    debug_assert!(phi.is_left_adjoint());
    phi
}

/// `Φ = Θ ⊗ Ξ` with `Ξ: X → Z` epi and `Θ: Z → Y` extremal mono.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub middle: Arc<QCategory>,
    /// The presingletons of the target that make up the middle category.
    pub points: Vec<Presingleton>,
    pub epi: Distributor,
    pub mono: Distributor,
}

/// Factors a left adjoint through the part of the target's presingleton space
/// generated by the columns of `phi`.
pub fn factorize(phi: &Distributor, budget: Budget) -> Result<Factorization> {
    let psi = phi.require_left_adjoint()?;
    let (x, y) = (phi.source(), phi.target());
    let b = x.base().clone();
    let space = presingleton_space(y, budget)?;
    let yhat = &space.category;
    let mu: Vec<usize> = x
        .elements()
        .map(|i| {
            let want = Presingleton {
                ty: x.type_of(i),
                f: y.elements().map(|j| psi.at(i, j)).collect(),
                g: y.elements().map(|j| phi.at(j, i)).collect(),
            };
            space
                .position(&want)
                .ok_or_else(|| Error::InternalInconsistency(format!("column {} is not a presingleton", x.name(i))))
        })
        .collect::<Result<_>>()?;
    let keep: Vec<usize> = yhat
        .elements()
        .filter(|&m| {
            let t = yhat.type_of(m);
            let s = b.join_all(t, t, mu.iter().map(|&mx| b.compose(yhat.alpha(m, mx), yhat.alpha(mx, m))));
            yhat.alpha(m, m) == s
        })
        .collect();
    let z = Arc::new(yhat.restrict(&keep));
    let mut xi = Vec::with_capacity(keep.len() * x.len());
    for &m in &keep {
        for &mx in &mu {
            xi.push(yhat.alpha(m, mx));
        }
    }
    let mut theta = Vec::with_capacity(y.len() * keep.len());
    for j in y.elements() {
        for &m in &keep {
            theta.push(yhat.alpha(space.representatives[j], m));
        }
    }
    let epi = Distributor::new(x.clone(), z.clone(), xi)?;
    let mono = Distributor::new(z.clone(), y.clone(), theta)?;
    let composite = mono.after(&epi)?;
    if composite.matrix != phi.matrix {
        return Err(Error::InternalInconsistency("factorization does not recompose".into()));
    }
    if !epi.is_epi()? || !mono.is_extremal_mono()? {
        return Err(Error::InternalInconsistency("factors lack the expected properties".into()));
    }
    let points = keep.iter().map(|&m| space.presingletons[m].clone()).collect();
    Ok(Factorization { middle: z, points, epi, mono })
}

/// `Ξ2 ⊗ Υ1: Z1 → Z2`, where `Υ1` is the right adjoint of `Ξ1`. Both
/// factorizations must start from the same category.
pub fn mediating(first: &Factorization, second: &Factorization) -> Result<Distributor> {
    let upsilon = first.epi.require_left_adjoint()?;
    second.epi.after(&upsilon)
}

/// Relabels a category along a permutation: element `k` of the result is
/// element `order[k]` of `x`.
pub fn permuted(x: &QCategory, order: &[usize]) -> QCategory {
    let names = order.iter().map(|&i| x.name(i).to_string()).collect();
    let types = order.iter().map(|&i| x.type_of(i)).collect();
    let mut entries = Vec::with_capacity(order.len() * order.len());
    for &i in order {
        for &j in order {
            entries.push(x.alpha(i, j));
        }
    }
    QCategory::new(x.base().clone(), TypedSet::new(names, types), entries).expect("permutation preserves validity")
}

/// `phi` with its target relabelled by `order`.
pub fn permute_target(phi: &Distributor, order: &[usize]) -> Result<Distributor> {
    let y = Arc::new(permuted(phi.target(), order));
    let x = phi.source().clone();
    let mut entries = Vec::with_capacity(phi.entries().len());
    for &j in order {
        for i in x.elements() {
            entries.push(phi.at(j, i));
        }
    }
    Distributor::new(x, y, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::diagonal::dq_from_quantale;
    use crate::quantaloid::Quantaloid;

    fn base() -> Arc<Quantaloid> {
        Arc::new(dq_from_quantale(&catalog::q2()).unwrap())
    }

    fn discrete(base: &Arc<Quantaloid>, types: &[&str]) -> Arc<QCategory> {
        let names = (0..types.len()).map(|i| format!("x{i}")).collect();
        let types = types.iter().map(|t| base.object_index(t).unwrap()).collect();
        Arc::new(QCategory::discrete(base.clone(), TypedSet::new(names, types)).unwrap())
    }

    #[test]
    fn identity_is_unit_and_self_adjoint() {
        let b = base();
        let t = Arc::new(QCategory::terminal(b));
        let id = Distributor::identity(t.clone());
        assert_eq!(id.after(&id).unwrap(), id);
        assert_eq!(id.right_adjoint(), id);
        assert!(id.is_iso().unwrap());
        assert!(id.is_epi().unwrap() && id.is_extremal_mono().unwrap());
    }

    #[test]
    fn terminal_distributor_of_singleton_b() {
        let b = base();
        let x = discrete(&b, &["b"]);
        let phi = terminal_distributor(x);
        let t = phi.target().clone();
        let v = |p: &str| b.value_name(phi.at(t.index_of(p).unwrap(), 0)).to_string();
        assert_eq!(v("top"), "al");
        assert_eq!(v("b"), "b");
        assert_eq!(v("bot"), "bot");
    }

    #[test]
    fn point_into_two_points_is_not_epi() {
        let b = base();
        let x = discrete(&b, &["b"]);
        let y = discrete(&b, &["b", "b"]);
        let f = QFunctor::new(x, y, vec![0]).unwrap();
        let (phi, _) = graph_of_functor(&f);
        assert!(!phi.is_epi().unwrap());
        assert!(phi.is_extremal_mono().unwrap());
        assert!(!phi.is_iso().unwrap());
    }

    #[test]
    fn zero_matrix_is_not_left_adjoint() {
        let b = base();
        let x = discrete(&b, &["b"]);
        let z = Distributor::from_values(x.clone(), x.clone(), vec![0]).unwrap();
        assert!(!z.is_left_adjoint());
        assert!(matches!(z.is_epi(), Err(Error::NotLeftAdjoint(_))));
    }

    #[test]
    fn wrong_entry_type_is_reported() {
        let b = base();
        let x = discrete(&b, &["b"]);
        let top = b.object_index("top").unwrap();
        let e = Distributor::new(x.clone(), x, vec![b.identity(top)]).unwrap_err();
        assert!(matches!(e, Error::InvalidDistributor(v) if matches!(v[0], Violation::TypeMismatch(_))));
    }
}
