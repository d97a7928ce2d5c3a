//! Quantale-valued preorders and quantale-valued sets, and their passage to
//! symmetric categories over `D(Q)`.
//!
//! A relation `ψ` on a set is read as follows: `ψ(x, x)` is the extent to
//! which `x` exists and `ψ(x, y)` the extent to which `x` is below `y`.

use std::sync::Arc;

use crate::diagonal::dq_from_quantale;
use crate::distributor::Distributor;
use crate::error::{Error, Result};
use crate::order_algebra::{Elem, Quantale};
use crate::presheaf::is_cauchy_complete;
use crate::qcat::{QCategory, TypedSet};
use crate::quantaloid::Quantaloid;
use crate::Budget;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QValuedRelation {
    pub quantale: Quantale,
    pub names: Vec<String>,
    /// `psi[x * n + y] = ψ(x, y)`.
    pub psi: Vec<Elem>,
}

impl QValuedRelation {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn at(&self, x: usize, y: usize) -> Elem {
        self.psi[x * self.len() + y]
    }

    /// `ψ(x, y) ≤ ψ(x, x) ∧ ψ(y, y)`.
    pub fn is_strict(&self) -> bool {
        let q = &self.quantale;
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| q.leq(self.at(x, y), q.meet(self.at(x, x), self.at(y, y)))))
    }

    /// Distinct elements with all four values equal.
    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|x| ((x + 1)..n).map(move |y| (x, y))).find(|&(x, y)| {
            let v = self.at(x, x);
            self.at(x, y) == v && self.at(y, x) == v && self.at(y, y) == v
        })
    }
}

fn shape(q: &Quantale, names: &[String], psi: &[Elem]) -> Result<()> {
    let n = names.len();
    if psi.len() != n * n {
        return Err(Error::InternalInconsistency("relation table has the wrong size".into()));
    }
    if let Some(&a) = psi.iter().find(|&&a| a >= q.len()) {
        return Err(Error::UnknownElement(format!("#{a}")));
    }
    for (i, s) in names.iter().enumerate() {
        if names[..i].contains(s) {
            return Err(Error::DuplicateName(s.clone()));
        }
    }
    Ok(())
}

/// First pair violating `ψ(x,x) ∗ (ψ(x,x) ↘ ψ(x,y)) = ψ(x,y) = (ψ(x,y) ↙ ψ(y,y)) ∗ ψ(y,y)`.
pub fn divisibility_witness(q: &Quantale, n: usize, psi: &[Elem]) -> Option<(usize, usize)> {
    let at = |x: usize, y: usize| psi[x * n + y];
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| {
        let (d, v, c) = (at(x, x), at(x, y), at(y, y));
        q.mult(d, q.right_residual(d, v)) != v || q.mult(q.left_residual(v, c), c) != v
    })
}

/// First triple violating `ψ(x,y) ∗ (ψ(y,y) ↘ ψ(y,z)) ≤ ψ(x,z)`.
pub fn transitivity_witness(q: &Quantale, n: usize, psi: &[Elem]) -> Option<(usize, usize, usize)> {
    let at = |x: usize, y: usize| psi[x * n + y];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !q.leq(q.mult(at(x, y), q.right_residual(at(y, y), at(y, z))), at(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn validate_qpreorder(q: &Quantale, names: Vec<String>, psi: Vec<Elem>) -> Result<QValuedRelation> {
    shape(q, &names, &psi)?;
    let n = names.len();
    if let Some((x, y)) = divisibility_witness(q, n, &psi) {
        return Err(Error::DivisibilityFails(format!("({}, {})", names[x], names[y])));
    }
    if let Some((x, y, z)) = transitivity_witness(q, n, &psi) {
        return Err(Error::TransitivityFails(format!("({}, {}, {})", names[x], names[y], names[z])));
    }
    Ok(QValuedRelation { quantale: q.clone(), names, psi })
}

/// A preorder with `ε(x, y) = ε(y, x)′`. Commutative quantales without an
/// involution use the identity.
pub fn validate_qvalued_set(q: &Quantale, names: Vec<String>, psi: Vec<Elem>) -> Result<QValuedRelation> {
    let q = q.involutive()?.into_owned();
    let mut s = validate_qpreorder(&q, names, psi)?;
    let n = s.len();
    for x in 0..n {
        for y in 0..n {
            if s.at(x, y) != q.inv(s.at(y, x)).expect("involutive") {
                return Err(Error::SymmetryFails(format!("({}, {})", s.names[x], s.names[y])));
            }
        }
    }
    s.quantale = q;
    Ok(s)
}

fn base_quantale(dq: &Quantaloid) -> Result<&Quantale> {
    dq.diagonal_source().and_then(|d| d.quantale()).ok_or(Error::WrongBase)
}

/// Types `x` by `ε(x, x)` and sets `α(x, y) = ε(x, y): ε(y, y) → ε(x, x)`.
pub fn qset_to_category(s: &QValuedRelation, dq: &Arc<Quantaloid>) -> Result<QCategory> {
    let q = base_quantale(dq)?;
    if *q != s.quantale {
        return Err(Error::WrongBase);
    }
    let d = dq.diagonal_source().expect("checked above");
    let n = s.len();
    let mut types = Vec::with_capacity(n);
    for x in 0..n {
        let e = s.at(x, x);
        types.push(d.object_of_element(e).ok_or_else(|| {
            Error::MembershipFails(format!("{} is not an object for {}", q.name(e), s.names[x]))
        })?);
    }
    let mut entries = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let v = s.at(x, y);
            entries.push(d.arrow(types[y], types[x], v).ok_or_else(|| {
                Error::MembershipFails(format!("{} at ({}, {})", q.name(v), s.names[x], s.names[y]))
            })?);
        }
    }
    let c = QCategory::new(dq.clone(), TypedSet::new(s.names.clone(), types), entries)?;
    assert!(c.is_symmetric()?, "a valued set gives a symmetric category");
    Ok(c)
}

/// `ψ(x, y)` is the value of `α(x, y)`.
pub fn category_to_qset(x: &QCategory) -> Result<QValuedRelation> {
    let q = base_quantale(x.base())?;
    let d = x.base().diagonal_source().expect("checked above");
    if let Some((a, b)) = x.symmetry_witness()? {
        return Err(Error::NotSymmetric(format!("({}, {})", x.name(a), x.name(b))));
    }
    let psi: Vec<Elem> = x.entries().iter().map(|&m| d.value(m)).collect();
    let n = x.len();
    assert!(divisibility_witness(q, n, &psi).is_none(), "categories over D(Q) satisfy divisibility");
    assert!(transitivity_witness(q, n, &psi).is_none(), "categories over D(Q) satisfy transitivity");
    Ok(validate_qvalued_set(q, x.names().to_vec(), psi).expect("symmetric categories give valued sets"))
}

/// `(DQ₀, ω)` with `ω(a, b) = ⋁ hom(b, a)`.
pub fn omega_terminal(dq: &Quantaloid) -> Result<QValuedRelation> {
    let q = base_quantale(dq)?;
    let d = dq.diagonal_source().expect("checked above");
    let n = dq.len();
    let psi: Vec<Elem> = (0..n * n).map(|k| d.value(dq.tau(k / n, k % n))).collect();
    let s = validate_qvalued_set(q, dq.object_names().to_vec(), psi)?;
    let obj = |e: Elem| d.object_of_element(e).expect("ω(a, a) is an object");
    for a in 0..n {
        for b in 0..n {
            let w = s.at(a, b);
            let (wa, wb) = (obj(s.at(a, a)), obj(s.at(b, b)));
            assert_eq!(w, s.at(a, wb), "ω(a,b) = ω(a,ω(b,b))");
            assert_eq!(w, s.at(wa, b), "ω(a,b) = ω(ω(a,a),b)");
            assert_eq!(w, s.at(wa, wb), "ω(a,b) = ω(ω(a,a),ω(b,b))");
        }
    }
    Ok(s)
}

/// The category `(DQ, ξ)` of the terminal valued set.
pub fn omega_category(dq: &Arc<Quantaloid>) -> Result<QCategory> {
    qset_to_category(&omega_terminal(dq)?, dq)
}

/// `Φ(a, x) = τ(ω(a,a), ε(x,x))` and `Ψ(x, a) = τ(ε(x,x), ω(a,a))`.
pub fn terminal_morphism(x: &Arc<QCategory>, omega: &Arc<QCategory>) -> Result<(Distributor, Distributor)> {
    let b = x.base();
    let mut phi = Vec::with_capacity(omega.len() * x.len());
    for a in omega.elements() {
        for e in x.elements() {
            phi.push(b.tau(omega.type_of(a), x.type_of(e)));
        }
    }
    let mut psi = Vec::with_capacity(omega.len() * x.len());
    for e in x.elements() {
        for a in omega.elements() {
            psi.push(b.tau(x.type_of(e), omega.type_of(a)));
        }
    }
    let phi = Distributor::new(x.clone(), omega.clone(), phi)?;
    let psi = Distributor::new(omega.clone(), x.clone(), psi)?;
    assert!(phi.is_adjoint_pair(&psi), "the terminal morphism is a left adjoint");
    Ok((phi, psi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prop75Report {
    pub integral: bool,
    pub cauchy_complete: bool,
    pub separated: bool,
}

/// Integrality, completeness and separation of `(DQ₀, ω)`, each computed directly.
pub fn prop75_check(q: &Quantale, budget: Budget) -> Result<Prop75Report> {
    let unit = q.unit().ok_or(Error::NotUnital)?;
    let dq = Arc::new(dq_from_quantale(q)?);
    let s = omega_terminal(&dq)?;
    let c = qset_to_category(&s, &dq)?;
    let separated = c.is_separated();
    assert_eq!(separated, s.separation_witness().is_none(), "two separation readings agree");
    let r = Prop75Report {
        integral: unit == q.top(),
        cauchy_complete: is_cauchy_complete(&c, budget)?,
        separated,
    };
    assert!(
        r.integral == r.cauchy_complete && r.cauchy_complete == r.separated,
        "integral, complete and separated coincide"
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn unit_everywhere_is_a_valued_set() {
        let q = catalog::lukasiewicz_three();
        let e = q.unit().unwrap();
        validate_qvalued_set(&q, names(2), vec![e; 4]).unwrap();
    }

    #[test]
    fn omega_over_q2() {
        let dq = dq_from_quantale(&catalog::q2()).unwrap();
        let s = omega_terminal(&dq).unwrap();
        let at = |a: &str, b: &str| {
            let (a, b) = (dq.object_index(a).unwrap(), dq.object_index(b).unwrap());
            s.quantale.name(s.at(a, b)).to_string()
        };
        assert_eq!(at("top", "b"), "al");
        assert_eq!(at("b", "b"), "b");
        assert_eq!(at("top", "top"), "top");
    }

    #[test]
    fn omega_over_q5_is_top_on_unit_and_top() {
        let dq = dq_from_quantale(&catalog::cyclic_three()).unwrap();
        let s = omega_terminal(&dq).unwrap();
        for a in ["top", "e"] {
            for b in ["top", "e"] {
                let v = s.at(dq.object_index(a).unwrap(), dq.object_index(b).unwrap());
                assert_eq!(s.quantale.name(v), "top");
            }
        }
    }

    #[test]
    fn singleton_b_round_trip() {
        let dq = Arc::new(dq_from_quantale(&catalog::q2()).unwrap());
        let q = base_quantale(&dq).unwrap().clone();
        let s = validate_qvalued_set(&q, names(1), vec![q.index_of("b").unwrap()]).unwrap();
        let c = qset_to_category(&s, &dq).unwrap();
        assert_eq!(dq.object_name(c.type_of(0)), "b");
        assert_eq!(category_to_qset(&c).unwrap(), s);
    }

    #[test]
    fn failures_carry_witnesses() {
        let q = catalog::q2();
        let (b, c) = (q.index_of("b").unwrap(), q.index_of("c").unwrap());
        assert!(matches!(
            validate_qpreorder(&q, names(1), vec![c]),
            Err(Error::DivisibilityFails(_))
        ));
        let (al, bot, t) = (q.index_of("al").unwrap(), q.bottom(), q.top());
        validate_qpreorder(&q, names(2), vec![t, al, bot, b]).unwrap();
        assert!(matches!(
            validate_qvalued_set(&q, names(2), vec![t, al, bot, b]),
            Err(Error::SymmetryFails(_))
        ));
    }

    #[test]
    fn prop75_on_fixtures() {
        let r = prop75_check(&catalog::cyclic_three(), Budget::default()).unwrap();
        assert!(!r.integral && !r.cauchy_complete && !r.separated);
        for q in [catalog::boolean_chain(), catalog::lukasiewicz_three()] {
            let r = prop75_check(&q, Budget::default()).unwrap();
            assert!(r.integral && r.cauchy_complete && r.separated);
        }
        assert_eq!(prop75_check(&catalog::diamond_idempotent(), Budget::default()), Err(Error::NotUnital));
    }

    #[test]
    fn terminal_morphism_into_itself_is_xi() {
        let dq = Arc::new(dq_from_quantale(&catalog::q2()).unwrap());
        let omega = Arc::new(omega_category(&dq).unwrap());
        let (phi, _) = terminal_morphism(&omega, &omega).unwrap();
        assert_eq!(phi.entries(), omega.entries());
    }
}
