//! Quantaloids of diagonal arrows.
//!
//! For a quantale `Q` the objects of `D(Q)` are the hermitian self-divisible
//! elements and `hom(a, b) = {λ | λ = (λ↙a)∗a = b∗(b↘λ)}`, composed by
//! `μ ∘_b λ = μ∗(b↘λ)`. The quantaloid version replaces elements by morphisms.

use crate::error::{Error, Result};
use crate::order_algebra::{Elem, Lattice, Quantale};
use crate::quantaloid::{Morphism, Quantaloid};

/// Where a diagonal quantaloid came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Values are elements of the quantale; every source morphism is `0 → 0`.
    Quantale(Quantale),
    Quantaloid(Box<Quantaloid>),
}

/// Records the source values behind the objects and arrows of a diagonal quantaloid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSource {
    origin: Origin,
    objects: Vec<Morphism>,
    homs: Vec<Vec<Elem>>,
}

impl DiagonalSource {
    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// The quantale, when built from one.
    pub fn quantale(&self) -> Option<&Quantale> {
        match &self.origin {
            Origin::Quantale(q) => Some(q),
            Origin::Quantaloid(_) => None,
        }
    }

    /// The source morphism that object `i` stands for.
    pub fn object(&self, i: usize) -> Morphism {
        self.objects[i]
    }

    /// Object whose source morphism has the given value, for quantale origins.
    pub fn object_of_element(&self, a: Elem) -> Option<usize> {
        self.objects.iter().position(|m| m.value == a)
    }

    /// Source value of an arrow of the diagonal quantaloid.
    pub fn value(&self, u: Morphism) -> Elem {
        let n = self.objects.len();
        self.homs[u.dom * n + u.cod][u.value]
    }

    /// The arrow `i → j` with the given source value, if it is diagonal.
    pub fn arrow(&self, i: usize, j: usize, value: Elem) -> Option<Morphism> {
        let n = self.objects.len();
        self.homs[i * n + j]
            .iter()
            .position(|&v| v == value)
            .map(|k| Morphism::new(i, j, k))
    }

    pub(crate) fn restrict(&self, keep: &[usize], n: usize) -> Self {
        let mut homs = Vec::new();
        for &p in keep {
            for &q in keep {
                homs.push(self.homs[p * n + q].clone());
            }
        }
        DiagonalSource {
            origin: self.origin.clone(),
            objects: keep.iter().map(|&p| self.objects[p]).collect(),
            homs,
        }
    }
}

/// Source-side operations needed to assemble a diagonal quantaloid.
trait Source {
    /// Lattice of values for arrows from object `u` to object `v`.
    fn values(&self, u: Morphism, v: Morphism) -> &Lattice;
    /// `l ∘_v k` as a source value, checking both defining formulas agree.
    fn compose(&self, u: Morphism, v: Morphism, w: Morphism, l: Elem, k: Elem) -> Result<Elem>;
    fn involute(&self, u: Morphism, v: Morphism, k: Elem) -> Option<Elem>;
    fn is_member(&self, u: Morphism, v: Morphism, k: Elem) -> bool;
}

struct QuantaleSource<'a>(&'a Quantale);

impl Source for QuantaleSource<'_> {
    fn values(&self, _: Morphism, _: Morphism) -> &Lattice {
        self.0.lattice()
    }

    fn compose(&self, _: Morphism, v: Morphism, _: Morphism, l: Elem, k: Elem) -> Result<Elem> {
        let q = self.0;
        let b = v.value;
        let first = q.mult(l, q.right_residual(b, k));
        let second = q.mult(q.left_residual(l, b), k);
        if first != second {
            return Err(Error::InternalInconsistency(format!(
                "{} after {} through {}: {} vs {}",
                q.name(l),
                q.name(k),
                q.name(b),
                q.name(first),
                q.name(second)
            )));
        }
        Ok(first)
    }

    fn involute(&self, _: Morphism, _: Morphism, k: Elem) -> Option<Elem> {
        self.0.inv(k)
    }

    fn is_member(&self, u: Morphism, v: Morphism, k: Elem) -> bool {
        let q = self.0;
        let (a, b) = (u.value, v.value);
        q.mult(q.left_residual(k, a), a) == k && q.mult(b, q.right_residual(b, k)) == k
    }
}

struct QuantaloidSource<'a>(&'a Quantaloid);

impl Source for QuantaloidSource<'_> {
    fn values(&self, u: Morphism, v: Morphism) -> &Lattice {
        self.0.hom(u.dom, v.cod)
    }

    fn compose(&self, u: Morphism, v: Morphism, w: Morphism, l: Elem, k: Elem) -> Result<Elem> {
        let q = self.0;
        let k = Morphism::new(u.dom, v.cod, k);
        let l = Morphism::new(v.dom, w.cod, l);
        let first = q.compose(l, q.right_residual(v, k));
        let second = q.compose(q.left_residual(l, v), k);
        if first != second {
            return Err(Error::InternalInconsistency(format!(
                "{} after {} through {}",
                q.describe(l),
                q.describe(k),
                q.describe(v)
            )));
        }
        Ok(first.value)
    }

    fn involute(&self, u: Morphism, v: Morphism, k: Elem) -> Option<Elem> {
        self.0.involute(Morphism::new(u.dom, v.cod, k)).map(|m| m.value)
    }

    fn is_member(&self, u: Morphism, v: Morphism, k: Elem) -> bool {
        let q = self.0;
        let k = Morphism::new(u.dom, v.cod, k);
        q.compose(q.left_residual(k, u), u) == k && q.compose(v, q.right_residual(v, k)) == k
    }
}

fn assemble<S: Source>(
    src: &S,
    names: Vec<String>,
    objects: Vec<Morphism>,
    involutive: bool,
    origin: Origin,
) -> Result<Quantaloid> {
    let n = objects.len();
    let mut members: Vec<Vec<Elem>> = Vec::with_capacity(n * n);
    let mut homs = Vec::with_capacity(n * n);
    for &u in &objects {
        for &v in &objects {
            let l = src.values(u, v);
            let m: Vec<Elem> = l.elements().filter(|&k| src.is_member(u, v, k)).collect();
            let mut leq = Vec::with_capacity(m.len() * m.len());
            for &a in &m {
                for &b in &m {
                    leq.push(l.leq(a, b));
                }
            }
            let sub = Lattice::from_order(m.iter().map(|&k| l.name(k).to_string()).collect(), leq)?;
            for (i, &a) in m.iter().enumerate() {
                for (j, &b) in m.iter().enumerate() {
                    if m[sub.join(i, j)] != l.join(a, b) {
                        return Err(Error::InternalInconsistency(format!(
                            "diagonal arrows not closed under the join of {} and {}",
                            l.name(a),
                            l.name(b)
                        )));
                    }
                }
            }
            members.push(m);
            homs.push(sub);
        }
    }
    let position = |i: usize, j: usize, k: Elem| -> Result<Elem> {
        members[i * n + j].iter().position(|&x| x == k).ok_or_else(|| {
            Error::InternalInconsistency(format!(
                "{} is not a diagonal arrow {} -> {}",
                src.values(objects[i], objects[j]).name(k),
                names[i],
                names[j]
            ))
        })
    };
    let mut compose = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut t = Vec::with_capacity(members[j * n + k].len() * members[i * n + j].len());
                for &l in &members[j * n + k] {
                    for &f in &members[i * n + j] {
                        let c = src.compose(objects[i], objects[j], objects[k], l, f)?;
                        t.push(position(i, k, c)?);
                    }
                }
                compose.push(t);
            }
        }
    }
    let mut identities = Vec::with_capacity(n);
    for (i, o) in objects.iter().enumerate() {
        identities.push(position(i, i, o.value)?);
    }
    let involution = if involutive {
        let mut j = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut row = Vec::new();
                for &k in &members[a * n + b] {
                    let image = src
                        .involute(objects[a], objects[b], k)
                        .ok_or(Error::NoInvolution)?;
                    row.push(position(b, a, image)?);
                }
                j.push(row);
            }
        }
        Some(j)
    } else {
        None
    };
    let mut dq = Quantaloid::from_tables(names, homs, compose, identities, involution)?;
    dq.set_diagonal(DiagonalSource { origin, objects, homs: members });
    Ok(dq)
}

/// `D(Q)` with its involution. A commutative quantale without a declared
/// involution uses the identity.
pub fn dq_from_quantale(q: &Quantale) -> Result<Quantaloid> {
    let q = q.involutive()?.into_owned();
    let objs = q.dq_object_candidates()?;
    let names = objs.iter().map(|&a| q.name(a).to_string()).collect();
    let objects = objs.iter().map(|&a| Morphism::new(0, 0, a)).collect();
    let src = QuantaleSource(&q);
    assemble(&src, names, objects, true, Origin::Quantale(q.clone()))
}

/// `D(𝒬)` for a quantaloid. With `use_involution` the objects are the
/// hermitian endomorphisms and the involution is extended; otherwise every
/// morphism is an object.
pub fn dq_from_quantaloid(k: &Quantaloid, use_involution: bool) -> Result<Quantaloid> {
    if use_involution && !k.is_involutive() {
        return Err(Error::NoInvolution);
    }
    let mut objects = Vec::new();
    for p in k.objects() {
        for q in k.objects() {
            for u in k.morphisms(p, q) {
                if !use_involution || (p == q && k.involute(u) == Some(u)) {
                    objects.push(u);
                }
            }
        }
    }
    let names = objects
        .iter()
        .map(|&u| {
            if k.len() == 1 {
                k.value_name(u).to_string()
            } else if u.dom == u.cod {
                format!("{}@{}", k.value_name(u), k.object_name(u.dom))
            } else {
                format!("{}@{}>{}", k.value_name(u), k.object_name(u.dom), k.object_name(u.cod))
            }
        })
        .collect();
    let src = QuantaloidSource(k);
    assemble(&src, names, objects, use_involution, Origin::Quantaloid(Box::new(k.clone())))
}

/// Outcome of [`check_embedding`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedding {
    Holds,
    Fails(String),
    NotApplicable(String),
}

/// Checks that the source embeds into its diagonal quantaloid: each
/// identity (or the unit of a quantale) is an object, and the hom-lattices
/// and composition between those objects agree with the source.
pub fn check_embedding(dq: &Quantaloid) -> Embedding {
    let Some(d) = dq.diagonal_source() else {
        return Embedding::NotApplicable("not a diagonal quantaloid".into());
    };
    match d.origin() {
        Origin::Quantale(q) => {
            let Some(e) = q.unit() else {
                return Embedding::NotApplicable("quantale has no unit".into());
            };
            let Some(i) = d.object_of_element(e) else {
                return Embedding::Fails(format!("unit {} is not an object", q.name(e)));
            };
            for a in q.elements() {
                let Some(u) = d.arrow(i, i, a) else {
                    return Embedding::Fails(format!("{} missing from hom(e, e)", q.name(a)));
                };
                for b in q.elements() {
                    let v = d.arrow(i, i, b).expect("checked above");
                    if dq.leq(u, v) != q.leq(a, b) || d.value(dq.compose(u, v)) != q.mult(a, b) {
                        return Embedding::Fails(format!("structure differs at ({}, {})", q.name(a), q.name(b)));
                    }
                }
            }
            Embedding::Holds
        }
        Origin::Quantaloid(k) => {
            let mut obj = Vec::with_capacity(k.len());
            for p in k.objects() {
                match (0..dq.len()).find(|&i| d.object(i) == k.identity(p)) {
                    Some(i) => obj.push(i),
                    None => return Embedding::Fails(format!("identity of {} is not an object", k.object_name(p))),
                }
            }
            for p in k.objects() {
                for q in k.objects() {
                    if dq.hom(obj[p], obj[q]).len() != k.hom(p, q).len() {
                        return Embedding::Fails(format!(
                            "hom({}, {}) differs in size",
                            k.object_name(p),
                            k.object_name(q)
                        ));
                    }
                    for r in k.objects() {
                        for f in k.morphisms(p, q) {
                            let Some(f2) = d.arrow(obj[p], obj[q], f.value) else {
                                return Embedding::Fails(format!("{} missing", k.describe(f)));
                            };
                            for g in k.morphisms(q, r) {
                                let Some(g2) = d.arrow(obj[q], obj[r], g.value) else {
                                    return Embedding::Fails(format!("{} missing", k.describe(g)));
                                };
                                if d.value(dq.compose(g2, f2)) != k.compose(g, f).value {
                                    return Embedding::Fails(format!(
                                        "composition differs at ({}, {})",
                                        k.describe(g),
                                        k.describe(f)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            Embedding::Holds
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn hom_names(dq: &Quantaloid, a: &str, b: &str) -> Vec<String> {
        let (i, j) = (dq.object_index(a).unwrap(), dq.object_index(b).unwrap());
        dq.hom(i, j).names().to_vec()
    }

    /// Independent membership oracle: `λ` factors as `λ1∗a` and as `b∗λ2`.
    fn factors(q: &Quantale, a: Elem, b: Elem, l: Elem) -> bool {
        q.elements().any(|x| q.mult(x, a) == l) && q.elements().any(|y| q.mult(b, y) == l)
    }

    #[test]
    fn homs_agree_with_factorization_oracle() {
        for q in catalog::all_quantales() {
            let dq = dq_from_quantale(&q).unwrap();
            let d = dq.diagonal_source().unwrap();
            for i in dq.objects() {
                for j in dq.objects() {
                    let (a, b) = (d.object(i).value, d.object(j).value);
                    let expected: Vec<Elem> = q.elements().filter(|&l| factors(&q, a, b, l)).collect();
                    let got: Vec<Elem> = dq.morphisms(i, j).map(|u| d.value(u)).collect();
                    assert_eq!(got, expected, "hom({}, {})", q.name(a), q.name(b));
                }
            }
        }
    }

    #[test]
    fn diamond_homs() {
        let dq = dq_from_quantale(&catalog::diamond_idempotent()).unwrap();
        assert_eq!(dq.object_names(), ["bot", "a", "b", "top"]);
        assert_eq!(hom_names(&dq, "a", "a"), ["bot", "a", "top"]);
        assert_eq!(hom_names(&dq, "b", "b"), ["bot", "b", "top"]);
        assert_eq!(hom_names(&dq, "top", "top"), ["bot", "top"]);
        assert_eq!(hom_names(&dq, "a", "b"), ["bot", "top"]);
        assert_eq!(hom_names(&dq, "a", "bot"), ["bot"]);
    }

    #[test]
    fn q2_homs_and_composites() {
        let dq = dq_from_quantale(&catalog::q2()).unwrap();
        assert_eq!(hom_names(&dq, "top", "b"), ["bot", "ar"]);
        assert_eq!(hom_names(&dq, "b", "top"), ["bot", "al"]);
        let (b, t) = (dq.object_index("b").unwrap(), dq.object_index("top").unwrap());
        let ar = dq.morphism(t, b, "ar").unwrap();
        let al = dq.morphism(b, t, "al").unwrap();
        assert_eq!(dq.value_name(dq.compose(al, ar)), "top");
        assert_eq!(dq.value_name(dq.compose(ar, al)), "b");
        assert!(dq.is_stable_at(b) && dq.is_stable_at(t));
    }

    #[test]
    fn unital_quantale_embeds() {
        for q in [catalog::cyclic_three(), catalog::lukasiewicz_three(), catalog::frame_three()] {
            let dq = dq_from_quantale(&q).unwrap();
            assert_eq!(check_embedding(&dq), Embedding::Holds);
        }
        let dq = dq_from_quantale(&catalog::all_top()).unwrap();
        assert!(matches!(check_embedding(&dq), Embedding::NotApplicable(_)));
    }

    #[test]
    fn one_object_diagonal_coincides() {
        for q in [catalog::cyclic_three(), catalog::lukasiewicz_three(), catalog::boolean_chain()] {
            let k = Quantaloid::from_unital_quantale(&q).unwrap();
            let a = dq_from_quantaloid(&k, true).unwrap();
            let b = dq_from_quantale(&q).unwrap();
            assert_eq!(a.to_spec(), b.to_spec());
        }
    }

    #[test]
    fn quantaloid_embeds_into_its_diagonal() {
        let dq = dq_from_quantale(&catalog::q2()).unwrap();
        for inv in [false, true] {
            let dd = dq_from_quantaloid(&dq, inv).unwrap();
            assert_eq!(check_embedding(&dd), Embedding::Holds);
        }
    }

    #[test]
    fn non_commutative_without_involution_is_rejected() {
        let mut spec = catalog::q2().to_spec();
        spec.involution = None;
        let q = spec.build().unwrap();
        assert_eq!(dq_from_quantale(&q).unwrap_err(), Error::NoInvolution);
    }
}
