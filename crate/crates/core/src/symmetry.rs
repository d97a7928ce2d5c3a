//! Whether Cauchy completion preserves symmetry: singleton tests, the
//! system criterion, quantale-level sufficient conditions and a bounded
//! exhaustive search over small symmetric categories.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order_algebra::Quantale;
use crate::presheaf::{enumerate_presingletons, is_cauchy_complete, Presingleton};
use crate::qcat::{QCategory, TypedSet};
use crate::quantaloid::{Morphism, Quantaloid};
use crate::Budget;

/// `g = j ∘ f`.
pub fn is_singleton(base: &Quantaloid, m: &Presingleton) -> Result<bool> {
    for (&f, &g) in m.f.iter().zip(&m.g) {
        if g != base.j(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every presingleton of a symmetric category that is not a singleton.
pub fn non_singletons(x: &QCategory, budget: Budget) -> Result<Vec<Presingleton>> {
    let b = x.base();
    if let Some((p, q)) = x.symmetry_witness()? {
        return Err(Error::NotSymmetric(format!("({}, {})", x.name(p), x.name(q))));
    }
    let mut out = Vec::new();
    for m in enumerate_presingletons(x, budget)? {
        let rep = check_system(b, m.ty, &m.f, &m.g)?;
        assert!(rep.hypothesis_a && rep.hypothesis_b.is_empty(), "presingletons of symmetric categories give admissible systems");
        if !is_singleton(b, &m)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// The first presingleton of a symmetric category that is not a singleton.
pub fn completion_symmetric_for(x: &QCategory, budget: Budget) -> Result<Option<Presingleton>> {
    Ok(non_singletons(x, budget)?.into_iter().next())
}

/// Which of the four compatibility inequalities fails for `(i1, i2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemInequality {
    /// `u1 ∘ v1 ∘ u2 ≤ u2`
    UVU,
    /// `v1 ∘ u2 ∘ v2 ≤ v1`
    VUV,
    /// `j(v1) ∘ v1 ∘ u2 ≤ j(v2)`
    JVVU,
    /// `v1 ∘ u2 ∘ j(u2) ≤ j(u1)`
    VUJU,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemReport {
    /// `1_{p0} ≤ ⋁ u_i ∘ v_i`
    pub hypothesis_a: bool,
    /// Failures of the pairwise inequalities.
    pub hypothesis_b: Vec<(usize, usize, SystemInequality)>,
    /// `1_{p0} ≤ ⋁ u_i ∘ j(u_i)`
    pub conclusion_u: bool,
    /// `1_{p0} ≤ ⋁ j(v_i) ∘ v_i`
    pub conclusion_v: bool,
}

impl SystemReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_a && self.hypothesis_b.is_empty()
    }

    pub fn conclusions_hold(&self) -> bool {
        self.conclusion_u && self.conclusion_v
    }
}

/// Evaluates a system `u_i: p_i → p0`, `v_i: p0 → p_i`.
pub fn check_system(base: &Quantaloid, p0: usize, us: &[Morphism], vs: &[Morphism]) -> Result<SystemReport> {
    if us.len() != vs.len() {
        return Err(Error::TypeMismatch("u and v have different index sets".into()));
    }
    for (i, (u, v)) in us.iter().zip(vs).enumerate() {
        if u.cod != p0 || v.dom != p0 || u.dom != v.cod {
            return Err(Error::TypeMismatch(format!(
                "index {i}: u is {}, v is {}",
                base.describe(*u),
                base.describe(*v)
            )));
        }
    }
    let b = base;
    let one = b.identity(p0);
    let hypothesis_a = b.leq(one, b.join_all(p0, p0, us.iter().zip(vs).map(|(&u, &v)| b.compose(u, v))));
    let mut hypothesis_b = Vec::new();
    for i1 in 0..us.len() {
        for i2 in 0..us.len() {
            let (u1, v1, u2, v2) = (us[i1], vs[i1], us[i2], vs[i2]);
            let checks = [
                (SystemInequality::UVU, b.leq(b.compose3(u1, v1, u2), u2)),
                (SystemInequality::VUV, b.leq(b.compose3(v1, u2, v2), v1)),
                (SystemInequality::JVVU, b.leq(b.compose3(b.j(v1)?, v1, u2), b.j(v2)?)),
                (SystemInequality::VUJU, b.leq(b.compose3(v1, u2, b.j(u2)?), b.j(u1)?)),
            ];
            for (which, ok) in checks {
                if !ok {
                    hypothesis_b.push((i1, i2, which));
                }
            }
        }
    }
    let mut ju = Vec::with_capacity(us.len());
    let mut jv = Vec::with_capacity(us.len());
    for (&u, &v) in us.iter().zip(vs) {
        ju.push(b.compose(u, b.j(u)?));
        jv.push(b.compose(b.j(v)?, v));
    }
    Ok(SystemReport {
        hypothesis_a,
        hypothesis_b,
        conclusion_u: b.leq(one, b.join_all(p0, p0, ju)),
        conclusion_v: b.leq(one, b.join_all(p0, p0, jv)),
    })
}

/// Quantale-level sufficient conditions for preservation over `D(Q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantaleSymmetryCriteria {
    pub integral: bool,
    pub commutative: bool,
    /// `a ∗ b ≤ (a ∗ a) ∨ (b ∗ b)`.
    pub products_below_squares: bool,
    /// All three above; sufficient for preservation, inconclusive when false.
    pub applicable: bool,
}

pub fn quantale_symmetry_criteria(q: &Quantale) -> QuantaleSymmetryCriteria {
    let p = q.properties();
    QuantaleSymmetryCriteria {
        integral: p.integral,
        commutative: p.commutative,
        products_below_squares: p.products_below_squares,
        applicable: p.integral && p.commutative && p.products_below_squares,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_points: usize,
    /// Only the first `k` objects are used as types.
    pub max_types: Option<usize>,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_points: 2, max_types: None }
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    /// No counterexample among `checked` categories up to the bound.
    PassAtBound { bounds: SearchBounds, checked: usize },
    Counterexample { category: QCategory, presingleton: Presingleton },
}

impl SearchOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, SearchOutcome::PassAtBound { .. })
    }
}

/// Every symmetric category up to the bound, one per isomorphism class of
/// presentation, by size, then type vector, then matrix.
pub fn symmetric_categories(base: &Arc<Quantaloid>, bounds: SearchBounds, budget: Budget) -> Result<Vec<QCategory>> {
    if !base.is_involutive() {
        return Err(Error::NoInvolution);
    }
    let types = bounds.max_types.unwrap_or(base.len()).min(base.len());
    let mut signatures: Vec<Vec<usize>> = Vec::new();
    let mut needed: u128 = 0;
    for n in 0..=bounds.max_points {
        for sig in nondecreasing(n, types) {
            let mut size: u128 = 1;
            for x in 0..n {
                for y in x..n {
                    size = size.saturating_mul(base.hom(sig[y], sig[x]).len() as u128);
                }
            }
            needed = needed.saturating_add(size);
            signatures.push(sig);
        }
    }
    budget.check(needed)?;
    let mut out = Vec::new();
    for sig in signatures {
        let n = sig.len();
        let mut seen = HashSet::new();
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
        let mut m = vec![Morphism::new(0, 0, 0); n * n];
        for x in 0..n {
            for y in 0..n {
                m[x * n + y] = base.bottom(sig[y], sig[x]);
            }
        }
        search_cells(base, &sig, &cells, 0, &mut m, &mut |m| {
            let key = canonical(&sig, m);
            if seen.insert(key) {
                let carrier = TypedSet::new((0..n).map(|i| format!("x{i}")).collect(), sig.clone());
                if let Ok(c) = QCategory::new(base.clone(), carrier, m.to_vec()) {
                    out.push(c);
                }
            }
        })?;
    }
    Ok(out)
}

fn nondecreasing(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    if k == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for rest in nondecreasing(n - 1, k) {
        let lo = rest.last().copied().unwrap_or(0);
        for t in lo..k {
            let mut v = rest.clone();
            v.push(t);
            out.push(v);
        }
    }
    out
}

fn search_cells(
    base: &Quantaloid,
    sig: &[usize],
    cells: &[(usize, usize)],
    i: usize,
    m: &mut Vec<Morphism>,
    emit: &mut dyn FnMut(&[Morphism]),
) -> Result<()> {
    let n = sig.len();
    if i == cells.len() {
        emit(m);
        return Ok(());
    }
    let (x, y) = cells[i];
    for u in base.morphisms(sig[y], sig[x]) {
        let ju = base.j(u)?;
        if x == y && (ju != u || !base.leq(base.identity(sig[x]), u)) {
            continue;
        }
        m[x * n + y] = u;
        m[y * n + x] = ju;
        search_cells(base, sig, cells, i + 1, m, emit)?;
    }
    Ok(())
}

/// Lexicographically least relabelling among type-preserving permutations.
fn canonical(sig: &[usize], m: &[Morphism]) -> Vec<usize> {
    let n = sig.len();
    let mut best: Option<Vec<usize>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        if (0..n).any(|i| sig[p[i]] != sig[i]) {
            return;
        }
        let key: Vec<usize> = (0..n * n).map(|k| m[p[k / n] * n + p[k % n]].value).collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.unwrap_or_default()
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Runs [`completion_symmetric_for`] on every symmetric category up to the
/// bound and stops at the first counterexample.
pub fn bounded_preservation_search(base: &Arc<Quantaloid>, bounds: SearchBounds, budget: Budget) -> Result<SearchOutcome> {
    let cats = symmetric_categories(base, bounds, budget)?;
    let checked = cats.len();
    for c in cats {
        if let Some(m) = completion_symmetric_for(&c, budget)? {
            return Ok(SearchOutcome::Counterexample { category: c, presingleton: m });
        }
    }
    Ok(SearchOutcome::PassAtBound { bounds, checked })
}

/// Every counterexample up to the bound.
pub fn all_counterexamples(base: &Arc<Quantaloid>, bounds: SearchBounds, budget: Budget) -> Result<Vec<(QCategory, Presingleton)>> {
    let mut out = Vec::new();
    for c in symmetric_categories(base, bounds, budget)? {
        if let Some(m) = completion_symmetric_for(&c, budget)? {
            out.push((c, m));
        }
    }
    Ok(out)
}

/// Whether the symmetrization of a Cauchy complete category is Cauchy
/// complete. Meaningful when the base preserves symmetry.
pub fn symmetrization_preserves_completeness(x: &QCategory, budget: Budget) -> Result<bool> {
    if !is_cauchy_complete(x, budget)? {
        return Err(Error::NotCauchyComplete(format!("{} elements", x.len())));
    }
    is_cauchy_complete(&x.symmetrize()?, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::diagonal::dq_from_quantale;

    fn q5() -> Arc<Quantaloid> {
        Arc::new(Quantaloid::from_unital_quantale(&catalog::cyclic_three()).unwrap())
    }

    #[test]
    fn q5_system_from_the_two_point_example() {
        let base = q5();
        let m = |s: &str| base.morphism(0, 0, s).unwrap();
        let rep = check_system(&base, 0, &[m("a"), m("bot")], &[m("b"), m("bot")]).unwrap();
        assert!(rep.hypotheses_hold());
        assert!(!rep.conclusion_u);
    }

    #[test]
    fn q2_system_from_the_top_presingleton() {
        let base = Arc::new(dq_from_quantale(&catalog::q2()).unwrap());
        let (b, t) = (base.object_index("b").unwrap(), base.object_index("top").unwrap());
        let u = base.morphism(b, t, "al").unwrap();
        let v = base.morphism(t, b, "ar").unwrap();
        let rep = check_system(&base, t, &[u], &[v]).unwrap();
        assert!(rep.hypotheses_hold() && rep.conclusions_hold());
    }

    #[test]
    fn mistyped_system_is_rejected() {
        let base = Arc::new(dq_from_quantale(&catalog::q2()).unwrap());
        let (b, t) = (base.object_index("b").unwrap(), base.object_index("top").unwrap());
        let u = base.morphism(b, t, "al").unwrap();
        assert!(matches!(check_system(&base, b, &[u], &[u]), Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn criteria_flags() {
        assert!(quantale_symmetry_criteria(&catalog::lukasiewicz_three()).applicable);
        assert!(quantale_symmetry_criteria(&catalog::frame_three()).applicable);
        assert!(!quantale_symmetry_criteria(&catalog::cyclic_three()).applicable);
    }

    #[test]
    fn q5_search_finds_a_counterexample_and_q2_passes() {
        let out = bounded_preservation_search(&q5(), SearchBounds::default(), Budget::default()).unwrap();
        assert!(!out.passed());
        let base = Arc::new(dq_from_quantale(&catalog::q2()).unwrap());
        let out = bounded_preservation_search(&base, SearchBounds::default(), Budget::default()).unwrap();
        assert!(out.passed());
    }

    #[test]
    fn canonical_dedupe_merges_swapped_points() {
        let base = Arc::new(Quantaloid::from_unital_quantale(&catalog::boolean_chain()).unwrap());
        let cats = symmetric_categories(&base, SearchBounds { max_points: 2, max_types: None }, Budget::default()).unwrap();
        // empty, one point, two discrete points, two indiscrete points
        assert_eq!(cats.len(), 4);
    }
}
