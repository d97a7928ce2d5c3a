//! Brute-force oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use qloid_core::catalog;
use qloid_core::diagonal::dq_from_quantale;
use qloid_core::order_algebra::{Elem, Quantale, QuantaleSpec};
use qloid_core::qcat::{QCategory, TypedSet};
use qloid_core::quantaloid::{Morphism, Quantaloid};
use rand::Rng;

// ---- quantale oracles ----

/// `a ↘ b` as the join of every `x` with `a∗x ≤ b`.
pub fn q_right(q: &Quantale, a: Elem, b: Elem) -> Elem {
    q.lattice().join_all(q.elements().filter(|&x| q.leq(q.mult(a, x), b)))
}

/// `b ↙ a` as the join of every `x` with `x∗a ≤ b`.
pub fn q_left(q: &Quantale, b: Elem, a: Elem) -> Elem {
    q.lattice().join_all(q.elements().filter(|&x| q.leq(q.mult(x, a), b)))
}

fn hermitian(q: &Quantale, a: Elem) -> bool {
    q.involution().is_none_or(|inv| inv[a] == a)
}

/// Hermitian elements that divide themselves on both sides.
pub fn diag_objects(q: &Quantale) -> BTreeSet<String> {
    q.elements()
        .filter(|&a| hermitian(q, a) && q.mult(q_left(q, a, a), a) == a && q.mult(a, q_right(q, a, a)) == a)
        .map(|a| q.name(a).to_string())
        .collect()
}

/// Values `λ` of diagonal arrows `a → b`.
pub fn diag_hom_values(q: &Quantale, a: Elem, b: Elem) -> Vec<Elem> {
    q.elements()
        .filter(|&l| q.mult(q_left(q, l, a), a) == l && q.mult(b, q_right(q, b, l)) == l)
        .collect()
}

pub fn diag_hom(q: &Quantale, a: &str, b: &str) -> BTreeSet<String> {
    let (a, b) = (q.index_of(a).unwrap(), q.index_of(b).unwrap());
    diag_hom_values(q, a, b).into_iter().map(|l| q.name(l).to_string()).collect()
}

pub fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Names in `hom(p, q)` of a quantaloid, by object name.
pub fn hom_names(b: &Quantaloid, p: &str, q: &str) -> BTreeSet<String> {
    let (p, q) = (b.object_index(p).unwrap(), b.object_index(q).unwrap());
    b.hom(p, q).names().iter().cloned().collect()
}

pub fn object_names(b: &Quantaloid) -> BTreeSet<String> {
    b.object_names().iter().cloned().collect()
}

// ---- quantaloid oracles ----

/// Largest `h: r → q` with `h ∘ v ≤ u`, by scanning the hom-set.
pub fn ql_left(b: &Quantaloid, u: Morphism, v: Morphism) -> Morphism {
    let (r, q) = (v.cod, u.cod);
    let ok: Vec<Morphism> = b.morphisms(r, q).filter(|&h| b.leq(b.compose(h, v), u)).collect();
    let top = b.join_all(r, q, ok.iter().copied());
    assert!(ok.contains(&top), "left residual is attained");
    top
}

/// Largest `h: p → r` with `v ∘ h ≤ u`.
pub fn ql_right(b: &Quantaloid, v: Morphism, u: Morphism) -> Morphism {
    let (p, r) = (u.dom, v.dom);
    let ok: Vec<Morphism> = b.morphisms(p, r).filter(|&h| b.leq(b.compose(v, h), u)).collect();
    let top = b.join_all(p, r, ok.iter().copied());
    assert!(ok.contains(&top), "right residual is attained");
    top
}

// ---- categories ----

/// Every valid category with at most `max_points` elements, validity checked directly.
pub fn all_categories(base: &Arc<Quantaloid>, max_points: usize) -> Vec<Arc<QCategory>> {
    let objs = base.len();
    let mut out = Vec::new();
    for n in 0..=max_points {
        let mut types = vec![0usize; n];
        loop {
            let sizes: Vec<usize> = (0..n * n).map(|k| base.hom(types[k % n], types[k / n]).len()).collect();
            let mut values = vec![0usize; n * n];
            loop {
                let entries: Vec<Morphism> =
                    (0..n * n).map(|k| Morphism::new(types[k % n], types[k / n], values[k])).collect();
                if is_category(base, n, &entries) {
                    let names = (0..n).map(|i| format!("x{i}")).collect();
                    let c = QCategory::new(base.clone(), TypedSet::new(names, types.clone()), entries)
                        .expect("oracle-valid category is accepted");
                    out.push(Arc::new(c));
                }
                if !odometer(&mut values, &sizes) {
                    break;
                }
            }
            if !odometer(&mut types, &vec![objs; n]) {
                break;
            }
        }
    }
    out
}

/// Advances a mixed-radix counter; false once it wraps.
pub fn odometer(digits: &mut [usize], radix: &[usize]) -> bool {
    for (d, &r) in digits.iter_mut().zip(radix) {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}

/// `entries[x*n+y] = α(x, y)`; identities below the diagonal, composition below `α(x, z)`.
pub fn is_category(b: &Quantaloid, n: usize, e: &[Morphism]) -> bool {
    let a = |x: usize, y: usize| e[x * n + y];
    (0..n).all(|x| b.leq(b.identity(a(x, x).dom), a(x, x)))
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| b.leq(b.compose(a(x, y), a(y, z)), a(x, z)))))
}

/// A random category on `n` points, closed under composition.
pub fn random_category<R: Rng>(base: &Arc<Quantaloid>, n: usize, rng: &mut R) -> Arc<QCategory> {
    let types: Vec<usize> = (0..n).map(|_| rng.gen_range(0..base.len())).collect();
    let mut e: Vec<Morphism> = (0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            let (p, q) = (types[y], types[x]);
            Morphism::new(p, q, rng.gen_range(0..base.hom(p, q).len()))
        })
        .collect();
    for x in 0..n {
        e[x * n + x] = base.join(e[x * n + x], base.identity(types[x]));
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let c = base.compose(e[x * n + y], e[y * n + z]);
                    let j = base.join(e[x * n + z], c);
                    if j != e[x * n + z] {
                        e[x * n + z] = j;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let names = (0..n).map(|i| format!("x{i}")).collect();
    Arc::new(QCategory::new(base.clone(), TypedSet::new(names, types), e).expect("closure is a category"))
}

pub fn is_separated(x: &QCategory) -> bool {
    let b = x.base();
    x.elements().all(|i| {
        x.elements().all(|k| {
            i == k
                || x.type_of(i) != x.type_of(k)
                || !(b.leq(b.identity(x.type_of(i)), x.alpha(i, k)) && b.leq(b.identity(x.type_of(i)), x.alpha(k, i)))
        })
    })
}

// ---- presingletons ----

/// `(p, f, g)` with `f(x): |x| → p`, `g(x): p → |x|`.
pub type RawPresingleton = (usize, Vec<Morphism>, Vec<Morphism>);

/// Vectors `v(x) ∈ hom(dom(x), cod(x))` satisfying `ok(i, k, v)` for all assigned pairs,
/// by backtracking over the elements in order.
fn vectors<F>(n: usize, hom: impl Fn(usize) -> (usize, usize), sizes: &[usize], ok: F) -> Vec<Vec<Morphism>>
where
    F: Fn(usize, usize, &[Morphism]) -> bool,
{
    fn go<F: Fn(usize, usize, &[Morphism]) -> bool>(
        i: usize,
        n: usize,
        hom: &dyn Fn(usize) -> (usize, usize),
        sizes: &[usize],
        ok: &F,
        cur: &mut Vec<Morphism>,
        out: &mut Vec<Vec<Morphism>>,
    ) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        let (d, c) = hom(i);
        for v in 0..sizes[i] {
            cur.push(Morphism::new(d, c, v));
            if (0..=i).all(|k| ok(i, k, cur) && ok(k, i, cur)) {
                go(i + 1, n, hom, sizes, ok, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &hom, sizes, &ok, &mut Vec::new(), &mut out);
    out
}

/// Every triple of presheaves with `1_p ≤ ⋁ f(x)∘g(x)` and `g(x)∘f(y) ≤ α(x, y)`.
pub fn brute_presingletons(x: &QCategory) -> Vec<RawPresingleton> {
    let b = x.base();
    let n = x.len();
    let mut out = Vec::new();
    for p in b.objects() {
        let fs: Vec<usize> = x.elements().map(|i| b.hom(x.type_of(i), p).len()).collect();
        let gs: Vec<usize> = x.elements().map(|i| b.hom(p, x.type_of(i)).len()).collect();
        // f(i) ∘ α(i, k) ≤ f(k)
        let covariant = vectors(n, |i| (x.type_of(i), p), &fs, |i, k, f| {
            b.leq(b.compose(f[i], x.alpha(i, k)), f[k])
        });
        // α(i, k) ∘ g(k) ≤ g(i)
        let contravariant = vectors(n, |i| (p, x.type_of(i)), &gs, |i, k, g| {
            b.leq(b.compose(x.alpha(i, k), g[k]), g[i])
        });
        for f in &covariant {
            for g in &contravariant {
                let p2 = b.leq(b.identity(p), b.join_all(p, p, x.elements().map(|i| b.compose(f[i], g[i]))));
                let p3 = x.elements().all(|i| x.elements().all(|k| b.leq(b.compose(g[i], f[k]), x.alpha(i, k))));
                if p2 && p3 {
                    out.push((p, f.clone(), g.clone()));
                }
            }
        }
    }
    out
}

/// Every presingleton is represented by exactly one element.
pub fn brute_cauchy_complete(x: &QCategory) -> bool {
    brute_presingletons(x).iter().all(|(p, f, g)| {
        x.elements()
            .filter(|&i| {
                x.type_of(i) == *p
                    && x.elements().all(|k| x.alpha(i, k) == f[k] && x.alpha(k, i) == g[k])
            })
            .count()
            == 1
    })
}

// ---- distributor oracles ----

/// `m[y*|X|+x] = Φ(y, x)` satisfies both module conditions.
pub fn is_distributor(x: &QCategory, y: &QCategory, m: &[Morphism]) -> bool {
    let b = x.base();
    let nx = x.len();
    let phi = |j: usize, i: usize| m[j * nx + i];
    x.elements().all(|i| {
        y.elements().all(|j| {
            x.elements().all(|i2| b.leq(b.compose(phi(j, i), x.alpha(i, i2)), phi(j, i2)))
                && y.elements().all(|j2| b.leq(b.compose(y.alpha(j2, j), phi(j, i)), phi(j2, i)))
        })
    })
}

/// Every distributor matrix `X → Y`.
pub fn all_distributor_matrices(x: &QCategory, y: &QCategory) -> Vec<Vec<Morphism>> {
    let b = x.base();
    let (nx, ny) = (x.len(), y.len());
    let sizes: Vec<usize> = (0..nx * ny).map(|k| b.hom(x.type_of(k % nx), y.type_of(k / nx)).len()).collect();
    let mut v = vec![0usize; nx * ny];
    let mut out = Vec::new();
    loop {
        let m: Vec<Morphism> =
            (0..nx * ny).map(|k| Morphism::new(x.type_of(k % nx), y.type_of(k / nx), v[k])).collect();
        if is_distributor(x, y, &m) {
            out.push(m);
        }
        if !odometer(&mut v, &sizes) {
            break;
        }
    }
    out
}

/// Both halves of the adjunction condition for `Φ: X → Y` and `Ψ: Y → X`.
pub fn satisfies_d3(x: &QCategory, y: &QCategory, phi: &[Morphism], psi: &[Morphism]) -> bool {
    let b = x.base();
    let (nx, ny) = (x.len(), y.len());
    let ph = |j: usize, i: usize| phi[j * nx + i];
    let ps = |i: usize, j: usize| psi[i * ny + j];
    x.elements().all(|i| {
        let t = x.type_of(i);
        b.leq(b.identity(t), b.join_all(t, t, y.elements().map(|j| b.compose(ps(i, j), ph(j, i)))))
    }) && x.elements().all(|i| {
        y.elements().all(|j1| y.elements().all(|j2| b.leq(b.compose(ph(j1, i), ps(i, j2)), y.alpha(j1, j2))))
    })
}

// ---- base pools ----

pub fn dq(q: &Quantale) -> Arc<Quantaloid> {
    Arc::new(dq_from_quantale(q).unwrap())
}

pub fn one_object(q: &Quantale) -> Arc<Quantaloid> {
    Arc::new(Quantaloid::from_unital_quantale(q).unwrap())
}

/// The `n`-element chain with meet as multiplication.
pub fn chain_frame(n: usize) -> Quantale {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let mut mult = Vec::new();
    for a in 0..n {
        for b in 0..n {
            mult.push((names[a].clone(), names[b].clone(), names[a.min(b)].clone()));
        }
    }
    QuantaleSpec {
        elements: names.clone(),
        le: (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect(),
        mult,
        unit: None,
        involution: Some(vec![]),
    }
    .build()
    .unwrap()
}

/// The `n`-element Łukasiewicz chain, `a∗b = max(0, a+b-(n-1))`.
pub fn lukasiewicz(n: usize) -> Quantale {
    let names: Vec<String> = (0..n).map(|i| format!("l{i}")).collect();
    let mut mult = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = (a + b).saturating_sub(n - 1);
            mult.push((names[a].clone(), names[b].clone(), names[c].clone()));
        }
    }
    QuantaleSpec {
        elements: names.clone(),
        le: (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect(),
        mult,
        unit: None,
        involution: Some(vec![]),
    }
    .build()
    .unwrap()
}

/// Full subquantaloids of size at most `max_objects` whose hom-sets have at most `max_hom` elements.
pub fn small_subquantaloids(b: &Quantaloid, max_objects: usize, max_hom: usize) -> Vec<Arc<Quantaloid>> {
    let n = b.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let keep: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if keep.len() > max_objects {
            continue;
        }
        if keep.iter().all(|&p| keep.iter().all(|&q| b.hom(p, q).len() <= max_hom)) {
            out.push(Arc::new(b.full_subquantaloid(&keep).unwrap()));
        }
    }
    out
}

/// Bases with at most `max_objects` objects and hom-sets of at most `max_hom` elements.
pub fn base_pool(max_objects: usize, max_hom: usize) -> Vec<Arc<Quantaloid>> {
    let mut out = Vec::new();
    let mut quantales = catalog::all_quantales();
    quantales.extend([chain_frame(4), lukasiewicz(4), chain_frame(2)]);
    for q in &quantales {
        if q.unit().is_some() && q.len() <= max_hom {
            out.push(one_object(q));
        }
        out.extend(small_subquantaloids(&dq(q), max_objects, max_hom));
    }
    out
}
