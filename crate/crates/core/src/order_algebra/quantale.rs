use std::borrow::Cow;

use super::lattice::{Elem, Lattice};
use crate::error::{Error, Result};

/// Which residual to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `b ↙ a = ⋁{h | h∗a ≤ b}`.
    Left,
    /// `a ↘ b = ⋁{h | a∗h ≤ b}`.
    Right,
}

/// Name-level description of a quantale, as read from input files.
///
/// `mult` lists `(a, b, a∗b)`; products involving the bottom element may be
/// omitted. `involution` lists swapped pairs; unlisted elements are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuantaleSpec {
    pub elements: Vec<String>,
    pub le: Vec<(String, String)>,
    pub mult: Vec<(String, String, String)>,
    pub unit: Option<String>,
    pub involution: Option<Vec<(String, String)>>,
}

impl QuantaleSpec {
    pub fn build(&self) -> Result<Quantale> {
        let lattice = Lattice::new(&self.elements, &self.le)?;
        let ix = |s: &str| lattice.index_of(s);
        let mut entries = Vec::with_capacity(self.mult.len());
        for (a, b, c) in &self.mult {
            entries.push((ix(a)?, ix(b)?, ix(c)?));
        }
        let unit = self.unit.as_deref().map(ix).transpose()?;
        let involution = match &self.involution {
            None => None,
            Some(pairs) => {
                let mut v = Vec::with_capacity(pairs.len());
                for (a, b) in pairs {
                    v.push((ix(a)?, ix(b)?));
                }
                Some(v)
            }
        };
        Quantale::new(lattice, &entries, unit, involution.as_deref())
    }
}

/// A finite quantale: a complete lattice with an associative multiplication
/// preserving joins in each variable, optionally with a unit and an involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantale {
    lattice: Lattice,
    mult: Vec<Elem>,
    unit: Option<Elem>,
    involution: Option<Vec<Elem>>,
}

/// Exhaustively computed structural properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantaleProperties {
    pub unital: bool,
    pub commutative: bool,
    pub integral: bool,
    pub idempotent: bool,
    /// Every `a ≤ b` has some `c` with `a = b∗c`.
    pub divisible: bool,
    /// Set when the input is not commutative, so `divisible` only tested right factors.
    pub divisibility_one_sided: bool,
    /// `a∗b ≤ (a∗a) ∨ (b∗b)` for all `a, b`.
    pub products_below_squares: bool,
}

impl Quantale {
    /// Validates and builds a quantale. `entries` must cover every pair of
    /// non-bottom elements. A declared `unit` is checked; otherwise a unit is
    /// detected if one exists.
    pub fn new(
        lattice: Lattice,
        entries: &[(Elem, Elem, Elem)],
        unit: Option<Elem>,
        involution: Option<&[(Elem, Elem)]>,
    ) -> Result<Self> {
        let n = lattice.len();
        let bot = lattice.bottom();
        let nm = |a: Elem| lattice.name(a).to_string();
        let mut mult: Vec<Option<Elem>> = vec![None; n * n];
        for a in 0..n {
            mult[a * n + bot] = Some(bot);
            mult[bot * n + a] = Some(bot);
        }
        for &(a, b, c) in entries {
            if a >= n || b >= n || c >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b).max(c))));
            }
            let slot = &mut mult[a * n + b];
            match *slot {
                Some(old) if old != c => {
                    return Err(if a == bot || b == bot {
                        Error::NotJoinPreserving(format!("{} * {} must be bottom", nm(a), nm(b)))
                    } else {
                        Error::ConflictingEntry(format!("{} * {}", nm(a), nm(b)))
                    });
                }
                _ => *slot = Some(c),
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(
                    mult[a * n + b]
                        .ok_or_else(|| Error::MissingEntry(format!("{} * {}", nm(a), nm(b))))?,
                );
            }
        }
        let inv = match involution {
            None => None,
            Some(pairs) => {
                let mut inv: Vec<Option<Elem>> = vec![None; n];
                for &(a, b) in pairs {
                    for (x, y) in [(a, b), (b, a)] {
                        match inv[x] {
                            Some(old) if old != y => {
                                return Err(Error::BadInvolution(format!(
                                    "{} is sent to both {} and {}",
                                    nm(x),
                                    nm(old),
                                    nm(y)
                                )))
                            }
                            _ => inv[x] = Some(y),
                        }
                    }
                }
                Some((0..n).map(|a| inv[a].unwrap_or(a)).collect())
            }
        };
        let mut q = Quantale { lattice, mult: table, unit: None, involution: inv };
        q.check_associative()?;
        q.check_join_preserving()?;
        q.unit = match unit {
            Some(e) => {
                if let Some(a) = q.elements().find(|&a| q.mult(e, a) != a || q.mult(a, e) != a) {
                    return Err(Error::BadUnit(format!(
                        "{} * {} or its mirror differs from {}",
                        q.name(e),
                        q.name(a),
                        q.name(a)
                    )));
                }
                Some(e)
            }
            None => q.detect_unit(),
        };
        q.check_involution()?;
        Ok(q)
    }

    /// A copy carrying the given involution, validated.
    pub fn with_involution(&self, involution: Vec<Elem>) -> Result<Self> {
        let mut q = self.clone();
        q.involution = Some(involution);
        q.check_involution()?;
        Ok(q)
    }

    /// This quantale if it is involutive; a copy with the identity involution
    /// if it is commutative; `NoInvolution` otherwise.
    pub fn involutive(&self) -> Result<Cow<'_, Quantale>> {
        if self.involution.is_some() {
            Ok(Cow::Borrowed(self))
        } else if self.is_commutative() {
            Ok(Cow::Owned(self.with_involution(self.elements().collect())?))
        } else {
            Err(Error::NoInvolution)
        }
    }

    fn detect_unit(&self) -> Option<Elem> {
        self.elements()
            .find(|&e| self.elements().all(|a| self.mult(e, a) == a && self.mult(a, e) == a))
    }

    fn triple(&self, a: Elem, b: Elem, c: Elem) -> String {
        format!("({}, {}, {})", self.name(a), self.name(b), self.name(c))
    }

    fn check_associative(&self) -> Result<()> {
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mult(a, b);
                for c in self.elements() {
                    if self.mult(ab, c) != self.mult(a, self.mult(b, c)) {
                        return Err(Error::NotAssociative(self.triple(a, b, c)));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_join_preserving(&self) -> Result<()> {
        let l = &self.lattice;
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let bc = l.join(b, c);
                    if self.mult(a, bc) != l.join(self.mult(a, b), self.mult(a, c))
                        || self.mult(bc, a) != l.join(self.mult(b, a), self.mult(c, a))
                    {
                        return Err(Error::NotJoinPreserving(self.triple(a, b, c)));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_involution(&self) -> Result<()> {
        let Some(inv) = &self.involution else { return Ok(()) };
        let n = self.len();
        if inv.len() != n || inv.iter().any(|&x| x >= n) {
            return Err(Error::BadInvolution("not a map on the carrier".into()));
        }
        for a in self.elements() {
            if inv[inv[a]] != a {
                return Err(Error::BadInvolution(format!("{} is not involutive", self.name(a))));
            }
            for b in self.elements() {
                if self.lattice.leq(a, b) && !self.lattice.leq(inv[a], inv[b]) {
                    return Err(Error::BadInvolution(format!(
                        "order not preserved at ({}, {})",
                        self.name(a),
                        self.name(b)
                    )));
                }
                if inv[self.mult(a, b)] != self.mult(inv[b], inv[a]) {
                    return Err(Error::BadInvolution(format!(
                        "not anti-multiplicative at ({}, {})",
                        self.name(a),
                        self.name(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.lattice.elements()
    }

    pub fn name(&self, a: Elem) -> &str {
        self.lattice.name(a)
    }

    pub fn index_of(&self, name: &str) -> Result<Elem> {
        self.lattice.index_of(name)
    }

    pub fn bottom(&self) -> Elem {
        self.lattice.bottom()
    }

    pub fn top(&self) -> Elem {
        self.lattice.top()
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.join(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.meet(a, b)
    }

    pub fn mult(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.len() + b]
    }

    pub fn unit(&self) -> Option<Elem> {
        self.unit
    }

    /// The involution as a table, if one was declared.
    pub fn involution(&self) -> Option<&[Elem]> {
        self.involution.as_deref()
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        self.involution.as_ref().map(|t| t[a])
    }

    /// `a ↘ b`, the largest `h` with `a∗h ≤ b`.
    pub fn right_residual(&self, a: Elem, b: Elem) -> Elem {
        self.lattice
            .join_all(self.elements().filter(|&h| self.leq(self.mult(a, h), b)))
    }

    /// `b ↙ a`, the largest `h` with `h∗a ≤ b`.
    pub fn left_residual(&self, b: Elem, a: Elem) -> Elem {
        self.lattice
            .join_all(self.elements().filter(|&h| self.leq(self.mult(h, a), b)))
    }

    /// `Right` gives `a ↘ b`; `Left` gives `b ↙ a`.
    pub fn residual(&self, a: Elem, b: Elem, side: Side) -> Elem {
        match side {
            Side::Right => self.right_residual(a, b),
            Side::Left => self.left_residual(b, a),
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mult(a, b) == self.mult(b, a)))
    }

    pub fn properties(&self) -> QuantaleProperties {
        let commutative = self.is_commutative();
        let unital = self.unit.is_some();
        let el = || self.elements();
        QuantaleProperties {
            unital,
            commutative,
            integral: self.unit == Some(self.top()),
            idempotent: el().all(|a| self.mult(a, a) == a),
            divisible: el().all(|a| {
                el().filter(|&b| self.leq(a, b))
                    .all(|b| el().any(|c| self.mult(b, c) == a))
            }),
            divisibility_one_sided: !commutative,
            products_below_squares: el().all(|a| {
                el().all(|b| {
                    self.leq(self.mult(a, b), self.join(self.mult(a, a), self.mult(b, b)))
                })
            }),
        }
    }

    /// `a = (a↙a)∗a = a∗(a↘a)`.
    pub fn is_self_divisible(&self, a: Elem) -> bool {
        self.mult(self.left_residual(a, a), a) == a && self.mult(a, self.right_residual(a, a)) == a
    }

    /// Hermitian self-divisible elements, in element order.
    ///
    /// Commutative quantales without a declared involution use the identity.
    pub fn dq_object_candidates(&self) -> Result<Vec<Elem>> {
        let q = self.involutive()?;
        Ok(q.elements()
            .filter(|&a| q.inv(a) == Some(a) && q.is_self_divisible(a))
            .collect())
    }

    /// Name-level description that rebuilds this quantale.
    pub fn to_spec(&self) -> QuantaleSpec {
        let nm = |a: Elem| self.name(a).to_string();
        let bot = self.bottom();
        let mut mult = Vec::new();
        for a in self.elements().filter(|&a| a != bot) {
            for b in self.elements().filter(|&b| b != bot) {
                mult.push((nm(a), nm(b), nm(self.mult(a, b))));
            }
        }
        QuantaleSpec {
            elements: self.lattice.names().to_vec(),
            le: self.lattice.covers().into_iter().map(|(a, b)| (nm(a), nm(b))).collect(),
            mult,
            unit: self.unit.map(nm),
            involution: self.involution.as_ref().map(|inv| {
                self.elements()
                    .filter(|&a| inv[a] > a)
                    .map(|a| (nm(a), nm(inv[a])))
                    .collect()
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn residual_galois_law_on_catalog() {
        for q in catalog::all_quantales() {
            for a in q.elements() {
                for b in q.elements() {
                    let r = q.right_residual(a, b);
                    let l = q.left_residual(b, a);
                    for h in q.elements() {
                        assert_eq!(q.leq(q.mult(a, h), b), q.leq(h, r));
                        assert_eq!(q.leq(q.mult(h, a), b), q.leq(h, l));
                    }
                }
            }
        }
    }

    #[test]
    fn q2_residual_values() {
        let q = catalog::q2();
        let ix = |s| q.index_of(s).unwrap();
        assert_eq!(q.residual(ix("b"), ix("ar"), Side::Right), q.top());
        assert_eq!(q.residual(ix("top"), ix("al"), Side::Right), ix("al"));
    }

    #[test]
    fn missing_entry_is_reported() {
        let l = Lattice::new(&["bot", "m", "top"], &[("bot", "m"), ("m", "top")]).unwrap();
        let e = Quantale::new(l, &[(1, 1, 1)], None, None).unwrap_err();
        assert!(matches!(e, Error::MissingEntry(_)));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // two-element chain with top * top = bottom is fine; make a 3-chain break associativity
        let l = Lattice::new(&["bot", "m", "top"], &[("bot", "m"), ("m", "top")]).unwrap();
        let entries = [(1, 1, 2), (1, 2, 2), (2, 1, 2), (2, 2, 1)];
        let e = Quantale::new(l, &entries, None, None).unwrap_err();
        assert!(matches!(e, Error::NotAssociative(_) | Error::NotJoinPreserving(_)));
    }

    #[test]
    fn bottom_entries_must_be_bottom() {
        let l = Lattice::new(&["bot", "top"], &[("bot", "top")]).unwrap();
        let e = Quantale::new(l, &[(1, 1, 1), (0, 1, 1)], None, None).unwrap_err();
        assert!(matches!(e, Error::NotJoinPreserving(_)));
    }

    #[test]
    fn declared_unit_is_checked() {
        let l = Lattice::new(&["bot", "m", "top"], &[("bot", "m"), ("m", "top")]).unwrap();
        let entries = [(1, 1, 0), (1, 2, 1), (2, 1, 1), (2, 2, 2)];
        assert!(Quantale::new(l.clone(), &entries, Some(2), None).is_ok());
        let e = Quantale::new(l, &entries, Some(1), None).unwrap_err();
        assert!(matches!(e, Error::BadUnit(_)));
    }

    #[test]
    fn involution_must_reverse_products() {
        let q = catalog::q2();
        let ident: Vec<Elem> = q.elements().collect();
        assert!(matches!(q.with_involution(ident), Err(Error::BadInvolution(_))));
    }

    #[test]
    fn properties_of_catalog_members() {
        let p = catalog::diamond_idempotent().properties();
        assert!(!p.unital && p.commutative && !p.integral && p.idempotent);
        let p = catalog::cyclic_three().properties();
        assert!(p.unital && p.commutative && !p.integral && !p.idempotent);
        // squares of distinct atoms join to top in M3
        assert!(p.products_below_squares);
        let p = catalog::lukasiewicz_three().properties();
        assert!(p.integral && p.divisible && !p.idempotent);
        let p = catalog::boolean_chain().properties();
        assert!(p.integral && p.idempotent && p.divisible && p.products_below_squares);
        assert!(catalog::q2().properties().divisibility_one_sided);
    }

    #[test]
    fn object_candidates_match_known_lists() {
        let names = |q: &Quantale| -> Vec<String> {
            q.dq_object_candidates()
                .unwrap()
                .into_iter()
                .map(|a| q.name(a).to_string())
                .collect()
        };
        assert_eq!(names(&catalog::diamond_idempotent()), ["bot", "a", "b", "top"]);
        assert_eq!(names(&catalog::q2()), ["bot", "b", "top"]);
        assert_eq!(names(&catalog::q_tilde()), ["bot", "b", "c", "top"]);
        assert_eq!(names(&catalog::all_top()), ["bot", "top"]);
    }

    #[test]
    fn spec_round_trip() {
        for q in catalog::all_quantales() {
            assert_eq!(q.to_spec().build().unwrap(), q);
        }
    }
}
