use std::collections::HashMap;

use crate::error::{Error, Result};

/// Index of an element inside the lattice that owns it.
pub type Elem = usize;

/// A finite complete lattice over named elements.
///
/// Elements are opaque: bottom and top are derived from the order, never
/// from the names. Join and meet tables are precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl Lattice {
    /// Builds a lattice from element names and generating pairs `(a, b)` meaning `a <= b`.
    pub fn new<S: AsRef<str>>(elements: &[S], le: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = name_index(&names)?;
        let mut pairs = Vec::with_capacity(le.len());
        for (a, b) in le {
            let a = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_string()))?;
            let b = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_string()))?;
            pairs.push((a, b));
        }
        Self::from_relation(names, &pairs)
    }

    /// Builds a lattice from the reflexive-transitive closure of `pairs`.
    pub fn from_relation(names: Vec<String>, pairs: &[(Elem, Elem)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        name_index(&names)?;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order(names, leq)
    }

    /// Builds a lattice from a full order matrix, which must already be reflexive and transitive.
    pub(crate) fn from_order(names: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::Cycle(names[a].clone(), names[b].clone()));
                }
            }
        }
        let least = |set: &[Elem]| -> Option<Elem> {
            set.iter().copied().find(|&c| set.iter().all(|&d| leq[c * n + d]))
        };
        let greatest = |set: &[Elem]| -> Option<Elem> {
            set.iter().copied().find(|&c| set.iter().all(|&d| leq[d * n + c]))
        };
        let all: Vec<Elem> = (0..n).collect();
        let bottom = least(&all)
            .ok_or_else(|| Error::NotALattice("the empty set has no join".into()))?;
        let top = greatest(&all)
            .ok_or_else(|| Error::NotALattice("the empty set has no meet".into()))?;
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let upper: Vec<Elem> =
                    (0..n).filter(|&c| leq[a * n + c] && leq[b * n + c]).collect();
                let j = least(&upper).ok_or_else(|| {
                    Error::NotALattice(format!("{{{}, {}}} has no join", names[a], names[b]))
                })?;
                let lower: Vec<Elem> =
                    (0..n).filter(|&c| leq[c * n + a] && leq[c * n + b]).collect();
                let m = greatest(&lower).ok_or_else(|| {
                    Error::NotALattice(format!("{{{}, {}}} has no meet", names[a], names[b]))
                })?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        Ok(Lattice { names, leq, join, meet, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<Elem> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

fn name_index(names: &[String]) -> Result<HashMap<&str, Elem>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, s) in names.iter().enumerate() {
        if index.insert(s.as_str(), i).is_some() {
            return Err(Error::DuplicateName(s.clone()));
        }
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Lattice {
        Lattice::new(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap()
    }

    #[test]
    fn diamond_bounds_and_tables() {
        let l = diamond();
        assert_eq!(l.name(l.bottom()), "bot");
        assert_eq!(l.name(l.top()), "top");
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join_all(std::iter::empty()), 0);
        assert_eq!(l.meet_all(std::iter::empty()), 3);
        assert_eq!(l.covers().len(), 4);
    }

    #[test]
    fn bounds_come_from_order_not_names() {
        let l = Lattice::new(&["top", "bot"], &[("top", "bot")]).unwrap();
        assert_eq!(l.name(l.bottom()), "top");
    }

    #[test]
    fn cycle_is_rejected() {
        let e = Lattice::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(e, Error::Cycle(..)));
    }

    #[test]
    fn two_maximal_elements_are_rejected() {
        let e = Lattice::new(&["bot", "a", "b"], &[("bot", "a"), ("bot", "b")]).unwrap_err();
        assert!(matches!(e, Error::NotALattice(_)));
    }

    #[test]
    fn missing_join_in_bowtie() {
        let e = Lattice::new(
            &["bot", "a", "b", "c", "d", "top"],
            &[
                ("bot", "a"),
                ("bot", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "top"),
                ("d", "top"),
            ],
        )
        .unwrap_err();
        assert!(matches!(e, Error::NotALattice(_)));
    }

    #[test]
    fn unknown_and_duplicate_names() {
        assert!(matches!(
            Lattice::new(&["a"], &[("a", "z")]).unwrap_err(),
            Error::UnknownElement(_)
        ));
        assert!(matches!(
            Lattice::new(&["a", "a"], &[]).unwrap_err(),
            Error::DuplicateName(_)
        ));
        assert_eq!(Lattice::new::<&str>(&[], &[]).unwrap_err(), Error::EmptyLattice);
    }
}
