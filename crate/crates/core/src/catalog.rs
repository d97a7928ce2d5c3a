//! Small quantales used as worked examples and test fixtures.

use crate::order_algebra::{Quantale, QuantaleSpec};

/// Builds a quantale from a multiplication table over `cols`, rows listed in the
/// same order. `involution` is `None` for no involution, `Some(&[])` for identity.
fn table(
    elements: &[&str],
    le: &[(&str, &str)],
    cols: &[&str],
    rows: &[&[&str]],
    involution: Option<&[(&str, &str)]>,
) -> Quantale {
    let s = |x: &str| x.to_string();
    let mut mult = Vec::new();
    for (a, row) in cols.iter().zip(rows) {
        for (b, c) in cols.iter().zip(row.iter()) {
            mult.push((s(a), s(b), s(c)));
        }
    }
    QuantaleSpec {
        elements: elements.iter().map(|x| s(x)).collect(),
        le: le.iter().map(|(a, b)| (s(a), s(b))).collect(),
        mult,
        unit: None,
        involution: involution.map(|p| p.iter().map(|(a, b)| (s(a), s(b))).collect()),
    }
    .build()
    .expect("catalog quantale is valid")
}

/// Diamond `bot < a, b < top`, idempotent `a` and `b`, every other non-bottom product `top`.
pub fn diamond_idempotent() -> Quantale {
    table(
        &["bot", "a", "b", "top"],
        &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        &["a", "b", "top"],
        &[&["a", "top", "top"], &["top", "b", "top"], &["top", "top", "top"]],
        Some(&[]),
    )
}

/// The quantization of the two-element chain: non-commutative, six elements.
pub fn q2() -> Quantale {
    table(
        &["bot", "b", "al", "ar", "c", "top"],
        &[("bot", "b"), ("b", "al"), ("b", "ar"), ("al", "c"), ("ar", "c"), ("c", "top")],
        &["b", "al", "ar", "c", "top"],
        &[
            &["b", "b", "ar", "ar", "ar"],
            &["al", "al", "top", "top", "top"],
            &["b", "b", "ar", "ar", "ar"],
            &["al", "al", "top", "top", "top"],
            &["al", "al", "top", "top", "top"],
        ],
        Some(&[("al", "ar")]),
    )
}

/// Eight-element extension of [`q2`] in which `c` is self-divisible.
pub fn q_tilde() -> Quantale {
    table(
        &["bot", "b", "al", "ar", "alt", "art", "c", "top"],
        &[
            ("bot", "b"),
            ("b", "al"),
            ("b", "ar"),
            ("al", "alt"),
            ("ar", "art"),
            ("alt", "c"),
            ("art", "c"),
            ("c", "top"),
        ],
        &["b", "al", "ar", "alt", "art", "c", "top"],
        &[
            &["b", "b", "ar", "b", "ar", "ar", "ar"],
            &["al", "al", "top", "al", "top", "top", "top"],
            &["b", "b", "ar", "ar", "ar", "ar", "ar"],
            &["al", "al", "top", "alt", "top", "top", "top"],
            &["b", "al", "ar", "c", "art", "c", "top"],
            &["al", "al", "top", "c", "top", "top", "top"],
            &["al", "al", "top", "top", "top", "top", "top"],
        ],
        Some(&[("al", "ar"), ("alt", "art")]),
    )
}

/// Three-element chain in which every product of non-bottom elements is `top`.
pub fn all_top() -> Quantale {
    table(
        &["bot", "m", "top"],
        &[("bot", "m"), ("m", "top")],
        &["m", "top"],
        &[&["top", "top"], &["top", "top"]],
        Some(&[]),
    )
}

/// The cyclic group of order three with bottom and top adjoined; unit `e`.
pub fn cyclic_three() -> Quantale {
    table(
        &["bot", "e", "a", "b", "top"],
        &[("bot", "e"), ("bot", "a"), ("bot", "b"), ("e", "top"), ("a", "top"), ("b", "top")],
        &["e", "a", "b", "top"],
        &[
            &["e", "a", "b", "top"],
            &["a", "b", "e", "top"],
            &["b", "e", "a", "top"],
            &["top", "top", "top", "top"],
        ],
        Some(&[]),
    )
}

/// Three-element chain `bot < m < top` with `m∗m = bot` and unit `top`.
pub fn lukasiewicz_three() -> Quantale {
    table(
        &["bot", "m", "top"],
        &[("bot", "m"), ("m", "top")],
        &["m", "top"],
        &[&["bot", "m"], &["m", "top"]],
        Some(&[]),
    )
}

/// The two-element frame.
pub fn boolean_chain() -> Quantale {
    table(&["bot", "top"], &[("bot", "top")], &["top"], &[&["top"]], Some(&[]))
}

/// The three-element chain frame, multiplication is meet.
pub fn frame_three() -> Quantale {
    table(
        &["bot", "m", "top"],
        &[("bot", "m"), ("m", "top")],
        &["m", "top"],
        &[&["m", "m"], &["m", "top"]],
        Some(&[]),
    )
}

/// Every quantale in this catalog.
pub fn all_quantales() -> Vec<Quantale> {
    vec![
        diamond_idempotent(),
        q2(),
        q_tilde(),
        all_top(),
        cyclic_three(),
        lukasiewicz_three(),
        boolean_chain(),
        frame_three(),
    ]
}
