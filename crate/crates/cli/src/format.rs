//! The `.qd` block format.
//!
//! ```text
//! quantale Q2
//!   elements bot b ar al c top
//!   le bot b | b ar | b al | ar c | al c | c top
//!   mult b b b | b al al | ...
//!   involution al ar
//! end
//! ```
//!
//! `#` starts a comment and `|` separates entries on one line.

use qloid_core::order_algebra::QuantaleSpec;
use qloid_core::quantaloid::{ComposeEntry, HomSpec, QuantaloidSpec};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Quantale { name: String, spec: QuantaleSpec },
    Quantaloid { name: String, spec: QuantaloidSpec },
    QCategory { name: String, over: String, objects: Vec<(String, String)>, homs: Vec<(String, String, String)> },
    Functor { name: String, from: String, to: String, map: Vec<(String, String)> },
    Distributor { name: String, from: String, to: String, at: Vec<(String, String, String)> },
    QSet { name: String, over: String, elements: Vec<String>, eps: Vec<(String, String, String)> },
}

impl Block {
    pub fn name(&self) -> &str {
        match self {
            Block::Quantale { name, .. }
            | Block::Quantaloid { name, .. }
            | Block::QCategory { name, .. }
            | Block::Functor { name, .. }
            | Block::Distributor { name, .. }
            | Block::QSet { name, .. } => name,
        }
    }
}

/// A block with the line of its header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub block: Block,
}

#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (ci, (bi, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b0, c0)) = start.take() {
                out.push(Tok { text: &line[b0..bi], col: c0 + 1 });
            }
        } else if start.is_none() {
            start = Some((bi, ci));
        }
    }
    if let Some((b0, c0)) = start {
        out.push(Tok { text: &line[b0..], col: c0 + 1 });
    }
    out
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, col, message: message.into() }
}

/// Splits on `|` and checks every group has `arity` tokens.
fn groups<'a>(line: usize, toks: &[Tok<'a>], arity: usize, what: &str) -> Result<Vec<Vec<&'a str>>, ParseError> {
    let mut out = Vec::new();
    for g in toks.split(|t| t.text == "|") {
        if g.len() != arity {
            let col = g.first().or(toks.last()).map_or(1, |t| t.col);
            return Err(err(line, col, format!("`{what}` entries take {arity} names, found {}", g.len())));
        }
        out.push(g.iter().map(|t| t.text).collect());
    }
    Ok(out)
}

pub fn parse(src: &str) -> Result<Vec<Located>, ParseError> {
    let mut out = Vec::new();
    let mut current: Option<(usize, Block)> = None;
    for (i, raw) in src.lines().enumerate() {
        let ln = i + 1;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        match &mut current {
            None => current = Some((ln, header(ln, &toks)?)),
            Some(_) if head.text == "end" => {
                if toks.len() > 1 {
                    return Err(err(ln, toks[1].col, "unexpected text after `end`"));
                }
                let (line, block) = current.take().expect("inside a block");
                out.push(Located { line, block });
            }
            Some((_, block)) => body(ln, &toks, block)?,
        }
    }
    if let Some((line, block)) = current {
        return Err(err(line, 1, format!("block `{}` has no `end`", block.name())));
    }
    Ok(out)
}

fn header(ln: usize, toks: &[Tok<'_>]) -> Result<Block, ParseError> {
    let t: Vec<&str> = toks.iter().map(|t| t.text).collect();
    let want = |n: usize, form: &str| -> Result<(), ParseError> {
        if t.len() != n {
            Err(err(ln, toks.last().map_or(1, |x| x.col), format!("expected `{form}`")))
        } else {
            Ok(())
        }
    };
    let expect_word = |i: usize, w: &str| -> Result<(), ParseError> {
        if t[i] != w {
            Err(err(ln, toks[i].col, format!("expected `{w}`, found `{}`", t[i])))
        } else {
            Ok(())
        }
    };
    let name = || t[1].to_string();
    match t[0] {
        "quantale" => {
            want(2, "quantale NAME")?;
            Ok(Block::Quantale { name: name(), spec: QuantaleSpec::default() })
        }
        "quantaloid" => {
            want(2, "quantaloid NAME")?;
            Ok(Block::Quantaloid { name: name(), spec: QuantaloidSpec::default() })
        }
        "qcategory" => {
            want(4, "qcategory NAME over BASE")?;
            expect_word(2, "over")?;
            Ok(Block::QCategory { name: name(), over: t[3].into(), objects: vec![], homs: vec![] })
        }
        "qset" => {
            want(4, "qset NAME over QUANTALE")?;
            expect_word(2, "over")?;
            Ok(Block::QSet { name: name(), over: t[3].into(), elements: vec![], eps: vec![] })
        }
        "functor" | "distributor" => {
            want(6, &format!("{} NAME from X to Y", t[0]))?;
            expect_word(2, "from")?;
            expect_word(4, "to")?;
            let (from, to) = (t[3].to_string(), t[5].to_string());
            Ok(if t[0] == "functor" {
                Block::Functor { name: name(), from, to, map: vec![] }
            } else {
                Block::Distributor { name: name(), from, to, at: vec![] }
            })
        }
        other => Err(err(ln, toks[0].col, format!("unknown block kind `{other}`"))),
    }
}

fn body(ln: usize, toks: &[Tok<'_>], block: &mut Block) -> Result<(), ParseError> {
    let key = toks[0].text;
    let rest = &toks[1..];
    let unknown = || err(ln, toks[0].col, format!("unknown entry `{key}` in this block"));
    let list = || rest.iter().map(|t| t.text.to_string()).collect::<Vec<_>>();
    match block {
        Block::Quantale { spec, .. } => match key {
            "elements" => spec.elements.extend(list()),
            "le" => spec.le.extend(groups(ln, rest, 2, key)?.into_iter().map(|g| (g[0].into(), g[1].into()))),
            "mult" => spec
                .mult
                .extend(groups(ln, rest, 3, key)?.into_iter().map(|g| (g[0].into(), g[1].into(), g[2].into()))),
            "unit" => {
                let g = groups(ln, rest, 1, key)?;
                spec.unit = Some(g[0][0].into());
            }
            "involution" => {
                let inv = spec.involution.get_or_insert_with(Vec::new);
                if !rest.is_empty() {
                    inv.extend(groups(ln, rest, 2, key)?.into_iter().map(|g| (g[0].into(), g[1].into())));
                }
            }
            _ => return Err(unknown()),
        },
        Block::Quantaloid { spec, .. } => match key {
            "objects" => spec.objects.extend(list()),
            "hom" => {
                if rest.len() < 3 {
                    return Err(err(ln, toks[0].col, "expected `hom P Q elements ...` or `hom P Q le ...`"));
                }
                let (p, q) = (rest[0].text.to_string(), rest[1].text.to_string());
                let entry = match spec.homs.iter().position(|h| h.dom == p && h.cod == q) {
                    Some(i) => i,
                    None => {
                        spec.homs.push(HomSpec { dom: p, cod: q, elements: vec![], le: vec![] });
                        spec.homs.len() - 1
                    }
                };
                let h = &mut spec.homs[entry];
                match rest[2].text {
                    "elements" => h.elements.extend(rest[3..].iter().map(|t| t.text.to_string())),
                    "le" => h.le.extend(groups(ln, &rest[3..], 2, "le")?.into_iter().map(|g| (g[0].into(), g[1].into()))),
                    other => return Err(err(ln, rest[2].col, format!("expected `elements` or `le`, found `{other}`"))),
                }
            }
            "compose" => spec.compose.extend(groups(ln, rest, 6, key)?.into_iter().map(|g| ComposeEntry {
                p: g[0].into(),
                q: g[1].into(),
                r: g[2].into(),
                g: g[3].into(),
                f: g[4].into(),
                h: g[5].into(),
            })),
            "identity" => spec
                .identities
                .extend(groups(ln, rest, 2, key)?.into_iter().map(|g| (g[0].into(), g[1].into()))),
            "involution" => {
                let inv = spec.involution.get_or_insert_with(Vec::new);
                if !rest.is_empty() {
                    inv.extend(
                        groups(ln, rest, 4, key)?
                            .into_iter()
                            .map(|g| (g[0].into(), g[1].into(), g[2].into(), g[3].into())),
                    );
                }
            }
            _ => return Err(unknown()),
        },
        Block::QCategory { objects, homs, .. } => match key {
            "object" => objects.extend(groups(ln, rest, 2, key)?.into_iter().map(|g| (g[0].into(), g[1].into()))),
            "hom" => homs.extend(groups(ln, rest, 3, key)?.into_iter().map(|g| (g[0].into(), g[1].into(), g[2].into()))),
            _ => return Err(unknown()),
        },
        Block::Functor { map, .. } => match key {
            "map" => map.extend(groups(ln, rest, 2, key)?.into_iter().map(|g| (g[0].into(), g[1].into()))),
            _ => return Err(unknown()),
        },
        Block::Distributor { at, .. } => match key {
            "at" => at.extend(groups(ln, rest, 3, key)?.into_iter().map(|g| (g[0].into(), g[1].into(), g[2].into()))),
            _ => return Err(unknown()),
        },
        Block::QSet { elements, eps, .. } => match key {
            "element" => elements.extend(list()),
            "eps" => eps.extend(groups(ln, rest, 3, key)?.into_iter().map(|g| (g[0].into(), g[1].into(), g[2].into()))),
            _ => return Err(unknown()),
        },
    }
    Ok(())
}

fn pipe<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(" | ")
}

/// Writes a block back in the format [`parse`] reads.
pub fn emit(block: &Block) -> String {
    let mut s = String::new();
    let mut line = |l: String| {
        s.push_str(&l);
        s.push('\n');
    };
    match block {
        Block::Quantale { name, spec } => {
            line(format!("quantale {name}"));
            line(format!("  elements {}", spec.elements.join(" ")));
            if !spec.le.is_empty() {
                line(format!("  le {}", pipe(&spec.le, |(a, b)| format!("{a} {b}"))));
            }
            let mut rows: Vec<&str> = Vec::new();
            for (a, _, _) in &spec.mult {
                if !rows.contains(&a.as_str()) {
                    rows.push(a);
                }
            }
            for r in rows {
                let row: Vec<_> = spec.mult.iter().filter(|m| m.0 == r).collect();
                line(format!("  mult {}", pipe(&row, |(a, b, c)| format!("{a} {b} {c}"))));
            }
            if let Some(u) = &spec.unit {
                line(format!("  unit {u}"));
            }
            if let Some(inv) = &spec.involution {
                let body = pipe(inv, |(a, b)| format!("{a} {b}"));
                line(format!("  involution {body}").trim_end().to_string());
            }
        }
        Block::Quantaloid { name, spec } => {
            line(format!("quantaloid {name}"));
            line(format!("  objects {}", spec.objects.join(" ")));
            for h in &spec.homs {
                line(format!("  hom {} {} elements {}", h.dom, h.cod, h.elements.join(" ")));
                if !h.le.is_empty() {
                    line(format!("  hom {} {} le {}", h.dom, h.cod, pipe(&h.le, |(a, b)| format!("{a} {b}"))));
                }
            }
            for c in &spec.compose {
                line(format!("  compose {} {} {} {} {} {}", c.p, c.q, c.r, c.g, c.f, c.h));
            }
            for (p, e) in &spec.identities {
                line(format!("  identity {p} {e}"));
            }
            if let Some(inv) = &spec.involution {
                if inv.is_empty() {
                    line("  involution".into());
                }
                for (p, q, u, v) in inv {
                    line(format!("  involution {p} {q} {u} {v}"));
                }
            }
        }
        Block::QCategory { name, over, objects, homs } => {
            line(format!("qcategory {name} over {over}"));
            for (x, t) in objects {
                line(format!("  object {x} {t}"));
            }
            for (x, y, v) in homs {
                line(format!("  hom {x} {y} {v}"));
            }
        }
        Block::Functor { name, from, to, map } => {
            line(format!("functor {name} from {from} to {to}"));
            for (x, y) in map {
                line(format!("  map {x} {y}"));
            }
        }
        Block::Distributor { name, from, to, at } => {
            line(format!("distributor {name} from {from} to {to}"));
            for (y, x, v) in at {
                line(format!("  at {y} {x} {v}"));
            }
        }
        Block::QSet { name, over, elements, eps } => {
            line(format!("qset {name} over {over}"));
            if !elements.is_empty() {
                line(format!("  element {}", elements.join(" ")));
            }
            for (x, y, v) in eps {
                line(format!("  eps {x} {y} {v}"));
            }
        }
    }
    s.push_str("end\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_are_one_based_and_skip_comments() {
        let t = tokenize("  le a b | c d  # x y");
        let cols: Vec<_> = t.iter().map(|t| (t.text, t.col)).collect();
        assert_eq!(cols, [("le", 3), ("a", 6), ("b", 8), ("|", 10), ("c", 12), ("d", 14)]);
    }

    #[test]
    fn malformed_mult_reports_location() {
        let src = "quantale Q\n  elements bot top\n  mult top top\nend\n";
        let e = parse(src).unwrap_err();
        assert_eq!((e.line, e.col), (3, 8));
    }

    #[test]
    fn missing_end_is_reported() {
        assert!(parse("quantale Q\n  elements a\n").unwrap_err().message.contains("no `end`"));
    }

    #[test]
    fn bare_involution_declares_identity() {
        let b = parse("quantale Q\n elements bot top\n le bot top\n mult top top top\n involution\nend").unwrap();
        let Block::Quantale { spec, .. } = &b[0].block else { panic!() };
        assert_eq!(spec.involution, Some(vec![]));
        assert_eq!(parse(&emit(&b[0].block)).unwrap()[0].block, b[0].block);
    }
}
