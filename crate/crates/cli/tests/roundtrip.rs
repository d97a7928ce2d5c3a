use std::io::Write;
use std::process::Command;
use std::sync::Arc;

use proptest::prelude::*;
use qloid::format::emit;
use qloid::workspace::category_block;
use qloid::Workspace;
use qloid_core::catalog;
use qloid_core::diagonal::dq_from_quantale;
use qloid_core::qcat::{QCategory, TypedSet};
use qloid_core::quantaloid::Morphism;

const Q2: &str = "\
quantale Q2
  elements bot b ar al c top
  le bot b | b ar | b al | ar c | al c | c top
  mult b b b | b al b | b ar ar | b c ar | b top ar
  mult al b al | al al al | al ar top | al c top | al top top
  mult ar b b | ar al b | ar ar ar | ar c ar | ar top ar
  mult c b al | c al al | c ar top | c c top | c top top
  mult top b al | top al al | top ar top | top c top | top top top
  involution al ar
end
";

fn random_category(types: &[usize], values: &[usize]) -> Option<QCategory> {
    let base = Arc::new(dq_from_quantale(&catalog::q2()).unwrap());
    let n = types.len();
    let types: Vec<usize> = types.iter().map(|t| t % base.len()).collect();
    let entries = (0..n * n)
        .map(|k| {
            let (p, q) = (types[k % n], types[k / n]);
            Morphism::new(p, q, values[k] % base.hom(p, q).len())
        })
        .collect();
    let names = (0..n).map(|i| format!("x{i}")).collect();
    QCategory::new(base, TypedSet::new(names, types), entries).ok()
}

proptest! {
    #[test]
    fn categories_survive_emit_and_parse(
        types in proptest::collection::vec(0usize..3, 1..4),
        values in proptest::collection::vec(0usize..4, 9),
    ) {
        let Some(c) = random_category(&types, &values) else { return Ok(()) };
        let text = format!("{Q2}\n{}", emit(&category_block("X", "dq(Q2)", &c)));
        let ws = Workspace::parse_str(&text).unwrap();
        prop_assert_eq!(ws.category("X").unwrap().entries(), c.entries());
        prop_assert_eq!(ws.category("X").unwrap().types(), c.types());
        let again = Workspace::parse_str(&ws.emit()).unwrap();
        prop_assert!(ws == again);
    }
}

#[test]
fn binary_reads_emitted_workspace() {
    let ws = Workspace::parse_str(&format!("{Q2}\nqcategory S over dq(Q2)\n  object x b\n  hom x x b\nend\n")).unwrap();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(ws.emit().as_bytes()).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qloid"))
        .args(["presingletons", "--category", "S"])
        .arg(file.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().ends_with("3 presingletons\n"));
}
