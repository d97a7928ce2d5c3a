//! Command dispatch and report rendering.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use qloid_core::classifier::{build_classifier, classify_point, is_point, true_arrow};
use qloid_core::diagonal::check_embedding;
use qloid_core::distributor::factorize;
use qloid_core::presheaf::{cauchy_failure, enumerate_presingletons, sup_map, CauchyFailure, Presingleton, SupOutcome};
use qloid_core::qcat::{enumerate_functors, QCategory};
use qloid_core::qset::{category_to_qset, prop75_check, qset_to_category};
use qloid_core::quantaloid::Quantaloid;
use qloid_core::symmetry::{
    bounded_preservation_search, completion_symmetric_for, is_singleton, quantale_symmetry_criteria, SearchBounds,
    SearchOutcome,
};
use qloid_core::{Budget, Error};

use crate::format;
use crate::workspace::{category_block, distributor_block, invalid, CliError, Workspace};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Dq,
    Residual,
    Terminal,
    Presingletons,
    Cauchy,
    Cocomplete,
    Factorize,
    Classify,
    Symmetry,
    Qset,
    Prop75,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Dq => "dq",
            Command::Residual => "residual",
            Command::Terminal => "terminal",
            Command::Presingletons => "presingletons",
            Command::Cauchy => "cauchy",
            Command::Cocomplete => "cocomplete",
            Command::Factorize => "factorize",
            Command::Classify => "classify",
            Command::Symmetry => "symmetry",
            Command::Qset => "qset",
            Command::Prop75 => "prop75",
            Command::Report => "report",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub quantale: Option<String>,
    pub quantaloid: Option<String>,
    pub base: Option<String>,
    pub category: Option<String>,
    pub distributor: Option<String>,
    pub functor: Option<String>,
    pub qset: Option<String>,
    pub r#type: Option<String>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub max_enum: Option<u64>,
    pub max_objects: Option<usize>,
}

impl Options {
    fn budget(&self) -> Budget {
        self.max_enum.map(Budget).unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub status: Status,
    pub text: String,
    pub data: Value,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Holds => 0,
            Status::Fails => 1,
        }
    }

    pub fn machine(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command.name(),
            "status": match self.status { Status::Holds => "holds", Status::Fails => "fails" },
            "result": self.data,
        })
    }
}

pub fn error_document(command: Command, e: &CliError) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command.name(),
        "status": if e.is_budget() { "budget_exceeded" } else { "invalid" },
        "error": e.to_string(),
    })
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("this command needs --{flag}")))
}

/// Left-aligned columns separated by two spaces.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn set(items: impl IntoIterator<Item = impl AsRef<str>>) -> String {
    let v: Vec<String> = items.into_iter().map(|s| s.as_ref().to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

pub fn run(cmd: Command, ws: &mut Workspace, o: &Options) -> Result<Report, CliError> {
    let (status, text, data) = match cmd {
        Command::Validate => validate(ws),
        Command::Dq => dq(ws, o)?,
        Command::Residual => residual(ws, o)?,
        Command::Terminal => terminal(ws, o)?,
        Command::Presingletons => presingletons(ws, o)?,
        Command::Cauchy => cauchy(ws, o)?,
        Command::Cocomplete => cocomplete(ws, o)?,
        Command::Factorize => factorize_cmd(ws, o)?,
        Command::Classify => classify(ws, o)?,
        Command::Symmetry => symmetry(ws, o)?,
        Command::Qset => qset(ws, o)?,
        Command::Prop75 => prop75(ws, o)?,
        Command::Report => report(ws, o)?,
    };
    Ok(Report { command: cmd, status, text, data })
}

type Out = (Status, String, Value);

fn validate(ws: &Workspace) -> Out {
    let mut rows = vec![vec!["kind".into(), "name".into(), "size".into()]];
    let mut items = Vec::new();
    let mut add = |kind: &str, name: &str, size: usize| {
        rows.push(vec![kind.into(), name.into(), size.to_string()]);
        items.push(json!({"kind": kind, "name": name, "size": size}));
    };
    for (n, q) in &ws.quantales {
        add("quantale", n, q.len());
    }
    for (n, k) in &ws.quantaloids {
        add("quantaloid", n, k.len());
    }
    for e in &ws.categories {
        add("qcategory", &e.name, e.category.len());
    }
    for e in &ws.functors {
        add("functor", &e.name, e.item.source().len());
    }
    for e in &ws.distributors {
        add("distributor", &e.name, e.item.entries().len());
    }
    for e in &ws.qsets {
        add("qset", &e.name, e.set.len());
    }
    let text = format!("{}all items valid\n", table(&rows));
    (Status::Holds, text, json!({"items": items}))
}

fn describe_base(b: &Quantaloid) -> (String, Value) {
    let mut text = format!("objects {}\n", set(b.object_names()));
    let mut homs = Vec::new();
    for p in b.objects() {
        for q in b.objects() {
            let h = b.hom(p, q);
            if h.len() > 1 {
                let _ = writeln!(text, "hom({}, {}) = {}", b.object_name(p), b.object_name(q), set(h.names()));
                homs.push(json!({"dom": b.object_name(p), "cod": b.object_name(q), "elements": h.names()}));
            }
        }
    }
    let stable: Vec<&str> = b.stable_objects().into_iter().map(|p| b.object_name(p)).collect();
    let _ = writeln!(text, "stable at {}", set(&stable));
    (text, json!({"objects": b.object_names(), "homs": homs, "stable": stable}))
}

fn dq(ws: &mut Workspace, o: &Options) -> Result<Out, CliError> {
    let reference = match (&o.quantale, &o.quantaloid) {
        (Some(q), _) => format!("dq({q})"),
        (None, Some(k)) => format!("dq({k})"),
        _ => return Err(CliError::Usage("dq needs --quantale or --quantaloid".into())),
    };
    let b = ws.base(&reference)?;
    let (mut text, mut data) = describe_base(&b);
    let emb = format!("{:?}", check_embedding(&b));
    let _ = writeln!(text, "embedding {emb}");
    data["embedding"] = json!(emb);
    Ok((Status::Holds, text, data))
}

fn residual(ws: &Workspace, o: &Options) -> Result<Out, CliError> {
    let qn = need(&o.quantale, "quantale")?;
    let q = ws.quantale(qn)?;
    let (an, bn) = (need(&o.a, "a")?, need(&o.b, "b")?);
    let a = q.index_of(an).map_err(invalid(qn))?;
    let b = q.index_of(bn).map_err(invalid(qn))?;
    let right = q.name(q.right_residual(a, b));
    let left = q.name(q.left_residual(b, a));
    let text = format!("{an} ↘ {bn} = {right}\n{bn} ↙ {an} = {left}\n");
    Ok((Status::Holds, text, json!({"a": an, "b": bn, "right": right, "left": left})))
}

fn base_ref(o: &Options) -> Result<String, CliError> {
    match (&o.base, &o.quantale, &o.quantaloid) {
        (Some(b), _, _) => Ok(b.clone()),
        (None, Some(q), _) => Ok(format!("dq({q})")),
        (None, None, Some(k)) => Ok(k.clone()),
        _ => Err(CliError::Usage("this command needs --base, --quantale or --quantaloid".into())),
    }
}

fn terminal(ws: &mut Workspace, o: &Options) -> Result<Out, CliError> {
    let b = ws.base(&base_ref(o)?)?;
    let t = QCategory::terminal(b.clone());
    let mut rows = vec![std::iter::once("τ".to_string()).chain(b.object_names().iter().cloned()).collect::<Vec<_>>()];
    let mut entries = Vec::new();
    for p in b.objects() {
        let mut row = vec![b.object_name(p).to_string()];
        for q in b.objects() {
            let v = b.value_name(t.alpha(p, q));
            row.push(v.to_string());
            entries.push(json!({"p": b.object_name(p), "q": b.object_name(q), "value": v}));
        }
        rows.push(row);
    }
    Ok((Status::Holds, table(&rows), json!({"tau": entries})))
}

fn show_presingleton(b: &Quantaloid, m: &Presingleton) -> Value {
    let names = |v: &[qloid_core::quantaloid::Morphism]| v.iter().map(|&u| b.value_name(u).to_string()).collect::<Vec<_>>();
    json!({"type": b.object_name(m.ty), "f": names(&m.f), "g": names(&m.g)})
}

fn presingletons(ws: &Workspace, o: &Options) -> Result<Out, CliError> {
    let name = need(&o.category, "category")?;
    let x = ws.category(name)?;
    let b = x.base();
    let ps = enumerate_presingletons(x, o.budget()).map_err(invalid(name))?;
    let mut rows = vec![vec!["#".into(), "presingleton (f; type; g)".into(), "represents".into(), "singleton".into()]];
    let mut list = Vec::new();
    for (k, m) in ps.iter().enumerate() {
        let reps: Vec<&str> = x
            .elements()
            .filter(|&i| Presingleton::representable(x, i) == *m)
            .map(|i| x.name(i))
            .collect();
        let single = if b.is_involutive() { Some(is_singleton(b, m).map_err(invalid(name))?) } else { None };
        rows.push(vec![
            k.to_string(),
            m.describe(b),
            set(&reps),
            single.map_or("-".into(), |s| s.to_string()),
        ]);
        let mut v = show_presingleton(b, m);
        v["represents"] = json!(reps);
        v["singleton"] = json!(single);
        list.push(v);
    }
    let text = format!("{}{} presingletons\n", table(&rows), ps.len());
    Ok((Status::Holds, text, json!({"presingletons": list})))
}

fn cauchy(ws: &Workspace, o: &Options) -> Result<Out, CliError> {
    let name = need(&o.category, "category")?;
    let x = ws.category(name)?;
    let b = x.base();
    match cauchy_failure(x, o.budget()).map_err(invalid(name))? {
        None => Ok((Status::Holds, format!("{name} is Cauchy complete\n"), json!({"complete": true}))),
        Some(CauchyFailure::Unrepresented(m)) => Ok((
            Status::Fails,
            format!("{name} is not Cauchy complete: {} is not represented\n", m.describe(b)),
            json!({"complete": false, "unrepresented": show_presingleton(b, &m)}),
        )),
        Some(CauchyFailure::Repeated { presingleton, first, second }) => Ok((
            Status::Fails,
            format!(
                "{name} is not Cauchy complete: {} is represented by {} and {}\n",
                presingleton.describe(b),
                x.name(first),
                x.name(second)
            ),
            json!({"complete": false, "repeated": show_presingleton(b, &presingleton),
                   "elements": [x.name(first), x.name(second)]}),
        )),
    }
}

fn cocomplete(ws: &Workspace, o: &Options) -> Result<Out, CliError> {
    let name = need(&o.category, "category")?;
    let x = ws.category(name)?;
    let b = x.base();
    match sup_map(x, o.budget()) {
        Err(Error::NotSeparated(w)) => Ok((
            Status::Fails,
            format!("{name} is not separated: {w}\n"),
            json!({"separated": false, "witness": w}),
        )),
        Err(e) => Err(invalid(name)(e)),
        Ok(SupOutcome::NotCocomplete(g)) => {
            let vals: Vec<&str> = g.values.iter().map(|&u| b.value_name(u)).collect();
            Ok((
                Status::Fails,
                format!("{name} is not cocomplete: no sup for {}:[{}]\n", b.object_name(g.ty), vals.join(",")),
                json!({"cocomplete": false, "presheaf": {"type": b.object_name(g.ty), "values": vals}}),
            ))
        }
        Ok(SupOutcome::Cocomplete(s)) => {
            let pc = &s.presheaves.category;
            let mut rows = vec![vec!["presheaf".into(), "sup".into()]];
            let mut list = Vec::new();
            for (k, &e) in s.map.iter().enumerate() {
                rows.push(vec![pc.name(k).to_string(), x.name(e).to_string()]);
                list.push(json!({"presheaf": pc.name(k), "sup": x.name(e)}));
            }
            Ok((Status::Holds, table(&rows), json!({"cocomplete": true, "sup": list})))
        }
    }
}

fn factorize_cmd(ws: &Workspace, o: &Options) -> Result<Out, CliError> {
    let name = need(&o.distributor, "distributor")?;
    let e = ws.distributor(name)?;
    let over = ws.category_entry(&e.to)?.over.clone();
    let f = match factorize(&e.item, o.budget()) {
        Err(Error::NotLeftAdjoint(w)) => {
            return Ok((
                Status::Fails,
                format!("{name} is not a left adjoint: {w}\n"),
                json!({"left_adjoint": false, "witness": w}),
            ))
        }
        other => other.map_err(invalid(name))?,
    };
    let z = format!("{name}_Z");
    let blocks = [
        category_block(&z, &over, &f.middle),
        distributor_block(&format!("{name}_Xi"), &e.from, &z, &f.epi),
        distributor_block(&format!("{name}_Theta"), &z, &e.to, &f.mono),
    ];
    let text: String = blocks.iter().map(format::emit).collect::<Vec<_>>().join("\n");
    Ok((
        Status::Holds,
        text.clone(),
        json!({"left_adjoint": true, "middle_size": f.middle.len(), "blocks": text}),
    ))
}

fn classify(ws: &mut Workspace, o: &Options) -> Result<Out, CliError> {
    let budget = o.budget();
    let (reference, phi) = match &o.functor {
        Some(fname) => {
            let e = ws.functor(fname)?;
            let over = ws.category_entry(&e.to)?.over.clone();
            (over, Some(e.item.clone()))
        }
        None => (base_ref(o)?, None),
    };
    let b = ws.base(&reference)?;
    let rn = need(&o.r#type, "type")?;
    let r = b.object_index(rn).map_err(invalid(&reference))?;
    let cls = build_classifier(&b, r, budget).map_err(invalid(&reference))?;
    let c = &cls.category;
    let mut text = format!("classifier of type {rn}: {}\n", set(c.names()));
    let mut rows = vec![std::iter::once("ρ".to_string()).chain(c.names().iter().cloned()).collect::<Vec<_>>()];
    for u in c.elements() {
        rows.push(
            std::iter::once(c.name(u).to_string())
                .chain(c.elements().map(|v| b.value_name(c.alpha(u, v)).to_string()))
                .collect(),
        );
    }
    text.push_str(&table(&rows));
    let t = true_arrow(&cls).map_err(invalid(&reference))?;
    let truth: Vec<Value> = b
        .objects()
        .map(|q| json!({"object": b.object_name(q), "value": c.name(t.apply(q))}))
        .collect();
    let _ = writeln!(
        text,
        "true_{rn}: {}",
        b.objects().map(|q| format!("{} ↦ {}", b.object_name(q), c.name(t.apply(q)))).collect::<Vec<_>>().join(", ")
    );
    let mut data = json!({"type": rn, "carrier": c.names(), "true": truth, "stable": b.is_stable_at(r)});
    let Some(phi) = phi else {
        return Ok((Status::Holds, text, data));
    };
    if !is_point(&phi) {
        let _ = writeln!(text, "{} is not a point", o.functor.as_deref().unwrap_or_default());
        data["point"] = json!(false);
        return Ok((Status::Fails, text, data));
    }
    let x = phi.target().clone();
    let mut cones = Vec::new();
    for e in &ws.categories {
        if Arc::ptr_eq(e.category.base(), x.base()) || e.category.base() == x.base() {
            cones.extend(enumerate_functors(&e.category, &x, budget).map_err(invalid(&e.name))?);
        }
    }
    match classify_point(&cls, &phi, &cones, budget) {
        Err(Error::NotStable(p)) => {
            let _ = writeln!(text, "base is not stable at {p}");
            data["stable"] = json!(false);
            Ok((Status::Fails, text, data))
        }
        Err(Error::ConeFails(w)) => {
            let _ = writeln!(text, "cone does not factor: {w}");
            data["cone_failure"] = json!(w);
            Ok((Status::Fails, text, data))
        }
        Err(e) => Err(invalid(&reference)(e)),
        Ok(rep) => {
            let chi: Vec<Value> = x
                .elements()
                .map(|e| json!({"element": x.name(e), "chi": c.name(rep.chi.apply(e))}))
                .collect();
            let _ = writeln!(
                text,
                "χ: {}",
                x.elements().map(|e| format!("{} ↦ {}", x.name(e), c.name(rep.chi.apply(e)))).collect::<Vec<_>>().join(", ")
            );
            let _ = writeln!(text, "{rep}");
            data["chi"] = json!(chi);
            data["cones_verified"] = json!(rep.cones_verified);
            data["cones_skipped"] = json!(rep.cones_skipped);
            Ok((Status::Holds, text, data))
        }
    }
}

fn symmetry(ws: &mut Workspace, o: &Options) -> Result<Out, CliError> {
    let budget = o.budget();
    if let Some(name) = &o.category {
        let x = ws.category(name)?;
        let b = x.base();
        return match completion_symmetric_for(x, budget).map_err(invalid(name))? {
            None => Ok((
                Status::Holds,
                format!("every presingleton of {name} is a singleton\n"),
                json!({"preserved": true}),
            )),
            Some(m) => Ok((
                Status::Fails,
                format!("{} is not a singleton\n", m.describe(b)),
                json!({"preserved": false, "witness": show_presingleton(b, &m)}),
            )),
        };
    }
    // A unital quantale is searched as its one-object quantaloid.
    let reference = match (&o.base, &o.quantale) {
        (None, Some(q)) if ws.quantale(q)?.unit().is_some() => q.clone(),
        _ => base_ref(o)?,
    };
    let b = ws.base(&reference)?;
    let mut text = String::new();
    let mut data = json!({});
    if let Some(qn) = &o.quantale {
        let crit = quantale_symmetry_criteria(ws.quantale(qn)?);
        let _ = writeln!(
            text,
            "integral {}, commutative {}, a∗b ≤ a∗a ∨ b∗b {}; sufficient condition {}",
            crit.integral,
            crit.commutative,
            crit.products_below_squares,
            if crit.applicable { "applies" } else { "does not apply" }
        );
        data["criteria"] = json!({
            "integral": crit.integral, "commutative": crit.commutative,
            "products_below_squares": crit.products_below_squares, "applicable": crit.applicable,
        });
    }
    let bounds = SearchBounds { max_points: o.max_objects.unwrap_or(2), max_types: None };
    match bounded_preservation_search(&b, bounds, budget).map_err(invalid(&reference))? {
        SearchOutcome::PassAtBound { bounds, checked } => {
            let _ = writeln!(
                text,
                "preserves symmetry at bound ({} points, all types): {checked} categories checked",
                bounds.max_points
            );
            data["search"] = json!({"passed": true, "max_points": bounds.max_points, "checked": checked});
            Ok((Status::Holds, text, data))
        }
        SearchOutcome::Counterexample { category, presingleton } => {
            let block = format::emit(&category_block("Counterexample", &reference, &category));
            let _ = writeln!(text, "counterexample:\n{block}non-singleton {}", presingleton.describe(&b));
            data["search"] = json!({
                "passed": false, "category": block, "witness": show_presingleton(&b, &presingleton),
            });
            Ok((Status::Fails, text, data))
        }
    }
}

fn qset(ws: &mut Workspace, o: &Options) -> Result<Out, CliError> {
    let name = need(&o.qset, "qset")?.to_string();
    let e = ws.qset(&name)?.clone();
    let b = ws.base(&format!("dq({})", e.over))?;
    let c = qset_to_category(&e.set, &b).map_err(invalid(&name))?;
    let back = category_to_qset(&c).map_err(invalid(&name))?;
    assert_eq!(back.psi, e.set.psi, "valued set round-trips through its category");
    let block = format::emit(&category_block(&name, &format!("dq({})", e.over), &c));
    let text = format!("{name} is a valued set over {}; as a category:\n{block}", e.over);
    Ok((Status::Holds, text, json!({"strict": e.set.is_strict(), "category": block})))
}

fn prop75(ws: &Workspace, o: &Options) -> Result<Out, CliError> {
    let qn = need(&o.quantale, "quantale")?;
    let r = prop75_check(ws.quantale(qn)?, o.budget()).map_err(invalid(qn))?;
    let text = format!(
        "integral {}\nterminal valued set Cauchy complete {}\nterminal valued set separated {}\nthe three agree\n",
        r.integral, r.cauchy_complete, r.separated
    );
    Ok((
        Status::Holds,
        text,
        json!({"integral": r.integral, "cauchy_complete": r.cauchy_complete, "separated": r.separated}),
    ))
}

/// Every applicable check on every item.
fn report(ws: &mut Workspace, o: &Options) -> Result<Out, CliError> {
    let mut text = String::new();
    let mut sections = Vec::new();
    let mut worst = Status::Holds;
    let mut push = |title: String, r: Result<Out, CliError>, text: &mut String| {
        let (status, body, data) = match r {
            Ok(v) => v,
            Err(e) if e.is_budget() => (Status::Fails, format!("budget exceeded: {e}\n"), json!({"error": e.to_string()})),
            Err(e) => (Status::Fails, format!("{e}\n"), json!({"error": e.to_string()})),
        };
        let _ = writeln!(text, "== {title}\n{body}");
        sections.push(json!({"section": title, "status": if status == Status::Holds { "holds" } else { "fails" }, "result": data}));
        if status == Status::Fails {
            worst = Status::Fails;
        }
    };
    for q in ws.quantales.iter().map(|e| e.0.clone()).collect::<Vec<_>>() {
        let opts = Options { quantale: Some(q.clone()), ..o.clone() };
        push(format!("dq {q}"), dq(ws, &opts), &mut text);
        if ws.quantale(&q)?.unit().is_some() {
            push(format!("prop75 {q}"), prop75(ws, &opts), &mut text);
        }
    }
    for c in ws.categories.iter().map(|e| e.name.clone()).collect::<Vec<_>>() {
        let opts = Options { category: Some(c.clone()), ..o.clone() };
        push(format!("presingletons {c}"), presingletons(ws, &opts), &mut text);
        push(format!("cauchy {c}"), cauchy(ws, &opts), &mut text);
        push(format!("cocomplete {c}"), cocomplete(ws, &opts), &mut text);
    }
    for d in ws.distributors.iter().map(|e| e.name.clone()).collect::<Vec<_>>() {
        let opts = Options { distributor: Some(d.clone()), ..o.clone() };
        push(format!("factorize {d}"), factorize_cmd(ws, &opts), &mut text);
    }
    for s in ws.qsets.iter().map(|e| e.name.clone()).collect::<Vec<_>>() {
        let opts = Options { qset: Some(s.clone()), ..o.clone() };
        push(format!("qset {s}"), qset(ws, &opts), &mut text);
    }
    Ok((worst, text, json!({"sections": sections})))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_aligns_columns() {
        let t = table(&[vec!["a".into(), "bb".into()], vec!["ccc".into(), "d".into()]]);
        assert_eq!(t, "a    bb\nccc  d\n");
    }
}
