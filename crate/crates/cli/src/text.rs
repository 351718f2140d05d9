//! Plain-text rendering of the reports.

use std::fmt::Write;

use liftable_core::germ::BranchDocument;
use liftable_core::liftgen::GeneratorSetDocument;

use crate::report::{CorpusReport, EntryResult, GermReport, MinGenReport, VerifyReport};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn tuple(items: &[String]) -> String {
    format!("({})", items.join(", "))
}

fn field(components: &[String]) -> String {
    let terms: Vec<String> = components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(q, c)| {
            if c.contains(['+', ' ']) {
                format!("({c})*d/dX{}", q + 1)
            } else {
                format!("{c}*d/dX{}", q + 1)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn germ_report(r: &GermReport) -> String {
    let mut s = String::new();
    let name = r.germ.name.as_deref().unwrap_or("germ");
    let b = r.germ.branches.len();
    let _ = writeln!(s, "{name}: n = {}, p = {}, {b} branch{}", r.germ.n, r.germ.p, if b == 1 { "" } else { "es" });
    for (j, br) in r.germ.branches.iter().enumerate() {
        let comps = match br {
            BranchDocument::Full { components, .. } | BranchDocument::Bare(components) => components,
        };
        let _ = writeln!(s, "  branch {j}: {}", tuple(comps));
    }
    let _ = writeln!(s, "delta = {}, gamma = {}, ell = {}", r.delta, r.gamma, r.stabilization.ell);
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "{:>3} {:>6} {:>6} {:>7} {:>7} {:>6} {:>7} {:>5} {:>5} {:>5}",
        "i", "delta", "gamma", "domain", "target", "rank", "kernel", "surj", "inj", "jet"
    );
    for l in &r.levels {
        let _ = writeln!(
            s,
            "{:>3} {:>6} {:>6} {:>7} {:>7} {:>6} {:>7} {:>5} {:>5} {:>5}",
            l.i,
            l.delta,
            l.gamma,
            l.domain_dim,
            l.target_dim,
            l.rank,
            l.kernel_dim,
            yes_no(l.surjective),
            yes_no(l.injective),
            l.jet_order.0
        );
    }
    let _ = writeln!(s);
    let wb = r.well_behaved_index.map_or("undefined".to_string(), |v| v.to_string());
    let _ = writeln!(s, "i1 = {}, i2 = {}, well-behaved index = {wb}", r.i1, r.i2);
    match (&r.min_generators, &r.note) {
        (Some(m), _) => {
            let _ = writeln!(
                s,
                "minimal generators = {} (level {}, formula {})",
                m.direct, m.level, m.predicted
            );
        }
        (None, Some(note)) => {
            let _ = writeln!(s, "minimal generators: not computed ({note})");
        }
        (None, None) => {}
    }
    s
}

pub fn mingen_report(r: &MinGenReport) -> String {
    let mut s = String::new();
    if let Some(name) = &r.germ {
        let _ = writeln!(s, "{name}");
    }
    let _ = writeln!(s, "i1 = {}, i2 = {}", r.i1, r.i2);
    if let (Some(level), Some(direct), Some(predicted)) = (r.level, r.direct, r.predicted) {
        let _ = writeln!(s, "kernel of level {} map, by rank:    {direct}", level + 1);
        let _ = writeln!(s, "kernel of level {} map, by formula: {predicted}", level + 1);
    }
    match r.min_generators {
        Some(m) => {
            let _ = writeln!(s, "minimal generators = {m}");
        }
        None => {
            let _ = writeln!(s, "minimal generators: not computed");
        }
    }
    if let Some(note) = &r.note {
        let _ = writeln!(s, "note: {note}");
    }
    s
}

pub fn generator_set(d: &GeneratorSetDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "level {}, {} generator{}", d.level, d.rho, if d.rho == 1 { "" } else { "s" });
    for (k, g) in d.generators.iter().enumerate() {
        let tag = if g.exact { "exact" } else { "to working order" };
        let _ = writeln!(s, "xi{} = {}  [{tag}]", k + 1, field(&g.components));
        for w in &g.witnesses {
            let _ = writeln!(s, "    eta on branch {}: {}", w.branch, tuple(&w.eta));
        }
    }
    s
}

pub fn verify_report(r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "jet order {}", r.order.0);
    for (k, v) in r.fields.iter().enumerate() {
        let verdict = match (&v.residual, v.ok) {
            (Some(res), true) => format!("liftable, residual {res}"),
            _ => format!("not liftable (branches {:?})", v.failed_branches),
        };
        let _ = writeln!(s, "{}: {}  {verdict}", k + 1, field(&v.components));
        for w in &v.witnesses {
            let _ = writeln!(s, "    eta on branch {}: {}", w.branch, tuple(&w.eta));
        }
    }
    let _ = writeln!(s, "{}", if r.all_ok { "all liftable" } else { "some fields are not liftable" });
    s
}

fn entry_rows(s: &mut String, e: &EntryResult) {
    let status = if e.pass { "PASS" } else { "FAIL" };
    if e.checks.is_empty() {
        let _ = writeln!(s, "{:<20} {:<46} {:>16} {:>16}  {status}", e.key, "-", "-", "-");
    }
    for c in &e.checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{:<20} {:<46} {:>16} {:>16}  {mark}",
            e.key,
            c.name,
            c.expected.to_string().trim_matches('"'),
            c.actual.to_string().trim_matches('"')
        );
    }
    if let Some(note) = &e.note {
        let _ = writeln!(s, "{:<20} note: {note}", "");
    }
}

pub fn corpus_report(r: &CorpusReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<20} {:<46} {:>16} {:>16}  result", "germ", "check", "expected", "actual");
    for e in r.entries.iter().chain(&r.fixtures) {
        entry_rows(&mut s, e);
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "{} of {} passed", r.passed, r.total);
    s
}
