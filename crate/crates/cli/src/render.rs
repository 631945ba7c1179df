use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use chargraph::classify::{CaseReport, CaseRow, EvenFiveHit, InterestClause, InterestHit, OddFourHit, SolvableCheck};
use chargraph::CharGraph;

use crate::Format;

pub fn prime_set<'a>(primes: impl IntoIterator<Item = &'a u64>) -> String {
    let items: Vec<String> = primes.into_iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn graph(g: &CharGraph, format: Format, name: &str) -> String {
    match format {
        Format::Json => format!("{}\n", g.to_json()),
        Format::Dot => g.to_dot(name),
        Format::Table => graph_table(g),
    }
}

pub fn graph_table(g: &CharGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", prime_set(&g.vertex_set()));
    let edges: Vec<String> = g.edges().map(|(a, b)| format!("{a}-{b}")).collect();
    let _ = writeln!(out, "edges: {}", if edges.is_empty() { "none".into() } else { edges.join(" ") });
    let comps: Vec<String> = g.connected_components().iter().map(prime_set).collect();
    let _ = writeln!(out, "components: {}", comps.join(" "));
    out
}

pub fn mapping(m: &BTreeMap<u64, u64>) -> String {
    let parts: Vec<String> = m.iter().map(|(a, b)| format!("{a}->{b}")).collect();
    parts.join(" ")
}

pub fn case_report(r: &CaseReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "f = {}, q = {}", r.f, r.q);
    let _ = writeln!(out, "π(q-1) = {}  π(q+1) = {}", prime_set(&r.minus_primes), prime_set(&r.plus_primes));
    let _ = writeln!(out, "sizes = ({}, {})  case {}", r.sizes.0, r.sizes.1, r.case);
    if let Some(shape) = &r.expected_shape {
        let _ = writeln!(out, "expected shape: {shape}");
    }
    if let Some(radical) = &r.radical {
        let sets: Vec<String> = radical.iter().map(|d| prime_set(d.degrees())).collect();
        let _ = writeln!(out, "radical: {}", if sets.is_empty() { "trivial".into() } else { sets.join(" × ") });
    }
    if let Some(c) = &r.checks {
        let _ = writeln!(out, "vertices: {} ({} + {})", c.vertex_count, c.socle_vertices, c.radical_vertices);
        let _ = writeln!(out, "K4-free: {}  clique number: {}", c.k4_free, c.clique_number);
        let _ = writeln!(out, "complement bipartite: {}", c.complement_bipartite);
        let _ = writeln!(out, "isomorphic to expected: {}", c.isomorphic_to_expected);
    }
    if let Some(iso) = &r.isomorphism {
        let parts: Vec<String> = iso.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        let _ = writeln!(out, "isomorphism: {}", parts.join(" "));
    }
    if r.checks.is_some() {
        let _ = writeln!(out, "verified: {}", r.verified);
    }
    out
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "COUNTEREXAMPLE"
    }
}

pub fn interest_table(hits: &[InterestHit]) -> String {
    let mut out = format!("{:>3}  {:<28} {:<28} clause\n", "f", "2^f-1", "2^f+1");
    for h in hits {
        let clause = match h.clause {
            Some(InterestClause::A) => "A".to_string(),
            Some(InterestClause::B { r, t, beta }) => format!("B (r={r}, t={t}, β={beta})"),
            None => verdict(false).to_string(),
        };
        let _ = writeln!(out, "{:>3}  {:<28} {:<28} {clause}", h.f, h.minus.to_string(), h.plus.to_string());
    }
    out
}

pub fn evenfive_table(hits: &[EvenFiveHit]) -> String {
    let mut out = format!("{:>3}  {:<24} {:<24} status\n", "f", "π(2^f-1)", "π(2^f+1)");
    for h in hits {
        let _ = writeln!(
            out,
            "{:>3}  {:<24} {:<24} {}",
            h.f,
            prime_set(&h.minus_primes),
            prime_set(&h.plus_primes),
            verdict(h.conforming)
        );
    }
    out
}

pub fn oddfour_table(hits: &[OddFourHit]) -> String {
    let mut out = format!("{:>6} {:>6} {:>3}  {:<20} clause\n", "q", "p", "f", "π(q²-1)");
    for h in hits {
        let clause = match h.clause {
            Some(c) => format!("{c:?}"),
            None => verdict(false).to_string(),
        };
        let _ = writeln!(out, "{:>6} {:>6} {:>3}  {:<20} {clause}", h.q, h.p, h.f, prime_set(&h.primes));
    }
    out
}

pub fn cases_table(rows: &[CaseRow]) -> String {
    let mut out = format!("{:>3}  {:<6} case\n", "f", "sizes");
    for r in rows {
        let _ = writeln!(out, "{:>3}  ({}, {})  {}", r.f, r.sizes.0, r.sizes.1, r.case);
    }
    let by_case: BTreeSet<String> = rows.iter().map(|r| r.case.to_string()).collect();
    let _ = writeln!(out, "cases present: {}", by_case.into_iter().collect::<Vec<_>>().join(", "));
    out
}

pub fn solvable_check(c: &SolvableCheck) -> String {
    let mut out = graph_table(&c.graph);
    let _ = writeln!(out, "no three pairwise non-adjacent primes: {}", c.palfy);
    let _ = writeln!(out, "triangle or C4 (or at most 3 vertices): {}", c.solvable_shape);
    if let Some(w) = &c.vertex_bound_warning {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "plausible: {}", c.plausible());
    out
}
