//! JSON and markdown renderings. Both are byte-deterministic.

use std::fmt::Write;

use serde::Serialize;

use crate::report::{ComparisonReport, EntryReport, LocusView, RangeAudit, SpaceView};

/// Pretty JSON with object keys sorted at every level, newline-terminated.
pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    // serde_json::Value keeps objects in a BTreeMap, which sorts the keys
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".to_string()
    } else {
        items.join(", ")
    }
}

fn span(items: &[String]) -> String {
    if items.is_empty() {
        "0".to_string()
    } else {
        format!("span{{{}}}", items.join(", "))
    }
}

/// `[r1c1, r1c2; r2c1, r2c2]`
pub fn inline_matrix(rows: &[Vec<String>]) -> String {
    let body: Vec<String> = rows.iter().map(|r| r.join(", ")).collect();
    format!("[{}]", body.join("; "))
}

fn range_row(out: &mut String, name: &str, r: &RangeAudit) {
    let printed = r.printed.map_or_else(|| "-".to_string(), |(a, b)| format!("{a}-{b}"));
    let _ = writeln!(
        out,
        "| {name} | {}-{} | {printed} | {}-{} | {} |",
        r.computed.0,
        r.computed.1,
        r.claimed.0,
        r.claimed.1,
        flag(Some(r.claim_holds))
    );
}

fn space_table(out: &mut String, title: &str, report: &ComparisonReport, pick: fn(&EntryReport) -> &SpaceView) {
    let _ = writeln!(out, "## {title}\n");
    out.push_str("| Algebra | Generic element | Dim | Printed | Match |\n");
    out.push_str("|---|---|---|---|---|\n");
    for e in &report.entries {
        let v = pick(e);
        let _ = writeln!(
            out,
            "| {} | `{}` | {} | {} | {} |",
            e.id,
            inline_matrix(&v.generic_element),
            v.dim,
            opt(v.expected),
            flag(v.matches)
        );
    }
    out.push('\n');
}

fn locus_cells(l: &LocusView) -> (String, String) {
    let roots: Vec<String> = l.roots.iter().chain(&l.radical_roots).cloned().collect();
    (list_or_none(&l.polynomials), list_or_none(&roots))
}

pub fn markdown(report: &ComparisonReport) -> String {
    let s = &report.summary;
    let mut out = String::new();
    out.push_str("# Comparison report\n\n## Summary\n\n");
    let _ = writeln!(out, "- Entries: {}", s.entries);
    let _ = writeln!(out, "- Associative: {} of {}", s.associative, s.entries);
    let _ = writeln!(out, "- Nilpotent: {} of {}", s.nilpotent, s.entries);
    let _ = writeln!(
        out,
        "- Centers matching the printed center: {} of {} (mismatches: {})",
        s.center_matches,
        s.entries,
        list_or_none(&s.center_mismatches)
    );
    let _ = writeln!(
        out,
        "- Printed dims matched: {} of {}, mismatched: {}",
        s.dims_matched,
        s.dims_expected,
        s.dims_expected - s.dims_matched
    );
    let _ = writeln!(
        out,
        "- Chain inn <= cent <= der: holds for {} of {} (fails: {}; printed dims fail: {})",
        s.chain.holds,
        s.entries,
        list_or_none(&s.chain.fails),
        list_or_none(&s.chain.printed_fails)
    );
    let _ = writeln!(
        out,
        "- Specializations consistent with generic dims: {}",
        flag(Some(s.specialization_consistent))
    );
    let _ = writeln!(
        out,
        "- Hard invariants: {} (failures: {})",
        if s.hard_invariants_hold { "hold" } else { "FAIL" },
        list_or_none(&s.hard_failures)
    );

    out.push_str("\n### Ranges\n\n");
    out.push_str("| Invariant | Computed | Printed | Claimed | Claim holds |\n");
    out.push_str("|---|---|---|---|---|\n");
    range_row(&mut out, "der", &s.ranges.der);
    range_row(&mut out, "cent", &s.ranges.cent);
    range_row(&mut out, "inn", &s.ranges.inn);

    out.push_str("\n## Axioms and centers\n\n");
    out.push_str("| Algebra | Associative | Nilindex | Center | Printed center | Match |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for e in &report.entries {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            e.id,
            flag(Some(e.hard_checks.associative)),
            opt(e.nilindex),
            span(&e.center.basis),
            e.center.expected.as_deref().map_or_else(|| "-".to_string(), span),
            flag(e.center.matches)
        );
    }
    out.push('\n');

    space_table(&mut out, "Derivations", report, |e| &e.der);
    space_table(&mut out, "Centroid", report, |e| &e.cent);
    space_table(&mut out, "Inner derivations", report, |e| &e.inn);

    out.push_str("## Printed dim mismatches\n\n");
    out.push_str("| Algebra | Invariant | Printed | Computed |\n|---|---|---|---|\n");
    for m in &s.dim_mismatches {
        let _ = writeln!(out, "| {} | {} | {} | {} |", m.id, m.invariant, m.printed, m.computed);
    }

    out.push_str("\n## Exceptional loci\n\n");
    out.push_str("| Algebra | Polynomials | Roots | Checked at | Consistent |\n|---|---|---|---|---|\n");
    for e in report.entries.iter().filter(|e| e.parametric) {
        let (polys, roots) = locus_cells(&e.exceptional_locus);
        let points: Vec<String> = e.specializations.iter().map(|p| p.alpha.clone()).collect();
        let _ = writeln!(
            out,
            "| {} | {polys} | {roots} | {} | {} |",
            e.id,
            list_or_none(&points),
            flag(Some(e.specializations.iter().all(|p| p.consistent)))
        );
    }

    out.push_str("\n## Discrepancies and notes\n");
    for e in &report.entries {
        if e.discrepancies.is_empty() && e.provenance_notes.is_empty() {
            continue;
        }
        let _ = writeln!(out, "\n### {}\n", e.id);
        for d in &e.discrepancies {
            let _ = writeln!(out, "- {d}");
        }
        for n in &e.provenance_notes {
            let _ = writeln!(out, "- note: {n}");
        }
    }
    out
}

fn space_section(out: &mut String, title: &str, v: &SpaceView) {
    let _ = writeln!(out, "\n## {title}\n");
    let _ = writeln!(out, "- dim: {}", v.dim);
    let _ = writeln!(out, "- generic element: `{}`", inline_matrix(&v.generic_element));
    out.push_str("- basis:\n");
    for b in &v.basis {
        let _ = writeln!(out, "  - `{}`", inline_matrix(b));
    }
}

/// Markdown for a single analyzed algebra.
pub fn entry_markdown(e: &EntryReport) -> String {
    let mut out = String::new();
    let title = if e.id.is_empty() { "Algebra" } else { e.id.as_str() };
    let _ = writeln!(out, "# {title}\n");
    let _ = writeln!(out, "- dimension: {}", e.dim);
    if e.associator_violations.is_empty() {
        out.push_str("- associative: yes\n");
    } else {
        let _ = writeln!(out, "- associative: no ({} violating triples)", e.associator_violations.len());
    }
    let _ = writeln!(out, "- nilindex: {}", opt(e.nilindex));
    let _ = writeln!(out, "- center: {} (dim {})", span(&e.center.basis), e.center.dim);
    let _ = writeln!(
        out,
        "- dims (der, cent, inn): ({}, {}, {})",
        e.der.dim, e.cent.dim, e.inn.dim
    );
    space_section(&mut out, "Derivations", &e.der);
    space_section(&mut out, "Centroid", &e.cent);
    space_section(&mut out, "Inner derivations", &e.inn);
    if e.parametric {
        let (polys, roots) = locus_cells(&e.exceptional_locus);
        out.push_str("\n## Exceptional locus\n\n");
        let _ = writeln!(out, "- polynomials: {polys}");
        let _ = writeln!(out, "- roots: {roots}");
        let _ = writeln!(out, "- unsolved: {}", list_or_none(&e.exceptional_locus.unsolved));
    }
    if !e.associator_violations.is_empty() {
        out.push_str("\n## Associator violations\n\n");
        for v in &e.associator_violations {
            let [i, j, k] = v.triple;
            let _ = writeln!(out, "- (e{i} e{j}) e{k} - e{i} (e{j} e{k}) = {}", v.associator);
        }
    }
    out
}
