//! Report output: a CSV summary table and JSON records, one per link.
//! Big integers are written as decimal strings and witnesses as element
//! lists so every verdict can be re-checked by hand.

use std::io::Write;

use linkcolor::coloring::Coloring;
use linkcolor::Diagram;
use serde::Serialize;

use crate::corpus::{CorpusReport, EntryReport};
use crate::fixtures::Fixture;

#[derive(Serialize)]
struct TableRow<'a> {
    name: &'a str,
    line: usize,
    components: usize,
    determinant: String,
    linking: String,
    fox: String,
    two_tone: String,
    surjection: String,
    consistent: bool,
    failures: String,
}

#[derive(Serialize)]
pub struct WitnessRecord {
    pub tones: String,
    pub elements: Vec<String>,
}

impl WitnessRecord {
    pub fn new(d: &Diagram, c: &Coloring) -> WitnessRecord {
        WitnessRecord { tones: c.tones.to_string(), elements: c.elements(d).iter().map(ToString::to_string).collect() }
    }
}

#[derive(Serialize)]
struct RowRecord {
    modulus: String,
    fox_colorable: Option<bool>,
    fox_count: Option<String>,
    two_tone: Option<bool>,
    two_tone_witness: Option<WitnessRecord>,
    capacity_error: Option<String>,
    surjection: bool,
    surjection_witness: Option<WitnessRecord>,
}

#[derive(Serialize)]
struct FlagRecord {
    name: String,
    modulus: Option<String>,
    ok: bool,
    detail: String,
}

#[derive(Serialize)]
struct ImplicationRecord {
    name: String,
    clauses: Vec<(String, bool)>,
    consistent: bool,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct LinkRecord {
    name: String,
    line: usize,
    diagram: String,
    components: usize,
    linking: Vec<Vec<i64>>,
    determinant: String,
    free_rank: usize,
    invariant_factors: Vec<String>,
    component_determinants: Vec<String>,
    rows: Vec<RowRecord>,
    flags: Vec<FlagRecord>,
    implication_checks: Vec<ImplicationRecord>,
    invariance: Vec<FlagRecord>,
    claim: Option<FlagRecord>,
    errors: Vec<String>,
    consistent: bool,
}

/// Moduli with a positive verdict, e.g. `3;6;inf`.
fn positives<'a>(items: impl Iterator<Item = (String, bool)> + 'a) -> String {
    let v: Vec<String> = items.filter(|(_, b)| *b).map(|(m, _)| m).collect();
    if v.is_empty() {
        "-".to_string()
    } else {
        v.join(";")
    }
}

fn table_row(e: &EntryReport) -> TableRow<'_> {
    let c = &e.classification;
    let rows = || c.rows.iter();
    TableRow {
        name: &e.name,
        line: e.line,
        components: c.components,
        determinant: c.determinant.value.to_string(),
        linking: c.linking.rows().iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join(" "),
        fox: positives(rows().filter_map(|r| r.fox.as_ref().map(|f| (r.modulus.to_string(), f.colorable)))),
        two_tone: positives(rows().map(|r| (r.modulus.to_string(), matches!(r.two_tone, Ok(Some(_)))))),
        surjection: positives(rows().map(|r| (r.modulus.to_string(), r.surjection.is_some()))),
        consistent: e.consistent(),
        failures: e.failures().join("; "),
    }
}

pub fn write_table<W: Write>(report: &CorpusReport, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for e in &report.entries {
        w.serialize(table_row(e))?;
    }
    // An empty corpus still gets a header.
    if report.entries.is_empty() {
        w.write_record([
            "name",
            "line",
            "components",
            "determinant",
            "linking",
            "fox",
            "two_tone",
            "surjection",
            "consistent",
            "failures",
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn link_record(f: &Fixture, e: &EntryReport) -> LinkRecord {
    let d = &f.diagram;
    let c = &e.classification;
    let check = |k: &crate::corpus::Check| FlagRecord {
        name: k.name.clone(),
        modulus: None,
        ok: k.ok,
        detail: k.detail.clone(),
    };
    LinkRecord {
        name: e.name.clone(),
        line: e.line,
        diagram: d.to_text(),
        components: c.components,
        linking: c.linking.rows(),
        determinant: c.determinant.value.to_string(),
        free_rank: c.determinant.free_rank,
        invariant_factors: c.determinant.divisors.iter().map(ToString::to_string).collect(),
        component_determinants: c.component_determinants.iter().map(ToString::to_string).collect(),
        rows: c
            .rows
            .iter()
            .map(|r| RowRecord {
                modulus: r.modulus.to_string(),
                fox_colorable: r.fox.as_ref().map(|f| f.colorable),
                fox_count: r.fox.as_ref().map(|f| f.count.to_string()),
                two_tone: r.two_tone.as_ref().ok().map(Option::is_some),
                two_tone_witness: r.two_tone.as_ref().ok().and_then(Option::as_ref).map(|w| WitnessRecord::new(d, w)),
                capacity_error: r.two_tone.as_ref().err().map(ToString::to_string),
                surjection: r.surjection.is_some(),
                surjection_witness: r.surjection.as_ref().map(|w| WitnessRecord::new(d, w)),
            })
            .collect(),
        flags: c
            .flags
            .iter()
            .map(|fl| FlagRecord {
                name: fl.name.to_string(),
                modulus: fl.modulus.map(|m| m.to_string()),
                ok: fl.ok,
                detail: fl.detail.clone(),
            })
            .collect(),
        implication_checks: e
            .implication_checks
            .iter()
            .map(|t| ImplicationRecord {
                name: t.name.to_string(),
                clauses: t.clauses.clone(),
                consistent: t.consistent,
                notes: t.notes.clone(),
            })
            .collect(),
        invariance: e.invariance.iter().map(check).collect(),
        claim: e.claim.as_ref().map(check),
        errors: e.errors.clone(),
        consistent: e.consistent(),
    }
}

/// One JSON object per line, in fixture order.
pub fn write_records<W: Write>(fixtures: &[Fixture], report: &CorpusReport, mut out: W) -> std::io::Result<()> {
    for (f, e) in fixtures.iter().zip(&report.entries) {
        serde_json::to_writer(&mut out, &link_record(f, e))?;
        writeln!(out)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::corpus::run_corpus;
    use crate::fixtures::parse_fixtures;

    #[test]
    fn outputs_are_deterministic() {
        let f = parse_fixtures("hopf\t@torus2 2\ntrefoil\t@torus2 3\n").unwrap();
        let cfg = Config { n_range: 3..=5, ..Config::default() };
        let render = || {
            let r = run_corpus(&f, &cfg);
            let (mut t, mut j) = (Vec::new(), Vec::new());
            write_table(&r, &mut t).unwrap();
            write_records(&f, &r, &mut j).unwrap();
            (t, j)
        };
        let (t, j) = render();
        assert_eq!((t.clone(), j.clone()), render());
        let table = String::from_utf8(t).unwrap();
        assert!(table.starts_with("name,line,components,determinant"));
        assert_eq!(table.lines().count(), 3);
        let json = String::from_utf8(j).unwrap();
        assert_eq!(json.lines().count(), 2);
        let first: serde_json::Value = serde_json::from_str(json.lines().next().unwrap()).unwrap();
        assert_eq!(first["determinant"], "2");
    }

    #[test]
    fn empty_table_has_header() {
        let mut t = Vec::new();
        write_table(&CorpusReport::default(), &mut t).unwrap();
        assert!(String::from_utf8(t).unwrap().starts_with("name,"));
    }
}
