//! Corpus verification: classification, implication checks, diagram and
//! orientation invariance, and coloring claims for every fixture.

use linkcolor::coloring::{check_assignment, exists_two_tone, Coloring};
use linkcolor::diagram::reverse_component_orientation;
use linkcolor::verify::{
    check_many_component_surjection, check_odd_linking, check_two_component_equivalence, classify,
    ClassificationReport, ImplicationCheck, VerifyError,
};
use linkcolor::{ComponentId, Diagram};

use crate::config::Config;
use crate::fixtures::{ColoringClaim, Fixture};

/// Outcome of one named comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), ok, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub name: String,
    pub line: usize,
    pub classification: ClassificationReport,
    pub implication_checks: Vec<ImplicationCheck>,
    pub invariance: Vec<Check>,
    pub claim: Option<Check>,
    /// Checks that could not run, e.g. because a cap was hit.
    pub errors: Vec<String>,
    pub capacity_exceeded: bool,
}

impl EntryReport {
    pub fn consistent(&self) -> bool {
        self.classification.consistent()
            && self.implication_checks.iter().all(|c| c.consistent)
            && self.invariance.iter().all(|c| c.ok)
            && self.claim.as_ref().is_none_or(|c| c.ok)
            && self.errors.is_empty()
    }

    /// Human-readable reasons for inconsistency.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .classification
            .failed_flags()
            .map(|f| match f.modulus {
                Some(m) => format!("{} (n={m}): {}", f.name, f.detail),
                None => format!("{}: {}", f.name, f.detail),
            })
            .collect();
        for c in self.implication_checks.iter().filter(|c| !c.consistent) {
            let bad: Vec<&str> = c.clauses.iter().map(|(l, _)| l.as_str()).collect();
            out.push(format!("{} inconsistent: {}", c.name, bad.join("; ")));
        }
        out.extend(self.invariance.iter().filter(|c| !c.ok).map(|c| format!("{}: {}", c.name, c.detail)));
        if let Some(c) = self.claim.as_ref().filter(|c| !c.ok) {
            out.push(format!("{}: {}", c.name, c.detail));
        }
        out.extend(self.errors.iter().cloned());
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
}

impl CorpusReport {
    pub fn consistent(&self) -> bool {
        self.entries.iter().all(EntryReport::consistent)
    }

    pub fn capacity_exceeded(&self) -> bool {
        self.entries.iter().any(|e| e.capacity_exceeded)
    }
}

/// Checks a claimed coloring against the crossing relations.
pub fn check_claim(d: &Diagram, claim: &ColoringClaim) -> Check {
    if let Err(e) = Coloring::from_elements(d, &claim.elements) {
        return Check::new("coloring-claim", false, e.to_string());
    }
    match check_assignment(d, &claim.elements) {
        Ok(()) => Check::new("coloring-claim", true, ""),
        Err(x) => Check::new("coloring-claim", false, format!("relation fails at crossing {x}")),
    }
}

fn compare_alternative(main: &ClassificationReport, alt: &ClassificationReport) -> Vec<Check> {
    let mut out = vec![
        Check::new(
            "alt-components",
            main.components == alt.components,
            format!("{} vs {}", main.components, alt.components),
        ),
        Check::new(
            "alt-determinant",
            main.determinant.value == alt.determinant.value,
            format!("{} vs {}", main.determinant.value, alt.determinant.value),
        ),
        Check::new(
            "alt-linking",
            main.linking.equivalent(&alt.linking),
            format!("{:?} vs {:?}", main.linking.rows(), alt.linking.rows()),
        ),
    ];
    for (a, b) in main.rows.iter().zip(&alt.rows) {
        let m = a.modulus;
        let fox = a.fox.as_ref().map(|f| &f.count) == b.fox.as_ref().map(|f| &f.count);
        out.push(Check::new(format!("alt-fox n={m}"), fox, ""));
        let tt = |r: &linkcolor::verify::ModulusRow| r.two_tone.as_ref().map(Option::is_some).ok();
        out.push(Check::new(format!("alt-two-tone n={m}"), tt(a) == tt(b), ""));
        out.push(Check::new(format!("alt-surjection n={m}"), a.surjection.is_some() == b.surjection.is_some(), ""));
    }
    out
}

fn compare_reversals(d: &Diagram, main: &ClassificationReport, cap: u64, errors: &mut Vec<String>) -> Vec<Check> {
    let mut out = Vec::new();
    for c in 0..d.component_count() {
        let r = match reverse_component_orientation(d, ComponentId(c)) {
            Ok(r) => r,
            Err(e) => {
                errors.push(format!("reversal of component {c}: {e}"));
                continue;
            }
        };
        for row in &main.rows {
            let Ok(expected) = row.two_tone.as_ref().map(Option::is_some) else {
                continue;
            };
            match exists_two_tone(&r, row.modulus, cap) {
                Ok(v) => out.push(Check::new(
                    format!("reversal-two-tone component {c} n={}", row.modulus),
                    v.colorable == expected,
                    "",
                )),
                Err(e) => errors.push(format!("reversal two-tone n={}: {e}", row.modulus)),
            }
        }
    }
    out
}

pub fn run_entry(f: &Fixture, config: &Config) -> EntryReport {
    let d = &f.diagram;
    let range = config.n_range.clone();
    let classification = classify(&f.name, d, range.clone(), config.cap);
    let mut errors = Vec::new();
    let mut capacity_exceeded = classification.failed_flags().any(|fl| fl.name == "capacity");
    let mut implication_checks = Vec::new();
    let mut record = |r: Result<ImplicationCheck, VerifyError>, errors: &mut Vec<String>| match r {
        Ok(c) => implication_checks.push(c),
        Err(e) => {
            capacity_exceeded |= matches!(e, VerifyError::Capacity(_));
            errors.push(e.to_string());
        }
    };
    match d.component_count() {
        2 => {
            record(check_two_component_equivalence(d, range.clone(), config.cap), &mut errors);
            if classification.linking.get(0, 1) % 2 != 0 {
                record(check_odd_linking(d, range.clone(), config.cap), &mut errors);
            }
        }
        k if k >= 3 => record(check_many_component_surjection(d, range.clone()), &mut errors),
        _ => {}
    }
    let mut invariance = Vec::new();
    if let Some(alt) = &f.alternative {
        let alt_report = classify(&f.name, alt, range, config.cap);
        invariance.extend(compare_alternative(&classification, &alt_report));
    }
    invariance.extend(compare_reversals(d, &classification, config.cap, &mut errors));
    let claim = f.claim.as_ref().map(|c| check_claim(d, c));
    EntryReport {
        name: f.name.clone(),
        line: f.line,
        classification,
        implication_checks,
        invariance,
        claim,
        errors,
        capacity_exceeded,
    }
}

/// Every fixture, one thread each, merged in fixture order.
pub fn run_corpus(fixtures: &[Fixture], config: &Config) -> CorpusReport {
    let entries = std::thread::scope(|s| {
        let handles: Vec<_> = fixtures.iter().map(|f| s.spawn(move || run_entry(f, config))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    CorpusReport { entries }
}
