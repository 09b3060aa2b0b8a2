//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs as a plain binary so the lines always show up in
//! `cargo test` output.

use std::collections::BTreeSet;
use std::process::ExitCode;

use linkcolor::coloring::{
    all_colorings, brute_force_colorings, check_assignment, check_coloring, exists_surjection, exists_two_tone,
    fox_colorable, surjective_colorings,
};
use linkcolor::diagram::{
    generate_pretzel, generate_torus_two_strand, reverse_component_orientation, StandardFormSpec,
};
use linkcolor::dihedral::generates_full;
use linkcolor::invariants::{determinant, linking_matrix};
use linkcolor::verify::{check_standard_form_coloring, check_two_component_equivalence, fox_criterion};
use linkcolor::{ComponentId, Diagram, DihedralElement, Modulus};
use linkcolor_cli::fixtures::{parse_fixtures, Fixture};

const CAP: u64 = 1_000_000;
const ORACLE_CAP: u64 = 1_000_000_000;

fn corpus(file: &str) -> Vec<Fixture> {
    let path = format!("{}/corpus/{file}", env!("CARGO_MANIFEST_DIR"));
    parse_fixtures(&std::fs::read_to_string(&path).expect("corpus file")).expect("corpus parses")
}

fn fixture<'a>(fs: &'a [Fixture], name: &str) -> &'a Diagram {
    &fs.iter().find(|f| f.name == name).unwrap_or_else(|| panic!("no fixture {name}")).diagram
}

/// Every diagram in the corpus, alternatives included.
fn all_diagrams(fs: &[Fixture]) -> Vec<(String, &Diagram)> {
    let mut out = Vec::new();
    for f in fs {
        out.push((f.name.clone(), &f.diagram));
        if let Some(a) = &f.alternative {
            out.push((format!("{} (alt)", f.name), a));
        }
    }
    out
}

fn moduli(range: std::ops::RangeInclusive<u64>) -> Vec<Modulus> {
    range.map(Modulus::Finite).chain([Modulus::Infinite]).collect()
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence(fs: &[Fixture]) -> Outcome {
    let mut checked = 0;
    for (name, d) in all_diagrams(fs).into_iter().filter(|(_, d)| d.arc_count() <= 8) {
        for n in 2..=5 {
            let solver: BTreeSet<Vec<DihedralElement>> = all_colorings(d, n, ORACLE_CAP)
                .map_err(|e| format!("{name} n={n}: {e}"))?
                .iter()
                .map(|c| c.elements(d))
                .collect();
            let oracle: BTreeSet<Vec<DihedralElement>> = brute_force_colorings(d, n, ORACLE_CAP)
                .map_err(|e| format!("{name} n={n}: {e}"))?
                .into_iter()
                .collect();
            ensure(solver == oracle, || {
                format!("{name} n={n}: solver {} colorings, oracle {}", solver.len(), oracle.len())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (diagram, n) pairs agree exactly"))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn determinants(fs: &[Fixture]) -> Outcome {
    let expected = [("unknot", 1), ("hopf", 2), ("trefoil", 3), ("torus-2-4", 4), ("figure-eight", 5)];
    for (name, det) in expected {
        let d = fixture(fs, name);
        let r = determinant(d);
        ensure(r.value.to_string() == det.to_string(), || format!("{name}: determinant {} != {det}", r.value))?;
        for n in 3..=12u64 {
            let formula = r.divisors.iter().fold(n.pow(r.free_rank as u32), |acc, v| {
                acc * gcd(u64::try_from(v).expect("small invariant factor") % n, n)
            });
            let solver = fox_colorable(d, n).count;
            ensure(solver.to_string() == formula.to_string(), || format!("{name} n={n}: count {solver} != {formula}"))?;
            let brute = brute_force_colorings(d, n, ORACLE_CAP)
                .map_err(|e| e.to_string())?
                .iter()
                .filter(|c| c.iter().all(DihedralElement::is_reflection))
                .count() as u64;
            ensure(brute == formula, || format!("{name} n={n}: brute force {brute} != formula {formula}"))?;
        }
    }
    Ok("determinants 1,2,3,4,5; Fox counts match formula and brute force for n in 3..12".into())
}

fn fox_gcd_criterion(fs: &[Fixture]) -> Outcome {
    let mut checked = 0;
    for (name, d) in all_diagrams(fs) {
        let det = determinant(d).value;
        for n in 3..=12 {
            let fox = fox_colorable(d, n).colorable;
            ensure(fox == fox_criterion(&det, n), || format!("{name} n={n}: fox {fox}, det {det}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} verdicts match the gcd criterion"))
}

fn torus_facts() -> Outcome {
    for q in 2..=12u32 {
        let d = generate_torus_two_strand(q).map_err(|e| e.to_string())?;
        let fox = fox_colorable(&d, 3).colorable;
        ensure(fox == (q % 3 == 0), || format!("T(2,{q}): Fox 3-colorable {fox}"))?;
    }
    for q in [4, 8, 12] {
        let d = generate_torus_two_strand(q).map_err(|e| e.to_string())?;
        let w = exists_surjection(&d, Modulus::Finite(3)).ok_or(format!("T(2,{q}): no surjection onto D_3"))?;
        ensure(check_coloring(&d, &w).is_ok() && w.generates_full(&d), || format!("T(2,{q}): bad witness"))?;
    }
    Ok("Fox 3 iff 3 | q for q in 2..12; surjections onto D_3 for q = 4, 8, 12".into())
}

fn two_component_equivalence(fs: &[Fixture]) -> Outcome {
    let expected = [
        ("hopf", false),
        ("torus-2-4", true),
        ("torus-2-6", false),
        ("torus-2-8", true),
        ("whitehead", true),
        ("split-pair", true),
    ];
    for (name, even) in expected {
        let t = check_two_component_equivalence(fixture(fs, name), 3..=10, CAP).map_err(|e| format!("{name}: {e}"))?;
        let c = |l: &str| t.clause(l).expect("clause present");
        let i = c("(i) even linking");
        ensure(i == even, || format!("{name}: even linking {i}"))?;
        ensure(c("(iii) two-tone over D_inf") == i && c("(v) surjection onto D_inf") == i, || {
            format!("{name}: clauses {:?}", t.clauses)
        })?;
        ensure(c("(iv) surjection for every n") == i, || format!("{name}: (iv) disagrees with (i)"))?;
    }
    Ok("(i), (iii), (v) agree and (iv) tracks (i) on all six links".into())
}

fn odd_linking(fs: &[Fixture]) -> Outcome {
    let mut surjections = 0;
    for name in ["hopf", "torus-2-6"] {
        let d = fixture(fs, name);
        for n in [3, 5, 7, 9] {
            let v = exists_two_tone(d, Modulus::Finite(n), CAP).map_err(|e| e.to_string())?;
            ensure(!v.colorable, || format!("{name}: two-tone D_{n} found"))?;
        }
        for n in 3..=10 {
            let s = surjective_colorings(d, n, CAP).map_err(|e| e.to_string())?;
            ensure(s.iter().all(|c| c.is_fox_type(d)), || format!("{name}: non-Fox-type surjection onto D_{n}"))?;
            surjections += s.len();
        }
    }
    Ok(format!("no odd two-tone colorings; all {surjections} surjective colorings are Fox-type"))
}

fn many_component_surjections(fs: &[Fixture]) -> Outcome {
    for name in ["borromean", "pretzel-2-2-2", "pretzel-6-6-6"] {
        let d = fixture(fs, name);
        for n in 3..=10 {
            let w = exists_surjection(d, Modulus::Finite(n)).ok_or(format!("{name}: no surjection onto D_{n}"))?;
            ensure(check_coloring(d, &w).is_ok() && w.generates_full(d), || format!("{name} n={n}: bad witness"))?;
        }
    }
    Ok("validated surjection witnesses for every n in 3..10".into())
}

fn pretzel_facts() -> Outcome {
    let tt = |t: &[i32], m: Modulus| -> Result<bool, String> {
        let d = generate_pretzel(t).map_err(|e| e.to_string())?;
        Ok(exists_two_tone(&d, m, CAP).map_err(|e| e.to_string())?.colorable)
    };
    ensure(tt(&[3, 2, 3, 2], Modulus::Infinite)?, || "P(3,2,3,2): no two-tone D_inf".into())?;
    ensure(!tt(&[3, 2, 3, 2], Modulus::Finite(3))?, || "P(3,2,3,2): two-tone D_3".into())?;
    for m in 4..=10 {
        ensure(tt(&[6, 6, 6], Modulus::Finite(m))?, || format!("P(6,6,6): no two-tone D_{m}"))?;
    }
    ensure(!tt(&[6, 6, 6], Modulus::Finite(3))?, || "P(6,6,6): two-tone D_3".into())?;
    Ok("P(3,2,3,2) and P(6,6,6) verdicts as expected".into())
}

fn standard_forms() -> Outcome {
    for twists in [vec![2], vec![2, 2]] {
        let spec = StandardFormSpec { twists: twists.clone(), closure: Vec::new() };
        let t = check_standard_form_coloring(&spec, &[3, 5, 7]).map_err(|e| e.to_string())?;
        ensure(t.consistent, || format!("twists {twists:?}: {:?} {:?}", t.clauses, t.notes))?;
    }
    Ok("seeded propagation completes for 1 and 2 closure components, n = 3, 5, 7".into())
}

fn mod_four_law(fs: &[Fixture]) -> Outcome {
    let mut checked = 0;
    for (name, d) in all_diagrams(fs).into_iter().filter(|(_, d)| d.component_count() == 2) {
        let lk = linking_matrix(d).get(0, 1);
        let det = determinant(d).value;
        let det_mod_four = (det.clone() % 4u32).to_string() == "0";
        ensure((lk % 2 == 0) == det_mod_four, || format!("{name}: lk {lk}, det {det}"))?;
        checked += 1;
    }
    Ok(format!("{checked} two-component diagrams obey the law"))
}

fn invariance(fs: &[Fixture]) -> Outcome {
    let mut pairs = 0;
    for f in fs {
        let (d, Some(a)) = (&f.diagram, &f.alternative) else { continue };
        let name = &f.name;
        ensure(determinant(d).value == determinant(a).value, || format!("{name}: determinants differ"))?;
        ensure(linking_matrix(d).equivalent(&linking_matrix(a)), || format!("{name}: linking matrices differ"))?;
        for m in moduli(3..=10) {
            if let Modulus::Finite(n) = m {
                ensure(fox_colorable(d, n).count == fox_colorable(a, n).count, || format!("{name} n={n}: Fox counts"))?;
            }
            let tt = |x: &Diagram| exists_two_tone(x, m, CAP).map(|v| v.colorable).map_err(|e| e.to_string());
            ensure(tt(d)? == tt(a)?, || format!("{name} n={m}: two-tone verdicts differ"))?;
            ensure(exists_surjection(d, m).is_some() == exists_surjection(a, m).is_some(), || {
                format!("{name} n={m}: surjection verdicts differ")
            })?;
        }
        pairs += 1;
    }
    let mut reversals = 0;
    for (name, d) in all_diagrams(fs) {
        for c in 0..d.component_count() {
            let r = reverse_component_orientation(d, ComponentId(c)).map_err(|e| e.to_string())?;
            for m in moduli(3..=10) {
                let before = exists_two_tone(d, m, CAP).map_err(|e| e.to_string())?.colorable;
                let after = exists_two_tone(&r, m, CAP).map_err(|e| e.to_string())?.colorable;
                ensure(before == after, || format!("{name}: reversing component {c} changes two-tone D_{m}"))?;
            }
            reversals += 1;
        }
    }
    Ok(format!("{pairs} diagram pairs agree; {reversals} component reversals leave two-tone verdicts unchanged"))
}

fn negative_controls() -> Outcome {
    let bad = corpus("corrupted.tsv");
    let f = bad.iter().find(|f| f.claim.is_some()).ok_or("no corrupted claim")?;
    let claim = f.claim.as_ref().expect("claim");
    ensure(check_assignment(&f.diagram, &claim.elements).is_err(), || format!("{}: corrupted claim accepted", f.name))?;
    let m = Modulus::Finite(4);
    let gens = [DihedralElement::reflection(m, 0), DihedralElement::reflection(m, 2)];
    ensure(!generates_full(&gens, m).map_err(|e| e.to_string())?, || "{a0, a2} generates D_4".into())?;
    Ok(format!("corrupted claim in {} rejected; {{a0, a2}} does not generate D_4", f.name))
}

fn main() -> ExitCode {
    let fs = corpus("links.tsv");
    let criteria: Vec<Criterion> = vec![
        ("solver matches brute-force oracle", Box::new(|| oracle_equivalence(&fs))),
        ("determinants and Fox counts", Box::new(|| determinants(&fs))),
        ("Fox colorability gcd criterion", Box::new(|| fox_gcd_criterion(&fs))),
        ("two-strand torus link facts", Box::new(torus_facts)),
        ("two-component equivalences", Box::new(|| two_component_equivalence(&fs))),
        ("odd linking number obstructions", Box::new(|| odd_linking(&fs))),
        ("three-component surjections", Box::new(|| many_component_surjections(&fs))),
        ("pretzel link verdicts", Box::new(pretzel_facts)),
        ("standard-form propagation", Box::new(standard_forms)),
        ("linking parity vs determinant mod 4", Box::new(|| mod_four_law(&fs))),
        ("diagram and orientation invariance", Box::new(|| invariance(&fs))),
        ("negative controls", Box::new(negative_controls)),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2}: PASS  {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
