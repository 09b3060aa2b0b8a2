//! Classification of links and consistency checks between the coloring
//! verdicts, linking numbers and determinants.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::coloring::{
    check_coloring, exists_surjection, exists_two_tone, fox_colorable, propagate, surjective_colorings, Coloring,
    FoxVerdict, Tone,
};
use crate::diagram::{
    generate_pretzel, generate_standard_form, sublink, ComponentId, Diagram, DiagramError, StandardFormSpec,
};
use crate::dihedral::DihedralElement;
use crate::invariants::{determinant, linking_matrix, DeterminantResult, LinkingMatrix};
use crate::zlinalg::{solution_count, CapacityError, Modulus};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: &'static str, found: usize },
    #[error("linking number {0} is even")]
    EvenLinking(i64),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("capacity exceeded: {0}")]
    Capacity(#[from] CapacityError),
}

/// One checked implication; `ok == false` pinpoints the violated one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub name: &'static str,
    pub modulus: Option<Modulus>,
    pub ok: bool,
    pub detail: String,
}

impl Flag {
    fn new(name: &'static str, modulus: Option<Modulus>, ok: bool, detail: String) -> Flag {
        Flag { name, modulus, ok, detail }
    }
}

/// Verdicts for one modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusRow {
    pub modulus: Modulus,
    /// Fox colorability; finite moduli only.
    pub fox: Option<FoxVerdict>,
    pub two_tone: Result<Option<Coloring>, CapacityError>,
    pub surjection: Option<Coloring>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub name: String,
    pub components: usize,
    pub linking: LinkingMatrix,
    pub determinant: DeterminantResult,
    /// Determinant of each one-component sublink.
    pub component_determinants: Vec<BigInt>,
    /// Finite moduli in order, then `∞`.
    pub rows: Vec<ModulusRow>,
    pub flags: Vec<Flag>,
}

impl ClassificationReport {
    pub fn consistent(&self) -> bool {
        self.flags.iter().all(|f| f.ok)
    }

    pub fn failed_flags(&self) -> impl Iterator<Item = &Flag> {
        self.flags.iter().filter(|f| !f.ok)
    }

    pub fn row(&self, modulus: Modulus) -> Option<&ModulusRow> {
        self.rows.iter().find(|r| r.modulus == modulus)
    }
}

/// `det = 0` or `gcd(n, det) ≠ 1`.
pub fn fox_criterion(det: &BigInt, n: u64) -> bool {
    det.is_zero() || !det.gcd(&BigInt::from(n)).is_one()
}

fn all_sublinks(k: usize) -> Vec<Vec<ComponentId>> {
    (1u64..1 << k).map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).map(ComponentId).collect()).collect()
}

/// Runs every verdict for each `n` in `n_range` and for `∞`, and records
/// which implications hold.
pub fn classify(name: &str, d: &Diagram, n_range: RangeInclusive<u64>, cap: u64) -> ClassificationReport {
    let k = d.component_count();
    let linking = linking_matrix(d);
    let det = determinant(d);
    let component_determinants: Vec<BigInt> =
        (0..k).map(|c| determinant(&sublink(d, &[ComponentId(c)]).expect("component exists")).value).collect();
    let mut flags = Vec::new();
    let mut rows = Vec::new();

    if k == 2 {
        let lk = linking.get(0, 1);
        let even = lk % 2 == 0;
        let det4 = det.value.mod_floor(&BigInt::from(4)).is_zero();
        flags.push(Flag::new("mod4-law", None, even == det4, format!("lk {lk}, det {}", det.value)));
        flags.push(Flag::new(
            "det-zero-even-lk",
            None,
            !det.value.is_zero() || even,
            format!("lk {lk}, det {}", det.value),
        ));
    }

    let moduli: Vec<Modulus> = n_range.map(Modulus::Finite).chain([Modulus::Infinite]).collect();
    let sublinks = all_sublinks(k);
    let sub_diagrams: Vec<Diagram> = sublinks.iter().map(|s| sublink(d, s).expect("valid sublink")).collect();
    for modulus in moduli {
        let fox = match modulus {
            Modulus::Finite(n) => {
                let f = fox_colorable(d, n);
                let predicted = solution_count(&det.divisors, d.arc_count(), n);
                flags.push(Flag::new(
                    "fox-count",
                    Some(modulus),
                    f.count == predicted,
                    format!("solver {}, formula {predicted}", f.count),
                ));
                flags.push(Flag::new(
                    "fox-criterion",
                    Some(modulus),
                    f.colorable == fox_criterion(&det.value, n),
                    format!("colorable {}, det {}", f.colorable, det.value),
                ));
                Some(f)
            }
            Modulus::Infinite => None,
        };
        let two_tone = exists_two_tone(d, modulus, cap).map(|v| v.witness);
        let surjection = exists_surjection(d, modulus);

        match &two_tone {
            Err(e) => flags.push(Flag::new("capacity", Some(modulus), false, format!("two-tone search: {e}"))),
            Ok(Some(w)) => {
                let ok = check_coloring(d, w).is_ok() && w.is_two_tone(d);
                flags.push(Flag::new("two-tone-witness", Some(modulus), ok, String::new()));
                if modulus.is_odd() {
                    flags.push(rotation_sublink_parity(&linking, w, modulus));
                }
            }
            Ok(None) => {}
        }
        if let Some(w) = &surjection {
            let ok = check_coloring(d, w).is_ok() && w.generates_full(d);
            flags.push(Flag::new("surjection-witness", Some(modulus), ok, String::new()));
            if let Modulus::Finite(n) = modulus {
                flags.push(sublink_explains_surjection(&sublinks, &sub_diagrams, n, cap));
            }
        }
        rows.push(ModulusRow { modulus, fox, two_tone, surjection });
    }

    ClassificationReport {
        name: String::from(name),
        components: k,
        linking,
        determinant: det,
        component_determinants,
        rows,
        flags,
    }
}

/// For odd `n`, each rotation-toned component of a two-tone coloring links
/// the reflection-toned part an even number of times.
fn rotation_sublink_parity(linking: &LinkingMatrix, w: &Coloring, modulus: Modulus) -> Flag {
    let rotation: Vec<usize> = w.tones.rotation_components().map(|c| c.0).collect();
    let bad: Vec<usize> = rotation
        .iter()
        .copied()
        .filter(|&c| {
            let lk: i64 = (0..linking.size()).filter(|j| !rotation.contains(j)).map(|j| linking.get(c, j)).sum();
            lk % 2 != 0
        })
        .collect();
    Flag::new(
        "rotation-sublink-parity",
        Some(modulus),
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("odd linking for components {bad:?}") },
    )
}

/// A surjection onto `D_n` forces some sublink to be two-tone or Fox
/// `n`-colorable.
fn sublink_explains_surjection(sublinks: &[Vec<ComponentId>], subs: &[Diagram], n: u64, cap: u64) -> Flag {
    let modulus = Modulus::Finite(n);
    for (keep, s) in sublinks.iter().zip(subs) {
        if fox_colorable(s, n).colorable {
            return Flag::new("surjection-sublink", Some(modulus), true, format!("Fox on {keep:?}"));
        }
        match exists_two_tone(s, modulus, cap) {
            Ok(v) if v.colorable => {
                return Flag::new("surjection-sublink", Some(modulus), true, format!("two-tone on {keep:?}"))
            }
            Ok(_) => {}
            Err(e) => return Flag::new("surjection-sublink", Some(modulus), false, format!("{e}")),
        }
    }
    Flag::new("surjection-sublink", Some(modulus), false, String::from("no sublink is two-tone or Fox colorable"))
}

/// Named clauses of one implication pattern on one link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationCheck {
    pub name: &'static str,
    pub clauses: Vec<(String, bool)>,
    pub consistent: bool,
    pub notes: Vec<String>,
}

impl ImplicationCheck {
    pub fn clause(&self, label: &str) -> Option<bool> {
        self.clauses.iter().find(|(l, _)| l == label).map(|(_, v)| *v)
    }
}

/// For a two-component link the following should agree: (i) even linking
/// number, (ii) a two-tone coloring for some odd `n` in range, (iii) a
/// two-tone `D_∞` coloring, (iv) surjections onto every `D_n` in range,
/// (v) a surjection onto `D_∞`. A negative (ii) next to a positive (i) is
/// reported as range-limited rather than as a contradiction.
pub fn check_two_component_equivalence(
    d: &Diagram,
    n_range: RangeInclusive<u64>,
    cap: u64,
) -> Result<ImplicationCheck, VerifyError> {
    if d.component_count() != 2 {
        return Err(VerifyError::ComponentCount { expected: "2", found: d.component_count() });
    }
    let lk = linking_matrix(d).get(0, 1);
    let i = lk % 2 == 0;
    let mut ii = false;
    for n in n_range.clone().filter(|n| n % 2 == 1) {
        if exists_two_tone(d, Modulus::Finite(n), cap)?.colorable {
            ii = true;
            break;
        }
    }
    let iii = exists_two_tone(d, Modulus::Infinite, cap)?.colorable;
    let iv = n_range.clone().all(|n| exists_surjection(d, Modulus::Finite(n)).is_some());
    let v = exists_surjection(d, Modulus::Infinite).is_some();
    let mut notes = Vec::new();
    let ii_ok = if i && !ii {
        notes.push(format!("(ii) range-limited: no two-tone coloring for odd n in {n_range:?}"));
        true
    } else {
        ii == i
    };
    Ok(ImplicationCheck {
        name: "two-component-equivalence",
        clauses: vec![
            (String::from("(i) even linking"), i),
            (String::from("(ii) two-tone for some odd n"), ii),
            (String::from("(iii) two-tone over D_inf"), iii),
            (String::from("(iv) surjection for every n"), iv),
            (String::from("(v) surjection onto D_inf"), v),
        ],
        consistent: i == iii && i == v && i == iv && ii_ok,
        notes,
    })
}

/// For a two-component link with odd linking number: no two-tone coloring
/// for odd `n`, and every surjection sends meridians to the identity or to
/// reflections.
pub fn check_odd_linking(d: &Diagram, n_range: RangeInclusive<u64>, cap: u64) -> Result<ImplicationCheck, VerifyError> {
    if d.component_count() != 2 {
        return Err(VerifyError::ComponentCount { expected: "2", found: d.component_count() });
    }
    let lk = linking_matrix(d).get(0, 1);
    if lk % 2 == 0 {
        return Err(VerifyError::EvenLinking(lk));
    }
    let mut clauses = Vec::new();
    let mut notes = Vec::new();
    for n in n_range {
        if n % 2 == 1 {
            let tt = exists_two_tone(d, Modulus::Finite(n), cap)?.colorable;
            clauses.push((format!("no two-tone D_{n}"), !tt));
        }
        let surj = surjective_colorings(d, n, cap)?;
        let fox_type = surj.iter().all(|c| c.is_fox_type(d));
        notes.push(format!("n={n}: {} surjective colorings", surj.len()));
        clauses.push((format!("surjections onto D_{n} are Fox-type"), fox_type));
    }
    let consistent = clauses.iter().all(|(_, v)| *v);
    Ok(ImplicationCheck { name: "odd-linking", clauses, consistent, notes })
}

/// Links with at least three components map onto every `D_n`.
pub fn check_many_component_surjection(
    d: &Diagram,
    n_range: RangeInclusive<u64>,
) -> Result<ImplicationCheck, VerifyError> {
    if d.component_count() < 3 {
        return Err(VerifyError::ComponentCount { expected: ">= 3", found: d.component_count() });
    }
    let clauses: Vec<(String, bool)> = n_range
        .map(|n| (format!("surjection onto D_{n}"), exists_surjection(d, Modulus::Finite(n)).is_some()))
        .collect();
    let consistent = clauses.iter().all(|(_, v)| *v);
    Ok(ImplicationCheck { name: "many-component-surjection", clauses, consistent, notes: Vec::new() })
}

/// For odd `m`: `P(m,2,m,2)` is two-tone over `D_∞` but not over `D_m`;
/// `P(2m,2m,2m)` is not two-tone over `D_m` yet maps onto each sampled `D_n`.
pub fn check_pretzel_families(
    m_list: &[u64],
    n_sample: RangeInclusive<u64>,
    cap: u64,
) -> Result<ImplicationCheck, VerifyError> {
    let mut clauses = Vec::new();
    for &m in m_list {
        assert!(m % 2 == 1 && m >= 3, "odd m >= 3 expected");
        let mi = i32::try_from(m).expect("small m");
        let p = generate_pretzel(&[mi, 2, mi, 2])?;
        clauses
            .push((format!("P({m},2,{m},2) two-tone D_inf"), exists_two_tone(&p, Modulus::Infinite, cap)?.colorable));
        clauses.push((
            format!("P({m},2,{m},2) no two-tone D_{m}"),
            !exists_two_tone(&p, Modulus::Finite(m), cap)?.colorable,
        ));
        let q = generate_pretzel(&[2 * mi, 2 * mi, 2 * mi])?;
        let t = 2 * m;
        clauses.push((
            format!("P({t},{t},{t}) no two-tone D_{m}"),
            !exists_two_tone(&q, Modulus::Finite(m), cap)?.colorable,
        ));
        for n in n_sample.clone() {
            clauses.push((
                format!("P({t},{t},{t}) surjection onto D_{n}"),
                exists_surjection(&q, Modulus::Finite(n)).is_some(),
            ));
        }
    }
    let consistent = clauses.iter().all(|(_, v)| *v);
    Ok(ImplicationCheck { name: "pretzel-families", clauses, consistent, notes: Vec::new() })
}

/// Seeds the round component's arc with `a_0` and one arc of every other
/// component with `b_1`, propagates, and expects a two-tone coloring with the
/// round component reflection-toned.
pub fn check_standard_form_coloring(spec: &StandardFormSpec, odd_n: &[u64]) -> Result<ImplicationCheck, VerifyError> {
    let sf = generate_standard_form(spec)?;
    let mut clauses = Vec::new();
    let mut notes = Vec::new();
    for &n in odd_n {
        assert!(n % 2 == 1, "odd n expected");
        let m = Modulus::Finite(n);
        let mut seeds = alloc::collections::BTreeMap::new();
        seeds.insert(sf.alpha, DihedralElement::reflection(m, 0));
        for b in &sf.betas {
            seeds.insert(*b, DihedralElement::rotation(m, 1));
        }
        let ok = match propagate(&sf.diagram, &seeds, m) {
            Ok(c) => {
                c.is_two_tone(&sf.diagram)
                    && c.tones.get(sf.round) == Tone::Reflection
                    && check_coloring(&sf.diagram, &c).is_ok()
            }
            Err(e) => {
                notes.push(format!("n={n}: {e}"));
                false
            }
        };
        clauses.push((format!("propagation completes for n={n}"), ok));
    }
    let consistent = clauses.iter().all(|(_, v)| *v);
    Ok(ImplicationCheck { name: "standard-form-coloring", clauses, consistent, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, generate_torus_two_strand, parse_link_text};
    use crate::zlinalg::DEFAULT_ENUMERATION_CAP as CAP;

    #[test]
    fn hopf_classification() {
        let d = parse_link_text("X[1,3,2,4] X[3,1,4,2]").unwrap();
        let r = classify("hopf", &d, 3..=6, CAP);
        assert!(r.consistent(), "{:?}", r.failed_flags().collect::<Vec<_>>());
        for n in [3, 5] {
            let row = r.row(Modulus::Finite(n)).unwrap();
            assert_eq!(row.two_tone, Ok(None));
            assert!(row.surjection.is_none());
        }
        assert_eq!(r.component_determinants, [BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn whitehead_maps_onto_everything() {
        let d = braid_closure(3, &[1, -2, 1, -2, -2]).unwrap();
        let r = classify("whitehead", &d, 3..=6, CAP);
        assert!(r.consistent());
        assert!(r.rows.iter().all(|row| row.surjection.is_some()));
    }

    #[test]
    fn two_component_pattern() {
        let expect = [(2, false), (4, true), (6, false), (8, true)];
        for (q, all) in expect {
            let d = generate_torus_two_strand(q).unwrap();
            let c = check_two_component_equivalence(&d, 3..=10, CAP).unwrap();
            assert!(c.consistent, "T(2,{q}) {c:?}");
            assert!(c.clauses.iter().all(|(_, v)| *v == all), "T(2,{q}) {c:?}");
        }
        let knot = parse_link_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert!(check_two_component_equivalence(&knot, 3..=5, CAP).is_err());
    }

    #[test]
    fn odd_linking() {
        for q in [2, 6] {
            let d = generate_torus_two_strand(q).unwrap();
            let c = check_odd_linking(&d, 3..=10, CAP).unwrap();
            assert!(c.consistent, "{c:?}");
        }
        let even = generate_torus_two_strand(4).unwrap();
        assert_eq!(check_odd_linking(&even, 3..=4, CAP), Err(VerifyError::EvenLinking(2)));
    }

    #[test]
    fn pretzels_and_standard_forms() {
        let c = check_pretzel_families(&[3], 3..=5, CAP).unwrap();
        assert!(c.consistent, "{c:?}");
        let spec = StandardFormSpec { twists: vec![2, 2], closure: vec![] };
        assert!(check_standard_form_coloring(&spec, &[3, 5, 7]).unwrap().consistent);
        let odd = StandardFormSpec { twists: vec![1], closure: vec![] };
        assert!(check_standard_form_coloring(&odd, &[3]).is_err());
        let p = generate_pretzel(&[2, 2, 2]).unwrap();
        assert!(check_many_component_surjection(&p, 3..=8).unwrap().consistent);
    }
}
