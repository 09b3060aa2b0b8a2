//! Completing a partial coloring crossing by crossing.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use super::{check_assignment, Coloring, ColoringError};
use crate::diagram::{ArcId, Diagram, Sign};
use crate::dihedral::{under_arc_rule, under_arc_rule_inverse, DihedralElement};
use crate::zlinalg::Modulus;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PropagationError {
    #[error("conflicting colors derived at crossing {crossing}")]
    Conflict { crossing: usize },
    #[error("arcs left undetermined: {arcs:?}")]
    Underdetermined { arcs: Vec<ArcId> },
    #[error("seed colors disagree in modulus")]
    Modulus,
    #[error(transparent)]
    Tone(#[from] ColoringError),
}

/// Fills in arc colors from `seeds` until nothing more follows.
///
/// At each crossing with over color `x`, incoming `y` and outgoing `z`:
/// `z` follows from `x, y` and `y` from `x, z`; a rotation-colored under
/// strand only needs the over strand's tone (`z = y` under a rotation,
/// `z = y⁻¹` under a reflection); and two reflection-colored unders pin down
/// the over exponent when the halving is unique.
pub fn propagate(
    d: &Diagram,
    seeds: &BTreeMap<ArcId, DihedralElement>,
    modulus: Modulus,
) -> Result<Coloring, PropagationError> {
    if seeds.values().any(|e| e.modulus() != modulus) {
        return Err(PropagationError::Modulus);
    }
    let mut color: Vec<Option<DihedralElement>> = vec![None; d.arc_count()];
    for (a, e) in seeds {
        color[a.0] = Some(e.clone());
    }
    let tone_of = |color: &[Option<DihedralElement>], arc: ArcId| -> Option<bool> {
        let comp = d.component(d.arc_component(arc));
        comp.arcs.iter().find_map(|a| color[a.0].as_ref().map(DihedralElement::is_reflection))
    };

    loop {
        let mut changed = false;
        for (x, ca) in d.crossing_arcs().iter().enumerate() {
            let (o, i, u) = (ca.over.0, ca.under_in.0, ca.under_out.0);
            let conflict = || PropagationError::Conflict { crossing: x };
            let mut set = |color: &mut Vec<Option<DihedralElement>>, arc: usize, e: DihedralElement| match &color[arc] {
                Some(old) if *old != e => Err(conflict()),
                Some(_) => Ok(()),
                None => {
                    color[arc] = Some(e);
                    changed = true;
                    Ok(())
                }
            };
            match (color[o].clone(), color[i].clone(), color[u].clone()) {
                (Some(xv), Some(yv), _) => {
                    let z = under_arc_rule(&xv, &yv, ca.sign).map_err(|_| PropagationError::Modulus)?;
                    set(&mut color, u, z)?;
                }
                (Some(xv), None, Some(zv)) => {
                    let y = under_arc_rule_inverse(&xv, &zv, ca.sign).map_err(|_| PropagationError::Modulus)?;
                    set(&mut color, i, y)?;
                }
                (None, yv, zv) => {
                    let over_reflection = tone_of(&color, ca.over);
                    let known = yv.as_ref().or(zv.as_ref()).cloned();
                    if let (Some(refl), Some(k)) = (over_reflection, known) {
                        if !k.is_reflection() {
                            let other = if refl { k.inverse() } else { k };
                            let target = if yv.is_some() { u } else { i };
                            set(&mut color, target, other)?;
                        }
                    }
                    if let (Some(refl), Some(yv), Some(zv)) = (over_reflection, &color[i].clone(), &color[u].clone()) {
                        if yv.is_reflection() && zv.is_reflection() {
                            if let Some(k) = solve_over(modulus, refl, ca.sign, yv.exponent(), zv.exponent()) {
                                set(&mut color, o, DihedralElement::new(modulus, refl, k))?;
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    let missing: Vec<ArcId> = d.arc_ids().filter(|a| color[a.0].is_none()).collect();
    if !missing.is_empty() {
        return Err(PropagationError::Underdetermined { arcs: missing });
    }
    let elements: Vec<DihedralElement> = color.into_iter().map(|e| e.expect("complete")).collect();
    check_assignment(d, &elements).map_err(|crossing| PropagationError::Conflict { crossing })?;
    Ok(Coloring::from_elements(d, &elements)?)
}

/// Over exponent from reflection-colored unders `a_y`, `a_z`:
/// `2x ≡ y + z` under a reflection, `2s·x ≡ z - y` under a rotation.
/// Only returned when the solution is unique.
fn solve_over(modulus: Modulus, over_reflection: bool, sign: Sign, y: &BigInt, z: &BigInt) -> Option<BigInt> {
    let rhs = if over_reflection { y + z } else { (z - y) * BigInt::from(sign.value()) };
    match modulus {
        Modulus::Finite(n) if n % 2 == 1 => {
            let half = BigInt::from(n.div_ceil(2));
            Some((rhs * half).mod_floor(&BigInt::from(n)))
        }
        Modulus::Infinite if rhs.is_even() => Some(rhs / 2),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{check_coloring, Tone};
    use crate::diagram::{generate_standard_form, parse_link_text, StandardFormSpec};

    #[test]
    fn hopf_parity_conflict() {
        let d = parse_link_text("X[1,3,2,4] X[3,1,4,2]").unwrap();
        for n in [3, 5, 7] {
            let m = Modulus::Finite(n);
            let mut seeds = BTreeMap::new();
            seeds.insert(ArcId(0), DihedralElement::reflection(m, 0));
            seeds.insert(ArcId(1), DihedralElement::rotation(m, 1));
            assert!(matches!(propagate(&d, &seeds, m), Err(PropagationError::Conflict { .. })));
        }
    }

    #[test]
    fn trefoil_from_two_arcs() {
        let d = parse_link_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let m = Modulus::Finite(3);
        let mut seeds = BTreeMap::new();
        seeds.insert(ArcId(0), DihedralElement::reflection(m, 0));
        seeds.insert(ArcId(1), DihedralElement::reflection(m, 1));
        let c = propagate(&d, &seeds, m).unwrap();
        assert_eq!(check_coloring(&d, &c), Ok(()));
        let one = BTreeMap::from([(ArcId(0), DihedralElement::reflection(m, 0))]);
        assert!(matches!(propagate(&d, &one, m), Err(PropagationError::Underdetermined { .. })));
    }

    #[test]
    fn standard_form_completes() {
        for twists in [vec![2], vec![2, 2], vec![-2, 4]] {
            let sf = generate_standard_form(&StandardFormSpec { twists, closure: vec![] }).unwrap();
            for n in [3, 5, 7] {
                let m = Modulus::Finite(n);
                let mut seeds = BTreeMap::new();
                seeds.insert(sf.alpha, DihedralElement::reflection(m, 0));
                for b in &sf.betas {
                    seeds.insert(*b, DihedralElement::rotation(m, 1));
                }
                let c = propagate(&sf.diagram, &seeds, m).unwrap();
                assert!(c.is_two_tone(&sf.diagram));
                assert_eq!(c.tones.get(sf.round), Tone::Reflection);
            }
        }
    }
}
