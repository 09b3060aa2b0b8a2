//! Dihedral colorings of diagrams.
//!
//! Along a component all arcs carry reflections or all carry rotations (the
//! component's *tone*). With the tones fixed, the crossing relations become
//! homogeneous linear equations in the exponents, so every coloring is a
//! tone assignment plus a solution of an integer system.

mod oracle;
mod propagate;
mod search;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diagram::{ArcId, ComponentId, Diagram, Sign};
use crate::dihedral::{under_arc_rule, DihedralElement};
use crate::zlinalg::{kernel_lattice, kernel_mod_n, CapacityError, IntMatrix, Modulus, SolutionModule};

pub use oracle::brute_force_colorings;
pub use propagate::{propagate, PropagationError};
pub use search::{
    all_colorings, exists_surjection, exists_two_tone, fox_colorable, surjective_colorings, two_tone_in_tone,
    FoxVerdict, TwoToneVerdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tone {
    /// Colors are reflections `a_k`.
    Reflection,
    /// Colors are rotations `b_k`.
    Rotation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToneAssignment(pub Vec<Tone>);

impl ToneAssignment {
    pub fn uniform(components: usize, tone: Tone) -> Self {
        ToneAssignment(alloc::vec![tone; components])
    }

    /// Bit `i` of `mask` set means component `i` is rotation-toned.
    pub fn from_mask(components: usize, mask: u64) -> Self {
        ToneAssignment(
            (0..components).map(|i| if mask >> i & 1 == 1 { Tone::Rotation } else { Tone::Reflection }).collect(),
        )
    }

    pub fn get(&self, c: ComponentId) -> Tone {
        self.0[c.0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotation_components(&self) -> impl Iterator<Item = ComponentId> + '_ {
        self.0.iter().enumerate().filter(|(_, t)| **t == Tone::Rotation).map(|(i, _)| ComponentId(i))
    }

    pub fn reflection_components(&self) -> impl Iterator<Item = ComponentId> + '_ {
        self.0.iter().enumerate().filter(|(_, t)| **t == Tone::Reflection).map(|(i, _)| ComponentId(i))
    }

    /// Every assignment for `components` components, by number of rotation
    /// tones and then by mask.
    pub fn all(components: usize) -> Vec<ToneAssignment> {
        assert!(components < 64, "too many components");
        let mut masks: Vec<u64> = (0..1u64 << components).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        masks.into_iter().map(|m| Self::from_mask(components, m)).collect()
    }
}

impl fmt::Display for ToneAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            f.write_str(match t {
                Tone::Reflection => "R",
                Tone::Rotation => "T",
            })?;
        }
        Ok(())
    }
}

/// A coloring in (tone, exponent) form: arc `r` is `a_{k_r}` on a
/// reflection-toned component and `b_{k_r}` on a rotation-toned one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub modulus: Modulus,
    pub tones: ToneAssignment,
    pub exponents: Vec<BigInt>,
}

impl Coloring {
    pub fn zero(d: &Diagram, tones: ToneAssignment, modulus: Modulus) -> Self {
        Coloring { modulus, tones, exponents: alloc::vec![BigInt::zero(); d.arc_count()] }
    }

    pub fn element(&self, d: &Diagram, arc: ArcId) -> DihedralElement {
        let reflection = self.tones.get(d.arc_component(arc)) == Tone::Reflection;
        DihedralElement::new(self.modulus, reflection, self.exponents[arc.0].clone())
    }

    pub fn elements(&self, d: &Diagram) -> Vec<DihedralElement> {
        d.arc_ids().map(|a| self.element(d, a)).collect()
    }

    /// Reads an element-per-arc assignment back into tone form.
    pub fn from_elements(d: &Diagram, elements: &[DihedralElement]) -> Result<Self, ColoringError> {
        if elements.len() != d.arc_count() {
            return Err(ColoringError::ArcCount { expected: d.arc_count(), found: elements.len() });
        }
        let modulus = elements.first().map_or(Modulus::Infinite, |e| e.modulus());
        let mut tones: Vec<Option<Tone>> = alloc::vec![None; d.component_count()];
        for (i, e) in elements.iter().enumerate() {
            if e.modulus() != modulus {
                return Err(ColoringError::Modulus);
            }
            let c = d.arc_component(ArcId(i));
            let t = if e.is_reflection() { Tone::Reflection } else { Tone::Rotation };
            match tones[c.0] {
                Some(prev) if prev != t => return Err(ColoringError::MixedTone { component: c.0 }),
                _ => tones[c.0] = Some(t),
            }
        }
        Ok(Coloring {
            modulus,
            tones: ToneAssignment(tones.into_iter().map(|t| t.unwrap_or(Tone::Rotation)).collect()),
            exponents: elements.iter().map(|e| e.exponent().clone()).collect(),
        })
    }

    /// Image avoids the identity and meets both reflections and rotations.
    pub fn is_two_tone(&self, d: &Diagram) -> bool {
        let els = self.elements(d);
        !els.iter().any(DihedralElement::is_identity)
            && els.iter().any(DihedralElement::is_reflection)
            && els.iter().any(|e| !e.is_reflection())
    }

    /// Meridians go to the identity or to reflections only.
    pub fn is_fox_type(&self, d: &Diagram) -> bool {
        self.elements(d).iter().all(|e| e.is_reflection() || e.is_identity())
    }

    pub fn generates_full(&self, d: &Diagram) -> bool {
        crate::dihedral::generates_full(&self.elements(d), self.modulus).expect("uniform modulus")
    }

    /// Tone header followed by one `arc i: element` line per arc.
    pub fn render(&self, d: &Diagram) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "modulus {}", self.modulus);
        let _ = writeln!(out, "tones {}", self.tones);
        for (i, e) in self.elements(d).iter().enumerate() {
            let _ = writeln!(out, "arc {i}: {e}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("expected {expected} arc colors, found {found}")]
    ArcCount { expected: usize, found: usize },
    #[error("colors use different moduli")]
    Modulus,
    #[error("component {component} mixes reflections and rotations")]
    MixedTone { component: usize },
}

/// Checks the crossing relation `x z = y x` (positive) or `z x = x y`
/// (negative) everywhere; `Err` names the first crossing that fails.
pub fn check_assignment(d: &Diagram, elements: &[DihedralElement]) -> Result<(), usize> {
    for (x, ca) in d.crossing_arcs().iter().enumerate() {
        let over = &elements[ca.over.0];
        let z = &elements[ca.under_out.0];
        let ok = under_arc_rule(over, &elements[ca.under_in.0], ca.sign).is_ok_and(|w| &w == z);
        if !ok {
            return Err(x);
        }
    }
    Ok(())
}

pub fn check_coloring(d: &Diagram, c: &Coloring) -> Result<(), usize> {
    if c.exponents.len() != d.arc_count() || c.tones.len() != d.component_count() {
        return Err(0);
    }
    check_assignment(d, &c.elements(d))
}

/// Homogeneous exponent equations, one row per crossing; `x` is the over arc,
/// `y`/`z` the incoming/outgoing under arcs and `s` the sign:
///
/// | over | under | row                |
/// |------|-------|--------------------|
/// | R    | R     | `z - 2x + y`       |
/// | R    | T     | `z + y`            |
/// | T    | R     | `z - y - 2s·x`     |
/// | T    | T     | `z - y`            |
pub fn index_system(d: &Diagram, tones: &ToneAssignment) -> IntMatrix {
    let mut m = IntMatrix::zeros(d.crossing_count(), d.arc_count());
    let one = BigInt::from(1);
    let minus = BigInt::from(-1);
    for (x, ca) in d.crossing_arcs().iter().enumerate() {
        let over = tones.get(d.arc_component(ca.over));
        let under = tones.get(d.arc_component(ca.under_in));
        let (z, y, xc) = match (over, under) {
            (Tone::Reflection, Tone::Reflection) => (1, 1, -2),
            (Tone::Reflection, Tone::Rotation) => (1, 1, 0),
            (Tone::Rotation, Tone::Reflection) => (1, -1, if ca.sign == Sign::Positive { -2 } else { 2 }),
            (Tone::Rotation, Tone::Rotation) => (1, -1, 0),
        };
        m.add_at(x, ca.under_out.0, &if z == 1 { one.clone() } else { minus.clone() });
        m.add_at(x, ca.under_in.0, &BigInt::from(y));
        if xc != 0 {
            m.add_at(x, ca.over.0, &BigInt::from(xc));
        }
    }
    m
}

/// All colorings with a fixed tone assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSpace {
    pub modulus: Modulus,
    pub tones: ToneAssignment,
    pub module: SolutionModule,
}

impl ColoringSpace {
    pub fn count(&self) -> Option<BigInt> {
        self.module.count()
    }

    pub fn decode(&self, exponents: Vec<BigInt>) -> Coloring {
        Coloring { modulus: self.modulus, tones: self.tones.clone(), exponents }
    }

    pub fn colorings(&self, cap: u64) -> Result<Vec<Coloring>, CapacityError> {
        Ok(self.module.enumerate(cap)?.into_iter().map(|v| self.decode(v)).collect())
    }
}

pub fn coloring_space(d: &Diagram, tones: &ToneAssignment, modulus: Modulus) -> ColoringSpace {
    let m = index_system(d, tones);
    let module = match modulus {
        Modulus::Finite(n) => kernel_mod_n(&m, n),
        Modulus::Infinite => kernel_lattice(&m),
    };
    ColoringSpace { modulus, tones: tones.clone(), module }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{generate_pretzel, parse_link_text};
    use crate::invariants::coloring_matrix;
    use alloc::vec;

    const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";
    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn all_reflection_rows_are_fox_rows() {
        for text in [HOPF, TREFOIL, "X[1,1,2,2]"] {
            let d = parse_link_text(text).unwrap();
            let tones = ToneAssignment::uniform(d.component_count(), Tone::Reflection);
            let a = index_system(&d, &tones);
            let b = coloring_matrix(&d);
            for i in 0..a.rows() {
                let neg: Vec<BigInt> = b.row(i).iter().map(|v| -v).collect();
                assert!(a.row(i) == b.row(i) || a.row(i) == neg.as_slice());
            }
        }
    }

    #[test]
    fn hopf_mixed_tone_kills_odd_rotations() {
        let d = parse_link_text(HOPF).unwrap();
        let tones = ToneAssignment(vec![Tone::Reflection, Tone::Rotation]);
        for n in [3u64, 5, 7, 9] {
            let space = coloring_space(&d, &tones, Modulus::Finite(n));
            for c in space.colorings(1000).unwrap() {
                assert!(c.exponents[1].is_zero());
            }
        }
    }

    #[test]
    fn trefoil_three_colorings() {
        let d = parse_link_text(TREFOIL).unwrap();
        let space = coloring_space(&d, &ToneAssignment::uniform(1, Tone::Reflection), Modulus::Finite(3));
        assert_eq!(space.count(), Some(BigInt::from(9)));
    }

    #[test]
    fn zero_is_always_a_coloring() {
        for text in [HOPF, TREFOIL, "O[1] O[2]"] {
            let d = parse_link_text(text).unwrap();
            for tones in ToneAssignment::all(d.component_count()) {
                for m in [Modulus::Finite(4), Modulus::Infinite] {
                    assert_eq!(check_coloring(&d, &Coloring::zero(&d, tones.clone(), m)), Ok(()));
                }
            }
        }
    }

    #[test]
    fn circle_exponent_is_free() {
        let d = parse_link_text("O[1]").unwrap();
        let space = coloring_space(&d, &ToneAssignment::uniform(1, Tone::Rotation), Modulus::Finite(5));
        assert_eq!(space.count(), Some(BigInt::from(5)));
        assert_eq!(index_system(&d, &space.tones).rows(), 0);
    }

    #[test]
    fn perturbing_a_nontrivial_coloring_breaks_it() {
        let d = parse_link_text(TREFOIL).unwrap();
        let space = coloring_space(&d, &ToneAssignment::uniform(1, Tone::Reflection), Modulus::Finite(3));
        let c = space
            .colorings(100)
            .unwrap()
            .into_iter()
            .find(|c| c.exponents.iter().any(|e| *e != c.exponents[0]))
            .unwrap();
        assert_eq!(check_coloring(&d, &c), Ok(()));
        let mut bad = c.clone();
        bad.exponents[0] += 1;
        assert!(check_coloring(&d, &bad).is_err());
    }

    #[test]
    fn pretzel_mixed_space_is_nontrivial() {
        let d = generate_pretzel(&[6, 6, 6]).unwrap();
        let tones = ToneAssignment::from_mask(3, 1);
        let space = coloring_space(&d, &tones, Modulus::Finite(8));
        for c in space.colorings(1 << 20).unwrap() {
            assert_eq!(check_coloring(&d, &c), Ok(()));
        }
    }
}
