//! Decision procedures over all tone assignments.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{coloring_space, Coloring, ColoringSpace, Tone, ToneAssignment};
use crate::diagram::{ArcId, Diagram};
use crate::zlinalg::{smith_normal_form, CapacityError, IntMatrix, Modulus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoToneVerdict {
    pub colorable: bool,
    pub witness: Option<Coloring>,
    pub obstruction: Option<String>,
}

/// The arc whose exponent stands for a rotation-toned component: along such
/// a component every exponent is `±` this one.
fn representative(d: &Diagram, c: crate::diagram::ComponentId) -> ArcId {
    d.component(c).arcs[0]
}

/// A coloring with the given tones whose rotation-toned arcs all avoid the
/// identity, if one exists.
pub fn two_tone_in_tone(
    d: &Diagram,
    tones: &ToneAssignment,
    modulus: Modulus,
    cap: u64,
) -> Result<Option<Coloring>, CapacityError> {
    let space = coloring_space(d, tones, modulus);
    let reps: Vec<usize> = tones.rotation_components().map(|c| representative(d, c).0).collect();
    let found = match modulus {
        Modulus::Finite(n) => nonzero_on_finite(&space, &reps, n, cap)?,
        Modulus::Infinite => nonzero_on_lattice(&space, &reps),
    };
    Ok(found.map(|v| space.decode(v)))
}

/// Breadth-first search over the projection of the module onto the
/// representative coordinates, carrying one full solution per state.
fn nonzero_on_finite(
    space: &ColoringSpace,
    reps: &[usize],
    n: u64,
    cap: u64,
) -> Result<Option<Vec<BigInt>>, CapacityError> {
    let nb = BigInt::from(n);
    let module = &space.module;
    let project = |v: &[BigInt]| -> Vec<u64> { reps.iter().map(|&r| v[r].to_u64().expect("reduced")).collect() };
    let good = |p: &[u64]| p.iter().all(|&x| x != 0);
    let start = vec![BigInt::zero(); module.dim];
    let mut seen: BTreeMap<Vec<u64>, ()> = BTreeMap::new();
    let mut queue = alloc::collections::VecDeque::new();
    let p0 = project(&start);
    if good(&p0) {
        return Ok(Some(start));
    }
    seen.insert(p0, ());
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for g in &module.generators {
            let w: Vec<BigInt> = v.iter().zip(g).map(|(a, b)| (a + b).mod_floor(&nb)).collect();
            let p = project(&w);
            if seen.contains_key(&p) {
                continue;
            }
            if good(&p) {
                return Ok(Some(w));
            }
            if seen.len() as u64 >= cap {
                return Err(CapacityError::new(format!("more than {cap}"), cap));
            }
            seen.insert(p, ());
            queue.push_back(w);
        }
    }
    Ok(None)
}

/// Over `Z`: if no representative vanishes on the whole basis, the
/// combination with coefficients `M^i` (`M` above every basis coefficient)
/// is nonzero on each of them; divide out the content afterwards.
fn nonzero_on_lattice(space: &ColoringSpace, reps: &[usize]) -> Option<Vec<BigInt>> {
    let basis = &space.module.generators;
    if reps.iter().any(|&r| basis.iter().all(|g| g[r].is_zero())) {
        return None;
    }
    let m = basis.iter().flat_map(|g| reps.iter().map(move |&r| g[r].abs())).max().unwrap_or_else(BigInt::zero)
        + BigInt::one();
    let mut coeff = BigInt::one();
    let mut v = vec![BigInt::zero(); space.module.dim];
    for g in basis {
        for (a, b) in v.iter_mut().zip(g) {
            *a += &coeff * b;
        }
        coeff *= &m;
    }
    let content = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !content.is_zero() {
        for a in v.iter_mut() {
            *a = &*a / &content;
        }
    }
    debug_assert!(reps.iter().all(|&r| !v[r].is_zero()));
    Some(v)
}

/// Searches every tone assignment with both tones present, fewest rotation
/// tones first.
pub fn exists_two_tone(d: &Diagram, modulus: Modulus, cap: u64) -> Result<TwoToneVerdict, CapacityError> {
    let k = d.component_count();
    for tones in ToneAssignment::all(k) {
        let t = tones.rotation_components().count();
        if t == 0 || t == k {
            continue;
        }
        if let Some(w) = two_tone_in_tone(d, &tones, modulus, cap)? {
            return Ok(TwoToneVerdict { colorable: true, witness: Some(w), obstruction: None });
        }
    }
    let obstruction = if k < 2 {
        String::from("a two-tone coloring needs at least two components")
    } else {
        format!("no mixed tone admits rotation exponents that are all nonzero mod {modulus}")
    };
    Ok(TwoToneVerdict { colorable: false, witness: None, obstruction: Some(obstruction) })
}

/// Linear forms whose common content decides whether a coloring generates
/// the whole group: representative rotation exponents and differences of
/// reflection exponents.
fn generation_forms(d: &Diagram, tones: &ToneAssignment) -> Vec<Vec<(usize, i64)>> {
    let mut forms = Vec::new();
    for c in tones.rotation_components() {
        forms.push(vec![(representative(d, c).0, 1)]);
    }
    let reflection_arcs: Vec<usize> =
        d.arc_ids().filter(|&a| tones.get(d.arc_component(a)) == Tone::Reflection).map(|a| a.0).collect();
    if let Some((&first, rest)) = reflection_arcs.split_first() {
        for &r in rest {
            forms.push(vec![(r, 1), (first, -1)]);
        }
    }
    forms
}

/// A generating coloring within one tone assignment. With `G = F·B` (forms
/// applied to the module basis) and `P G Q = diag(d_1, ...)`, the vector
/// `B Q e_1` realises content `d_1`, the smallest possible; the group is
/// reached iff `gcd(n, d_1) = 1` (`d_1 = 1` over `Z`).
fn surjection_in_tone(d: &Diagram, tones: &ToneAssignment, modulus: Modulus) -> Option<Coloring> {
    tones.reflection_components().next()?;
    let space = coloring_space(d, tones, modulus);
    let basis = &space.module.generators;
    let forms = generation_forms(d, tones);
    if basis.is_empty() || forms.is_empty() {
        return None;
    }
    let mut g = IntMatrix::zeros(forms.len(), basis.len());
    for (i, f) in forms.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let v: BigInt = f.iter().map(|&(arc, c)| &b[arc] * c).sum();
            g.set(i, j, v);
        }
    }
    let snf = smith_normal_form(&g);
    let d1 = snf.divisors.first()?;
    let ok = match modulus {
        Modulus::Finite(n) => d1.gcd(&BigInt::from(n)).is_one(),
        Modulus::Infinite => d1.is_one(),
    };
    if !ok {
        return None;
    }
    let coeffs = snf.right.column(0);
    let mut v = vec![BigInt::zero(); space.module.dim];
    for (c, b) in coeffs.iter().zip(basis) {
        for (a, x) in v.iter_mut().zip(b) {
            *a += c * x;
        }
    }
    let v = v.iter().map(|x| modulus.reduce(x)).collect();
    Some(space.decode(v))
}

/// A coloring whose image generates all of `D_n` (or `D_∞`), trying
/// all-reflection tones first.
pub fn exists_surjection(d: &Diagram, modulus: Modulus) -> Option<Coloring> {
    ToneAssignment::all(d.component_count()).iter().find_map(|tones| surjection_in_tone(d, tones, modulus))
}

/// Every coloring over every tone assignment.
pub fn all_colorings(d: &Diagram, n: u64, cap: u64) -> Result<Vec<Coloring>, CapacityError> {
    let mut out = Vec::new();
    for tones in ToneAssignment::all(d.component_count()) {
        let space = coloring_space(d, &tones, Modulus::Finite(n));
        let remaining = cap.saturating_sub(out.len() as u64);
        out.extend(space.colorings(remaining)?);
    }
    Ok(out)
}

/// Every coloring whose image generates `D_n`.
pub fn surjective_colorings(d: &Diagram, n: u64, cap: u64) -> Result<Vec<Coloring>, CapacityError> {
    let mut out = Vec::new();
    for tones in ToneAssignment::all(d.component_count()) {
        if tones.reflection_components().next().is_none() {
            continue;
        }
        let space = coloring_space(d, &tones, Modulus::Finite(n));
        out.extend(space.colorings(cap)?.into_iter().filter(|c| c.generates_full(d)));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoxVerdict {
    pub colorable: bool,
    /// Number of Fox colorings, constant ones included.
    pub count: BigInt,
}

/// Nontrivial Fox `n`-colorings exist iff there are more than the `n`
/// constant ones.
pub fn fox_colorable(d: &Diagram, n: u64) -> FoxVerdict {
    let tones = ToneAssignment::uniform(d.component_count(), Tone::Reflection);
    let count = coloring_space(d, &tones, Modulus::Finite(n)).count().expect("finite modulus");
    FoxVerdict { colorable: count > BigInt::from(n), count }
}
