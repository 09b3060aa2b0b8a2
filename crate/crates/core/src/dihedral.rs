//! Exact arithmetic in the dihedral groups `D_n` and `D_∞`.
//!
//! Elements are written `a^ε b^k` with `ε ∈ {0, 1}`. Reflections `a b^k` are
//! rendered `a{k}`, rotations `b^k` as `b{k}` and the identity as `e`. Over
//! `D_∞` the exponent is an unbounded integer; no separate code path exists.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diagram::Sign;
use crate::zlinalg::Modulus;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DihedralError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(Modulus, Modulus),
    #[error("cannot parse dihedral element {0:?}")]
    Parse(String),
}

/// An element `a^ε b^k` of `D_n` or `D_∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    modulus: Modulus,
    reflection: bool,
    exponent: BigInt,
}

impl DihedralElement {
    pub fn new(modulus: Modulus, reflection: bool, exponent: impl Into<BigInt>) -> Self {
        let exponent = modulus.reduce(&exponent.into());
        DihedralElement { modulus, reflection, exponent }
    }

    pub fn identity(modulus: Modulus) -> Self {
        Self::new(modulus, false, 0)
    }

    /// The rotation `b^k`.
    pub fn rotation(modulus: Modulus, k: impl Into<BigInt>) -> Self {
        Self::new(modulus, false, k)
    }

    /// The reflection `a_k = a b^k`.
    pub fn reflection(modulus: Modulus, k: impl Into<BigInt>) -> Self {
        Self::new(modulus, true, k)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_reflection(&self) -> bool {
        self.reflection
    }

    pub fn is_identity(&self) -> bool {
        !self.reflection && self.exponent.is_zero()
    }

    pub fn exponent(&self) -> &BigInt {
        &self.exponent
    }

    fn check(&self, other: &Self) -> Result<(), DihedralError> {
        if self.modulus != other.modulus {
            return Err(DihedralError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    /// `a^{ε1} b^{k1} · a^{ε2} b^{k2} = a^{ε1+ε2} b^{k2 + (-1)^{ε2} k1}`,
    /// from `b a = a b^{-1}`.
    pub fn multiply(&self, other: &Self) -> Result<Self, DihedralError> {
        self.check(other)?;
        let carried = if other.reflection { -&self.exponent } else { self.exponent.clone() };
        Ok(Self::new(self.modulus, self.reflection ^ other.reflection, carried + &other.exponent))
    }

    pub fn inverse(&self) -> Self {
        if self.reflection {
            self.clone()
        } else {
            Self::new(self.modulus, false, -&self.exponent)
        }
    }

    /// Renders as `e`, `a3`, `b5` (`a-2` / `b-1` over `D_∞`).
    pub fn parse(text: &str, modulus: Modulus) -> Result<Self, DihedralError> {
        let t = text.trim();
        let err = || DihedralError::Parse(t.to_string());
        if t == "e" {
            return Ok(Self::identity(modulus));
        }
        let (head, rest) = t.split_at(t.char_indices().nth(1).map_or(t.len(), |(i, _)| i));
        let k: BigInt = rest.parse().map_err(|_| err())?;
        match head {
            "a" => Ok(Self::reflection(modulus, k)),
            "b" => Ok(Self::rotation(modulus, k)),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("e")
        } else if self.reflection {
            write!(f, "a{}", self.exponent)
        } else {
            write!(f, "b{}", self.exponent)
        }
    }
}

/// Color leaving a crossing on the under strand: `x^{-s} y x^{s}`, where `x`
/// is the over color, `y` the incoming under color and `s` the crossing sign.
/// This is the solution of `x z = y x` (positive) or `z x = x y` (negative).
pub fn under_arc_rule(
    over: &DihedralElement,
    under_in: &DihedralElement,
    sign: Sign,
) -> Result<DihedralElement, DihedralError> {
    over.check(under_in)?;
    let inv = over.inverse();
    match sign {
        Sign::Positive => inv.multiply(under_in)?.multiply(over),
        Sign::Negative => over.multiply(under_in)?.multiply(&inv),
    }
}

/// Incoming under color recovered from the outgoing one (inverse of
/// [`under_arc_rule`]).
pub fn under_arc_rule_inverse(
    over: &DihedralElement,
    under_out: &DihedralElement,
    sign: Sign,
) -> Result<DihedralElement, DihedralError> {
    under_arc_rule(over, under_out, sign.flip())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupKind {
    Trivial,
    Cyclic,
    Dihedral,
}

/// A subgroup `⟨b^step⟩` or `⟨b^step, a b^offset⟩`.
///
/// `step` divides `n` (for `D_∞` it is any nonnegative integer, 0 meaning no
/// rotation); `offset` is reduced modulo `step` when `step > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupDescriptor {
    pub kind: SubgroupKind,
    pub step: BigInt,
    pub offset: Option<BigInt>,
}

impl SubgroupDescriptor {
    pub fn is_full(&self) -> bool {
        self.kind == SubgroupKind::Dihedral && self.step.is_one()
    }
}

/// Subgroup generated by `gens`: every subgroup of a dihedral group is
/// `⟨b^d⟩` or `⟨b^d, a_t⟩`, and `d` is the gcd of `n`, the rotation
/// exponents and the differences of reflection exponents.
pub fn subgroup_generated(gens: &[DihedralElement], modulus: Modulus) -> Result<SubgroupDescriptor, DihedralError> {
    let mut step = modulus.as_bigint();
    let mut first_reflection: Option<&BigInt> = None;
    for g in gens {
        if g.modulus != modulus {
            return Err(DihedralError::ModulusMismatch(g.modulus, modulus));
        }
        if g.reflection {
            match first_reflection {
                None => first_reflection = Some(&g.exponent),
                Some(t) => step = step.gcd(&(&g.exponent - t)),
            }
        } else {
            step = step.gcd(&g.exponent);
        }
    }
    let step = step.abs();
    Ok(match first_reflection {
        Some(t) => SubgroupDescriptor {
            kind: SubgroupKind::Dihedral,
            offset: Some(if step.is_zero() { t.clone() } else { t.mod_floor(&step) }),
            step,
        },
        None => {
            let trivial = step == modulus.as_bigint();
            SubgroupDescriptor {
                kind: if trivial { SubgroupKind::Trivial } else { SubgroupKind::Cyclic },
                step,
                offset: None,
            }
        }
    })
}

/// Whether `gens` generate all of `D_n` (or `D_∞`).
pub fn generates_full(gens: &[DihedralElement], modulus: Modulus) -> Result<bool, DihedralError> {
    Ok(subgroup_generated(gens, modulus)?.is_full())
}

/// Every element of `D_n`, rotations first.
pub fn elements(n: u64) -> Vec<DihedralElement> {
    let m = Modulus::Finite(n);
    (0..2 * n).map(|i| DihedralElement::new(m, i >= n, i % n)).collect()
}
