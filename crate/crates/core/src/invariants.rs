//! Linking numbers and the link determinant.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagram::Diagram;
use crate::zlinalg::{smith_normal_form, IntMatrix};

/// Pairwise linking numbers; the diagonal is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    /// `lk(ℓ_i, L - ℓ_i)`.
    pub fn row_sum(&self, i: usize) -> i64 {
        (0..self.size).map(|j| self.get(i, j)).sum()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.size).map(|i| (0..self.size).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Equal after renumbering components and reorienting some of them.
    /// Component order and orientation are conventions of a diagram, so this
    /// is the comparison that makes sense between two diagrams of one link.
    pub fn equivalent(&self, other: &LinkingMatrix) -> bool {
        if self.size != other.size {
            return false;
        }
        let k = self.size;
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            for signs in 0u64..(1u64 << k.min(63)) {
                let s = |i: usize| if signs >> i & 1 == 1 { -1 } else { 1 };
                let ok = (0..k).all(|i| (0..k).all(|j| self.get(i, j) == s(i) * s(j) * other.get(perm[i], perm[j])));
                if ok {
                    return true;
                }
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

pub fn linking_matrix(d: &Diagram) -> LinkingMatrix {
    let k = d.component_count();
    let mut twice = vec![0i64; k * k];
    for x in 0..d.crossing_count() {
        let (o, u) = d.crossing_components(x);
        if o != u {
            let s = d.sign(x).value();
            twice[o.0 * k + u.0] += s;
            twice[u.0 * k + o.0] += s;
        }
    }
    LinkingMatrix { size: k, entries: twice.into_iter().map(|v| v / 2).collect() }
}

/// Fox coloring relations: one row per crossing with `+2` on the over arc and
/// `-1` on each under arc; columns are arcs.
pub fn coloring_matrix(d: &Diagram) -> IntMatrix {
    let mut m = IntMatrix::zeros(d.crossing_count(), d.arc_count());
    let (two, minus) = (BigInt::from(2), BigInt::from(-1));
    for (x, ca) in d.crossing_arcs().iter().enumerate() {
        m.add_at(x, ca.over.0, &two);
        m.add_at(x, ca.under_in.0, &minus);
        m.add_at(x, ca.under_out.0, &minus);
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantResult {
    pub value: BigInt,
    /// Free rank of the cokernel of the coloring matrix.
    pub free_rank: usize,
    /// Nonzero invariant factors of the coloring matrix.
    pub divisors: Vec<BigInt>,
}

pub fn determinant(d: &Diagram) -> DeterminantResult {
    let m = coloring_matrix(d);
    let snf = smith_normal_form(&m);
    let free_rank = m.cols() - snf.rank;
    let value = if free_rank >= 2 { BigInt::zero() } else { snf.divisors.iter().fold(BigInt::one(), |acc, v| acc * v) };
    DeterminantResult { value, free_rank, divisors: snf.divisors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{generate_torus_two_strand, parse_link_text, reverse_component_orientation, ComponentId};

    fn det(text: &str) -> i64 {
        use num_traits::ToPrimitive;
        determinant(&parse_link_text(text).unwrap()).value.to_i64().unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det("O[1]"), 1);
        assert_eq!(det("X[1,3,2,4] X[3,1,4,2]"), 2);
        assert_eq!(det("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"), 3);
        assert_eq!(det("O[1] O[2]"), 0);
        assert_eq!(det("X[1,1,2,2]"), 1);
        let unknot = determinant(&parse_link_text("O[1]").unwrap());
        assert_eq!(unknot.free_rank, 1);
    }

    #[test]
    fn trefoil_rows() {
        let m = coloring_matrix(&parse_link_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap());
        assert_eq!((m.rows(), m.cols()), (3, 3));
        for i in 0..3 {
            let mut row: Vec<i64> = m.row(i).iter().map(|v| i64::try_from(v).unwrap()).collect();
            row.sort_unstable();
            assert_eq!(row, [-1, -1, 2]);
        }
    }

    #[test]
    fn linking_numbers() {
        let hopf = parse_link_text("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(linking_matrix(&hopf).get(0, 1).abs(), 1);
        let t24 = generate_torus_two_strand(4).unwrap();
        assert_eq!(linking_matrix(&t24).get(0, 1).abs(), 2);
        assert_eq!(determinant(&t24).value, BigInt::from(4));
        let split = parse_link_text("O[1] O[2]").unwrap();
        assert_eq!(linking_matrix(&split).get(0, 1), 0);
        let rev = reverse_component_orientation(&hopf, ComponentId(1)).unwrap();
        assert_eq!(linking_matrix(&rev).get(0, 1), -linking_matrix(&hopf).get(0, 1));
        assert!(linking_matrix(&rev).equivalent(&linking_matrix(&hopf)));
    }

    #[test]
    fn equivalence_respects_permutations() {
        let a = LinkingMatrix { size: 3, entries: vec![0, 1, 2, 1, 0, 0, 2, 0, 0] };
        let b = LinkingMatrix { size: 3, entries: vec![0, 0, -2, 0, 0, 1, -2, 1, 0] };
        assert!(a.equivalent(&b));
        let c = LinkingMatrix { size: 3, entries: vec![0, 1, 1, 1, 0, 0, 1, 0, 0] };
        assert!(!a.equivalent(&c));
    }
}
