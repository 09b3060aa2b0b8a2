//! Brute-force reference: every map from arcs to `D_n`, kept when all
//! crossing relations hold. Deliberately shares no arithmetic with the
//! solver: the group is modelled as permutations of the `2n` flags
//! `(v, σ)` of a regular `n`-gon, with `b: (v,σ) ↦ (v+1,σ)` and
//! `a: (v,σ) ↦ (-v,1-σ)`; element `a^ε b^k` is the composite of those
//! permutations.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{Diagram, Sign};
use crate::dihedral::DihedralElement;
use crate::zlinalg::{CapacityError, Modulus};

struct Table {
    n: usize,
    mul: Vec<usize>,
}

impl Table {
    fn new(n: usize) -> Table {
        let flags = 2 * n;
        let b: Vec<usize> = (0..flags).map(|f| (f / n) * n + (f % n + 1) % n).collect();
        let a: Vec<usize> = (0..flags).map(|f| (1 - f / n) * n + (n - f % n) % n).collect();
        let id: Vec<usize> = (0..flags).collect();
        // perm of a^ε b^k, applying b^k first.
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..flags).map(|f| p[q[f]]).collect() };
        let mut perms = Vec::with_capacity(flags);
        for eps in 0..2 {
            let mut bk = id.clone();
            for _ in 0..n {
                perms.push(if eps == 1 { compose(&a, &bk) } else { bk.clone() });
                bk = compose(&b, &bk);
            }
        }
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
        let mut mul = vec![0; flags * flags];
        for i in 0..flags {
            for j in 0..flags {
                mul[i * flags + j] = index(&compose(&perms[i], &perms[j]));
            }
        }
        Table { n, mul }
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * 2 * self.n + j]
    }

    fn element(&self, i: usize) -> DihedralElement {
        DihedralElement::new(Modulus::Finite(self.n as u64), i >= self.n, (i % self.n) as u64)
    }
}

/// All colorings of `d` by `D_n`, as per-arc element lists in lexicographic
/// order of element indices. Fails if `(2n)^arcs` exceeds `cap`.
pub fn brute_force_colorings(d: &Diagram, n: u64, cap: u64) -> Result<Vec<Vec<DihedralElement>>, CapacityError> {
    assert!(n >= 2, "modulus must be at least 2");
    let arcs = d.arc_count();
    let size = (2 * n as u128).checked_pow(arcs as u32);
    if size.is_none_or(|s| s > cap as u128) {
        return Err(CapacityError::new(alloc::format!("(2*{n})^{arcs}"), cap));
    }
    let table = Table::new(n as usize);
    // Crossings become checkable once their highest arc is assigned.
    let mut ready: Vec<Vec<(usize, usize, usize, Sign)>> = vec![Vec::new(); arcs];
    for ca in d.crossing_arcs() {
        let last = ca.over.0.max(ca.under_in.0).max(ca.under_out.0);
        ready[last].push((ca.over.0, ca.under_in.0, ca.under_out.0, ca.sign));
    }
    let mut out = Vec::new();
    let mut assignment = vec![0usize; arcs];
    search(&table, &ready, &mut assignment, 0, &mut out);
    Ok(out.into_iter().map(|a| a.into_iter().map(|i| table.element(i)).collect()).collect())
}

fn search(
    table: &Table,
    ready: &[Vec<(usize, usize, usize, Sign)>],
    assignment: &mut Vec<usize>,
    arc: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if arc == assignment.len() {
        out.push(assignment.clone());
        return;
    }
    for g in 0..2 * table.n {
        assignment[arc] = g;
        let ok = ready[arc].iter().all(|&(x, y, z, s)| {
            let (x, y, z) = (assignment[x], assignment[y], assignment[z]);
            match s {
                Sign::Positive => table.mul(x, z) == table.mul(y, x),
                Sign::Negative => table.mul(z, x) == table.mul(x, y),
            }
        });
        if ok {
            search(table, ready, assignment, arc + 1, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_link_text;

    #[test]
    fn table_matches_presentation() {
        for n in 2..7 {
            let t = Table::new(n);
            let m = Modulus::Finite(n as u64);
            for i in 0..2 * n {
                for j in 0..2 * n {
                    let want = t.element(i).multiply(&t.element(j)).unwrap();
                    assert_eq!(t.element(t.mul(i, j)), want, "n={n} {i}*{j}");
                }
            }
            assert_eq!(t.element(0), DihedralElement::identity(m));
        }
    }

    #[test]
    fn unknot_takes_every_element() {
        let d = parse_link_text("O[1]").unwrap();
        assert_eq!(brute_force_colorings(&d, 3, 1000).unwrap().len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let d = parse_link_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert!(brute_force_colorings(&d, 10, 100).is_err());
    }
}
