//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: Smith normal form
//! with unimodular transforms, kernels of integer matrices modulo `n` and over
//! `Z`, and enumeration of finite solution modules.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default number of vectors a full enumeration may materialize.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Coefficient ring for the dihedral exponents: `Z/n` or `Z` (written ∞).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modulus {
    Finite(u64),
    Infinite,
}

impl Modulus {
    /// `Z/n` for `n >= 2`.
    pub fn finite(n: u64) -> Option<Self> {
        (n >= 2).then_some(Modulus::Finite(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Modulus::Finite(_))
    }

    /// The modulus as an integer, with `Z` mapped to 0 (the ideal it reduces by).
    pub fn as_bigint(&self) -> BigInt {
        match self {
            Modulus::Finite(n) => BigInt::from(*n),
            Modulus::Infinite => BigInt::zero(),
        }
    }

    /// Canonical representative: `[0, n)` for finite moduli, unchanged over `Z`.
    pub fn reduce(&self, k: &BigInt) -> BigInt {
        match self {
            Modulus::Finite(n) => k.mod_floor(&BigInt::from(*n)),
            Modulus::Infinite => k.clone(),
        }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, Modulus::Finite(n) if n % 2 == 1)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Finite(n) => write!(f, "{n}"),
            Modulus::Infinite => f.write_str("inf"),
        }
    }
}

/// An enumeration would have produced more vectors than allowed.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("enumeration needs {needed} items but the cap is {cap}")]
pub struct CapacityError {
    pub needed: String,
    pub cap: u64,
}

impl CapacityError {
    pub fn new(needed: impl fmt::Display, cap: u64) -> Self {
        use alloc::string::ToString;
        CapacityError { needed: needed.to_string(), cap }
    }
}

/// Dense matrix of exact integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major `i64` entries.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, data: entries.iter().map(|&v| BigInt::from(v)).collect() }
    }

    /// Builds a matrix from rows; `cols` is needed so that an empty row list
    /// still has a width.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add_at(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c * row[src]
    fn add_row_multiple(&mut self, target: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * c;
            self.data[target * self.cols + j] += v;
        }
    }

    /// col[target] += c * col[src]
    fn add_col_multiple(&mut self, target: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * c;
            self.data[i * self.cols + target] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -core::mem::take(v);
        }
    }
}

/// Smith normal form `left * A * right = diag(divisors, 0, ...)`.
///
/// `left` and `right` are unimodular; their inverses are kept as well so that
/// the input can be reconstructed exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Positive invariant factors `d_1 | d_2 | ... | d_rank`.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
    shape: (usize, usize),
}

impl SmithForm {
    /// The diagonal matrix `D` with the shape of the input.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.shape.0, self.shape.1);
        for (i, v) in self.divisors.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }

    /// `left_inv * D * right_inv`, which equals the original matrix.
    pub fn reconstruct(&self) -> IntMatrix {
        self.left_inv.mul(&self.diagonal()).mul(&self.right_inv)
    }
}

/// Position of the nonzero entry of smallest absolute value in the trailing
/// block starting at `(k, k)`; ties go to the first in row-major order.
fn smallest_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..a.rows {
        for j in k..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                best = Some((i, j, mag));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Computes the Smith normal form of `m` with smallest-magnitude pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut p = IntMatrix::identity(rows);
    let mut p_inv = IntMatrix::identity(rows);
    let mut q = IntMatrix::identity(cols);
    let mut q_inv = IntMatrix::identity(cols);

    // Row operation E on A: A <- E A, P <- E P, P_inv <- P_inv E^-1.
    // Column operation F on A: A <- A F, Q <- Q F, Q_inv <- F^-1 Q_inv.
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        while let Some((pi, pj)) = smallest_pivot(&a, k) {
            a.swap_rows(k, pi);
            p.swap_rows(k, pi);
            p_inv.swap_cols(k, pi);
            a.swap_cols(k, pj);
            q.swap_cols(k, pj);
            q_inv.swap_rows(k, pj);

            let pivot = a.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..rows {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let c = -(a.get(i, k) / &pivot);
                if !c.is_zero() {
                    a.add_row_multiple(i, k, &c);
                    p.add_row_multiple(i, k, &c);
                    p_inv.add_col_multiple(k, i, &-&c);
                }
                dirty |= !a.get(i, k).is_zero();
            }
            for j in k + 1..cols {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let c = -(a.get(k, j) / &pivot);
                if !c.is_zero() {
                    a.add_col_multiple(j, k, &c);
                    q.add_col_multiple(j, k, &c);
                    q_inv.add_row_multiple(k, j, &-&c);
                }
                dirty |= !a.get(k, j).is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row_multiple(k, i, &one);
                    p.add_row_multiple(k, i, &one);
                    p_inv.add_col_multiple(i, k, &-one);
                }
                None => break,
            }
        }
        if a.get(k, k).is_zero() {
            break;
        }
        if a.get(k, k).is_negative() {
            a.negate_row(k);
            p.negate_row(k);
            // E = E^-1 for a sign flip; P_inv <- P_inv E negates a column.
            for i in 0..rows {
                let v = &mut p_inv.data[i * rows + k];
                *v = -core::mem::take(v);
            }
        }
        rank += 1;
    }

    SmithForm {
        divisors: (0..rank).map(|i| a.get(i, i).clone()).collect(),
        rank,
        left: p,
        left_inv: p_inv,
        right: q,
        right_inv: q_inv,
        shape: (rows, cols),
    }
}

/// Order of a module generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

/// Solutions of a homogeneous integer system, as a direct sum of cyclic
/// pieces: every solution is `sum c_i * generators[i]` for unique
/// `0 <= c_i < orders[i]` (or unique integers `c_i` over `Z`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionModule {
    pub modulus: Modulus,
    pub dim: usize,
    pub generators: Vec<Vec<BigInt>>,
    pub orders: Vec<Order>,
}

impl SolutionModule {
    /// Number of solutions, `None` for an infinite lattice.
    pub fn count(&self) -> Option<BigInt> {
        let mut total = BigInt::one();
        for o in &self.orders {
            match o {
                Order::Finite(k) => total *= k,
                Order::Infinite => return None,
            }
        }
        Some(total)
    }

    /// Reduces `Σ coeffs[i] * generators[i]` into canonical form.
    pub fn combine(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(g) {
                *o += c * v;
            }
        }
        out.iter().map(|v| self.modulus.reduce(v)).collect()
    }

    /// Lists every solution, in odometer order over the generator
    /// coefficients (first generator varies fastest).
    pub fn enumerate(&self, cap: u64) -> Result<Vec<Vec<BigInt>>, CapacityError> {
        let count = match self.count() {
            Some(c) => c,
            None => return Err(CapacityError::new("infinitely many", cap)),
        };
        if count > BigInt::from(cap) {
            return Err(CapacityError::new(count, cap));
        }
        let orders: Vec<u64> = self
            .orders
            .iter()
            .map(|o| match o {
                Order::Finite(k) => k.to_u64().expect("order bounded by cap"),
                Order::Infinite => unreachable!(),
            })
            .collect();
        let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
        let mut current = vec![BigInt::zero(); self.dim];
        let mut coeffs = vec![0u64; orders.len()];
        let n = self.modulus.as_bigint();
        loop {
            out.push(current.clone());
            // Advance the odometer; adding a generator keeps `current` exact,
            // wrapping subtracts order * generator, which is 0 mod n.
            let mut pos = 0;
            loop {
                if pos == orders.len() {
                    return Ok(out);
                }
                coeffs[pos] += 1;
                if coeffs[pos] < orders[pos] {
                    for (c, g) in current.iter_mut().zip(&self.generators[pos]) {
                        *c = (&*c + g).mod_floor(&n);
                    }
                    break;
                }
                coeffs[pos] = 0;
                let back = BigInt::from(orders[pos] - 1);
                for (c, g) in current.iter_mut().zip(&self.generators[pos]) {
                    *c = (&*c - g * &back).mod_floor(&n);
                }
                pos += 1;
            }
        }
    }
}

/// All `x` with `m * x ≡ 0 (mod n)`.
///
/// With `left * m * right = D`, substituting `x = right * y` decouples the
/// system into `d_i * y_i ≡ 0`, so the module splits into cyclic pieces of
/// order `gcd(d_i, n)` plus `cols - rank` free copies of `Z/n`.
pub fn kernel_mod_n(m: &IntMatrix, n: u64) -> SolutionModule {
    assert!(n >= 2, "modulus must be at least 2");
    let snf = smith_normal_form(m);
    kernel_mod_n_from_snf(&snf, m.cols(), n)
}

pub(crate) fn kernel_mod_n_from_snf(snf: &SmithForm, cols: usize, n: u64) -> SolutionModule {
    let modulus = Modulus::Finite(n);
    let nb = BigInt::from(n);
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for i in 0..cols {
        let (scale, order) = if i < snf.rank {
            let g = snf.divisors[i].gcd(&nb);
            (&nb / &g, g)
        } else {
            (BigInt::one(), nb.clone())
        };
        if order.is_one() {
            continue;
        }
        let g: Vec<BigInt> = snf.right.column(i).into_iter().map(|v| (v * &scale).mod_floor(&nb)).collect();
        generators.push(g);
        orders.push(Order::Finite(order));
    }
    SolutionModule { modulus, dim: cols, generators, orders }
}

/// Basis of the integer kernel `{x in Z^cols : m * x = 0}`.
pub fn kernel_integer(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank..m.cols()).map(|i| snf.right.column(i)).collect()
}

/// The integer kernel as a [`SolutionModule`] over `Z`.
pub fn kernel_lattice(m: &IntMatrix) -> SolutionModule {
    let generators = kernel_integer(m);
    SolutionModule {
        modulus: Modulus::Infinite,
        dim: m.cols(),
        orders: vec![Order::Infinite; generators.len()],
        generators,
    }
}

/// Solution count predicted by the invariant factors:
/// `n^(cols - rank) * Π gcd(d_i, n)`.
pub fn solution_count(divisors: &[BigInt], cols: usize, n: u64) -> BigInt {
    let nb = BigInt::from(n);
    let free = cols - divisors.len();
    let mut total = num_traits::pow(nb.clone(), free);
    for d in divisors {
        total *= d.gcd(&nb);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_of_one_by_one() {
        let s = smith_normal_form(&IntMatrix::from_i64(1, 1, &[2]));
        assert_eq!(s.divisors, big(&[2]));
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn snf_of_diag_two_three() {
        let m = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, big(&[1, 6]));
        assert_eq!(s.reconstruct(), m);
    }

    #[test]
    fn snf_of_zero_matrix() {
        let s = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert!(s.divisors.is_empty());
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn snf_of_empty_shapes() {
        let s = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert_eq!(s.rank, 0);
        assert_eq!(s.right, IntMatrix::identity(3));
        let s = smith_normal_form(&IntMatrix::zeros(2, 0));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn snf_of_a_known_four_by_four() {
        let m = IntMatrix::from_i64(4, 4, &[-6, 111, -36, 6, 5, -672, 210, 74, 0, -255, 81, 24, -7, 255, -81, -10]);
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, big(&[1, 3, 21]));
        assert_eq!(s.reconstruct(), m);
        assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal());
    }

    #[test]
    fn trefoil_row_pattern_mod_three() {
        let m = IntMatrix::from_i64(1, 3, &[2, -1, -1]);
        let k = kernel_mod_n(&m, 3);
        assert_eq!(k.count(), Some(BigInt::from(9)));
    }

    #[test]
    fn unit_matrix_has_trivial_kernel() {
        for n in 2..8 {
            let k = kernel_mod_n(&IntMatrix::from_i64(1, 1, &[1]), n);
            assert_eq!(k.count(), Some(BigInt::one()));
            assert_eq!(k.enumerate(10).unwrap(), vec![big(&[0])]);
        }
    }

    #[test]
    fn zero_row_is_free() {
        let k = kernel_mod_n(&IntMatrix::zeros(1, 2), 5);
        assert_eq!(k.count(), Some(BigInt::from(25)));
        assert_eq!(k.enumerate(100).unwrap().len(), 25);
    }

    #[test]
    fn enumeration_respects_cap() {
        let k = kernel_mod_n(&IntMatrix::zeros(1, 3), 5);
        assert!(k.enumerate(124).is_err());
        assert_eq!(k.enumerate(125).unwrap().len(), 125);
    }

    #[test]
    fn integer_kernels() {
        let k = kernel_integer(&IntMatrix::from_i64(1, 2, &[1, -1]));
        assert_eq!(k.len(), 1);
        assert!(k[0] == big(&[1, 1]) || k[0] == big(&[-1, -1]));

        let fox = IntMatrix::from_i64(3, 3, &[2, -1, -1, -1, 2, -1, -1, -1, 2]);
        let k = kernel_integer(&fox);
        assert_eq!(k.len(), 1);
        assert!(k[0] == big(&[1, 1, 1]) || k[0] == big(&[-1, -1, -1]));

        assert!(kernel_integer(&IntMatrix::identity(2)).is_empty());
    }

    #[test]
    fn count_formula_matches_module() {
        let m = IntMatrix::from_i64(2, 3, &[2, 4, 0, 0, 6, 3]);
        let s = smith_normal_form(&m);
        for n in 2..10 {
            let k = kernel_mod_n(&m, n);
            assert_eq!(k.count().unwrap(), solution_count(&s.divisors, 3, n));
        }
    }
}
