//! Binary-symplectic Pauli vectors and GF(2) matrix arithmetic.
//!
//! A Pauli operator on `n` qubits is stored as the pair `(u, v)` of binary
//! words: `u` carries the Z-part and `v` the X-part, so I=(0,0), X=(0,1),
//! Z=(1,0), Y=(1,1) per position. Products of operators are XORs of the
//! pairs, and commutation is decided by the symplectic pairing
//! `u_a.v_b + v_a.u_b (mod 2)`, which matches the quaternary trace inner
//! product without ever representing field elements symbolically.

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// One Pauli symbol per qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// The (Z-part, X-part) bit pair.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (false, true),
            Pauli::Y => (true, true),
            Pauli::Z => (true, false),
        }
    }

    pub fn from_bits(u: bool, v: bool) -> Self {
        match (u, v) {
            (false, false) => Pauli::I,
            (false, true) => Pauli::X,
            (true, true) => Pauli::Y,
            (true, false) => Pauli::Z,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' => Some(Pauli::I),
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A length-`n` Pauli operator (equivalently a quaternary additive-code
/// vector) in binary-symplectic form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    n: usize,
    u: BitVec,
    v: BitVec,
}

impl PauliVector {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            u: BitVec::zeros(n),
            v: BitVec::zeros(n),
        }
    }

    pub fn new(u: BitVec, v: BitVec) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: u.len(),
                got: v.len(),
            });
        }
        Ok(Self { n: u.len(), u, v })
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut out = Self::identity(paulis.len());
        for (i, &p) in paulis.iter().enumerate() {
            out.set(i, p);
        }
        out
    }

    /// Parses a string over {I, X, Y, Z}; on failure reports the 1-based
    /// column of the offending character.
    pub fn parse(s: &str) -> std::result::Result<Self, usize> {
        let mut paulis = Vec::with_capacity(s.len());
        for (col, c) in s.chars().enumerate() {
            paulis.push(Pauli::from_char(c).ok_or(col + 1)?);
        }
        Ok(Self::from_paulis(&paulis))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize) -> Pauli {
        Pauli::from_bits(self.u.get(i), self.v.get(i))
    }

    pub fn set(&mut self, i: usize, p: Pauli) {
        let (ub, vb) = p.bits();
        self.u.set(i, ub);
        self.v.set(i, vb);
    }

    pub fn z_part(&self) -> &BitVec {
        &self.u
    }

    pub fn x_part(&self) -> &BitVec {
        &self.v
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.u.union_count(&self.v)
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Qubits with a non-identity symbol, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.u.get(i) || self.v.get(i))
            .collect()
    }

    /// Group product, up to phase: XOR of the symplectic pairs.
    pub fn mul_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        self.u.xor_assign(&other.u);
        self.v.xor_assign(&other.v);
    }

    /// The binary form `[u | v]` of length `2n`, used for GF(2) span tests.
    pub fn to_binary(&self) -> BitVec {
        let mut out = BitVec::zeros(2 * self.n);
        for i in self.u.iter_ones() {
            out.set(i, true);
        }
        for i in self.v.iter_ones() {
            out.set(self.n + i, true);
        }
        out
    }

    pub fn from_binary(bits: &BitVec) -> Result<Self> {
        if bits.len() % 2 != 0 {
            return Err(Error::InvalidParameter(
                "binary form must have even length".into(),
            ));
        }
        let n = bits.len() / 2;
        let mut u = BitVec::zeros(n);
        let mut v = BitVec::zeros(n);
        for i in bits.iter_ones() {
            if i < n {
                u.set(i, true);
            } else {
                v.set(i - n, true);
            }
        }
        Ok(Self { n, u, v })
    }
}

impl std::fmt::Debug for PauliVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::fmt::Display for PauliVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", self.get(i).to_char())?;
        }
        Ok(())
    }
}

/// Lexicographic on the binary `(u, v)` form: `u` first, then `v`.
impl Ord for PauliVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.u.cmp(&other.u).then_with(|| self.v.cmp(&other.v))
    }
}

impl PartialOrd for PauliVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Symplectic (trace) inner product: 0 iff the operators commute.
pub fn trace_inner_product(a: &PauliVector, b: &PauliVector) -> Result<u8> {
    if a.n != b.n {
        return Err(Error::LengthMismatch {
            expected: a.n,
            got: b.n,
        });
    }
    Ok(a.u.dot(&b.v) ^ a.v.dot(&b.u))
}

/// A dense GF(2) matrix stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        Ok(Self { rows, cols })
    }

    /// Builds from 0/1 row slices; all rows must share a length.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            out.push(BitVec::from_bools(
                &r.iter().map(|&b| b != 0).collect::<Vec<_>>(),
            ));
        }
        Ok(Self { rows: out, cols })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for (ri, row) in self.rows.iter().enumerate() {
            for ci in row.iter_ones() {
                t.rows[ci].set(ri, true);
            }
        }
        t
    }

    /// `A ⊗ B` over GF(2).
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.num_rows() * other.num_rows(), self.cols * other.cols);
        for (ra, rowa) in self.rows.iter().enumerate() {
            for ca in rowa.iter_ones() {
                for (rb, rowb) in other.rows.iter().enumerate() {
                    for cb in rowb.iter_ones() {
                        out.rows[ra * other.num_rows() + rb]
                            .set(ca * other.cols + cb, true);
                    }
                }
            }
        }
        out
    }

    /// `[A | B]` with matching row counts.
    pub fn hconcat(&self, other: &Self) -> Self {
        assert_eq!(self.num_rows(), other.num_rows());
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.num_rows(), cols);
        for (ri, (ra, rb)) in self.rows.iter().zip(&other.rows).enumerate() {
            for c in ra.iter_ones() {
                out.rows[ri].set(c, true);
            }
            for c in rb.iter_ones() {
                out.rows[ri].set(self.cols + c, true);
            }
        }
        out
    }

    /// Matrix-vector product `M x` over GF(2).
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        RowEchelon::new(self).rank()
    }

    /// A GF(2) basis for `{ x : M x = 0 }`; its size is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        // Eliminate to reduced row-echelon form, then read one basis vector
        // off each free column.
        let mut rows: Vec<BitVec> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (pivot col, row idx)
        let mut echelon: Vec<BitVec> = Vec::new();
        for mut row in rows.drain(..) {
            for &(pc, ri) in &pivots {
                if row.get(pc) {
                    row.xor_assign(&echelon[ri]);
                }
            }
            if let Some(pc) = row.first_one() {
                // clear this column in earlier echelon rows
                for prev in echelon.iter_mut() {
                    if prev.get(pc) {
                        prev.xor_assign(&row);
                    }
                }
                pivots.push((pc, echelon.len()));
                echelon.push(row);
            }
        }
        let pivot_cols: std::collections::HashSet<usize> =
            pivots.iter().map(|&(c, _)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut x = BitVec::zeros(self.cols);
            x.set(free, true);
            for &(pc, ri) in &pivots {
                if echelon[ri].get(free) {
                    x.set(pc, true);
                }
            }
            basis.push(x);
        }
        basis
    }
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in &self.rows {
            writeln!(f, "{:?}", row)?;
        }
        Ok(())
    }
}

/// Immutable row-echelon cache for rank and row-span membership tests.
///
/// Built once per matrix; `reduce` copies its argument and never mutates the
/// cache, so a single instance can serve many parallel workers.
pub struct RowEchelon {
    cols: usize,
    rows: Vec<BitVec>,
    pivot_cols: Vec<usize>,
}

impl RowEchelon {
    pub fn new(m: &BinaryMatrix) -> Self {
        Self::from_row_iter(m.rows().iter().cloned(), m.num_cols())
    }

    pub fn from_row_iter(rows: impl Iterator<Item = BitVec>, cols: usize) -> Self {
        let mut e = Self {
            cols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
        };
        for row in rows {
            e.insert(row);
        }
        e
    }

    /// Folds one more row into the cache.
    pub(crate) fn push(&mut self, row: BitVec) {
        self.insert(row);
    }

    fn insert(&mut self, mut row: BitVec) {
        debug_assert_eq!(row.len(), self.cols);
        for (i, &pc) in self.pivot_cols.iter().enumerate() {
            if row.get(pc) {
                row.xor_assign(&self.rows[i]);
            }
        }
        if let Some(pc) = row.first_one() {
            self.pivot_cols.push(pc);
            self.rows.push(row);
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `x` after elimination against the cached rows.
    pub fn reduce(&self, x: &BitVec) -> BitVec {
        let mut r = x.clone();
        for (i, &pc) in self.pivot_cols.iter().enumerate() {
            if r.get(pc) {
                r.xor_assign(&self.rows[i]);
            }
        }
        r
    }

    pub fn contains(&self, x: &BitVec) -> bool {
        self.reduce(x).is_zero()
    }
}

/// GF(2) row rank.
pub fn rank_gf2(m: &BinaryMatrix) -> usize {
    m.rank()
}

/// True iff `x` is a GF(2) combination of the rows of `m`.
pub fn in_row_span(m: &BinaryMatrix, x: &BitVec) -> Result<bool> {
    if x.len() != m.num_cols() {
        return Err(Error::LengthMismatch {
            expected: m.num_cols(),
            got: x.len(),
        });
    }
    Ok(RowEchelon::new(m).contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(s: &str) -> PauliVector {
        PauliVector::parse(s).unwrap()
    }

    #[test]
    fn tip_anticommuting_singles() {
        // X and Z on the same qubit anticommute
        assert_eq!(trace_inner_product(&pv("XII"), &pv("ZII")).unwrap(), 1);
        // Y and X anticommute
        assert_eq!(trace_inner_product(&pv("Y"), &pv("X")).unwrap(), 1);
        // Y and Z anticommute
        assert_eq!(trace_inner_product(&pv("Y"), &pv("Z")).unwrap(), 1);
    }

    #[test]
    fn tip_self_is_zero() {
        for s in ["XZYI", "YYYY", "IIII", "ZXIZ"] {
            let e = pv(s);
            assert_eq!(trace_inner_product(&e, &e).unwrap(), 0);
        }
    }

    #[test]
    fn tip_length_mismatch_is_error() {
        assert!(trace_inner_product(&pv("XI"), &pv("X")).is_err());
    }

    #[test]
    fn weight_counts_non_identity_positions() {
        assert_eq!(PauliVector::identity(5).weight(), 0);
        // u = 110, v = 011: positions carry Z, Y, X
        let e = PauliVector::new(
            BitVec::from_bools(&[true, true, false]),
            BitVec::from_bools(&[false, true, true]),
        )
        .unwrap();
        assert_eq!(e.weight(), 3);
        assert_eq!(e.to_string(), "ZYX");
        // u = 100, v = 100: a single Y
        let y = PauliVector::new(
            BitVec::from_bools(&[true, false, false]),
            BitVec::from_bools(&[true, false, false]),
        )
        .unwrap();
        assert_eq!(y.weight(), 1);
    }

    #[test]
    fn binary_form_round_trip() {
        let e = pv("XYZI");
        let b = e.to_binary();
        assert_eq!(b.len(), 8);
        assert_eq!(PauliVector::from_binary(&b).unwrap(), e);
    }

    fn circulant_rows(n: usize, first: &[usize]) -> BinaryMatrix {
        let mut m = BinaryMatrix::zeros(n, n);
        for shift in 0..n {
            for &c in first {
                m.set(shift, (c + shift) % n, true);
            }
        }
        m
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_gf2(&BinaryMatrix::identity(3)), 3);
        let two_equal = BinaryMatrix::from_dense(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(rank_gf2(&two_equal), 1);
        // all cyclic shifts of 1110100 over length 7
        let ham = circulant_rows(7, &[0, 1, 2, 4]);
        assert_eq!(rank_gf2(&ham), 3);
    }

    #[test]
    fn kernel_examples() {
        assert!(BinaryMatrix::identity(4).kernel_basis().is_empty());
        let m = BinaryMatrix::from_dense(&[vec![1, 1]]).unwrap();
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], BitVec::from_bools(&[true, true]));
        let z = BinaryMatrix::zeros(2, 3);
        assert_eq!(z.kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_vectors_annihilate_and_are_independent() {
        let m = circulant_rows(7, &[0, 1, 2, 4]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 7 - 3);
        for x in &basis {
            assert!(m.mul_vec(x).unwrap().is_zero());
        }
        let stacked = BinaryMatrix::from_rows(basis.clone(), 7).unwrap();
        assert_eq!(stacked.rank(), basis.len());
    }

    #[test]
    fn row_span_examples() {
        let m = BinaryMatrix::from_dense(&[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert!(in_row_span(&m, m.row(0)).unwrap());
        let mut sum = m.row(0).clone();
        sum.xor_assign(m.row(1));
        assert!(in_row_span(&m, &sum).unwrap());
        let single = BinaryMatrix::from_dense(&[vec![1, 0]]).unwrap();
        assert!(!in_row_span(&single, &BitVec::from_bools(&[false, true])).unwrap());
        assert!(in_row_span(&single, &BitVec::from_bools(&[false, false])).unwrap());
    }

    #[test]
    fn pauli_parse_reports_column() {
        assert_eq!(PauliVector::parse("XXQZ").unwrap_err(), 3);
    }
}
