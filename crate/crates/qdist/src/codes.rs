//! Stabilizer and CSS code models, validation, and code generators.
//!
//! A [`StabilizerCode`] keeps its generator rows exactly as given, including
//! redundant ones: the qubit-connectivity graph and the syndrome map are
//! defined by the rows themselves, while `k` is computed from the GF(2) rank
//! of the binary row matrix. Everything is immutable after construction and
//! safe to share across worker threads.

use crate::algebra::{
    trace_inner_product, BinaryMatrix, Pauli, PauliVector, RowEchelon,
};
use crate::bits::BitVec;
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Column/row weight limits of a parity-check structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SparsityProfile {
    /// Maximum column weight (checks touching one position).
    pub j: usize,
    /// Maximum row weight (positions touched by one check).
    pub l: usize,
}

impl SparsityProfile {
    pub fn new(j: usize, l: usize) -> Self {
        Self { j, l }
    }

    /// Profile of a set of row supports over `n` positions.
    pub fn of_supports(supports: &[Vec<usize>], n: usize) -> Self {
        let mut col = vec![0usize; n];
        let mut l = 0;
        for s in supports {
            l = l.max(s.len());
            for &i in s {
                col[i] += 1;
            }
        }
        Self {
            j: col.into_iter().max().unwrap_or(0),
            l,
        }
    }

    pub fn of_matrix(m: &BinaryMatrix) -> Self {
        let supports: Vec<Vec<usize>> =
            m.rows().iter().map(|r| r.iter_ones().collect()).collect();
        Self::of_supports(&supports, m.num_cols())
    }
}

/// A quantum stabilizer code given by generator rows (possibly redundant).
#[derive(Clone)]
pub struct StabilizerCode {
    n: usize,
    rows: Vec<PauliVector>,
    binary_rows: BinaryMatrix,
    echelon: std::sync::Arc<RowEchelon>,
    r_eff: usize,
}

impl std::fmt::Debug for StabilizerCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StabilizerCode[[{}, {}]] {{ ", self.n, self.k())?;
        for row in &self.rows {
            write!(f, "{row} ")?;
        }
        write!(f, "}}")
    }
}

impl StabilizerCode {
    pub fn new(n: usize, rows: Vec<PauliVector>) -> Result<Self> {
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
        }
        let binary_rows = BinaryMatrix::from_rows(
            rows.iter().map(PauliVector::to_binary).collect(),
            2 * n,
        )?;
        let echelon = std::sync::Arc::new(RowEchelon::new(&binary_rows));
        let r_eff = echelon.rank();
        Ok(Self {
            n,
            rows,
            binary_rows,
            echelon,
            r_eff,
        })
    }

    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let parsed = rows
            .iter()
            .map(|s| {
                PauliVector::parse(s).map_err(|col| Error::Parse {
                    line: 0,
                    col,
                    msg: format!("invalid Pauli character in {s:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, parsed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliVector] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// GF(2) rank of the binary row matrix.
    pub fn r_eff(&self) -> usize {
        self.r_eff
    }

    /// Number of logical qubits, `n - r_eff`.
    pub fn k(&self) -> usize {
        self.n - self.r_eff
    }

    pub fn binary_rows(&self) -> &BinaryMatrix {
        &self.binary_rows
    }


    /// Supports of the generator rows (non-identity positions).
    pub fn row_supports(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.support()).collect()
    }

    pub fn sparsity_profile(&self) -> SparsityProfile {
        SparsityProfile::of_supports(&self.row_supports(), self.n)
    }

    /// Checks pairwise commutativity and reports rank, `k`, and sparsity.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for i in 0..self.rows.len() {
            for j in (i + 1)..self.rows.len() {
                if trace_inner_product(&self.rows[i], &self.rows[j]).unwrap() == 1 {
                    violations.push((i, j));
                }
            }
        }
        ValidationReport {
            n: self.n,
            num_rows: self.rows.len(),
            violations,
            r_eff: self.r_eff,
            k: self.k(),
            profile: self.sparsity_profile(),
        }
    }

    /// Errors out unless every generator pair commutes.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if let Some(&first) = report.violations.first() {
            return Err(Error::InvalidCode {
                count: report.violations.len(),
                first,
            });
        }
        Ok(())
    }

    /// Syndrome of `e`: bit `i` is the trace inner product with row `i`.
    pub fn syndrome(&self, e: &PauliVector) -> Result<BitVec> {
        if e.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: e.len(),
            });
        }
        let mut s = BitVec::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if trace_inner_product(row, e).unwrap() == 1 {
                s.set(i, true);
            }
        }
        Ok(s)
    }

    /// True iff `e` commutes with every generator yet lies outside the
    /// degeneracy group (the GF(2) row span of the parity-check rows).
    pub fn is_logical(&self, e: &PauliVector) -> Result<bool> {
        if e.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: e.len(),
            });
        }
        if !self.syndrome(e)?.is_zero() {
            return Ok(false);
        }
        Ok(!self.echelon.contains(&e.to_binary()))
    }

    /// Membership in the degeneracy group.
    pub fn in_degeneracy_group(&self, e: &PauliVector) -> bool {
        self.echelon.contains(&e.to_binary())
    }

    /// A GF(2) basis of the symplectic kernel `{ e : e commutes with all
    /// rows }`; its dimension is `n + k`.
    pub fn normalizer_basis(&self) -> NormalizerBasis {
        // e = (u_e, v_e) commutes with row (u_r, v_r) iff
        // u_r . v_e + v_r . u_e = 0, i.e. the binary form [u_e | v_e] is in
        // the kernel of the row matrix with halves swapped.
        let swapped = BinaryMatrix::from_rows(
            self.rows
                .iter()
                .map(|r| {
                    let mut b = BitVec::zeros(2 * self.n);
                    for i in r.x_part().iter_ones() {
                        b.set(i, true);
                    }
                    for i in r.z_part().iter_ones() {
                        b.set(self.n + i, true);
                    }
                    b
                })
                .collect(),
            2 * self.n,
        )
        .expect("rows share length by construction");
        let gens = swapped
            .kernel_basis()
            .into_iter()
            .map(|b| PauliVector::from_binary(&b).expect("kernel vectors have even length"))
            .collect();
        NormalizerBasis { gens }
    }
}

/// Outcome of [`StabilizerCode::validate`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub n: usize,
    pub num_rows: usize,
    /// Row index pairs with a non-zero trace inner product.
    pub violations: Vec<(usize, usize)>,
    pub r_eff: usize,
    pub k: usize,
    pub profile: SparsityProfile,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Generators of the symplectic kernel of a code's row matrix.
#[derive(Debug, Clone)]
pub struct NormalizerBasis {
    gens: Vec<PauliVector>,
}

impl NormalizerBasis {
    pub fn gens(&self) -> &[PauliVector] {
        &self.gens
    }

    pub fn dimension(&self) -> usize {
        self.gens.len()
    }
}

/// A CSS code held as its two binary check matrices.
#[derive(Clone)]
pub struct CssCode {
    gx: BinaryMatrix,
    gz: BinaryMatrix,
}

impl CssCode {
    /// Validates `G_x G_z^T = 0` and matching column counts.
    pub fn new(gx: BinaryMatrix, gz: BinaryMatrix) -> Result<Self> {
        if gx.num_cols() != gz.num_cols() {
            return Err(Error::LengthMismatch {
                expected: gx.num_cols(),
                got: gz.num_cols(),
            });
        }
        for (i, rx) in gx.rows().iter().enumerate() {
            for (j, rz) in gz.rows().iter().enumerate() {
                if rx.dot(rz) == 1 {
                    return Err(Error::CssOrthogonality { row_x: i, row_z: j });
                }
            }
        }
        Ok(Self { gx, gz })
    }

    pub fn n(&self) -> usize {
        self.gx.num_cols()
    }

    pub fn gx(&self) -> &BinaryMatrix {
        &self.gx
    }

    pub fn gz(&self) -> &BinaryMatrix {
        &self.gz
    }

    pub fn k(&self) -> usize {
        self.n() - self.gx.rank() - self.gz.rank()
    }

    /// Embeds into the generic model: X-type rows from `G_x` first, then
    /// Z-type rows from `G_z`.
    pub fn to_stabilizer(&self) -> StabilizerCode {
        let n = self.n();
        let mut rows = Vec::with_capacity(self.gx.num_rows() + self.gz.num_rows());
        for r in self.gx.rows() {
            rows.push(PauliVector::new(BitVec::zeros(n), r.clone()).unwrap());
        }
        for r in self.gz.rows() {
            rows.push(PauliVector::new(r.clone(), BitVec::zeros(n)).unwrap());
        }
        StabilizerCode::new(n, rows).expect("row lengths match by construction")
    }
}

/// Builds the generic stabilizer model of a CSS pair, validating
/// orthogonality first.
pub fn from_css(css: &CssCode) -> StabilizerCode {
    css.to_stabilizer()
}

/// The `n x n` circulant whose row `i` is the check polynomial `h` shifted
/// cyclically by `i`. `h` holds the coefficient bits of `1, x, x^2, ...`.
pub fn circulant_check(n: usize, h: &[bool]) -> Result<BinaryMatrix> {
    if h.iter().all(|&b| !b) {
        return Err(Error::ZeroPolynomial);
    }
    if h.len() > n {
        return Err(Error::InvalidParameter(format!(
            "polynomial degree {} too large for circulant size {n}",
            h.len() - 1
        )));
    }
    let mut m = BinaryMatrix::zeros(n, n);
    for shift in 0..n {
        for (c, &b) in h.iter().enumerate() {
            if b {
                m.set(shift, (c + shift) % n, true);
            }
        }
    }
    Ok(m)
}

/// Parses a polynomial bit string like `"1101"` (coefficient of `x^i` at
/// index `i`).
pub fn parse_poly(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse {
                line: 0,
                col: i + 1,
                msg: format!("invalid polynomial character {c:?}"),
            }),
        })
        .collect()
}

/// Hypergraph product of two binary check matrices:
/// `G_x = [H1 (x) I | I (x) H2^T]`, `G_z = [I (x) H2 | H1^T (x) I]` on
/// `n = n1 n2 + m1 m2` positions. Orthogonality holds by construction and is
/// re-verified.
pub fn hypergraph_product(h1: &BinaryMatrix, h2: &BinaryMatrix) -> CssCode {
    let (m1, n1) = (h1.num_rows(), h1.num_cols());
    let (m2, n2) = (h2.num_rows(), h2.num_cols());
    let gx = h1
        .kron(&BinaryMatrix::identity(n2))
        .hconcat(&BinaryMatrix::identity(m1).kron(&h2.transpose()));
    let gz = BinaryMatrix::identity(n1)
        .kron(h2)
        .hconcat(&h1.transpose().kron(&BinaryMatrix::identity(m2)));
    debug_assert_eq!(gx.num_cols(), n1 * n2 + m1 * m2);
    CssCode::new(gx, gz).expect("hypergraph product is CSS-orthogonal")
}

/// The `[[2L^2, 2, L]]` toric code: hypergraph product of the full circulant
/// of the length-`L` repetition check `1 + x` with itself.
pub fn toric_code(l: usize) -> Result<CssCode> {
    if l < 2 {
        return Err(Error::InvalidParameter("toric code needs L >= 2".into()));
    }
    let h = circulant_check(l, &[true, true])?;
    Ok(hypergraph_product(&h, &h))
}

/// The Steane `[[7,1,3]]` code: `G_x = G_z =` full circulant of
/// `1 + x + x^2 + x^4` over length 7.
pub fn steane_code() -> CssCode {
    let h = circulant_check(7, &[true, true, true, false, true]).unwrap();
    CssCode::new(h.clone(), h).expect("self-orthogonal circulant")
}

/// The five-qubit `[[5,1,3]]` code: cyclic shifts of XZZXI.
pub fn five_qubit_code() -> StabilizerCode {
    StabilizerCode::from_strings(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap()
}

/// Deterministically generates a valid stabilizer code with `r` independent
/// commuting rows honoring the sparsity profile.
///
/// Candidates are drawn sparse, then completed against the rows accepted so
/// far with a symplectic Gram-Schmidt step (so commutativity holds by
/// construction); candidates whose completed form breaks the profile or the
/// rank are rejected and redrawn. Fails explicitly once the attempt budget
/// is spent.
pub fn random_stabilizer_code(
    n: usize,
    r: usize,
    profile: SparsityProfile,
    seed: u64,
) -> Result<StabilizerCode> {
    if r > n {
        return Err(Error::InvalidParameter(format!(
            "cannot place {r} independent rows on {n} qubits"
        )));
    }
    if r > 0 && (profile.j == 0 || profile.l == 0) {
        return Err(Error::InvalidParameter(
            "sparsity profile admits no nonzero rows".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_attempts: u64 = 20_000u64.saturating_mul(r.max(1) as u64);
    let mut attempts: u64 = 0;

    let mut accepted: Vec<PauliVector> = Vec::with_capacity(r);
    let mut partners: Vec<PauliVector> = Vec::with_capacity(r);
    let mut echelon = RowEchelon::from_row_iter(std::iter::empty::<BitVec>(), 2 * n);
    let mut col_use = vec![0usize; n];

    // reduce `e` to commute with every accepted row and partner
    let complete = |e: &PauliVector, accepted: &[PauliVector], partners: &[PauliVector]| {
        let mut out = e.clone();
        for (s, p) in accepted.iter().zip(partners) {
            if trace_inner_product(&out, s).unwrap() == 1 {
                out.mul_assign(p);
            }
            if trace_inner_product(&out, p).unwrap() == 1 {
                out.mul_assign(s);
            }
        }
        out
    };

    while accepted.len() < r {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::GenerationBudget {
                attempts,
                n,
                rows: r,
                j: profile.j,
                l: profile.l,
            });
        }
        // sparse candidate within the remaining column budget, preferring
        // under-covered columns so single-qubit logicals stay rare
        let open: Vec<usize> = (0..n).filter(|&i| col_use[i] < profile.j).collect();
        if open.is_empty() {
            return Err(Error::GenerationBudget {
                attempts,
                n,
                rows: r,
                j: profile.j,
                l: profile.l,
            });
        }
        let w_lo = (profile.l / 2).max(1).min(open.len());
        let w = rng.gen_range(w_lo..=profile.l.min(open.len()));
        let mut positions = open.clone();
        positions.shuffle(&mut rng);
        positions.sort_by_key(|&i| col_use[i]);
        positions.truncate(w);
        let mut cand = PauliVector::identity(n);
        for &p in &positions {
            cand.set(
                p,
                *[Pauli::X, Pauli::Y, Pauli::Z].choose(&mut rng).unwrap(),
            );
        }

        let row = complete(&cand, &accepted, &partners);
        if row.is_identity() {
            continue;
        }
        // profile check on the completed row
        if row.weight() > profile.l {
            continue;
        }
        let support = row.support();
        if support.iter().any(|&i| col_use[i] + 1 > profile.j) {
            continue;
        }
        // independence from the accepted set
        if echelon.contains(&row.to_binary()) {
            continue;
        }

        // partner: anticommutes with `row`, commutes with everything else
        let anchor = support[0];
        let mut d = PauliVector::identity(n);
        d.set(
            anchor,
            match row.get(anchor) {
                Pauli::X => Pauli::Z,
                Pauli::Z | Pauli::Y => Pauli::X,
                Pauli::I => unreachable!("anchor is in the support"),
            },
        );
        let partner = complete(&d, &accepted, &partners);
        debug_assert_eq!(trace_inner_product(&partner, &row).unwrap(), 1);

        for &i in &support {
            col_use[i] += 1;
        }
        echelon.push(row.to_binary());
        accepted.push(row);
        partners.push(partner);
    }

    let code = StabilizerCode::new(n, accepted)?;
    code.ensure_valid()?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_commuting_pair() {
        let code = StabilizerCode::from_strings(&["XX", "ZZ"]).unwrap();
        let report = code.validate();
        assert!(report.is_valid());
        assert_eq!(report.r_eff, 2);
        assert_eq!(report.k, 0);
    }

    #[test]
    fn validate_flags_anticommuting_pair() {
        let code = StabilizerCode::from_strings(&["XI", "ZI"]).unwrap();
        let report = code.validate();
        assert_eq!(report.violations, vec![(0, 1)]);
        assert!(code.ensure_valid().is_err());
    }

    #[test]
    fn steane_is_valid_distance_code() {
        let code = from_css(&steane_code());
        let report = code.validate();
        assert!(report.is_valid());
        assert_eq!(code.n(), 7);
        assert_eq!(code.r_eff(), 6);
        assert_eq!(code.k(), 1);
    }

    #[test]
    fn syndrome_of_zero_and_rows() {
        let code = from_css(&steane_code());
        assert!(code
            .syndrome(&PauliVector::identity(7))
            .unwrap()
            .is_zero());
        for row in code.rows() {
            assert!(code.syndrome(row).unwrap().is_zero());
        }
        let x0 = PauliVector::parse("XIIIIII").unwrap();
        assert!(!code.syndrome(&x0).unwrap().is_zero());
    }

    #[test]
    fn logicals_exclude_degeneracy_group_and_detected_errors() {
        let code = from_css(&steane_code());
        assert!(!code.is_logical(code.rows().first().unwrap()).unwrap());
        let x0 = PauliVector::parse("XIIIIII").unwrap();
        assert!(!code.is_logical(&x0).unwrap());
        // transversal X is a weight-7 logical of the Steane code
        let all_x = PauliVector::parse("XXXXXXX").unwrap();
        assert!(code.is_logical(&all_x).unwrap());
    }

    #[test]
    fn normalizer_dimension_is_n_plus_k() {
        let z = StabilizerCode::from_strings(&["Z"]).unwrap();
        assert_eq!(z.normalizer_basis().dimension(), 1);
        let free = StabilizerCode::new(1, vec![]).unwrap();
        assert_eq!(free.normalizer_basis().dimension(), 2);
        let steane = from_css(&steane_code());
        assert_eq!(steane.normalizer_basis().dimension(), 8);
        for g in steane.normalizer_basis().gens() {
            assert!(steane.syndrome(g).unwrap().is_zero());
        }
    }

    #[test]
    fn from_css_basics() {
        let gx = BinaryMatrix::from_dense(&[vec![1, 1]]).unwrap();
        let gz = BinaryMatrix::zeros(0, 2);
        let code = from_css(&CssCode::new(gx, gz).unwrap());
        assert_eq!(code.rows().len(), 1);
        assert_eq!(code.rows()[0].to_string(), "XX");
        assert_eq!(code.k(), 1);

        let bad = CssCode::new(
            BinaryMatrix::from_dense(&[vec![1, 0]]).unwrap(),
            BinaryMatrix::from_dense(&[vec![1, 0]]).unwrap(),
        );
        assert!(matches!(bad, Err(Error::CssOrthogonality { .. })));
    }

    #[test]
    fn circulant_examples() {
        let m = circulant_check(3, &[true, true]).unwrap();
        let rows: Vec<String> = m.rows().iter().map(|r| format!("{r:?}")).collect();
        assert_eq!(rows, vec!["110", "011", "101"]);
        let m5 = circulant_check(5, &[true, true, true]).unwrap();
        for r in m5.rows() {
            assert_eq!(r.count_ones(), 3);
        }
        assert!(matches!(
            circulant_check(4, &[false, false]),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn toric_l2_parameters() {
        let css = toric_code(2).unwrap();
        assert_eq!(css.n(), 8);
        assert_eq!(css.k(), 2);
        let code = from_css(&css);
        assert!(code.validate().is_valid());
        assert_eq!(code.k(), 2);
    }

    #[test]
    fn hgp_of_weight_wh_circulants_is_regular() {
        for wh in [2usize, 3] {
            let poly: Vec<bool> = (0..wh).map(|_| true).collect();
            let h = circulant_check(wh + 2, &poly).unwrap();
            let css = hypergraph_product(&h, &h);
            let px = SparsityProfile::of_matrix(css.gx());
            let pz = SparsityProfile::of_matrix(css.gz());
            for p in [px, pz] {
                assert_eq!(p.l, 2 * wh);
                assert_eq!(p.j, wh);
            }
        }
    }

    #[test]
    fn hgp_18_2_code() {
        let h = circulant_check(3, &[true, true]).unwrap();
        let css = hypergraph_product(&h, &h);
        assert_eq!(css.n(), 18);
        assert_eq!(css.k(), 2);
    }

    #[test]
    fn random_code_empty_and_deterministic() {
        let empty = random_stabilizer_code(4, 0, SparsityProfile::new(2, 3), 9).unwrap();
        assert_eq!(empty.k(), 4);
        let a = random_stabilizer_code(10, 8, SparsityProfile::new(3, 4), 1).unwrap();
        let b = random_stabilizer_code(10, 8, SparsityProfile::new(3, 4), 1).unwrap();
        let to_strings =
            |c: &StabilizerCode| c.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>();
        assert_eq!(to_strings(&a), to_strings(&b));
    }

    #[test]
    fn random_code_honors_profile_and_is_valid() {
        let profile = SparsityProfile::new(3, 4);
        let code = random_stabilizer_code(10, 8, profile, 1).unwrap();
        let report = code.validate();
        assert!(report.is_valid());
        assert_eq!(report.r_eff, 8);
        assert_eq!(report.k, 2);
        assert!(report.profile.j <= profile.j);
        assert!(report.profile.l <= profile.l);
    }
}
