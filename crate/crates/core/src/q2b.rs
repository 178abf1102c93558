//! Conversion of qudit CSS codes to qubit CSS codes through basis expansions,
//! and the qubit-syndrome decoding pipeline for QRS codes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bases::{find_self_dual, FieldBasis};
use crate::css::{dual_space, CssCode};
use crate::error::{GqError, Result};
use crate::gf2e::Field;
use crate::grs::QrsCode;
use crate::io::CodeJson;
use crate::linalg::FqMatrix;

/// The same self-dual basis on every qudit.
pub fn default_assignment(field: &Field, n: usize) -> Result<Vec<FieldBasis>> {
    Ok(vec![find_self_dual(field)?; n])
}

fn check_len(bases: &[FieldBasis], len: usize) -> Result<&Field> {
    if bases.len() != len {
        return Err(GqError::DimensionMismatch(format!("{} bases for a vector of length {len}", bases.len())));
    }
    bases
        .first()
        .map(FieldBasis::field)
        .ok_or_else(|| GqError::DimensionMismatch("empty basis assignment".into()))
}

/// `D_𝓑(v) = D_{B_1}(v_1) ⊕ … ⊕ D_{B_n}(v_n)`.
pub fn expand_vector(bases: &[FieldBasis], v: &[u32]) -> Result<Vec<u32>> {
    check_len(bases, v.len())?;
    let mut out = Vec::new();
    for (b, &x) in bases.iter().zip(v) {
        out.extend(b.decompose(x)?);
    }
    Ok(out)
}

/// `D_{𝓑*}(w)`.
pub fn expand_dual(bases: &[FieldBasis], w: &[u32]) -> Result<Vec<u32>> {
    let duals: Vec<FieldBasis> = bases.iter().map(FieldBasis::dual).collect();
    expand_vector(&duals, w)
}

/// Inverse of [`expand_vector`].
pub fn collapse_vector(bases: &[FieldBasis], bits: &[u32]) -> Result<Vec<u32>> {
    let s = check_len(bases, bases.len())?.s() as usize;
    if bits.len() != s * bases.len() {
        return Err(GqError::DimensionMismatch(format!("{} bits for {} qudits", bits.len(), bases.len())));
    }
    bases.iter().zip(bits.chunks(s)).map(|(b, c)| b.recompose(c)).collect()
}

/// Inverse of [`expand_dual`].
pub fn collapse_dual(bases: &[FieldBasis], bits: &[u32]) -> Result<Vec<u32>> {
    let duals: Vec<FieldBasis> = bases.iter().map(FieldBasis::dual).collect();
    collapse_vector(&duals, bits)
}

/// Per-check bases `B^{(X,j)}`, `B^{(Z,j)}` used to expand each qudit check
/// into `s` qubit checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementPlan {
    pub x_bases: Vec<FieldBasis>,
    pub z_bases: Vec<FieldBasis>,
}

impl MeasurementPlan {
    pub fn uniform(basis: &FieldBasis, k_x: usize, k_z: usize) -> MeasurementPlan {
        MeasurementPlan { x_bases: vec![basis.clone(); k_x], z_bases: vec![basis.clone(); k_z] }
    }

    /// The self-dual basis for every check of `code`.
    pub fn default_for(code: &CssCode) -> Result<MeasurementPlan> {
        let b = find_self_dual(code.field())?;
        Ok(MeasurementPlan::uniform(&b, code.gx().rows(), code.gz().rows()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitCssCode {
    pub hx: FqMatrix,
    pub hz: FqMatrix,
}

impl QubitCssCode {
    pub fn ns(&self) -> usize {
        self.hx.cols()
    }

    pub fn k(&self) -> usize {
        self.ns() - self.hx.rank() - self.hz.rank()
    }

    pub fn orthogonal(&self) -> bool {
        self.hx.mul(&self.hz.transpose()).map(|m| m.is_zero()).unwrap_or(false)
    }
}

fn scaled(field: &Field, b: u32, v: &[u32]) -> Vec<u32> {
    v.iter().map(|&x| field.mul(b, x)).collect()
}

/// Method 2 with the default measurement plan.
pub fn convert_code(code: &CssCode, bases: &[FieldBasis]) -> Result<QubitCssCode> {
    convert_code_with_plan(code, bases, &MeasurementPlan::default_for(code)?)
}

/// Qubit generators `D_𝓑(b·v)` for `b ∈ B^{(X,j)}` and `D_{𝓑*}(b·w)` for
/// `b ∈ B^{(Z,j)}`.
pub fn convert_code_with_plan(code: &CssCode, bases: &[FieldBasis], plan: &MeasurementPlan) -> Result<QubitCssCode> {
    let f = code.field();
    check_len(bases, code.n())?;
    if plan.x_bases.len() != code.gx().rows() || plan.z_bases.len() != code.gz().rows() {
        return Err(GqError::DimensionMismatch("measurement plan does not match the check count".into()));
    }
    let bin = Field::binary();
    let ns = code.n() * f.s() as usize;
    let mut hx = FqMatrix::zeros(&bin, 0, ns);
    for (j, b) in plan.x_bases.iter().enumerate() {
        for &e in b.elements() {
            hx.push_row(&expand_vector(bases, &scaled(f, e, code.gx().row(j)))?)?;
        }
    }
    let mut hz = FqMatrix::zeros(&bin, 0, ns);
    for (j, b) in plan.z_bases.iter().enumerate() {
        for &e in b.elements() {
            hz.push_row(&expand_dual(bases, &scaled(f, e, code.gz().row(j)))?)?;
        }
    }
    Ok(QubitCssCode { hx, hz })
}

/// F_2-span of the expansions of an F_q row space.
fn expand_space(m: &FqMatrix, bases: &[FieldBasis], dual: bool) -> Result<FqMatrix> {
    let f = m.field();
    let poly = FieldBasis::polynomial(f);
    let ns = m.cols() * f.s() as usize;
    let mut out = FqMatrix::zeros(&Field::binary(), 0, ns);
    for r in 0..m.rows() {
        for &e in poly.elements() {
            let v = scaled(f, e, m.row(r));
            let bits = if dual { expand_dual(bases, &v)? } else { expand_vector(bases, &v)? };
            out.push_row(&bits)?;
        }
    }
    Ok(out)
}

/// `(D_{𝓑*}(L_X^⊥), D_𝓑(L_Z^⊥))`: the binary spaces carrying Z and X logicals.
pub fn convert_logicals(code: &CssCode, bases: &[FieldBasis]) -> Result<(FqMatrix, FqMatrix)> {
    check_len(bases, code.n())?;
    let z = expand_space(&dual_space(code.gx()), bases, true)?;
    let x = expand_space(&dual_space(code.gz()), bases, false)?;
    Ok((z, x))
}

/// The unique η with `tr(b_i η) = bits_i`.
pub fn reconstruct_syndrome(bits: &[u32], basis: &FieldBasis) -> Result<u32> {
    basis.recover_from_traces(bits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ErrorType {
    X,
    Z,
}

/// Qubit syndrome of a qubit error: `hx·e` for Z errors, `hz·e` for X errors.
pub fn qubit_syndrome(code: &QubitCssCode, error: &[u32], kind: ErrorType) -> Result<Vec<u32>> {
    match kind {
        ErrorType::Z => code.hx.mul_vec(error),
        ErrorType::X => code.hz.mul_vec(error),
    }
}

/// Qubit error → qubit syndrome → F_q syndrome → GRS decode → qubit error.
pub fn end_to_end_decode(
    qrs: &QrsCode,
    bases: &[FieldBasis],
    plan: &MeasurementPlan,
    error: &[u32],
    kind: ErrorType,
) -> Result<Vec<u32>> {
    let f = qrs.field();
    let s = f.s() as usize;
    let qubits = convert_code_with_plan(&qrs.css, bases, plan)?;
    if error.len() != qubits.ns() {
        return Err(GqError::DimensionMismatch(format!("error of length {} on {} qubits", error.len(), qubits.ns())));
    }
    let bits = qubit_syndrome(&qubits, error, kind)?;
    let (checks, check_bases, grs) = match kind {
        ErrorType::Z => (qrs.css.gx(), &plan.x_bases, qrs.z_error_code()),
        ErrorType::X => (qrs.css.gz(), &plan.z_bases, qrs.x_error_code()),
    };
    let sigma: Vec<u32> = check_bases
        .iter()
        .zip(bits.chunks(s))
        .map(|(b, c)| reconstruct_syndrome(c, b))
        .collect::<Result<_>>()?;
    let w0 = checks
        .solve(&sigma)?
        .ok_or_else(|| GqError::Internal("qudit syndrome is not in the check image".into()))?;
    let (_, w) = grs.decode(&w0)?;
    match kind {
        ErrorType::Z => expand_dual(bases, &w),
        ErrorType::X => expand_vector(bases, &w),
    }
}

/// MacKay alist: `N M`, max degrees, column and row degrees, then 1-based
/// row indices per column and column indices per row.
pub fn to_alist(h: &FqMatrix) -> String {
    let (m, n) = (h.rows(), h.cols());
    let cols: Vec<Vec<usize>> = (0..n).map(|c| (0..m).filter(|&r| h.get(r, c) != 0).map(|r| r + 1).collect()).collect();
    let rows: Vec<Vec<usize>> = (0..m).map(|r| (0..n).filter(|&c| h.get(r, c) != 0).map(|c| c + 1).collect()).collect();
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let degs = |v: &[Vec<usize>]| v.iter().map(Vec::len).collect::<Vec<_>>();
    let mut out = String::new();
    let _ = writeln!(out, "{n} {m}");
    let _ = writeln!(
        out,
        "{} {}",
        degs(&cols).into_iter().max().unwrap_or(0),
        degs(&rows).into_iter().max().unwrap_or(0)
    );
    let _ = writeln!(out, "{}", join(&degs(&cols)));
    let _ = writeln!(out, "{}", join(&degs(&rows)));
    for c in &cols {
        let _ = writeln!(out, "{}", join(c));
    }
    for r in &rows {
        let _ = writeln!(out, "{}", join(r));
    }
    out
}

/// Reads the output of [`to_alist`] back into a binary matrix.
pub fn from_alist(text: &str) -> Result<FqMatrix> {
    let bad = |m: &str| GqError::Parse(format!("alist: {m}"));
    let mut lines = text.lines();
    let nums = |line: Option<&str>| -> Result<Vec<usize>> {
        line.ok_or_else(|| bad("truncated"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("non-integer entry")))
            .collect()
    };
    let head = nums(lines.next())?;
    let [n, m] = head[..] else { return Err(bad("header must be `N M`")) };
    nums(lines.next())?;
    nums(lines.next())?;
    nums(lines.next())?;
    let mut h = FqMatrix::zeros(&Field::binary(), m, n);
    for c in 0..n {
        for r in nums(lines.next())? {
            if r == 0 || r > m {
                return Err(bad("row index out of range"));
            }
            h.set(r - 1, c, 1);
        }
    }
    Ok(h)
}

/// One line per row, entries separated by spaces.
pub fn to_dense_text(h: &FqMatrix) -> String {
    let mut out = String::new();
    for r in 0..h.rows() {
        let line: Vec<String> = h.row(r).iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct QubitBundle {
    pub qudit_code: CodeJson,
    pub basis_assignment: Vec<Vec<u32>>,
    pub hx: Vec<Vec<u32>>,
    pub hz: Vec<Vec<u32>>,
}

impl QubitBundle {
    pub fn new(qudit_code: CodeJson, bases: &[FieldBasis], qubits: &QubitCssCode) -> QubitBundle {
        QubitBundle {
            qudit_code,
            basis_assignment: bases.iter().map(|b| b.elements().to_vec()).collect(),
            hx: qubits.hx.to_rows(),
            hz: qubits.hz.to_rows(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{projector, DenseOperator};
    use crate::pauli::PauliWord;
    use crate::gates::pi_map;
    use crate::grs::QrsCode;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trace_pairing_transfers() {
        let f = Field::with_degree(2).unwrap();
        let bases = default_assignment(&f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let v: Vec<u32> = (0..2).map(|_| rng.random_range(0..4)).collect();
            let w: Vec<u32> = (0..2).map(|_| rng.random_range(0..4)).collect();
            let a = expand_vector(&bases, &v).unwrap();
            let b = expand_dual(&bases, &w).unwrap();
            let dot = a.iter().zip(&b).fold(0, |acc, (x, y)| acc ^ (x & y));
            assert_eq!(dot, f.trace(f.dot(&v, &w)));
        }
        let mixed = [FieldBasis::polynomial(&f), find_self_dual(&f).unwrap()];
        assert_eq!(collapse_vector(&mixed, &expand_vector(&mixed, &[3, 1]).unwrap()).unwrap(), vec![3, 1]);
        assert_eq!(collapse_dual(&mixed, &expand_dual(&mixed, &[2, 3]).unwrap()).unwrap(), vec![2, 3]);
    }

    #[test]
    fn single_x_check_becomes_s_single_qubit_checks() {
        let f = Field::with_degree(3).unwrap();
        let code = CssCode::from_rows(&f, 1, &[vec![1]], &[]).unwrap();
        let bases = default_assignment(&f, 1).unwrap();
        let q = convert_code(&code, &bases).unwrap();
        assert_eq!(q.hx.rows(), 3);
        assert_eq!(q.hx.rank(), 3);
    }

    #[test]
    fn xx_check_expands_pairwise() {
        let f = Field::with_degree(2).unwrap();
        let code = CssCode::from_rows(&f, 2, &[vec![1, 1]], &[]).unwrap();
        let bases = default_assignment(&f, 2).unwrap();
        let q = convert_code(&code, &bases).unwrap();
        for r in 0..q.hx.rows() {
            let row = q.hx.row(r);
            assert_eq!(row[..2], row[2..]);
        }
    }

    #[test]
    fn trivial_code_converts_to_trivial() {
        let f = Field::with_degree(2).unwrap();
        let code = CssCode::from_rows(&f, 3, &[], &[]).unwrap();
        let q = convert_code(&code, &default_assignment(&f, 3).unwrap()).unwrap();
        assert_eq!(q.k(), 6);
    }

    #[test]
    fn reconstruct_all_elements() {
        let f = Field::with_degree(2).unwrap();
        for b in [FieldBasis::polynomial(&f), find_self_dual(&f).unwrap()] {
            assert_eq!(reconstruct_syndrome(&[0, 0], &b).unwrap(), 0);
            for eta in f.elements() {
                let bits: Vec<u32> = b.elements().iter().map(|&e| f.linear_map(e, eta)).collect();
                assert_eq!(reconstruct_syndrome(&bits, &b).unwrap(), eta);
            }
        }
    }

    #[test]
    fn method_one_agrees_with_method_two() {
        // Codespace projector of the qudit code mapped through Π equals the
        // qubit code's projector.
        let f = Field::with_degree(2).unwrap();
        let code = CssCode::from_rows(&f, 2, &[vec![1, 1]], &[]).unwrap();
        let bases = vec![FieldBasis::polynomial(&f), find_self_dual(&f).unwrap()];
        let p = PauliWord::x_type(&f, vec![1, 1]).unwrap();
        let qudit_proj = projector(&p, 0).unwrap();
        let image = pi_map(&bases, &qudit_proj).unwrap();
        let q = convert_code(&code, &bases).unwrap();
        let bin = Field::binary();
        let mut acc = DenseOperator::identity(&bin, 4).unwrap();
        for r in 0..q.hx.rows() {
            let w = PauliWord::x_type(&bin, q.hx.row(r).to_vec()).unwrap();
            acc = acc.mul(&projector(&w, 0).unwrap()).unwrap();
        }
        assert!(acc.approx_eq(&image, 1e-10));
    }

    #[test]
    fn end_to_end_corrects_single_qudit_errors() {
        let f = Field::with_degree(3).unwrap();
        let qrs = QrsCode::standard(&f, 7, 2, 5).unwrap();
        let bases = default_assignment(&f, 7).unwrap();
        let plan = MeasurementPlan::default_for(&qrs.css).unwrap();
        let qubits = convert_code(&qrs.css, &bases).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for kind in [ErrorType::X, ErrorType::Z] {
            for _ in 0..30 {
                let site = rng.random_range(0..7);
                let mut e = vec![0u32; 21];
                for b in 0..3 {
                    e[3 * site + b] = rng.random_range(0..2);
                }
                let est = end_to_end_decode(&qrs, &bases, &plan, &e, kind).unwrap();
                assert_eq!(
                    qubit_syndrome(&qubits, &est, kind).unwrap(),
                    qubit_syndrome(&qubits, &e, kind).unwrap()
                );
                assert_eq!(est, e);
            }
        }
    }

    #[test]
    fn alist_round_trip() {
        let bin = Field::binary();
        let h = FqMatrix::from_rows(&bin, 4, &[vec![1, 1, 0, 0], vec![0, 1, 1, 1]]).unwrap();
        let text = to_alist(&h);
        assert_eq!(text, "4 2\n2 3\n1 2 1 1\n2 3\n1\n1 2\n2\n2\n1 2\n2 3 4\n");
        assert_eq!(from_alist(&text).unwrap(), h);
        assert_eq!(to_dense_text(&h), "1 1 0 0\n0 1 1 1\n");
    }
}
