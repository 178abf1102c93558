//! Dense statevector reference engine on `(C^q)^{⊗n}`.
//!
//! Basis index of `|u_0 … u_{n-1}⟩` is the concatenation of the s-bit codes with
//! `u_0` most significant, so adding `x ∈ F_q^n` to a basis label is an XOR.

use num_complex::Complex64;
use rand::{Rng, RngExt};

use crate::error::{GqError, Result};
use crate::gf2e::Field;
use crate::pauli::PauliWord;
use crate::tableau::CssTableau;

pub const DEFAULT_DIM_CAP: usize = 1 << 14;
pub const AMPLITUDE_TOL: f64 = 1e-8;

/// `q^n`, or `TooLarge` if it exceeds `cap`.
pub fn dimension(field: &Field, n: usize, cap: usize) -> Result<usize> {
    let bits = field.s() as usize * n;
    if bits >= usize::BITS as usize - 1 || (1usize << bits) > cap {
        let dim = if bits < 63 { 1usize << bits } else { usize::MAX };
        return Err(GqError::TooLarge { dim, cap });
    }
    Ok(1 << bits)
}

/// Index of a basis label.
pub fn index_of(field: &Field, digits: &[u32]) -> usize {
    let s = field.s();
    digits.iter().fold(0usize, |acc, &d| acc << s | d as usize)
}

/// Basis label of an index.
pub fn digits_of(field: &Field, n: usize, index: usize) -> Vec<u32> {
    let s = field.s() as usize;
    let mask = field.q() - 1;
    (0..n).map(|i| ((index >> (s * (n - 1 - i))) & mask) as u32).collect()
}

fn vec_index(field: &Field, v: &[u32]) -> usize {
    index_of(field, v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    field: Field,
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(field: &Field, n: usize, amps: Vec<Complex64>) -> Result<StateVector> {
        let dim = dimension(field, n, DEFAULT_DIM_CAP)?;
        if amps.len() != dim {
            return Err(GqError::DimensionMismatch(format!("{} amplitudes for dimension {dim}", amps.len())));
        }
        Ok(StateVector { field: field.clone(), n, amps })
    }

    pub fn basis(field: &Field, digits: &[u32]) -> Result<StateVector> {
        let n = digits.len();
        let dim = dimension(field, n, DEFAULT_DIM_CAP)?;
        for &d in digits {
            field.check(d)?;
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index_of(field, digits)] = Complex64::new(1.0, 0.0);
        Ok(StateVector { field: field.clone(), n, amps })
    }

    pub fn zero(field: &Field, n: usize) -> Result<StateVector> {
        StateVector::basis(field, &vec![0; n])
    }

    /// Equal superposition of every basis state.
    pub fn uniform(field: &Field, n: usize) -> Result<StateVector> {
        let dim = dimension(field, n, DEFAULT_DIM_CAP)?;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(StateVector { field: field.clone(), n, amps: vec![a; dim] })
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Result<StateVector> {
        let dim = dimension(field, n, DEFAULT_DIM_CAP)?;
        let amps = (0..dim)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let mut s = StateVector { field: field.clone(), n, amps };
        s.normalise();
        Ok(s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, digits: &[u32]) -> Complex64 {
        self.amps[index_of(&self.field, digits)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalise(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amps {
                *a /= n;
            }
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Equality up to a global phase, for normalised states.
    pub fn equal_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        if self.amps.len() != other.amps.len() {
            return false;
        }
        let ip = self.inner(other);
        if ip.norm() < tol {
            return false;
        }
        let phase = ip / ip.norm();
        self.amps
            .iter()
            .zip(&other.amps)
            .all(|(a, b)| (a * phase - b).norm() < tol)
    }
}

/// Square complex matrix on `n` qudits.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    field: Field,
    n: usize,
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(field: &Field, n: usize) -> Result<DenseOperator> {
        let dim = dimension(field, n, DEFAULT_DIM_CAP)?;
        Ok(DenseOperator { field: field.clone(), n, dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] })
    }

    pub fn identity(field: &Field, n: usize) -> Result<DenseOperator> {
        let mut m = DenseOperator::zeros(field, n)?;
        for i in 0..m.dim {
            m.data[i * m.dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Diagonal operator with entries `f(label)`.
    pub fn diagonal(field: &Field, n: usize, f: impl Fn(&[u32]) -> Complex64) -> Result<DenseOperator> {
        let mut m = DenseOperator::zeros(field, n)?;
        for i in 0..m.dim {
            m.data[i * m.dim + i] = f(&digits_of(field, n, i));
        }
        Ok(m)
    }

    /// Permutation operator `|u⟩ ↦ |f(u)⟩`.
    pub fn permutation(field: &Field, n: usize, f: impl Fn(&[u32]) -> Vec<u32>) -> Result<DenseOperator> {
        let mut m = DenseOperator::zeros(field, n)?;
        for i in 0..m.dim {
            let j = index_of(field, &f(&digits_of(field, n, i)));
            m.data[j * m.dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn from_data(field: &Field, n: usize, data: Vec<Complex64>) -> Result<DenseOperator> {
        let dim = dimension(field, n, DEFAULT_DIM_CAP)?;
        if data.len() != dim * dim {
            return Err(GqError::DimensionMismatch(format!("{} entries for dimension {dim}", data.len())));
        }
        Ok(DenseOperator { field: field.clone(), n, dim, data })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    fn check_shape(&self, other: &DenseOperator) -> Result<()> {
        if self.dim != other.dim || self.field != other.field {
            return Err(GqError::DimensionMismatch(format!("operators of dimension {} and {}", self.dim, other.dim)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.check_shape(other)?;
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                for (o, b) in out[i * d..(i + 1) * d].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(DenseOperator { data: out, ..self.clone() })
    }

    pub fn add(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.check_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(DenseOperator { data, ..self.clone() })
    }

    pub fn scale(&self, c: Complex64) -> DenseOperator {
        DenseOperator { data: self.data.iter().map(|a| a * c).collect(), ..self.clone() }
    }

    pub fn adjoint(&self) -> DenseOperator {
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        DenseOperator { data, ..self.clone() }
    }

    /// `self · other · self†`.
    pub fn conjugate(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.mul(other)?.mul(&self.adjoint())
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.dim() != self.dim || psi.field != self.field {
            return Err(GqError::DimensionMismatch(format!("operator {} on state {}", self.dim, psi.dim())));
        }
        let d = self.dim;
        let amps = (0..d)
            .map(|i| self.data[i * d..(i + 1) * d].iter().zip(&psi.amps).map(|(a, b)| a * b).sum())
            .collect();
        Ok(StateVector { field: self.field.clone(), n: psi.n, amps })
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &DenseOperator, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) < tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint()
            .mul(self)
            .map(|p| p.approx_eq(&DenseOperator::identity(&self.field, self.n).unwrap(), tol))
            .unwrap_or(false)
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.field != other.field {
            return Err(GqError::FieldMismatch(self.field.modulus(), other.field.modulus()));
        }
        let mut out = DenseOperator::zeros(&self.field, self.n + other.n)?;
        let (a, b) = (self.dim, other.dim);
        for i in 0..a {
            for j in 0..a {
                let x = self.data[i * a + j];
                if x.re == 0.0 && x.im == 0.0 {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * out.dim + j * b + l] = x * other.data[k * b + l];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise ±ε rounding key used to memoise on operators.
    pub fn rounded_key(&self, scale: f64) -> Vec<(i64, i64)> {
        self.data
            .iter()
            .map(|a| ((a.re * scale).round() as i64, (a.im * scale).round() as i64))
            .collect()
    }
}

/// Dense matrix of a Pauli word, sign included.
pub fn pauli_matrix(p: &PauliWord) -> Result<DenseOperator> {
    pauli_matrix_with_cap(p, DEFAULT_DIM_CAP)
}

pub fn pauli_matrix_with_cap(p: &PauliWord, cap: usize) -> Result<DenseOperator> {
    let f = p.field();
    let dim = dimension(f, p.n(), cap)?;
    let mut m = DenseOperator {
        field: f.clone(),
        n: p.n(),
        dim,
        data: vec![Complex64::new(0.0, 0.0); dim * dim],
    };
    let xi = vec_index(f, p.x());
    for y in 0..dim {
        let (to, c) = pauli_entry(p, xi, y);
        m.data[to * dim + y] = c;
    }
    Ok(m)
}

/// `X^x Z^z |y⟩ = sign · (-1)^{tr(z·y)} |y + x⟩`.
fn pauli_entry(p: &PauliWord, x_index: usize, y: usize) -> (usize, Complex64) {
    let f = p.field();
    let yd = digits_of(f, p.n(), y);
    let ph = f.trace(f.dot(p.z(), &yd));
    let neg = (ph == 1) ^ p.is_negative();
    (y ^ x_index, Complex64::new(if neg { -1.0 } else { 1.0 }, 0.0))
}

/// `P|ψ⟩` without forming the matrix.
pub fn apply_pauli(p: &PauliWord, psi: &StateVector) -> Result<StateVector> {
    if p.field() != psi.field() || p.n() != psi.n() {
        return Err(GqError::DimensionMismatch(format!("{}-qudit Pauli on {}-qudit state", p.n(), psi.n())));
    }
    let xi = vec_index(p.field(), p.x());
    let mut amps = vec![Complex64::new(0.0, 0.0); psi.dim()];
    for (y, &a) in psi.amps.iter().enumerate() {
        let (to, c) = pauli_entry(p, xi, y);
        amps[to] = c * a;
    }
    Ok(StateVector { field: psi.field.clone(), n: psi.n, amps })
}

/// The state defined by a full tableau, normalised, with a real nonnegative
/// amplitude on `|x₀⟩`.
pub fn stabiliser_state(t: &CssTableau) -> Result<StateVector> {
    if !t.is_full() {
        return Err(GqError::FullTableauRequired);
    }
    let f = t.field();
    let n = t.n();
    let dim = dimension(f, n, DEFAULT_DIM_CAP)?;
    let x0 = t
        .zrows()
        .solve(t.zsyn())?
        .ok_or_else(|| GqError::Internal("Z syndrome constraints are inconsistent".into()))?;
    let t0 = t
        .xrows()
        .solve(t.xsyn())?
        .ok_or_else(|| GqError::Internal("X syndrome constraints are inconsistent".into()))?;
    let m = t.m_x();
    let q = f.q();
    let s = f.s() as usize;
    let base = index_of(f, &x0);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for counter in 0..q.pow(m as u32) {
        // counter's base-q digits are the coefficients on the X rows
        let coeffs: Vec<u32> = (0..m).map(|j| ((counter >> (s * j)) & (q - 1)) as u32).collect();
        let u = t.xrows().combine_rows(&coeffs)?;
        let sign = if f.trace(f.dot(&u, &t0)) == 1 { -1.0 } else { 1.0 };
        amps[base ^ index_of(f, &u)] += Complex64::new(sign, 0.0);
    }
    let mut psi = StateVector { field: f.clone(), n, amps };
    psi.normalise();
    verify_tableau_state(t, &psi)?;
    Ok(psi)
}

fn verify_tableau_state(t: &CssTableau, psi: &StateVector) -> Result<()> {
    let f = t.field();
    for (rows, syn, z) in [(t.xrows(), t.xsyn(), false), (t.zrows(), t.zsyn(), true)] {
        for j in 0..rows.rows() {
            let v = rows.row(j).to_vec();
            let p = if z { PauliWord::z_type(f, v)? } else { PauliWord::x_type(f, v)? };
            for mu in f.elements() {
                let lhs = apply_pauli(&p.power(mu)?, psi)?;
                let chi = f.character(mu, syn[j]);
                let ok = lhs.amps.iter().zip(&psi.amps).all(|(a, b)| (a - b * chi).norm() < 1e-12);
                if !ok {
                    return Err(GqError::Internal(format!("constructed state violates row {j}")));
                }
            }
        }
    }
    Ok(())
}

/// `P^μ ψ` for every μ, in code order.
fn powers_applied(psi: &StateVector, p: &PauliWord) -> Result<Vec<StateVector>> {
    let p = p.unsigned();
    if !p.is_pure() {
        return Err(GqError::PureTypeRequired);
    }
    p.field().elements().map(|mu| apply_pauli(&p.power(mu)?, psi)).collect()
}

/// The η with `P^μ ψ = (-1)^{tr(μη)} ψ` for all μ. The word's sign is ignored.
pub fn syndrome_component(psi: &StateVector, p: &PauliWord) -> Result<u32> {
    let f = psi.field().clone();
    let applied = powers_applied(psi, p)?;
    'eta: for eta in f.elements() {
        for (mu, phi) in f.elements().zip(&applied) {
            let chi = f.character(mu, eta);
            if phi.amps.iter().zip(&psi.amps).any(|(a, b)| (a - b * chi).norm() > AMPLITUDE_TOL) {
                continue 'eta;
            }
        }
        return Ok(eta);
    }
    Err(GqError::NotEigenstate)
}

/// `Π_η = q⁻¹ Σ_μ (-1)^{tr(μη)} P^μ`.
pub fn projector(p: &PauliWord, eta: u32) -> Result<DenseOperator> {
    let p = p.unsigned();
    if !p.is_pure() {
        return Err(GqError::PureTypeRequired);
    }
    let f = p.field().clone();
    f.check(eta)?;
    let mut acc = DenseOperator::zeros(&f, p.n())?;
    for mu in f.elements() {
        let m = pauli_matrix(&p.power(mu)?)?;
        acc = acc.add(&m.scale(Complex64::new(f.character(mu, eta), 0.0)))?;
    }
    Ok(acc.scale(Complex64::new(1.0 / f.q() as f64, 0.0)))
}

/// Unnormalised `Π_η ψ` for every η.
fn projected_branches(psi: &StateVector, p: &PauliWord) -> Result<Vec<StateVector>> {
    let f = psi.field().clone();
    let applied = powers_applied(psi, p)?;
    let inv_q = 1.0 / f.q() as f64;
    Ok(f.elements()
        .map(|eta| {
            let mut amps = vec![Complex64::new(0.0, 0.0); psi.dim()];
            for (mu, phi) in f.elements().zip(&applied) {
                let c = f.character(mu, eta) * inv_q;
                for (o, a) in amps.iter_mut().zip(&phi.amps) {
                    *o += a * c;
                }
            }
            StateVector { field: f.clone(), n: psi.n, amps }
        })
        .collect())
}

/// Born probabilities of each outcome η.
pub fn outcome_probabilities(psi: &StateVector, p: &PauliWord) -> Result<Vec<f64>> {
    Ok(projected_branches(psi, p)?.iter().map(|b| b.norm().powi(2)).collect())
}

/// Samples an outcome and returns it with the collapsed, renormalised state.
pub fn measure_projective<R: Rng + ?Sized>(
    psi: &StateVector,
    p: &PauliWord,
    rng: &mut R,
) -> Result<(u32, StateVector)> {
    let branches = projected_branches(psi, p)?;
    let probs: Vec<f64> = branches.iter().map(|b| b.norm().powi(2)).collect();
    let total: f64 = probs.iter().sum();
    let mut r = rng.random::<f64>() * total;
    let mut pick = probs.iter().rposition(|&x| x > 0.0).unwrap_or(0);
    for (i, &pr) in probs.iter().enumerate() {
        if pr > 0.0 && r < pr {
            pick = i;
            break;
        }
        r -= pr;
    }
    let mut out = branches[pick].clone();
    out.normalise();
    Ok((pick as u32, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn qubit_paulis_are_standard() {
        let f = Field::binary();
        let x = pauli_matrix(&PauliWord::x_type(&f, vec![1]).unwrap()).unwrap();
        assert_eq!(x.data(), &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let z = pauli_matrix(&PauliWord::z_type(&f, vec![1]).unwrap()).unwrap();
        assert_eq!(z.data(), &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
        let i = pauli_matrix(&PauliWord::identity(&f, 2)).unwrap();
        assert_eq!(i, DenseOperator::identity(&f, 2).unwrap());
    }

    #[test]
    fn f4_z_diagonal_follows_trace() {
        let f = Field::with_degree(2).unwrap();
        for g in f.elements() {
            let z = pauli_matrix(&PauliWord::z_type(&f, vec![g]).unwrap()).unwrap();
            for eta in f.elements() {
                let e = eta as usize;
                assert_eq!(z.get(e, e), c(f.character(g, eta)));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = Field::with_degree(4).unwrap();
        let p = PauliWord::identity(&f, 4);
        assert!(matches!(pauli_matrix(&p), Err(GqError::TooLarge { .. })));
    }

    #[test]
    fn product_matches_matrix_product() {
        for s in 1..=3 {
            let f = Field::with_degree(s).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    for g in f.elements() {
                        for d in f.elements() {
                            let p1 = PauliWord::new(&f, vec![a], vec![b], false).unwrap();
                            let p2 = PauliWord::new(&f, vec![g], vec![d], false).unwrap();
                            let lhs = pauli_matrix(&p1.multiply(&p2).unwrap()).unwrap();
                            let rhs = pauli_matrix(&p1).unwrap().mul(&pauli_matrix(&p2).unwrap()).unwrap();
                            assert!(lhs.approx_eq(&rhs, 1e-12));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_qudit_products_and_commutation() {
        let f = Field::with_degree(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let mut w = || {
                let v: Vec<u32> = (0..4).map(|_| rng.random_range(0..4)).collect();
                PauliWord::new(&f, v[..2].to_vec(), v[2..].to_vec(), rng.random()).unwrap()
            };
            let (p1, p2) = (w(), w());
            let m1 = pauli_matrix(&p1).unwrap();
            let m2 = pauli_matrix(&p2).unwrap();
            let prod = m1.mul(&m2).unwrap();
            assert!(pauli_matrix(&p1.multiply(&p2).unwrap()).unwrap().approx_eq(&prod, 1e-12));
            let comm = prod.add(&m2.mul(&m1).unwrap().scale(c(-1.0))).unwrap();
            assert_eq!(comm.frobenius_norm() < 1e-12, p1.commutes(&p2).unwrap());
        }
    }

    #[test]
    fn simple_stabiliser_states() {
        let f = Field::binary();
        let t = CssTableau::from_rows(&f, 1, &[], &[vec![1]], vec![], vec![0]).unwrap();
        assert_eq!(stabiliser_state(&t).unwrap(), StateVector::zero(&f, 1).unwrap());
        let cat = CssTableau::from_rows(
            &f,
            4,
            &[vec![1, 1, 1, 1]],
            &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]],
            vec![0],
            vec![0, 0, 0],
        )
        .unwrap();
        let psi = stabiliser_state(&cat).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((psi.amplitude(&[0, 0, 0, 0]) - c(r)).norm() < 1e-12);
        assert!((psi.amplitude(&[1, 1, 1, 1]) - c(r)).norm() < 1e-12);
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn f4_bell_state_syndromes() {
        let f = Field::with_degree(2).unwrap();
        let t = CssTableau::from_rows(&f, 2, &[vec![1, 1]], &[vec![1, 1]], vec![0], vec![0]).unwrap();
        let psi = stabiliser_state(&t).unwrap();
        for a in f.elements() {
            assert!((psi.amplitude(&[a, a]) - c(0.5)).norm() < 1e-12);
        }
        let zz = PauliWord::z_type(&f, vec![1, 1]).unwrap();
        assert_eq!(syndrome_component(&psi, &zz).unwrap(), 0);
    }

    #[test]
    fn syndrome_of_shifted_code_state() {
        let f = Field::with_degree(2).unwrap();
        let t = CssTableau::from_rows(&f, 2, &[vec![1, 1]], &[vec![1, 1]], vec![0], vec![0]).unwrap();
        let psi = stabiliser_state(&t).unwrap();
        let w = vec![1, 1];
        for a0 in f.elements() {
            for a1 in f.elements() {
                let shifted = apply_pauli(&PauliWord::x_type(&f, vec![a0, a1]).unwrap(), &psi).unwrap();
                let eta = syndrome_component(&shifted, &PauliWord::z_type(&f, w.clone()).unwrap()).unwrap();
                assert_eq!(eta, f.dot(&w, &[a0, a1]));
            }
        }
    }

    #[test]
    fn zero_and_uniform_components() {
        let f = Field::with_degree(2).unwrap();
        let zero = StateVector::zero(&f, 2).unwrap();
        assert_eq!(syndrome_component(&zero, &PauliWord::z_type(&f, vec![3, 2]).unwrap()).unwrap(), 0);
        let u = StateVector::uniform(&f, 2).unwrap();
        assert_eq!(syndrome_component(&u, &PauliWord::x_type(&f, vec![1, 2]).unwrap()).unwrap(), 0);
        assert_eq!(
            syndrome_component(&zero, &PauliWord::x_type(&f, vec![1, 0]).unwrap()),
            Err(GqError::NotEigenstate)
        );
    }

    #[test]
    fn projectors_resolve_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for s in [1, 2] {
            let f = Field::with_degree(s).unwrap();
            for n in 1..=2 {
                for trial in 0..4 {
                    let v: Vec<u32> = (0..n).map(|_| rng.random_range(0..f.q() as u32)).collect();
                    let p = if trial % 2 == 0 { PauliWord::x_type(&f, v) } else { PauliWord::z_type(&f, v) }.unwrap();
                    let projs: Vec<_> = f.elements().map(|e| projector(&p, e).unwrap()).collect();
                    let mut sum = DenseOperator::zeros(&f, n).unwrap();
                    for a in &projs {
                        sum = sum.add(a).unwrap();
                    }
                    assert!(sum.approx_eq(&DenseOperator::identity(&f, n).unwrap(), 1e-10));
                    for (i, a) in projs.iter().enumerate() {
                        for (j, b) in projs.iter().enumerate() {
                            let ab = a.mul(b).unwrap();
                            let want = if i == j { a.clone() } else { DenseOperator::zeros(&f, n).unwrap() };
                            assert!(ab.approx_eq(&want, 1e-10));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn qubit_zero_measured_in_x_is_fair() {
        let f = Field::binary();
        let zero = StateVector::zero(&f, 1).unwrap();
        let p = outcome_probabilities(&zero, &PauliWord::x_type(&f, vec![1]).unwrap()).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn eigenstate_measures_deterministically() {
        let f = Field::with_degree(2).unwrap();
        let psi = StateVector::basis(&f, &[2, 3]).unwrap();
        let p = PauliWord::z_type(&f, vec![1, 1]).unwrap();
        let eta = syndrome_component(&psi, &p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..10 {
            let (o, post) = measure_projective(&psi, &p, &mut rng).unwrap();
            assert_eq!(o, eta);
            assert!(post.equal_up_to_phase(&psi, 1e-10));
        }
    }

    #[test]
    fn one_more_constraint_divides_dimension_by_q() {
        // Stabilised subspace dimension = trace of the product of projectors.
        let f = Field::with_degree(2).unwrap();
        let p1 = projector(&PauliWord::z_type(&f, vec![1, 1]).unwrap(), 0).unwrap();
        assert!((p1.trace().re - 4.0).abs() < 1e-10);
        let p2 = projector(&PauliWord::z_type(&f, vec![0, 1]).unwrap(), 0).unwrap();
        assert!((p1.mul(&p2).unwrap().trace().re - 1.0).abs() < 1e-10);
    }
}
