//! Gate zoo, Pauli decomposition, Clifford-hierarchy testing and the
//! qudit-to-qubit maps `φ_B` and `Π_B`.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::bases::FieldBasis;
use crate::error::{GqError, Result};
use crate::gf2e::Field;
use crate::oracle::{self, digits_of, index_of, DenseOperator, StateVector};
use crate::pauli::PauliWord;

/// Largest `q^n` accepted by the hierarchy tester.
pub const HIERARCHY_DIM_CAP: usize = 1 << 9;
/// Coefficients below this are treated as zero when recognising Paulis.
pub const PAULI_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    X(u32),
    Z(u32),
    Hadamard,
    Mult(u32),
    Cnot,
    Ccz(u32),
    /// `C^{(l-1)}Z^γ` on `l` qudits.
    MultiCz { l: usize, gamma: u32 },
    /// `|η⟩ ↦ (-1)^{tr(β η^n)} |η⟩`.
    Un { n: u32, beta: u32 },
    S(u32),
    T(u32),
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Cnot => 2,
            GateKind::Ccz(_) => 3,
            GateKind::MultiCz { l, .. } => *l,
            _ => 1,
        }
    }

    pub fn name(&self) -> String {
        match self {
            GateKind::X(b) => format!("x({b})"),
            GateKind::Z(g) => format!("z({g})"),
            GateKind::Hadamard => "hadamard".into(),
            GateKind::Mult(d) => format!("mult({d})"),
            GateKind::Cnot => "cnot".into(),
            GateKind::Ccz(g) => format!("ccz({g})"),
            GateKind::MultiCz { l, gamma } => format!("multi_cz({l},{gamma})"),
            GateKind::Un { n, beta } => format!("u_n({n},{beta})"),
            GateKind::S(g) => format!("s({g})"),
            GateKind::T(g) => format!("t({g})"),
        }
    }

    /// Parses a gate name with its numeric parameters (`param` is β, γ or δ;
    /// `count` is `l` or `n`).
    pub fn parse(name: &str, param: u32, count: Option<u32>) -> Result<GateKind> {
        Ok(match name.to_ascii_lowercase().as_str() {
            "x" => GateKind::X(param),
            "z" => GateKind::Z(param),
            "h" | "hadamard" => GateKind::Hadamard,
            "m" | "mult" => GateKind::Mult(param),
            "cnot" | "cx" => GateKind::Cnot,
            "ccz" => GateKind::Ccz(param),
            "multi_cz" | "mcz" => GateKind::MultiCz {
                l: count.ok_or_else(|| GqError::InvalidGate("multi_cz needs a control count".into()))? as usize,
                gamma: param,
            },
            "u_n" | "un" => GateKind::Un {
                n: count.ok_or_else(|| GqError::InvalidGate("u_n needs an exponent".into()))?,
                beta: param,
            },
            "s" => GateKind::S(param),
            "t" => GateKind::T(param),
            other => return Err(GqError::InvalidGate(format!("unknown gate {other:?}"))),
        })
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn phase(neg: bool) -> Complex64 {
    Complex64::new(if neg { -1.0 } else { 1.0 }, 0.0)
}

pub fn build_gate(field: &Field, kind: GateKind) -> Result<DenseOperator> {
    let f = field;
    match kind {
        GateKind::X(b) => oracle::pauli_matrix(&PauliWord::x_type(f, vec![b])?),
        GateKind::Z(g) => oracle::pauli_matrix(&PauliWord::z_type(f, vec![g])?),
        GateKind::Hadamard => {
            let mut h = DenseOperator::zeros(f, 1)?;
            let r = 1.0 / (f.q() as f64).sqrt();
            for mu in f.elements() {
                for eta in f.elements() {
                    h.set(mu as usize, eta as usize, Complex64::new(r * f.character(mu, eta), 0.0));
                }
            }
            Ok(h)
        }
        GateKind::Mult(d) => {
            f.check(d)?;
            if d == 0 {
                return Err(GqError::NonUnitary("multiplication gate with δ = 0".into()));
            }
            DenseOperator::permutation(f, 1, |u| vec![f.mul(d, u[0])])
        }
        GateKind::Cnot => DenseOperator::permutation(f, 2, |u| vec![u[0], u[1] ^ u[0]]),
        GateKind::Ccz(g) => {
            f.check(g)?;
            DenseOperator::diagonal(f, 3, |u| {
                phase(f.trace(f.mul(g, f.mul(u[0], f.mul(u[1], u[2])))) == 1)
            })
        }
        GateKind::MultiCz { l, gamma } => {
            f.check(gamma)?;
            if l == 0 || l > 4 || f.q() > 4 {
                return Err(GqError::InvalidGate(format!(
                    "multi_cz is available for 1 ≤ l ≤ 4 and q ≤ 4 (got l = {l}, q = {})",
                    f.q()
                )));
            }
            DenseOperator::diagonal(f, l, |u| {
                let prod = u.iter().fold(gamma, |acc, &e| f.mul(acc, e));
                phase(f.trace(prod) == 1)
            })
        }
        GateKind::Un { n, beta } => {
            f.check(beta)?;
            DenseOperator::diagonal(f, 1, |u| phase(f.trace(f.mul(beta, f.pow(u[0], n as u64))) == 1))
        }
        GateKind::S(g) | GateKind::T(g) => {
            f.check(g)?;
            let angle = if matches!(kind, GateKind::S(_)) {
                std::f64::consts::FRAC_PI_2
            } else {
                std::f64::consts::FRAC_PI_4
            };
            DenseOperator::diagonal(f, 1, |u| {
                Complex64::from_polar(1.0, angle * f.trace(f.mul(g, u[0])) as f64)
            })
        }
    }
}

/// `A_1 ⊗ … ⊗ A_k` placing `gate` on qudits `first..first+arity` of `n` qudits.
pub fn embed(gate: &DenseOperator, first: usize, n: usize) -> Result<DenseOperator> {
    let f = gate.field().clone();
    if first + gate.n() > n {
        return Err(GqError::DimensionMismatch(format!(
            "{}-qudit gate at {first} on {n} qudits",
            gate.n()
        )));
    }
    let mut acc: Option<DenseOperator> = None;
    let mut push = |m: DenseOperator| -> Result<()> {
        acc = Some(match acc.take() {
            None => m,
            Some(a) => a.kron(&m)?,
        });
        Ok(())
    };
    if first > 0 {
        push(DenseOperator::identity(&f, first)?)?;
    }
    push(gate.clone())?;
    let rest = n - first - gate.n();
    if rest > 0 {
        push(DenseOperator::identity(&f, rest)?)?;
    }
    Ok(acc.expect("gate pushed"))
}

/// Bit mask `m(z)` with `tr(z·y) = parity(m(z) & index(y))`.
fn trace_mask(field: &Field, n: usize, z: &[u32]) -> usize {
    let bits = field.s() as usize * n;
    (0..bits).fold(0usize, |m, b| {
        let y = digits_of(field, n, 1 << b);
        m | (field.trace(field.dot(z, &y)) as usize) << b
    })
}

/// Every nonzero coefficient `c_P` of `U = Σ c_P P` over unsigned Paulis.
pub fn pauli_decompose(u: &DenseOperator) -> Result<Vec<(PauliWord, Complex64)>> {
    let f = u.field().clone();
    let n = u.n();
    let dim = oracle::dimension(&f, n, oracle::DEFAULT_DIM_CAP)?;
    let inv = 1.0 / dim as f64;
    let mut out = Vec::new();
    let masks: Vec<usize> = (0..dim).map(|zi| trace_mask(&f, n, &digits_of(&f, n, zi))).collect();
    for xi in 0..dim {
        let col: Vec<Complex64> = (0..dim).map(|y| u.get(y ^ xi, y)).collect();
        if col.iter().all(|c| c.norm() < 1e-15) {
            continue;
        }
        for (zi, &m) in masks.iter().enumerate() {
            let c: Complex64 = col
                .iter()
                .enumerate()
                .map(|(y, &v)| if (m & y).count_ones() & 1 == 1 { -v } else { v })
                .sum::<Complex64>()
                * inv;
            if c.norm() > 1e-12 {
                let p = PauliWord::new(&f, digits_of(&f, n, xi), digits_of(&f, n, zi), false)?;
                out.push((p, c));
            }
        }
    }
    Ok(out)
}

/// `Σ c_P P`.
pub fn pauli_recompose(field: &Field, n: usize, terms: &[(PauliWord, Complex64)]) -> Result<DenseOperator> {
    let mut acc = DenseOperator::zeros(field, n)?;
    for (p, c) in terms {
        acc = acc.add(&oracle::pauli_matrix(p)?.scale(*c))?;
    }
    Ok(acc)
}

/// If `U = c·P` for an unsigned Pauli `P`, returns `(P, c)`. Checks the monomial
/// structure directly instead of a full decomposition.
pub fn as_pauli(u: &DenseOperator, tol: f64) -> Option<(PauliWord, Complex64)> {
    let f = u.field();
    let n = u.n();
    let dim = u.dim();
    let xi = (0..dim).find(|&r| u.get(r, 0).norm() > tol)?;
    let c = u.get(xi, 0);
    if c.norm() < tol {
        return None;
    }
    let bits = f.s() as usize * n;
    let mut mask = 0usize;
    for b in 0..bits {
        let ratio = u.get((1 << b) ^ xi, 1 << b) / c;
        if (ratio + 1.0).norm() < tol {
            mask |= 1 << b;
        } else if (ratio - 1.0).norm() >= tol {
            return None;
        }
    }
    for y in 0..dim {
        for r in 0..dim {
            let v = u.get(r, y);
            let want = if r == y ^ xi {
                if (mask & y).count_ones() & 1 == 1 { -c } else { c }
            } else {
                Complex64::new(0.0, 0.0)
            };
            if (v - want).norm() > tol {
                return None;
            }
        }
    }
    let zi = (0..dim).find(|&zi| trace_mask(f, n, &digits_of(f, n, zi)) == mask)?;
    let p = PauliWord::new(f, digits_of(f, n, xi), digits_of(f, n, zi), false).ok()?;
    Some((p, c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HierarchyLevel {
    Exact(u32),
    AboveMax,
}

impl Serialize for HierarchyLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            HierarchyLevel::Exact(k) => s.serialize_u32(*k),
            HierarchyLevel::AboveMax => s.serialize_str("above max"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HierarchyReport {
    pub gate: String,
    pub q: usize,
    pub max_level: u32,
    pub level: HierarchyLevel,
    /// Generator `G` such that `U G U†` fails the level below the reported one
    /// (or fails `max_level - 1` when above max).
    pub witness: Option<String>,
    pub proportional_to_identity: bool,
}

/// The `2·n·s` single-site generators `X_i^{α^j}`, `Z_i^{α^j}`.
pub fn hierarchy_generators(field: &Field, n: usize) -> Result<Vec<PauliWord>> {
    let basis = FieldBasis::polynomial(field);
    let mut out = Vec::new();
    for site in 0..n {
        for &b in basis.elements() {
            out.push(PauliWord::single(field, n, site, b, false)?);
            out.push(PauliWord::single(field, n, site, b, true)?);
        }
    }
    Ok(out)
}

/// Rounded matrix entries plus the level being tested.
type MemoKey = (Vec<(i64, i64)>, u32);

struct HierarchyTester {
    gens: Vec<(PauliWord, DenseOperator)>,
    /// `None` when the level test passes, else the failing generator index.
    memo: HashMap<MemoKey, Option<usize>>,
}

impl HierarchyTester {
    /// `None` if `u` is in level `k`; otherwise the index of a failing generator
    /// (`usize::MAX` at level 1).
    fn failure(&mut self, u: &DenseOperator, k: u32) -> Result<Option<usize>> {
        if k == 1 {
            return Ok(if as_pauli(u, PAULI_TOL).is_some() { None } else { Some(usize::MAX) });
        }
        let key = (u.rounded_key(1e7), k);
        if let Some(r) = self.memo.get(&key) {
            return Ok(*r);
        }
        let mut result = None;
        for i in 0..self.gens.len() {
            let c = u.conjugate(&self.gens[i].1)?;
            if self.failure(&c, k - 1)?.is_some() {
                result = Some(i);
                break;
            }
        }
        self.memo.insert(key, result);
        Ok(result)
    }
}

/// Least `k ≤ max_level` with `U ∈ C^{(k)}`, tested by conjugating the
/// single-site generators. Levels 1 to 3 are decided exactly this way.
pub fn hierarchy_level(u: &DenseOperator, max_level: u32, name: &str) -> Result<HierarchyReport> {
    let f = u.field().clone();
    let n = u.n();
    oracle::dimension(&f, n, HIERARCHY_DIM_CAP)?;
    if max_level == 0 {
        return Err(GqError::InvalidArgument("max_level must be at least 1".into()));
    }
    let gens = hierarchy_generators(&f, n)?
        .into_iter()
        .map(|p| oracle::pauli_matrix(&p).map(|m| (p, m)))
        .collect::<Result<Vec<_>>>()?;
    let mut tester = HierarchyTester { gens, memo: HashMap::new() };
    let mut level = HierarchyLevel::AboveMax;
    let mut witness = None;
    let mut last_failure = None;
    for k in 1..=max_level {
        match tester.failure(u, k)? {
            None => {
                level = HierarchyLevel::Exact(k);
                witness = last_failure.take();
                break;
            }
            Some(i) => last_failure = (i != usize::MAX).then(|| tester.gens[i].0.to_string()),
        }
    }
    if level == HierarchyLevel::AboveMax {
        witness = last_failure;
    }
    let proportional_to_identity = as_pauli(u, PAULI_TOL).is_some_and(|(p, _)| p.is_identity());
    Ok(HierarchyReport {
        gate: name.to_string(),
        q: f.q(),
        max_level,
        level,
        witness,
        proportional_to_identity,
    })
}

/// Qubit label of each qudit label under `φ_𝓑`.
fn phi_permutation(bases: &[FieldBasis], field: &Field) -> Result<Vec<usize>> {
    let n = bases.len();
    for b in bases {
        if b.field() != field {
            return Err(GqError::FieldMismatch(field.modulus(), b.field().modulus()));
        }
    }
    let dim = oracle::dimension(field, n, oracle::DEFAULT_DIM_CAP)?;
    Ok((0..dim)
        .map(|i| {
            let u = digits_of(field, n, i);
            let bits: Vec<u32> = u
                .iter()
                .zip(bases)
                .flat_map(|(&e, b)| b.decompose_unchecked(e))
                .collect();
            index_of(&Field::binary(), &bits)
        })
        .collect())
}

fn check_bases(bases: &[FieldBasis], n: usize) -> Result<()> {
    if bases.len() != n {
        return Err(GqError::DimensionMismatch(format!("{} bases for {n} qudits", bases.len())));
    }
    Ok(())
}

/// `φ_𝓑(|u⟩) = ⊗_i |D_{B_i}(u_i)⟩`, extended linearly.
pub fn phi_map(bases: &[FieldBasis], psi: &StateVector) -> Result<StateVector> {
    check_bases(bases, psi.n())?;
    let perm = phi_permutation(bases, psi.field())?;
    let mut amps = vec![Complex64::new(0.0, 0.0); psi.dim()];
    for (i, &a) in psi.amplitudes().iter().enumerate() {
        amps[perm[i]] = a;
    }
    StateVector::from_amplitudes(&Field::binary(), psi.n() * psi.field().s() as usize, amps)
}

/// `Π_𝓑(U) = φ_𝓑 U φ_𝓑^{-1}`.
pub fn pi_map(bases: &[FieldBasis], u: &DenseOperator) -> Result<DenseOperator> {
    check_bases(bases, u.n())?;
    let perm = phi_permutation(bases, u.field())?;
    let nq = u.n() * u.field().s() as usize;
    let mut out = DenseOperator::zeros(&Field::binary(), nq)?;
    for a in 0..u.dim() {
        for b in 0..u.dim() {
            out.set(perm[a], perm[b], u.get(a, b));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::find_self_dual;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn qubit_reductions() {
        let f = Field::binary();
        let h = build_gate(&f, GateKind::Hadamard).unwrap();
        let r = 1.0 / 2f64.sqrt();
        let want = DenseOperator::from_data(&f, 1, vec![c(r), c(r), c(r), c(-r)]).unwrap();
        assert!(h.approx_eq(&want, 1e-15));
        let ccz = build_gate(&f, GateKind::Ccz(1)).unwrap();
        for i in 0..8 {
            assert_eq!(ccz.get(i, i), c(if i == 7 { -1.0 } else { 1.0 }));
        }
    }

    #[test]
    fn all_gates_are_unitary() {
        let f = Field::with_degree(2).unwrap();
        let kinds = [
            GateKind::X(3),
            GateKind::Z(2),
            GateKind::Hadamard,
            GateKind::Mult(2),
            GateKind::Cnot,
            GateKind::Ccz(3),
            GateKind::MultiCz { l: 2, gamma: 1 },
            GateKind::Un { n: 3, beta: 2 },
            GateKind::S(3),
            GateKind::T(1),
        ];
        for k in kinds {
            assert!(build_gate(&f, k).unwrap().is_unitary(1e-10), "{k}");
        }
        assert!(matches!(build_gate(&f, GateKind::Mult(0)), Err(GqError::NonUnitary(_))));
        assert!(matches!(GateKind::parse("toffoli", 0, None), Err(GqError::InvalidGate(_))));
    }

    #[test]
    fn u7_is_identity_for_traceless_beta() {
        let f = Field::with_degree(3).unwrap();
        let id = DenseOperator::identity(&f, 1).unwrap();
        for beta in f.elements() {
            let u = build_gate(&f, GateKind::Un { n: 7, beta }).unwrap();
            assert_eq!(u.approx_eq(&id, 1e-12), f.trace(beta) == 0);
        }
    }

    #[test]
    fn ccz_gamma_via_mult_gates() {
        let f = Field::with_degree(2).unwrap();
        let ccz = build_gate(&f, GateKind::Ccz(1)).unwrap();
        for g in f.nonzero() {
            let m = embed(&build_gate(&f, GateKind::Mult(g)).unwrap(), 0, 3).unwrap();
            let minv = embed(&build_gate(&f, GateKind::Mult(f.inv(g).unwrap())).unwrap(), 0, 3).unwrap();
            let rhs = minv.mul(&ccz).unwrap().mul(&m).unwrap();
            assert!(build_gate(&f, GateKind::Ccz(g)).unwrap().approx_eq(&rhs, 1e-12));
        }
    }

    #[test]
    fn decompositions() {
        let f = Field::binary();
        let id = DenseOperator::identity(&f, 1).unwrap();
        let d = pauli_decompose(&id).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[0].0.is_identity() && (d[0].1 - c(1.0)).norm() < 1e-12);
        let h = build_gate(&f, GateKind::Hadamard).unwrap();
        let d = pauli_decompose(&h).unwrap();
        assert_eq!(d.len(), 2);
        for (p, coef) in &d {
            assert!(p.weight() == 1 && p.is_pure());
            assert!((coef - c(1.0 / 2f64.sqrt())).norm() < 1e-12);
        }
        let f4 = Field::with_degree(2).unwrap();
        let x = build_gate(&f4, GateKind::X(3)).unwrap();
        let d = pauli_decompose(&x).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].0.x(), &[3]);
    }

    #[test]
    fn decomposition_reconstructs_and_agrees_with_fast_check() {
        let f = Field::with_degree(2).unwrap();
        for k in [GateKind::Cnot, GateKind::Ccz(2), GateKind::Hadamard, GateKind::S(1)] {
            let u = build_gate(&f, k).unwrap();
            let terms = pauli_decompose(&u).unwrap();
            let back = pauli_recompose(&f, u.n(), &terms).unwrap();
            assert!(back.approx_eq(&u, 1e-10));
            assert_eq!(terms.len() == 1, as_pauli(&u, PAULI_TOL).is_some());
        }
        let p = PauliWord::new(&f, vec![1, 2], vec![3, 0], true).unwrap();
        let m = oracle::pauli_matrix(&p).unwrap();
        let (q, coef) = as_pauli(&m, PAULI_TOL).unwrap();
        assert_eq!(q, p.unsigned());
        assert!((coef - c(-1.0)).norm() < 1e-12);
    }

    #[test]
    fn hadamard_squares_to_identity() {
        for s in 1..=3 {
            let f = Field::with_degree(s).unwrap();
            let h = build_gate(&f, GateKind::Hadamard).unwrap();
            assert!(h.mul(&h).unwrap().approx_eq(&DenseOperator::identity(&f, 1).unwrap(), 1e-12));
        }
    }

    #[test]
    fn s_gate_is_not_additive_at_q4() {
        let f = Field::with_degree(2).unwrap();
        let mut found = false;
        for a in f.elements() {
            for b in f.elements() {
                let lhs = build_gate(&f, GateKind::S(a)).unwrap().mul(&build_gate(&f, GateKind::S(b)).unwrap()).unwrap();
                if !lhs.approx_eq(&build_gate(&f, GateKind::S(a ^ b)).unwrap(), 1e-12) {
                    found = true;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn small_levels() {
        let f = Field::with_degree(2).unwrap();
        let level = |k| hierarchy_level(&build_gate(&f, k).unwrap(), 4, "g").unwrap().level;
        assert_eq!(level(GateKind::X(1)), HierarchyLevel::Exact(1));
        assert_eq!(level(GateKind::Hadamard), HierarchyLevel::Exact(2));
        assert_eq!(level(GateKind::Cnot), HierarchyLevel::Exact(2));
        assert_eq!(level(GateKind::Ccz(3)), HierarchyLevel::Exact(3));
        let r = hierarchy_level(&build_gate(&f, GateKind::Ccz(1)).unwrap(), 2, "ccz").unwrap();
        assert_eq!(r.level, HierarchyLevel::AboveMax);
        assert!(r.witness.is_some());
        let id = hierarchy_level(&DenseOperator::identity(&f, 1).unwrap(), 3, "id").unwrap();
        assert!(id.proportional_to_identity);
    }

    #[test]
    fn phi_examples() {
        let f = Field::with_degree(2).unwrap();
        let b = FieldBasis::new(&f, vec![2, 3]).unwrap();
        let one = StateVector::basis(&f, &[1]).unwrap();
        let img = phi_map(&[b.clone()], &one).unwrap();
        assert_eq!(img, StateVector::basis(&Field::binary(), &[1, 1]).unwrap());
        let zero = phi_map(&[b.clone(), b], &StateVector::zero(&f, 2).unwrap()).unwrap();
        assert_eq!(zero, StateVector::zero(&Field::binary(), 4).unwrap());
    }

    #[test]
    fn pi_maps_paulis_by_decomposition() {
        let f = Field::with_degree(2).unwrap();
        let bin = Field::binary();
        for b in [FieldBasis::polynomial(&f), find_self_dual(&f).unwrap()] {
            let dual = b.dual();
            for g in f.elements() {
                let px = pi_map(&[b.clone()], &build_gate(&f, GateKind::X(g)).unwrap()).unwrap();
                let want = oracle::pauli_matrix(&PauliWord::x_type(&bin, b.decompose(g).unwrap()).unwrap()).unwrap();
                assert!(px.approx_eq(&want, 1e-12));
                let pz = pi_map(&[b.clone()], &build_gate(&f, GateKind::Z(g)).unwrap()).unwrap();
                let want = oracle::pauli_matrix(&PauliWord::z_type(&bin, dual.decompose(g).unwrap()).unwrap()).unwrap();
                assert!(pz.approx_eq(&want, 1e-12));
            }
        }
    }

    #[test]
    fn pi_is_compatible_with_phi() {
        let f = Field::with_degree(2).unwrap();
        let b = find_self_dual(&f).unwrap();
        let bases = [b.clone(), FieldBasis::polynomial(&f)];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = build_gate(&f, GateKind::Cnot).unwrap();
        let pu = pi_map(&bases, &u).unwrap();
        for _ in 0..10 {
            let psi = StateVector::random(&f, 2, &mut rng).unwrap();
            let lhs = pu.apply(&phi_map(&bases, &psi).unwrap()).unwrap();
            let rhs = phi_map(&bases, &u.apply(&psi).unwrap()).unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
        let _ = rng.random::<u8>();
    }
}
