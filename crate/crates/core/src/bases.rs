//! F_2-bases of F_q, their trace duals, and the decomposition maps `D_B`.

use crate::error::{GqError, Result};
use crate::gf2e::Field;
use crate::linalg::FqMatrix;

/// An ordered F_2-basis `(η_0, …, η_{s-1})` of F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldBasis {
    field: Field,
    elements: Vec<u32>,
    /// Row `i` is the bit mask whose parity against a code gives coefficient `i`.
    inv_rows: Vec<u32>,
    self_dual: bool,
}

fn trace_gram(field: &Field, a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
    a.iter()
        .map(|&x| b.iter().map(|&y| field.linear_map(x, y)).collect())
        .collect()
}

fn is_identity(m: &[Vec<u32>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == u32::from(i == j)))
}

/// Invert the s×s bit matrix whose column `i` is the bit pattern of `cols[i]`.
/// Returns row masks of the inverse.
fn invert_columns(s: usize, cols: &[u32]) -> Option<Vec<u32>> {
    let f2 = Field::binary();
    let mut a = FqMatrix::zeros(&f2, s, s);
    for (i, &c) in cols.iter().enumerate() {
        for r in 0..s {
            a.set(r, i, c >> r & 1);
        }
    }
    let inv = a.inverse()?;
    Some(
        (0..s)
            .map(|i| (0..s).fold(0u32, |m, r| m | inv.get(i, r) << r))
            .collect(),
    )
}

impl FieldBasis {
    pub fn new(field: &Field, elements: Vec<u32>) -> Result<FieldBasis> {
        let s = field.s() as usize;
        if elements.len() != s {
            return Err(GqError::DimensionMismatch(format!(
                "basis of F_{} needs {} elements, got {}",
                field.q(),
                s,
                elements.len()
            )));
        }
        for &e in &elements {
            field.check(e)?;
        }
        let inv_rows = invert_columns(s, &elements).ok_or(GqError::NotABasis)?;
        let self_dual = is_identity(&trace_gram(field, &elements, &elements));
        Ok(FieldBasis { field: field.clone(), elements, inv_rows, self_dual })
    }

    /// `(1, α, α², …)`.
    pub fn polynomial(field: &Field) -> FieldBasis {
        let elements = (0..field.s()).map(|i| 1u32 << i).collect();
        FieldBasis::new(field, elements).expect("monomials form a basis")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_self_dual(&self) -> bool {
        self.self_dual
    }

    /// `D_B(η)`: the unique bits `c` with `η = Σ c_i η_i`.
    pub fn decompose(&self, eta: u32) -> Result<Vec<u32>> {
        self.field.check(eta)?;
        Ok(self.decompose_unchecked(eta))
    }

    pub(crate) fn decompose_unchecked(&self, eta: u32) -> Vec<u32> {
        self.inv_rows.iter().map(|&m| (m & eta).count_ones() & 1).collect()
    }

    pub fn recompose(&self, bits: &[u32]) -> Result<u32> {
        if bits.len() != self.elements.len() {
            return Err(GqError::DimensionMismatch(format!(
                "{} bits for a basis of size {}",
                bits.len(),
                self.elements.len()
            )));
        }
        let mut acc = 0;
        for (&b, &e) in bits.iter().zip(&self.elements) {
            match b {
                0 => {}
                1 => acc ^= e,
                _ => return Err(GqError::InvalidArgument(format!("bit value {b}"))),
            }
        }
        Ok(acc)
    }

    /// Matrix of `tr(η_i μ_j)` against another basis.
    pub fn gram_with(&self, other: &FieldBasis) -> Vec<Vec<u32>> {
        trace_gram(&self.field, &self.elements, &other.elements)
    }

    /// The trace-dual basis `B*` with `tr(η_i μ_j) = δ_ij`.
    pub fn dual(&self) -> FieldBasis {
        if self.self_dual {
            return self.clone();
        }
        let s = self.len();
        // Row i of T is the mask of the functional x ↦ tr(η_i x).
        let t_cols: Vec<u32> = (0..s)
            .map(|b| {
                (0..s).fold(0u32, |m, i| m | self.field.linear_map(self.elements[i], 1 << b) << i)
            })
            .collect();
        // t_cols[b] holds column b of T; invert T and read off its columns.
        let inv_rows = invert_columns(s, &t_cols).expect("trace form is nondegenerate");
        let dual: Vec<u32> = (0..s)
            .map(|j| (0..s).fold(0u32, |m, r| m | (inv_rows[r] >> j & 1) << r))
            .collect();
        FieldBasis::new(&self.field, dual).expect("dual of a basis is a basis")
    }

    /// `tr(η · η_i)`; equals `decompose(η)[i]` for a self-dual basis.
    pub fn component_by_trace(&self, eta: u32, i: usize) -> Result<u32> {
        if !self.self_dual {
            return Err(GqError::SelfDualRequired);
        }
        self.field.check(eta)?;
        let e = self
            .elements
            .get(i)
            .ok_or_else(|| GqError::DimensionMismatch(format!("component {i} of {}", self.len())))?;
        Ok(self.field.linear_map(eta, *e))
    }

    /// Recovers `ρ` from the bits `tr(b_i ρ)`: `ρ = Σ tr(b_i ρ) b_i*`.
    pub fn recover_from_traces(&self, traces: &[u32]) -> Result<u32> {
        self.dual().recompose(traces)
    }
}

/// First self-dual basis in lexicographic order of increasing element codes.
/// The search is cached per field.
pub fn find_self_dual(field: &Field) -> Result<FieldBasis> {
    if let Some(codes) = field.self_dual_cache().get() {
        return FieldBasis::new(field, codes.clone());
    }
    let s = field.s() as usize;
    let candidates: Vec<u32> = field.nonzero().filter(|&x| field.linear_map(x, x) == 1).collect();
    let mut chosen = Vec::with_capacity(s);
    if !extend_orthonormal(field, &candidates, 0, s, &mut chosen) {
        return Err(GqError::Internal(format!("no self-dual basis found for F_{}", field.q())));
    }
    let _ = field.self_dual_cache().set(chosen.clone());
    FieldBasis::new(field, chosen)
}

fn extend_orthonormal(
    field: &Field,
    candidates: &[u32],
    from: usize,
    s: usize,
    chosen: &mut Vec<u32>,
) -> bool {
    if chosen.len() == s {
        return true;
    }
    for idx in from..candidates.len() {
        if candidates.len() - idx < s - chosen.len() {
            return false;
        }
        let c = candidates[idx];
        if chosen.iter().all(|&e| field.linear_map(e, c) == 0) {
            chosen.push(c);
            if extend_orthonormal(field, candidates, idx + 1, s, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
