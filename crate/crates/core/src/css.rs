//! Qudit CSS codes `CSS(L_X, L_Z)` over F_q.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{GqError, Result};
use crate::gf2e::Field;
use crate::linalg::{weight, FqMatrix, RowSpaceReducer};

pub const DEFAULT_DISTANCE_BUDGET: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    field: Field,
    n: usize,
    gx: FqMatrix,
    gz: FqMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    /// Enumeration would exceed the budget.
    NotComputed,
    /// No logical operators, so the minimum is over an empty set.
    NotApplicable,
}

impl Distance {
    pub fn value(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            _ => None,
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Exact(d) => s.serialize_u64(*d as u64),
            Distance::NotComputed => s.serialize_str("not computed"),
            Distance::NotApplicable => s.serialize_str("not applicable"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d_x: Distance,
    pub d_z: Distance,
    pub d: Distance,
}

/// Generator matrix of `{u : M u = 0}`.
pub fn dual_space(m: &FqMatrix) -> FqMatrix {
    m.kernel()
}

/// Minimum weight over `span(space) ∖ span(exclude)`; `space` must have
/// independent rows.
pub fn min_weight_outside(space: &FqMatrix, exclude: &FqMatrix, budget: u64) -> Distance {
    let f = space.field().clone();
    let dim = space.rows();
    let q = f.q() as u64;
    let Some(total) = q.checked_pow(dim as u32).filter(|&t| t <= budget) else {
        return Distance::NotComputed;
    };
    let reducer = RowSpaceReducer::new(exclude);
    if reducer.dim() >= dim {
        return Distance::NotApplicable;
    }
    let s = f.s() as u64;
    let mask = q - 1;
    let best = (1..total as usize)
        .into_par_iter()
        .with_min_len(4096)
        .filter_map(|msg| {
            let msg = msg as u64;
            let coeffs: Vec<u32> = (0..dim as u64).map(|j| ((msg >> (s * j)) & mask) as u32).collect();
            let word = space.combine_rows(&coeffs).expect("shape");
            (!reducer.contains(&word)).then(|| weight(&word))
        })
        .min();
    best.map_or(Distance::NotApplicable, Distance::Exact)
}

/// Rows of `space` (independent) that extend a basis of `sub` to one of `space`.
fn complement_rows(sub: &FqMatrix, space: &FqMatrix) -> Result<FqMatrix> {
    let mut acc = sub.clone();
    let mut out = FqMatrix::zeros(space.field(), 0, space.cols());
    let mut rank = acc.rank();
    for r in 0..space.rows() {
        acc.push_row(space.row(r))?;
        let nr = acc.rank();
        if nr > rank {
            rank = nr;
            out.push_row(space.row(r))?;
        } else {
            acc.remove_row(acc.rows() - 1);
        }
    }
    Ok(out)
}

impl CssCode {
    pub fn new(field: &Field, n: usize, gx: FqMatrix, gz: FqMatrix) -> Result<CssCode> {
        for (name, m) in [("gx", &gx), ("gz", &gz)] {
            if m.field() != field {
                return Err(GqError::FieldMismatch(field.modulus(), m.field().modulus()));
            }
            if m.cols() != n {
                return Err(GqError::DimensionMismatch(format!("{name} has {} columns, expected {n}", m.cols())));
            }
            if m.rank() < m.rows() {
                return Err(GqError::RankDeficient(name.into()));
            }
        }
        if !gx.mul(&gz.transpose())?.is_zero() {
            return Err(GqError::NotCommuting("gx·gzᵀ ≠ 0".into()));
        }
        if gx.rows() + gz.rows() > n {
            return Err(GqError::RankDeficient("dim L_X + dim L_Z exceeds n".into()));
        }
        Ok(CssCode { field: field.clone(), n, gx, gz })
    }

    pub fn from_rows(field: &Field, n: usize, gx: &[Vec<u32>], gz: &[Vec<u32>]) -> Result<CssCode> {
        CssCode::new(field, n, FqMatrix::from_rows(field, n, gx)?, FqMatrix::from_rows(field, n, gz)?)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gx(&self) -> &FqMatrix {
        &self.gx
    }

    pub fn gz(&self) -> &FqMatrix {
        &self.gz
    }

    pub fn k(&self) -> usize {
        self.n - self.gx.rows() - self.gz.rows()
    }

    /// `d_X = min |u|` over `L_Z^⊥ ∖ L_X`.
    pub fn distance_x(&self, budget: u64) -> Distance {
        min_weight_outside(&dual_space(&self.gz), &self.gx, budget)
    }

    /// `d_Z = min |u|` over `L_X^⊥ ∖ L_Z`.
    pub fn distance_z(&self, budget: u64) -> Distance {
        min_weight_outside(&dual_space(&self.gx), &self.gz, budget)
    }

    pub fn params(&self, budget: u64) -> CodeParams {
        let k = self.k();
        let (d_x, d_z) = if k == 0 {
            (Distance::NotApplicable, Distance::NotApplicable)
        } else {
            (self.distance_x(budget), self.distance_z(budget))
        };
        let d = match (d_x, d_z) {
            (Distance::Exact(a), Distance::Exact(b)) => Distance::Exact(a.min(b)),
            (Distance::NotApplicable, _) | (_, Distance::NotApplicable) => Distance::NotApplicable,
            _ => Distance::NotComputed,
        };
        CodeParams { n: self.n, k, d_x, d_z, d }
    }

    /// `(z_logicals, x_logicals)`: `k` representatives of `L_X^⊥ / L_Z` and of
    /// `L_Z^⊥ / L_X`, paired so that `x_i · z_j = δ_ij`.
    pub fn logical_spaces(&self) -> Result<(FqMatrix, FqMatrix)> {
        let z = complement_rows(&self.gz, &dual_space(&self.gx))?;
        let x = complement_rows(&self.gx, &dual_space(&self.gz))?;
        if x.rows() != self.k() || z.rows() != self.k() {
            return Err(GqError::Internal("logical count disagrees with k".into()));
        }
        if self.k() == 0 {
            return Ok((z, x));
        }
        let pairing = x.mul(&z.transpose())?;
        let inv = pairing
            .inverse()
            .ok_or_else(|| GqError::Internal("logical pairing is degenerate".into()))?;
        Ok((z, inv.mul(&x)?))
    }
}
