//! Generalized Reed-Solomon codes and quantum Reed-Solomon CSS codes.

use serde::{Deserialize, Serialize};

use crate::css::CssCode;
use crate::error::{GqError, Result};
use crate::gf2e::Field;
use crate::linalg::{weight, FqMatrix};
use crate::poly::Poly;

/// `GRS_k(α, v) = {(v_1 f(α_1), …, v_n f(α_n)) : deg f < k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsCode {
    field: Field,
    k: usize,
    alpha: Vec<u32>,
    v: Vec<u32>,
}

/// The first `n` element codes.
pub fn default_alpha(field: &Field, n: usize) -> Result<Vec<u32>> {
    if n > field.q() {
        return Err(GqError::InvalidArgument(format!("n = {n} exceeds q = {}", field.q())));
    }
    Ok((0..n as u32).collect())
}

/// `u_i = (v_i ∏_{j≠i} (α_i − α_j))^{-1}`.
pub fn dual_multipliers(field: &Field, alpha: &[u32], v: &[u32]) -> Result<Vec<u32>> {
    alpha
        .iter()
        .zip(v)
        .enumerate()
        .map(|(i, (&ai, &vi))| {
            let prod = alpha
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(vi, |acc, (_, &aj)| field.mul(acc, ai ^ aj));
            field.inv(prod)
        })
        .collect()
}

impl GrsCode {
    pub fn new(field: &Field, k: usize, alpha: Vec<u32>, v: Vec<u32>) -> Result<GrsCode> {
        let n = alpha.len();
        if v.len() != n {
            return Err(GqError::DimensionMismatch(format!("{} multipliers for {n} points", v.len())));
        }
        if n > field.q() {
            return Err(GqError::InvalidArgument(format!("n = {n} exceeds q = {}", field.q())));
        }
        if k > n {
            return Err(GqError::InvalidArgument(format!("k = {k} exceeds n = {n}")));
        }
        for &a in alpha.iter().chain(&v) {
            field.check(a)?;
        }
        let mut sorted = alpha.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(GqError::InvalidArgument("evaluation points must be distinct".into()));
        }
        if v.contains(&0) {
            return Err(GqError::InvalidArgument("multipliers must be nonzero".into()));
        }
        Ok(GrsCode { field: field.clone(), k, alpha, v })
    }

    /// `GRS_k` at the first `n` points with unit multipliers.
    pub fn standard(field: &Field, n: usize, k: usize) -> Result<GrsCode> {
        GrsCode::new(field, k, default_alpha(field, n)?, vec![1; n])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn v(&self) -> &[u32] {
        &self.v
    }

    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    /// Row `j` is `(v_i α_i^j)_i`.
    pub fn generator_matrix(&self) -> FqMatrix {
        let f = &self.field;
        let rows: Vec<Vec<u32>> = (0..self.k)
            .map(|j| {
                self.alpha
                    .iter()
                    .zip(&self.v)
                    .map(|(&a, &v)| f.mul(v, f.pow(a, j as u64)))
                    .collect()
            })
            .collect();
        FqMatrix::from_rows(f, self.n(), &rows).expect("valid entries")
    }

    pub fn encode(&self, msg: &[u32]) -> Result<Vec<u32>> {
        if msg.len() != self.k {
            return Err(GqError::DimensionMismatch(format!("message of length {} for k = {}", msg.len(), self.k)));
        }
        for &m in msg {
            self.field.check(m)?;
        }
        Ok(self.encode_poly(&Poly::new(msg.to_vec())))
    }

    fn encode_poly(&self, p: &Poly) -> Vec<u32> {
        let f = &self.field;
        self.alpha.iter().zip(&self.v).map(|(&a, &v)| f.mul(v, p.eval(f, a))).collect()
    }

    pub fn dual_multipliers(&self) -> Vec<u32> {
        dual_multipliers(&self.field, &self.alpha, &self.v).expect("distinct points, nonzero multipliers")
    }

    /// `GRS_{n−k}(α, u)`.
    pub fn dual(&self) -> GrsCode {
        GrsCode {
            field: self.field.clone(),
            k: self.n() - self.k,
            alpha: self.alpha.clone(),
            v: self.dual_multipliers(),
        }
    }

    /// `η ∏_{β ∈ roots} (x − β)` encoded; weight `n − k + 1`.
    pub fn min_weight_codeword(&self, roots: &[u32], eta: u32) -> Result<Vec<u32>> {
        if self.k == 0 {
            return Err(GqError::InvalidArgument("the zero code has no nonzero codewords".into()));
        }
        if roots.len() != self.k - 1 {
            return Err(GqError::InvalidSupport(format!("need {} roots, got {}", self.k - 1, roots.len())));
        }
        let mut seen = roots.to_vec();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(GqError::InvalidSupport("roots must be distinct".into()));
        }
        if let Some(r) = roots.iter().find(|r| !self.alpha.contains(r)) {
            return Err(GqError::InvalidSupport(format!("root {r} is not an evaluation point")));
        }
        self.field.check(eta)?;
        if eta == 0 {
            return Err(GqError::InvalidArgument("η must be nonzero".into()));
        }
        Ok(self.encode_poly(&Poly::from_roots(&self.field, roots).scale(&self.field, eta)))
    }

    /// Unique decoding up to `⌊(n−k)/2⌋` errors by interpolation and a partial
    /// extended Euclidean algorithm. Returns `(codeword, error)`.
    pub fn decode(&self, received: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
        let f = &self.field;
        let n = self.n();
        if received.len() != n {
            return Err(GqError::DimensionMismatch(format!("received word of length {} for n = {n}", received.len())));
        }
        for &r in received {
            f.check(r)?;
        }
        let k = self.k;
        if k == 0 {
            return Ok((vec![0; n], received.to_vec()));
        }
        let scaled: Vec<u32> = received
            .iter()
            .zip(&self.v)
            .map(|(&r, &v)| f.div(r, v))
            .collect::<Result<_>>()?;
        let g0 = Poly::from_roots(f, &self.alpha);
        let g1 = Poly::interpolate(f, &self.alpha, &scaled)?;
        // Invariant: r_i = s_i g0 + t_i g1; stop once 2·deg(r) < n + k.
        let (mut r_prev, mut r_cur) = (g0, g1);
        let (mut t_prev, mut t_cur) = (Poly::zero(), Poly::constant(1));
        while r_cur.degree().is_some_and(|d| 2 * d >= n + k) {
            let (quot, rem) = r_prev.div_rem(f, &r_cur)?;
            let t_next = t_prev.add(&quot.mul(f, &t_cur));
            r_prev = std::mem::replace(&mut r_cur, rem);
            t_prev = std::mem::replace(&mut t_cur, t_next);
        }
        let (msg, rem) = r_cur.div_rem(f, &t_cur)?;
        if !rem.is_zero() || msg.degree().is_some_and(|d| d >= k) {
            return Err(GqError::DecodeFailure);
        }
        let codeword = self.encode_poly(&msg);
        let error: Vec<u32> = received.iter().zip(&codeword).map(|(a, b)| a ^ b).collect();
        if 2 * weight(&error) > n - k {
            return Err(GqError::DecodeFailure);
        }
        Ok((codeword, error))
    }

    /// Number of codewords of each weight `0..=n`, by enumerating all `q^k`.
    pub fn weight_distribution(&self) -> Vec<u64> {
        weight_distribution(&self.generator_matrix())
    }
}

/// Weight distribution of the row space of `g` by exhaustive enumeration.
pub fn weight_distribution(g: &FqMatrix) -> Vec<u64> {
    let f = g.field();
    let s = f.s() as u64;
    let q = f.q() as u64;
    let mut counts = vec![0u64; g.cols() + 1];
    for msg in 0..q.pow(g.rows() as u32) {
        let coeffs: Vec<u32> = (0..g.rows() as u64).map(|j| ((msg >> (s * j)) & (q - 1)) as u32).collect();
        counts[weight(&g.combine_rows(&coeffs).expect("shape"))] += 1;
    }
    counts
}

fn binomial(n: u64, k: u64) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128)? / (i + 1) as i128;
    }
    Some(acc)
}

/// `C(n,w)(q−1) Σ_{j=0}^{w−d} (−1)^j C(w−1,j) q^{w−d−j}` with `d = n − k + 1`.
pub fn mds_weight_count(n: u64, k: u64, q: u64, w: u64) -> Result<u128> {
    if k == 0 || k > n {
        return Err(GqError::InvalidArgument(format!("need 1 ≤ k ≤ n (k = {k}, n = {n})")));
    }
    let d = n - k + 1;
    if w < d {
        return Err(GqError::WeightBelowDistance { w: w as usize, d: d as usize });
    }
    if w > n {
        return Err(GqError::InvalidArgument(format!("weight {w} exceeds n = {n}")));
    }
    let overflow = || GqError::InvalidArgument("weight count overflows".into());
    let q = q as i128;
    let mut sum: i128 = 0;
    for j in 0..=(w - d) {
        let term = binomial(w - 1, j)
            .and_then(|b| b.checked_mul(q.checked_pow((w - d - j) as u32)?))
            .ok_or_else(overflow)?;
        sum = if j % 2 == 0 { sum.checked_add(term) } else { sum.checked_sub(term) }.ok_or_else(overflow)?;
    }
    let total = binomial(n, w)
        .and_then(|b| b.checked_mul(q - 1))
        .and_then(|b| b.checked_mul(sum))
        .ok_or_else(overflow)?;
    u128::try_from(total).map_err(|_| GqError::Internal("negative weight count".into()))
}

/// `QRS_{k1,k2}(α, v) = CSS(GRS_{k1}(α, v), GRS_{n−k2}(α, u))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QrsCode {
    pub k1: usize,
    pub k2: usize,
    /// `L_X = GRS_{k1}(α, v)`.
    pub inner: GrsCode,
    /// `L_Z^⊥ = GRS_{k2}(α, v)`.
    pub outer: GrsCode,
    pub css: CssCode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QrsMeta {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub alpha: Vec<u32>,
    pub v: Vec<u32>,
}

impl QrsCode {
    pub fn new(field: &Field, k1: usize, k2: usize, alpha: Vec<u32>, v: Vec<u32>) -> Result<QrsCode> {
        if k1 > k2 {
            return Err(GqError::InvalidNesting { k1, k2 });
        }
        let inner = GrsCode::new(field, k1, alpha.clone(), v.clone())?;
        let outer = GrsCode::new(field, k2, alpha, v)?;
        let lz = outer.dual();
        let n = inner.n();
        let css = CssCode::new(field, n, inner.generator_matrix(), lz.generator_matrix())?;
        Ok(QrsCode { k1, k2, inner, outer, css })
    }

    /// Default points (first `n` codes) and unit multipliers.
    pub fn standard(field: &Field, n: usize, k1: usize, k2: usize) -> Result<QrsCode> {
        QrsCode::new(field, k1, k2, default_alpha(field, n)?, vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn k(&self) -> usize {
        self.k2 - self.k1
    }

    pub fn field(&self) -> &Field {
        self.inner.field()
    }

    /// `n − k2 + 1`.
    pub fn formula_d_x(&self) -> usize {
        self.n() - self.k2 + 1
    }

    /// `k1 + 1`.
    pub fn formula_d_z(&self) -> usize {
        self.k1 + 1
    }

    /// Every generator of `GRS_{k1}` lies in `GRS_{k2}`.
    pub fn nesting_holds(&self) -> bool {
        let outer = self.outer.generator_matrix();
        let inner = self.inner.generator_matrix();
        (0..inner.rows()).all(|r| outer.contains_in_row_space(inner.row(r)).unwrap_or(false))
    }

    pub fn meta(&self) -> QrsMeta {
        QrsMeta {
            n: self.n(),
            k1: self.k1,
            k2: self.k2,
            alpha: self.inner.alpha().to_vec(),
            v: self.inner.v().to_vec(),
        }
    }

    /// Code in which Z errors are decoded: `L_X^⊥ = GRS_{n−k1}(α, u)`.
    pub fn z_error_code(&self) -> GrsCode {
        self.inner.dual()
    }

    /// Code in which X errors are decoded: `L_Z^⊥ = GRS_{k2}(α, v)`.
    pub fn x_error_code(&self) -> GrsCode {
        self.outer.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::css::{Distance, DEFAULT_DISTANCE_BUDGET};
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> Field {
        Field::with_degree(2).unwrap()
    }

    #[test]
    fn f4_generator_example() {
        let f = f4();
        let c = GrsCode::new(&f, 2, vec![0, 1, 2], vec![1, 1, 1]).unwrap();
        assert_eq!(c.generator_matrix().to_rows(), vec![vec![1, 1, 1], vec![0, 1, 2]]);
        assert_eq!(c.encode(&[0, 1]).unwrap(), vec![0, 1, 2]);
        assert_eq!(c.encode(&[0, 0]).unwrap(), vec![0, 0, 0]);
        let k1 = GrsCode::new(&f, 1, vec![0, 1, 2], vec![1, 1, 1]).unwrap();
        assert_eq!(k1.generator_matrix().to_rows(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn construction_errors() {
        let f = f4();
        assert!(GrsCode::new(&f, 2, vec![0, 0, 1], vec![1, 1, 1]).is_err());
        assert!(GrsCode::new(&f, 2, vec![0, 1, 2], vec![1, 0, 1]).is_err());
        assert!(GrsCode::new(&f, 4, vec![0, 1, 2], vec![1, 1, 1]).is_err());
        assert_eq!(
            QrsCode::standard(&f, 4, 3, 2).unwrap_err(),
            GqError::InvalidNesting { k1: 3, k2: 2 }
        );
    }

    #[test]
    fn dual_is_orthogonal() {
        let f = f4();
        let c = GrsCode::new(&f, 2, vec![0, 1, 2], vec![1, 1, 1]).unwrap();
        let d = c.dual();
        assert!(c.generator_matrix().mul(&d.generator_matrix().transpose()).unwrap().is_zero());
        assert!(d.dual().generator_matrix().same_row_space(&c.generator_matrix()).unwrap());
        let f8 = Field::with_degree(3).unwrap();
        for k in 0..=8 {
            let c = GrsCode::standard(&f8, 8, k).unwrap();
            assert!(c.generator_matrix().mul(&c.dual().generator_matrix().transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn weight_formula_small() {
        assert_eq!(mds_weight_count(3, 2, 4, 2).unwrap(), 9);
        assert_eq!(mds_weight_count(3, 2, 4, 3).unwrap(), 6);
        assert_eq!(
            mds_weight_count(3, 2, 4, 1).unwrap_err(),
            GqError::WeightBelowDistance { w: 1, d: 2 }
        );
        let f = f4();
        let c = GrsCode::new(&f, 2, vec![0, 1, 2], vec![1, 1, 1]).unwrap();
        assert_eq!(c.weight_distribution(), vec![1, 0, 9, 6]);
    }

    #[test]
    fn min_weight_words() {
        let f = f4();
        let c = GrsCode::new(&f, 2, vec![0, 1, 2], vec![1, 1, 1]).unwrap();
        let w = c.min_weight_codeword(&[0], 1).unwrap();
        assert_eq!(w[0], 0);
        assert_eq!(weight(&w), 2);
        assert!(matches!(c.min_weight_codeword(&[3], 1), Err(GqError::InvalidSupport(_))));
        let k1 = GrsCode::new(&f, 1, vec![0, 1, 2], vec![1, 1, 1]).unwrap();
        assert_eq!(weight(&k1.min_weight_codeword(&[], 3).unwrap()), 3);
    }

    #[test]
    fn decoder_corrects_within_radius() {
        let f = Field::with_degree(3).unwrap();
        let c = GrsCode::new(&f, 3, (1..8).collect(), vec![1, 2, 3, 4, 5, 6, 7]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let msg: Vec<u32> = (0..3).map(|_| rng.random_range(0..8)).collect();
            let cw = c.encode(&msg).unwrap();
            let mut r = cw.clone();
            let nerr = rng.random_range(0..=2);
            let mut pos: Vec<usize> = (0..7).collect();
            for i in 0..nerr {
                let j = rng.random_range(i..7);
                pos.swap(i, j);
                r[pos[i]] ^= rng.random_range(1..8);
            }
            let (got, err) = c.decode(&r).unwrap();
            assert_eq!(got, cw);
            assert_eq!(weight(&err), nerr);
        }
    }

    #[test]
    fn decoder_never_returns_far_codeword() {
        let f = f4();
        let c = GrsCode::new(&f, 1, vec![0, 1, 2, 3], vec![1, 1, 1, 1]).unwrap();
        // radius 1; try every word
        for idx in 0..256u32 {
            let r: Vec<u32> = (0..4).map(|i| (idx >> (2 * i)) & 3).collect();
            if let Ok((cw, err)) = c.decode(&r) {
                assert!(weight(&err) <= 1);
                assert_eq!(r.iter().zip(&cw).map(|(a, b)| a ^ b).collect::<Vec<_>>(), err);
            }
        }
    }

    #[test]
    fn qrs_small_instance() {
        let f = f4();
        let q = QrsCode::standard(&f, 4, 1, 3).unwrap();
        assert!(q.nesting_holds());
        let p = q.css.params(DEFAULT_DISTANCE_BUDGET);
        assert_eq!(p.k, 2);
        assert_eq!(p.d_x, Distance::Exact(q.formula_d_x()));
        assert_eq!(p.d_z, Distance::Exact(q.formula_d_z()));
        assert_eq!(QrsCode::standard(&f, 4, 2, 2).unwrap().k(), 0);
    }
}
