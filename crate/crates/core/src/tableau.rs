//! CSS stabiliser tableaux over F_q with F_q-valued syndromes.

use rand::{Rng, RngExt};
use serde::{Deserialize, Serialize};

use crate::error::{GqError, Result};
use crate::gf2e::Field;
use crate::linalg::FqMatrix;
use crate::pauli::PauliWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    X,
    Z,
}

impl Block {
    pub fn other(self) -> Block {
        match self {
            Block::X => Block::Z,
            Block::Z => Block::X,
        }
    }
}

/// Clifford gates with a CSS-preserving tableau update.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableauGate {
    Cnot { control: usize, target: usize },
    Hadamard(usize),
    Mult { site: usize, delta: u32 },
}

/// Rows `v` with syndromes `σ`: the state obeys `X^{μv}ψ = (-1)^{tr(μσ)}ψ` (and
/// likewise for Z rows) for every μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssTableau {
    field: Field,
    n: usize,
    xrows: FqMatrix,
    zrows: FqMatrix,
    xsyn: Vec<u32>,
    zsyn: Vec<u32>,
}

/// Result of a single Pauli measurement on a tableau.
#[derive(Clone, Debug)]
pub struct Measurement {
    pub outcome: u32,
    pub deterministic: bool,
    pub tableau: CssTableau,
}

impl CssTableau {
    pub fn new(
        field: &Field,
        n: usize,
        xrows: FqMatrix,
        zrows: FqMatrix,
        xsyn: Vec<u32>,
        zsyn: Vec<u32>,
    ) -> Result<CssTableau> {
        for (name, m, syn) in [("X", &xrows, &xsyn), ("Z", &zrows, &zsyn)] {
            if m.field() != field {
                return Err(GqError::FieldMismatch(field.modulus(), m.field().modulus()));
            }
            if m.cols() != n {
                return Err(GqError::DimensionMismatch(format!(
                    "{name} rows have {} columns, expected {n}",
                    m.cols()
                )));
            }
            if syn.len() != m.rows() {
                return Err(GqError::DimensionMismatch(format!(
                    "{name} syndrome has length {} for {} rows",
                    syn.len(),
                    m.rows()
                )));
            }
            for &s in syn {
                field.check(s)?;
            }
            if m.rank() < m.rows() {
                return Err(GqError::RankDeficient(format!("{name} block")));
            }
        }
        if !xrows.mul(&zrows.transpose())?.is_zero() {
            return Err(GqError::NotCommuting("some X row has nonzero dot product with a Z row".into()));
        }
        Ok(CssTableau { field: field.clone(), n, xrows, zrows, xsyn, zsyn })
    }

    pub fn from_rows(
        field: &Field,
        n: usize,
        xrows: &[Vec<u32>],
        zrows: &[Vec<u32>],
        xsyn: Vec<u32>,
        zsyn: Vec<u32>,
    ) -> Result<CssTableau> {
        let x = FqMatrix::from_rows(field, n, xrows)?;
        let z = FqMatrix::from_rows(field, n, zrows)?;
        CssTableau::new(field, n, x, z, xsyn, zsyn)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn xrows(&self) -> &FqMatrix {
        &self.xrows
    }

    pub fn zrows(&self) -> &FqMatrix {
        &self.zrows
    }

    pub fn xsyn(&self) -> &[u32] {
        &self.xsyn
    }

    pub fn zsyn(&self) -> &[u32] {
        &self.zsyn
    }

    pub fn m_x(&self) -> usize {
        self.xrows.rows()
    }

    pub fn m_z(&self) -> usize {
        self.zrows.rows()
    }

    pub fn is_full(&self) -> bool {
        self.m_x() + self.m_z() == self.n
    }

    pub fn rows(&self, block: Block) -> &FqMatrix {
        match block {
            Block::X => &self.xrows,
            Block::Z => &self.zrows,
        }
    }

    pub fn syndromes(&self, block: Block) -> &[u32] {
        match block {
            Block::X => &self.xsyn,
            Block::Z => &self.zsyn,
        }
    }

    fn parts_mut(&mut self, block: Block) -> (&mut FqMatrix, &mut Vec<u32>) {
        match block {
            Block::X => (&mut self.xrows, &mut self.xsyn),
            Block::Z => (&mut self.zrows, &mut self.zsyn),
        }
    }

    fn check_row(&self, block: Block, j: usize) -> Result<()> {
        let m = self.rows(block).rows();
        if j >= m {
            return Err(GqError::DimensionMismatch(format!("row {j} of {m} in {block:?} block")));
        }
        Ok(())
    }

    /// Row `j` and syndrome `σ_j` multiplied by μ.
    pub fn scale_row(&self, block: Block, j: usize, mu: u32) -> Result<CssTableau> {
        self.check_row(block, j)?;
        self.field.check(mu)?;
        if mu == 0 {
            return Err(GqError::InvalidScale);
        }
        let mut t = self.clone();
        let f = self.field.clone();
        let (rows, syn) = t.parts_mut(block);
        rows.scale_row(j, mu);
        syn[j] = f.mul(syn[j], mu);
        Ok(t)
    }

    /// Row `i` added into row `j`, with `σ_j ← σ_j + σ_i`.
    pub fn add_row(&self, block: Block, i: usize, j: usize) -> Result<CssTableau> {
        self.check_row(block, i)?;
        self.check_row(block, j)?;
        if i == j {
            return Err(GqError::InvalidArgument("cannot add a row to itself".into()));
        }
        let mut t = self.clone();
        let (rows, syn) = t.parts_mut(block);
        rows.add_scaled_row(i, j, 1);
        syn[j] ^= syn[i];
        Ok(t)
    }

    /// Reduced row echelon form of each block with syndromes carried along.
    pub fn canonical_form(&self) -> CssTableau {
        let mut t = self.clone();
        for block in [Block::X, Block::Z] {
            let (rows, syn) = t.parts_mut(block);
            let (r, s) = reduce_block(rows, syn, self.n);
            *rows = r;
            *syn = s;
        }
        t
    }

    /// True when both tableaux define the same state (or stabilised subspace).
    pub fn same_state(&self, other: &CssTableau) -> bool {
        self.field == other.field && self.n == other.n && self.canonical_form() == other.canonical_form()
    }

    fn check_site(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(GqError::InvalidGate(format!("site {i} out of range for {} qudits", self.n)));
        }
        Ok(())
    }

    pub fn apply_gate(&self, gate: TableauGate) -> Result<CssTableau> {
        let f = self.field.clone();
        let mut t = self.clone();
        match gate {
            TableauGate::Cnot { control, target } => {
                self.check_site(control)?;
                self.check_site(target)?;
                if control == target {
                    return Err(GqError::InvalidGate("CNOT control equals target".into()));
                }
                for r in 0..t.m_x() {
                    let v = t.xrows.get(r, target) ^ t.xrows.get(r, control);
                    t.xrows.set(r, target, v);
                }
                for r in 0..t.m_z() {
                    let v = t.zrows.get(r, control) ^ t.zrows.get(r, target);
                    t.zrows.set(r, control, v);
                }
            }
            TableauGate::Mult { site, delta } => {
                self.check_site(site)?;
                f.check(delta)?;
                if delta == 0 {
                    return Err(GqError::NonUnitary("multiplication by zero".into()));
                }
                let dinv = f.inv(delta)?;
                for r in 0..t.m_x() {
                    t.xrows.set(r, site, f.mul(t.xrows.get(r, site), delta));
                }
                for r in 0..t.m_z() {
                    t.zrows.set(r, site, f.mul(t.zrows.get(r, site), dinv));
                }
            }
            TableauGate::Hadamard(site) => {
                self.check_site(site)?;
                let moved_x = t.isolate_unit_row(Block::X, site)?;
                let moved_z = t.isolate_unit_row(Block::Z, site)?;
                if let Some((row, s)) = moved_x {
                    t.zrows.push_row(&row)?;
                    t.zsyn.push(s);
                }
                if let Some((row, s)) = moved_z {
                    t.xrows.push_row(&row)?;
                    t.xsyn.push(s);
                }
            }
        }
        Ok(t)
    }

    /// Rewrites `block` so that column `i` is nonzero only in a row equal to
    /// `e_i`, removes that row, and returns it with its syndrome. `None` when the
    /// column is already zero.
    fn isolate_unit_row(&mut self, block: Block, i: usize) -> Result<Option<(Vec<u32>, u32)>> {
        let n = self.n;
        let f = self.field.clone();
        let (rows, syn) = self.parts_mut(block);
        if (0..rows.rows()).all(|r| rows.get(r, i) == 0) {
            return Ok(None);
        }
        let mut e = vec![0u32; n];
        e[i] = 1;
        let c = rows.row_space_coefficients(&e)?.ok_or(GqError::NotCssPreserving(i))?;
        let j = c.iter().position(|&v| v != 0).expect("e_i is nonzero");
        let sigma = c.iter().zip(syn.iter()).fold(0, |acc, (&a, &s)| acc ^ f.mul(a, s));
        // Row j becomes e_i; every other row sheds its column-i entry.
        let combo = rows.combine_rows(&c)?;
        rows.row_mut(j).copy_from_slice(&combo);
        syn[j] = sigma;
        for r in 0..rows.rows() {
            if r != j {
                let a = rows.get(r, i);
                if a != 0 {
                    rows.add_scaled_row(j, r, a);
                    syn[r] ^= f.mul(a, sigma);
                }
            }
        }
        rows.remove_row(j);
        syn.remove(j);
        Ok(Some((e, sigma)))
    }

    /// Measures a pure-type Pauli, sampling the outcome uniformly when it is not
    /// determined. The word's sign is ignored.
    pub fn measure<R: Rng + ?Sized>(&self, p: &PauliWord, rng: &mut R) -> Result<Measurement> {
        let q = self.field.q() as u32;
        self.measure_with(p, |_| rng.random_range(0..q))
    }

    /// Like [`CssTableau::measure`] but the random outcome is supplied by `choose`.
    pub fn measure_with(&self, p: &PauliWord, choose: impl FnOnce(&Field) -> u32) -> Result<Measurement> {
        if !self.is_full() {
            return Err(GqError::FullTableauRequired);
        }
        if p.field() != &self.field {
            return Err(GqError::FieldMismatch(self.field.modulus(), p.field().modulus()));
        }
        if p.n() != self.n {
            return Err(GqError::DimensionMismatch(format!("{}-qudit word on {} qudits", p.n(), self.n)));
        }
        let (w, is_z) = p.pure_vector()?;
        let same = if is_z { Block::Z } else { Block::X };
        let f = self.field.clone();
        if let Some(c) = self.rows(same).row_space_coefficients(w)? {
            let outcome = c
                .iter()
                .zip(self.syndromes(same))
                .fold(0, |acc, (&a, &s)| acc ^ f.mul(a, s));
            return Ok(Measurement { outcome, deterministic: true, tableau: self.clone() });
        }
        let opp = same.other();
        let orows = self.rows(opp);
        let overlaps: Vec<u32> = (0..orows.rows()).map(|r| f.dot(w, orows.row(r))).collect();
        let k = overlaps
            .iter()
            .position(|&d| d != 0)
            .ok_or_else(|| GqError::Internal("full tableau with undetermined commuting Pauli".into()))?;
        let outcome = f.check(choose(&f))?;
        let cinv = f.inv(overlaps[k])?;
        let mut t = self.clone();
        {
            let (rows, syn) = t.parts_mut(opp);
            let sk = syn[k];
            for (r, &d) in overlaps.iter().enumerate() {
                if r != k && d != 0 {
                    let factor = f.mul(d, cinv);
                    rows.add_scaled_row(k, r, factor);
                    syn[r] ^= f.mul(factor, sk);
                }
            }
            rows.remove_row(k);
            syn.remove(k);
        }
        let (rows, syn) = t.parts_mut(same);
        rows.push_row(w)?;
        syn.push(outcome);
        Ok(Measurement { outcome, deterministic: false, tableau: t })
    }
}

/// RREF of `[rows | syn]` with pivots confined to the first `n` columns.
fn reduce_block(rows: &FqMatrix, syn: &[u32], n: usize) -> (FqMatrix, Vec<u32>) {
    let f = rows.field().clone();
    let mut aug = FqMatrix::zeros(&f, rows.rows(), n + 1);
    for r in 0..rows.rows() {
        aug.row_mut(r)[..n].copy_from_slice(rows.row(r));
        aug.set(r, n, syn[r]);
    }
    let pivots = aug.rref_in_place(n);
    let m = pivots.len();
    let mut out = FqMatrix::zeros(&f, m, n);
    let mut s = Vec::with_capacity(m);
    for r in 0..m {
        out.row_mut(r).copy_from_slice(&aug.row(r)[..n]);
        s.push(aug.get(r, n));
    }
    (out, s)
}

/// Random full tableau: a random-rank X block, its dual as the Z block, a
/// random recombination of the Z rows and uniform syndromes.
pub fn random_full_tableau<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Result<CssTableau> {
    let q = field.q() as u32;
    let m_x = rng.random_range(0..=n);
    let xrows = loop {
        let rows: Vec<Vec<u32>> = (0..m_x).map(|_| (0..n).map(|_| rng.random_range(0..q)).collect()).collect();
        let m = FqMatrix::from_rows(field, n, &rows)?;
        if m.rank() == m_x {
            break m;
        }
    };
    let mut zrows = xrows.kernel();
    for _ in 0..2 * n {
        let (i, j) = (rng.random_range(0..zrows.rows().max(1)), rng.random_range(0..zrows.rows().max(1)));
        if i != j {
            zrows.add_scaled_row(i, j, rng.random_range(0..q));
        }
    }
    let xsyn = (0..xrows.rows()).map(|_| rng.random_range(0..q)).collect();
    let zsyn = (0..zrows.rows()).map(|_| rng.random_range(0..q)).collect();
    CssTableau::new(field, n, xrows, zrows, xsyn, zsyn)
}

/// Outcome of the cat-state syndrome extraction gadget.
#[derive(Clone, Debug)]
pub struct CatGadgetRun {
    pub outcomes: [u32; 4],
    /// `Σ γ_i η_i`.
    pub recovered: u32,
    /// Whether the fourth measurement was deterministic.
    pub last_deterministic: bool,
    /// The value the fourth outcome must take: `γ_4^{-1}(η + Σ_{j<4} γ_j η_j)`.
    pub predicted_last: u32,
    /// Whether the X block after three measurements matches the expected rows.
    pub intermediate_matches: bool,
    pub final_tableau: CssTableau,
}

/// Tableau of the 4-qudit cat resource followed by a 4-qudit code block carrying
/// X row `γ` with syndrome `eta` and three further Z rows with syndromes `code_zsyn`.
pub fn cat_gadget_tableau(field: &Field, gammas: [u32; 4], eta: u32, code_zsyn: [u32; 3]) -> Result<CssTableau> {
    for &g in &gammas {
        field.check(g)?;
        if g == 0 {
            return Err(GqError::InvalidScale);
        }
    }
    let [g1, g2, g3, g4] = gammas;
    let cat_z = [[g2, g1, 0, 0], [0, g3, g2, 0], [0, 0, g4, g3]];
    let mut xrows = Vec::new();
    let mut zrows = Vec::new();
    xrows.push([&gammas[..], &[0; 4]].concat());
    xrows.push([&[0; 4][..], &gammas[..]].concat());
    for z in &cat_z {
        zrows.push([&z[..], &[0; 4]].concat());
    }
    for z in &cat_z {
        zrows.push([&[0; 4][..], &z[..]].concat());
    }
    let zsyn = [vec![0; 3], code_zsyn.to_vec()].concat();
    CssTableau::from_rows(field, 8, &xrows, &zrows, vec![0, eta], zsyn)
}

/// Runs the four `XX` measurements between cat qudit `j` and code qudit `4 + j`.
pub fn run_cat_gadget<R: Rng + ?Sized>(
    field: &Field,
    gammas: [u32; 4],
    eta: u32,
    rng: &mut R,
) -> Result<CatGadgetRun> {
    let q = field.q() as u32;
    let code_zsyn = [rng.random_range(0..q), rng.random_range(0..q), rng.random_range(0..q)];
    let mut t = cat_gadget_tableau(field, gammas, eta, code_zsyn)?;
    let mut outcomes = [0u32; 4];
    let mut intermediate_matches = false;
    let mut last_deterministic = false;
    for j in 0..4 {
        if j == 3 {
            let mut rows = vec![[&gammas[..], &[0; 4]].concat()];
            let mut syn = vec![0];
            for (i, &o) in outcomes.iter().enumerate().take(3) {
                let mut r = vec![0; 8];
                r[i] = 1;
                r[4 + i] = 1;
                rows.push(r);
                syn.push(o);
            }
            rows.push([&[0; 4][..], &gammas[..]].concat());
            syn.push(eta);
            let expected = FqMatrix::from_rows(field, 8, &rows)?;
            let a = reduce_block(t.rows(Block::X), t.syndromes(Block::X), 8);
            let b = reduce_block(&expected, &syn, 8);
            intermediate_matches = a == b;
        }
        let mut w = vec![0; 8];
        w[j] = 1;
        w[4 + j] = 1;
        let m = t.measure(&PauliWord::x_type(field, w)?, rng)?;
        outcomes[j] = m.outcome;
        if j == 3 {
            last_deterministic = m.deterministic;
        }
        t = m.tableau;
    }
    let recovered = gammas.iter().zip(&outcomes).fold(0, |acc, (&g, &o)| acc ^ field.mul(g, o));
    let partial = (0..3).fold(eta, |acc, i| acc ^ field.mul(gammas[i], outcomes[i]));
    let predicted_last = field.div(partial, gammas[3])?;
    Ok(CatGadgetRun {
        outcomes,
        recovered,
        last_deterministic,
        predicted_last,
        intermediate_matches,
        final_tableau: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> Field {
        Field::with_degree(2).unwrap()
    }

    #[test]
    fn validation_errors() {
        let f = f4();
        let dup = CssTableau::from_rows(&f, 2, &[vec![1, 1], vec![1, 1]], &[], vec![0, 0], vec![]);
        assert!(matches!(dup, Err(GqError::RankDeficient(_))));
        let nc = CssTableau::from_rows(&f, 2, &[vec![1, 0]], &[vec![1, 0]], vec![0], vec![0]);
        assert!(matches!(nc, Err(GqError::NotCommuting(_))));
    }

    #[test]
    fn cat_tableau_is_valid() {
        let f = Field::with_degree(3).unwrap();
        let t = cat_gadget_tableau(&f, [3, 5, 6, 7], 4, [0, 1, 2]).unwrap();
        assert!(t.is_full());
    }

    #[test]
    fn walkthrough_rewrites_share_canonical_form() {
        let f = Field::with_degree(3).unwrap();
        let g = [3u32, 5, 6, 7];
        let (e1, e2, e3, eta) = (1u32, 6, 2, 5);
        let mut rows = vec![[&g[..], &[0; 4]].concat()];
        for i in 0..3 {
            let mut r = vec![0; 8];
            r[i] = 1;
            r[4 + i] = 1;
            rows.push(r);
        }
        rows.push([&[0; 4][..], &g[..]].concat());
        let t0 = CssTableau::from_rows(&f, 8, &rows, &[], vec![0, e1, e2, e3, eta], vec![]).unwrap();
        // scale rows 2-4 by γ_i
        let mut t1 = t0.clone();
        for i in 0..3 {
            t1 = t1.scale_row(Block::X, i + 1, g[i]).unwrap();
        }
        assert_eq!(t1.xsyn()[1..4], [f.mul(g[0], e1), f.mul(g[1], e2), f.mul(g[2], e3)]);
        // add rows 2,3,4 and 5 into row 1
        let mut t2 = t1.clone();
        for i in 1..5 {
            t2 = t2.add_row(Block::X, i, 0).unwrap();
        }
        let expected = eta ^ f.mul(g[0], e1) ^ f.mul(g[1], e2) ^ f.mul(g[2], e3);
        assert_eq!(t2.xsyn()[0], expected);
        assert_eq!(t2.xrows().row(0), &[0, 0, 0, g[3], 0, 0, 0, g[3]]);
        let t3 = t2.scale_row(Block::X, 0, f.inv(g[3]).unwrap()).unwrap();
        let c = t0.canonical_form();
        for t in [&t1, &t2, &t3] {
            assert_eq!(t.canonical_form(), c);
        }
        assert_eq!(c.canonical_form(), c);
    }

    #[test]
    fn scale_by_one_and_zero() {
        let f = f4();
        let t = CssTableau::from_rows(&f, 2, &[vec![1, 1]], &[vec![1, 1]], vec![2], vec![3]).unwrap();
        assert_eq!(t.scale_row(Block::X, 0, 1).unwrap(), t);
        assert_eq!(t.scale_row(Block::X, 0, 0).unwrap_err(), GqError::InvalidScale);
    }

    #[test]
    fn qubit_cnot_rule() {
        let f = Field::binary();
        // |00> stabilised by Z1, Z2; after CNOT still |00>; |+0> -> Bell
        let t = CssTableau::from_rows(&f, 2, &[vec![1, 0]], &[vec![0, 1]], vec![0], vec![0]).unwrap();
        let u = t.apply_gate(TableauGate::Cnot { control: 0, target: 1 }).unwrap();
        assert_eq!(u.xrows().row(0), &[1, 1]);
        assert_eq!(u.zrows().row(0), &[1, 1]);
    }

    #[test]
    fn mult_by_one_is_identity() {
        let f = f4();
        let t = CssTableau::from_rows(&f, 2, &[vec![1, 2]], &[vec![2, 1]], vec![1], vec![3]).unwrap();
        assert_eq!(t.apply_gate(TableauGate::Mult { site: 1, delta: 1 }).unwrap(), t);
        assert!(matches!(
            t.apply_gate(TableauGate::Mult { site: 1, delta: 0 }),
            Err(GqError::NonUnitary(_))
        ));
    }

    #[test]
    fn hadamard_moves_unit_rows_or_refuses() {
        let f = f4();
        let t = CssTableau::from_rows(&f, 2, &[vec![1, 0]], &[vec![0, 1]], vec![2], vec![3]).unwrap();
        let h = t.apply_gate(TableauGate::Hadamard(0)).unwrap();
        assert_eq!(h.m_x(), 0);
        assert_eq!(h.m_z(), 2);
        assert!(h.same_state(
            &CssTableau::from_rows(&f, 2, &[], &[vec![0, 1], vec![1, 0]], vec![], vec![3, 2]).unwrap()
        ));
        let bell = CssTableau::from_rows(&f, 2, &[vec![1, 1]], &[vec![1, 1]], vec![0], vec![0]).unwrap();
        assert_eq!(bell.apply_gate(TableauGate::Hadamard(0)).unwrap_err(), GqError::NotCssPreserving(0));
    }

    #[test]
    fn measuring_existing_row_is_deterministic() {
        let f = f4();
        let t = CssTableau::from_rows(&f, 2, &[vec![1, 2]], &[vec![2, 1]], vec![3], vec![1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = PauliWord::x_type(&f, vec![2, 3]).unwrap(); // 2·(1,2)
        let m = t.measure(&p, &mut rng).unwrap();
        assert!(m.deterministic);
        assert_eq!(m.outcome, f.mul(2, 3));
        assert_eq!(m.tableau, t);
    }

    #[test]
    fn measure_requires_full_and_pure() {
        let f = f4();
        let t = CssTableau::from_rows(&f, 2, &[vec![1, 1]], &[], vec![0], vec![]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = PauliWord::x_type(&f, vec![1, 0]).unwrap();
        assert_eq!(t.measure(&p, &mut rng).unwrap_err(), GqError::FullTableauRequired);
        let full = CssTableau::from_rows(&f, 2, &[vec![1, 1]], &[vec![1, 1]], vec![0], vec![0]).unwrap();
        let mixed = PauliWord::new(&f, vec![1, 0], vec![0, 1], false).unwrap();
        assert_eq!(full.measure(&mixed, &mut rng).unwrap_err(), GqError::PureTypeRequired);
    }

    #[test]
    fn random_measurement_keeps_invariants() {
        let f = f4();
        let t = CssTableau::from_rows(&f, 3, &[vec![1, 1, 0]], &[vec![1, 1, 0], vec![0, 0, 1]], vec![0], vec![2, 1])
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = PauliWord::x_type(&f, vec![0, 0, 1]).unwrap();
        let m = t.measure(&p, &mut rng).unwrap();
        assert!(!m.deterministic);
        let r = &m.tableau;
        assert!(r.is_full());
        // revalidate through the constructor
        CssTableau::new(&f, 3, r.xrows().clone(), r.zrows().clone(), r.xsyn().to_vec(), r.zsyn().to_vec()).unwrap();
        // repeated measurement is now deterministic with the same outcome
        let again = r.measure(&p, &mut rng).unwrap();
        assert!(again.deterministic);
        assert_eq!(again.outcome, m.outcome);
    }

    #[test]
    fn random_tableaux_are_full() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in 1..=3 {
            let f = Field::with_degree(s).unwrap();
            for n in 1..=4 {
                let t = random_full_tableau(&f, n, &mut rng).unwrap();
                assert!(t.is_full());
            }
        }
    }

    #[test]
    fn cat_gadget_qubit_trivial() {
        let f = Field::binary();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let run = run_cat_gadget(&f, [1, 1, 1, 1], 0, &mut rng).unwrap();
        assert_eq!(run.recovered, 0);
        assert!(run.last_deterministic);
        assert!(run.intermediate_matches);
    }

    #[test]
    fn cat_gadget_rejects_zero_gamma() {
        let f = f4();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(run_cat_gadget(&f, [1, 0, 1, 1], 0, &mut rng).unwrap_err(), GqError::InvalidScale);
    }

    #[test]
    fn cat_gadget_recovers_planted_syndrome() {
        let f = Field::with_degree(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = [1 + rng.random_range(0..7), 1 + rng.random_range(0..7), 1 + rng.random_range(0..7), 1 + rng.random_range(0..7)];
            let eta = rng.random_range(0..8);
            let run = run_cat_gadget(&f, g, eta, &mut rng).unwrap();
            assert_eq!(run.recovered, eta);
            assert_eq!(run.outcomes[3], run.predicted_last);
            assert!(run.last_deterministic && run.intermediate_matches);
        }
    }
}
