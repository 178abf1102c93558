//! Arithmetic in binary extension fields F_{2^s}.
//!
//! A [`Field`] is built from an irreducible modulus `f(x)` over F_2. Elements
//! are `s`-bit codes: bit `i` is the coefficient of `α^i`, where `α` is the
//! image of `x` (code 2). Hot paths work on raw `u32` codes through the field
//! handle; [`FieldElement`] is the checked value type that refuses to mix
//! elements of different fields.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{GqError, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 31;

/// Degree up to which log/antilog tables are built.
const TABLE_DEGREE: u32 = 16;

/// Polynomial over F_2 packed into a `u64`; bit `i` is the coefficient of `x^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyOverF2(pub u64);

impl PolyOverF2 {
    pub fn degree(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros())
        }
    }

    /// Carry-less product. Caller guarantees the result fits in 64 bits.
    pub fn mul(self, other: PolyOverF2) -> PolyOverF2 {
        let (mut a, mut b, mut r) = (self.0, other.0, 0u64);
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
        }
        PolyOverF2(r)
    }

    /// Remainder of polynomial division. Panics on a zero divisor.
    pub fn rem(self, divisor: PolyOverF2) -> PolyOverF2 {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut r = self.0;
        while let Some(dr) = PolyOverF2(r).degree() {
            if dr < dd {
                break;
            }
            r ^= divisor.0 << (dr - dd);
        }
        PolyOverF2(r)
    }
}

impl fmt::Display for PolyOverF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for i in (0..=deg).rev() {
            if self.0 >> i & 1 == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Irreducibility over F_2 by trial division by every polynomial of degree
/// at most `deg / 2`.
pub fn is_irreducible(p: PolyOverF2) -> Result<bool> {
    let deg = p
        .degree()
        .ok_or_else(|| GqError::InvalidPolynomial("zero polynomial".into()))?;
    if deg == 0 {
        return Err(GqError::InvalidPolynomial(
            "constant polynomials have no irreducibility".into(),
        ));
    }
    if deg == 1 {
        return Ok(true);
    }
    // x divides p iff the constant term vanishes.
    if p.0 & 1 == 0 {
        return Ok(false);
    }
    for d in 1..=deg / 2 {
        for div in (1u64 << d)..(1u64 << (d + 1)) {
            if p.rem(PolyOverF2(div)).0 == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest-encoding irreducible polynomial of degree `s` with nonzero
/// constant term. For `s = 1` this is `x + 1`.
pub fn canonical_modulus(s: u32) -> Result<PolyOverF2> {
    check_degree(s)?;
    let mut cand = (1u64 << s) | 1;
    while cand < 1u64 << (s + 1) {
        if is_irreducible(PolyOverF2(cand))? {
            return Ok(PolyOverF2(cand));
        }
        cand += 2;
    }
    Err(GqError::Internal(format!("no irreducible polynomial of degree {s}")))
}

fn check_degree(s: u32) -> Result<()> {
    if s == 0 || s > MAX_DEGREE {
        Err(GqError::UnsupportedDegree(s))
    } else {
        Ok(())
    }
}

/// Shift-and-XOR multiplication modulo `modulus` (degree `s`).
#[inline]
fn mul_reduce(a: u32, b: u32, modulus: u64, s: u32) -> u32 {
    let (mut a, mut b, mut r) = (a as u64, b, 0u64);
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> s & 1 == 1 {
            a ^= modulus;
        }
    }
    r as u32
}

fn pow_reduce(base: u32, mut exp: u64, modulus: u64, s: u32) -> u32 {
    let mut acc = 1u32;
    let mut b = base;
    while exp != 0 {
        if exp & 1 == 1 {
            acc = mul_reduce(acc, b, modulus, s);
        }
        b = mul_reduce(b, b, modulus, s);
        exp >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldInner {
    s: u32,
    modulus: u64,
    primitive: u32,
    trace_mask: u32,
    tables: Option<Tables>,
    self_dual: OnceLock<Vec<u32>>,
}

/// A binary extension field F_{2^s}. Cheap to clone; two handles are equal
/// iff their moduli are equal.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.modulus == other.0.modulus
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus().hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) mod {}", self.q(), PolyOverF2(self.0.modulus))
    }
}

impl Field {
    /// Field defined by an explicit irreducible modulus.
    pub fn from_modulus(modulus: u64) -> Result<Field> {
        let poly = PolyOverF2(modulus);
        let s = poly
            .degree()
            .ok_or_else(|| GqError::InvalidPolynomial("zero modulus".into()))?;
        check_degree(s)?;
        if !is_irreducible(poly)? {
            return Err(GqError::IrreducibleRequired(modulus));
        }
        Ok(Field::build(s, modulus))
    }

    /// Field of order `2^s` using [`canonical_modulus`].
    pub fn with_degree(s: u32) -> Result<Field> {
        let m = canonical_modulus(s)?;
        Ok(Field::build(s, m.0))
    }

    /// Field of order `q`, which must be a power of two.
    pub fn with_order(q: u64) -> Result<Field> {
        if q < 2 || !q.is_power_of_two() {
            return Err(GqError::InvalidArgument(format!("q = {q} is not a power of two")));
        }
        Field::with_degree(q.trailing_zeros())
    }

    pub fn binary() -> Field {
        Field::build(1, 0b11)
    }

    fn build(s: u32, modulus: u64) -> Field {
        let q = 1u64 << s;
        let mut trace_mask = 0u32;
        for i in 0..s {
            let mut t = 0u32;
            let mut x = 1u32 << i;
            for _ in 0..s {
                t ^= x;
                x = mul_reduce(x, x, modulus, s);
            }
            debug_assert!(t <= 1);
            trace_mask |= t << i;
        }

        let factors = prime_factors(q - 1);
        let start = if q == 2 { 1 } else { 2 };
        let primitive = (start..q as u32)
            .find(|&c| factors.iter().all(|&p| pow_reduce(c, (q - 1) / p, modulus, s) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let tables = (s <= TABLE_DEGREE).then(|| {
            let order = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * order];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for i in 0..order {
                exp[i] = x;
                exp[i + order] = x;
                log[x as usize] = i as u32;
                x = mul_reduce(x, primitive, modulus, s);
            }
            Tables { exp, log }
        });

        Field(Arc::new(FieldInner {
            s,
            modulus,
            primitive,
            trace_mask,
            tables,
            self_dual: OnceLock::new(),
        }))
    }

    pub fn s(&self) -> u32 {
        self.0.s
    }

    pub fn q(&self) -> usize {
        1usize << self.0.s
    }

    pub fn modulus(&self) -> u64 {
        self.0.modulus
    }

    pub fn modulus_poly(&self) -> PolyOverF2 {
        PolyOverF2(self.0.modulus)
    }

    /// Generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.0.primitive
    }

    pub(crate) fn self_dual_cache(&self) -> &OnceLock<Vec<u32>> {
        &self.0.self_dual
    }

    pub fn contains(&self, code: u32) -> bool {
        (code as u64) < (1u64 << self.0.s)
    }

    pub fn check(&self, code: u32) -> Result<u32> {
        if self.contains(code) {
            Ok(code)
        } else {
            Err(GqError::ElementOutOfRange { code: code as u64, q: self.q() as u64 })
        }
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        self.check(code)?;
        Ok(FieldElement { code, modulus: self.0.modulus })
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q() as u32
    }

    pub fn nonzero(&self) -> impl Iterator<Item = u32> {
        1..self.q() as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => mul_reduce(a, b, self.0.modulus, self.0.s),
        }
    }

    /// Multiplication without tables; used to cross-check the table path.
    pub fn mul_shift_xor(&self, a: u32, b: u32) -> u32 {
        mul_reduce(a, b, self.0.modulus, self.0.s)
    }

    pub fn pow(&self, a: u32, exp: u64) -> u32 {
        pow_reduce(a, exp, self.0.modulus, self.0.s)
    }

    /// `a^{q-2}`.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(GqError::DivisionByZero);
        }
        Ok(match &self.0.tables {
            Some(t) => {
                let order = self.q() as u32 - 1;
                t.exp[((order - t.log[a as usize]) % order) as usize]
            }
            None => self.pow(a, self.q() as u64 - 2),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    /// `tr(η)` as 0 or 1, via the precomputed linear functional.
    #[inline]
    pub fn trace(&self, a: u32) -> u32 {
        (a & self.0.trace_mask).count_ones() & 1
    }

    /// `η + η^2 + η^4 + ... + η^{2^{s-1}}` evaluated in the field.
    pub fn trace_by_definition(&self, a: u32) -> u32 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.0.s {
            t ^= x;
            x = self.frobenius(x);
        }
        t
    }

    /// The F_2-linear map `η ↦ tr(γη)`.
    #[inline]
    pub fn linear_map(&self, gamma: u32, eta: u32) -> u32 {
        self.trace(self.mul(gamma, eta))
    }

    /// `(-1)^{tr(γη)}` as ±1.
    #[inline]
    pub fn character(&self, gamma: u32, eta: u32) -> f64 {
        if self.linear_map(gamma, eta) == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| acc ^ self.mul(x, y))
    }

    /// Human-readable polynomial form of an element in powers of `α`.
    pub fn format_element(&self, a: u32) -> String {
        if a == 0 {
            return "0".into();
        }
        let mut terms = Vec::new();
        for i in 0..self.0.s {
            if a >> i & 1 == 1 {
                terms.push(match i {
                    0 => "1".to_string(),
                    1 => "a".to_string(),
                    _ => format!("a^{i}"),
                });
            }
        }
        terms.join("+")
    }
}

/// Checked field element: a code tagged with its field's modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    code: u32,
    modulus: u64,
}

impl FieldElement {
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn s(self) -> u32 {
        63 - self.modulus.leading_zeros()
    }

    fn same_field(self, other: FieldElement) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(GqError::FieldMismatch(self.modulus, other.modulus))
        }
    }

    fn with(self, code: u32) -> FieldElement {
        FieldElement { code, modulus: self.modulus }
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }

    pub fn add(self, other: FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.code ^ other.code))
    }

    pub fn mul(self, other: FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(mul_reduce(self.code, other.code, self.modulus, self.s())))
    }

    pub fn pow(self, exp: u64) -> FieldElement {
        self.with(pow_reduce(self.code, exp, self.modulus, self.s()))
    }

    pub fn inv(self) -> Result<FieldElement> {
        if self.code == 0 {
            return Err(GqError::DivisionByZero);
        }
        let q = 1u64 << self.s();
        Ok(self.pow(q - 2))
    }

    pub fn frobenius(self) -> FieldElement {
        self.pow(2)
    }

    pub fn trace(self) -> u32 {
        let mut t = 0;
        let mut x = self.code;
        for _ in 0..self.s() {
            t ^= x;
            x = mul_reduce(x, x, self.modulus, self.s());
        }
        t
    }

    pub fn linear_map(self, eta: FieldElement) -> Result<u32> {
        Ok(self.mul(eta)?.trace())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f8() -> Field {
        Field::from_modulus(0b1011).unwrap()
    }

    #[test]
    fn builds_f8_from_worked_modulus() {
        let f = f8();
        assert_eq!(f.s(), 3);
        assert_eq!(f.q(), 8);
        assert_eq!(f.modulus(), 11);
    }

    #[test]
    fn rejects_reducible_and_bad_degrees() {
        assert_eq!(Field::from_modulus(0b101).unwrap_err(), GqError::IrreducibleRequired(0b101));
        assert_eq!(Field::with_degree(0).unwrap_err(), GqError::UnsupportedDegree(0));
        assert_eq!(Field::with_degree(32).unwrap_err(), GqError::UnsupportedDegree(32));
        assert!(matches!(Field::from_modulus(0), Err(GqError::InvalidPolynomial(_))));
    }

    #[test]
    fn prime_field_is_trivial() {
        let f = Field::with_degree(1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.modulus(), 0b11);
        assert_eq!(f.primitive(), 1);
        assert_eq!(f.mul(1, 1), 1);
        for x in 0..2 {
            assert_eq!(f.trace(x), x);
        }
    }

    #[test]
    fn add_examples() {
        let f = Field::with_degree(3).unwrap();
        assert_eq!(f.add(6, 6), 0);
        for x in f.elements() {
            assert_eq!(f.add(x, 0), x);
        }
        assert_eq!(f8().add(0b010, 0b001), 0b011);
    }

    #[test]
    fn worked_product_in_f8() {
        // (α+α²)(1+α+α²) = α²
        let f = f8();
        assert_eq!(f.mul(0b110, 0b111), 0b100);
        assert_eq!(f.mul_shift_xor(0b110, 0b111), 0b100);
        let a = f.element(0b110).unwrap();
        let b = f.element(0b111).unwrap();
        assert_eq!(a.mul(b).unwrap().code(), 0b100);
    }

    #[test]
    fn f4_table_and_inverse() {
        let f = Field::from_modulus(0b111).unwrap();
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.inv(0), Err(GqError::DivisionByZero));
    }

    #[test]
    fn cross_field_ops_are_errors() {
        let a = f8().element(3).unwrap();
        let b = Field::from_modulus(0b1101).unwrap().element(3).unwrap();
        assert_eq!(a.add(b), Err(GqError::FieldMismatch(0b1011, 0b1101)));
        assert!(a.mul(b).is_err());
    }

    #[test]
    fn element_codes_are_range_checked() {
        assert!(f8().element(8).is_err());
        assert!(f8().element(7).is_ok());
    }

    #[test]
    fn trace_examples() {
        let f4 = Field::from_modulus(0b111).unwrap();
        let tr: Vec<u32> = f4.elements().map(|x| f4.trace(x)).collect();
        assert_eq!(tr, vec![0, 0, 1, 1]);
        assert_eq!(f8().trace(1), 1);
    }

    #[test]
    fn linear_maps_are_distinct_and_additive() {
        for s in 1..=4 {
            let f = Field::with_degree(s).unwrap();
            let cols: Vec<Vec<u32>> = f
                .elements()
                .map(|g| f.elements().map(|e| f.linear_map(g, e)).collect())
                .collect();
            assert!(cols[0].iter().all(|&b| b == 0));
            for i in 0..cols.len() {
                for j in 0..i {
                    assert_ne!(cols[i], cols[j]);
                }
            }
            for g in f.elements() {
                for a in f.elements() {
                    for b in f.elements() {
                        assert_eq!(
                            f.linear_map(g, a ^ b),
                            f.linear_map(g, a) ^ f.linear_map(g, b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(PolyOverF2(0b111)).unwrap());
        assert!(is_irreducible(PolyOverF2(0b1101)).unwrap());
        assert!(!is_irreducible(PolyOverF2(0b101)).unwrap());
        assert!(is_irreducible(PolyOverF2(0b11)).unwrap());
        assert!(is_irreducible(PolyOverF2(0b10)).unwrap());
        assert!(is_irreducible(PolyOverF2(0)).is_err());
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // Number of monic irreducibles of degree d over F_2: 1,2,1,2,3,6,9,18,30,56
        let expected = [2u32, 1, 2, 3, 6, 9, 18, 30, 56];
        for (i, &want) in expected.iter().enumerate() {
            let d = i as u32 + 1;
            let got = ((1u64 << d)..(1u64 << (d + 1)))
                .filter(|&p| is_irreducible(PolyOverF2(p)).unwrap())
                .count() as u32;
            assert_eq!(got, want, "degree {d}");
        }
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(canonical_modulus(1).unwrap().0, 0b11);
        assert_eq!(canonical_modulus(2).unwrap().0, 0b111);
        assert_eq!(canonical_modulus(3).unwrap().0, 0b1011);
        assert_eq!(canonical_modulus(4).unwrap().0, 0b10011);
        assert_eq!(canonical_modulus(8).unwrap().0, 0x11b);
    }

    #[test]
    fn primitive_has_full_order() {
        for s in 1..=10 {
            let f = Field::with_degree(s).unwrap();
            let mu = f.primitive();
            let order = f.q() as u64 - 1;
            assert_eq!(f.pow(mu, order), 1);
            let mut x = 1;
            for m in 1..order {
                x = f.mul(x, mu);
                assert_ne!(x, 1, "s={s} m={m}");
            }
        }
    }

    #[test]
    fn large_degree_field_builds() {
        let f = Field::with_degree(31).unwrap();
        let a = 0x1234_5678;
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        assert_eq!(f.trace(a), f.trace_by_definition(a));
    }

    #[test]
    fn table_and_shift_xor_agree() {
        for s in 1..=8 {
            let f = Field::with_degree(s).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_shift_xor(a, b));
                }
            }
        }
    }

    #[test]
    fn trace_mask_matches_definition() {
        for s in 1..=8 {
            let f = Field::with_degree(s).unwrap();
            for a in f.elements() {
                assert_eq!(f.trace(a), f.trace_by_definition(a));
            }
        }
    }

    #[test]
    fn poly_display() {
        assert_eq!(PolyOverF2(0b1011).to_string(), "x^3+x+1");
        assert_eq!(PolyOverF2(0).to_string(), "0");
    }

    proptest! {
        #[test]
        fn gf256_axioms(a in 0u32..256, b in 0u32..256, c in 0u32..256) {
            let f = Field::with_degree(8).unwrap();
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }

        #[test]
        fn square_distributes_over_sums(xs in proptest::collection::vec(0u32..256, 1..=8)) {
            let f = Field::with_degree(8).unwrap();
            let sum = xs.iter().fold(0, |acc, &x| acc ^ x);
            let sq_sum = xs.iter().fold(0, |acc, &x| acc ^ f.mul(x, x));
            prop_assert_eq!(f.mul(sum, sum), sq_sum);
        }
    }
}
