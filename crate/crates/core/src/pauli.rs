//! n-qudit Pauli words `±X^x Z^z` over F_q.

use std::fmt;

use crate::error::{GqError, Result};
use crate::gf2e::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliWord {
    field: Field,
    x: Vec<u32>,
    z: Vec<u32>,
    negative: bool,
}

impl PauliWord {
    pub fn new(field: &Field, x: Vec<u32>, z: Vec<u32>, negative: bool) -> Result<PauliWord> {
        if x.len() != z.len() {
            return Err(GqError::DimensionMismatch(format!(
                "x has {} sites, z has {}",
                x.len(),
                z.len()
            )));
        }
        for &c in x.iter().chain(&z) {
            field.check(c)?;
        }
        Ok(PauliWord { field: field.clone(), x, z, negative })
    }

    pub fn identity(field: &Field, n: usize) -> PauliWord {
        PauliWord { field: field.clone(), x: vec![0; n], z: vec![0; n], negative: false }
    }

    pub fn x_type(field: &Field, x: Vec<u32>) -> Result<PauliWord> {
        let n = x.len();
        PauliWord::new(field, x, vec![0; n], false)
    }

    pub fn z_type(field: &Field, z: Vec<u32>) -> Result<PauliWord> {
        let n = z.len();
        PauliWord::new(field, vec![0; n], z, false)
    }

    /// `X^β` or `Z^β` on `site` of an `n`-qudit register.
    pub fn single(field: &Field, n: usize, site: usize, beta: u32, z_type: bool) -> Result<PauliWord> {
        if site >= n {
            return Err(GqError::DimensionMismatch(format!("site {site} of {n}")));
        }
        let mut v = vec![0; n];
        v[site] = beta;
        if z_type {
            PauliWord::z_type(field, v)
        } else {
            PauliWord::x_type(field, v)
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn z(&self) -> &[u32] {
        &self.z
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// Same word with sign `+`.
    pub fn unsigned(&self) -> PauliWord {
        PauliWord { negative: false, ..self.clone() }
    }

    pub fn negated(&self) -> PauliWord {
        PauliWord { negative: !self.negative, ..self.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&c| c == 0)
    }

    pub fn is_x_type(&self) -> bool {
        self.z.iter().all(|&c| c == 0)
    }

    pub fn is_z_type(&self) -> bool {
        self.x.iter().all(|&c| c == 0)
    }

    pub fn is_pure(&self) -> bool {
        self.is_x_type() || self.is_z_type()
    }

    /// The nonzero exponent vector of a pure word, with `true` for Z-type.
    /// The identity counts as X-type.
    pub fn pure_vector(&self) -> Result<(&[u32], bool)> {
        if self.is_x_type() {
            Ok((&self.x, false))
        } else if self.is_z_type() {
            Ok((&self.z, true))
        } else {
            Err(GqError::PureTypeRequired)
        }
    }

    fn check_same(&self, other: &PauliWord) -> Result<()> {
        if self.field != other.field {
            return Err(GqError::FieldMismatch(self.field.modulus(), other.field.modulus()));
        }
        if self.n() != other.n() {
            return Err(GqError::DimensionMismatch(format!(
                "{} vs {} qudits",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }

    /// Operator product `self · other`, brought back to `±X^x Z^z` form.
    pub fn multiply(&self, other: &PauliWord) -> Result<PauliWord> {
        self.check_same(other)?;
        let f = &self.field;
        // Z^{z1} X^{x2} = (-1)^{tr(x2·z1)} X^{x2} Z^{z1}
        let swap = f.trace(f.dot(&other.x, &self.z)) == 1;
        Ok(PauliWord {
            field: f.clone(),
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect(),
            negative: self.negative ^ other.negative ^ swap,
        })
    }

    /// `tr(x1·z2) + tr(x2·z1)`: 0 when the words commute.
    pub fn symplectic_form(&self, other: &PauliWord) -> Result<u32> {
        self.check_same(other)?;
        let f = &self.field;
        Ok(f.trace(f.dot(&self.x, &other.z)) ^ f.trace(f.dot(&other.x, &self.z)))
    }

    pub fn commutes(&self, other: &PauliWord) -> Result<bool> {
        Ok(self.symplectic_form(other)? == 0)
    }

    /// `P^μ` for pure-type `P`: exponents scaled by μ. The sign is kept for μ ≠ 0.
    pub fn power(&self, mu: u32) -> Result<PauliWord> {
        if !self.is_pure() {
            return Err(GqError::PureTypeRequired);
        }
        let f = &self.field;
        f.check(mu)?;
        Ok(PauliWord {
            field: f.clone(),
            x: self.x.iter().map(|&a| f.mul(a, mu)).collect(),
            z: self.z.iter().map(|&a| f.mul(a, mu)).collect(),
            negative: self.negative && mu != 0,
        })
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(&a, &b)| a != 0 || b != 0).count()
    }

    /// Parses `s|x:[codes]|z:[codes]` with `s` one of `+`, `-`, `−`.
    pub fn parse(field: &Field, text: &str) -> Result<PauliWord> {
        let bad = || GqError::Parse(format!("malformed Pauli word {text:?}"));
        let mut parts = text.trim().split('|');
        let sign = parts.next().ok_or_else(bad)?.trim();
        let negative = match sign {
            "+" | "" => false,
            "-" | "−" => true,
            _ => return Err(bad()),
        };
        let x = parse_part(parts.next().ok_or_else(bad)?, "x:").ok_or_else(bad)?;
        let z = parse_part(parts.next().ok_or_else(bad)?, "z:").ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        PauliWord::new(field, x, z, negative)
    }
}

fn parse_part(s: &str, prefix: &str) -> Option<Vec<u32>> {
    let body = s.trim().strip_prefix(prefix)?.trim();
    let inner = body.strip_prefix('[')?.strip_suffix(']')?.trim();
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.negative { '-' } else { '+' };
        write!(f, "{s}|x:[{}]|z:[{}]", join(&self.x), join(&self.z))
    }
}
