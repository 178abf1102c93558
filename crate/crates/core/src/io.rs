//! JSON forms of tableaux and codes.

use serde::{Deserialize, Serialize};

use crate::css::CssCode;
use crate::error::{GqError, Result};
use crate::gf2e::Field;
use crate::grs::{QrsCode, QrsMeta};
use crate::linalg::FqMatrix;
use crate::tableau::CssTableau;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub q: usize,
    pub modulus: u64,
    pub xrows: Vec<Vec<u32>>,
    pub zrows: Vec<Vec<u32>>,
    pub xsyn: Vec<u32>,
    pub zsyn: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub q: usize,
    pub modulus: u64,
    pub n: usize,
    pub gx: Vec<Vec<u32>>,
    pub gz: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qrs: Option<QrsMeta>,
}

/// Field named by `modulus`, checked against the declared order `q`.
pub fn field_from(q: usize, modulus: u64) -> Result<Field> {
    let f = Field::from_modulus(modulus)?;
    if f.q() != q {
        return Err(GqError::Parse(format!("modulus {modulus} defines F_{}, not F_{q}", f.q())));
    }
    Ok(f)
}

fn width(rows: &[Vec<u32>], fallback: usize) -> usize {
    rows.first().map_or(fallback, Vec::len)
}

impl TableauJson {
    pub fn from_tableau(t: &CssTableau) -> TableauJson {
        TableauJson {
            q: t.field().q(),
            modulus: t.field().modulus(),
            xrows: t.xrows().to_rows(),
            zrows: t.zrows().to_rows(),
            xsyn: t.xsyn().to_vec(),
            zsyn: t.zsyn().to_vec(),
        }
    }

    pub fn to_tableau(&self) -> Result<CssTableau> {
        let f = field_from(self.q, self.modulus)?;
        let n = width(&self.xrows, width(&self.zrows, 0));
        CssTableau::from_rows(&f, n, &self.xrows, &self.zrows, self.xsyn.clone(), self.zsyn.clone())
    }
}

impl CodeJson {
    pub fn from_code(c: &CssCode) -> CodeJson {
        CodeJson {
            q: c.field().q(),
            modulus: c.field().modulus(),
            n: c.n(),
            gx: c.gx().to_rows(),
            gz: c.gz().to_rows(),
            qrs: None,
        }
    }

    pub fn from_qrs(c: &QrsCode) -> CodeJson {
        CodeJson { qrs: Some(c.meta()), ..CodeJson::from_code(&c.css) }
    }

    pub fn to_code(&self) -> Result<CssCode> {
        let f = field_from(self.q, self.modulus)?;
        CssCode::new(
            &f,
            self.n,
            FqMatrix::from_rows(&f, self.n, &self.gx)?,
            FqMatrix::from_rows(&f, self.n, &self.gz)?,
        )
    }

    /// Rebuilds the QRS structure when metadata is present, checking that it
    /// reproduces the stored generators.
    pub fn to_qrs(&self) -> Result<Option<QrsCode>> {
        let Some(m) = &self.qrs else { return Ok(None) };
        let f = field_from(self.q, self.modulus)?;
        let code = QrsCode::new(&f, m.k1, m.k2, m.alpha.clone(), m.v.clone())?;
        if code.css != self.to_code()? {
            return Err(GqError::Parse("QRS metadata does not match the stored generators".into()));
        }
        Ok(Some(code))
    }
}

pub fn tableau_to_json(t: &CssTableau) -> String {
    serde_json::to_string_pretty(&TableauJson::from_tableau(t)).expect("serialisable")
}

pub fn tableau_from_json(s: &str) -> Result<CssTableau> {
    serde_json::from_str::<TableauJson>(s)?.to_tableau()
}

pub fn code_from_json(s: &str) -> Result<CodeJson> {
    Ok(serde_json::from_str(s)?)
}
