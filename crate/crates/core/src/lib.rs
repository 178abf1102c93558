//! Qudit stabiliser toolkit over binary extension fields GF(2^s).

pub mod bases;
pub mod css;
pub mod error;
pub mod gates;
pub mod gf2e;
pub mod grs;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod pauli;
pub mod poly;
pub mod q2b;
pub mod tableau;
pub mod verify;

pub use bases::{find_self_dual, FieldBasis};
pub use css::{CodeParams, CssCode, Distance};
pub use error::{GqError, Result};
pub use gf2e::{Field, FieldElement, PolyOverF2};
pub use grs::{GrsCode, QrsCode};
pub use linalg::FqMatrix;
pub use oracle::{DenseOperator, StateVector};
pub use pauli::PauliWord;
pub use q2b::{MeasurementPlan, QubitCssCode};
pub use tableau::{Block, CssTableau, TableauGate};
pub use verify::{run_all, VerifyReport};
