//! Symplectic Grassmann codes W(n, k) over GF(q), q <= 16.
//!
//! The points of W(n, k) are the totally isotropic k-subspaces of a 2n
//! dimensional space with a non-degenerate alternating form, embedded by
//! their Plücker coordinates. The crate enumerates them, builds the code,
//! computes exact weight enumerators by exhaustive sweeps, and evaluates the
//! closed forms those sweeps are checked against.
//!
//! ```
//! use sgcodes::{codes, formulas, Field};
//!
//! let f = Field::new(2).unwrap();
//! let code = codes::build_code(2, 2, &f).unwrap();
//! let e = codes::weight_enumerator(&code, codes::Method::CodewordSweep, &Default::default()).unwrap();
//! assert_eq!(e, formulas::w22_table(2).unwrap());
//! ```

pub mod bitmat;
pub mod codes;
pub mod error;
pub mod forms;
pub mod formulas;
pub mod gf;
pub mod grassmann;
pub mod io;
pub mod linalg;

pub use codes::{LinearCode, Method, SweepConfig, WeightEnumerator};
pub use error::{Error, Result};
pub use forms::{AlternatingForm, EigenDecomposition};
pub use gf::{Field, FieldElement};
pub use grassmann::{GrassmannLine, PluckerPoint};
pub use linalg::{Matrix, Subspace};
