pub mod error;
pub mod rootdata;
pub mod weyl;

pub use error::{Error, Result};
pub use rootdata::{CartanDatum, Root, RootDatum, TypeLabel, Weight};
pub use weyl::{WeylElement, WeylGroup};
pub mod charseries;
pub use charseries::{BigradedSeries, Grading, Monomial, Provenance, Regime};
pub mod formulas;
pub use formulas::{FormulaContext, WindowParams};
pub mod bgg;
pub mod sl2;
pub mod verify;
