//! Exact homological algebra over graded local rings: Koszul complexes,
//! minimal models of surjections, acyclic closures of the residue field,
//! deviations, Betti numbers, Poincaré series and André-Quillen ranks.

pub mod audit;
pub mod catalog;
pub mod cli;
pub mod dg;
pub mod error;
pub mod field;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod presentation;
pub mod report;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use presentation::Presentation;

/// Runs `$body` with `$f` bound to the concrete field named by `$spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::field::FieldSpec::Rationals => {
                let $f = $crate::field::Rationals;
                $body
            }
            $crate::field::FieldSpec::Prime { p } => {
                let $f = $crate::field::PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    };
}
