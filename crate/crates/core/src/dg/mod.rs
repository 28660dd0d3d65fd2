//! Free DG extensions of a graded quotient ring: normalized words, Koszul
//! signs, divided powers and the Leibniz differential, evaluated exactly on
//! bigraded pieces.

mod element;
mod tower;

pub use element::{Element, Word};
pub use tower::{Bounds, ExtensionTower, ExtensionVariable, NewVariable, PieceBasis, TowerFlavor, VarKind, VariableDump};

#[cfg(test)]
mod tests;
