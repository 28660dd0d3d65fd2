//! Presentations of graded quotient rings `k[x_1..x_e] / (f_1..f_r)`.
//!
//! A presentation optionally marks a prefix of its relators as the base:
//! the ring cut out by that prefix is the source `R` of the surjection
//! `R -> S` whose target `S` uses all relators. A document without
//! `base_relators` has the polynomial ring as its base.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{reduce_integer, FieldSpec};
use crate::poly::{IntPoly, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

/// A validated homogeneous relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub text: String,
    pub poly: IntPoly,
    pub degree: u32,
}

/// On-disk form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub field: FieldSpec,
    pub variables: Vec<VariableDoc>,
    #[serde(default)]
    pub relators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_relators: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableDoc {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: FieldSpec,
    variables: Vec<Variable>,
    relators: Vec<Relator>,
    base_len: usize,
}

impl Presentation {
    /// Parses and validates a presentation document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PresentationDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &PresentationDoc) -> Result<Self> {
        let field = match doc.field {
            FieldSpec::Rationals => FieldSpec::Rationals,
            FieldSpec::Prime { p } => FieldSpec::prime(p)?,
        };
        let mut variables = Vec::with_capacity(doc.variables.len());
        for v in &doc.variables {
            if v.name.is_empty()
                || !v.name.chars().next().unwrap().is_ascii_alphabetic()
                || !v.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::Polynomial { text: v.name.clone(), reason: "invalid variable name".into() });
            }
            if variables.iter().any(|w: &Variable| w.name == v.name) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
            if v.degree < 1 || v.degree > u32::MAX as i64 {
                return Err(Error::BadVariableDegree { name: v.name.clone(), degree: v.degree });
            }
            variables.push(Variable { name: v.name.clone(), degree: v.degree as u32 });
        }
        let names: Vec<String> = variables.iter().map(|v| v.name.clone()).collect();
        let weights: Vec<u32> = variables.iter().map(|v| v.degree).collect();
        let base_len = match &doc.base_relators {
            None => 0,
            Some(base) => {
                if base.len() > doc.relators.len() || base[..] != doc.relators[..base.len()] {
                    return Err(Error::BaseNotPrefix);
                }
                base.len()
            }
        };
        let relators = doc
            .relators
            .iter()
            .map(|text| validate_relator(field, text, &names, &weights))
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation { field, variables, relators, base_len })
    }

    /// Convenience constructor used by tests and the catalog.
    pub fn new(field: FieldSpec, variables: &[(&str, u32)], relators: &[&str], base_len: usize) -> Result<Self> {
        if base_len > relators.len() {
            return Err(Error::BaseNotPrefix);
        }
        let doc = PresentationDoc {
            field,
            variables: variables.iter().map(|(n, d)| VariableDoc { name: n.to_string(), degree: *d as i64 }).collect(),
            relators: relators.iter().map(|s| s.to_string()).collect(),
            base_relators: (base_len > 0).then(|| relators[..base_len].iter().map(|s| s.to_string()).collect()),
        };
        Self::from_doc(&doc)
    }

    pub fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            field: self.field,
            variables: self
                .variables
                .iter()
                .map(|v| VariableDoc { name: v.name.clone(), degree: v.degree as i64 })
                .collect(),
            relators: self.relators.iter().map(|r| r.text.clone()).collect(),
            base_relators: (self.base_len > 0)
                .then(|| self.relators[..self.base_len].iter().map(|r| r.text.clone()).collect()),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn names(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.name.clone()).collect()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.variables.iter().map(|v| v.degree).collect()
    }

    /// All relators: base relators first, then the kernel of the surjection.
    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn base_relators(&self) -> &[Relator] {
        &self.relators[..self.base_len]
    }

    /// Relators beyond the base, generating the kernel of `base -> self`.
    pub fn kernel_relators(&self) -> &[Relator] {
        &self.relators[self.base_len..]
    }

    /// True when the base is the polynomial ring (no base relators).
    pub fn has_polynomial_base(&self) -> bool {
        self.base_len == 0
    }

    /// The source ring of the surjection, as a presentation with polynomial base.
    pub fn base(&self) -> Presentation {
        Presentation {
            field: self.field,
            variables: self.variables.clone(),
            relators: self.relators[..self.base_len].to_vec(),
            base_len: 0,
        }
    }

    /// The same ring, viewed as a quotient of the polynomial ring.
    pub fn over_polynomial_base(&self) -> Presentation {
        Presentation { base_len: 0, ..self.clone() }
    }

    /// Re-bases this ring over the first `base_len` relators.
    pub fn with_base_len(&self, base_len: usize) -> Result<Presentation> {
        if base_len > self.relators.len() {
            return Err(Error::BaseNotPrefix);
        }
        Ok(Presentation { base_len, ..self.clone() })
    }

    /// Permutes variables (`var_order[i]` = old index of new variable `i`)
    /// and the kernel relators (`rel_order` likewise, relative to the kernel).
    pub fn permuted(&self, var_order: &[usize], rel_order: &[usize]) -> Presentation {
        let variables = var_order.iter().map(|&i| self.variables[i].clone()).collect();
        let permute = |r: &Relator| {
            let poly = IntPoly {
                terms: r
                    .poly
                    .terms
                    .iter()
                    .map(|(m, c)| (Monomial(var_order.iter().map(|&i| m.0[i]).collect()), c.clone()))
                    .collect(),
            };
            Relator { text: String::new(), poly, degree: r.degree }
        };
        let mut relators: Vec<Relator> = self.base_relators().iter().map(permute).collect();
        let kernel = self.kernel_relators();
        relators.extend(rel_order.iter().map(|&i| permute(&kernel[i])));
        let mut out = Presentation { field: self.field, variables, relators, base_len: self.base_len };
        let names = out.names();
        for r in &mut out.relators {
            r.text = r.poly.format(&names);
        }
        out
    }
}

fn validate_relator(field: FieldSpec, text: &str, names: &[String], weights: &[u32]) -> Result<Relator> {
    let poly = IntPoly::parse(text, names)?.map_coefficients(|c: &BigInt| reduce_integer(field, c));
    if poly.is_zero() {
        return Err(Error::ZeroRelator(text.to_string()));
    }
    let mut degrees = poly.terms.keys().map(|m| m.degree(weights));
    let degree = degrees.next().expect("nonzero polynomial has a term");
    if degrees.any(|d| d != degree) {
        return Err(Error::Inhomogeneous(text.to_string()));
    }
    if degree < 2 {
        return Err(Error::DegreeTooLow { relator: text.to_string(), degree });
    }
    if poly.terms.keys().any(|m| m.total_exponent() < 2) {
        return Err(Error::LinearTerm(text.to_string()));
    }
    Ok(Relator { text: text.to_string(), poly, degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_examples() {
        let p = Presentation::from_json(
            r#"{"field":{"type":"Q"},"variables":[{"name":"x","degree":1}],"relators":["x^2"]}"#,
        )
        .unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].degree, 2);
        assert!(p.has_polynomial_base());

        let p = Presentation::from_json(
            r#"{"field":{"type":"Fp","p":5},"variables":[{"name":"x","degree":1},{"name":"y","degree":1}],"relators":["x*y"]}"#,
        )
        .unwrap();
        assert_eq!(p.field(), FieldSpec::Prime { p: 5 });
    }

    #[test]
    fn validation_errors() {
        let q = FieldSpec::Rationals;
        let xy = [("x", 1), ("y", 1)];
        assert!(matches!(Presentation::new(q, &xy, &["x + y^2"], 0), Err(Error::Inhomogeneous(_))));
        assert!(matches!(Presentation::new(q, &xy, &["x"], 0), Err(Error::DegreeTooLow { .. })));
        assert!(matches!(Presentation::new(q, &xy, &["z^2"], 0), Err(Error::UnknownVariable { .. })));
        assert!(matches!(
            Presentation::new(q, &[("x", 1), ("z", 2)], &["z - x^2"], 0),
            Err(Error::LinearTerm(_))
        ));
        let bad_p = r#"{"field":{"type":"Fp","p":6},"variables":[{"name":"x","degree":1}],"relators":[]}"#;
        assert!(matches!(Presentation::from_json(bad_p), Err(Error::NonPrime(6))));
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(Presentation::new(f5, &xy, &["5*x^2"], 0), Err(Error::ZeroRelator(_))));
        assert!(matches!(Presentation::new(q, &[("x", 0)], &[], 0), Err(Error::BadVariableDegree { .. })));
        assert!(matches!(Presentation::new(q, &[("x", 1), ("x", 1)], &[], 0), Err(Error::DuplicateVariable(_))));
    }

    #[test]
    fn base_must_be_prefix() {
        let doc = r#"{"field":{"type":"Q"},"variables":[{"name":"x","degree":1},{"name":"y","degree":1}],
            "relators":["x^2","y^2"],"base_relators":["y^2"]}"#;
        assert!(matches!(Presentation::from_json(doc), Err(Error::BaseNotPrefix)));
        let ok = doc.replace(r#""base_relators":["y^2"]"#, r#""base_relators":["x^2"]"#);
        let p = Presentation::from_json(&ok).unwrap();
        assert_eq!(p.base_relators().len(), 1);
        assert_eq!(p.kernel_relators()[0].text, "y^2");
        assert_eq!(p.base().relators().len(), 1);
        assert_eq!(Presentation::from_doc(&p.to_doc()).unwrap(), p);
    }

    #[test]
    fn permutation_relabels_polynomials() {
        let p = Presentation::new(FieldSpec::Rationals, &[("x", 1), ("y", 2)], &["x^4 + y^2", "x*y"], 0).unwrap();
        let q = p.permuted(&[1, 0], &[1, 0]);
        assert_eq!(q.names(), vec!["y", "x"]);
        assert_eq!(q.relators()[0].text, "y*x");
        assert_eq!(q.relators()[1].degree, 4);
    }
}
