//! Checks of the vanishing and rigidity statements on concrete instances.
//!
//! Every audit reports the bounds it used and asserts nothing beyond them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::invariants::{ci_check, deviations, regular_sequence_certified, in_aq_window, CiStatus, Route};
use crate::presentation::{Presentation, PresentationDoc};
use crate::resolution::build_minimal_model;
use crate::ring::QuotientRing;
use crate::with_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckVerdict {
    Pass,
    Fail,
    /// Not asserted, e.g. outside the characteristic window.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub assertion: String,
    pub observed: String,
    pub verdict: CheckVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditVerdict {
    Pass,
    Fail,
    NotApplicable,
    /// Non-certifying output.
    Diagnostic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditBounds {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "D")]
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub theorem: String,
    pub instance: String,
    pub checks: Vec<Check>,
    pub bounds: AuditBounds,
    pub verdict: AuditVerdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AuditReport {
    fn new(theorem: &str, instance: String, n: u32, d: u32) -> Self {
        AuditReport {
            theorem: theorem.into(),
            instance,
            checks: Vec::new(),
            bounds: AuditBounds { n, d },
            verdict: AuditVerdict::Pass,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, assertion: String, observed: String, holds: bool) {
        let verdict = if holds { CheckVerdict::Pass } else { CheckVerdict::Fail };
        self.checks.push(Check { assertion, observed, verdict });
    }

    fn skip(&mut self, assertion: String, reason: String) {
        self.checks.push(Check { assertion, observed: reason, verdict: CheckVerdict::Skipped });
    }

    fn finish(mut self) -> Self {
        if self.verdict == AuditVerdict::Pass && self.checks.iter().any(|c| c.verdict == CheckVerdict::Fail) {
            self.verdict = AuditVerdict::Fail;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != AuditVerdict::Fail
    }
}

fn field_name(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rationals => "Q".into(),
        FieldSpec::Prime { p } => format!("F{p}"),
    }
}

fn ring_name(p: &Presentation, relators: &[String]) -> String {
    let ring = format!("{}[{}]", field_name(p.field()), p.names().join(","));
    if relators.is_empty() {
        ring
    } else {
        format!("{ring}/({})", relators.join(", "))
    }
}

/// `R -> S` in readable form.
pub fn describe(p: &Presentation) -> String {
    let texts: Vec<String> = p.relators().iter().map(|r| r.text.clone()).collect();
    let base = p.base_relators().len();
    format!("{} -> {}", ring_name(p, &texts[..base]), ring_name(p, &texts))
}

/// Input of the `audit` subcommand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub tower: Vec<PresentationDoc>,
    #[serde(default)]
    pub witness: Vec<String>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i_max: Option<u32>,
}

/// A validated chain of presentations `Q -> R -> ...` sharing field and
/// variables, each layer's relators extending the previous ones.
#[derive(Clone, Debug)]
pub struct Tower {
    pub layers: Vec<Presentation>,
}

impl Tower {
    pub fn from_docs(docs: &[PresentationDoc]) -> Result<Self> {
        if docs.is_empty() {
            return Err(Error::NotATower("no layers".into()));
        }
        let mut layers = Vec::with_capacity(docs.len());
        for (i, doc) in docs.iter().enumerate() {
            let mut doc = doc.clone();
            if i > 0 {
                doc.base_relators = None;
            }
            let p = Presentation::from_doc(&doc)?;
            if let Some(prev) = layers.last() {
                let prev: &Presentation = prev;
                if prev.field() != p.field() || prev.variables() != p.variables() {
                    return Err(Error::NotATower(format!("layer {i} changes the field or the variables")));
                }
                let n = prev.relators().len();
                if p.relators().len() < n || p.relators()[..n] != prev.relators()[..] {
                    return Err(Error::NotATower(format!("layer {i} does not extend the relators of layer {}", i - 1)));
                }
                layers.push(p.with_base_len(n)?);
            } else {
                layers.push(p);
            }
        }
        Ok(Tower { layers })
    }

    /// The last layer as a surjection from the one before it (or from its
    /// own base when there is a single layer).
    pub fn top(&self) -> &Presentation {
        self.layers.last().expect("nonempty")
    }

    /// `(R over Q, S over R, S over Q)` for a three-layer tower.
    pub fn triple(&self) -> Result<(Presentation, Presentation, Presentation)> {
        if self.layers.len() != 3 {
            return Err(Error::NotATower(format!("expected 3 layers Q, R, S; found {}", self.layers.len())));
        }
        let q_len = self.layers[0].relators().len();
        let s = &self.layers[2];
        Ok((self.layers[1].clone(), s.clone(), s.with_base_len(q_len)?))
    }
}

fn eps_list(values: &[(u32, usize)]) -> String {
    values.iter().map(|(n, c)| format!("ε_{n} = {c}")).collect::<Vec<_>>().join(", ")
}

/// If the surjection is c.i., `ε_n = 0` for `3 <= n <= N`; otherwise
/// `ε_n > 0` for `4 <= n <= N`.
pub fn rigidity_audit(pres: &Presentation, n_max: u32, d_max: u32) -> Result<AuditReport> {
    let mut report = AuditReport::new("rigidity", describe(pres), n_max, d_max);
    if !pres.has_polynomial_base() {
        return Err(Error::Precondition(
            "rigidity needs finite flat dimension, which is only automatic over a polynomial base".into(),
        ));
    }
    let ci = ci_check(pres, d_max)?;
    let eps = deviations(pres, n_max, d_max, Route::MinimalModel)?;
    let observed = format!("{:?}", ci.is_ci).to_lowercase();
    report.check("ci_check is certified".into(), observed, ci.is_ci != CiStatus::Uncertified);
    match ci.is_ci {
        CiStatus::Yes => {
            for n in 3..=n_max {
                let c = eps.get(n).unwrap_or(0);
                report.check(format!("ε_{n} = 0"), format!("ε_{n} = {c}"), c == 0);
            }
        }
        CiStatus::No => {
            for n in 4..=n_max {
                let c = eps.get(n).unwrap_or(0);
                // new variables for ε_n live in internal degree >= n
                if c == 0 && d_max < n {
                    report.skip(format!("ε_{n} > 0"), format!("not visible below internal degree {n}"));
                } else {
                    report.check(format!("ε_{n} > 0"), format!("ε_{n} = {c}"), c > 0);
                }
            }
        }
        CiStatus::Uncertified => {}
    }
    Ok(report.finish())
}

/// Reports `max ε_n^(1/n)` over `4 <= n <= N`. Never a proof.
pub fn growth_probe(pres: &Presentation, n_max: u32, d_max: u32) -> Result<AuditReport> {
    let mut report = AuditReport::new("growth", describe(pres), n_max, d_max);
    report.notes.push("diagnostic only: finitely many deviations cannot certify exponential growth".into());
    if n_max < 4 {
        report.verdict = AuditVerdict::NotApplicable;
        report.notes.push("window too small (needs N >= 4)".into());
        return Ok(report);
    }
    let ci = ci_check(pres, d_max)?;
    if ci.is_ci != CiStatus::No {
        report.verdict = AuditVerdict::NotApplicable;
        report.notes.push(match ci.is_ci {
            CiStatus::Yes => "not applicable (c.i.)".into(),
            _ => "not applicable (c.i. status uncertified)".into(),
        });
        return Ok(report);
    }
    let eps = deviations(pres, n_max, d_max, Route::MinimalModel)?;
    let seq: Vec<(u32, usize)> = eps.entries.iter().map(|(n, e)| (*n, e.count)).collect();
    let root = seq
        .iter()
        .filter(|(n, _)| *n >= 4)
        .map(|(n, c)| (*c as f64).powf(1.0 / *n as f64))
        .fold(0.0f64, f64::max);
    report.verdict = AuditVerdict::Diagnostic;
    report.skip("deviations".into(), eps_list(&seq));
    report.skip("max ε_n^(1/n) over 4 <= n <= N".into(), format!("{root:.6}"));
    report.notes.push(if root > 1.0 {
        "consistent with exponential growth".into()
    } else {
        "no growth visible in this window".into()
    });
    Ok(report)
}

/// Verifies that `witness` is a regular sequence in `R` generating the
/// kernel of `R -> S`.
fn verify_witness<F: Field>(field: F, r_to_s: &Presentation, witness: &[String], d_max: u32) -> Result<Vec<String>> {
    if witness.is_empty() && !r_to_s.kernel_relators().is_empty() {
        return Err(Error::WitnessRejected("no witness supplied for a nonzero kernel".into()));
    }
    let mut doc = r_to_s.to_doc();
    doc.relators = witness.to_vec();
    doc.base_relators = None;
    let w = Presentation::from_doc(&doc).map_err(|e| Error::WitnessRejected(e.to_string()))?;
    let r = QuotientRing::with_relators(field.clone(), r_to_s, r_to_s.base_relators(), d_max);
    let s = QuotientRing::new(field, r_to_s, d_max);
    let mut notes = Vec::new();
    let gens: Vec<_> = w.relators().iter().map(|g| (g.degree, r.convert(&g.poly))).collect();
    for g in w.relators() {
        if g.degree > d_max {
            return Err(Error::WitnessRejected(format!("`{}` has degree above the bound", g.text)));
        }
        if !s.normal_form(g.degree, &s.convert(&g.poly)).is_empty() {
            return Err(Error::WitnessRejected(format!("`{}` does not vanish in the quotient", g.text)));
        }
    }
    notes.push("every witness element lies in the kernel".into());
    for f in r_to_s.kernel_relators() {
        if f.degree > d_max {
            return Err(Error::WitnessRejected(format!("relator `{}` has degree above the bound", f.text)));
        }
        let span = r.ideal_span(&gens, f.degree);
        if !span.contains(&r.normal_form(f.degree, &r.convert(&f.poly))) {
            return Err(Error::WitnessRejected(format!("relator `{}` is not in the ideal of the witness", f.text)));
        }
    }
    notes.push("the witness generates the kernel".into());
    let degrees: Vec<u32> = w.relators().iter().map(|g| g.degree).collect();
    let base = r.exact_hilbert_numerator(d_max);
    let target = s.exact_hilbert_numerator(d_max);
    if base.is_none() || target.is_none() {
        return Err(Error::WitnessRejected(format!(
            "Hilbert series are not determined within internal degree {d_max}"
        )));
    }
    if !regular_sequence_certified(base.as_deref(), &degrees, target.as_deref()) {
        return Err(Error::WitnessRejected("Hilbert series is not that of a regular sequence".into()));
    }
    notes.push("Hilbert series equals that of a regular sequence".into());
    Ok(notes)
}

fn model_counts(pres: &Presentation, top: u32, d_max: u32) -> Result<Vec<usize>> {
    with_field!(pres.field(), |f| {
        let t = build_minimal_model(f, pres, top.max(1), d_max)?;
        Ok((0..=top).map(|n| t.count_in_degree(n)).collect())
    })
}

/// For each `i <= i_max` with `2i` in the characteristic window, checks
/// `rank D_2i(S|R) <= rank D_2i(S|Q)`.
pub fn jacobi_zariski_audit(tower: &Tower, witness: &[String], i_max: u32, d_max: u32) -> Result<AuditReport> {
    let (_, s_over_r, s_over_q) = tower.triple()?;
    let instance = format!("{} -> {}", describe(&tower.layers[1]), ring_name(&s_over_r, &texts(&s_over_r)));
    let mut report = AuditReport::new("jacobi-zariski", instance, 2 * i_max, d_max);
    let notes = with_field!(s_over_r.field(), |f| verify_witness(f, &s_over_r, witness, d_max))?;
    for n in notes {
        report.check(n, "verified".into(), true);
    }
    let p = s_over_r.field().characteristic();
    let top = (1..=i_max).map(|i| 2 * i).filter(|&n| in_aq_window(p, n)).max().unwrap_or(1);
    let over_r = model_counts(&s_over_r, top, d_max)?;
    let over_q = model_counts(&s_over_q, top, d_max)?;
    for i in 1..=i_max {
        let n = 2 * i;
        let assertion = format!("rank D_{n}(S|R) <= rank D_{n}(S|Q)");
        if !in_aq_window(p, n) {
            report.skip(assertion, format!("outside-window in characteristic {p}"));
            continue;
        }
        let (a, b) = (over_r[n as usize], over_q[n as usize]);
        report.check(assertion, format!("{a} <= {b}"), a <= b);
    }
    Ok(report.finish())
}

fn texts(p: &Presentation) -> Vec<String> {
    p.relators().iter().map(|r| r.text.clone()).collect()
}

/// With `R` and `S` both c.i. over `Q`, checks `rank D_n(S|R) = 0` for
/// `3 <= n <= N` in the characteristic window.
pub fn ci_vanishing_audit(tower: &Tower, n_max: u32, d_max: u32) -> Result<AuditReport> {
    let (r_over_q, s_over_r, s_over_q) = tower.triple()?;
    let instance = format!("{} -> {}", describe(&r_over_q), ring_name(&s_over_r, &texts(&s_over_r)));
    let mut report = AuditReport::new("ci-vanishing", instance, n_max, d_max);
    for (label, p) in [("R", &r_over_q), ("S", &s_over_q)] {
        let v = ci_check(p, d_max)?;
        if v.is_ci != CiStatus::Yes {
            return Err(Error::Precondition(format!("{label} is not a certified complete intersection over Q")));
        }
        report.check(format!("{label} is a complete intersection over Q"), "yes".into(), true);
    }
    let p = s_over_r.field().characteristic();
    let counts = model_counts(&s_over_r, n_max, d_max)?;
    for n in 3..=n_max {
        let assertion = format!("rank D_{n}(S|R) = 0");
        if !in_aq_window(p, n) {
            report.skip(assertion, format!("outside-window in characteristic {p}"));
            continue;
        }
        let c = counts[n as usize];
        report.check(assertion, format!("ε_{} = {c}", n + 1), c == 0);
    }
    Ok(report.finish())
}
