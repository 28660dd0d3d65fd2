//! Numerical invariants read off the constructed towers: deviations,
//! complete-intersection verdicts, André-Quillen ranks, Betti numbers and
//! Poincaré series.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::times_cyclotomic;
use crate::presentation::Presentation;
use crate::resolution::{
    build_acyclic_closure, build_minimal_model, homology_piece, koszul_complex, minimal_generators, minimal_koszul_complex,
};
use crate::ring::QuotientRing;
use crate::with_field;

/// Which tower the deviations are counted on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// `ε_n = |Y_(n-1)|` on the minimal model of the surjection (n >= 2).
    MinimalModel,
    /// `ε_n = |X_n|` on the acyclic closure of the residue field (n >= 1).
    AcyclicClosure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationEntry {
    pub count: usize,
    #[serde(rename = "certified_D")]
    pub certified_d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationTable {
    pub route: Route,
    pub entries: BTreeMap<u32, DeviationEntry>,
}

impl DeviationTable {
    pub fn get(&self, n: u32) -> Option<usize> {
        self.entries.get(&n).map(|e| e.count)
    }
}

pub fn deviations_with<F: Field>(field: F, pres: &Presentation, n_max: u32, d_max: u32, route: Route) -> Result<DeviationTable> {
    let entry = |count| DeviationEntry { count, certified_d: d_max };
    let entries = match route {
        Route::AcyclicClosure => {
            let t = build_acyclic_closure(field, pres, n_max, d_max)?;
            (1..=n_max).map(|n| (n, entry(t.count_in_degree(n)))).collect()
        }
        Route::MinimalModel => {
            let t = build_minimal_model(field, pres, n_max.saturating_sub(1).max(1), d_max)?;
            (2..=n_max).map(|n| (n, entry(t.count_in_degree(n - 1)))).collect()
        }
    };
    Ok(DeviationTable { route, entries })
}

/// Deviations through homological degree `n_max`, certified to internal
/// degree `d_max`. The closure route counts deviations of the ring itself
/// and ignores the base; the model route counts those of the surjection.
pub fn deviations(pres: &Presentation, n_max: u32, d_max: u32, route: Route) -> Result<DeviationTable> {
    with_field!(pres.field(), |f| deviations_with(f, pres, n_max, d_max, route))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CiStatus {
    Yes,
    No,
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiEvidence {
    /// Minimal number of generators of the kernel.
    pub kernel_generators: usize,
    /// Number of degree-2 variables of the minimal model.
    pub epsilon3: usize,
    /// Minimal number of generators of `H_1` of the Koszul complex on a
    /// minimal generating set of the kernel.
    pub koszul_h1_generators: usize,
    /// Whether the Hilbert series of the quotient equals that of the base
    /// times `prod (1 - t^deg f_i)` through the bound.
    pub hilbert_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiVerdict {
    pub is_ci: CiStatus,
    /// Set when the kernel is zero.
    pub regular_homomorphism: bool,
    pub evidence: CiEvidence,
    #[serde(rename = "certified_D")]
    pub certified_d: u32,
}

/// Whether `target = base * prod (1 - t^deg)` as Hilbert numerators. Both
/// numerators must be exact; for elements of positive degree this holds
/// exactly when they form a regular sequence on the base.
pub fn regular_sequence_certified(base: Option<&[i64]>, degrees: &[u32], target: Option<&[i64]>) -> bool {
    match (base, target) {
        (Some(b), Some(t)) => times_cyclotomic(b, degrees) == t,
        _ => false,
    }
}

pub fn ci_check_with<F: Field>(field: F, pres: &Presentation, d_max: u32) -> Result<CiVerdict> {
    let koszul = minimal_koszul_complex(field.clone(), pres, d_max)?;
    let degrees: Vec<u32> = koszul.variables().iter().map(|v| v.wdeg).collect();
    let mu = minimal_generators(&koszul, 1, d_max)?.len();
    let model = build_minimal_model(field.clone(), pres, 2, d_max)?;
    let epsilon3 = model.count_in_degree(2);
    let base = koszul.ring().exact_hilbert_numerator(d_max);
    let target = QuotientRing::new(field, pres, d_max).exact_hilbert_numerator(d_max);
    let hilbert_matches = regular_sequence_certified(base.as_deref(), &degrees, target.as_deref());
    let is_ci = if mu == 0 && epsilon3 == 0 && hilbert_matches {
        CiStatus::Yes
    } else if mu > 0 || epsilon3 > 0 {
        CiStatus::No
    } else {
        CiStatus::Uncertified
    };
    Ok(CiVerdict {
        is_ci,
        regular_homomorphism: degrees.is_empty(),
        evidence: CiEvidence { kernel_generators: degrees.len(), epsilon3, koszul_h1_generators: mu, hilbert_matches },
        certified_d: d_max,
    })
}

/// Complete-intersection test for the surjection `base -> pres`.
pub fn ci_check(pres: &Presentation, d_max: u32) -> Result<CiVerdict> {
    with_field!(pres.field(), |f| ci_check_with(f, pres, d_max))
}

pub fn d2_rank_via_koszul_with<F: Field>(field: F, pres: &Presentation, d_max: u32) -> Result<usize> {
    let koszul = minimal_koszul_complex(field, pres, d_max)?;
    Ok(minimal_generators(&koszul, 1, d_max)?.len())
}

/// `μ(H_1)` of the Koszul complex on minimal kernel generators, computed
/// without building the minimal model.
pub fn d2_rank_via_koszul(pres: &Presentation, d_max: u32) -> Result<usize> {
    with_field!(pres.field(), |f| d2_rank_via_koszul_with(f, pres, d_max))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulH1 {
    /// Minimal number of generators of `H_1`.
    pub generators: usize,
    /// `dim H_1` in each internal degree `0..=D`.
    pub dimensions: Vec<usize>,
    #[serde(rename = "certified_D")]
    pub certified_d: u32,
}

pub fn koszul_h1_with<F: Field>(field: F, pres: &Presentation, d_max: u32) -> Result<KoszulH1> {
    let t = koszul_complex(field, pres, d_max)?;
    let dimensions = (0..=d_max).map(|d| homology_piece(&t, 1, d).map(|h| h.dimension)).collect::<Result<_>>()?;
    Ok(KoszulH1 { generators: minimal_generators(&t, 1, d_max)?.len(), dimensions, certified_d: d_max })
}

/// `H_1` of the Koszul complex on the relators beyond the base, as listed.
pub fn koszul_h1(pres: &Presentation, d_max: u32) -> Result<KoszulH1> {
    with_field!(pres.field(), |f| koszul_h1_with(f, pres, d_max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AqStatus {
    Certified,
    OutsideWindow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AqEntry {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank: Option<usize>,
    pub status: AqStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AqRankTable {
    pub characteristic: u64,
    pub entries: BTreeMap<u32, AqEntry>,
    #[serde(rename = "certified_D")]
    pub certified_d: u32,
}

/// Whether `n` lies in the range where `rank D_n = ε_(n+1)` holds:
/// all `n >= 2` in characteristic 0, `2 <= n <= 2p - 1` in characteristic `p`.
pub fn in_aq_window(characteristic: u64, n: u32) -> bool {
    n >= 2 && (characteristic == 0 || (n as u64) < 2 * characteristic)
}

pub fn aq_ranks_with<F: Field>(field: F, pres: &Presentation, n_max: u32, d_max: u32) -> Result<AqRankTable> {
    let p = pres.field().characteristic();
    let top = (2..=n_max).filter(|&n| in_aq_window(p, n)).max();
    let model = match top {
        Some(top) => Some(build_minimal_model(field, pres, top, d_max)?),
        None => None,
    };
    let entries = (2..=n_max)
        .map(|n| {
            let entry = match &model {
                Some(m) if in_aq_window(p, n) => AqEntry { rank: Some(m.count_in_degree(n)), status: AqStatus::Certified },
                _ => AqEntry { rank: None, status: AqStatus::OutsideWindow },
            };
            (n, entry)
        })
        .collect();
    Ok(AqRankTable { characteristic: p, entries, certified_d: d_max })
}

/// Ranks of `D_n(S|R)` for `2 <= n <= n_max` via `ε_(n+1) = |Y_n|`.
pub fn aq_ranks(pres: &Presentation, n_max: u32, d_max: u32) -> Result<AqRankTable> {
    with_field!(pres.field(), |f| aq_ranks_with(f, pres, n_max, d_max))
}

/// A single rank, refused outside the characteristic window.
pub fn aq_rank(pres: &Presentation, n: u32, d_max: u32) -> Result<usize> {
    let p = pres.field().characteristic();
    if !in_aq_window(p, n) {
        return Err(Error::OutsideWindow { n, characteristic: p });
    }
    let table = aq_ranks(pres, n, d_max)?;
    Ok(table.entries[&n].rank.expect("in window"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub values: Vec<u64>,
    #[serde(rename = "certified_D")]
    pub certified_d: u32,
}

pub fn betti_numbers_with<F: Field>(field: F, pres: &Presentation, n_max: u32, d_max: u32) -> Result<BettiTable> {
    let t = build_acyclic_closure(field, pres, n_max, d_max)?;
    let values = (0..=n_max).map(|n| t.extension_words(n).len() as u64).collect();
    Ok(BettiTable { values, certified_d: d_max })
}

/// `b_n = dim Tor_n(k, k)`, counted as the words of the acyclic closure
/// in homological degree `n` with unit base monomial.
pub fn betti_numbers(pres: &Presentation, n_max: u32, d_max: u32) -> Result<BettiTable> {
    with_field!(pres.field(), |f| betti_numbers_with(f, pres, n_max, d_max))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSeries {
    pub coefficients: Vec<u64>,
}

fn overflow() -> Error {
    Error::Config("Poincaré coefficient exceeds 64 bits".into())
}

/// Coefficients of `prod (1 + t^odd)^ε / (1 - t^even)^ε` through `t^T`.
pub fn poincare_from_deviations(table: &DeviationTable, terms: u32) -> Result<PoincareSeries> {
    let len = terms as usize + 1;
    let mut series = vec![0u64; len];
    series[0] = 1;
    for n in 1..=terms {
        let eps = table.get(n).ok_or_else(|| {
            Error::InsufficientCertification(format!("deviation ε_{n} is needed for t^{terms} but was not computed"))
        })?;
        let step = n as usize;
        for _ in 0..eps {
            if n % 2 == 1 {
                for i in (step..len).rev() {
                    series[i] = series[i].checked_add(series[i - step]).ok_or_else(overflow)?;
                }
            } else {
                for i in step..len {
                    series[i] = series[i].checked_add(series[i - step]).ok_or_else(overflow)?;
                }
            }
        }
    }
    Ok(PoincareSeries { coefficients: series })
}
