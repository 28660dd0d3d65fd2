//! The report document emitted by the command-line tool, and its aligned
//! text rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::audit::{AuditReport, CheckVerdict};
use crate::dg::VariableDump;
use crate::invariants::{AqRankTable, AqStatus, CiVerdict, DeviationEntry, DeviationTable, KoszulH1, Route};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportBounds {
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(rename = "D")]
    pub d: u32,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
}

/// Only the sections a command computed are present.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<Route>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deviations: Option<BTreeMap<u32, DeviationEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci: Option<CiVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aq_ranks: Option<AqRankTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub koszul_h1: Option<KoszulH1>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poincare: Option<Vec<u64>>,
    pub bounds: ReportBounds,
}

impl Report {
    pub fn with_bounds(bounds: ReportBounds) -> Self {
        Report { bounds, ..Report::default() }
    }

    pub fn set_deviations(&mut self, table: DeviationTable) {
        self.route = Some(table.route);
        self.deviations = Some(table.entries);
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn to_table(&self) -> String {
        let d = self.bounds.d;
        let mut out = String::new();
        if let Some(devs) = &self.deviations {
            if let Some(route) = self.route {
                let _ = writeln!(out, "deviations ({})", serde_json::to_value(route).unwrap().as_str().unwrap());
            }
            let rows: Vec<Vec<String>> = devs
                .iter()
                .map(|(n, e)| {
                    vec![
                        format!("ε_{n}"),
                        "=".into(),
                        e.count.to_string(),
                        format!("(certified to internal degree {})", e.certified_d),
                    ]
                })
                .collect();
            out += &align(&rows, &[false, false, true, false]);
        }
        if let Some(ci) = &self.ci {
            let status = serde_json::to_value(ci.is_ci).unwrap();
            let ev = &ci.evidence;
            let rows = vec![
                row(&["complete intersection", status.as_str().unwrap()]),
                row(&["regular homomorphism", &ci.regular_homomorphism.to_string()]),
                row(&["kernel generators", &ev.kernel_generators.to_string()]),
                row(&["ε_3", &ev.epsilon3.to_string()]),
                row(&["μ(H_1) of Koszul complex", &ev.koszul_h1_generators.to_string()]),
                row(&["Hilbert series product", if ev.hilbert_matches { "matches" } else { "differs" }]),
            ];
            out += &align(&rows, &[false, false]);
            let _ = writeln!(out, "(certified to internal degree {})", ci.certified_d);
        }
        if let Some(aq) = &self.aq_ranks {
            let rows: Vec<Vec<String>> = aq
                .entries
                .iter()
                .map(|(n, e)| match (e.status, e.rank) {
                    (AqStatus::Certified, Some(r)) => row(&[
                        &format!("rank D_{n}"),
                        "=",
                        &r.to_string(),
                        &format!("(certified to internal degree {})", aq.certified_d),
                    ]),
                    _ => row(&[&format!("rank D_{n}"), "", "", "outside-window"]),
                })
                .collect();
            out += &align(&rows, &[false, false, true, false]);
        }
        if let Some(h) = &self.koszul_h1 {
            let _ = writeln!(out, "μ(H_1) = {} (certified to internal degree {})", h.generators, h.certified_d);
            let rows: Vec<Vec<String>> = h
                .dimensions
                .iter()
                .enumerate()
                .map(|(deg, dim)| row(&[&format!("dim H_1 in degree {deg}"), "=", &dim.to_string()]))
                .collect();
            out += &align(&rows, &[false, false, true]);
        }
        if let Some(b) = &self.betti {
            let rows: Vec<Vec<String>> =
                b.iter().enumerate().map(|(n, v)| row(&[&format!("b_{n}"), "=", &v.to_string()])).collect();
            out += &align(&rows, &[false, false, true]);
            let _ = writeln!(out, "(certified to internal degree {d})");
        }
        if let Some(p) = &self.poincare {
            let rows: Vec<Vec<String>> =
                p.iter().enumerate().map(|(n, v)| row(&[&format!("t^{n}"), &v.to_string()])).collect();
            out += &align(&rows, &[false, true]);
            let _ = writeln!(out, "(deviations certified to internal degree {d})");
        }
        out
    }
}

fn row(cells: &[&str]) -> Vec<String> {
    cells.iter().map(|c| c.to_string()).collect()
}

/// Space-aligned columns; `right[i]` right-justifies column `i`.
pub fn align(rows: &[Vec<String>], right: &[bool]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            if c > 0 {
                line.push(' ');
            }
            let pad = widths[c] - cell.chars().count();
            if right.get(c).copied().unwrap_or(false) {
                line.extend(std::iter::repeat_n(' ', pad));
                line += cell;
            } else {
                line += cell;
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out += line.trim_end();
        out.push('\n');
    }
    out
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn dump_table(dump: &[VariableDump]) -> String {
    let mut rows = vec![row(&["name", "hdeg", "idim", "flavor", "differential"])];
    for v in dump {
        let flavor = serde_json::to_value(v.flavor).unwrap();
        rows.push(row(&[&v.name, &v.hdeg.to_string(), &v.idim.to_string(), flavor.as_str().unwrap(), &v.differential]));
    }
    align(&rows, &[false, true, true, false, false])
}

pub fn audit_table(report: &AuditReport) -> String {
    let mut out = String::new();
    let verdict = serde_json::to_value(report.verdict).unwrap();
    let _ = writeln!(out, "audit: {}", report.theorem);
    let _ = writeln!(out, "instance: {}", report.instance);
    let _ = writeln!(out, "bounds: N = {}, D = {}", report.bounds.n, report.bounds.d);
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            let v = match c.verdict {
                CheckVerdict::Pass => "PASS",
                CheckVerdict::Fail => "FAIL",
                CheckVerdict::Skipped => "----",
            };
            row(&[v, &c.assertion, &c.observed])
        })
        .collect();
    out += &align(&rows, &[false, false, false]);
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "verdict: {}", verdict.as_str().unwrap());
    out
}
