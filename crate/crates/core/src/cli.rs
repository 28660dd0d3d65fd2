//! Command-line front end. `run` is the whole program minus process exit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::audit::{self, AuditVerdict, InstanceDoc, Tower};
use crate::error::{Error, Result};
use crate::invariants::{self, Route};
use crate::presentation::{Presentation, PresentationDoc};
use crate::report::{self, Report, ReportBounds};
use crate::resolution::{build_acyclic_closure, build_minimal_model};
use crate::with_field;

#[derive(Parser, Debug)]
#[command(name = "tatekit", version, about = "Deviations, minimal models and acyclic closures of graded rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Presentation JSON (or audit instance JSON for `audit`).
    #[arg(long)]
    input: PathBuf,
    /// Maximum homological degree [default: 6].
    #[arg(long = "N")]
    n: Option<u32>,
    /// Maximum internal degree [default: 12].
    #[arg(long = "D")]
    d: Option<u32>,
    /// Number of series terms.
    #[arg(long = "T", default_value_t = 10)]
    t: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    /// Acyclic closure over a polynomial base, minimal model otherwise.
    Auto,
    MinimalModel,
    AcyclicClosure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AuditKind {
    Rigidity,
    Growth,
    JacobiZariski,
    CiVanishing,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Deviations ε_n for n <= N.
    Deviations {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
    /// Complete-intersection verdict for the surjection base -> ring.
    CiCheck {
        #[command(flatten)]
        common: Common,
    },
    /// André-Quillen ranks D_n for 2 <= n <= N.
    AqRanks {
        #[command(flatten)]
        common: Common,
    },
    /// Betti numbers of the residue field for n <= N.
    Betti {
        #[command(flatten)]
        common: Common,
    },
    /// Poincaré series through t^T from the deviation product.
    Poincare {
        #[command(flatten)]
        common: Common,
    },
    /// H_1 of the Koszul complex on the relators beyond the base.
    KoszulH1 {
        #[command(flatten)]
        common: Common,
    },
    /// Variables of the minimal model (or acyclic closure) through N.
    ModelPrint {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = RouteArg::MinimalModel)]
        route: RouteArg,
    },
    /// Checks a theorem on an instance; exits 2 when a check fails.
    Audit {
        #[arg(value_enum)]
        kind: AuditKind,
        #[command(flatten)]
        common: Common,
    },
}

struct Bounds {
    n: u32,
    d: u32,
    t: u32,
}

fn bounds(common: &Common, n: Option<u32>, d: Option<u32>) -> Result<Bounds> {
    let b = Bounds { n: common.n.or(n).unwrap_or(6), d: common.d.or(d).unwrap_or(12), t: common.t };
    if b.n < 2 {
        return Err(Error::Config(format!("N must be at least 2 (got {})", b.n)));
    }
    if b.d < 2 {
        return Err(Error::Config(format!("D must be at least 2 (got {})", b.d)));
    }
    Ok(b)
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn resolve_route(route: RouteArg, pres: &Presentation) -> Route {
    match route {
        RouteArg::MinimalModel => Route::MinimalModel,
        RouteArg::AcyclicClosure => Route::AcyclicClosure,
        RouteArg::Auto if pres.has_polynomial_base() => Route::AcyclicClosure,
        RouteArg::Auto => Route::MinimalModel,
    }
}

struct Output {
    text: String,
    code: i32,
}

fn emit_report(r: &Report, format: Format) -> Output {
    let text = match format {
        Format::Json => r.to_json(),
        Format::Table => r.to_table(),
    };
    Output { text, code: 0 }
}

fn execute(command: Command) -> Result<Output> {
    if let Command::Audit { kind, common } = command {
        return run_audit(kind, &common);
    }
    let common = match &command {
        Command::Deviations { common, .. }
        | Command::CiCheck { common }
        | Command::AqRanks { common }
        | Command::Betti { common }
        | Command::Poincare { common }
        | Command::KoszulH1 { common }
        | Command::ModelPrint { common, .. } => common.clone(),
        Command::Audit { .. } => unreachable!(),
    };
    let b = bounds(&common, None, None)?;
    let pres = Presentation::from_json(&read(&common.input)?)?;
    let mut r = Report::with_bounds(ReportBounds { n: Some(b.n), d: b.d, t: None });
    match command {
        Command::Deviations { route, .. } => {
            r.set_deviations(invariants::deviations(&pres, b.n, b.d, resolve_route(route, &pres))?);
        }
        Command::CiCheck { .. } => {
            r.bounds.n = None;
            r.ci = Some(invariants::ci_check(&pres, b.d)?);
        }
        Command::AqRanks { .. } => r.aq_ranks = Some(invariants::aq_ranks(&pres, b.n, b.d)?),
        Command::Betti { .. } => r.betti = Some(invariants::betti_numbers(&pres, b.n, b.d)?.values),
        Command::Poincare { .. } => {
            r.bounds = ReportBounds { n: None, d: b.d, t: Some(b.t) };
            let table = invariants::deviations(&pres, b.t, b.d, Route::AcyclicClosure)?;
            r.poincare = Some(invariants::poincare_from_deviations(&table, b.t)?.coefficients);
        }
        Command::KoszulH1 { .. } => {
            r.bounds.n = None;
            r.koszul_h1 = Some(invariants::koszul_h1(&pres, b.d)?);
        }
        Command::ModelPrint { route, .. } => {
            let dump = with_field!(pres.field(), |f| match resolve_route(route, &pres) {
                Route::MinimalModel => build_minimal_model(f, &pres, b.n, b.d)?.dump(),
                Route::AcyclicClosure => build_acyclic_closure(f, &pres, b.n, b.d)?.dump(),
            });
            let text = match common.format {
                Format::Json => report::to_json(&dump),
                Format::Table => report::dump_table(&dump),
            };
            return Ok(Output { text, code: 0 });
        }
        Command::Audit { .. } => unreachable!(),
    }
    Ok(emit_report(&r, common.format))
}

/// Reads an instance document; a bare presentation is accepted as a
/// one-layer tower.
fn read_instance(text: &str) -> Result<InstanceDoc> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("tower").is_some() {
        Ok(serde_json::from_value(value)?)
    } else {
        let doc: PresentationDoc = serde_json::from_value(value)?;
        Ok(InstanceDoc { tower: vec![doc], witness: Vec::new(), n: None, d: None, i_max: None })
    }
}

fn run_audit(kind: AuditKind, common: &Common) -> Result<Output> {
    let inst = read_instance(&read(&common.input)?)?;
    let b = bounds(common, inst.n, inst.d)?;
    let tower = Tower::from_docs(&inst.tower)?;
    let report = match kind {
        AuditKind::Rigidity => audit::rigidity_audit(tower.top(), b.n, b.d)?,
        AuditKind::Growth => audit::growth_probe(tower.top(), b.n, b.d)?,
        AuditKind::JacobiZariski => {
            let i_max = inst.i_max.unwrap_or(b.n / 2).max(1);
            audit::jacobi_zariski_audit(&tower, &inst.witness, i_max, b.d)?
        }
        AuditKind::CiVanishing => audit::ci_vanishing_audit(&tower, b.n, b.d)?,
    };
    let text = match common.format {
        Format::Json => report::to_json(&report),
        Format::Table => report::audit_table(&report),
    };
    Ok(Output { text, code: if report.verdict == AuditVerdict::Fail { 2 } else { 0 } })
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status: 0 on success, 1 on invalid input, 2 when an
/// audit fails.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = write!(err, "{e}");
                return 1;
            }
            let msg = e.to_string();
            let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return 1;
        }
    };
    match execute(cli.command) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.to_string().replace('\n', " "));
            1
        }
    }
}
