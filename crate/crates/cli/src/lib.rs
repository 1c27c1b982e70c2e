//! Script front end: lexing, parsing, evaluation and reporting.

pub mod diagnostic;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod session;

use serde_json::{json, Value};

pub use diagnostic::Diagnostic;
pub use report::Report;
pub use session::{Options, Session};

use rfx::reflexivity::Verdict;

/// Parses and runs a whole script. A parse or binding error aborts the run.
pub fn run_script(text: &str, opts: Options) -> Result<Vec<Report>, Diagnostic> {
    let stmts = parser::parse_script(text)?;
    let mut session = Session::new(text, opts);
    for st in &stmts {
        session.run(st)?;
    }
    Ok(session.log)
}

/// Combined verdict of a run; an empty run holds vacuously.
pub fn overall(reports: &[Report]) -> Verdict {
    reports.iter().fold(Verdict::Holds, |v, r| v.and(r.verdict))
}

/// The document written by `--json`.
pub fn json_document(command: &str, inputs: Value, reports: &[Report], total_ms: f64) -> Value {
    let witnesses: Vec<_> = reports.iter().flat_map(|r| r.witnesses.iter().cloned()).collect();
    json!({
        "command": command,
        "inputs": inputs,
        "verdict": overall(reports),
        "witnesses": witnesses,
        "timings": { "total_ms": total_ms },
        "reports": reports,
    })
}
