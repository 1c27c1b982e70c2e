use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

use rfx::polyring::{Field, MonomialOrder};
use rfx_cli::{json_document, overall, run_script, Options};

/// Checks reflexivity and stability properties of modules described in an `.rfx` script.
#[derive(Parser, Debug)]
#[command(name = "rfx", version)]
struct Args {
    /// Script to run (must end in `.rfx`).
    script: PathBuf,
    /// Ext window used by every vanishing check.
    #[arg(long, default_value_t = 6)]
    window: usize,
    /// Monomial order: degrevlex or lex.
    #[arg(long, default_value = "degrevlex")]
    order: String,
    /// Coefficient field for rings declared over `k`: QQ or Fp:p.
    #[arg(long, default_value = "QQ")]
    field: String,
    /// Write a machine-readable report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Prune approximations to minimal form.
    #[arg(long)]
    minimal: bool,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("rfx: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if args.script.extension().and_then(|e| e.to_str()) != Some("rfx") {
        return usage(format!("{}: script files must have the .rfx extension", args.script.display()));
    }
    let order = match MonomialOrder::parse(&args.order) {
        Ok(o) => o,
        Err(e) => return usage(e),
    };
    let field = match Field::parse(&args.field) {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    let text = match std::fs::read_to_string(&args.script) {
        Ok(t) => t,
        Err(e) => return usage(format!("{}: {e}", args.script.display())),
    };
    let opts = Options {
        window: args.window,
        order,
        field,
        minimal: args.minimal,
    };
    let start = Instant::now();
    let reports = match run_script(&text, opts) {
        Ok(r) => r,
        Err(d) => {
            eprintln!("{}:{d}", args.script.display());
            return ExitCode::from(2);
        }
    };
    for r in &reports {
        print!("{}", r.render());
    }
    let verdict = overall(&reports);
    println!("overall: {verdict}");
    if let Some(path) = &args.json {
        let inputs = json!({
            "script": args.script.display().to_string(),
            "window": args.window,
            "order": args.order,
            "field": args.field,
            "minimal": args.minimal,
        });
        let doc = json_document(&format!("rfx {}", args.script.display()), inputs, &reports, start.elapsed().as_secs_f64() * 1e3);
        let body = serde_json::to_string_pretty(&doc).expect("reports serialize");
        if let Err(e) = std::fs::write(path, body + "\n") {
            return usage(format!("{}: {e}", path.display()));
        }
    }
    ExitCode::from(verdict.exit_code() as u8)
}
