use std::io::{self, Write};

use clap::Parser;
use jumploci_cli::{run, Command};

fn main() {
    let cmd = Command::parse();
    let report = run(&cmd);
    let text = serde_json::to_string_pretty(&report.document).expect("json document");
    // A closed pipe downstream is not our failure.
    let _ = writeln!(io::stdout().lock(), "{text}");
    if let Some(msg) = report.diagnostic {
        eprintln!("error: {msg}");
    }
    std::process::exit(report.exit_code);
}
