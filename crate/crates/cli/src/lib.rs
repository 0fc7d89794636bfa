//! Command-line front end: subcommands, CSV/JSON output and the
//! acceptance runner.

pub mod commands;
pub mod output;
pub mod parallel;
pub mod verify;

use std::io::Write;

use clap::Parser;

use commands::Cli;

/// Exit code for a failed verification.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit code for usage and domain errors.
pub const EXIT_USAGE: i32 = 2;

/// Parses `argv` (program name first), runs the command against the process
/// streams and returns the exit code.
pub fn run(argv: Vec<String>) -> i32 {
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

/// [`run`] writing to the given streams.
pub fn run_with(argv: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let rest = &argv[1.min(argv.len())..];
    let outcome = match commands::execute(&cli, rest) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.0);
            return EXIT_USAGE;
        }
    };
    for line in &outcome.log {
        let _ = writeln!(stderr, "{line}");
    }
    let text = match outcome
        .document
        .render(outcome.format, outcome.block.as_deref())
    {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match output::emit(&text, cli.out.as_ref(), stdout) {
        // A closed pipe (`quatfield … | head`) is not an error.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
        Ok(()) => {}
    }
    if outcome.failed.is_empty() {
        0
    } else {
        let ids: Vec<String> = outcome.failed.iter().map(u32::to_string).collect();
        let _ = writeln!(stderr, "failed criteria: {}", ids.join(", "));
        EXIT_VERIFY_FAILED
    }
}
