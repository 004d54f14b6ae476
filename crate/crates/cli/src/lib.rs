//! The `sinrsched` command line, callable in-process through [`run`].

pub mod args;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::Output;

fn dispatch(cli: &Cli) -> report::CliResult<Output> {
    match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Check(a) => commands::check(a),
        Command::Schedule(a) => commands::schedule(a),
        Command::Capacity(a) => commands::capacity(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::Compare(a) => commands::compare(a),
        Command::Bound(a) => commands::bound(a),
    }
}

fn render(out: &Output) -> String {
    if let Some(raw) = &out.raw {
        return raw.clone();
    }
    match out.format {
        Format::Json => out.reports.iter().map(|r| r.line() + "\n").collect(),
        Format::Text => out.reports.iter().map(|r| r.text()).collect::<Vec<_>>().join("\n"),
    }
}

/// Runs one command line and returns its exit code: 0 on success, 1 when
/// the input is infeasible or fails validation, 2 on parse and usage errors.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 2;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            // one write keeps concurrent invocations from interleaving lines
            let _ = stdout.write_all(render(&out).as_bytes());
            let _ = stdout.flush();
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code()
        }
    }
}
