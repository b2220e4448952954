use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use biocoref_cli::{
    check_fixtures, run_eval, run_inspect, run_resolve, write_fixtures, Cli, Command, RunConfig, UnknownAnaphor,
    EXIT_CONFIG, EXIT_FAILURES, EXIT_OK,
};

fn fail(code: i32, err: anyhow::Error) -> i32 {
    eprintln!("{}", serde_json::json!({"level": "error", "error": format!("{err:#}")}));
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Resolve(args) => match RunConfig::from_args(&args) {
            Ok(cfg) => match run_resolve(&cfg, &mut io::stderr()) {
                Ok(report) => report.summary.exit_code(),
                Err(e) => fail(EXIT_CONFIG, e),
            },
            Err(e) => fail(EXIT_CONFIG, e),
        },
        Command::Eval(args) => match run_eval(&args) {
            Ok(report) => {
                if args.json {
                    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
                } else {
                    print!("{}", report.table());
                }
                EXIT_OK
            }
            Err(e) => fail(EXIT_CONFIG, e),
        },
        Command::Inspect(args) => match run_inspect(&args) {
            Ok(text) => {
                print!("{text}");
                EXIT_OK
            }
            Err(e) if e.is::<UnknownAnaphor>() => fail(EXIT_FAILURES, e),
            Err(e) => fail(EXIT_CONFIG, e),
        },
        Command::Fixtures(args) => {
            if args.check {
                match check_fixtures(&args.dir) {
                    Ok(checks) => {
                        let mut out = io::stdout().lock();
                        let mut failed = 0;
                        for c in &checks {
                            if c.problems.is_empty() {
                                let _ = writeln!(out, "PASS {}", c.name);
                            } else {
                                failed += 1;
                                let _ = writeln!(out, "FAIL {}: {}", c.name, c.problems.join("; "));
                            }
                        }
                        if failed == 0 {
                            EXIT_OK
                        } else {
                            EXIT_FAILURES
                        }
                    }
                    Err(e) => fail(EXIT_CONFIG, e),
                }
            } else {
                match write_fixtures(&args.dir) {
                    Ok(()) => EXIT_OK,
                    Err(e) => fail(EXIT_CONFIG, e),
                }
            }
        }
    };
    ExitCode::from(code as u8)
}
