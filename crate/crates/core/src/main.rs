//! Command-line front end: `spindex <command> --config FILE
//! [--format csv|jsonl] [--parallel N] [--out FILE]`.
//!
//! Exit codes: 0 success, 1 config error, 2 mathematical precondition
//! violation, 3 verification mismatch.

use spindex::config::{parse_config, CommandName};
use spindex::error::Error;
use spindex::exec::{build_job, execute, verification_failed};
use spindex::report::{emit_report, Format};
use std::io::Write;
use std::process::ExitCode;

struct Args {
    command: String,
    config: String,
    format: Format,
    parallel: usize,
    out: Option<String>,
}

fn usage() -> &'static str {
    "usage: spindex <describe|cohomology|dirac|index|pair|verify> --config FILE \
[--format csv|jsonl] [--parallel N] [--out FILE]"
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    if argv.is_empty() {
        return Err(usage().into());
    }
    let command = argv[0].clone();
    let mut config = None;
    let mut format = Format::Jsonl;
    let mut parallel = 1usize;
    let mut out = None;
    let mut i = 1;
    while i < argv.len() {
        match argv[i].as_str() {
            "--config" => {
                i += 1;
                config = Some(argv.get(i).ok_or("--config needs a value")?.clone());
            }
            "--format" => {
                i += 1;
                let v = argv.get(i).ok_or("--format needs a value")?;
                format = Format::parse(v).map_err(|e| e.to_string())?;
            }
            "--parallel" => {
                i += 1;
                let v = argv.get(i).ok_or("--parallel needs a value")?;
                parallel = v.parse().map_err(|_| format!("bad --parallel value `{v}`"))?;
                if parallel == 0 {
                    return Err("--parallel must be at least 1".into());
                }
            }
            "--out" => {
                i += 1;
                out = Some(argv.get(i).ok_or("--out needs a value")?.clone());
            }
            other => return Err(format!("unknown argument `{other}`\n{}", usage())),
        }
        i += 1;
    }
    let config = config.ok_or_else(|| format!("missing --config\n{}", usage()))?;
    Ok(Args { command, config, format, parallel, out })
}

fn run(args: &Args) -> Result<(String, bool), Error> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::ConfigGeneral(format!("cannot read {}: {e}", args.config)))?;
    let cfg = parse_config(&text)?;
    let cli_command = CommandName::parse(&args.command)
        .ok_or_else(|| Error::ConfigGeneral(format!("unknown command `{}`", args.command)))?;
    if cli_command != cfg.command {
        return Err(Error::ConfigGeneral(format!(
            "command mismatch: CLI says `{}`, config says `{}`",
            args.command,
            cfg.command.name()
        )));
    }
    let job = build_job(cfg)?;
    let records = execute(&job, args.parallel)?;
    let failed = verification_failed(&records);
    Ok((emit_report(&records, args.format), failed))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let args = match parse_args(&argv) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("{msg}");
            return ExitCode::from(1);
        }
    };
    match run(&args) {
        Ok((output, failed)) => {
            if let Some(path) = &args.out {
                if let Err(e) = std::fs::write(path, &output) {
                    eprintln!("cannot write {path}: {e}");
                    return ExitCode::from(1);
                }
            } else {
                print!("{output}");
                let _ = std::io::stdout().flush();
            }
            if failed {
                eprintln!("verification mismatch");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
