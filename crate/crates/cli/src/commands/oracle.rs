use parahoric_core::notation::parse_index_list;
use parahoric_core::oracle::run_checks;
use serde::Serialize;

use crate::cli::OracleCommand;
use crate::context::{outln, print_json, Context, Format};
use crate::error::{CliError, CliResult};

#[derive(Serialize)]
struct Row {
    check: String,
    cases: usize,
    failures: usize,
    passed: bool,
}

pub fn run(ctx: &Context, cmd: &OracleCommand) -> CliResult<()> {
    let OracleCommand::Check { datum, len, primes } = cmd;
    let g = ctx.group(datum.datum.as_deref())?;
    let primes: Vec<u64> = parse_index_list(primes)?.into_iter().map(|p| p as u64).collect();
    let rows: Vec<Row> = run_checks(&g, *len, &primes)?
        .into_iter()
        .map(|r| Row {
            passed: r.passed(),
            check: r.name,
            cases: r.cases,
            failures: r.failures,
        })
        .collect();
    match ctx.format(Format::Text) {
        Format::Json => print_json(&rows),
        Format::Text => {
            for r in &rows {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                outln!("{:<20} {:>8} cases {:>6} failures  {verdict}", r.check, r.cases, r.failures);
            }
        }
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::CheckFailed(format!("{failed} oracle checks failed")));
    }
    Ok(())
}
