//! metric-ripple: batch front end for the perturbation-field solvers.
//!
//! Exit codes: 0 success, 1 usage/validation error, 2 non-convergence or
//! oracle failure.

// NaN-rejecting validation keeps the `!(x > 0.0)` comparison shape.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;
mod scenario;

use std::path::PathBuf;

use scenario::{Mode, Scenario};

const USAGE: &str = "\
usage: metric-ripple <subcommand> [flags]

subcommands:
  table1     iterate the reference fringe map and solve its fixed point
  cobweb     emit cobweb plot data for the fringe map
  two-slit   scan the screen profile of the two-slit displacement
  geodesic   integrate a deviation trajectory and compare the closed form
  pulse      evaluate the pulse-interaction envelope
  check      run every built-in oracle and report the energy bookkeeping

flags:
  --config PATH         load key = value defaults from a file
  --out PATH            output directory for CSV files (default .)
  --tol FLOAT           fixed-point tolerance in meters (default 1e-12)
  --max-iter INT        iteration cap (default 10000)
  --profile MIN:MAX:N   sample range for two-slit and pulse scans
  --x0 FLOAT            fringe-map seed in meters (default 5.41e-6)
  --convention NAME     kernel prefactor: standard | paper
  --literal-table-d     use the d = 0.5e-11 m transcription variant
  --check-oracle        (pulse) also run the kernel quadrature oracle
  --show-config         print the effective configuration and exit
";

struct Cli {
    scenario: Scenario,
    show_config: bool,
}

fn usage_error(message: impl AsRef<str>) -> String {
    format!("{}\n{USAGE}", message.as_ref())
}

fn parse_args(argv: &[String]) -> Result<Cli, String> {
    let mode_name = argv
        .first()
        .ok_or_else(|| usage_error("missing subcommand"))?;
    let mode = Mode::parse(mode_name)
        .ok_or_else(|| usage_error(format!("unknown subcommand {mode_name:?}")))?;

    // flags are collected first and applied after any --config file, so
    // the command line keeps precedence
    let mut config: Option<PathBuf> = None;
    let mut overrides: Vec<(&'static str, String)> = Vec::new();
    let mut show_config = false;
    let mut literal_table_d = false;
    let mut check_oracle = false;
    let mut profile: Option<(f64, f64, usize)> = None;

    let mut it = argv[1..].iter();
    while let Some(arg) = it.next() {
        let (flag, inline) = match arg.split_once('=') {
            Some((f, v)) => (f, Some(v.to_string())),
            None => (arg.as_str(), None),
        };
        let mut value = |name: &str| -> Result<String, String> {
            if let Some(v) = inline.clone() {
                return Ok(v);
            }
            it.next()
                .cloned()
                .ok_or_else(|| usage_error(format!("flag {name} needs a value")))
        };
        match flag {
            "--config" => config = Some(PathBuf::from(value("--config")?)),
            "--out" => overrides.push(("out", value("--out")?)),
            "--tol" => overrides.push(("tol", value("--tol")?)),
            "--max-iter" => {
                let v = value("--max-iter")?;
                if mode == Mode::Cobweb {
                    overrides.push(("cobweb_steps", v));
                } else {
                    overrides.push(("max_iter", v));
                }
            }
            "--x0" => overrides.push(("x0", value("--x0")?)),
            "--convention" => overrides.push(("convention", value("--convention")?)),
            "--profile" => {
                let v = value("--profile")?;
                let parts: Vec<&str> = v.split(':').collect();
                if parts.len() != 3 {
                    return Err(usage_error(format!(
                        "--profile expects MIN:MAX:N, got {v:?}"
                    )));
                }
                parts[0]
                    .parse::<f64>()
                    .map_err(|_| usage_error(format!("--profile MIN is not a number: {v:?}")))?;
                parts[1]
                    .parse::<f64>()
                    .map_err(|_| usage_error(format!("--profile MAX is not a number: {v:?}")))?;
                parts[2]
                    .parse::<usize>()
                    .map_err(|_| usage_error(format!("--profile N is not an integer: {v:?}")))?;
                profile = Some((
                    parts[0].parse().unwrap(),
                    parts[1].parse().unwrap(),
                    parts[2].parse().unwrap(),
                ));
            }
            "--literal-table-d" => literal_table_d = true,
            "--check-oracle" => check_oracle = true,
            "--show-config" => show_config = true,
            "--help" | "-h" => return Err(USAGE.to_string()),
            _ => return Err(usage_error(format!("unknown flag {flag:?}"))),
        }
    }

    let mut scenario = Scenario::defaults(mode);
    if let Some(path) = config {
        scenario.load_file(&path)?;
    }
    for (key, value) in overrides {
        scenario
            .set(key, &value)
            .map_err(|e| format!("flag --{key}: {e}"))?;
    }
    if let Some((min, max, n)) = profile {
        scenario.profile_min = min;
        scenario.profile_max = max;
        scenario.profile_n = n;
    }
    scenario.literal_table_d |= literal_table_d;
    scenario.check_oracle |= check_oracle;

    Ok(Cli {
        scenario,
        show_config,
    })
}

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match parse_args(&argv) {
        Ok(cli) => cli,
        Err(message) => {
            eprintln!("{message}");
            std::process::exit(1);
        }
    };
    if cli.show_config {
        commands::run_show_config(&cli.scenario);
        return;
    }
    match commands::dispatch(&cli.scenario) {
        Ok(()) => {}
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}
