use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use signdet::cli::{
    cmd_bench, cmd_selftest, cmd_signs, parse_instance, render_signs, BenchOptions, Format,
    SignsOptions,
};

#[derive(Parser)]
#[command(name = "signdet", version, about = "Feasible sign conditions on the real roots of P0")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute feasible sign conditions for an instance file (`-` for stdin).
    Signs {
        file: String,
        /// Cross-check against root isolation.
        #[arg(long)]
        oracle: bool,
        /// Cross-check against the 3^s system.
        #[arg(long)]
        naive: bool,
        /// Report solver operation counts per step.
        #[arg(long)]
        count_ops: bool,
        /// Share the step-2 partial products between row blocks.
        #[arg(long = "optimized-step22")]
        optimized: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Emit per-step operation counts for seeded random instances as CSV.
    Bench {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        #[arg(long, default_value_t = 3)]
        num_polys: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        coeff_bound: i64,
        #[arg(long = "optimized-step22")]
        optimized: bool,
    },
    /// Run the built-in verification groups.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn read_input(file: &str) -> std::io::Result<String> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(file)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Signs {
            file,
            oracle,
            naive,
            count_ops,
            optimized,
            format,
        } => {
            let text = match read_input(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {file}: {e}");
                    return ExitCode::from(1);
                }
            };
            let inst = match parse_instance(&text) {
                Ok(i) => i,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let opts = SignsOptions {
                oracle,
                naive,
                count_ops,
                optimized,
                format: match format {
                    OutputFormat::Text => Format::Text,
                    OutputFormat::Json => Format::Json,
                },
            };
            match cmd_signs(&inst, &opts) {
                Ok(report) => {
                    print!("{}", render_signs(&report, &opts));
                    if report.mismatches.is_empty() {
                        ExitCode::SUCCESS
                    } else {
                        for m in &report.mismatches {
                            eprintln!("mismatch: {m}");
                        }
                        ExitCode::from(2)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Bench {
            seed,
            degree,
            num_polys,
            trials,
            coeff_bound,
            optimized,
        } => {
            let opts = BenchOptions {
                seed,
                degree,
                num_polys,
                trials,
                coeff_bound,
                optimized,
            };
            match cmd_bench(&opts) {
                Ok(csv) => {
                    print!("{csv}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Selftest { seed } => {
            let groups = cmd_selftest(seed);
            let mut ok = true;
            for g in &groups {
                let status = if g.passed() { "PASS" } else { "FAIL" };
                println!("{status} {} ({} checks)", g.name, g.checks);
                for f in &g.failures {
                    println!("  {f}");
                }
                ok &= g.passed();
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
