//! Command-line harness: runs the verification suites, emits code data
//! and the geometry tables, and reports pass/fail with stable exit codes
//! (0 pass, 1 fail, 2 usage error).

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use phantom_core::css::CssCodeDocument;
use phantom_core::pg32::LineTable;
use phantom_core::pg_code::{build_pg_code, verify_s8_and_uc, verify_t8};
use phantom_core::verify::{
    run_all, suite_classify, suite_hypercube, suite_nogo, suite_pg832, suite_tables,
};
use phantom_core::{css_distance, hypercube_code, phantom_certificate, VerificationReport};

#[derive(Parser)]
#[command(
    name = "phantom",
    version,
    about = "Phantom-code construction and verification"
)]
struct Cli {
    /// Seed for randomized property sampling inside the suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit verification reports as JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and exit 0 only if every check passes
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Emit a code (stabilisers, logicals, certificate, codewords)
    EmitCode {
        #[command(subcommand)]
        code: EmitTarget,
    },
    /// Re-emit the line and incidence tables
    Tables {
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Report the coset distances of a code
    Distance {
        #[command(subcommand)]
        code: CodeName,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Every suite below, in order
    All,
    /// The ((8,16,2)) code on PG(3,2)
    Pg832,
    /// A punctured hypercube code
    Hypercube { k: usize },
    /// Group structure and table reproduction
    Tables,
    /// Invariant-code classifications and the uniqueness scan
    Classify,
    /// The Pauli stabiliser no-go trace
    Nogo,
}

#[derive(Subcommand)]
enum CodeName {
    /// The ((8,16,2)) code
    Pg832,
    /// The [[2^k - 1, k, 2]] punctured hypercube code
    Hypercube { k: usize },
}

#[derive(Subcommand)]
enum EmitTarget {
    /// The ((8,16,2)) code
    Pg832 {
        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        format: EmitFormat,
    },
    /// The [[2^k - 1, k, 2]] punctured hypercube code
    Hypercube {
        k: usize,
        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        format: EmitFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suite } => {
            let reports = match suite {
                Suite::All => run_all(cli.seed),
                Suite::Pg832 => vec![suite_pg832()],
                Suite::Hypercube { k } => {
                    if !(2..=5).contains(&k) {
                        eprintln!("hypercube suites run for 2 <= k <= 5");
                        return ExitCode::from(2);
                    }
                    vec![suite_hypercube(k)]
                }
                Suite::Tables => vec![suite_tables(cli.seed)],
                Suite::Classify => vec![suite_classify()],
                Suite::Nogo => vec![suite_nogo()],
            };
            print_reports(&reports, cli.json);
            if reports.iter().all(VerificationReport::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::EmitCode { code } => match code {
            EmitTarget::Pg832 { format } => emit_pg832(format),
            EmitTarget::Hypercube { k, format } => emit_hypercube(k, format),
        },
        Command::Tables {
            format: TableFormat::Csv,
        } => {
            print!("{}", tables_csv());
            ExitCode::SUCCESS
        }
        Command::Distance { code } => {
            let (name, code) = match code {
                CodeName::Hypercube { k } => {
                    if !(2..=5).contains(&k) {
                        eprintln!("hypercube codes are built for 2 <= k <= 5");
                        return ExitCode::from(2);
                    }
                    (format!("hypercube {k}"), hypercube_code(k))
                }
                CodeName::Pg832 => {
                    eprintln!(
                        "the ((8,16,2)) code is not a CSS code; its distance 2 is certified by `verify pg832`"
                    );
                    return ExitCode::from(2);
                }
            };
            match css_distance(&code) {
                Ok((dx, dz, d)) => {
                    println!("{name}: d_x = {dx}, d_z = {dz}, d = {d}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{name}: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}

fn print_reports(reports: &[VerificationReport], as_json: bool) {
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(reports).expect("serializable")
        );
    } else {
        for report in reports {
            print!("{}", report.render());
        }
    }
}

fn emit_hypercube(k: usize, format: EmitFormat) -> ExitCode {
    if !(2..=5).contains(&k) {
        eprintln!("hypercube codes are built for 2 <= k <= 5");
        return ExitCode::from(2);
    }
    let code = hypercube_code(k);
    let certificate = (k >= 3).then(|| phantom_certificate(&code, k).expect("family certifies"));
    let doc = CssCodeDocument::from_code(&code, certificate.as_ref());
    match format {
        EmitFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        EmitFormat::Csv => {
            println!("field,value");
            println!("n,{}", doc.n);
            println!("k,{}", doc.k);
            for row in &doc.stabilizer_x {
                println!("stabilizer_x,{row}");
            }
            for row in &doc.stabilizer_z {
                println!("stabilizer_z,{row}");
            }
            for row in &doc.logical_x {
                println!("logical_x,{row}");
            }
            for row in &doc.logical_z {
                println!("logical_z,{row}");
            }
            if let Some(cert) = &doc.certificate {
                for entry in &cert.generators {
                    println!(
                        "certificate,g{}{} -> {} ({})",
                        entry.transvection[0],
                        entry.transvection[1],
                        entry.physical_permutation,
                        if entry.verified { "verified" } else { "FAILED" }
                    );
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn emit_pg832(format: EmitFormat) -> ExitCode {
    let code = match build_pg_code() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    let uc = verify_s8_and_uc(&code);
    let t8 = verify_t8(&code);
    match format {
        EmitFormat::Json => {
            let codewords: Vec<serde_json::Value> = code
                .logical_basis()
                .basis()
                .iter()
                .enumerate()
                .map(|(index, state)| {
                    let mut amplitudes = BTreeMap::new();
                    for (t, &a) in state.amplitudes().iter().enumerate() {
                        if a.norm() > 1e-15 {
                            amplitudes.insert(format!("{t:08b}"), vec![a.re, a.im]);
                        }
                    }
                    json!({ "index": index, "amplitudes": amplitudes })
                })
                .collect();
            let t8_matrix: Vec<Vec<[f64; 2]>> = t8
                .matrix
                .iter()
                .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
                .collect();
            let doc = json!({
                "code": "pg832",
                "n": 8,
                "logical_dimension": 16,
                "codewords": codewords,
                "logical_uc": uc.matrix,
                "logical_t8": t8_matrix,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        EmitFormat::Csv => {
            println!("record,index,bitstring_or_col,re,im");
            for (index, state) in code.logical_basis().basis().iter().enumerate() {
                for (t, &a) in state.amplitudes().iter().enumerate() {
                    if a.norm() > 1e-15 {
                        println!("state,{index},{t:08b},{},{}", a.re, a.im);
                    }
                }
            }
            for (r, row) in uc.matrix.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    println!("uc,{r},{c},{v},0");
                }
            }
            for (r, row) in t8.matrix.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    println!("t8,{r},{c},{},{}", v.re, v.im);
                }
            }
        }
    }
    ExitCode::SUCCESS
}

/// The two geometry tables as CSV, in the embedded row order.
fn tables_csv() -> String {
    let table = LineTable::embedded();
    let mut out = String::from("line,u,v,w,b,generators,dual\n");
    for row in &table.lines {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.id, row.points[0], row.points[1], row.points[2], row.b, row.word, row.dual_id
        ));
    }
    out.push_str("point,lines_through,perp_points,perp_lines\n");
    for row in &table.points {
        let lines: Vec<String> = row.lines_through.iter().map(ToString::to_string).collect();
        let pts: Vec<String> = row.perp_points.iter().map(ToString::to_string).collect();
        let perp: Vec<String> = row.perp_lines.iter().map(ToString::to_string).collect();
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.x,
            lines.join(" "),
            pts.join(" "),
            perp.join(" ")
        ));
    }
    out
}
