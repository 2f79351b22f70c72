use std::fs;
use std::path::{Path, PathBuf};

use clap::Subcommand;
use genus4::covers::CyclicCoverData;
use genus4::intlat::{int_matrix_from_json, int_matrix_to_json, smith_normal_form, symplectic_basis, AlternatingForm};
use genus4::periods::{riemann_first_relation, PeriodMatrix};
use serde_json::{json, Value};

use crate::{emit_stdout, CliError};

#[derive(Subcommand)]
pub enum ToolsCommand {
    /// Elementary divisors of an integer matrix.
    Snf {
        #[arg(long)]
        file: PathBuf,
    },
    /// Symplectic (Frobenius) basis of an alternating integer form.
    SymplecticBasis {
        #[arg(long)]
        file: PathBuf,
    },
    /// First Riemann relation of a period matrix, symbolically.
    RiemannCheck {
        #[arg(long)]
        file: PathBuf,
    },
    /// Genus and eigenspace table of a cyclic cover of the line.
    Covers {
        /// Cover JSON: {"n":6,"exponents":[["-1",1],["0",1],["t",1],["inf",3]]}.
        #[arg(long, conflicts_with_all = ["n", "exponents"])]
        file: Option<PathBuf>,
        #[arg(long, requires = "exponents")]
        n: Option<u32>,
        /// Comma-separated local exponents, one per branch point.
        #[arg(long, requires = "n", value_delimiter = ',', allow_hyphen_values = true)]
        exponents: Option<Vec<i64>>,
    },
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn at(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

pub fn run(cmd: &ToolsCommand) -> Result<(), CliError> {
    match cmd {
        ToolsCommand::Snf { file } => {
            let m = int_matrix_from_json(&read_json(file)?).map_err(|e| at(file, e))?;
            let divisors: Vec<String> = smith_normal_form(&m).divisors().iter().map(|d| d.to_string()).collect();
            emit_stdout(&format!("divisors [{}]", divisors.join(",")));
        }
        ToolsCommand::SymplecticBasis { file } => {
            let m = int_matrix_from_json(&read_json(file)?).map_err(|e| at(file, e))?;
            let form = AlternatingForm::new(m).map_err(|e| at(file, e))?;
            let b = symplectic_basis(&form).map_err(|e| CliError::Failed(e.to_string()))?;
            let out = json!({
                "d": b.d.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "basis": int_matrix_to_json(&b.s),
            });
            emit_stdout(&serde_json::to_string_pretty(&out).expect("serializes"));
        }
        ToolsCommand::RiemannCheck { file } => {
            let p = PeriodMatrix::from_json(&read_json(file)?).map_err(|e| at(file, e))?;
            let rel = riemann_first_relation(&p);
            let mut bad = Vec::new();
            for i in 0..rel.rows() {
                for j in 0..rel.cols() {
                    if !rel[(i, j)].is_identically_zero() {
                        bad.push(format!("({},{}): {}", i + 1, j + 1, rel[(i, j)]));
                    }
                }
            }
            if !bad.is_empty() {
                return Err(CliError::Failed(format!("first relation: nonzero entries\n{}", bad.join("\n"))));
            }
            emit_stdout("first relation: identically zero");
        }
        ToolsCommand::Covers { file, n, exponents } => {
            let cover = match (file, n, exponents) {
                (Some(f), _, _) => CyclicCoverData::from_json(&read_json(f)?).map_err(|e| at(f, e))?,
                (None, Some(n), Some(ex)) => {
                    let points = ex.iter().enumerate().map(|(k, &a)| (format!("b{}", k + 1), a)).collect();
                    CyclicCoverData::new(*n, points).map_err(|e| CliError::Usage(format!("--exponents: {e}")))?
                }
                _ => return Err(CliError::Usage("give --file or both --n and --exponents".into())),
            };
            let genus = cover.genus().map_err(|e| CliError::Usage(e.to_string()))?;
            let rows = cover.eigenspace_dims().map_err(|e| CliError::Usage(e.to_string()))?;
            emit_stdout(&format!("genus {genus}"));
            emit_stdout("i\trank\tdim");
            for r in &rows {
                emit_stdout(&format!("{}\t{}\t{}", r.index, r.rank, r.dim));
            }
            let list = |f: fn(&genus4::covers::EigenRow) -> u32| {
                rows.iter().map(|r| f(r).to_string()).collect::<Vec<_>>().join(",")
            };
            emit_stdout(&format!("dims ({})", list(|r| r.dim)));
            emit_stdout(&format!("ranks ({})", list(|r| r.rank)));
        }
    }
    Ok(())
}
