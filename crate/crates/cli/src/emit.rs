use std::cmp::Ordering;

use clap::{Args, ValueEnum};
use genus4::exactfield::parse_tower;
use genus4::fixtures;
use genus4::periods::{BallPoint, ExactPoint, Param, PeriodMatrix};
use genus4::suite::{self, Pipeline};
use genus4::TowerElem;
use num_traits::{One, Zero};

use crate::{emit_stdout, CliError};

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    /// The 3-dimensional family over the 2-ball.
    Prym,
    /// The genus-4 family in (τ, z₁, z₂).
    Genus4,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    ExactJson,
    Decimal,
}

#[derive(Args)]
pub struct EmitArgs {
    kind: Kind,
    /// Use the special point z* of the 2-ball.
    #[arg(long, conflicts_with_all = ["z1", "z2"])]
    special: bool,
    /// Tower literal such as `(1/2)+(-1)*zeta^3`, or a decimal pair `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    z1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z2: Option<String>,
    /// Elliptic parameter in the upper half plane (genus4 only).
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::ExactJson)]
    format: Format,
    /// Ball precision for decimal output and the domain check, in bits.
    #[arg(long, default_value_t = suite::DEFAULT_PREC, value_parser = clap::value_parser!(u64).range(2..=65536))]
    prec: u64,
}

fn literal(flag: &str, src: &str) -> Result<TowerElem, CliError> {
    parse_tower(src).map_err(|e| CliError::Usage(format!("--{flag} {src:?}: {e}")))
}

/// Sign of a real tower element, refined until certified; `None` only for 0.
fn certified_sign(x: &TowerElem, prec: u64) -> Option<(Ordering, u64)> {
    if x.is_zero() {
        return None;
    }
    let mut p = prec;
    loop {
        if let Some(s) = x.embed(p).real_sign() {
            return Some((s, p));
        }
        p *= 2;
    }
}

fn real_decimal(x: &TowerElem, prec: u64) -> String {
    x.embed(prec).re().to_decimal(12)
}

/// Rejects points outside the 2-ball or τ outside the upper half plane.
fn check_domain(point: &ExactPoint, prec: u64) -> Result<(), CliError> {
    let norm = [Param::Z1, Param::Z2]
        .iter()
        .filter_map(|p| point.get(p))
        .fold(TowerElem::zero(), |acc, z| acc + z.clone() * z.conj());
    if point.contains_key(&Param::Z1) || point.contains_key(&Param::Z2) {
        let gap = TowerElem::one() - norm.clone();
        match certified_sign(&gap, prec) {
            Some((Ordering::Greater, _)) => {}
            other => {
                let p = other.map_or(prec, |(_, p)| p);
                return Err(CliError::Usage(format!(
                    "point outside the 2-ball: |z1|^2+|z2|^2 = {} (certified at {p} bits), must be < 1",
                    real_decimal(&norm, p)
                )));
            }
        }
    }
    if let Some(tau) = point.get(&Param::Tau) {
        // Im τ = (τ − τ̄)/(2i)
        let im = (tau.clone() - tau.conj()) * (-TowerElem::i()).scale(&genus4::scalar::ratio(1, 2));
        match certified_sign(&im, prec) {
            Some((Ordering::Greater, _)) => {}
            other => {
                let p = other.map_or(prec, |(_, p)| p);
                return Err(CliError::Usage(format!(
                    "tau outside the upper half plane: Im tau = {} (certified at {p} bits)",
                    real_decimal(&im, p)
                )));
            }
        }
    }
    Ok(())
}

pub fn run(args: &EmitArgs) -> Result<(), CliError> {
    let mut point = ExactPoint::new();
    if args.special {
        let [z1, z2] = fixtures::special_point();
        point.insert(Param::Z1, z1);
        point.insert(Param::Z2, z2);
    }
    if let Some(s) = &args.z1 {
        point.insert(Param::Z1, literal("z1", s)?);
    }
    if let Some(s) = &args.z2 {
        point.insert(Param::Z2, literal("z2", s)?);
    }
    if let Some(s) = &args.tau {
        if matches!(args.kind, Kind::Prym) {
            return Err(CliError::Usage("--tau applies to genus4 only".into()));
        }
        point.insert(Param::Tau, literal("tau", s)?);
    }
    check_domain(&point, args.prec)?;

    let (conventions, _) = suite::resolve_conventions().map_err(|e| CliError::Unresolved(e.to_string()))?;
    let pipeline = Pipeline::build(conventions).map_err(|e| CliError::Failed(e.to_string()))?;
    let family = match args.kind {
        Kind::Prym => &pipeline.prym,
        Kind::Genus4 => &pipeline.genus4,
    };
    let m = family.substitute(&point);
    match args.format {
        Format::ExactJson => {
            emit_stdout(&serde_json::to_string_pretty(&m.to_json()).expect("matrix serializes"));
        }
        Format::Decimal => emit_stdout(decimal(&m, args.prec)?.trim_end()),
    }
    Ok(())
}

fn decimal(m: &PeriodMatrix, prec: u64) -> Result<String, CliError> {
    let free: Vec<&str> = m.params().into_iter().map(Param::name).collect();
    if !free.is_empty() {
        return Err(CliError::Usage(format!(
            "decimal output needs values for: {}",
            free.join(", ")
        )));
    }
    let vals = m.eval_ball(&BallPoint::new(), prec).map_err(|e| CliError::Failed(e.to_string()))?;
    let mut out = format!("# {}x{} period matrix, {prec}-bit balls (midpoints)\n", vals.rows(), vals.cols());
    for i in 0..vals.rows() {
        let row: Vec<String> = (0..vals.cols()).map(|j| vals[(i, j)].to_decimal()).collect();
        out.push_str(&row.join("  "));
        out.push('\n');
    }
    Ok(out)
}
