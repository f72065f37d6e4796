use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use trop_core::convexity::{
    hrep_to_vrep, member, orthant_hull, segment, system_contains, vrep_to_hrep, Membership,
    OrthantHull,
};
use trop_core::elimination::{farkas, fm_step_nonstrict, fm_step_strict, rows_from_matrix, sep_solve, AffineRow};
use trop_core::puiseux::{lift_construct, lift_verify};
use trop_core::semiring::Sign;
use trop_core::{Error, Result, SymMatrix, SymNum};

/// Signed tropical convexity over the symmetrized max-plus semiring.
#[derive(Parser)]
#[command(name = "trop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixArg {
    /// Matrix text (rows separated by newlines or `;`), or `@file`.
    #[arg(short = 'A', long = "matrix")]
    a: String,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Is the open cone sep(A) nonempty?
    Feas(MatrixArg),
    /// Kernel or separator certificate for A.
    Farkas(MatrixArg),
    /// Is b in the hull of the columns of A?
    Member {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(short = 'b')]
        b: String,
    },
    /// Per-orthant generators of the hull of the columns of A.
    Hull(MatrixArg),
    /// One Fourier-Motzkin step.
    Eliminate {
        #[command(flatten)]
        m: MatrixArg,
        /// 1-based row (strict) or variable (non-strict) to eliminate.
        #[arg(long)]
        row: usize,
        /// Treat A as a matrix whose rows are constraints on y (open cone).
        #[arg(long)]
        strict: bool,
    },
    /// Breakpoints of the segment between p and q.
    Segment {
        #[arg(short = 'p')]
        p: String,
        #[arg(short = 'q')]
        q: String,
    },
    /// Closed halfspaces describing the hull of the columns of A.
    Vrep2hrep(MatrixArg),
    /// Generators of the set cut out by the rows of A (constant first).
    Hrep2vrep(MatrixArg),
    /// Lift A so that a combination values to b; random hull points with --seed.
    Liftcheck {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(short = 'b')]
        b: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// SVG picture of a planar hull.
    Plot {
        #[command(flatten)]
        m: MatrixArg,
        /// Halfspace rows to shade as well.
        #[arg(short = 'H')]
        halfspaces: Option<String>,
        /// Magnitudes below `-span` collapse onto the axes.
        #[arg(long, default_value_t = 4)]
        span: i64,
        /// Emit SVG (the only plot format).
        #[arg(long)]
        svg: bool,
    },
}

enum Output {
    Success(String),
    Negative(String),
}

fn read_source(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn parse_matrix(s: &str) -> Result<SymMatrix> {
    let text = read_source(s)?;
    if text.trim_start().starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        SymMatrix::from_json(&v)
    } else {
        text.parse()
    }
}

fn parse_vector(s: &str) -> Result<Vec<SymNum>> {
    read_source(s)?
        .split_whitespace()
        .enumerate()
        .map(|(k, t)| t.parse().map_err(|e: Error| Error::Parse(format!("entry {}: {e}", k + 1))))
        .collect()
}

fn rows_text(rows: &[AffineRow]) -> String {
    rows.iter().map(|r| format!("{r}\n")).collect()
}

fn rows_json(rows: &[AffineRow]) -> serde_json::Value {
    json!({ "rows": rows.iter().map(AffineRow::to_json).collect::<Vec<_>>() })
}

fn matrix_out(m: &SymMatrix, as_json: bool) -> String {
    if as_json {
        m.to_json().to_string()
    } else {
        format!("{m}")
    }
}

fn hull_json(h: &OrthantHull) -> serde_json::Value {
    let cells: Vec<serde_json::Value> = h
        .cells
        .iter()
        .map(|(eps, _)| {
            let pattern: String = eps.iter().map(|s| if *s == Sign::Pos { '+' } else { '-' }).collect();
            json!({ "orthant": pattern, "generators": h.signed_cell(eps) })
        })
        .collect();
    json!({ "cells": cells })
}

/// Sign-log screen coordinate of one value.
fn screen(x: &SymNum, span: &BigRational) -> f64 {
    let m = x.mag().map_or(0.0, |m| (m + span).max(BigRational::zero()).to_f64().unwrap_or(0.0));
    if x.is_neg() {
        -m
    } else {
        m
    }
}

fn plot(a: &SymMatrix, halfspaces: Option<&[AffineRow]>, span: i64) -> Result<String> {
    if a.rows() != 2 {
        return Err(Error::Dimension("plot needs points in the plane".into()));
    }
    let span_q = BigRational::from_integer(span.into());
    let hull = orthant_hull(a)?;
    let top = a
        .entries()
        .iter()
        .filter_map(SymNum::mag)
        .max()
        .cloned()
        .unwrap_or_default();
    let reach = (&top + &span_q + BigRational::from_integer(1.into())).max(BigRational::from_integer(1.into()));
    let steps = 24i64;
    let scale = 200.0 / reach.to_f64().unwrap_or(1.0);
    let to_px = |v: f64, flip: bool| if flip { 250.0 - v * scale } else { 250.0 + v * scale };
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="500" height="500" viewBox="0 0 500 500">"#);
    let _ = writeln!(svg, r##"<rect width="500" height="500" fill="#ffffff"/>"##);
    let _ = writeln!(svg, r##"<line x1="0" y1="250" x2="500" y2="250" stroke="#999999"/>"##);
    let _ = writeln!(svg, r##"<line x1="250" y1="0" x2="250" y2="500" stroke="#999999"/>"##);
    let mut grid = vec![SymNum::Zero];
    for k in 0..=steps {
        let m = -&span_q + &reach * BigRational::new(k.into(), steps.into());
        grid.push(SymNum::Pos(m.clone()));
        grid.push(SymNum::Neg(m));
    }
    let cell = 200.0 / steps as f64 / 2.0;
    for x in &grid {
        for y in &grid {
            let p = vec![x.clone(), y.clone()];
            let (px, py) = (to_px(screen(x, &span_q), false), to_px(screen(y, &span_q), true));
            if let Some(rows) = halfspaces {
                if system_contains(rows, &p)? {
                    let _ = writeln!(svg, r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#f4c27a" fill-opacity="0.5"/>"##, px - cell, py - cell, 2.0 * cell, 2.0 * cell);
                }
            }
            if hull.contains(&p) {
                let _ = writeln!(svg, r##"<circle cx="{px:.2}" cy="{py:.2}" r="{:.2}" fill="#4a7bd0"/>"##, cell * 0.8);
            }
        }
    }
    for col in a.columns() {
        let (px, py) = (to_px(screen(&col[0], &span_q), false), to_px(screen(&col[1], &span_q), true));
        let _ = writeln!(svg, r##"<circle cx="{px:.2}" cy="{py:.2}" r="5" fill="#c0392b"/>"##);
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<SymNum> {
    let mut x: Vec<SymNum> = (0..n)
        .map(|_| match rng.gen_range(0..4) {
            0 => SymNum::Zero,
            k => SymNum::pos(1 - k as i64),
        })
        .collect();
    let top = rng.gen_range(0..n);
    x[top] = SymNum::one();
    x
}

fn random_point_in(rng: &mut ChaCha8Rng, p: &[SymNum]) -> Vec<SymNum> {
    p.iter()
        .map(|c| match c {
            SymNum::Bal(m) => match rng.gen_range(0..3) {
                0 => SymNum::Pos(m.clone()),
                1 => SymNum::Neg(m.clone()),
                _ => SymNum::Zero,
            },
            other => other.clone(),
        })
        .collect()
}

fn run(cli: Cli) -> Result<Output> {
    Ok(match cli.command {
        Command::Feas(m) => {
            let a = parse_matrix(&m.a)?;
            match sep_solve(&a) {
                Some(y) => Output::Success(json!({ "feasible": true, "separator": y }).to_string()),
                None => Output::Negative(json!({ "feasible": false }).to_string()),
            }
        }
        Command::Farkas(m) => {
            let a = parse_matrix(&m.a)?;
            Output::Success(farkas(&a)?.to_json(&a).to_string())
        }
        Command::Member { m, b } => {
            let a = parse_matrix(&m.a)?;
            let b = parse_vector(&b)?;
            let res = member(&a, &b)?;
            let text = res.to_json().to_string();
            match res {
                Membership::Member(_) => Output::Success(text),
                Membership::Separated(_) => Output::Negative(text),
            }
        }
        Command::Hull(m) => {
            let a = parse_matrix(&m.a)?;
            Output::Success(hull_json(&orthant_hull(&a)?).to_string())
        }
        Command::Eliminate { m, row, strict } => {
            let a = parse_matrix(&m.a)?;
            if strict {
                if row == 0 || row > a.rows() {
                    return Err(Error::Dimension(format!("row {row} out of range")));
                }
                Output::Success(matrix_out(&fm_step_strict(&a, row - 1), m.json))
            } else {
                let rows = fm_step_nonstrict(&rows_from_matrix(&a, false), row)?;
                if m.json {
                    Output::Success(rows_json(&rows).to_string())
                } else {
                    Output::Success(rows_text(&rows))
                }
            }
        }
        Command::Segment { p, q } => {
            let (p, q) = (parse_vector(&p)?, parse_vector(&q)?);
            Output::Success(segment(&p, &q)?.to_json().to_string())
        }
        Command::Vrep2hrep(m) => {
            let rows = vrep_to_hrep(&parse_matrix(&m.a)?)?;
            if m.json {
                Output::Success(rows_json(&rows).to_string())
            } else {
                Output::Success(rows_text(&rows))
            }
        }
        Command::Hrep2vrep(m) => {
            let rows = rows_from_matrix(&parse_matrix(&m.a)?, false);
            Output::Success(matrix_out(&hrep_to_vrep(&rows)?, m.json))
        }
        Command::Liftcheck { m, b, seed, count } => {
            let a = parse_matrix(&m.a)?;
            let mut cases = Vec::new();
            if let Some(b) = b {
                let b = parse_vector(&b)?;
                match member(&a, &b)? {
                    Membership::Member(x) => cases.push((x, b)),
                    Membership::Separated(_) => {
                        return Ok(Output::Negative(json!({ "member": false }).to_string()))
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
                for _ in 0..count {
                    let x = random_weights(&mut rng, a.cols());
                    let b = random_point_in(&mut rng, &a.mul_vec(&x)?);
                    cases.push((x, b));
                }
            }
            let mut results = Vec::new();
            let mut all = true;
            for (x, b) in cases {
                let lift = lift_construct(&a, &x, &b)?;
                let ok = lift_verify(&a, &lift, &x, &b);
                all &= ok;
                let shown: Vec<Vec<String>> =
                    lift.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
                results.push(json!({ "weights": x, "point": b, "lift": shown, "verified": ok }));
            }
            let text = json!({ "all_verified": all, "cases": results }).to_string();
            if all {
                Output::Success(text)
            } else {
                Output::Negative(text)
            }
        }
        Command::Plot { m, halfspaces, span, svg: _ } => {
            let a = parse_matrix(&m.a)?;
            let rows = halfspaces
                .map(|h| parse_matrix(&h).map(|hm| rows_from_matrix(&hm, false)))
                .transpose()?;
            Output::Success(plot(&a, rows.as_deref(), span)?)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Output::Success(s)) => {
            print!("{s}");
            if !s.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Ok(Output::Negative(s)) => {
            println!("{s}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
