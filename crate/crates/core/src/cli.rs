//! Command-line surface. [`run`] turns parsed arguments into a [`Report`],
//! which renders as CSV or JSON.
//!
//! Numbers are rounded to 12 significant digits and printed in their
//! shortest round-trip form, so the same value reads identically in both
//! encodings and across platforms.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Number, Value};

use crate::bell::{chsh_k1_sum, s_k};
use crate::error::Result;
use crate::ladder::{
    optimal_alpha_k, pk_general, pk_hardy, solve_chain, verify_ladder, SettingsChain,
};
use crate::lhv::{direct_contradiction, enumerate_boschi_bound, enumerate_bound, LhvBound};
use crate::optimizer::{scan_m, table1};
use crate::quantum::{LadderState, Setting, ZERO_TOLERANCE};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "ladder",
    version,
    about = "Two-particle ladder nonlocality calculator"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output encoding
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Threshold below which a probability counts as zero
    #[arg(long, global = true, default_value_t = ZERO_TOLERANCE, value_parser = parse_tol)]
    pub tol: f64,

    /// Write the report here instead of standard output
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Read and print angles in degrees
    #[arg(long, global = true)]
    pub degrees: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Optimal ratios r1, r2 and maximal P_K for K = 1..kmax
    Table1 {
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// P_K for a free setting (default: the optimal one), with a Born-rule cross-check
    Pk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha_k: Option<f64>,
    },
    /// Full settings chain from the free setting a_K
    Solve {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha_k: f64,
    },
    /// CHSH-type quantity S_K at equal settings
    Bell {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        x: f64,
    },
    /// Local hidden-variable bounds by exhaustive enumeration
    Lhv {
        #[arg(long)]
        k: usize,
    },
    /// Samples of m_K(x) on [lo, hi]
    Scan {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Parity contradiction of the ideal-limit relations
    Contradiction {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    let tol: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if tol > 0.0 && tol <= 1e-3 {
        Ok(tol)
    } else {
        Err(format!("tolerance must lie in (0, 1e-3], got {tol}"))
    }
}

/// One named block of numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub params: Vec<(String, f64)>,
    pub tables: Vec<Table>,
}

/// Rounds to 12 significant digits and prints the shortest string that
/// reads back as the rounded value. Exponent notation is used outside
/// `[1e-5, 1e15)`.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    if (1e-5..1e15).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn json_number(v: f64) -> Value {
    if v.is_finite() {
        Value::Number(Number::from_str(&format_number(v)).expect("valid JSON number"))
    } else {
        Value::Null
    }
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, table) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows = |table: &Table| -> Value {
            Value::Array(
                table
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = table
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.clone(), json_number(*v)))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect(),
            )
        };
        let results = match self.tables.as_slice() {
            [single] => rows(single),
            many => Value::Object(many.iter().map(|t| (t.name.clone(), rows(t))).collect()),
        };
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), json_number(*v)))
            .collect();
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert("params".into(), Value::Object(params));
        root.insert("results".into(), results);
        let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
        text.push('\n');
        text
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

struct Angles {
    degrees: bool,
}

impl Angles {
    fn read(&self, v: f64) -> Result<Setting> {
        Setting::new(if self.degrees { v.to_radians() } else { v })
    }

    fn show(&self, s: Setting) -> f64 {
        if self.degrees {
            s.radians().to_degrees()
        } else {
            s.radians()
        }
    }
}

fn bound_table(name: &str, k: usize, bound: &LhvBound) -> Table {
    let mut columns: Vec<String> = ["K", "max_s", "assignments_checked", "argmax_index"]
        .iter()
        .map(|c| c.to_string())
        .collect();
    columns.extend((0..=k).map(|i| format!("a_{i}")));
    columns.extend((0..=k).map(|i| format!("b_{i}")));
    let mut row = vec![
        k as f64,
        bound.max_s as f64,
        bound.assignments_checked as f64,
        bound.argmax.index() as f64,
    ];
    row.extend(bound.argmax.a_values.iter().map(|o| o.value() as f64));
    row.extend(bound.argmax.b_values.iter().map(|o| o.value() as f64));
    Table {
        name: name.to_string(),
        columns,
        rows: vec![row],
    }
}

fn chain_table(chain: &SettingsChain, angles: &Angles) -> Table {
    let mut t = Table::new("chain", &["k", "alpha", "beta"]);
    for k in 0..=chain.k() {
        t.rows.push(vec![
            k as f64,
            angles.show(chain.alpha(k)),
            angles.show(chain.beta(k)),
        ]);
    }
    t
}

fn param(name: &str, v: f64) -> (String, f64) {
    (name.to_string(), v)
}

/// Runs one command and collects its output.
pub fn run(config: &RunConfig) -> Result<Report> {
    let angles = Angles {
        degrees: config.degrees,
    };
    let tol = config.tol;
    let (command, params, tables) = match &config.command {
        Command::Table1 { kmax } => {
            let mut t = Table::new("table1", &["K", "r1", "r2", "p_max"]);
            for row in table1(*kmax)? {
                t.rows.push(vec![row.k as f64, row.r1, row.r2, row.p_max]);
            }
            ("table1", vec![param("kmax", *kmax as f64)], vec![t])
        }
        Command::Pk { k, x, alpha_k } => {
            let state = LadderState::from_ratio(*x)?;
            let setting = match alpha_k {
                Some(a) => angles.read(*a)?,
                None => optimal_alpha_k(&state, *k)?,
            };
            let general = pk_general(&state, *k, setting)?;
            let hardy = pk_hardy(*x, *k)?;
            let cert = verify_ladder(&state, &solve_chain(&state, *k, setting)?);
            let residual = (general - cert.p_k).abs();
            let mut t = Table::new(
                "pk",
                &[
                    "K",
                    "x",
                    "alpha_k",
                    "pk_general",
                    "pk_hardy",
                    "oracle_pk",
                    "oracle_residual",
                    "max_zero_violation",
                    "verified",
                ],
            );
            t.rows.push(vec![
                *k as f64,
                *x,
                angles.show(setting),
                general,
                hardy,
                cert.p_k,
                residual,
                cert.max_zero_violation,
                flag(residual <= tol && cert.max_zero_violation <= tol),
            ]);
            let mut params = vec![param("K", *k as f64), param("x", *x)];
            if let Some(a) = alpha_k {
                params.push(param("alpha_k", *a));
            }
            ("pk", params, vec![t])
        }
        Command::Solve { k, x, alpha_k } => {
            let state = LadderState::from_ratio(*x)?;
            let chain = solve_chain(&state, *k, angles.read(*alpha_k)?)?;
            let cert = verify_ladder(&state, &chain);
            let mut c = Table::new(
                "certificate",
                &[
                    "p_k",
                    "max_zero_violation",
                    "constraint_residual",
                    "verified",
                ],
            );
            c.rows.push(vec![
                cert.p_k,
                cert.max_zero_violation,
                chain.constraint_residual(*x),
                flag(cert.max_zero_violation <= tol),
            ]);
            (
                "solve",
                vec![
                    param("K", *k as f64),
                    param("x", *x),
                    param("alpha_k", *alpha_k),
                ],
                vec![chain_table(&chain, &angles), c],
            )
        }
        Command::Bell { k, x } => {
            let state = LadderState::from_ratio(*x)?;
            let r = s_k(&state, *k)?;
            let two_pk = 2.0 * pk_hardy(*x, *k)?;
            let mut t = Table::new(
                "bell",
                &[
                    "K",
                    "x",
                    "p_plus_00",
                    "p_plus_kk",
                    "cross_sum",
                    "s_value",
                    "two_pk",
                    "boschi_lhs",
                    "boschi_rhs",
                    "chsh_k1_sum",
                ],
            );
            t.rows.push(vec![
                *k as f64,
                *x,
                r.p_plus_00,
                r.p_plus_kk,
                r.cross_sum,
                r.s_value,
                two_pk,
                r.boschi_lhs,
                r.boschi_rhs,
                chsh_k1_sum(&state)?,
            ]);
            ("bell", vec![param("K", *k as f64), param("x", *x)], vec![t])
        }
        Command::Lhv { k } => {
            let chsh = enumerate_bound(*k)?;
            let boschi = enumerate_boschi_bound(*k)?;
            (
                "lhv",
                vec![param("K", *k as f64)],
                vec![
                    bound_table("chsh_bound", *k, &chsh),
                    bound_table("boschi_bound", *k, &boschi),
                ],
            )
        }
        Command::Scan { k, lo, hi, steps } => {
            let mut t = Table::new("samples", &["x", "m_value"]);
            for s in scan_m(*k, *lo, *hi, *steps)? {
                t.rows.push(vec![s.x, s.m_value]);
            }
            (
                "scan",
                vec![
                    param("K", *k as f64),
                    param("lo", *lo),
                    param("hi", *hi),
                    param("steps", *steps as f64),
                ],
                vec![t],
            )
        }
        Command::Contradiction { k } => {
            let r = direct_contradiction(*k)?;
            let mut columns = vec!["K", "lhs_product", "rhs_product"];
            let mut row = vec![*k as f64, r.lhs_product as f64, r.rhs_product as f64];
            if let (Some(sat), Some(checked)) = (r.satisfying_assignments, r.assignments_checked) {
                columns.extend(["satisfying_assignments", "assignments_checked"]);
                row.extend([sat as f64, checked as f64]);
            }
            let mut t = Table::new("contradiction", &columns);
            t.rows.push(row);
            ("contradiction", vec![param("K", *k as f64)], vec![t])
        }
    };
    Ok(Report {
        command: command.to_string(),
        params,
        tables,
    })
}
