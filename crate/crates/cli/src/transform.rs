use std::path::PathBuf;

use anyhow::anyhow;
use clap::{Args, ValueEnum};
use knotoid::diagram::{dt_from_letters, knot_from_dt, CutMode, KnotoidPD};

use crate::input::{read_diagram, Failure};
use crate::write_output;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Mirror,
    Reverse,
    Sym,
    /// Knotoid product of two inputs (head of the first joined to the leg of the second).
    Product,
    /// Disjoint union of a knotoid and a closed diagram.
    Union,
    /// Open a knot into a knotoid, deleting `--moves` passages at the end.
    Cut,
    /// Insert a kink on `--edge`.
    R1,
    /// Push edge `--over` across edge `--under`.
    R2,
    /// Renumber crossings by `--perm`.
    Reorder,
    /// Knot PD from a DT code given by `--dt`.
    Dt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Pull over-strands off the head (Ω₋).
    Over,
    /// Pull under-strands off the head (Ω̄₋).
    Under,
    /// Delete whatever passage ends the arc.
    Any,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KinkSign {
    Positive,
    Negative,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[arg(long, value_enum)]
    pub op: Op,
    /// Input diagram(s); `product` and `union` take two.
    #[arg(long)]
    pub input: Vec<PathBuf>,
    /// Knot given by a DT code, numbers (`4,6,2`) or letters (`cacbca`);
    /// used in place of the first `--input`.
    #[arg(long)]
    pub dt: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub moves: usize,
    #[arg(long, value_enum, default_value = "any")]
    pub mode: Mode,
    #[arg(long)]
    pub edge: Option<i64>,
    #[arg(long, value_enum, default_value = "positive")]
    pub sign: KinkSign,
    #[arg(long)]
    pub over: Option<i64>,
    #[arg(long)]
    pub under: Option<i64>,
    #[arg(long, value_delimiter = ',')]
    pub perm: Vec<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, op: Op) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Input(anyhow!("--op {op:?} needs {flag}")))
}

fn parse_dt(code: &str) -> Result<Vec<i64>, Failure> {
    let bad = |e| Failure::from_lib(e, &format!("DT code {code:?}"));
    if code.chars().any(|c| c.is_ascii_alphabetic()) {
        dt_from_letters(code).map_err(bad)
    } else {
        code.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>().map_err(|e| Failure::Input(anyhow!("DT code {code:?}: {s}: {e}"))))
            .collect()
    }
}

pub fn run(args: &TransformArgs) -> Result<(), Failure> {
    let mut inputs = Vec::new();
    let mut names = Vec::new();
    // A DT code stands in for the first input diagram.
    if let Some(code) = &args.dt {
        let knot =
            knot_from_dt(&parse_dt(code)?).map_err(|e| Failure::from_lib(e, &format!("DT code {code:?}")))?;
        inputs.push(knot);
        names.push(format!("DT code {code:?}"));
    } else if args.op == Op::Dt {
        return Err(Failure::Input(anyhow!("--op dt needs --dt")));
    }
    for p in &args.input {
        inputs.push(read_diagram(p)?.pd().clone());
        names.push(p.display().to_string());
    }
    let expected = match args.op {
        Op::Product | Op::Union => 2,
        _ => 1,
    };
    if inputs.len() != expected {
        return Err(Failure::Input(anyhow!(
            "--op {:?} takes {expected} input diagram(s), got {}",
            args.op,
            inputs.len()
        )));
    }
    let context = names.join(", ");
    let lib = |r: knotoid::Result<KnotoidPD>| r.map_err(|e| Failure::from_lib(e, &context));
    let out = match args.op {
        Op::Mirror => inputs[0].mirror(),
        Op::Reverse => inputs[0].reverse(),
        Op::Sym => inputs[0].sym(),
        Op::Product => lib(inputs[0].product(&inputs[1]))?,
        Op::Union => lib(inputs[0].disjoint_union(&inputs[1]))?,
        Op::Cut => {
            let mode = match args.mode {
                Mode::Under => CutMode::Under,
                Mode::Over => CutMode::Over,
                Mode::Any => CutMode::Any,
            };
            lib(inputs[0].cut_knot_to_knotoid(args.moves, mode))?
        }
        Op::R1 => {
            lib(inputs[0].insert_r1(need(args.edge, "--edge", args.op)?, args.sign == KinkSign::Positive))?
        }
        Op::R2 => {
            lib(inputs[0]
                .insert_r2(need(args.over, "--over", args.op)?, need(args.under, "--under", args.op)?))?
        }
        Op::Reorder => lib(inputs[0].reorder(&args.perm))?,
        Op::Dt => inputs[0].clone(),
    };
    write_output(args.output.as_ref(), &(out.to_json() + "\n"))
}
