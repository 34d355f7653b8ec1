use std::path::PathBuf;

use anyhow::anyhow;
use clap::{Args, ValueEnum};
use knotoid::complex::{build_complex, MuSource};
use knotoid::homology::{homology_ranks, poincare, reduce_complex, specialize, HomologyTable};
use knotoid::resolution::ShortcutTrace;
use knotoid::statesum::{jones_a, kauffman_bracket, refined_bracket_bullet, refined_turaev, turaev_qu};
use knotoid::LaurentPoly;
use serde_json::{Map, Value};

use crate::input::{read_bytes, read_diagram, Diagram, Failure};
use crate::{write_output, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    /// Winding homology ranks `{"ranks":[[i,j,k,r],...]}`.
    Winding,
    /// Khovanov knotoid homology, `W(t, q, 1)`.
    Kh,
    /// Turaev polynomial in `q` and `u` (state sum).
    Turaev,
    /// Jones polynomial in `A` (state sum).
    Jones,
    /// Kauffman bracket in `A`.
    Bracket,
    /// Refined polynomial `T*(A, l, h)`; polyline input only.
    Refined,
    /// Refined bracket `[K](A, B, l, h)`; polyline input only.
    Bullet,
}

impl Invariant {
    fn key(self) -> &'static str {
        match self {
            Invariant::Winding => "winding",
            Invariant::Kh => "kh",
            Invariant::Turaev => "turaev",
            Invariant::Jones => "jones",
            Invariant::Bracket => "bracket",
            Invariant::Refined => "refined",
            Invariant::Bullet => "bullet",
        }
    }
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    /// Diagram file (PD JSON or polyline JSON), or `-` for standard input.
    #[arg(long)]
    pub input: PathBuf,
    /// Invariants to compute, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "winding")]
    pub invariant: Vec<Invariant>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Shortcut trace `{"trace":[[edge,sign],...]}` used for the u-grading.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Cancel unit differential entries before computing ranks.
    #[arg(long)]
    pub reduce: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

enum Report {
    Table(HomologyTable),
    Poly(LaurentPoly),
}

impl Report {
    fn json(&self) -> Value {
        match self {
            Report::Table(t) => serde_json::from_str(&t.to_json()).expect("valid json"),
            Report::Poly(p) => serde_json::to_value(p).expect("serializable"),
        }
    }

    fn text(&self) -> String {
        match self {
            Report::Table(t) => {
                let mut s = String::new();
                for (&(i, j, k), r) in &t.ranks {
                    s.push_str(&format!("i={i} j={j} k={k} rank={r}\n"));
                }
                s.push_str(&format!("W = {}", poincare(t)));
                s
            }
            Report::Poly(p) => p.to_string(),
        }
    }
}

struct Session<'a> {
    args: &'a ComputeArgs,
    diagram: Diagram,
    name: String,
    mu: MuSource,
    table: Option<HomologyTable>,
}

impl Session<'_> {
    fn lib<T>(&self, r: knotoid::Result<T>) -> Result<T, Failure> {
        r.map_err(|e| Failure::from_lib(e, &self.name))
    }

    fn table(&mut self) -> Result<HomologyTable, Failure> {
        if let Some(t) = &self.table {
            return Ok(t.clone());
        }
        let cx = self.lib(build_complex(self.diagram.pd(), &self.mu))?;
        let cx = if self.args.reduce { reduce_complex(&cx) } else { cx };
        let mut t = homology_ranks(&cx);
        t.tag_diagram(self.diagram.pd());
        self.table = Some(t.clone());
        Ok(t)
    }

    fn geometric(&self, what: Invariant) -> Result<&knotoid::diagram::GeometricDiagram, Failure> {
        match &self.diagram {
            Diagram::Geometric(g, _) => Ok(g),
            Diagram::Pd(_) => Err(Failure::Input(anyhow!(
                "{}: the {} invariant needs polyline input",
                self.name,
                what.key()
            ))),
        }
    }

    fn compute(&mut self, what: Invariant) -> Result<Report, Failure> {
        let pd = self.diagram.pd();
        Ok(match what {
            Invariant::Winding => Report::Table(self.table()?),
            Invariant::Kh => {
                let w = poincare(&self.table()?);
                Report::Poly(self.lib(specialize(&w))?.kh)
            }
            Invariant::Turaev => Report::Poly(self.lib(turaev_qu(pd, &self.mu))?),
            Invariant::Jones => Report::Poly(self.lib(jones_a(pd))?),
            Invariant::Bracket => Report::Poly(self.lib(kauffman_bracket(pd))?),
            Invariant::Refined => {
                let g = self.geometric(what)?;
                Report::Poly(self.lib(refined_turaev(g))?)
            }
            Invariant::Bullet => {
                let g = self.geometric(what)?;
                Report::Poly(self.lib(refined_bracket_bullet(g))?)
            }
        })
    }
}

pub fn run(args: &ComputeArgs) -> Result<(), Failure> {
    let diagram = read_diagram(&args.input)?;
    let name = args.input.display().to_string();
    let mu = match &args.trace {
        Some(path) => {
            let trace = ShortcutTrace::parse(&read_bytes(path)?)
                .map_err(|e| Failure::from_lib(e, &path.display().to_string()))?;
            MuSource::Trace(trace)
        }
        None if diagram.pd().is_single_segment() => MuSource::Combinatorial,
        None => MuSource::Canonical,
    };
    let mut session = Session { args, diagram, name, mu, table: None };
    let mut reports = Vec::new();
    for &inv in &args.invariant {
        reports.push((inv, session.compute(inv)?));
    }
    let out = match args.format {
        Format::Json => {
            let value = if let [(_, r)] = reports.as_slice() {
                r.json()
            } else {
                let mut m = Map::new();
                for (inv, r) in &reports {
                    m.insert(inv.key().to_string(), r.json());
                }
                Value::Object(m)
            };
            serde_json::to_string(&value).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            for (inv, r) in &reports {
                s.push_str(&format!("[{}]\n{}\n", inv.key(), r.text()));
            }
            s
        }
    };
    write_output(args.output.as_ref(), &out)
}
