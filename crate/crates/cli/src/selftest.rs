use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use knotoid::algebra::{Poly, Var};
use knotoid::complex::{build_complex, MuSource};
use knotoid::diagram::KnotoidPD;
use knotoid::fixtures::{FixtureEntry, Fixtures};
use knotoid::homology::{homology_ranks, poincare, reduce_complex, specialize, HomologyTable};
use knotoid::statesum::{refined_turaev, turaev_qu};

use crate::input::Failure;

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Fixture directory (default: the one bundled with the library).
    #[arg(long, env = "KNOTOID_FIXTURES")]
    pub fixtures: Option<PathBuf>,
    /// Only fixtures with at most 6 crossings.
    #[arg(long)]
    pub quick: bool,
}

const QUICK_MAX_CROSSINGS: usize = 6;

type Check = Result<(), String>;

fn mu_source(pd: &KnotoidPD) -> MuSource {
    if pd.is_single_segment() {
        MuSource::Combinatorial
    } else {
        MuSource::Canonical
    }
}

fn winding(pd: &KnotoidPD) -> Result<HomologyTable, String> {
    let cx = build_complex(pd, &mu_source(pd)).map_err(|e| e.to_string())?;
    Ok(homology_ranks(&reduce_complex(&cx)))
}

fn checks(fx: &Fixtures, entry: &FixtureEntry, pd: &KnotoidPD) -> Vec<(&'static str, Check)> {
    let mut out = Vec::new();
    if let Some(recipe) = &entry.recipe {
        let check = match fx.realize(recipe) {
            Ok(derived) if &derived == pd => Ok(()),
            Ok(_) => Err(format!("{} differs from the diagram cut from {}", entry.file, recipe.knot)),
            Err(e) => Err(e.to_string()),
        };
        out.push(("recipe", check));
    }
    if !pd.has_open_component() {
        return out;
    }
    let table = match winding(pd) {
        Ok(t) => t,
        Err(e) => {
            out.push(("winding", Err(e)));
            return out;
        }
    };
    match fx.expected(entry) {
        Ok(Some(expected)) => {
            let check = if expected.ranks == table.ranks {
                Ok(())
            } else {
                Err(format!("got {}, expected {}", table.to_json(), expected.to_json()))
            };
            out.push(("winding", check));
        }
        Ok(None) => {}
        Err(e) => out.push(("winding", Err(e.to_string()))),
    }
    let euler = specialize(&poincare(&table))
        .and_then(|s| turaev_qu(pd, &mu_source(pd)).map(|t| (s.turaev, t)))
        .map_err(|e| e.to_string())
        .and_then(|(from_w, state_sum)| {
            if from_w == state_sum {
                Ok(())
            } else {
                Err(format!("W(t=-1) = {from_w} but the state sum gives {state_sum}"))
            }
        });
    out.push(("euler", euler));
    if entry.knot_type {
        let breadth = table.u_breadth();
        out.push(("knot-type", if breadth == 0 { Ok(()) } else { Err(format!("u-breadth {breadth}")) }));
    }
    if let Some(text) = &entry.expected_refined {
        let check = (|| {
            let geom = fx.geometric(entry).map_err(|e| e.to_string())?;
            let got = refined_turaev(&geom).map_err(|e| e.to_string())?;
            let want = Poly::parse(&[Var::A, Var::L, Var::H], text).map_err(|e| e.to_string())?;
            if got == want {
                Ok(())
            } else {
                Err(format!("got {got}, expected {want}"))
            }
        })();
        out.push(("refined", check));
    }
    out
}

pub fn run(args: &SelftestArgs) -> Result<(), Failure> {
    let dir = args.fixtures.clone().unwrap_or_else(Fixtures::bundled_dir);
    let fx = Fixtures::load(&dir).map_err(|e| Failure::Input(anyhow!("{e}")))?;
    let (mut total, mut failed) = (0, 0);
    for entry in &fx.manifest.fixtures {
        let mut report = |check: &str, result: &Check| {
            total += 1;
            match result {
                Ok(()) => println!("{:<24} {:<10} PASS", entry.name, check),
                Err(why) => {
                    failed += 1;
                    println!("{:<24} {:<10} FAIL  {why}", entry.name, check);
                }
            }
        };
        let pd = match fx.pd(entry) {
            Ok(pd) => pd,
            Err(e) => {
                report("load", &Err(e.to_string()));
                continue;
            }
        };
        if args.quick && pd.n() > QUICK_MAX_CROSSINGS {
            continue;
        }
        report("load", &Ok(()));
        for (check, result) in checks(&fx, entry, &pd) {
            report(check, &result);
        }
    }
    println!("{} checks, {} failed", total, failed);
    if failed > 0 {
        return Err(Failure::Input(anyhow!("{failed} selftest check(s) failed in {}", dir.display())));
    }
    Ok(())
}
