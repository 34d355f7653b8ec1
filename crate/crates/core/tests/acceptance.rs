//! Acceptance criteria 1–8. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use knotoid::algebra::{Poly, Substitution, Var};
use knotoid::complex::{build_complex, build_unreduced_complex, MuSource};
use knotoid::diagram::KnotoidPD;
use knotoid::fixtures::{FixtureKind, Fixtures};
use knotoid::geometry::{
    alternate_shortcuts, default_shortcut, shortcut_crossings, winding_identity_holds, WindingFrame,
    TURN_TOLERANCE,
};
use knotoid::homology::{
    euler_characteristic, homology_ranks, poincare, reduce_complex, specialize, HomologyTable,
};
use knotoid::resolution::{canonical_trace, mu_combinatorial, State};
use knotoid::statesum::{refined_turaev, refined_turaev_with, turaev_au, turaev_qu};
use knotoid::LaurentPoly;
use rand::seq::SliceRandom;
use rand::Rng;

use common::khovanov::reduced_khovanov;

/// Geometry snaps winding values within this many turns of a half-integer.
const SNAP_TURNS: f64 = 1e-6;
const C1_BUDGET: Duration = Duration::from_secs(1);
const C2_BUDGET: Duration = Duration::from_secs(600);
const C2_REDUCED_BUDGET: Duration = Duration::from_secs(60);
const C6_BUDGET: Duration = Duration::from_secs(5);
const C8_BUDGET: Duration = Duration::from_secs(5);
const RANDOM_EULER: usize = 100;
const RANDOM_PROPERTY: usize = 200;
const RANDOM_MAX_N: usize = 8;

type Verdict = Result<String, String>;
type Ranks = BTreeMap<(i64, i64, i64), usize>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn mu_for(pd: &KnotoidPD) -> MuSource {
    if pd.is_single_segment() {
        MuSource::Combinatorial
    } else {
        MuSource::Canonical
    }
}

fn table(pd: &KnotoidPD) -> Result<HomologyTable, String> {
    Ok(homology_ranks(&build_complex(pd, &mu_for(pd)).map_err(s)?))
}

fn reduced_table(pd: &KnotoidPD) -> Result<HomologyTable, String> {
    Ok(homology_ranks(&reduce_complex(&build_complex(pd, &mu_for(pd)).map_err(s)?)))
}

fn remap(r: &Ranks, f: impl Fn(i64, i64, i64) -> (i64, i64, i64)) -> Ranks {
    r.iter().map(|(&(i, j, k), &v)| (f(i, j, k), v)).collect()
}

fn fx() -> &'static Fixtures {
    static FX: OnceLock<Fixtures> = OnceLock::new();
    FX.get_or_init(common::fixtures)
}

fn fixture_pd(name: &str) -> Result<KnotoidPD, String> {
    let f = fx();
    f.pd(f.get(name).map_err(s)?).map_err(s)
}

const GOLDEN: [&str; 9] = ["K1", "K2", "K3", "K4", "K5", "K6", "K7", "K8", "K9"];

/// Winding homology of every golden fixture, computed once.
fn golden_tables() -> &'static Result<BTreeMap<&'static str, HomologyTable>, String> {
    static T: OnceLock<Result<BTreeMap<&'static str, HomologyTable>, String>> = OnceLock::new();
    T.get_or_init(|| GOLDEN.iter().map(|&k| Ok((k, reduced_table(&fixture_pd(k)?)?))).collect())
}

fn c1() -> Verdict {
    let start = Instant::now();
    let want: Ranks = [((0, 0, 0), 1)].into();
    let trivial = KnotoidPD::trivial();
    let built = [
        ("trivial", trivial.clone()),
        ("kink_pos", trivial.insert_r1(1, true).map_err(s)?),
        ("kink_neg", trivial.insert_r1(1, false).map_err(s)?),
    ];
    for (name, pd) in built {
        ensure!(fixture_pd(name)? == pd, "fixture {name} is not the expected diagram");
        let t = table(&pd)?;
        ensure!(t.ranks == want, "{name}: W has ranks {}", t.to_json());
    }
    let took = start.elapsed();
    ensure!(took < C1_BUDGET, "took {took:?}, budget {C1_BUDGET:?}");
    Ok(format!("W = 1 at (0,0,0) for all three diagrams in {took:.2?}"))
}

fn c2() -> Verdict {
    let f = fx();
    let mut slowest = (Duration::ZERO, Duration::ZERO);
    for name in GOLDEN {
        let entry = f.get(name).map_err(s)?;
        let recipe = entry.recipe.as_ref().ok_or(format!("{name} has no recipe"))?;
        let derived = f.realize(recipe).map_err(s)?;
        ensure!(
            derived == f.pd(entry).map_err(s)?,
            "{name}: stored PD differs from the cut of {}",
            recipe.knot
        );
        let expected = f.expected(entry).map_err(s)?.ok_or(format!("{name} has no expected table"))?;

        let t0 = Instant::now();
        let direct = table(&derived)?;
        let t_direct = t0.elapsed();
        let t0 = Instant::now();
        let reduced = reduced_table(&derived)?;
        let t_reduced = t0.elapsed();
        ensure!(
            direct.ranks == expected.ranks,
            "{name}: W = {} differs from the expected table",
            poincare(&direct)
        );
        ensure!(reduced.ranks == expected.ranks, "{name}: reduced pipeline differs");
        ensure!(t_direct <= C2_BUDGET && t_reduced <= C2_REDUCED_BUDGET, "{name}: too slow");
        slowest = (slowest.0.max(t_direct), slowest.1.max(t_reduced));
    }
    // K1 and K2 share their u⁰ part and swap u² for u⁻²; K3 and K4 share their u² part.
    let e = |n: &str| f.expected(f.get(n).unwrap()).unwrap().unwrap().ranks;
    let part = |r: &Ranks, k: i64| -> BTreeMap<(i64, i64), usize> {
        r.iter().filter(|(key, _)| key.2 == k).map(|(&(i, j, _), &v)| ((i, j), v)).collect()
    };
    let (k1, k2, k3, k4) = (e("K1"), e("K2"), e("K3"), e("K4"));
    ensure!(part(&k1, 0) == part(&k2, 0) && part(&k1, 2) == part(&k2, -2), "K1/K2 expected tables disagree");
    ensure!(part(&k3, 2) == part(&k4, 2), "K3/K4 expected tables disagree on the u² part");
    Ok(format!("W_K1..W_K9 match exactly; slowest {:.2?} direct, {:.2?} reduced", slowest.0, slowest.1))
}

fn c3() -> Verdict {
    let tables = golden_tables().as_ref().map_err(Clone::clone)?;
    let spec = |k: &str| specialize(&poincare(&tables[k])).map_err(s);
    let (k1, k2) = (spec("K1")?, spec("K2")?);
    ensure!(k1.kh == k2.kh && k1.turaev != k2.turaev && k1.jones == k2.jones, "K1/K2 separation fails");
    for (a, b) in [("K3", "K4"), ("K5", "K6")] {
        let (x, y) = (spec(a)?, spec(b)?);
        ensure!(x.turaev == y.turaev && x.kh != y.kh && x.jones == y.jones, "{a}/{b} separation fails");
    }
    for k in ["K7", "K8", "K9"] {
        let pd = fixture_pd(k)?;
        let w = poincare(&tables[k]);
        let w_sm = poincare(&reduced_table(&pd.mirror().sym())?);
        ensure!(w_sm == w.invert_var(Var::U), "{k}: W of Sym(Mir) is not W(t,q,1/u)");
        ensure!(w_sm != w, "{k}: W does not separate K from Sym(Mir(K))");
        let (x, y) = (specialize(&w).map_err(s)?, specialize(&w_sm).map_err(s)?);
        ensure!(x.turaev == y.turaev && x.kh == y.kh, "{k}: T or Kh changes under Sym(Mir)");
    }
    Ok("Kh1=Kh2, T1≠T2; T3=T4, Kh3≠Kh4; T5=T6, Kh5≠Kh6; K7-K9 vs Sym(Mir)".into())
}

fn euler_check(pd: &KnotoidPD) -> Result<(), String> {
    let mu = mu_for(pd);
    let cx = build_complex(pd, &mu).map_err(s)?;
    let state_sum = turaev_qu(pd, &mu).map_err(s)?;
    let w = poincare(&homology_ranks(&cx));
    let from_w = specialize(&w).map_err(s)?.turaev;
    ensure!(from_w == state_sum, "W(t=-1) = {from_w}, state sum = {state_sum} for {}", pd.to_json());
    ensure!(
        euler_characteristic(&cx) == state_sum,
        "chain-level Euler characteristic differs for {}",
        pd.to_json()
    );
    Ok(())
}

fn c4() -> Verdict {
    let f = fx();
    for entry in &f.manifest.fixtures {
        let pd = f.pd(entry).map_err(s)?;
        euler_check(&pd).map_err(|e| format!("{}: {e}", entry.name))?;
    }
    let mut rng = common::rng(4);
    let mut multi = 0;
    for _ in 0..RANDOM_EULER {
        let pd = common::random_pd(&mut rng, RANDOM_MAX_N, 0.3);
        multi += usize::from(!pd.closed().is_empty());
        euler_check(&pd)?;
    }
    Ok(format!(
        "{} fixtures and {RANDOM_EULER} random diagrams ({multi} multi-knotoids)",
        f.manifest.fixtures.len()
    ))
}

fn unreduced_w(knot: &KnotoidPD) -> Result<LaurentPoly, String> {
    Ok(poincare(&homology_ranks(&build_unreduced_complex(knot).map_err(s)?)))
}

fn c5() -> Verdict {
    let f = fx();
    let names: Vec<&str> = f.manifest.fixtures.iter().map(|e| e.name.as_str()).collect();
    let golden = golden_tables().as_ref().map_err(Clone::clone)?;
    let mut tables: BTreeMap<&str, HomologyTable> = BTreeMap::new();
    for &name in &names {
        let pd = fixture_pd(name)?;
        let t = match golden.get(name) {
            Some(t) => t.clone(),
            None => reduced_table(&pd)?,
        };
        ensure!(reduced_table(&pd.reverse())?.ranks == t.ranks, "{name}: W(Rev K) ≠ W(K)");
        let mir = remap(&t.ranks, |i, j, k| (-i, -j, k));
        ensure!(reduced_table(&pd.mirror())?.ranks == mir, "{name}: mirror identity fails");
        let sym = remap(&t.ranks, |i, j, k| (-i, -j, -k));
        ensure!(reduced_table(&pd.sym())?.ranks == sym, "{name}: sym identity fails");
        tables.insert(name, t);
    }

    let small: Vec<&str> = names.iter().copied().filter(|n| !golden.contains_key(n)).collect();
    let mut products = 0;
    let mut pairs: Vec<(&str, &str)> =
        small.iter().flat_map(|&a| small.iter().map(move |&b| (a, b))).collect();
    pairs.extend(GOLDEN.iter().map(|&k| (k, "trefoil_knotoid")));
    for (a, b) in pairs {
        let pd = fixture_pd(a)?.product(&fixture_pd(b)?).map_err(s)?;
        let w = poincare(&reduced_table(&pd)?);
        ensure!(w == poincare(&tables[a]) * poincare(&tables[b]), "W({a}·{b}) ≠ W({a})·W({b})");
        products += 1;
    }

    let unknot = KnotoidPD::new(vec![], vec![], vec![vec![1]], None).map_err(s)?;
    let trefoil = f.knot("3_1").map_err(s)?;
    let eight = f.knot("4_1").map_err(s)?;
    let mut unions = 0;
    for &name in &names {
        let mut knots = vec![&unknot];
        if !golden.contains_key(name) || name == "K1" {
            knots.extend([&trefoil, &eight]);
        }
        for knot in knots {
            let pd = fixture_pd(name)?.disjoint_union(knot).map_err(s)?;
            let w = poincare(&reduced_table(&pd)?);
            ensure!(
                w == poincare(&tables[name]) * unreduced_w(knot)?,
                "Künneth fails for {name} ⊔ {}",
                knot.to_json()
            );
            unions += 1;
        }
    }
    Ok(format!("Rev/Mir/Sym on {} fixtures, {products} products, {unions} disjoint unions", names.len()))
}

fn c6() -> Verdict {
    ensure!(TURN_TOLERANCE == SNAP_TURNS, "snap tolerance is {TURN_TOLERANCE}, pinned {SNAP_TURNS}");
    let start = Instant::now();
    let f = fx();
    let vars = [Var::A, Var::L, Var::H];
    let t_b = "-A^10*u^2 + A^6*u^2 + A^4";
    let mut geometric = 0;
    for entry in f.manifest.fixtures.iter().filter(|e| e.kind == FixtureKind::Geometric) {
        let name = &entry.name;
        let geom = f.geometric(entry).map_err(s)?;
        let emb = geom.embed().map_err(s)?;
        let got = refined_turaev(&geom).map_err(s)?;
        if let Some(text) = &entry.expected_refined {
            ensure!(got == Poly::parse(&vars, text).map_err(s)?, "{name}: T* = {got}");
            let sub = got.substitute(Substitution::LegHeadToU).map_err(s)?;
            ensure!(sub == Poly::parse(sub.vars(), t_b).map_err(s)?, "{name}: substitution gives {sub}");
            let direct = turaev_au(&emb.pd, &MuSource::Combinatorial).map_err(s)?;
            ensure!(sub == direct.extend_vars(sub.vars()).map_err(s)?, "{name}: T from the PD is {direct}");
        }
        // The default shortcut comes first, then at least three alternates.
        let shortcuts = alternate_shortcuts(&emb, 4);
        ensure!(shortcuts.len() >= 4, "{name}: only {} shortcuts", shortcuts.len());
        for sc in &shortcuts {
            ensure!(winding_identity_holds(&emb, sc).map_err(s)?, "{name}: winding identity fails");
            ensure!(refined_turaev_with(&emb, sc).map_err(s)? == got, "{name}: T* depends on the shortcut");
        }
        geometric += 1;
    }
    ensure!(geometric >= 2, "expected the two bifoil fixtures");
    let took = start.elapsed();
    ensure!(took < C6_BUDGET, "took {took:?}, budget {C6_BUDGET:?}");
    Ok(format!("T*_B1, T*_B2 exact; 4 shortcuts each; {took:.2?}"))
}

fn properties(rng: &mut impl Rng, stats: &mut [usize; 3]) -> Result<(), String> {
    let (_, emb) = common::random_embedding(rng, 0, RANDOM_MAX_N, 0.25);
    let pd = &emb.pd;
    let cx = build_complex(pd, &mu_for(pd)).map_err(s)?;
    cx.verify_d_squared().map_err(|e| format!("d² ≠ 0 on {}: {e:?}", pd.to_json()))?;
    for (&(q, u), cls) in &cx.classes {
        for (&i, d) in &cls.diffs {
            for (r, c, _) in d.triplets() {
                let (src, dst) = (&cls.groups[&i][c], &cls.groups[&(i + 1)][r]);
                ensure!(src.i == i && dst.i == i + 1, "differential entry does not raise i by one");
                ensure!((src.q, src.u, dst.q, dst.u) == (q, u, q, u), "differential entry changes (q,u)");
            }
        }
    }
    ensure!(cx.generators().all(|g| g.u % 2 == 0), "odd u-grading on {}", pd.to_json());
    let t = homology_ranks(&cx);

    if pd.is_single_segment() {
        let frame = WindingFrame::new(&emb, default_shortcut(&emb).map_err(s)?).map_err(s)?;
        for st in State::all(pd.n()) {
            let (dl, dh) = frame.pair(st).map_err(s)?;
            let mu = mu_combinatorial(pd, st).map_err(s)?;
            ensure!(mu == dl - dh, "μ = {mu} but Δw_L − Δw_H = {} on {}", dl - dh, pd.to_json());
        }
        stats[0] += 1;
        let hits = shortcut_crossings(&emb, &default_shortcut(&emb).map_err(s)?).map_err(s)?;
        ensure!(t.u_breadth() <= 2 * hits.len() as i64, "u-breadth bound fails (geometric shortcut)");
    }
    let canonical = canonical_trace(pd).map_err(s)?;
    ensure!(t.u_breadth() <= 2 * canonical.trace.len() as i64, "u-breadth bound fails (canonical shortcut)");

    let mut perm: Vec<usize> = (0..pd.n()).collect();
    perm.shuffle(rng);
    ensure!(table(&pd.reorder(&perm).map_err(s)?)?.ranks == t.ranks, "reordering changes W");
    let edges = pd.edge_labels();
    let e = edges[rng.gen_range(0..edges.len())];
    ensure!(table(&pd.insert_r1(e, rng.gen_bool(0.5)).map_err(s)?)?.ranks == t.ranks, "R1 changes W");
    let faces = pd.faces();
    if !faces.is_empty() {
        let face = &faces[rng.gen_range(0..faces.len())];
        let mut on_face: Vec<i64> = face.sides.iter().map(|&(e, _)| e).collect();
        on_face.dedup();
        if on_face.len() >= 2 {
            on_face.shuffle(rng);
            let moved = pd.insert_r2(on_face[0], on_face[1]).map_err(s)?;
            ensure!(table(&moved)?.ranks == t.ranks, "R2 changes W on {}", pd.to_json());
            stats[1] += 1;
        }
    }
    ensure!(homology_ranks(&reduce_complex(&cx)).ranks == t.ranks, "reduction changes ranks");
    stats[2] += usize::from(!pd.closed().is_empty());
    Ok(())
}

fn c7() -> Verdict {
    let mut rng = common::rng(7);
    let mut stats = [0; 3];
    for _ in 0..RANDOM_PROPERTY {
        properties(&mut rng, &mut stats)?;
    }
    Ok(format!(
        "{RANDOM_PROPERTY} diagrams ({} single-segment with geometric μ, {} R2 moves, {} multi-knotoids)",
        stats[0], stats[1], stats[2]
    ))
}

fn c8() -> Verdict {
    let start = Instant::now();
    let f = fx();
    let mut checked = 0;
    for entry in f.manifest.fixtures.iter().filter(|e| e.knot_type) {
        let name = &entry.name;
        let pd = f.pd(entry).map_err(s)?;
        let recipe = entry.recipe.as_ref().ok_or(format!("{name} has no recipe"))?;
        let cx = build_complex(&pd, &mu_for(&pd)).map_err(s)?;
        ensure!(cx.generators().all(|g| g.u == 0), "{name}: nonzero μ");
        let w: BTreeMap<(i64, i64), usize> = homology_ranks(&cx)
            .ranks
            .into_iter()
            .map(|((i, j, k), r)| {
                assert_eq!(k, 0);
                ((i, j), r)
            })
            .collect();
        let knot = f.knot(&recipe.knot).map_err(s)?;
        for (label, k) in [("", knot.clone()), (" (mirror)", knot.mirror())] {
            let oracle = reduced_khovanov(&k, 1);
            let w = if label.is_empty() {
                w.clone()
            } else {
                let m = k.cut_knot_to_knotoid(0, recipe.mode).map_err(s)?;
                table(&m)?.ranks.into_iter().map(|((i, j, _), r)| ((i, j), r)).collect()
            };
            ensure!(w == oracle, "{name}{label}: W = {w:?}, reduced Kh = {oracle:?}");
        }
        checked += 1;
    }
    ensure!(checked >= 2, "expected trefoil and figure-eight fixtures");
    let took = start.elapsed();
    ensure!(took < C8_BUDGET, "took {took:?}, budget {C8_BUDGET:?}");
    Ok(format!("{checked} knots and their mirrors agree with brute-force reduced Kh; {took:.2?}"))
}

type Criterion = (u8, &'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "trivial and R1 diagrams", c1),
        (2, "golden polynomials K1-K9", c2),
        (3, "separation claims", c3),
        (4, "Euler characteristic oracle", c4),
        (5, "structural identities", c5),
        (6, "refined planar invariants", c6),
        (7, "property suites", c7),
        (8, "knot restriction", c8),
    ];
    let mut failed = 0;
    for (n, title, run) in criteria {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        match verdict {
            Ok(detail) => println!("criterion {n} PASS  {title}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL  {title}: {why} [{took:.2?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
}
