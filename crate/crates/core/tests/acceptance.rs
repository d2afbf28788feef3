//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;

use parabolica::nilpotent::NilpotentModel;
use parabolica::prolongation::{
    construct_v, contact_bound_closed_form, contact_e_label, grading_decomposition, Orders,
};
use parabolica::verify::{verify_case, VerificationReport};
use parabolica::weights::weyl_dim;
use parabolica::{IrrepLabel, ModuleModel, ParabolicGrading, Rational, RootDatum, StructureConstants, Weight};

const LIMIT_CONTACT: Duration = Duration::from_secs(5);
const LIMIT_CONTACT_T: Duration = Duration::from_secs(10);
const LIMIT_GRID: Duration = Duration::from_secs(60);
const LIMIT_CLI_VERIFY: Duration = Duration::from_secs(5);

type Outcome = Result<String, String>;

fn grading(s: &str, sigma: &[usize]) -> ParabolicGrading {
    ParabolicGrading::new(RootDatum::from_type_str(s).unwrap(), sigma).unwrap()
}

fn contact_v(n: u64, t: u64, r: u64) -> (ParabolicGrading, IrrepLabel) {
    let g = grading(&format!("C{}", n + 1), &[1]);
    let e = contact_e_label(&g, t as usize).unwrap();
    let v = construct_v(&g, &e, &Orders::from([(1, r as usize)])).unwrap();
    (g, v)
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let res = f();
    let took = start.elapsed();
    match res {
        Ok(msg) if took <= limit => Ok(format!("{msg} in {took:.2?} (limit {limit:?})")),
        Ok(msg) => Err(format!("{msg} but took {took:.2?} > {limit:?}")),
        Err(e) => Err(e),
    }
}

fn criterion_1() -> Outcome {
    timed(LIMIT_CONTACT, || {
        for n in 1..=4 {
            for r in 1..=5 {
                let (g, v) = contact_v(n, 1, r);
                let dim = weyl_dim(&g.datum, &v.weight).unwrap();
                let closed = contact_bound_closed_form(n, r, 1);
                if dim != closed {
                    return Err(format!("(n, r) = ({n}, {r}): weyl_dim {dim} != closed form {closed}"));
                }
            }
        }
        for (n, r, want) in [(1, 1, 5u32), (1, 2, 16), (2, 1, 14)] {
            let (g, v) = contact_v(n, 1, r);
            if weyl_dim(&g.datum, &v.weight).unwrap() != BigUint::from(want) {
                return Err(format!("spot value ({n}, {r}) != {want}"));
            }
        }
        Ok("20 cases equal, spot values 5/16/14".into())
    })
}

fn criterion_2() -> Outcome {
    timed(LIMIT_CONTACT_T, || {
        for n in 1..=3 {
            for t in 1..=3 {
                for r in 1..=3 {
                    let (g, v) = contact_v(n, t, r);
                    let dim = weyl_dim(&g.datum, &v.weight).unwrap();
                    let closed = contact_bound_closed_form(n, r, t);
                    if dim != closed {
                        return Err(format!("(n, r, t) = ({n}, {r}, {t}): {dim} != {closed}"));
                    }
                }
            }
        }
        // t = 1 against the first family evaluated independently
        for n in 1..=3u64 {
            for r in 1..=3u64 {
                let direct = {
                    let g = grading(&format!("C{}", n + 1), &[1]);
                    let comp = &g.g_minus1_decomposition()[0];
                    let dual = parabolica::prolongation::levi_dual(&g, &comp.levi_weight).unwrap();
                    let v = construct_v(&g, &IrrepLabel::levi(dual), &Orders::from([(1, r as usize)])).unwrap();
                    weyl_dim(&g.datum, &v.weight).unwrap()
                };
                if direct != contact_bound_closed_form(n, r, 1) {
                    return Err(format!("t = 1 column differs at (n, r) = ({n}, {r})"));
                }
            }
        }
        Ok("27 cases equal, t = 1 column matches".into())
    })
}

struct GridCase {
    name: String,
    report: VerificationReport,
}

fn grid_labels() -> Vec<(String, Vec<usize>, Vec<i64>)> {
    let mut cases = Vec::new();
    for m in 0..=4 {
        cases.push(("A1".to_string(), vec![1], vec![m]));
    }
    let a2 = RootDatum::from_type_str("A2").unwrap();
    for sigma in [vec![1], vec![2], vec![1, 2]] {
        for a in 0..=6 {
            for b in 0..=6 {
                if weyl_dim(&a2, &Weight(vec![a, b])).unwrap() <= BigUint::from(27u32) {
                    cases.push(("A2".to_string(), sigma.clone(), vec![a, b]));
                }
            }
        }
    }
    let (_, v16) = contact_v(1, 1, 2);
    for v in [vec![0, 1], vec![2, 0], v16.weight.0] {
        cases.push(("C2".to_string(), vec![1], v));
    }
    cases
}

fn run_grid() -> Result<Vec<GridCase>, String> {
    grid_labels()
        .into_par_iter()
        .map(|(t, sigma, v)| {
            let d = RootDatum::from_type_str(&t).unwrap();
            let sc = StructureConstants::build(d.clone()).map_err(|e| e.to_string())?;
            let g = ParabolicGrading::new(d, &sigma).unwrap();
            let label = IrrepLabel::ambient(Weight(v.clone()));
            let report = verify_case(&sc, &g, &label, 400).map_err(|e| format!("{t} {sigma:?} {v:?}: {e}"))?;
            Ok(GridCase { name: format!("{t} sigma={sigma:?} V={v:?}"), report })
        })
        .collect()
}

fn grid_checks(grid: &[GridCase], names: &[&str], filter: impl Fn(&GridCase) -> bool) -> Outcome {
    let mut count = 0;
    for case in grid.iter().filter(|c| filter(c)) {
        count += 1;
        for name in names {
            match case.report.check(name) {
                Some(c) if c.pass => {}
                Some(c) => return Err(format!("{}: `{name}` expected {} got {}", case.name, c.expected, c.actual)),
                None => return Err(format!("{}: `{name}` did not run", case.name)),
            }
        }
    }
    Ok(format!("{count} cases x {} checks", names.len()))
}

fn criterion_7() -> Outcome {
    for (t, sigma) in [("C2", vec![1]), ("A2", vec![1, 2])] {
        let d = RootDatum::from_type_str(t).unwrap();
        let g = ParabolicGrading::new(d.clone(), &sigma).unwrap();
        let nm = NilpotentModel::build(&StructureConstants::build(d).unwrap(), &g);
        for i in 0..=10 {
            let pbw = nm.pbw_basis(i).len();
            if g.dim_u_minus(i) != BigUint::from(pbw) {
                return Err(format!("{t}: dim U_-{i} {} vs {pbw} PBW monomials", g.dim_u_minus(i)));
            }
        }
    }
    let h = grading("C2", &[1]);
    if h.dim_u_minus(3) != BigUint::from(6u8) {
        return Err("Heisenberg dim U_-3 != 6".into());
    }
    if h.weighted_jet_fiber_dim(2, 1) != BigUint::from(7u8) {
        return Err(format!("weighted jet fiber dim {} != 7", h.weighted_jet_fiber_dim(2, 1)));
    }
    Ok("i <= 10 on Heisenberg and A2 Borel, U_-3 = 6, jet fiber 7".into())
}

fn criterion_9() -> Outcome {
    let g = grading("C2", &[1]);
    let d = g.datum.clone();
    let sc = StructureConstants::build(d).unwrap();
    for (v, dims, n) in [(vec![0, 1], vec![2u64, 1, 2], 2usize), (vec![2, 0], vec![1, 2, 4, 2, 1], 4)] {
        let label = IrrepLabel::ambient(Weight(v.clone()));
        let dec = grading_decomposition(&g, &label).unwrap();
        if dec.dims != dims || dec.n != n {
            return Err(format!("V={v:?}: {:?}, N={} (want {dims:?}, N={n})", dec.dims, dec.n));
        }
        let mm = ModuleModel::<Rational>::build(&sc, &label, 400).unwrap();
        let mut tags: BTreeMap<usize, u64> = BTreeMap::new();
        for k in mm.grades(&g) {
            *tags.entry(k).or_insert(0) += 1;
        }
        if tags.values().copied().collect::<Vec<_>>() != dims {
            return Err(format!("V={v:?}: module tags {tags:?}"));
        }
    }
    Ok("(2,1,2) N=2 and (1,2,4,2,1) N=4, module tags agree".into())
}

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_parabolica");
    let golden_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/contact_table_3_3_2.txt");
    let golden = std::fs::read(&golden_path).map_err(|e| format!("{}: {e}", golden_path.display()))?;
    let out = Command::new(bin).args(["contact-table", "3", "3", "2"]).output().map_err(|e| e.to_string())?;
    if !out.status.success() || out.stdout != golden {
        return Err(format!("contact-table output differs from golden file (exit {:?})", out.status.code()));
    }
    let spec = repo_root().join("specs/c2_contact_r1.toml");
    timed(LIMIT_CLI_VERIFY, || {
        let out = Command::new(bin).arg("verify").arg("--spec").arg(&spec).output().map_err(|e| e.to_string())?;
        match out.status.code() {
            Some(0) => Ok("golden match, verify exit 0".into()),
            c => Err(format!("verify exit {c:?}: {}", String::from_utf8_lossy(&out.stderr))),
        }
    })
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "contact closed form, E = g_-1*", criterion_1()));
    results.push((2, "contact closed form, E = S^t g_-1*", criterion_2()));

    let start = Instant::now();
    let grid = run_grid();
    let grid_time = start.elapsed();
    match grid {
        Err(e) => {
            for (k, title) in [(3, "Kostant vs brute force"), (4, "structural identities"), (5, "phi maps"), (6, "splitting symbol"), (8, "multiplicity one")] {
                results.push((k, title, Err(format!("grid construction failed: {e}"))));
            }
        }
        Ok(grid) => {
            let c3 = grid_checks(&grid, &["h0_dimension", "h1_dimension", "h1_location"], |_| true).and_then(|m| {
                if grid_time <= LIMIT_GRID {
                    Ok(format!("{m}, grid built in {grid_time:.2?} (limit {LIMIT_GRID:?})"))
                } else {
                    Err(format!("{m} but grid took {grid_time:.2?} > {LIMIT_GRID:?}"))
                }
            });
            results.push((3, "Kostant vs brute force", c3));
            let structural = [
                "module_relations",
                "module_dimension",
                "grading_tags",
                "hodge_data",
                "d_squared_zero",
                "dstar_squared_zero",
                "deltastar_squared_zero",
                "grading_preserved",
                "hodge_decomposition",
                "ker_dstar_split",
                "ker_d_split",
                "v0_is_ker_d0",
                "deltastar_inverts_d",
            ];
            results.push((4, "structural identities", grid_checks(&grid, &structural, |_| true)));
            let phi = ["phi_injective", "phi_isomorphism", "phi1_equals_d0_block", "natural_projection", "phi_projection_kernel"];
            results.push((5, "phi maps", grid_checks(&grid, &phi, |_| true)));
            let splitting_cases = |c: &GridCase| {
                let dim = c.report.dim_v.clone();
                (c.report.lie_type == "C2" && (dim == BigUint::from(5u8) || dim == BigUint::from(16u8)))
                    || c.report.lie_type == "A1"
            };
            let everywhere = grid.iter().filter(|c| c.report.check("splitting_symbol").is_some_and(|x| x.pass)).count();
            let c6 = grid_checks(&grid, &["splitting_symbol"], splitting_cases)
                .map(|m| format!("{m}; holds on {everywhere} of {} grid cases", grid.len()));
            results.push((6, "splitting symbol", c6));
            results.push((8, "multiplicity one", grid_checks(&grid, &["multiplicity_one"], |_| true)));
        }
    }
    results.push((7, "enveloping algebra dimensions", criterion_7()));
    results.push((9, "grading decompositions", criterion_9()));
    results.push((10, "CLI contract", criterion_10()));
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    for (k, title, res) in &results {
        match res {
            Ok(m) => println!("criterion {k:>2} PASS  {title}: {m}"),
            Err(m) => {
                failed += 1;
                println!("criterion {k:>2} FAIL  {title}: {m}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}
