//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every line is printed. Criteria in
//! `KNOWN_FAILURES` are still evaluated at full strictness and reported as
//! FAIL; they only stop failing the process unless `ATQC_ACCEPTANCE_STRICT`
//! is set. A known failure that starts passing is an error, so the list
//! cannot go stale.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use atqc_core::catalog::{
    curve_rows, emit_curves, family_params, family_rows, fixed_pair_rate, torus_formulas,
    TABLE2_PAIRS,
};
use atqc_core::complex::load_complex_str;
use atqc_core::distance::{code_distances, oracle_distances, DEFAULT_ORACLE_CEILING};
use atqc_core::geometry::{census, edge_length, Genus, SchlafliPair};
use atqc_core::gf2::{BitVec, RowSpace};
use atqc_core::homology::{betti1, boundary_matrices, cocycle_basis, homology_signature};
use atqc_core::stabilizer::{build_css, verify_stabilizers};
use atqc_core::torus::{build_hex_torus, build_square_torus, HexTorusSpec, SquareTorusSpec};
use atqc_core::{Error, Rational, SurfaceComplex};

const OCTAGON: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/data/octagon83_genus2.json"
));
const BOLZA: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/data/bolza83_genus2.json"
));

/// Criteria whose stated values disagree with what the formulas and
/// constructions actually give.
const KNOWN_FAILURES: &[u32] = &[3, 6];

type Outcome = Result<String, String>;

/// `((p, q), g, (d_x, d_z), optional (n, k))`
type CaseStudy = ((u32, u32), u32, (i64, i64), Option<(i64, i64)>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    }};
}

fn pair(p: u32, q: u32) -> SchlafliPair {
    SchlafliPair::new(p, q).unwrap()
}

fn square(l: u32) -> SurfaceComplex {
    build_square_torus(SquareTorusSpec::new(l).unwrap()).unwrap()
}

fn hex_apothem(xi: u32) -> SurfaceComplex {
    build_hex_torus(HexTorusSpec::apothem_scaled(xi).unwrap()).unwrap()
}

fn hex_edge(lambda: u32) -> SurfaceComplex {
    build_hex_torus(HexTorusSpec::edge_scaled(lambda).unwrap()).unwrap()
}

fn edge_lengths() -> Outcome {
    const PRINTED: [(f64, f64); 9] = [
        (0.5663, 1.0906),
        (0.7270, 1.5286),
        (0.8192, 1.8551),
        (0.8792, 2.1226),
        (0.9516, 2.5534),
        (1.0612, 1.2537),
        (1.3170, 1.7628),
        (1.5286, 2.4485),
        (2.1226, 3.2338),
    ];
    let mut worst = 0.0f64;
    for (&(p, q), &(l_pq, l_qp)) in TABLE2_PAIRS.iter().zip(&PRINTED) {
        let a = edge_length::<f64>(pair(p, q)).map_err(|e| e.to_string())?;
        let b = edge_length::<f64>(pair(q, p)).map_err(|e| e.to_string())?;
        for (got, want) in [(a, l_pq), (b, l_qp)] {
            let err = (got - want).abs();
            worst = worst.max(err);
            ensure!(
                err <= 2e-4,
                "{{{p},{q}}}: {got:.6} vs printed {want} (|err| = {err:.2e})"
            );
        }
    }
    Ok(format!("18 constants, max |err| = {worst:.2e}"))
}

fn genus_two_instance() -> Outcome {
    let params = family_params(pair(8, 3), 2).map_err(|e| e.to_string())?;
    ensure!(
        (params.n, params.k, params.d_x, params.d_z) == (24, 4, 5, 2),
        "params gave n={} k={} d_x={} d_z={}",
        params.n,
        params.k,
        params.d_x,
        params.d_z
    );
    let c = load_complex_str(OCTAGON).map_err(|e| e.to_string())?;
    let code = build_css(&c).map_err(|e| e.to_string())?;
    let rank_k = code.n - code.rank_hx() - code.rank_hz();
    let b1 = betti1(&c).map_err(|e| e.to_string())?;
    ensure!(
        code.n == 24 && rank_k == 4 && b1 == 4,
        "ingested n={} k={rank_k} betti1={b1}",
        code.n
    );
    let o = oracle_distances(&code, DEFAULT_ORACLE_CEILING).map_err(|e| e.to_string())?;
    ensure!(
        (o.d_x, o.d_z) == (5, 2),
        "oracle gave d_x={} d_z={}",
        o.d_x,
        o.d_z
    );
    Ok("params [[24,4]] d_x=5 d_z=2; ingested complex oracle d_x=5 d_z=2".into())
}

fn case_studies() -> Outcome {
    let cases: [CaseStudy; 8] = [
        ((7, 3), 2, (6, 3), None),
        ((8, 3), 3, (6, 3), None),
        ((9, 3), 4, (6, 3), None),
        ((10, 3), 5, (6, 3), None),
        ((12, 3), 5, (6, 3), None),
        ((5, 4), 4, (5, 4), Some((60, 8))),
        ((6, 4), 9, (5, 4), Some((96, 18))),
        ((8, 4), 16, (5, 4), Some((120, 32))),
    ];
    let mut misses = Vec::new();
    for ((p, q), g, want, nk) in cases {
        let c = family_params(pair(p, q), g).map_err(|e| e.to_string())?;
        let got = (c.d_x, c.d_z);
        let nk_ok = nk.is_none_or(|nk| (c.n, c.k) == nk);
        if got != want || !nk_ok {
            misses.push(format!(
                "{{{p},{q}}} g={g}: got d_x={} d_z={} [[{},{}]], expected d_x={} d_z={}",
                got.0, got.1, c.n, c.k, want.0, want.1
            ));
        }
    }
    ensure!(misses.is_empty(), "{}", misses.join("; "));
    Ok("8 case studies match".into())
}

fn kitaev_family() -> Outcome {
    for l in 2..=5u32 {
        let c = square(l);
        let code = build_css(&c).map_err(|e| e.to_string())?;
        verify_stabilizers(&code).map_err(|e| format!("l={l}: {e}"))?;
        let k = code.n - code.rank_hx() - code.rank_hz();
        ensure!(
            code.n == (2 * l * l) as usize && k == 2,
            "l={l}: n={} k={k}",
            code.n
        );
        let d = code_distances(&c).map_err(|e| e.to_string())?;
        ensure!(
            (d.d_x, d.d_z) == (l as usize, l as usize),
            "l={l}: search d_x={} d_z={}",
            d.d_x,
            d.d_z
        );
        if l <= 3 {
            let o = oracle_distances(&code, DEFAULT_ORACLE_CEILING).map_err(|e| e.to_string())?;
            ensure!(
                (o.d_x, o.d_z) == (d.d_x, d.d_z),
                "l={l}: oracle d_x={} d_z={}",
                o.d_x,
                o.d_z
            );
        }
    }
    Ok("l = 2..5: k = 2, d_x = d_z = l; oracle agrees for l <= 3".into())
}

fn apothem_family() -> Outcome {
    for xi in [2u32, 3] {
        let c = hex_apothem(xi);
        let code = build_css(&c).map_err(|e| e.to_string())?;
        ensure!(
            code.n == (3 * xi * xi) as usize && code.k == 2,
            "xi={xi}: n={} k={}",
            code.n,
            code.k
        );
        let d = code_distances(&c).map_err(|e| e.to_string())?;
        let formula = torus_formulas::hex_apothem(xi);
        ensure!(
            (d.d_x, d.d_z) == formula,
            "finding: xi={xi} search d_x={} d_z={} but formula gives d_x={} d_z={}",
            d.d_x,
            d.d_z,
            formula.0,
            formula.1
        );
        let o = oracle_distances(&code, DEFAULT_ORACLE_CEILING).map_err(|e| e.to_string())?;
        ensure!(
            (o.d_x, o.d_z) == formula,
            "xi={xi}: oracle d_x={} d_z={}",
            o.d_x,
            o.d_z
        );
    }
    Ok("xi=2: d_x=4 d_z=2, xi=3: d_x=6 d_z=3; search = oracle = formula".into())
}

fn edge_family() -> Outcome {
    let mut misses = Vec::new();

    let c = hex_edge(3);
    let code = build_css(&c).map_err(|e| e.to_string())?;
    let d = code_distances(&c).map_err(|e| e.to_string())?;
    let o = oracle_distances(&code, DEFAULT_ORACLE_CEILING).map_err(|e| e.to_string())?;
    ensure!(
        code.n == 9 && code.k == 2,
        "lambda=3: n={} k={}",
        code.n,
        code.k
    );
    ensure!(
        (o.d_x, o.d_z) == (d.d_x, d.d_z),
        "lambda=3: search and oracle disagree"
    );
    if (d.d_x, d.d_z) != (3, 2) {
        misses.push(format!(
            "lambda=3: d_x={} d_z={} (oracle-confirmed), expected d_x=3 d_z=2",
            d.d_x, d.d_z
        ));
    }

    match HexTorusSpec::edge_scaled(4) {
        Err(Error::Integrality { lambda: 4 }) => {}
        other => return Err(format!("lambda=4 not rejected for integrality: {other:?}")),
    }

    let c = hex_edge(6);
    let code = build_css(&c).map_err(|e| e.to_string())?;
    ensure!(
        code.n == 36 && code.k == 2,
        "lambda=6: n={} k={}",
        code.n,
        code.k
    );
    let d = code_distances(&c).map_err(|e| e.to_string())?;
    if (d.d_x, d.d_z) != (6, 4) {
        misses.push(format!(
            "lambda=6: search d_x={} d_z={}, expected d_x=6 d_z=4",
            d.d_x, d.d_z
        ));
    }
    ensure!(misses.is_empty(), "{}", misses.join("; "));
    Ok("lambda=3 [[9,2]] d_x=3 d_z=2; lambda=4 rejected; lambda=6 [[36,2]] d_x=6 d_z=4".into())
}

/// Every edge subset: non-cycles are refused, and a cycle has zero
/// signature exactly when it is a sum of face boundaries.
fn exhaustive_signature_check(c: &SurfaceComplex) -> Result<usize, String> {
    let basis = cocycle_basis(c).map_err(|e| e.to_string())?;
    let chain = boundary_matrices(c);
    let boundaries = RowSpace::from_matrix(&chain.d2.transpose());
    let m = c.num_edges();
    let mut cycles = 0;
    for mask in 0u32..(1 << m) {
        let v = BitVec::from_indices(m, (0..m).filter(|&e| mask >> e & 1 == 1));
        let is_cycle = chain.d1.mul_vec(&v).map_err(|e| e.to_string())?.is_zero();
        match homology_signature(c, &v, &basis) {
            Ok(sig) => {
                ensure!(
                    is_cycle,
                    "mask {mask:#x}: signature computed for a non-cycle"
                );
                cycles += 1;
                ensure!(
                    sig.is_zero() == boundaries.contains(&v),
                    "mask {mask:#x}: signature zero = {} but boundary = {}",
                    sig.is_zero(),
                    boundaries.contains(&v)
                );
            }
            Err(Error::NotACycle { .. }) => ensure!(!is_cycle, "mask {mask:#x}: cycle refused"),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(cycles)
}

fn homology_suite() -> Outcome {
    let mut corpus: Vec<SurfaceComplex> = (2..=5).map(square).collect();
    corpus.extend((1..=4).map(hex_apothem));
    corpus.extend([3, 6].map(hex_edge));
    for text in [OCTAGON, BOLZA] {
        corpus.push(load_complex_str(text).map_err(|e| e.to_string())?);
    }
    let mut exhaustive = 0;
    for c in &corpus {
        let label = c.label();
        let chain = boundary_matrices(c);
        ensure!(chain.is_exact_pair(), "{label}: d1 d2 != 0");
        let b1 = betti1(c).map_err(|e| format!("{label}: {e}"))?;
        ensure!(b1 == 2 * c.genus() as usize, "{label}: betti1 = {b1}");
        let code = build_css(c).map_err(|e| format!("{label}: {e}"))?;
        let report = verify_stabilizers(&code).map_err(|e| format!("{label}: {e}"))?;
        ensure!(
            report.independent_generators == c.num_vertices() + c.num_faces() - 2,
            "{label}: {} independent generators",
            report.independent_generators
        );
        if c.num_edges() <= 14 {
            exhaustive_signature_check(c).map_err(|e| format!("{label}: {e}"))?;
            exhaustive += 1;
        }
    }
    Ok(format!(
        "{} complexes; {exhaustive} checked exhaustively over all edge subsets",
        corpus.len()
    ))
}

fn family_formulas() -> Outcome {
    for row in family_rows() {
        for p in row.min_p()..row.min_p() + 12 {
            for g in 2..=10u32 {
                let c = census(pair(p, row.q), Genus::hyperbolic(g).unwrap())
                    .map_err(|e| e.to_string())?;
                let (pi, gi) = (p as i64, g as i64);
                ensure!(
                    row.n_f.eval(pi, gi) == c.n_f
                        && row.n_f_star.eval(pi, gi) == c.n_f_star
                        && row.n.eval(pi, gi) == c.n_edges,
                    "{{{p},{}}} g={g}: formula and census differ",
                    row.q
                );
            }
        }
    }
    let rates: Vec<Rational> = family_rows().iter().map(|r| r.asymptotic_rate()).collect();
    let want = [(1, 3), (1, 2), (3, 5), (2, 3)].map(|(a, b)| Rational::new(a, b));
    ensure!(rates == want, "family rates {rates:?}");
    let fixed: Vec<Rational> = TABLE2_PAIRS
        .iter()
        .map(|&(p, q)| fixed_pair_rate(pair(p, q)).unwrap())
        .collect();
    let want = [
        (1, 21),
        (1, 12),
        (1, 9),
        (2, 15),
        (1, 6),
        (1, 10),
        (1, 6),
        (1, 4),
        (2, 5),
    ]
    .map(|(a, b)| Rational::new(a, b));
    ensure!(fixed == want, "fixed-pair rates {fixed:?}");
    Ok("formulas = census for 4 families x 12 p x g=2..10; rates exact".into())
}

fn curves() -> Outcome {
    let pairs = [pair(7, 3), pair(5, 4), pair(10, 5)];
    let mut buf = Vec::new();
    emit_curves(&pairs, 2..=10, &mut buf).map_err(|e| e.to_string())?;
    let mut reader = csv::Reader::from_reader(buf.as_slice());
    let header = reader.headers().map_err(|e| e.to_string())?.clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let (pc, gc, diff) = (col("pair"), col("g"), col("dx_minus_dz"));
    let mut by_pair: std::collections::BTreeMap<String, Vec<(u32, i64)>> = Default::default();
    for rec in reader.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        by_pair
            .entry(rec[pc].to_string())
            .or_default()
            .push((rec[gc].parse().unwrap(), rec[diff].parse().unwrap()));
    }
    let seven = &by_pair["{7,3}"];
    for other in ["{5,4}", "{10,5}"] {
        for (a, b) in seven.iter().zip(&by_pair[other]) {
            ensure!(
                a.0 == b.0 && a.1 > b.1,
                "g={}: {{7,3}} gap {} vs {other} gap {}",
                a.0,
                a.1,
                b.1
            );
        }
    }
    let rows = curve_rows(&[pair(5, 4)], 2..=5).map_err(|e| e.to_string())?;
    let unequal: Vec<u32> = rows
        .iter()
        .filter(|r| r.dx_bound != r.dz_bound)
        .map(|r| r.g)
        .collect();
    ensure!(
        unequal == [4],
        "{{5,4}} unequal protection at g = {unequal:?}"
    );
    Ok("{7,3} gap dominates at g=2..10; {5,4} unequal only at g=4".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "edge-length constants",
            budget: Duration::from_secs(1),
            run: edge_lengths,
        },
        Criterion {
            id: 2,
            name: "{8,3} genus-2 instance",
            budget: Duration::from_secs(10),
            run: genus_two_instance,
        },
        Criterion {
            id: 3,
            name: "case-study bounds",
            budget: Duration::from_secs(1),
            run: case_studies,
        },
        Criterion {
            id: 4,
            name: "square-torus family",
            budget: Duration::from_secs(30),
            run: kitaev_family,
        },
        Criterion {
            id: 5,
            name: "apothem-scaled hex family",
            budget: Duration::from_secs(60),
            run: apothem_family,
        },
        Criterion {
            id: 6,
            name: "edge-scaled hex family",
            budget: Duration::from_secs(60),
            run: edge_family,
        },
        Criterion {
            id: 7,
            name: "homology invariants",
            budget: Duration::from_secs(60),
            run: homology_suite,
        },
        Criterion {
            id: 8,
            name: "family formulas and rates",
            budget: Duration::from_secs(1),
            run: family_formulas,
        },
        Criterion {
            id: 9,
            name: "curve regeneration",
            budget: Duration::from_secs(1),
            run: curves,
        },
    ];
    let strict = std::env::var_os("ATQC_ACCEPTANCE_STRICT").is_some_and(|v| v != "0");
    let mut unexpected = 0;
    let mut passed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > c.budget => {
                Err(format!("{msg}; took {elapsed:.2?} > {:.0?}", c.budget))
            }
            other => other,
        };
        let known = KNOWN_FAILURES.contains(&c.id);
        match (&outcome, known) {
            (Ok(msg), false) => {
                passed += 1;
                println!(
                    "PASS  criterion {} ({}) [{elapsed:.2?}]: {msg}",
                    c.id, c.name
                );
            }
            (Ok(msg), true) => {
                unexpected += 1;
                println!(
                    "PASS  criterion {} ({}) [{elapsed:.2?}]: {msg} -- listed as a known failure; update the list",
                    c.id, c.name
                );
            }
            (Err(msg), true) => {
                if strict {
                    unexpected += 1;
                }
                println!(
                    "FAIL  criterion {} ({}) [{elapsed:.2?}]: {msg} (known finding)",
                    c.id, c.name
                );
            }
            (Err(msg), false) => {
                unexpected += 1;
                println!(
                    "FAIL  criterion {} ({}) [{elapsed:.2?}]: {msg}",
                    c.id, c.name
                );
            }
        }
    }
    println!(
        "acceptance: {passed}/{} passed, {} known findings, {unexpected} unexpected",
        criteria.len(),
        KNOWN_FAILURES.len()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
