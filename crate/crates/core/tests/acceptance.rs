//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits nonzero if any fails. All comparisons are exact; the
//! only tolerances are the wall-clock budgets below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use depthzero::apartment::is_vertex;
use depthzero::exec::Exec;
use depthzero::finlab::chartab::DixonOptions;
use depthzero::finlab::heisenberg::{borel_op_induced_decomposition, heisenberg_restriction_profile, opposite_unipotent};
use depthzero::finlab::level2::{sl3_level2_double_cosets, Level2Subgroup};
use depthzero::finlab::lie::{LabOptions, LieLab, StandardSubgroup};
use depthzero::finlab::torus::coxeter_torus_and_parabolic_intersection;
use depthzero::mackey::{compare_with_double_coset_oracle, component_degree, depth_bounds, intertwining_value, ps_dim_note, ps_fixed_dim};
use depthzero::rational::{format_vector, int};
use depthzero::rootdata::{coxeter_element, dl_cuspidal_degree_poly, CartanSpec, RootDatum, WeylGroup};
use depthzero::stabilizers::{gxromega_sweep, includes, index_qpoly, sample_points, standard_radii, ExponentFunction};
use depthzero::QPolynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET_GREEN: Duration = Duration::from_secs(300);
const BUDGET_LEVEL2: Duration = Duration::from_secs(600);
const BUDGET_GXROMEGA: Duration = Duration::from_secs(60);
const BUDGET_ORACLE: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;

fn lab(n: usize, q: u32) -> Result<LieLab, String> {
    LieLab::new(n, q, LabOptions::default()).map_err(|e| e.to_string())
}

fn dl_cuspidals(lab: &LieLab) -> Result<Vec<usize>, String> {
    let w = lab.coxeter().map_err(|e| e.to_string())?;
    lab.identify_dl_cuspidals(&w).map_err(|e| e.to_string())
}

fn poly(c: &[i64]) -> QPolynomial {
    QPolynomial::from_i64(c)
}

fn ensure(cond: bool, msg: String) -> Outcome {
    if cond {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn within(start: Instant, budget: Duration, msg: String) -> Outcome {
    let t = start.elapsed();
    ensure(t <= budget, format!("{msg} in {:.1}s (budget {}s)", t.as_secs_f64(), budget.as_secs()))
}

fn green_square_sum() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for q in [2u32, 3] {
        let lab = lab(3, q)?;
        let expected = (q as i64).pow(4) * (q as i64 - 1).pow(2);
        let dl = dl_cuspidals(&lab)?;
        if dl.is_empty() {
            return Err(format!("SL(3,{q}): no cuspidal of Deligne-Lusztig degree"));
        }
        for chi in dl {
            // element-by-element sum over U, independent of the class-count route
            let mut direct = 0i64;
            for u in lab.subgroup_elements(StandardSubgroup::Unipotent) {
                let v = lab.table.characters[chi][lab.class_of(&u)]
                    .to_integer()
                    .ok_or_else(|| format!("SL(3,{q}): non-integral Green value"))?;
                direct += v * v;
            }
            let via_classes = lab.green_square_sum(chi).map_err(|e| e.to_string())?;
            if direct != expected || via_classes != expected {
                return Err(format!("SL(3,{q}): {direct}/{via_classes} != {expected}"));
            }
        }
        parts.push(format!("SL(3,{q}) = {expected}"));
    }
    within(start, BUDGET_GREEN, parts.join(", "))
}

fn borel_self_intertwining() -> Outcome {
    let mut parts = Vec::new();
    for (n, q, expected) in [(2usize, 3u32, 2i64), (2, 5, 2), (3, 2, 2), (3, 3, 3)] {
        let lab = lab(n, q)?;
        let dl = dl_cuspidals(&lab)?;
        let vals: Vec<i64> = dl
            .iter()
            .map(|&c| lab.self_intertwining_on_borel(c))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        if vals.is_empty() || vals.iter().any(|&v| v != expected) {
            return Err(format!("SL({n},{q}): {vals:?} != {expected}"));
        }
        parts.push(format!("SL({n},{q}) = {expected}"));
    }
    Ok(parts.join(", "))
}

fn dl_degree() -> Outcome {
    let mut parts = Vec::new();
    for (n, qs) in [(2usize, vec![3u32, 5]), (3, vec![2, 3])] {
        for q in qs {
            let lab = lab(n, q)?;
            let qq = q as i64;
            let expected = if n == 2 { qq - 1 } else { (qq - 1) * (qq * qq - 1) };
            let dl = dl_cuspidals(&lab)?;
            let degs: Vec<i64> = dl.iter().map(|&c| lab.table.degree(c)).collect();
            if degs.is_empty() || degs.iter().any(|&d| d != expected) {
                return Err(format!("SL({n},{q}): degrees {degs:?}, expected {expected}"));
            }
            parts.push(format!("SL({n},{q}): {} x {expected}", degs.len()));
        }
    }
    Ok(parts.join(", "))
}

fn borel_coincidence() -> Outcome {
    let mut parts = Vec::new();
    for q in [2u32, 3] {
        let lab = lab(3, q)?;
        let dl = dl_cuspidals(&lab)?;
        let mut pairs = 0;
        for &a in &dl {
            for &b in &dl {
                let cmp = lab.borel_restriction_check(a, b);
                if !cmp.same_central_character {
                    continue;
                }
                pairs += 1;
                if !(cmp.agree_on_borel && cmp.first_vanishes_off_central && cmp.second_vanishes_off_central) {
                    return Err(format!("SL(3,{q}): pair ({a},{b}) fails: {cmp:?}"));
                }
            }
        }
        if pairs == 0 {
            return Err(format!("SL(3,{q}): no pairs"));
        }
        parts.push(format!("SL(3,{q}): {pairs} ordered pairs"));
    }
    Ok(parts.join(", "))
}

fn torus_parabolic() -> Outcome {
    let mut parts = Vec::new();
    for q in [2u32, 3, 4] {
        let r = coxeter_torus_and_parabolic_intersection(q).map_err(|e| e.to_string())?;
        let expected_meet = if q == 4 { 3 } else { 1 };
        let ok = r.holds()
            && r.torus_order as u32 == q * q + q + 1
            && r.intersections.iter().all(|i| i.order == expected_meet);
        if !ok {
            return Err(format!("q={q}: {r:?}"));
        }
        parts.push(format!("q={q}: |T|={} |T∩P|={expected_meet}", r.torus_order));
    }
    Ok(parts.join(", "))
}

fn heisenberg_profile() -> Outcome {
    let mut parts = Vec::new();
    for q in [2u32, 3] {
        let lab = lab(3, q)?;
        let u = opposite_unipotent(&lab, DixonOptions::default()).map_err(|e| e.to_string())?;
        for chi in dl_cuspidals(&lab)? {
            let prof = heisenberg_restriction_profile(&lab, chi, &u).map_err(|e| e.to_string())?;
            // dimension bookkeeping: (q-1)(q^2-1) = (q-1) q (q-1) + (q-1)^2
            let dim: i64 = prof.rows.iter().map(|r| r.degree * r.multiplicity).sum();
            if !prof.holds() || dim != prof.character_degree {
                return Err(format!("SL(3,{q}) chi {chi}: {prof:?}"));
            }
        }
        parts.push(format!("q={q}: {} x SvN at {}, {} generic linear at 1", q - 1, q - 1, (q - 1) * (q - 1)));
    }
    Ok(parts.join(", "))
}

fn borel_op_decomposition() -> Outcome {
    let mut parts = Vec::new();
    for q in [3u32, 5] {
        let r = borel_op_induced_decomposition(q, DixonOptions { class_guard: 128, ..Default::default() })
            .map_err(|e| e.to_string())?;
        let qq = q as i64;
        let bookkeeping = r
            .rows
            .iter()
            .all(|row| row.induced_degree == row.source_degree * (qq - 1) * (qq - 1));
        if !r.holds() || !bookkeeping {
            return Err(format!("q={q}: {r:?}"));
        }
        parts.push(format!("q={q}: (q-1)^2={} irreducible, {} x {}", (qq - 1).pow(2), qq - 1, qq * (qq - 1)));
    }
    Ok(parts.join(", "))
}

fn level2() -> Outcome {
    let start = Instant::now();
    let r = sl3_level2_double_cosets(3, Level2Subgroup::Standard).map_err(|e| e.to_string())?;
    let index = 3 * 4 * 13;
    if r.index != index || r.double_cosets != 7 {
        return Err(format!("index {}, {} double cosets", r.index, r.double_cosets));
    }
    within(start, BUDGET_LEVEL2, format!("index {index}, 7 double cosets, orbit sizes {:?}", r.orbit_sizes))
}

fn mackey_degree() -> Outcome {
    let spec: CartanSpec = "A2".parse().unwrap();
    let datum = RootDatum::new(&spec).map_err(|e| e.to_string())?;
    let weyl = WeylGroup::new(&datum).map_err(|e| e.to_string())?;
    let zero = vec![int(0), int(0)];
    let tau = dl_cuspidal_degree_poly(&spec, &coxeter_element(&datum)).map_err(|e| e.to_string())?;
    // q (q + 1)(q^2 - 1)(q^3 - 1)
    let expected = poly(&[0, 1]) * poly(&[1, 1]) * poly(&[-1, 0, 1]) * poly(&[-1, 0, 0, 1]);
    let ell = [1, 1];
    let deg = component_degree(&datum, &weyl, &zero, &zero, &ell, &tau).map_err(|e| e.to_string())?;
    let depth = depth_bounds(&datum, &zero, &zero, &ell).map_err(|e| e.to_string())?;
    ensure(deg == expected && depth == (1, 2), format!("degree {deg}, depths {depth:?}"))
}

fn ps_dimension() -> Outcome {
    let datum = RootDatum::new(&"A2".parse().unwrap()).map_err(|e| e.to_string())?;
    let weyl = WeylGroup::new(&datum).map_err(|e| e.to_string())?;
    let expected = QPolynomial::monomial(1, 6) * poly(&[1, 1]) * poly(&[1, 1, 1]);
    let got = ps_fixed_dim(&datum, &weyl, 3).map_err(|e| e.to_string())?;
    let note = ps_dim_note(&datum, &weyl).map_err(|e| e.to_string())?;
    ensure(
        got == expected && !note.printed_matches && note.corrected_matches,
        format!("{got}; note: printed form {} differs, q^2+q+1 reading matches", note.printed),
    )
}

fn intertwining() -> Outcome {
    let spec: CartanSpec = "A2".parse().unwrap();
    let datum = RootDatum::new(&spec).map_err(|e| e.to_string())?;
    let tau = dl_cuspidal_degree_poly(&spec, &coxeter_element(&datum)).map_err(|e| e.to_string())?;
    let v = intertwining_value(&tau, &QPolynomial::one(), 2, true).map_err(|e| e.to_string())?;
    ensure(v == poly(&[1, 1]), format!("{v}"))
}

fn gxromega() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for label in ["A1", "A2", "A1+A1", "B2", "C2", "C3", "G2"] {
        let datum = RootDatum::new(&label.parse().unwrap()).map_err(|e| e.to_string())?;
        let points = sample_points(&datum, 20, 2024);
        let sweep = gxromega_sweep(Exec::default(), &datum, &points, &standard_radii()).map_err(|e| e.to_string())?;
        let expect_failure = label == "G2";
        if sweep.inclusion_failures != 0 || (sweep.equality_failures > 0) != expect_failure {
            return Err(format!("{label}: {sweep:?}"));
        }
        parts.push(match &sweep.witness {
            Some((x, r)) => format!("{label}: equality fails at x={} r={r}", format_vector(x)),
            None => format!("{label}: {} cases", sweep.cases),
        });
    }
    within(start, BUDGET_GXROMEGA, parts.join(", "))
}

fn xplus_oracle() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for label in ["A1", "A2", "C2"] {
        let datum = RootDatum::new(&label.parse().unwrap()).map_err(|e| e.to_string())?;
        let weyl = WeylGroup::new(&datum).map_err(|e| e.to_string())?;
        let y = vec![int(0); datum.rank()];
        for x in datum.alcove_vertices() {
            if !is_vertex(&datum, &x).map_err(|e| e.to_string())? {
                continue;
            }
            for bound in 1..=3 {
                let cmp = compare_with_double_coset_oracle(Exec::default(), &datum, &weyl, &x, &y, bound)
                    .map_err(|e| e.to_string())?;
                if !cmp.agrees() {
                    return Err(format!("{label} x={x:?} bound {bound}: {cmp:?}"));
                }
                cases += 1;
            }
        }
    }
    within(start, BUDGET_ORACLE, format!("{cases} (type, vertex, bound) cases agree"))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    // character tables of every group built above
    for (n, q) in [(2usize, 3u32), (2, 5), (3, 2), (3, 3)] {
        let lab = lab(n, q)?;
        lab.table.verify().map_err(|e| format!("SL({n},{q}): {e}"))?;
        lab.table.verify_columns().map_err(|e| format!("SL({n},{q}): {e}"))?;
    }
    // polynomial ring axioms on random integer polynomials
    let rand_poly = |rng: &mut ChaCha8Rng| -> QPolynomial {
        let len = rng.gen_range(0..6);
        poly(&(0..len).map(|_| rng.gen_range(-9..=9)).collect::<Vec<i64>>())
    };
    for _ in 0..200 {
        let (a, b, c) = (rand_poly(&mut rng), rand_poly(&mut rng), rand_poly(&mut rng));
        if &(&a * &b) * &c != &a * &(&b * &c) || &a * &(&b + &c) != &(&a * &b) + &(&a * &c) || &a * &b != &b * &a {
            return Err(format!("ring axiom fails for {a}, {b}, {c}"));
        }
        let x: i64 = rng.gen_range(-5..=5);
        if (&a * &b).eval_i64(x) != a.eval_i64(x) * b.eval_i64(x) {
            return Err(format!("evaluation is not multiplicative at {x}"));
        }
        if !b.is_zero() {
            let prod = &a * &b;
            if prod.div_exact(&b).map_err(|e| e.to_string())? != a {
                return Err("exact division does not invert multiplication".into());
            }
        }
    }
    // includes is a partial order and the index is multiplicative on chains
    let mk = |e: Vec<i64>| ExponentFunction { datum: "A2".into(), exponents: e, torus_level: 0 };
    for _ in 0..300 {
        let c: Vec<i64> = (0..6).map(|_| rng.gen_range(-2..=2)).collect();
        let b: Vec<i64> = c.iter().map(|v| v + rng.gen_range(0..=2)).collect();
        let a: Vec<i64> = b.iter().map(|v| v + rng.gen_range(0..=2)).collect();
        let (fa, fb, fc) = (mk(a), mk(b), mk(c));
        let ok = includes(&fa, &fb).unwrap()
            && includes(&fb, &fc).unwrap()
            && includes(&fa, &fc).unwrap()
            && index_qpoly(&fa, &fc).unwrap() == index_qpoly(&fa, &fb).unwrap() * index_qpoly(&fb, &fc).unwrap()
            && (fa == fc || !includes(&fc, &fa).unwrap());
        if !ok {
            return Err(format!("order or chain property fails for {fa:?} {fb:?} {fc:?}"));
        }
    }
    Ok("tables orthogonal; 200 polynomial identities; 300 exponent chains".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("green-square-sum", green_square_sum),
        ("borel-self-intertwining", borel_self_intertwining),
        ("dl-degree", dl_degree),
        ("borel-restriction-coincidence", borel_coincidence),
        ("torus-parabolic-intersection", torus_parabolic),
        ("heisenberg-profile", heisenberg_profile),
        ("borel-op-decomposition", borel_op_decomposition),
        ("level2-double-cosets", level2),
        ("mackey-degree-polynomial", mackey_degree),
        ("principal-series-dimension", ps_dimension),
        ("intertwining-value", intertwining),
        ("gxromega-suite", gxromega),
        ("xplus-oracle-equivalence", xplus_oracle),
        ("property-suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("[PASS] {:02} {name}: {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {:02} {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
