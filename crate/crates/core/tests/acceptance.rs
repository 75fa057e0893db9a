//! One line per acceptance criterion. Runs without the test harness so the
//! lines always print; exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use knotforge::bracket::{bracket_fast, bracket_naive, jones, kauffman_poly, span_check, state_stats};
use knotforge::diagram::{checkerboard, is_alternating, is_composite, writhe, Color};
use knotforge::moves::{apply_flype, apply_move, find_flypes, move_sites, MoveSite};
use knotforge::surfaces::{checkerboard_surface, howie_check};
use knotforge::tables::{builtin_table, lookup, verify_tait, TableEntry};
use knotforge::{parse_pd, Diagram, LaurentPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))
}

fn d(name: &str) -> Diagram {
    lookup(name).unwrap_or_else(|| panic!("{name} is bundled")).diagram
}

fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

fn alternating_entries() -> Vec<TableEntry> {
    builtin_table().into_iter().filter(|e| e.expected_alternating).collect()
}

const CONTROLS: [&str; 3] = ["8_19", "8_20", "8_21"];

fn writhe_anchors() -> Check {
    let right = d("3_1").mirror();
    let eight = d("4_1");
    let t = Instant::now();
    let (wr, we) = (writhe(&right).map_err(|e| e.to_string())?, writhe(&eight).map_err(|e| e.to_string())?);
    let el = t.elapsed();
    ensure(wr == 3, || format!("right trefoil writhe {wr}"))?;
    ensure(we == 0, || format!("figure-eight writhe {we}"))?;
    within(el, Duration::from_millis(1))?;
    Ok(format!("+3 and 0 in {el:?}"))
}

fn state_sum_identity() -> Check {
    let t = Instant::now();
    let alt = alternating_entries();
    for e in &alt {
        let s = state_stats(&e.diagram).map_err(|x| x.to_string())?;
        ensure(s.s_plus_loops + s.s_minus_loops == e.diagram.n() + 2, || format!("{} gives {s:?}", e.name))?;
    }
    for name in CONTROLS {
        let x = d(name);
        let s = state_stats(&x).map_err(|e| e.to_string())?;
        ensure(s.s_plus_loops + s.s_minus_loops < x.n() + 2, || format!("{name} gives {s:?}"))?;
    }
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{} alternating equalities, 3 strict controls in {:?}", alt.len(), t.elapsed()))
}

fn span_law() -> Check {
    let t = Instant::now();
    let mut naive = 0;
    for e in alternating_entries() {
        let n = e.diagram.n() as i64;
        // the naive evaluator refuses the 24-crossing chain; its span is
        // taken from the contraction evaluator instead
        let b = if e.diagram.n() <= 20 {
            naive += 1;
            bracket_naive(&e.diagram)
        } else {
            bracket_fast(&e.diagram)
        }
        .map_err(|x| x.to_string())?;
        let deg = b.degrees().map_err(|x| x.to_string())?;
        let st = state_stats(&e.diagram).map_err(|x| x.to_string())?;
        let (sp, sm) = (st.s_plus_loops as i64, st.s_minus_loops as i64);
        ensure(deg.span == 4 * n, || format!("{}: span {} vs 4n = {}", e.name, deg.span, 4 * n))?;
        ensure(deg.max == n + 2 * sp - 2 && deg.min == -n - 2 * sm + 2, || format!("{}: extreme degrees {deg:?}", e.name))?;
        let r = span_check(&e.diagram).map_err(|x| x.to_string())?;
        ensure(r.span_law_holds() && r.extreme_degree_match == Some(true), || format!("{}: {r:?}", e.name))?;
    }
    for name in CONTROLS {
        let x = d(name);
        let span = bracket_naive(&x).map_err(|e| e.to_string())?.degrees().map_err(|e| e.to_string())?.span;
        ensure(span < 4 * x.n() as i64, || format!("{name}: span {span}"))?;
    }
    within(t.elapsed(), Duration::from_secs(5))?;
    Ok(format!("{naive} naive + 1 contraction evaluations, 3 strict controls in {:?}", t.elapsed()))
}

fn jones_golden() -> Check {
    let right = jones(&d("3_1").mirror()).map_err(|e| e.to_string())?;
    let eight = jones(&d("4_1")).map_err(|e| e.to_string())?;
    ensure(right == poly(&[(4, -1), (3, 1), (1, 1)]), || format!("right trefoil {}", right.render("t")))?;
    ensure(eight == poly(&[(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)]), || format!("figure-eight {}", eight.render("t")))?;
    Ok(format!("{} and {}", right.render("t"), eight.render("t")))
}

fn calibration() -> Check {
    let t = Instant::now();
    let kink = parse_pd("PD[X(1,1,2,2)]").map_err(|e| e.to_string())?;
    ensure(bracket_naive(&kink).map_err(|e| e.to_string())? == poly(&[(3, -1)]), || "kink bracket".into())?;
    let mut checked = 0;
    for (name, x) in common::corpus() {
        let small = x.n() <= 12;
        let eval = |y: &Diagram| if small { bracket_naive(y) } else { bracket_fast(y) };
        let b = eval(&x).map_err(|e| e.to_string())?;
        let f = kauffman_poly(&x).map_err(|e| e.to_string())?;
        let mut sites = move_sites(&x).map_err(|e| e.to_string())?;
        // R3 sites appear once a non-alternating triangle exists: collect
        // them from every R2 result as well
        let r2: Vec<MoveSite> = sites.iter().filter(|s| matches!(s, MoveSite::R2 { .. })).cloned().collect();
        for site in sites.drain(..) {
            let y = apply_move(&x, &site).map_err(|e| format!("{name} {site}: {e}"))?;
            let by = eval(&y).map_err(|e| e.to_string())?;
            let expected = match site {
                MoveSite::R1Pos { .. } => &b * &poly(&[(3, -1)]),
                MoveSite::R1Neg { .. } => &b * &poly(&[(-3, -1)]),
                _ => b.clone(),
            };
            ensure(by == expected, || format!("{name} {site}: bracket changed"))?;
            ensure(kauffman_poly(&y).map_err(|e| e.to_string())? == f, || format!("{name} {site}: F changed"))?;
            checked += 1;
        }
        if x.n() <= 6 {
            for site in r2 {
                let y = apply_move(&x, &site).map_err(|e| e.to_string())?;
                for r3 in move_sites(&y).map_err(|e| e.to_string())?.into_iter().filter(|s| matches!(s, MoveSite::R3 { .. })) {
                    let z = apply_move(&y, &r3).map_err(|e| format!("{name} {site} {r3}: {e}"))?;
                    ensure(eval(&z).map_err(|e| e.to_string())? == b, || format!("{name} {site} {r3}: bracket changed"))?;
                    checked += 1;
                }
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{checked} move sites in {:?}", t.elapsed()))
}

fn tait_t2() -> Check {
    let report = verify_tait(&builtin_table()).map_err(|e| e.to_string())?;
    for k in ["3_1", "4_1"] {
        let t = report.knot_types.get(k).ok_or(format!("{k} has one presentation"))?;
        ensure(t.entries.len() >= 2 && t.writhe_consistent && t.jones_consistent, || format!("{k}: {t:?}"))?;
    }
    let w = |k: &str| report.knot_types[k].writhes.clone();
    Ok(format!("3_1 writhes {:?}, 4_1 writhes {:?}, Jones equal", w("3_1"), w("4_1")))
}

fn flype_invariants() -> Check {
    let t = Instant::now();
    let mut sites = 0;
    for e in alternating_entries() {
        let x = &e.diagram;
        let (w, v) = (writhe(x).map_err(|e| e.to_string())?, jones(x).map_err(|e| e.to_string())?);
        for site in find_flypes(x).map_err(|e| e.to_string())? {
            let y = apply_flype(x, &site).map_err(|err| format!("{} {site}: {err}", e.name))?;
            ensure(y.n() == x.n(), || format!("{} {site}: n", e.name))?;
            ensure(writhe(&y).map_err(|e| e.to_string())? == w, || format!("{} {site}: writhe", e.name))?;
            ensure(is_alternating(&y).map_err(|e| e.to_string())?, || format!("{} {site}: alternation", e.name))?;
            ensure(jones(&y).map_err(|e| e.to_string())? == v, || format!("{} {site}: Jones", e.name))?;
            sites += 1;
        }
    }
    within(t.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{sites} flype sites in {:?}", t.elapsed()))
}

fn howie() -> Check {
    let alt = alternating_entries();
    for e in &alt {
        let h = howie_check(&e.diagram).map_err(|x| x.to_string())?;
        ensure(h.total == 2, || format!("{}: {h:?}", e.name))?;
    }
    let mut totals = Vec::new();
    for name in CONTROLS {
        let h = howie_check(&d(name)).map_err(|e| e.to_string())?;
        ensure(h.total < 2, || format!("{name}: {h:?}"))?;
        totals.push(h.total);
    }
    Ok(format!("total 2 on {} alternating diagrams, controls {totals:?}", alt.len()))
}

fn surface_anchors() -> Check {
    let t = d("3_1");
    let col = checkerboard(&t).map_err(|e| e.to_string())?;
    let two = if col.count(Color::White) == 2 { Color::White } else { Color::Black };
    let s = checkerboard_surface(&t, two).map_err(|e| e.to_string())?;
    let m = checkerboard_surface(&t, two.other()).map_err(|e| e.to_string())?;
    ensure((s.euler_char, s.orientable, s.genus_or_crosscap) == (-1, true, 1), || format!("{s:?}"))?;
    ensure((m.euler_char, m.orientable, m.genus_or_crosscap) == (0, false, 1), || format!("{m:?}"))?;
    Ok("genus-1 orientable (chi -1) and Moebius band (chi 0)".into())
}

fn oracle_and_speed() -> Check {
    let mut compared = 0;
    for (name, x) in common::corpus().into_iter().filter(|(_, x)| x.n() <= 12) {
        ensure(bracket_fast(&x).ok() == bracket_naive(&x).ok(), || format!("{name}"))?;
        compared += 1;
    }
    let small: Vec<Diagram> = common::corpus().into_iter().map(|(_, x)| x).filter(|x| x.n() <= 8).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..200 {
        let m = common::mutate(&small[i % small.len()], 1 + i % 6, 14, &mut rng);
        ensure(bracket_fast(&m).ok() == bracket_naive(&m).ok(), || format!("mutant {m}"))?;
    }
    let chain = d("twist_chain_24");
    let t = Instant::now();
    let b = bracket_fast(&chain).map_err(|e| e.to_string())?;
    let el = t.elapsed();
    within(el, Duration::from_secs(1))?;
    ensure(!b.is_zero(), || "zero bracket".into())?;
    Ok(format!("{compared} corpus + 200 mutants agree; 24 crossings in {el:?}"))
}

fn composite() -> Check {
    let mut prime = 0;
    for (name, x) in common::corpus() {
        let r = is_composite(&x).map_err(|e| e.to_string())?;
        if name == "3_1#3_1" {
            ensure(r.composite && r.cut.is_some(), || format!("{name}: {r:?}"))?;
        } else {
            ensure(!r.composite, || format!("{name} reported composite: {r:?}"))?;
            prime += 1;
        }
    }
    let cut = is_composite(&d("3_1#3_1")).map_err(|e| e.to_string())?.cut.expect("witness");
    Ok(format!("granny cut at edges {cut:?}; {prime} prime diagrams"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("writhe anchors", writhe_anchors),
        ("state-sum identity", state_sum_identity),
        ("span law", span_law),
        ("Jones golden values", jones_golden),
        ("calibration and invariance", calibration),
        ("equal writhe and Jones across presentations", tait_t2),
        ("flype invariants", flype_invariants),
        ("Howie identity", howie),
        ("checkerboard surface anchors", surface_anchors),
        ("evaluator agreement and speed", oracle_and_speed),
        ("composite detection", composite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
