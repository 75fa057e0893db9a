mod common;

use knotforge::bracket::{bracket_fast, bracket_naive, jones, kauffman_poly, state_stats};
use knotforge::diagram::{checkerboard, is_alternating, is_composite, is_reduced, writhe, Color};
use knotforge::moves::{apply_flype, apply_move, apply_move_with_undo, find_flypes, flype_orbit, move_sites, MoveSite};
use knotforge::surfaces::{checkerboard_surface, orientable_by_regions};
use knotforge::tables::lookup;
use knotforge::{canonical_form, Diagram, LaurentPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn reference(d: &Diagram) -> LaurentPoly {
    if d.n() <= 14 {
        bracket_naive(d).unwrap()
    } else {
        bracket_fast(d).unwrap()
    }
}

#[test]
fn r_moves_on_corpus() {
    for (name, d) in common::corpus().into_iter().filter(|(_, d)| d.n() <= 8) {
        let b = reference(&d);
        let f = kauffman_poly(&d).unwrap();
        for site in move_sites(&d).unwrap() {
            let (e, undo) = apply_move_with_undo(&d, &site).unwrap();
            let be = reference(&e);
            match site {
                MoveSite::R1Pos { .. } => assert_eq!(be, &b * &LaurentPoly::monomial(-1, 3), "{name} {site}"),
                MoveSite::R1Neg { .. } => assert_eq!(be, &b * &LaurentPoly::monomial(-1, -3), "{name} {site}"),
                _ => assert_eq!(be, b, "{name} {site}"),
            }
            assert_eq!(kauffman_poly(&e).unwrap(), f, "{name} {site}");
            let back = apply_move(&e, &undo).unwrap();
            assert_eq!(canonical_form(&back).unwrap(), canonical_form(&d).unwrap(), "{name} {site}");
        }
    }
}

#[test]
fn r3_after_r2_on_small_corpus() {
    for (name, d) in common::corpus().into_iter().filter(|(_, d)| d.n() <= 5) {
        let b = reference(&d);
        for site in move_sites(&d).unwrap().into_iter().filter(|s| matches!(s, MoveSite::R2 { .. })) {
            let e = apply_move(&d, &site).unwrap();
            for r3 in move_sites(&e).unwrap().into_iter().filter(|s| matches!(s, MoveSite::R3 { .. })) {
                let f = apply_move(&e, &r3).unwrap();
                assert_eq!((f.n(), writhe(&f).unwrap()), (e.n(), writhe(&e).unwrap()));
                assert_eq!(reference(&f), b, "{name}: {site}, {r3}");
            }
        }
    }
}

#[test]
fn random_mutants_fast_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let corpus: Vec<_> = common::corpus().into_iter().filter(|(_, d)| d.n() <= 8).collect();
    for i in 0..100 {
        let (name, d) = &corpus[i % corpus.len()];
        let m = common::mutate(d, 1 + i % 5, 14, &mut rng);
        assert_eq!(bracket_fast(&m).unwrap(), bracket_naive(&m).unwrap(), "{name} -> {m}");
        assert_eq!(jones(&m).unwrap(), jones(d).unwrap(), "{name} -> {m}");
    }
}

#[test]
fn flypes_preserve_invariants() {
    for (name, d) in common::corpus() {
        if !is_alternating(&d).unwrap() {
            assert!(find_flypes(&d).is_err());
            continue;
        }
        let (w, v) = (writhe(&d).unwrap(), jones(&d).unwrap());
        for site in find_flypes(&d).unwrap() {
            let f = apply_flype(&d, &site).unwrap();
            assert_eq!(f.n(), d.n(), "{name} {site}");
            assert_eq!(writhe(&f).unwrap(), w, "{name} {site}");
            assert!(is_alternating(&f).unwrap() && is_reduced(&f).unwrap(), "{name} {site}");
            assert_eq!(jones(&f).unwrap(), v, "{name} {site}");
        }
    }
}

#[test]
fn flype_orbits() {
    for name in ["6_3", "7_5", "7_6", "7_7"] {
        let d = lookup(name).unwrap().diagram;
        let orbit = flype_orbit(&d, 1000).unwrap();
        assert!(orbit.len() > 1, "{name} has a proper flype");
        let v = jones(&d).unwrap();
        for (i, a) in orbit.iter().enumerate() {
            assert_eq!(jones(a).unwrap(), v);
            assert_eq!(writhe(a).unwrap(), writhe(&d).unwrap());
            for b in &orbit[i + 1..] {
                assert_ne!(a, b);
            }
        }
        // a flyped presentation has the same orbit
        let site = find_flypes(&d)
            .unwrap()
            .into_iter()
            .find(|s| canonical_form(&apply_flype(&d, s).unwrap()).unwrap() != orbit[0])
            .unwrap();
        let other = apply_flype(&d, &site).unwrap();
        let mut a = orbit.clone();
        let mut b = flype_orbit(&other, 1000).unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b, "{name}");
    }
    let tc = lookup("twist_chain_24").unwrap().diagram;
    assert!(matches!(flype_orbit(&tc, 3), Err(knotforge::Error::OrbitLimit { limit: 3, .. })));
}

#[test]
fn surfaces_on_corpus() {
    for (name, d) in common::corpus() {
        let st = state_stats(&d).unwrap();
        let n = d.n() as i64;
        let mut chi = 0;
        for c in [Color::White, Color::Black] {
            let s = checkerboard_surface(&d, c).unwrap();
            assert_eq!(s.boundary_components, 1, "{name}");
            assert_eq!(s.orientable, orientable_by_regions(&d, c).unwrap(), "{name} {c}");
            if s.orientable {
                assert_eq!(s.euler_char.rem_euclid(2), 1, "{name} {c}");
            }
            chi += s.euler_char;
        }
        if is_alternating(&d).unwrap() {
            assert_eq!(chi, (st.s_plus_loops as i64 - n) + (st.s_minus_loops as i64 - n), "{name}");
        }
        // every crossing meets both colors
        let col = checkerboard(&d).unwrap();
        assert_eq!(col.count(Color::White) + col.count(Color::Black), d.n() + 2);
    }
}

#[test]
fn composite_detection() {
    for (name, d) in common::corpus() {
        let r = is_composite(&d).unwrap();
        assert_eq!(r.composite, name.contains('#'), "{name}");
        assert_eq!(r.cut.is_some(), r.composite);
    }
}
