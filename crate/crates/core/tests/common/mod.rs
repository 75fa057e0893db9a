#![allow(dead_code)]

use knotforge::moves::{apply_move, move_sites, MoveSite};
use knotforge::tables::builtin_table;
use knotforge::Diagram;
use rand::seq::IndexedRandom;
use rand::Rng;

pub fn corpus() -> Vec<(String, Diagram)> {
    builtin_table().into_iter().map(|e| (e.name, e.diagram)).collect()
}

fn kind(site: &MoveSite) -> u8 {
    match site {
        MoveSite::R1Pos { .. } | MoveSite::R1Neg { .. } => 0,
        MoveSite::R2 { .. } => 1,
        MoveSite::R3 { .. } => 2,
        MoveSite::R1Undo { .. } => 3,
        MoveSite::R2Undo { .. } => 4,
    }
}

/// Applies `steps` random Reidemeister moves, never growing past `max_n`
/// crossings. Picks a move kind first so the many R2 sites do not swamp the
/// rest.
pub fn mutate<R: Rng>(d: &Diagram, steps: usize, max_n: usize, rng: &mut R) -> Diagram {
    let mut cur = d.clone();
    for _ in 0..steps {
        let sites: Vec<MoveSite> = move_sites(&cur)
            .unwrap()
            .into_iter()
            .filter(|s| match kind(s) {
                0 => cur.n() < max_n,
                1 => cur.n() + 2 <= max_n,
                _ => true,
            })
            .collect();
        let mut kinds: Vec<u8> = sites.iter().map(kind).collect();
        kinds.dedup();
        kinds.sort_unstable();
        kinds.dedup();
        let Some(&k) = kinds.choose(rng) else { break };
        let pool: Vec<&MoveSite> = sites.iter().filter(|s| kind(s) == k).collect();
        let site = pool.choose(rng).expect("kind has a site");
        cur = apply_move(&cur, site).unwrap_or_else(|e| panic!("{site} on {cur}: {e}"));
    }
    cur
}
