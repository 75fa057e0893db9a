//! Checkerboard spanning surfaces.
//!
//! The surface of one color is a disc for every region of that color plus a
//! half-twisted band at every crossing. Everything here is a function of the
//! combinatorics; nothing is embedded.

use petgraph::algo::is_bipartite_undirected;
use petgraph::graph::UnGraph;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::bracket::state_stats;
use crate::codes::{require_valid, Diagram};
use crate::diagram::{checkerboard, require_reduced, Color, Coloring};
use crate::embedding::{dart, Embedding};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub color: Color,
    pub disc_count: usize,
    pub band_count: usize,
    pub euler_char: i64,
    pub orientable: bool,
    /// Genus when orientable, number of crosscaps otherwise.
    pub genus_or_crosscap: u64,
    pub boundary_components: usize,
}

/// Band graph: one vertex per region of `color`, one edge per crossing
/// joining the two regions of that color at its corners.
fn band_graph(col: &Coloring, color: Color, n: usize) -> UnGraph<(), usize> {
    let mut g = UnGraph::new_undirected();
    let mut node = vec![None; col.colors.len()];
    for (f, &c) in col.colors.iter().enumerate() {
        if c == color {
            node[f] = Some(g.add_node(()));
        }
    }
    for k in 0..n {
        let s = if col.a_color(k) == color { 1 } else { 0 };
        let f = node[col.faces.corner(k, s)].expect("corner has this color");
        let h = node[col.faces.corner(k, s + 2)].expect("corner has this color");
        g.add_edge(f, h, k);
    }
    g
}

fn bipartite(g: &UnGraph<(), usize>) -> bool {
    match g.node_indices().next() {
        None => true,
        // the band graph of a knot diagram is connected
        Some(start) => is_bipartite_undirected(g, start),
    }
}

/// Orientability read off the regions directly: the surface is orientable
/// exactly when every region of its color is bounded by edges that all run
/// the same way around it, so that a plane orientation of each disc induces
/// the knot's orientation on the boundary.
fn coherent_regions(col: &Coloring, color: Color) -> bool {
    col.faces
        .faces
        .iter()
        .zip(&col.colors)
        .filter(|(_, &c)| c == color)
        .all(|(f, _)| f.windows(2).all(|w| w[0].side == w[1].side))
}

/// Boundary circles of a checkerboard surface. The boundary runs along every
/// edge (each edge borders exactly one region of either color) and continues
/// straight through each crossing along the band's twisted edges.
fn boundary_components(d: &Diagram) -> usize {
    if d.n() == 0 {
        return 1;
    }
    let emb = Embedding::from_checked(d);
    let mut uf = UnionFind::<usize>::new(4 * d.n());
    for x in 0..emb.partner.len() {
        uf.union(x, emb.partner[x]);
    }
    for k in 0..d.n() {
        uf.union(dart(k, 0), dart(k, 2));
        uf.union(dart(k, 1), dart(k, 3));
    }
    (0..4 * d.n()).filter(|&x| uf.find(x) == x).count()
}

fn summarize(d: &Diagram, col: &Coloring, color: Color) -> SurfaceSummary {
    let n = d.n();
    let disc_count = col.count(color);
    let euler_char = disc_count as i64 - n as i64;
    let orientable = bipartite(&band_graph(col, color, n));
    let genus_or_crosscap = if orientable { (1 - euler_char) / 2 } else { 1 - euler_char } as u64;
    SurfaceSummary {
        color,
        disc_count,
        band_count: n,
        euler_char,
        orientable,
        genus_or_crosscap,
        boundary_components: boundary_components(d),
    }
}

pub fn checkerboard_surface(d: &Diagram, color: Color) -> Result<SurfaceSummary> {
    let col = checkerboard(d)?;
    Ok(summarize(d, &col, color))
}

/// Orientability computed from region boundary directions instead of the
/// band graph; the two must agree.
pub fn orientable_by_regions(d: &Diagram, color: Color) -> Result<bool> {
    let col = checkerboard(d)?;
    Ok(coherent_regions(&col, color))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HowieReport {
    pub chi_white: i64,
    pub chi_black: i64,
    pub half_intersection: i64,
    pub total: i64,
}

impl HowieReport {
    pub fn holds(&self) -> bool {
        self.total == 2
    }
}

/// `chi(white) + chi(black) + n`.
///
/// Each Euler characteristic is taken from the state surface whose discs are
/// the loops of a constant smoothing: `|s+| - n` for the color whose regions
/// the all-`+1` loops bound at the first crossing, `|s-| - n` for the other.
/// On a reduced alternating diagram these surfaces are exactly the two
/// checkerboard surfaces. Counting regions instead would give
/// `(n + 2) - 2n` for every diagram, and the identity would carry no
/// information.
pub fn howie_check(d: &Diagram) -> Result<HowieReport> {
    require_valid(d)?;
    require_reduced(d)?;
    let n = d.n() as i64;
    let st = state_stats(d)?;
    let (chi_plus, chi_minus) = (st.s_plus_loops as i64 - n, st.s_minus_loops as i64 - n);
    let plus_color = if d.n() == 0 { Color::White } else { checkerboard(d)?.a_color(0).other() };
    let (chi_white, chi_black) = match plus_color {
        Color::White => (chi_plus, chi_minus),
        Color::Black => (chi_minus, chi_plus),
    };
    Ok(HowieReport { chi_white, chi_black, half_intersection: n, total: chi_white + chi_black + n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_pd;

    fn trefoil() -> Diagram {
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap()
    }

    #[test]
    fn trefoil_surfaces() {
        let t = trefoil();
        let col = checkerboard(&t).unwrap();
        let two = if col.count(Color::White) == 2 { Color::White } else { Color::Black };
        let s = checkerboard_surface(&t, two).unwrap();
        assert_eq!((s.disc_count, s.euler_char, s.orientable, s.genus_or_crosscap), (2, -1, true, 1));
        let m = checkerboard_surface(&t, two.other()).unwrap();
        assert_eq!((m.disc_count, m.euler_char, m.orientable, m.genus_or_crosscap), (3, 0, false, 1));
        assert_eq!((s.boundary_components, m.boundary_components), (1, 1));
        assert!(orientable_by_regions(&t, two).unwrap());
        assert!(!orientable_by_regions(&t, two.other()).unwrap());
    }

    #[test]
    fn unknot_disc() {
        for c in [Color::White, Color::Black] {
            let s = checkerboard_surface(&Diagram::unknot(), c).unwrap();
            assert_eq!((s.euler_char, s.orientable, s.genus_or_crosscap), (1, true, 0));
        }
    }

    #[test]
    fn trefoil_howie() {
        let t = trefoil();
        let h = howie_check(&t).unwrap();
        assert_eq!(h.total, 2);
        let mut chis = [h.chi_white, h.chi_black];
        chis.sort();
        assert_eq!(chis, [-1, 0]);
        for c in [Color::White, Color::Black] {
            let chi = checkerboard_surface(&t, c).unwrap().euler_char;
            assert_eq!(chi, if c == Color::White { h.chi_white } else { h.chi_black });
        }
    }
}
