//! Diagram rewrites: Reidemeister moves and flypes.
//!
//! Every rewrite edits the dart embedding and relabels through
//! [`Embedding::to_diagram`], which revalidates. Crossings that survive a
//! rewrite keep their relative order and new crossings are appended, so a
//! forward move can name the site that undoes it.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::codes::{canonical_form, require_valid, Diagram, EdgeId};
use crate::diagram::{faces_of_checked, is_alternating, require_reduced, Incidence, Side};
use crate::embedding::{ccw, crossing_of, dart, opposite, placed_sign, slot_of, Embedding, PortEnd};
use crate::error::{Error, Result};

pub const DEFAULT_ORBIT_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum MoveSite {
    /// Adds a kink of sign `+1` on `edge`, bulging into the region on `side`.
    #[serde(rename = "R1+")]
    R1Pos { edge: EdgeId, side: Side },
    #[serde(rename = "R1-")]
    R1Neg { edge: EdgeId, side: Side },
    /// Pushes a finger of `over` across `under`; both sides bound one region.
    R2 { over: Incidence, under: Incidence },
    /// Slides a strand across the crossing opposite it in a triangular
    /// region, given by its three edge sides.
    R3 { face: [Incidence; 3] },
    #[serde(rename = "R1-undo")]
    R1Undo { crossing: usize },
    #[serde(rename = "R2-undo")]
    R2Undo { crossings: [usize; 2] },
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Side| match s {
            Side::Left => "L",
            Side::Right => "R",
        };
        match self {
            MoveSite::R1Pos { edge, side: s } => write!(f, "R1+ {edge}{}", side(s)),
            MoveSite::R1Neg { edge, side: s } => write!(f, "R1- {edge}{}", side(s)),
            MoveSite::R2 { over, under } => {
                write!(f, "R2 {}{} over {}{}", over.edge, side(&over.side), under.edge, side(&under.side))
            }
            MoveSite::R3 { face } => {
                write!(f, "R3")?;
                for i in face {
                    write!(f, " {}{}", i.edge, side(&i.side))?;
                }
                Ok(())
            }
            MoveSite::R1Undo { crossing } => write!(f, "R1-undo {crossing}"),
            MoveSite::R2Undo { crossings: [p, q] } => write!(f, "R2-undo {p} {q}"),
        }
    }
}

fn inapplicable(site: &MoveSite, why: &str) -> Error {
    Error::InapplicableMove(format!("{site}: {why}"))
}

/// The face-side dart of an edge: the head when the region is on the left.
fn incidence_dart(emb: &Embedding, inc: Incidence) -> Option<usize> {
    let (tail, head) = emb.edge_darts(inc.edge)?;
    Some(match inc.side {
        Side::Left => head,
        Side::Right => tail,
    })
}

fn incidence_of(emb: &Embedding, x: usize) -> Incidence {
    let side = if emb.incoming[x] { Side::Left } else { Side::Right };
    Incidence { edge: emb.label[x], side }
}

/// Darts of the region containing `x`, in traversal order.
fn face_orbit(emb: &Embedding, x: usize) -> Vec<usize> {
    let mut out = vec![x];
    let mut y = ccw(emb.partner[x]);
    while y != x {
        out.push(y);
        y = ccw(emb.partner[y]);
    }
    out
}

fn kink_at(emb: &Embedding, k: usize) -> bool {
    (0..4).any(|s| emb.partner[dart(k, s)] == dart(k, (s + 1) % 4))
}

/// A two-dart region whose edges each join same-parity slots: one strand is
/// over at both crossings.
fn r2_bigon(emb: &Embedding, x: usize) -> Option<[usize; 2]> {
    let orbit = face_orbit(emb, x);
    if orbit.len() != 2 {
        return None;
    }
    let (p, q) = (crossing_of(orbit[0]), crossing_of(orbit[1]));
    let same_parity = orbit.iter().all(|&y| slot_of(y) % 2 == slot_of(emb.partner[y]) % 2);
    (p != q && same_parity).then(|| [p.min(q), p.max(q)])
}

/// A three-dart region on three distinct crossings with a side that is over
/// at both ends.
fn r3_triangle(emb: &Embedding, x: usize) -> bool {
    let orbit = face_orbit(emb, x);
    if orbit.len() != 3 {
        return false;
    }
    let ks: BTreeSet<usize> = orbit.iter().map(|&y| crossing_of(y)).collect();
    ks.len() == 3 && orbit.iter().any(|&y| slot_of(y) % 2 == 1 && slot_of(emb.partner[y]) % 2 == 1)
}

/// Every applicable site, in a fixed order: kinks on each edge and side,
/// then R2 pairs per region, R3 triangles, and finally undo sites.
pub fn move_sites(d: &Diagram) -> Result<Vec<MoveSite>> {
    require_valid(d)?;
    let mut out = Vec::new();
    for e in 1..=d.edge_count().max(1) as EdgeId {
        for side in [Side::Left, Side::Right] {
            out.push(MoveSite::R1Pos { edge: e, side });
            out.push(MoveSite::R1Neg { edge: e, side });
        }
    }
    if d.n() == 0 {
        return Ok(out);
    }
    let emb = Embedding::from_checked(d);
    let faces = faces_of_checked(d);
    for face in &faces.faces {
        for (i, &a) in face.iter().enumerate() {
            for (j, &b) in face.iter().enumerate() {
                if i != j && a.edge != b.edge {
                    out.push(MoveSite::R2 { over: a, under: b });
                }
            }
        }
    }
    let mut seen = vec![false; emb.partner.len()];
    let mut bigons = BTreeSet::new();
    for x in 0..emb.partner.len() {
        if seen[x] {
            continue;
        }
        let orbit = face_orbit(&emb, x);
        for &y in &orbit {
            seen[y] = true;
        }
        if r3_triangle(&emb, x) {
            let face = [0, 1, 2].map(|i| incidence_of(&emb, orbit[i]));
            out.push(MoveSite::R3 { face });
        }
        if let Some(pq) = r2_bigon(&emb, x) {
            bigons.insert(pq);
        }
    }
    for k in 0..d.n() {
        if kink_at(&emb, k) {
            out.push(MoveSite::R1Undo { crossing: k });
        }
    }
    out.extend(bigons.into_iter().map(|crossings| MoveSite::R2Undo { crossings }));
    Ok(out)
}

fn apply_r1(d: &Diagram, edge: EdgeId, side: Side, sign: i8, site: &MoveSite) -> Result<Diagram> {
    if edge == 0 || edge as usize > d.edge_count().max(1) {
        return Err(inapplicable(site, "no such edge"));
    }
    let mut emb = Embedding::from_checked(d);
    // Ports counterclockwise: the strand enters at 0, leaves at 2, loops
    // back into 1 (loop on the right) or 3 (on the left) and exits opposite.
    let (loop_in, exit) = match side {
        Side::Right => (1, 3),
        Side::Left => (3, 1),
    };
    let (enter, leave) = match emb.edge_darts(edge) {
        Some((tail, head)) => (PortEnd::Dart(tail), PortEnd::Dart(head)),
        None => (PortEnd::Port(exit), PortEnd::Port(0)),
    };
    let mut far = [PortEnd::Open; 4];
    far[0] = enter;
    far[2] = PortEnd::Port(loop_in);
    far[loop_in] = PortEnd::Port(2);
    far[exit] = leave;
    let mut incoming = [false; 4];
    incoming[0] = true;
    incoming[loop_in] = true;
    let parity = (0..2)
        .find(|&p| placed_sign(p, incoming) == Some(sign))
        .expect("one of the two parities gives each sign");
    emb.place_crossing(far, parity, incoming)?;
    emb.to_diagram()
}

fn apply_r2(d: &Diagram, over: Incidence, under: Incidence, site: &MoveSite) -> Result<Diagram> {
    if d.n() == 0 || over.edge == under.edge {
        return Err(inapplicable(site, "needs two distinct edges"));
    }
    let mut emb = Embedding::from_checked(d);
    let (x1, x2) = match (incidence_dart(&emb, over), incidence_dart(&emb, under)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(inapplicable(site, "no such edge")),
    };
    let (face, _) = emb.faces();
    if face[x1] != face[x2] {
        return Err(inapplicable(site, "edges do not share a region"));
    }
    let (t1, h1) = emb.edge_darts(over.edge).expect("edge exists");
    let (t2, h2) = emb.edge_darts(under.edge).expect("edge exists");
    // Picture the region with `under` along the bottom running west to east
    // (when the region is on its left) and `over` along the top. The finger
    // from the top dips across the bottom edge at Q (east) and back at P.
    let under_eastward = under.side == Side::Left;
    let over_westward = over.side == Side::Left;
    let (west2, east2) = if under_eastward { (t2, h2) } else { (h2, t2) };
    let (east1, west1) = if over_westward { (t1, h1) } else { (h1, t1) };
    // ports counterclockwise: east, north, west, south
    let p_in = [!under_eastward, !over_westward, under_eastward, over_westward];
    let q_in = [!under_eastward, over_westward, under_eastward, !over_westward];
    let p = emb.place_crossing(
        [PortEnd::Open, PortEnd::Dart(west1), PortEnd::Dart(west2), PortEnd::Open],
        0,
        p_in,
    )?;
    let q = emb.place_crossing(
        [PortEnd::Dart(east2), PortEnd::Dart(east1), PortEnd::Open, PortEnd::Open],
        0,
        q_in,
    )?;
    emb.link(p[0], q[2]);
    emb.link(p[3], q[3]);
    emb.to_diagram()
}

fn apply_r3(d: &Diagram, face: [Incidence; 3], site: &MoveSite) -> Result<Diagram> {
    if d.n() == 0 {
        return Err(inapplicable(site, "no crossings"));
    }
    let mut emb = Embedding::from_checked(d);
    let x = incidence_dart(&emb, face[0]).ok_or_else(|| inapplicable(site, "no such edge"))?;
    let orbit = face_orbit(&emb, x);
    let sides: Vec<Incidence> = orbit.iter().map(|&y| incidence_of(&emb, y)).collect();
    if orbit.len() != 3 || !face.iter().all(|i| sides.contains(i)) || !r3_triangle(&emb, x) {
        return Err(inapplicable(site, "not a triangle with a strand over both ends"));
    }
    let ks: Vec<usize> = orbit.iter().map(|&y| crossing_of(y)).collect();
    let inside: HashSet<usize> = ks.iter().flat_map(|&k| (0..4).map(move |s| dart(k, s))).collect();
    // Rotate the triangle's disc a half turn in the plane: each outer dart
    // takes over the outside attachment of the far end of its own strand.
    let line_end = |emb: &Embedding, o: usize| opposite(emb.partner[opposite(o)]);
    let sides_darts: HashSet<usize> = orbit.iter().flat_map(|&y| [y, emb.partner[y]]).collect();
    let mut outer: Vec<usize> = inside.difference(&sides_darts).copied().collect();
    outer.sort_unstable();
    if outer.len() != 6 {
        return Err(inapplicable(site, "triangle crossings are not distinct"));
    }
    let mut updates = Vec::new();
    for &o in &outer {
        let z = emb.partner[line_end(&emb, o)];
        let target = if outer.contains(&z) { line_end(&emb, z) } else { z };
        updates.push((o, target));
    }
    for (o, t) in updates {
        emb.partner[o] = t;
        emb.partner[t] = o;
    }
    for &k in &ks {
        emb.reverse_crossing(k);
    }
    emb.to_diagram()
}

/// Applies a move. The result is revalidated.
pub fn apply_move(d: &Diagram, site: &MoveSite) -> Result<Diagram> {
    require_valid(d)?;
    match site {
        MoveSite::R1Pos { edge, side } => apply_r1(d, *edge, *side, 1, site),
        MoveSite::R1Neg { edge, side } => apply_r1(d, *edge, *side, -1, site),
        MoveSite::R2 { over, under } => apply_r2(d, *over, *under, site),
        MoveSite::R3 { face } => apply_r3(d, *face, site),
        MoveSite::R1Undo { crossing } => {
            if *crossing >= d.n() {
                return Err(Error::CrossingOutOfRange { index: *crossing, n: d.n() });
            }
            let mut emb = Embedding::from_checked(d);
            if !kink_at(&emb, *crossing) {
                return Err(inapplicable(site, "crossing is not a kink"));
            }
            emb.splice_out(&[*crossing]);
            emb.to_diagram()
        }
        MoveSite::R2Undo { crossings: [p, q] } => {
            for &k in [p, q] {
                if k >= d.n() {
                    return Err(Error::CrossingOutOfRange { index: k, n: d.n() });
                }
            }
            let mut emb = Embedding::from_checked(d);
            let found = (0..4).any(|s| r2_bigon(&emb, dart(*p, s)) == Some([*p.min(q), *p.max(q)]));
            if !found {
                return Err(inapplicable(site, "crossings do not bound a removable bigon"));
            }
            emb.splice_out(&[*p, *q]);
            emb.to_diagram()
        }
    }
}

/// Applies a move and returns a site that undoes it.
pub fn apply_move_with_undo(d: &Diagram, site: &MoveSite) -> Result<(Diagram, MoveSite)> {
    let out = apply_move(d, site)?;
    let n = d.n();
    let undo = match site {
        MoveSite::R1Pos { .. } | MoveSite::R1Neg { .. } => MoveSite::R1Undo { crossing: n },
        MoveSite::R2 { .. } => MoveSite::R2Undo { crossings: [n, n + 1] },
        MoveSite::R3 { .. } => {
            let target = canonical_form(d)?;
            move_sites(&out)?
                .into_iter()
                .filter(|s| matches!(s, MoveSite::R3 { .. }))
                .find(|s| apply_move(&out, s).and_then(|b| canonical_form(&b)).is_ok_and(|c| c == target))
                .ok_or_else(|| Error::Internal("R3 has no inverse site".into()))?
        }
        MoveSite::R1Undo { .. } | MoveSite::R2Undo { .. } => {
            return Err(inapplicable(site, "undo sites have no recorded inverse"))
        }
    };
    Ok((out, undo))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FlypeSite {
    /// The crossing carried across the tangle.
    pub crossing: usize,
    pub tangle: BTreeSet<usize>,
    /// The four edges joining the tangle to the rest, in increasing order.
    pub boundary: [EdgeId; 4],
}

impl fmt::Display for FlypeSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.tangle.iter().map(|k| k.to_string()).collect();
        let [a, b, c, d] = self.boundary;
        write!(f, "crossing {} tangle {{{}}} boundary {a},{b},{c},{d}", self.crossing, t.join(","))
    }
}

/// Crossing-graph components after deleting the `cut` edges.
fn split(d: &Diagram, cut: &[EdgeId]) -> (Vec<usize>, usize) {
    let n = d.n();
    let mut uf = UnionFind::<usize>::new(n);
    let ends = crate::diagram::edge_ends(d);
    for (e, &(a, b)) in ends.iter().enumerate().skip(1) {
        if !cut.contains(&(e as EdgeId)) {
            uf.union(a, b);
        }
    }
    let labels = uf.into_labeling();
    let roots: BTreeSet<usize> = labels.iter().copied().collect();
    (labels, roots.len())
}

/// The two adjacent slots `j, j + 1` of `c` whose edges lead into the
/// tangle, if there are exactly two and they are adjacent.
fn tangle_slots(d: &Diagram, c: usize, tangle: &BTreeSet<usize>, boundary: &[EdgeId; 4]) -> Option<usize> {
    let emb_ends = crate::diagram::edge_ends(d);
    let x = d.crossings()[c].0;
    let into: Vec<bool> = x
        .iter()
        .map(|&e| {
            let (a, b) = emb_ends[e as usize];
            let other = if a == c { b } else { a };
            boundary.contains(&e) && tangle.contains(&other)
        })
        .collect();
    let on_cut = x.iter().filter(|e| boundary.contains(e)).count();
    if on_cut != 2 || into.iter().filter(|&&b| b).count() != 2 || x.iter().collect::<BTreeSet<_>>().len() != 4 {
        return None;
    }
    (0..4).find(|&j| into[j] && into[(j + 1) % 4])
}

fn check_site(d: &Diagram, site: &FlypeSite) -> Result<usize> {
    let bad = |why: &str| Error::InvalidFlypeSite(format!("{site}: {why}"));
    let n = d.n();
    if site.crossing >= n || site.tangle.iter().any(|&k| k >= n) {
        return Err(bad("crossing index out of range"));
    }
    if site.tangle.is_empty() || site.tangle.contains(&site.crossing) {
        return Err(bad("tangle must be nonempty and exclude the moved crossing"));
    }
    let distinct: BTreeSet<EdgeId> = site.boundary.iter().copied().collect();
    if distinct.len() != 4 || site.boundary.iter().any(|&e| e == 0 || e as usize > d.edge_count()) {
        return Err(bad("boundary must be four distinct edges"));
    }
    let ends = crate::diagram::edge_ends(d);
    for (e, &(a, b)) in ends.iter().enumerate().skip(1) {
        let crosses = site.tangle.contains(&a) != site.tangle.contains(&b);
        if crosses != site.boundary.contains(&(e as EdgeId)) {
            return Err(bad("boundary is not exactly the set of edges leaving the tangle"));
        }
    }
    let (labels, count) = split(d, &site.boundary);
    if count != 2 {
        return Err(bad("tangle or its complement is disconnected"));
    }
    let _ = labels;
    tangle_slots(d, site.crossing, &site.tangle, &site.boundary)
        .ok_or_else(|| bad("moved crossing does not meet the tangle in two adjacent edges"))
}

/// Every flype site, by exhaustive search over four-edge cuts. Sites come
/// out sorted.
pub fn find_flypes(d: &Diagram) -> Result<Vec<FlypeSite>> {
    require_valid(d)?;
    require_reduced(d)?;
    if !is_alternating(d)? {
        return Err(Error::NotAlternating);
    }
    let n = d.n();
    let m = d.edge_count() as EdgeId;
    let ends = crate::diagram::edge_ends(d);
    let mut out = BTreeSet::new();
    if n < 2 {
        return Ok(Vec::new());
    }
    for a in 1..=m {
        for b in a + 1..=m {
            for c in b + 1..=m {
                for e in c + 1..=m {
                    let boundary = [a, b, c, e];
                    let (labels, count) = split(d, &boundary);
                    if count != 2 {
                        continue;
                    }
                    // every cut edge must run between the two sides
                    if boundary.iter().any(|&x| {
                        let (p, q) = ends[x as usize];
                        labels[p] == labels[q]
                    }) {
                        continue;
                    }
                    let root = labels[0];
                    let side_a: BTreeSet<usize> = (0..n).filter(|&k| labels[k] == root).collect();
                    let side_b: BTreeSet<usize> = (0..n).filter(|&k| labels[k] != root).collect();
                    for (tangle, rest) in [(&side_a, &side_b), (&side_b, &side_a)] {
                        for &k in rest {
                            if tangle_slots(d, k, tangle, &boundary).is_some() {
                                out.insert(FlypeSite { crossing: k, tangle: tangle.clone(), boundary });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Carries the site's crossing to the far side of its tangle and turns the
/// tangle over.
pub fn apply_flype(d: &Diagram, site: &FlypeSite) -> Result<Diagram> {
    require_valid(d)?;
    let j = check_site(d, site)?;
    let c = site.crossing;
    let mut emb = Embedding::from_checked(d);
    let (face, _) = emb.faces();
    // Frame: the tangle lies east of `c`; slot j points south-east, j+1
    // north-east, j+2 north-west, j+3 south-west.
    let cd = |s: usize| dart(c, (j + s) % 4);
    let west: [usize; 2] = [emb.partner[cd(0)], emb.partner[cd(1)]];
    let tangle_ends: Vec<usize> = site
        .boundary
        .iter()
        .flat_map(|&e| {
            let (t, h) = emb.edge_darts(e).expect("boundary edge exists");
            [t, h]
        })
        .filter(|&x| site.tangle.contains(&crossing_of(x)) && !west.contains(&x))
        .collect();
    if tangle_ends.len() != 2 {
        return Err(Error::InvalidFlypeSite(format!("{site}: tangle does not have two far ends")));
    }
    let south = face[cd(0)];
    let north = face[cd(2)];
    let borders = |x: usize, f: usize| face[x] == f || face[emb.partner[x]] == f;
    let (east_n, east_s) = match tangle_ends.as_slice() {
        &[a, b] if borders(a, south) && !borders(a, north) && borders(b, north) && !borders(b, south) => (b, a),
        &[a, b] if borders(b, south) && !borders(b, north) && borders(a, north) && !borders(a, south) => (a, b),
        _ => return Err(Error::InvalidFlypeSite(format!("{site}: cannot orient the tangle ends"))),
    };
    let (far_n, far_s) = (emb.partner[east_n], emb.partner[east_s]);
    // the strand through slots j+1, j+3 keeps its over/under role
    let diagonal_over = (j + 1) % 2 == 1;
    let tangle: Vec<usize> = site.tangle.iter().copied().collect();
    emb.half_turn(&tangle);
    let (east_n, east_s) = (emb.partner[far_n], emb.partner[far_s]);
    // new crossing, ports counterclockwise: NE, NW, SW, SE; NE-SW is the
    // diagonal strand
    let far = [PortEnd::Dart(far_n), PortEnd::Dart(east_s), PortEnd::Dart(east_n), PortEnd::Dart(far_s)];
    let incoming = [!emb.incoming[far_n], !emb.incoming[east_s], !emb.incoming[east_n], !emb.incoming[far_s]];
    emb.place_crossing(far, if diagonal_over { 1 } else { 0 }, incoming)?;
    emb.splice_out(&[c]);
    emb.to_diagram()
}

/// All diagrams reachable by flypes, as canonical forms in discovery order.
pub fn flype_orbit(d: &Diagram, limit: usize) -> Result<Vec<Diagram>> {
    let start = canonical_form(d)?;
    let mut seen: HashSet<Diagram> = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for site in find_flypes(&cur)? {
            let next = canonical_form(&apply_flype(&cur, &site)?)?;
            if seen.insert(next.clone()) {
                if order.len() >= limit {
                    return Err(Error::OrbitLimit { limit, partial: order });
                }
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(order)
}
