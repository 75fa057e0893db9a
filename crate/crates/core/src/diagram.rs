//! Combinatorics of the underlying 4-valent planar graph: faces, the
//! checkerboard coloring, crossing signs, writhe, alternation, nugatory
//! crossings and connected-sum detection.

use std::collections::BTreeSet;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::codes::{require_valid, to_gauss, Diagram, EdgeId};
use crate::embedding::{crossing_of, dart, Embedding};
use crate::error::{Error, Result};

/// Which side of an edge, facing along the orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Incidence {
    pub edge: EdgeId,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSet {
    /// Each face as the cyclic sequence of edge sides along its boundary.
    pub faces: Vec<Vec<Incidence>>,
    #[serde(skip)]
    pub(crate) dart_face: Vec<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Index of the face on the given side of edge `e`.
    pub fn face_of(&self, inc: Incidence) -> Option<usize> {
        self.faces.iter().position(|f| f.contains(&inc))
    }

    /// Face at the corner between slots `s` and `s + 1` of crossing `k`.
    pub(crate) fn corner(&self, k: usize, s: usize) -> usize {
        self.dart_face[dart(k, (s + 1) % 4)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Self {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "white",
            Color::Black => "black",
        })
    }
}

impl std::str::FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "white" => Ok(Color::White),
            "black" => Ok(Color::Black),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown color '{s}'") }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub faces: FaceSet,
    pub colors: Vec<Color>,
}

impl Coloring {
    pub fn count(&self, c: Color) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }

    /// Color of the two kitty-corner regions swept when the over strand at
    /// crossing `k` turns counterclockwise (corners `b|c` and `d|a`).
    pub fn a_color(&self, k: usize) -> Color {
        self.colors[self.faces.corner(k, 1)]
    }
}

pub(crate) fn faces_of_checked(d: &Diagram) -> FaceSet {
    if d.n() == 0 {
        return FaceSet {
            faces: vec![
                vec![Incidence { edge: 1, side: Side::Left }],
                vec![Incidence { edge: 1, side: Side::Right }],
            ],
            dart_face: Vec::new(),
        };
    }
    let emb = Embedding::from_checked(d);
    let (dart_face, count) = emb.faces();
    let mut faces = vec![Vec::new(); count];
    // Walk each orbit in order so the boundary sequence is cyclic.
    let mut seen = vec![false; dart_face.len()];
    for start in 0..dart_face.len() {
        if seen[start] {
            continue;
        }
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            let side = if emb.incoming[x] { Side::Left } else { Side::Right };
            faces[dart_face[x]].push(Incidence { edge: emb.label[x], side });
            x = crate::embedding::ccw(emb.partner[x]);
        }
    }
    FaceSet { faces, dart_face }
}

/// Regions of the diagram, traced through the rotation system.
pub fn faces(d: &Diagram) -> Result<FaceSet> {
    require_valid(d)?;
    Ok(faces_of_checked(d))
}

/// The proper 2-coloring in which the region to the left of edge 1 is white.
pub fn checkerboard(d: &Diagram) -> Result<Coloring> {
    require_valid(d)?;
    let faces = faces_of_checked(d);
    if d.n() == 0 {
        return Ok(Coloring { faces, colors: vec![Color::White, Color::Black] });
    }
    let emb = Embedding::from_checked(d);
    let nf = faces.len();
    let mut adj = vec![Vec::new(); nf];
    for x in 0..emb.partner.len() {
        let (f, g) = (faces.dart_face[x], faces.dart_face[emb.partner[x]]);
        adj[f].push(g);
    }
    let (_, head) = emb.edge_darts(1).expect("edge 1 exists");
    let root = faces.dart_face[head];
    let mut colors: Vec<Option<Color>> = vec![None; nf];
    colors[root] = Some(Color::White);
    let mut stack = vec![root];
    while let Some(f) = stack.pop() {
        let c = colors[f].expect("colored before push");
        for &g in &adj[f] {
            match colors[g] {
                None => {
                    colors[g] = Some(c.other());
                    stack.push(g);
                }
                Some(cg) => debug_assert_ne!(cg, c, "planar 4-valent graphs are 2-colorable"),
            }
        }
    }
    Ok(Coloring { faces, colors: colors.into_iter().map(|c| c.expect("connected")).collect() })
}

/// `+1` when the over strand runs `d -> b`, `-1` when it runs `b -> d`.
pub fn crossing_sign(d: &Diagram, i: usize) -> Result<i8> {
    if i >= d.n() {
        return Err(Error::CrossingOutOfRange { index: i, n: d.n() });
    }
    require_valid(d)?;
    Ok(d.raw_sign(i).expect("validated"))
}

pub(crate) fn signs_of_checked(d: &Diagram) -> Vec<i8> {
    (0..d.n()).map(|i| d.raw_sign(i).expect("validated")).collect()
}

pub fn writhe(d: &Diagram) -> Result<i64> {
    require_valid(d)?;
    Ok(signs_of_checked(d).iter().map(|&s| s as i64).sum())
}

/// Over and under visits strictly alternate around the whole traversal.
pub fn is_alternating(d: &Diagram) -> Result<bool> {
    let g = to_gauss(d)?;
    let s = &g.symbols;
    Ok((0..s.len()).all(|i| s[i].over != s[(i + 1) % s.len()].over))
}

/// Alternation read off the coloring: every crossing sweeps the same color
/// when its over strand turns counterclockwise.
pub fn coloring_consistent(d: &Diagram) -> Result<bool> {
    let c = checkerboard(d)?;
    Ok((0..d.n()).all(|k| c.a_color(k) == c.a_color(0)))
}

/// Positions of each crossing's two visits in the Gauss sequence.
pub(crate) fn chord_positions(d: &Diagram) -> Result<Vec<(usize, usize)>> {
    let g = to_gauss(d)?;
    let mut pos = vec![(usize::MAX, usize::MAX); d.n()];
    for (p, s) in g.symbols.iter().enumerate() {
        let e = &mut pos[s.crossing];
        if e.0 == usize::MAX {
            e.0 = p;
        } else {
            e.1 = p;
        }
    }
    Ok(pos)
}

/// Crossings whose Gauss chord interleaves no other chord.
pub fn nugatory_crossings(d: &Diagram) -> Result<BTreeSet<usize>> {
    let pos = chord_positions(d)?;
    let inside = |x: usize, (p, q): (usize, usize)| p < x && x < q;
    Ok((0..d.n())
        .filter(|&i| {
            !(0..d.n()).any(|j| j != i && (inside(pos[j].0, pos[i]) != inside(pos[j].1, pos[i])))
        })
        .collect())
}

/// Crossings at which two kitty-corner corners belong to the same region.
pub fn nugatory_by_faces(d: &Diagram) -> Result<BTreeSet<usize>> {
    let f = faces(d)?;
    Ok((0..d.n())
        .filter(|&k| f.corner(k, 0) == f.corner(k, 2) || f.corner(k, 1) == f.corner(k, 3))
        .collect())
}

/// Removes one nugatory crossing: the smaller side of its chord is turned
/// over by a half turn and the crossing is spliced out.
fn remove_nugatory(d: &Diagram, i: usize, pos: &[(usize, usize)]) -> Result<Diagram> {
    let (p, q) = pos[i];
    let (mut inner, mut outer) = (Vec::new(), Vec::new());
    for (j, &(a, _)) in pos.iter().enumerate() {
        if j == i {
            continue;
        }
        if p < a && a < q {
            inner.push(j);
        } else {
            outer.push(j);
        }
    }
    let side = if outer.len() < inner.len() { outer } else { inner };
    let mut emb = Embedding::from_checked(d);
    emb.half_turn(&side);
    emb.splice_out(&[i]);
    emb.to_diagram()
}

/// Deletes nugatory crossings until none remain.
pub fn reduce(d: &Diagram) -> Result<Diagram> {
    require_valid(d)?;
    let mut cur = d.clone();
    loop {
        let nug = nugatory_crossings(&cur)?;
        let Some(&i) = nug.iter().next() else {
            return Ok(cur);
        };
        let pos = chord_positions(&cur)?;
        cur = remove_nugatory(&cur, i, &pos)?;
    }
}

pub fn is_reduced(d: &Diagram) -> Result<bool> {
    Ok(nugatory_crossings(d)?.is_empty())
}

pub(crate) fn require_reduced(d: &Diagram) -> Result<()> {
    let nug = nugatory_crossings(d)?;
    if nug.is_empty() {
        Ok(())
    } else {
        Err(Error::NotReduced(nug.into_iter().collect()))
    }
}

/// Crossing at each end of every edge, as `(tail, head)`, indexed by label.
pub(crate) fn edge_ends(d: &Diagram) -> Vec<(usize, usize)> {
    let emb = Embedding::from_checked(d);
    let mut ends = vec![(0, 0); d.edge_count() + 1];
    for e in 1..=d.edge_count() as EdgeId {
        let (t, h) = emb.edge_darts(e).expect("edge exists");
        ends[e as usize] = (crossing_of(t), crossing_of(h));
    }
    ends
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositeReport {
    pub composite: bool,
    pub cut: Option<(EdgeId, EdgeId)>,
}

/// Looks for two edges whose removal splits the crossings into two
/// nonempty groups. Requires a reduced diagram.
pub fn is_composite(d: &Diagram) -> Result<CompositeReport> {
    require_valid(d)?;
    require_reduced(d)?;
    let n = d.n();
    let ends = edge_ends(d);
    let m = d.edge_count() as EdgeId;
    for e1 in 1..=m {
        for e2 in e1 + 1..=m {
            let mut uf = UnionFind::<usize>::new(n);
            for e in 1..=m {
                if e != e1 && e != e2 {
                    let (a, b) = ends[e as usize];
                    uf.union(a, b);
                }
            }
            let root = uf.find(0);
            if (1..n).any(|k| uf.find(k) != root) {
                return Ok(CompositeReport { composite: true, cut: Some((e1, e2)) });
            }
        }
    }
    Ok(CompositeReport { composite: false, cut: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_pd;

    fn trefoil() -> Diagram {
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap()
    }

    fn figure_eight() -> Diagram {
        parse_pd("PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]").unwrap()
    }

    #[test]
    fn trefoil_faces() {
        let f = faces(&trefoil()).unwrap();
        let mut lens: Vec<usize> = f.faces.iter().map(Vec::len).collect();
        lens.sort();
        assert_eq!(lens, [2, 2, 2, 3, 3]);
        assert_eq!(f.faces.iter().map(Vec::len).sum::<usize>(), 12);
    }

    #[test]
    fn unknot_faces_and_coloring() {
        assert_eq!(faces(&Diagram::unknot()).unwrap().len(), 2);
        let c = checkerboard(&Diagram::unknot()).unwrap();
        assert_eq!((c.count(Color::White), c.count(Color::Black)), (1, 1));
    }

    #[test]
    fn coloring_splits() {
        let c = checkerboard(&trefoil()).unwrap();
        let mut split = [c.count(Color::White), c.count(Color::Black)];
        split.sort();
        assert_eq!(split, [2, 3]);
        let c = checkerboard(&figure_eight()).unwrap();
        assert_eq!((c.count(Color::White), c.count(Color::Black)), (3, 3));
    }

    #[test]
    fn edge_one_left_is_white() {
        for d in [trefoil(), figure_eight()] {
            let c = checkerboard(&d).unwrap();
            let f = c.faces.face_of(Incidence { edge: 1, side: Side::Left }).unwrap();
            assert_eq!(c.colors[f], Color::White);
        }
    }

    #[test]
    fn coloring_is_proper() {
        for d in [trefoil(), figure_eight()] {
            let c = checkerboard(&d).unwrap();
            for e in 1..=d.edge_count() as EdgeId {
                let l = c.faces.face_of(Incidence { edge: e, side: Side::Left }).unwrap();
                let r = c.faces.face_of(Incidence { edge: e, side: Side::Right }).unwrap();
                assert_ne!(c.colors[l], c.colors[r]);
            }
        }
    }

    #[test]
    fn signs_and_writhe() {
        let t = trefoil();
        assert_eq!(crossing_sign(&t, 0).unwrap(), -1);
        assert_eq!(crossing_sign(&t.mirror(), 0).unwrap(), 1);
        assert_eq!(t.mirror().crossings()[0].slots(), [1, 5, 2, 4]);
        assert_eq!(writhe(&t).unwrap(), -3);
        assert_eq!(writhe(&t.mirror()).unwrap(), 3);
        assert_eq!(writhe(&figure_eight()).unwrap(), 0);
        assert_eq!(writhe(&Diagram::unknot()).unwrap(), 0);
        assert!(matches!(crossing_sign(&t, 3), Err(Error::CrossingOutOfRange { index: 3, n: 3 })));
    }

    #[test]
    fn kink_signs() {
        assert_eq!(crossing_sign(&parse_pd("PD[X(1,1,2,2)]").unwrap(), 0).unwrap(), 1);
        assert_eq!(crossing_sign(&parse_pd("PD[X(1,2,2,1)]").unwrap(), 0).unwrap(), -1);
    }

    #[test]
    fn alternation() {
        assert!(is_alternating(&trefoil()).unwrap());
        assert!(is_alternating(&figure_eight()).unwrap());
        assert!(is_alternating(&Diagram::unknot()).unwrap());
        assert!(coloring_consistent(&trefoil()).unwrap());
    }

    #[test]
    fn nugatory_detection() {
        assert!(nugatory_crossings(&trefoil()).unwrap().is_empty());
        let kink = parse_pd("PD[X(1,1,2,2)]").unwrap();
        assert_eq!(nugatory_crossings(&kink).unwrap(), BTreeSet::from([0]));
        assert_eq!(nugatory_by_faces(&kink).unwrap(), BTreeSet::from([0]));
        assert!(nugatory_by_faces(&trefoil()).unwrap().is_empty());
    }

    #[test]
    fn reduce_kink_and_fixpoint() {
        let kink = parse_pd("PD[X(1,1,2,2)]").unwrap();
        assert_eq!(reduce(&kink).unwrap(), Diagram::unknot());
        assert_eq!(reduce(&trefoil()).unwrap(), trefoil());
    }

    #[test]
    fn trefoil_is_prime() {
        let r = is_composite(&trefoil()).unwrap();
        assert!(!r.composite);
        assert!(r.cut.is_none());
        let kink = parse_pd("PD[X(1,1,2,2)]").unwrap();
        assert!(matches!(is_composite(&kink), Err(Error::NotReduced(_))));
    }
}
