//! Dart-level view of a diagram. Dart `4k + s` is slot `s` of crossing `k`;
//! `partner` pairs the two ends of each edge and slot order is the
//! counterclockwise rotation system. Slot 0 is always the incoming under end.
//!
//! Rewrites (nugatory removal, Reidemeister moves, flypes) mutate an
//! embedding and then call [`Embedding::to_diagram`], which relabels edges
//! along the traversal and revalidates.

use crate::codes::{validate, Crossing, Diagram, EdgeId};
use crate::error::{Error, Result};

pub(crate) const NONE: usize = usize::MAX;

#[inline]
pub(crate) fn dart(k: usize, s: usize) -> usize {
    4 * k + s
}

#[inline]
pub(crate) fn crossing_of(x: usize) -> usize {
    x / 4
}

#[inline]
pub(crate) fn slot_of(x: usize) -> usize {
    x % 4
}

/// Dart on the same strand through the crossing.
#[inline]
pub(crate) fn opposite(x: usize) -> usize {
    4 * (x / 4) + (x % 4 + 2) % 4
}

/// Next dart counterclockwise around the crossing.
#[inline]
pub(crate) fn ccw(x: usize) -> usize {
    4 * (x / 4) + (x % 4 + 1) % 4
}

#[derive(Clone, Debug)]
pub(crate) struct Embedding {
    pub partner: Vec<usize>,
    pub incoming: Vec<bool>,
    pub alive: Vec<bool>,
    /// Edge label per dart, valid only for embeddings built from a diagram
    /// and not yet rewritten.
    pub label: Vec<EdgeId>,
}

impl Embedding {
    /// Builds the embedding of a diagram that passed the label, succession
    /// and direction checks of `validate` (face count not required).
    pub fn from_checked(d: &Diagram) -> Self {
        let n = d.n();
        let mut partner = vec![NONE; 4 * n];
        let mut incoming = vec![false; 4 * n];
        let mut label = vec![0; 4 * n];
        let mut first = vec![NONE; 2 * n + 1];
        for (k, x) in d.crossings().iter().enumerate() {
            let over_in = d.over_in_slot(k).expect("checked diagram");
            for s in 0..4 {
                let e = x.0[s] as usize;
                let dx = dart(k, s);
                label[dx] = e as EdgeId;
                incoming[dx] = s == 0 || s == over_in;
                if first[e] == NONE {
                    first[e] = dx;
                } else {
                    partner[dx] = first[e];
                    partner[first[e]] = dx;
                }
            }
        }
        Self { partner, incoming, alive: vec![true; n], label }
    }

    /// Builds an embedding from crossings given as four ports in
    /// counterclockwise order (`port_partner` pairs port `4k + i` with
    /// another port) and the parity of each crossing's over pair. Strand
    /// directions come from one traversal, which must visit every port.
    pub fn from_ports(port_partner: &[usize], over_parity: &[usize]) -> Result<Self> {
        let total = port_partner.len();
        let mut incoming = vec![false; total];
        let mut seen = vec![false; total];
        if total > 0 {
            let mut x = 0;
            loop {
                seen[x] = true;
                incoming[x] = true;
                let out = opposite(x);
                seen[out] = true;
                x = port_partner[out];
                if x == 0 {
                    break;
                }
                if seen[x] {
                    return Err(Error::Internal("strand traversal revisits a port".into()));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Construction("closure has more than one component".into()));
        }
        // re-root every crossing at its incoming under port
        let mut perm = vec![NONE; total];
        for (k, &p) in over_parity.iter().enumerate() {
            let under = 1 - p;
            let u = (0..4).find(|&i| i % 2 == under && incoming[dart(k, i)]).expect("one end is incoming");
            for i in 0..4 {
                perm[dart(k, i)] = dart(k, (i + 4 - u) % 4);
            }
        }
        let mut emb = Self {
            partner: port_partner.to_vec(),
            incoming,
            alive: vec![true; over_parity.len()],
            label: vec![0; total],
        };
        emb.permute(&perm);
        Ok(emb)
    }

    /// Face index per dart and the number of faces. The face of dart `x`
    /// runs along `x`'s edge away from `x` and turns to the next
    /// counterclockwise slot, so it lies to the right of the edge when `x` is
    /// the tail. A 0-crossing diagram has no darts and two faces.
    pub fn faces(&self) -> (Vec<usize>, usize) {
        let total = self.partner.len();
        let mut face = vec![NONE; total];
        let mut count = 0;
        for start in 0..total {
            if face[start] != NONE || !self.alive[crossing_of(start)] {
                continue;
            }
            let mut x = start;
            while face[x] == NONE {
                face[x] = count;
                x = ccw(self.partner[x]);
            }
            count += 1;
        }
        if total == 0 {
            count = 2;
        }
        (face, count)
    }

    pub fn face_count(&self) -> usize {
        self.faces().1
    }

    /// Darts of edge `e` as `(tail, head)`.
    pub fn edge_darts(&self, e: EdgeId) -> Option<(usize, usize)> {
        let x = self.label.iter().position(|&l| l == e)?;
        let y = self.partner[x];
        Some(if self.incoming[x] { (y, x) } else { (x, y) })
    }

    pub fn over_in_slot(&self, k: usize) -> usize {
        if self.incoming[dart(k, 1)] {
            1
        } else {
            3
        }
    }

    pub fn add_crossing(&mut self) -> usize {
        let k = self.alive.len();
        self.alive.push(true);
        self.partner.extend([NONE; 4]);
        self.incoming.extend([false; 4]);
        self.label.extend([0; 4]);
        k
    }

    pub fn link(&mut self, x: usize, y: usize) {
        self.partner[x] = y;
        self.partner[y] = x;
    }

    /// Applies a dart permutation (`perm[old] = new`) that only moves darts
    /// within crossings.
    fn permute(&mut self, perm: &[usize]) {
        let total = self.partner.len();
        let mut partner = vec![NONE; total];
        let mut incoming = vec![false; total];
        let mut label = vec![0; total];
        for x in 0..total {
            let p = self.partner[x];
            partner[perm[x]] = if p == NONE { NONE } else { perm[p] };
            incoming[perm[x]] = self.incoming[x];
            label[perm[x]] = self.label[x];
        }
        self.partner = partner;
        self.incoming = incoming;
        self.label = label;
    }

    /// Rotates the given crossings by a half turn about an axis in the
    /// projection plane: the rotation system reverses and over/under swap,
    /// so the old incoming over end becomes slot 0. Signs and strand
    /// directions are preserved.
    pub fn half_turn(&mut self, crossings: &[usize]) {
        let mut perm: Vec<usize> = (0..self.partner.len()).collect();
        for &k in crossings {
            let o = self.over_in_slot(k);
            for s in 0..4 {
                perm[dart(k, s)] = dart(k, (o + 4 - s) % 4);
            }
        }
        self.permute(&perm);
    }

    /// Reverses the direction of both strands at crossing `k`.
    pub fn reverse_crossing(&mut self, k: usize) {
        let mut perm: Vec<usize> = (0..self.partner.len()).collect();
        for s in 0..4 {
            perm[dart(k, s)] = dart(k, (s + 2) % 4);
        }
        for s in 0..4 {
            let x = dart(k, s);
            self.incoming[x] = !self.incoming[x];
        }
        self.permute(&perm);
    }

    /// Deletes crossings, letting each strand pass straight through
    /// (slot `s` joins slot `s + 2`).
    pub fn splice_out(&mut self, removed: &[usize]) {
        let mut gone = vec![false; self.alive.len()];
        for &k in removed {
            gone[k] = true;
        }
        let total = self.partner.len();
        let mut updates = Vec::new();
        for x in 0..total {
            let k = crossing_of(x);
            if gone[k] || !self.alive[k] {
                continue;
            }
            let mut y = self.partner[x];
            let mut steps = 0;
            while gone[crossing_of(y)] {
                y = self.partner[opposite(y)];
                steps += 1;
                debug_assert!(steps <= total, "strand closes inside removed set");
            }
            if y != self.partner[x] {
                updates.push((x, y));
            }
        }
        for (x, y) in updates {
            self.partner[x] = y;
        }
        for k in removed {
            self.alive[*k] = false;
        }
    }

    /// Sets up a fresh crossing from four ports listed counterclockwise.
    /// `far[i]` is the dart the port connects to (`Port(j)` links two ports
    /// of the new crossing, `Open` leaves it for the caller). `under_parity`
    /// picks the under pair (`{0,2}` or `{1,3}`) and `incoming` gives each
    /// port's direction. Returns the dart of each port.
    pub fn place_crossing(&mut self, far: [PortEnd; 4], under_parity: usize, incoming: [bool; 4]) -> Result<[usize; 4]> {
        let u = (0..4)
            .find(|&i| i % 2 == under_parity && incoming[i])
            .ok_or_else(|| Error::Internal("no incoming under port".into()))?;
        let k = self.add_crossing();
        // port i lands in slot (i - u) mod 4
        let port = |i: usize| dart(k, (i + 4 - u) % 4);
        for i in 0..4 {
            self.incoming[port(i)] = incoming[i];
            match far[i] {
                PortEnd::Dart(y) => self.link(port(i), y),
                PortEnd::Port(j) => self.link(port(i), port(j)),
                PortEnd::Open => {}
            }
        }
        Ok([0, 1, 2, 3].map(port))
    }

    /// Relabels edges along the traversal and returns the validated diagram.
    pub fn to_diagram(&self) -> Result<Diagram> {
        let live: Vec<usize> = (0..self.alive.len()).filter(|&k| self.alive[k]).collect();
        if live.is_empty() {
            return Ok(Diagram::unknot());
        }
        let mut index = vec![NONE; self.alive.len()];
        for (i, &k) in live.iter().enumerate() {
            index[k] = i;
        }
        let mut label = vec![0 as EdgeId; self.partner.len()];
        let start = dart(live[0], 0);
        let mut x = start;
        let mut e: EdgeId = 1;
        loop {
            let tail = self.partner[x];
            if tail == NONE || !self.incoming[x] || self.incoming[tail] {
                return Err(Error::Internal("inconsistent edge direction".into()));
            }
            if label[x] != 0 {
                return Err(Error::Internal("traversal revisits an edge".into()));
            }
            label[x] = e;
            label[tail] = e;
            let out = opposite(x);
            let next = self.partner[out];
            if next == start {
                break;
            }
            e += 1;
            x = next;
        }
        if e as usize != 2 * live.len() {
            return Err(Error::Internal(format!(
                "traversal covers {e} of {} edges (more than one component)",
                2 * live.len()
            )));
        }
        let crossings = live
            .iter()
            .map(|&k| Crossing([0, 1, 2, 3].map(|s| label[dart(k, s)])))
            .collect();
        let d = Diagram::new(crossings);
        let report = validate(&d);
        if !report.is_empty() {
            return Err(Error::Internal(format!("{d}: {report}")));
        }
        Ok(d)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum PortEnd {
    Dart(usize),
    Port(usize),
    Open,
}

/// Sign a crossing placed by [`Embedding::place_crossing`] will get: `+1`
/// when the incoming over port sits in slot 3.
pub(crate) fn placed_sign(under_parity: usize, incoming: [bool; 4]) -> Option<i8> {
    let u = (0..4).find(|&i| i % 2 == under_parity && incoming[i])?;
    let o = (0..4).find(|&i| i % 2 != under_parity && incoming[i])?;
    Some(if (o + 4 - u) % 4 == 3 { 1 } else { -1 })
}
