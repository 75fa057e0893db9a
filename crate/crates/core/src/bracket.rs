//! Kauffman bracket, Kauffman polynomial and Jones polynomial.
//!
//! Smoothing convention: at `X(a,b,c,d)` the `+1` (A) smoothing joins the
//! slot pairs `(a,b)` and `(c,d)`, the `-1` (B) smoothing joins `(a,d)` and
//! `(b,c)`. With the crossing-sign rule of [`crate::diagram`] a positive kink
//! contributes `-A^3`, which is what makes `(-A)^(-3w) <D>` invariant.
//!
//! Two evaluators are provided. [`bracket_naive`] sums all `2^n` states and is
//! the reference. [`bracket_fast`] absorbs crossings one at a time, keeping a
//! weight for every way the open boundary strands can be paired up, so its
//! cost is exponential only in the widest boundary met along the way.

use std::collections::HashMap;

use num_bigint::BigInt;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::codes::{require_valid, Diagram, EdgeId};
use crate::diagram::{is_alternating, require_reduced, writhe};
use crate::error::{Error, Result};
use crate::polynomial::LaurentPoly;

pub const DEFAULT_NAIVE_LIMIT: usize = 20;

/// A smoothing choice, `+1` or `-1`, for every crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State(pub Vec<i8>);

impl State {
    pub fn constant(n: usize, v: i8) -> Self {
        Self(vec![v; n])
    }

    /// Bit `i` of `bits` set means crossing `i` takes `+1`.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        Self((0..n).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect())
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|&s| s as i64).sum()
    }
}

/// Slot pairs joined by each smoothing.
const A_PAIRS: [(usize, usize); 2] = [(0, 1), (2, 3)];
const B_PAIRS: [(usize, usize); 2] = [(0, 3), (1, 2)];

fn pairs_for(s: i8) -> [(usize, usize); 2] {
    if s > 0 {
        A_PAIRS
    } else {
        B_PAIRS
    }
}

/// The two darts of each edge label.
fn edge_dart_pairs(d: &Diagram) -> Vec<(usize, usize)> {
    let mut first = vec![usize::MAX; d.edge_count() + 1];
    let mut out = Vec::with_capacity(d.edge_count());
    for (k, x) in d.crossings().iter().enumerate() {
        for s in 0..4 {
            let e = x.0[s] as usize;
            if first[e] == usize::MAX {
                first[e] = 4 * k + s;
            } else {
                out.push((first[e], 4 * k + s));
            }
        }
    }
    out
}

fn loops_checked(n: usize, edges: &[(usize, usize)], state: &State) -> usize {
    if n == 0 {
        return 1;
    }
    let mut uf = UnionFind::<usize>::new(4 * n);
    for &(x, y) in edges {
        uf.union(x, y);
    }
    for (k, &s) in state.0.iter().enumerate() {
        for (p, q) in pairs_for(s) {
            uf.union(4 * k + p, 4 * k + q);
        }
    }
    (0..4 * n).filter(|&x| uf.find(x) == x).count()
}

/// Number of closed curves after smoothing every crossing according to `s`.
pub fn state_loops(d: &Diagram, s: &State) -> Result<usize> {
    require_valid(d)?;
    if s.0.len() != d.n() {
        return Err(Error::StateLength { got: s.0.len(), n: d.n() });
    }
    Ok(loops_checked(d.n(), &edge_dart_pairs(d), s))
}

/// Assembles `sum count * A^a * d^(loops-1)` from a table keyed by `(a, loops)`.
fn assemble(counts: &HashMap<(i64, usize), u64>) -> LaurentPoly {
    let max_loops = counts.keys().map(|&(_, l)| l).max().unwrap_or(1);
    let d = LaurentPoly::loop_value();
    let mut powers = vec![LaurentPoly::one()];
    for i in 1..max_loops {
        let next = &powers[i - 1] * &d;
        powers.push(next);
    }
    let mut acc = LaurentPoly::zero();
    for (&(a, loops), &c) in counts {
        acc += &powers[loops - 1].scale(BigInt::from(c), a);
    }
    acc
}

/// State-sum evaluation over all `2^n` states, refusing diagrams larger than
/// [`DEFAULT_NAIVE_LIMIT`].
pub fn bracket_naive(d: &Diagram) -> Result<LaurentPoly> {
    bracket_naive_with_limit(d, DEFAULT_NAIVE_LIMIT)
}

pub fn bracket_naive_with_limit(d: &Diagram, limit: usize) -> Result<LaurentPoly> {
    require_valid(d)?;
    let n = d.n();
    if n > limit || n >= 64 {
        return Err(Error::NaiveLimit { n, limit });
    }
    let edges = edge_dart_pairs(d);
    let mut counts: HashMap<(i64, usize), u64> = HashMap::new();
    for bits in 0..1u64 << n {
        let s = State::from_bits(bits, n);
        let loops = loops_checked(n, &edges, &s);
        *counts.entry((s.sum(), loops)).or_default() += 1;
    }
    Ok(assemble(&counts))
}

/// A pairing of open boundary edges, stored as sorted `(lo, hi)` pairs.
type Pairing = Vec<(EdgeId, EdgeId)>;

/// Picks the next crossing: fewest open edges afterwards, ties to the lowest
/// index.
fn contraction_order(d: &Diagram) -> Vec<usize> {
    let n = d.n();
    let mut done = vec![false; n];
    let mut open = vec![false; d.edge_count() + 1];
    let mut open_count = 0usize;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for k in (0..n).filter(|&k| !done[k]) {
            let x = d.crossings()[k].0;
            let mut after = open_count as i64;
            for &e in &x {
                if x.iter().filter(|&&f| f == e).count() == 2 {
                    // loop edge: closes inside this crossing
                    continue;
                }
                after += if open[e as usize] { -1 } else { 1 };
            }
            let after = after as usize;
            if best.is_none_or(|(b, _)| after < b) {
                best = Some((after, k));
            }
        }
        let (after, k) = best.expect("unprocessed crossing remains");
        let x = d.crossings()[k].0;
        for &e in &x {
            if x.iter().filter(|&&f| f == e).count() == 1 {
                open[e as usize] = !open[e as usize];
            }
        }
        open_count = after;
        done[k] = true;
        order.push(k);
    }
    order
}

/// Absorbs one smoothed crossing into a boundary pairing. Returns the new
/// pairing and the number of loops closed.
fn absorb(pairing: &Pairing, slots: &[EdgeId; 4], smooth: [(usize, usize); 2], here: &[bool]) -> (Pairing, usize) {
    // Nodes are edge labels; every node has degree 2 except boundary ones.
    let mut nodes: Vec<EdgeId> = Vec::with_capacity(pairing.len() * 2 + 4);
    for &(a, b) in pairing {
        nodes.push(a);
        nodes.push(b);
    }
    nodes.extend_from_slice(slots);
    nodes.sort_unstable();
    nodes.dedup();
    let idx = |e: EdgeId| nodes.binary_search(&e).expect("node present");
    let mut uf = UnionFind::<usize>::new(nodes.len());
    for &(a, b) in pairing {
        uf.union(idx(a), idx(b));
    }
    for (p, q) in smooth {
        uf.union(idx(slots[p]), idx(slots[q]));
    }
    // Boundary after absorbing: previously open edges not ending here, and
    // edges of this crossing seen for the first time (once).
    let mut ends: HashMap<usize, Vec<EdgeId>> = HashMap::new();
    let mut roots = Vec::new();
    for &e in &nodes {
        let r = uf.find(idx(e));
        roots.push(r);
        let at_crossing = slots.iter().filter(|&&f| f == e).count();
        let boundary = if at_crossing == 0 { true } else { at_crossing == 1 && !here[idx(e)] };
        if boundary {
            ends.entry(r).or_default().push(e);
        }
    }
    roots.sort_unstable();
    roots.dedup();
    let mut next: Pairing = Vec::with_capacity(pairing.len() + 1);
    let mut closed = 0;
    for r in roots {
        match ends.get(&r).map(Vec::as_slice) {
            None => closed += 1,
            Some([a, b]) => next.push(if a < b { (*a, *b) } else { (*b, *a) }),
            Some(other) => unreachable!("component with {} boundary ends", other.len()),
        }
    }
    next.sort_unstable();
    (next, closed)
}

/// Planar contraction evaluator; agrees with [`bracket_naive`] everywhere.
pub fn bracket_fast(d: &Diagram) -> Result<LaurentPoly> {
    require_valid(d)?;
    let n = d.n();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let loop_value = LaurentPoly::loop_value();
    let mut open = vec![false; d.edge_count() + 1];
    let mut states: HashMap<Pairing, LaurentPoly> = HashMap::from([(Vec::new(), LaurentPoly::one())]);
    let order = contraction_order(d);
    for (step, &k) in order.iter().enumerate() {
        let slots = d.crossings()[k].0;
        let last = step + 1 == n;
        let mut next: HashMap<Pairing, LaurentPoly> = HashMap::new();
        for (pairing, w) in &states {
            // `here[i]` marks nodes that were already open before this step
            let mut nodes: Vec<EdgeId> = pairing.iter().flat_map(|&(a, b)| [a, b]).collect();
            nodes.extend_from_slice(&slots);
            nodes.sort_unstable();
            nodes.dedup();
            let here: Vec<bool> = nodes.iter().map(|&e| open[e as usize]).collect();
            for (sign, smooth) in [(1i64, A_PAIRS), (-1, B_PAIRS)] {
                let (p, closed) = absorb(pairing, &slots, smooth, &here);
                let loops = if last { closed - 1 } else { closed };
                let mut term = w.scale(1, sign);
                for _ in 0..loops {
                    term = &term * &loop_value;
                }
                *next.entry(p).or_default() += &term;
            }
        }
        for &e in &slots {
            if slots.iter().filter(|&&f| f == e).count() == 1 {
                open[e as usize] = !open[e as usize];
            }
        }
        states = next;
    }
    debug_assert_eq!(states.len(), 1);
    Ok(states.remove(&Vec::new()).unwrap_or_default())
}

/// `<D>` via the contraction evaluator.
pub fn bracket(d: &Diagram) -> Result<LaurentPoly> {
    bracket_fast(d)
}

/// `F(A) = (-A)^(-3w) <D>`, invariant under all three Reidemeister moves.
pub fn kauffman_poly(d: &Diagram) -> Result<LaurentPoly> {
    let w = writhe(d)?;
    let b = bracket_fast(d)?;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(b.scale(sign, -3 * w))
}

/// Jones polynomial in `t`, from `F` under `A = t^(-1/4)`.
pub fn jones(d: &Diagram) -> Result<LaurentPoly> {
    kauffman_poly(d)?.substitute_quarter()
}

/// `|V(-1)|`.
pub fn determinant(d: &Diagram) -> Result<BigInt> {
    let v = jones(d)?.eval_unit(-1).expect("-1 is a unit");
    Ok(if v.sign() == num_bigint::Sign::Minus { -v } else { v })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StateStats {
    pub s_plus_loops: usize,
    pub s_minus_loops: usize,
    pub n: usize,
}

/// Loop counts of the all-`+1` and all-`-1` states.
pub fn state_stats(d: &Diagram) -> Result<StateStats> {
    let n = d.n();
    Ok(StateStats {
        s_plus_loops: state_loops(d, &State::constant(n, 1))?,
        s_minus_loops: state_loops(d, &State::constant(n, -1))?,
        n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub span: i64,
    pub expected: i64,
    pub max_degree: i64,
    pub min_degree: i64,
    pub alternating: bool,
    /// For alternating diagrams: `M = n + 2|s+| - 2` and `m = -n - 2|s-| + 2`.
    /// `None` when the diagram is not alternating.
    pub extreme_degree_match: Option<bool>,
}

impl SpanReport {
    pub fn span_law_holds(&self) -> bool {
        self.span == self.expected
    }
}

/// Compares the bracket span with `4n`. Reduced diagrams only.
pub fn span_check(d: &Diagram) -> Result<SpanReport> {
    require_valid(d)?;
    require_reduced(d)?;
    let n = d.n() as i64;
    let deg = bracket_fast(d)?.degrees()?;
    let alternating = is_alternating(d)?;
    let extreme_degree_match = if alternating {
        let st = state_stats(d)?;
        let (sp, sm) = (st.s_plus_loops as i64, st.s_minus_loops as i64);
        Some(deg.max == n + 2 * sp - 2 && deg.min == -n - 2 * sm + 2)
    } else {
        None
    };
    Ok(SpanReport {
        span: deg.span,
        expected: 4 * n,
        max_degree: deg.max,
        min_degree: deg.min,
        alternating,
        extreme_degree_match,
    })
}
