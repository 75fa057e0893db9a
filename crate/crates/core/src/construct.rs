//! Diagram constructions: braid closures, 4-plats of rational knots,
//! connected sums and twist chains.
//!
//! Braids are drawn top to bottom. Generator `i` (1-based) crosses the
//! strands in positions `i` and `i + 1`; a positive exponent gives a
//! positive crossing when both strands run downward.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::codes::Diagram;
use crate::embedding::{dart, Embedding};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Port(usize),
    Terminal(usize),
}

/// A braid diagram with its top and bottom ends still open.
struct BraidPicture {
    strands: usize,
    over_parity: Vec<usize>,
    /// Links between ends; terminals `0..strands` are the top ends and
    /// `strands..2*strands` the bottom ones.
    links: Vec<(End, End)>,
}

impl BraidPicture {
    fn new(strands: usize, word: &[i32]) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Construction("a braid needs at least one strand".into()));
        }
        let mut open: Vec<End> = (0..strands).map(End::Terminal).collect();
        let mut links = Vec::new();
        let mut over_parity = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(Error::Construction(format!("generator {g} out of range for {strands} strands")));
            }
            let k = over_parity.len();
            // ports counterclockwise: top-right, top-left, bottom-left,
            // bottom-right
            links.push((open[i - 1], End::Port(dart(k, 1))));
            links.push((open[i], End::Port(dart(k, 0))));
            open[i - 1] = End::Port(dart(k, 2));
            open[i] = End::Port(dart(k, 3));
            // downward strands enter at the top: over = top-left to
            // bottom-right (ports 1, 3) is a negative crossing
            over_parity.push(if g > 0 { 0 } else { 1 });
        }
        for (p, end) in open.into_iter().enumerate() {
            links.push((end, End::Terminal(strands + p)));
        }
        Ok(Self { strands, over_parity, links })
    }

    /// Joins terminals pairwise and resolves every chain of terminal links
    /// into a direct port-to-port pairing.
    fn close(mut self, closure: &[(usize, usize)]) -> Result<Diagram> {
        for &(a, b) in closure {
            self.links.push((End::Terminal(a), End::Terminal(b)));
        }
        let ports = 4 * self.over_parity.len();
        let terminals = 2 * self.strands;
        // node ids: ports then terminals
        let id = |e: End| match e {
            End::Port(x) => x,
            End::Terminal(t) => ports + t,
        };
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); ports + terminals];
        for &(a, b) in &self.links {
            adj[id(a)].push(id(b));
            adj[id(b)].push(id(a));
        }
        if adj[ports..].iter().any(|v| v.len() != 2) || adj[..ports].iter().any(|v| v.len() != 1) {
            return Err(Error::Construction("closure does not pair every end".into()));
        }
        let mut partner = vec![usize::MAX; ports];
        for x in 0..ports {
            let (mut prev, mut cur) = (x, adj[x][0]);
            while cur >= ports {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            partner[x] = cur;
        }
        let free_loop = (ports..ports + terminals).any(|t| {
            // a terminal chain that never reaches a port is a separate circle
            let (mut prev, mut cur) = (t, adj[t][0]);
            let mut steps = 0;
            while cur >= ports && cur != t {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
                steps += 1;
                if steps > terminals {
                    break;
                }
            }
            cur == t
        });
        if free_loop && ports > 0 {
            return Err(Error::Construction("closure has more than one component".into()));
        }
        if ports == 0 {
            return if free_loop && terminals == 2 {
                Ok(Diagram::unknot())
            } else {
                Err(Error::Construction("empty braid closes to a trivial link".into()))
            };
        }
        Embedding::from_ports(&partner, &self.over_parity)?.to_diagram()
    }
}

/// Closure of a braid word: the bottom of each position is joined to its top.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram> {
    let pic = BraidPicture::new(strands, word)?;
    let closure: Vec<(usize, usize)> = (0..strands).map(|p| (p, strands + p)).collect();
    pic.close(&closure)
}

/// Plat closure of a braid on an even number of strands: neighbouring
/// positions are capped off in pairs at the top and at the bottom.
pub fn plat_closure(strands: usize, word: &[i32]) -> Result<Diagram> {
    if strands % 2 != 0 {
        return Err(Error::Construction("plat closure needs an even number of strands".into()));
    }
    let pic = BraidPicture::new(strands, word)?;
    let closure: Vec<(usize, usize)> =
        (0..strands / 2).flat_map(|i| [(2 * i, 2 * i + 1), (strands + 2 * i, strands + 2 * i + 1)]).collect();
    pic.close(&closure)
}

/// Numerator of `a1 + 1/(a2 + 1/(... + 1/an))`. For a rational knot this is
/// its determinant.
pub fn continuant(terms: &[u32]) -> BigInt {
    let (mut p, mut prev) = (BigInt::one(), BigInt::zero());
    for &a in terms.iter().rev() {
        let next = BigInt::from(a) * &p + &prev;
        prev = p;
        p = next;
    }
    p
}

/// Alternating 4-plat of the rational knot with Conway notation `terms`:
/// the plat closure of `s2^a1 s1^-a2 s2^a3 ...`. An even-length notation is
/// first rewritten as `[.., an - 1, 1]`.
pub fn rational(terms: &[u32]) -> Result<Diagram> {
    if terms.is_empty() || terms.contains(&0) {
        return Err(Error::Construction("Conway notation needs positive terms".into()));
    }
    let mut t = terms.to_vec();
    if t.len() % 2 == 0 {
        let last = t.pop().expect("nonempty");
        if last > 1 {
            t.push(last - 1);
            t.push(1);
        } else {
            // [.., a, 1] is [.., a + 1]
            let a = t.pop().expect("even length has two terms");
            t.push(a + 1);
        }
    }
    let mut word = Vec::new();
    for (i, &a) in t.iter().enumerate() {
        let g = if i % 2 == 0 { 2 } else { -1 };
        word.extend(std::iter::repeat_n(g, a as usize));
    }
    plat_closure(4, &word)
}

/// A chain of `regions` two-crossing twist regions, the rational knot
/// `[2 2 ... 2]`. Closes to a knot when `regions` is even.
pub fn twist_chain(regions: usize) -> Result<Diagram> {
    rational(&vec![2; regions])
}

/// Connected sum, cutting edge 1 of each summand.
pub fn connected_sum(a: &Diagram, b: &Diagram) -> Result<Diagram> {
    if a.n() == 0 {
        return Ok(b.clone());
    }
    if b.n() == 0 {
        return Ok(a.clone());
    }
    let ea = Embedding::from_checked(a);
    let eb = Embedding::from_checked(b);
    let off = ea.partner.len();
    let mut emb = ea.clone();
    emb.partner.extend(eb.partner.iter().map(|&p| p + off));
    emb.incoming.extend_from_slice(&eb.incoming);
    emb.alive.extend_from_slice(&eb.alive);
    emb.label.extend(eb.label.iter().map(|&l| l + a.edge_count() as u32));
    let (ta, ha) = ea.edge_darts(1).expect("edge 1");
    let (tb, hb) = eb.edge_darts(1).expect("edge 1");
    emb.link(ta, hb + off);
    emb.link(tb + off, ha);
    emb.to_diagram()
}
