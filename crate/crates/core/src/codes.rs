//! Planar-diagram (PD) codes: parsing, emission, validation, signed Gauss
//! codes and a relabeling-invariant canonical form.
//!
//! A crossing is written `X(a,b,c,d)`: the four incident edge ends listed
//! counterclockwise starting from the incoming under-edge `a`. The under
//! strand runs `a -> c`, so `c = a + 1` (mod `2n`, labels `1..=2n`), and the
//! over strand runs either `d -> b` or `b -> d`, whichever direction respects
//! the same succession rule.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::embedding::Embedding;
use crate::error::{Error, Result};

pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing(pub [EdgeId; 4]);

impl Crossing {
    pub fn new(a: EdgeId, b: EdgeId, c: EdgeId, d: EdgeId) -> Self {
        Self([a, b, c, d])
    }

    pub fn slots(&self) -> [EdgeId; 4] {
        self.0
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "X({a},{b},{c},{d})")
    }
}

/// An oriented one-component knot diagram in PD form. Construction does not
/// validate; call [`validate`] before relying on the invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    crossings: Vec<Crossing>,
}

impl Diagram {
    pub fn new(crossings: Vec<Crossing>) -> Self {
        Self { crossings }
    }

    /// The 0-crossing diagram.
    pub fn unknot() -> Self {
        Self::default()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.n()
    }

    /// The edge following `e` along the orientation.
    pub fn succ(&self, e: EdgeId) -> EdgeId {
        e % self.edge_count() as EdgeId + 1
    }

    /// Reflection of the projection plane: each `(a,b,c,d)` becomes
    /// `(a,d,c,b)`, which flips every crossing sign.
    pub fn mirror(&self) -> Self {
        Self::new(self.crossings.iter().map(|x| {
            let [a, b, c, d] = x.0;
            Crossing([a, d, c, b])
        }).collect())
    }

    /// Slot (1 or 3) holding the incoming over-edge at crossing `i`, or
    /// `None` when the labels do not determine it.
    pub(crate) fn over_in_slot(&self, i: usize) -> Option<usize> {
        let [a, b, c, d] = self.crossings[i].0;
        if self.n() == 1 {
            // Both over slots differ by one from each other mod 2, so use the
            // under strand: edge `a` ends here, edge `c` starts here.
            return if b == a && d == c {
                Some(3)
            } else if b == c && d == a {
                Some(1)
            } else {
                None
            };
        }
        match (b == self.succ(d), d == self.succ(b)) {
            (true, false) => Some(3),
            (false, true) => Some(1),
            _ => None,
        }
    }

    /// `+1` when the over strand runs `d -> b`, `-1` when it runs `b -> d`.
    pub(crate) fn raw_sign(&self, i: usize) -> Option<i8> {
        self.over_in_slot(i).map(|s| if s == 3 { 1 } else { -1 })
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PD[")?;
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// Serialized as its PD text.
impl serde::Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(self.err(format!("expected '{tok}'")))
        }
    }

    fn int(&mut self) -> Result<EdgeId> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a positive integer label"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<EdgeId>() {
            Ok(0) => Err(Error::Parse { pos: start, msg: "labels start at 1".into() }),
            Ok(v) => Ok(v),
            Err(_) => Err(Error::Parse { pos: start, msg: format!("label '{text}' out of range") }),
        }
    }
}

/// Parses `PD[X(a,b,c,d),...]`. Whitespace between tokens is ignored. The
/// result is not validated.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    lx.expect("PD[")?;
    let mut crossings = Vec::new();
    if lx.peek() == Some(b']') {
        lx.pos += 1;
    } else {
        loop {
            lx.expect("X(")?;
            let mut slots = Vec::with_capacity(4);
            slots.push(lx.int()?);
            loop {
                match lx.peek() {
                    Some(b',') => {
                        lx.pos += 1;
                        slots.push(lx.int()?);
                    }
                    Some(b')') => {
                        lx.pos += 1;
                        break;
                    }
                    _ => return Err(lx.err("expected ',' or ')'")),
                }
            }
            if slots.len() != 4 {
                return Err(lx.err(format!("crossing has {} labels, expected 4", slots.len())));
            }
            crossings.push(Crossing([slots[0], slots[1], slots[2], slots[3]]));
            match lx.peek() {
                Some(b',') => lx.pos += 1,
                Some(b']') => {
                    lx.pos += 1;
                    break;
                }
                _ => return Err(lx.err("expected ',' or ']'")),
            }
        }
    }
    if lx.peek().is_some() {
        return Err(lx.err("trailing input"));
    }
    Ok(Diagram::new(crossings))
}

pub fn emit_pd(d: &Diagram) -> String {
    d.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    LabelOutOfRange { crossing: usize, label: EdgeId },
    EdgeMultiplicity { edge: EdgeId, count: usize },
    BrokenSuccession { crossing: usize },
    AmbiguousOver { crossing: usize },
    EdgeDirection { edge: EdgeId },
    FaceCount { found: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LabelOutOfRange { crossing, label } => {
                write!(f, "crossing {crossing}: label {label} outside 1..2n")
            }
            Self::EdgeMultiplicity { edge, count } => {
                write!(f, "edge {edge} appears {count} times, expected 2")
            }
            Self::BrokenSuccession { crossing } => {
                write!(f, "crossing {crossing}: under strand does not run a -> a+1")
            }
            Self::AmbiguousOver { crossing } => {
                write!(f, "crossing {crossing}: over-strand direction is ambiguous")
            }
            Self::EdgeDirection { edge } => {
                write!(f, "edge {edge} lacks exactly one incoming and one outgoing end")
            }
            Self::FaceCount { found, expected } => {
                write!(f, "face tracing gives {found} faces, expected {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidDiagram(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every structural invariant of a knot diagram. An empty report
/// means `d` is a valid connected one-component diagram on the sphere.
pub fn validate(d: &Diagram) -> ValidationReport {
    let mut violations = Vec::new();
    let n = d.n();
    if n == 0 {
        return ValidationReport { violations };
    }
    let m = 2 * n as EdgeId;
    let mut count = vec![0usize; 2 * n + 1];
    for (i, x) in d.crossings().iter().enumerate() {
        for &e in &x.0 {
            if e == 0 || e > m {
                violations.push(Violation::LabelOutOfRange { crossing: i, label: e });
            } else {
                count[e as usize] += 1;
            }
        }
    }
    for e in 1..=m {
        if count[e as usize] != 2 {
            violations.push(Violation::EdgeMultiplicity { edge: e, count: count[e as usize] });
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    for (i, x) in d.crossings().iter().enumerate() {
        if x.0[2] != d.succ(x.0[0]) {
            violations.push(Violation::BrokenSuccession { crossing: i });
        }
        if d.over_in_slot(i).is_none() {
            violations.push(Violation::AmbiguousOver { crossing: i });
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    // Every edge needs one head (incoming end) and one tail.
    let mut heads = vec![0usize; 2 * n + 1];
    for i in 0..n {
        let x = d.crossings()[i].0;
        heads[x[0] as usize] += 1;
        heads[x[d.over_in_slot(i).expect("checked above")] as usize] += 1;
    }
    for e in 1..=m {
        if heads[e as usize] != 1 {
            violations.push(Violation::EdgeDirection { edge: e });
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    let found = Embedding::from_checked(d).face_count();
    if found != n + 2 {
        violations.push(Violation::FaceCount { found, expected: n + 2 });
    }
    ValidationReport { violations }
}

pub(crate) fn require_valid(d: &Diagram) -> Result<()> {
    validate(d).into_result()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussSymbol {
    /// 0-based crossing index; rendered 1-based.
    pub crossing: usize,
    pub over: bool,
    pub sign: i8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedGaussCode {
    pub symbols: Vec<GaussSymbol>,
}

impl fmt::Display for SignedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let flag = if s.over { 'O' } else { 'U' };
            let sign = if s.sign > 0 { '+' } else { '-' };
            write!(f, "{flag}{}{sign}", s.crossing + 1)?;
        }
        Ok(())
    }
}

impl FromStr for SignedGaussCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut offset = 0;
        for tok in s.split(',') {
            let t = tok.trim();
            let at = offset;
            let bad = |msg: &str| Error::Parse { pos: at, msg: format!("{msg} in '{t}'") };
            offset += tok.len() + 1;
            if t.is_empty() {
                if s.trim().is_empty() {
                    break;
                }
                return Err(bad("empty token"));
            }
            let over = match t.as_bytes()[0] {
                b'O' => true,
                b'U' => false,
                _ => return Err(bad("expected 'O' or 'U'")),
            };
            let sign = match t.as_bytes()[t.len() - 1] {
                b'+' => 1,
                b'-' => -1,
                _ => return Err(bad("expected trailing sign")),
            };
            let k: usize = t[1..t.len() - 1].parse().map_err(|_| bad("bad crossing number"))?;
            if k == 0 {
                return Err(bad("crossing numbers start at 1"));
            }
            symbols.push(GaussSymbol { crossing: k - 1, over, sign });
        }
        Ok(Self { symbols })
    }
}

/// Crossing visits in edge order: symbol `e` is the crossing that edge `e`
/// runs into, flagged under when it arrives in slot `a`.
pub fn to_gauss(d: &Diagram) -> Result<SignedGaussCode> {
    require_valid(d)?;
    let n = d.n();
    let mut symbols = vec![GaussSymbol { crossing: 0, over: false, sign: 0 }; 2 * n];
    for i in 0..n {
        let x = d.crossings()[i].0;
        let sign = d.raw_sign(i).expect("validated");
        let over_in = d.over_in_slot(i).expect("validated");
        symbols[x[0] as usize - 1] = GaussSymbol { crossing: i, over: false, sign };
        symbols[x[over_in] as usize - 1] = GaussSymbol { crossing: i, over: true, sign };
    }
    Ok(SignedGaussCode { symbols })
}

/// Relabels edges with `e -> map(e)`; when `reverse` is set the orientation
/// is flipped as well, which re-roots each tuple at the old `c` slot.
fn relabel(d: &Diagram, map: impl Fn(EdgeId) -> EdgeId, reverse: bool) -> Vec<Crossing> {
    d.crossings()
        .iter()
        .map(|x| {
            let [a, b, c, dd] = x.0;
            if reverse {
                Crossing([map(c), map(dd), map(a), map(b)])
            } else {
                Crossing([map(a), map(b), map(c), map(dd)])
            }
        })
        .collect()
}

/// The lexicographically least sorted tuple list over all `4n` relabelings
/// (every starting edge, both orientations). Mirror images stay distinct.
pub fn canonical_form(d: &Diagram) -> Result<Diagram> {
    require_valid(d)?;
    let m = d.edge_count() as i64;
    if m == 0 {
        return Ok(Diagram::unknot());
    }
    let mut best: Option<Vec<Crossing>> = None;
    for k in 0..m {
        for reverse in [false, true] {
            let map = |e: EdgeId| -> EdgeId {
                let e = e as i64 - 1;
                let v = if reverse { (k - e).rem_euclid(m) } else { (e - k).rem_euclid(m) };
                v as EdgeId + 1
            };
            let mut xs = relabel(d, map, reverse);
            xs.sort();
            if best.as_ref().is_none_or(|b| xs < *b) {
                best = Some(xs);
            }
        }
    }
    Ok(Diagram::new(best.expect("at least one relabeling")))
}
