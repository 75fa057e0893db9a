//! The bundled knot table, TSV table files, and the Tait checks.
//!
//! A table file has one entry per line, `name<TAB>pd<TAB>0|1`, where the
//! last column says whether the diagram is expected to be alternating.
//! Lines starting with `#` and blank lines are skipped. Alternate
//! presentations of one knot share the part of the name before `@`, as in
//! `3_1` and `3_1@braid`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::bracket::{bracket_fast, jones, state_stats};
use crate::codes::{parse_pd, validate, Diagram};
use crate::diagram::{is_alternating, is_reduced, writhe};
use crate::error::Result;
use crate::polynomial::LaurentPoly;
use crate::surfaces::howie_check;

const BUILTIN: &str = include_str!("../data/knots.tsv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub name: String,
    pub diagram: Diagram,
    pub expected_alternating: bool,
}

impl TableEntry {
    /// Name with any `@presentation` suffix removed.
    pub fn knot(&self) -> &str {
        knot_name(&self.name)
    }
}

pub fn knot_name(name: &str) -> &str {
    name.split('@').next().unwrap_or(name)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Entries that loaded, and the rows that did not.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TableLoad {
    pub entries: Vec<TableEntry>,
    pub errors: Vec<RowError>,
}

pub fn parse_table(text: &str) -> TableLoad {
    let mut out = TableLoad::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let row = raw.trim_end_matches('\r');
        if row.trim().is_empty() || row.starts_with('#') {
            continue;
        }
        let mut err = |message: String| out.errors.push(RowError { line, message });
        let cols: Vec<&str> = row.split('\t').collect();
        if cols.len() != 3 {
            err(format!("expected 3 tab-separated columns, found {}", cols.len()));
            continue;
        }
        let flag = match cols[2].trim() {
            "0" => false,
            "1" => true,
            other => {
                err(format!("alternating flag must be 0 or 1, found '{other}'"));
                continue;
            }
        };
        let diagram = match parse_pd(cols[1]) {
            Ok(d) => d,
            Err(e) => {
                err(e.to_string());
                continue;
            }
        };
        let report = validate(&diagram);
        if !report.is_empty() {
            err(format!("invalid diagram: {report}"));
            continue;
        }
        let name = cols[0].trim().to_string();
        if name.is_empty() {
            err("empty name".into());
            continue;
        }
        if out.entries.iter().any(|e| e.name == name) {
            err(format!("duplicate name '{name}'"));
            continue;
        }
        out.entries.push(TableEntry { name, diagram, expected_alternating: flag });
    }
    out
}

pub fn load_table(path: impl AsRef<Path>) -> Result<TableLoad> {
    Ok(parse_table(&std::fs::read_to_string(path)?))
}

pub fn write_table(entries: &[TableEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        s.push_str(&format!("{}\t{}\t{}\n", e.name, e.diagram, u8::from(e.expected_alternating)));
    }
    s
}

/// The compiled-in table: 3_1 through 7_7 with alternate presentations of
/// the trefoil and figure-eight, the non-alternating 8_19, 8_20 and 8_21, a
/// granny knot, and a 24-crossing twist chain.
pub fn builtin_table() -> Vec<TableEntry> {
    let load = parse_table(BUILTIN);
    assert!(load.errors.is_empty(), "bundled table is malformed: {:?}", load.errors);
    load.entries
}

pub fn lookup(name: &str) -> Option<TableEntry> {
    builtin_table().into_iter().find(|e| e.name == name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// Reduced alternating: the identities hold with equality.
    Equality,
    /// Non-alternating: the identities hold strictly.
    Strict,
    /// Not reduced; nothing is checked.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub n: usize,
    pub writhe: i64,
    pub alternating: bool,
    pub flag_ok: bool,
    pub reduced: bool,
    pub expectation: Expectation,
    pub span: i64,
    pub span_law_ok: bool,
    pub state_loops: usize,
    pub state_sum_ok: bool,
    pub howie_total: Option<i64>,
    pub howie_ok: bool,
    pub jones: LaurentPoly,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.flag_ok && self.span_law_ok && self.state_sum_ok && self.howie_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotTypeReport {
    pub entries: Vec<String>,
    pub writhes: Vec<i64>,
    pub writhe_consistent: bool,
    pub jones_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaitReport {
    pub entries: Vec<EntryReport>,
    pub knot_types: BTreeMap<String, KnotTypeReport>,
}

impl TaitReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .entries
            .iter()
            .filter(|e| !e.passed())
            .map(|e| format!("{}: check failed", e.name))
            .collect();
        for (k, t) in &self.knot_types {
            if !t.writhe_consistent || !t.jones_consistent {
                out.push(format!("{k}: presentations disagree"));
            }
        }
        out
    }

    pub fn all_passed(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Serialized as `{"entries": {name: ...}, "knot_types": {...},
/// "all_passed": bool}` with entries in input order.
impl Serialize for TaitReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entries<'a>(&'a [EntryReport]);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for e in self.0 {
                    m.serialize_entry(&e.name, e)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("entries", &Entries(&self.entries))?;
        m.serialize_entry("knot_types", &self.knot_types)?;
        m.serialize_entry("all_passed", &self.all_passed())?;
        m.end()
    }
}

fn check_entry(e: &TableEntry) -> Result<EntryReport> {
    let d = &e.diagram;
    let n = d.n();
    let alternating = is_alternating(d)?;
    let reduced = is_reduced(d)?;
    let expectation = match (reduced, alternating) {
        (false, _) => Expectation::Skipped,
        (true, true) => Expectation::Equality,
        (true, false) => Expectation::Strict,
    };
    let span = bracket_fast(d)?.degrees()?.span;
    let st = state_stats(d)?;
    let loops = st.s_plus_loops + st.s_minus_loops;
    let howie_total = if reduced { Some(howie_check(d)?.total) } else { None };
    let (span_law_ok, state_sum_ok, howie_ok) = match expectation {
        Expectation::Equality => (span == 4 * n as i64, loops == n + 2, howie_total == Some(2)),
        Expectation::Strict => (span < 4 * n as i64, loops < n + 2, howie_total.is_some_and(|t| t < 2)),
        Expectation::Skipped => (true, true, true),
    };
    Ok(EntryReport {
        name: e.name.clone(),
        n,
        writhe: writhe(d)?,
        alternating,
        flag_ok: alternating == e.expected_alternating,
        reduced,
        expectation,
        span,
        span_law_ok,
        state_loops: loops,
        state_sum_ok,
        howie_total,
        howie_ok,
        jones: jones(d)?,
    })
}

/// Runs every check on every entry and compares presentations of the same
/// knot.
pub fn verify_tait(entries: &[TableEntry]) -> Result<TaitReport> {
    let reports: Vec<EntryReport> = entries.iter().map(check_entry).collect::<Result<_>>()?;
    let mut groups: BTreeMap<String, Vec<&EntryReport>> = BTreeMap::new();
    for (e, r) in entries.iter().zip(&reports) {
        groups.entry(e.knot().to_string()).or_default().push(r);
    }
    let knot_types = groups
        .into_iter()
        .filter(|(_, rs)| rs.len() > 1)
        .map(|(k, rs)| {
            let writhes: Vec<i64> = rs.iter().map(|r| r.writhe).collect();
            let t = KnotTypeReport {
                entries: rs.iter().map(|r| r.name.clone()).collect(),
                writhe_consistent: writhes.windows(2).all(|w| w[0] == w[1]),
                jones_consistent: rs.windows(2).all(|w| w[0].jones == w[1].jones),
                writhes,
            };
            (k, t)
        })
        .collect();
    Ok(TaitReport { entries: reports, knot_types })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::determinant;
    use crate::construct::{braid_closure, connected_sum, continuant, rational, twist_chain};
    use num_bigint::BigInt;

    const TREFOIL: &str = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
    const FIGURE_EIGHT: &str = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]";

    /// How each bundled diagram is made, with the determinant it must have.
    fn recipes() -> Vec<(&'static str, Diagram, bool, u64)> {
        let trefoil = parse_pd(TREFOIL).unwrap();
        let r = |t: &[u32]| rational(t).unwrap();
        let mut v = vec![
            ("3_1", trefoil.clone(), true, 3),
            ("3_1@braid", braid_closure(2, &[-1, -1, -1]).unwrap(), true, 3),
            ("3_1@plat", r(&[3]).mirror(), true, 3),
            ("4_1", parse_pd(FIGURE_EIGHT).unwrap(), true, 5),
            ("4_1@plat", r(&[2, 2]), true, 5),
        ];
        let rationals: [(&str, &[u32]); 12] = [
            ("5_1", &[5]),
            ("5_2", &[3, 2]),
            ("6_1", &[4, 2]),
            ("6_2", &[3, 1, 2]),
            ("6_3", &[2, 1, 1, 2]),
            ("7_1", &[7]),
            ("7_2", &[5, 2]),
            ("7_3", &[4, 3]),
            ("7_4", &[3, 1, 3]),
            ("7_5", &[3, 2, 2]),
            ("7_6", &[2, 2, 1, 2]),
            ("7_7", &[2, 1, 1, 1, 2]),
        ];
        for (name, t) in rationals {
            let det = u64::try_from(continuant(t)).unwrap();
            v.push((name, r(t), true, det));
        }
        v.extend([
            ("8_19", braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2]).unwrap(), false, 3),
            ("8_20", braid_closure(3, &[1, 1, 1, -2, -1, -1, -1, -2]).unwrap(), false, 9),
            ("8_21", braid_closure(3, &[1, 1, 1, 2, -1, -1, 2, 2]).unwrap(), false, 15),
            ("3_1#3_1", connected_sum(&trefoil, &trefoil).unwrap(), true, 9),
            ("twist_chain_24", twist_chain(12).unwrap(), true, 33461),
        ]);
        v
    }

    #[test]
    fn builtin_matches_recipes() {
        let recipes = recipes();
        let expected: Vec<TableEntry> = recipes
            .iter()
            .map(|(name, d, alt, _)| TableEntry { name: name.to_string(), diagram: d.clone(), expected_alternating: *alt })
            .collect();
        if std::env::var_os("KNOTFORGE_BLESS").is_some() {
            let header = "# Bundled knot table: name, PD code, alternating flag.\n\
                          # Generated from braid closures and 4-plats; every row is checked\n\
                          # against its construction and determinant by the test suite.\n";
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/knots.tsv");
            std::fs::write(path, format!("{header}{}", write_table(&expected))).unwrap();
            return;
        }
        assert_eq!(builtin_table(), expected, "rerun with KNOTFORGE_BLESS=1 to regenerate");
        for (name, d, _, det) in &recipes {
            assert_eq!(determinant(d).unwrap(), BigInt::from(*det), "{name}");
        }
    }

    #[test]
    fn builtin_contents() {
        let t = builtin_table();
        assert!(t.len() >= 20);
        let tre = lookup("3_1").unwrap();
        assert_eq!((tre.diagram.n(), tre.expected_alternating), (3, true));
        assert!(!lookup("8_19").unwrap().expected_alternating);
        for e in &t {
            assert_eq!(is_alternating(&e.diagram).unwrap(), e.expected_alternating, "{}", e.name);
            assert!(is_reduced(&e.diagram).unwrap(), "{}", e.name);
        }
    }

    #[test]
    fn row_errors_keep_other_rows() {
        let text = format!("# comment\n\n3_1\t{TREFOIL}\t1\nbad\tPD[X(1,2,3,4)]\t1\nx\t{TREFOIL}\t2\n3_1\t{TREFOIL}\t1\n");
        let load = parse_table(&text);
        assert_eq!(load.entries.len(), 1);
        let lines: Vec<usize> = load.errors.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![4, 5, 6]);
    }

    #[test]
    fn round_trip() {
        let t = builtin_table();
        let load = parse_table(&write_table(&t));
        assert!(load.errors.is_empty());
        assert_eq!(load.entries, t);
    }

    #[test]
    fn tait_on_builtin() {
        let report = verify_tait(&builtin_table()).unwrap();
        assert!(report.all_passed(), "{:?}", report.failures());
        let tre = &report.knot_types["3_1"];
        assert_eq!(tre.writhes, vec![-3, -3, -3]);
        let e819 = report.entries.iter().find(|e| e.name == "8_19").unwrap();
        assert!(e819.span < 32);
    }
}
