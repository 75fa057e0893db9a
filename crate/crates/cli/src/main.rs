use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotforge::bracket::{
    bracket_fast, bracket_naive_with_limit, jones, kauffman_poly, span_check, state_stats, DEFAULT_NAIVE_LIMIT,
};
use knotforge::diagram::{crossing_sign, is_alternating, is_composite, reduce, writhe, Color};
use knotforge::moves::{apply_flype, find_flypes, flype_orbit, DEFAULT_ORBIT_LIMIT};
use knotforge::surfaces::{checkerboard_surface, howie_check};
use knotforge::tables::{builtin_table, load_table, lookup, verify_tait};
use knotforge::{canonical_form, parse_pd, to_gauss, validate, Diagram, Error};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "knotforge", version, about = "Knot diagram invariants from PD codes")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Input {
    /// Inline PD code, e.g. "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]".
    pd: Option<String>,
    /// Read the PD code from a file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Use a diagram from the bundled table, e.g. 7_4.
    #[arg(long)]
    knot: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorArg {
    White,
    Black,
}

#[derive(Subcommand)]
enum Command {
    /// Check a PD code and list every violation.
    Validate(Input),
    /// Sum of crossing signs.
    Writhe(Input),
    /// Whether crossings alternate over and under.
    Alternating(Input),
    /// Remove nugatory crossings.
    Reduce(Input),
    /// Signed Gauss code.
    Gauss(Input),
    /// Relabelling-independent PD code.
    Canonical(Input),
    /// Kauffman bracket in A.
    Bracket {
        #[command(flatten)]
        input: Input,
        /// Sum over all 2^n states (limit from KNOTFORGE_NAIVE_LIMIT, default 20).
        #[arg(long, conflicts_with = "fast")]
        naive: bool,
        /// Contract crossing by crossing (the default).
        #[arg(long)]
        fast: bool,
    },
    /// Writhe-normalized bracket in A.
    Kauffman(Input),
    /// Jones polynomial in t.
    Jones(Input),
    /// Bracket span against 4n (reduced diagrams).
    Span(Input),
    /// Loop counts of the all-A and all-B states.
    States(Input),
    /// Checkerboard surface of one color.
    Surface {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        color: ColorArg,
    },
    /// chi(white) + chi(black) + n (reduced diagrams).
    Howie(Input),
    /// Search for a circle meeting the diagram twice with crossings on both sides.
    Composite(Input),
    /// Flype sites, moves and orbits (reduced alternating diagrams).
    Flype {
        #[command(subcommand)]
        action: FlypeAction,
    },
    /// Knot table checks.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
}

#[derive(Subcommand)]
enum FlypeAction {
    /// Numbered list of flype sites.
    List(Input),
    /// Apply the site with the given number from `flype list`.
    Apply {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        site: usize,
    },
    /// Every diagram reachable by flypes, as canonical PD codes.
    Orbit {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_ORBIT_LIMIT)]
        limit: usize,
    },
}

#[derive(Subcommand)]
enum TableAction {
    /// Run the Tait checks on the bundled table or a TSV file.
    Check { path: Option<PathBuf> },
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: Value) -> Result<Output, Failure> {
    Ok(Output { text: text.into(), json })
}

fn read_input(input: &Input) -> Result<Diagram, Failure> {
    if let Some(pd) = &input.pd {
        return Ok(parse_pd(pd)?);
    }
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
        return Ok(parse_pd(&text)?);
    }
    let name = input.knot.as_deref().expect("clap requires one input");
    lookup(name)
        .map(|e| e.diagram)
        .ok_or_else(|| Failure::Domain(format!("no bundled diagram named '{name}'")))
}

fn naive_limit() -> Result<usize, Failure> {
    match std::env::var("KNOTFORGE_NAIVE_LIMIT") {
        Err(_) => Ok(DEFAULT_NAIVE_LIMIT),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("KNOTFORGE_NAIVE_LIMIT must be a non-negative integer, got '{v}'"))),
    }
}

fn run(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Validate(input) => {
            let d = read_input(&input)?;
            let report = validate(&d);
            if report.is_empty() {
                out("valid", json!({ "valid": true, "violations": [] }))
            } else {
                Err(Failure::Domain(format!("invalid diagram: {report}")))
            }
        }
        Command::Writhe(input) => {
            let d = read_input(&input)?;
            let w = writhe(&d)?;
            let signs = (0..d.n()).map(|i| crossing_sign(&d, i)).collect::<Result<Vec<_>, _>>()?;
            out(w.to_string(), json!({ "writhe": w, "signs": signs }))
        }
        Command::Alternating(input) => {
            let a = is_alternating(&read_input(&input)?)?;
            out(a.to_string(), json!({ "alternating": a }))
        }
        Command::Reduce(input) => {
            let r = reduce(&read_input(&input)?)?;
            out(r.to_string(), json!({ "pd": r, "n": r.n() }))
        }
        Command::Gauss(input) => {
            let g = to_gauss(&read_input(&input)?)?;
            out(g.to_string(), json!({ "gauss": g.to_string() }))
        }
        Command::Canonical(input) => {
            let c = canonical_form(&read_input(&input)?)?;
            out(c.to_string(), json!({ "pd": c }))
        }
        Command::Bracket { input, naive, fast: _ } => {
            let d = read_input(&input)?;
            let b = if naive { bracket_naive_with_limit(&d, naive_limit()?)? } else { bracket_fast(&d)? };
            out(b.render("A"), json!({ "bracket": b }))
        }
        Command::Kauffman(input) => {
            let f = kauffman_poly(&read_input(&input)?)?;
            out(f.render("A"), json!({ "kauffman": f }))
        }
        Command::Jones(input) => {
            let v = jones(&read_input(&input)?)?;
            out(v.render("t"), json!({ "jones": v }))
        }
        Command::Span(input) => {
            let r = span_check(&read_input(&input)?)?;
            let text = format!(
                "span {} (4n = {}), max {}, min {}{}",
                r.span,
                r.expected,
                r.max_degree,
                r.min_degree,
                match r.extreme_degree_match {
                    Some(true) => ", extreme degrees match",
                    Some(false) => ", extreme degrees DO NOT match",
                    None => ", not alternating",
                }
            );
            out(text, serde_json::to_value(r).expect("serializable"))
        }
        Command::States(input) => {
            let s = state_stats(&read_input(&input)?)?;
            let text = format!("s+ {} s- {} n {}", s.s_plus_loops, s.s_minus_loops, s.n);
            out(text, serde_json::to_value(s).expect("serializable"))
        }
        Command::Surface { input, color } => {
            let c = match color {
                ColorArg::White => Color::White,
                ColorArg::Black => Color::Black,
            };
            let s = checkerboard_surface(&read_input(&input)?, c)?;
            let kind = if s.orientable {
                format!("orientable, genus {}", s.genus_or_crosscap)
            } else {
                format!("non-orientable, {} crosscap(s)", s.genus_or_crosscap)
            };
            let text = format!("{}: {} discs, {} bands, chi {}, {kind}", s.color, s.disc_count, s.band_count, s.euler_char);
            out(text, serde_json::to_value(s).expect("serializable"))
        }
        Command::Howie(input) => {
            let h = howie_check(&read_input(&input)?)?;
            let text = format!("{} + {} + {} = {}", h.chi_white, h.chi_black, h.half_intersection, h.total);
            out(text, serde_json::to_value(h).expect("serializable"))
        }
        Command::Composite(input) => {
            let r = is_composite(&read_input(&input)?)?;
            let text = match r.cut {
                Some((a, b)) => format!("composite (cut edges {a} and {b})"),
                None => "prime".to_string(),
            };
            out(text, serde_json::to_value(r).expect("serializable"))
        }
        Command::Flype { action } => flype(action),
        Command::Table { action: TableAction::Check { path } } => table_check(path),
    }
}

fn flype(action: FlypeAction) -> Result<Output, Failure> {
    match action {
        FlypeAction::List(input) => {
            let sites = find_flypes(&read_input(&input)?)?;
            let text: Vec<String> = sites.iter().enumerate().map(|(i, s)| format!("{i}: {s}")).collect();
            out(text.join("\n"), json!({ "sites": sites }))
        }
        FlypeAction::Apply { input, site } => {
            let d = read_input(&input)?;
            let sites = find_flypes(&d)?;
            let s = sites
                .get(site)
                .ok_or_else(|| Failure::Domain(format!("no flype site {site}; the diagram has {}", sites.len())))?;
            let f = apply_flype(&d, s)?;
            out(f.to_string(), json!({ "pd": f, "site": s }))
        }
        FlypeAction::Orbit { input, limit } => {
            let orbit = flype_orbit(&read_input(&input)?, limit)?;
            let text: Vec<String> = orbit.iter().map(|d| d.to_string()).collect();
            out(text.join("\n"), json!({ "size": orbit.len(), "orbit": orbit }))
        }
    }
}

fn table_check(path: Option<PathBuf>) -> Result<Output, Failure> {
    let entries = match &path {
        None => builtin_table(),
        Some(p) => {
            let load = load_table(p)?;
            if !load.errors.is_empty() {
                let lines: Vec<String> = load.errors.iter().map(|e| format!("{}: {e}", p.display())).collect();
                return Err(Failure::Domain(lines.join("\n")));
            }
            load.entries
        }
    };
    let report = verify_tait(&entries)?;
    let failures = report.failures();
    if failures.is_empty() {
        let text = format!("{} entries: all Tait checks passed", report.entries.len());
        out(text, serde_json::to_value(&report).expect("serializable"))
    } else {
        Err(Failure::Domain(format!("Tait checks failed:\n{}", failures.join("\n"))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(o) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&o.json).expect("JSON value"));
            } else {
                println!("{}", o.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
