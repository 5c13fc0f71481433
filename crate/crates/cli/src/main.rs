//! Command-line front end: Stirling tables, enumeration dumps, lattice
//! reports, Artin/Hilbert output, and the verification suites.
//!
//! Exit codes: 0 success, 1 asserted verification failure, 2 bad arguments,
//! 3 size cap exceeded.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crgstir::coinvariant::{beta_phi_json, enumerate_super_artin, insert_bijection, inverse_bijection};
use crgstir::colored::{enumerate_ordered, enumerate_partitions, enumerate_super, Flavor};
use crgstir::lattice::{build_lattice, LatticeConfig, LatticeError};
use crgstir::perm::{enumerate_full, FullFilter};
use crgstir::poly::{bivar_poly_to_json, int_poly_to_json};
use crgstir::verify::{render_reports, run_suite, SuiteParams, SUITE_NAMES};
use crgstir::{
    arrangement, artin_hilbert, mobius_product, ordered_q_stirling, q_stirling1, q_stirling2,
    staircase, stirling1, stirling2, super_artin_hilbert, super_q_stirling, IntPoly,
    OrderedVariant,
};

const CAP_ENV: &str = "CRGSTIR_MAX_ELEMENTS";

#[derive(Parser)]
#[command(
    name = "crgstir",
    version,
    about = "Stirling numbers for the complex reflection groups G(m,p,n): tables, colored-partition enumeration, intersection lattices, and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// S(m,n,k)
    Second,
    /// The barred variant for G(m,m,n)
    SecondBarred,
    /// Signed first kind s[m,n,k]
    First,
    /// S-tilde, the super second kind
    Super,
    /// [(k-1)m+2]!_m S[m,n,k]
    OrderedLattice,
    /// [km]!_m S-tilde[m,n,k]
    OrderedSuper,
    /// [km]!_m S[m,n,k]
    OrderedCr,
}

impl Family {
    fn q_value(self, m: u32, n: u32, k: i64) -> IntPoly {
        match self {
            Family::Second => q_stirling2(m, n, k, false),
            Family::SecondBarred => q_stirling2(m, n, k, true),
            Family::First => q_stirling1(m, n, k),
            Family::Super => super_q_stirling(m, n, k),
            Family::OrderedLattice => ordered_q_stirling(m, n, k, OrderedVariant::Lattice),
            Family::OrderedSuper => ordered_q_stirling(m, n, k, OrderedVariant::Super),
            Family::OrderedCr => ordered_q_stirling(m, n, k, OrderedVariant::Cr),
        }
    }

    fn int_value(self, m: u32, n: u32, k: i64) -> crgstir::BigInt {
        match self {
            Family::Second => stirling2(m, n, k, false),
            Family::SecondBarred => stirling2(m, n, k, true),
            Family::First => stirling1(m, n, k),
            _ => self.q_value(m, n, k).eval(&crgstir::BigInt::from(1)),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::Second => "second",
            Family::SecondBarred => "second-barred",
            Family::First => "first",
            Family::Super => "super",
            Family::OrderedLattice => "ordered-lattice",
            Family::OrderedSuper => "ordered-super",
            Family::OrderedCr => "ordered-cr",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumerateKind {
    Partitions,
    Barred,
    Super,
    OrderedSuper,
    OrderedCr,
    FullPermutations,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    m: u32,
    /// Rows 0..=n are printed.
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Integer Stirling tables (q = 1).
    Table(TableArgs),
    /// Polynomial tables in q.
    Qtable(TableArgs),
    /// Stream partitions, ordered partitions, or full permutations.
    Enumerate {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Number of m-tuples; omit to stream every k.
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, value_enum, default_value = "partitions")]
        kind: EnumerateKind,
        /// Group parameter for full permutations (1 or m).
        #[arg(long, default_value = "1")]
        p: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a partition lattice: elements, Hasse edges, Möbius and Whitney
    /// numbers; --geometric runs the hyperplane oracle and the isomorphism
    /// certificate.
    Lattice {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        barred: bool,
        /// Run the geometric oracle over Q(ζ_m) and dump the certificate.
        #[arg(long)]
        geometric: bool,
        /// Group parameter used by the geometric oracle.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Staircases, β/φ tables, and (super) coinvariant Hilbert series.
    Artin {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Super coinvariant data: β/φ per subset and the bivariate series.
        #[arg(long = "super")]
        super_mode: bool,
        /// Trace the insertion bijection round trip for every (T, α).
        #[arg(long)]
        show_bijection: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run verification suites; exits 1 on any asserted failure.
    Verify {
        /// One of the named suites, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Override the m range, e.g. `2` or `1..4` (inclusive).
        #[arg(long)]
        m: Option<String>,
        /// Override the n range, e.g. `0..5` (inclusive).
        #[arg(long)]
        n: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn lattice_config() -> LatticeConfig {
    let mut config = LatticeConfig::default();
    if let Ok(v) = std::env::var(CAP_ENV) {
        if let Ok(cap) = v.parse::<u64>() {
            config.max_elements = cap;
        }
    }
    config
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<u32>, String> {
    if let Some((a, b)) = text.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|_| format!("bad range {text:?}"))?;
        let hi: u32 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| format!("bad range {text:?}"))?;
        Ok(lo..=hi)
    } else {
        let v: u32 = text.trim().parse().map_err(|_| format!("bad range {text:?}"))?;
        Ok(v..=v)
    }
}

struct Out {
    sink: Box<dyn Write>,
}

impl Out {
    fn new(path: &Option<std::path::PathBuf>) -> std::io::Result<Out> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(std::fs::File::create(p)?),
            None => Box::new(std::io::stdout()),
        };
        Ok(Out { sink })
    }

    fn write(&mut self, text: std::fmt::Arguments<'_>) {
        if let Err(e) = self.sink.write_fmt(text) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("write output: {e}");
        }
    }

    fn line(&mut self, text: &str) {
        self.write(format_args!("{text}\n"));
    }

    fn json(&mut self, value: &serde_json::Value) {
        let rendered = serde_json::to_string_pretty(value).unwrap();
        self.write(format_args!("{rendered}\n"));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = match Out::new(&cli.output) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let code = match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    ExitCode::from(code)
}

fn run(command: Command, out: &mut Out) -> Result<u8, String> {
    match command {
        Command::Table(args) => table(args, out, false),
        Command::Qtable(args) => table(args, out, true),
        Command::Enumerate {
            m,
            n,
            k,
            kind,
            p,
            format,
        } => enumerate(m, n, k, kind, p, format, out),
        Command::Lattice {
            m,
            n,
            barred,
            geometric,
            p,
            format,
        } => lattice(m, n, barred, geometric, p, format, out),
        Command::Artin {
            m,
            n,
            super_mode,
            show_bijection,
            format,
        } => artin(m, n, super_mode, show_bijection, format, out),
        Command::Verify { suite, m, n, format } => verify(&suite, m, n, format, out),
    }
}

fn table(args: TableArgs, out: &mut Out, q_mode: bool) -> Result<u8, String> {
    if args.m < 1 {
        return Err("m must be at least 1".into());
    }
    if q_mode && args.format == Format::Csv {
        return Err("CSV is available for integer tables only".into());
    }
    let cell_text = |n: u32, k: i64| -> String {
        if q_mode {
            args.family.q_value(args.m, n, k).to_string()
        } else {
            args.family.int_value(args.m, n, k).to_string()
        }
    };
    match args.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = (0..=args.n)
                .map(|n| {
                    let cells: Vec<serde_json::Value> = (0..=n as i64)
                        .map(|k| {
                            if q_mode {
                                int_poly_to_json(&args.family.q_value(args.m, n, k))
                            } else {
                                serde_json::Value::String(cell_text(n, k))
                            }
                        })
                        .collect();
                    serde_json::json!({ "n": n, "values": cells })
                })
                .collect();
            out.json(&serde_json::json!({
                "family": args.family.name(),
                "m": args.m,
                "rows": rows,
            }));
        }
        Format::Csv => {
            out.line("n,k,value");
            for n in 0..=args.n {
                for k in 0..=n as i64 {
                    out.line(&format!("{n},{k},{}", cell_text(n, k)));
                }
            }
        }
        Format::Text => {
            out.line(&format!(
                "{} family, m = {} ({}):",
                args.family.name(),
                args.m,
                if q_mode { "polynomials in q" } else { "q = 1" }
            ));
            let mut width = 1;
            for n in 0..=args.n {
                for k in 0..=n as i64 {
                    width = width.max(cell_text(n, k).len());
                }
            }
            for n in 0..=args.n {
                let row: Vec<String> = (0..=n as i64)
                    .map(|k| format!("{:>width$}", cell_text(n, k)))
                    .collect();
                out.line(&format!("n={n:<2} {}", row.join("  ")));
            }
        }
    }
    Ok(0)
}

fn enumerate(
    m: u32,
    n: u32,
    k: Option<i64>,
    kind: EnumerateKind,
    p: u32,
    format: Format,
    out: &mut Out,
) -> Result<u8, String> {
    if m < 1 {
        return Err("m must be at least 1".into());
    }
    if format == Format::Csv {
        return Err("enumeration streams support text and json".into());
    }
    let ks: Vec<i64> = match k {
        Some(k) => vec![k],
        None => (0..=n as i64).collect(),
    };
    let mut texts: Vec<String> = Vec::new();
    let mut jsons: Vec<serde_json::Value> = Vec::new();
    for k in ks {
        match kind {
            EnumerateKind::Partitions | EnumerateKind::Barred => {
                for part in enumerate_partitions(m, n, k, kind == EnumerateKind::Barred) {
                    texts.push(part.to_text());
                    jsons.push(part.to_json());
                }
            }
            EnumerateKind::Super => {
                for part in enumerate_super(m, n, k) {
                    texts.push(part.to_text());
                    jsons.push(part.to_json());
                }
            }
            EnumerateKind::OrderedSuper | EnumerateKind::OrderedCr => {
                let flavor = if kind == EnumerateKind::OrderedSuper {
                    Flavor::Super
                } else {
                    Flavor::Cr
                };
                for part in enumerate_ordered(m, n, k, flavor) {
                    texts.push(part.to_text());
                    jsons.push(part.to_json());
                }
            }
            EnumerateKind::FullPermutations => {
                if p != 1 && p != m {
                    return Err("full permutation census supports p = 1 or p = m".into());
                }
                for g in enumerate_full(m, p, n, &FullFilter::TupleCount(k.max(0) as usize)) {
                    let dec = g.cycle_decomposition();
                    texts.push(format!("{g} {}", dec.to_text()));
                    jsons.push(serde_json::json!({
                        "permutation": g.to_string(),
                        "cycles": dec.to_text(),
                    }));
                }
            }
        }
    }
    match format {
        Format::Json => out.json(&serde_json::Value::Array(jsons)),
        _ => {
            for t in &texts {
                out.line(t);
            }
            out.line(&format!("total: {}", texts.len()));
        }
    }
    Ok(0)
}

fn lattice(
    m: u32,
    n: u32,
    barred: bool,
    geometric: bool,
    p: Option<u32>,
    format: Format,
    out: &mut Out,
) -> Result<u8, String> {
    if m < 1 {
        return Err("m must be at least 1".into());
    }
    if format == Format::Csv {
        return Err("lattice reports support text and json".into());
    }
    let config = lattice_config();
    let lat = match build_lattice(m, n, barred, config) {
        Ok(l) => l,
        Err(e @ LatticeError::CapExceeded { .. }) => {
            eprintln!("error: {e}");
            return Ok(3);
        }
        Err(e) => return Err(e.to_string()),
    };
    let (w, big_w) = lat.whitney_numbers();
    let edges = lat.hasse_edges();

    let geometry = if geometric {
        let p = p.unwrap_or(if barred { m } else { 1 });
        let outcome = arrangement::iso_check(m, p, n, config);
        if outcome.report.is_failure() {
            out.line(&outcome.report.render());
            return Ok(1);
        }
        Some((p, outcome))
    } else {
        None
    };

    match format {
        Format::Json => {
            let elements: Vec<serde_json::Value> = lat
                .elements()
                .iter()
                .enumerate()
                .map(|(i, part)| {
                    serde_json::json!({
                        "index": i,
                        "partition": part.to_text(),
                        "rank": lat.rank_of(i),
                        "mobius": lat.mobius_at(i).to_string(),
                    })
                })
                .collect();
            let mut doc = serde_json::json!({
                "m": m,
                "n": n,
                "barred": barred,
                "classical": lat.is_classical(),
                "elements": elements,
                "hasse_edges": edges,
                "whitney_first": w.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "whitney_second": big_w.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            });
            if let Some((p, outcome)) = &geometry {
                doc["geometric"] = serde_json::json!({
                    "p": p,
                    "report": outcome.report.to_json(),
                    "certificate": outcome.certificate.to_json(),
                });
            }
            out.json(&doc);
        }
        _ => {
            out.line(&format!(
                "{} lattice for m={m}, n={n}: {} elements",
                if lat.is_classical() {
                    "classical partition"
                } else if barred {
                    "barred colored partition"
                } else {
                    "colored partition"
                },
                lat.len()
            ));
            for (i, part) in lat.elements().iter().enumerate() {
                out.line(&format!(
                    "  [{i}] rank {} mobius {:>4}  {}",
                    lat.rank_of(i),
                    lat.mobius_at(i).to_string(),
                    part.to_text()
                ));
            }
            out.line(&format!(
                "hasse edges: {}",
                edges
                    .iter()
                    .map(|(a, b)| format!("{a}->{b}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            out.line(&format!(
                "whitney W (second kind) by rank: {}",
                big_w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
            ));
            out.line(&format!(
                "whitney w (first kind) by rank: {}",
                w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
            ));
            for (i, part) in lat.elements().iter().enumerate() {
                let product = mobius_product(part);
                if product != lat.mobius_at(i) {
                    out.line(&format!(
                        "  note: printed product formula gives {product} at [{i}] (recursive {})",
                        lat.mobius_at(i)
                    ));
                }
            }
            if let Some((p, outcome)) = &geometry {
                out.line(&format!("geometric oracle (p = {p}): {}", outcome.report.render()));
                out.line(&format!(
                    "certificate: {} subspaces; echelon bases in JSON via --format json",
                    outcome.geometric_size
                ));
            }
        }
    }
    Ok(0)
}

fn artin(
    m: u32,
    n: u32,
    super_mode: bool,
    show_bijection: bool,
    format: Format,
    out: &mut Out,
) -> Result<u8, String> {
    if m < 1 || n < 1 {
        return Err("m and n must be at least 1".into());
    }
    if format == Format::Csv {
        return Err("artin reports support text and json".into());
    }
    let stair = staircase(m, n);
    let hilb = artin_hilbert(m, n);
    if !super_mode {
        match format {
            Format::Json => out.json(&serde_json::json!({
                "m": m,
                "n": n,
                "staircase": stair.parts,
                "hilbert": int_poly_to_json(&hilb),
            })),
            _ => {
                out.line(&format!("({m},{n})-staircase: {stair}"));
                out.line(&format!("Hilbert series [mn]!_m: {hilb}"));
            }
        }
        return Ok(0);
    }

    let series = super_artin_hilbert(m, n);
    let subsets: Vec<BTreeSet<u32>> = (0u32..(1 << n))
        .map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect();
    let mut sorted_subsets = subsets;
    sorted_subsets.sort();

    let mut traces: Vec<serde_json::Value> = Vec::new();
    let mut trace_lines: Vec<String> = Vec::new();
    if show_bijection {
        for elem in enumerate_super_artin(m, n) {
            let omega = insert_bijection(&elem.t_set, &elem.alpha, m, n)
                .map_err(|e| e.to_string())?;
            let (t_back, alpha_back) = inverse_bijection(&omega);
            let ok = t_back == elem.t_set && alpha_back == elem.alpha;
            trace_lines.push(format!(
                "T={:?} α={} -> {} -> roundtrip {}",
                elem.t_set.iter().collect::<Vec<_>>(),
                elem.alpha,
                omega.to_text(),
                if ok { "ok" } else { "MISMATCH" }
            ));
            traces.push(serde_json::json!({
                "T": elem.t_set.iter().copied().collect::<Vec<u32>>(),
                "alpha": elem.alpha.parts,
                "omega": omega.to_text(),
                "roundtrip": ok,
            }));
            if !ok {
                for l in &trace_lines {
                    out.line(l);
                }
                return Ok(1);
            }
        }
    }

    match format {
        Format::Json => {
            let mut doc = serde_json::json!({
                "m": m,
                "n": n,
                "staircase": stair.parts,
                "hilbert": int_poly_to_json(&hilb),
                "beta_phi": sorted_subsets
                    .iter()
                    .map(|t| beta_phi_json(t, m, n))
                    .collect::<Vec<_>>(),
                "super_hilbert": bivar_poly_to_json(&series),
            });
            if show_bijection {
                doc["bijection"] = serde_json::Value::Array(traces);
            }
            out.json(&doc);
        }
        _ => {
            out.line(&format!("({m},{n})-staircase: {stair}"));
            out.line(&format!("Hilbert series [mn]!_m: {hilb}"));
            out.line("beta(T) and phi(T) per subset:");
            for t in &sorted_subsets {
                let v = beta_phi_json(t, m, n);
                out.line(&format!(
                    "  T={:?}: beta={:?} phi={:?}",
                    v["T"], v["beta"], v["phi"]
                ));
            }
            out.line("super coinvariant Hilbert series, t-degree major:");
            for (j, coeff) in series.coeffs().iter().enumerate() {
                out.line(&format!("  t^{j}: {coeff}"));
            }
            for l in &trace_lines {
                out.line(l);
            }
        }
    }
    Ok(0)
}

fn verify(
    suite: &str,
    m: Option<String>,
    n: Option<String>,
    format: Format,
    out: &mut Out,
) -> Result<u8, String> {
    if format == Format::Csv {
        return Err("verification reports support text and json".into());
    }
    let params = SuiteParams {
        m: m.as_deref().map(parse_range).transpose()?,
        n: n.as_deref().map(parse_range).transpose()?,
    };
    let reports = run_suite(suite, &params, lattice_config()).ok_or_else(|| {
        format!(
            "unknown suite {suite:?}; expected one of {} or `all`",
            SUITE_NAMES.join(", ")
        )
    })?;
    match format {
        Format::Json => {
            out.json(&serde_json::Value::Array(
                reports.iter().map(|r| r.to_json()).collect(),
            ));
        }
        _ => out.line(&render_reports(&reports)),
    }
    Ok(if reports.iter().any(|r| r.is_failure()) { 1 } else { 0 })
}
