//! Command-line front end: parse filtered complexes or equivalences from
//! files, run spectral-sequence and persistence queries, emit groups,
//! barcodes and verification reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;

use perseq::barcode::{self, BarcodeMode};
use perseq::complex::{Degree, FilteredChainComplex, Level, Stage};
use perseq::field;
use perseq::oracle;
use perseq::parse;
use perseq::persistence::{self, Death, PersistenceQuery, PersistentGroup};
use perseq::spectral;

#[derive(Parser)]
#[command(
    name = "perseq",
    about = "Integer persistent homology and spectral sequences of filtered complexes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Stagewise,
    Alt,
}

#[derive(Args)]
struct CommonArgs {
    /// Override the filtration start convention (default: 1 for simplicial
    /// input, 0 for chain input).
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..=1))]
    start: Option<Stage>,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct GroupArgs {
    /// Print a generator chain per component.
    #[arg(long)]
    generators: bool,
    /// Compute through the independent oracle path (stage homology plus
    /// induced maps) instead of the subquotient formulas.
    #[arg(long)]
    oracle: bool,
    /// Field coefficients: a prime p or Q for the rationals (ranks only).
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the spectral sequence group E^r_{p,q}.
    #[command(allow_negative_numbers = true)]
    SpsqGroup {
        file: PathBuf,
        r: Level,
        p: Stage,
        q: Degree,
        #[command(flatten)]
        common: CommonArgs,
        /// Print a generator chain per component.
        #[arg(long)]
        generators: bool,
    },
    /// Compute the differential d^r_{p,q} : E^r_{p,q} -> E^r_{p-r,q+r-1}.
    #[command(allow_negative_numbers = true)]
    SpsqDffr {
        file: PathBuf,
        r: Level,
        p: Stage,
        q: Degree,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compute the persistent homology group BD^{i,k}_n (k may be "inf").
    #[command(allow_negative_numbers = true)]
    PrstHmlgGroup {
        file: PathBuf,
        i: Stage,
        #[arg(value_parser = parse_death)]
        k: Death,
        n: Degree,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Compute the total persistent homology group H^{i,j}_n.
    #[command(allow_negative_numbers = true)]
    TotalPrstHmlgGroup {
        file: PathBuf,
        i: Stage,
        j: Stage,
        n: Degree,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Compute the double-filtration group H^{i,j,k}_n (k may be "inf").
    #[command(allow_negative_numbers = true)]
    TriplePrstHmlgGroup {
        file: PathBuf,
        i: Stage,
        j: Stage,
        #[arg(value_parser = parse_death)]
        k: Death,
        n: Degree,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Build the integer barcode diagram.
    Barcode {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "stagewise")]
        mode: ModeArg,
        /// Also write an SVG rendering to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare total page rank at level r with the bar count of persistence
    /// at least r in dimension n.
    #[command(allow_negative_numbers = true)]
    CheckInequality {
        file: PathBuf,
        r: Level,
        n: Degree,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verify the reduction identities, filtered-map conditions and homotopy
    /// orders of an equivalence file.
    VerifyEquivalence { file: PathBuf },
}

fn parse_death(s: &str) -> Result<Death, String> {
    match s {
        "inf" | "infinity" | "oo" => Ok(Death::Infinite),
        _ => s
            .parse::<Stage>()
            .map(Death::At)
            .map_err(|_| format!("expected a stage number or 'inf', got '{s}'")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load_complex(file: &PathBuf, start: Option<Stage>) -> Result<FilteredChainComplex, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    parse::parse_complex_auto(&text, start).map_err(|e| e.to_string())
}

fn component_label(d: &BigInt) -> String {
    if d.is_zero() {
        "Z".to_string()
    } else {
        format!("Z/{}Z", d)
    }
}

fn print_presentation(
    header: &str,
    pres: &perseq::AbelianGroupPresentation,
    names: &[&str],
    generators: bool,
    format: OutputFormat,
    degree: Degree,
) {
    match format {
        OutputFormat::Text => {
            println!("{header}");
            for idx in 0..pres.len() {
                println!("Component {}", component_label(&pres.divisors()[idx]));
                if generators {
                    let chain = perseq::Chain::new(degree, pres.generator(idx));
                    println!("  generator {}", chain.format(names));
                }
            }
        }
        OutputFormat::Tsv => {
            for idx in 0..pres.len() {
                let mut line = format!("component\t{}", component_label(&pres.divisors()[idx]));
                if generators {
                    let chain = perseq::Chain::new(degree, pres.generator(idx));
                    line.push('\t');
                    line.push_str(&chain.format(names));
                }
                println!("{line}");
            }
        }
    }
}

fn field_arg(s: &str) -> Result<i64, String> {
    if s == "Q" || s == "q" || s == "0" {
        return Ok(0);
    }
    s.parse::<i64>()
        .map_err(|_| format!("expected a prime or Q, got '{s}'"))
}

fn print_field_rank(header: &str, rank: usize, p: i64, format: OutputFormat) {
    let label = if p == 0 {
        "Q".to_string()
    } else {
        format!("Z/{p}Z")
    };
    match format {
        OutputFormat::Text => {
            println!("{header}");
            for _ in 0..rank {
                println!("Component {label}");
            }
        }
        OutputFormat::Tsv => {
            for _ in 0..rank {
                println!("component\t{label}");
            }
        }
    }
}

fn persistence_command(
    c: &FilteredChainComplex,
    query: PersistenceQuery,
    header: String,
    group: &GroupArgs,
    format: OutputFormat,
) -> Result<(), String> {
    if let Some(field_str) = &group.field {
        if group.oracle {
            return Err("--field and --oracle cannot be combined".to_string());
        }
        let p = field_arg(field_str)?;
        let rank = match query {
            PersistenceQuery::Bd { i, k, n } => {
                field::field_bd_rank(c, p, i, k, n).map_err(|e| e.to_string())?
            }
            PersistenceQuery::Total { i, j, n } => {
                field::field_total_rank(c, p, i, j, n).map_err(|e| e.to_string())?
            }
            PersistenceQuery::Triple { i, j, k, n } => {
                // Over a field the double-filtration group decomposes: the
                // old classes plus the bars born at i, alive at j, dead by k.
                let table = field::field_betti(c, p).map_err(|e| e.to_string())?;
                let mut rank = table.beta(i - 1, j, n);
                let k_top = match k {
                    Death::At(ks) => ks.min(table.max_stage()),
                    Death::Infinite => table.max_stage(),
                };
                for kk in (j + 1).max(i + 1)..=k_top {
                    rank += table.mu(i, Death::At(kk), n).map_err(|e| e.to_string())?;
                }
                if matches!(k, Death::Infinite) {
                    rank += table
                        .mu(i, Death::Infinite, n)
                        .map_err(|e| e.to_string())?;
                }
                rank
            }
        };
        print_field_rank(&header, rank, p, format);
        return Ok(());
    }
    let g: PersistentGroup = if group.oracle {
        oracle::oracle_persistence(c, query).map_err(|e| e.to_string())?
    } else {
        match query {
            PersistenceQuery::Bd { i, k, n } => {
                persistence::bd_group(c, i, k, n).map_err(|e| e.to_string())?
            }
            PersistenceQuery::Total { i, j, n } => {
                persistence::total_prst_group(c, i, j, n).map_err(|e| e.to_string())?
            }
            PersistenceQuery::Triple { i, j, k, n } => {
                persistence::triple_prst_group(c, i, j, k, n).map_err(|e| e.to_string())?
            }
        }
    };
    let n = query.degree();
    let names = c.generator_names(n);
    print_presentation(&header, &g.presentation, &names, group.generators, format, n);
    Ok(())
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::SpsqGroup {
            file,
            r,
            p,
            q,
            common,
            generators,
        } => {
            if r < 1 {
                return Err("the page level r must be at least 1".to_string());
            }
            let c = load_complex(&file, common.start)?;
            let page = spectral::page_group(&c, r, p, q);
            let names = c.generator_names(p + q);
            print_presentation(
                &format!("Spectral sequence E^{}_{{{},{}}}", r, p, q),
                &page.presentation,
                &names,
                generators,
                common.format,
                p + q,
            );
            Ok(())
        }
        Command::SpsqDffr {
            file,
            r,
            p,
            q,
            common,
        } => {
            if r < 1 {
                return Err("the page level r must be at least 1".to_string());
            }
            let c = load_complex(&file, common.start)?;
            let d = spectral::differential(&c, r, p, q);
            match common.format {
                OutputFormat::Text => {
                    println!(
                        "Spectral sequence differential d^{}_{{{},{}}} : E^{}_{{{},{}}} -> E^{}_{{{},{}}}",
                        r, p, q, r, p, q, r, p - r, q + r - 1
                    );
                    let src: Vec<String> = d
                        .source
                        .presentation
                        .divisors()
                        .iter()
                        .map(component_label)
                        .collect();
                    let tgt: Vec<String> = d
                        .target
                        .presentation
                        .divisors()
                        .iter()
                        .map(component_label)
                        .collect();
                    println!("source [{}]", src.join(", "));
                    println!("target [{}]", tgt.join(", "));
                    println!("matrix rows {} cols {}", d.matrix.rows(), d.matrix.cols());
                    for i in 0..d.matrix.rows() {
                        let row: Vec<String> = (0..d.matrix.cols())
                            .map(|j| d.matrix.at(i, j).to_string())
                            .collect();
                        println!("{}", row.join(" "));
                    }
                    println!(
                        "zero modulo target relations: {}",
                        if d.is_zero() { "yes" } else { "no" }
                    );
                }
                OutputFormat::Tsv => {
                    for i in 0..d.matrix.rows() {
                        let row: Vec<String> = (0..d.matrix.cols())
                            .map(|j| d.matrix.at(i, j).to_string())
                            .collect();
                        println!("row\t{}", row.join("\t"));
                    }
                }
            }
            Ok(())
        }
        Command::PrstHmlgGroup {
            file,
            i,
            k,
            n,
            common,
            group,
        } => {
            let c = load_complex(&file, common.start)?;
            persistence_command(
                &c,
                PersistenceQuery::Bd { i, k, n },
                format!("Persistent Homology BD^{{{},{}}}_{}", i, k, n),
                &group,
                common.format,
            )
        }
        Command::TotalPrstHmlgGroup {
            file,
            i,
            j,
            n,
            common,
            group,
        } => {
            let c = load_complex(&file, common.start)?;
            persistence_command(
                &c,
                PersistenceQuery::Total { i, j, n },
                format!("Persistent Homology H^{{{},{}}}_{}", i, j, n),
                &group,
                common.format,
            )
        }
        Command::TriplePrstHmlgGroup {
            file,
            i,
            j,
            k,
            n,
            common,
            group,
        } => {
            let c = load_complex(&file, common.start)?;
            persistence_command(
                &c,
                PersistenceQuery::Triple { i, j, k, n },
                format!("Persistent Homology H^{{{},{},{}}}_{}", i, j, k, n),
                &group,
                common.format,
            )
        }
        Command::Barcode {
            file,
            mode,
            svg,
            common,
        } => {
            let c = load_complex(&file, common.start)?;
            let mode = match mode {
                ModeArg::Stagewise => BarcodeMode::Stagewise,
                ModeArg::Alt => BarcodeMode::Alternative,
            };
            let diagram = barcode::build_barcode(&c, mode, None);
            match common.format {
                OutputFormat::Text => print!("{}", barcode::render_text(&diagram)),
                OutputFormat::Tsv => {
                    for bar in &diagram.bars {
                        println!(
                            "bar\t{}\t{}\t{}\t{}\t{}",
                            bar.degree,
                            bar.birth,
                            bar.death,
                            perseq::lattice::label_for_divisors(&bar.group),
                            perseq::lattice::label_for_divisors(&bar.quotient),
                        );
                    }
                    for link in &diagram.links {
                        println!(
                            "link\t{}\t{}\t{}",
                            link.bars.0,
                            link.bars.1,
                            perseq::lattice::label_for_divisors(&link.label),
                        );
                    }
                }
            }
            if let Some(path) = svg {
                std::fs::write(&path, barcode::render_svg(&diagram))
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(())
        }
        Command::CheckInequality { file, r, n, common } => {
            if r < 1 {
                return Err("the level r must be at least 1".to_string());
            }
            let c = load_complex(&file, common.start)?;
            let report = spectral::check_inequality(&c, r, n);
            let verdict = if report.strict { "STRICT" } else { "EQUAL" };
            match common.format {
                OutputFormat::Text => {
                    println!("Rank relation at level {} in dimension {}", r, n);
                    println!("lhs={} rhs={} {}", report.lhs, report.rhs, verdict);
                }
                OutputFormat::Tsv => {
                    println!("lhs\t{}", report.lhs);
                    println!("rhs\t{}", report.rhs);
                    println!("strict\t{}", report.strict);
                }
            }
            Ok(())
        }
        Command::VerifyEquivalence { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let eq = parse::parse_equivalence(&text).map_err(|e| e.to_string())?;
            let mut failed = false;
            for (name, reduction) in [("left (D => C)", &eq.left), ("right (D => EC)", &eq.right)]
            {
                let report = reduction.verify();
                if report.ok() {
                    println!("{name}: ok");
                } else {
                    failed = true;
                    println!("{name}: FAILED");
                    for v in &report.violations {
                        println!("  {v}");
                    }
                }
            }
            println!("f1 filtered: {}", eq.left.f_filtered());
            println!("g1 filtered: {}", eq.left.g_filtered());
            println!("f2 filtered: {}", eq.right.f_filtered());
            println!("g2 filtered: {}", eq.right.g_filtered());
            println!("homotopy order h1: {}", eq.left.homotopy_order());
            println!("homotopy order h2: {}", eq.right.homotopy_order());
            if failed {
                return Err("equivalence verification failed".to_string());
            }
            let s = eq.order();
            println!(
                "transfer applies for page levels r > {s}, total windows j-i >= {s}, BD/triple windows k-i > {s}"
            );
            Ok(())
        }
    }
}
