use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linkcolor::coloring::{check_assignment, exists_surjection, exists_two_tone, fox_colorable, Coloring};
use linkcolor::diagram::{generate_pretzel, generate_standard_form, generate_torus_two_strand};
use linkcolor::invariants::{determinant, linking_matrix};
use linkcolor::verify::classify;
use linkcolor::{parse_link_text, Diagram, Modulus};
use linkcolor_cli::config::{parse_range, Config};
use linkcolor_cli::corpus::run_corpus;
use linkcolor_cli::fixtures::{parse_coloring_text, parse_fixtures, parse_ints, parse_standard_spec};
use linkcolor_cli::report::{write_records, write_table};

const EXIT_INCONSISTENT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

/// Dihedral colorings of oriented link diagrams.
#[derive(Parser)]
#[command(name = "linkcolor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the diagram comes from; standard input when neither is given.
#[derive(Args)]
struct Input {
    /// File holding PD text.
    #[arg(long, conflicts_with = "text")]
    input: Option<PathBuf>,
    /// Inline PD text.
    #[arg(long)]
    text: Option<String>,
}

#[derive(Args)]
struct Cap {
    /// Enumeration cap per search (default from LINKCOLOR_CAP).
    #[arg(long)]
    cap: Option<u64>,
}

impl Cap {
    fn get(&self) -> u64 {
        self.cap.unwrap_or_else(linkcolor_cli::config::default_cap)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a diagram and print its canonical PD text.
    Parse(Input),
    /// Generate a diagram.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Components, linking matrix, determinant and invariant factors.
    Invariants(Input),
    /// Fox n-colorability.
    Fox {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
    },
    /// Two-tone colorability and surjections onto D_n or D_inf.
    Dihedral {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "inf", required_unless_present = "inf", value_parser = clap::value_parser!(u64).range(3..))]
        n: Option<u64>,
        #[arg(long)]
        inf: bool,
        #[arg(long, conflicts_with = "surjective")]
        two_tone: bool,
        #[arg(long)]
        surjective: bool,
        /// Omit witness colorings.
        #[arg(long)]
        no_witness: bool,
        #[command(flatten)]
        cap: Cap,
    },
    /// Every verdict over a range of n, plus D_inf, with implication flags.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "3..10")]
        n_range: String,
        #[arg(long, default_value = "link")]
        name: String,
        #[command(flatten)]
        cap: Cap,
    },
    /// Run the verification harness over a fixture corpus.
    Verify {
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// TOML file with n_range, cap and corpus.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n_range: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        cap: Cap,
    },
    /// Check a coloring (as printed by `dihedral`) against a diagram.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        coloring: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Closed two-strand braid with q half twists.
    Torus2 { q: u32 },
    /// Pretzel link from comma-separated twist counts.
    Pretzel {
        #[arg(allow_hyphen_values = true)]
        twists: String,
    },
    /// Round component encircling closure strands: `t1,...,tk[/braid word]`.
    Standard {
        #[arg(allow_hyphen_values = true)]
        spec: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Record,
}

/// A failure mapped to an exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Failure {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }

    fn capacity(message: impl ToString) -> Failure {
        Failure { code: EXIT_CAPACITY, message: message.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn read_diagram(input: &Input) -> Result<Diagram, Failure> {
    let text = match (&input.input, &input.text) {
        (Some(p), _) => std::fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        (None, Some(t)) => t.clone(),
        (None, None) => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(Failure::usage)?;
            s
        }
    };
    parse_link_text(&text).map_err(Failure::usage)
}

fn modulus(n: Option<u64>, inf: bool) -> Modulus {
    match (n, inf) {
        (Some(n), false) => Modulus::Finite(n),
        _ => Modulus::Infinite,
    }
}

fn group_name(m: Modulus) -> String {
    match m {
        Modulus::Finite(n) => format!("D_{n}"),
        Modulus::Infinite => "D_inf".to_string(),
    }
}

fn emit_witness(out: &mut impl Write, d: &Diagram, c: &Coloring) -> io::Result<()> {
    write!(out, "{}", c.render(d))
}

fn gen(family: &Family, out: &mut impl Write) -> Outcome {
    let d = match family {
        Family::Torus2 { q } => generate_torus_two_strand(*q).map_err(Failure::usage)?,
        Family::Pretzel { twists } => {
            generate_pretzel(&parse_ints(twists).map_err(Failure::usage)?).map_err(Failure::usage)?
        }
        Family::Standard { spec } => {
            let sf =
                generate_standard_form(&parse_standard_spec(spec).map_err(Failure::usage)?).map_err(Failure::usage)?;
            let betas: Vec<String> = sf.betas.iter().map(|b| b.0.to_string()).collect();
            eprintln!("round component {}, alpha arc {}, beta arcs {}", sf.round.0, sf.alpha.0, betas.join(","));
            sf.diagram
        }
    };
    writeln!(out, "{d}").map_err(Failure::usage)?;
    Ok(0)
}

fn invariants(d: &Diagram, out: &mut impl Write) -> io::Result<u8> {
    let lk = linking_matrix(d);
    let det = determinant(d);
    writeln!(out, "components {}", d.component_count())?;
    writeln!(out, "crossings {}", d.crossing_count())?;
    writeln!(out, "arcs {}", d.arc_count())?;
    writeln!(out, "linking")?;
    for row in lk.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "  {}", cells.join(" "))?;
    }
    writeln!(out, "determinant {}", det.value)?;
    let factors: Vec<String> = det.divisors.iter().map(ToString::to_string).collect();
    writeln!(out, "invariant factors {}", if factors.is_empty() { "-".to_string() } else { factors.join(" ") })?;
    writeln!(out, "free rank {}", det.free_rank)?;
    Ok(0)
}

fn dihedral(
    d: &Diagram,
    m: Modulus,
    two_tone: bool,
    surjective: bool,
    witness: bool,
    cap: u64,
    out: &mut impl Write,
) -> Outcome {
    let io = Failure::usage;
    if two_tone {
        let v = exists_two_tone(d, m, cap).map_err(Failure::capacity)?;
        let verdict = if v.colorable { "colorable" } else { "not colorable" };
        writeln!(out, "two-tone {}: {verdict}", group_name(m)).map_err(io)?;
        if let Some(o) = v.obstruction.filter(|_| !v.colorable) {
            writeln!(out, "obstruction: {o}").map_err(io)?;
        }
        if let Some(w) = v.witness.filter(|_| witness) {
            emit_witness(out, d, &w).map_err(io)?;
        }
    }
    if surjective {
        let s = exists_surjection(d, m);
        let verdict = if s.is_some() { "exists" } else { "none" };
        writeln!(out, "surjection onto {}: {verdict}", group_name(m)).map_err(io)?;
        if let Some(w) = s.filter(|_| witness) {
            emit_witness(out, d, &w).map_err(io)?;
        }
    }
    Ok(0)
}

fn classify_cmd(d: &Diagram, name: &str, range: &str, cap: u64, out: &mut impl Write) -> Outcome {
    let range = parse_range(range).map_err(Failure::usage)?;
    if *range.start() < 3 {
        return Err(Failure::usage("n_range must start at 3 or above"));
    }
    let r = classify(name, d, range, cap);
    let io = Failure::usage;
    writeln!(out, "{}: {} components, determinant {}", r.name, r.components, r.determinant.value).map_err(io)?;
    writeln!(out, "{:>5} {:>6} {:>8} {:>10}", "n", "fox", "two-tone", "surjection").map_err(io)?;
    let yn = |b: bool| if b { "yes" } else { "no" };
    for row in &r.rows {
        let fox = row.fox.as_ref().map_or("-", |f| yn(f.colorable));
        let tt = match &row.two_tone {
            Ok(w) => yn(w.is_some()),
            Err(_) => "cap",
        };
        writeln!(out, "{:>5} {fox:>6} {tt:>8} {:>10}", row.modulus.to_string(), yn(row.surjection.is_some()))
            .map_err(io)?;
    }
    for f in r.failed_flags() {
        let m = f.modulus.map(|m| format!(" (n={m})")).unwrap_or_default();
        writeln!(out, "FLAG {}{m}: {}", f.name, f.detail).map_err(io)?;
    }
    if r.failed_flags().any(|f| f.name == "capacity") {
        return Ok(EXIT_CAPACITY);
    }
    Ok(if r.consistent() { 0 } else { EXIT_INCONSISTENT })
}

fn verify(
    corpus: Option<PathBuf>,
    config: Option<PathBuf>,
    n_range: Option<String>,
    format: Format,
    out_path: Option<PathBuf>,
    cap: &Cap,
) -> Outcome {
    let mut cfg = match &config {
        Some(p) => Config::load(p).map_err(Failure::usage)?,
        None => Config::default(),
    };
    if let Some(c) = cap.cap {
        cfg.cap = c;
    }
    if let Some(r) = n_range {
        cfg.n_range = parse_range(&r).map_err(Failure::usage)?;
        if *cfg.n_range.start() < 3 {
            return Err(Failure::usage("n_range must start at 3 or above"));
        }
    }
    let path = corpus.or(cfg.corpus.clone()).ok_or_else(|| Failure::usage("no corpus given (--corpus or config)"))?;
    let text = std::fs::read_to_string(&path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let fixtures = parse_fixtures(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let report = run_corpus(&fixtures, &cfg);

    let sink: Box<dyn Write> = match &out_path {
        Some(p) => Box::new(File::create(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let sink = BufWriter::new(sink);
    match format {
        Format::Table => write_table(&report, sink).map_err(Failure::usage)?,
        Format::Record => write_records(&fixtures, &report, sink).map_err(Failure::usage)?,
    }
    for e in report.entries.iter().filter(|e| !e.consistent()) {
        for f in e.failures() {
            eprintln!("{} (line {}): {f}", e.name, e.line);
        }
    }
    if report.capacity_exceeded() {
        return Ok(EXIT_CAPACITY);
    }
    Ok(if report.consistent() { 0 } else { EXIT_INCONSISTENT })
}

fn check(d: &Diagram, coloring: &PathBuf, out: &mut impl Write) -> Outcome {
    let text = std::fs::read_to_string(coloring).map_err(|e| Failure::usage(format!("{}: {e}", coloring.display())))?;
    let claim = parse_coloring_text(&text).map_err(Failure::usage)?;
    let io = Failure::usage;
    let verdict = Coloring::from_elements(d, &claim.elements)
        .map_err(|e| e.to_string())
        .and_then(|_| check_assignment(d, &claim.elements).map_err(|x| format!("relation fails at crossing {x}")));
    match verdict {
        Ok(()) => {
            writeln!(out, "valid").map_err(io)?;
            Ok(0)
        }
        Err(msg) => {
            writeln!(out, "invalid: {msg}").map_err(io)?;
            Ok(EXIT_INCONSISTENT)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Parse(input) => {
            writeln!(out, "{}", read_diagram(&input)?).map_err(Failure::usage)?;
            Ok(0)
        }
        Command::Gen { family } => gen(&family, &mut out),
        Command::Invariants(input) => invariants(&read_diagram(&input)?, &mut out).map_err(Failure::usage),
        Command::Fox { input, n } => {
            let v = fox_colorable(&read_diagram(&input)?, n);
            let verdict = if v.colorable { "colorable" } else { "not colorable" };
            writeln!(out, "fox {n}: {verdict} ({} colorings)", v.count).map_err(Failure::usage)?;
            Ok(0)
        }
        Command::Dihedral { input, n, inf, two_tone, surjective, no_witness, cap } => {
            let d = read_diagram(&input)?;
            let both = !two_tone && !surjective;
            dihedral(&d, modulus(n, inf), two_tone || both, surjective || both, !no_witness, cap.get(), &mut out)
        }
        Command::Classify { input, n_range, name, cap } => {
            classify_cmd(&read_diagram(&input)?, &name, &n_range, cap.get(), &mut out)
        }
        Command::Verify { corpus, config, n_range, format, out: out_path, cap } => {
            drop(out);
            verify(corpus, config, n_range, format, out_path, &cap)
        }
        Command::Check { input, coloring } => check(&read_diagram(&input)?, &coloring, &mut out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
