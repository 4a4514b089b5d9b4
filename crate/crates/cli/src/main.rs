//! `subfan`: command line front end.

mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subfan::complex::SubwordComplex;
use subfan::counting::{
    a4_sign_row, check_signature_inequalities, closed_form_counting, oriented_signature_report,
    param_counting, restricted_matrix, signature_report, signature_report_on, A4SignRow, ParamSet,
    SignatureReport,
};
use subfan::coxeter::{
    braid_graph_from, contracted_bipartite, stabled_classes, CoxeterGroup, GroupElement, Word,
};
use subfan::fan::{builtin_rays, check_complete, covering_numbers, fold_to_b2, RayFamily};
use subfan::regularity::{
    cache_dir, check_regular, obstruction_survey, run_survey, verify_certificate, SurveySpec,
    CACHE_ENV,
};
use subfan_linalg::RationalMatrix;

use spec::{load_matrix, FanSource, Problem};

#[derive(Parser)]
#[command(
    name = "subfan",
    version,
    about = "Fans of subword complexes on powers of Coxeter elements"
)]
struct Cli {
    /// Worker threads for facet enumeration, signature reports and surveys.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for sampled points and parameters.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Printed,
}

#[derive(Subcommand)]
enum Command {
    /// Counting matrix of c^m, restricted to an embedding when --word is given.
    CountingMatrix {
        #[command(flatten)]
        problem: Problem,
        /// Use the closed-form A3 matrices.
        #[arg(long)]
        closed_form: bool,
        /// Parametric matrix from a parameter JSON file instead.
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Gale dual ray matrix (columns are rays).
    Gale {
        #[command(flatten)]
        problem: Problem,
        /// Built-in closed form: m213, m123, m12, a2, a1.
        #[arg(long)]
        family: Option<String>,
        /// Print the transpose (one ray per row).
        #[arg(long)]
        transpose: bool,
        /// Normalize so that the columns at these 1-based positions are the identity.
        #[arg(long, value_delimiter = ',')]
        normalize_at: Option<Vec<usize>>,
    },
    /// Facets of a subword complex.
    Facets {
        #[command(flatten)]
        problem: Problem,
    },
    /// f-vector of a subword complex.
    Fvector {
        #[command(flatten)]
        problem: Problem,
    },
    /// Signed determinant counts of a matrix over the reduced subwords of a word.
    Signature {
        #[command(flatten)]
        problem: Problem,
        /// Matrix file (JSON or CSV) instead of the counting matrix.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Parametric counting matrix from a parameter JSON file.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Draw this many parameter sets satisfying the linear inequalities.
        #[arg(long)]
        random_params: Option<usize>,
    },
    /// Fan JSON for a word and embedding, a built-in family or an explicit A4 fan.
    BuildFan {
        #[command(flatten)]
        source: FanSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Basis, flip and injectivity checks.
    CheckFan {
        #[command(flatten)]
        source: FanSource,
        /// Generic points at which to count covering cones.
        #[arg(long, default_value_t = 0)]
        points: usize,
    },
    /// Regularity verdict with a verified certificate.
    CheckRegular {
        #[command(flatten)]
        source: FanSource,
    },
    /// Regularity survey over embeddings of the words c^k w0(c) up to commutation.
    Survey(SurveyArgs),
    /// Signature counts for A4, c = 2413, Q = c^k w0(c).
    A4Table {
        /// Values of k (comma separated).
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2, 3])]
        k: Vec<usize>,
    },
    /// Braid graph of the reduced words of w0, with bipartiteness reports.
    BraidGraph {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "A")]
        group: String,
        /// Generator pairs to contract, e.g. "1-3,2-4".
        #[arg(long)]
        contract: Option<String>,
        /// Print the bipartiteness report instead of the graph.
        #[arg(long)]
        report: bool,
    },
    /// M_{12,m} obtained by folding the A3 blocks.
    FoldB2 {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args)]
struct SurveyArgs {
    #[arg(long)]
    rank: usize,
    /// Coxeter element of the word c^k w0(c).
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    m_min: usize,
    #[arg(long)]
    m_max: usize,
    /// Coxeter element of the ambient word; defaults to c.
    #[arg(long)]
    target: Option<String>,
    /// Maximum number of new jobs in this run.
    #[arg(long)]
    limit: Option<usize>,
    /// Directory for the CSV and cursor file.
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Survey Obs(A3) and its single-letter deletions in c^m (m = m_max) instead.
    #[arg(long)]
    obstruction: bool,
}

/// Error carrying an exit code.
enum Failure {
    Violated(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<subfan::SubfanError> for Failure {
    fn from(e: subfan::SubfanError) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violated(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn violated_if(bad: bool, msg: impl Into<String>) -> Outcome {
    if bad {
        Err(Failure::Violated(msg.into()))
    } else {
        Ok(())
    }
}

fn print_json(v: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("json serializes")
    );
}

fn emit_matrix(m: &RationalMatrix, format: Format) {
    match format {
        Format::Json => println!("{}", m.to_json()),
        Format::Csv => print!("{}", m.to_csv()),
        Format::Printed => {
            let text = m.to_printed();
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::CountingMatrix {
            problem,
            closed_form,
            params,
        } => {
            let format = cli.format.unwrap_or(Format::Printed);
            if let Some(path) = params {
                let c = problem.coxeter_element()?;
                let p = read_params(path)?;
                emit_matrix(&param_counting(&c, &p)?, format);
                return Ok(());
            }
            let (d, embedded) = if *closed_form {
                let c = problem.coxeter_element()?;
                (closed_form_counting(&c, problem.require_m()?)?, None)
            } else {
                problem.counting()?
            };
            match (embedded, format) {
                (Some(phi), _) => emit_matrix(&restricted_matrix(&d, &phi)?, format),
                (None, Format::Json) => print_json(&d.to_json()),
                (None, _) => emit_matrix(&d.matrix, format),
            }
            Ok(())
        }
        Command::Gale {
            problem,
            family,
            transpose,
            normalize_at,
        } => {
            let mut m = match family {
                Some(f) => builtin_rays(RayFamily::parse(f)?, problem.require_m()?)?,
                None => problem
                    .gale_pair()?
                    .1
                    .kernel_basis()
                    .map_err(subfan::SubfanError::from)?,
            };
            if let Some(pos) = normalize_at {
                let zero_based: Vec<usize> = pos
                    .iter()
                    .map(|p| p.checked_sub(1).context("positions are 1-based"))
                    .collect::<Result<_>>()?;
                let facet = subfan::complex::PositionSet::from_positions(&zero_based)?;
                m = subfan::fan::gale_normalize(&m, facet)?;
            }
            if *transpose {
                m = m.transpose();
            }
            emit_matrix(&m, cli.format.unwrap_or(Format::Printed));
            Ok(())
        }
        Command::Facets { problem } => {
            let complex = problem.complex()?;
            match cli.format.unwrap_or(Format::Printed) {
                Format::Json => print_json(&complex.to_json()),
                _ => print!("{}", complex.to_facet_text()),
            }
            Ok(())
        }
        Command::Fvector { problem } => {
            let f = problem.complex()?.f_vector();
            match cli.format.unwrap_or(Format::Printed) {
                Format::Json => print_json(&serde_json::json!({ "f_vector": f.entries() })),
                Format::Csv => print!("{}", f.to_csv()),
                Format::Printed => println!("{f}"),
            }
            Ok(())
        }
        Command::Signature {
            problem,
            matrix,
            params,
            random_params,
        } => signature(cli, problem, matrix, params, *random_params),
        Command::BuildFan { source, out } => {
            let (fan, _) = source.resolve()?;
            let text = serde_json::to_string_pretty(&fan.to_json()).expect("json serializes");
            match out {
                Some(path) => std::fs::write(path, text + "\n")
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{text}"),
            }
            Ok(())
        }
        Command::CheckFan { source, points } => {
            let (fan, d) = source.resolve()?;
            let report = check_complete(&fan, d.as_ref())?;
            let mut v = serde_json::to_value(&report).expect("report serializes");
            v["signature_ok"] = report.signature_ok().into();
            if *points > 0 && report.complete {
                let counts = covering_numbers(&fan, *points, cli.seed)?;
                v["covering_numbers_all_one"] = counts.iter().all(|&c| c == 1).into();
                v["covering_points"] = (*points).into();
            }
            match cli.format.unwrap_or(Format::Json) {
                Format::Csv => {
                    println!("basis,flip,injective,signature,complete,walls");
                    println!(
                        "{},{},{},{},{},{}",
                        report.basis_ok,
                        report.flip_ok,
                        report.injective_ok,
                        report.signature_ok(),
                        report.complete,
                        report.wall_count
                    );
                }
                _ => print_json(&v),
            }
            let covered = v
                .get("covering_numbers_all_one")
                .and_then(|b| b.as_bool())
                .unwrap_or(true);
            violated_if(!report.complete || !covered, "fan is not complete")
        }
        Command::CheckRegular { source } => {
            let (fan, d) = source.resolve()?;
            let report = check_complete(&fan, d.as_ref())?;
            if !report.complete {
                return Err(Failure::Violated(
                    "fan is not complete; regularity is undefined".into(),
                ));
            }
            let result = check_regular(&fan, &report)?;
            let verified = verify_certificate(&fan, &result)?;
            if !verified {
                return Err(Failure::Input(anyhow::anyhow!(
                    "certificate failed verification"
                )));
            }
            let mut v = result.to_json();
            v["certificate_verified"] = verified.into();
            match cli.format.unwrap_or(Format::Json) {
                Format::Csv => {
                    println!("regular,walls,verified");
                    println!("{},{},{}", result.is_regular(), result.wall_count, verified);
                }
                _ => print_json(&v),
            }
            violated_if(!result.is_regular(), "fan is not regular")
        }
        Command::Survey(args) => survey(cli, args),
        Command::A4Table { k } => {
            let rows: Vec<A4SignRow> = k
                .iter()
                .map(|&k| a4_sign_row(k))
                .collect::<subfan::Result<_>>()?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Json => print_json(&serde_json::json!(rows
                    .iter()
                    .map(|r| serde_json::json!({
                        "k": r.k, "good": r.report.good, "bad": r.report.bad,
                        "zero": r.report.zero, "total": r.report.total,
                    }))
                    .collect::<Vec<_>>())),
                _ => {
                    println!("{}", A4SignRow::CSV_HEADER);
                    rows.iter().for_each(|r| println!("{}", r.csv_row()));
                }
            }
            Ok(())
        }
        Command::BraidGraph {
            rank,
            group,
            contract,
            report,
        } => {
            let group = spec::parse_group(group, *rank)?;
            let seed = match group {
                CoxeterGroup::A(n) => GroupElement::longest(n).reduced_word(),
                CoxeterGroup::B2 => Word::parse(2, "1212")?,
            };
            let graph = braid_graph_from(group, seed);
            if *report {
                let pairs = match contract {
                    Some(s) => spec::parse_pairs(s)?,
                    None => Vec::new(),
                };
                let r = contracted_bipartite(&graph, &pairs);
                let mut v = serde_json::json!({
                    "vertices": graph.vertices.len(),
                    "edges": graph.edges.len(),
                    "connected": graph.is_connected(),
                    "contracted": contract,
                    "bipartite": r.is_bipartite,
                    "stabled": r.stabled,
                    "cycle_basis_size": graph.cycle_basis().len(),
                });
                if let Some(cycle) = &r.odd_cycle {
                    v["odd_cycle_length"] = cycle.edges.len().into();
                }
                if let CoxeterGroup::A(n) = group {
                    let classes = stabled_classes(n);
                    v["stabled_odd"] = pairs_json(&classes.odd);
                    v["stabled_even"] = pairs_json(&classes.even);
                }
                print_json(&v);
                return violated_if(!r.is_bipartite, "contracted graph is not bipartite");
            }
            match cli.format.unwrap_or(Format::Printed) {
                Format::Json => print_json(&graph.to_json()),
                _ => print!("{}", graph.to_dot()),
            }
            Ok(())
        }
        Command::FoldB2 { m } => {
            let folded = fold_to_b2(*m)?;
            emit_matrix(&folded, cli.format.unwrap_or(Format::Printed));
            let closed = builtin_rays(RayFamily::M12, *m)?;
            violated_if(
                folded != closed,
                "folded matrix differs from the closed form M_12",
            )
        }
    }
}

fn read_params(path: &PathBuf) -> Result<ParamSet> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: serde_json::Value = serde_json::from_str(&text).context("parameter file is not JSON")?;
    Ok(ParamSet::from_json(&v)?)
}

fn pairs_json(pairs: &[(u8, u8)]) -> serde_json::Value {
    pairs
        .iter()
        .map(|(i, j)| format!("{i}-{j}"))
        .collect::<Vec<_>>()
        .into()
}

fn signature_json(r: &SignatureReport) -> serde_json::Value {
    serde_json::json!({
        "good": r.good, "bad": r.bad, "zero": r.zero, "total": r.total,
        "offenders": r.offenders.iter().take(20).map(|o| serde_json::json!({
            "positions": o.positions, "word": o.word, "sign": o.sign, "det": o.det.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn signature(
    cli: &Cli,
    problem: &Problem,
    matrix: &Option<PathBuf>,
    params: &Option<PathBuf>,
    random_params: Option<usize>,
) -> Outcome {
    let format = cli.format.unwrap_or(Format::Csv);
    if let Some(count) = random_params {
        let c = problem.coxeter_element()?;
        let m = problem.require_m()?;
        let complex = SubwordComplex::type_a(c.power(m))?;
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let mut failures = 0;
        if format == Format::Csv {
            println!("sample,{}", SignatureReport::CSV_HEADER);
        }
        for i in 0..count {
            let p = ParamSet::random_valid(&c, m, &mut rng)?;
            let r = signature_report_on(&param_counting(&c, &p)?, &complex, 1)?;
            failures += usize::from(!r.is_signature());
            match format {
                Format::Json => print_json(
                    &serde_json::json!({ "sample": i, "params": p.to_json(), "report": signature_json(&r) }),
                ),
                _ => println!("{i},{}", r.csv_row()),
            }
        }
        return violated_if(
            failures > 0,
            format!("{failures} of {count} samples are not signature matrices"),
        );
    }
    if let Some(path) = params {
        let c = problem.coxeter_element()?;
        let p = read_params(path)?;
        let ineq = check_signature_inequalities(&c, &p)?;
        let q = c.power(p.m());
        let r = signature_report(&param_counting(&c, &p)?, &q)?;
        let mut v = signature_json(&r);
        v["inequalities_hold"] = ineq.holds.into();
        v["violated"] = ineq.violated.clone().into();
        match format {
            Format::Json => print_json(&v),
            _ => {
                println!("{},inequalities", SignatureReport::CSV_HEADER);
                println!("{},{}", r.csv_row(), ineq.holds);
            }
        }
        return violated_if(
            !r.is_signature() || !ineq.holds,
            "parameters do not give a signature matrix",
        );
    }
    let (q, d) = match matrix {
        Some(path) => (problem.word()?, load_matrix(path)?),
        None => problem.gale_pair()?,
    };
    let (r, orientation) = oriented_signature_report(&d, &q)?;
    match format {
        Format::Json => {
            let mut v = signature_json(&r);
            v["orientation"] = orientation.into();
            print_json(&v);
        }
        _ => {
            println!("{},orientation", SignatureReport::CSV_HEADER);
            println!("{},{orientation}", r.csv_row());
        }
    }
    violated_if(!r.is_signature(), "matrix is not a signature matrix")
}

fn survey(cli: &Cli, args: &SurveyArgs) -> Outcome {
    let c = match &args.c {
        Some(c) => Word::parse(args.rank, c)?,
        None => spec::default_coxeter(args.rank)?,
    };
    if args.obstruction {
        if args.rank != 3 {
            return Err(Failure::Input(anyhow!(
                "the obstruction survey is defined in rank 3"
            )));
        }
        let rows = obstruction_survey(&c, args.m_max, args.limit.unwrap_or(50))?;
        match cli.format.unwrap_or(Format::Csv) {
            Format::Json => print_json(&serde_json::to_value(&rows).expect("rows serialize")),
            _ => {
                println!("deleted,word,spherical,tested,regular,non_regular,incomplete");
                for r in &rows {
                    let d = r.deleted.map_or_else(String::new, |d| d.to_string());
                    let t = r.tally;
                    println!(
                        "{d},{},{},{},{},{},{}",
                        r.word, r.spherical, r.tested, t.regular, t.non_regular, t.incomplete
                    );
                }
            }
        }
        return Ok(());
    }
    let k = args.k.context("--k is required")?;
    let mut spec = SurveySpec::new(c, k, args.m_max);
    spec.m_min = args.m_min;
    if let Some(t) = &args.target {
        spec.target = Word::parse(args.rank, t)?;
    }
    let dir = args.cache_dir.clone().unwrap_or_else(cache_dir);
    let run = run_survey(&spec, &dir, args.limit)?;
    let v = serde_json::json!({
        "survey": spec.key(),
        "csv": run.csv.display().to_string(),
        "cursor": run.cursor.display().to_string(),
        "new_rows": run.new_rows,
        "finished": run.finished,
        "regular": run.tally.regular,
        "non_regular": run.tally.non_regular,
        "incomplete": run.tally.incomplete,
    });
    match cli.format.unwrap_or(Format::Json) {
        Format::Csv => {
            println!("survey,regular,non_regular,incomplete,finished");
            println!(
                "{},{},{},{},{}",
                spec.key(),
                run.tally.regular,
                run.tally.non_regular,
                run.tally.incomplete,
                run.finished
            );
        }
        _ => print_json(&v),
    }
    Ok(())
}
