//! `empathica`: solve empathized one-shot games, map the equilibrium
//! regions of the weight plane, score IRI sheets, run the study's
//! statistics, and replicate the published tables.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or schema error, 3 internal
//! invariant violation.

use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use empathica::bimatrix::{self, Action, EquilibriumSet, Game2x2, Strictness};
use empathica::empathy::{
    classify_region_with, empathize_game, region_grid, BasePayoffs, EmpathyPair, Rect,
    RegionLabel,
};
use empathica::iri::{
    self, classify, score, Imputation, MembershipLabels, SheetRecord, ThresholdPolicy,
};
use empathica::stats::{
    format_sig, marginal_cooperation, pearson, theil_sen, ContingencyTable, PairedSample,
    TheilSenMode,
};
use empathica::study::{load_corpus, replicate, CorpusSource, ParticipantId};

#[derive(Parser)]
#[command(
    name = "empathica",
    version,
    about = "Empathy-weighted one-shot prisoner dilemma toolkit"
)]
struct Cli {
    /// Significant digits for numeric output.
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the empathized game at one point of the weight plane.
    Solve {
        /// Game JSON file, or "default-pd" for the questionnaire payoffs.
        #[arg(long, default_value = "default-pd")]
        game: String,
        /// Weight of player 1 on player 2; decimal or exact fraction like 2/3.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda12: String,
        /// Weight of player 2 on player 1.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda21: String,
    },
    /// Render the equilibrium region map over a square of the weight plane.
    Regions {
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        min: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        max: f64,
        /// Cells per axis.
        #[arg(long, default_value_t = 100)]
        resolution: usize,
        /// Output path; the extension picks the format (.csv or .svg).
        #[arg(long)]
        out: PathBuf,
    },
    /// Score IRI response sheets and classify scale membership.
    Score {
        /// Response sheets (.csv with item_1..item_28 columns, or .json).
        #[arg(long)]
        responses: PathBuf,
        /// Ground-truth membership labels; adds a labeled column.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run one statistic over a file input.
    Stats {
        #[arg(long)]
        op: StatsOp,
        #[arg(long)]
        input: PathBuf,
        /// Column holding x values (pearson and theilsen).
        #[arg(long)]
        x: Option<String>,
        /// Column holding y values (pearson and theilsen).
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Regenerate the study's tables beside the published figures.
    Replicate {
        /// Write the Markdown report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the flat CSV comparison table.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsOp {
    Pearson,
    Theilsen,
    Marginal,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Internal(m) => m,
        }
    }
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

fn data(m: impl std::fmt::Display) -> CliError {
    CliError::Data(m.to_string())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let sig = cli.precision.clamp(1, 17);
    match cli.command {
        Command::Solve {
            game,
            lambda12,
            lambda21,
        } => cmd_solve(&game, &lambda12, &lambda21, sig),
        Command::Regions {
            min,
            max,
            resolution,
            out,
        } => cmd_regions(min, max, resolution, &out, sig),
        Command::Score {
            responses,
            labels,
            json,
        } => cmd_score(&responses, labels.as_deref(), json, sig),
        Command::Stats { op, input, x, y, json } => cmd_stats(op, &input, x, y, json, sig),
        Command::Replicate { out, csv } => cmd_replicate(out.as_deref(), csv.as_deref()),
    }
}

/// Parse a weight given as a decimal or an exact fraction `p/q`.
fn parse_lambda(text: &str) -> Result<BigRational, CliError> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let p: i64 = num
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad fraction numerator in {text:?}")))?;
        let q: i64 = den
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad fraction denominator in {text:?}")))?;
        if q == 0 {
            return Err(usage(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(BigInt::from(p), BigInt::from(q)));
    }
    let value: f64 = text
        .parse()
        .map_err(|_| usage(format!("cannot parse weight {text:?}")))?;
    if !value.is_finite() {
        return Err(usage(format!("weight {text:?} is not finite")));
    }
    Ok(BigRational::from_float(value).expect("finite"))
}

fn load_game(source: &str) -> Result<(Game2x2, Option<BasePayoffs>), CliError> {
    if source == "default-pd" {
        let base = BasePayoffs::default();
        return Ok((base.to_game(), Some(base)));
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| data(format!("cannot read {source}: {e}")))?;
    let game = Game2x2::from_json_str(&text).map_err(data)?;
    let base = game.symmetric_form().map(|s| BasePayoffs {
        cc: s.reward,
        sucker: s.sucker,
        temptation: s.temptation,
        nn: s.punishment,
    });
    Ok((game, base))
}

fn equilibrium_lines(eq: &EquilibriumSet, sig: usize) -> Vec<String> {
    let mut lines = Vec::new();
    let pure: Vec<String> = eq.pure.iter().map(|(a, b)| format!("({a},{b})")).collect();
    let unique = pure.len() == 1 && eq.mixed.is_empty() && !eq.mixed_continuum;
    lines.push(match (pure.is_empty(), unique) {
        (true, _) => "pure equilibria: none".to_string(),
        (false, true) => format!("pure equilibria: {} unique", pure[0]),
        (false, false) => format!("pure equilibria: {}", pure.join(" ")),
    });
    if eq.mixed_continuum {
        lines.push("mixed equilibria: continuum (degenerate game)".to_string());
    } else if eq.mixed.is_empty() {
        lines.push("mixed equilibria: none".to_string());
    } else {
        for m in &eq.mixed {
            lines.push(format!(
                "mixed equilibrium: p1={} p2={} (cooperation probabilities)",
                format_sig(m.p1, sig),
                format_sig(m.p2, sig)
            ));
        }
    }
    let describe = |d: Option<bimatrix::Dominance>| match d {
        Some(d) => format!(
            "{} ({})",
            d.action,
            match d.strictness {
                Strictness::Strict => "strict",
                Strictness::Weak => "weak",
            }
        ),
        None => "none".to_string(),
    };
    lines.push(format!(
        "dominance: player 1: {}; player 2: {}",
        describe(eq.dominant[0]),
        describe(eq.dominant[1])
    ));
    lines
}

fn summary_line(eq: &EquilibriumSet) -> Option<String> {
    if eq.pure.len() != 1 || !eq.mixed.is_empty() || eq.mixed_continuum {
        return None;
    }
    let (a, b) = eq.pure[0];
    let mut line = format!("({a},{b}) unique");
    if let [Some(d1), Some(d2)] = eq.dominant {
        if d1.action == d2.action && d1.strictness == d2.strictness {
            let strength = match d1.strictness {
                Strictness::Strict => "strictly",
                Strictness::Weak => "weakly",
            };
            line.push_str(&format!("; {} {strength} dominant for both", d1.action));
        }
    }
    Some(line)
}

fn cmd_solve(game_source: &str, l12: &str, l21: &str, sig: usize) -> Result<(), CliError> {
    let (game, base) = load_game(game_source)?;
    let pair = EmpathyPair::from_exact(parse_lambda(l12)?, parse_lambda(l21)?);
    let transformed = empathize_game(&game, &pair);

    println!(
        "weights: lambda12={} lambda21={}",
        format_sig(pair.lambda12(), sig),
        format_sig(pair.lambda21(), sig)
    );
    println!("empathized payoffs (player 1, player 2):");
    let cell = |a1: Action, a2: Action| {
        let (u1, u2) = transformed.payoff_pair(a1, a2);
        format!("({}, {})", format_sig(u1, sig), format_sig(u2, sig))
    };
    let cc = cell(Action::C, Action::C);
    let cn = cell(Action::C, Action::N);
    let nc = cell(Action::N, Action::C);
    let nn = cell(Action::N, Action::N);
    let width = [&cc, &nc].iter().map(|s| s.len()).max().unwrap() + 3;
    println!("      {:1$}N", "C", width + 1);
    println!("  C   {cc:width$}{cn}");
    println!("  N   {nc:width$}{nn}");

    let equilibria = match &base {
        Some(base) => match classify_region_with(base, &pair) {
            Ok(classification) => {
                let eq = classification.equilibria.clone();
                for line in equilibrium_lines(&eq, sig) {
                    println!("{line}");
                }
                let mut region = format!("region: {}", classification.label);
                if !classification.adjacent.is_empty() {
                    let adj: Vec<&str> =
                        classification.adjacent.iter().map(|l| l.as_str()).collect();
                    region.push_str(&format!(" (adjacent: {})", adj.join(", ")));
                }
                println!("{region}");
                println!(
                    "thresholds: low={} high={}",
                    format_sig(classification.thresholds.0, sig),
                    format_sig(classification.thresholds.1, sig)
                );
                if classification.outside_plot_range {
                    println!("note: weights fall outside the plotted square [-1,1]^2");
                }
                eq
            }
            Err(e) => {
                let eq = bimatrix::analyze(&transformed);
                for line in equilibrium_lines(&eq, sig) {
                    println!("{line}");
                }
                println!("region: n/a ({e})");
                eq
            }
        },
        None => {
            let eq = bimatrix::analyze(&transformed);
            for line in equilibrium_lines(&eq, sig) {
                println!("{line}");
            }
            println!("region: n/a (asymmetric game)");
            eq
        }
    };
    if let Some(summary) = summary_line(&equilibria) {
        println!("summary: {summary}");
    }
    Ok(())
}

fn cmd_regions(
    min: f64,
    max: f64,
    resolution: usize,
    out: &Path,
    sig: usize,
) -> Result<(), CliError> {
    let grid = region_grid(Rect::square(min, max), (resolution, resolution))
        .map_err(|e| usage(e.to_string()))?;
    let rendered = match out.extension().and_then(|e| e.to_str()) {
        Some("csv") => grid.to_csv(sig),
        Some("svg") => grid.to_svg(),
        _ => return Err(usage("--out must end in .csv or .svg")),
    };
    std::fs::write(out, rendered).map_err(|e| data(format!("cannot write {}: {e}", out.display())))?;
    let boundary_cells = grid
        .cells
        .iter()
        .filter(|c| c.label == RegionLabel::Boundary)
        .count();
    println!(
        "wrote {} ({}x{} cells, {} on a boundary line)",
        out.display(),
        grid.nx,
        grid.ny,
        boundary_cells
    );
    Ok(())
}

fn cmd_score(
    responses: &Path,
    labels: Option<&Path>,
    json: bool,
    sig: usize,
) -> Result<(), CliError> {
    let sheets: Vec<SheetRecord> = match responses.extension().and_then(|e| e.to_str()) {
        Some("json") => {
            let text = std::fs::read_to_string(responses)
                .map_err(|e| data(format!("cannot read {}: {e}", responses.display())))?;
            iri::sheets_from_json_str(&text).map_err(data)?
        }
        _ => iri::sheets_from_csv(responses).map_err(data)?,
    };
    let labels = match labels {
        Some(path) => Some(MembershipLabels::from_json_path(path).map_err(data)?),
        None => None,
    };

    let mut entries = Vec::new();
    for record in &sheets {
        let scores = score(&record.sheet, Imputation::SubscaleMean).map_err(data)?;
        let membership = classify(&scores, ThresholdPolicy::default());
        let labeled = labels.as_ref().and_then(|l| {
            record
                .participant_id
                .parse::<ParticipantId>()
                .ok()
                .and_then(|id| l.lookup(id.gender, id.index))
        });
        entries.push((record, scores, membership, labeled));
    }

    if json {
        let array: Vec<serde_json::Value> = entries
            .iter()
            .map(|(record, scores, membership, labeled)| {
                serde_json::json!({
                    "participant_id": record.participant_id,
                    "gender": record.gender.code(),
                    "scores": { "pt": scores.pt, "ec": scores.ec, "fs": scores.fs, "pd": scores.pd },
                    "membership": membership.key(),
                    "labeled_membership": labeled.map(|m| m.key()),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&array).expect("serializes"));
        return Ok(());
    }

    let label_header = if labels.is_some() { "  labeled" } else { "" };
    println!("participant  gender  pt  ec  fs  pd  membership{label_header}");
    for (record, scores, membership, labeled) in &entries {
        let mut line = format!(
            "{:<12} {:<7} {:>3} {:>3} {:>3} {:>3}  {}",
            record.participant_id,
            record.gender.code(),
            format_sig(scores.pt, sig),
            format_sig(scores.ec, sig),
            format_sig(scores.fs, sig),
            format_sig(scores.pd, sig),
            membership.key(),
        );
        if labels.is_some() {
            line.push_str(&format!(
                "  {}",
                labeled.map(|m| m.key()).unwrap_or_else(|| "-".to_string())
            ));
        }
        println!("{line}");
    }
    Ok(())
}

fn cmd_stats(
    op: StatsOp,
    input: &Path,
    x: Option<String>,
    y: Option<String>,
    json: bool,
    sig: usize,
) -> Result<(), CliError> {
    match op {
        StatsOp::Pearson | StatsOp::Theilsen => {
            let x = x.ok_or_else(|| usage("--x <column> is required for this op"))?;
            let y = y.ok_or_else(|| usage("--y <column> is required for this op"))?;
            let sample = PairedSample::from_csv(input, &x, &y).map_err(data)?;
            let (name, value) = match op {
                StatsOp::Pearson => ("pearson", pearson(&sample).map_err(data)?),
                StatsOp::Theilsen => (
                    "theilsen",
                    theil_sen(&sample, TheilSenMode::Strict).map_err(data)?,
                ),
                StatsOp::Marginal => unreachable!(),
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "op": name, "n": sample.len(), "value": value })
                );
            } else {
                println!("{}", format_sig(value, sig));
            }
        }
        StatsOp::Marginal => {
            let table = read_contingency(input)?;
            let marginal = marginal_cooperation(&table).map_err(data)?;
            let value = *marginal.numer() as f64 / *marginal.denom() as f64;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "op": "marginal",
                        "numerator": marginal.numer(),
                        "denominator": marginal.denom(),
                        "value": value,
                    })
                );
            } else {
                println!("{}", format_sig(value, sig));
            }
        }
    }
    Ok(())
}

/// Contingency input: JSON `{"cc":..,"cn":..,"nc":..,"nn":..}` or a CSV with
/// those four columns, counts indexed by player 1's action first.
fn read_contingency(input: &Path) -> Result<ContingencyTable, CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| data(format!("cannot read {}: {e}", input.display())))?;
    if input.extension().and_then(|e| e.to_str()) == Some("json") {
        return serde_json::from_str(&text).map_err(data);
    }
    let mut lines = text.lines();
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| data("empty contingency file"))?
        .split(',')
        .map(str::trim)
        .collect();
    let row: Vec<&str> = lines
        .next()
        .ok_or_else(|| data("contingency CSV needs one data row"))?
        .split(',')
        .map(str::trim)
        .collect();
    let get = |name: &str| -> Result<u64, CliError> {
        let i = header
            .iter()
            .position(|h| *h == name)
            .ok_or_else(|| data(format!("missing column {name:?}")))?;
        row.get(i)
            .ok_or_else(|| data("short contingency row"))?
            .parse()
            .map_err(|_| data(format!("bad count in column {name:?}")))
    };
    Ok(ContingencyTable::new(
        get("cc")?,
        get("cn")?,
        get("nc")?,
        get("nn")?,
    ))
}

fn cmd_replicate(out: Option<&Path>, csv: Option<&Path>) -> Result<(), CliError> {
    let source = match std::env::var_os("EMPATHICA_CORPUS") {
        Some(dir) => CorpusSource::Dir(PathBuf::from(dir)),
        None => CorpusSource::Embedded,
    };
    let corpus = load_corpus(&source).map_err(data)?;
    let report = replicate(&corpus);
    let markdown = report.to_markdown();
    match out {
        Some(path) => {
            std::fs::write(path, &markdown)
                .map_err(|e| data(format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {}", path.display());
        }
        None => print!("{markdown}"),
    }
    if let Some(path) = csv {
        std::fs::write(path, report.to_csv())
            .map_err(|e| data(format!("cannot write {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
    }
    // A mismatch in the frequency or distribution sections would mean the
    // embedded corpus and pipeline disagree with themselves.
    let broken = report
        .rows
        .iter()
        .filter(|r| r.section == "cooperation-frequencies" || r.section == "partial-confession-marginal")
        .any(|r| r.status.as_str() == "MISMATCH");
    if broken {
        return Err(CliError::Internal(
            "replication of exactly-derivable tables failed".to_string(),
        ));
    }
    Ok(())
}
