use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use loopcut::analysis::{gap_records, limit_set_dimension, render_gaps, LimitSetModel, BIRMAN_SERIES_LEVELS, LIMIT_SET_LEVELS};
use loopcut::cutting::expansion::DEFAULT_BUDGET;
use loopcut::cutting::{Cutter, PointClass, Terminal};
use loopcut::exact::BoundaryPoint;
use loopcut::surface::{load_surface, SurfaceGroup};
use loopcut::topology::filling_prefix;
use loopcut::{Error, Result};
use serde_json::json;

/// Exact reports on cusp directions of a once-punctured torus.
///
/// Every command prints line-delimited JSON records. Exit status is 0 on success,
/// 2 when a point is unresolved or not filling, and 1 on errors.
#[derive(Parser)]
#[command(name = "loopcut", version)]
struct Cli {
    /// Surface configuration file; the modular torus when omitted.
    #[arg(long, global = true)]
    surface: Option<PathBuf>,
    /// Seed for randomized drivers; every current command is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Records,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Set {
    BirmanSeries,
    LimitSet,
}

#[derive(Subcommand)]
enum Command {
    /// Gaps at the cusp at infinity with shortcut words of length at most `depth`.
    Gaps {
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "records")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locates a point among the gaps at a cusp.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value = "inf", allow_hyphen_values = true)]
        base: String,
        /// Slope-norm budget of the gap search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Derived sequence of a point.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        max_steps: usize,
        /// Write the step records here instead of standard output.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Shortest filling prefix of a point's derived arcs.
    Fill {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        depth: usize,
    },
    /// Wandering certificate against twist classes of length at most `mcg-bound`.
    Wander {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        mcg_bound: usize,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Gap widths per simple closed geodesic.
    Mcshane {
        #[arg(long)]
        depth: usize,
    },
    /// Box-counting dimension estimates.
    Dim {
        #[arg(long, value_enum)]
        set: Set,
        /// Gap budget for the Birman-Series set.
        #[arg(long)]
        depth: Option<usize>,
        /// Homology slope `p/q` of the simple closed geodesic.
        #[arg(long, allow_hyphen_values = true)]
        slope: Option<String>,
        #[arg(long)]
        word_depth: Option<usize>,
        /// Dyadic levels as `lo..hi`, boxes of width `c/2^k`.
        #[arg(long)]
        levels: Option<String>,
        #[arg(long, default_value_t = 1)]
        periods: u32,
    },
    /// Vector graphic of the gaps over one period.
    Render {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Outcome {
    Done,
    Undecided,
}

fn point(s: &str) -> Result<BoundaryPoint> {
    s.parse()
}

fn slope(s: &str) -> Result<(i64, i64)> {
    let (p, q) = s.split_once(['/', ',']).ok_or_else(|| Error::Parse(s.to_string()))?;
    let p = p.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
    let q = q.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
    Ok((p, q))
}

fn levels(s: Option<&str>, default: std::ops::RangeInclusive<u32>) -> Result<std::ops::RangeInclusive<u32>> {
    let Some(s) = s else { return Ok(default) };
    let (lo, hi) = s.split_once("..").ok_or_else(|| Error::Parse(s.to_string()))?;
    let lo: u32 = lo.parse().map_err(|_| Error::Parse(s.to_string()))?;
    let hi: u32 = hi.trim_start_matches('=').parse().map_err(|_| Error::Parse(s.to_string()))?;
    if lo >= hi || hi > 40 {
        return Err(Error::Parse(s.to_string()));
    }
    Ok(lo..=hi)
}

fn line(out: &mut impl Write, value: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string(value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Outcome> {
    let surface = match &cli.surface {
        Some(path) => load_surface(path)?,
        None => SurfaceGroup::modular_torus(),
    };
    let cutter = Cutter::new(surface);
    let s = cutter.surface();
    match cli.command {
        Command::Gaps { depth, format, out: path } => {
            let mut text = Vec::new();
            match format {
                Format::Records => {
                    for r in gap_records(&cutter, depth)? {
                        line(&mut text, &r)?;
                    }
                }
                Format::Svg => text.extend(render_gaps(&cutter, depth)?.into_bytes()),
            }
            match path {
                Some(p) => {
                    let mut f = create(&p)?;
                    f.write_all(&text)?;
                    f.flush()?;
                }
                None => out.write_all(&text)?,
            }
        }
        Command::Classify { point: x, base, budget } => {
            let x = point(&x)?;
            let p = s.parabolic_witness(&point(&base)?)?;
            let verdict = cutter.classify_point(&p, &x, budget)?;
            let record = match &verdict {
                PointClass::InGap { side, q, g, gap } => json!({
                    "record": "classify", "point": x.to_string(), "base": p.point.to_string(),
                    "class": "gap", "side": side, "q": q.point.to_string(), "g": g.word().to_string(),
                    "gap_left": gap.i_full.left.to_string(), "gap_right": gap.i_full.right.to_string(),
                }),
                PointClass::InR => json!({
                    "record": "classify", "point": x.to_string(), "base": p.point.to_string(), "class": "remaining",
                }),
                PointClass::Unresolved(n) => json!({
                    "record": "classify", "point": x.to_string(), "base": p.point.to_string(),
                    "class": "unresolved", "budget": n,
                }),
            };
            line(out, &record)?;
            if matches!(verdict, PointClass::Unresolved(_)) {
                return Ok(Outcome::Undecided);
            }
        }
        Command::Expand { point: x, max_steps, transcript } => {
            let x = point(&x)?;
            let e = cutter.derived_expansion(&x, max_steps)?;
            match transcript {
                Some(p) => {
                    let mut f = create(&p)?;
                    e.write_transcript(&mut f)?;
                    f.flush()?;
                }
                None => e.write_transcript(out)?,
            }
            let terminal = match e.terminal {
                Terminal::LandedInR => "remaining".to_string(),
                Terminal::Exhausted(n) => format!("exhausted {n}"),
                Terminal::Unresolved => "unresolved".to_string(),
            };
            line(out, &json!({ "record": "expansion", "point": x.to_string(), "steps": e.len(), "terminal": terminal }))?;
            if e.terminal == Terminal::Unresolved {
                return Ok(Outcome::Undecided);
            }
        }
        Command::Fill { point: x, depth } => {
            let x = point(&x)?;
            let e = match cutter.derived_expansion(&x, depth) {
                Err(Error::StepBudgetExceeded { .. }) => None,
                other => Some(other?),
            };
            match e.as_ref().map(|e| filling_prefix(s, e)).transpose()?.flatten() {
                Some((prefix, arcs, census)) => {
                    let feet: Vec<String> = arcs.arcs.iter().map(|a| a.foot.to_string()).collect();
                    line(out, &json!({
                        "record": "fill", "point": x.to_string(), "filling": true, "prefix": prefix,
                        "arc_feet": feet, "euler": census.euler(), "census": census,
                    }))?;
                }
                None => {
                    line(out, &json!({ "record": "fill", "point": x.to_string(), "filling": false, "depth": depth }))?;
                    return Ok(Outcome::Undecided);
                }
            }
        }
        Command::Wander { point: x, depth, mcg_bound, cert } => {
            let x = point(&x)?;
            let c = match cutter.wandering_certificate(&x, depth, mcg_bound) {
                Err(Error::NotFillingWithinDepth(d)) => {
                    line(out, &json!({ "record": "wander", "point": x.to_string(), "filling": false, "depth": d }))?;
                    return Ok(Outcome::Undecided);
                }
                other => other?,
            };
            let record = c.record(s);
            line(out, &json!({
                "record": "wander", "point": x.to_string(), "filling": true, "prefix": c.prefix,
                "neighborhood": c.neighborhood.to_string(), "classes": c.checked.len(), "disjoint": true,
            }))?;
            if let Some(p) = cert {
                let mut f = create(&p)?;
                line(&mut f, &record)?;
                f.flush()?;
            }
        }
        Command::Mcshane { depth } => cutter.mcshane_report(depth)?.write_lines(out)?,
        Command::Dim { set, depth, slope: sl, word_depth, levels: lv, periods } => {
            let report = match set {
                Set::BirmanSeries => {
                    let depth = depth.ok_or_else(|| Error::Parse("--depth is required".into()))?;
                    cutter.birman_series_dimension(depth, levels(lv.as_deref(), BIRMAN_SERIES_LEVELS)?, periods)?
                }
                Set::LimitSet => {
                    let sl = slope(sl.as_deref().ok_or_else(|| Error::Parse("--slope is required".into()))?)?;
                    let k = word_depth.ok_or_else(|| Error::Parse("--word-depth is required".into()))?;
                    let model = LimitSetModel::for_slope(s, sl, 4)?;
                    limit_set_dimension(s, &model, k, levels(lv.as_deref(), LIMIT_SET_LEVELS)?)?
                }
            };
            report.write_line(out)?;
        }
        Command::Render { depth, out: path } => {
            let mut f = create(&path)?;
            f.write_all(render_gaps(&cutter, depth)?.as_bytes())?;
            f.flush()?;
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(Outcome::Done), Ok(())) => ExitCode::SUCCESS,
        (Ok(Outcome::Undecided), Ok(())) => ExitCode::from(2),
        (Err(e), _) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
