//! Command-line front end for clutterkit.
//!
//! Exit codes: 0 success, 1 `--assert` failed, 2 usage or input error,
//! 3 resource cap or analysis error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use clutterkit::conditions::{self, PrecoreReport};
use clutterkit::generators::{self, Graph};
use clutterkit::polytope::IdealCheck;
use clutterkit::solution::affine_obstruction_with;
use clutterkit::{rational, Clutter, Error, SearchLimits, SearchStatus, SCHEMA_VERSION};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "clutterkit",
    version,
    about = "Exact clutter, blocker and polytope computations"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse inputs with more ground elements than this.
    #[arg(long, global = true, value_name = "N")]
    max_elements: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated clutter in .clt format.
    Generate {
        #[command(subcommand)]
        kind: Kind,
        /// Output file; stdout when absent.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Blocking, packing and fractional packing numbers, idealness, tilde.
    Analyze { file: PathBuf },
    /// Every precore condition with witnesses.
    CheckPrecore {
        file: PathBuf,
        #[command(flatten)]
        assert: AssertFlag,
    },
    /// Solution conditions for D over C.
    CheckSolution {
        core: PathBuf,
        candidate: PathBuf,
        #[command(flatten)]
        assert: AssertFlag,
    },
    /// Bounded search for a solution clutter containing C; with --assert,
    /// exit 1 unless one is found.
    Search {
        file: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        assert: AssertFlag,
    },
    /// Mechanized case analysis for an affine plane.
    Obstruction {
        file: PathBuf,
        /// Analyse every admissible triple instead of the first.
        #[arg(long)]
        all_triples: bool,
        #[command(flatten)]
        assert: AssertFlag,
    },
    /// Re-emit a .clt file in canonical form.
    Canonicalize { file: PathBuf },
}

#[derive(Subcommand)]
enum Kind {
    /// {135, 146, 236, 245}.
    Q6,
    /// The projective plane of order 2.
    Fano,
    /// Projective plane of prime order q.
    Pg { q: u32 },
    /// Affine plane of prime order q.
    Ag { q: u32 },
    /// Vertex-cut clutter of a graph file with one "u v" edge per line.
    VertexCut { graph: PathBuf },
}

#[derive(Args)]
struct AssertFlag {
    /// Exit with status 1 when the headline result is false.
    #[arg(long = "assert")]
    enabled: bool,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, default_value_t = 2)]
    max_extra_edges: usize,
    #[arg(long)]
    max_edge_size: Option<usize>,
    /// Node budget; accepts forms like 1000000, 10^6 or 1e6.
    #[arg(long, default_value = "10^6", value_parser = parse_count)]
    node_cap: u64,
    #[arg(long)]
    time_cap_secs: Option<f64>,
    /// Require minimal non-packing (the default).
    #[arg(long, overrides_with = "no_require_mnp")]
    require_mnp: bool,
    /// Accept ideal solutions that are not minimally non-packing.
    #[arg(long)]
    no_require_mnp: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.replace('_', "");
    let bad = || format!("`{s}` is not a count");
    let pow = |base: &str, exp: &str| -> Result<u64, String> {
        let b: u64 = base.parse().map_err(|_| bad())?;
        let e: u32 = exp.parse().map_err(|_| bad())?;
        b.checked_pow(e).ok_or_else(bad)
    };
    if let Some((b, e)) = s.split_once('^') {
        pow(b, e)
    } else if let Some((m, e)) = s.split_once(['e', 'E']) {
        Ok(pow("10", e)?
            .checked_mul(m.parse().map_err(|_| bad())?)
            .ok_or_else(bad)?)
    } else {
        s.parse().map_err(|_| bad())
    }
}

/// An error with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(e) if e.is_cap() => 3,
            Some(
                Error::DuplicateLabel(_)
                | Error::UnknownLabel(_)
                | Error::DuplicateEdge(_)
                | Error::NotAntichain { .. }
                | Error::DegenerateClutter(_)
                | Error::Parse { .. }
                | Error::GroundMismatch
                | Error::EmptyInput
                | Error::NotPrime(_)
                | Error::DegenerateGraph(_)
                | Error::Invalid(_),
            ) => 2,
            Some(_) => 3,
            None if error.downcast_ref::<std::io::Error>().is_some() => 2,
            None => 3,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

type Outcome = Result<bool, Failure>;

fn read_clutter(path: &Path, max_elements: Option<usize>) -> Result<Clutter, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim().is_empty() {
        return Err(anyhow::Error::new(Error::EmptyInput)
            .context(path.display().to_string())
            .into());
    }
    let c = Clutter::parse_clt(&text).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))?;
    if let Some(m) = max_elements {
        if c.ground_size() > m {
            return Err(Failure {
                code: 3,
                error: anyhow!(
                    "{} has {} elements, over --max-elements {m}",
                    path.display(),
                    c.ground_size()
                ),
            });
        }
    }
    Ok(c)
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    if json {
        let s = serde_json::to_string_pretty(value).map_err(anyhow::Error::new)?;
        println!("{s}");
    } else {
        print!("{}", text());
    }
    Ok(())
}

fn sets(c: &Clutter, s: &[clutterkit::ElementSet]) -> Vec<Vec<String>> {
    s.iter().map(|&e| c.labels_of(e)).collect()
}

fn render_all(c: &Clutter, s: &[clutterkit::ElementSet]) -> String {
    let parts: Vec<String> = s.iter().map(|&e| c.render(e)).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Serialize)]
struct Analysis {
    schema_version: u32,
    ground_size: usize,
    edge_count: usize,
    bn: usize,
    pn: usize,
    fpn: String,
    packs: bool,
    ideal: IdealCheck,
    mtc: bool,
    tilde: Vec<Vec<String>>,
    minb: Vec<Vec<String>>,
    blocker_size: usize,
    unique_max_packing: bool,
}

fn analyze(c: &Clutter, json: bool) -> Outcome {
    let b = clutterkit::blocker(c)?;
    let minb = clutterkit::min_transversals(c)?;
    let t = clutterkit::tilde(c)?;
    let a = Analysis {
        schema_version: SCHEMA_VERSION,
        ground_size: c.ground_size(),
        edge_count: c.len(),
        bn: clutterkit::blocking_number(c)?,
        pn: clutterkit::packing_number(c)?,
        fpn: rational::to_string(&clutterkit::fpn(c)?),
        packs: clutterkit::packs(c)?,
        ideal: clutterkit::is_ideal(c)?,
        mtc: clutterkit::is_minimum_transversal_covered(c)?,
        tilde: sets(c, t.edges()),
        minb: sets(c, &minb),
        blocker_size: b.len(),
        unique_max_packing: clutterkit::is_unique_max_packing(c)?,
    };
    emit(json, &a, || {
        let mut s = format!(
            "bn={} pn={} fpn={} ideal={} packs={}\nmtc={} unique_max_packing={}\ntilde={}\nminb={}\nblocker_size={}\n",
            a.bn,
            a.pn,
            a.fpn,
            a.ideal.ideal,
            a.packs,
            a.mtc,
            a.unique_max_packing,
            render_all(c, t.edges()),
            render_all(c, &minb),
            a.blocker_size
        );
        if let Some(x) = &a.ideal.fractional_vertex {
            let v: Vec<String> = x.iter().map(rational::to_string).collect();
            s.push_str(&format!("fractional_vertex=({})\n", v.join(",")));
        }
        s
    })?;
    Ok(true)
}

fn verdict_text<T>(v: &conditions::Verdict<T>) -> String {
    match v.holds() {
        Some(b) => b.to_string(),
        None => "n/a".into(),
    }
}

fn precore_text(r: &PrecoreReport) -> String {
    format!(
        "is_precore={}\nmtc={} ibc={} (fpn={} bn={}) tilde_fixed={}\nic_integral={} nonseparable={}\ntilde_full={} dimension_condition={} hyperedge_nonseparable={} unique_max_packing={}\n",
        r.is_precore,
        r.mtc,
        r.ibc.holds,
        rational::to_string(&r.ibc.fpn),
        r.ibc.bn,
        r.tilde_fixed,
        verdict_text(&r.ic_integral),
        verdict_text(&r.nonseparable),
        r.tilde_full.holds,
        verdict_text(&r.dimension_condition),
        verdict_text(&r.hyperedge_nonseparable),
        r.unique_max_packing
    )
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    let max = cli.max_elements;
    match cli.command {
        Command::Generate { kind, output } => {
            let c = match kind {
                Kind::Q6 => generators::q6(),
                Kind::Fano => generators::fano(),
                Kind::Pg { q } => generators::projective_plane(q)?,
                Kind::Ag { q } => generators::affine_plane(q)?,
                Kind::VertexCut { graph } => {
                    let text = fs::read_to_string(&graph).with_context(|| format!("reading {}", graph.display()))?;
                    generators::vertex_cut_clutter(&Graph::parse(&text)?)?
                }
            };
            let body = if json {
                serde_json::to_string_pretty(&c.to_json()).map_err(anyhow::Error::new)? + "\n"
            } else {
                c.to_clt()
            };
            match output {
                Some(path) => fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{body}"),
            }
            Ok(true)
        }
        Command::Analyze { file } => analyze(&read_clutter(&file, max)?, json),
        Command::CheckPrecore { file, assert } => {
            let r = clutterkit::is_precore(&read_clutter(&file, max)?)?;
            emit(json, &r, || precore_text(&r))?;
            Ok(!assert.enabled || r.is_precore)
        }
        Command::CheckSolution {
            core,
            candidate,
            assert,
        } => {
            let c = read_clutter(&core, max)?;
            let d = read_clutter(&candidate, max)?;
            let r = clutterkit::check_solution(&c, &d)?;
            emit(json, &r, || {
                format!(
                    "all_pass={}\ncore_is_precore={} tilde_matches={} ideal={} mnp={}\nim={} if={} h={} b={}\n",
                    r.all_pass(),
                    r.core_is_precore,
                    r.tilde_matches,
                    r.ideal.ideal,
                    r.mnp.holds,
                    r.im.holds,
                    r.if_.holds,
                    r.h.holds,
                    r.b.holds
                )
            })?;
            Ok(!assert.enabled || r.all_pass())
        }
        Command::Search { file, limits, assert } => {
            let c = read_clutter(&file, max)?;
            let l = SearchLimits {
                max_extra_edges: limits.max_extra_edges,
                max_edge_size: limits.max_edge_size,
                node_cap: limits.node_cap,
                time_cap: limits.time_cap_secs.map(Duration::from_secs_f64),
                require_mnp: limits.require_mnp || !limits.no_require_mnp,
                jobs: limits.jobs,
            };
            let out = clutterkit::search_solutions(&c, &l)?;
            emit(json, &out, || {
                let mut s = format!(
                    "status={}\nnodes_explored={} pool_size={}\n",
                    serde_json::to_value(out.status)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default(),
                    out.nodes_explored,
                    out.pool_size
                );
                if let Some(d) = &out.found_clutter {
                    s.push_str(&format!(
                        "added={}\n",
                        out.added.iter().map(|h| h.join(" ")).collect::<Vec<_>>().join(", ")
                    ));
                    s.push_str(&d.to_clt());
                }
                for (k, v) in &out.prune_stats {
                    s.push_str(&format!("pruned {k}={v}\n"));
                }
                s
            })?;
            Ok(!assert.enabled || out.status == SearchStatus::Found)
        }
        Command::Obstruction {
            file,
            all_triples,
            assert,
        } => {
            let r = affine_obstruction_with(&read_clutter(&file, max)?, all_triples)?;
            emit(json, &r, || {
                let mut s = format!(
                    "obstruction_verified={}\nbn={} minimum_transversals={} triples_examined={}\n",
                    r.obstruction_verified, r.blocking_number, r.minimum_transversals, r.triples_examined
                );
                for t in &r.triples {
                    s.push_str(&format!(
                        "triple {} | {} | {}: x={} y={} z={} bn(C[X])={} stars={} killed={}/{} xyz_at_most_once={} xyz_exactly_once={}\n",
                        t.a.join(" "),
                        t.b.join(" "),
                        t.c.join(" "),
                        t.x,
                        t.y,
                        t.z,
                        t.restriction_blocking_number,
                        t.three_star_components,
                        t.candidates.iter().filter(|k| k.killed_by != clutterkit::solution::Kill::Survives).count(),
                        t.candidates.len(),
                        t.xyz_meets_every_minb_at_most_once,
                        t.xyz_meets_every_minb_exactly_once
                    ));
                }
                s
            })?;
            Ok(!assert.enabled || r.obstruction_verified)
        }
        Command::Canonicalize { file } => {
            let c = read_clutter(&file, max)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&c.to_json()).map_err(anyhow::Error::new)?
                );
            } else {
                print!("{}", c.to_clt());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
