mod output;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stabci::cws::{build_code, codespace_contains, CodeFile, WordSearch};
use stabci::hamiltonian::{brute_force_ground, energy_stabilizer, MAX_BRUTE_FORCE_QUBITS};
use stabci::noise::{
    build_syndrome_circuit, prep_for_refinement, prep_for_result, sweep, Backend, IdealState,
    NoiseModel, Protection, TrajectoryConfig, DEFAULT_SEED,
};
use stabci::sci::{adaptive_sci, full_sci, generalized_refine, SciConfig, SearchResult};
use stabci::{ErrorKind, Hamiltonian, StabilizerTableau};

use output::{csv_bytes, json_bytes, sig12, Run};
use report::SearchReport;

const FIXTURES_ENV: &str = "STABCI_FIXTURES";

#[derive(Parser, Debug)]
#[command(
    name = "stabci",
    version,
    about = "Stabilizer CI, error-detection codes and noisy preparation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output file (standard output if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Refuse inputs with more qubits than this.
    #[arg(long, global = true)]
    max_qubits: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stabilizer CI searches.
    Sci {
        #[command(subcommand)]
        method: SciCommand,
    },
    /// Search, then refine the last excitation to a generalized state.
    Refine(SearchArgs),
    /// Error-detection codes.
    Code {
        #[command(subcommand)]
        action: CodeCommand,
    },
    /// Noisy preparation with post-selection.
    Noise {
        #[command(subcommand)]
        action: NoiseCommand,
    },
    /// Potential energy surfaces.
    Pes {
        #[command(subcommand)]
        action: PesCommand,
    },
    /// Reference energies.
    Oracle {
        #[command(subcommand)]
        action: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum SciCommand {
    /// Exhaustive search over all valid excitation sets.
    Full(SearchArgs),
    /// Greedy beam search over double excitations.
    Adaptive(SearchArgs),
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Build the distance-2 code of a search result.
    Build(CodeArgs),
}

#[derive(Subcommand, Debug)]
enum NoiseCommand {
    /// Trajectory sweep over depolarizing probabilities.
    Run(NoiseArgs),
}

#[derive(Subcommand, Debug)]
enum PesCommand {
    /// Energies for every Hamiltonian file in a directory.
    Scan(PesArgs),
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Exact ground energy by diagonalization.
    Ground(HamiltonianArg),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Full,
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum BackendArg {
    Auto,
    Frame,
    Dense,
}

#[derive(Args, Debug, Clone, Serialize)]
struct HamiltonianArg {
    /// Hamiltonian JSON file; bare names are also looked up in $STABCI_FIXTURES.
    #[arg(long)]
    hamiltonian: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
struct SearchOpts {
    /// Search used by commands that need a state.
    #[arg(long, value_enum, default_value = "full")]
    method: Method,
    /// States kept per adaptive step.
    #[arg(long, default_value_t = 1)]
    beam: usize,
    /// Cap on generators per excitation set in the full search.
    #[arg(long)]
    max_blocks: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
struct SearchArgs {
    #[command(flatten)]
    input: HamiltonianArg,
    #[command(flatten)]
    search: SearchOpts,
}

#[derive(Args, Debug, Clone, Serialize)]
struct CodeArgs {
    /// Hamiltonian to search (alternative to --result).
    #[arg(long, conflicts_with = "result", required_unless_present = "result")]
    hamiltonian: Option<PathBuf>,
    /// Search-result JSON written by `sci` or `refine`.
    #[arg(long)]
    result: Option<PathBuf>,
    #[command(flatten)]
    search: SearchOpts,
    /// Largest word-operator weight tried.
    #[arg(long)]
    max_word_weight: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
struct NoiseArgs {
    #[command(flatten)]
    input: HamiltonianArg,
    #[command(flatten)]
    search: SearchOpts,
    /// Depolarizing probabilities to sweep.
    #[arg(long, num_args = 1.., default_values_t = [0.001, 0.005, 0.01, 0.02, 0.05])]
    p_depol: Vec<f64>,
    /// Bit-flip probability for every row (default: half of p-depol).
    #[arg(long)]
    p_bitflip: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    trajectories: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Only rows with syndrome post-selection.
    #[arg(long, conflicts_with = "unprotected")]
    protected: bool,
    /// Only rows without the syndrome circuit.
    #[arg(long)]
    unprotected: bool,
    /// Prepare the refined generalized state instead of the stabilizer state.
    #[arg(long)]
    generalized: bool,
    #[arg(long, value_enum, default_value = "auto")]
    backend: BackendArg,
}

#[derive(Args, Debug, Clone, Serialize)]
struct PesArgs {
    /// Directory of Hamiltonian files (default: $STABCI_FIXTURES).
    #[arg(long)]
    hamiltonian_dir: Option<PathBuf>,
    /// Only files whose name starts with this.
    #[arg(long)]
    prefix: Option<String>,
    #[command(flatten)]
    search: SearchOpts,
}

/// `path` itself, or the same name under `$STABCI_FIXTURES`.
fn resolve(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    match std::env::var_os(FIXTURES_ENV) {
        Some(dir) if Path::new(&dir).join(path).exists() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

struct Session {
    jobs: Option<usize>,
    max_qubits: Option<usize>,
}

impl Session {
    fn load(&self, path: &Path) -> Result<(PathBuf, Hamiltonian)> {
        let p = resolve(path);
        let h = Hamiltonian::load(&p).with_context(|| format!("loading {}", p.display()))?;
        if let Some(cap) = self.max_qubits {
            if h.n_qubits() > cap {
                return Err(stabci::Error::Resource(format!(
                    "{} has {} qubits, limit is {cap}",
                    p.display(),
                    h.n_qubits()
                ))
                .into());
            }
        }
        Ok((p, h))
    }

    fn search(&self, h: &Hamiltonian, s: &SearchOpts) -> Result<SearchResult<f64>> {
        let cfg = SciConfig {
            beam_width: s.beam,
            max_partition_blocks: s.max_blocks,
            jobs: self.jobs,
            ..SciConfig::default()
        };
        let hf = StabilizerTableau::basis_state(&h.hf_bits());
        Ok(match s.method {
            Method::Full => full_sci(h, &hf, &cfg)?,
            Method::Adaptive => adaptive_sci(h, &hf, &cfg)?,
        })
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Full => "full",
        Method::Adaptive => "adaptive",
    }
}

fn start(
    command: &str,
    inputs: Vec<PathBuf>,
    config: &impl Serialize,
    seed: Option<u64>,
) -> Result<Run> {
    Ok(Run {
        command: command.into(),
        started: Instant::now(),
        inputs,
        config: serde_json::to_value(config)?,
        seed,
    })
}

fn run(cli: Cli) -> Result<()> {
    let ctx = Session {
        jobs: cli.jobs,
        max_qubits: cli.max_qubits,
    };
    let out = cli.out.as_deref();
    match cli.command {
        Command::Sci { method } => {
            let (args, m) = match method {
                SciCommand::Full(a) => (
                    SearchOpts {
                        method: Method::Full,
                        ..a.search.clone()
                    },
                    a,
                ),
                SciCommand::Adaptive(a) => (
                    SearchOpts {
                        method: Method::Adaptive,
                        ..a.search.clone()
                    },
                    a,
                ),
            };
            let (path, h) = ctx.load(&m.input.hamiltonian)?;
            let r = ctx.search(&h, &args)?;
            let report = SearchReport::new(&h, method_name(args.method), &r)?;
            let run = start(
                &format!("sci {}", method_name(args.method)),
                vec![path],
                &args,
                None,
            )?;
            run.finish(out, &json_bytes(&report)?)
        }
        Command::Refine(a) => {
            let (path, h) = ctx.load(&a.input.hamiltonian)?;
            let r = ctx.search(&h, &a.search)?;
            let g = generalized_refine(&h, &r)?;
            let report =
                SearchReport::new(&h, method_name(a.search.method), &r)?.with_refinement(&g);
            start("refine", vec![path], &a, None)?.finish(out, &json_bytes(&report)?)
        }
        Command::Code {
            action: CodeCommand::Build(a),
        } => {
            let (path, state) = match (&a.result, &a.hamiltonian) {
                (Some(p), _) => {
                    let p = resolve(p);
                    let text = std::fs::read_to_string(&p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    let rep: SearchReport = serde_json::from_str(&text)
                        .map_err(|e| stabci::Error::Schema(format!("{}: {e}", p.display())))?;
                    (p, rep.state()?)
                }
                (None, Some(hp)) => {
                    let (p, h) = ctx.load(hp)?;
                    (p, ctx.search(&h, &a.search)?.state)
                }
                (None, None) => bail!(stabci::Error::Precondition(
                    "--hamiltonian or --result is required".into()
                )),
            };
            let opts = WordSearch {
                max_weight: a.max_word_weight,
                ..WordSearch::default()
            };
            let built = build_code(&state, &opts)?;
            let file = CodeFile::new(&built.code, built.word_operator());
            start("code build", vec![path], &a, None)?.finish(out, &json_bytes(&file)?)
        }
        Command::Noise {
            action: NoiseCommand::Run(a),
        } => {
            let (path, h) = ctx.load(&a.input.hamiltonian)?;
            let r = ctx.search(&h, &a.search)?;
            let code = build_code(&r.state, &WordSearch::default())?.code;
            let mut modes: Vec<Protection> = match (a.protected, a.unprotected) {
                (true, _) => vec![Protection::Protected],
                (_, true) => vec![Protection::Unprotected],
                _ => vec![Protection::Protected, Protection::Unprotected],
            };
            let (prep, ideal) = if a.generalized {
                let g = generalized_refine(&h, &r)?;
                let (Some(c), Some(gs)) = (prep_for_refinement(&r, &g)?, &g.generalized) else {
                    bail!(stabci::Error::Precondition(
                        "no excitation to refine".into()
                    ));
                };
                // syndromes only leave the state alone when both branches are codewords
                let (b0, b1) = gs.branches();
                if !(codespace_contains(&code, &b0)? && codespace_contains(&code, &b1)?) {
                    if a.protected {
                        bail!(stabci::Error::Precondition(
                            "the refined state is not in the code space; use --unprotected".into()
                        ));
                    }
                    if modes.contains(&Protection::Protected) {
                        eprintln!("note: the refined state is not in the code space, skipping protected rows");
                        modes.retain(|m| *m == Protection::Unprotected);
                    }
                }
                (c, IdealState::from_generalized(gs)?)
            } else {
                (
                    prep_for_result(&r)?,
                    IdealState::Stabilizer(r.state.clone()),
                )
            };
            let syn = build_syndrome_circuit(&code)?;
            let noises = a
                .p_depol
                .iter()
                .map(|&p| match a.p_bitflip {
                    Some(b) => NoiseModel::with_bitflip(p, b),
                    None => NoiseModel::new(p),
                })
                .collect::<stabci::Result<Vec<_>>>()?;
            let cfg = TrajectoryConfig {
                n_traj: a.trajectories,
                seed: a.seed,
                backend: match a.backend {
                    BackendArg::Auto => Backend::Auto,
                    BackendArg::Frame => Backend::Frame,
                    BackendArg::Dense => Backend::Dense,
                },
                jobs: ctx.jobs,
            };
            let rows = sweep(&prep, &syn, &ideal, &noises, &modes, &cfg)?;
            let header = [
                "p_depol",
                "p_bitflip",
                "n_traj",
                "n_kept",
                "discard_rate",
                "mean_overlap",
                "stderr",
                "mode",
                "seed",
            ];
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    vec![
                        sig12(row.noise.p_depol),
                        sig12(row.noise.p_bitflip),
                        row.report.n_traj.to_string(),
                        row.report.n_kept.to_string(),
                        sig12(row.report.discard_rate),
                        sig12(row.report.mean_overlap),
                        sig12(row.report.stderr),
                        row.mode.to_string(),
                        row.report.seed.to_string(),
                    ]
                })
                .collect();
            start("noise run", vec![path], &a, Some(a.seed))?
                .finish(out, &csv_bytes(&header, &body)?)
        }
        Command::Pes {
            action: PesCommand::Scan(a),
        } => {
            let dir = match (&a.hamiltonian_dir, std::env::var_os(FIXTURES_ENV)) {
                (Some(d), _) => d.clone(),
                (None, Some(d)) => PathBuf::from(d),
                (None, None) => bail!(stabci::Error::Precondition(format!(
                    "--hamiltonian-dir is required when {FIXTURES_ENV} is unset"
                ))),
            };
            let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
                .with_context(|| format!("reading {}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .filter(|p| {
                    a.prefix.as_ref().is_none_or(|pre| {
                        p.file_name()
                            .is_some_and(|n| n.to_string_lossy().starts_with(pre.as_str()))
                    })
                })
                .collect();
            files.sort();
            let mut rows: Vec<(f64, PathBuf, Vec<String>)> = Vec::new();
            for f in &files {
                let (_, h) = ctx.load(f)?;
                let hf = StabilizerTableau::basis_state(&h.hf_bits());
                let e_hf = energy_stabilizer(&h, &hf)?;
                let r = ctx.search(&h, &a.search)?;
                let g = generalized_refine(&h, &r)?;
                let fci = match h.meta().fci_energy {
                    Some(e) => Some(e),
                    None if h.n_qubits() <= MAX_BRUTE_FORCE_QUBITS => {
                        Some(brute_force_ground(&h)?.energy)
                    }
                    None => None,
                };
                let bl = h.meta().bond_length_angstrom;
                rows.push((
                    bl,
                    f.clone(),
                    vec![
                        sig12(bl),
                        sig12(e_hf),
                        sig12(r.energy),
                        sig12(g.energy),
                        fci.map(sig12).unwrap_or_default(),
                    ],
                ));
            }
            rows.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
            let body: Vec<Vec<String>> = rows.into_iter().map(|r| r.2).collect();
            let bytes = csv_bytes(&["bond_length", "E_HF", "E_stab", "E_gen", "E_FCI"], &body)?;
            start("pes scan", files, &a, None)?.finish(out, &bytes)
        }
        Command::Oracle {
            action: OracleCommand::Ground(a),
        } => {
            let (path, h) = ctx.load(&a.hamiltonian)?;
            let g = brute_force_ground(&h)?;
            #[derive(Serialize)]
            struct Ground {
                molecule: String,
                n_qubits: usize,
                energy: f64,
                residual: f64,
                fci_energy: Option<f64>,
            }
            let rep = Ground {
                molecule: h.meta().molecule.clone(),
                n_qubits: h.n_qubits(),
                energy: g.energy,
                residual: g.residual,
                fci_energy: h.meta().fci_energy,
            };
            start("oracle ground", vec![path], &a, None)?.finish(out, &json_bytes(&rep)?)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e
        .chain()
        .find_map(|c| c.downcast_ref::<stabci::Error>())
        .map(stabci::Error::kind)
    {
        Some(ErrorKind::Resource) => 3,
        Some(ErrorKind::Internal) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
