//! `crauth` — commit–reveal authorization toolkit.
//!
//! Offline protocol operations (`keygen`, `commit`, `reveal`, `verify`),
//! ledger scenario runs, network simulations, and storage-cost reports.
//!
//! Conventions:
//! - exit codes: 0 success, 1 usage error, 2 validation or verification
//!   failure, 3 internal error;
//! - secrets (preimages, rotated keys) go only to files named with `--out`
//!   or `--next-key`, never to standard output;
//! - output files are written atomically — failures leave no partial file;
//! - every command is deterministic given the same inputs and seeds;
//! - relative config paths are tried against the working directory first,
//!   then against `$CRAUTH_CONFIG_DIR` when it is set.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use crauth_core::costmodel::{self, CostConfig, CostReport};
use crauth_core::ledger::TxPayload;
use crauth_core::netsim::{
    footprint_report, footprint_sweep, run_attack_suite, run_simulation, AttackSuiteReport,
    FootprintReport, SimConfig, SimError, SimMetrics, SimRun, SweepPoint,
};
use crauth_core::{
    hash, keygen, make_commit, make_reveal, verify_reveal, Action, AuthId, CommitMode, Digest,
    DomainTag, HashAlgId, KeyPair, LedgerConfig, Preimage, Scenario, TxEnvelope,
};

/// Environment variable naming a directory to resolve relative config and
/// scenario paths against (after the working directory).
const CONFIG_DIR_ENV: &str = "CRAUTH_CONFIG_DIR";

// ---------------------------------------------------------------------------
// Errors and exit codes
// ---------------------------------------------------------------------------

#[derive(Debug)]
enum CliError {
    /// Inputs parsed but failed validation or verification.
    Invalid(String),
    /// Environmental failure (output IO and the like).
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Internal(m) => m,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn internal(msg: impl Into<String>) -> CliError {
    CliError::Internal(msg.into())
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        invalid(e.to_string())
    }
}

impl From<costmodel::CostModelError> for CliError {
    fn from(e: costmodel::CostModelError) -> Self {
        invalid(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// Argument grammar
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "crauth",
    version,
    about = "Hash-based commit-reveal authorization toolkit",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive a key pair from a 32-byte hex seed and write it to a key file.
    Keygen(KeygenArgs),
    /// Build a commitment for a transfer and write its envelope.
    Commit(CommitArgs),
    /// Build the matching reveal, rotating to a fresh key.
    Reveal(RevealArgs),
    /// Check a reveal envelope against a commit envelope.
    Verify(VerifyArgs),
    /// Ledger scenario execution.
    #[command(subcommand)]
    Ledger(LedgerCmd),
    /// Network byte-footprint simulations.
    #[command(subcommand)]
    Sim(SimCmd),
    /// Storage and cost projections.
    #[command(subcommand)]
    Cost(CostCmd),
}

#[derive(Args)]
struct KeygenArgs {
    /// 64 hex characters of seed material.
    #[arg(long)]
    seed: String,
    /// Hash algorithm backing the key.
    #[arg(long, value_enum, default_value_t = AlgArg::Sha256)]
    alg: AlgArg,
    /// Key file to write (holds the secret preimage).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CommitArgs {
    /// Key file from `keygen`.
    #[arg(long)]
    key: PathBuf,
    /// Destination account id, 64 hex characters.
    #[arg(long)]
    dest: String,
    /// Amount to transfer.
    #[arg(long)]
    amount: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
    /// Commit envelope file to write (hex).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RevealArgs {
    /// Key file the commitment was built from.
    #[arg(long)]
    key: PathBuf,
    /// Destination account id; must match the commitment.
    #[arg(long)]
    dest: String,
    /// Amount; must match the commitment.
    #[arg(long)]
    amount: u64,
    /// 64 hex characters seeding the rotated key.
    #[arg(long)]
    next_seed: String,
    /// Reveal envelope file to write (hex).
    #[arg(long)]
    out: PathBuf,
    /// Where to store the rotated key file.
    #[arg(long)]
    next_key: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Commit envelope file.
    #[arg(long)]
    commit: PathBuf,
    /// Reveal envelope file.
    #[arg(long)]
    reveal: PathBuf,
    /// Algorithm the commitment was built with.
    #[arg(long, value_enum, default_value_t = AlgArg::Sha256)]
    alg: AlgArg,
}

#[derive(Subcommand)]
enum LedgerCmd {
    /// Apply a scenario script and print the final ledger state.
    Run(LedgerRunArgs),
}

#[derive(Args)]
struct LedgerRunArgs {
    /// Scenario script file.
    scenario: PathBuf,
    /// Blocks a commit must age before its reveal.
    #[arg(long, default_value_t = 1)]
    depth: u64,
    /// Blocks until a pending commit expires.
    #[arg(long, default_value_t = 100)]
    ttl: u64,
    #[arg(long, value_enum, default_value_t = AlgArg::Sha256)]
    alg: AlgArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
}

#[derive(Subcommand)]
enum SimCmd {
    /// Run one simulation from a TOML config and print its metrics.
    Run(SimRunArgs),
    /// Compare commit-reveal and signature byte footprints.
    Footprint(FootprintArgs),
    /// Enumerate adversary orderings against the honest base script.
    Attacks(AttacksArgs),
}

#[derive(Args)]
struct SimRunArgs {
    /// Simulation config file (TOML).
    config: PathBuf,
    #[arg(long, value_enum, default_value_t = SimFormat::Text)]
    format: SimFormat,
}

#[derive(Args)]
struct FootprintArgs {
    /// Optional simulation config file (TOML); defaults to the bundled
    /// two-transfer script on ten full nodes.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Emit a CSV sweep over envelope sizes instead of the single report.
    #[arg(long)]
    sweep: bool,
    /// Sweep lower bound (bytes).
    #[arg(long, default_value_t = 64)]
    lo: u64,
    /// Sweep upper bound (bytes).
    #[arg(long, default_value_t = 256)]
    hi: u64,
    /// Sweep step (bytes).
    #[arg(long, default_value_t = 16)]
    step: u64,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AttacksArgs {
    /// Optional simulation config file (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CostCmd {
    /// Full storage/cost report.
    Report(CostReportArgs),
    /// One figure's dataset as byte-stable CSV.
    Figure(CostFigureArgs),
}

#[derive(Args)]
struct CostReportArgs {
    /// Cost model config file (TOML) overriding the embedded defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = CostFormat::Text)]
    format: CostFormat,
}

#[derive(Args)]
struct CostFigureArgs {
    #[arg(value_enum)]
    which: FigureArg,
    /// Cost model config file (TOML) overriding the embedded defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    Sha256,
    Blake3,
    Keccak256,
}

impl From<AlgArg> for HashAlgId {
    fn from(a: AlgArg) -> Self {
        match a {
            AlgArg::Sha256 => HashAlgId::Sha256,
            AlgArg::Blake3 => HashAlgId::Blake3,
            AlgArg::Keccak256 => HashAlgId::Keccak256,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Compact,
}

impl From<ModeArg> for CommitMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => CommitMode::Full,
            ModeArg::Compact => CommitMode::Compact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SimFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CostFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    Fig1,
    Fig2,
    Table2,
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    // Restore default SIGPIPE handling so `crauth ... | head` dies quietly
    // like any other Unix tool instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Keygen(args) => cmd_keygen(args),
        Command::Commit(args) => cmd_commit(args),
        Command::Reveal(args) => cmd_reveal(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Ledger(LedgerCmd::Run(args)) => cmd_ledger_run(args),
        Command::Sim(SimCmd::Run(args)) => cmd_sim_run(args),
        Command::Sim(SimCmd::Footprint(args)) => cmd_sim_footprint(args),
        Command::Sim(SimCmd::Attacks(args)) => cmd_sim_attacks(args),
        Command::Cost(CostCmd::Report(args)) => cmd_cost_report(args),
        Command::Cost(CostCmd::Figure(args)) => cmd_cost_figure(args),
    }
}

// ---------------------------------------------------------------------------
// File plumbing
// ---------------------------------------------------------------------------

/// Writes a file atomically: the content lands under a temporary name in
/// the target directory and is renamed into place, so a failure can never
/// leave a partial file behind.
fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| internal(format!("cannot create file in {}: {e}", dir.display())))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| internal(format!("cannot write {}: {e}", path.display())))?;
    tmp.persist(path)
        .map_err(|e| internal(format!("cannot finalize {}: {e}", path.display())))?;
    Ok(())
}

fn read_input(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

/// Resolves a (possibly relative) input path: the working directory wins,
/// then `$CRAUTH_CONFIG_DIR`.
fn resolve_input_path(path: &Path) -> PathBuf {
    if path.is_absolute() || path.exists() {
        return path.to_path_buf();
    }
    if let Ok(dir) = std::env::var(CONFIG_DIR_ENV) {
        let candidate = Path::new(&dir).join(path);
        if candidate.exists() {
            return candidate;
        }
    }
    path.to_path_buf()
}

fn parse_hex32(what: &str, s: &str) -> CliResult<[u8; 32]> {
    let mut out = [0u8; 32];
    if s.len() != 64 || hex::decode_to_slice(s, &mut out).is_err() {
        return Err(invalid(format!("{what} must be 64 hex characters")));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Key files
// ---------------------------------------------------------------------------

fn render_key_file(alg: HashAlgId, kp: &KeyPair) -> String {
    format!(
        "alg = \"{alg}\"\npreimage = \"{}\"\nauth = \"{}\"\n",
        kp.preimage.to_hex(),
        kp.auth.to_hex()
    )
}

fn load_key_file(path: &Path) -> CliResult<(HashAlgId, KeyPair)> {
    let text = read_input(path)?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| invalid(format!("bad key file {}: {e}", path.display())))?;
    let field = |name: &str| -> CliResult<&str> {
        table
            .get(name)
            .and_then(|v| v.as_str())
            .ok_or_else(|| invalid(format!("key file {} lacks {name}", path.display())))
    };
    let alg: HashAlgId = field("alg")?
        .parse()
        .map_err(|e| invalid(format!("bad key file {}: {e}", path.display())))?;
    let preimage = Preimage::from_hex(field("preimage")?)
        .map_err(|_| invalid(format!("bad preimage in {}", path.display())))?;
    let auth = AuthId::from_hex(field("auth")?)
        .map_err(|_| invalid(format!("bad auth in {}", path.display())))?;
    let derived = AuthId(hash(alg, DomainTag::Address, preimage.as_bytes()));
    if derived != auth {
        return Err(invalid(format!(
            "key file {} is inconsistent: auth does not match the preimage",
            path.display()
        )));
    }
    Ok((alg, KeyPair { preimage, auth }))
}

fn load_envelope(path: &Path) -> CliResult<TxEnvelope> {
    let text = read_input(path)?;
    let bytes = hex::decode(text.trim())
        .map_err(|_| invalid(format!("{} is not a hex envelope", path.display())))?;
    TxEnvelope::from_bytes(&bytes)
        .map_err(|e| invalid(format!("bad envelope in {}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Offline protocol commands
// ---------------------------------------------------------------------------

fn cmd_keygen(args: KeygenArgs) -> CliResult<()> {
    let seed = parse_hex32("--seed", &args.seed)?;
    let alg: HashAlgId = args.alg.into();
    let kp = keygen(alg, &seed);
    write_atomic(&args.out, &render_key_file(alg, &kp))?;
    // Only the public half is ever printed.
    println!("auth = {}", kp.auth.to_hex());
    Ok(())
}

fn parse_action(dest: &str, amount: u64) -> CliResult<Action> {
    let dest = AuthId(Digest(parse_hex32("--dest", dest)?));
    Ok(Action::transfer(dest, amount))
}

fn cmd_commit(args: CommitArgs) -> CliResult<()> {
    let (alg, kp) = load_key_file(&args.key)?;
    let action = parse_action(&args.dest, args.amount)?;
    let commitment = make_commit(alg, &kp.preimage, &action, args.mode.into())
        .map_err(|e| invalid(e.to_string()))?;
    let envelope = TxEnvelope::commit(kp.auth, commitment);
    write_atomic(&args.out, &format!("{}\n", hex::encode(envelope.to_bytes())))?;
    println!("account = {}", kp.auth.to_hex());
    Ok(())
}

fn cmd_reveal(args: RevealArgs) -> CliResult<()> {
    let (alg, kp) = load_key_file(&args.key)?;
    let action = parse_action(&args.dest, args.amount)?;
    let next_seed = parse_hex32("--next-seed", &args.next_seed)?;
    let (reveal, next) = make_reveal(alg, &kp.preimage, &action, &next_seed)
        .map_err(|e| invalid(e.to_string()))?;
    // Custody of the rotated key comes before the broadcastable artifact:
    // better to fail with no reveal on disk than with a reveal and no key.
    if let Some(next_key) = &args.next_key {
        write_atomic(next_key, &render_key_file(alg, &next))?;
    }
    let envelope = TxEnvelope::reveal(kp.auth, reveal);
    write_atomic(&args.out, &format!("{}\n", hex::encode(envelope.to_bytes())))?;
    println!("next_auth = {}", next.auth.to_hex());
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> CliResult<()> {
    let commit_env = load_envelope(&args.commit)?;
    let reveal_env = load_envelope(&args.reveal)?;
    let TxPayload::Commit(commitment) = &commit_env.payload else {
        return Err(invalid(format!(
            "{} does not hold a commit envelope",
            args.commit.display()
        )));
    };
    let TxPayload::Reveal(reveal) = &reveal_env.payload else {
        return Err(invalid(format!(
            "{} does not hold a reveal envelope",
            args.reveal.display()
        )));
    };
    if commit_env.account != reveal_env.account {
        return Err(invalid("commit and reveal name different accounts"));
    }
    match verify_reveal(args.alg.into(), commitment, reveal).failure() {
        None => {
            println!("ok: reveal verifies against commitment");
            Ok(())
        }
        Some(f) => Err(invalid(format!("verification failed: {f}"))),
    }
}

// ---------------------------------------------------------------------------
// Ledger and simulation commands
// ---------------------------------------------------------------------------

fn cmd_ledger_run(args: LedgerRunArgs) -> CliResult<()> {
    let path = resolve_input_path(&args.scenario);
    let scenario =
        Scenario::parse(&read_input(&path)?).map_err(|e| invalid(e.to_string()))?;
    let cfg = SimConfig {
        scenario,
        ledger: LedgerConfig {
            alg: args.alg.into(),
            confirmation_depth: args.depth,
            commit_ttl: args.ttl,
        },
        scheme: crauth_core::AuthScheme::CommitReveal {
            mode: args.mode.into(),
        },
        ..SimConfig::default()
    };
    let run = run_simulation(&cfg)?;
    let mut out = String::new();
    for outcome in &run.outcomes {
        let verdict = match &outcome.result {
            Ok(()) => "ok".to_string(),
            Err(reason) => format!("rejected: {reason:?}"),
        };
        let _ = writeln!(out, "[{:>2}] {:<28} -> {verdict}", outcome.index, outcome.event);
    }
    let ledger = run
        .ledger
        .as_ref()
        .expect("commit-reveal runs keep their ledger");
    let _ = write!(out, "\n{}", ledger.export_text());
    print!("{out}");
    Ok(())
}

fn load_sim_config(path: &Path) -> CliResult<SimConfig> {
    let path = resolve_input_path(path);
    let src = read_input(&path)?;
    let base = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."))
        .to_path_buf();
    let cfg = SimConfig::from_toml(&src, |rel| {
        let rel_path = Path::new(rel);
        let candidate = if rel_path.is_absolute() {
            rel_path.to_path_buf()
        } else {
            let local = base.join(rel_path);
            if local.exists() {
                local
            } else {
                resolve_input_path(rel_path)
            }
        };
        fs::read_to_string(candidate)
    })?;
    Ok(cfg)
}

fn render_metrics_text(m: &SimMetrics) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k:<28} {v}");
    };
    line("scheme", m.scheme.clone());
    line("envelope_bytes", m.envelope_bytes.to_string());
    line("final_height", m.final_height.to_string());
    line("submitted_txs", m.submitted_txs.to_string());
    line("accepted_txs", m.accepted_txs.to_string());
    line("rejected_txs", m.rejected_txs.to_string());
    line("rejected_attacks", m.rejected_attacks.to_string());
    line("accepted_attacks", m.accepted_attacks.to_string());
    line("auth_events", m.auth_events.to_string());
    line("honest_auth_bytes", m.honest_auth_bytes.to_string());
    line(
        "bytes_per_auth_event",
        format!("{:.2}", m.footprint_per_auth_event()),
    );
    line(
        "bytes_stored_per_full_node",
        m.bytes_stored_per_full_node.to_string(),
    );
    line("total_bytes_stored", m.total_bytes_stored.to_string());
    line(
        "total_bytes_transmitted",
        m.total_bytes_transmitted.to_string(),
    );
    line(
        "light_header_bytes_per_node",
        m.light_header_bytes_per_node.to_string(),
    );
    for class in &m.per_class {
        line(
            &format!("nodes[{}]", class.class.name()),
            format!(
                "count={} stored_per_node={} snapshots={}",
                class.count, class.bytes_stored_per_node, class.snapshots_per_node
            ),
        );
    }
    for (name, balance) in &m.final_balances {
        line(&format!("balance[{name}]"), balance.to_string());
    }
    out
}

fn cmd_sim_run(args: SimRunArgs) -> CliResult<()> {
    let cfg = load_sim_config(&args.config)?;
    let run: SimRun = run_simulation(&cfg)?;
    match args.format {
        SimFormat::Text => print!("{}", render_metrics_text(&run.metrics)),
        SimFormat::Json => {
            let json = serde_json::to_string_pretty(&run.metrics)
                .map_err(|e| internal(e.to_string()))?;
            println!("{json}");
        }
    }
    Ok(())
}

fn render_footprint_text(r: &FootprintReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "envelope_bytes               {}", r.envelope_bytes);
    let _ = writeln!(out, "commit_tx_bytes              {}", r.commit_tx_bytes);
    let _ = writeln!(out, "reveal_tx_bytes              {}", r.reveal_tx_bytes);
    let _ = writeln!(
        out,
        "cr_bytes_per_auth_model      {}",
        r.cr_bytes_per_auth_model
    );
    let _ = writeln!(out, "signed_tx_bytes              {}", r.signed_tx_bytes);
    let _ = writeln!(out, "auth_events                  {}", r.auth_events);
    let _ = writeln!(
        out,
        "cr_per_auth_measured         {:.4}",
        r.cr_per_auth_measured
    );
    let _ = writeln!(
        out,
        "signed_per_auth_measured     {:.4}",
        r.signed_per_auth_measured
    );
    let _ = writeln!(out, "ratio                        {:.4}", r.ratio);
    let _ = writeln!(out, "balances_match               {}", r.balances_match);
    out
}

fn render_sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("envelope_bytes,cr_per_auth,signed_per_auth,ratio\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{:.4},{:.4},{:.4}",
            p.envelope_bytes, p.cr_per_auth, p.signed_per_auth, p.ratio
        );
    }
    out
}

fn cmd_sim_footprint(args: FootprintArgs) -> CliResult<()> {
    let cfg = match &args.config {
        Some(path) => load_sim_config(path)?,
        None => SimConfig::default(),
    };
    let rendered = if args.sweep {
        render_sweep_csv(&footprint_sweep(&cfg, args.lo, args.hi, args.step)?)
    } else {
        render_footprint_text(&footprint_report(&cfg)?)
    };
    match &args.out {
        Some(path) => write_atomic(path, &rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn render_attack_suite(report: &AttackSuiteReport) -> String {
    let mut out = String::new();
    for case in &report.cases {
        let reasons: Vec<String> = case.reasons.iter().map(|r| format!("{r:?}")).collect();
        let verdict = if case.rejected { "rejected" } else { "ACCEPTED" };
        let _ = writeln!(
            out,
            "{:<12} @ event {:>2}: {verdict} ({})",
            case.kind.name(),
            case.insert_at,
            reasons.join(", ")
        );
    }
    let _ = writeln!(
        out,
        "rejected {}/{} adversary orderings",
        report.rejected_count(),
        report.total()
    );
    out
}

fn cmd_sim_attacks(args: AttacksArgs) -> CliResult<()> {
    let cfg = match &args.config {
        Some(path) => load_sim_config(path)?,
        None => SimConfig::default(),
    };
    let report = run_attack_suite(&cfg)?;
    print!("{}", render_attack_suite(&report));
    if report.all_rejected() {
        Ok(())
    } else {
        Err(invalid("at least one adversary ordering was accepted"))
    }
}

// ---------------------------------------------------------------------------
// Cost commands
// ---------------------------------------------------------------------------

fn load_cost_config(path: &Option<PathBuf>) -> CliResult<CostConfig> {
    match path {
        None => Ok(CostConfig::default()),
        Some(p) => {
            let resolved = resolve_input_path(p);
            Ok(CostConfig::from_toml(&read_input(&resolved)?)?)
        }
    }
}

fn cmd_cost_report(args: CostReportArgs) -> CliResult<()> {
    let cfg = load_cost_config(&args.config)?;
    let report: CostReport = costmodel::build_cost_report(&cfg.profiles, &cfg.assumptions)?;
    match args.format {
        CostFormat::Text => print!("{}", report.render_text()),
        CostFormat::Csv => print!("{}", costmodel::render_table2_csv(&report.storage)),
        CostFormat::Json => {
            let json =
                serde_json::to_string_pretty(&report).map_err(|e| internal(e.to_string()))?;
            println!("{json}");
        }
    }
    Ok(())
}

fn cmd_cost_figure(args: CostFigureArgs) -> CliResult<()> {
    let cfg = load_cost_config(&args.config)?;
    let csv = match args.which {
        FigureArg::Fig1 => costmodel::render_fig1_csv(&cfg.catalog)?,
        FigureArg::Fig2 => costmodel::render_fig2_csv(),
        FigureArg::Table2 => {
            let table = costmodel::aggregate_storage(&cfg.profiles, &cfg.assumptions)?;
            costmodel::render_table2_csv(&table)
        }
    };
    match &args.out {
        Some(path) => write_atomic(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
