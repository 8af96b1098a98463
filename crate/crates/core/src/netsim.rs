//! Deterministic network simulation: scripted wallets driving a ledger that
//! is replicated across light, full, and archive nodes, with per-node byte
//! accounting and an adversary harness.
//!
//! # Byte model
//!
//! Real wire encodings ([`TxEnvelope::to_bytes`]) exist for interchange, but
//! storage and bandwidth metrics deliberately use a *size model* instead: a
//! transaction costs a fixed envelope (headers, fees, metadata — identical
//! across authorization schemes) plus its scheme-specific authorization
//! payload. This isolates the quantity under study — the authorization
//! overhead — from encoding trivia:
//!
//! * commit–reveal, full mode: commit carries two digests (64 B), reveal
//!   carries preimage + next auth id (64 B);
//! * commit–reveal, compact mode: commit shrinks to one digest (32 B);
//! * modeled signature baseline: one transaction per transfer carrying a
//!   recoverable ECDSA signature + compressed public key (98 B).
//!
//! # Accounting rules
//!
//! * Full and archive nodes store every **accepted** transaction's model
//!   bytes; archive nodes additionally record one state snapshot per block.
//! * Light nodes store an 80-byte header per accepted transaction and are
//!   excluded from `total_bytes_stored`.
//! * `total_bytes_transmitted` counts every **submitted** transaction —
//!   rejected ones included — once per storing node.
//! * Adversary transactions are counted in transmission/storage but never in
//!   `honest_auth_bytes`, the numerator of the per-authorization footprint.
//!
//! # Scheme independence
//!
//! Running the same attack-free script under commit–reveal and under the
//! modeled signature scheme yields identical final balances, as long as the
//! script is *well-formed*: each wallet alternates commit and reveal, every
//! reveal lands within its commit's validity window, and no recipient
//! rotates keys while a transfer to them is in flight. The bundled scripts
//! satisfy this, and tests assert the equality.
//!
//! # Adversary events
//!
//! `replay_spent` re-submits the target's last accepted reveal envelope
//! verbatim. `front_run` commits on the target's account with a preimage the
//! adversary observed — the one bound by a still-pending commit (a mempool
//! race, compressed to event order) or the one exposed by the last reveal.
//! `forge` pairs the target's published auth id with a guessed preimage:
//! the commit is indistinguishable from an honest one and may be accepted,
//! so the attack also ages it past the confirmation depth and attempts the
//! spend. An attack is *rejected* when no value-moving submission of its was
//! accepted.

use std::collections::BTreeMap;

use rand_chacha::rand_core::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hash::{hash, DomainTag, HashAlgId};
use crate::ledger::{GenesisError, LedgerConfig, LedgerState, RejectReason, TxEnvelope};
use crate::protocol::{
    keygen, make_commit, make_reveal, Action, AuthId, CommitMode, Commitment, KeyPair, Preimage,
    Reveal,
};
use crate::scenario::{AttackKind, Scenario, ScenarioError, ScenarioEvent};

/// Shared per-transaction overhead (headers, fees, metadata) assumed by the
/// size model, in bytes.
pub const DEFAULT_ENVELOPE_BYTES: u64 = 128;

/// Authorization payload of the modeled signature baseline: a 65-byte
/// recoverable ECDSA signature plus a 33-byte compressed public key.
pub const ECDSA_AUTH_BYTES: u64 = 98;

/// Header bytes a light node stores per accepted transaction.
pub const LIGHT_HEADER_BYTES: u64 = 80;

/// Node storage classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeClass {
    Light,
    Full,
    Archive,
}

impl NodeClass {
    pub fn name(self) -> &'static str {
        match self {
            NodeClass::Light => "light",
            NodeClass::Full => "full",
            NodeClass::Archive => "archive",
        }
    }
}

/// The authorization scheme a simulation charges bytes for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuthScheme {
    /// Hash-based commit–reveal; two transactions per transfer.
    CommitReveal { mode: CommitMode },
    /// Signature baseline; one transaction per transfer. Only byte costs are
    /// modeled — no signature math runs.
    ModeledSignature { name: String, auth_bytes: u64 },
}

impl AuthScheme {
    pub fn ecdsa() -> Self {
        AuthScheme::ModeledSignature {
            name: "ECDSA".to_string(),
            auth_bytes: ECDSA_AUTH_BYTES,
        }
    }

    pub fn label(&self) -> String {
        match self {
            AuthScheme::CommitReveal {
                mode: CommitMode::Full,
            } => "commit-reveal (full)".to_string(),
            AuthScheme::CommitReveal {
                mode: CommitMode::Compact,
            } => "commit-reveal (compact)".to_string(),
            AuthScheme::ModeledSignature { name, auth_bytes } => {
                format!("{name} signature ({auth_bytes} B)")
            }
        }
    }
}

/// Transaction sizes under the shared-envelope model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeModel {
    pub envelope_bytes: u64,
}

impl SizeModel {
    pub fn commit_auth_bytes(mode: CommitMode) -> u64 {
        match mode {
            CommitMode::Full => 64,
            CommitMode::Compact => 32,
        }
    }

    pub fn reveal_auth_bytes() -> u64 {
        64
    }

    pub fn commit_tx_bytes(&self, mode: CommitMode) -> u64 {
        self.envelope_bytes + Self::commit_auth_bytes(mode)
    }

    pub fn reveal_tx_bytes(&self) -> u64 {
        self.envelope_bytes + Self::reveal_auth_bytes()
    }

    pub fn signed_tx_bytes(&self, auth_bytes: u64) -> u64 {
        self.envelope_bytes + auth_bytes
    }

    /// Bytes per completed commit–reveal authorization (both transactions).
    pub fn cr_bytes_per_auth(&self, mode: CommitMode) -> u64 {
        self.commit_tx_bytes(mode) + self.reveal_tx_bytes()
    }
}

/// Full simulation input.
#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub light_nodes: u64,
    pub full_nodes: u64,
    pub archive_nodes: u64,
    /// Seeds wallet keys and adversary guesses; equal seeds give bit-equal runs.
    pub seed: u64,
    pub envelope_bytes: u64,
    pub scheme: AuthScheme,
    pub ledger: LedgerConfig,
    pub scenario: Scenario,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            light_nodes: 0,
            full_nodes: 10,
            archive_nodes: 0,
            seed: 0,
            envelope_bytes: DEFAULT_ENVELOPE_BYTES,
            scheme: AuthScheme::CommitReveal {
                mode: CommitMode::Full,
            },
            ledger: LedgerConfig::default(),
            scenario: crate::scenario::default_transfer_scenario(),
        }
    }
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("config error: {0}")]
    Config(String),
    #[error("script error: {0}")]
    Script(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("genesis error: {0}")]
    Genesis(#[from] GenesisError),
    #[error("cannot load scenario: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSimConfig {
    seed: Option<u64>,
    light_nodes: Option<u64>,
    full_nodes: Option<u64>,
    archive_nodes: Option<u64>,
    envelope_bytes: Option<u64>,
    scenario_path: Option<String>,
    events: Option<Vec<String>>,
    scheme: Option<RawScheme>,
    ledger: Option<RawLedger>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScheme {
    kind: String,
    mode: Option<String>,
    name: Option<String>,
    auth_bytes: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLedger {
    alg: Option<String>,
    confirmation_depth: Option<u64>,
    commit_ttl: Option<u64>,
}

impl SimConfig {
    /// Parses a TOML configuration. Scalar keys (`seed`, node counts,
    /// `envelope_bytes`, and `scenario_path` *or* inline `events`) come
    /// before the optional `[scheme]` and `[ledger]` tables. `load` resolves
    /// a `scenario_path` to script text; omitting both script keys selects
    /// the bundled default transfer script.
    pub fn from_toml(
        src: &str,
        load: impl FnOnce(&str) -> std::io::Result<String>,
    ) -> Result<Self, SimError> {
        let raw: RawSimConfig =
            toml::from_str(src).map_err(|e| SimError::Config(format!("bad TOML: {e}")))?;
        let mut cfg = SimConfig::default();
        if let Some(seed) = raw.seed {
            cfg.seed = seed;
        }
        if let Some(n) = raw.light_nodes {
            cfg.light_nodes = n;
        }
        if let Some(n) = raw.full_nodes {
            cfg.full_nodes = n;
        }
        if let Some(n) = raw.archive_nodes {
            cfg.archive_nodes = n;
        }
        if let Some(b) = raw.envelope_bytes {
            cfg.envelope_bytes = b;
        }
        if let Some(scheme) = raw.scheme {
            cfg.scheme = match scheme.kind.as_str() {
                "cr" | "commit-reveal" => {
                    if scheme.name.is_some() || scheme.auth_bytes.is_some() {
                        return Err(SimError::Config(
                            "scheme keys `name`/`auth_bytes` apply only to kind = \"sig\"".into(),
                        ));
                    }
                    let mode = match scheme.mode.as_deref() {
                        None | Some("full") => CommitMode::Full,
                        Some("compact") => CommitMode::Compact,
                        Some(other) => {
                            return Err(SimError::Config(format!(
                                "unknown commit mode {other:?} (expected \"full\" or \"compact\")"
                            )))
                        }
                    };
                    AuthScheme::CommitReveal { mode }
                }
                "sig" | "signature" => {
                    if scheme.mode.is_some() {
                        return Err(SimError::Config(
                            "scheme key `mode` applies only to kind = \"cr\"".into(),
                        ));
                    }
                    AuthScheme::ModeledSignature {
                        name: scheme.name.unwrap_or_else(|| "ECDSA".to_string()),
                        auth_bytes: scheme.auth_bytes.unwrap_or(ECDSA_AUTH_BYTES),
                    }
                }
                other => {
                    return Err(SimError::Config(format!(
                        "unknown scheme kind {other:?} (expected \"cr\" or \"sig\")"
                    )))
                }
            };
        }
        if let Some(ledger) = raw.ledger {
            if let Some(alg) = ledger.alg {
                cfg.ledger.alg = alg
                    .parse::<HashAlgId>()
                    .map_err(|e| SimError::Config(e.to_string()))?;
            }
            if let Some(d) = ledger.confirmation_depth {
                cfg.ledger.confirmation_depth = d;
            }
            if let Some(t) = ledger.commit_ttl {
                cfg.ledger.commit_ttl = t;
            }
            cfg.ledger
                .validate()
                .map_err(|e| SimError::Config(e.to_string()))?;
        }
        cfg.scenario = match (raw.scenario_path, raw.events) {
            (Some(_), Some(_)) => {
                return Err(SimError::Config(
                    "give either `scenario_path` or inline `events`, not both".into(),
                ))
            }
            (Some(path), None) => Scenario::parse(&load(&path)?)?,
            (None, Some(lines)) => Scenario::parse(&lines.join("\n"))?,
            (None, None) => crate::scenario::default_transfer_scenario(),
        };
        Ok(cfg)
    }
}

/// Per-class storage summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeClassMetrics {
    pub class: NodeClass,
    pub count: u64,
    pub bytes_stored_per_node: u64,
    /// State snapshots retained per node; archive nodes only.
    pub snapshots_per_node: u64,
}

/// Aggregated simulation measurements.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimMetrics {
    pub scheme: String,
    pub envelope_bytes: u64,
    pub final_height: u64,
    pub submitted_txs: u64,
    pub accepted_txs: u64,
    pub rejected_txs: u64,
    pub rejected_attacks: u64,
    pub accepted_attacks: u64,
    /// Completed authorizations (accepted reveals / signed transfers).
    pub auth_events: u64,
    /// Model bytes of accepted honest transactions.
    pub honest_auth_bytes: u64,
    pub bytes_stored_per_full_node: u64,
    /// Across full + archive nodes; light nodes excluded.
    pub total_bytes_stored: u64,
    pub total_bytes_transmitted: u64,
    pub light_header_bytes_per_node: u64,
    pub per_class: Vec<NodeClassMetrics>,
    pub final_balances: BTreeMap<String, u64>,
}

impl SimMetrics {
    /// Honest accepted bytes per completed authorization.
    pub fn footprint_per_auth_event(&self) -> f64 {
        if self.auth_events == 0 {
            0.0
        } else {
            self.honest_auth_bytes as f64 / self.auth_events as f64
        }
    }
}

/// What the ledger did with one scripted event. For adversary events the
/// result reflects the attack's final value-moving submission, so `Err`
/// means the attack was repelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventOutcome {
    pub index: usize,
    pub event: ScenarioEvent,
    pub result: Result<(), RejectReason>,
}

/// One adversary event's fate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackOutcome {
    pub kind: AttackKind,
    pub target: String,
    /// True when no value-moving submission of the attack was accepted.
    pub rejected: bool,
    /// Rejection reasons in submission order.
    pub reasons: Vec<RejectReason>,
}

/// A finished simulation.
#[derive(Clone, Debug)]
pub struct SimRun {
    pub metrics: SimMetrics,
    pub outcomes: Vec<EventOutcome>,
    pub attacks: Vec<AttackOutcome>,
    /// Final ledger state; `None` under the modeled signature scheme.
    pub ledger: Option<LedgerState>,
}

struct Tally {
    storing_nodes: u64,
    submitted: u64,
    accepted: u64,
    rejected: u64,
    stored_per_node: u64,
    transmitted: u64,
    light_bytes: u64,
    honest_auth_bytes: u64,
    auth_events: u64,
    rejected_attacks: u64,
    accepted_attacks: u64,
}

impl Tally {
    fn new(storing_nodes: u64) -> Self {
        Tally {
            storing_nodes,
            submitted: 0,
            accepted: 0,
            rejected: 0,
            stored_per_node: 0,
            transmitted: 0,
            light_bytes: 0,
            honest_auth_bytes: 0,
            auth_events: 0,
            rejected_attacks: 0,
            accepted_attacks: 0,
        }
    }

    fn submit(&mut self, bytes: u64, accepted: bool) {
        self.submitted += 1;
        self.transmitted = self
            .transmitted
            .saturating_add(bytes.saturating_mul(self.storing_nodes));
        if accepted {
            self.accepted += 1;
            self.stored_per_node = self.stored_per_node.saturating_add(bytes);
            self.light_bytes += LIGHT_HEADER_BYTES;
        } else {
            self.rejected += 1;
        }
    }
}

struct CrWallet {
    kp: KeyPair,
    /// Action bound by the wallet's most recently *submitted* commit.
    staged: Option<Action>,
    /// Preimage most recently disclosed in a broadcast reveal, accepted or not.
    exposed: Option<Preimage>,
    last_accepted_reveal: Option<TxEnvelope>,
}

fn rng_for_seed(seed: u64) -> ChaCha20Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    ChaCha20Rng::from_seed(bytes)
}

fn draw_seed(rng: &mut ChaCha20Rng) -> [u8; 32] {
    let mut bytes = [0u8; 32];
    rng.fill_bytes(&mut bytes);
    bytes
}

fn genesis_allocations(scenario: &Scenario) -> Vec<(String, u64)> {
    scenario
        .events
        .iter()
        .filter_map(|e| match e {
            ScenarioEvent::Genesis { name, amount } => Some((name.clone(), *amount)),
            _ => None,
        })
        .collect()
}

/// Runs one simulation to completion. Equal configs produce equal runs.
pub fn run_simulation(cfg: &SimConfig) -> Result<SimRun, SimError> {
    cfg.scenario.validate()?;
    cfg.ledger
        .validate()
        .map_err(|e| SimError::Config(e.to_string()))?;
    match &cfg.scheme {
        AuthScheme::CommitReveal { mode } => run_commit_reveal(cfg, *mode),
        AuthScheme::ModeledSignature { auth_bytes, .. } => {
            if cfg.scenario.has_attacks() {
                return Err(SimError::Config(
                    "adversary events require the commit-reveal scheme".into(),
                ));
            }
            run_modeled_signature(cfg, *auth_bytes)
        }
    }
}

fn build_metrics(
    cfg: &SimConfig,
    tally: Tally,
    final_height: u64,
    final_balances: BTreeMap<String, u64>,
) -> SimMetrics {
    let per_class = vec![
        NodeClassMetrics {
            class: NodeClass::Light,
            count: cfg.light_nodes,
            bytes_stored_per_node: tally.light_bytes,
            snapshots_per_node: 0,
        },
        NodeClassMetrics {
            class: NodeClass::Full,
            count: cfg.full_nodes,
            bytes_stored_per_node: tally.stored_per_node,
            snapshots_per_node: 0,
        },
        NodeClassMetrics {
            class: NodeClass::Archive,
            count: cfg.archive_nodes,
            bytes_stored_per_node: tally.stored_per_node,
            snapshots_per_node: final_height,
        },
    ];
    SimMetrics {
        scheme: cfg.scheme.label(),
        envelope_bytes: cfg.envelope_bytes,
        final_height,
        submitted_txs: tally.submitted,
        accepted_txs: tally.accepted,
        rejected_txs: tally.rejected,
        rejected_attacks: tally.rejected_attacks,
        accepted_attacks: tally.accepted_attacks,
        auth_events: tally.auth_events,
        honest_auth_bytes: tally.honest_auth_bytes,
        bytes_stored_per_full_node: tally.stored_per_node,
        total_bytes_stored: tally
            .stored_per_node
            .saturating_mul(tally.storing_nodes),
        total_bytes_transmitted: tally.transmitted,
        light_header_bytes_per_node: tally.light_bytes,
        per_class,
        final_balances,
    }
}

fn run_commit_reveal(cfg: &SimConfig, mode: CommitMode) -> Result<SimRun, SimError> {
    let alg = cfg.ledger.alg;
    let model = SizeModel {
        envelope_bytes: cfg.envelope_bytes,
    };
    let mut rng = rng_for_seed(cfg.seed);
    let mut wallets: BTreeMap<String, CrWallet> = BTreeMap::new();
    let mut allocations = Vec::new();
    for (name, amount) in genesis_allocations(&cfg.scenario) {
        let kp = keygen(alg, &draw_seed(&mut rng));
        allocations.push((kp.auth, amount));
        wallets.insert(
            name,
            CrWallet {
                kp,
                staged: None,
                exposed: None,
                last_accepted_reveal: None,
            },
        );
    }
    let adversary = keygen(alg, &draw_seed(&mut rng));
    let mut ledger = LedgerState::genesis(cfg.ledger, &allocations)?;

    let mut tally = Tally::new(cfg.full_nodes + cfg.archive_nodes);
    let mut outcomes = Vec::new();
    let mut attacks = Vec::new();

    for (index, event) in cfg.scenario.events.iter().enumerate() {
        let result: Result<(), RejectReason> = match event {
            ScenarioEvent::Genesis { .. } => Ok(()),
            ScenarioEvent::Advance { blocks } => {
                ledger.advance_height(*blocks);
                Ok(())
            }
            ScenarioEvent::Commit { from, to, amount } => {
                let dest = wallets[to].kp.auth;
                let w = wallets.get_mut(from).expect("validated name");
                let m = Action::transfer(dest, *amount);
                let c = make_commit(alg, &w.kp.preimage, &m, mode)
                    .expect("scripted amounts are positive");
                let env = TxEnvelope::commit(w.kp.auth, c);
                let res = ledger.apply(&env);
                // Staged on submission: the wallet proceeds to reveal what it
                // believes it committed, even if the chain refused the lock.
                w.staged = Some(m);
                let bytes = model.commit_tx_bytes(mode);
                tally.submit(bytes, res.is_ok());
                if res.is_ok() {
                    tally.honest_auth_bytes += bytes;
                }
                res
            }
            ScenarioEvent::Reveal { from } => {
                let w = wallets.get_mut(from).expect("validated name");
                let m = w.staged.ok_or_else(|| {
                    SimError::Script(format!("reveal from {from:?} has nothing staged"))
                })?;
                let next_seed = draw_seed(&mut rng);
                let (reveal, next) = make_reveal(alg, &w.kp.preimage, &m, &next_seed)
                    .expect("staged action is well-formed");
                let env = TxEnvelope::reveal(w.kp.auth, reveal);
                w.exposed = Some(w.kp.preimage.clone());
                let res = ledger.apply(&env);
                let bytes = model.reveal_tx_bytes();
                tally.submit(bytes, res.is_ok());
                if res.is_ok() {
                    tally.honest_auth_bytes += bytes;
                    tally.auth_events += 1;
                    w.last_accepted_reveal = Some(env);
                    w.kp = next;
                    w.staged = None;
                }
                res
            }
            ScenarioEvent::Attack { kind, target } => {
                let outcome = run_attack(
                    *kind, target, alg, mode, &model, &mut ledger, &wallets, &adversary,
                    &mut rng, &mut tally,
                )?;
                let result = match outcome.reasons.last() {
                    Some(reason) if outcome.rejected => Err(*reason),
                    _ => Ok(()),
                };
                attacks.push(outcome);
                result
            }
        };
        outcomes.push(EventOutcome {
            index,
            event: event.clone(),
            result,
        });
    }

    let final_balances = wallets
        .iter()
        .map(|(name, w)| {
            let balance = ledger.account(&w.kp.auth).map_or(0, |a| a.balance);
            (name.clone(), balance)
        })
        .collect();
    let metrics = build_metrics(cfg, tally, ledger.height(), final_balances);
    Ok(SimRun {
        metrics,
        outcomes,
        attacks,
        ledger: Some(ledger),
    })
}

#[allow(clippy::too_many_arguments)]
fn run_attack(
    kind: AttackKind,
    target: &str,
    alg: HashAlgId,
    mode: CommitMode,
    model: &SizeModel,
    ledger: &mut LedgerState,
    wallets: &BTreeMap<String, CrWallet>,
    adversary: &KeyPair,
    rng: &mut ChaCha20Rng,
    tally: &mut Tally,
) -> Result<AttackOutcome, SimError> {
    let w = &wallets[target];
    let mut reasons = Vec::new();
    let rejected = match kind {
        AttackKind::ReplaySpent => {
            let env = w.last_accepted_reveal.clone().ok_or_else(|| {
                SimError::Script(format!("replay_spent: {target:?} has no accepted reveal"))
            })?;
            let res = ledger.apply(&env);
            tally.submit(model.reveal_tx_bytes(), res.is_ok());
            match res {
                Err(r) => {
                    reasons.push(r);
                    true
                }
                Ok(()) => false,
            }
        }
        AttackKind::FrontRun => {
            let x = if w.staged.is_some() {
                w.kp.preimage.clone()
            } else {
                w.exposed.clone().ok_or_else(|| {
                    SimError::Script(format!(
                        "front_run: {target:?} has broadcast no preimage to observe"
                    ))
                })?
            };
            let m = Action::transfer(adversary.auth, 1);
            let c = make_commit(alg, &x, &m, mode).expect("forged action is well-formed");
            let account = AuthId(hash(alg, DomainTag::Address, x.as_bytes()));
            let res = ledger.apply(&TxEnvelope::commit(account, c));
            tally.submit(model.commit_tx_bytes(mode), res.is_ok());
            match res {
                Err(r) => {
                    reasons.push(r);
                    true
                }
                Ok(()) => false,
            }
        }
        AttackKind::Forge => {
            // The adversary knows the target's public auth id but not its
            // preimage; it fabricates a binding with a guess.
            let x_guess = Preimage::from_bytes(draw_seed(rng));
            let m = Action::transfer(adversary.auth, 1);
            let mut bind_input = x_guess.as_bytes().to_vec();
            bind_input.extend_from_slice(&m.canonical_bytes());
            let bind = hash(alg, DomainTag::Binding, &bind_input);
            let c = Commitment::from_digests(mode, w.kp.auth.0, bind);
            let res = ledger.apply(&TxEnvelope::commit(w.kp.auth, c));
            tally.submit(model.commit_tx_bytes(mode), res.is_ok());
            match res {
                Err(r) => {
                    reasons.push(r);
                    true
                }
                Ok(()) => {
                    // The junk commit was accepted. Age it to spendability
                    // and attempt the reveal with the guessed preimage.
                    ledger.advance_height(ledger.config().confirmation_depth);
                    let reveal = Reveal {
                        x: x_guess,
                        m,
                        next_auth: adversary.auth,
                    };
                    let rres = ledger.apply(&TxEnvelope::reveal(w.kp.auth, reveal));
                    tally.submit(model.reveal_tx_bytes(), rres.is_ok());
                    match rres {
                        Err(r) => {
                            reasons.push(r);
                            true
                        }
                        Ok(()) => false,
                    }
                }
            }
        }
    };
    if rejected {
        tally.rejected_attacks += 1;
    } else {
        tally.accepted_attacks += 1;
    }
    Ok(AttackOutcome {
        kind,
        target: target.to_string(),
        rejected,
        reasons,
    })
}

struct SigWallet {
    balance: u64,
    staged: Option<(String, u64)>,
}

fn run_modeled_signature(cfg: &SimConfig, auth_bytes: u64) -> Result<SimRun, SimError> {
    let model = SizeModel {
        envelope_bytes: cfg.envelope_bytes,
    };
    let mut wallets: BTreeMap<String, SigWallet> = genesis_allocations(&cfg.scenario)
        .into_iter()
        .map(|(name, amount)| {
            (
                name,
                SigWallet {
                    balance: amount,
                    staged: None,
                },
            )
        })
        .collect();

    let mut height = 0u64;
    let mut tally = Tally::new(cfg.full_nodes + cfg.archive_nodes);
    let mut outcomes = Vec::new();

    for (index, event) in cfg.scenario.events.iter().enumerate() {
        let result: Result<(), RejectReason> = match event {
            ScenarioEvent::Genesis { .. } => Ok(()),
            ScenarioEvent::Advance { blocks } => {
                height += blocks;
                Ok(())
            }
            ScenarioEvent::Commit { from, to, amount } => {
                // No commit transaction exists under a signature scheme; the
                // event only registers intent. The stage-lock mirrors the
                // ledger's account lock so rejection patterns line up.
                let w = wallets.get_mut(from).expect("validated name");
                if w.staged.is_some() {
                    Err(RejectReason::AccountLocked)
                } else {
                    w.staged = Some((to.clone(), *amount));
                    Ok(())
                }
            }
            ScenarioEvent::Reveal { from } => {
                let staged = wallets
                    .get(from)
                    .expect("validated name")
                    .staged
                    .clone()
                    .ok_or_else(|| {
                        SimError::Script(format!("reveal from {from:?} has nothing staged"))
                    })?;
                let (to, amount) = staged;
                let bytes = model.signed_tx_bytes(auth_bytes);
                if wallets[from].balance < amount {
                    tally.submit(bytes, false);
                    Err(RejectReason::InsufficientBalance)
                } else {
                    wallets.get_mut(from).unwrap().balance -= amount;
                    wallets.get_mut(&to).unwrap().balance += amount;
                    let w = wallets.get_mut(from).unwrap();
                    w.staged = None;
                    tally.submit(bytes, true);
                    tally.honest_auth_bytes += bytes;
                    tally.auth_events += 1;
                    Ok(())
                }
            }
            ScenarioEvent::Attack { .. } => {
                unreachable!("attacks rejected before the modeled run starts")
            }
        };
        outcomes.push(EventOutcome {
            index,
            event: event.clone(),
            result,
        });
    }

    let final_balances = wallets
        .iter()
        .map(|(name, w)| (name.clone(), w.balance))
        .collect();
    let metrics = build_metrics(cfg, tally, height, final_balances);
    Ok(SimRun {
        metrics,
        outcomes,
        attacks: Vec::new(),
        ledger: None,
    })
}

/// Storage-amplification comparison of commit–reveal against the signature
/// baseline, from two runs of the same script.
#[derive(Clone, Debug, Serialize)]
pub struct FootprintReport {
    pub envelope_bytes: u64,
    pub commit_tx_bytes: u64,
    pub reveal_tx_bytes: u64,
    /// Closed-form commit-reveal bytes per authorization under the model.
    pub cr_bytes_per_auth_model: u64,
    pub signed_tx_bytes: u64,
    pub auth_events: u64,
    pub cr_per_auth_measured: f64,
    pub signed_per_auth_measured: f64,
    /// Measured commit–reveal bytes per authorization over the baseline's.
    pub ratio: f64,
    pub balances_match: bool,
    pub final_balances: BTreeMap<String, u64>,
}

/// Runs `cfg`'s script under commit–reveal and under the ECDSA baseline and
/// compares per-authorization footprints. The script must be attack-free,
/// use a commit–reveal scheme, and complete at least one authorization.
pub fn footprint_report(cfg: &SimConfig) -> Result<FootprintReport, SimError> {
    let AuthScheme::CommitReveal { mode } = &cfg.scheme else {
        return Err(SimError::Config(
            "footprint comparison starts from a commit-reveal config".into(),
        ));
    };
    let mode = *mode;
    if cfg.scenario.has_attacks() {
        return Err(SimError::Config(
            "footprint comparison needs an attack-free script".into(),
        ));
    }
    let cr = run_simulation(cfg)?;
    let mut sig_cfg = cfg.clone();
    sig_cfg.scheme = AuthScheme::ecdsa();
    let sig = run_simulation(&sig_cfg)?;
    if cr.metrics.auth_events == 0 || sig.metrics.auth_events == 0 {
        return Err(SimError::Config(
            "footprint comparison needs at least one completed authorization".into(),
        ));
    }
    let model = SizeModel {
        envelope_bytes: cfg.envelope_bytes,
    };
    let cr_per = cr.metrics.footprint_per_auth_event();
    let sig_per = sig.metrics.footprint_per_auth_event();
    Ok(FootprintReport {
        envelope_bytes: cfg.envelope_bytes,
        commit_tx_bytes: model.commit_tx_bytes(mode),
        reveal_tx_bytes: model.reveal_tx_bytes(),
        cr_bytes_per_auth_model: model.cr_bytes_per_auth(mode),
        signed_tx_bytes: model.signed_tx_bytes(ECDSA_AUTH_BYTES),
        auth_events: cr.metrics.auth_events,
        cr_per_auth_measured: cr_per,
        signed_per_auth_measured: sig_per,
        ratio: cr_per / sig_per,
        balances_match: cr.metrics.final_balances == sig.metrics.final_balances,
        final_balances: cr.metrics.final_balances,
    })
}

/// One envelope size in a [`footprint_sweep`].
#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub envelope_bytes: u64,
    pub cr_per_auth: f64,
    pub signed_per_auth: f64,
    pub ratio: f64,
}

/// Measures the footprint ratio across envelope sizes `lo..=hi`. The ratio
/// falls toward the zero-envelope bound as the shared overhead shrinks and
/// rises toward 2 as it dominates.
pub fn footprint_sweep(
    cfg: &SimConfig,
    lo: u64,
    hi: u64,
    step: u64,
) -> Result<Vec<SweepPoint>, SimError> {
    if step == 0 {
        return Err(SimError::Config("sweep step must be positive".into()));
    }
    if lo > hi {
        return Err(SimError::Config("sweep range is empty".into()));
    }
    let mut points = Vec::new();
    let mut envelope = lo;
    loop {
        let mut point_cfg = cfg.clone();
        point_cfg.envelope_bytes = envelope;
        let report = footprint_report(&point_cfg)?;
        points.push(SweepPoint {
            envelope_bytes: envelope,
            cr_per_auth: report.cr_per_auth_measured,
            signed_per_auth: report.signed_per_auth_measured,
            ratio: report.ratio,
        });
        match envelope.checked_add(step) {
            Some(next) if next <= hi => envelope = next,
            _ => break,
        }
    }
    Ok(points)
}

/// One adversary ordering from the suite.
#[derive(Clone, Debug)]
pub struct AttackCase {
    pub kind: AttackKind,
    /// Event index the attack was inserted at in the base script.
    pub insert_at: usize,
    pub rejected: bool,
    pub reasons: Vec<RejectReason>,
}

/// Results of [`run_attack_suite`].
#[derive(Clone, Debug)]
pub struct AttackSuiteReport {
    pub base_script: String,
    pub cases: Vec<AttackCase>,
}

impl AttackSuiteReport {
    pub fn total(&self) -> usize {
        self.cases.len()
    }

    pub fn rejected_count(&self) -> usize {
        self.cases.iter().filter(|c| c.rejected).count()
    }

    pub fn all_rejected(&self) -> bool {
        self.cases.iter().all(|c| c.rejected)
    }
}

/// The two-transfer script attack orderings are injected into. `depth` is
/// the ledger's confirmation depth.
pub fn base_attack_scenario(depth: u64) -> Scenario {
    let text = format!(
        "genesis victim 100\n\
         genesis peer 50\n\
         commit victim peer 30\n\
         advance {depth}\n\
         reveal victim\n\
         advance 1\n\
         commit peer victim 10\n\
         advance {depth}\n\
         reveal peer\n\
         advance 1\n"
    );
    Scenario::parse(&text).expect("base attack script parses")
}

/// Exhaustively inserts each attack kind at every causally meaningful point
/// of the base two-transfer script and runs one simulation per ordering:
/// replays after the victim's reveal, front-runs after the victim's commit,
/// forgeries anywhere after genesis — one attack per run, every run started
/// from the same seed.
pub fn run_attack_suite(cfg: &SimConfig) -> Result<AttackSuiteReport, SimError> {
    if !matches!(cfg.scheme, AuthScheme::CommitReveal { .. }) {
        return Err(SimError::Config(
            "the attack suite runs against the commit-reveal scheme".into(),
        ));
    }
    let base = base_attack_scenario(cfg.ledger.confirmation_depth);
    let end = base.events.len();
    let mut cases = Vec::new();
    for kind in AttackKind::ALL {
        // Earliest insertion that satisfies the attack's observation
        // prerequisite: forge needs only a declared target (index 2, after
        // genesis), a front-run needs the victim's commit (index 2) behind
        // it, a replay needs the victim's reveal (index 4) behind it.
        let first = match kind {
            AttackKind::Forge => 2,
            AttackKind::FrontRun => 3,
            AttackKind::ReplaySpent => 5,
        };
        for insert_at in first..=end {
            let mut events = base.events.clone();
            events.insert(
                insert_at,
                ScenarioEvent::Attack {
                    kind,
                    target: "victim".to_string(),
                },
            );
            let mut case_cfg = cfg.clone();
            case_cfg.scenario = Scenario { events };
            let run = run_simulation(&case_cfg)?;
            let attack = run
                .attacks
                .first()
                .expect("each suite case contains exactly one attack");
            cases.push(AttackCase {
                kind,
                insert_at,
                rejected: attack.rejected,
                reasons: attack.reasons.clone(),
            });
        }
    }
    Ok(AttackSuiteReport {
        base_script: base.to_text(),
        cases,
    })
}
