//! Scenario scripts: ordered ledger events in a line-oriented text form.
//!
//! A script declares named wallets and then drives them through commits,
//! reveals, block advances, and adversary events:
//!
//! ```text
//! # comments and blank lines are ignored
//! genesis alice 100
//! genesis bob 50
//! commit alice bob 30
//! advance 1
//! reveal alice
//! attack replay_spent alice
//! ```
//!
//! Parsing performs the static checks that make a script meaningful —
//! genesis lines form a contiguous prefix, names are declared before use,
//! amounts and block counts are positive, reveals follow a commit, and
//! adversary events follow the observation they rely on. Dynamic rules
//! (locks, depths, TTLs, balances) are the simulator's business.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// The three adversary event classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttackKind {
    /// Re-submit the target's last accepted reveal verbatim.
    ReplaySpent,
    /// Commit on the target's account using a preimage observed from a
    /// broadcast reveal.
    FrontRun,
    /// Commit against the target's account id with a guessed preimage, then
    /// attempt the reveal.
    Forge,
}

impl AttackKind {
    pub const ALL: [AttackKind; 3] = [AttackKind::ReplaySpent, AttackKind::FrontRun, AttackKind::Forge];

    pub fn name(self) -> &'static str {
        match self {
            AttackKind::ReplaySpent => "replay_spent",
            AttackKind::FrontRun => "front_run",
            AttackKind::Forge => "forge",
        }
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AttackKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "replay_spent" => Ok(AttackKind::ReplaySpent),
            "front_run" => Ok(AttackKind::FrontRun),
            "forge" => Ok(AttackKind::Forge),
            other => Err(format!(
                "unknown attack kind {other:?} (expected replay_spent, front_run, or forge)"
            )),
        }
    }
}

/// One scripted event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScenarioEvent {
    Genesis { name: String, amount: u64 },
    Commit { from: String, to: String, amount: u64 },
    Advance { blocks: u64 },
    Reveal { from: String },
    Attack { kind: AttackKind, target: String },
}

impl fmt::Display for ScenarioEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioEvent::Genesis { name, amount } => write!(f, "genesis {name} {amount}"),
            ScenarioEvent::Commit { from, to, amount } => write!(f, "commit {from} {to} {amount}"),
            ScenarioEvent::Advance { blocks } => write!(f, "advance {blocks}"),
            ScenarioEvent::Reveal { from } => write!(f, "reveal {from}"),
            ScenarioEvent::Attack { kind, target } => write!(f, "attack {kind} {target}"),
        }
    }
}

/// A validated, ordered event list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub events: Vec<ScenarioEvent>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("scenario line {line}: {msg}")]
pub struct ScenarioError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ScenarioError {
    ScenarioError {
        line,
        msg: msg.into(),
    }
}

fn parse_amount(line: usize, token: &str, what: &str) -> Result<u64, ScenarioError> {
    let value: u64 = token
        .parse()
        .map_err(|_| err(line, format!("{what} {token:?} is not an unsigned integer")))?;
    if value == 0 {
        return Err(err(line, format!("{what} must be positive")));
    }
    Ok(value)
}

impl Scenario {
    /// Parses and validates a script. Line numbers in errors are 1-based.
    pub fn parse(src: &str) -> Result<Self, ScenarioError> {
        let mut events = Vec::new();
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let event = match tokens[0] {
                "genesis" => {
                    let [_, name, amount] = tokens[..] else {
                        return Err(err(line_no, "expected: genesis <name> <amount>"));
                    };
                    ScenarioEvent::Genesis {
                        name: name.to_string(),
                        amount: parse_amount(line_no, amount, "genesis amount")?,
                    }
                }
                "commit" => {
                    let [_, from, to, amount] = tokens[..] else {
                        return Err(err(line_no, "expected: commit <from> <to> <amount>"));
                    };
                    ScenarioEvent::Commit {
                        from: from.to_string(),
                        to: to.to_string(),
                        amount: parse_amount(line_no, amount, "transfer amount")?,
                    }
                }
                "advance" => {
                    let [_, blocks] = tokens[..] else {
                        return Err(err(line_no, "expected: advance <blocks>"));
                    };
                    ScenarioEvent::Advance {
                        blocks: parse_amount(line_no, blocks, "block count")?,
                    }
                }
                "reveal" => {
                    let [_, from] = tokens[..] else {
                        return Err(err(line_no, "expected: reveal <name>"));
                    };
                    ScenarioEvent::Reveal {
                        from: from.to_string(),
                    }
                }
                "attack" => {
                    let [_, kind, target] = tokens[..] else {
                        return Err(err(line_no, "expected: attack <kind> <target>"));
                    };
                    ScenarioEvent::Attack {
                        kind: kind.parse().map_err(|e: String| err(line_no, e))?,
                        target: target.to_string(),
                    }
                }
                other => return Err(err(line_no, format!("unknown event {other:?}"))),
            };
            events.push(event);
        }
        let scenario = Scenario { events };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Static validation; also run by the simulator on programmatically
    /// built scenarios. Event indices stand in for line numbers there.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let mut names: Vec<&str> = Vec::new();
        let mut genesis_done = false;
        let mut committed: Vec<&str> = Vec::new();
        let mut revealed: Vec<&str> = Vec::new();
        for (idx, event) in self.events.iter().enumerate() {
            let line = idx + 1;
            let known = |n: &str| names.contains(&n);
            match event {
                ScenarioEvent::Genesis { name, .. } => {
                    if genesis_done {
                        return Err(err(line, "genesis events must precede all others"));
                    }
                    if known(name) {
                        return Err(err(line, format!("duplicate genesis name {name:?}")));
                    }
                    names.push(name);
                }
                ScenarioEvent::Commit { from, to, .. } => {
                    genesis_done = true;
                    for n in [from, to] {
                        if !known(n) {
                            return Err(err(line, format!("undeclared name {n:?}")));
                        }
                    }
                    if from == to {
                        return Err(err(line, format!("self transfer by {from:?}")));
                    }
                    committed.push(from);
                }
                ScenarioEvent::Reveal { from } => {
                    genesis_done = true;
                    if !known(from) {
                        return Err(err(line, format!("undeclared name {from:?}")));
                    }
                    if !committed.iter().any(|c| *c == from) {
                        return Err(err(line, format!("reveal of {from:?} precedes any commit")));
                    }
                    revealed.push(from);
                }
                ScenarioEvent::Advance { .. } => {
                    genesis_done = true;
                }
                ScenarioEvent::Attack { kind, target } => {
                    genesis_done = true;
                    if !known(target) {
                        return Err(err(line, format!("undeclared name {target:?}")));
                    }
                    match kind {
                        AttackKind::ReplaySpent => {
                            if !revealed.iter().any(|r| *r == target) {
                                return Err(err(
                                    line,
                                    format!("replay_spent on {target:?} precedes any reveal"),
                                ));
                            }
                        }
                        AttackKind::FrontRun => {
                            if !committed.iter().any(|c| *c == target) {
                                return Err(err(
                                    line,
                                    format!("front_run on {target:?} precedes any commit"),
                                ));
                            }
                        }
                        AttackKind::Forge => {}
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of authorization events (reveals) in the script.
    pub fn auth_event_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, ScenarioEvent::Reveal { .. }))
            .count()
    }

    pub fn has_attacks(&self) -> bool {
        self.events
            .iter()
            .any(|e| matches!(e, ScenarioEvent::Attack { .. }))
    }

    /// Renders the script back to its text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for event in &self.events {
            out.push_str(&event.to_string());
            out.push('\n');
        }
        out
    }
}

/// The transfer script bundled as the default simulation workload: two
/// wallets, two complete commit–reveal rounds.
pub fn default_transfer_scenario() -> Scenario {
    Scenario::parse(
        "genesis alice 100\n\
         genesis bob 50\n\
         commit alice bob 30\n\
         advance 1\n\
         reveal alice\n\
         advance 1\n\
         commit bob alice 10\n\
         advance 1\n\
         reveal bob\n\
         advance 1\n",
    )
    .expect("bundled scenario parses")
}
