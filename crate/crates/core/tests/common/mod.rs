//! Exhaustive interleaving check shared by the ledger equivalence test and
//! the acceptance suite.
//!
//! A small universe — two funded accounts plus one rotation target, a pool
//! of eight candidate transactions (honest commits and reveals, an
//! overdraft pair, a wrong-preimage reveal, a wrong-address commit) and a
//! height advance — is driven through *every* sequence of at most five
//! steps containing at most four transactions. After each step the real
//! ledger and an independently written oracle must agree on the
//! accept/reject outcome (including the reject reason) and on the complete
//! observable state, and the balance sum must equal the genesis supply in
//! every reachable state.
//!
//! The oracle re-derives the documented rules over its own flat
//! representation; it shares only the protocol verification primitive with
//! the production code, not the bookkeeping.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crauth_core::{
    keygen, ledger::TxPayload, make_commit, make_reveal, verify_reveal, Action, AuthId,
    CommitMode, Commitment, Digest, HashAlgId, KeyPair, LedgerConfig, LedgerState, RejectReason,
    Reveal, TxEnvelope,
};

const ALG: HashAlgId = HashAlgId::Sha256;
const DEPTH: u64 = 1;
const TTL: u64 = 2;
const SUPPLY: u64 = 8;

const MAX_LEN: usize = 5;
const MAX_TXS: usize = 4;

/// Sequences of length ≤ 5 over the nine ops, minus the all-transaction
/// quintuples: (9^0 + … + 9^4) + (9^5 − 8^5).
pub const EXPECTED_RUNS: u64 = 7_381 + (59_049 - 32_768);

/// Every rejection class the universe can produce; coverage of all of them
/// is asserted so agreement is tested beyond the easy paths.
const EXPECTED_REJECT_CLASSES: [&str; 10] = [
    "AccountLocked",
    "AccountSpent",
    "AddrMismatch",
    "CommitExpired",
    "InsufficientBalance",
    "NoPendingCommit",
    "ReplaySpentCommitment",
    "TooEarly",
    "VerifyFailed(AddrMismatch)",
    "VerifyFailed(BindMismatch)",
];

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum OStatus {
    Open,
    Locked { committed_at: u64 },
    Spent,
}

#[derive(Clone)]
struct OAccount {
    balance: u64,
    status: OStatus,
    commit: Option<Commitment>,
}

struct Oracle {
    height: u64,
    accounts: BTreeMap<AuthId, OAccount>,
    spent: BTreeSet<AuthId>,
}

impl Oracle {
    fn genesis(allocations: &[(AuthId, u64)]) -> Self {
        let mut accounts = BTreeMap::new();
        for (auth, balance) in allocations {
            accounts.insert(
                *auth,
                OAccount {
                    balance: *balance,
                    status: OStatus::Open,
                    commit: None,
                },
            );
        }
        Oracle {
            height: 0,
            accounts,
            spent: BTreeSet::new(),
        }
    }

    fn credit(&mut self, id: AuthId, amount: u64) {
        self.accounts
            .entry(id)
            .or_insert(OAccount {
                balance: 0,
                status: OStatus::Open,
                commit: None,
            })
            .balance += amount;
    }

    fn apply(&mut self, env: &TxEnvelope) -> Result<(), RejectReason> {
        match &env.payload {
            TxPayload::Commit(c) => self.commit(&env.account, c),
            TxPayload::Reveal(r) => self.reveal(&env.account, r),
        }
    }

    fn commit(&mut self, id: &AuthId, c: &Commitment) -> Result<(), RejectReason> {
        if id.is_burn() {
            return Err(RejectReason::BurnSentinelAccount);
        }
        let account = self.accounts.get(id).ok_or(RejectReason::UnknownAccount)?;
        match account.status {
            OStatus::Spent => return Err(RejectReason::AccountSpent),
            OStatus::Locked { .. } => return Err(RejectReason::AccountLocked),
            OStatus::Open => {}
        }
        if c.addr_hash() != &id.0 {
            return Err(RejectReason::AddrMismatch);
        }
        let account = self.accounts.get_mut(id).unwrap();
        account.status = OStatus::Locked {
            committed_at: self.height,
        };
        account.commit = Some(c.clone());
        Ok(())
    }

    fn reveal(&mut self, id: &AuthId, r: &Reveal) -> Result<(), RejectReason> {
        if self.spent.contains(id) {
            return Err(RejectReason::ReplaySpentCommitment);
        }
        let account = self.accounts.get(id).ok_or(RejectReason::NoPendingCommit)?;
        let committed_at = match account.status {
            OStatus::Spent => return Err(RejectReason::ReplaySpentCommitment),
            OStatus::Open => return Err(RejectReason::NoPendingCommit),
            OStatus::Locked { committed_at } => committed_at,
        };
        if self.height < committed_at + DEPTH {
            return Err(RejectReason::TooEarly);
        }
        if self.height >= committed_at + TTL {
            return Err(RejectReason::CommitExpired);
        }
        let commitment = account.commit.as_ref().expect("locked implies a commit");
        if let Some(f) = verify_reveal(ALG, commitment, r).failure() {
            return Err(RejectReason::VerifyFailed(f));
        }
        if r.m.amount > account.balance {
            return Err(RejectReason::InsufficientBalance);
        }
        let remainder = account.balance - r.m.amount;
        let touches_spent = |probe: &AuthId| probe == id || self.spent.contains(probe);
        if touches_spent(&r.m.dest) {
            return Err(RejectReason::ReplaySpentCommitment);
        }
        if r.next_auth.is_burn() {
            if remainder > 0 {
                return Err(RejectReason::BurnWithRemainder);
            }
        } else if touches_spent(&r.next_auth) {
            return Err(RejectReason::ReplaySpentCommitment);
        }

        let account = self.accounts.get_mut(id).unwrap();
        account.balance = 0;
        account.status = OStatus::Spent;
        account.commit = None;
        self.spent.insert(*id);
        self.credit(r.m.dest, r.m.amount);
        if !r.next_auth.is_burn() {
            self.credit(r.next_auth, remainder);
        }
        Ok(())
    }

    fn advance(&mut self) {
        self.height += 1;
        for account in self.accounts.values_mut() {
            if let OStatus::Locked { committed_at } = account.status {
                if self.height > committed_at + TTL {
                    account.status = OStatus::Open;
                    account.commit = None;
                }
            }
        }
    }

    fn balance_sum(&self) -> u64 {
        self.accounts.values().map(|a| a.balance).sum()
    }
}

// ---------------------------------------------------------------------------
// Universe
// ---------------------------------------------------------------------------

#[derive(Clone)]
enum Op {
    Advance,
    Tx(TxEnvelope),
}

struct Universe {
    ops: Vec<(&'static str, Op)>,
    allocations: Vec<(AuthId, u64)>,
}

fn build_universe() -> Universe {
    let a: KeyPair = keygen(ALG, &[1u8; 32]);
    let b: KeyPair = keygen(ALG, &[2u8; 32]);
    let a2 = keygen(ALG, &[3u8; 32]);

    let action_a = Action::transfer(b.auth, 2);
    let action_b = Action::transfer(a.auth, 1);
    let action_b_overdraft = Action::transfer(a.auth, 4);

    let commit_a = make_commit(ALG, &a.preimage, &action_a, CommitMode::Full).unwrap();
    let (reveal_a, _) = make_reveal(ALG, &a.preimage, &action_a, &[3u8; 32]).unwrap();
    let commit_b = make_commit(ALG, &b.preimage, &action_b, CommitMode::Full).unwrap();
    let (reveal_b, _) = make_reveal(ALG, &b.preimage, &action_b, &[4u8; 32]).unwrap();
    let commit_b4 = make_commit(ALG, &b.preimage, &action_b_overdraft, CommitMode::Full).unwrap();
    let (reveal_b4, _) = make_reveal(ALG, &b.preimage, &action_b_overdraft, &[4u8; 32]).unwrap();

    // A reveal for A's account carrying the wrong preimage, and a commit on
    // A's account whose address digest belongs to B.
    let reveal_a_bad = Reveal {
        x: b.preimage.clone(),
        m: action_a,
        next_auth: a2.auth,
    };
    let commit_a_bad = make_commit(ALG, &b.preimage, &action_a, CommitMode::Full).unwrap();

    Universe {
        ops: vec![
            ("adv", Op::Advance),
            ("cA", Op::Tx(TxEnvelope::commit(a.auth, commit_a))),
            ("rA", Op::Tx(TxEnvelope::reveal(a.auth, reveal_a))),
            ("cB", Op::Tx(TxEnvelope::commit(b.auth, commit_b))),
            ("rB", Op::Tx(TxEnvelope::reveal(b.auth, reveal_b))),
            ("cB4", Op::Tx(TxEnvelope::commit(b.auth, commit_b4))),
            ("rB4", Op::Tx(TxEnvelope::reveal(b.auth, reveal_b4))),
            ("rA!", Op::Tx(TxEnvelope::reveal(a.auth, reveal_a_bad))),
            ("cA!", Op::Tx(TxEnvelope::commit(a.auth, commit_a_bad))),
        ],
        allocations: vec![(a.auth, 5), (b.auth, 3)],
    }
}

fn assert_states_agree(trace: &[&str], ledger: &LedgerState, oracle: &Oracle) {
    assert_eq!(ledger.height(), oracle.height, "height after {trace:?}");
    assert_eq!(ledger.balance_sum(), SUPPLY, "conservation after {trace:?}");
    assert_eq!(oracle.balance_sum(), SUPPLY, "oracle sum after {trace:?}");

    let ledger_ids: BTreeSet<AuthId> = ledger.accounts().map(|a| a.auth).collect();
    let oracle_ids: BTreeSet<AuthId> = oracle.accounts.keys().copied().collect();
    assert_eq!(ledger_ids, oracle_ids, "account sets after {trace:?}");

    for (id, expected) in &oracle.accounts {
        let actual = ledger.account(id).unwrap();
        assert_eq!(
            actual.balance, expected.balance,
            "balance of {id:?} after {trace:?}"
        );
        let expected_label = match expected.status {
            OStatus::Open => "open",
            OStatus::Locked { .. } => "locked",
            OStatus::Spent => "spent",
        };
        assert_eq!(
            actual.status.label(),
            expected_label,
            "status of {id:?} after {trace:?}"
        );
    }

    let ledger_spent: BTreeSet<Digest> = ledger.spent_commitments().copied().collect();
    let oracle_spent: BTreeSet<Digest> = oracle.spent.iter().map(|id| id.0).collect();
    assert_eq!(ledger_spent, oracle_spent, "spent sets after {trace:?}");
}

/// Outcome tallies from a full enumeration.
pub struct InterleaveStats {
    pub runs: u64,
    pub accepted_txs: u64,
    pub reject_classes: BTreeSet<String>,
}

/// Enumerates the whole sequence space and panics on the first divergence
/// between the ledger and the oracle, on any conservation violation, or if
/// the run count or rejection coverage comes up short.
pub fn check_all_interleavings() -> InterleaveStats {
    let universe = build_universe();
    let n = universe.ops.len();
    let config = LedgerConfig {
        alg: ALG,
        confirmation_depth: DEPTH,
        commit_ttl: TTL,
    };

    let mut runs = 0u64;
    let mut accepted_txs = 0u64;
    let mut reject_classes: BTreeSet<String> = BTreeSet::new();

    for len in 0..=MAX_LEN {
        let mut indices = vec![0usize; len];
        loop {
            let tx_count = indices
                .iter()
                .filter(|&&i| !matches!(universe.ops[i].1, Op::Advance))
                .count();
            if tx_count <= MAX_TXS {
                runs += 1;
                let mut ledger = LedgerState::genesis(config, &universe.allocations).unwrap();
                let mut oracle = Oracle::genesis(&universe.allocations);
                let mut trace: Vec<&str> = Vec::with_capacity(len);
                for &i in &indices {
                    let (name, op) = &universe.ops[i];
                    trace.push(name);
                    match op {
                        Op::Advance => {
                            ledger.advance_height(1);
                            oracle.advance();
                        }
                        Op::Tx(env) => {
                            let got = ledger.apply(env);
                            let want = oracle.apply(env);
                            assert_eq!(got, want, "outcome of {name} after {trace:?}");
                            match got {
                                Ok(()) => accepted_txs += 1,
                                Err(reason) => {
                                    reject_classes.insert(format!("{reason:?}"));
                                }
                            }
                        }
                    }
                    assert_states_agree(&trace, &ledger, &oracle);
                }
            }

            // Odometer over op indices.
            let mut pos = 0;
            loop {
                if pos == len {
                    break;
                }
                indices[pos] += 1;
                if indices[pos] < n {
                    break;
                }
                indices[pos] = 0;
                pos += 1;
            }
            if pos == len {
                break;
            }
        }
    }

    assert_eq!(runs, EXPECTED_RUNS);
    assert!(accepted_txs > 0, "universe never exercised the happy path");
    for expected in EXPECTED_REJECT_CLASSES {
        assert!(
            reject_classes.iter().any(|r| r == expected),
            "rejection class {expected} never reached; saw {reject_classes:?}"
        );
    }

    InterleaveStats {
        runs,
        accepted_txs,
        reject_classes,
    }
}
