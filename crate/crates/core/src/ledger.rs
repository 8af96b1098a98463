//! Account-model ledger state machine for commit–reveal authorization.
//!
//! State is a map of accounts (Open, Locked behind a pending commit, or
//! Spent), a set of spent commitment hashes, and a block height. The machine
//! enforces:
//!
//! * **First finalized commit wins** — a commit locks its account until it
//!   is revealed or expires; later commits bounce off the lock.
//! * **Single use** — once an address hash enters `spent_commitments`, any
//!   transaction touching that id (as account, dest, or next_auth) is
//!   rejected.
//! * **Conservation** — the sum of balances never changes after genesis;
//!   burns park value on the unspendable zero id rather than destroying it.
//! * **Rejection purity** — a rejected transaction leaves state bit-identical;
//!   all validation happens before any mutation.
//!
//! Timing: a commit at height `h` with confirmation depth `d` and TTL `t`
//! is revealable in `[h + d, h + t)`. At exactly `h + t` the reveal is
//! rejected as expired, and the lock itself is released once the height
//! moves strictly past `h + t`.
//!
//! Every state-changing call takes `&mut self` but returns before mutating
//! on any rejection, so callers that need speculative application can clone
//! first — states are plain data and cheap to copy at simulation scale.

use std::collections::{BTreeMap, BTreeSet};


use thiserror::Error;

use crate::hash::{Digest, HashAlgId, DIGEST_LEN};
use crate::protocol::{
    verify_reveal, AuthId, Commitment, DecodeError, Reveal, VerifyFailure,
    COMMIT_WIRE_COMPACT_LEN, COMMIT_WIRE_FULL_LEN, REVEAL_WIRE_LEN,
};

const ENVELOPE_KIND_COMMIT: u8 = 0x01;
const ENVELOPE_KIND_REVEAL: u8 = 0x02;
/// Envelope framing overhead on the wire: kind byte + account id.
pub const ENVELOPE_HEADER_LEN: usize = 1 + DIGEST_LEN;

/// Transaction kind discriminator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TxKind {
    Commit,
    Reveal,
}

/// Decoded transaction payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TxPayload {
    Commit(Commitment),
    Reveal(Reveal),
}

/// A transaction as relayed and stored: which account it targets, plus the
/// commit or reveal payload. `size_bytes` always equals the serialized
/// length — the envelope is the unit of byte accounting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TxEnvelope {
    pub account: AuthId,
    pub payload: TxPayload,
}

impl TxEnvelope {
    pub fn commit(account: AuthId, commitment: Commitment) -> Self {
        TxEnvelope {
            account,
            payload: TxPayload::Commit(commitment),
        }
    }

    pub fn reveal(account: AuthId, reveal: Reveal) -> Self {
        TxEnvelope {
            account,
            payload: TxPayload::Reveal(reveal),
        }
    }

    pub fn kind(&self) -> TxKind {
        match self.payload {
            TxPayload::Commit(_) => TxKind::Commit,
            TxPayload::Reveal(_) => TxKind::Reveal,
        }
    }

    /// Serialized wire length in bytes.
    pub fn size_bytes(&self) -> u64 {
        let payload = match &self.payload {
            TxPayload::Commit(c) => c.wire_len(),
            TxPayload::Reveal(_) => REVEAL_WIRE_LEN,
        };
        (ENVELOPE_HEADER_LEN + payload) as u64
    }

    /// Wire form: kind byte ‖ account id ‖ payload bytes. Payload length is
    /// implied by the kind and the commitment mode byte, so the envelope is
    /// self-delimiting.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.size_bytes() as usize);
        match &self.payload {
            TxPayload::Commit(c) => {
                out.push(ENVELOPE_KIND_COMMIT);
                out.extend_from_slice(self.account.0.as_bytes());
                out.extend_from_slice(&c.to_bytes());
            }
            TxPayload::Reveal(r) => {
                out.push(ENVELOPE_KIND_REVEAL);
                out.extend_from_slice(self.account.0.as_bytes());
                out.extend_from_slice(&r.to_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        if bytes.len() < ENVELOPE_HEADER_LEN + 1 {
            return Err(DecodeError::BadLength {
                what: "envelope",
                expected: ENVELOPE_HEADER_LEN + COMMIT_WIRE_COMPACT_LEN,
                got: bytes.len(),
            });
        }
        let mut id = [0u8; DIGEST_LEN];
        id.copy_from_slice(&bytes[1..ENVELOPE_HEADER_LEN]);
        let account = AuthId(Digest(id));
        let rest = &bytes[ENVELOPE_HEADER_LEN..];
        match bytes[0] {
            ENVELOPE_KIND_COMMIT => {
                if rest.len() != COMMIT_WIRE_FULL_LEN && rest.len() != COMMIT_WIRE_COMPACT_LEN {
                    return Err(DecodeError::BadLength {
                        what: "commit envelope payload",
                        expected: COMMIT_WIRE_FULL_LEN,
                        got: rest.len(),
                    });
                }
                let c = Commitment::from_bytes(rest, &account)?;
                Ok(TxEnvelope::commit(account, c))
            }
            ENVELOPE_KIND_REVEAL => {
                let r = Reveal::from_bytes(rest)?;
                Ok(TxEnvelope::reveal(account, r))
            }
            other => Err(DecodeError::UnknownEnvelopeKind(other)),
        }
    }
}

/// A pending commit occupying an account.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommitRef {
    pub commit: Commitment,
    /// Height the commit was included at.
    pub height: u64,
    /// First height at which the commit is expired (`height + TTL`).
    pub expiry_height: u64,
}

/// Account lifecycle. Spent is terminal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AccountStatus {
    Open,
    Locked(CommitRef),
    Spent,
}

impl AccountStatus {
    pub fn label(&self) -> &'static str {
        match self {
            AccountStatus::Open => "open",
            AccountStatus::Locked(_) => "locked",
            AccountStatus::Spent => "spent",
        }
    }
}

/// One ledger account. Spent accounts always hold balance 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Account {
    pub auth: AuthId,
    pub balance: u64,
    pub status: AccountStatus,
}

/// Ledger-wide parameters, fixed at genesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LedgerConfig {
    pub alg: HashAlgId,
    /// Blocks a commit must age before its reveal is acceptable.
    pub confirmation_depth: u64,
    /// Blocks after which an unrevealed commit expires.
    pub commit_ttl: u64,
}

impl Default for LedgerConfig {
    fn default() -> Self {
        LedgerConfig {
            alg: HashAlgId::Sha256,
            confirmation_depth: 1,
            commit_ttl: 100,
        }
    }
}

impl LedgerConfig {
    pub fn validate(&self) -> Result<(), GenesisError> {
        if self.confirmation_depth == 0 {
            return Err(GenesisError::InvalidConfig(
                "confirmation_depth must be at least 1".into(),
            ));
        }
        if self.commit_ttl <= self.confirmation_depth {
            return Err(GenesisError::InvalidConfig(format!(
                "commit_ttl ({}) must exceed confirmation_depth ({})",
                self.commit_ttl, self.confirmation_depth
            )));
        }
        Ok(())
    }
}

/// Why genesis construction failed.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenesisError {
    #[error("invalid ledger config: {0}")]
    InvalidConfig(String),
    #[error("duplicate genesis allocation for {0}")]
    DuplicateAuthId(AuthId),
    #[error("genesis allocation for {0} is zero")]
    ZeroAllocation(AuthId),
    #[error("genesis allocation to the burn sentinel id")]
    BurnAllocation,
    #[error("genesis allocations overflow the supply")]
    SupplyOverflow,
}

/// Why a transaction was rejected. Rejections never mutate state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum RejectReason {
    #[error("account is not known to the ledger")]
    UnknownAccount,
    #[error("account id is the burn sentinel")]
    BurnSentinelAccount,
    #[error("account is locked behind an earlier commit")]
    AccountLocked,
    #[error("account has already been spent")]
    AccountSpent,
    #[error("commit address does not match the account")]
    AddrMismatch,
    #[error("no pending commit to reveal against")]
    NoPendingCommit,
    #[error("reveal arrived before the confirmation depth elapsed")]
    TooEarly,
    #[error("pending commit has expired")]
    CommitExpired,
    #[error("reveal failed verification: {0}")]
    VerifyFailed(VerifyFailure),
    #[error("transfer amount exceeds the account balance")]
    InsufficientBalance,
    #[error("transaction touches a spent commitment")]
    ReplaySpentCommitment,
    #[error("burn sentinel next_auth with a nonzero remainder")]
    BurnWithRemainder,
}

/// The replicated state machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerState {
    config: LedgerConfig,
    height: u64,
    accounts: BTreeMap<AuthId, Account>,
    spent_commitments: BTreeSet<Digest>,
    total_supply: u64,
}

impl LedgerState {
    /// Builds the genesis state from initial allocations.
    pub fn genesis(
        config: LedgerConfig,
        allocations: &[(AuthId, u64)],
    ) -> Result<Self, GenesisError> {
        config.validate()?;
        let mut accounts = BTreeMap::new();
        let mut total: u64 = 0;
        for (auth, amount) in allocations {
            if auth.is_burn() {
                return Err(GenesisError::BurnAllocation);
            }
            if *amount == 0 {
                return Err(GenesisError::ZeroAllocation(*auth));
            }
            if accounts.contains_key(auth) {
                return Err(GenesisError::DuplicateAuthId(*auth));
            }
            total = total
                .checked_add(*amount)
                .ok_or(GenesisError::SupplyOverflow)?;
            accounts.insert(
                *auth
                ,
                Account {
                    auth: *auth,
                    balance: *amount,
                    status: AccountStatus::Open,
                },
            );
        }
        Ok(LedgerState {
            config,
            height: 0,
            accounts,
            spent_commitments: BTreeSet::new(),
            total_supply: total,
        })
    }

    pub fn config(&self) -> &LedgerConfig {
        &self.config
    }

    pub fn height(&self) -> u64 {
        self.height
    }

    pub fn total_supply(&self) -> u64 {
        self.total_supply
    }

    pub fn account(&self, id: &AuthId) -> Option<&Account> {
        self.accounts.get(id)
    }

    pub fn accounts(&self) -> impl Iterator<Item = &Account> {
        self.accounts.values()
    }

    pub fn spent_commitments(&self) -> impl Iterator<Item = &Digest> {
        self.spent_commitments.iter()
    }

    /// Live sum of all balances; equals `total_supply` at every reachable
    /// state (the conservation invariant).
    pub fn balance_sum(&self) -> u64 {
        self.accounts.values().map(|a| a.balance).sum()
    }

    /// Applies a transaction envelope, dispatching on its kind.
    pub fn apply(&mut self, env: &TxEnvelope) -> Result<(), RejectReason> {
        match &env.payload {
            TxPayload::Commit(c) => self.apply_commit_inner(&env.account, c),
            TxPayload::Reveal(r) => self.apply_reveal_inner(&env.account, r),
        }
    }

    /// Applies a commit envelope.
    pub fn apply_commit(&mut self, env: &TxEnvelope) -> Result<(), RejectReason> {
        match &env.payload {
            TxPayload::Commit(c) => self.apply_commit_inner(&env.account, c),
            TxPayload::Reveal(_) => Err(RejectReason::NoPendingCommit),
        }
    }

    /// Applies a reveal envelope.
    pub fn apply_reveal(&mut self, env: &TxEnvelope) -> Result<(), RejectReason> {
        match &env.payload {
            TxPayload::Reveal(r) => self.apply_reveal_inner(&env.account, r),
            TxPayload::Commit(_) => Err(RejectReason::NoPendingCommit),
        }
    }

    fn apply_commit_inner(
        &mut self,
        account_id: &AuthId,
        commitment: &Commitment,
    ) -> Result<(), RejectReason> {
        if account_id.is_burn() {
            return Err(RejectReason::BurnSentinelAccount);
        }
        // A spent account id stays in the map forever, so the status check
        // below covers single-use for commits (`AccountSpent` rather than
        // the reveal-side replay reason).
        let account = self
            .accounts
            .get(account_id)
            .ok_or(RejectReason::UnknownAccount)?;
        match account.status {
            AccountStatus::Spent => return Err(RejectReason::AccountSpent),
            AccountStatus::Locked(_) => return Err(RejectReason::AccountLocked),
            AccountStatus::Open => {}
        }
        if commitment.addr_hash() != &account_id.0 {
            return Err(RejectReason::AddrMismatch);
        }

        let cref = CommitRef {
            commit: commitment.clone(),
            height: self.height,
            expiry_height: self.height + self.config.commit_ttl,
        };
        self.accounts
            .get_mut(account_id)
            .expect("account presence checked above")
            .status = AccountStatus::Locked(cref);
        Ok(())
    }

    fn apply_reveal_inner(
        &mut self,
        account_id: &AuthId,
        reveal: &Reveal,
    ) -> Result<(), RejectReason> {
        // -- validation; nothing below mutates until every check passes --
        if self.spent_commitments.contains(&account_id.0) {
            return Err(RejectReason::ReplaySpentCommitment);
        }
        let account = self
            .accounts
            .get(account_id)
            .ok_or(RejectReason::NoPendingCommit)?;
        let cref = match &account.status {
            AccountStatus::Spent => return Err(RejectReason::ReplaySpentCommitment),
            AccountStatus::Open => return Err(RejectReason::NoPendingCommit),
            AccountStatus::Locked(cref) => cref,
        };
        if self.height < cref.height + self.config.confirmation_depth {
            return Err(RejectReason::TooEarly);
        }
        if self.height >= cref.expiry_height {
            return Err(RejectReason::CommitExpired);
        }
        if let Some(failure) = verify_reveal(self.config.alg, &cref.commit, reveal).failure() {
            return Err(RejectReason::VerifyFailed(failure));
        }
        if reveal.m.amount > account.balance {
            return Err(RejectReason::InsufficientBalance);
        }
        let remainder = account.balance - reveal.m.amount;

        // Single-use: nothing in this reveal may touch an id that is (or is
        // about to become) a spent commitment, and credits must never land
        // on a Spent account.
        let touches_spent = |id: &AuthId| {
            id == account_id
                || self.spent_commitments.contains(&id.0)
                || matches!(
                    self.accounts.get(id).map(|a| &a.status),
                    Some(AccountStatus::Spent)
                )
        };
        if touches_spent(&reveal.m.dest) {
            return Err(RejectReason::ReplaySpentCommitment);
        }
        if reveal.next_auth.is_burn() {
            if remainder > 0 {
                return Err(RejectReason::BurnWithRemainder);
            }
        } else if touches_spent(&reveal.next_auth) {
            return Err(RejectReason::ReplaySpentCommitment);
        }

        // -- effects --
        {
            let account = self
                .accounts
                .get_mut(account_id)
                .expect("account presence checked above");
            account.balance = 0;
            account.status = AccountStatus::Spent;
        }
        self.spent_commitments.insert(account_id.0);
        self.credit(reveal.m.dest, reveal.m.amount);
        if !reveal.next_auth.is_burn() {
            self.credit(reveal.next_auth, remainder);
        }
        debug_assert_eq!(self.balance_sum(), self.total_supply);
        Ok(())
    }

    fn credit(&mut self, id: AuthId, amount: u64) {
        let entry = self.accounts.entry(id).or_insert(Account {
            auth: id,
            balance: 0,
            status: AccountStatus::Open,
        });
        entry.balance += amount;
    }

    /// Advances the chain by `n` blocks (`n >= 1`; advancing by zero is a
    /// caller bug and panics). Locked accounts whose pending commit has
    /// passed its expiry height revert to Open and the commit is discarded.
    pub fn advance_height(&mut self, n: u64) {
        assert!(n >= 1, "advance_height requires n >= 1");
        self.height += n;
        let height = self.height;
        for account in self.accounts.values_mut() {
            if let AccountStatus::Locked(cref) = &account.status {
                if height > cref.expiry_height {
                    account.status = AccountStatus::Open;
                }
            }
        }
    }

    /// Deterministic text dump of accounts and the spent set.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("height {}\n", self.height));
        out.push_str(&format!("total_supply {}\n", self.total_supply));
        for account in self.accounts.values() {
            match &account.status {
                AccountStatus::Locked(cref) => out.push_str(&format!(
                    "account {} balance {} status locked committed {} expires {}\n",
                    account.auth, account.balance, cref.height, cref.expiry_height
                )),
                status => out.push_str(&format!(
                    "account {} balance {} status {}\n",
                    account.auth,
                    account.balance,
                    status.label()
                )),
            }
        }
        for digest in &self.spent_commitments {
            out.push_str(&format!("spent {digest}\n"));
        }
        out
    }
}
