//! Deterministic fixtures for the criterion benches.
//!
//! Fixed seeds and a fixed script, so every bench run measures the same
//! work. The fixture is unit-tested here to keep it honest even when the
//! benches themselves seldom run.

use crauth_core::{
    keygen, make_commit, make_reveal, Action, CommitMode, HashAlgId, LedgerConfig, LedgerState,
    TxEnvelope,
};

pub const ALG: HashAlgId = HashAlgId::Sha256;

/// A funded two-account ledger plus a matching commit/reveal pair. The
/// reveal is valid once the commit is in and one block has passed.
pub struct TransferRound {
    pub ledger: LedgerState,
    pub commit: TxEnvelope,
    pub reveal: TxEnvelope,
}

pub fn transfer_round() -> TransferRound {
    let sender = keygen(ALG, &[7u8; 32]);
    let recipient = keygen(ALG, &[8u8; 32]);
    let config = LedgerConfig {
        alg: ALG,
        confirmation_depth: 1,
        commit_ttl: 100,
    };
    let ledger =
        LedgerState::genesis(config, &[(sender.auth, 90), (recipient.auth, 10)]).unwrap();
    let action = Action::transfer(recipient.auth, 25);
    let commitment = make_commit(ALG, &sender.preimage, &action, CommitMode::Full).unwrap();
    let (reveal, _) = make_reveal(ALG, &sender.preimage, &action, &[9u8; 32]).unwrap();
    TransferRound {
        ledger,
        commit: TxEnvelope::commit(sender.auth, commitment),
        reveal: TxEnvelope::reveal(sender.auth, reveal),
    }
}
