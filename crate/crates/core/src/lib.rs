pub mod costmodel;
pub mod hash;
pub mod ledger;
pub mod netsim;
pub mod protocol;
pub mod scenario;

pub use hash::{hash, xor_combine, Digest, DomainTag, HashAlgId};
pub use ledger::{Account, AccountStatus, LedgerConfig, LedgerState, RejectReason, TxEnvelope};
pub use netsim::{AuthScheme, SimConfig, SimMetrics, SimRun, SizeModel};
pub use protocol::{
    keygen, make_commit, make_reveal, verify_reveal, Action, ActionKind, AuthId, CommitMode,
    Commitment, KeyPair, Preimage, Reveal, Verdict, VerifyFailure,
};
pub use scenario::{Scenario, ScenarioEvent};
