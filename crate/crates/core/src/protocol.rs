//! Commit–reveal transaction authorization.
//!
//! An account is controlled by knowledge of a 32-byte preimage `x`; the
//! public account id is the address hash `F(x)`. Authorizing an action `m`
//! happens in two steps:
//!
//! 1. **Commit** — publish `(F(x), F(x ‖ m))`, binding the preimage to the
//!    action without exposing either. A compact variant publishes the XOR
//!    of the two digests instead of the pair.
//! 2. **Reveal** — once the commit is finalized, publish `(x, m, next_auth)`
//!    where `next_auth = F(x′)` hands the account remainder to a fresh
//!    preimage. Observing `x` on the wire is safe because the account is
//!    already locked to the earlier commitment.
//!
//! Wire forms are bit-exact and fixed-width: canonical action bytes are
//! `0x10 ‖ dest ‖ amount` (big-endian), commitments are a mode byte followed
//! by their digests, and reveals are `x ‖ action ‖ next_auth`. Commitment
//! bytes are a function of digests only — preimages never serialize except
//! inside a reveal.

use std::fmt;

use rand_chacha::rand_core::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::hash::{hash, xor_combine, Digest, DigestParseError, DomainTag, HashAlgId, DIGEST_LEN};

/// Canonical action wire length: tag byte + dest id + u64 amount.
pub const ACTION_WIRE_LEN: usize = 1 + DIGEST_LEN + 8;
/// Full-mode commitment wire length: mode byte + two digests.
pub const COMMIT_WIRE_FULL_LEN: usize = 1 + 2 * DIGEST_LEN;
/// Compact-mode commitment wire length: mode byte + combined digest.
pub const COMMIT_WIRE_COMPACT_LEN: usize = 1 + DIGEST_LEN;
/// Reveal wire length: preimage + canonical action + next auth id.
pub const REVEAL_WIRE_LEN: usize = DIGEST_LEN + ACTION_WIRE_LEN + DIGEST_LEN;

const ACTION_TAG_TRANSFER: u8 = 0x10;
const MODE_BYTE_FULL: u8 = 0x00;
const MODE_BYTE_COMPACT: u8 = 0x01;

/// A 32-byte account-controlling secret.
///
/// Deliberately opaque: `Debug` redacts the value and the type never
/// serializes on its own. The only wire form containing a preimage is a
/// [`Reveal`], where disclosure is the point.
#[derive(Clone, PartialEq, Eq)]
pub struct Preimage([u8; DIGEST_LEN]);

impl Preimage {
    pub fn from_bytes(bytes: [u8; DIGEST_LEN]) -> Self {
        Preimage(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; DIGEST_LEN] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, DigestParseError> {
        Digest::from_hex(s).map(|d| Preimage(d.0))
    }
}

impl fmt::Debug for Preimage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Preimage(<redacted>)")
    }
}

/// Public account identifier: the address hash `F(x)` of a preimage.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AuthId(pub Digest);

impl AuthId {
    /// The all-zero burn sentinel. No preimage for it is known; reveals may
    /// name it as `next_auth` when emptying an account, and commits against
    /// it are rejected outright.
    pub const BURN: AuthId = AuthId(Digest::ZERO);

    pub fn to_hex(&self) -> String {
        self.0.to_hex()
    }

    pub fn from_hex(s: &str) -> Result<Self, DigestParseError> {
        Digest::from_hex(s).map(AuthId)
    }

    pub fn is_burn(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Debug for AuthId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AuthId({})", self.to_hex())
    }
}

impl fmt::Display for AuthId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// A preimage with its derived account id.
#[derive(Clone, Debug)]
pub struct KeyPair {
    pub preimage: Preimage,
    pub auth: AuthId,
}

/// What custody of an account authorizes. Only value transfers exist today;
/// the tag byte leaves room for more kinds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ActionKind {
    #[default]
    Transfer,
}

/// An action to authorize: move `amount` to `dest`, remainder to the
/// reveal's `next_auth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Action {
    pub kind: ActionKind,
    pub dest: AuthId,
    pub amount: u64,
}

impl Action {
    pub fn transfer(dest: AuthId, amount: u64) -> Self {
        Action {
            kind: ActionKind::Transfer,
            dest,
            amount,
        }
    }

    /// A transfer of zero is meaningless and rejected at verification.
    pub fn is_well_formed(&self) -> bool {
        self.amount > 0
    }

    /// Canonical bit-exact serialization: `0x10 ‖ dest ‖ amount_be`.
    pub fn canonical_bytes(&self) -> [u8; ACTION_WIRE_LEN] {
        let mut out = [0u8; ACTION_WIRE_LEN];
        out[0] = match self.kind {
            ActionKind::Transfer => ACTION_TAG_TRANSFER,
        };
        out[1..1 + DIGEST_LEN].copy_from_slice(self.dest.0.as_bytes());
        out[1 + DIGEST_LEN..].copy_from_slice(&self.amount.to_be_bytes());
        out
    }

    pub fn from_canonical_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        if bytes.len() != ACTION_WIRE_LEN {
            return Err(DecodeError::BadLength {
                what: "action",
                expected: ACTION_WIRE_LEN,
                got: bytes.len(),
            });
        }
        if bytes[0] != ACTION_TAG_TRANSFER {
            return Err(DecodeError::UnknownActionKind(bytes[0]));
        }
        let mut dest = [0u8; DIGEST_LEN];
        dest.copy_from_slice(&bytes[1..1 + DIGEST_LEN]);
        let mut amt = [0u8; 8];
        amt.copy_from_slice(&bytes[1 + DIGEST_LEN..]);
        Ok(Action {
            kind: ActionKind::Transfer,
            dest: AuthId(Digest(dest)),
            amount: u64::from_be_bytes(amt),
        })
    }
}

/// Whether a commitment publishes both digests or their XOR combination.
///
/// Compact mode halves the commit payload but rests on the combiner rather
/// than plain preimage resistance; treat it as the experimental variant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CommitMode {
    #[default]
    Full,
    Compact,
}

impl CommitMode {
    fn wire_byte(self) -> u8 {
        match self {
            CommitMode::Full => MODE_BYTE_FULL,
            CommitMode::Compact => MODE_BYTE_COMPACT,
        }
    }
}

/// A published commitment binding a preimage to an action.
///
/// Constructed locally both digests are known; decoded from compact wire
/// bytes only the combined digest travels, so `bind_hash` is `None` and the
/// address hash is taken from the enclosing envelope's account reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commitment {
    mode: CommitMode,
    addr_hash: Digest,
    bind_hash: Option<Digest>,
    compact_hash: Option<Digest>,
}

impl Commitment {
    /// Assembles a commitment from raw digests. This is the wire-level
    /// constructor: nothing checks that `addr_hash` has a known preimage,
    /// which is exactly what an adversary submitting junk exploits — and
    /// what reveal verification later catches.
    pub fn from_digests(mode: CommitMode, addr_hash: Digest, bind_hash: Digest) -> Self {
        let compact_hash = match mode {
            CommitMode::Full => None,
            CommitMode::Compact => Some(xor_combine(&addr_hash, &bind_hash)),
        };
        Commitment {
            mode,
            addr_hash,
            bind_hash: Some(bind_hash),
            compact_hash,
        }
    }

    pub fn mode(&self) -> CommitMode {
        self.mode
    }

    pub fn addr_hash(&self) -> &Digest {
        &self.addr_hash
    }

    /// `F(x ‖ m)`. Absent only on commitments decoded from compact wire
    /// bytes, where it is unrecoverable by construction.
    pub fn bind_hash(&self) -> Option<&Digest> {
        self.bind_hash.as_ref()
    }

    /// `addr_hash ⊕ bind_hash`; present exactly in compact mode.
    pub fn compact_hash(&self) -> Option<&Digest> {
        self.compact_hash.as_ref()
    }

    /// Wire form: `mode ‖ addr ‖ bind` (full) or `mode ‖ compact` (compact).
    /// The account reference for a compact commitment travels in the
    /// transaction envelope, not here.
    pub fn to_bytes(&self) -> Vec<u8> {
        match self.mode {
            CommitMode::Full => {
                let mut out = Vec::with_capacity(COMMIT_WIRE_FULL_LEN);
                out.push(self.mode.wire_byte());
                out.extend_from_slice(self.addr_hash.as_bytes());
                let bind = self.bind_hash.expect("full-mode commitment carries bind_hash");
                out.extend_from_slice(bind.as_bytes());
                out
            }
            CommitMode::Compact => {
                let mut out = Vec::with_capacity(COMMIT_WIRE_COMPACT_LEN);
                out.push(self.mode.wire_byte());
                let compact = self.compact_hash.expect("compact-mode commitment carries compact_hash");
                out.extend_from_slice(compact.as_bytes());
                out
            }
        }
    }

    pub fn wire_len(&self) -> usize {
        match self.mode {
            CommitMode::Full => COMMIT_WIRE_FULL_LEN,
            CommitMode::Compact => COMMIT_WIRE_COMPACT_LEN,
        }
    }

    /// Decodes commitment wire bytes. `account` is the envelope's account
    /// reference, adopted as the address hash for compact commitments.
    pub fn from_bytes(bytes: &[u8], account: &AuthId) -> Result<Self, DecodeError> {
        let mode_byte = *bytes.first().ok_or(DecodeError::BadLength {
            what: "commitment",
            expected: COMMIT_WIRE_COMPACT_LEN,
            got: 0,
        })?;
        match mode_byte {
            MODE_BYTE_FULL => {
                if bytes.len() != COMMIT_WIRE_FULL_LEN {
                    return Err(DecodeError::BadLength {
                        what: "full commitment",
                        expected: COMMIT_WIRE_FULL_LEN,
                        got: bytes.len(),
                    });
                }
                let mut addr = [0u8; DIGEST_LEN];
                addr.copy_from_slice(&bytes[1..1 + DIGEST_LEN]);
                let mut bind = [0u8; DIGEST_LEN];
                bind.copy_from_slice(&bytes[1 + DIGEST_LEN..]);
                Ok(Commitment {
                    mode: CommitMode::Full,
                    addr_hash: Digest(addr),
                    bind_hash: Some(Digest(bind)),
                    compact_hash: None,
                })
            }
            MODE_BYTE_COMPACT => {
                if bytes.len() != COMMIT_WIRE_COMPACT_LEN {
                    return Err(DecodeError::BadLength {
                        what: "compact commitment",
                        expected: COMMIT_WIRE_COMPACT_LEN,
                        got: bytes.len(),
                    });
                }
                let mut compact = [0u8; DIGEST_LEN];
                compact.copy_from_slice(&bytes[1..]);
                Ok(Commitment {
                    mode: CommitMode::Compact,
                    addr_hash: account.0,
                    bind_hash: None,
                    compact_hash: Some(Digest(compact)),
                })
            }
            other => Err(DecodeError::UnknownCommitMode(other)),
        }
    }
}

/// The second authorization step: disclose the preimage and action, and name
/// the successor account id for the remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reveal {
    pub x: Preimage,
    pub m: Action,
    pub next_auth: AuthId,
}

impl Reveal {
    /// Wire form: `x ‖ canonical(m) ‖ next_auth`, 105 bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(REVEAL_WIRE_LEN);
        out.extend_from_slice(self.x.as_bytes());
        out.extend_from_slice(&self.m.canonical_bytes());
        out.extend_from_slice(self.next_auth.0.as_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        if bytes.len() != REVEAL_WIRE_LEN {
            return Err(DecodeError::BadLength {
                what: "reveal",
                expected: REVEAL_WIRE_LEN,
                got: bytes.len(),
            });
        }
        let mut x = [0u8; DIGEST_LEN];
        x.copy_from_slice(&bytes[..DIGEST_LEN]);
        let m = Action::from_canonical_bytes(&bytes[DIGEST_LEN..DIGEST_LEN + ACTION_WIRE_LEN])?;
        let mut next = [0u8; DIGEST_LEN];
        next.copy_from_slice(&bytes[DIGEST_LEN + ACTION_WIRE_LEN..]);
        Ok(Reveal {
            x: Preimage(x),
            m,
            next_auth: AuthId(Digest(next)),
        })
    }
}

/// Why a reveal failed verification, in check order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum VerifyFailure {
    #[error("preimage does not hash to the committed address")]
    AddrMismatch,
    #[error("action does not match the committed binding")]
    BindMismatch,
    #[error("action is malformed")]
    MalformedAction,
}

/// Verification verdict; failures carry the first failing check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(VerifyFailure),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failure(&self) -> Option<VerifyFailure> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(f) => Some(*f),
        }
    }
}

/// Input rejected while building protocol messages.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProtocolError {
    #[error("malformed action: transfer amount must be positive")]
    MalformedAction,
}

/// Wire bytes failed to decode.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("{what}: expected {expected} bytes, got {got}")]
    BadLength {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("unknown commitment mode byte {0:#04x}")]
    UnknownCommitMode(u8),
    #[error("unknown action kind byte {0:#04x}")]
    UnknownActionKind(u8),
    #[error("unknown envelope kind byte {0:#04x}")]
    UnknownEnvelopeKind(u8),
}

/// Derives a keypair from caller-supplied entropy.
///
/// The preimage is the first 32 bytes of a ChaCha20 stream keyed by `seed`,
/// so equal seeds give equal pairs on every platform; the account id is the
/// address hash of that preimage.
pub fn keygen(alg: HashAlgId, seed: &[u8; 32]) -> KeyPair {
    let mut rng = ChaCha20Rng::from_seed(*seed);
    let mut x = [0u8; DIGEST_LEN];
    rng.fill_bytes(&mut x);
    let preimage = Preimage(x);
    let auth = AuthId(hash(alg, DomainTag::Address, &x));
    KeyPair { preimage, auth }
}

/// Builds the commitment `(F(x), F(x ‖ m))` for an action, or its compact
/// XOR form. Rejects malformed actions before anything is derived.
pub fn make_commit(
    alg: HashAlgId,
    x: &Preimage,
    m: &Action,
    mode: CommitMode,
) -> Result<Commitment, ProtocolError> {
    if !m.is_well_formed() {
        return Err(ProtocolError::MalformedAction);
    }
    let addr_hash = hash(alg, DomainTag::Address, x.as_bytes());
    let mut bind_input = Vec::with_capacity(DIGEST_LEN + ACTION_WIRE_LEN);
    bind_input.extend_from_slice(x.as_bytes());
    bind_input.extend_from_slice(&m.canonical_bytes());
    let bind_hash = hash(alg, DomainTag::Binding, &bind_input);
    Ok(Commitment::from_digests(mode, addr_hash, bind_hash))
}

/// Builds the reveal for a previously committed action and rotates the key:
/// a fresh preimage is derived from `next_seed`, its address hash becomes
/// `next_auth`, and the new pair is returned for the caller to custody.
pub fn make_reveal(
    alg: HashAlgId,
    x: &Preimage,
    m: &Action,
    next_seed: &[u8; 32],
) -> Result<(Reveal, KeyPair), ProtocolError> {
    if !m.is_well_formed() {
        return Err(ProtocolError::MalformedAction);
    }
    let next = keygen(alg, next_seed);
    let reveal = Reveal {
        x: x.clone(),
        m: *m,
        next_auth: next.auth,
    };
    Ok((reveal, next))
}

/// Checks a reveal against a commitment. Checks run in order — address
/// relation, binding relation, action well-formedness — and the verdict
/// reports the first failure.
pub fn verify_reveal(alg: HashAlgId, c: &Commitment, r: &Reveal) -> Verdict {
    let addr = hash(alg, DomainTag::Address, r.x.as_bytes());
    if addr != c.addr_hash {
        return Verdict::Fail(VerifyFailure::AddrMismatch);
    }
    let mut bind_input = Vec::with_capacity(DIGEST_LEN + ACTION_WIRE_LEN);
    bind_input.extend_from_slice(r.x.as_bytes());
    bind_input.extend_from_slice(&r.m.canonical_bytes());
    let bind = hash(alg, DomainTag::Binding, &bind_input);
    let bound = match c.mode {
        CommitMode::Full => c.bind_hash == Some(bind),
        CommitMode::Compact => c.compact_hash == Some(xor_combine(&addr, &bind)),
    };
    if !bound {
        return Verdict::Fail(VerifyFailure::BindMismatch);
    }
    if !r.m.is_well_formed() {
        return Verdict::Fail(VerifyFailure::MalformedAction);
    }
    Verdict::Pass
}
