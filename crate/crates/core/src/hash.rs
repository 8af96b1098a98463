//! Domain-separated hashing over pluggable digest backends.
//!
//! Every digest this crate produces is computed over `tag ‖ data`, where
//! `tag` is a single [`DomainTag`] byte. A digest minted for one purpose
//! (an address, say) therefore never verifies in another role (an action
//! binding), even for identical input bytes. All backends emit 32-byte
//! digests; the backend is chosen per ledger, not per call.

use std::fmt;
use std::str::FromStr;

use sha2::Digest as _;
use thiserror::Error;

/// Width of every digest in bytes, across all supported backends.
pub const DIGEST_LEN: usize = 32;

/// A 32-byte digest value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digest(pub [u8; DIGEST_LEN]);

impl Digest {
    /// The all-zero digest, used as the burn sentinel for account ids.
    pub const ZERO: Digest = Digest([0u8; DIGEST_LEN]);

    pub fn as_bytes(&self) -> &[u8; DIGEST_LEN] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    /// Parses exactly 64 lowercase/uppercase hex characters.
    pub fn from_hex(s: &str) -> Result<Self, DigestParseError> {
        if s.len() != 2 * DIGEST_LEN {
            return Err(DigestParseError::BadLength { got: s.len() });
        }
        let mut out = [0u8; DIGEST_LEN];
        hex::decode_to_slice(s, &mut out).map_err(|_| DigestParseError::BadHex)?;
        Ok(Digest(out))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0u8; DIGEST_LEN]
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({})", self.to_hex())
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigestParseError {
    #[error("digest hex must be {} characters, got {got}", 2 * DIGEST_LEN)]
    BadLength { got: usize },
    #[error("digest contains non-hex characters")]
    BadHex,
}

/// Supported digest backends. SHA-256 is the default everywhere.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum HashAlgId {
    #[default]
    Sha256,
    Blake3,
    /// Keccak-256 with the original (pre-NIST) padding, as used by Ethereum.
    Keccak256,
}

impl HashAlgId {
    pub const ALL: [HashAlgId; 3] = [HashAlgId::Sha256, HashAlgId::Blake3, HashAlgId::Keccak256];

    /// Canonical config-file name of the backend.
    pub fn name(self) -> &'static str {
        match self {
            HashAlgId::Sha256 => "sha256",
            HashAlgId::Blake3 => "blake3",
            HashAlgId::Keccak256 => "keccak256",
        }
    }
}

impl fmt::Display for HashAlgId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HashAlgId {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, UnknownAlgorithm> {
        match s.to_ascii_lowercase().as_str() {
            "sha256" | "sha-256" => Ok(HashAlgId::Sha256),
            "blake3" => Ok(HashAlgId::Blake3),
            "keccak256" | "keccak" => Ok(HashAlgId::Keccak256),
            other => Err(UnknownAlgorithm(other.to_string())),
        }
    }
}

/// Configuration error: a hash algorithm name this build does not provide.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown hash algorithm {0:?} (expected sha256, blake3, or keccak256)")]
pub struct UnknownAlgorithm(pub String);

/// Domain separation tags, prepended to every hashed input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum DomainTag {
    /// Address derivation: `F(x)` over a bare preimage.
    Address = 0x01,
    /// Action binding: `F(x ‖ m)` over preimage and canonical action bytes.
    Binding = 0x02,
    /// Reserved for compact-commitment hashing. The XOR-combined compact
    /// form never hashes, so this tag is held for future combiners; it
    /// still participates in the separation guarantees and tests.
    Compact = 0x03,
}

impl DomainTag {
    pub const ALL: [DomainTag; 3] = [DomainTag::Address, DomainTag::Binding, DomainTag::Compact];

    pub fn byte(self) -> u8 {
        self as u8
    }
}

/// Computes the tagged digest `F(tag ‖ data)` under the chosen backend.
///
/// Inputs are expected to stay far below 2^32 bytes; everything this crate
/// hashes is under a kilobyte.
pub fn hash(alg: HashAlgId, tag: DomainTag, data: &[u8]) -> Digest {
    debug_assert!((data.len() as u64) < (1u64 << 32));
    match alg {
        HashAlgId::Sha256 => {
            let mut h = sha2::Sha256::new();
            h.update([tag.byte()]);
            h.update(data);
            Digest(h.finalize().into())
        }
        HashAlgId::Blake3 => {
            let mut h = blake3::Hasher::new();
            h.update(&[tag.byte()]);
            h.update(data);
            Digest(*h.finalize().as_bytes())
        }
        HashAlgId::Keccak256 => {
            let mut h = sha3::Keccak256::new();
            h.update([tag.byte()]);
            h.update(data);
            Digest(h.finalize().into())
        }
    }
}

/// Byte-wise XOR of two digests, the compact-commitment combiner.
///
/// Commutative, associative, self-inverse: `xor_combine(a, a)` is all
/// zeroes and `xor_combine(xor_combine(a, b), b) == a`.
pub fn xor_combine(a: &Digest, b: &Digest) -> Digest {
    let mut out = [0u8; DIGEST_LEN];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = a.0[i] ^ b.0[i];
    }
    Digest(out)
}
