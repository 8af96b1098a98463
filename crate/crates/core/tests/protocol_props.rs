//! Randomized protocol properties: honest round-trips always verify, any
//! action tampering breaks the binding, compact and full commitments agree
//! on every verdict, and serialized commitments leak no preimage material.

use crauth_core::{
    keygen, ledger::TxEnvelope, make_commit, make_reveal, verify_reveal, xor_combine, Action,
    AuthId, CommitMode, Commitment, Digest, HashAlgId, Preimage, Reveal, Verdict, VerifyFailure,
};
use proptest::prelude::*;

fn algs() -> impl Strategy<Value = HashAlgId> {
    prop::sample::select(vec![
        HashAlgId::Sha256,
        HashAlgId::Blake3,
        HashAlgId::Keccak256,
    ])
}

fn modes() -> impl Strategy<Value = CommitMode> {
    prop::sample::select(vec![CommitMode::Full, CommitMode::Compact])
}

/// True when `needle` occurs as a contiguous slice of `haystack`.
fn contains_slice(haystack: &[u8], needle: &[u8]) -> bool {
    haystack.windows(needle.len()).any(|w| w == needle)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn honest_round_trip_verifies(
        alg in algs(),
        mode in modes(),
        seed in any::<[u8; 32]>(),
        next_seed in any::<[u8; 32]>(),
        dest in any::<[u8; 32]>(),
        amount in 1u64..,
    ) {
        let kp = keygen(alg, &seed);
        let action = Action::transfer(AuthId(Digest(dest)), amount);
        let commitment = make_commit(alg, &kp.preimage, &action, mode).unwrap();
        let (reveal, next) = make_reveal(alg, &kp.preimage, &action, &next_seed).unwrap();
        prop_assert_eq!(verify_reveal(alg, &commitment, &reveal), Verdict::Pass);
        // The rotated pair is exactly what an independent keygen derives.
        let independent = keygen(alg, &next_seed);
        prop_assert_eq!(&next.preimage, &independent.preimage);
        prop_assert_eq!(next.auth, independent.auth);
        prop_assert_eq!(reveal.next_auth, next.auth);
    }

    #[test]
    fn mutated_action_breaks_binding(
        alg in algs(),
        mode in modes(),
        seed in any::<[u8; 32]>(),
        next_seed in any::<[u8; 32]>(),
        dest in any::<[u8; 32]>(),
        amount in 1u64..,
        mutate_dest in any::<bool>(),
        byte in 0usize..32,
        flip in 1u8..,
        bit in 0u32..64,
    ) {
        let kp = keygen(alg, &seed);
        let action = Action::transfer(AuthId(Digest(dest)), amount);
        let commitment = make_commit(alg, &kp.preimage, &action, mode).unwrap();
        let (reveal, _) = make_reveal(alg, &kp.preimage, &action, &next_seed).unwrap();

        let mut mutated = action;
        if mutate_dest {
            mutated.dest.0 .0[byte] ^= flip;
        } else {
            mutated.amount ^= 1 << bit;
        }
        prop_assert_ne!(mutated, action);
        let forged = Reveal { m: mutated, ..reveal };
        prop_assert_eq!(
            verify_reveal(alg, &commitment, &forged),
            Verdict::Fail(VerifyFailure::BindMismatch)
        );
    }

    #[test]
    fn compact_and_full_verdicts_agree(
        alg in algs(),
        seed in any::<[u8; 32]>(),
        next_seed in any::<[u8; 32]>(),
        dest in any::<[u8; 32]>(),
        amount in 1u64..,
        tamper in 0usize..3,
        byte in 0usize..32,
        flip in 1u8..,
    ) {
        let kp = keygen(alg, &seed);
        let action = Action::transfer(AuthId(Digest(dest)), amount);
        let full = make_commit(alg, &kp.preimage, &action, CommitMode::Full).unwrap();
        let compact = make_commit(alg, &kp.preimage, &action, CommitMode::Compact).unwrap();
        let (mut reveal, _) = make_reveal(alg, &kp.preimage, &action, &next_seed).unwrap();
        match tamper {
            0 => {} // honest
            1 => {
                let mut x = *reveal.x.as_bytes();
                x[byte] ^= flip;
                reveal.x = Preimage::from_bytes(x);
            }
            _ => reveal.m.dest.0 .0[byte] ^= flip,
        }
        prop_assert_eq!(
            verify_reveal(alg, &full, &reveal),
            verify_reveal(alg, &compact, &reveal)
        );
    }

    #[test]
    fn commit_serialization_hides_preimage(
        alg in algs(),
        mode in modes(),
        seed in any::<[u8; 32]>(),
        dest in any::<[u8; 32]>(),
        amount in 1u64..,
    ) {
        let kp = keygen(alg, &seed);
        let action = Action::transfer(AuthId(Digest(dest)), amount);
        let commitment = make_commit(alg, &kp.preimage, &action, mode).unwrap();
        let envelope = TxEnvelope::commit(kp.auth, commitment.clone());
        // No 16-byte run of the preimage may appear anywhere in either the
        // bare commitment or the framed envelope.
        let x = kp.preimage.as_bytes();
        for start in 0..=x.len() - 16 {
            let window = &x[start..start + 16];
            prop_assert!(!contains_slice(&commitment.to_bytes(), window));
            prop_assert!(!contains_slice(&envelope.to_bytes(), window));
        }
    }

    #[test]
    fn wire_encodings_round_trip(
        alg in algs(),
        mode in modes(),
        seed in any::<[u8; 32]>(),
        next_seed in any::<[u8; 32]>(),
        dest in any::<[u8; 32]>(),
        amount in 1u64..,
    ) {
        let kp = keygen(alg, &seed);
        let action = Action::transfer(AuthId(Digest(dest)), amount);
        let commitment = make_commit(alg, &kp.preimage, &action, mode).unwrap();
        let decoded = Commitment::from_bytes(&commitment.to_bytes(), &kp.auth).unwrap();
        prop_assert_eq!(decoded.mode(), commitment.mode());
        prop_assert_eq!(decoded.addr_hash(), commitment.addr_hash());
        prop_assert_eq!(decoded.compact_hash(), commitment.compact_hash());

        let (reveal, _) = make_reveal(alg, &kp.preimage, &action, &next_seed).unwrap();
        prop_assert_eq!(Reveal::from_bytes(&reveal.to_bytes()).unwrap(), reveal.clone());

        // A decoded commitment still verifies the honest reveal: the
        // envelope's account reference substitutes for the address digest
        // in compact mode.
        prop_assert_eq!(verify_reveal(alg, &decoded, &reveal), Verdict::Pass);

        for env in [
            TxEnvelope::commit(kp.auth, commitment),
            TxEnvelope::reveal(kp.auth, reveal),
        ] {
            let bytes = env.to_bytes();
            prop_assert_eq!(bytes.len() as u64, env.size_bytes());
            // Decoding keeps account and kind and re-encodes to the same
            // bytes. (Envelope equality would be too strong: a decoded
            // compact commit has no binding digest by construction.)
            let back = TxEnvelope::from_bytes(&bytes).unwrap();
            prop_assert_eq!(back.account, env.account);
            prop_assert_eq!(back.kind(), env.kind());
            prop_assert_eq!(back.to_bytes(), bytes);
        }
    }

    #[test]
    fn xor_combine_is_an_involution(a in any::<[u8; 32]>(), b in any::<[u8; 32]>()) {
        let (a, b) = (Digest(a), Digest(b));
        let c = xor_combine(&a, &b);
        prop_assert_eq!(xor_combine(&c, &b), a);
        prop_assert_eq!(xor_combine(&c, &a), b);
        prop_assert_eq!(xor_combine(&a, &a), Digest::ZERO);
    }
}
