use hppk::fhe::{decrypt_value, encrypt_coeffs, eval_cipher_poly, he_keygen, ring_gen, HiddenRing, MonomialIndex, PlainPoly};
use hppk::modmath::{FieldPrime, WideUint};
use hppk::rng::kat_rng;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;

fn big(w: &WideUint) -> BigUint {
    BigUint::from_bytes_le(&w.to_le_bytes())
}

/// Largest of a few fields the ring can carry `terms`-term evaluations for,
/// with cipher values still inside 256 bits.
fn field_for(ring: &HiddenRing, terms: usize) -> FieldPrime {
    let headroom = 64 - (terms as u64).leading_zeros();
    [FieldPrime::P64, FieldPrime::new(4_294_967_291).unwrap(), FieldPrime::new(65_521).unwrap()]
        .into_iter()
        .find(|f| ring.admits(f, terms) && ring.bits() + f.bits() + headroom <= WideUint::BITS)
        .expect("ring of at least 64 bits")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn additive_and_scalar(bits in 64u32..=200, seed in any::<[u8; 32]>(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let mut rng = kat_rng(seed);
        let ring = ring_gen(bits, &mut rng).unwrap();
        let key = he_keygen(&ring, &mut rng);
        let s = ring.modulus();
        let bs = big(s);
        let (ea, eb) = (key.encrypt_coefficient(a), key.encrypt_coefficient(b));

        let sum = ea.add_mod(&eb, s);
        prop_assert_eq!(big(&key.decrypt_coefficient(&sum)), (BigUint::from(a) + b) % &bs);

        let scaled = ea.mul_mod(&WideUint::from_u64(c), s);
        prop_assert_eq!(big(&key.decrypt_coefficient(&scaled)), BigUint::from(a) * c % &bs);

        // R·a mod S by an independent route
        prop_assert_eq!(big(&ea), big(key.multiplier()) * a % &bs);
        prop_assert_eq!(big(key.multiplier()) * big(key.inverse()) % &bs, BigUint::from(1u8) % &bs);
    }

    #[test]
    fn shapes_round_trip(bits in 64u32..=200, seed in any::<[u8; 32]>(), vars in 1usize..5, quadratic: bool) {
        let mut rng = kat_rng(seed);
        let ring = ring_gen(bits, &mut rng).unwrap();
        let key = he_keygen(&ring, &mut rng);
        let index = if quadratic { MonomialIndex::quadratic(vars) } else { MonomialIndex::linear(vars) };
        let field = field_for(&ring, index.len());
        let p = field.value();
        let coeffs = (0..index.len()).map(|_| rng.gen_range(0..p)).collect();
        let plain = PlainPoly::new(field, index, coeffs).unwrap();
        let cipher = encrypt_coeffs(&key, &plain);
        for _ in 0..8 {
            let x: Vec<u64> = (0..vars).map(|_| rng.gen_range(0..p)).collect();
            let value = eval_cipher_poly(&cipher, &x, &field).unwrap();
            let dec = decrypt_value(&key, &value, &field);
            prop_assert_eq!(dec.intermediate, plain.integer_sum(&x).unwrap());
            prop_assert_eq!(dec.residue, plain.evaluate(&x).unwrap());
        }
    }
}

#[test]
fn ring_condition_is_needed() {
    // a 20-bit ring cannot hold a 16-bit field's 10-term sums
    let mut rng = kat_rng([9; 32]);
    let ring = ring_gen(20, &mut rng).unwrap();
    let field = FieldPrime::new(65_521).unwrap();
    let index = MonomialIndex::quadratic(3);
    assert!(!ring.admits(&field, index.len()));
    let key = he_keygen(&ring, &mut rng);
    let plain = PlainPoly::new(field, index.clone(), vec![65_520; index.len()]).unwrap();
    let x = [65_520, 65_519, 65_518];
    let value = eval_cipher_poly(&encrypt_coeffs(&key, &plain), &x, &field).unwrap();
    assert_ne!(decrypt_value(&key, &value, &field).residue, plain.evaluate(&x).unwrap());
}
