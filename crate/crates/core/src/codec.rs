//! Fixed-width little-endian wire format for keys and ciphertexts.
//!
//! | object     | layout                                                  |
//! |------------|---------------------------------------------------------|
//! | public key | `P1` row-major, then `P2`, `W_c` bytes per entry        |
//! | secret key | `S`, `R1`, `R2` at `W_c` bytes; `f1`, `f2` at 8 bytes    |
//! | ciphertext | blocks in order, `(c1, c2)` at `W_v` bytes each         |
//!
//! `W_c = ceil(|S| / 8)` and `W_v = ceil((|S| + |p| + 8) / 8)`. There is no
//! header: the parameter set travels out of band.

use crate::kem::{block_count, KemCiphertext};
use crate::modmath::WideUint;
use crate::scheme::{BlockCiphertext, KeyError, Matrix, ParameterSet, PrivateKey, PublicKey};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodecError {
    #[error("malformed encoding: expected {expected} bytes, got {found}")]
    Length { expected: usize, found: usize },
    #[error("malformed encoding: value at offset {offset} exceeds {bits} bits")]
    Overflow { offset: usize, bits: u32 },
    #[error("malformed encoding: {0}")]
    InvalidKey(#[from] KeyError),
}

/// Byte widths derived from a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WireFormat {
    pub coefficient_width: usize,
    pub value_width: usize,
    pub blocks: usize,
    params: ParameterSet,
}

const FIELD_WIDTH: usize = 8;

impl WireFormat {
    pub fn new(params: &ParameterSet) -> Self {
        Self {
            coefficient_width: params.ring_bits().div_ceil(8) as usize,
            value_width: params.value_bits().div_ceil(8) as usize,
            blocks: block_count(params),
            params: *params,
        }
    }

    pub fn pk_len(&self) -> usize {
        2 * self.params.term_count() * self.coefficient_width
    }

    pub fn sk_len(&self) -> usize {
        3 * self.coefficient_width + 2 * (self.params.lambda() + 1) * FIELD_WIDTH
    }

    pub fn ct_len(&self) -> usize {
        self.blocks * 2 * self.value_width
    }
}

fn put(out: &mut Vec<u8>, v: &WideUint, width: usize) {
    out.extend(v.to_le_bytes_width(width).expect("value exceeds its declared width"));
}

struct Reader<'a> {
    bytes: &'a [u8],
    offset: usize,
}

impl Reader<'_> {
    fn wide(&mut self, width: usize, max_bits: u32) -> Result<WideUint, CodecError> {
        let chunk = &self.bytes[self.offset..self.offset + width];
        let v = WideUint::from_le_bytes(chunk)
            .filter(|v| v.bits() <= max_bits)
            .ok_or(CodecError::Overflow {
                offset: self.offset,
                bits: max_bits,
            })?;
        self.offset += width;
        Ok(v)
    }

    fn word(&mut self) -> u64 {
        let v = u64::from_le_bytes(self.bytes[self.offset..self.offset + FIELD_WIDTH].try_into().expect("8 bytes"));
        self.offset += FIELD_WIDTH;
        v
    }
}

fn reader(bytes: &[u8], expected: usize) -> Result<Reader<'_>, CodecError> {
    if bytes.len() != expected {
        return Err(CodecError::Length {
            expected,
            found: bytes.len(),
        });
    }
    Ok(Reader { bytes, offset: 0 })
}

pub fn serialize_pk(pk: &PublicKey) -> Vec<u8> {
    let wire = WireFormat::new(pk.params());
    let mut out = Vec::with_capacity(wire.pk_len());
    for v in pk.p1().as_slice().iter().chain(pk.p2().as_slice()) {
        put(&mut out, v, wire.coefficient_width);
    }
    out
}

pub fn deserialize_pk(params: &ParameterSet, bytes: &[u8]) -> Result<PublicKey, CodecError> {
    let wire = WireFormat::new(params);
    let mut r = reader(bytes, wire.pk_len())?;
    let mut matrix = || -> Result<Matrix<WideUint>, CodecError> {
        let data = (0..params.term_count())
            .map(|_| r.wide(wire.coefficient_width, params.ring_bits()))
            .collect::<Result<_, _>>()?;
        Ok(Matrix::from_vec(params.rows(), params.noise_variables(), data).expect("shape"))
    };
    let p1 = matrix()?;
    let p2 = matrix()?;
    Ok(PublicKey::from_parts(*params, p1, p2)?)
}

pub fn serialize_sk(sk: &PrivateKey) -> Vec<u8> {
    let wire = WireFormat::new(sk.params());
    let mut out = Vec::with_capacity(wire.sk_len());
    for v in [sk.ring_modulus(), sk.k1().multiplier(), sk.k2().multiplier()] {
        put(&mut out, v, wire.coefficient_width);
    }
    for &c in sk.f1().iter().chain(sk.f2()) {
        out.extend(c.to_le_bytes());
    }
    out
}

pub fn deserialize_sk(params: &ParameterSet, bytes: &[u8]) -> Result<PrivateKey, CodecError> {
    let wire = WireFormat::new(params);
    let mut r = reader(bytes, wire.sk_len())?;
    let bits = params.ring_bits();
    let s = r.wide(wire.coefficient_width, bits)?;
    let r1 = r.wide(wire.coefficient_width, bits)?;
    let r2 = r.wide(wire.coefficient_width, bits)?;
    let f1 = (0..=params.lambda()).map(|_| r.word()).collect();
    let f2 = (0..=params.lambda()).map(|_| r.word()).collect();
    Ok(PrivateKey::from_parts(*params, s, r1, r2, f1, f2)?)
}

/// Encodes any sequence of blocks.
pub fn serialize_blocks(params: &ParameterSet, blocks: &[BlockCiphertext]) -> Vec<u8> {
    let width = WireFormat::new(params).value_width;
    let mut out = Vec::with_capacity(blocks.len() * 2 * width);
    for b in blocks {
        put(&mut out, &b.c1, width);
        put(&mut out, &b.c2, width);
    }
    out
}

/// Decodes a whole number of blocks.
pub fn deserialize_blocks(params: &ParameterSet, bytes: &[u8]) -> Result<Vec<BlockCiphertext>, CodecError> {
    let width = WireFormat::new(params).value_width;
    if bytes.is_empty() || !bytes.len().is_multiple_of(2 * width) {
        return Err(CodecError::Length {
            expected: (bytes.len() / (2 * width)).max(1) * 2 * width,
            found: bytes.len(),
        });
    }
    let mut r = Reader { bytes, offset: 0 };
    (0..bytes.len() / (2 * width))
        .map(|_| {
            Ok(BlockCiphertext {
                c1: r.wide(width, params.value_bits())?,
                c2: r.wide(width, params.value_bits())?,
            })
        })
        .collect()
}

pub fn serialize_ct(params: &ParameterSet, ct: &KemCiphertext) -> Vec<u8> {
    serialize_blocks(params, &ct.blocks)
}

pub fn deserialize_ct(params: &ParameterSet, bytes: &[u8]) -> Result<KemCiphertext, CodecError> {
    let wire = WireFormat::new(params);
    reader(bytes, wire.ct_len())?;
    Ok(KemCiphertext {
        blocks: deserialize_blocks(params, bytes)?,
    })
}
