//! Known-answer test files.
//!
//! A file is a `#` comment header followed by records of `field = hex` lines,
//! one blank line between records. Each named record replays keygen then
//! encaps from one ChaCha20 stream seeded with the record's seed. The toy
//! record holds the fixed 13-element fixture at block level: its ciphertext is
//! one block and its secret is the single decrypted byte.

use std::fmt::Write as _;

use rand::RngCore;

use crate::codec::{deserialize_ct, deserialize_sk, serialize_blocks, serialize_ct, serialize_pk, serialize_sk};
use crate::kem::{decaps, encaps};
use crate::rng::{kat_rng, KAT_GENERATOR};
use crate::scheme::{decrypt_block, toy, ParameterSet};

pub const TOY_LABEL: &str = "toy-p13";
const FIELDS: [&str; 6] = ["label", "seed", "pk", "sk", "ct", "ss"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatRecord {
    pub label: String,
    pub seed: [u8; 32],
    pub pk: Vec<u8>,
    pub sk: Vec<u8>,
    pub ct: Vec<u8>,
    pub ss: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct KatParseError {
    pub line: usize,
    pub message: String,
}

pub fn generate_record(params: &ParameterSet, seed: [u8; 32]) -> KatRecord {
    let mut rng = kat_rng(seed);
    let (sk, pk) = crate::scheme::keygen(params, &mut rng);
    let (ct, ss) = encaps(&pk, &mut rng);
    KatRecord {
        label: params.label(),
        seed,
        pk: serialize_pk(&pk),
        sk: serialize_sk(&sk),
        ct: serialize_ct(params, &ct),
        ss: ss.as_bytes().to_vec(),
    }
}

pub fn toy_record() -> KatRecord {
    let (sk, pk) = toy::keypair();
    let params = ParameterSet::toy();
    KatRecord {
        label: TOY_LABEL.to_string(),
        seed: [0; 32],
        pk: serialize_pk(&pk),
        sk: serialize_sk(&sk),
        ct: serialize_blocks(&params, &[toy::ciphertext()]),
        ss: vec![toy::X as u8],
    }
}

/// One record per named parameter set, seeds drawn from `base_seed`, then the toy record.
pub fn generate_suite(base_seed: [u8; 32]) -> Vec<KatRecord> {
    let mut seeds = kat_rng(base_seed);
    let mut records: Vec<KatRecord> = ParameterSet::named()
        .into_iter()
        .map(|(_, _, params)| {
            let mut seed = [0; 32];
            seeds.fill_bytes(&mut seed);
            generate_record(&params, seed)
        })
        .collect();
    records.push(toy_record());
    records
}

pub fn format_suite(records: &[KatRecord]) -> String {
    let mut out = String::new();
    out.push_str("# hppk known-answer tests\n");
    let _ = writeln!(out, "# generator: {KAT_GENERATOR}");
    out.push_str("# per record: keygen then encaps from one stream seeded with `seed`\n");
    for r in records {
        out.push('\n');
        let _ = writeln!(out, "label = {}", r.label);
        for (name, bytes) in [("seed", &r.seed[..]), ("pk", &r.pk), ("sk", &r.sk), ("ct", &r.ct), ("ss", &r.ss)] {
            let _ = writeln!(out, "{name} = {}", hex::encode(bytes));
        }
    }
    out
}

#[derive(Default)]
struct Partial {
    start: usize,
    values: [Option<String>; 6],
}

impl Partial {
    fn finish(self) -> Result<KatRecord, KatParseError> {
        let err = |message: String| KatParseError { line: self.start, message };
        let mut values = self.values.into_iter().zip(FIELDS);
        let mut take = || {
            let (v, name) = values.next().expect("six fields");
            v.ok_or_else(|| err(format!("record is missing `{name}`")))
        };
        let label = take()?;
        let mut bytes = || -> Result<Vec<u8>, KatParseError> {
            let v = take()?;
            hex::decode(&v).map_err(|e| err(format!("bad hex: {e}")))
        };
        let seed = bytes()?.try_into().map_err(|_| err("seed must be 32 bytes".into()))?;
        Ok(KatRecord {
            label,
            seed,
            pk: bytes()?,
            sk: bytes()?,
            ct: bytes()?,
            ss: bytes()?,
        })
    }
}

pub fn parse_suite(text: &str) -> Result<Vec<KatRecord>, KatParseError> {
    let mut records = Vec::new();
    let mut current: Option<Partial> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if let Some(p) = current.take() {
                records.push(p.finish()?);
            }
            continue;
        }
        let err = |message: String| KatParseError { line: i + 1, message };
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected `field = value`".into()))?;
        let (key, value) = (key.trim(), value.trim());
        let slot = FIELDS.iter().position(|&f| f == key).ok_or_else(|| err(format!("unknown field `{key}`")))?;
        let p = current.get_or_insert_with(|| Partial { start: i + 1, ..Partial::default() });
        if p.values[slot].replace(value.to_string()).is_some() {
            return Err(err(format!("duplicate field `{key}`")));
        }
    }
    if let Some(p) = current {
        records.push(p.finish()?);
    }
    if records.is_empty() {
        return Err(KatParseError {
            line: 0,
            message: "no records".into(),
        });
    }
    Ok(records)
}

/// Replays a record; on mismatch names the first differing field.
pub fn verify_record(record: &KatRecord) -> Result<(), String> {
    let expected = if record.label == TOY_LABEL {
        toy_record()
    } else {
        let params = ParameterSet::from_label(&record.label).ok_or_else(|| format!("unknown parameter label `{}`", record.label))?;
        generate_record(&params, record.seed)
    };
    let pairs: [(&str, &[u8], &[u8]); 5] = [
        ("seed", &expected.seed, &record.seed),
        ("pk", &expected.pk, &record.pk),
        ("sk", &expected.sk, &record.sk),
        ("ct", &expected.ct, &record.ct),
        ("ss", &expected.ss, &record.ss),
    ];
    if let Some((name, ..)) = pairs.iter().find(|(_, e, g)| e != g) {
        return Err(format!("{name} differs"));
    }
    decapsulates(record).then_some(()).ok_or_else(|| "ss does not decapsulate from ct".to_string())
}

fn decapsulates(record: &KatRecord) -> bool {
    if record.label == TOY_LABEL {
        let (sk, _) = toy::keypair();
        return decrypt_block(&sk, &toy::ciphertext()).is_ok_and(|x| [x as u8][..] == record.ss[..]);
    }
    let Some(params) = ParameterSet::from_label(&record.label) else {
        return false;
    };
    let (Ok(sk), Ok(ct)) = (deserialize_sk(&params, &record.sk), deserialize_ct(&params, &record.ct)) else {
        return false;
    };
    decaps(&sk, &ct).is_ok_and(|ss| ss.as_bytes()[..] == record.ss[..])
}
