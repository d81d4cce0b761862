//! Shared memo store for both engines, with a line-oriented text format for
//! persistence.
//!
//! Reads take `&self` and writes `&mut self`, so concurrent readers are safe
//! by construction and writers are serialized by the borrow checker; the
//! engines never require a particular evaluation order.
//!
//! Real entries are stored under the `tau` involution only: the `eta` value
//! of a key is exactly the negation of its `tau` value, so `eta` accesses are
//! normalized on the way in and out. This keeps a single source of truth per
//! geometric key and halves the cache.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;

use crate::key::{ComplexKey, InsertionMultiset, Involution, KeyError, RealKey};

/// Magic tag and format version of the cache file header line.
pub const CACHE_HEADER: &str = "RGWCACHE 1";

#[derive(Clone, Default, Debug, PartialEq, Eq)]
pub struct MemoStore {
    complex: BTreeMap<ComplexKey, BigInt>,
    real: BTreeMap<RealKey, BigInt>,
}

impl MemoStore {
    pub fn new() -> Self {
        MemoStore::default()
    }

    pub fn complex_len(&self) -> usize {
        self.complex.len()
    }

    pub fn real_len(&self) -> usize {
        self.real.len()
    }

    pub fn get_complex(&self, key: &ComplexKey) -> Option<&BigInt> {
        self.complex.get(key)
    }

    pub fn contains_complex(&self, key: &ComplexKey) -> bool {
        self.complex.contains_key(key)
    }

    /// Idempotent insert: re-inserting the identical value is a no-op, a
    /// conflicting value is an internal-consistency error. A conflict means
    /// an engine bug, so callers on engine paths abort rather than continue
    /// with untrustworthy numbers.
    pub fn insert_complex(&mut self, key: ComplexKey, value: BigInt) -> Result<(), StoreError> {
        match self.complex.get(&key) {
            Some(existing) if *existing == value => Ok(()),
            Some(existing) => Err(StoreError::Conflict {
                key: key.to_string(),
                existing: existing.to_string(),
                incoming: value.to_string(),
            }),
            None => {
                self.complex.insert(key, value);
                Ok(())
            }
        }
    }

    /// Looks up a real bracket value; `eta` keys read the stored `tau` value
    /// with the sign flipped.
    pub fn get_real(&self, key: &RealKey) -> Option<BigInt> {
        match key.involution {
            Involution::Tau => self.real.get(key).cloned(),
            Involution::Eta => self
                .real
                .get(&key.with_involution(Involution::Tau))
                .map(|v| -v),
        }
    }

    pub fn insert_real(&mut self, key: RealKey, value: BigInt) -> Result<(), StoreError> {
        let (key, value) = match key.involution {
            Involution::Tau => (key, value),
            Involution::Eta => (key.with_involution(Involution::Tau), -value),
        };
        match self.real.get(&key) {
            Some(existing) if *existing == value => Ok(()),
            Some(existing) => Err(StoreError::Conflict {
                key: key.to_string(),
                existing: existing.to_string(),
                incoming: value.to_string(),
            }),
            None => {
                self.real.insert(key, value);
                Ok(())
            }
        }
    }

    /// Merges another store into this one; conflicting values abort.
    pub fn merge(&mut self, other: MemoStore) -> Result<(), StoreError> {
        for (key, value) in other.complex {
            self.insert_complex(key, value)?;
        }
        for (key, value) in other.real {
            self.insert_real(key, value)?;
        }
        Ok(())
    }

    /// Serializes the store. Entries are emitted in key order, so the output
    /// is a deterministic function of the contents and export/import round
    /// trips are byte-faithful.
    pub fn export_string(&self) -> String {
        let mut out = String::new();
        out.push_str(CACHE_HEADER);
        out.push('\n');
        for (key, value) in &self.complex {
            out.push_str(&format!(
                "C|{}|{}|{}|{}\n",
                key.m, key.d, key.insertions, value
            ));
        }
        for (key, value) in &self.real {
            out.push_str(&format!(
                "R|{}|{}|{}|{}|{}\n",
                key.n, key.d, key.involution, key.insertions, value
            ));
        }
        out
    }

    /// Parses a serialized store. Errors carry 1-based line numbers.
    pub fn import_string(text: &str) -> Result<Self, StoreError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header == CACHE_HEADER => {}
            Some((_, header)) => {
                let mut parts = header.split_whitespace();
                if parts.next() == Some("RGWCACHE") {
                    return Err(StoreError::VersionMismatch {
                        found: parts.next().unwrap_or("").to_string(),
                    });
                }
                return Err(StoreError::MissingHeader);
            }
            None => return Err(StoreError::MissingHeader),
        }

        let mut store = MemoStore::new();
        for (index, line) in lines {
            let lineno = index + 1;
            if line.is_empty() {
                continue;
            }
            store
                .parse_record(line)
                .map_err(|message| StoreError::Parse {
                    line: lineno,
                    message,
                })?;
        }
        Ok(store)
    }

    fn parse_record(&mut self, line: &str) -> Result<(), String> {
        let fields: Vec<&str> = line.split('|').collect();
        match fields.as_slice() {
            ["C", m, d, insertions, value] => {
                let m = parse_u32(m, "m")?;
                let d = parse_u32(d, "d")?;
                let insertions = parse_insertions(insertions)?;
                let value = parse_value(value)?;
                let key = ComplexKey::new(m, d, insertions).map_err(|e| e.to_string())?;
                self.insert_complex(key, value).map_err(|e| e.to_string())
            }
            ["R", n, d, involution, insertions, value] => {
                let n = parse_u32(n, "n")?;
                let d = parse_u32(d, "d")?;
                let involution = Involution::parse(involution).map_err(|e| e.to_string())?;
                let insertions = parse_insertions(insertions)?;
                let value = parse_value(value)?;
                let key =
                    RealKey::new(n, d, involution, insertions).map_err(|e| e.to_string())?;
                self.insert_real(key, value).map_err(|e| e.to_string())
            }
            _ => Err(format!(
                "expected C|m|d|insertions|value or R|n|d|involution|insertions|value, got {} field(s)",
                fields.len()
            )),
        }
    }
}

fn parse_u32(text: &str, what: &str) -> Result<u32, String> {
    text.parse::<u32>()
        .map_err(|_| format!("invalid {what} field {text:?}"))
}

fn parse_insertions(text: &str) -> Result<InsertionMultiset, String> {
    if text.is_empty() {
        return Ok(InsertionMultiset::empty());
    }
    let mut entries = Vec::new();
    for part in text.split(',') {
        entries.push(
            part.parse::<u32>()
                .map_err(|_| format!("invalid insertion {part:?}"))?,
        );
    }
    Ok(InsertionMultiset::from_entries(entries))
}

fn parse_value(text: &str) -> Result<BigInt, String> {
    text.parse::<BigInt>()
        .map_err(|_| format!("invalid value {text:?}"))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StoreError {
    /// A key was re-inserted with a different value. This signals an engine
    /// bug or corrupted cache; all downstream numbers would be untrustworthy.
    Conflict {
        key: String,
        existing: String,
        incoming: String,
    },
    Parse {
        line: usize,
        message: String,
    },
    VersionMismatch {
        found: String,
    },
    MissingHeader,
}

impl fmt::Display for StoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StoreError::Conflict {
                key,
                existing,
                incoming,
            } => write!(
                f,
                "conflicting value for {key}: cached {existing}, incoming {incoming}"
            ),
            StoreError::Parse { line, message } => {
                write!(f, "cache line {line}: {message}")
            }
            StoreError::VersionMismatch { found } => write!(
                f,
                "unsupported cache format version {found:?} (expected {CACHE_HEADER:?})"
            ),
            StoreError::MissingHeader => {
                write!(f, "missing cache header line {CACHE_HEADER:?}")
            }
        }
    }
}

impl core::error::Error for StoreError {}

impl From<KeyError> for StoreError {
    fn from(err: KeyError) -> Self {
        StoreError::Parse {
            line: 0,
            message: err.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ckey(m: u32, d: u32, entries: &[u32]) -> ComplexKey {
        ComplexKey::new(m, d, InsertionMultiset::from_entries(entries.to_vec())).unwrap()
    }

    fn rkey(n: u32, d: u32, involution: Involution, entries: &[u32]) -> RealKey {
        RealKey::new(
            n,
            d,
            involution,
            InsertionMultiset::from_entries(entries.to_vec()),
        )
        .unwrap()
    }

    #[test]
    fn put_then_get_round_trip() {
        let mut store = MemoStore::new();
        let key = ckey(3, 2, &[2; 8]);
        store.insert_complex(key.clone(), BigInt::from(92)).unwrap();
        assert_eq!(store.get_complex(&key), Some(&BigInt::from(92)));
    }

    #[test]
    fn get_unknown_is_absent() {
        let store = MemoStore::new();
        assert_eq!(store.get_complex(&ckey(3, 1, &[3, 3])), None);
    }

    #[test]
    fn conflicting_reinsert_is_error() {
        let mut store = MemoStore::new();
        let key = ckey(3, 2, &[2; 8]);
        store.insert_complex(key.clone(), BigInt::from(92)).unwrap();
        assert!(store.insert_complex(key.clone(), BigInt::from(92)).is_ok());
        assert!(matches!(
            store.insert_complex(key, BigInt::from(91)),
            Err(StoreError::Conflict { .. })
        ));
    }

    #[test]
    fn eta_accesses_normalize_to_tau() {
        let mut store = MemoStore::new();
        let tau = rkey(2, 3, Involution::Tau, &[3, 3, 3]);
        let eta = tau.with_involution(Involution::Eta);
        store.insert_real(eta.clone(), BigInt::from(-1)).unwrap();
        assert_eq!(store.get_real(&tau), Some(BigInt::from(1)));
        assert_eq!(store.get_real(&eta), Some(BigInt::from(-1)));
        // consistent re-insert through the other involution
        assert!(store.insert_real(tau, BigInt::from(1)).is_ok());
    }

    #[test]
    fn export_import_round_trip() {
        let mut store = MemoStore::new();
        store
            .insert_complex(ckey(3, 1, &[3, 3]), BigInt::from(1))
            .unwrap();
        store
            .insert_complex(ckey(2, 5, &[2; 14]), BigInt::from(87304))
            .unwrap();
        store
            .insert_real(rkey(2, 1, Involution::Tau, &[3]), BigInt::from(-1))
            .unwrap();
        // value beyond 64 bits
        let huge: BigInt = "-123456789012345678901234567890123456789".parse().unwrap();
        store.insert_complex(ckey(5, 9, &[5, 5, 4]), huge).unwrap();

        let text = store.export_string();
        let reimported = MemoStore::import_string(&text).unwrap();
        assert_eq!(store, reimported);
        // byte-faithful
        assert_eq!(text, reimported.export_string());
    }

    #[test]
    fn import_format_example() {
        let store = MemoStore::import_string("RGWCACHE 1\nC|3|1|3,3|1\n").unwrap();
        assert_eq!(
            store.get_complex(&ckey(3, 1, &[3, 3])),
            Some(&BigInt::from(1))
        );
    }

    #[test]
    fn import_reports_line_numbers() {
        let err = MemoStore::import_string("RGWCACHE 1\nC|3|1|3,3|1\nC|x|1|3|1\n").unwrap_err();
        assert!(matches!(err, StoreError::Parse { line: 3, .. }));
    }

    #[test]
    fn import_rejects_unknown_version() {
        let err = MemoStore::import_string("RGWCACHE 2\n").unwrap_err();
        assert_eq!(
            err,
            StoreError::VersionMismatch {
                found: String::from("2")
            }
        );
    }

    #[test]
    fn import_rejects_missing_header() {
        assert_eq!(
            MemoStore::import_string("C|3|1|3,3|1\n").unwrap_err(),
            StoreError::MissingHeader
        );
    }

    #[test]
    fn empty_insertions_field() {
        let mut store = MemoStore::new();
        store
            .insert_complex(
                ComplexKey::new(3, 1, InsertionMultiset::empty()).unwrap(),
                BigInt::from(0),
            )
            .unwrap();
        let text = store.export_string();
        assert!(text.contains("C|3|1||0"));
        assert_eq!(MemoStore::import_string(&text).unwrap(), store);
    }

    #[test]
    fn exports_eta_inserts_as_tau() {
        let mut store = MemoStore::new();
        store
            .insert_real(rkey(2, 1, Involution::Eta, &[3]), BigInt::from(1))
            .unwrap();
        let text = store.export_string();
        assert!(text.contains("R|2|1|tau|3|-1"));
        assert_eq!(
            vec![&text],
            vec![&MemoStore::import_string(&text).unwrap().export_string()]
        );
    }
}
