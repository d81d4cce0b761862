//! Canonical invariant keys and the dimension gates shared by both engines.
//!
//! Invariants are insertion-order independent, so every key stores its
//! constraint codimensions as a multiset canonically sorted in descending
//! order; two keys built from permutations of the same tuple are identical
//! and hit the same memo slot.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Exact signed invariant value. Complex invariants of `P^3` already exceed
/// 64 bits at moderate degree, so there is no fixed-width fast path anywhere.
pub type InvariantValue = num_bigint::BigInt;

/// Multiset of constraint codimensions (exponents of the hyperplane class),
/// stored sorted in descending order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InsertionMultiset {
    entries: Vec<u32>,
}

impl InsertionMultiset {
    /// Validates and canonicalizes a raw tuple: entries must be nonnegative;
    /// the result is sorted descending, so input order never affects any
    /// computed value.
    pub fn canonicalize(raw: &[i64]) -> Result<Self, KeyError> {
        for (index, &value) in raw.iter().enumerate() {
            if value < 0 {
                return Err(KeyError::NegativeEntry { index, value });
            }
        }
        Ok(Self::from_entries(raw.iter().map(|&v| v as u32).collect()))
    }

    /// Canonicalizes a list of already-nonnegative entries.
    pub fn from_entries(mut entries: Vec<u32>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        InsertionMultiset { entries }
    }

    pub fn empty() -> Self {
        InsertionMultiset {
            entries: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().map(|&c| c as u64).sum()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, u32> {
        self.entries.iter()
    }

    /// Sum of squared entries, used by the complex engine's termination
    /// measure.
    pub fn sum_of_squares(&self) -> u64 {
        self.entries.iter().map(|&c| (c as u64) * (c as u64)).sum()
    }

    /// New multiset with the entry at `index` (position in the sorted order)
    /// removed.
    pub fn without_index(&self, index: usize) -> Self {
        let mut entries = self.entries.clone();
        entries.remove(index);
        InsertionMultiset { entries }
    }

    /// New multiset with extra entries added (re-canonicalized).
    pub fn with_extra(&self, extra: &[u32]) -> Self {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(extra);
        Self::from_entries(entries)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.entries.clone()
    }
}

impl fmt::Display for InsertionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for InsertionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// One complex genus-0 invariant of `P^m`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ComplexKey {
    pub m: u32,
    pub d: u32,
    pub insertions: InsertionMultiset,
}

impl ComplexKey {
    pub fn new(m: u32, d: u32, insertions: InsertionMultiset) -> Result<Self, KeyError> {
        if m < 2 {
            return Err(KeyError::TargetTooSmall { m });
        }
        Ok(ComplexKey { m, d, insertions })
    }

    pub fn k(&self) -> usize {
        self.insertions.len()
    }
}

impl fmt::Display for ComplexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>_{}^P{}", self.insertions, self.d, self.m)
    }
}

/// The two standard anti-holomorphic involutions of `P^{2n-1}`: `tau` fixes
/// `RP^{2n-1}`, `eta` is fixed-point free.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Involution {
    Tau,
    Eta,
}

impl Involution {
    pub fn name(self) -> &'static str {
        match self {
            Involution::Tau => "tau",
            Involution::Eta => "eta",
        }
    }

    pub fn parse(s: &str) -> Result<Self, KeyError> {
        match s {
            "tau" => Ok(Involution::Tau),
            "eta" => Ok(Involution::Eta),
            _ => Err(KeyError::UnknownInvolution {
                found: String::from(s),
            }),
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One real genus-0 invariant of `P^{2n-1}` with conjugate-pair insertions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RealKey {
    pub n: u32,
    pub d: u32,
    pub involution: Involution,
    pub insertions: InsertionMultiset,
}

impl RealKey {
    pub fn new(
        n: u32,
        d: u32,
        involution: Involution,
        insertions: InsertionMultiset,
    ) -> Result<Self, KeyError> {
        if n < 1 {
            return Err(KeyError::TargetTooSmall { m: 0 });
        }
        if d < 1 {
            return Err(KeyError::ZeroDegree);
        }
        if let Some(&0) = insertions.entries().last() {
            return Err(KeyError::ZeroRealInsertion);
        }
        Ok(RealKey {
            n,
            d,
            involution,
            insertions,
        })
    }

    pub fn k(&self) -> usize {
        self.insertions.len()
    }

    /// Same key with the involution replaced.
    pub fn with_involution(&self, involution: Involution) -> Self {
        RealKey {
            involution,
            ..self.clone()
        }
    }
}

impl fmt::Display for RealKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}>_{}^{{{},n={}}}",
            self.insertions, self.d, self.involution, self.n
        )
    }
}

/// Genus-0 dimension gate for `P^m`: the invariant can only be nonzero when
/// the total constraint codimension matches the moduli dimension
/// `(m+1)d + m - 3 + k`.
pub fn complex_dimension_matches(m: u32, d: u32, insertions: &InsertionMultiset) -> bool {
    let k = insertions.len() as i64;
    insertions.sum() as i64 == (m as i64 + 1) * d as i64 + m as i64 - 3 + k
}

/// Real dimension gate for `P^{2n-1}`: total codimension must equal
/// `n(d+1) - 2 + k`.
pub fn real_dimension_matches(n: u32, d: u32, insertions: &InsertionMultiset) -> bool {
    let k = insertions.len() as i64;
    insertions.sum() as i64 == n as i64 * (d as i64 + 1) - 2 + k
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KeyError {
    NegativeEntry { index: usize, value: i64 },
    TargetTooSmall { m: u32 },
    ZeroDegree,
    ZeroRealInsertion,
    UnknownInvolution { found: String },
}

impl fmt::Display for KeyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyError::NegativeEntry { index, value } => {
                write!(f, "insertion {index} is negative ({value})")
            }
            KeyError::TargetTooSmall { m } => {
                write!(f, "target dimension parameter too small ({m})")
            }
            KeyError::ZeroDegree => write!(f, "real invariants require degree >= 1"),
            KeyError::ZeroRealInsertion => {
                write!(f, "real insertions must be >= 1")
            }
            KeyError::UnknownInvolution { found } => {
                write!(f, "unknown involution {found:?} (expected tau or eta)")
            }
        }
    }
}

impl core::error::Error for KeyError {}
