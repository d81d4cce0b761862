//! Real genus-0 invariants of `P^{2n-1}` with conjugate-pair insertions.
//!
//! Values are bracket-normalized: the geometric signed count `N` differs
//! from the bracket by the degree-dependent sign `(-1)^{n(d-1)/2}` (see
//! [`count_sign`]). Brackets vanish unless the degree and every insertion
//! are odd, every insertion is below `2n`, and the total codimension matches
//! the moduli dimension. Degree 1 is the closed form `(-1)^{n-1}`; higher
//! odd degrees reduce through one insertion merge plus a sum over splittings
//! into a conjugate pair of complex bubbles and a smaller real component.
//!
//! `eta` values are the negation of `tau` values throughout (each recursion
//! term carries exactly one real factor, so the flip propagates
//! homogeneously); the memo store normalizes keys to `tau` on that basis.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::complex_invariant;
use crate::key::{
    real_dimension_matches, ComplexKey, InsertionMultiset, InvariantValue, Involution, RealKey,
};
use crate::store::MemoStore;

/// True iff the bracket is forced to zero by parity, class vanishing, or the
/// dimension gate. `real_bracket` returns 0 whenever this holds.
pub fn real_vanishes(key: &RealKey) -> bool {
    if key.d.is_multiple_of(2) {
        return true;
    }
    let e = key.insertions.entries();
    if e.iter().any(|&c| c % 2 == 0) {
        return true;
    }
    if e.first().is_some_and(|&c| c >= 2 * key.n) {
        return true;
    }
    !real_dimension_matches(key.n, key.d, &key.insertions)
}

/// Degree-1 closed form: every dimension-valid all-odd bracket in degree 1
/// equals the count of real lines through a point, `(-1)^{n-1}` for `tau`.
fn degree_one_value(n: u32, involution: Involution) -> BigInt {
    let tau_value: i32 = if n % 2 == 1 { 1 } else { -1 };
    match involution {
        Involution::Tau => BigInt::from(tau_value),
        Involution::Eta => BigInt::from(-tau_value),
    }
}

/// The sign relating the bracket normalization to the geometric count:
/// `bracket = count_sign(n, d) * N` with the factor `(-1)^{n(d-1)/2}`,
/// which is its own inverse. Requires odd `d`.
pub fn count_sign(n: u32, d: u32) -> i32 {
    debug_assert!(d % 2 == 1);
    if (n as u64 * ((d as u64 - 1) / 2)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The bracket-normalized real invariant, memoized on the tau-normalized key.
pub fn real_bracket(key: &RealKey, store: &mut MemoStore) -> InvariantValue {
    if real_vanishes(key) {
        return BigInt::zero();
    }
    if let Some(v) = store.get_real(key) {
        return v;
    }
    let value = if key.d == 1 {
        degree_one_value(key.n, key.involution)
    } else if key.k() <= 1 {
        // k = 1 with d >= 3 forces c = n(d+1) - 1 >= 2n, so the gates above
        // have already fired; kept as an explicit branch for completeness.
        BigInt::zero()
    } else {
        recursion_step(key, (0, 1), store)
    };
    store
        .insert_real(key.clone(), value.clone())
        .expect("memo conflict in real recursion: engine bug");
    value
}

/// The geometric signed count `N`. Both the bracket and the count vanish in
/// even degree.
pub fn real_count(key: &RealKey, store: &mut MemoStore) -> InvariantValue {
    if key.d.is_multiple_of(2) {
        return BigInt::zero();
    }
    BigInt::from(count_sign(key.n, key.d)) * real_bracket(key, store)
}

/// The index data of one splitting summand: degrees `(d1, d2)` with
/// `2*d1 + d2 = d`, a distribution of the leftover insertions between the
/// bubble pair and the real component, the diagonal exponents
/// `(2i, j)` with `2i + j = 2n - 1`, and the weight `2^|on_bubble|` counting
/// the choices of which bubble carries each moved constraint.
pub(crate) struct SplittingShape {
    pub bubble_degree: u32,
    pub real_degree: u32,
    pub on_bubble: Vec<u32>,
    pub on_real: Vec<u32>,
    pub even_exponent: u32,
    pub odd_exponent: u32,
    pub weight: u64,
}

/// Enumerates every splitting shape for degree `d` with leftover insertions
/// `rest`. Empty for `d = 1` (no degrees) and for `n = 1` (no diagonal).
pub(crate) fn splitting_shapes(n: u32, d: u32, rest: &[u32]) -> Vec<SplittingShape> {
    let mut shapes = Vec::new();
    for bubble_degree in 1..=(d.saturating_sub(1)) / 2 {
        let real_degree = d - 2 * bubble_degree;
        for mask in 0u64..(1u64 << rest.len()) {
            let mut on_bubble: Vec<u32> = Vec::new();
            let mut on_real: Vec<u32> = Vec::new();
            for (i, &c) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    on_bubble.push(c);
                } else {
                    on_real.push(c);
                }
            }
            let weight = 1u64 << on_bubble.len();
            for i in 1..n {
                shapes.push(SplittingShape {
                    bubble_degree,
                    real_degree,
                    on_bubble: on_bubble.clone(),
                    on_real: on_real.clone(),
                    even_exponent: 2 * i,
                    odd_exponent: 2 * n - 1 - 2 * i,
                    weight,
                });
            }
        }
    }
    shapes
}

/// One materialized summand of the recursion: a complex bubble factor times
/// a real factor, with the combined integer multiplier.
#[derive(Clone, Debug)]
pub struct RealRecursionTerm {
    /// `2^|I| * d2` or `-2^|I| * d1`.
    pub multiplier: i64,
    pub complex_part: ComplexKey,
    pub real_part: RealKey,
}

impl RealRecursionTerm {
    fn new(multiplier: i64, complex_part: ComplexKey, real_part: RealKey) -> Self {
        debug_assert!(complex_part.d >= 1 && real_part.d >= 1);
        let term = RealRecursionTerm {
            multiplier,
            complex_part,
            real_part,
        };
        debug_assert_eq!(term.complex_part.m, 2 * term.real_part.n - 1);
        term
    }

    /// Parent degree recovered from the two factors.
    pub fn parent_degree(&self) -> u32 {
        2 * self.complex_part.d + self.real_part.d
    }
}

/// All splitting summands of the recursion for the given pivot positions.
pub fn recursion_terms(key: &RealKey, pivot: (usize, usize)) -> Vec<RealRecursionTerm> {
    let (p1, p2) = pivot;
    let e = key.insertions.entries();
    let k = e.len();
    assert!(k >= 2 && p1 != p2 && p1 < k && p2 < k);
    let (c1, c2) = (e[p1], e[p2]);
    let rest: Vec<u32> = (0..k)
        .filter(|&i| i != p1 && i != p2)
        .map(|i| e[i])
        .collect();
    let m = 2 * key.n - 1;

    let mut terms = Vec::new();
    for shape in splitting_shapes(key.n, key.d, &rest) {
        let complex_key = |extra: &[u32]| ComplexKey {
            m,
            d: shape.bubble_degree,
            insertions: InsertionMultiset::from_entries(
                shape
                    .on_bubble
                    .iter()
                    .copied()
                    .chain(extra.iter().copied())
                    .collect(),
            ),
        };
        let real_key = |extra: &[u32]| RealKey {
            n: key.n,
            d: shape.real_degree,
            involution: key.involution,
            insertions: InsertionMultiset::from_entries(
                shape
                    .on_real
                    .iter()
                    .copied()
                    .chain(extra.iter().copied())
                    .collect(),
            ),
        };
        terms.push(RealRecursionTerm::new(
            shape.weight as i64 * shape.real_degree as i64,
            complex_key(&[c1 - 1, c2, shape.even_exponent]),
            real_key(&[shape.odd_exponent]),
        ));
        terms.push(RealRecursionTerm::new(
            -(shape.weight as i64) * shape.bubble_degree as i64,
            complex_key(&[c1 - 1, shape.even_exponent]),
            real_key(&[c2, shape.odd_exponent]),
        ));
    }
    terms
}

/// One step of the splitting recursion with explicit pivot positions
/// `(p1, p2)` into the sorted insertions; any ordered pair of distinct
/// positions yields the same value, which the verifier exercises.
///
/// The step is `d * bracket(merged entries)` plus the sum of every
/// [`RealRecursionTerm`]; each term's degrees drop, so the recursion bottoms
/// out in the degree-1 closed form.
pub fn recursion_step(key: &RealKey, pivot: (usize, usize), store: &mut MemoStore) -> BigInt {
    let (p1, p2) = pivot;
    let e = key.insertions.entries();
    let (c1, c2) = (e[p1], e[p2]);
    let rest: Vec<u32> = (0..e.len())
        .filter(|&i| i != p1 && i != p2)
        .map(|i| e[i])
        .collect();

    let merged = RealKey {
        n: key.n,
        d: key.d,
        involution: key.involution,
        insertions: InsertionMultiset::from_entries(
            rest.iter().copied().chain([c1 + c2 - 1]).collect(),
        ),
    };
    let mut value = BigInt::from(key.d) * real_bracket(&merged, store);

    for term in recursion_terms(key, pivot) {
        debug_assert_eq!(term.parent_degree(), key.d);
        let complex_factor = complex_invariant(&term.complex_part, store);
        if complex_factor.is_zero() {
            continue;
        }
        value +=
            BigInt::from(term.multiplier) * complex_factor * real_bracket(&term.real_part, store);
    }
    value
}

/// All dimension-valid all-odd canonical tuples with `k` insertions bounded
/// by `2n - 1`, in ascending lexicographic order. These are exactly the keys
/// that pass every vanishing gate for the given odd degree.
pub fn valid_odd_tuples(n: u32, d: u32, k: usize) -> Vec<InsertionMultiset> {
    let target = n as i64 * (d as i64 + 1) - 2 + k as i64;
    let max_entry = 2 * n - 1;
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    descend(max_entry, target, k, &mut prefix, &mut out);
    out.sort_unstable();
    out
}

fn descend(
    max_entry: u32,
    remaining: i64,
    slots: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<InsertionMultiset>,
) {
    if slots == 0 {
        if remaining == 0 {
            out.push(InsertionMultiset::from_entries(prefix.clone()));
        }
        return;
    }
    if remaining < slots as i64 || remaining > slots as i64 * max_entry as i64 {
        return;
    }
    let mut entry = max_entry;
    loop {
        prefix.push(entry);
        descend(entry, remaining - entry as i64, slots - 1, prefix, out);
        prefix.pop();
        if entry == 1 {
            break;
        }
        entry -= 2;
    }
}
