//! Complex genus-0 Gromov-Witten invariants of `P^m`, reconstructed from the
//! single line through two points by a WDVV associativity step.
//!
//! The reduction order is: class/dimension vanishing, degree-0 triple
//! intersections, the fundamental-class axiom, divisor stripping, and then
//! one associativity step on keys whose insertions all lie in `[2, m]`. The
//! engine never divides: the target's coefficient in the associativity
//! identity is exactly 1, and divisor stripping only multiplies by `d`.
//!
//! Recursion is driven by an explicit agenda (a frame stack over the memo
//! store) instead of the call stack, so deep dependency chains at higher
//! degree cannot overflow.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::key::{complex_dimension_matches, ComplexKey, InsertionMultiset, InvariantValue};
use crate::store::MemoStore;

/// Outcome of one normalization step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Normalization {
    /// The invariant is a known constant.
    Resolved(InvariantValue),
    /// invariant(original) = multiplier * invariant(key); repeatable.
    Reduced { multiplier: u32, key: ComplexKey },
    /// No axiom applies; the key is ready for base-case or WDVV handling.
    Core(ComplexKey),
}

/// Applies the standard axioms in a fixed order:
/// class vanishing (`c > m`) and the dimension gate, then degree-0 triple
/// intersections, then the fundamental-class axiom, then one divisor strip.
pub fn normalize_axioms(key: &ComplexKey) -> Normalization {
    let ims = &key.insertions;
    let exceeds_target = ims.entries().first().is_some_and(|&c| c > key.m);
    if exceeds_target || !complex_dimension_matches(key.m, key.d, ims) {
        return Normalization::Resolved(BigInt::zero());
    }
    if key.d == 0 {
        let value = if ims.len() == 3 && ims.sum() == key.m as u64 {
            BigInt::from(1)
        } else {
            BigInt::zero()
        };
        return Normalization::Resolved(value);
    }
    if ims.entries().last() == Some(&0) {
        return Normalization::Resolved(BigInt::zero());
    }
    if let Some(index) = ims.entries().iter().rposition(|&c| c == 1) {
        return Normalization::Reduced {
            multiplier: key.d,
            key: ComplexKey {
                m: key.m,
                d: key.d,
                insertions: ims.without_index(index),
            },
        };
    }
    Normalization::Core(key.clone())
}

/// Fully reduced form: invariant = `multiplier * invariant(kernel)`, where a
/// missing kernel means the constant 1.
struct Reduction {
    multiplier: i128,
    kernel: Option<ComplexKey>,
}

fn reduce(key: &ComplexKey) -> Reduction {
    let mut multiplier: i128 = 1;
    let mut current = key.clone();
    loop {
        match normalize_axioms(&current) {
            Normalization::Resolved(value) => {
                // normalization only resolves to 0 or 1
                if value.is_zero() {
                    multiplier = 0;
                }
                return Reduction {
                    multiplier,
                    kernel: None,
                };
            }
            Normalization::Reduced { multiplier: d, key } => {
                multiplier *= d as i128;
                current = key;
            }
            Normalization::Core(core) => {
                if core.k() <= 2 {
                    multiplier *= base_value(&core);
                    return Reduction {
                        multiplier,
                        kernel: None,
                    };
                }
                return Reduction {
                    multiplier,
                    kernel: Some(core),
                };
            }
        }
    }
}

/// Base-case completeness: a dimension-valid key with all insertions in
/// `[2, m]` and at most two of them is the line through two points (value 1)
/// or nothing.
fn base_value(core: &ComplexKey) -> i128 {
    let e = core.insertions.entries();
    if core.d == 1 && e == [core.m, core.m] {
        1
    } else {
        0
    }
}

/// Lexicographic termination measure `(d, k, k*m^2 - sum c_i^2)`. Every
/// bracket generated by the associativity step is strictly smaller than the
/// key being expanded.
pub fn termination_measure(key: &ComplexKey) -> (i64, i64, i64) {
    let k = key.k() as i64;
    let m = key.m as i64;
    (
        key.d as i64,
        k,
        k * m * m - key.insertions.sum_of_squares() as i64,
    )
}

/// Pivot positions `(c1, c2, c3)` into the descending-sorted insertions.
pub type Pivot = (usize, usize, usize);

/// The fixed rule: `c1` = smallest insertion, `c3` = largest, `c2` = second
/// largest. Driving the merged entry past `m` quickly maximizes early
/// vanishing, and `c3 >= c1` makes the termination measure provable.
pub fn default_pivot(k: usize) -> Pivot {
    debug_assert!(k >= 3);
    (k - 1, 1, 0)
}

/// One summand of an expansion: `coeff * prod(invariant(factor))`, with all
/// factors already reduced to core keys (`k >= 3`, entries in `[2, m]`).
struct Term {
    coeff: i128,
    factors: Vec<ComplexKey>,
}

/// Expands a core key by one associativity step with the given pivot.
/// Requires entries in `[2, m]`, `k >= 3`, `d >= 1`, and `c3 >= c1`.
fn expansion_terms(key: &ComplexKey, pivot: Pivot) -> Vec<Term> {
    let (i1, i2, i3) = pivot;
    let e = key.insertions.entries();
    let k = e.len();
    assert!(k >= 3 && i1 != i2 && i2 != i3 && i1 != i3 && i1 < k && i2 < k && i3 < k);
    let (c1, c2, c3) = (e[i1], e[i2], e[i3]);
    assert!(c1 >= 2, "pivot c1 must be >= 2");
    assert!(c3 >= c1, "pivot must satisfy c3 >= c1");
    let rest: Vec<u32> = (0..k)
        .filter(|&i| i != i1 && i != i2 && i != i3)
        .map(|i| e[i])
        .collect();

    let parent_measure = termination_measure(key);
    let mut grouped: BTreeMap<Vec<ComplexKey>, i128> = BTreeMap::new();
    let mut add = |coeff: i128, brackets: &[(u32, Vec<u32>)]| {
        let mut total = coeff;
        let mut factors = Vec::new();
        for (d, entries) in brackets {
            let raw = ComplexKey {
                m: key.m,
                d: *d,
                insertions: InsertionMultiset::from_entries(entries.clone()),
            };
            assert!(
                termination_measure(&raw) < parent_measure,
                "termination measure failed to decrease: {key} -> {raw}"
            );
            let reduction = reduce(&raw);
            if reduction.multiplier == 0 {
                return;
            }
            total *= reduction.multiplier;
            if let Some(kernel) = reduction.kernel {
                factors.push(kernel);
            }
        }
        factors.sort_unstable();
        *grouped.entry(factors).or_insert(0) += total;
    };

    let with_rest = |extra: &[u32]| {
        let mut v = rest.clone();
        v.extend_from_slice(extra);
        v
    };

    let d = key.d;
    add(d as i128, &[(d, with_rest(&[c1 + c2 - 1, c3]))]);
    add(-(d as i128), &[(d, with_rest(&[c1 - 1, c2 + c3]))]);
    add(1, &[(d, with_rest(&[c1 - 1, c2, c3 + 1]))]);

    // Boundary splittings: distribute the leftover insertions over the two
    // components in all ways, and sum over the diagonal class split
    // H^e x H^{m-e}. Terms whose exponents leave [0, m] reduce to zero
    // rather than being filtered here, keeping the enumeration uniform.
    for d_a in 1..d {
        let d_b = d - d_a;
        for mask in 0u64..(1u64 << rest.len()) {
            let mut side_a: Vec<u32> = Vec::new();
            let mut side_b: Vec<u32> = Vec::new();
            for (i, &c) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    side_a.push(c);
                } else {
                    side_b.push(c);
                }
            }
            for exp in 0..=key.m {
                let mut a_pos = side_a.clone();
                a_pos.extend_from_slice(&[c1 - 1, c2, exp]);
                let mut b_pos = side_b.clone();
                b_pos.extend_from_slice(&[key.m - exp, c3]);
                add(d_b as i128, &[(d_a, a_pos), (d_b, b_pos)]);

                let mut a_neg = side_a.clone();
                a_neg.extend_from_slice(&[c1 - 1, exp]);
                let mut b_neg = side_b.clone();
                b_neg.extend_from_slice(&[key.m - exp, c2, c3]);
                add(-(d_a as i128), &[(d_a, a_neg), (d_b, b_neg)]);
            }
        }
    }

    grouped
        .into_iter()
        .filter(|(_, coeff)| *coeff != 0)
        .map(|(factors, coeff)| Term { coeff, factors })
        .collect()
}

struct Frame {
    key: ComplexKey,
    terms: Vec<Term>,
    scan_term: usize,
    scan_factor: usize,
}

impl Frame {
    fn new(key: ComplexKey) -> Self {
        let terms = expansion_terms(&key, default_pivot(key.k()));
        Frame {
            key,
            terms,
            scan_term: 0,
            scan_factor: 0,
        }
    }
}

/// Evaluates a core key through the agenda: frames are expanded until all of
/// their factors are memoized, then combined and stored.
fn eval_core(root: &ComplexKey, store: &mut MemoStore) -> InvariantValue {
    if let Some(v) = store.get_complex(root) {
        return v.clone();
    }
    let mut pending: BTreeSet<ComplexKey> = BTreeSet::new();
    pending.insert(root.clone());
    let mut stack = vec![Frame::new(root.clone())];

    while let Some(top) = stack.len().checked_sub(1) {
        let mut missing: Option<ComplexKey> = None;
        {
            let frame = &mut stack[top];
            'scan: while frame.scan_term < frame.terms.len() {
                let term = &frame.terms[frame.scan_term];
                while frame.scan_factor < term.factors.len() {
                    let factor = &term.factors[frame.scan_factor];
                    if store.contains_complex(factor) {
                        frame.scan_factor += 1;
                        continue;
                    }
                    missing = Some(factor.clone());
                    break 'scan;
                }
                frame.scan_term += 1;
                frame.scan_factor = 0;
            }
        }
        match missing {
            Some(child) => {
                assert!(
                    pending.insert(child.clone()),
                    "cyclic dependency in recursion at {child}"
                );
                stack.push(Frame::new(child));
            }
            None => {
                let frame = stack.pop().expect("frame stack underflow");
                let mut value = BigInt::zero();
                for term in &frame.terms {
                    let mut product = BigInt::from(term.coeff);
                    for factor in &term.factors {
                        product *= store.get_complex(factor).expect("factor memoized");
                    }
                    value += product;
                }
                pending.remove(&frame.key);
                store
                    .insert_complex(frame.key, value)
                    .expect("memo conflict while combining: engine bug");
            }
        }
    }

    store
        .get_complex(root)
        .expect("root evaluated by agenda")
        .clone()
}

/// The genus-0 Gromov-Witten invariant of `P^m` for an arbitrary key.
/// Deterministic and memoized; every input maps to an integer (possibly 0).
pub fn complex_invariant(key: &ComplexKey, store: &mut MemoStore) -> InvariantValue {
    if let Some(v) = store.get_complex(key) {
        return v.clone();
    }
    let reduction = reduce(key);
    let Some(core) = reduction.kernel else {
        return BigInt::from(reduction.multiplier);
    };
    BigInt::from(reduction.multiplier) * eval_core(&core, store)
}

/// One associativity step with the fixed pivot rule.
pub fn wdvv_step(key: &ComplexKey, store: &mut MemoStore) -> InvariantValue {
    wdvv_step_with_pivot(key, default_pivot(key.k()), store)
}

/// One associativity step with an explicit pivot, for pivot-independence
/// checks. The result is not memoized, so a divergent pivot is reported by
/// the caller's comparison rather than as a store conflict. Requires a core
/// key (`normalize_axioms` returns it unchanged) and an admissible pivot.
pub fn wdvv_step_with_pivot(
    key: &ComplexKey,
    pivot: Pivot,
    store: &mut MemoStore,
) -> InvariantValue {
    debug_assert!(matches!(normalize_axioms(key), Normalization::Core(_)));
    let mut value = BigInt::zero();
    for term in expansion_terms(key, pivot) {
        let mut product = BigInt::from(term.coeff);
        for factor in &term.factors {
            product *= eval_core(factor, store);
        }
        value += product;
    }
    value
}
