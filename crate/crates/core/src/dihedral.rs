//! Canonical forms of compositions under rotation and reversal.
//!
//! Rotating a composition transposes the set it encodes; reversing it
//! inverts the set. The canonical representative of a class is the
//! lexicographically least of the `2k` rotations of `C` and of `C` reversed.

use std::fmt;

use crate::pcset::{normalize_to_zero, steps, Composition, PitchClassSet};

/// A composition that is the least member of its rotation/reversal orbit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalComposition(Composition);

impl CanonicalComposition {
    pub fn inner(&self) -> &Composition {
        &self.0
    }

    pub fn into_inner(self) -> Composition {
        self.0
    }

    pub fn parts(&self) -> &[u32] {
        self.0.parts()
    }

    /// Wraps a composition the caller has already checked with [`is_canonical`].
    pub(crate) fn assume_canonical(inner: Composition) -> Self {
        debug_assert!(is_canonical(inner.parts()));
        Self(inner)
    }
}

impl fmt::Display for CanonicalComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl AsRef<Composition> for CanonicalComposition {
    fn as_ref(&self) -> &Composition {
        &self.0
    }
}

/// The `k` rotations of `C` followed by the `k` rotations of `C` reversed.
pub fn rotations_and_reversals(composition: &Composition) -> Vec<Composition> {
    let modulus = composition.modulus();
    let parts = composition.parts();
    let reversed: Vec<u32> = parts.iter().rev().copied().collect();
    [parts, reversed.as_slice()]
        .into_iter()
        .flat_map(|seq| {
            (0..seq.len()).map(move |r| {
                let rotated = seq[r..].iter().chain(&seq[..r]).copied().collect();
                Composition::from_parts_unchecked(modulus, rotated)
            })
        })
        .collect()
}

pub fn canonical(composition: &Composition) -> CanonicalComposition {
    let best = rotations_and_reversals(composition)
        .into_iter()
        .min()
        .expect("a composition has at least one part");
    CanonicalComposition(best)
}

/// `true` iff `parts` is already the least of its `2k` rotations/reversals.
///
/// Allocation-free; this is the rejection test on the enumeration hot path.
pub fn is_canonical(parts: &[u32]) -> bool {
    let k = parts.len();
    let forward = |r: usize, i: usize| parts[(r + i) % k];
    let backward = |r: usize, i: usize| parts[k - 1 - (r + i) % k];
    for r in 1..k {
        if less_than_original(parts, |i| forward(r, i)) {
            return false;
        }
    }
    for r in 0..k {
        if less_than_original(parts, |i| backward(r, i)) {
            return false;
        }
    }
    true
}

#[inline]
fn less_than_original(parts: &[u32], candidate: impl Fn(usize) -> u32) -> bool {
    for (i, &p) in parts.iter().enumerate() {
        let c = candidate(i);
        if c != p {
            return c < p;
        }
    }
    false
}

/// Rotation/reversal equivalence. Compositions over different moduli or of
/// different lengths are simply not equivalent.
pub fn equivalent(first: &Composition, second: &Composition) -> bool {
    first.modulus() == second.modulus()
        && first.len() == second.len()
        && canonical(first) == canonical(second)
}

/// T/I equivalence of two sets, decided through their compositions.
pub fn ti_equivalent(first: &PitchClassSet, second: &PitchClassSet) -> bool {
    if first.modulus() != second.modulus() || first.len() != second.len() || first.is_empty() {
        return false;
    }
    let comp = |p: &PitchClassSet| {
        normalize_to_zero(p)
            .and_then(|z| steps(&z))
            .expect("nonempty set normalizes to one containing 0")
    };
    equivalent(&comp(first), &comp(second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcset::Modulus;
    use std::collections::BTreeSet;

    fn comp(n: u32, parts: &[u32]) -> Composition {
        Composition::new(Modulus::new(n).unwrap(), parts.to_vec()).unwrap()
    }

    fn set(n: u32, elems: &[u32]) -> PitchClassSet {
        PitchClassSet::new(Modulus::new(n).unwrap(), elems.iter().copied()).unwrap()
    }

    #[test]
    fn orbit_of_major_triad_steps() {
        let all = rotations_and_reversals(&comp(12, &[3, 4, 5]));
        let expected: Vec<Composition> = [
            [3, 4, 5],
            [4, 5, 3],
            [5, 3, 4],
            [5, 4, 3],
            [4, 3, 5],
            [3, 5, 4],
        ]
        .iter()
        .map(|p| comp(12, p))
        .collect();
        assert_eq!(all, expected);
    }

    #[test]
    fn symmetric_orbit_collapses() {
        let all = rotations_and_reversals(&comp(12, &[4, 4, 4]));
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|c| c.parts() == [4, 4, 4]));
    }

    #[test]
    fn asymmetric_tetrachord_has_eight_distinct() {
        let all = rotations_and_reversals(&comp(12, &[1, 2, 4, 5]));
        let distinct: BTreeSet<_> = all.iter().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical(&comp(12, &[4, 5, 1, 2])).parts(), &[1, 2, 4, 5]);
        assert_eq!(canonical(&comp(12, &[6, 2, 3, 1])).parts(), &[1, 3, 2, 6]);
        assert_eq!(canonical(&comp(12, &[4, 4, 4])).parts(), &[4, 4, 4]);
    }

    #[test]
    fn is_canonical_agrees_with_canonical() {
        for n in 3..=11u32 {
            for k in 1..=n {
                let mut parts = vec![1; k as usize];
                parts[k as usize - 1] = n - k + 1;
                loop {
                    let c = comp(n, &parts);
                    assert_eq!(is_canonical(&parts), canonical(&c).inner() == &c, "{c}");
                    if !crate::enumerate::next_composition(&mut parts) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(
            &comp(12, &[1, 2, 4, 5]),
            &comp(12, &[5, 4, 2, 1])
        ));
        assert!(!equivalent(
            &comp(12, &[1, 2, 4, 5]),
            &comp(12, &[1, 3, 2, 6])
        ));
        assert!(equivalent(&comp(12, &[3, 4, 5]), &comp(12, &[4, 5, 3])));
    }

    #[test]
    fn mismatched_inputs_are_inequivalent() {
        assert!(!equivalent(&comp(12, &[3, 4, 5]), &comp(13, &[3, 4, 6])));
        assert!(!equivalent(&comp(12, &[6, 6]), &comp(12, &[3, 4, 5])));
        assert!(!ti_equivalent(&set(12, &[0, 3, 7]), &set(12, &[0, 3])));
        assert!(!ti_equivalent(&set(12, &[0, 3, 7]), &set(13, &[0, 3, 7])));
    }

    #[test]
    fn ti_equivalence_examples() {
        assert!(ti_equivalent(&set(12, &[0, 3, 7]), &set(12, &[0, 4, 9])));
        assert!(!ti_equivalent(
            &set(12, &[0, 1, 3, 7]),
            &set(12, &[0, 1, 4, 6])
        ));
        assert!(!ti_equivalent(
            &set(19, &[0, 1, 2, 3, 6, 10]),
            &set(19, &[0, 1, 2, 4, 5, 11])
        ));
        assert!(ti_equivalent(&set(12, &[3, 6, 10]), &set(12, &[1, 4, 8])));
    }
}
