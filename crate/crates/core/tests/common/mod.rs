//! Brute-force oracles shared by the integration tests. Nothing here goes
//! through compositions or canonical forms.

#![allow(dead_code)]

use zrel_core::{Modulus, PitchClassSet};

pub fn z(n: u32) -> Modulus {
    Modulus::new(n).unwrap()
}

pub fn set(n: u32, elems: &[u32]) -> PitchClassSet {
    PitchClassSet::new(z(n), elems.iter().copied()).unwrap()
}

/// Every subset of `Z_n` with cardinality in `sizes`.
pub fn subsets(n: u32, sizes: std::ops::RangeInclusive<u32>) -> Vec<PitchClassSet> {
    (1u64..(1 << n))
        .filter(|mask| sizes.contains(&mask.count_ones()))
        .map(|mask| PitchClassSet::new(z(n), (0..n).filter(|i| mask >> i & 1 == 1)).unwrap())
        .collect()
}

/// All `2n` images of `P` under `D_n`.
pub fn dihedral_images(p: &PitchClassSet) -> Vec<PitchClassSet> {
    let n = p.modulus().get();
    (0..n).flat_map(|s| [p.transpose(s), p.invert(s)]).collect()
}

/// Least image under `D_n`; equal keys iff T/I-equivalent.
pub fn orbit_key(p: &PitchClassSet) -> PitchClassSet {
    dihedral_images(p).into_iter().min().unwrap()
}

pub fn brute_ti_equivalent(a: &PitchClassSet, b: &PitchClassSet) -> bool {
    a.modulus() == b.modulus() && dihedral_images(a).contains(b)
}

/// Pairwise interval-class counts computed directly from residues.
pub fn pairwise_counts(p: &PitchClassSet) -> Vec<u32> {
    let n = p.modulus().get();
    let mut counts = vec![0; (n / 2) as usize];
    let e = p.elements();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let d = e[j] - e[i];
            counts[(d.min(n - d) - 1) as usize] += 1;
        }
    }
    counts
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
