//! Exhaustive enumeration of composition classes and realization numbers.
//!
//! Every composition of `n` into `k` parts is streamed in lexicographic
//! order and kept only if it is its own canonical form. Kept compositions
//! are grouped by interval vector; the size of a group is the realization
//! number `R(mu, n)` of its vector, and groups with `R >= 2` are Z-groups.
//!
//! The stream is partitioned by its first part. Each partition is mapped
//! independently (no shared state) and the partial groupings are merged and
//! globally sorted, so results do not depend on the worker count.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::dihedral::{is_canonical, CanonicalComposition};
use crate::error::{Error, Result};
use crate::pcset::{
    interval_counts, set_from_composition, Composition, IntervalVector, Modulus, PitchClassSet,
};

/// Default cap on the length of the composition stream, `C(n-1, k-1)`.
///
/// `(40, 8)` streams about 15.4 million compositions; the cap leaves
/// headroom above that and refuses anything that would hold tens of
/// millions of canonical classes in memory.
pub const DEFAULT_COMPOSITION_LIMIT: u128 = 64_000_000;

/// One interval vector and every inequivalent composition realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationClass {
    pub mu: IntervalVector,
    /// Sorted, pairwise inequivalent.
    pub realizations: Vec<CanonicalComposition>,
}

impl RealizationClass {
    /// The realization number `R(mu, n)`.
    pub fn realization_number(&self) -> usize {
        self.realizations.len()
    }

    pub fn sets(&self) -> Vec<PitchClassSet> {
        self.realizations
            .iter()
            .map(|c| set_from_composition(c.inner()))
            .collect()
    }
}

/// A realization class with `R >= 2`: its members are pairwise Z-related.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZGroup(RealizationClass);

impl ZGroup {
    pub fn new(class: RealizationClass) -> Result<Self> {
        if class.realization_number() < 2 {
            return Err(Error::Precondition(format!(
                "a Z-group needs at least two realizations of {}",
                class.mu
            )));
        }
        Ok(Self(class))
    }

    pub fn class(&self) -> &RealizationClass {
        &self.0
    }

    pub fn mu(&self) -> &IntervalVector {
        &self.0.mu
    }

    pub fn members(&self) -> &[CanonicalComposition] {
        &self.0.realizations
    }

    pub fn size(&self) -> usize {
        self.0.realization_number()
    }

    /// Every unordered pair of members, in member order.
    pub fn pairs(&self) -> impl Iterator<Item = (&CanonicalComposition, &CanonicalComposition)> {
        let m = self.members();
        (0..m.len()).flat_map(move |i| (i + 1..m.len()).map(move |j| (&m[i], &m[j])))
    }

    pub fn pair_count(&self) -> u64 {
        let r = self.size() as u64;
        r * (r - 1) / 2
    }
}

/// One row of a summary table for fixed `(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SummaryRow {
    pub n: u32,
    pub k: u32,
    pub num_ti_classes: u64,
    pub num_multisets: u64,
    pub num_nonreconstructible: u64,
    /// `sum C(R, 2)` over the non-reconstructible multisets.
    pub num_z_pairs: u64,
}

/// Smallest cardinality with a Z-pair, together with its Z-groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMinWitness {
    pub k: u32,
    pub groups: Vec<ZGroup>,
}

/// Advances `parts` to the next composition of the same total in
/// lexicographic order. Returns `false` (leaving `parts` untouched) at the end.
pub fn next_composition(parts: &mut [u32]) -> bool {
    let k = parts.len();
    let Some(j) = (1..k).rev().find(|&j| parts[j] > 1) else {
        return false;
    };
    let v = parts[j];
    parts[j] = 1;
    parts[k - 1] = v - 1;
    parts[j - 1] += 1;
    true
}

/// Lexicographic stream of the compositions of `n` into `k` positive parts.
#[derive(Debug, Clone)]
pub struct Compositions {
    modulus: Modulus,
    current: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let parts = self.current.as_mut()?;
        let out = Composition::from_parts_unchecked(self.modulus, parts.clone());
        if !next_composition(parts) {
            self.current = None;
        }
        Some(out)
    }
}

pub fn enumerate_compositions(modulus: Modulus, k: u32) -> Result<Compositions> {
    check_cardinality(modulus, k, 1)?;
    Ok(Compositions {
        modulus,
        current: Some(first_composition(modulus.get(), k)),
    })
}

fn first_composition(total: u32, k: u32) -> Vec<u32> {
    let mut parts = vec![1; k as usize];
    parts[k as usize - 1] = total - (k - 1);
    parts
}

fn check_cardinality(modulus: Modulus, k: u32, min: u32) -> Result<()> {
    let n = modulus.get();
    if k < min || k > n {
        return Err(Error::InvalidCardinality { k, n, min });
    }
    Ok(())
}

/// `C(n, r)` without overflow for the ranges used here.
pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Enumeration driver with a worker-count setting and a resource budget.
///
/// `threads = None` uses rayon's global pool, `Some(1)` runs inline on the
/// calling thread, and `Some(t)` uses a dedicated pool of `t` workers.
pub struct Enumerator {
    pool: Option<rayon::ThreadPool>,
    sequential: bool,
    composition_limit: u128,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Debug for Enumerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Enumerator")
            .field("threads", &self.threads())
            .field("composition_limit", &self.composition_limit)
            .finish()
    }
}

type PartialGrouping = HashMap<Vec<u32>, Vec<Vec<u32>>>;

impl Enumerator {
    pub fn new() -> Self {
        Self {
            pool: None,
            sequential: false,
            composition_limit: DEFAULT_COMPOSITION_LIMIT,
        }
    }

    pub fn with_threads(threads: usize) -> Result<Self> {
        let mut e = Self::new();
        match threads {
            0 => {
                return Err(Error::Precondition(
                    "worker count must be at least 1".into(),
                ))
            }
            1 => e.sequential = true,
            t => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|err| Error::Internal(format!("thread pool: {err}")))?;
                e.pool = Some(pool);
            }
        }
        Ok(e)
    }

    pub fn with_composition_limit(mut self, limit: u128) -> Self {
        self.composition_limit = limit;
        self
    }

    pub fn threads(&self) -> usize {
        if self.sequential {
            1
        } else if let Some(pool) = &self.pool {
            pool.current_num_threads()
        } else {
            rayon::current_num_threads()
        }
    }

    fn check_budget(&self, modulus: Modulus, k: u32) -> Result<()> {
        let compositions = binomial(modulus.get() as u64 - 1, k as u64 - 1);
        if compositions > self.composition_limit {
            return Err(Error::ResourceLimit {
                n: modulus.get(),
                k,
                compositions,
                limit: self.composition_limit,
            });
        }
        Ok(())
    }

    /// Runs `map` over every first part that can start a canonical
    /// composition, returning the partial results in first-part order.
    fn map_partitions<T, F>(&self, modulus: Modulus, k: u32, map: F) -> Vec<Vec<T>>
    where
        T: Send,
        F: Fn(&[u32]) -> T + Sync,
    {
        let n = modulus.get();
        // the canonical form starts with its smallest part, so s1 <= n / k
        let firsts: Vec<u32> = if k == 1 {
            vec![n]
        } else {
            (1..=n / k).collect()
        };
        let run_one = |s1: u32| {
            let mut buf = Vec::with_capacity(k as usize);
            buf.push(s1);
            if k > 1 {
                buf.extend(first_composition(n - s1, k - 1));
            }
            partition_canonical(&mut buf, &map)
        };
        if self.sequential {
            firsts.into_iter().map(run_one).collect()
        } else {
            let par = || firsts.into_par_iter().map(run_one).collect();
            match &self.pool {
                Some(pool) => pool.install(par),
                None => par(),
            }
        }
    }

    /// One canonical representative per rotation/reversal class, sorted.
    pub fn enumerate_classes(&self, modulus: Modulus, k: u32) -> Result<Vec<CanonicalComposition>> {
        check_cardinality(modulus, k, 1)?;
        self.check_budget(modulus, k)?;
        let chunks = self.map_partitions(modulus, k, |parts| parts.to_vec());
        Ok(chunks
            .into_iter()
            .flatten()
            .map(|parts| {
                CanonicalComposition::assume_canonical(Composition::from_parts_unchecked(
                    modulus, parts,
                ))
            })
            .collect())
    }

    /// Canonical classes grouped by interval vector, sorted by vector.
    ///
    /// `k = 1` is accepted and yields a single class with the zero vector.
    pub fn realization_table(&self, modulus: Modulus, k: u32) -> Result<Vec<RealizationClass>> {
        check_cardinality(modulus, k, 1)?;
        self.check_budget(modulus, k)?;
        let partials: Vec<PartialGrouping> = self
            .map_partitions(modulus, k, |parts| {
                (
                    interval_counts(modulus, parts).into_counts(),
                    parts.to_vec(),
                )
            })
            .into_iter()
            .map(|pairs| {
                let mut grouping = PartialGrouping::new();
                for (key, parts) in pairs {
                    grouping.entry(key).or_default().push(parts);
                }
                grouping
            })
            .collect();

        let mut merged: BTreeMap<Vec<u32>, Vec<Vec<u32>>> = BTreeMap::new();
        for partial in partials {
            for (key, mut members) in partial {
                merged.entry(key).or_default().append(&mut members);
            }
        }
        merged
            .into_iter()
            .map(|(counts, mut members)| {
                members.sort_unstable();
                Ok(RealizationClass {
                    mu: IntervalVector::from_counts(modulus, counts)?,
                    realizations: members
                        .into_iter()
                        .map(|parts| {
                            CanonicalComposition::assume_canonical(
                                Composition::from_parts_unchecked(modulus, parts),
                            )
                        })
                        .collect(),
                })
            })
            .collect()
    }

    pub fn z_groups(&self, modulus: Modulus, k: u32) -> Result<Vec<ZGroup>> {
        check_cardinality(modulus, k, 2)?;
        Ok(self
            .realization_table(modulus, k)?
            .into_iter()
            .filter(|c| c.realization_number() >= 2)
            .map(ZGroup)
            .collect())
    }

    pub fn summary_row(&self, modulus: Modulus, k: u32) -> Result<SummaryRow> {
        check_cardinality(modulus, k, 2)?;
        let table = self.realization_table(modulus, k)?;
        let mut row = SummaryRow {
            n: modulus.get(),
            k,
            num_ti_classes: 0,
            num_multisets: table.len() as u64,
            num_nonreconstructible: 0,
            num_z_pairs: 0,
        };
        for class in &table {
            let r = class.realization_number() as u64;
            row.num_ti_classes += r;
            if r >= 2 {
                row.num_nonreconstructible += 1;
                row.num_z_pairs += r * (r - 1) / 2;
            }
        }
        Ok(row)
    }

    pub fn summary(&self, modulus: Modulus, ks: RangeInclusive<u32>) -> Result<Vec<SummaryRow>> {
        ks.map(|k| self.summary_row(modulus, k)).collect()
    }

    /// Number of Z-related pairs, `sum C(R, 2)` over the Z-groups at `(n, k)`.
    pub fn z_pair_count(&self, modulus: Modulus, k: u32) -> Result<u64> {
        Ok(self.summary_row(modulus, k)?.num_z_pairs)
    }

    /// Smallest `k` in `[4, k_max]` with a Z-group, with the groups found there.
    ///
    /// `k_max` defaults to `floor(n/2)`: by complementation a Z-pair at `k`
    /// gives one at `n - k`, so searching past the midpoint finds nothing
    /// new. That complement property is assumed here, not checked; pass an
    /// explicit bound to search further.
    pub fn k_min_with_witness(
        &self,
        modulus: Modulus,
        k_max: Option<u32>,
    ) -> Result<Option<KMinWitness>> {
        let n = modulus.get();
        let k_max = k_max.unwrap_or(n / 2);
        if k_max > n {
            return Err(Error::InvalidCardinality {
                k: k_max,
                n,
                min: 1,
            });
        }
        // trichords never form Z-pairs, so the search starts at 4
        for k in 4..=k_max {
            let groups = self.z_groups(modulus, k)?;
            if !groups.is_empty() {
                return Ok(Some(KMinWitness { k, groups }));
            }
        }
        Ok(None)
    }

    pub fn k_min(&self, modulus: Modulus, k_max: Option<u32>) -> Result<Option<u32>> {
        Ok(self.k_min_with_witness(modulus, k_max)?.map(|w| w.k))
    }
}

/// Walks one first-part partition and collects `map` over its canonical members.
fn partition_canonical<T>(buf: &mut [u32], map: &impl Fn(&[u32]) -> T) -> Vec<T> {
    let mut out = Vec::new();
    loop {
        if is_canonical(buf) {
            out.push(map(buf));
        }
        if buf.len() < 2 || !next_composition(&mut buf[1..]) {
            break;
        }
    }
    out
}

pub fn enumerate_classes(modulus: Modulus, k: u32) -> Result<Vec<CanonicalComposition>> {
    Enumerator::new().enumerate_classes(modulus, k)
}

pub fn realization_table(modulus: Modulus, k: u32) -> Result<Vec<RealizationClass>> {
    Enumerator::new().realization_table(modulus, k)
}

pub fn z_groups(modulus: Modulus, k: u32) -> Result<Vec<ZGroup>> {
    Enumerator::new().z_groups(modulus, k)
}

pub fn summary(modulus: Modulus, ks: RangeInclusive<u32>) -> Result<Vec<SummaryRow>> {
    Enumerator::new().summary(modulus, ks)
}

pub fn z_pair_count(modulus: Modulus, k: u32) -> Result<u64> {
    Enumerator::new().z_pair_count(modulus, k)
}

pub fn k_min(modulus: Modulus, k_max: Option<u32>) -> Result<Option<u32>> {
    Enumerator::new().k_min(modulus, k_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::{canonical, equivalent};
    use crate::pcset::interval_multiset;
    use std::collections::BTreeSet;

    fn z(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn composition_stream_counts() {
        assert_eq!(enumerate_compositions(z(12), 3).unwrap().count(), 55);
        assert_eq!(enumerate_compositions(z(19), 6).unwrap().count(), 8568);
        assert_eq!(enumerate_compositions(z(12), 1).unwrap().count(), 1);
        assert_eq!(enumerate_compositions(z(12), 12).unwrap().count(), 1);
    }

    #[test]
    fn composition_stream_small_listing() {
        let listed: Vec<Vec<u32>> = enumerate_compositions(z(4), 2)
            .unwrap()
            .map(|c| c.parts().to_vec())
            .collect();
        assert_eq!(listed, vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    }

    #[test]
    fn composition_stream_is_sorted_and_complete() {
        for n in 3..=10u32 {
            for k in 1..=n {
                let all: Vec<Composition> = enumerate_compositions(z(n), k).unwrap().collect();
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(all.len() as u128, binomial(n as u64 - 1, k as u64 - 1));
            }
        }
    }

    #[test]
    fn composition_stream_rejects_bad_k() {
        assert!(enumerate_compositions(z(12), 0).is_err());
        assert!(enumerate_compositions(z(12), 13).is_err());
    }

    #[test]
    fn class_counts() {
        assert_eq!(enumerate_classes(z(12), 3).unwrap().len(), 12);
        assert_eq!(enumerate_classes(z(12), 6).unwrap().len(), 50);
        assert_eq!(enumerate_classes(z(19), 5).unwrap().len(), 324);
    }

    #[test]
    fn classes_match_canonicalizing_the_full_stream() {
        for n in 3..=12u32 {
            for k in 1..=n {
                let brute: BTreeSet<CanonicalComposition> = enumerate_compositions(z(n), k)
                    .unwrap()
                    .map(|c| canonical(&c))
                    .collect();
                let fast = enumerate_classes(z(n), k).unwrap();
                assert_eq!(fast, brute.into_iter().collect::<Vec<_>>(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn degenerate_cardinalities() {
        let one = realization_table(z(12), 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].mu, IntervalVector::zero(z(12)));
        let two = realization_table(z(12), 2).unwrap();
        assert_eq!(two.len(), 6);
        assert!(two.iter().all(|c| c.realization_number() == 1));
        assert!(z_groups(z(12), 1).is_err());
    }

    #[test]
    fn z12_tables() {
        let k3 = realization_table(z(12), 3).unwrap();
        assert_eq!(k3.len(), 12);
        assert!(k3.iter().all(|c| c.realization_number() == 1));

        let k4 = realization_table(z(12), 4).unwrap();
        assert_eq!(k4.len(), 28);
        assert_eq!(k4.iter().filter(|c| c.realization_number() == 2).count(), 1);

        let k6 = realization_table(z(12), 6).unwrap();
        assert_eq!(k6.len(), 35);
        assert_eq!(
            k6.iter().filter(|c| c.realization_number() >= 2).count(),
            15
        );
    }

    #[test]
    fn table_is_sorted_and_sound() {
        let table = realization_table(z(13), 5).unwrap();
        assert!(table
            .windows(2)
            .all(|w| w[0].mu.counts() < w[1].mu.counts()));
        for class in &table {
            assert!(class.realizations.windows(2).all(|w| w[0] < w[1]));
            for c in &class.realizations {
                assert_eq!(interval_multiset(c.inner()).unwrap(), class.mu);
            }
        }
    }

    #[test]
    fn z_group_examples() {
        let g = z_groups(z(12), 4).unwrap();
        assert_eq!(g.len(), 1);
        let parts: Vec<&[u32]> = g[0].members().iter().map(|c| c.parts()).collect();
        assert_eq!(parts, vec![&[1, 2, 4, 5][..], &[1, 3, 2, 6][..]]);
        assert!(z_groups(z(19), 5).unwrap().is_empty());
        assert_eq!(z_groups(z(19), 6).unwrap().len(), 21);
    }

    #[test]
    fn z_group_members_are_inequivalent() {
        for g in z_groups(z(14), 6).unwrap() {
            for (a, b) in g.pairs() {
                assert!(!equivalent(a.inner(), b.inner()));
            }
        }
    }

    #[test]
    fn summary_rows() {
        let rows = summary(z(12), 6..=6).unwrap();
        assert_eq!(
            (
                rows[0].num_ti_classes,
                rows[0].num_multisets,
                rows[0].num_nonreconstructible
            ),
            (50, 35, 15)
        );
        assert_eq!(z_pair_count(z(12), 6).unwrap(), 15);
        let total: u64 = (3..=9).map(|k| z_pair_count(z(12), k).unwrap()).sum();
        assert_eq!(total, 23);
    }

    #[test]
    fn k_min_examples() {
        assert_eq!(k_min(z(12), None).unwrap(), Some(4));
        assert_eq!(k_min(z(10), None).unwrap(), Some(5));
        assert_eq!(k_min(z(19), None).unwrap(), Some(6));
        assert_eq!(k_min(z(19), Some(5)).unwrap(), None);
        assert_eq!(k_min(z(7), None).unwrap(), None);
        assert!(k_min(z(7), Some(8)).is_err());
    }

    #[test]
    fn budget_refusal() {
        let e = Enumerator::new().with_composition_limit(1000);
        assert!(matches!(
            e.realization_table(z(19), 6),
            Err(Error::ResourceLimit {
                compositions: 8568,
                ..
            })
        ));
        assert!(e.realization_table(z(12), 4).is_ok());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let one = Enumerator::with_threads(1).unwrap();
        let four = Enumerator::with_threads(4).unwrap();
        assert_eq!(four.threads(), 4);
        assert_eq!(
            one.realization_table(z(17), 6).unwrap(),
            four.realization_table(z(17), 6).unwrap()
        );
        assert!(Enumerator::with_threads(0).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(11, 2), 55);
        assert_eq!(binomial(18, 5), 8568);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(39, 7), 15_380_937);
    }
}
