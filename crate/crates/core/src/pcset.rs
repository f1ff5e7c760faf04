//! Interval-class arithmetic over `Z_n`.
//!
//! A pitch-class set rooted at 0 and the composition of its consecutive steps
//! carry the same information: the set `{0, s1, s1+s2, ...}` has steps
//! `(s1, s2, ..., sk)` with the last step wrapping back to 0, so the parts
//! always sum to `n`. Interval classes between any two elements follow from
//! the sum of the steps between them, which is what [`interval_multiset`]
//! exploits. [`interval_multiset_brute`] and [`dft_magnitudes`] are the
//! independent cross-checks.

use std::fmt;

use crate::error::{Error, Result};

/// Order of the ambient cyclic group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u32);

impl Modulus {
    pub const MIN: u32 = 3;
    pub const MAX: u32 = 65535;

    pub fn new(n: u32) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::InvalidModulus(n as u64))
        }
    }

    /// Like [`Modulus::new`] but accepts any width, for products that may overflow `u32`.
    pub fn from_u64(n: u64) -> Result<Self> {
        u32::try_from(n)
            .map_err(|_| Error::InvalidModulus(n))
            .and_then(Self::new)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Largest interval class, `floor(n/2)`.
    pub fn max_interval_class(self) -> u32 {
        self.0 / 2
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sorted, distinct residues mod `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PitchClassSet {
    modulus: Modulus,
    elements: Vec<u32>,
}

impl PitchClassSet {
    /// Builds a set from residues in any order. Duplicates and residues
    /// outside `[0, n)` are rejected rather than reduced.
    pub fn new(modulus: Modulus, residues: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut elements: Vec<u32> = residues.into_iter().collect();
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(&r) = elements.iter().find(|&&r| r >= modulus.get()) {
            return Err(Error::ResidueOutOfRange {
                residue: r,
                modulus: modulus.get(),
            });
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateResidue(w[0]));
        }
        Ok(Self { modulus, elements })
    }

    /// Parses comma-separated residues such as `0,1,3,7`.
    pub fn parse(modulus: Modulus, text: &str) -> Result<Self> {
        let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
        let residues = trimmed
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad residue {tok:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, residues)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, residue: u32) -> bool {
        self.elements.binary_search(&residue).is_ok()
    }

    /// `T_s`: adds `s` to every element.
    pub fn transpose(&self, s: u32) -> Self {
        let n = self.modulus.get();
        let s = s % n;
        let mut elements: Vec<u32> = self.elements.iter().map(|&p| (p + s) % n).collect();
        elements.sort_unstable();
        Self {
            modulus: self.modulus,
            elements,
        }
    }

    /// `I_s`: maps every element `p` to `s - p`.
    pub fn invert(&self, s: u32) -> Self {
        let n = self.modulus.get();
        let s = s % n;
        let mut elements: Vec<u32> = self.elements.iter().map(|&p| (s + n - p) % n).collect();
        elements.sort_unstable();
        Self {
            modulus: self.modulus,
            elements,
        }
    }
}

impl fmt::Display for PitchClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        write_joined(f, &self.elements)?;
        f.write_str("}")
    }
}

/// Ordered positive parts summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    modulus: Modulus,
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(modulus: Modulus, parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!(
                "zero part in {}",
                Joined(&parts)
            )));
        }
        let sum: u64 = parts.iter().map(|&p| p as u64).sum();
        if sum != modulus.get() as u64 {
            return Err(Error::InvalidComposition(format!(
                "parts ({}) sum to {sum}, not {modulus}",
                Joined(&parts)
            )));
        }
        Ok(Self { modulus, parts })
    }

    /// Builds a composition over the modulus equal to the sum of its parts.
    pub fn from_parts(parts: Vec<u32>) -> Result<Self> {
        let sum: u64 = parts.iter().map(|&p| p as u64).sum();
        Self::new(Modulus::from_u64(sum)?, parts)
    }

    /// Caller guarantees the closure property.
    pub(crate) fn from_parts_unchecked(modulus: Modulus, parts: Vec<u32>) -> Self {
        debug_assert_eq!(
            parts.iter().map(|&p| p as u64).sum::<u64>(),
            modulus.get() as u64
        );
        Self { modulus, parts }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_joined(f, &self.parts)?;
        f.write_str(")")
    }
}

impl std::str::FromStr for Composition {
    type Err = Error;

    /// Parses `(1,2,4,5)`; the modulus is the sum of the parts.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(parts)
    }
}

/// Interval-class counts indexed by class `1..=floor(n/2)`.
///
/// `counts()[0]` is the multiplicity of interval class 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalVector {
    modulus: Modulus,
    counts: Vec<u32>,
}

impl IntervalVector {
    pub fn zero(modulus: Modulus) -> Self {
        Self {
            modulus,
            counts: vec![0; modulus.max_interval_class() as usize],
        }
    }

    pub fn from_counts(modulus: Modulus, counts: Vec<u32>) -> Result<Self> {
        if counts.len() != modulus.max_interval_class() as usize {
            return Err(Error::Precondition(format!(
                "interval vector over Z_{modulus} needs {} entries, got {}",
                modulus.max_interval_class(),
                counts.len()
            )));
        }
        Ok(Self { modulus, counts })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u32> {
        self.counts
    }

    /// Multiplicity of interval class `ic`.
    pub fn count(&self, ic: u32) -> u32 {
        if ic == 0 {
            return 0;
        }
        self.counts.get(ic as usize - 1).copied().unwrap_or(0)
    }

    /// Total number of intervals, `C(k, 2)` for a set of size `k`.
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// The multiset written out in ascending order, e.g. `[1, 1, 2, 3]`.
    pub fn expanded(&self) -> Vec<u32> {
        self.counts
            .iter()
            .zip(1u32..)
            .flat_map(|(&c, ic)| std::iter::repeat_n(ic, c as usize))
            .collect()
    }

    /// Multiplies every interval class by `factor`, landing in `Z_{factor*n}`.
    pub fn scaled(&self, factor: u32) -> Result<Self> {
        let modulus = Modulus::from_u64(self.modulus.get() as u64 * factor as u64)?;
        let mut scaled = Self::zero(modulus);
        for (ic, &c) in (1u32..).zip(&self.counts) {
            scaled.counts[(ic * factor) as usize - 1] = c;
        }
        Ok(scaled)
    }

    fn add(&mut self, ic: u32) {
        self.counts[ic as usize - 1] += 1;
    }
}

impl fmt::Display for IntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        write_joined(f, &self.counts)?;
        f.write_str(">")
    }
}

/// `min(|p - q|, n - |p - q|)` for distinct residues.
pub fn interval_class(p: u32, q: u32, modulus: Modulus) -> Result<u32> {
    let n = modulus.get();
    for r in [p, q] {
        if r >= n {
            return Err(Error::ResidueOutOfRange {
                residue: r,
                modulus: n,
            });
        }
    }
    if p == q {
        return Err(Error::Unison(p));
    }
    Ok(ic_of_distance(p.abs_diff(q), n))
}

#[inline]
pub(crate) fn ic_of_distance(d: u32, n: u32) -> u32 {
    d.min(n - d)
}

/// Consecutive differences of a set containing 0, including the wraparound step.
pub fn steps(set: &PitchClassSet) -> Result<Composition> {
    let elems = set.elements();
    if elems.first() != Some(&0) {
        return Err(Error::MissingZero);
    }
    let n = set.modulus().get();
    let parts = elems
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(n - elems[elems.len() - 1]))
        .collect();
    Ok(Composition::from_parts_unchecked(set.modulus(), parts))
}

/// Partial sums `{0, s1, s1+s2, ...}`; inverse of [`steps`].
pub fn set_from_composition(composition: &Composition) -> PitchClassSet {
    let parts = composition.parts();
    let elements = std::iter::once(0)
        .chain(parts[..parts.len() - 1].iter().scan(0u32, |acc, &s| {
            *acc += s;
            Some(*acc)
        }))
        .collect();
    PitchClassSet {
        modulus: composition.modulus(),
        elements,
    }
}

/// Transposes the set so that it contains 0.
///
/// Every element `p` gives a translate `P - p` containing 0; the
/// lexicographically least of them (compared as sorted sequences) is
/// returned, so `{11,0,1}` in `Z_12` maps to `{0,1,2}`.
pub fn normalize_to_zero(set: &PitchClassSet) -> Result<PitchClassSet> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = set.modulus().get();
    Ok(set
        .elements()
        .iter()
        .map(|&p| set.transpose(n - p))
        .min()
        .expect("nonempty"))
}

/// Interval vector of a composition via the additivity rule.
pub fn interval_multiset(composition: &Composition) -> Result<IntervalVector> {
    if composition.len() < 2 {
        return Err(Error::TooFewElements {
            needed: 2,
            got: composition.len(),
        });
    }
    Ok(interval_counts(composition.modulus(), composition.parts()))
}

/// Additivity rule without the cardinality check; one part gives the zero vector.
pub(crate) fn interval_counts(modulus: Modulus, parts: &[u32]) -> IntervalVector {
    let n = modulus.get();
    let mut vector = IntervalVector::zero(modulus);
    for i in 0..parts.len() {
        let mut span = 0u32;
        // j runs to len - 1: the span from i to the root is the wraparound
        for &s in &parts[i..parts.len() - 1] {
            span += s;
            vector.add(ic_of_distance(span, n));
        }
    }
    vector
}

/// Interval vector from all unordered pairs of elements.
pub fn interval_multiset_brute(set: &PitchClassSet) -> Result<IntervalVector> {
    if set.len() < 2 {
        return Err(Error::TooFewElements {
            needed: 2,
            got: set.len(),
        });
    }
    let modulus = set.modulus();
    let mut vector = IntervalVector::zero(modulus);
    let elems = set.elements();
    for (i, &p) in elems.iter().enumerate() {
        for &q in &elems[i + 1..] {
            vector.add(interval_class(p, q, modulus)?);
        }
    }
    Ok(vector)
}

/// `|sum_{p in P} exp(-2 pi i p j / n)|^2` for `j = 0..n`.
pub fn dft_magnitudes(set: &PitchClassSet) -> Vec<f64> {
    let n = set.modulus().get();
    (0..n)
        .map(|j| {
            let (re, im) = set
                .elements()
                .iter()
                .fold((0.0f64, 0.0f64), |(re, im), &p| {
                    // reduce before converting so the angle stays in [0, 2 pi)
                    let phase = ((p as u64 * j as u64) % n as u64) as f64;
                    let theta = -2.0 * std::f64::consts::PI * phase / n as f64;
                    (re + theta.cos(), im + theta.sin())
                });
            re * re + im * im
        })
        .collect()
}

fn write_joined(f: &mut fmt::Formatter<'_>, values: &[u32]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

struct Joined<'a>(&'a [u32]);

impl fmt::Display for Joined<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn set(n: u32, elems: &[u32]) -> PitchClassSet {
        PitchClassSet::new(z(n), elems.iter().copied()).unwrap()
    }

    fn comp(n: u32, parts: &[u32]) -> Composition {
        Composition::new(z(n), parts.to_vec()).unwrap()
    }

    fn vector(n: u32, classes: &[u32]) -> IntervalVector {
        let mut v = IntervalVector::zero(z(n));
        for &ic in classes {
            v.add(ic);
        }
        v
    }

    #[test]
    fn modulus_bounds() {
        assert!(Modulus::new(2).is_err());
        assert!(Modulus::new(3).is_ok());
        assert!(Modulus::new(65535).is_ok());
        assert!(Modulus::new(65536).is_err());
        assert_eq!(z(12).max_interval_class(), 6);
        assert_eq!(z(19).max_interval_class(), 9);
    }

    #[test]
    fn interval_class_examples() {
        assert_eq!(interval_class(0, 7, z(12)).unwrap(), 5);
        assert_eq!(interval_class(0, 6, z(12)).unwrap(), 6);
        assert_eq!(interval_class(2, 1, z(12)).unwrap(), 1);
        assert_eq!(interval_class(1, 2, z(12)).unwrap(), 1);
    }

    #[test]
    fn interval_class_rejects_unison_and_range() {
        assert_eq!(interval_class(4, 4, z(12)), Err(Error::Unison(4)));
        assert!(matches!(
            interval_class(0, 12, z(12)),
            Err(Error::ResidueOutOfRange { .. })
        ));
    }

    #[test]
    fn set_construction_validates() {
        assert_eq!(PitchClassSet::new(z(12), []).unwrap_err(), Error::EmptySet);
        assert_eq!(
            PitchClassSet::new(z(12), [1, 3, 1]).unwrap_err(),
            Error::DuplicateResidue(1)
        );
        assert!(PitchClassSet::new(z(12), [12]).is_err());
        assert_eq!(set(12, &[7, 0, 3]).elements(), &[0, 3, 7]);
        assert_eq!(
            PitchClassSet::parse(z(12), "0,1,3,7").unwrap(),
            set(12, &[0, 1, 3, 7])
        );
        assert!(PitchClassSet::parse(z(12), "0,x").is_err());
    }

    #[test]
    fn composition_validates_closure() {
        assert!(Composition::new(z(12), vec![1, 2, 4, 4]).is_err());
        assert!(Composition::new(z(12), vec![0, 12]).is_err());
        assert!(Composition::new(z(12), vec![]).is_err());
        let c: Composition = "(1,3,2,6)".parse().unwrap();
        assert_eq!(c, comp(12, &[1, 3, 2, 6]));
        assert_eq!(c.to_string(), "(1,3,2,6)");
    }

    #[test]
    fn steps_examples() {
        assert_eq!(
            steps(&set(12, &[0, 1, 3, 7])).unwrap(),
            comp(12, &[1, 2, 4, 5])
        );
        assert_eq!(steps(&set(12, &[0, 3, 7])).unwrap(), comp(12, &[3, 4, 5]));
        assert_eq!(
            steps(&set(19, &[0, 1, 2, 3, 6, 10])).unwrap(),
            comp(19, &[1, 1, 1, 3, 4, 9])
        );
        assert_eq!(steps(&set(12, &[0])).unwrap(), comp(12, &[12]));
    }

    #[test]
    fn steps_requires_zero() {
        assert_eq!(steps(&set(12, &[3, 6, 10])), Err(Error::MissingZero));
    }

    #[test]
    fn set_from_composition_examples() {
        assert_eq!(
            set_from_composition(&comp(12, &[1, 2, 4, 5])),
            set(12, &[0, 1, 3, 7])
        );
        assert_eq!(set_from_composition(&comp(12, &[12])), set(12, &[0]));
        assert_eq!(
            set_from_composition(&comp(19, &[1, 1, 2, 1, 6, 8])),
            set(19, &[0, 1, 2, 4, 5, 11])
        );
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            normalize_to_zero(&set(12, &[3, 6, 10])).unwrap(),
            set(12, &[0, 3, 7])
        );
        assert_eq!(
            normalize_to_zero(&set(12, &[0, 1, 4, 6])).unwrap(),
            set(12, &[0, 1, 4, 6])
        );
        assert_eq!(
            normalize_to_zero(&set(12, &[11, 0, 1])).unwrap(),
            set(12, &[0, 1, 2])
        );
    }

    #[test]
    fn normalize_matches_transposition_search() {
        // oracle: scan every T_s, keep translates containing 0, take the least
        for n in 3..=10 {
            for mask in 1u32..(1 << n) {
                let p = PitchClassSet::new(z(n), (0..n).filter(|i| mask >> i & 1 == 1)).unwrap();
                let expected = (0..n)
                    .map(|s| p.transpose(s))
                    .filter(|t| t.contains(0))
                    .min()
                    .unwrap();
                assert_eq!(normalize_to_zero(&p).unwrap(), expected, "{p}");
            }
        }
    }

    #[test]
    fn interval_multiset_examples() {
        assert_eq!(
            interval_multiset(&comp(12, &[1, 2, 4, 5])).unwrap(),
            vector(12, &[1, 2, 3, 4, 5, 6])
        );
        assert_eq!(
            interval_multiset(&comp(12, &[3, 4, 5])).unwrap(),
            vector(12, &[3, 4, 5])
        );
        // frozen from pairwise ic over {0,1,2,3,6,10}
        let z19 = IntervalVector::from_counts(z(19), vec![3, 2, 2, 2, 1, 1, 1, 1, 2]).unwrap();
        assert_eq!(
            interval_multiset(&comp(19, &[1, 1, 1, 3, 4, 9])).unwrap(),
            z19
        );
        assert_eq!(
            interval_multiset(&comp(19, &[1, 1, 2, 1, 6, 8])).unwrap(),
            z19
        );
        assert_eq!(
            interval_multiset(&comp(12, &[12])),
            Err(Error::TooFewElements { needed: 2, got: 1 })
        );
    }

    #[test]
    fn brute_examples() {
        assert_eq!(
            interval_multiset_brute(&set(12, &[0, 1, 3, 7])).unwrap(),
            vector(12, &[1, 2, 3, 4, 5, 6])
        );
        assert_eq!(
            interval_multiset_brute(&set(12, &[0, 6])).unwrap(),
            vector(12, &[6])
        );
        assert_eq!(
            interval_multiset_brute(&set(19, &[0, 1, 2, 4, 5, 11])).unwrap(),
            interval_multiset_brute(&set(19, &[0, 1, 2, 3, 6, 10])).unwrap()
        );
        assert!(interval_multiset_brute(&set(12, &[5])).is_err());
    }

    #[test]
    fn interval_vector_helpers() {
        let v = vector(12, &[3, 4, 5, 3]);
        assert_eq!(v.expanded(), vec![3, 3, 4, 5]);
        assert_eq!(v.total(), 4);
        assert_eq!(v.count(3), 2);
        assert_eq!(v.count(0), 0);
        assert_eq!(v.to_string(), "<0,0,2,1,1,0>");
        assert_eq!(
            vector(12, &[3, 4, 5]).scaled(2).unwrap(),
            vector(24, &[6, 8, 10])
        );
    }

    #[test]
    fn dft_examples() {
        let m = dft_magnitudes(&set(12, &[0, 6]));
        for (j, v) in m.iter().enumerate() {
            let expected = if j % 2 == 0 { 4.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-9, "j={j}: {v}");
        }
        let a = dft_magnitudes(&set(12, &[0, 1, 3, 7]));
        let b = dft_magnitudes(&set(12, &[0, 1, 4, 6]));
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
        assert!((a[0] - 16.0).abs() < 1e-12);
        for v in dft_magnitudes(&set(7, &[0])) {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn transpose_and_invert() {
        let p = set(12, &[0, 3, 7]);
        assert_eq!(p.transpose(2), set(12, &[2, 5, 9]));
        assert_eq!(p.invert(0), set(12, &[0, 5, 9]));
    }
}
