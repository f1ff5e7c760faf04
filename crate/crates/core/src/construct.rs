//! Closed-form Z-pairs: scaling, inheritance, and the `k = 4` family.
//!
//! Multiplying a set in `Z_m` by `d` and embedding it in `Z_{dm}` multiplies
//! every interval class by `d`, so Z-related pairs stay Z-related. A pair
//! obtained this way with `d >= 2` is *derived*; any other pair is
//! *primitive*. Because steps are invariant under transposition and only
//! permuted by inversion, a pair is a `d`-scaling exactly when `d` divides
//! every step of both compositions.

use std::fmt;

use crate::dihedral::{canonical, ti_equivalent};
use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::pcset::{
    interval_multiset_brute, normalize_to_zero, set_from_composition, steps, Composition,
    IntervalVector, Modulus, PitchClassSet,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Primitive,
    /// The pair is `factor` times `base`, up to T/I.
    Derived {
        factor: u32,
        base: Box<ZPair>,
    },
}

impl Classification {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Self::Primitive)
    }

    /// Product of all scaling factors down to the primitive root (1 if primitive).
    pub fn total_factor(&self) -> u32 {
        match self {
            Self::Primitive => 1,
            Self::Derived { factor, base } => factor * base.classification.total_factor(),
        }
    }

    /// Scaling factors from the outermost step inwards.
    pub fn chain(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Self::Derived { factor, base } = cur {
            out.push(*factor);
            cur = &base.classification;
        }
        out
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Primitive => f.write_str("primitive"),
            Self::Derived { factor, base } => {
                write!(
                    f,
                    "derived(d={factor}, base Z_{}: {} / {})",
                    base.modulus(),
                    base.first,
                    base.second
                )
            }
        }
    }
}

/// Two Z-related sets with their shared interval vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPair {
    pub first: PitchClassSet,
    pub second: PitchClassSet,
    pub mu: IntervalVector,
    pub classification: Classification,
}

impl ZPair {
    /// Verifies Z-relatedness and classifies the pair.
    pub fn new(first: PitchClassSet, second: PitchClassSet) -> Result<Self> {
        let mu = check_z_related(&first, &second)?;
        let classification = classify_verified(&first, &second)?;
        Ok(Self {
            first,
            second,
            mu,
            classification,
        })
    }

    pub fn from_compositions(first: &Composition, second: &Composition) -> Result<Self> {
        Self::new(set_from_composition(first), set_from_composition(second))
    }

    pub fn modulus(&self) -> Modulus {
        self.first.modulus()
    }

    pub fn cardinality(&self) -> usize {
        self.first.len()
    }

    /// Canonical compositions of both sets.
    pub fn compositions(&self) -> (Composition, Composition) {
        (canonical_steps(&self.first), canonical_steps(&self.second))
    }

    /// The innermost pair of the classification chain.
    pub fn primitive_root(&self) -> &ZPair {
        match &self.classification {
            Classification::Primitive => self,
            Classification::Derived { base, .. } => base.primitive_root(),
        }
    }
}

fn canonical_steps(set: &PitchClassSet) -> Composition {
    let rooted = normalize_to_zero(set).expect("Z-pair sets are nonempty");
    canonical(&steps(&rooted).expect("normalized set contains 0")).into_inner()
}

/// Returns the shared interval vector, or why the sets are not Z-related.
fn check_z_related(first: &PitchClassSet, second: &PitchClassSet) -> Result<IntervalVector> {
    if first.modulus() != second.modulus() {
        return Err(Error::ModulusMismatch(
            first.modulus().get(),
            second.modulus().get(),
        ));
    }
    if first.len() != second.len() {
        return Err(Error::NotZRelated(format!(
            "cardinalities differ ({} vs {})",
            first.len(),
            second.len()
        )));
    }
    let mu = interval_multiset_brute(first)?;
    if mu != interval_multiset_brute(second)? {
        return Err(Error::NotZRelated(format!(
            "{first} and {second} have different interval vectors"
        )));
    }
    if ti_equivalent(first, second) {
        return Err(Error::NotZRelated(format!(
            "{first} and {second} are T/I-equivalent"
        )));
    }
    Ok(mu)
}

/// `{d p : p in P}` in `Z_{d m}`.
pub fn scale_set(set: &PitchClassSet, factor: u32) -> Result<PitchClassSet> {
    if factor == 0 {
        return Err(Error::Precondition(
            "scaling factor must be at least 1".into(),
        ));
    }
    let modulus = Modulus::from_u64(set.modulus().get() as u64 * factor as u64)?;
    PitchClassSet::new(modulus, set.elements().iter().map(|&p| p * factor))
}

/// Scales both sets of a Z-pair by `factor`, checking the result is still a Z-pair.
pub fn scale_zpair(pair: &ZPair, factor: u32) -> Result<ZPair> {
    if factor == 1 {
        return Ok(pair.clone());
    }
    let first = scale_set(&pair.first, factor)?;
    let second = scale_set(&pair.second, factor)?;
    let mu = check_z_related(&first, &second).map_err(|e| {
        Error::Internal(format!(
            "scaling {} by {factor} broke the pair: {e}",
            pair.first
        ))
    })?;
    if mu != pair.mu.scaled(factor)? {
        return Err(Error::Internal(format!(
            "scaled interval vector {mu} is not {factor} times {}",
            pair.mu
        )));
    }
    Ok(ZPair {
        first,
        second,
        mu,
        classification: Classification::Derived {
            factor,
            base: Box::new(pair.clone()),
        },
    })
}

/// The `k = 4` pair `{0, a, m/2, m+a}` / `{0, a, a+m/2, m}` in `Z_n` with `m = n/2`.
pub fn k4_pair(n: u32, a: u32) -> Result<ZPair> {
    if !n.is_multiple_of(4) || n < 8 {
        return Err(Error::Precondition(format!(
            "the k=4 construction needs 4 | n and n >= 8, got n = {n}"
        )));
    }
    let modulus = Modulus::new(n)?;
    let m = n / 2;
    let half = m / 2;
    if a < 1 || a >= half {
        return Err(Error::Precondition(format!(
            "the k=4 construction needs 1 <= a < {half} for n = {n}, got a = {a}"
        )));
    }
    let first = PitchClassSet::new(modulus, [0, a, half, m + a])?;
    let second = PitchClassSet::new(modulus, [0, a, a + half, m])?;
    ZPair::new(first, second)
}

/// `{0, 1, q, 2q+1}` / `{0, 1, q+1, 2q}` in `Z_{4q}`.
pub fn four_m_family(q: u32) -> Result<ZPair> {
    if q < 2 {
        return Err(Error::Precondition(format!(
            "the 4m family needs q >= 2, got {q}"
        )));
    }
    let n = q
        .checked_mul(4)
        .ok_or_else(|| Error::InvalidModulus(q as u64 * 4))?;
    k4_pair(n, 1)
}

/// Primitive, or derived from the maximal downscaling.
///
/// The derived base is itself classified, so nested chains bottom out in a
/// primitive pair.
pub fn classify_pair(first: &PitchClassSet, second: &PitchClassSet) -> Result<Classification> {
    check_z_related(first, second)?;
    classify_verified(first, second)
}

fn classify_verified(first: &PitchClassSet, second: &PitchClassSet) -> Result<Classification> {
    let c1 = canonical_steps(first);
    let c2 = canonical_steps(second);
    let g = c1
        .parts()
        .iter()
        .chain(c2.parts())
        .fold(0u32, |acc, &s| gcd(acc, s));
    let n = first.modulus().get();
    for d in divisors_descending(g).into_iter().filter(|&d| d >= 2) {
        let Ok(base_modulus) = Modulus::new(n / d) else {
            continue;
        };
        let down = |c: &Composition| {
            Composition::new(base_modulus, c.parts().iter().map(|&s| s / d).collect())
        };
        let (b1, b2) = (down(&c1)?, down(&c2)?);
        let (s1, s2) = (set_from_composition(&b1), set_from_composition(&b2));
        if check_z_related(&s1, &s2).is_ok() {
            let base = ZPair::new(s1, s2)?;
            return Ok(Classification::Derived {
                factor: d,
                base: Box::new(base),
            });
        }
    }
    Ok(Classification::Primitive)
}

/// Scales every Z-pair at `(m, k)` up to `Z_n`, `d = n / m`.
pub fn inherit(enumerator: &Enumerator, n: u32, m: u32, k: u32) -> Result<Vec<ZPair>> {
    if m < 3 || m >= n || !n.is_multiple_of(m) {
        return Err(Error::Precondition(format!(
            "inheritance needs m | n and 3 <= m < n, got n = {n}, m = {m}"
        )));
    }
    Modulus::new(n)?;
    let factor = n / m;
    let mut out = Vec::new();
    for group in enumerator.z_groups(Modulus::new(m)?, k)? {
        for (a, b) in group.pairs() {
            let base = ZPair::from_compositions(a.inner(), b.inner())?;
            out.push(scale_zpair(&base, factor)?);
        }
    }
    Ok(out)
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn divisors_descending(g: u32) -> Vec<u32> {
    let mut ds: Vec<u32> = (1..=g).filter(|&d| g.is_multiple_of(d)).collect();
    ds.reverse();
    ds
}
