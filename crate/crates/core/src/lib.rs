//! Realization numbers and Z-relations of pitch-class sets in `Z_n`.
//!
//! A pitch-class set is encoded by the composition of its steps; its
//! interval vector follows from the steps alone. Counting inequivalent
//! compositions per interval vector gives the realization number, and two
//! sets are Z-related exactly when their shared vector has two or more
//! inequivalent realizations.
//!
//! - [`pcset`]: sets, compositions, interval vectors, DFT magnitudes
//! - [`dihedral`]: canonical forms under rotation and reversal
//! - [`enumerate`]: exhaustive class enumeration, Z-groups, summary tables
//! - [`construct`]: scaling, inheritance, the `k = 4` family, classification

pub mod construct;
pub mod dihedral;
pub mod enumerate;
pub mod error;
pub mod pcset;

pub use construct::{
    classify_pair, four_m_family, inherit, k4_pair, scale_set, scale_zpair, Classification, ZPair,
};
pub use dihedral::{
    canonical, equivalent, is_canonical, rotations_and_reversals, ti_equivalent,
    CanonicalComposition,
};
pub use enumerate::{
    enumerate_classes, enumerate_compositions, k_min, realization_table, summary, z_groups,
    z_pair_count, Enumerator, KMinWitness, RealizationClass, SummaryRow, ZGroup,
};
pub use error::{Error, Result};
pub use pcset::{
    dft_magnitudes, interval_class, interval_multiset, interval_multiset_brute, normalize_to_zero,
    set_from_composition, steps, Composition, IntervalVector, Modulus, PitchClassSet,
};
