//! Colored permutation groups `(ℤ/rℤ) ≀ 𝔖ₙ`: Viennot shadows, the colored
//! longest-increasing-subsequence statistic and its Hilbert series, wreath
//! product characters, and exact verification over cyclotomic fields.

pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod matrix;
pub mod orbit;
pub mod partition;
pub mod perm;
pub mod shadow;
pub mod stats;

pub use characters::{
    character_table, dim_irreducible, mn_character, strata, verify_branching, verify_graded_decomposition,
    CharacterTable, SkewRShape,
};
pub use cyclotomic::{CyclotomicNumber, Rational};
pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use orbit::{
    check_vanishing, evaluate_monomial, group_matrix, ideal_generators, toeplitz_compare, vanishing_generators,
    verify_basis, MonomialKey,
};
pub use partition::{Partition, RPartition};
pub use perm::{enumerate_group, group_order, ColoredPermutation, Permutation, RookPlacement};
pub use shadow::{iterated_shadows, schensted_insert, shadow_lines, shadow_monomial, ShadowMonomial};
pub use stats::{count_enumerate, count_fast, hilbert_series, CountPath, GradedSeries, StatKind, StatTable};
