//! Exact Stirling numbers of both kinds for the complex reflection groups
//! `G(m,p,n)`.
//!
//! The crate realizes the Whitney-number definitions of the Stirling numbers
//! through two independent routes and cross-checks them:
//!
//! * a combinatorial model built from colored set partitions and colored
//!   permutations (with `q`-analogues via an inversion statistic), and
//! * a geometric oracle that constructs the intersection lattice of the
//!   reflection arrangement by exact linear algebra over the cyclotomic
//!   field `Q(zeta_m)`.
//!
//! On top of the two models sit the ordered `q`-Stirling families, the
//! split/merge involutions behind their alternating-sum identities, the
//! super Artin set combinatorics for super coinvariant Hilbert series, and a
//! verification harness that recomputes every identity at desk scale.
//!
//! All arithmetic is exact: arbitrary-precision integers, rationals, and
//! cyclotomic numbers. There is no floating point anywhere.

pub mod arrangement;
pub mod coinvariant;
pub mod colored;
pub mod cyclo;
pub mod involution;
pub mod lattice;
pub mod perm;
pub mod poly;
pub mod report;
pub mod series;
pub mod stirling;
pub mod verify;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Dense polynomial in `q` with arbitrary-precision integer coefficients.
pub type IntPoly = poly::Poly<BigInt>;
/// Polynomial in `t` whose coefficients are polynomials in `q`.
pub type BivarPoly = poly::Poly<IntPoly>;
/// Truncated power series with exact rational coefficients.
pub type RationalSeries = series::Series<BigRational>;

pub use arrangement::{intersection_lattice, iso_check, reflection_hyperplanes, LinearForm, Subspace};
pub use coinvariant::{
    artin_hilbert, beta_phi, insert_bijection, inverse_bijection, inversion_data, staircase,
    super_artin_hilbert, Composition, SuperArtinElement,
};
pub use colored::{
    enumerate_ordered, enumerate_partitions, enumerate_super, ColoredElement, ColoredPartition,
    Flavor, OrderedPartition, PartitionError, SuperPartition,
};
pub use cyclo::{cyclotomic_polynomial, CycloNumber};
pub use involution::{iota, merge, split, Action, InvolutionStep};
pub use lattice::{build_lattice, mobius_product, LatticeConfig, PartitionLattice};
pub use perm::{enumerate_full, full_census, ColoredPermutation, Cycle, CycleDecomposition, CycleKind};
pub use poly::{
    elementary_eval, homogeneous_eval, mstep_factorial, q_bracket, q_factorial,
    q_mstep_factorial, reverse_coefficients, substitute_power, Poly,
};
pub use report::{VerificationReport, VerifyStatus};
pub use series::{series_map, Series, SeriesError, SeriesMap};
pub use stirling::{
    alternating_sum, ordered_q_stirling, q_stirling1, q_stirling2, stirling1, stirling2,
    super_q_stirling, OrderedVariant,
};
