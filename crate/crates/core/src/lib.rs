//! Exact-arithmetic lattice sparsification and approximate closest vector
//! search under general norms.

pub mod approx;
pub mod arith;
pub mod error;
pub mod io;
pub mod bodies;
pub mod cli;
pub mod enumeration;
pub mod lattice;
pub mod modp;
pub mod oracle;
pub mod sparsifier;

pub use approx::{approx_cvp, CvpResult, CvpTrace};
pub use arith::{Integer, IntMatrix, Rational, RationalMatrix};
pub use enumeration::{
    count_in_body, cvp_exact, cvp_l2_exact, lattice_enum, shortest_vectors, svp_l2, PointStream,
};
pub use error::{Error, Result};
pub use bodies::{BodyKind, ConvexBody, DistanceEstimate, GaugeValue, LpNorm, Membership};
pub use lattice::{Lattice, LatticePoint};
pub use modp::{complement_basis, find_prime, lines, Line, Lines, ModPVector};
pub use oracle::{brute_cvp, brute_points, certified_box, enclosing_box, check_prime_gap, check_cauchy_davenport, check_counting_bounds, count_points, fundamental_grid, BruteCvp, CountReport};
pub use sparsifier::{
    good_vector, sparsify, sparsify_randomized, verify_sparsifier, GoodVectorResult, LevelRecord,
    SparsifierReport, VerifyReport,
};
