//! Exact computations around the v-number of monomial ideals: irreducible
//! decompositions, polarization, edge ideals of clutters and graphs, and
//! graded Betti numbers of square-free monomial ideals.

pub mod clutter;
pub mod decomposition;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod polarization;
pub mod vnumber;

pub use clutter::{alexander_dual, Clutter, Graph, SimplicialComplex, StructuralFlags, VertexSet};
pub use decomposition::{
    associated_primes, has_embedded_prime, irreducible_decomposition, AssociatedPrimeReport,
    IrreducibleComponent,
};
pub use error::{Error, Result};
pub use homology::{BettiTable, FieldChoice, HomologyOptions};
pub use monomial::{Monomial, MonomialIdeal, PrimeSupport, Ring};
pub use parse::{parse_ideal, parse_monomial};
pub use polarization::{polarize_ideal, PolarizationContext};
pub use vnumber::{v_all_methods, v_number_definition, v_number_squarefree, VReport, VWitness};

/// Exact rationals, the default coefficient field.
pub type Rational = num_rational::BigRational;
/// The two-element field.
pub type Gf2 = linalg::Fp<2>;
/// Exponent entries of a [`Monomial`].
pub type Exponent = u32;
