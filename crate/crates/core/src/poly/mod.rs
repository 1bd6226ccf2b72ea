//! Exact integer-polynomial machinery.

pub mod corpus;
pub mod diffsq;
pub mod factor;
pub mod hermite;
pub mod io;
mod polynomial;
pub mod resultant;
pub mod roots;
pub mod sturm;
pub mod theorem2;

pub use corpus::{enumerate_corpus, enumerate_corpus_with, Corpus, CorpusConfig, PruneConfig};
pub use diffsq::diffsq_poly;
pub use factor::is_irreducible;
pub use hermite::{hermite_family, HermiteFamily, HermiteReport};
pub use io::{format_polynomial, parse_polynomial, parse_polynomials};
pub use polynomial::{Coefficient, Polynomial};
pub use resultant::{discriminant, discriminant_exact, resultant};
pub use roots::{certified_roots, is_totally_positive, RootClassification};
pub use theorem2::{verify_theorem2, PolyReport};

