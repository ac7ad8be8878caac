//! Exact arithmetic: prime and extension finite fields, the rationals,
//! polynomials, factorisation, integer Smith normal form and finite abelian
//! group structure.

pub mod abelian;
pub mod ext;
pub mod factor;
pub mod field;
pub mod gf;
pub mod poly;
pub mod rational;
pub mod series;
pub mod snf;
pub mod tab;

pub use abelian::{
    decompose_dense, decompose_elements, group_from_relations, structure_of_finite_group, FinAbGroup, FiniteGroupModel,
    PresentedGroup,
};
pub use ext::ExtField;
pub use factor::{is_irreducible, poly_factor, Factorization};
pub use field::{Field, FiniteField};
pub use gf::{Gf, GfElem};
pub use poly::Poly;
pub use rational::Rationals;
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
pub use tab::TabField;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("the zero polynomial has no factorisation")]
    ZeroPolynomial,
    #[error("size bound exceeded: {0}")]
    TooLarge(String),
    #[error("not a finite abelian group: {0}")]
    MalformedGroup(String),
    #[error("invalid invariant factors {0:?}")]
    BadInvariants(Vec<u64>),
}
