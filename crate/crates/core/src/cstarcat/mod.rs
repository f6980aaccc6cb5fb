//! Full C*-categories, the normaliser calculus of the diagonal algebra,
//! the conditional expectation, and self-adjoint domain sections.

mod category;
mod normaliser;
mod section;

pub use category::{category_from_bundle, CStarCategoryFD};
pub use normaliser::{
    bisection_to_normaliser, block_pattern, conditional_expectation, diagonal_subspace,
    is_normaliser_bruteforce, normaliser_support, NormaliserClass, NormaliserKind,
};
pub use section::{is_domain_section, DomainSection, SectionFile};
