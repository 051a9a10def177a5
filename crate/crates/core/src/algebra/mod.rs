//! Polynomial rings over the root variables, term orders and Gröbner bases.

pub mod field;
pub mod groebner;
pub mod ideal;
pub mod order;
pub mod poly;

pub use field::{Field, FieldError, FieldSpec, Fp, PrimeField, Rational, Ring};
pub use groebner::{buchberger, initial_term, is_groebner_basis, GroebnerBasis, GroebnerError, GroebnerLimits};
pub use ideal::{hilbert_function_of_quotient, MonomialIdeal};
pub use order::{deglex_counterexample_order, OrderError, TermOrder, TermOrderKind, VariableOrder, VariableOrderKind, VariableSet};
pub use poly::{monomials_of_degree, Monomial, PolyCtx, Polynomial};
