mod format;
mod numbers;
mod parse;
mod poly;
mod subst;
mod varset;

pub use numbers::{
    q_binomial, q_factorial, q_number, t_binomial, t_factorial, t_number, t_trinomial, TNumbers,
};
pub(crate) use poly::packed;
pub use poly::{Exponents, LaurentPoly};
pub use subst::Substitution;
pub use varset::VarSet;
