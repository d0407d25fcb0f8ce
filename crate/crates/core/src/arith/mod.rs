//! Exact arithmetic: rationals, polynomials, rational functions and prime fields.

pub mod modular;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod roots;
pub mod zpoly;

pub use modular::{crt_combine, rational_reconstruct, ModPoly, PrimeSet};
pub use poly::Poly;
pub use ratfun::RatFun;
pub use rational::{parse_rational, Rational};
pub use roots::integer_roots;
pub use zpoly::ZPoly;
