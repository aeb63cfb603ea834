//! Sparse multivariate polynomial arithmetic over Q(i), plus the univariate
//! and resultant tooling used for counting zeros on lines and planes.

pub mod monomial;
pub mod multipoly;
pub mod numeric;
pub mod random;
pub mod resultant;
pub mod unipoly;

pub use monomial::{monomials_of_degree, Monomial};
pub use multipoly::{ArithOp, MultiPoly};
pub use numeric::{FloatPoly, FloatPolyGrad, PowerTable};
pub use random::PolyRng;
pub use resultant::{resultant_in_var, sylvester_resultant};
pub use unipoly::{uni_gcd, UniPoly};
