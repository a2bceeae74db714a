//! Exact integer machinery: primality, factoring, F_p polynomials and lattices.

mod fppoly;
mod hnf;
mod primes;

pub use fppoly::{factor_poly_mod_p, FpPoly};
pub use hnf::{hnf, solve_in_lattice, IntMatrix};
pub use primes::{factor_integer, is_prime, is_prime_u64, prime_divisors_u64, primes_up_to, FactorConfig};
