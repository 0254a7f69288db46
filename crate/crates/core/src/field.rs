//! Coefficient-field abstraction shared by the polynomial types.
//!
//! The engine works over Q, over rational function fields Q(c) and over
//! algebraic extensions Q[c]/(p(c)). All three expose the same exact field
//! operations through this trait, so the series solver, the ansatz builder
//! and the linear algebra are written once.

use core::fmt::Debug;

/// An effective field of characteristic zero (or a prime field in the
/// modular layer): exact arithmetic plus decidable equality.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    /// Multiplicative inverse; `None` exactly on zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero"))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Image of a small integer, used for initial conditions and shifts.
    fn from_i64(n: i64) -> Self;
}
