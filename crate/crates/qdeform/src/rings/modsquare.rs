//! The quotient ring of `q`-polynomials by the relation `(q-1)^2 = 0`.
//!
//! Elements are stored as the pair `a + b*(q-1)`; the nilpotent `(q-1)`
//! truncates every product. Inversion exists exactly when the constant
//! part is nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Zero;

use super::poly::{PolyQ, Q};
use super::ratfunc::RatFuncQ;
use crate::error::Error;

/// Element `a + b*(q-1)` of the quotient ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModSquareElem {
    pub a: Q,
    pub b: Q,
}

impl ModSquareElem {
    pub fn new(a: Q, b: Q) -> Self {
        ModSquareElem { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        ModSquareElem::new(
            Q::from_integer(a.into()),
            Q::from_integer(b.into()),
        )
    }

    pub fn zero() -> Self {
        ModSquareElem::from_ints(0, 0)
    }

    pub fn one() -> Self {
        ModSquareElem::from_ints(1, 0)
    }

    /// The image of the variable: `q = 1 + (q-1)`.
    pub fn q() -> Self {
        ModSquareElem::from_ints(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `(a + bt)^(-1) = 1/a - b/a^2 t`; errors when the constant part
    /// vanishes (the element is nilpotent or a zero divisor).
    pub fn inv(&self) -> Result<Self, Error> {
        if self.a.is_zero() {
            return Err(Error::NotInvertible);
        }
        let ainv = Q::new(self.a.denom().clone(), self.a.numer().clone());
        Ok(ModSquareElem::new(
            ainv.clone(),
            -(&self.b * &ainv * &ainv),
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        Ok(self * &rhs.inv()?)
    }

    /// Lift back to a linear polynomial `(a - b) + b*q`.
    pub fn lift(&self) -> PolyQ {
        PolyQ::new(vec![&self.a - &self.b, self.b.clone()])
    }
}

/// Reduce a rational function into the quotient ring. Fails when the
/// denominator is divisible by `(q-1)` (the value has a pole at the
/// classical point).
pub fn mod_square_reduce(f: &RatFuncQ) -> Result<ModSquareElem, Error> {
    let one = Q::from_integer(1.into());
    if f.den().eval(&one).is_zero() {
        return Err(Error::NotInvertible);
    }
    let a = f.eval(&one).expect("denominator nonzero at 1");
    let b = f
        .derivative()
        .eval(&one)
        .expect("denominator nonzero at 1");
    Ok(ModSquareElem::new(a, b))
}

impl fmt::Display for ModSquareElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lift())
    }
}

impl Add for &ModSquareElem {
    type Output = ModSquareElem;
    fn add(self, rhs: &ModSquareElem) -> ModSquareElem {
        ModSquareElem::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &ModSquareElem {
    type Output = ModSquareElem;
    fn sub(self, rhs: &ModSquareElem) -> ModSquareElem {
        ModSquareElem::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &ModSquareElem {
    type Output = ModSquareElem;
    fn mul(self, rhs: &ModSquareElem) -> ModSquareElem {
        // (a1 + b1 t)(a2 + b2 t) = a1 a2 + (a1 b2 + a2 b1) t, t^2 = 0
        ModSquareElem::new(
            &self.a * &rhs.a,
            &(&self.a * &rhs.b) + &(&rhs.a * &self.b),
        )
    }
}

impl Neg for &ModSquareElem {
    type Output = ModSquareElem;
    fn neg(self) -> ModSquareElem {
        ModSquareElem::new(-&self.a, -&self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::poly::rat;

    fn reduce_poly(cs: &[i64]) -> ModSquareElem {
        mod_square_reduce(&RatFuncQ::from_poly(PolyQ::from_int_coeffs(cs))).unwrap()
    }

    #[test]
    fn elliptic_determinant_collapses_to_q() {
        // q^2 - q + 1 reduces to q itself
        assert_eq!(reduce_poly(&[1, -1, 1]), ModSquareElem::q());
        assert_eq!(reduce_poly(&[1, -1, 1]).to_string(), "q");
    }

    #[test]
    fn nilpotent_square() {
        // (q-1)^2 = 0
        assert!(reduce_poly(&[1, -2, 1]).is_zero());
        let t = ModSquareElem::from_ints(0, 1);
        assert!((&t * &t).is_zero());
    }

    #[test]
    fn q_squared_is_2q_minus_1() {
        let r = reduce_poly(&[0, 0, 1]);
        assert_eq!(r, ModSquareElem::from_ints(1, 2));
        assert_eq!(r.lift(), PolyQ::from_int_coeffs(&[-1, 2]));
    }

    #[test]
    fn reduction_is_multiplicative() {
        let f = RatFuncQ::new(
            PolyQ::from_int_coeffs(&[1, 2, 3]),
            PolyQ::from_int_coeffs(&[2, 1]),
        );
        let g = RatFuncQ::new(
            PolyQ::from_int_coeffs(&[0, 5, -1]),
            PolyQ::from_int_coeffs(&[1, 0, 1]),
        );
        let lhs = mod_square_reduce(&(&f * &g)).unwrap();
        let rhs = &mod_square_reduce(&f).unwrap() * &mod_square_reduce(&g).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pole_at_one_rejected() {
        let f = RatFuncQ::new(PolyQ::one(), PolyQ::from_int_coeffs(&[-1, 1]));
        assert!(mod_square_reduce(&f).is_err());
    }

    #[test]
    fn inversion_needs_a_unit() {
        let u = ModSquareElem::new(rat(2, 1), rat(3, 1));
        let inv = u.inv().unwrap();
        assert_eq!(&u * &inv, ModSquareElem::one());
        assert!(ModSquareElem::from_ints(0, 5).inv().is_err());
    }
}
