//! The field of rational functions in the deformation variable.
//!
//! Canonical form: numerator and denominator coprime, denominator monic.
//! Two values are equal exactly when their (num, den) pairs coincide, so
//! `PartialEq` is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use super::poly::{PolyQ, Q};
use crate::error::Error;

/// Element of the rational function field over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFuncQ {
    num: PolyQ,
    den: PolyQ,
}

impl RatFuncQ {
    /// Reduce `num/den` to canonical form. Panics on a zero denominator;
    /// use [`RatFuncQ::checked_new`] for fallible construction.
    pub fn new(num: PolyQ, den: PolyQ) -> Self {
        Self::checked_new(num, den).expect("zero denominator")
    }

    pub fn checked_new(num: PolyQ, den: PolyQ) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFuncQ {
                num: PolyQ::zero(),
                den: PolyQ::one(),
            });
        }
        if den.is_one() {
            return Ok(RatFuncQ { num, den });
        }
        let (num, den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = PolyQ::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lead = den.leading().expect("nonzero").clone();
        if lead.is_one() {
            Ok(RatFuncQ { num, den })
        } else {
            let inv = Q::one() / lead;
            Ok(RatFuncQ {
                num: num.mul_scalar(&inv),
                den: den.mul_scalar(&inv),
            })
        }
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RatFuncQ {
            num: p,
            den: PolyQ::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(PolyQ::from_int(n))
    }

    pub fn from_rat(c: Q) -> Self {
        Self::from_poly(PolyQ::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(PolyQ::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(PolyQ::one())
    }

    /// The variable `q`.
    pub fn var() -> Self {
        Self::from_poly(PolyQ::var())
    }

    /// `q^n` for any integer `n`.
    pub fn var_pow(n: i64) -> Self {
        if n >= 0 {
            Self::from_poly(PolyQ::monomial(Q::one(), n as usize))
        } else {
            RatFuncQ {
                num: PolyQ::one(),
                den: PolyQ::monomial(Q::one(), (-n) as usize),
            }
        }
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a polynomial (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::checked_new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        if e >= 0 {
            Ok(RatFuncQ {
                num: self.num.pow(e as u32),
                den: self.den.pow(e as u32),
            })
        } else {
            self.inv().map(|r| RatFuncQ {
                num: r.num.pow((-e) as u32),
                den: r.den.pow((-e) as u32),
            })
        }
    }

    /// Exact evaluation at a rational point; errors on a pole.
    pub fn eval(&self, q0: &Q) -> Result<Q, Error> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(format!("evaluation at q = {q0} hits a pole")));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Derivative with respect to the variable.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFuncQ::new(n, &self.den * &self.den)
    }

    /// Ring-homomorphic substitution of the variable by another rational
    /// function. Errors when the substituted denominator vanishes
    /// identically (the image would leave the field).
    pub fn substitute(&self, image: &RatFuncQ) -> Result<Self, Error> {
        let (an, ad) = poly_at_ratfunc(&self.num, image);
        let (bn, bd) = poly_at_ratfunc(&self.den, image);
        if bn.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        // (an/ad) / (bn/bd) = an*bd / (ad*bn)
        Ok(RatFuncQ::new(&an * &bd, &ad * &bn))
    }

    /// Convenience for the ubiquitous `q -> 1/q`.
    pub fn substitute_inv_q(&self) -> Self {
        self.substitute(&RatFuncQ::var_pow(-1))
            .expect("q -> 1/q never vanishes identically")
    }

    pub fn fmt_with_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_with_var(f, var);
        }
        write!(f, "(")?;
        self.num.fmt_with_var(f, var)?;
        write!(f, ")/(")?;
        self.den.fmt_with_var(f, var)?;
        write!(f, ")")
    }
}

/// Evaluate a polynomial at `num/den` homogeneously, returning an unreduced
/// pair: `p(n/d) = (sum c_k n^k d^(m-k)) / d^m`.
fn poly_at_ratfunc(p: &PolyQ, image: &RatFuncQ) -> (PolyQ, PolyQ) {
    if p.is_zero() {
        return (PolyQ::zero(), PolyQ::one());
    }
    let m = p.deg();
    let n = image.num();
    let d = image.den();
    let mut dpows: Vec<PolyQ> = Vec::with_capacity(m + 1);
    dpows.push(PolyQ::one());
    for k in 1..=m {
        let next = &dpows[k - 1] * d;
        dpows.push(next);
    }
    // Horner in n with a compensating power of d.
    let mut acc = PolyQ::constant(p.coeff(m));
    for k in (0..m).rev() {
        acc = &(&acc * n) + &dpows[m - k].mul_scalar(&p.coeff(k));
    }
    (acc, dpows[m].clone())
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_var(f, "q")
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFuncQ::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFuncQ::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs)
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        // Cross-cancel before multiplying to keep the final gcd small.
        let g1 = if self.den.is_one() || rhs.num.is_constant() {
            PolyQ::one()
        } else {
            PolyQ::gcd(&rhs.num, &self.den)
        };
        let g2 = if rhs.den.is_one() || self.num.is_constant() {
            PolyQ::one()
        } else {
            PolyQ::gcd(&self.num, &rhs.den)
        };
        let n1 = if g2.is_one() { self.num.clone() } else { self.num.exact_div(&g2) };
        let n2 = if g1.is_one() { rhs.num.clone() } else { rhs.num.exact_div(&g1) };
        let d1 = if g1.is_one() { self.den.clone() } else { self.den.exact_div(&g1) };
        let d2 = if g2.is_one() { rhs.den.clone() } else { rhs.den.exact_div(&g2) };
        RatFuncQ::new(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFuncQ {
    type Output = RatFuncQ;
    fn div(self, rhs: &RatFuncQ) -> RatFuncQ {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::poly::rat;

    fn poly(cs: &[i64]) -> PolyQ {
        PolyQ::from_int_coeffs(cs)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFuncQ {
        RatFuncQ::new(poly(n), poly(d))
    }

    #[test]
    fn field_identities() {
        let e = rf(&[1, -1, 1], &[1]); // q^2-q+1
        assert!((&e / &e).is_one());
        let a = rf(&[-1, 1], &[1]);
        let b = rf(&[1, 1], &[1]);
        assert_eq!(&a * &b, rf(&[-1, 0, 1], &[1]));
    }

    #[test]
    fn canonical_form_reduces() {
        // (q^2-1)/(q-1) = q+1
        let v = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(v, rf(&[1, 1], &[1]));
        // denominator comes out monic
        let w = RatFuncQ::new(poly(&[1]), poly(&[0, 2]));
        assert_eq!(w.den(), &poly(&[0, 1]));
        assert_eq!(w.num(), &PolyQ::constant(rat(1, 2)));
    }

    #[test]
    fn eval_hits_example() {
        // (q^3+q^2+2q+1)/(q+1) at q=1 is 5/2
        let v = rf(&[1, 2, 1, 1], &[1, 1]);
        assert_eq!(v.eval(&rat(1, 1)).unwrap(), rat(5, 2));
        assert!(rf(&[1], &[-1, 1]).eval(&rat(1, 1)).is_err());
    }

    #[test]
    fn substitution_is_homomorphic() {
        let inv_q = RatFuncQ::var_pow(-1);
        // q -> 1/q
        assert_eq!(RatFuncQ::var().substitute(&inv_q).unwrap(), inv_q);
        // 1+q^2 -> (q^2+1)/q^2
        let f = rf(&[1, 0, 1], &[1]);
        assert_eq!(f.substitute(&inv_q).unwrap(), rf(&[1, 0, 1], &[0, 0, 1]));
        // identity substitution
        let e = rf(&[1, -1, 1], &[1]);
        assert_eq!(e.substitute(&RatFuncQ::var()).unwrap(), e);
        // involution
        assert_eq!(e.substitute_inv_q().substitute_inv_q(), e);
        // homomorphism on a product
        let g = rf(&[0, 3, 1], &[2, 1]);
        let h = rf(&[5, -1], &[0, 0, 1]);
        let lhs = (&g * &h).substitute(&inv_q).unwrap();
        let rhs = &g.substitute(&inv_q).unwrap() * &h.substitute(&inv_q).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn vanishing_denominator_detected() {
        // substitute a constant that kills the denominator identically
        let f = rf(&[1], &[-1, 1]); // 1/(q-1)
        let one = RatFuncQ::one();
        assert!(matches!(
            f.substitute(&one),
            Err(Error::VanishingDenominator)
        ));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(RatFuncQ::var_pow(-2), rf(&[1], &[0, 0, 1]));
        let q = RatFuncQ::var();
        assert_eq!(q.pow(-1).unwrap(), RatFuncQ::var_pow(-1));
    }
}
