//! Dense univariate polynomials over arbitrary-precision rationals.
//!
//! [`PolyQ`] is the workhorse of the exact layer: coefficients are stored in
//! ascending order of the deformation variable `q`, with no trailing zeros, so
//! equality is structural. The gcd runs a primitive pseudo-remainder sequence
//! over cleared integer coefficients, which keeps intermediate coefficient
//! growth under control.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Shorthand for the coefficient field.
pub type Q = BigRational;

/// Build a rational from a pair of machine integers.
pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense polynomial in one variable over the rationals.
///
/// The variable is written `q` by default; [`PolyQ::fmt_with_var`]
/// renders the same coefficients against another letter (`s`, `x`, ...).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyQ {
    coeffs: Vec<Q>,
}

impl PolyQ {
    /// Construct from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyQ::constant(Q::one())
    }

    /// The variable itself.
    pub fn var() -> Self {
        PolyQ::new(vec![Q::zero(), Q::one()])
    }

    pub fn constant(c: Q) -> Self {
        PolyQ::new(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        PolyQ::constant(rat(n, 1))
    }

    /// Ascending integer coefficients; `&[1, -1, 1]` is `q^2 - q + 1`.
    pub fn from_int_coeffs(cs: &[i64]) -> Self {
        PolyQ::new(cs.iter().map(|&c| rat(c, 1)).collect())
    }

    /// `c * q^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        if c.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        PolyQ { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = 0`, convenient for loops.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn mul_scalar(&self, c: &Q) -> Self {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Q::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyQ { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PolyQ::zero();
        }
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &PolyQ) -> PolyQ {
        let mut acc = PolyQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &PolyQ::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> PolyQ {
        let mut base = self.clone();
        let mut acc = PolyQ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division by a nonzero divisor; returns `(quotient, remainder)`.
    ///
    /// Panics on a zero divisor.
    pub fn divrem(&self, div: &PolyQ) -> (PolyQ, PolyQ) {
        let dd = div.degree().expect("division by the zero polynomial");
        let lead_inv = Q::one() / div.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyQ::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lead_inv;
            if !c.is_zero() {
                for i in 0..dd {
                    let t = &div.coeffs[i] * &c;
                    rem[k - dd + i] = &rem[k - dd + i] - &t;
                }
            }
            rem[k] = Q::zero();
            quot[k - dd] = c;
        }
        (PolyQ::new(quot), PolyQ::new(rem))
    }

    /// Exact division; panics if the divisor does not divide exactly.
    pub fn exact_div(&self, div: &PolyQ) -> PolyQ {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "exact_div: division left a remainder");
        q
    }

    pub fn divides(&self, other: &PolyQ) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).1.is_zero()
    }

    /// Scale to monic (leading coefficient 1). Zero stays zero.
    pub fn monic(&self) -> PolyQ {
        match self.leading() {
            None => PolyQ::zero(),
            Some(l) => {
                let inv = Q::one() / l.clone();
                self.mul_scalar(&inv)
            }
        }
    }

    /// Monic gcd. A modular Euclid pass certifies the common coprime case
    /// cheaply; otherwise a primitive pseudo-remainder sequence over
    /// cleared integer coefficients computes the gcd.
    pub fn gcd(a: &PolyQ, b: &PolyQ) -> PolyQ {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return PolyQ::one();
        }
        if zp::certainly_coprime(a, b) {
            return PolyQ::one();
        }
        let mut u = clear_to_int(a);
        let mut v = clear_to_int(b);
        if u.len() < v.len() {
            std::mem::swap(&mut u, &mut v);
        }
        loop {
            let r = int_pseudo_rem(&u, &v);
            if r.is_empty() {
                return int_to_monic(&v);
            }
            if r.len() == 1 {
                return PolyQ::one();
            }
            u = v;
            v = int_primitive(r);
        }
    }

    /// Write in the given variable; descending powers, `*` between a
    /// non-unit coefficient and the variable.
    pub fn fmt_with_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if k == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_var(f, "q")
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(Q::zero);
            if let Some(d) = rhs.coeffs.get(k) {
                c = c + d;
            }
            out.push(c);
        }
        PolyQ::new(out)
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(Q::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(Q::zero);
            out.push(a - b);
        }
        PolyQ::new(out)
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PolyQ::new(out)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Clear denominators and integer content; result is primitive with positive
/// leading coefficient.
fn clear_to_int(p: &PolyQ) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * &lcm / c.denom()).collect();
    int_primitive(ints)
}

fn int_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        if !c.is_zero() {
            g = g.gcd(c);
        }
        if g.is_one() {
            break;
        }
    }
    g
}

fn int_primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        return p;
    }
    let mut g = int_content(&p);
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in &mut p {
            *c = &*c / &g;
        }
    }
    p
}

/// Pseudo-remainder of `u` by `v` (`deg u >= deg v >= 1`), trailing zeros trimmed.
fn int_pseudo_rem(u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    let dv = v.len() - 1;
    let lead = v[dv].clone();
    let mut r = u.to_vec();
    while r.len() > dv {
        let k = r.len() - 1;
        let c = r[k].clone();
        if c.is_zero() {
            r.pop();
            continue;
        }
        for x in r.iter_mut() {
            *x = &*x * &lead;
        }
        for i in 0..dv {
            r[k - dv + i] = &r[k - dv + i] - &(&c * &v[i]);
        }
        r.pop();
        while r.last().map_or(false, Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn int_to_monic(p: &[BigInt]) -> PolyQ {
    let lead = p.last().expect("nonzero");
    PolyQ::new(
        p.iter()
            .map(|c| Q::new(c.clone(), lead.clone()))
            .collect(),
    )
}

/// Arithmetic modulo the Mersenne prime `2^61 - 1`, used only to certify
/// coprimality: if two polynomials map (degree-preservingly) to coprime
/// images over the prime field, they are coprime. A failed certificate is
/// never trusted — callers fall back to exact computation.
pub(crate) mod zp {
    use super::{PolyQ, Q};
    use num::bigint::BigInt;
    use num::Signed;

    pub const P: u64 = (1 << 61) - 1;

    pub fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    pub fn sub(a: u64, b: u64) -> u64 {
        (a + P - b) % P
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    fn bigint_mod(a: &BigInt) -> u64 {
        use num::ToPrimitive;
        let v = (a % BigInt::from(P)).to_i64().expect("remainder fits i64");
        if v < 0 {
            (v + P as i64) as u64
        } else {
            v as u64
        }
    }

    pub fn rat_mod(c: &Q) -> Option<u64> {
        let d = bigint_mod(c.denom());
        if d == 0 {
            return None;
        }
        let n = bigint_mod(&c.numer().abs());
        let v = mul(n, inv(d));
        if c.numer().is_negative() && v != 0 {
            Some(P - v)
        } else {
            Some(v)
        }
    }

    pub fn poly_mod(p: &PolyQ) -> Option<Vec<u64>> {
        let img: Option<Vec<u64>> = p.coeffs().iter().map(rat_mod).collect();
        let img = img?;
        // degree must be preserved for the gcd degree bound to apply
        if img.last().map_or(true, |&l| l == 0) {
            return None;
        }
        Some(img)
    }

    pub fn eval_mod(p: &PolyQ, t: u64) -> Option<u64> {
        let mut acc = 0u64;
        for c in p.coeffs().iter().rev() {
            acc = (mul(acc, t) + rat_mod(c)?) % P;
        }
        Some(acc)
    }

    /// Degree of the gcd over the prime field; inputs trimmed, nonempty.
    pub fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
        let trim = |v: &mut Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
        };
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let db = b.len() - 1;
            let lead_inv = inv(*b.last().unwrap());
            while a.len() > db {
                let k = a.len() - 1;
                let c = mul(a[k], lead_inv);
                if c != 0 {
                    for i in 0..db {
                        a[k - db + i] = sub(a[k - db + i], mul(c, b[i]));
                    }
                }
                a.pop();
                trim(&mut a);
                if a.is_empty() {
                    break;
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        a.len().saturating_sub(1)
    }

    /// True only when the two polynomials are provably coprime.
    pub fn certainly_coprime(a: &PolyQ, b: &PolyQ) -> bool {
        match (poly_mod(a), poly_mod(b)) {
            (Some(ai), Some(bi)) => gcd_degree(ai, bi) == 0,
            _ => false,
        }
    }

    /// Evaluate rows of `q`-polynomials (a cleared bivariate polynomial)
    /// at `q = t` over the prime field, as a polynomial in `x`.
    pub fn rows_at(rows: &[PolyQ], t: u64) -> Option<Vec<u64>> {
        let img: Option<Vec<u64>> = rows
            .iter()
            .map(|p| if p.is_zero() { Some(0) } else { eval_mod(p, t) })
            .collect();
        let mut img = img?;
        while img.last() == Some(&0) {
            img.pop();
        }
        Some(img)
    }

    #[cfg(test)]
    mod tests {
        use super::*;
        use crate::rings::poly::rat;

        #[test]
        fn rational_images() {
            assert_eq!(rat_mod(&rat(1, 1)), Some(1));
            assert_eq!(rat_mod(&rat(-1, 1)), Some(P - 1));
            let half = rat_mod(&rat(1, 2)).unwrap();
            assert_eq!(mul(half, 2), 1);
        }

        #[test]
        fn coprimality_certificate() {
            let a = PolyQ::from_int_coeffs(&[-1, 1]);
            let b = PolyQ::from_int_coeffs(&[1, 1]);
            assert!(certainly_coprime(&a, &b));
            let c = &a * &b;
            assert!(!certainly_coprime(&a, &c));
        }
    }
}

/// Multiply a slice of rational polynomials by a single positive rational so
/// that all coefficients become integers with joint content 1. Returns the
/// cleared integer coefficient vectors in the input order.
pub fn joint_integer_clear(polys: &[&PolyQ]) -> Vec<Vec<BigInt>> {
    let mut lcm = BigInt::one();
    for p in polys {
        for c in p.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
    }
    let mut cleared: Vec<Vec<BigInt>> = polys
        .iter()
        .map(|p| {
            p.coeffs()
                .iter()
                .map(|c| c.numer() * &lcm / c.denom())
                .collect()
        })
        .collect();
    let mut g = BigInt::zero();
    for p in &cleared {
        for c in p {
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
    }
    if !g.is_zero() && !g.is_one() {
        for p in &mut cleared {
            for c in p.iter_mut() {
                *c = &*c / &g;
            }
        }
    }
    cleared
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> PolyQ {
        PolyQ::from_int_coeffs(cs)
    }

    #[test]
    fn arithmetic_basics() {
        // (q-1)(q+1) = q^2 - 1
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &b, p(&[-2]));
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[1, 2, 0, 3, 5]);
        let b = p(&[2, 0, 1]);
        let (quot, rem) = a.divrem(&b);
        assert_eq!(&(&quot * &b) + &rem, a);
        assert!(rem.deg() < b.deg());
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[-1, 1]); // q - 1
        let b = p(&[1, 1]); // q + 1
        let c = p(&[1, 0, 1]); // q^2 + 1
        let left = &(&a * &b) * &c;
        let right = &a * &c;
        let g = PolyQ::gcd(&left, &right);
        assert_eq!(g, (&a * &c).monic());
        assert_eq!(PolyQ::gcd(&a, &b), PolyQ::one());
    }

    #[test]
    fn eval_and_derivative() {
        let f = p(&[1, -1, 1]); // q^2 - q + 1
        assert_eq!(f.eval(&rat(1, 1)), rat(1, 1));
        assert_eq!(f.eval(&rat(2, 1)), rat(3, 1));
        assert_eq!(f.derivative(), p(&[-1, 2]));
    }

    #[test]
    fn display_descending() {
        let f = p(&[1, 2, 1, 1]);
        assert_eq!(f.to_string(), "q^3+q^2+2*q+1");
        let g = PolyQ::new(vec![rat(1, 1), rat(-1, 2)]);
        assert_eq!(g.to_string(), "-1/2*q+1");
        assert_eq!(PolyQ::zero().to_string(), "0");
    }
}
