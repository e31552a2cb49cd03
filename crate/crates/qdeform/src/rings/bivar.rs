//! Rational functions in `x` with coefficients in the rational function
//! field of `q` — the space the deformed differential operators act on.
//!
//! Representation is recursive dense: a polynomial in `x` holds
//! [`RatFuncQ`] coefficients. The `x`-degree of everything in this crate is
//! small while `q`-degrees grow, so this layout beats a flat bivariate ring.
//! Fractions are kept reduced with a monic-in-`x` denominator, making
//! equality structural. The gcd clears coefficients into the polynomial
//! ring of `q` and runs a primitive pseudo-remainder sequence there.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::Zero;

use super::poly::{PolyQ, Q};
use super::ratfunc::RatFuncQ;
use crate::error::Error;

/// Polynomial in `x` over the rational function field of `q`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyX {
    coeffs: Vec<RatFuncQ>,
}

impl PolyX {
    pub fn new(mut coeffs: Vec<RatFuncQ>) -> Self {
        while coeffs.last().map_or(false, RatFuncQ::is_zero) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn zero() -> Self {
        PolyX { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyX::constant(RatFuncQ::one())
    }

    /// The variable `x`.
    pub fn var() -> Self {
        PolyX::new(vec![RatFuncQ::zero(), RatFuncQ::one()])
    }

    pub fn constant(c: RatFuncQ) -> Self {
        PolyX::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[RatFuncQ] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFuncQ {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFuncQ::zero)
    }

    pub fn leading(&self) -> Option<&RatFuncQ> {
        self.coeffs.last()
    }

    pub fn mul_scalar(&self, c: &RatFuncQ) -> Self {
        if c.is_zero() {
            return PolyX::zero();
        }
        PolyX {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Derivative with respect to `x`.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PolyX::zero();
        }
        PolyX::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &RatFuncQ::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> PolyX {
        let mut base = self.clone();
        let mut acc = PolyX::one();
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

    /// Horner evaluation at an element of the coefficient field.
    pub fn eval_x(&self, x0: &RatFuncQ) -> RatFuncQ {
        let mut acc = RatFuncQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x0) + c;
        }
        acc
    }

    /// Euclidean division over the coefficient field.
    pub fn divrem(&self, div: &PolyX) -> (PolyX, PolyX) {
        let dd = div.degree().expect("division by the zero polynomial");
        let lead_inv = div.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyX::zero(), self.clone());
        }
        let mut quot = vec![RatFuncQ::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lead_inv;
            if !c.is_zero() {
                for i in 0..dd {
                    let t = &div.coeffs[i] * &c;
                    rem[k - dd + i] = &rem[k - dd + i] - &t;
                }
            }
            rem[k] = RatFuncQ::zero();
            quot[k - dd] = c;
        }
        (PolyX::new(quot), PolyX::new(rem))
    }

    pub fn exact_div(&self, div: &PolyX) -> PolyX {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "exact_div: division left a remainder");
        q
    }

    pub fn monic(&self) -> PolyX {
        match self.leading() {
            None => PolyX::zero(),
            Some(l) => self.mul_scalar(&l.inv().expect("nonzero")),
        }
    }

    /// Monic gcd in `x` over the coefficient field. A modular specialization
    /// certifies the coprime case cheaply; otherwise a subresultant
    /// pseudo-remainder sequence over cleared coefficients does the work.
    pub fn gcd(a: &PolyX, b: &PolyX) -> PolyX {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return PolyX::one();
        }
        let mut u = clear_coeffs(a);
        let mut v = clear_coeffs(b);
        if certainly_coprime_rows(&u, &v) {
            return PolyX::one();
        }
        if u.len() < v.len() {
            std::mem::swap(&mut u, &mut v);
        }
        subresultant_gcd(u, v)
    }

    /// Apply a map to every coefficient, trimming afterwards.
    pub fn map_coeffs<F>(&self, f: F) -> Result<PolyX, Error>
    where
        F: Fn(&RatFuncQ) -> Result<RatFuncQ, Error>,
    {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| f(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyX::new(coeffs))
    }

    pub fn fmt_with_vars(&self, f: &mut fmt::Formatter<'_>, qvar: &str, xvar: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if k == 0 {
                if c.is_constant() || c.is_polynomial() {
                    c.fmt_with_var(f, qvar)?;
                } else {
                    write!(f, "(")?;
                    c.fmt_with_var(f, qvar)?;
                    write!(f, ")")?;
                }
                continue;
            }
            if c.is_one() {
                // bare power of x
            } else {
                write!(f, "(")?;
                c.fmt_with_var(f, qvar)?;
                write!(f, ")*")?;
            }
            if k == 1 {
                write!(f, "{xvar}")?;
            } else {
                write!(f, "{xvar}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_vars(f, "q", "x")
    }
}

impl Add for &PolyX {
    type Output = PolyX;
    fn add(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        PolyX::new(out)
    }
}

impl Sub for &PolyX {
    type Output = PolyX;
    fn sub(self, rhs: &PolyX) -> PolyX {
        self + &(-rhs)
    }
}

impl Mul for &PolyX {
    type Output = PolyX;
    fn mul(self, rhs: &PolyX) -> PolyX {
        if self.is_zero() || rhs.is_zero() {
            return PolyX::zero();
        }
        let mut out = vec![RatFuncQ::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
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
        PolyX::new(out)
    }
}

impl Neg for &PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        PolyX {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Clear every coefficient into the polynomial ring of `q` and strip the
/// common content, so the pseudo-remainder sequence works on primitive data.
fn clear_coeffs(p: &PolyX) -> Vec<PolyQ> {
    if p.coeffs().iter().all(RatFuncQ::is_polynomial) {
        return strip_content(p.coeffs().iter().map(|c| c.num().clone()).collect());
    }
    let mut lcm = PolyQ::one();
    for c in p.coeffs() {
        if !c.is_polynomial() {
            let g = PolyQ::gcd(&lcm, c.den());
            lcm = &lcm.exact_div(&g) * c.den();
        }
    }
    let cleared: Vec<PolyQ> = p
        .coeffs()
        .iter()
        .map(|c| c.num() * &lcm.exact_div(c.den()))
        .collect();
    strip_content(cleared)
}

fn strip_content(mut v: Vec<PolyQ>) -> Vec<PolyQ> {
    while v.last().map_or(false, PolyQ::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut g = PolyQ::zero();
    for c in &v {
        if !c.is_zero() {
            g = PolyQ::gcd(&g, c);
        }
        if g.is_one() {
            break;
        }
    }
    if !g.is_one() && !g.is_zero() {
        for c in &mut v {
            *c = c.exact_div(&g);
        }
    }
    v
}

/// Try to certify coprimality by specializing `q` over the prime field at a
/// few points. Only a positive certificate is trusted.
fn certainly_coprime_rows(u: &[PolyQ], v: &[PolyQ]) -> bool {
    use crate::rings::poly::zp;
    for t in [5u64, 1_000_003, 910_461_392_817_121] {
        let (Some(ui), Some(vi)) = (zp::rows_at(u, t), zp::rows_at(v, t)) else {
            continue;
        };
        // degree preservation keeps the specialized gcd an upper bound
        if ui.len() == u.len() && vi.len() == v.len() && zp::gcd_degree(ui, vi) == 0 {
            return true;
        }
    }
    false
}

/// Subresultant pseudo-remainder sequence on cleared coefficient rows;
/// returns the monic gcd over the coefficient field.
fn subresultant_gcd(mut u: Vec<PolyQ>, mut v: Vec<PolyQ>) -> PolyX {
    let mut g = PolyQ::one();
    let mut h = PolyQ::one();
    loop {
        let delta = u.len() - v.len();
        let r = pseudo_rem_exact(&u, &v);
        if r.is_empty() {
            let prim = strip_content(v);
            return PolyX::new(prim.into_iter().map(RatFuncQ::from_poly).collect()).monic();
        }
        if r.len() == 1 {
            return PolyX::one();
        }
        let lead_old_v = v.last().expect("nonzero").clone();
        let divisor = &g * &h.pow(delta as u32);
        u = v;
        v = if divisor.is_one() {
            r
        } else {
            r.into_iter().map(|c| c.exact_div(&divisor)).collect()
        };
        g = lead_old_v;
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta as u32).exact_div(&h.pow(delta as u32 - 1)),
        };
    }
}

/// True pseudo-remainder `lc(v)^(deg u - deg v + 1) * u mod v`.
/// Inputs are trimmed (nonzero leading entries), `deg u >= deg v >= 1`.
fn pseudo_rem_exact(u: &[PolyQ], v: &[PolyQ]) -> Vec<PolyQ> {
    let dv = v.len() - 1;
    let lead = v[dv].clone();
    let mut e = (u.len() - dv) as i64; // delta + 1 scalings in total
    let mut r = u.to_vec();
    while r.len() > dv {
        let k = r.len() - 1;
        let c = r[k].clone();
        // r <- lead * r - c * x^(k-dv) * v; the top terms cancel
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &lead;
            }
        }
        for i in 0..=dv {
            let t = &c * &v[i];
            if !t.is_zero() {
                r[k - dv + i] = &r[k - dv + i] - &t;
            }
        }
        debug_assert!(r[k].is_zero());
        r.pop();
        while r.last().map_or(false, PolyQ::is_zero) {
            r.pop();
        }
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let extra = lead.pow(e as u32);
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &extra;
            }
        }
    }
    r
}

/// Rational function of `x` over the rational function field of `q`;
/// the canonical form keeps numerator and denominator coprime with the
/// denominator monic in `x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFuncQX {
    num: PolyX,
    den: PolyX,
}

impl RatFuncQX {
    pub fn new(num: PolyX, den: PolyX) -> Self {
        Self::checked_new(num, den).expect("zero denominator")
    }

    pub fn checked_new(num: PolyX, den: PolyX) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFuncQX {
                num: PolyX::zero(),
                den: PolyX::one(),
            });
        }
        let (num, den) = if num.is_constant() || den.is_constant() {
            (num, den)
        } else {
            let g = PolyX::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lead = den.leading().expect("nonzero").clone();
        if lead.is_one() {
            Ok(RatFuncQX { num, den })
        } else {
            let inv = lead.inv()?;
            Ok(RatFuncQX {
                num: num.mul_scalar(&inv),
                den: den.mul_scalar(&inv),
            })
        }
    }

    pub fn from_polyx(p: PolyX) -> Self {
        RatFuncQX {
            num: p,
            den: PolyX::one(),
        }
    }

    pub fn from_coeff(c: RatFuncQ) -> Self {
        Self::from_polyx(PolyX::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_coeff(RatFuncQ::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_polyx(PolyX::zero())
    }

    pub fn one() -> Self {
        Self::from_polyx(PolyX::one())
    }

    /// The function `x`.
    pub fn x() -> Self {
        Self::from_polyx(PolyX::var())
    }

    /// The constant function `q`.
    pub fn q() -> Self {
        Self::from_coeff(RatFuncQ::var())
    }

    pub fn num(&self) -> &PolyX {
        &self.num
    }

    pub fn den(&self) -> &PolyX {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
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
            Ok(RatFuncQX {
                num: self.num.pow(e as u32),
                den: self.den.pow(e as u32),
            })
        } else {
            self.inv().map(|r| RatFuncQX {
                num: r.num.pow((-e) as u32),
                den: r.den.pow((-e) as u32),
            })
        }
    }

    /// Derivative with respect to `x`.
    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return RatFuncQX::from_polyx(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFuncQX::new(n, &self.den * &self.den)
    }

    /// Composition `self(inner)`. Errors when the inner function lands
    /// identically on a pole of `self`.
    pub fn compose(&self, inner: &RatFuncQX) -> Result<Self, Error> {
        let (an, a_pow) = polyx_at_ratfunc(&self.num, inner);
        let (bn, b_pow) = polyx_at_ratfunc(&self.den, inner);
        if bn.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        // self = N/D, N(g) = an/gd^a_pow, D(g) = bn/gd^b_pow.
        let gd = &inner.den;
        let (num, den) = if a_pow >= b_pow {
            (an, &bn * &gd.pow((a_pow - b_pow) as u32))
        } else {
            (&an * &gd.pow((b_pow - a_pow) as u32), bn)
        };
        Self::checked_new(num, den)
    }

    /// Apply a field map to every coefficient of numerator and denominator.
    /// The map must be a homomorphism for the result to be meaningful.
    pub fn map_q<F>(&self, f: F) -> Result<Self, Error>
    where
        F: Fn(&RatFuncQ) -> Result<RatFuncQ, Error>,
    {
        let num = self.num.map_coeffs(&f)?;
        let den = self.den.map_coeffs(&f)?;
        Self::checked_new(num, den)
    }

    /// Substitute `q -> image` in every coefficient.
    pub fn substitute_q(&self, image: &RatFuncQ) -> Result<Self, Error> {
        self.map_q(|c| c.substitute(image))
    }

    /// Specialize `q` to a rational constant, keeping the `x`-structure.
    ///
    /// Works on the cleared bivariate pair so that removable poles coming
    /// from the monic-in-`x` normalization (the transition map at `q = 1`,
    /// say) specialize cleanly.
    pub fn specialize_q(&self, q0: &Q) -> Result<Self, Error> {
        let (num_rows, den_rows) = self.cleared_bivariate();
        let eval_rows = |rows: &[PolyQ]| {
            PolyX::new(
                rows.iter()
                    .map(|p| RatFuncQ::from_rat(p.eval(q0)))
                    .collect(),
            )
        };
        let den = eval_rows(&den_rows);
        if den.is_zero() {
            return Err(Error::Pole(format!("the value degenerates at q = {q0}")));
        }
        Self::checked_new(eval_rows(&num_rows), den)
    }

    /// Exact evaluation at rational `(q0, x0)`.
    pub fn eval(&self, q0: &Q, x0: &Q) -> Result<Q, Error> {
        let eval_poly = |p: &PolyX| -> Result<Q, Error> {
            let mut acc = Q::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc * x0 + c.eval(q0)?;
            }
            Ok(acc)
        };
        let d = eval_poly(&self.den)?;
        if d.is_zero() {
            return Err(Error::Pole(format!("pole at (q, x) = ({q0}, {x0})")));
        }
        Ok(eval_poly(&self.num)? / d)
    }

    /// Evaluate in `x` only, returning an element of the coefficient field.
    pub fn eval_x(&self, x0: &RatFuncQ) -> Result<RatFuncQ, Error> {
        let d = self.den.eval_x(x0);
        if d.is_zero() {
            return Err(Error::Pole(format!("pole at x = {x0}")));
        }
        self.num.eval_x(x0).checked_div(&d)
    }

    /// `a b' - b a'`, assembled as a single fraction so only one gcd runs.
    pub fn wronskian(a: &RatFuncQX, b: &RatFuncQX) -> RatFuncQX {
        if a.is_zero() || b.is_zero() {
            return RatFuncQX::zero();
        }
        let (na, da) = (&a.num, &a.den);
        let (nb, db) = (&b.num, &b.den);
        if da.is_one() && db.is_one() {
            return RatFuncQX::from_polyx(
                &(na * &nb.derivative()) - &(nb * &na.derivative()),
            );
        }
        if da == db {
            // shared denominator: the d' cross terms cancel
            let num = &(na * &nb.derivative()) - &(nb * &na.derivative());
            return RatFuncQX::new(num, da * da);
        }
        let left = &(na * da) * &(&(&nb.derivative() * db) - &(nb * &db.derivative()));
        let right = &(nb * db) * &(&(&na.derivative() * da) - &(na * &da.derivative()));
        let dd = da * db;
        RatFuncQX::new(&left - &right, &dd * &dd)
    }

    /// Exchange the roles of `q` and `x`.
    pub fn swap_qx(&self) -> Self {
        let (num_rows, den_rows) = self.cleared_bivariate();
        RatFuncQX::new(transpose_rows(&num_rows), transpose_rows(&den_rows))
    }

    /// Clear all coefficient denominators jointly, returning numerator and
    /// denominator as polynomial-in-`q` coefficient rows (index = power of
    /// `x`), with the common polynomial content divided out.
    pub fn cleared_bivariate(&self) -> (Vec<PolyQ>, Vec<PolyQ>) {
        let mut lcm = PolyQ::one();
        for c in self.num.coeffs().iter().chain(self.den.coeffs()) {
            if !c.is_polynomial() {
                let g = PolyQ::gcd(&lcm, c.den());
                lcm = &lcm.exact_div(&g) * c.den();
            }
        }
        let clear = |p: &PolyX| -> Vec<PolyQ> {
            p.coeffs()
                .iter()
                .map(|c| c.num() * &lcm.exact_div(c.den()))
                .collect()
        };
        let mut num_rows = clear(&self.num);
        let mut den_rows = clear(&self.den);
        let mut g = PolyQ::zero();
        for c in num_rows.iter().chain(den_rows.iter()) {
            if !c.is_zero() {
                g = PolyQ::gcd(&g, c);
            }
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() && !g.is_zero() {
            for c in num_rows.iter_mut().chain(den_rows.iter_mut()) {
                *c = c.exact_div(&g);
            }
        }
        (num_rows, den_rows)
    }

    pub fn fmt_with_vars(&self, f: &mut fmt::Formatter<'_>, qvar: &str, xvar: &str) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_with_vars(f, qvar, xvar);
        }
        write!(f, "(")?;
        self.num.fmt_with_vars(f, qvar, xvar)?;
        write!(f, ")/(")?;
        self.den.fmt_with_vars(f, qvar, xvar)?;
        write!(f, ")")
    }
}

/// Rows of `q`-polynomials (indexed by the power of `x`) reassembled as a
/// polynomial in the other variable: row `i` contributes `row_i(x) * q^i`.
fn transpose_rows(rows: &[PolyQ]) -> PolyX {
    let max_q = rows.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let mut out = vec![PolyQ::zero(); max_q];
    for (xpow, row) in rows.iter().enumerate() {
        for (qpow, c) in row.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out[qpow] = &out[qpow] + &PolyQ::monomial(c.clone(), xpow);
            }
        }
    }
    PolyX::new(out.into_iter().map(RatFuncQ::from_poly).collect())
}

/// Homogeneous evaluation of a `PolyX` at a rational function of `x`:
/// returns `(p_hom, m)` with `p(g) = p_hom / gd^m`.
fn polyx_at_ratfunc(p: &PolyX, g: &RatFuncQX) -> (PolyX, usize) {
    if p.is_zero() {
        return (PolyX::zero(), 0);
    }
    let m = p.deg();
    let gn = &g.num;
    let gd = &g.den;
    let mut dpows: Vec<PolyX> = Vec::with_capacity(m + 1);
    dpows.push(PolyX::one());
    for k in 1..=m {
        let next = &dpows[k - 1] * gd;
        dpows.push(next);
    }
    let mut acc = PolyX::constant(p.coeff(m));
    for k in (0..m).rev() {
        acc = &(&acc * gn) + &dpows[m - k].mul_scalar(&p.coeff(k));
    }
    (acc, m)
}

impl fmt::Display for RatFuncQX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_vars(f, "q", "x")
    }
}

impl Add for &RatFuncQX {
    type Output = RatFuncQX;
    fn add(self, rhs: &RatFuncQX) -> RatFuncQX {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFuncQX::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFuncQX::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFuncQX {
    type Output = RatFuncQX;
    fn sub(self, rhs: &RatFuncQX) -> RatFuncQX {
        self + &(-rhs)
    }
}

impl Mul for &RatFuncQX {
    type Output = RatFuncQX;
    fn mul(self, rhs: &RatFuncQX) -> RatFuncQX {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQX::zero();
        }
        let g1 = if self.den.is_one() || rhs.num.is_constant() {
            PolyX::one()
        } else {
            PolyX::gcd(&rhs.num, &self.den)
        };
        let g2 = if rhs.den.is_one() || self.num.is_constant() {
            PolyX::one()
        } else {
            PolyX::gcd(&self.num, &rhs.den)
        };
        let n1 = if g2.is_one() { self.num.clone() } else { self.num.exact_div(&g2) };
        let n2 = if g1.is_one() { rhs.num.clone() } else { rhs.num.exact_div(&g1) };
        let d1 = if g1.is_one() { self.den.clone() } else { self.den.exact_div(&g1) };
        let d2 = if g2.is_one() { rhs.den.clone() } else { rhs.den.exact_div(&g2) };
        RatFuncQX::new(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFuncQX {
    type Output = RatFuncQX;
    fn div(self, rhs: &RatFuncQX) -> RatFuncQX {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RatFuncQX {
    type Output = RatFuncQX;
    fn neg(self) -> RatFuncQX {
        RatFuncQX {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::poly::rat;

    fn qpoly(cs: &[i64]) -> RatFuncQ {
        RatFuncQ::from_poly(PolyQ::from_int_coeffs(cs))
    }

    /// The transition map as a rational function of `x`:
    /// (1+(x-1)q)/(1+(q-1)x) = (q*x + (1-q)) / ((q-1)*x + 1).
    fn gq() -> RatFuncQX {
        let num = PolyX::new(vec![qpoly(&[1, -1]), qpoly(&[0, 1])]);
        let den = PolyX::new(vec![qpoly(&[1]), qpoly(&[-1, 1])]);
        RatFuncQX::new(num, den)
    }

    #[test]
    fn gq_canonical_form() {
        let g = gq();
        // denominator monic in x: (x + 1/(q-1)) after normalization
        assert!(g.den().leading().unwrap().is_one());
        // g(0) = 1 - q
        assert_eq!(g.eval_x(&RatFuncQ::zero()).unwrap(), qpoly(&[1, -1]));
    }

    #[test]
    fn duality_between_q_and_x() {
        // g_q(x) * g_x(q) = 1
        let g = gq();
        let swapped = g.swap_qx();
        assert!((&g * &swapped).is_one());
    }

    #[test]
    fn compose_with_inversion() {
        // g ∘ S_q = -q / g where S_q(x) = -1/(qx)
        let g = gq();
        let s = RatFuncQX::new(
            PolyX::constant(qpoly(&[-1])),
            PolyX::new(vec![RatFuncQ::zero(), qpoly(&[0, 1])]),
        );
        let lhs = g.compose(&s).unwrap();
        let rhs = &RatFuncQX::from_coeff(qpoly(&[0, -1])) / &g;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_at_zero_map() {
        // g ∘ 0 = 1 - q
        let g = gq();
        let zero_map = RatFuncQX::zero();
        assert_eq!(
            g.compose(&zero_map).unwrap(),
            RatFuncQX::from_coeff(qpoly(&[1, -1]))
        );
    }

    #[test]
    fn derivative_leibniz() {
        let g = gq();
        let h = &RatFuncQX::x() * &g;
        let lhs = h.derivative();
        let rhs = &(&RatFuncQX::x().derivative() * &g) + &(&RatFuncQX::x() * &g.derivative());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_rule_through_moebius() {
        // (f ∘ phi)' = (f' ∘ phi) * phi' for phi = S_q
        let f = gq();
        let phi = RatFuncQX::new(
            PolyX::constant(qpoly(&[-1])),
            PolyX::new(vec![RatFuncQ::zero(), qpoly(&[0, 1])]),
        );
        let lhs = f.compose(&phi).unwrap().derivative();
        let rhs = &f.derivative().compose(&phi).unwrap() * &phi.derivative();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_agrees_with_arithmetic() {
        let g = gq();
        let x = RatFuncQX::x();
        let sum = &g + &x;
        let q0 = rat(3, 2);
        let x0 = rat(5, 7);
        let direct = sum.eval(&q0, &x0).unwrap();
        let split = g.eval(&q0, &x0).unwrap() + x.eval(&q0, &x0).unwrap();
        assert_eq!(direct, split);
    }

    #[test]
    fn gcd_cancels_common_factor() {
        // (x^2 - 1)/(x - 1) = x + 1 over the coefficient field
        let num = PolyX::new(vec![qpoly(&[-1]), RatFuncQ::zero(), qpoly(&[1])]);
        let den = PolyX::new(vec![qpoly(&[-1]), qpoly(&[1])]);
        let v = RatFuncQX::new(num, den);
        assert_eq!(v, RatFuncQX::from_polyx(PolyX::new(vec![qpoly(&[1]), qpoly(&[1])])));
    }

    #[test]
    fn specialize_at_one_gives_identity_map() {
        // the transition map degenerates to x at q = 1
        let g = gq();
        assert_eq!(g.specialize_q(&rat(1, 1)).unwrap(), RatFuncQX::x());
    }
}
