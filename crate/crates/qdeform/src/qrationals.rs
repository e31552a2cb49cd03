//! Even continued fractions and the two q-deformations of rational numbers.
//!
//! A rational `r/s` has a unique even-length continued fraction
//! `[a_1, ..., a_2n]` with `a_1` an arbitrary integer and `a_i >= 1`
//! afterwards; reading it as the word `T^(a_1) U^(a_2) ... U^(a_2n)`
//! applied to infinity recovers `r/s`. Replacing `T, U` by their deformed
//! versions and applying the word to infinity gives the right (sharp)
//! deformation; applying it to `1/(1-q)` gives the left (flat) one. The
//! transition map `g_q` carries sharp values to flat values at `1/q`, and
//! flat deformations of rationals above 1 have nonnegative coefficients.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::Error;
use crate::moebius::{ProjMap, ProjPoint};
use crate::rings::{joint_integer_clear, PolyQ, Q, RatFuncQ};

/// Even-length continued fraction; the empty expansion denotes infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EvenCF {
    terms: Vec<i64>,
}

impl EvenCF {
    /// Validate terms: even length, `a_i >= 1` for `i >= 2`.
    pub fn new(terms: Vec<i64>) -> Result<Self, Error> {
        if terms.len() % 2 != 0 {
            return Err(Error::Precondition("continued fraction length must be even".into()));
        }
        if terms.iter().skip(1).any(|&a| a < 1) {
            return Err(Error::Precondition(
                "continued fraction terms after the first must be at least 1".into(),
            ));
        }
        Ok(EvenCF { terms })
    }

    pub fn infinity() -> Self {
        EvenCF { terms: vec![] }
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn is_infinity(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluate the word `T^(a_1) U^(a_2) ...` at infinity over the
    /// integers, returning the rational as `(numerator, denominator)`.
    pub fn reconstruct(&self) -> (BigInt, BigInt) {
        // T = [[1,1],[0,1]], U = [[1,0],[1,1]]; fold the word left to right.
        let (mut m00, mut m01, mut m10, mut m11) =
            (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
        for (i, &a) in self.terms.iter().enumerate() {
            let a = BigInt::from(a);
            if i % 2 == 0 {
                // right-multiply by T^a = [[1,a],[0,1]]
                m01 = &m01 + &(&m00 * &a);
                m11 = &m11 + &(&m10 * &a);
            } else {
                // right-multiply by U^a = [[1,0],[a,1]]
                m00 = &m00 + &(&m01 * &a);
                m10 = &m10 + &(&m11 * &a);
            }
        }
        // image of infinity is the first column
        let g = num::Integer::gcd(&m00, &m10);
        if g.is_zero() {
            return (m00, m10);
        }
        let (mut n, mut d) = (m00 / &g, m10 / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        (n, d)
    }
}

/// The unique even continued fraction of `r/s` (with `s = 0` meaning
/// infinity). Runs the floor-based Euclidean expansion, then fixes parity:
/// an odd expansion ending in `a >= 2` splits its last term into
/// `(a-1, 1)`, an odd expansion ending in 1 merges it into the previous
/// term, and a bare integer `n` becomes `[n-1, 1]`.
pub fn even_cf(r: i64, s: i64) -> Result<EvenCF, Error> {
    if r == 0 && s == 0 {
        return Err(Error::ZeroOverZero);
    }
    if s == 0 {
        return Ok(EvenCF::infinity());
    }
    let (mut num, mut den) = (i128::from(r), i128::from(s));
    if den < 0 {
        num = -num;
        den = -den;
    }
    let g = gcd_i128(num.abs(), den);
    num /= g;
    den /= g;
    let mut terms: Vec<i64> = Vec::new();
    loop {
        let a = num.div_euclid(den);
        let rem = num - a * den;
        terms.push(a as i64);
        if rem == 0 {
            break;
        }
        num = den;
        den = rem;
    }
    if terms.len() % 2 == 1 {
        let last = *terms.last().unwrap();
        if terms.len() == 1 {
            terms[0] = last - 1;
            terms.push(1);
        } else if last >= 2 {
            *terms.last_mut().unwrap() = last - 1;
            terms.push(1);
        } else {
            terms.pop();
            *terms.last_mut().unwrap() += 1;
        }
    }
    let cf = EvenCF::new(terms)?;
    debug_assert_eq!(
        cf.reconstruct(),
        (BigInt::from(num_of(r, s)), BigInt::from(den_of(r, s))),
        "even continued fraction must reconstruct its input"
    );
    Ok(cf)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.max(1)
    } else {
        gcd_i128(b, a % b)
    }
}

fn num_of(r: i64, s: i64) -> i128 {
    let (mut n, mut d) = (i128::from(r), i128::from(s));
    if d < 0 {
        n = -n;
        d = -d;
    }
    let g = gcd_i128(n.abs(), d);
    n / g
}

fn den_of(r: i64, s: i64) -> i128 {
    let (n, mut d) = (i128::from(r), i128::from(s));
    if d < 0 {
        d = -d;
    }
    let g = gcd_i128(n.abs(), d);
    d / g
}

/// Which of the two deformations a pair represents.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    Sharp,
    Flat,
}

/// A deformed rational as a coprime pair of integer polynomials; the
/// denominator has a positive leading coefficient and evaluating at
/// `q = 1` recovers the underlying rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QRatPair {
    pub num: PolyQ,
    pub den: PolyQ,
    pub flavor: Flavor,
}

impl QRatPair {
    fn from_point(p: &ProjPoint, flavor: Flavor) -> Self {
        let (num, den) = match p {
            ProjPoint::Infinity => (PolyQ::one(), PolyQ::zero()),
            ProjPoint::Finite(v) => (v.num().clone(), v.den().clone()),
        };
        let cleared = joint_integer_clear(&[&num, &den]);
        let mut num = PolyQ::new(cleared[0].iter().map(|c| Q::from_integer(c.clone())).collect());
        let mut den = PolyQ::new(cleared[1].iter().map(|c| Q::from_integer(c.clone())).collect());
        let lead_neg = if den.is_zero() {
            num.leading().map_or(false, Signed::is_negative)
        } else {
            den.leading().map_or(false, Signed::is_negative)
        };
        if lead_neg {
            num = -&num;
            den = -&den;
        }
        QRatPair { num, den, flavor }
    }

    /// The pair as a projective point over the rational function field.
    pub fn point(&self) -> ProjPoint {
        if self.den.is_zero() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(RatFuncQ::new(self.num.clone(), self.den.clone()))
        }
    }

    /// Exact value at a rational `q`; `None` when the value is infinite.
    pub fn eval(&self, q0: &Q) -> Option<Q> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(q0) / d)
        }
    }
}

/// The word of deformed generators attached to an even continued fraction,
/// applied to the given seed point. Uses the closed forms
/// `T_q^a = [[q^a, [a]_q], [0, 1]]` (any integer `a`, projectively) and
/// `U_q^a = [[q^a, 0], [q [a]_q, 1]]` (`a >= 1`).
fn apply_word(cf: &EvenCF, seed: &ProjPoint) -> ProjPoint {
    let mut m = ProjMap::identity();
    for (i, &a) in cf.terms().iter().enumerate() {
        let factor = if i % 2 == 0 { t_q_pow(a) } else { u_q_pow(a) };
        m = &m * &factor;
    }
    m.apply(seed)
}

fn q_int_poly(n: u32) -> PolyQ {
    PolyQ::new(vec![Q::one(); n as usize])
}

fn t_q_pow(a: i64) -> ProjMap {
    let a32 = u32::try_from(a.unsigned_abs()).expect("term fits in u32");
    if a >= 0 {
        ProjMap::new(
            RatFuncQ::from_poly(PolyQ::monomial(Q::one(), a32 as usize)),
            RatFuncQ::from_poly(q_int_poly(a32)),
            RatFuncQ::zero(),
            RatFuncQ::one(),
        )
        .expect("invertible")
    } else {
        // projectively [[1, -[a]_q], [0, q^a]]
        ProjMap::new(
            RatFuncQ::one(),
            -&RatFuncQ::from_poly(q_int_poly(a32)),
            RatFuncQ::zero(),
            RatFuncQ::from_poly(PolyQ::monomial(Q::one(), a32 as usize)),
        )
        .expect("invertible")
    }
}

fn u_q_pow(a: i64) -> ProjMap {
    let a32 = u32::try_from(a).expect("positive term fits in u32");
    ProjMap::new(
        RatFuncQ::from_poly(PolyQ::monomial(Q::one(), a32 as usize)),
        RatFuncQ::zero(),
        RatFuncQ::from_poly(q_int_poly(a32).shift_up(1)),
        RatFuncQ::one(),
    )
    .expect("invertible")
}

/// Right (sharp) deformation of `r/s`: the word applied to infinity.
pub fn q_sharp(r: i64, s: i64) -> Result<QRatPair, Error> {
    let cf = even_cf(r, s)?;
    Ok(QRatPair::from_point(
        &apply_word(&cf, &ProjPoint::Infinity),
        Flavor::Sharp,
    ))
}

/// Left (flat) deformation of `r/s`: the same word applied to `1/(1-q)`.
pub fn q_flat(r: i64, s: i64) -> Result<QRatPair, Error> {
    let cf = even_cf(r, s)?;
    Ok(QRatPair::from_point(&apply_word(&cf, &flat_seed()), Flavor::Flat))
}

/// The seed `1/(1-q)` of the flat deformation.
pub fn flat_seed() -> ProjPoint {
    ProjPoint::Finite(RatFuncQ::new(
        PolyQ::one(),
        PolyQ::from_int_coeffs(&[1, -1]),
    ))
}

/// Verify `g_q([r/s]^sharp) = [r/s]^flat at 1/q` as an exact identity.
pub fn transition_check(r: i64, s: i64) -> Result<bool, Error> {
    let sharp = q_sharp(r, s)?;
    let flat = q_flat(r, s)?;
    let lhs = ProjMap::g_q().apply(&sharp.point());
    let rhs = match flat.point() {
        ProjPoint::Infinity => ProjPoint::Infinity,
        ProjPoint::Finite(v) => {
            let w = v.substitute_inv_q();
            ProjPoint::Finite(w)
        }
    };
    Ok(lhs == rhs)
}

/// For `r/s > 1`, both entries of the flat pair must have nonnegative
/// coefficients after clearing an overall power of `q` and the sign.
pub fn positivity_check(r: i64, s: i64) -> Result<bool, Error> {
    if s <= 0 || r <= s {
        return Err(Error::Precondition(format!(
            "positivity requires r/s > 1, got {r}/{s}"
        )));
    }
    let flat = q_flat(r, s)?;
    let (num, den) = strip_common_q_power(flat.num, flat.den);
    Ok(nonneg(&num) && nonneg(&den))
}

fn strip_common_q_power(mut num: PolyQ, mut den: PolyQ) -> (PolyQ, PolyQ) {
    let q = PolyQ::var();
    while !num.is_zero() && !den.is_zero() && q.divides(&num) && q.divides(&den) {
        num = num.exact_div(&q);
        den = den.exact_div(&q);
    }
    if den.leading().map_or(false, Signed::is_negative)
        || (den.is_zero() && num.leading().map_or(false, Signed::is_negative))
    {
        num = -&num;
        den = -&den;
    }
    (num, den)
}

fn nonneg(p: &PolyQ) -> bool {
    p.coeffs().iter().all(|c| !c.is_negative())
}

/// The deformed integer `[n]_q = (1 - q^n)/(1 - q)`, polynomial for
/// `n >= 0` and rational with a pure `q`-power denominator otherwise.
pub fn q_integer(n: i64) -> RatFuncQ {
    if n >= 0 {
        RatFuncQ::from_poly(q_int_poly(n as u32))
    } else {
        let one = RatFuncQ::one();
        let num = &one - &RatFuncQ::var_pow(n);
        let den = &one - &RatFuncQ::var();
        &num / &den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{parse_q, rat};

    fn pair(n: &str, d: &str) -> (PolyQ, PolyQ) {
        let pn = parse_q(n).unwrap();
        let pd = parse_q(d).unwrap();
        assert!(pn.is_polynomial() && pd.is_polynomial());
        (pn.num().clone(), pd.num().clone())
    }

    #[test]
    fn even_cf_examples() {
        assert_eq!(even_cf(5, 2).unwrap().terms(), &[2, 2]);
        assert_eq!(even_cf(0, 1).unwrap().terms(), &[-1, 1]);
        assert!(even_cf(1, 0).unwrap().is_infinity());
        assert_eq!(even_cf(3, 2).unwrap().terms(), &[1, 2]);
        assert!(even_cf(0, 0).is_err());
    }

    #[test]
    fn even_cf_negative_and_unreduced_inputs() {
        // -3/2 = [-2, 2]
        assert_eq!(even_cf(-3, 2).unwrap().terms(), &[-2, 2]);
        // unreduced and negative-denominator inputs normalize first
        assert_eq!(even_cf(10, 4).unwrap().terms(), &[2, 2]);
        assert_eq!(even_cf(-5, -2).unwrap().terms(), &[2, 2]);
    }

    #[test]
    fn reconstruction_on_a_window() {
        for r in -12..=12 {
            for s in 1..=12 {
                if gcd_i128(i128::from(r).abs(), i128::from(s)) != 1 {
                    continue;
                }
                let cf = even_cf(r, s).unwrap();
                assert_eq!(cf.terms().len() % 2, 0);
                let (n, d) = cf.reconstruct();
                assert_eq!((n, d), (BigInt::from(r), BigInt::from(s)), "r/s = {r}/{s}");
            }
        }
    }

    #[test]
    fn sharp_values_from_the_list() {
        // [2]^sharp = 1 + q, [1]^sharp = 1, [0]^sharp = 0, [inf]^sharp = inf
        let two = q_sharp(2, 1).unwrap();
        assert_eq!((two.num.clone(), two.den.clone()), pair("1+q", "1"));
        let one = q_sharp(1, 1).unwrap();
        assert_eq!((one.num.clone(), one.den.clone()), pair("1", "1"));
        let zero = q_sharp(0, 1).unwrap();
        assert!(zero.num.is_zero());
        let inf = q_sharp(1, 0).unwrap();
        assert!(inf.den.is_zero());
    }

    #[test]
    fn flat_values_from_the_list() {
        // [2]^flat = 1 + q^2, [0]^flat = (q-1)/q, [1]^flat = q,
        // [inf]^flat = 1/(1-q) = -1/(q-1) with positive-leading denominator
        let two = q_flat(2, 1).unwrap();
        assert_eq!((two.num.clone(), two.den.clone()), pair("1+q^2", "1"));
        let zero = q_flat(0, 1).unwrap();
        assert_eq!((zero.num.clone(), zero.den.clone()), pair("q-1", "q"));
        let one = q_flat(1, 1).unwrap();
        assert_eq!((one.num.clone(), one.den.clone()), pair("q", "1"));
        let inf = q_flat(1, 0).unwrap();
        assert_eq!((inf.num.clone(), inf.den.clone()), pair("-1", "q-1"));
    }

    #[test]
    fn five_halves_sharp_and_flat() {
        // frozen against the hand matrix product T_q^2 U_q^2 applied to the
        // seeds (see the oracle test below)
        let sharp = q_sharp(5, 2).unwrap();
        assert_eq!(
            (sharp.num.clone(), sharp.den.clone()),
            pair("q^3+q^2+2*q+1", "q+1")
        );
        let flat = q_flat(5, 2).unwrap();
        assert_eq!(
            (flat.num.clone(), flat.den.clone()),
            pair("q^4+q^3+q^2+q+1", "q^2+1")
        );
    }

    /// Independent oracle: build T_q and U_q as raw matrices and multiply
    /// out the word for 5/2 by hand, bypassing the closed-form powers.
    #[test]
    fn matrix_product_oracle_for_five_halves() {
        let t = ProjMap::t_q();
        let u = ProjMap::u_q();
        let word = &(&(&t * &t) * &u) * &u;
        let sharp = word.apply(&ProjPoint::Infinity);
        let expected = parse_q("(q^3+q^2+2*q+1)/(q+1)").unwrap();
        assert_eq!(sharp, ProjPoint::Finite(expected));
        let flat = word.apply(&flat_seed());
        let expected = parse_q("(q^4+q^3+q^2+q+1)/(q^2+1)").unwrap();
        assert_eq!(flat, ProjPoint::Finite(expected));
        // and the generic path agrees with the closed-form powers
        assert_eq!(q_sharp(5, 2).unwrap().point(), word.apply(&ProjPoint::Infinity));
    }

    #[test]
    fn specialization_at_one() {
        for (r, s) in [(5i64, 2i64), (3, 2), (7, 5), (-4, 3), (0, 1), (1, 1)] {
            let sharp = q_sharp(r, s).unwrap();
            let flat = q_flat(r, s).unwrap();
            assert_eq!(sharp.eval(&rat(1, 1)).unwrap(), rat(r, s), "sharp {r}/{s}");
            assert_eq!(flat.eval(&rat(1, 1)).unwrap(), rat(r, s), "flat {r}/{s}");
        }
    }

    #[test]
    fn transition_examples() {
        // worked instance for r/s = 2: g_q(1+q) = (1+q^2)/q^2 = [2]^flat at 1/q
        let g = ProjMap::g_q();
        let img = g.apply(&ProjPoint::Finite(parse_q("1+q").unwrap()));
        assert_eq!(img, ProjPoint::Finite(parse_q("(1+q^2)/q^2").unwrap()));
        assert!(transition_check(2, 1).unwrap());
        assert!(transition_check(0, 1).unwrap());
        assert!(transition_check(1, 0).unwrap());
        assert!(transition_check(5, 2).unwrap());
        assert!(transition_check(-7, 3).unwrap());
    }

    #[test]
    fn positivity_examples() {
        assert!(positivity_check(5, 2).unwrap());
        assert!(positivity_check(2, 1).unwrap());
        assert!(positivity_check(3, 2).unwrap());
        assert!(positivity_check(1, 1).is_err());
        assert!(positivity_check(1, 2).is_err());
    }

    #[test]
    fn three_halves_flat_is_positive_pair() {
        // hand value (q^3+q^2+1)/(q^2+1)
        let flat = q_flat(3, 2).unwrap();
        assert_eq!(
            (flat.num.clone(), flat.den.clone()),
            pair("q^3+q^2+1", "q^2+1")
        );
    }

    #[test]
    fn q_integers() {
        assert!(q_integer(0).is_zero());
        assert!(q_integer(1).is_one());
        assert_eq!(q_integer(3), parse_q("1+q+q^2").unwrap());
        assert_eq!(q_integer(-1), parse_q("-1/q").unwrap());
        // recursion [n+1] = q [n] + 1 on both sides of zero
        let q = RatFuncQ::var();
        for n in -6..=6 {
            let lhs = q_integer(n + 1);
            let rhs = &(&q * &q_integer(n)) + &RatFuncQ::one();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn sharp_satisfies_translation_recursion() {
        // [n+1]^sharp = q [n]^sharp + 1
        let q = RatFuncQ::var();
        for n in 0..=20 {
            let cur = match q_sharp(n, 1).unwrap().point() {
                ProjPoint::Finite(v) => v,
                _ => unreachable!(),
            };
            let next = match q_sharp(n + 1, 1).unwrap().point() {
                ProjPoint::Finite(v) => v,
                _ => unreachable!(),
            };
            assert_eq!(next, &(&q * &cur) + &RatFuncQ::one());
        }
    }
}
