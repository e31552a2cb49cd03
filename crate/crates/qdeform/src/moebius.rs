//! Projective 2x2 matrices over the rational function field and their
//! action on the projective line and on function space.
//!
//! The named generators live here: the deformed translation `T_q`, the
//! deformed inversion `S_q`, the composite `U_q = T_q S_q T_q`, the
//! transition map `g_q`, and the braid matrices `sigma_1 = T_q`,
//! `sigma_2 = S_q T_q S_q`. Matrices are not normalized to determinant 1;
//! group-level identities use projective equality (vanishing minors of the
//! stacked 2x4 matrix), while identities with an explicit scalar factor are
//! checked entrywise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::report::Check;
use crate::rings::{PolyQ, PolyX, RatFuncQ, RatFuncQX};

/// Plain 2x2 matrix over the rational function field, without the
/// nondegeneracy requirement. Useful for sums and anti-commutators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    pub a: RatFuncQ,
    pub b: RatFuncQ,
    pub c: RatFuncQ,
    pub d: RatFuncQ,
}

impl Mat2 {
    pub fn new(a: RatFuncQ, b: RatFuncQ, c: RatFuncQ, d: RatFuncQ) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn zero() -> Self {
        let z = RatFuncQ::zero;
        Mat2::new(z(), z(), z(), z())
    }

    pub fn identity() -> Self {
        Mat2::new(
            RatFuncQ::one(),
            RatFuncQ::zero(),
            RatFuncQ::zero(),
            RatFuncQ::one(),
        )
    }

    pub fn det(&self) -> RatFuncQ {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> RatFuncQ {
        &self.a + &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn scalar_mul(&self, s: &RatFuncQ) -> Mat2 {
        Mat2::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }

    pub fn entries(&self) -> [&RatFuncQ; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        )
    }
}

impl Add for &Mat2 {
    type Output = Mat2;
    fn add(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a + &rhs.a,
            &self.b + &rhs.b,
            &self.c + &rhs.c,
            &self.d + &rhs.d,
        )
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a - &rhs.a,
            &self.b - &rhs.b,
            &self.c - &rhs.c,
            &self.d - &rhs.d,
        )
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Invertible 2x2 matrix acting on the projective line, compared
/// projectively.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjMap {
    mat: Mat2,
}

/// Point of the projective line over the rational function field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProjPoint {
    Finite(RatFuncQ),
    Infinity,
}

impl ProjPoint {
    pub fn from_int(n: i64) -> Self {
        ProjPoint::Finite(RatFuncQ::from_int(n))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(v) => write!(f, "{v}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl ProjMap {
    pub fn new(a: RatFuncQ, b: RatFuncQ, c: RatFuncQ, d: RatFuncQ) -> Result<Self, Error> {
        let mat = Mat2::new(a, b, c, d);
        if mat.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ProjMap { mat })
    }

    pub fn from_mat(mat: Mat2) -> Result<Self, Error> {
        if mat.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ProjMap { mat })
    }

    fn from_int_polys(a: &[i64], b: &[i64], c: &[i64], d: &[i64]) -> Self {
        let p = |cs: &[i64]| RatFuncQ::from_poly(PolyQ::from_int_coeffs(cs));
        ProjMap::new(p(a), p(b), p(c), p(d)).expect("generator is invertible")
    }

    pub fn identity() -> Self {
        ProjMap {
            mat: Mat2::identity(),
        }
    }

    /// Deformed translation `T_q(x) = qx + 1`, matrix `[[q, 1], [0, 1]]`.
    pub fn t_q() -> Self {
        Self::from_int_polys(&[0, 1], &[1], &[], &[1])
    }

    /// Deformed inversion `S_q(x) = -1/(qx)`, matrix `[[0, -1], [q, 0]]`.
    pub fn s_q() -> Self {
        Self::from_int_polys(&[], &[-1], &[0, 1], &[])
    }

    /// `U_q = T_q S_q T_q`.
    pub fn u_q() -> Self {
        let t = Self::t_q();
        let s = Self::s_q();
        &(&t * &s) * &t
    }

    /// Transition map `g_q(x) = (1+(x-1)q)/(1+(q-1)x)`,
    /// matrix `[[q, 1-q], [q-1, 1]]` of determinant `q^2 - q + 1`.
    pub fn g_q() -> Self {
        Self::from_int_polys(&[0, 1], &[1, -1], &[-1, 1], &[1])
    }

    /// First braid generator (same matrix as the deformed translation).
    pub fn sigma_1() -> Self {
        Self::t_q()
    }

    /// Second braid generator `[[1, 0], [-q, q]]`, projectively equal to
    /// `S_q T_q S_q`.
    pub fn sigma_2() -> Self {
        Self::from_int_polys(&[1], &[], &[0, -1], &[0, 1])
    }

    pub fn mat(&self) -> &Mat2 {
        &self.mat
    }

    pub fn entries(&self) -> [&RatFuncQ; 4] {
        self.mat.entries()
    }

    pub fn det(&self) -> RatFuncQ {
        self.mat.det()
    }

    /// Adjugate `[[d, -b], [-c, a]]`; the inverse up to the determinant.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(
            self.mat.d.clone(),
            -&self.mat.b,
            -&self.mat.c,
            self.mat.a.clone(),
        )
    }

    /// Matrix of the multiplicative reciprocal `x -> 1/f(x)`: the rows of
    /// the matrix of `f`, swapped.
    pub fn reciprocal(&self) -> ProjMap {
        ProjMap {
            mat: Mat2::new(
                self.mat.c.clone(),
                self.mat.d.clone(),
                self.mat.a.clone(),
                self.mat.b.clone(),
            ),
        }
    }

    pub fn inverse(&self) -> ProjMap {
        let det = self.det();
        let adj = self.adjugate();
        ProjMap {
            mat: adj.scalar_mul(&det.inv().expect("nonzero determinant")),
        }
    }

    pub fn pow(&self, e: i64) -> ProjMap {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = ProjMap::identity();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Substitute `q -> image` in every entry.
    pub fn substitute_q(&self, image: &RatFuncQ) -> Result<ProjMap, Error> {
        let m = Mat2::new(
            self.mat.a.substitute(image)?,
            self.mat.b.substitute(image)?,
            self.mat.c.substitute(image)?,
            self.mat.d.substitute(image)?,
        );
        ProjMap::from_mat(m)
    }

    /// The matrix with `q` replaced by `1/q`.
    pub fn at_inverse_q(&self) -> ProjMap {
        self.substitute_q(&RatFuncQ::var_pow(-1))
            .expect("substitution q -> 1/q preserves invertibility")
    }

    /// Moebius action on a projective point; poles map to infinity.
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let Mat2 { a, b, c, d } = &self.mat;
        match p {
            ProjPoint::Infinity => {
                if c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(a / c)
                }
            }
            ProjPoint::Finite(v) => {
                let den = &(c * v) + d;
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(&(&(a * v) + b) / &den)
                }
            }
        }
    }

    /// The associated Moebius transformation as a rational function of `x`.
    pub fn mobius_fn(&self) -> RatFuncQX {
        let lin = |p: &RatFuncQ, c: &RatFuncQ| PolyX::new(vec![c.clone(), p.clone()]);
        RatFuncQX::new(
            lin(&self.mat.a, &self.mat.b),
            lin(&self.mat.c, &self.mat.d),
        )
    }

    /// Precomposition action on functions: `f -> f ∘ A`.
    pub fn apply_fn(&self, f: &RatFuncQX) -> RatFuncQX {
        f.compose(&self.mobius_fn())
            .expect("composition with a Moebius map stays rational")
    }
}

impl Mul for &ProjMap {
    type Output = ProjMap;
    fn mul(self, rhs: &ProjMap) -> ProjMap {
        ProjMap {
            mat: &self.mat * &rhs.mat,
        }
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.mat.fmt(f)
    }
}

/// Projective equality: `A = λ B` for some nonzero scalar, tested by the
/// vanishing of all six 2x2 minors of the stacked 2x4 entry matrix.
pub fn projective_eq(lhs: &ProjMap, rhs: &ProjMap) -> bool {
    let a = lhs.entries();
    let b = rhs.entries();
    for i in 0..4 {
        for j in (i + 1)..4 {
            if &(a[i] * b[j]) - &(a[j] * b[i]) != RatFuncQ::zero() {
                return false;
            }
        }
    }
    true
}

/// Exact matrix identity suite for the generators.
pub fn identity_suite() -> Vec<Check> {
    let t = ProjMap::t_q();
    let s = ProjMap::s_q();
    let g = ProjMap::g_q();
    let id = ProjMap::identity();
    let q = RatFuncQ::var();
    let mut checks = Vec::new();

    let s2 = &s * &s;
    checks.push(Check::from_bool(
        "inversion_squares_to_identity",
        projective_eq(&s2, &id),
        || format!("S_q^2 = {s2}"),
    ));

    let st = &s * &t;
    let st3 = &(&st * &st) * &st;
    checks.push(Check::from_bool(
        "st_cubes_to_identity",
        projective_eq(&st3, &id),
        || format!("(S_q T_q)^3 = {st3}"),
    ));

    let s1 = ProjMap::sigma_1();
    let s2b = ProjMap::sigma_2();
    let left = &(&s1 * &s2b) * &s1;
    let right = &(&s2b * &s1) * &s2b;
    checks.push(Check::from_bool(
        "braid_relation",
        projective_eq(&left, &right),
        || format!("lhs = {left}, rhs = {right}"),
    ));

    // g_q T_q = q T_{1/q} g_q and g_q S_q = q S_{1/q} g_q, exactly entrywise.
    for (name, m) in [("translation", &t), ("inversion", &s)] {
        let lhs = (&g * m).mat().clone();
        let rhs = (&m.at_inverse_q() * &g).mat().scalar_mul(&q);
        let diff = &lhs - &rhs;
        checks.push(Check::from_bool(
            format!("gq_intertwines_{name}_exactly"),
            diff.is_zero(),
            || format!("difference = {diff}"),
        ));
    }

    // Entry (1,1) of g_q T_q is q^2.
    let gt = &g * &t;
    let expect = RatFuncQ::from_poly(PolyQ::from_int_coeffs(&[0, 0, 1]));
    checks.push(Check::from_bool(
        "gq_tq_top_left_entry",
        gt.mat().a == expect,
        || format!("entry = {}", gt.mat().a),
    ));

    let det_g = g.det();
    let expect_det = RatFuncQ::from_poly(PolyQ::from_int_coeffs(&[1, -1, 1]));
    checks.push(Check::from_bool(
        "transition_map_determinant",
        det_g == expect_det,
        || format!("det = {det_g}"),
    ));

    // g_q and the rotation T_q S_q share their fixed point, hence commute.
    let ts = &t * &s;
    let lhs = &g * &ts;
    let rhs = &ts * &g;
    checks.push(Check::from_bool(
        "gq_commutes_with_tqsq",
        projective_eq(&lhs, &rhs),
        || format!("lhs = {lhs}, rhs = {rhs}"),
    ));

    // The matrix of the multiplicative reciprocal 1/g_q anti-commutes
    // with the matrix of S_q.
    let rec = g.reciprocal();
    let anti = &(rec.mat() * s.mat()) + &(s.mat() * rec.mat());
    checks.push(Check::from_bool(
        "gq_reciprocal_anticommutes_with_sq",
        anti.is_zero(),
        || format!("anti-commutator = {anti}"),
    ));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::parse_q;

    #[test]
    fn generator_matrices() {
        let u = ProjMap::u_q();
        // U_q = [[q^2, 0], [q^2, q]]
        assert_eq!(u.mat().a, parse_q("q^2").unwrap());
        assert_eq!(u.mat().b, RatFuncQ::zero());
        assert_eq!(u.mat().c, parse_q("q^2").unwrap());
        assert_eq!(u.mat().d, parse_q("q").unwrap());
        // sigma_2 = [[1, 0], [-q, q]], projectively S_q T_q S_q
        let s2 = ProjMap::sigma_2();
        assert_eq!(s2.mat().a, RatFuncQ::one());
        assert_eq!(s2.mat().c, parse_q("-q").unwrap());
        let s = ProjMap::s_q();
        let sts = &(&s * &ProjMap::t_q()) * &s;
        assert!(projective_eq(&s2, &sts));
    }

    #[test]
    fn apply_handles_infinity() {
        let t = ProjMap::t_q();
        let s = ProjMap::s_q();
        assert!(t.apply(&ProjPoint::Infinity).is_infinity());
        assert_eq!(s.apply(&ProjPoint::Infinity), ProjPoint::from_int(0));
        // S_q(0) = infinity (pole maps to infinity)
        assert!(s.apply(&ProjPoint::from_int(0)).is_infinity());
    }

    #[test]
    fn transition_map_at_infinity() {
        // g_q(inf) = q/(q-1)
        let g = ProjMap::g_q();
        assert_eq!(
            g.apply(&ProjPoint::Infinity),
            ProjPoint::Finite(parse_q("q/(q-1)").unwrap())
        );
    }

    #[test]
    fn uq_maps_flat_seed_to_q() {
        // U_q(1/(1-q)) = q
        let u = ProjMap::u_q();
        let seed = ProjPoint::Finite(parse_q("1/(1-q)").unwrap());
        assert_eq!(u.apply(&seed), ProjPoint::Finite(parse_q("q").unwrap()));
    }

    #[test]
    fn translation_fixes_classical_boundary_points() {
        let t = ProjMap::t_q();
        assert!(t.apply(&ProjPoint::Infinity).is_infinity());
        let p = ProjPoint::Finite(parse_q("1/(1-q)").unwrap());
        assert_eq!(t.apply(&p), p);
    }

    #[test]
    fn projective_eq_is_scale_invariant() {
        let g = ProjMap::g_q();
        let scaled = ProjMap::from_mat(g.mat().scalar_mul(&parse_q("q^3-7").unwrap())).unwrap();
        assert!(projective_eq(&g, &scaled));
        assert!(!projective_eq(&ProjMap::t_q(), &ProjMap::s_q()));
    }

    #[test]
    fn precomposition_is_contravariant() {
        // f ∘ (A B) = (f ∘ A) ∘ B read through apply_fn(A·B, f) = apply_fn(B, apply_fn(A, f))
        let a = ProjMap::g_q();
        let b = ProjMap::u_q();
        let f = &RatFuncQX::x() * &RatFuncQX::x();
        let lhs = (&a * &b).apply_fn(&f);
        let rhs = b.apply_fn(&a.apply_fn(&f));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_agrees_with_mobius_fn() {
        use crate::rings::rat;
        let g = ProjMap::g_q();
        let func = g.mobius_fn();
        let q0 = rat(3, 2);
        for k in -5..5 {
            let x0 = rat(k, 7);
            let via_fn = func.eval(&q0, &x0).unwrap();
            let pt = match g
                .substitute_q(&RatFuncQ::from_rat(q0.clone()))
                .unwrap()
                .apply(&ProjPoint::Finite(RatFuncQ::from_rat(x0)))
            {
                ProjPoint::Finite(v) => v,
                ProjPoint::Infinity => panic!("unexpected pole"),
            };
            assert_eq!(RatFuncQ::from_rat(via_fn), pt);
        }
    }

    #[test]
    fn determinant_is_multiplicative() {
        let gens = [
            ProjMap::t_q(),
            ProjMap::s_q(),
            ProjMap::g_q(),
            ProjMap::u_q(),
        ];
        for a in &gens {
            for b in &gens {
                assert_eq!((a * b).det(), &a.det() * &b.det());
            }
        }
    }

    #[test]
    fn inverse_and_powers() {
        let g = ProjMap::g_q();
        assert!(projective_eq(&(&g * &g.inverse()), &ProjMap::identity()));
        let t = ProjMap::t_q();
        assert!(projective_eq(&t.pow(-3), &t.pow(3).inverse()));
    }

    #[test]
    fn full_identity_suite_passes() {
        let checks = identity_suite();
        for c in &checks {
            assert!(c.passed(), "{} failed: {}", c.name, c.witness);
        }
        assert_eq!(checks.len(), 9);
    }
}
