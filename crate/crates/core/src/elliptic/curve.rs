use rayon::prelude::*;

use crate::binfield::{FieldCtx, FieldElt};
use crate::error::{Error, Result};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over a binary field.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve {
    ctx: FieldCtx,
    pub a1: FieldElt,
    pub a2: FieldElt,
    pub a3: FieldElt,
    pub a4: FieldElt,
    pub a6: FieldElt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EPoint {
    Infinity,
    Affine(FieldElt, FieldElt),
}

/// `b2, b4, b6, b8` reduced mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BInvariants {
    pub b2: FieldElt,
    pub b4: FieldElt,
    pub b6: FieldElt,
    pub b8: FieldElt,
}

impl WeierstrassCurve {
    pub fn new(ctx: &FieldCtx, [a1, a2, a3, a4, a6]: [FieldElt; 5]) -> Result<Self> {
        for a in [a1, a2, a3, a4, a6] {
            ctx.check(a)?;
        }
        Ok(WeierstrassCurve { ctx: ctx.clone(), a1, a2, a3, a4, a6 })
    }

    /// `y^2 + y = x^3 + a2 x^2 + a4 x + a6`.
    pub fn short(ctx: &FieldCtx, a2: FieldElt, a4: FieldElt, a6: FieldElt) -> Result<Self> {
        Self::new(ctx, [ctx.zero(), a2, ctx.one(), a4, a6])
    }

    /// `E: y^2 + y = x^3 + x`.
    pub fn e(ctx: &FieldCtx) -> Self {
        Self::short(ctx, ctx.zero(), ctx.one(), ctx.zero()).expect("constants lie in the field")
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn is_e(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_one() && self.a4.is_one() && self.a6.is_zero()
    }

    pub fn b_invariants(&self) -> BInvariants {
        let (a1, a2, a3, a4, a6) = (self.a1, self.a2, self.a3, self.a4, self.a6);
        BInvariants { b2: a1 * a1, b4: a1 * a3, b6: a3 * a3, b8: a1 * a1 * a6 + a1 * a3 * a4 + a2 * a3 * a3 + a4 * a4 }
    }

    /// `-b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6` in characteristic 2.
    pub fn discriminant(&self) -> FieldElt {
        let b = self.b_invariants();
        b.b2 * b.b2 * b.b8 + b.b6 * b.b6 + b.b2 * b.b4 * b.b6
    }

    pub fn is_smooth(&self) -> bool {
        !self.discriminant().is_zero()
    }

    /// `c4^3 / Δ` with `c4 = b2^2`.
    pub fn j_invariant(&self) -> Result<FieldElt> {
        let c4 = self.b_invariants().b2.square();
        (c4 * c4 * c4).try_div(self.discriminant())
    }

    /// `lhs - rhs` of the equation at `(x, y)`.
    fn residual(&self, x: FieldElt, y: FieldElt) -> FieldElt {
        y * y + self.a1 * x * y + self.a3 * y + x * x * x + self.a2 * x * x + self.a4 * x + self.a6
    }

    pub fn contains(&self, p: &EPoint) -> bool {
        match *p {
            EPoint::Infinity => true,
            EPoint::Affine(x, y) => self.ctx.contains(x) && self.ctx.contains(y) && self.residual(x, y).is_zero(),
        }
    }

    pub fn point(&self, x: FieldElt, y: FieldElt) -> Result<EPoint> {
        let p = EPoint::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    fn check(&self, p: &EPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// `(x, y) -> (x, y + a1 x + a3)`.
    pub fn neg(&self, p: &EPoint) -> EPoint {
        match *p {
            EPoint::Infinity => EPoint::Infinity,
            EPoint::Affine(x, y) => EPoint::Affine(x, y + self.a1 * x + self.a3),
        }
    }

    /// Chord and tangent addition.
    pub fn add(&self, p: &EPoint, q: &EPoint) -> Result<EPoint> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &EPoint, q: &EPoint) -> EPoint {
        let (x1, y1, x2, y2) = match (*p, *q) {
            (EPoint::Infinity, _) => return *q,
            (_, EPoint::Infinity) => return *p,
            (EPoint::Affine(x1, y1), EPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 != x2 {
            let d = (x2 + x1).inv().expect("x1 != x2");
            ((y2 + y1) * d, (y1 * x2 + y2 * x1) * d)
        } else {
            let den = self.a1 * x1 + self.a3;
            if y1 != y2 || den.is_zero() {
                // q = -p, or p is 2-torsion and q = p
                return EPoint::Infinity;
            }
            let d = den.inv().expect("checked nonzero");
            ((x1 * x1 + self.a4 + self.a1 * y1) * d, (x1 * x1 * x1 + self.a4 * x1 + self.a3 * y1) * d)
        };
        let x3 = lambda * lambda + self.a1 * lambda + self.a2 + x1 + x2;
        let y3 = (lambda + self.a1) * x3 + nu + self.a3;
        EPoint::Affine(x3, y3)
    }

    pub fn scalar_mul(&self, k: u64, p: &EPoint) -> Result<EPoint> {
        self.check(p)?;
        let mut acc = EPoint::Infinity;
        let mut base = *p;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// The `y` values over a given `x`.
    pub fn ys_over(&self, x: FieldElt) -> Vec<FieldElt> {
        let lin = self.a1 * x + self.a3;
        let rhs = x * x * x + self.a2 * x * x + self.a4 * x + self.a6;
        if lin.is_zero() {
            return vec![rhs.sqrt()];
        }
        // y = lin * z with z^2 + z = rhs / lin^2
        let inv = lin.inv().expect("checked nonzero");
        match self.ctx.solve_wp(rhs * inv * inv) {
            Some((z0, z1)) => vec![lin * z0, lin * z1],
            None => Vec::new(),
        }
    }

    /// All points, infinity first, then affine points by increasing `x`.
    pub fn points(&self) -> Vec<EPoint> {
        let mut pts = vec![EPoint::Infinity];
        for x in self.ctx.elements() {
            pts.extend(self.ys_over(x).into_iter().map(|y| EPoint::Affine(x, y)));
        }
        pts
    }

    pub fn count_points(&self) -> u64 {
        let zero = self.ctx.zero();
        1 + (0..self.ctx.size() as u32)
            .into_par_iter()
            .map(|b| self.ys_over(zero.with_bits(b)).len() as u64)
            .sum::<u64>()
    }
}

/// `#E(F_{2^{2n}})`: `2^{2n} + 1` for odd `n`, `(2^n - 1)^2` for
/// `n = 0 mod 4`, `(2^n + 1)^2` for `n = 2 mod 4`.
pub fn e_point_count_formula(n: u32) -> Result<u64> {
    if n == 0 || n > 31 {
        return Err(Error::Precondition(format!("n = {n} outside 1..=31")));
    }
    let p = 1u64 << n;
    Ok(match n % 4 {
        0 => (p - 1) * (p - 1),
        2 => (p + 1) * (p + 1),
        _ => p * p + 1,
    })
}

/// `#E(field)` by the trace criterion: `x` contributes two points iff
/// `Tr(x^3 + x) = 0`.
pub fn e_count_bruteforce(field: &FieldCtx) -> u64 {
    let zero = field.zero();
    1 + (0..field.size() as u32)
        .into_par_iter()
        .map(|b| {
            let x = zero.with_bits(b);
            if field.trace(x * x * x + x) == 0 {
                2
            } else {
                0
            }
        })
        .sum::<u64>()
}

fn check_on_e(field: &FieldCtx, p: &EPoint) -> Result<()> {
    if WeierstrassCurve::e(field).contains(p) {
        Ok(())
    } else {
        Err(Error::NotOnCurve)
    }
}

/// `ι(x, y) = (x + 1, y + x)` on `E`.
pub fn iota(field: &FieldCtx, p: &EPoint) -> Result<EPoint> {
    check_on_e(field, p)?;
    Ok(match *p {
        EPoint::Infinity => EPoint::Infinity,
        EPoint::Affine(x, y) => EPoint::Affine(x + field.one(), y + x),
    })
}

/// The 2-power Frobenius `(x, y) -> (x^2, y^2)` on `E`.
pub fn frobenius(field: &FieldCtx, p: &EPoint) -> Result<EPoint> {
    check_on_e(field, p)?;
    Ok(match *p {
        EPoint::Infinity => EPoint::Infinity,
        EPoint::Affine(x, y) => EPoint::Affine(x.square(), y.square()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(m: u32) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    fn pair_count(f: &FieldCtx) -> u64 {
        let e = WeierstrassCurve::e(f);
        let mut n = 1;
        for x in f.elements() {
            for y in f.elements() {
                if e.contains(&EPoint::Affine(x, y)) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn formula_values() {
        let got: Vec<u64> = (1..=6).map(|n| e_point_count_formula(n).unwrap()).collect();
        assert_eq!(got, vec![5, 25, 65, 225, 1025, 4225]);
        assert!(e_point_count_formula(0).is_err());
    }

    #[test]
    fn brute_force_matches_pairs() {
        for m in 1..=6 {
            let f = gf(m);
            assert_eq!(e_count_bruteforce(&f), pair_count(&f), "m = {m}");
            assert_eq!(WeierstrassCurve::e(&f).count_points(), pair_count(&f));
        }
        assert_eq!(e_count_bruteforce(&gf(1)), 5);
        assert_eq!(e_count_bruteforce(&gf(2)), 5);
        assert_eq!(e_count_bruteforce(&gf(4)), 25);
    }

    #[test]
    fn e_invariants() {
        let e = WeierstrassCurve::e(&gf(3));
        assert!(e.discriminant().is_one());
        assert!(e.j_invariant().unwrap().is_zero());
    }

    #[test]
    fn general_curve_points_and_lagrange() {
        // An ordinary curve with a1 = 1 exercises the a1 terms.
        let f = gf(4);
        let g = f.generator();
        let c = WeierstrassCurve::new(&f, [f.one(), g, f.zero(), f.zero(), g * g * g]).unwrap();
        assert!(c.is_smooth());
        let pts = c.points();
        assert_eq!(pts.len() as u64, c.count_points());
        assert!(pts.iter().all(|p| c.contains(p)));
        let n = pts.len() as u64;
        for p in &pts {
            assert_eq!(c.scalar_mul(n, p).unwrap(), EPoint::Infinity);
            assert_eq!(c.add(p, &c.neg(p)).unwrap(), EPoint::Infinity);
        }
    }

    #[test]
    fn lagrange_on_e() {
        let f = gf(4);
        let e = WeierstrassCurve::e(&f);
        let n = e_count_bruteforce(&f);
        for p in e.points() {
            assert_eq!(e.scalar_mul(n, &p).unwrap(), EPoint::Infinity);
        }
    }

    #[test]
    fn iota_and_frobenius() {
        for m in 1..=8 {
            let f = gf(m);
            let e = WeierstrassCurve::e(&f);
            for p in e.points() {
                let ip = iota(&f, &p).unwrap();
                assert!(e.contains(&ip));
                assert_eq!(iota(&f, &ip).unwrap(), e.neg(&p));
                let fp = frobenius(&f, &p).unwrap();
                assert_eq!(fp, e.add(&ip, &e.neg(&p)).unwrap(), "m = {m}");
            }
        }
        assert_eq!(iota(&gf(2), &EPoint::Infinity).unwrap(), EPoint::Infinity);
        assert_eq!(iota(&gf(2), &EPoint::Affine(gf(2).zero(), gf(2).generator())), Err(Error::NotOnCurve));
    }

    #[test]
    fn group_axioms_fuzzed() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [4u32, 6, 8] {
            let f = gf(m);
            let e = WeierstrassCurve::e(&f);
            let pts = e.points();
            for _ in 0..1000 {
                let [p, q, r] = [0; 3].map(|_| pts[rng.gen_range(0..pts.len())]);
                let lhs = e.add(&e.add(&p, &q).unwrap(), &r).unwrap();
                let rhs = e.add(&p, &e.add(&q, &r).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(e.add(&p, &q).unwrap(), e.add(&q, &p).unwrap());
                let ipq = iota(&f, &e.add(&p, &q).unwrap()).unwrap();
                assert_eq!(ipq, e.add(&iota(&f, &p).unwrap(), &iota(&f, &q).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn rejects_points_off_curve() {
        let f = gf(2);
        let e = WeierstrassCurve::e(&f);
        let bad = EPoint::Affine(f.zero(), f.generator());
        assert_eq!(e.add(&bad, &EPoint::Infinity), Err(Error::NotOnCurve));
        assert_eq!(e.scalar_mul(3, &bad), Err(Error::NotOnCurve));
        assert!(e.point(f.zero(), f.zero()).is_ok());
    }
}
