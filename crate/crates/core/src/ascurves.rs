//! The Artin–Schreier tower `C -> H -> P^1` given by
//! `r^2 + r = A(t)` and `s^2 + s = r A(t) + B(t)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::binfield::{FieldCtx, FieldElt};
use crate::error::{Error, Result};
use crate::polyalg::{in_wp_image, normalize_pair, Normalized, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremality {
    Maximal,
    Minimal,
    Neither,
}

/// `C: r^2 + r = A, s^2 + s = rA + B` over `ctx`.
#[derive(Clone, Debug)]
pub struct TowerCurve {
    ctx: FieldCtx,
    a: UniPoly,
    b: UniPoly,
}

impl TowerCurve {
    /// Rejects `A` in the image of `f -> f^2 + f`, where `H` would split.
    pub fn new(ctx: &FieldCtx, a: UniPoly, b: UniPoly) -> Result<Self> {
        for p in [&a, &b] {
            if p.modulus() != ctx.modulus() {
                return Err(Error::FieldMismatch(ctx.modulus(), p.modulus()));
            }
        }
        if in_wp_image(&a) {
            return Err(Error::Precondition(format!(
                "A = {a} is of the form f^2 + f, so r^2 + r = A is not a field extension"
            )));
        }
        Ok(TowerCurve { ctx: ctx.clone(), a, b })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn a(&self) -> &UniPoly {
        &self.a
    }

    pub fn b(&self) -> &UniPoly {
        &self.b
    }

    pub fn is_normalized(&self) -> bool {
        self.a.has_odd_degree() && (self.b.has_odd_degree() || self.b.is_constant())
    }

    /// The isomorphic tower with odd-degree data, and the substitution used.
    pub fn normalized(&self) -> (TowerCurve, Normalized) {
        let n = normalize_pair(&self.a, &self.b);
        let tower = TowerCurve { ctx: self.ctx.clone(), a: n.a.clone(), b: n.b.clone() };
        (tower, n)
    }

    pub fn genus_h(&self) -> Result<u64> {
        genus_h(&self.a)
    }

    pub fn genus_c(&self) -> Result<u64> {
        genus_c(&self.a, &self.b)
    }
}

/// `(deg A - 1) / 2` for odd `deg A`.
pub fn genus_h_from_degree(deg_a: usize) -> Result<u64> {
    if deg_a.is_multiple_of(2) {
        return Err(Error::Parity(format!("deg A = {deg_a} must be odd")));
    }
    Ok((deg_a as u64 - 1) / 2)
}

/// `max{(5a - 3)/2, (2b + a - 3)/2}` for odd `a = deg A` and odd `b = deg B`.
///
/// `deg_b = None` stands for a constant `B`: then `rA + B` has pole order
/// `3a` at the unique point above infinity and the first term wins.
pub fn genus_c_from_degrees(deg_a: usize, deg_b: Option<usize>) -> Result<u64> {
    genus_h_from_degree(deg_a)?;
    let a = deg_a as u64;
    let from_a = (5 * a - 3) / 2;
    match deg_b {
        None => Ok(from_a),
        Some(b) if b % 2 == 1 => Ok(from_a.max((2 * b as u64 + a - 3) / 2)),
        Some(b) => Err(Error::Parity(format!("deg B = {b} must be odd"))),
    }
}

/// Genus of `r^2 + r = A`, after removing even leading terms of `A`.
pub fn genus_h(a: &UniPoly) -> Result<u64> {
    let (red, _) = crate::polyalg::wp_reduce(a);
    match red.degree() {
        Some(d) if d > 0 => genus_h_from_degree(d),
        _ => Err(Error::Parity(format!("A = {a} reduces to a constant"))),
    }
}

/// Genus of the tower for odd-degree `A` and odd-degree or constant `B`.
pub fn genus_c(a: &UniPoly, b: &UniPoly) -> Result<u64> {
    let deg_a = match a.degree() {
        Some(d) if d > 0 => d,
        _ => return Err(Error::Parity(format!("A = {a} is constant"))),
    };
    let deg_b = b.degree().filter(|&d| d > 0);
    genus_c_from_degrees(deg_a, deg_b)
}

/// Moves a polynomial from `from` into `to`, which must contain `from`.
/// Binary polynomials are lifted directly; others go through the standard
/// embedding.
pub fn base_change(p: &UniPoly, from: &FieldCtx, to: &FieldCtx) -> Result<UniPoly> {
    if from == to {
        return Ok(p.clone());
    }
    if !to.degree().is_multiple_of(from.degree()) {
        return Err(Error::NoEmbedding { small: from.degree(), big: to.degree() });
    }
    if p.is_binary() {
        return p.lift_binary(to);
    }
    p.map_coeffs(&from.embedding_into(to)?, to)
}

fn par_sum(field: &FieldCtx, f: impl Fn(FieldElt) -> u64 + Sync) -> u64 {
    let zero = field.zero();
    (0..field.size() as u32).into_par_iter().map(|b| f(zero.with_bits(b))).sum()
}

/// Affine points of the tower over `field`, for any `A, B` over `field`.
pub fn count_affine_tower(a: &UniPoly, b: &UniPoly, field: &FieldCtx) -> Result<u64> {
    for p in [a, b] {
        if p.modulus() != field.modulus() {
            return Err(Error::FieldMismatch(field.modulus(), p.modulus()));
        }
    }
    Ok(par_sum(field, |x| {
        let ax = a.eval(x);
        let Some((r0, r1)) = field.solve_wp(ax) else {
            return 0;
        };
        let bx = b.eval(x);
        [r0, r1].iter().map(|&r| if field.trace(r * ax + bx) == 0 { 2 } else { 0 }).sum()
    }))
}

/// `#C(field)` for a normalized tower, `field` an extension of its base.
///
/// The point above `t = infinity` is unique (totally ramified) when
/// `deg A` is odd and `deg B` is odd or `B` is constant.
pub fn count_points_tower(tower: &TowerCurve, field: &FieldCtx) -> Result<u64> {
    if !tower.is_normalized() {
        return Err(Error::Parity("tower must have odd deg A and odd deg B (or constant B)".into()));
    }
    let a = base_change(&tower.a, &tower.ctx, field)?;
    let b = base_change(&tower.b, &tower.ctx, field)?;
    Ok(count_affine_tower(&a, &b, field)? + 1)
}

/// `#H(field)` for `H: r^2 + r = A` with odd `deg A` over `field`.
pub fn count_points_h(a: &UniPoly, field: &FieldCtx) -> Result<u64> {
    if a.modulus() != field.modulus() {
        return Err(Error::FieldMismatch(field.modulus(), a.modulus()));
    }
    if !a.has_odd_degree() {
        return Err(Error::Parity(format!("deg A must be odd, A = {a}")));
    }
    Ok(par_sum(field, |x| if field.trace(a.eval(x)) == 0 { 2 } else { 0 }) + 1)
}

/// Compares a count over `F_Q` with the Weil bounds `Q + 1 +- 2g sqrt(Q)`.
/// Genus 0 is reported as maximal.
pub fn classify_extremal(count: u64, genus: u64, q_big: u64) -> Result<Extremality> {
    let root = q_big.isqrt();
    if root * root != q_big {
        return Err(Error::NotSquare(q_big));
    }
    let mid = q_big as i128 + 1;
    let spread = 2 * genus as i128 * root as i128;
    Ok(match count as i128 {
        c if c == mid + spread => Extremality::Maximal,
        c if c == mid - spread => Extremality::Minimal,
        _ => Extremality::Neither,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveStats {
    pub genus: u64,
    pub count: u64,
    /// `None` when the field order is not a square.
    pub classification: Option<Extremality>,
}

impl CurveStats {
    pub fn new(genus: u64, count: u64, field: &FieldCtx) -> Self {
        let classification = classify_extremal(count, genus, field.size()).ok();
        CurveStats { genus, count, classification }
    }

    pub fn within_weil_bound(&self, q_big: u64) -> bool {
        let dev = (self.count as f64 - (q_big as f64 + 1.0)).abs();
        dev <= 2.0 * self.genus as f64 * (q_big as f64).sqrt() + 1e-9
    }
}

/// Genera and counts of `H` and `C` after normalization, over `field`.
#[derive(Clone, Debug, Serialize)]
pub struct TowerStats {
    pub field: String,
    #[serde(serialize_with = "crate::polyalg::wp::ser_poly")]
    pub a_normalized: UniPoly,
    #[serde(serialize_with = "crate::polyalg::wp::ser_poly")]
    pub b_normalized: UniPoly,
    pub genus_h: u64,
    pub genus_c: u64,
    pub count_h: u64,
    pub count_c: u64,
    pub classification_h: Option<Extremality>,
    pub classification: Option<Extremality>,
}

pub fn tower_stats(tower: &TowerCurve, field: &FieldCtx) -> Result<TowerStats> {
    let (norm, _) = tower.normalized();
    let genus_h = norm.genus_h()?;
    let genus_c = norm.genus_c()?;
    let count_c = count_points_tower(&norm, field)?;
    let count_h = count_points_h(&base_change(norm.a(), norm.ctx(), field)?, field)?;
    Ok(TowerStats {
        field: field.spec_string(),
        a_normalized: norm.a.clone(),
        b_normalized: norm.b.clone(),
        genus_h,
        genus_c,
        count_h,
        count_c,
        classification_h: CurveStats::new(genus_h, count_h, field).classification,
        classification: CurveStats::new(genus_c, count_c, field).classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{lpoly_from_counts, maximal_lpoly, wp};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(m: u32) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    fn poly(f: &FieldCtx, s: &str) -> UniPoly {
        UniPoly::parse(f, s).unwrap()
    }

    /// Counts `y^2 + y = f(x)` by trying every pair.
    fn pairs_count(f: &FieldCtx, g: &UniPoly) -> u64 {
        let mut n = 1;
        for x in f.elements() {
            let v = g.eval(x);
            n += f.elements().filter(|&y| y * y + y == v).count() as u64;
        }
        n
    }

    #[test]
    fn genus_examples() {
        let f = gf(1);
        assert_eq!(genus_h(&UniPoly::t(&f)).unwrap(), 0);
        assert_eq!(genus_h(&UniPoly::monomial(f.one(), 17)).unwrap(), 8);
        assert_eq!(genus_h(&UniPoly::monomial(f.one(), 3)).unwrap(), 1);
        assert_eq!(genus_h(&poly(&f, "0,0,1,1")).unwrap(), 1);
        assert!(matches!(genus_h(&poly(&f, "1")), Err(Error::Parity(_))));
        assert!(matches!(genus_h(&poly(&f, "0,1,1")), Err(Error::Parity(_))));
        assert_eq!(genus_c_from_degrees(1, Some(3)).unwrap(), 2);
        assert_eq!(genus_c_from_degrees(1, Some(1)).unwrap(), 1);
        assert_eq!(genus_c_from_degrees(3, Some(1)).unwrap(), 6);
        assert_eq!(genus_c_from_degrees(1, None).unwrap(), 1);
        assert!(matches!(genus_c_from_degrees(2, Some(1)), Err(Error::Parity(_))));
        assert!(matches!(genus_c_from_degrees(1, Some(4)), Err(Error::Parity(_))));
    }

    #[test]
    fn genus_h_matches_l_polynomial() {
        // r^2 + r = t^3 over F_16 and F_256, genus 1.
        let f16 = gf(4);
        let f256 = gf(8);
        let n1 = count_points_h(&UniPoly::monomial(f16.one(), 3), &f16).unwrap();
        let n2 = count_points_h(&UniPoly::monomial(f256.one(), 3), &f256).unwrap();
        let l = lpoly_from_counts(&[n1], 1, 16).unwrap();
        assert_eq!(l.predicted_counts(2)[1], n2 as i128);
        assert_eq!(l.genus, genus_h(&UniPoly::monomial(f16.one(), 3)).unwrap() as usize);
    }

    #[test]
    fn hermitian_h_counts() {
        for (m, q, expect) in [(4u32, 4usize, 33u64), (6, 8, 129)] {
            let f = gf(m);
            let a = UniPoly::monomial(f.one(), q + 1);
            assert_eq!(count_points_h(&a, &f).unwrap(), expect);
            assert_eq!(pairs_count(&f, &a), expect);
        }
    }

    #[test]
    fn rational_h_tower_matches_plane_model() {
        // With A = t, r parametrizes H (t = r^2 + r), so C is the plane curve
        // s^2 + s = r (r^2 + r) + B(r^2 + r).
        let f = gf(4);
        for b in ["0,0,0,1", "0,1", "0,3,0,7,0,1", "5,0,0,2,0,0,0,1"] {
            let b = poly(&f, b);
            let tower = TowerCurve::new(&f, UniPoly::t(&f), b.clone()).unwrap();
            let t_of_r = poly(&f, "0,1,1");
            let plane = &(&UniPoly::t(&f) * &t_of_r) + &b.compose(&t_of_r).unwrap();
            assert_eq!(count_points_tower(&tower, &f).unwrap(), pairs_count(&f, &plane));
        }
    }

    #[test]
    fn h_counts() {
        assert_eq!(count_points_h(&UniPoly::t(&gf(2)), &gf(2)).unwrap(), 5);
        for m in [1u32, 3, 5, 8] {
            assert_eq!(count_points_h(&UniPoly::t(&gf(m)), &gf(m)).unwrap(), (1 << m) + 1);
        }
        // y^2 + y = x^3 has L = 1 + 2T^2 over GF(2): maximal over F_4,
        // minimal over F_16. Adding x gives E, maximal over F_16.
        let t3 = |f: &FieldCtx| UniPoly::monomial(f.one(), 3);
        let f = gf(4);
        assert_eq!(count_points_h(&t3(&gf(2)), &gf(2)).unwrap(), 9);
        assert_eq!(count_points_h(&t3(&f), &f).unwrap(), 9);
        assert_eq!(pairs_count(&f, &t3(&f)), 9);
        assert_eq!(classify_extremal(9, 1, 16).unwrap(), Extremality::Minimal);
        assert_eq!(count_points_h(&poly(&f, "0,1,0,1"), &f).unwrap(), 25);
        assert!(count_points_h(&poly(&f, "1,0,1"), &f).is_err());
    }

    #[test]
    fn rejects_degenerate_towers() {
        let f = gf(2);
        assert!(TowerCurve::new(&f, poly(&f, "1"), UniPoly::t(&f)).is_err());
        assert!(TowerCurve::new(&f, poly(&f, "0,1,1"), UniPoly::t(&f)).is_err());
        // Tr(2) = 1 in GF(4): a constant extension, allowed but not normalized.
        let t = TowerCurve::new(&f, poly(&f, "2"), UniPoly::t(&f)).unwrap();
        assert!(matches!(count_points_tower(&t, &f), Err(Error::Parity(_))));
        let even = TowerCurve::new(&f, poly(&f, "0,1,1,1"), poly(&f, "0,0,1")).unwrap();
        assert!(count_points_tower(&even, &f).is_err());
        assert!(count_points_tower(&even.normalized().0, &f).is_ok());
    }

    #[test]
    fn classification() {
        assert_eq!(classify_extremal(33, 2, 16).unwrap(), Extremality::Maximal);
        assert_eq!(classify_extremal(17, 0, 16).unwrap(), Extremality::Maximal);
        assert_eq!(classify_extremal(25, 1, 16).unwrap(), Extremality::Maximal);
        assert_eq!(classify_extremal(225, 1, 256).unwrap(), Extremality::Minimal);
        assert_eq!(classify_extremal(20, 1, 16).unwrap(), Extremality::Neither);
        assert_eq!(classify_extremal(9, 0, 8).unwrap_err(), Error::NotSquare(8));
    }

    #[test]
    fn tower_counts_over_extensions() {
        // Base change through the embedding agrees with building over the big field.
        let f4 = gf(2);
        let f16 = gf(4);
        let a = poly(&f4, "0,2,0,1");
        let b = poly(&f4, "3,1,0,2,0,1");
        let small = TowerCurve::new(&f4, a.clone(), b.clone()).unwrap();
        let emb = f4.embedding_into(&f16).unwrap();
        let big = TowerCurve::new(&f16, a.map_coeffs(&emb, &f16).unwrap(), b.map_coeffs(&emb, &f16).unwrap()).unwrap();
        assert_eq!(count_points_tower(&small, &f16).unwrap(), count_points_tower(&big, &f16).unwrap());
    }

    #[test]
    fn l_polynomial_predicts_higher_counts() {
        // Genus-2 towers over GF(2): counts over F_4, F_16 fix L, which must
        // predict the counts over F_64; a maximal one must give (1 + 4T)^4 over F_16.
        let f = gf(1);
        for b in ["0,0,0,1", "0,1,0,1", "1,1,0,1"] {
            let tower = TowerCurve::new(&f, UniPoly::t(&f), poly(&f, b)).unwrap();
            let g = tower.genus_c().unwrap() as usize;
            let counts: Vec<u64> = [2u32, 4, 6].iter().map(|&k| count_points_tower(&tower, &gf(k)).unwrap()).collect();
            let l = lpoly_from_counts(&counts[..g], g, 4).unwrap();
            assert_eq!(l.predicted_counts(3)[2], counts[2] as i128);
            let over16 = lpoly_from_counts(&[counts[1], count_points_tower(&tower, &gf(8)).unwrap()], g, 16).unwrap();
            if classify_extremal(counts[1], g as u64, 16).unwrap() == Extremality::Maximal {
                assert_eq!(over16, maximal_lpoly(g, 4));
            }
        }
    }

    fn random_poly(rng: &mut ChaCha8Rng, f: &FieldCtx, deg: usize) -> UniPoly {
        let mut bits: Vec<u32> = (0..=deg).map(|_| rng.gen_range(0..f.size() as u32)).collect();
        if bits[deg] == 0 {
            bits[deg] = 1;
        }
        UniPoly::from_bits(f, &bits).unwrap()
    }

    #[test]
    fn weil_bound_on_random_towers() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [2u32, 4] {
            let base = gf(m);
            for _ in 0..20 {
                let da = 2 * rng.gen_range(0..3) + 1;
                let db = 2 * rng.gen_range(0..4) + 1;
                let t =
                    TowerCurve::new(&base, random_poly(&mut rng, &base, da), random_poly(&mut rng, &base, db)).unwrap();
                for big in [m, 2 * m].into_iter().filter(|&k| k <= 12) {
                    let field = gf(big);
                    let stats = CurveStats::new(t.genus_c().unwrap(), count_points_tower(&t, &field).unwrap(), &field);
                    assert!(stats.within_weil_bound(field.size()), "{stats:?} over {field:?}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn change_of_variables_preserves_counts(
            da in 0usize..3,
            db in 0usize..3,
            a_bits in proptest::collection::vec(0u32..4, 6),
            b_bits in proptest::collection::vec(0u32..4, 6),
            c_bits in proptest::collection::vec(0u32..4, 0..4),
            d_bits in proptest::collection::vec(0u32..4, 0..4),
        ) {
            let f = gf(2);
            let f16 = gf(4);
            let odd = |bits: &[u32], k: usize| {
                let mut v = bits[..=2 * k + 1].to_vec();
                v[2 * k + 1] = 1;
                UniPoly::from_bits(&f, &v).unwrap()
            };
            let a = odd(&a_bits, da);
            let b = odd(&b_bits, db);
            let c = UniPoly::from_bits(&f, &c_bits).unwrap();
            let d = UniPoly::from_bits(&f, &d_bits).unwrap();
            let a2 = &a + &wp(&c);
            let c2 = c.square();
            let b2 = &(&(&b + &(&wp(&c) * &a2)) + &(&c2 * &c)) + &(&c2 + &wp(&d));
            let emb = f.embedding_into(&f16).unwrap();
            let lift = |p: &UniPoly| p.map_coeffs(&emb, &f16).unwrap();
            prop_assert_eq!(
                count_affine_tower(&lift(&a), &lift(&b), &f16).unwrap(),
                count_affine_tower(&lift(&a2), &lift(&b2), &f16).unwrap()
            );
            let orig = TowerCurve::new(&f, a, b).unwrap();
            let moved = TowerCurve::new(&f, a2, b2).unwrap().normalized().0;
            prop_assert_eq!(count_points_tower(&orig, &f16).unwrap(), count_points_tower(&moved, &f16).unwrap());
        }
    }
}
