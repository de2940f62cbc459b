use serde::Serialize;

use super::curve::{e_point_count_formula, WeierstrassCurve};
use crate::ascurves::{self, classify_extremal, count_points_tower, Extremality, TowerCurve};
use crate::binfield::{FieldCtx, FieldElt};
use crate::error::{Error, Result};
use crate::polyalg::wp::ser_poly;
use crate::polyalg::{Gen, MultiPoly, RewriteSystem, UniPoly};

/// Largest field order over which the theorem's extremality hypotheses are
/// checked by enumeration.
pub const MAX_VERIFIED_ORDER: u64 = 1 << 12;

/// `E_{A,B}: η^2 + η = ξ^3 + A ξ^2 + (A + 1) ξ + A^2 + B` over `GF(2^m)(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistCurve {
    #[serde(serialize_with = "ser_poly")]
    pub a: UniPoly,
    #[serde(serialize_with = "ser_poly")]
    pub b: UniPoly,
    #[serde(serialize_with = "ser_poly")]
    pub a2: UniPoly,
    #[serde(serialize_with = "ser_poly")]
    pub a4: UniPoly,
    #[serde(serialize_with = "ser_poly")]
    pub a6: UniPoly,
}

/// Weierstrass invariants of a model with `a1 = 0`, `a3 = 1` and
/// polynomial `a2, a4, a6`, reduced mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicInvariants {
    pub b2: UniPoly,
    pub b4: UniPoly,
    pub b6: UniPoly,
    pub b8: UniPoly,
    pub discriminant: UniPoly,
    pub c4: UniPoly,
}

impl TwistCurve {
    pub fn a_coeffs(&self) -> [&UniPoly; 3] {
        [&self.a2, &self.a4, &self.a6]
    }

    /// With `a1 = 0, a3 = 1`: `b2 = b4 = 0`, `b6 = 1`, `b8 = a2 + a4^2`.
    pub fn invariants(&self) -> SymbolicInvariants {
        let zero = UniPoly::zero_mod(self.a.modulus());
        let one = UniPoly::constant(FieldElt::zero_of(self.a.modulus()).one_like());
        let (a1, a3) = (&zero, &one);
        let b2 = a1 * a1;
        let b4 = a1 * a3;
        let b6 = a3 * a3;
        let b8 = &(&(&(&b2 * &self.a6) + &(&b4 * &self.a4)) + &(&self.a2 * &b6)) + &self.a4.square();
        let discriminant = &(&(&b2 * &b2) * &b8) + &(&(&b6 * &b6) + &(&(&b2 * &b4) * &b6));
        let c4 = &b2 * &b2;
        SymbolicInvariants { b2, b4, b6, b8, discriminant, c4 }
    }

    /// The fiber over `t = t0`.
    pub fn specialize(&self, ctx: &FieldCtx, t0: FieldElt) -> Result<WeierstrassCurve> {
        ctx.check(t0)?;
        WeierstrassCurve::short(ctx, self.a2.eval(t0), self.a4.eval(t0), self.a6.eval(t0))
    }
}

/// Builds `E_{A,B}` and checks `Δ = 1`, `j = 0` on the polynomial coefficients.
pub fn build_quartic_twist(a: &UniPoly, b: &UniPoly) -> Result<TwistCurve> {
    let one = UniPoly::constant(FieldElt::zero_of(a.modulus()).one_like());
    let curve =
        TwistCurve { a: a.clone(), b: b.clone(), a2: a.clone(), a4: a.try_add(&one)?, a6: a.square().try_add(b)? };
    let inv = curve.invariants();
    if inv.discriminant != one || !inv.c4.is_zero() {
        return Err(Error::Consistency(format!("twist invariants: discriminant {}, c4 {}", inv.discriminant, inv.c4)));
    }
    Ok(curve)
}

/// Residuals of the symbolic checks of `E ≅ E_{A,B}` over the function field of `C`.
#[derive(Clone, Debug)]
pub struct IsoCheck {
    /// `E_{A,B}` equation at `(x + r, y + rx + r + s)`, modulo `E` and `C`.
    pub forward: MultiPoly,
    /// `E` equation at `(ξ + r, η + rξ + A + s)`, modulo `E_{A,B}` and `C`.
    pub inverse: MultiPoly,
    /// Both composites minus the identity, coordinate by coordinate.
    pub compositions: [MultiPoly; 4],
}

impl IsoCheck {
    pub fn holds(&self) -> bool {
        self.forward.is_zero() && self.inverse.is_zero() && self.compositions.iter().all(MultiPoly::is_zero)
    }
}

/// Residual of `η^2 + η + ξ^3 + a2 ξ^2 + a4 ξ + a6` at the given `(ξ, η)`,
/// reduced by `rs`.
pub fn equation_residual(
    rs: &RewriteSystem,
    [a2, a4, a6]: [&UniPoly; 3],
    xi: &MultiPoly,
    eta: &MultiPoly,
) -> MultiPoly {
    let lhs = &eta.pow(2) + eta;
    let rhs = &(&xi.pow(3) + &xi.pow(2).scale(a2)) + &(&xi.scale(a4) + &MultiPoly::constant(a6));
    rs.normal_form(&(&lhs + &rhs))
}

/// Runs all symbolic checks of the isomorphism `E -> E_{A,B}`,
/// `(x, y) -> (x + r, y + rx + r + s)`, and its inverse.
pub fn check_twist_isomorphism(ctx: &FieldCtx, a: &UniPoly, b: &UniPoly) -> Result<IsoCheck> {
    let twist = build_quartic_twist(a, b)?;
    let x = MultiPoly::gen(ctx, Gen::X);
    let y = MultiPoly::gen(ctx, Gen::Y);
    let r = MultiPoly::gen(ctx, Gen::R);
    let s = MultiPoly::gen(ctx, Gen::S);
    let am = MultiPoly::constant(a);

    let on_e = RewriteSystem::tower(ctx, a, b)?;
    let on_twist = RewriteSystem::weierstrass_tower(ctx, twist.a_coeffs(), a, b)?;

    let fwd_x = &x + &r;
    let fwd_y = &(&(&y + &(&r * &x)) + &r) + &s;
    let forward = equation_residual(&on_e, twist.a_coeffs(), &fwd_x, &fwd_y);

    // In the inverse, (x, y) play the role of (ξ, η).
    let inv_x = &x + &r;
    let inv_y = &(&(&y + &(&r * &x)) + &am) + &s;
    let (zero, one_p) = (UniPoly::zero(ctx), UniPoly::one(ctx));
    let inverse = equation_residual(&on_twist, [&zero, &one_p, &zero], &inv_x, &inv_y);

    let compose = |outer: (&MultiPoly, &MultiPoly), inner: (&MultiPoly, &MultiPoly), rs: &RewriteSystem| {
        let images = [Some(inner.0), Some(inner.1), None, None];
        let cx = outer.0.substitute(&images)?;
        let cy = outer.1.substitute(&images)?;
        Ok::<_, Error>([rs.normal_form(&(&cx + &x)), rs.normal_form(&(&cy + &y))])
    };
    let [c0, c1] = compose((&inv_x, &inv_y), (&fwd_x, &fwd_y), &on_e)?;
    let [c2, c3] = compose((&fwd_x, &fwd_y), (&inv_x, &inv_y), &on_twist)?;
    Ok(IsoCheck { forward, inverse, compositions: [c0, c1, c2, c3] })
}

pub fn verify_twist_isomorphism(ctx: &FieldCtx, a: &UniPoly, b: &UniPoly) -> Result<bool> {
    Ok(check_twist_isomorphism(ctx, a, b)?.holds())
}

/// `ι(ξ, η) = (ξ + 1, η + ξ)` preserves the `E_{A,B}` equation: residual.
pub fn twist_iota_residual(ctx: &FieldCtx, twist: &TwistCurve) -> Result<MultiPoly> {
    let zero = UniPoly::zero(ctx);
    let rs = RewriteSystem::weierstrass_tower(ctx, twist.a_coeffs(), &twist.a, &zero)?;
    let x = MultiPoly::gen(ctx, Gen::X);
    let y = MultiPoly::gen(ctx, Gen::Y);
    Ok(equation_residual(&rs, twist.a_coeffs(), &(&x + &MultiPoly::one(ctx)), &(&y + &x)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    BothMaximal,
    BothMinimal,
    /// Both extremality classes were computed and do not match.
    NotSatisfied,
    /// The field is too large to check `C` by enumeration.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub field: String,
    #[serde(rename = "gC")]
    pub g_c: u64,
    #[serde(rename = "gH")]
    pub g_h: u64,
    pub rank_arith: u64,
    pub hypothesis: Hypothesis,
    pub e_extremality: Extremality,
    pub c_count: Option<u64>,
    pub c_extremality: Option<Extremality>,
}

/// Extremality of `E` over `F_{2^{2n}}` from the closed-form count.
pub fn e_extremality(n: u32) -> Result<Extremality> {
    classify_extremal(e_point_count_formula(n)?, 1, 1u64 << (2 * n))
}

/// `rank E_{A,B}(F_Q(t)) = 2 g(C) - 2 g(H)` with the hypotheses checked
/// where enumeration over `F_Q = field` is affordable.
pub fn rank_theorem(tower: &TowerCurve, field: &FieldCtx) -> Result<RankReport> {
    if !tower.is_normalized() {
        return Err(Error::Parity("rank formula needs odd deg A and odd deg B (or constant B)".into()));
    }
    if field.degree() % 2 == 1 {
        return Err(Error::NotSquare(field.size()));
    }
    let g_c = tower.genus_c()?;
    let g_h = tower.genus_h()?;
    let rank_arith = 2 * g_c - 2 * g_h;
    let e_ext = e_extremality(field.degree() / 2)?;
    let (c_count, c_ext) = if field.size() <= MAX_VERIFIED_ORDER {
        let n = count_points_tower(tower, field)?;
        (Some(n), Some(classify_extremal(n, g_c, field.size())?))
    } else {
        (None, None)
    };
    let hypothesis = match (e_ext, c_ext) {
        (_, None) => Hypothesis::Unverified,
        (Extremality::Maximal, Some(Extremality::Maximal)) => Hypothesis::BothMaximal,
        (Extremality::Minimal, Some(Extremality::Minimal)) => Hypothesis::BothMinimal,
        _ => Hypothesis::NotSatisfied,
    };
    Ok(RankReport {
        field: field.spec_string(),
        g_c,
        g_h,
        rank_arith,
        hypothesis,
        e_extremality: e_ext,
        c_count,
        c_extremality: c_ext,
    })
}

/// `2 g(C) - 2 g(H) = max{4a - 2, 2b - 2}` from the degrees alone.
pub fn rank_from_degrees(deg_a: usize, deg_b: Option<usize>) -> Result<u64> {
    let g_c = ascurves::genus_c_from_degrees(deg_a, deg_b)?;
    let g_h = ascurves::genus_h_from_degree(deg_a)?;
    Ok(2 * g_c - 2 * g_h)
}

/// `rank E(F_{q^2}(D)) = 4 g(D)` for a curve `D` extremal together with `E`.
pub fn rank_constant_base(g_d: u64) -> u64 {
    4 * g_d
}

/// `E_H: y^2 + y = x^3 + x + A`, the quadratic twist of `E` by `H`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadraticTwist {
    #[serde(serialize_with = "ser_poly")]
    pub a6: UniPoly,
    pub g_h: u64,
    /// `4 g(H) - 4 g(P^1)`.
    pub rank: u64,
    /// `(x, y) -> (x, y + r)` maps `E` onto `E_H` modulo `r^2 + r = A`.
    pub twist_map_ok: bool,
}

pub fn quadratic_twist_eh(ctx: &FieldCtx, a: &UniPoly) -> Result<QuadraticTwist> {
    if !a.has_odd_degree() {
        return Err(Error::Parity(format!("deg A must be odd, A = {a}")));
    }
    let g_h = ascurves::genus_h_from_degree(a.degree().expect("odd degree"))?;
    let zero = UniPoly::zero(ctx);
    let one = UniPoly::one(ctx);
    let rs = RewriteSystem::tower(ctx, a, &zero)?;
    let x = MultiPoly::gen(ctx, Gen::X);
    let y = MultiPoly::gen(ctx, Gen::Y);
    let r = MultiPoly::gen(ctx, Gen::R);
    let residual = equation_residual(&rs, [&zero, &one, a], &x, &(&y + &r));
    Ok(QuadraticTwist { a6: a.clone(), g_h, rank: 4 * g_h, twist_map_ok: residual.is_zero() })
}
