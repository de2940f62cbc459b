//! Artin–Schreier reduction of polynomials: moving `A` within its class
//! modulo the image of `f -> f^2 + f` until its degree is odd.

use serde::Serialize;

use super::upoly::UniPoly;
use crate::binfield::FieldElt;

/// `f^2 + f`.
pub fn wp(f: &UniPoly) -> UniPoly {
    &f.square() + f
}

/// Cancels the leading term `a t^(2k)` (k >= 1) with `c += sqrt(a) t^k`
/// until the degree is odd or zero.
///
/// Returns `(a_red, c)` with `a_red = a + c^2 + c`.
pub fn wp_reduce(a: &UniPoly) -> (UniPoly, UniPoly) {
    let mut red = a.clone();
    let mut c = UniPoly::zero_mod(a.modulus());
    while let Some(d) = red.degree() {
        if d == 0 || d % 2 == 1 {
            break;
        }
        let step = UniPoly::monomial(red.coeff(d).sqrt(), d / 2);
        red = &red + &wp(&step);
        c = &c + &step;
    }
    (red, c)
}

/// Like [`wp_reduce`] but cancels every even-degree term of positive degree,
/// top down. The result is supported on odd degrees plus a constant, which
/// makes it a canonical representative of the class modulo `wp(k[t])` up to
/// the constant's own class.
pub fn wp_reduce_full(a: &UniPoly) -> (UniPoly, UniPoly) {
    let mut red = a.clone();
    let mut c = UniPoly::zero_mod(a.modulus());
    let Some(top) = red.degree() else {
        return (red, c);
    };
    for d in (2..=top).rev().filter(|d| d % 2 == 0) {
        let coeff = red.coeff(d);
        if coeff.is_zero() {
            continue;
        }
        let step = UniPoly::monomial(coeff.sqrt(), d / 2);
        red = &red + &wp(&step);
        c = &c + &step;
    }
    (red, c)
}

/// Whether `f = g^2 + g` for some polynomial `g` over the same field.
///
/// A nonconstant image `g^2 + g` has even degree, so after full reduction
/// only a constant of trace zero can remain.
pub fn in_wp_image(f: &UniPoly) -> bool {
    let (red, _) = wp_reduce_full(f);
    match red.degree() {
        None => true,
        Some(0) => red.coeff(0).trace() == 0,
        Some(_) => false,
    }
}

/// Output of [`normalize_pair`]: the new tower data and the substitution
/// `r~ = r + c`, `s~ = s + c r + d` that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalized {
    #[serde(serialize_with = "ser_poly")]
    pub a: UniPoly,
    #[serde(serialize_with = "ser_poly")]
    pub b: UniPoly,
    #[serde(serialize_with = "ser_poly")]
    pub c: UniPoly,
    #[serde(serialize_with = "ser_poly")]
    pub d: UniPoly,
}

pub(crate) fn ser_poly<S: serde::Serializer>(p: &UniPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_hex_list())
}

/// Brings `r^2 + r = A, s^2 + s = rA + B` to a form with `deg A` odd and
/// `deg B` odd (or `B` constant).
///
/// `A~ = A + c^2 + c` and `B~ = B + (c^2 + c) A + c^3 + c^2 + d^2 + d`.
pub fn normalize_pair(a: &UniPoly, b: &UniPoly) -> Normalized {
    let (a_red, c) = wp_reduce(a);
    let c2 = c.square();
    let b_shift = &(&(b + &(&wp(&c) * a)) + &(&c2 * &c)) + &c2;
    let (b_red, d) = wp_reduce(&b_shift);
    Normalized { a: a_red, b: b_red, c, d }
}

/// Full trace polynomial `t + t^2 + ... + t^(2^(m-1))` over the field of `one`.
pub fn trace_poly(one: FieldElt, m: u32) -> UniPoly {
    let mut acc = UniPoly::zero_mod(one.modulus());
    for i in 0..m {
        acc = &acc + &UniPoly::monomial(one, 1usize << i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binfield::FieldCtx;
    use proptest::prelude::*;

    fn gf(m: u32) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    #[test]
    fn t_squared_reduces_to_t() {
        let f = gf(2);
        let (red, c) = wp_reduce(&UniPoly::parse(&f, "0,0,1").unwrap());
        assert_eq!(red, UniPoly::t(&f));
        assert_eq!(c, UniPoly::t(&f));
    }

    #[test]
    fn trace_polynomial_reduces_to_t() {
        for m in [1u32, 3, 5, 7] {
            let f = gf(m);
            let (red, _) = wp_reduce(&trace_poly(f.one(), m));
            assert_eq!(red, UniPoly::t(&f), "m = {m}");
        }
    }

    #[test]
    fn t4_plus_t3() {
        let f = gf(3);
        let a = UniPoly::parse(&f, "0,0,0,1,1").unwrap();
        let (red, c) = wp_reduce(&a);
        assert_eq!(red.degree(), Some(3));
        assert!(in_wp_image(&(&a + &red)));
        assert_eq!(&a + &wp(&c), red);
    }

    #[test]
    fn wp_image_membership() {
        let f = gf(2);
        let w = f.elt(2).unwrap();
        assert!(in_wp_image(&UniPoly::zero(&f)));
        assert!(in_wp_image(&UniPoly::one(&f))); // 1 = w^2 + w
        assert!(!in_wp_image(&UniPoly::constant(w)));
        assert!(!in_wp_image(&UniPoly::t(&f)));
        let g = UniPoly::parse(&f, "1,2,0,3").unwrap();
        assert!(in_wp_image(&wp(&g)));
    }

    #[test]
    fn normalize_identity_case() {
        let f = gf(2);
        let a = UniPoly::parse(&f, "0,1").unwrap();
        let b = UniPoly::parse(&f, "1,2,0,1").unwrap();
        let n = normalize_pair(&a, &b);
        assert_eq!((n.a, n.b), (a, b));
        assert!(n.c.is_zero() && n.d.is_zero());
    }

    #[test]
    fn normalize_trace_family_m3() {
        let f = gf(12);
        let n = normalize_pair(&trace_poly(f.one(), 3), &UniPoly::zero(&f));
        assert_eq!(n.a, UniPoly::t(&f));
        assert_eq!(n.b.degree(), Some(5));
    }

    #[test]
    fn normalize_even_pair() {
        let f = gf(2);
        let a = UniPoly::parse(&f, "0,0,1").unwrap();
        let b = UniPoly::parse(&f, "0,0,0,0,1").unwrap();
        let n = normalize_pair(&a, &b);
        assert!(n.a.has_odd_degree() || n.a.is_constant());
        assert!(n.b.has_odd_degree() || n.b.is_constant());
        let c2c = wp(&n.c);
        let lhs = &(&(&n.b + &b) + &(&c2c * &a)) + &(&(&n.c.square() * &n.c) + &n.c.square());
        assert!(in_wp_image(&lhs));
    }

    proptest! {
        #[test]
        fn wp_reduce_invariants(bits in proptest::collection::vec(0u32..16, 0..12)) {
            let f = gf(4);
            let a = UniPoly::from_bits(&f, &bits).unwrap();
            let (red, c) = wp_reduce(&a);
            prop_assert_eq!(&a + &wp(&c), red.clone());
            prop_assert!(in_wp_image(&(&a + &red)));
            prop_assert!(red.degree().is_none_or(|d| d == 0 || d % 2 == 1));
            let (full, c_full) = wp_reduce_full(&a);
            prop_assert_eq!(&a + &wp(&c_full), full.clone());
            for (k, x) in full.coeffs().iter().enumerate() {
                prop_assert!(k == 0 || k % 2 == 1 || x.is_zero());
            }
        }
    }
}
