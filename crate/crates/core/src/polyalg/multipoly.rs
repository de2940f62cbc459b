//! Sparse polynomials in four generators over `GF(2^m)[t]`, and a fixed
//! rewriting system reducing them modulo the curve relations.
//!
//! The four generator slots are named after the tower: `x, y` for the curve
//! `E` (or any plane curve), `r, s` for the Artin–Schreier generators. Other
//! computations reuse the slots under different names (for instance `xi,
//! eta` in the quintic example).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use super::upoly::UniPoly;
use crate::binfield::{FieldCtx, FieldElt};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X = 0,
    Y = 1,
    R = 2,
    S = 3,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::X, Gen::Y, Gen::R, Gen::S];

    fn name(self) -> &'static str {
        match self {
            Gen::X => "x",
            Gen::Y => "y",
            Gen::R => "r",
            Gen::S => "s",
        }
    }
}

pub type Exponents = [u32; 4];

/// Sum of `coeff(t) * x^a y^b r^c s^d`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, UniPoly>,
    modulus: u32,
}

impl MultiPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        MultiPoly { terms: BTreeMap::new(), modulus: ctx.modulus() }
    }

    fn zero_mod(modulus: u32) -> Self {
        MultiPoly { terms: BTreeMap::new(), modulus }
    }

    fn unit(modulus: u32) -> Self {
        Self::term([0; 4], UniPoly::constant(FieldElt::zero_of(modulus).one_like()))
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::constant(&UniPoly::one(ctx))
    }

    /// A polynomial in `t` alone.
    pub fn constant(c: &UniPoly) -> Self {
        Self::term([0; 4], c.clone())
    }

    pub fn term(exps: Exponents, c: UniPoly) -> Self {
        let mut p = Self::zero_mod(c.modulus());
        p.add_term(exps, c);
        p
    }

    pub fn gen(ctx: &FieldCtx, g: Gen) -> Self {
        let mut e = [0; 4];
        e[g as usize] = 1;
        Self::term(e, UniPoly::one(ctx))
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &UniPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial, if present.
    pub fn coeff(&self, exps: &Exponents) -> Option<&UniPoly> {
        self.terms.get(exps)
    }

    pub fn max_exponent(&self, g: Gen) -> u32 {
        self.terms.keys().map(|e| e[g as usize]).max().unwrap_or(0)
    }

    fn add_term(&mut self, exps: Exponents, c: UniPoly) {
        assert_eq!(c.modulus(), self.modulus, "field mismatch in MultiPoly");
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(exps, sum);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn check(&self, other: &MultiPoly) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.modulus, other.modulus))
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = Self::zero_mod(self.modulus);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a polynomial in `t`.
    pub fn scale(&self, c: &UniPoly) -> MultiPoly {
        let mut out = Self::zero_mod(self.modulus);
        for (e, a) in &self.terms {
            out.add_term(*e, a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = Self::unit(self.modulus);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces each generator by the given polynomial (`None` keeps it).
    pub fn substitute(&self, images: &[Option<&MultiPoly>; 4]) -> Result<MultiPoly> {
        for im in images.iter().flatten() {
            self.check(im)?;
        }
        // Cache powers of the images as they are needed.
        let mut powers: [Vec<MultiPoly>; 4] = Default::default();
        for (g, im) in images.iter().enumerate() {
            let base = match im {
                Some(p) => (*p).clone(),
                None => {
                    let mut e = [0; 4];
                    e[g] = 1;
                    Self::term(e, UniPoly::constant(FieldElt::zero_of(self.modulus).one_like()))
                }
            };
            powers[g].push(Self::unit(self.modulus));
            powers[g].push(base);
        }
        for g in 0..4 {
            let need = self.max_exponent(Gen::ALL[g]) as usize;
            while powers[g].len() <= need {
                let next = &powers[g][powers[g].len() - 1] * &powers[g][1];
                powers[g].push(next);
            }
        }
        let mut out = Self::zero_mod(self.modulus);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(c);
            for g in 0..4 {
                if e[g] > 0 {
                    term = &term * &powers[g][e[g] as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("field mismatch in MultiPoly addition")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("field mismatch in MultiPoly multiplication")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for g in Gen::ALL {
                match e[g as usize] {
                    0 => {}
                    1 => write!(f, "*{}", g.name())?,
                    k => write!(f, "*{}^{k}", g.name())?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// `gen^power -> replacement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub gen: Gen,
    pub power: u32,
    pub replacement: MultiPoly,
}

/// An ordered list of power-reduction rules.
///
/// Rules apply in order, each to exhaustion. A rule's replacement may
/// mention its own generator below the rule's power, and generators whose
/// rules come later (or that have no rule); this makes a single ordered pass
/// terminate in a canonical form.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
}

impl RewriteSystem {
    pub fn new(rules: Vec<Rule>) -> Result<Self> {
        for (i, rule) in rules.iter().enumerate() {
            if rule.power == 0 {
                return Err(Error::Precondition("rewrite rule with power 0".into()));
            }
            if rule.replacement.max_exponent(rule.gen) >= rule.power {
                return Err(Error::Precondition(format!("rule for {} does not lower its degree", rule.gen.name())));
            }
            for earlier in &rules[..i] {
                if earlier.gen == rule.gen {
                    return Err(Error::Precondition(format!("two rules for {}", rule.gen.name())));
                }
                if rule.replacement.max_exponent(earlier.gen) > 0 {
                    return Err(Error::Precondition(format!(
                        "rule for {} reintroduces {}",
                        rule.gen.name(),
                        earlier.gen.name()
                    )));
                }
            }
        }
        Ok(RewriteSystem { rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// `y^2 -> y + x^3 + a2 x^2 + a4 x + a6`, `s^2 -> s + rA + B`,
    /// `r^2 -> r + A`, in that order.
    pub fn weierstrass_tower(ctx: &FieldCtx, [a2, a4, a6]: [&UniPoly; 3], a: &UniPoly, b: &UniPoly) -> Result<Self> {
        let x = MultiPoly::gen(ctx, Gen::X);
        let y = MultiPoly::gen(ctx, Gen::Y);
        let r = MultiPoly::gen(ctx, Gen::R);
        let s = MultiPoly::gen(ctx, Gen::S);
        let cubic = &(&x.pow(3) + &x.pow(2).scale(a2)) + &(&x.scale(a4) + &MultiPoly::constant(a6));
        let a = MultiPoly::constant(a);
        let b = MultiPoly::constant(b);
        Self::new(vec![
            Rule { gen: Gen::Y, power: 2, replacement: &y + &cubic },
            Rule { gen: Gen::S, power: 2, replacement: &(&s + &(&r * &a)) + &b },
            Rule { gen: Gen::R, power: 2, replacement: &r + &a },
        ])
    }

    /// The tower over `E: y^2 + y = x^3 + x`.
    pub fn tower(ctx: &FieldCtx, a: &UniPoly, b: &UniPoly) -> Result<Self> {
        let (zero, one) = (UniPoly::zero(ctx), UniPoly::one(ctx));
        Self::weierstrass_tower(ctx, [&zero, &one, &zero], a, b)
    }

    /// `y^2 -> y + x^3 + x` only: the curve `E` over `GF(2^m)(t)`.
    pub fn curve_e(ctx: &FieldCtx) -> Result<Self> {
        let x = MultiPoly::gen(ctx, Gen::X);
        let y = MultiPoly::gen(ctx, Gen::Y);
        Self::new(vec![Rule { gen: Gen::Y, power: 2, replacement: &(&y + &x.pow(3)) + &x }])
    }

    /// `y^e -> y + f(x)` for a plane curve `y^e + y = f(x)`.
    pub fn plane(ctx: &FieldCtx, e: u32, f_of_x: &UniPoly) -> Result<Self> {
        let y = MultiPoly::gen(ctx, Gen::Y);
        Self::new(vec![Rule { gen: Gen::Y, power: e, replacement: &y + &univariate_in(ctx, f_of_x, Gen::X) }])
    }

    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        let mut cur = p.clone();
        for rule in &self.rules {
            cur = reduce_by(cur, rule);
        }
        cur
    }

    pub fn is_normal(&self, p: &MultiPoly) -> bool {
        self.rules.iter().all(|r| p.max_exponent(r.gen) < r.power)
    }
}

fn reduce_by(mut p: MultiPoly, rule: &Rule) -> MultiPoly {
    let g = rule.gen as usize;
    loop {
        let reducible: Vec<Exponents> = p.terms.keys().filter(|e| e[g] >= rule.power).copied().collect();
        if reducible.is_empty() {
            return p;
        }
        for e in reducible {
            let c = p.terms.remove(&e).expect("key collected above");
            let mut rest = e;
            rest[g] -= rule.power;
            for (re, rc) in &rule.replacement.terms {
                let ne = [rest[0] + re[0], rest[1] + re[1], rest[2] + re[2], rest[3] + re[3]];
                p.add_term(ne, &c * rc);
            }
        }
    }
}

/// Embeds a polynomial in one variable as a polynomial in generator `g`
/// (its coefficients become constants in `t`).
pub fn univariate_in(ctx: &FieldCtx, f: &UniPoly, g: Gen) -> MultiPoly {
    let mut out = MultiPoly::zero(ctx);
    for (k, c) in f.coeffs().iter().enumerate() {
        let mut e = [0; 4];
        e[g as usize] = k as u32;
        out.add_term(e, UniPoly::constant(*c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(m: u32) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    #[test]
    fn y_squared_rule() {
        let f = gf(2);
        let rs = RewriteSystem::curve_e(&f).unwrap();
        let y = MultiPoly::gen(&f, Gen::Y);
        let x = MultiPoly::gen(&f, Gen::X);
        let expect = &(&y + &(&(&x * &x) * &x)) + &x;
        assert_eq!(rs.normal_form(&(&y * &y)), expect);
    }

    #[test]
    fn r_to_the_fourth() {
        let f = gf(2);
        let a = UniPoly::parse(&f, "0,1,2").unwrap();
        let rs = RewriteSystem::tower(&f, &a, &UniPoly::zero(&f)).unwrap();
        let r = MultiPoly::gen(&f, Gen::R);
        let r4 = r.pow(4);
        // r^4 = (r + A)^2 = r^2 + A^2 = r + A + A^2
        let expect = &r + &MultiPoly::constant(&(&a + &a.square()));
        assert_eq!(rs.normal_form(&r4), expect);
    }

    #[test]
    fn normal_form_is_idempotent_on_normal_input() {
        let f = gf(2);
        let a = UniPoly::t(&f);
        let rs = RewriteSystem::tower(&f, &a, &a).unwrap();
        let p = &(&MultiPoly::gen(&f, Gen::X) * &MultiPoly::gen(&f, Gen::S)) + &MultiPoly::gen(&f, Gen::R);
        assert!(rs.is_normal(&p));
        assert_eq!(rs.normal_form(&p), p);
    }

    #[test]
    fn rejects_non_terminating_orders() {
        let f = gf(1);
        let r = MultiPoly::gen(&f, Gen::R);
        let s = MultiPoly::gen(&f, Gen::S);
        let bad = RewriteSystem::new(vec![
            Rule { gen: Gen::R, power: 2, replacement: r.clone() },
            Rule { gen: Gen::S, power: 2, replacement: &s + &r },
        ]);
        assert!(bad.is_err());
        let bad = RewriteSystem::new(vec![Rule { gen: Gen::R, power: 2, replacement: r.pow(2) }]);
        assert!(bad.is_err());
    }

    #[test]
    fn substitution_composes() {
        let f = gf(2);
        let x = MultiPoly::gen(&f, Gen::X);
        let y = MultiPoly::gen(&f, Gen::Y);
        let p = &(&x * &y) + &y.pow(2);
        let x1 = &x + &MultiPoly::one(&f);
        let q = p.substitute(&[Some(&x1), None, None, None]).unwrap();
        assert_eq!(q, &(&(&x * &y) + &y) + &y.pow(2));
    }

    fn arb_poly(f: &FieldCtx, seeds: &[(u8, u8, u8, u8, u32)]) -> MultiPoly {
        let mut p = MultiPoly::zero(f);
        for &(a, b, c, d, k) in seeds {
            let coeff = UniPoly::from_bits(f, &[k & 3, (k >> 2) & 3]).unwrap();
            p = &p + &MultiPoly::term([a as u32, b as u32, c as u32, d as u32], coeff);
        }
        p
    }

    proptest! {
        #[test]
        fn normal_form_is_linear_and_idempotent(
            s1 in proptest::collection::vec((0u8..4, 0u8..5, 0u8..5, 0u8..5, 0u32..16), 0..6),
            s2 in proptest::collection::vec((0u8..4, 0u8..5, 0u8..5, 0u8..5, 0u32..16), 0..6),
            k in 0u32..16,
        ) {
            let f = gf(2);
            let a = UniPoly::parse(&f, "0,1,0,2").unwrap();
            let b = UniPoly::parse(&f, "1,3").unwrap();
            let rs = RewriteSystem::tower(&f, &a, &b).unwrap();
            let p = arb_poly(&f, &s1);
            let q = arb_poly(&f, &s2);
            let np = rs.normal_form(&p);
            prop_assert!(rs.is_normal(&np));
            prop_assert_eq!(rs.normal_form(&np), np.clone());
            prop_assert_eq!(rs.normal_form(&(&p + &q)), &np + &rs.normal_form(&q));
            let c = UniPoly::from_bits(&f, &[k & 3, k >> 2]).unwrap();
            prop_assert_eq!(rs.normal_form(&p.scale(&c)), np.scale(&c));
        }
    }
}
