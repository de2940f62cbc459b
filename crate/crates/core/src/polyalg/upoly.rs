use std::fmt;
use std::ops::{Add, Mul};

use crate::binfield::{parse_hex, Embedding, FieldCtx, FieldElt};
use crate::error::{Error, Result};

/// Dense univariate polynomial over GF(2^m), coefficients indexed by degree.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and its degree is `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<FieldElt>,
    modulus: u32,
}

impl UniPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        UniPoly { coeffs: Vec::new(), modulus: ctx.modulus() }
    }

    pub(crate) fn zero_mod(modulus: u32) -> Self {
        UniPoly { coeffs: Vec::new(), modulus }
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::constant(ctx.one())
    }

    pub fn constant(c: FieldElt) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^k`.
    pub fn monomial(c: FieldElt, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly { coeffs: Vec::new(), modulus: c.modulus() };
        }
        let mut coeffs = vec![c.zero_like(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs, modulus: c.modulus() }
    }

    /// The variable `t`.
    pub fn t(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx.one(), 1)
    }

    pub fn from_coeffs(ctx: &FieldCtx, coeffs: Vec<FieldElt>) -> Result<Self> {
        for c in &coeffs {
            ctx.check(*c)?;
        }
        Ok(Self::from_vec(ctx.modulus(), coeffs))
    }

    pub fn from_bits(ctx: &FieldCtx, bits: &[u32]) -> Result<Self> {
        let coeffs = bits.iter().map(|&b| ctx.elt(b)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vec(ctx.modulus(), coeffs))
    }

    fn from_vec(modulus: u32, mut coeffs: Vec<FieldElt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs, modulus }
    }

    /// Parses comma-separated hex coefficients, lowest degree first: `"1,0,1"` is `1 + t^2`.
    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::zero(ctx));
        }
        let bits = text.split(',').map(parse_hex).collect::<Result<Vec<_>>>()?;
        Self::from_bits(ctx, &bits)
    }

    /// Inverse of [`UniPoly::parse`]; the zero polynomial prints as `"0"`.
    pub fn to_hex_list(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|c| format!("{:x}", c.bits())).collect::<Vec<_>>().join(",")
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn coeffs(&self) -> &[FieldElt] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> FieldElt {
        self.coeffs.get(k).copied().unwrap_or_else(|| self.field_zero())
    }

    fn field_zero(&self) -> FieldElt {
        FieldElt::zero_of(self.modulus)
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Zero or a nonzero constant.
    #[inline]
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn has_odd_degree(&self) -> bool {
        self.degree().is_some_and(|d| d % 2 == 1)
    }

    pub fn leading_coeff(&self) -> Option<FieldElt> {
        self.coeffs.last().copied()
    }

    fn check(&self, other: &UniPoly) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.modulus, other.modulus))
        }
    }

    pub fn try_add(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check(other)?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += *s;
        }
        Ok(Self::from_vec(self.modulus, coeffs))
    }

    pub fn try_mul(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero_mod(self.modulus));
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += *a * *b;
            }
        }
        Ok(Self::from_vec(self.modulus, coeffs))
    }

    pub fn scale(&self, c: FieldElt) -> UniPoly {
        assert_eq!(c.modulus(), self.modulus, "field mismatch in scale");
        Self::from_vec(self.modulus, self.coeffs.iter().map(|a| *a * c).collect())
    }

    /// Squaring is additive in characteristic 2: `(sum a_i t^i)^2 = sum a_i^2 t^(2i)`.
    pub fn square(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; 2 * self.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = a.square();
        }
        Self::from_vec(self.modulus, coeffs)
    }

    pub fn pow(&self, mut k: u64) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::constant(self.unit());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    fn unit(&self) -> FieldElt {
        match self.coeffs.first() {
            Some(c) => c.one_like(),
            None => self.field_zero().one_like(),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElt) -> FieldElt {
        assert_eq!(x.modulus(), self.modulus, "field mismatch in eval");
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + *c;
        }
        acc
    }

    /// `self(inner)`, by Horner over polynomials.
    pub fn compose(&self, inner: &UniPoly) -> Result<UniPoly> {
        self.check(inner)?;
        let mut acc = Self::zero_mod(self.modulus);
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(inner)?.try_add(&UniPoly::constant(*c))?;
        }
        Ok(acc)
    }

    /// Moves every coefficient through a field embedding.
    pub fn map_coeffs(&self, emb: &Embedding, target: &FieldCtx) -> Result<UniPoly> {
        let coeffs = self.coeffs.iter().map(|c| emb.apply(*c)).collect::<Result<Vec<_>>>()?;
        UniPoly::from_coeffs(target, coeffs)
    }

    /// True when all coefficients are 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.coeffs.iter().all(|c| c.bits() <= 1)
    }

    /// Reinterprets a polynomial with 0/1 coefficients over another field.
    pub fn lift_binary(&self, target: &FieldCtx) -> Result<UniPoly> {
        if !self.is_binary() {
            return Err(Error::Precondition("polynomial has coefficients outside GF(2)".into()));
        }
        let bits: Vec<u32> = self.coeffs.iter().map(|c| c.bits()).collect();
        UniPoly::from_bits(target, &bits)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.try_add(rhs).expect("field mismatch in polynomial addition")
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.try_mul(rhs).expect("field mismatch in polynomial multiplication")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{c}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
