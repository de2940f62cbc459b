//! Exact arithmetic in GF(2^m) for 1 <= m <= 24.
//!
//! Elements are bit vectors in the polynomial basis `1, z, ..., z^(m-1)`
//! where `z` is a root of the field modulus. Every [`FieldElt`] carries its
//! modulus, so arithmetic needs no context object and mixing fields is
//! detected. The operator impls panic on a mismatch (as integer overflow
//! does in debug builds); the `try_*` methods return an error instead.
//!
//! [`FieldCtx`] holds the per-field precomputation: the trace mask and the
//! linear system used to solve `z^2 + z = a`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Sub};

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 24;

/// Numerically smallest irreducible polynomial of each degree 1..=24,
/// bit `i` holding the coefficient of `z^i`.
pub const DEFAULT_MODULI: [u32; 24] = [
    0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021, 0x8003, 0x1002b,
    0x20009, 0x40009, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x100001b,
];

#[inline]
fn degree_of_modulus(modulus: u32) -> u32 {
    31 - modulus.leading_zeros()
}

/// Carryless product of two bit vectors of at most 32 bits.
#[inline]
pub(crate) fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut acc = 0u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Reduces a carryless product modulo `modulus`.
#[inline]
pub(crate) fn reduce(mut x: u64, modulus: u32) -> u32 {
    let m = degree_of_modulus(modulus);
    let modulus = modulus as u64;
    while x >> m != 0 {
        let top = 63 - x.leading_zeros();
        x ^= modulus << (top - m);
    }
    x as u32
}

/// Remainder of GF(2)[z] polynomials given as bit vectors.
fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        let da = 63 - a.leading_zeros();
        a ^= b << (da - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree at most half the input's degree.
pub fn is_irreducible(poly: u32) -> bool {
    if poly < 2 {
        return false;
    }
    let m = degree_of_modulus(poly);
    for d in 1..=m / 2 {
        for g in (1u64 << d)..(1u64 << (d + 1)) {
            if gf2_rem(poly as u64, g) == 0 {
                return false;
            }
        }
    }
    true
}

/// An element of GF(2^m), tagged with the modulus of its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElt {
    bits: u32,
    modulus: u32,
}

impl FieldElt {
    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    /// Extension degree `m` of the field this element lives in.
    #[inline]
    pub fn degree(self) -> u32 {
        degree_of_modulus(self.modulus)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.bits == 1
    }

    /// Zero of the field with the given (already validated) modulus.
    #[inline]
    pub(crate) fn zero_of(modulus: u32) -> Self {
        FieldElt { bits: 0, modulus }
    }

    /// The element with the given bits in the same field. Bits must already be reduced.
    #[inline]
    pub(crate) fn with_bits(self, bits: u32) -> Self {
        debug_assert!(bits >> self.degree() == 0);
        FieldElt { bits, modulus: self.modulus }
    }

    #[inline]
    pub fn zero_like(self) -> Self {
        self.with_bits(0)
    }

    #[inline]
    pub fn one_like(self) -> Self {
        self.with_bits(1)
    }

    /// Builds `a` from an integer 0 or 1 (the image of the prime field).
    #[inline]
    pub fn from_bit(self, bit: u8) -> Self {
        self.with_bits((bit & 1) as u32)
    }

    #[inline]
    pub fn same_field(self, other: FieldElt) -> bool {
        self.modulus == other.modulus
    }

    #[inline]
    fn check(self, other: FieldElt) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.modulus, other.modulus))
        }
    }

    pub fn try_add(self, other: FieldElt) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_bits(self.bits ^ other.bits))
    }

    pub fn try_mul(self, other: FieldElt) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_bits(reduce(clmul(self.bits, other.bits), self.modulus)))
    }

    #[inline]
    pub fn square(self) -> Self {
        self.with_bits(reduce(clmul(self.bits, self.bits), self.modulus))
    }

    /// `self^(2^k)`, i.e. `k` applications of Frobenius.
    pub fn frobenius(self, k: u32) -> Self {
        let mut a = self;
        for _ in 0..k % self.degree().max(1) {
            a = a.square();
        }
        a
    }

    pub fn pow(self, mut k: u64) -> Self {
        let mut base = self;
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            base = base.square();
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `a^(2^m - 2)`.
    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow((1u64 << self.degree()) - 2))
    }

    pub fn try_div(self, other: FieldElt) -> Result<Self> {
        self.check(other)?;
        Ok(self * other.inv()?)
    }

    /// The unique square root, `a^(2^(m-1))`.
    pub fn sqrt(self) -> Self {
        self.frobenius(self.degree() - 1)
    }

    /// Absolute trace `sum_{i<m} a^(2^i)`, returned as 0 or 1.
    pub fn trace(self) -> u8 {
        let mut acc = self.zero_like();
        let mut a = self;
        for _ in 0..self.degree() {
            acc += a;
            a = a.square();
        }
        debug_assert!(acc.bits <= 1);
        acc.bits as u8
    }

    /// Trace from the subfield GF(2^k) down to GF(2), evaluated inside the
    /// ambient field as `sum_{i<k} a^(2^i)`.
    ///
    /// Requires `k | m` and `a^(2^k) = a`.
    pub fn power_sum_trace(self, k: u32) -> Result<Self> {
        let m = self.degree();
        if k == 0 || !m.is_multiple_of(k) {
            return Err(Error::Precondition(format!("subfield degree {k} does not divide {m}")));
        }
        if self.frobenius(k) != self {
            return Err(Error::NotInSubfield { k });
        }
        let mut acc = self.zero_like();
        let mut a = self;
        for _ in 0..k {
            acc += a;
            a = a.square();
        }
        if acc.bits > 1 {
            return Err(Error::Consistency("subfield trace left GF(2)".into()));
        }
        Ok(acc)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let group = (1u64 << self.degree()) - 1;
        let mut order = group;
        for (p, _) in factorize(group) {
            while order.is_multiple_of(p) && self.pow(order / p).is_one() {
                order /= p;
            }
        }
        Ok(order)
    }
}

impl Add for FieldElt {
    type Output = FieldElt;
    #[inline]
    fn add(self, rhs: FieldElt) -> FieldElt {
        assert_eq!(self.modulus, rhs.modulus, "field mismatch in addition");
        self.with_bits(self.bits ^ rhs.bits)
    }
}

impl AddAssign for FieldElt {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElt) {
        *self = *self + rhs;
    }
}

// Characteristic 2: subtraction is addition.
impl Sub for FieldElt {
    type Output = FieldElt;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: FieldElt) -> FieldElt {
        self + rhs
    }
}

impl Mul for FieldElt {
    type Output = FieldElt;
    #[inline]
    fn mul(self, rhs: FieldElt) -> FieldElt {
        assert_eq!(self.modulus, rhs.modulus, "field mismatch in multiplication");
        self.with_bits(reduce(clmul(self.bits, rhs.bits), self.modulus))
    }
}

impl MulAssign for FieldElt {
    #[inline]
    fn mul_assign(&mut self, rhs: FieldElt) {
        *self = *self * rhs;
    }
}

impl Div for FieldElt {
    type Output = FieldElt;
    fn div(self, rhs: FieldElt) -> FieldElt {
        self.try_div(rhs).expect("division by zero in GF(2^m)")
    }
}

impl fmt::Debug for FieldElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl fmt::Display for FieldElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.bits)
    }
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// GF(2^m) with a fixed irreducible modulus and its precomputed tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldCtx {
    m: u32,
    modulus: u32,
    /// Bit `i` is `Tr(z^i)`, so `Tr(a) = parity(a & mask)`.
    trace_mask: u32,
    /// Echelon basis of the image of `z -> z^2 + z`: slot `p` holds a vector
    /// with leading bit `p` and one of its preimages.
    wp_basis: Vec<Option<(u32, u32)>>,
}

impl FieldCtx {
    /// GF(2^m) with the default modulus from [`DEFAULT_MODULI`].
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(m));
        }
        Self::with_modulus(DEFAULT_MODULI[(m - 1) as usize])
    }

    pub fn with_modulus(modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ReducibleModulus { m: 0, modulus });
        }
        let m = degree_of_modulus(modulus);
        if m > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(m));
        }
        if !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus { m, modulus });
        }
        let mut ctx = FieldCtx { m, modulus, trace_mask: 0, wp_basis: vec![None; m as usize] };
        let z = |i: u32| ctx.raw(reduce(1u64 << i, modulus));
        let mut mask = 0;
        for i in 0..m {
            mask |= (z(i).trace() as u32) << i;
        }
        let mut basis: Vec<Option<(u32, u32)>> = vec![None; m as usize];
        for i in 0..m {
            let e = z(i);
            let mut v = (e.square() + e).bits;
            let mut pre = e.bits;
            while v != 0 {
                let p = 31 - v.leading_zeros();
                match basis[p as usize] {
                    Some((bv, bp)) => {
                        v ^= bv;
                        pre ^= bp;
                    }
                    None => {
                        basis[p as usize] = Some((v, pre));
                        break;
                    }
                }
            }
        }
        ctx.trace_mask = mask;
        ctx.wp_basis = basis;
        Ok(ctx)
    }

    /// Parses `"m"` or `"m:modulus-hex"`, e.g. `"4"` or `"4:13"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (deg, modulus) = match spec.split_once(':') {
            Some((d, h)) => (d, Some(h)),
            None => (spec, None),
        };
        let m: u32 = deg.trim().parse().map_err(|_| Error::Parse(format!("bad field degree {deg:?}")))?;
        match modulus {
            None => Self::new(m),
            Some(h) => {
                let modulus = parse_hex(h)?;
                let ctx = Self::with_modulus(modulus)?;
                if ctx.m != m {
                    return Err(Error::Parse(format!("modulus {modulus:#x} has degree {}, expected {m}", ctx.m)));
                }
                Ok(ctx)
            }
        }
    }

    /// The canonical `"m:modulus"` string for this field.
    pub fn spec_string(&self) -> String {
        format!("{}:{:x}", self.m, self.modulus)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, `2^m`.
    #[inline]
    pub fn size(&self) -> u64 {
        1u64 << self.m
    }

    #[inline]
    fn raw(&self, bits: u32) -> FieldElt {
        FieldElt { bits, modulus: self.modulus }
    }

    pub fn elt(&self, bits: u32) -> Result<FieldElt> {
        if bits >> self.m != 0 {
            return Err(Error::ElementOutOfRange { bits, m: self.m });
        }
        Ok(self.raw(bits))
    }

    #[inline]
    pub fn zero(&self) -> FieldElt {
        self.raw(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElt {
        self.raw(1)
    }

    /// The class of `z`, a root of the modulus.
    pub fn generator(&self) -> FieldElt {
        self.raw(reduce(2, self.modulus))
    }

    #[inline]
    pub fn contains(&self, a: FieldElt) -> bool {
        a.modulus == self.modulus
    }

    pub fn check(&self, a: FieldElt) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.modulus, a.modulus))
        }
    }

    /// All field elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElt> + '_ {
        (0..(1u32 << self.m)).map(move |b| self.raw(b))
    }

    /// Absolute trace through the precomputed mask.
    #[inline]
    pub fn trace(&self, a: FieldElt) -> u8 {
        debug_assert!(self.contains(a));
        ((a.bits & self.trace_mask).count_ones() & 1) as u8
    }

    /// Both solutions of `z^2 + z = a`, or `None` when `Tr(a) = 1`.
    ///
    /// The first component is the solution found by back substitution in
    /// the precomputed echelon basis; the second is it plus one.
    pub fn solve_wp(&self, a: FieldElt) -> Option<(FieldElt, FieldElt)> {
        debug_assert!(self.contains(a));
        let mut v = a.bits;
        let mut z = 0;
        for p in (0..self.m as usize).rev() {
            if v >> p & 1 == 1 {
                let (bv, bp) = self.wp_basis[p]?;
                v ^= bv;
                z ^= bp;
            }
        }
        if v != 0 {
            return None;
        }
        let z = self.raw(z);
        Some((z, z + self.one()))
    }

    /// An element generating the multiplicative group.
    pub fn primitive_element(&self) -> FieldElt {
        let group = self.size() - 1;
        let primes: Vec<u64> = factorize(group).into_iter().map(|(p, _)| p).collect();
        self.elements()
            .skip(1)
            .find(|g| primes.iter().all(|&p| !g.pow(group / p).is_one()))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// The embedding of `self` into `big`, sending `z` to the smallest root
    /// of `self`'s modulus in `big`.
    pub fn embedding_into(&self, big: &FieldCtx) -> Result<Embedding> {
        if !big.m.is_multiple_of(self.m) {
            return Err(Error::NoEmbedding { small: self.m, big: big.m });
        }
        let root = if self == big {
            big.generator()
        } else {
            // Enumerate the copy of GF(2^m) inside `big` as powers of
            // g^((2^M - 1)/(2^m - 1)) together with zero.
            let h = big.primitive_element().pow((big.size() - 1) / (self.size() - 1));
            let mut roots = Vec::new();
            let mut x = big.one();
            for _ in 0..self.size() - 1 {
                let val = eval_bits_poly(self.modulus, x);
                if val.is_zero() {
                    roots.push(x);
                }
                x *= h;
            }
            if eval_bits_poly(self.modulus, big.zero()).is_zero() {
                roots.push(big.zero());
            }
            roots.into_iter().min_by_key(|r| r.bits).ok_or(Error::NoEmbedding { small: self.m, big: big.m })?
        };
        let mut powers = Vec::with_capacity(self.m as usize);
        let mut p = big.one();
        for _ in 0..self.m {
            powers.push(p);
            p *= root;
        }
        Ok(Embedding { source: self.modulus, target: big.modulus, powers })
    }
}

/// Evaluates a GF(2)[z] polynomial given as bits at `x`.
fn eval_bits_poly(poly: u32, x: FieldElt) -> FieldElt {
    let mut acc = x.zero_like();
    for i in (0..=degree_of_modulus(poly)).rev() {
        acc *= x;
        if poly >> i & 1 == 1 {
            acc += x.one_like();
        }
    }
    acc
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.m, self.modulus)
    }
}

/// A field homomorphism GF(2^m) -> GF(2^M), `m | M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: u32,
    target: u32,
    powers: Vec<FieldElt>,
}

impl Embedding {
    pub fn apply(&self, a: FieldElt) -> Result<FieldElt> {
        if a.modulus != self.source {
            return Err(Error::FieldMismatch(self.source, a.modulus));
        }
        let mut acc = FieldElt { bits: 0, modulus: self.target };
        for (i, p) in self.powers.iter().enumerate() {
            if a.bits >> i & 1 == 1 {
                acc += *p;
            }
        }
        Ok(acc)
    }
}

/// Parses a hex string with optional `0x` prefix.
pub fn parse_hex(s: &str) -> Result<u32> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u32::from_str_radix(t, 16).map_err(|_| Error::Parse(format!("bad hex value {s:?}")))
}
