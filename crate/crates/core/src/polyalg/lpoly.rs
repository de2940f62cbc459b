//! L-polynomials of curves from point counts.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest genus accepted by [`lpoly_from_counts`].
pub const MAX_LPOLY_GENUS: usize = 6;

/// `L(T) = 1 + a_1 T + ... + a_{2g} T^{2g}` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPoly {
    pub q: u64,
    pub genus: usize,
    /// `a_0 = 1` through `a_{2g}`.
    pub coeffs: Vec<i128>,
}

impl LPoly {
    /// `#C(F_{q^k})` for `k = 1..=upto`, read back from the coefficients.
    pub fn predicted_counts(&self, upto: usize) -> Vec<i128> {
        let a = |k: usize| self.coeffs.get(k).copied().unwrap_or(0);
        let q = self.q as i128;
        let mut sums: Vec<i128> = vec![0];
        let mut counts = Vec::with_capacity(upto);
        for k in 1..=upto {
            // Newton: S_k = -k a_k - sum_{j<k} S_j a_{k-j}
            let mut s = -(k as i128) * a(k);
            for (j, sj) in sums.iter().enumerate().skip(1) {
                s -= sj * a(k - j);
            }
            sums.push(s);
            counts.push(q.pow(k as u32) + 1 - s);
        }
        counts
    }
}

/// Recovers `L` from `counts[k-1] = #C(F_{q^k})`, `k = 1..=g`.
///
/// Uses Newton's identities on `S_k = q^k + 1 - N_k` for `a_1..a_g` and the
/// functional equation `a_{2g-i} = q^{g-i} a_i` for the rest.
pub fn lpoly_from_counts(counts: &[u64], g: usize, q: u64) -> Result<LPoly> {
    if g > MAX_LPOLY_GENUS {
        return Err(Error::Precondition(format!("genus {g} exceeds {MAX_LPOLY_GENUS}")));
    }
    if counts.len() < g {
        return Err(Error::Precondition(format!("need {g} counts, got {}", counts.len())));
    }
    let qi = q as i128;
    let sums: Vec<i128> =
        std::iter::once(0).chain((1..=g).map(|k| qi.pow(k as u32) + 1 - counts[k - 1] as i128)).collect();
    let mut a = vec![0i128; 2 * g + 1];
    a[0] = 1;
    for k in 1..=g {
        let acc: i128 = (1..=k).map(|j| sums[j] * a[k - j]).sum();
        if acc % k as i128 != 0 {
            return Err(Error::NonIntegral(k));
        }
        a[k] = -acc / k as i128;
    }
    for i in 0..g {
        a[2 * g - i] = qi.pow((g - i) as u32) * a[i];
    }
    Ok(LPoly { q, genus: g, coeffs: a })
}

/// `(1 + sqrt(Q) T)^{2g}`, the L-polynomial of a maximal curve over `F_Q`.
pub fn maximal_lpoly(g: usize, sqrt_q: u64) -> LPoly {
    let mut coeffs = vec![1i128];
    for _ in 0..2 * g {
        let mut next = vec![0i128; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * sqrt_q as i128;
        }
        coeffs = next;
    }
    LPoly { q: sqrt_q * sqrt_q, genus: g, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supersingular_e_over_f4() {
        let l = lpoly_from_counts(&[5], 1, 4).unwrap();
        assert_eq!(l.coeffs, vec![1, 0, 4]);
    }

    #[test]
    fn genus_zero() {
        let l = lpoly_from_counts(&[], 0, 8).unwrap();
        assert_eq!(l.coeffs, vec![1]);
        assert_eq!(l.predicted_counts(3), vec![9, 65, 513]);
    }

    #[test]
    fn maximal_counts_round_trip() {
        for (g, r) in [(1usize, 4u64), (2, 4), (3, 8), (6, 16)] {
            let l = maximal_lpoly(g, r);
            let counts: Vec<u64> = l.predicted_counts(g).iter().map(|&c| c as u64).collect();
            assert_eq!(counts[0], r * r + 1 + 2 * g as u64 * r);
            assert_eq!(lpoly_from_counts(&counts, g, r * r).unwrap(), l);
        }
    }

    #[test]
    fn rejects_inconsistent_counts() {
        // S_1 = 1, a_1 = -1, S_2 = 238: 2 a_2 = -237.
        assert_eq!(lpoly_from_counts(&[16, 19], 2, 16).unwrap_err(), Error::NonIntegral(2));
        assert!(lpoly_from_counts(&[1; 7], 7, 2).is_err());
        assert!(lpoly_from_counts(&[5], 2, 4).is_err());
    }
}
