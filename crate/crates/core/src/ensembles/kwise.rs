use rand::Rng;

use super::Gf2n;
use crate::error::{Error, Result};
use crate::seed::LabRng;

/// Boolean functions `f(x) = lsb(p(x))` for polynomials `p` of degree below
/// `k` over GF(2^n).
///
/// Evaluating a uniformly random such polynomial at `k` distinct points gives
/// a uniform point of `GF(2^n)^k` (the Vandermonde map is invertible), so the
/// low bits are exactly `k`-wise independent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KWiseFunctionFamily {
    field: Gf2n,
    k: usize,
}

pub const MAX_KWISE_BITS: u32 = 16;
pub const MAX_KWISE_ORDER: usize = 8;

pub fn kwise_poly_family(n: u32, k: usize) -> Result<KWiseFunctionFamily> {
    if !(1..=MAX_KWISE_BITS).contains(&n) {
        return Err(Error::OutOfRange { what: "n", value: n as usize, range: "1..=16" });
    }
    if !(1..=MAX_KWISE_ORDER).contains(&k) {
        return Err(Error::OutOfRange { what: "k", value: k, range: "1..=8" });
    }
    Ok(KWiseFunctionFamily { field: Gf2n::new(n)?, k })
}

impl KWiseFunctionFamily {
    pub fn bits(&self) -> u32 {
        self.field.degree()
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn domain_size(&self) -> usize {
        1 << self.bits()
    }

    /// `2^{n k}`, or `None` if it does not fit in 128 bits.
    pub fn seed_count(&self) -> Option<u128> {
        1u128.checked_shl(self.bits() * self.k as u32)
    }

    /// Coefficients `c_0, ..., c_{k-1}` of the seed with the given index
    /// (base-`2^n` digits, `c_0` least significant).
    pub fn coefficients(&self, mut index: u128) -> Vec<u32> {
        let n = self.bits();
        let mask = (1u128 << n) - 1;
        (0..self.k)
            .map(|_| {
                let c = (index & mask) as u32;
                index >>= n;
                c
            })
            .collect()
    }

    pub fn random_coefficients(&self, rng: &mut LabRng) -> Vec<u32> {
        (0..self.k).map(|_| rng.random_range(0..self.field.order())).collect()
    }

    /// `lsb(c_0 + c_1 x + ... + c_{k-1} x^{k-1})`, by Horner's rule.
    #[inline]
    pub fn eval(&self, coeffs: &[u32], x: u32) -> u8 {
        let p = coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.field.add(self.field.mul(acc, x), c));
        (p & 1) as u8
    }

    pub fn table(&self, coeffs: &[u32]) -> Vec<u8> {
        (0..self.field.order()).map(|x| self.eval(coeffs, x)).collect()
    }
}
