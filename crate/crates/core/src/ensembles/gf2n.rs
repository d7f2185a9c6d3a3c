use crate::error::{Error, Result};

/// Irreducible polynomials over GF(2) of degree 1..=16, bit `i` holding the
/// coefficient of `x^i`.
const IRREDUCIBLE: [u32; 16] = [
    0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11B, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
];

pub fn irreducible_poly(n: u32) -> Result<u32> {
    if !(1..=16).contains(&n) {
        return Err(Error::OutOfRange { what: "field degree", value: n as usize, range: "1..=16" });
    }
    Ok(IRREDUCIBLE[n as usize - 1])
}

/// The field GF(2^n), elements as `n`-bit integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2n {
    n: u32,
    modulus: u32,
}

impl Gf2n {
    pub fn new(n: u32) -> Result<Self> {
        Ok(Self { n, modulus: irreducible_poly(n)? })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        1 << self.n
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    /// Shift-and-add multiplication with reduction by the modulus.
    #[inline]
    pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        let top = 1u32 << self.n;
        let mut acc = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        acc
    }
}
