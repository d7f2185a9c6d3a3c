//! Keyed permutations and functions standing in for PRPs and PRFs.
//!
//! These are deterministic in the key and well mixed, but make no security
//! claim whatsoever. Every report involving them carries [`NOT_SECURE`].

use num_complex::Complex;

use super::{clifford, Isometry, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::scalar::{cone, Real};
use crate::seed::{mix64, rng, split, LabRng, Seed};

pub const NOT_SECURE: &str = "NOT SECURE: non-cryptographic keyed stand-in";

const ROUNDS: usize = 4;
const PRF_DOMAIN_TAG: u64 = 0x5052_465f_7461_6731;

fn check_bits(n: u32) -> Result<()> {
    if !(1..=16).contains(&n) {
        return Err(Error::OutOfRange { what: "n", value: n as usize, range: "1..=16" });
    }
    Ok(())
}

/// Balanced four-round Feistel network on `n`-bit strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeistelPrp {
    n: u32,
    round_keys: [u64; ROUNDS],
}

impl FeistelPrp {
    pub fn new(n: u32, key: Seed) -> Result<Self> {
        check_bits(n)?;
        if n % 2 == 1 {
            return Err(Error::OddDomain(n));
        }
        let round_keys = std::array::from_fn(|r| split(key, r as u64));
        Ok(Self { n, round_keys })
    }

    pub fn eval(&self, x: u32) -> u32 {
        let h = self.n / 2;
        let mask = (1u32 << h) - 1;
        let (mut l, mut r) = (x >> h, x & mask);
        for &k in &self.round_keys {
            let f = (mix64(k ^ u64::from(r)) as u32) & mask;
            (l, r) = (r, l ^ f);
        }
        (l << h) | r
    }

    pub fn table(&self) -> Vec<usize> {
        (0..1u32 << self.n).map(|x| self.eval(x) as usize).collect()
    }
}

/// Function table of the keyed permutation on `{0,1}^n` (`n` even).
pub fn keyed_prp(n: u32, key: Seed) -> Result<Vec<usize>> {
    Ok(FeistelPrp::new(n, key)?.table())
}

/// Function table of the keyed Boolean function on `{0,1}^n`.
pub fn keyed_prf(n: u32, key: Seed) -> Result<Vec<u8>> {
    check_bits(n)?;
    let k = mix64(key ^ PRF_DOMAIN_TAG);
    Ok((0..1u64 << n).map(|x| (mix64(k ^ x) & 1) as u8).collect())
}

/// `U_k = P_{k1} F_{k2} C_{k3}` with the keyed stand-ins above; the three
/// sub-keys are split from the sampling seed.
#[derive(Clone, Debug)]
pub struct KeyedPfcEnsemble {
    n: usize,
}

impl KeyedPfcEnsemble {
    pub fn new(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::OddDomain(n as u32));
        }
        if !(1..=super::MAX_CLIFFORD_QUBITS).contains(&n) {
            return Err(Error::OutOfRange { what: "n", value: n, range: "2" });
        }
        Ok(Self { n })
    }

    pub fn unitary<T: Real>(&self, key: Seed) -> Isometry<T> {
        let n = self.n as u32;
        let perm = keyed_prp(n, split(key, 1)).expect("even n checked");
        let f = keyed_prf(n, split(key, 2)).expect("n in range");
        let one = T::one();
        let pf = Isometry::Monomial {
            phases: (0..perm.len())
                .map(|x| if f[x] == 0 { cone() } else { Complex::new(-one, T::zero()) })
                .collect(),
            perm,
        };
        let c = clifford(self.n, &mut rng(split(key, 3))).expect("n in range");
        pf.compose(&Isometry::Dense(c)).expect("matching dimensions")
    }
}

impl<T: Real> UnitaryEnsemble<T> for KeyedPfcEnsemble {
    fn descriptor(&self) -> String {
        format!("keyed-pfc(n={}; {NOT_SECURE})", self.n)
    }

    fn dim_in(&self) -> usize {
        1 << self.n
    }

    fn dim_out(&self) -> usize {
        1 << self.n
    }

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T> {
        use rand::Rng;
        self.unitary(rng.random())
    }
}
