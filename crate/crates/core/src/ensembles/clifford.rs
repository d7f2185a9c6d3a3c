//! Clifford unitaries on up to three qubits.
//!
//! A Clifford is fixed, up to a global phase, by the images of the Pauli
//! generators: `C X_j C^dagger = ±P(a_j)` and `C Z_j C^dagger = ±P(b_j)`,
//! where `(a_1, b_1, ..., a_n, b_n)` is a symplectic basis of `F_2^{2n}`.
//! Sampling draws the basis vector by vector (each step is uniform over the
//! admissible choices, so the whole basis is uniform over `Sp(2n, 2)`) and
//! the `2n` signs independently.

use std::sync::OnceLock;

use num_complex::Complex;
use rand::Rng;

use super::{Isometry, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::scalar::{czero, sqrt, Real};
use crate::seed::LabRng;
use crate::tensor::ComplexOperator;

pub const MAX_CLIFFORD_QUBITS: usize = 3;

/// The Hermitian Pauli `i^{|x & z|} X^x Z^z` on `n` qubits. Qubit `j`
/// (zero-based, most significant first) corresponds to bit `n - 1 - j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pauli {
    pub n: usize,
    pub x: u32,
    pub z: u32,
}

impl Pauli {
    /// From a `2n`-bit vector `(x | z)`, `x` in the high bits.
    pub fn from_vector(n: usize, v: u32) -> Self {
        let mask = (1u32 << n) - 1;
        Self { n, x: v >> n, z: v & mask }
    }

    pub fn vector(&self) -> u32 {
        (self.x << self.n) | self.z
    }

    /// All `4^n` Paulis in vector order.
    pub fn all(n: usize) -> impl Iterator<Item = Pauli> {
        (0..1u32 << (2 * n)).map(move |v| Pauli::from_vector(n, v))
    }

    /// The monomial form: `P |b> = phase(b) |b ^ x>`.
    pub fn monomial<T: Real>(&self, sign: bool) -> Isometry<T> {
        let d = 1usize << self.n;
        let base = match (self.x & self.z).count_ones() % 4 {
            0 => Complex::new(1.0, 0.0),
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        };
        let base = if sign { -base } else { base };
        let perm = (0..d).map(|b| b ^ self.x as usize).collect();
        let phases = (0..d)
            .map(|b| {
                let s = if (self.z & b as u32).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                Complex::new(T::lit(base.re * s), T::lit(base.im * s))
            })
            .collect();
        Isometry::Monomial { perm, phases }
    }

    pub fn to_operator<T: Real>(&self) -> ComplexOperator<T> {
        self.monomial::<T>(false).to_dense()
    }
}

/// `<u, v> = |x_u & z_v| + |z_u & x_v| mod 2` on `2n`-bit vectors.
pub fn symplectic_form(n: usize, u: u32, v: u32) -> u32 {
    let (a, b) = (Pauli::from_vector(n, u), Pauli::from_vector(n, v));
    ((a.x & b.z).count_ones() + (a.z & b.x).count_ones()) % 2
}

/// Admissible image for slot `k` of `(a_1, b_1, a_2, b_2, ...)` given the
/// earlier slots.
fn admissible(n: usize, prev: &[u32], v: u32) -> bool {
    if v == 0 {
        return false;
    }
    let k = prev.len();
    let pair_start = k - k % 2;
    for (i, &p) in prev.iter().enumerate() {
        let want = if k % 2 == 1 && i == pair_start { 1 } else { 0 };
        if symplectic_form(n, p, v) != want {
            return false;
        }
    }
    true
}

fn symplectic_bases(n: usize) -> &'static [Vec<u32>] {
    static CACHE: [OnceLock<Vec<Vec<u32>>>; 2] = [OnceLock::new(), OnceLock::new()];
    CACHE[n - 1].get_or_init(|| {
        fn rec(n: usize, prev: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if prev.len() == 2 * n {
                out.push(prev.clone());
                return;
            }
            for v in 1..1u32 << (2 * n) {
                if admissible(n, prev, v) {
                    prev.push(v);
                    rec(n, prev, out);
                    prev.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    })
}

fn sample_basis(n: usize, rng: &mut LabRng) -> Vec<u32> {
    let mut prev = Vec::with_capacity(2 * n);
    while prev.len() < 2 * n {
        let v = rng.random_range(1..1u32 << (2 * n));
        if admissible(n, &prev, v) {
            prev.push(v);
        }
    }
    prev
}

/// Builds the unitary with `X_j -> (-1)^{s_j} P(a_j)` and
/// `Z_j -> (-1)^{r_j} P(b_j)`, where `signs` holds `s_j` in bit `2j` and
/// `r_j` in bit `2j + 1`.
fn build<T: Real>(n: usize, basis: &[u32], signs: u32) -> ComplexOperator<T> {
    let d = 1usize << n;
    let x_img: Vec<Isometry<T>> = (0..n)
        .map(|j| Pauli::from_vector(n, basis[2 * j]).monomial(signs >> (2 * j) & 1 == 1))
        .collect();
    let z_img: Vec<Isometry<T>> = (0..n)
        .map(|j| Pauli::from_vector(n, basis[2 * j + 1]).monomial(signs >> (2 * j + 1) & 1 == 1))
        .collect();

    // The image of |0...0> is the joint +1 eigenvector of the Z images.
    let half = T::lit(0.5);
    let stab = (0..d)
        .find_map(|b| {
            let mut v = vec![czero::<T>(); d];
            v[b] = Complex::new(T::one(), T::zero());
            for z in &z_img {
                let zv = z.apply(&v).expect("pauli dimension");
                for (a, c) in v.iter_mut().zip(zv) {
                    *a = (*a + c) * half;
                }
            }
            let norm = sqrt(v.iter().map(|c| c.norm_sqr()).sum::<T>());
            (norm > T::lit(1e-6)).then(|| v.into_iter().map(|c| c / norm).collect::<Vec<_>>())
        })
        .expect("a stabilizer state exists for a symplectic basis");

    let mut u = ComplexOperator::zeros(&[d], &[d]).expect("clifford dimension");
    for col in 0..d {
        let mut v = stab.clone();
        for (j, x) in x_img.iter().enumerate() {
            if col >> (n - 1 - j) & 1 == 1 {
                v = x.apply(&v).expect("pauli dimension");
            }
        }
        for (row, c) in v.into_iter().enumerate() {
            u.set(row, col, c);
        }
    }
    u
}

/// A uniformly random `n`-qubit Clifford (up to global phase), `1 <= n <= 3`.
pub fn clifford<T: Real>(n: usize, rng: &mut LabRng) -> Result<ComplexOperator<T>> {
    check_n(n)?;
    let basis = sample_basis(n, rng);
    let signs = rng.random_range(0..1u32 << (2 * n));
    Ok(build(n, &basis, signs))
}

fn check_n(n: usize) -> Result<()> {
    if !(1..=MAX_CLIFFORD_QUBITS).contains(&n) {
        return Err(Error::OutOfRange { what: "Clifford qubits", value: n, range: "1..=3" });
    }
    Ok(())
}

/// The Clifford group modulo phases. Enumerable for `n <= 2`
/// (24 and 11520 elements).
#[derive(Clone, Debug)]
pub struct CliffordEnsemble {
    n: usize,
}

impl CliffordEnsemble {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }
}

impl<T: Real> UnitaryEnsemble<T> for CliffordEnsemble {
    fn descriptor(&self) -> String {
        format!("clifford(n={})", self.n)
    }

    fn dim_in(&self) -> usize {
        1 << self.n
    }

    fn dim_out(&self) -> usize {
        1 << self.n
    }

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T> {
        Isometry::Dense(clifford(self.n, rng).expect("qubit count validated in new"))
    }

    fn cardinality(&self) -> Option<u128> {
        (self.n <= 2).then(|| symplectic_bases(self.n).len() as u128 * (1u128 << (2 * self.n)))
    }

    fn element(&self, index: u128) -> Option<Isometry<T>> {
        if self.n > 2 {
            return None;
        }
        let bases = symplectic_bases(self.n);
        let shift = 2 * self.n;
        let b = usize::try_from(index >> shift).ok()?;
        let basis = bases.get(b)?;
        let signs = (index & ((1u128 << shift) - 1)) as u32;
        Some(Isometry::Dense(build(self.n, basis, signs)))
    }
}
