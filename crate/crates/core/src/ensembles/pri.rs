use num_complex::Complex;
use rand::Rng;

use super::{keyed_prf, keyed_prp, uniform_permutation, Isometry, UnitaryEnsemble, NOT_SECURE};
use crate::error::{Error, Result};
use crate::scalar::{czero, sqrt, Real};
use crate::seed::{rng, split, LabRng, Seed};
use crate::tensor::{ComplexOperator, MAX_DIM};

/// Where the permutation and phase function of the isometry come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PriKeys {
    /// Uniform permutation and uniform function, drawn from the seed.
    Random,
    /// The keyed stand-ins, keyed by sub-keys of the seed (`n` even).
    Keyed,
}

fn check_ns(n: usize, s: usize) -> Result<()> {
    if s == 0 || s >= n {
        return Err(Error::InvalidParameter(format!("need 0 < s < n, got n = {n}, s = {s}")));
    }
    if n > 12 || 1usize << n > MAX_DIM {
        return Err(Error::DimensionOverflow { dim: 1usize << n.min(63), limit: MAX_DIM });
    }
    Ok(())
}

fn draw(n: usize, keys: PriKeys, key_or_seed: Seed) -> Result<(Vec<usize>, Vec<u8>)> {
    match keys {
        PriKeys::Random => {
            let mut r = rng(key_or_seed);
            let perm = uniform_permutation(1 << n, &mut r);
            let f = (0..1usize << n).map(|_| r.random_range(0..2u8)).collect();
            Ok((perm, f))
        }
        PriKeys::Keyed => Ok((
            keyed_prp(n as u32, split(key_or_seed, 1))?,
            keyed_prf(n as u32, split(key_or_seed, 2))?,
        )),
    }
}

fn pf_monomial<T: Real>(perm: Vec<usize>, f: &[u8]) -> Isometry<T> {
    let phases = f
        .iter()
        .map(|&b| Complex::new(if b == 0 { T::one() } else { -T::one() }, T::zero()))
        .collect();
    Isometry::Monomial { perm, phases }
}

/// `V |psi> = P F (|psi> ⊗ |+>^{⊗ s})`, a real `2^n x 2^{n-s}` isometry.
pub fn pri_isometry<T: Real>(n: usize, s: usize, key_or_seed: Seed, keys: PriKeys) -> Result<ComplexOperator<T>> {
    check_ns(n, s)?;
    let (perm, f) = draw(n, keys, key_or_seed)?;
    Ok(restrict_plus(&perm, &f, n, s))
}

fn restrict_plus<T: Real>(perm: &[usize], f: &[u8], n: usize, s: usize) -> ComplexOperator<T> {
    let (din, pad) = (1usize << (n - s), 1usize << s);
    let amp = T::one() / sqrt(T::lit(pad as f64));
    let mut v = ComplexOperator::zeros(&[1 << n], &[din]).expect("checked dimensions");
    for j in 0..din {
        for b in 0..pad {
            let x = j * pad + b;
            let sign = if f[x] == 0 { amp } else { -amp };
            v.set(perm[x], j, Complex::new(sign, T::zero()));
        }
    }
    v
}

/// A unitary `U` with `U (|psi> ⊗ |+>^{⊗ s}) = V |psi>` for a dense
/// isometry `V : C^{2^{n-s}} -> C^{2^n}`.
///
/// The columns of `V` are placed at the `|0>^{⊗ s}` positions, completed to
/// an orthonormal basis by Gram-Schmidt on the computational basis, and the
/// result is composed with Hadamards on the ancilla.
pub fn plus_extension<T: Real>(v: &ComplexOperator<T>, s: usize) -> Result<ComplexOperator<T>> {
    let (dout, din) = (v.rows(), v.cols());
    let pad = 1usize << s;
    if din * pad != dout {
        return Err(Error::DimensionMismatch(format!(
            "isometry {din} -> {dout} is not padded by {s} qubits"
        )));
    }
    let mut cols: Vec<Option<Vec<Complex<T>>>> = vec![None; dout];
    for j in 0..din {
        cols[j * pad] = Some((0..dout).map(|i| v.get(i, j)).collect());
    }
    let mut basis: Vec<Vec<Complex<T>>> = cols.iter().flatten().cloned().collect();
    let mut candidates = 0..dout;
    for slot in cols.iter_mut().filter(|c| c.is_none()) {
        loop {
            let e = candidates.next().ok_or_else(|| Error::InvalidParameter("input is not an isometry".into()))?;
            let mut w = vec![czero::<T>(); dout];
            w[e] = Complex::new(T::one(), T::zero());
            for b in &basis {
                let proj: Complex<T> = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= proj * bi;
                }
            }
            let norm = sqrt(w.iter().map(|z| z.norm_sqr()).sum::<T>());
            if norm > T::lit(1e-8) {
                let w: Vec<_> = w.into_iter().map(|z| z / norm).collect();
                basis.push(w.clone());
                *slot = Some(w);
                break;
            }
        }
    }
    let full = ComplexOperator::from_fn(&[dout], &[dout], |i, j| cols[j].as_ref().expect("completed")[i])?;
    // Hadamard^{⊗ s} on the low (ancilla) index bits.
    let h = T::one() / sqrt(T::lit(pad as f64));
    let had = ComplexOperator::from_fn(&[dout], &[dout], |i, j| {
        if i / pad != j / pad {
            return czero();
        }
        let sign = ((i % pad) & (j % pad)).count_ones().is_multiple_of(2);
        Complex::new(if sign { h } else { -h }, T::zero())
    })?;
    full.matmul(&had)
}

/// Isometries `C^{2^{n-s}} -> C^{2^n}` of the form `P F (· ⊗ |+>^{⊗ s})`.
#[derive(Clone, Debug)]
pub struct PriEnsemble {
    pub n: usize,
    pub s: usize,
    pub keys: PriKeys,
}

impl PriEnsemble {
    pub fn new(n: usize, s: usize, keys: PriKeys) -> Result<Self> {
        check_ns(n, s)?;
        if keys == PriKeys::Keyed && n % 2 == 1 {
            return Err(Error::OddDomain(n as u32));
        }
        Ok(Self { n, s, keys })
    }

    /// The unitary `P F` on `n` qubits extending the sampled isometry.
    pub fn sample_plus_extension<T: Real>(&self, rng: &mut LabRng) -> Isometry<T> {
        let (perm, f) = draw(self.n, self.keys, rng.random()).expect("parameters checked in new");
        pf_monomial(perm, &f)
    }
}

impl<T: Real> UnitaryEnsemble<T> for PriEnsemble {
    fn descriptor(&self) -> String {
        match self.keys {
            PriKeys::Random => format!("pri(n={}, s={}, random)", self.n, self.s),
            PriKeys::Keyed => format!("pri(n={}, s={}, keyed; {NOT_SECURE})", self.n, self.s),
        }
    }

    fn dim_in(&self) -> usize {
        1 << (self.n - self.s)
    }

    fn dim_out(&self) -> usize {
        1 << self.n
    }

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T> {
        let (perm, f) = draw(self.n, self.keys, rng.random()).expect("parameters checked in new");
        Isometry::Dense(restrict_plus(&perm, &f, self.n, self.s))
    }
}
