use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;

use super::{uniform_permutation, CliffordEnsemble, Isometry, KWiseFunctionFamily, ProductEnsemble, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::scalar::{cone, Real};
use crate::seed::{rng, LabRng, Seed};
use crate::symgroup::factorial;
use crate::tensor::ComplexOperator;

fn check_bijection(pi: &[usize]) -> Result<()> {
    let mut seen = vec![false; pi.len()];
    for &y in pi {
        if y >= pi.len() || std::mem::replace(&mut seen[y], true) {
            return Err(Error::NotBijective(pi.len()));
        }
    }
    Ok(())
}

fn check_boolean(f: &[u8]) -> Result<()> {
    if f.iter().any(|&b| b > 1) {
        return Err(Error::NotBoolean);
    }
    Ok(())
}

fn perm_monomial<T: Real>(pi: Vec<usize>) -> Isometry<T> {
    let d = pi.len();
    Isometry::Monomial { perm: pi, phases: vec![cone(); d] }
}

fn phase_monomial<T: Real>(f: &[u8]) -> Isometry<T> {
    let one = T::one();
    Isometry::Monomial {
        perm: (0..f.len()).collect(),
        phases: f
            .iter()
            .map(|&b| Complex::new(if b == 0 { one } else { -one }, T::zero()))
            .collect(),
    }
}

/// `P_pi |x> = |pi(x)>`.
pub fn perm_operator<T: Real>(pi: &[usize]) -> Result<ComplexOperator<T>> {
    check_bijection(pi)?;
    Ok(perm_monomial::<T>(pi.to_vec()).to_dense())
}

/// `F_f |x> = (-1)^{f(x)} |x>`.
pub fn phase_operator<T: Real>(f: &[u8]) -> Result<ComplexOperator<T>> {
    check_boolean(f)?;
    Ok(phase_monomial::<T>(f).to_dense())
}

/// The permutation of `0..d` with lexicographic rank `index`.
fn unrank_permutation(d: usize, mut index: u128) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..d).collect();
    let mut out = Vec::with_capacity(d);
    for i in (0..d).rev() {
        let f = factorial(i);
        let q = (index / f) as usize;
        index %= f;
        out.push(pool.remove(q));
    }
    out
}

/// Uniformly random basis permutations `P_pi` of `C^d`.
#[derive(Clone, Debug)]
pub struct PermutationEnsemble {
    pub d: usize,
}

impl<T: Real> UnitaryEnsemble<T> for PermutationEnsemble {
    fn descriptor(&self) -> String {
        format!("permutation(d={})", self.d)
    }

    fn dim_in(&self) -> usize {
        self.d
    }

    fn dim_out(&self) -> usize {
        self.d
    }

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T> {
        perm_monomial(uniform_permutation(self.d, rng))
    }

    fn cardinality(&self) -> Option<u128> {
        (self.d <= 34).then(|| factorial(self.d))
    }

    fn element(&self, index: u128) -> Option<Isometry<T>> {
        (index < <Self as UnitaryEnsemble<T>>::cardinality(self)?)
            .then(|| perm_monomial(unrank_permutation(self.d, index)))
    }
}

/// Binary phases `F_f` for uniformly random `f : [d] -> {0, 1}`.
#[derive(Clone, Debug)]
pub struct PhaseEnsemble {
    pub d: usize,
}

impl<T: Real> UnitaryEnsemble<T> for PhaseEnsemble {
    fn descriptor(&self) -> String {
        format!("phase(d={})", self.d)
    }

    fn dim_in(&self) -> usize {
        self.d
    }

    fn dim_out(&self) -> usize {
        self.d
    }

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T> {
        let f: Vec<u8> = (0..self.d).map(|_| rng.random_range(0..2u8)).collect();
        phase_monomial(&f)
    }

    fn cardinality(&self) -> Option<u128> {
        1u128.checked_shl(self.d as u32).filter(|_| self.d < 128)
    }

    fn element(&self, index: u128) -> Option<Isometry<T>> {
        if index >= <Self as UnitaryEnsemble<T>>::cardinality(self)? {
            return None;
        }
        let f: Vec<u8> = (0..self.d).map(|x| (index >> x & 1) as u8).collect();
        Some(phase_monomial(&f))
    }
}

/// Binary phases drawn from a k-wise independent polynomial family.
#[derive(Clone, Debug)]
pub struct PolyPhaseEnsemble {
    pub family: KWiseFunctionFamily,
}

impl<T: Real> UnitaryEnsemble<T> for PolyPhaseEnsemble {
    fn descriptor(&self) -> String {
        format!("poly-phase(n={}, k={})", self.family.bits(), self.family.order())
    }

    fn dim_in(&self) -> usize {
        self.family.domain_size()
    }

    fn dim_out(&self) -> usize {
        self.family.domain_size()
    }

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T> {
        phase_monomial(&self.family.table(&self.family.random_coefficients(rng)))
    }

    fn cardinality(&self) -> Option<u128> {
        self.family.seed_count()
    }

    fn element(&self, index: u128) -> Option<Isometry<T>> {
        (index < self.family.seed_count()?).then(|| phase_monomial(&self.family.table(&self.family.coefficients(index))))
    }
}

/// The `n`-qubit PFC ensemble `P F C` with independent uniform factors.
pub fn pfc<T: Real>(n: usize) -> Result<ProductEnsemble<T>> {
    let d = 1usize << n;
    ProductEnsemble::new(vec![
        Arc::new(PermutationEnsemble { d }) as Arc<dyn UnitaryEnsemble<T>>,
        Arc::new(PhaseEnsemble { d }),
        Arc::new(CliffordEnsemble::new(n)?),
    ])
}

/// One draw from the `n`-qubit PFC ensemble, `1 <= n <= 3`.
pub fn pfc_sample<T: Real>(n: usize, seed: Seed) -> Result<ComplexOperator<T>> {
    Ok(pfc::<T>(n)?.sample_with(&mut rng(seed)).to_dense())
}
