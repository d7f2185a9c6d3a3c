use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{cone, czero, Real};
use crate::seed::{rng, LabRng, Seed};
use crate::tensor::ComplexOperator;

/// A unitary or isometry, stored as a monomial matrix when possible.
///
/// `Monomial { perm, phases }` is the square matrix with
/// `U |x> = phases[x] |perm[x]>`.
#[derive(Clone, Debug, PartialEq)]
pub enum Isometry<T: Real> {
    Monomial { perm: Vec<usize>, phases: Vec<Complex<T>> },
    Dense(ComplexOperator<T>),
}

impl<T: Real> Isometry<T> {
    pub fn identity(d: usize) -> Self {
        Isometry::Monomial { perm: (0..d).collect(), phases: vec![cone(); d] }
    }

    pub fn dim_in(&self) -> usize {
        match self {
            Isometry::Monomial { perm, .. } => perm.len(),
            Isometry::Dense(m) => m.cols(),
        }
    }

    pub fn dim_out(&self) -> usize {
        match self {
            Isometry::Monomial { perm, .. } => perm.len(),
            Isometry::Dense(m) => m.rows(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.dim_in() == self.dim_out()
    }

    pub fn to_dense(&self) -> ComplexOperator<T> {
        match self {
            Isometry::Dense(m) => m.clone(),
            Isometry::Monomial { perm, phases } => {
                let d = perm.len();
                let mut m = ComplexOperator::zeros(&[d], &[d]).expect("monomial dimension within limits");
                for (x, (&y, &ph)) in perm.iter().zip(phases).enumerate() {
                    m.set(y, x, ph);
                }
                m
            }
        }
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        match self {
            Isometry::Dense(m) => m.apply(v),
            Isometry::Monomial { perm, phases } => {
                if v.len() != perm.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "vector of length {} for a monomial of size {}",
                        v.len(),
                        perm.len()
                    )));
                }
                let mut out = vec![czero(); v.len()];
                for (x, (&y, &ph)) in perm.iter().zip(phases).enumerate() {
                    out[y] = ph * v[x];
                }
                Ok(out)
            }
        }
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (
                Isometry::Monomial { perm: p1, phases: f1 },
                Isometry::Monomial { perm: p2, phases: f2 },
            ) => {
                if p1.len() != p2.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "composing monomials of sizes {} and {}",
                        p1.len(),
                        p2.len()
                    )));
                }
                let perm = p2.iter().map(|&y| p1[y]).collect();
                let phases = p2.iter().zip(f2).map(|(&y, &ph)| f1[y] * ph).collect();
                Ok(Isometry::Monomial { perm, phases })
            }
            _ => Ok(Isometry::Dense(self.to_dense().matmul(&other.to_dense())?)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    ExactEnumerable,
    Sampled,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::ExactEnumerable => "exact-enumerable",
            Exactness::Sampled => "sampled",
        })
    }
}

/// A samplable, possibly enumerable, family of isometries.
///
/// Enumeration is by index so that exact averages can be split across
/// workers; `element(i)` for `i < cardinality()` lists every member once
/// (with multiplicity, if the family has repeats).
pub trait UnitaryEnsemble<T: Real>: Send + Sync {
    /// Name plus parameters, e.g. `pfc(n=2)`.
    fn descriptor(&self) -> String;

    fn dim_in(&self) -> usize;

    fn dim_out(&self) -> usize;

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T>;

    fn sample(&self, seed: Seed) -> Isometry<T> {
        self.sample_with(&mut rng(seed))
    }

    /// Number of members when the family is enumerable.
    fn cardinality(&self) -> Option<u128> {
        None
    }

    fn element(&self, _index: u128) -> Option<Isometry<T>> {
        None
    }

    fn exactness(&self) -> Exactness {
        if self.cardinality().is_some() {
            Exactness::ExactEnumerable
        } else {
            Exactness::Sampled
        }
    }
}

/// Uniform random permutation of `0..d` (Fisher-Yates).
pub fn uniform_permutation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..d).collect();
    p.shuffle(rng);
    p
}

#[derive(Clone, Debug)]
pub struct IdentityEnsemble {
    pub d: usize,
}

impl<T: Real> UnitaryEnsemble<T> for IdentityEnsemble {
    fn descriptor(&self) -> String {
        format!("identity(d={})", self.d)
    }

    fn dim_in(&self) -> usize {
        self.d
    }

    fn dim_out(&self) -> usize {
        self.d
    }

    fn sample_with(&self, _rng: &mut LabRng) -> Isometry<T> {
        Isometry::identity(self.d)
    }

    fn cardinality(&self) -> Option<u128> {
        Some(1)
    }

    fn element(&self, index: u128) -> Option<Isometry<T>> {
        (index == 0).then(|| Isometry::identity(self.d))
    }
}

/// An explicit list of isometries with uniform weight.
#[derive(Clone, Debug)]
pub struct FiniteEnsemble<T: Real> {
    name: String,
    elements: Vec<Isometry<T>>,
}

impl<T: Real> FiniteEnsemble<T> {
    pub fn new(name: impl Into<String>, elements: Vec<Isometry<T>>) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidParameter("finite ensemble needs at least one element".into()))?;
        let (di, dout) = (first.dim_in(), first.dim_out());
        if elements.iter().any(|e| e.dim_in() != di || e.dim_out() != dout) {
            return Err(Error::DimensionMismatch("finite ensemble elements differ in shape".into()));
        }
        Ok(Self { name: name.into(), elements })
    }
}

impl<T: Real> UnitaryEnsemble<T> for FiniteEnsemble<T> {
    fn descriptor(&self) -> String {
        format!("{}(size={})", self.name, self.elements.len())
    }

    fn dim_in(&self) -> usize {
        self.elements[0].dim_in()
    }

    fn dim_out(&self) -> usize {
        self.elements[0].dim_out()
    }

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T> {
        self.elements[rng.random_range(0..self.elements.len())].clone()
    }

    fn cardinality(&self) -> Option<u128> {
        Some(self.elements.len() as u128)
    }

    fn element(&self, index: u128) -> Option<Isometry<T>> {
        self.elements.get(usize::try_from(index).ok()?).cloned()
    }
}

/// Product `U = U_0 U_1 ... U_{k-1}` of independent draws; `U_{k-1}` acts
/// first.
#[derive(Clone)]
pub struct ProductEnsemble<T: Real> {
    factors: Vec<Arc<dyn UnitaryEnsemble<T>>>,
}

impl<T: Real> ProductEnsemble<T> {
    pub fn new(factors: Vec<Arc<dyn UnitaryEnsemble<T>>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter("empty product ensemble".into()));
        }
        for w in factors.windows(2) {
            if w[0].dim_in() != w[1].dim_out() {
                return Err(Error::DimensionMismatch(format!(
                    "{} cannot follow {}",
                    w[0].descriptor(),
                    w[1].descriptor()
                )));
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[Arc<dyn UnitaryEnsemble<T>>] {
        &self.factors
    }
}

impl<T: Real> UnitaryEnsemble<T> for ProductEnsemble<T> {
    fn descriptor(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|f| f.descriptor()).collect();
        format!("product[{}]", parts.join(" * "))
    }

    fn dim_in(&self) -> usize {
        self.factors.last().expect("nonempty").dim_in()
    }

    fn dim_out(&self) -> usize {
        self.factors[0].dim_out()
    }

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T> {
        let draws: Vec<Isometry<T>> = self.factors.iter().map(|f| f.sample_with(rng)).collect();
        draws
            .into_iter()
            .reduce(|acc, u| acc.compose(&u).expect("factor shapes checked at construction"))
            .expect("nonempty")
    }

    fn cardinality(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, f| acc.checked_mul(f.cardinality()?))
    }

    fn element(&self, index: u128) -> Option<Isometry<T>> {
        let total = self.cardinality()?;
        if index >= total {
            return None;
        }
        // Mixed radix, first factor most significant.
        let mut rest = index;
        let mut parts = Vec::with_capacity(self.factors.len());
        for f in self.factors.iter().rev() {
            let c = f.cardinality()?;
            parts.push(f.element(rest % c)?);
            rest /= c;
        }
        parts.reverse();
        parts.into_iter().reduce(|acc, u| acc.compose(&u).expect("factor shapes checked at construction"))
    }
}
