use std::fmt;

use super::Partition;
use crate::error::{Error, Result};

/// A permutation of `{0, ..., t-1}` in one-line notation.
///
/// Composition follows function composition: `(p * q)(i) = p(q(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotBijective(n));
            }
        }
        Ok(Self(images))
    }

    pub fn identity(t: usize) -> Self {
        Self((0..t).collect())
    }

    pub fn transposition(t: usize, a: usize, b: usize) -> Result<Self> {
        if a >= t || b >= t {
            return Err(Error::OutOfRange { what: "transposition point", value: a.max(b), range: "[0, t)" });
        }
        let mut v: Vec<usize> = (0..t).collect();
        v.swap(a, b);
        Ok(Self(v))
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Self(inv)
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut lens = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lens.push(len);
        }
        lens
    }

    pub fn num_cycles(&self) -> usize {
        self.cycle_lengths().len()
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_parts(self.cycle_lengths()).expect("a nonempty permutation has a cycle type")
    }

    pub fn sign(&self) -> i64 {
        if (self.len() - self.num_cycles()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// All permutations of `t` points in lexicographic order of one-line
/// notation.
pub fn all_permutations(t: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..t).collect();
    let mut out = vec![Permutation(cur.clone())];
    // Standard next-permutation step.
    loop {
        let Some(i) = (1..t).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..t).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation(cur.clone()));
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
