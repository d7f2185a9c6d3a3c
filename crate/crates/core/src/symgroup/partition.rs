use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `t` for which partitions and character tables are provided.
pub const MAX_T: usize = 8;

/// A Young diagram: weakly decreasing positive row lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidPartition("empty row list".into()));
        }
        if rows.contains(&0) {
            return Err(Error::InvalidPartition(format!("{rows:?} has a zero row")));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{rows:?} is not weakly decreasing")));
        }
        Ok(Self(rows))
    }

    /// Builds a partition from unsorted positive parts (e.g. cycle lengths).
    pub fn from_parts(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `t` with `self ⊢ t`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0[0];
        Partition((0..cols).map(|j| self.0.iter().filter(|&&r| r > j).count()).collect())
    }

    /// Boxes as `(row, column)`, zero-based.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
    }

    pub fn hook_length(&self, i: usize, j: usize) -> usize {
        let arm = self.0[i] - j - 1;
        let leg = self.0[i + 1..].iter().filter(|&&r| r > j).count();
        arm + leg + 1
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let rows = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(rows)
    }
}

/// All partitions of `t` in reverse-lexicographic order, `1 <= t <= 8`.
pub fn partitions(t: usize) -> Result<Vec<Partition>> {
    if !(1..=MAX_T).contains(&t) {
        return Err(Error::OutOfRange { what: "t", value: t, range: "1..=8" });
    }
    Ok(partitions_of(t))
}

pub(crate) fn partitions_of(t: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for first in (1..=remaining.min(max)).rev() {
            prefix.push(first);
            rec(remaining - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, t, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the Specht module, by the hook-length formula.
pub fn specht_dim(lambda: &Partition) -> u128 {
    let t = lambda.size() as u128;
    let fact: u128 = (1..=t).product();
    let hooks: u128 = lambda.boxes().map(|(i, j)| lambda.hook_length(i, j) as u128).product();
    fact / hooks
}

/// `prod_{(i,j) in lambda} (d + j - i)`; zero when `lambda` has more than
/// `d` rows.
pub fn content_product(lambda: &Partition, d: usize) -> u128 {
    if lambda.len() > d {
        return 0;
    }
    lambda.boxes().map(|(i, j)| (d + j - i) as u128).product()
}

/// Dimension of the Weyl module `W_lambda` of `U(d)`.
pub fn weyl_dim(lambda: &Partition, d: usize) -> u128 {
    let hooks: u128 = lambda.boxes().map(|(i, j)| lambda.hook_length(i, j) as u128).product();
    content_product(lambda, d) / hooks
}
