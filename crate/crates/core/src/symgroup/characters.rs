use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use super::partition::partitions_of;
use super::{factorial, Partition, MAX_T};
use crate::error::{Error, Result};

/// Irreducible characters of `S_t`, rows and columns both indexed by
/// `partitions(t)` (irreps and cycle types respectively).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    t: usize,
    partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }

    pub fn value(&self, lambda: &Partition, cycle_type: &Partition) -> Option<i64> {
        Some(self.values[self.index_of(lambda)?][self.index_of(cycle_type)?])
    }

    /// Size of the conjugacy class with the given cycle type,
    /// `t! / prod_k (k^{m_k} m_k!)`.
    pub fn class_size(cycle_type: &Partition) -> u128 {
        let t = cycle_type.size();
        let mut z: u128 = 1;
        let rows = cycle_type.rows();
        let mut i = 0;
        while i < rows.len() {
            let k = rows[i];
            let m = rows[i..].iter().take_while(|&&r| r == k).count();
            z *= (k as u128).pow(m as u32) * factorial(m);
            i += m;
        }
        factorial(t) / z
    }

    /// Whitespace-separated integer matrix, one row per irrep.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for row in &self.values {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
            let _ = writeln!(s, "{}", cells.join(" ").trim_start());
        }
        s
    }
}

/// The character table of `S_t`, computed once per `t` and shared.
pub fn character_table(t: usize) -> Result<&'static CharacterTable> {
    static TABLES: [OnceLock<CharacterTable>; MAX_T] = [const { OnceLock::new() }; MAX_T];
    if !(1..=MAX_T).contains(&t) {
        return Err(Error::OutOfRange { what: "t", value: t, range: "1..=8" });
    }
    Ok(TABLES[t - 1].get_or_init(|| {
        let partitions = partitions_of(t);
        let mut memo = HashMap::new();
        let values = partitions
            .iter()
            .map(|l| partitions.iter().map(|m| mn(l.rows(), m.rows(), &mut memo)).collect())
            .collect();
        CharacterTable { t, partitions, values }
    }))
}

/// `chi_lambda` evaluated on the class of the given cycle type.
pub fn character(lambda: &Partition, cycle_type: &Partition) -> Result<i64> {
    if lambda.size() != cycle_type.size() {
        return Err(Error::InvalidPartition(format!(
            "{lambda} and {cycle_type} are partitions of different integers"
        )));
    }
    if lambda.size() <= MAX_T {
        let table = character_table(lambda.size())?;
        return Ok(table.value(lambda, cycle_type).expect("both partitions are in the table"));
    }
    Ok(mn(lambda.rows(), cycle_type.rows(), &mut HashMap::new()))
}

type Memo = HashMap<(Vec<usize>, Vec<usize>), i64>;

/// Murnaghan-Nakayama rule on beta-sets: removing a rim hook of length `r`
/// lowers one bead by `r` onto an empty position; the sign counts the beads
/// jumped over.
fn mn(lambda: &[usize], mu: &[usize], memo: &mut Memo) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return i64::from(lambda.is_empty());
    };
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &x)| x + l - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let nb = b - r;
        let jumped = beta.iter().filter(|&&x| nb < x && x < b).count();
        let mut next = beta.clone();
        next[i] = nb;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(k, &x)| x - (l - 1 - k))
            .filter(|&x| x > 0)
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, rest, memo);
    }
    memo.insert(key, total);
    total
}
