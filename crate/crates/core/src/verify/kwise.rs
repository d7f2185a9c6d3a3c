use crate::ensembles::{kwise_poly_family, KWiseFunctionFamily, PolyPhaseEnsemble};
use crate::error::{Error, Result};
use crate::moments::{perm_twirl_exact, pf_twirl_exact, phase_twirl_exact, twirl_exact_enum};
use crate::Operator;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KWiseCheck {
    /// Sets of `k` distinct inputs examined.
    pub tuples_checked: u64,
    pub seeds: u128,
    /// Largest `|count - seeds / 2^k|` over all tuples and output patterns.
    pub max_deviation: u128,
}

impl KWiseCheck {
    pub fn is_uniform(&self) -> bool {
        self.max_deviation == 0
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Tabulates the output pattern of every `k`-set of distinct inputs over
/// all seeds of the family and compares with the uniform count.
pub fn kwise_exhaustive_check(family: &KWiseFunctionFamily) -> Result<KWiseCheck> {
    let k = family.order();
    let n = family.domain_size();
    let seeds = family
        .seed_count()
        .filter(|&s| s <= 1 << 24)
        .ok_or_else(|| Error::NotEnumerable(format!("{} seeds", family.domain_size())))?;
    if k > n {
        return Err(Error::InvalidParameter(format!("order {k} exceeds the domain size {n}")));
    }
    let tables: Vec<Vec<u8>> = (0..seeds).map(|i| family.table(&family.coefficients(i))).collect();
    let expected = seeds >> k;
    let mut counts = vec![0u128; 1 << k];
    let mut comb: Vec<usize> = (0..k).collect();
    let mut tuples = 0u64;
    let mut max_deviation = 0u128;
    loop {
        counts.iter_mut().for_each(|c| *c = 0);
        for table in &tables {
            let pattern = comb.iter().fold(0usize, |acc, &x| (acc << 1) | table[x] as usize);
            counts[pattern] += 1;
        }
        for &c in &counts {
            max_deviation = max_deviation.max(c.abs_diff(expected));
        }
        if seeds % (1 << k) != 0 {
            max_deviation = max_deviation.max(1);
        }
        tuples += 1;
        if !next_combination(&mut comb, n) {
            break;
        }
    }
    Ok(KWiseCheck { tuples_checked: tuples, seeds, max_deviation })
}

#[derive(Clone, Debug)]
pub struct SubstitutionReport {
    pub operators: usize,
    /// Entrywise residual between the PF twirl with polynomial phases and
    /// with all phase functions.
    pub max_residual: f64,
    /// The same for the phase twirl alone.
    pub phase_residual: f64,
}

/// Replaces the uniform phase family on `n` bits by the `2t`-wise
/// independent polynomial family and compares the exact twirls.
pub fn kwise_substitution(n: u32, t: usize, operators: &[Operator]) -> Result<SubstitutionReport> {
    let d = 1usize << n;
    let poly = PolyPhaseEnsemble { family: kwise_poly_family(n, 2 * t)? };
    let mut max_residual: f64 = 0.0;
    let mut phase_residual: f64 = 0.0;
    for x in operators {
        let phased = twirl_exact_enum(&poly, t, x)?;
        phase_residual = phase_residual.max(phased.max_abs_diff(&phase_twirl_exact(x, d, t)?)?);
        let sub = perm_twirl_exact(&phased, d, t)?;
        max_residual = max_residual.max(sub.max_abs_diff(&pf_twirl_exact(x, d, t)?)?);
    }
    Ok(SubstitutionReport { operators: operators.len(), max_residual, phase_residual })
}
