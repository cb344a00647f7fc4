//! Zero-weight dimensions against symmetric-group dimensions: the weight
//! multiplicity comes from the Freudenthal recursion on the polynomial
//! gl_n module of highest weight lambda^t, the symmetric-group dimension
//! from the hook length formula on lambda.

use crate::error::{Error, Result};
use crate::linalg::{rint, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// All partitions of n, descending parts, lexicographically sorted.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, left: usize, max: usize) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for take in (1..=left.min(max)).rev() {
            cur.push(take);
            rec(out, cur, left - take, take);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, n, n.max(1));
    out.sort();
    out
}

pub fn transpose_partition(lambda: &[usize]) -> Vec<usize> {
    let rows = lambda.first().copied().unwrap_or(0);
    (0..rows)
        .map(|c| lambda.iter().filter(|&&x| x > c).count())
        .collect()
}

/// Dimension of the symmetric-group module of shape lambda by the hook
/// length formula.
pub fn hook_length_dim(lambda: &[usize]) -> usize {
    let n: usize = lambda.iter().sum();
    let transpose = transpose_partition(lambda);
    let mut numerator: u128 = 1;
    for k in 1..=n {
        numerator *= k as u128;
    }
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = transpose[j] - i - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    (numerator / hooks) as usize
}

/// Weyl dimension formula for the polynomial gl_p module of highest weight
/// lambda (padded with zeros to p parts).
pub fn gl_weyl_dim(p: usize, lambda: &[usize]) -> usize {
    if lambda.len() > p {
        return 0;
    }
    let mut lam: Vec<i64> = lambda.iter().map(|&x| x as i64).collect();
    lam.resize(p, 0);
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..p {
        for j in (i + 1)..p {
            num *= (lam[i] - lam[j] + j as i64 - i as i64) as i128;
            den *= (j - i) as i128;
        }
    }
    (num / den) as usize
}

/// Multiplicity of the weight `target` in the irreducible gl_n module of
/// highest weight `lambda`, by the Freudenthal recursion over the weight
/// poset with the standard inner product on weight tuples.
pub fn weight_multiplicity(n: usize, lambda: &[usize], target: &[usize]) -> Result<usize> {
    let mut lam: Vec<i64> = lambda.iter().map(|&x| x as i64).collect();
    lam.resize(n, 0);
    if lam.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput("lambda is not a partition".into()));
    }
    let mut tgt: Vec<i64> = target.iter().map(|&x| x as i64).collect();
    tgt.resize(n, 0);
    if tgt.iter().sum::<i64>() != lam.iter().sum::<i64>() {
        return Ok(0);
    }

    // All weights: compositions dominated by lambda after sorting.
    let total: i64 = lam.iter().sum();
    let mut weights: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; n];
    collect_compositions(&mut weights, &mut cur, 0, total, lam[0]);
    weights.retain(|w| dominated(&lam, w));

    // Height of lambda - w in the root lattice orders the recursion.
    let height = |w: &[i64]| -> i64 {
        let mut acc = 0;
        let mut partial = 0;
        for t in 0..n - 1 {
            partial += lam[t] - w[t];
            acc += partial;
        }
        acc
    };
    weights.sort_by_key(|w| height(w));

    let rho: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
    let norm2_shifted = |w: &[i64]| -> i64 {
        w.iter().zip(&rho).map(|(x, r)| (x + r) * (x + r)).sum()
    };
    let lam_norm = norm2_shifted(&lam);

    let mut mult: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    for w in &weights {
        if *w == lam {
            mult.insert(w.clone(), rint(1));
            continue;
        }
        let mut numer = Rat::zero();
        for a in 0..n {
            for b in (a + 1)..n {
                // alpha = e_a - e_b; sum over w + j alpha still a weight.
                let mut j = 1i64;
                loop {
                    let mut up = w.clone();
                    up[a] += j;
                    up[b] -= j;
                    match mult.get(&up) {
                        Some(m) if !m.is_zero() => {
                            let pairing = w[a] - w[b] + 2 * j;
                            numer += m * rint(pairing);
                        }
                        _ => {
                            if !weights.contains(&up) {
                                break;
                            }
                        }
                    }
                    if up[b] < 0 {
                        break;
                    }
                    j += 1;
                }
            }
        }
        let denom = lam_norm - norm2_shifted(w);
        if denom == 0 {
            return Err(Error::InvalidInput("degenerate Freudenthal denominator".into()));
        }
        let m = numer * rint(2) / rint(denom);
        mult.insert(w.clone(), m);
    }

    let m = mult.get(&tgt).cloned().unwrap_or_else(Rat::zero);
    if !m.is_integer() {
        return Err(Error::InvalidInput("non-integer multiplicity".into()));
    }
    Ok(usize::try_from(m.to_integer()).map_err(|_| Error::InvalidInput("negative".into()))?)
}

fn collect_compositions(out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, pos: usize, left: i64, cap: i64) {
    if pos + 1 == cur.len() {
        if left <= cap {
            cur[pos] = left;
            out.push(cur.clone());
        }
        return;
    }
    for take in 0..=left.min(cap) {
        cur[pos] = take;
        collect_compositions(out, cur, pos + 1, left - take, cap);
    }
}

fn dominated(lam: &[i64], w: &[i64]) -> bool {
    let mut sorted = w.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut pl = 0i64;
    let mut pw = 0i64;
    for i in 0..lam.len() {
        pl += lam[i];
        pw += sorted[i];
        if pw > pl {
            return false;
        }
    }
    pl == pw
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchurWeylPair {
    pub lambda: Vec<usize>,
    pub zero_weight_dim: usize,
    pub hook_dim: usize,
    pub equal: bool,
}

/// For a partition lambda of n: the zero-weight dimension of the module
/// with highest weight lambda^t against the hook-length dimension of the
/// symmetric-group module of shape lambda.
pub fn schur_weyl_zero_weight(n: usize, lambda: &[usize]) -> Result<SchurWeylPair> {
    if lambda.iter().sum::<usize>() != n || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(format!("{lambda:?} is not a partition of {n}")));
    }
    let lt = transpose_partition(lambda);
    if lt.len() > n {
        return Err(Error::InvalidInput("transpose has more than n rows".into()));
    }
    let ones = vec![1usize; n];
    let zero_weight_dim = weight_multiplicity(n, &lt, &ones)?;
    let hook_dim = hook_length_dim(lambda);
    Ok(SchurWeylPair {
        lambda: lambda.to_vec(),
        zero_weight_dim,
        hook_dim,
        equal: zero_weight_dim == hook_dim,
    })
}
