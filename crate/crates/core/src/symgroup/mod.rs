//! Permutations, partitions, characters and coset representatives.

mod character;
mod partition;
mod permutation;

use serde::{Deserialize, Serialize};

pub use character::{character, character_table};
pub use partition::{hook_dimension, partitions_of, Partition};
pub use permutation::Permutation;

use crate::error::{Error, Result};
use crate::limits::Limits;

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc
}

/// All of `Σ_n`, identity first, in lexicographic order of image arrays.
pub fn enumerate_group(n: usize, limits: &Limits) -> Result<Vec<Permutation>> {
    limits.check_group_degree(n)?;
    Ok(permutation::all_permutations(n))
}

pub fn sign(sigma: &Permutation) -> i64 {
    sigma.sign()
}

/// A subset of `{0, …, m-1}`, members strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset {
    members: Vec<usize>,
    m: usize,
}

impl Subset {
    pub fn new(mut members: Vec<usize>, m: usize) -> Result<Subset> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) || members.iter().any(|&x| x >= m) {
            return Err(Error::Range(format!("{members:?} is not a subset of 0..{m}")));
        }
        Ok(Subset { members, m })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn ambient(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.binary_search(&j).is_ok()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.m).filter(|&j| !self.contains(j)).collect()
    }
}

/// The `i`-subsets of `{0, …, m-1}` in lexicographic order.
pub fn subsets(m: usize, i: usize) -> Vec<Subset> {
    fn go(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Subset>) {
        if left == 0 {
            out.push(Subset { members: cur.clone(), m });
            return;
        }
        for x in start..=m - left {
            cur.push(x);
            go(x + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= m {
        go(0, m, i, &mut Vec::new(), &mut out);
    }
    out
}

/// For each `i`-subset `S`, the order-preserving shuffle sending the first
/// `m - i` positions onto the complement of `S` and the last `i` positions
/// onto `S`. These are the minimal-length coset representatives of
/// `Σ_{m-i} × Σ_i` in `Σ_m`.
pub fn shuffles(m: usize, i: usize) -> Result<Vec<(Subset, Permutation)>> {
    if i > m {
        return Err(Error::Range(format!("subset size {i} exceeds {m}")));
    }
    Ok(subsets(m, i)
        .into_iter()
        .map(|s| {
            let mut images = s.complement();
            images.extend_from_slice(s.members());
            let perm = Permutation::new(images).expect("shuffle is a bijection");
            (s, perm)
        })
        .collect())
}

/// Whether `σ` lies in `Σ_{m-i} × Σ_i` (preserves the first `m - i` positions as a set).
pub fn in_young_subgroup(sigma: &Permutation, i: usize) -> bool {
    let m = sigma.degree();
    (0..m - i).all(|j| sigma.apply(j) < m - i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        let lim = Limits::default();
        assert_eq!(enumerate_group(3, &lim).unwrap().len(), 6);
        let g0 = enumerate_group(0, &lim).unwrap();
        assert_eq!(g0.len(), 1);
        assert_eq!(g0[0].degree(), 0);
        let g5 = enumerate_group(5, &lim).unwrap();
        assert_eq!(g5.len(), 120);
        assert!(g5[0].is_identity());
        let distinct: std::collections::HashSet<_> = g5.iter().collect();
        assert_eq!(distinct.len(), 120);
        assert!(matches!(enumerate_group(9, &lim), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn shuffle_examples() {
        let s = shuffles(3, 0).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].0.is_empty());
        assert!(s[0].1.is_identity());
        assert_eq!(shuffles(3, 1).unwrap().len(), 3);
        assert!(shuffles(2, 3).is_err());
        let (sub, perm) = &shuffles(4, 2).unwrap()[1];
        assert_eq!(sub.members(), &[0, 2]);
        assert_eq!(perm.images(), &[1, 3, 0, 2]);
    }

    #[test]
    fn shuffles_hit_distinct_cosets() {
        for m in 0..=5 {
            for i in 0..=m {
                let reps = shuffles(m, i).unwrap();
                assert_eq!(reps.len() as u128, binomial(m, i));
                for (a, (_, pa)) in reps.iter().enumerate() {
                    // each representative sends the last i positions onto its subset
                    for (b, (_, pb)) in reps.iter().enumerate() {
                        let q = pb.inverse().compose(pa);
                        assert_eq!(in_young_subgroup(&q, i), a == b, "m={m} i={i}");
                    }
                }
                // and together they cover every coset
                let group = enumerate_group(m, &Limits::default()).unwrap();
                for g in &group {
                    let hits = reps.iter().filter(|(_, p)| in_young_subgroup(&p.inverse().compose(g), i)).count();
                    assert_eq!(hits, 1);
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(factorial(0), 1);
    }
}
