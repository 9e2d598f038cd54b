//! Irreducible characters of the symmetric group by the Murnaghan–Nakayama rule.
//!
//! Rim hooks are removed in the abacus picture: a partition with `ℓ` parts
//! has beta-numbers `β_i = λ_i + ℓ - 1 - i`, and removing a rim hook of length
//! `k` replaces some `β` by a free position `β - k`. The sign is `-1` to the
//! number of beta-numbers jumped over.

use std::collections::HashMap;

use super::Partition;
use crate::error::{Error, Result};

/// Value of `χ_λ` on the conjugacy class of cycle type `μ`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch { left: lambda.size(), right: mu.size() });
    }
    let mut memo = HashMap::new();
    Ok(mn(lambda.parts(), mu.parts(), &mut memo))
}

/// Character table keyed by `(λ, μ)` for a fixed `n`, sharing one memo table.
pub fn character_table(n: usize) -> Vec<(Partition, Vec<(Partition, i64)>)> {
    let parts = super::partitions_of(n);
    let mut memo = HashMap::new();
    parts
        .iter()
        .map(|l| {
            let row = parts.iter().map(|m| (m.clone(), mn(l.parts(), m.parts(), &mut memo))).collect();
            (l.clone(), row)
        })
        .collect()
}

type Memo = HashMap<(Vec<usize>, Vec<usize>), i64>;

pub(crate) fn mn(lambda: &[usize], mu: &[usize], memo: &mut Memo) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = mu[0];
    let rest = &mu[1..];
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (len - 1 - i)).filter(|&p| p > 0).collect();
        total += sign * mn(&smaller, rest, memo);
    }
    memo.insert(key, total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::{factorial, hook_dimension, partitions_of};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        for mu in partitions_of(5) {
            assert_eq!(character(&Partition::row(5), &mu).unwrap(), 1);
            assert_eq!(character(&Partition::column(5), &mu).unwrap(), mu.sign());
        }
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 1]), &p(&[2, 1])).unwrap(), 0);
        assert_eq!(character(&p(&[2, 1]), &p(&[2])), Err(Error::SizeMismatch { left: 3, right: 2 }));
    }

    #[test]
    fn identity_class_gives_dimension() {
        for n in 1..=7 {
            for l in partitions_of(n) {
                let chi = character(&l, &Partition::column(n)).unwrap();
                assert_eq!(chi as u128, hook_dimension(&l));
            }
        }
    }

    #[test]
    fn known_s4_row() {
        // χ_(3,1) on classes (4),(3,1),(2,2),(2,1,1),(1^4)
        let row: Vec<i64> = partitions_of(4).iter().map(|mu| character(&p(&[3, 1]), mu).unwrap()).collect();
        assert_eq!(row, vec![-1, 0, -1, 1, 3]);
    }

    #[test]
    fn orthogonality() {
        for n in 1..=6 {
            let table = character_table(n);
            for (l1, row1) in &table {
                for (l2, row2) in &table {
                    let s: i128 = row1
                        .iter()
                        .zip(row2)
                        .map(|((mu, a), (_, b))| mu.class_size() as i128 * (*a as i128) * (*b as i128))
                        .sum();
                    let expected = if l1 == l2 { factorial(n) as i128 } else { 0 };
                    assert_eq!(s, expected, "{l1} {l2}");
                }
            }
        }
    }
}
