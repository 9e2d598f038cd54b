use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, parts non-increasing and positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("partition {parts:?} is not non-increasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Partition {
        Partition { parts: if n == 0 { vec![] } else { vec![n] } }
    }

    /// The one-column partition `(1, …, 1)`.
    pub fn column(n: usize) -> Partition {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect();
        Partition { parts }
    }

    /// Order of the centralizer of a permutation of this cycle type,
    /// `Π_k k^{m_k} m_k!`.
    pub fn centralizer_order(&self) -> u128 {
        let mut z: u128 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let k = self.parts[i];
            let mut mult = 0u128;
            while i < self.parts.len() && self.parts[i] == k {
                mult += 1;
                z *= k as u128 * mult;
                i += 1;
            }
        }
        z
    }

    /// Number of permutations with this cycle type.
    pub fn class_size(&self) -> u128 {
        super::factorial(self.size()) / self.centralizer_order()
    }

    /// Sign of any permutation of this cycle type.
    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.parts.iter().map(|p| p - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Partition, D::Error> {
        Partition::new(Vec::<usize>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, in decreasing lexicographic order: `(n)` first,
/// `(1^n)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of standard Young tableaux of shape `λ`, via the hook length formula.
pub fn hook_dimension(lambda: &Partition) -> u128 {
    let conj = lambda.conjugate();
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts[j] - i - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    super::factorial(lambda.size()) / hooks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Counts standard tableaux by removing corners recursively.
    fn count_tableaux(parts: &[usize]) -> u128 {
        if parts.is_empty() {
            return 1;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let is_corner = i + 1 == parts.len() || parts[i + 1] < parts[i];
            if is_corner {
                let mut smaller = parts.to_vec();
                smaller[i] -= 1;
                if smaller[i] == 0 {
                    smaller.pop();
                }
                total += count_tableaux(&smaller);
            }
        }
        total
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions_of(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(0), vec![p(&[])]);
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hook_dimension(&Partition::row(5)), 1);
        assert_eq!(hook_dimension(&Partition::column(5)), 1);
        assert_eq!(hook_dimension(&p(&[2, 1])), 2);
        assert_eq!(count_tableaux(&[2, 1]), 2);
    }

    #[test]
    fn hook_matches_tableau_count() {
        for n in 0..=8 {
            for lambda in partitions_of(n) {
                assert_eq!(hook_dimension(&lambda), count_tableaux(lambda.parts()), "{lambda}");
            }
        }
    }

    #[test]
    fn sum_of_squares_is_group_order() {
        for n in 0..=8 {
            let s: u128 = partitions_of(n).iter().map(|l| hook_dimension(l).pow(2)).sum();
            assert_eq!(s, crate::symgroup::factorial(n));
        }
    }

    #[test]
    fn validation_and_classes() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 1, 1]).class_size(), 6);
        let total: u128 = partitions_of(5).iter().map(|l| l.class_size()).sum();
        assert_eq!(total, 120);
    }
}
