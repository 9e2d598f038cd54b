//! Seeded generators of complexes, chain maps and extensions for tests and
//! randomized checks.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{direct_sum, BlockTriangleInput, ChainMap, Complex, Degree};
use crate::linalg::{Matrix, Rational};

pub struct Gen {
    rng: ChaCha8Rng,
}

/// A short exact sequence `0 -> X -> Y -> Z -> 0` with `f : X -> Y`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub x: Arc<Complex>,
    pub z: Arc<Complex>,
    pub f: ChainMap,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, bound: i64) -> Matrix {
        let data = (0..rows * cols).map(|_| Rational::from_integer(self.int(-bound, bound))).collect();
        Matrix::from_vec(rows, cols, data).expect("sizes agree")
    }

    /// A random invertible matrix: a product of random unit lower and upper
    /// triangular factors with a random nonzero diagonal.
    pub fn invertible(&mut self, n: usize) -> Matrix {
        let mut l = Matrix::identity(n);
        let mut u = Matrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = Rational::from_integer(self.int(-1, 1));
                u[(j, i)] = Rational::from_integer(self.int(-1, 1));
            }
            let mut s = 0;
            while s == 0 {
                s = self.int(-2, 2);
            }
            u[(i, i)] = Rational::from_integer(s);
        }
        l.mul(&u).expect("square")
    }

    /// A graded space with zero differential of total dimension at most
    /// `max_dim` in degrees `lo..=hi`.
    pub fn graded(&mut self, max_dim: usize, lo: Degree, hi: Degree) -> Complex {
        let total = self.rng.gen_range(0..=max_dim);
        let mut dims = BTreeMap::new();
        for _ in 0..total {
            *dims.entry(self.rng.gen_range(lo..=hi)).or_insert(0) += 1;
        }
        Complex::graded(dims)
    }

    /// A complex built from lines `Q[k]` and contractible pairs
    /// `Q[k] -> Q[k-1]`, then disguised by a random change of basis.
    pub fn complex(&mut self, max_dim: usize, lo: Degree, hi: Degree) -> Complex {
        let target = self.rng.gen_range(0..=max_dim);
        let mut c = Complex::zero();
        let mut total = 0;
        while total < target {
            let pair = hi > lo && target - total >= 2 && self.coin();
            let atom = if pair {
                let k = self.rng.gen_range(lo + 1..=hi);
                let s = loop {
                    let s = self.int(-2, 2);
                    if s != 0 {
                        break s;
                    }
                };
                total += 2;
                Complex::new([(k, 1), (k - 1, 1)], [(k, Matrix::from_i64(&[&[s]]))]).expect("pair")
            } else {
                total += 1;
                Complex::line(self.rng.gen_range(lo..=hi))
            };
            c = direct_sum(&c, &atom);
        }
        self.disguise(&c)
    }

    /// Conjugates the differential by random invertible matrices.
    pub fn disguise(&mut self, c: &Complex) -> Complex {
        let basis = self.change_of_basis(c);
        c.change_basis(&basis).expect("invertible")
    }

    fn change_of_basis(&mut self, c: &Complex) -> BTreeMap<Degree, Matrix> {
        let degrees: Vec<Degree> = c.degrees().collect();
        degrees.into_iter().map(|k| (k, self.invertible(c.dim(k)))).collect()
    }

    /// A random element of the space of chain maps `source -> target`, as an
    /// integer combination of a basis of that space.
    pub fn chain_map(&mut self, source: &Arc<Complex>, target: &Arc<Complex>) -> ChainMap {
        let space = chain_map_space(source, target);
        let mut blocks: BTreeMap<Degree, Matrix> = BTreeMap::new();
        for basis_map in &space {
            let c = Rational::from_integer(self.int(-2, 2));
            for (k, m) in basis_map {
                let slot = blocks.entry(*k).or_insert_with(|| Matrix::zeros(target.dim(*k), source.dim(*k)));
                slot.add_scaled(m, &c).expect("shapes agree");
            }
        }
        ChainMap::new(source.clone(), target.clone(), blocks).expect("solutions commute")
    }

    /// A random chain automorphism, retrying combinations near the identity.
    pub fn automorphism(&mut self, c: &Arc<Complex>) -> ChainMap {
        let id = ChainMap::identity(c.clone());
        for _ in 0..32 {
            let s = Rational::from_integer(self.int(1, 3));
            let cand = id.scale(&s).add(&self.chain_map(c, c)).expect("parallel");
            if cand.is_isomorphism() {
                return cand;
            }
        }
        id
    }

    /// An extension of `z` by `x`: `Y = X ⊕ Z` with differential
    /// `[[d_X, h], [0, d_Z]]` for a random chain map `h : Z -> ΣX`, seen
    /// through a random change of basis of `Y`.
    pub fn extension(&mut self, x: &Complex, z: &Complex) -> Extension {
        let xa = Arc::new(x.clone());
        let za = Arc::new(z.clone());
        let sx = Arc::new(x.shift());
        let h = self.chain_map(&za, &sx);
        let degrees: BTreeSet<Degree> = x.degrees().chain(z.degrees()).collect();
        let dims: Vec<_> = degrees.iter().map(|&k| (k, x.dim(k) + z.dim(k))).collect();
        let diffs: Vec<_> = degrees
            .iter()
            .map(|&k| {
                let d = Matrix::block(&x.d(k), &h.block(k), &Matrix::zeros(z.dim(k - 1), x.dim(k)), &z.d(k))
                    .expect("block shapes");
                (k, d)
            })
            .collect();
        let y = Complex::new(dims, diffs).expect("square zero by construction");
        let p = self.change_of_basis(&y);
        let p_inv: BTreeMap<Degree, Matrix> = p.iter().map(|(&k, m)| (k, m.inverse().expect("invertible"))).collect();
        let y = Arc::new(y.change_basis(&p_inv).expect("invertible"));
        let blocks: Vec<_> = x
            .degrees()
            .map(|k| {
                let inc = Matrix::identity(x.dim(k)).vstack(&Matrix::zeros(z.dim(k), x.dim(k))).expect("cols");
                (k, p[&k].mul(&inc).expect("shapes"))
            })
            .collect();
        let f = ChainMap::new(xa.clone(), y, blocks).expect("inclusion is a chain map");
        Extension { x: xa, z: za, f }
    }

    /// Blocks `a, b, c, d` with `a` a chain automorphism.
    pub fn block_input(&mut self, a: &Complex, b: &Complex, c: &Complex) -> BlockTriangleInput {
        let (a, b, c) = (Arc::new(a.clone()), Arc::new(b.clone()), Arc::new(c.clone()));
        BlockTriangleInput {
            a: self.automorphism(&a),
            b: self.chain_map(&b, &a),
            c: self.chain_map(&a, &c),
            d: self.chain_map(&b, &c),
        }
    }
}

/// A basis of the space of chain maps, found as the kernel of the linear
/// constraints `d f_k = f_{k-1} d` on the block entries.
pub fn chain_map_space(source: &Complex, target: &Complex) -> Vec<BTreeMap<Degree, Matrix>> {
    let mut offsets = BTreeMap::new();
    let mut n = 0;
    for k in source.degrees() {
        if target.dim(k) > 0 {
            offsets.insert(k, n);
            n += target.dim(k) * source.dim(k);
        }
    }
    let var = |k: Degree, i: usize, j: usize| offsets.get(&k).map(|o| o + i * source.dim(k) + j);
    let degrees: BTreeSet<Degree> = source.degrees().chain(target.degrees()).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &k in &degrees {
        let (dt, ds) = (target.d(k), source.d(k));
        for r in 0..target.dim(k - 1) {
            for c in 0..source.dim(k) {
                let mut eq = vec![Rational::from(0); n];
                for i in 0..target.dim(k) {
                    if let Some(v) = var(k, i, c) {
                        eq[v] += &dt[(r, i)];
                    }
                }
                for j in 0..source.dim(k - 1) {
                    if let Some(v) = var(k - 1, r, j) {
                        eq[v] -= &ds[(j, c)];
                    }
                }
                rows.push(eq);
            }
        }
    }
    let system = Matrix::from_rows(rows, n).expect("uniform rows");
    let kernel = system.kernel_basis();
    (0..kernel.cols())
        .map(|col| {
            offsets
                .iter()
                .map(|(&k, &o)| {
                    let (r, c) = (target.dim(k), source.dim(k));
                    let data = (0..r * c).map(|t| kernel[(o + t, col)].clone()).collect();
                    (k, Matrix::from_vec(r, c, data).expect("sizes"))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = Gen::new(7).complex(5, -1, 2);
        let b = Gen::new(7).complex(5, -1, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn generated_objects_are_valid() {
        for seed in 0..20 {
            let mut g = Gen::new(seed);
            let x = g.complex(3, 0, 2);
            let z = g.complex(3, 0, 2);
            let e = g.extension(&x, &z);
            assert!(e.f.is_injective());
            let y = e.f.target();
            assert_eq!(y.dims(), x.dims().add(&z.dims()));
            assert_eq!(y.euler_characteristic(), x.euler_characteristic() + z.euler_characteristic());
            let a = Arc::new(x.clone());
            assert!(g.automorphism(&a).is_isomorphism());
        }
    }

    #[test]
    fn chain_map_space_dimension() {
        // on a contractible pair Q -> Q, commuting forces f_0 = f_1
        let q = Complex::unit();
        assert_eq!(chain_map_space(&q, &q).len(), 1);
        let pair = Complex::new([(0, 1), (1, 1)], [(1, Matrix::from_i64(&[&[1]]))]).unwrap();
        assert_eq!(chain_map_space(&pair, &pair).len(), 1);
        assert_eq!(chain_map_space(&q, &Complex::line(1)).len(), 0);
    }
}
