//! Seeded generators and brute-force oracles shared by the integration
//! tests. Nothing here calls the library's linear algebra.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringlab::linalg::{inverse, Mat, Subspace};
use ringlab::module::LeftModule;
use ringlab::{Rational, Scalar, ScalarField, StructureRing};

pub const Q: ScalarField = ScalarField::Rationals;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fp(p: u64) -> ScalarField {
    ScalarField::prime(p).unwrap()
}

pub fn random_scalar(field: ScalarField, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        ScalarField::Rationals => {
            let num = rng.gen_range(-3..=3);
            let den = if rng.gen_bool(0.2) {
                rng.gen_range(2..=3)
            } else {
                1
            };
            field.from_ratio(num, den).unwrap()
        }
        ScalarField::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

pub fn random_vector(field: ScalarField, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(field, rng)).collect()
}

pub fn random_matrix(field: ScalarField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    Mat::from_fn(field, rows, cols, |_, _| random_scalar(field, rng))
}

pub fn random_invertible(field: ScalarField, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = random_matrix(field, n, n, rng);
        if oracle_rank(&m.row_vectors()) == n {
            assert!(inverse(&m).is_some());
            return m;
        }
    }
}

/// Rank by plain Gaussian elimination.
pub fn oracle_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut rows: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|r| !rows[*r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let k = rows[r][c].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &(&k * y);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `x ρ_i = ρ_i' x` for every basis action, checked entrywise.
pub fn oracle_intertwines(m: &LeftModule, n: &LeftModule, x: &Mat) -> bool {
    (0..m.ring().dim()).all(|i| (x * m.action(i)) == (n.action(i) * x))
}

/// Building blocks: the regular module, cyclic submodules of it and
/// quotients of it by cyclic submodules.
pub fn module_pieces(ring: &StructureRing, rng: &mut ChaCha8Rng, count: usize) -> Vec<LeftModule> {
    let reg = LeftModule::regular(ring);
    let mut out = vec![reg.clone()];
    for _ in 0..count {
        let v = random_vector(ring.field(), ring.dim(), rng);
        let w = reg.cyclic_submodule(&v);
        if w.dim() > 0 {
            out.push(reg.submodule(&w).unwrap().module);
        }
        if w.dim() < reg.dim() {
            out.push(reg.quotient(&w).unwrap().module);
        }
    }
    out
}

/// A random direct sum of pieces (plus, if `degenerate`, possibly a copy of
/// the zero-action module) of total dimension in `1..=max_dim`, in a random
/// basis.
pub fn random_module(
    ring: &StructureRing,
    pieces: &[LeftModule],
    max_dim: usize,
    degenerate: bool,
    rng: &mut ChaCha8Rng,
) -> LeftModule {
    let small: Vec<&LeftModule> = pieces
        .iter()
        .filter(|p| p.dim() >= 1 && p.dim() <= max_dim)
        .collect();
    assert!(!small.is_empty() || degenerate);
    loop {
        let mut m = LeftModule::zero(ring);
        let target = rng.gen_range(1..=max_dim);
        let mut tries = 0;
        while m.dim() < target && tries < 8 {
            tries += 1;
            let piece = if degenerate && (small.is_empty() || rng.gen_bool(0.25)) {
                LeftModule::trivial_zero_action(ring, 1)
            } else {
                (*small.choose(rng).unwrap()).clone()
            };
            if m.dim() + piece.dim() <= max_dim {
                m = m.direct_sum(&piece).unwrap();
            }
        }
        if m.dim() == 0 {
            continue;
        }
        let p = random_invertible(ring.field(), m.dim(), rng);
        return m.change_basis(&p).unwrap();
    }
}

/// All submodules of a module over `F_p`, each as the set of its vectors
/// encoded in base `p`.
pub struct FpLattice {
    pub p: u64,
    pub dim: usize,
    pub submodules: Vec<BTreeSet<u32>>,
}

fn encode(v: &[u64], p: u64) -> u32 {
    v.iter()
        .rev()
        .fold(0u32, |acc, x| acc * p as u32 + *x as u32)
}

fn decode(mut x: u32, p: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = x % p as u32;
            x /= p as u32;
            d as u64
        })
        .collect()
}

fn residue(s: &Scalar) -> u64 {
    s.to_wire().parse().unwrap()
}

impl FpLattice {
    pub fn new(m: &LeftModule) -> Self {
        let p = m.field().characteristic();
        assert!(p > 0);
        let n = m.dim();
        let actions: Vec<Vec<Vec<u64>>> = m
            .actions()
            .iter()
            .map(|a| {
                (0..n)
                    .map(|r| a.row(r).iter().map(residue).collect())
                    .collect()
            })
            .collect();
        let apply = |a: &Vec<Vec<u64>>, v: &[u64]| -> Vec<u64> {
            (0..n)
                .map(|r| (0..n).map(|c| a[r][c] * v[c]).sum::<u64>() % p)
                .collect()
        };
        let total = (p as u32).pow(n as u32);
        let closure = |start: &BTreeSet<u32>, extra: u32| -> BTreeSet<u32> {
            let mut set = start.clone();
            let mut frontier = vec![extra];
            while let Some(x) = frontier.pop() {
                if set.contains(&x) {
                    continue;
                }
                let xv = decode(x, p, n);
                let members: Vec<u32> = set.iter().copied().collect();
                set.insert(x);
                for y in members.into_iter().chain(std::iter::once(x)) {
                    let yv = decode(y, p, n);
                    for k in 1..p {
                        let s: Vec<u64> =
                            xv.iter().zip(&yv).map(|(a, b)| (k * a + b) % p).collect();
                        frontier.push(encode(&s, p));
                    }
                }
                for a in &actions {
                    frontier.push(encode(&apply(a, &xv), p));
                }
            }
            set
        };
        let zero: BTreeSet<u32> = [0].into_iter().collect();
        let mut found: BTreeSet<BTreeSet<u32>> = [zero.clone()].into_iter().collect();
        let mut queue = vec![zero];
        while let Some(s) = queue.pop() {
            for v in 0..total {
                if !s.contains(&v) {
                    let t = closure(&s, v);
                    if found.insert(t.clone()) {
                        queue.push(t);
                    }
                }
            }
        }
        FpLattice {
            p,
            dim: n,
            submodules: found.into_iter().collect(),
        }
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.dim as u32)
    }

    pub fn has_complement(&self, w: &BTreeSet<u32>) -> bool {
        self.submodules
            .iter()
            .any(|c| c.intersection(w).count() == 1 && c.len() * w.len() == self.order())
    }

    pub fn is_semisimple(&self) -> bool {
        self.submodules.iter().all(|w| self.has_complement(w))
    }

    pub fn is_simple(&self) -> bool {
        self.dim > 0 && self.submodules.len() == 2
    }

    pub fn contains(&self, s: &Subspace) -> Option<&BTreeSet<u32>> {
        let basis: Vec<Vec<u64>> = s
            .basis_vectors()
            .iter()
            .map(|v| v.iter().map(residue).collect())
            .collect();
        self.submodules.iter().find(|w| {
            w.len() == (self.p as usize).pow(basis.len() as u32)
                && basis.iter().all(|b| w.contains(&encode(b, self.p)))
        })
    }
}

pub fn rational(n: i64, d: i64) -> Scalar {
    Scalar::Q(Rational::new(n, d))
}
