#![allow(dead_code)]

use cnecc::convcode::{is_catastrophic, GeneratorMatrix};
use cnecc::galois::{Field, Polynomial};
use rand::Rng;

/// Exhaustive bracket on `d_free` over inputs of `len` blocks with a nonzero
/// first block, using only field arithmetic on raw coefficients. Prefixes
/// already as heavy as the best terminated codeword are cut, which changes
/// neither bound.
///
/// `lower` is the column distance (minimum weight of the first `len` output
/// blocks), `upper` the minimum weight of a terminated codeword. The column
/// distance never exceeds `d_free` and the terminated minimum never falls
/// below it, so `lower == upper` pins `d_free` exactly.
pub struct Bracket {
    pub lower: usize,
    pub upper: usize,
}

struct Dfs<'a> {
    f: &'a Field,
    k: usize,
    n: usize,
    m: usize,
    /// taps[i][j][d]
    taps: Vec<Vec<Vec<u32>>>,
    len: usize,
    u: Vec<Vec<u32>>,
    lower: usize,
    upper: usize,
}

impl Dfs<'_> {
    fn block_weight(&self, t: usize) -> usize {
        (0..self.n)
            .filter(|&j| {
                let mut acc = 0;
                for i in 0..self.k {
                    for (d, &c) in self.taps[i][j].iter().enumerate() {
                        if c != 0 && d <= t && t - d < self.u.len() {
                            acc = self.f.add(acc, self.f.mul(self.u[t - d][i], c));
                        }
                    }
                }
                acc != 0
            })
            .count()
    }

    fn visit(&mut self, prefix_weight: usize) {
        let t = self.u.len() - 1;
        let w = prefix_weight + self.block_weight(t);
        // descendants weigh at least w; nothing below the current upper bound
        if w >= self.upper {
            return;
        }
        let tail: usize = (t + 1..=t + self.m).map(|s| self.block_weight(s)).sum();
        self.upper = self.upper.min(w + tail);
        if self.u.len() == self.len {
            self.lower = self.lower.min(w);
            return;
        }
        let q = self.f.order();
        let total = q.pow(self.k as u32);
        for idx in 0..total {
            let mut b = Vec::with_capacity(self.k);
            let mut v = idx;
            for _ in 0..self.k {
                b.push(v % q);
                v /= q;
            }
            self.u.push(b);
            self.visit(w);
            self.u.pop();
        }
    }
}

pub fn brute_force_bracket(g: &GeneratorMatrix, len: usize) -> Bracket {
    let f = g.field();
    let (k, n) = (g.k(), g.n());
    let taps = (0..k)
        .map(|i| (0..n).map(|j| g.entry(i, j).coeffs().to_vec()).collect())
        .collect();
    let mut dfs = Dfs {
        f,
        k,
        n,
        m: g.memory(),
        taps,
        len,
        u: Vec::new(),
        lower: usize::MAX,
        upper: usize::MAX,
    };
    let q = f.order();
    for idx in 1..q.pow(k as u32) {
        let mut b = Vec::with_capacity(k);
        let mut v = idx;
        for _ in 0..k {
            b.push(v % q);
            v /= q;
        }
        dfs.u.push(b);
        dfs.visit(0);
        dfs.u.pop();
    }
    Bracket {
        lower: dfs.lower.min(dfs.upper),
        upper: dfs.upper,
    }
}

/// Longest input length whose enumeration stays within `budget` inputs.
pub fn affordable_len(q: u32, k: usize, budget: f64) -> usize {
    let per_block = (q as f64).powi(k as i32);
    ((budget.ln() / per_block.ln()).floor() as usize).max(1)
}

/// Random delay-free (`G(0)` of full rank), non-catastrophic `k x n`
/// generator over `F_q` with degree at most `max_delta`.
pub fn random_code<R: Rng>(rng: &mut R, q: u32, k: usize, n: usize, max_delta: usize) -> GeneratorMatrix {
    let f = Field::builtin(q).unwrap();
    loop {
        let degs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=max_delta / k)).collect();
        if degs.iter().sum::<usize>() == 0 || degs.iter().sum::<usize>() > max_delta {
            continue;
        }
        let rows: Vec<Vec<Polynomial>> = degs
            .iter()
            .map(|&d| {
                (0..n)
                    .map(|_| Polynomial::from_coeffs(&f, (0..=d).map(|_| rng.gen_range(0..q)).collect()))
                    .collect()
            })
            .collect();
        let Ok(g) = GeneratorMatrix::from_rows(&f, rows) else {
            continue;
        };
        if g.degree() == 0 || g.matrix().eval(0).rank() < k || is_catastrophic(&g) {
            continue;
        }
        return g;
    }
}
