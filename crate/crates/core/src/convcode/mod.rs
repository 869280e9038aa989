//! Convolutional codes over `F_q`: generator matrices, trellises, distance
//! profiles and hard-decision Viterbi decoding.

mod distance;
mod generator;
mod trellis;
mod viterbi;

pub use distance::{
    free_distance, free_distance_on, is_catastrophic, minor_gcd, profile, singleton_bound,
    singleton_check, t_dfree, t_dfree_on, CodeProfile, Separation,
};
pub use generator::GeneratorMatrix;
pub use trellis::{Trellis, MAX_TRANSITIONS};
pub use viterbi::viterbi_decode;

use thiserror::Error;

use crate::galois::{AlgebraError, Field, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("a generator matrix needs 0 < k < n, got k={k}, n={n}")]
    BadRate { k: usize, n: usize },
    #[error("generator matrix does not have full row rank")]
    RankDeficient,
    #[error("trellis with q={q}, delta={delta}, k={k} is too large")]
    TrellisTooLarge { q: u32, delta: usize, k: usize },
    #[error("state graph has a zero-weight cycle (catastrophic generator)")]
    ZeroWeightCycle,
    #[error("distance profile of catastrophic generators is only supported for k = 1")]
    CatastrophicMultiInput,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `v(z) = u(z) G(z)` on blocks. With `tail`, `memory()` zero input blocks are
/// appended so the encoder ends in the zero state; without it the output is
/// truncated to the input length.
pub fn encode(g: &GeneratorMatrix, u: &[Vec<u32>], tail: bool) -> Vec<Vec<u32>> {
    let field = g.field();
    let rows: Vec<Polynomial> = (0..g.k())
        .map(|i| Polynomial::from_coeffs(field, u.iter().map(|b| b[i]).collect()))
        .collect();
    let v = g.encode_poly(&rows).expect("k inputs");
    let len = u.len() + if tail { g.memory() } else { 0 };
    (0..len)
        .map(|t| v.iter().map(|p| p.coeff(t)).collect())
        .collect()
}

/// Shipped generator matrices: the three comparison codes over `F_2` and the
/// input code used on the 4C2 network over `F_3`.
pub fn builtin_code(name: &str) -> Option<(u32, &'static str)> {
    match name {
        "c1" => Some((2, "1+z, 1")),
        "c2" => Some((2, "1+z^2, 1+z+z^2")),
        "c3" => Some((2, "1+z+z^4, 1+z^2+z^3+z^4")),
        "c4c2" => Some((3, "1+z^2+z^4+z^5, 2+z+2z^2+2z^4+z^5")),
        _ => None,
    }
}

pub fn load_builtin_code(name: &str) -> Option<GeneratorMatrix> {
    let (q, text) = builtin_code(name)?;
    let field = Field::builtin(q).ok()?;
    GeneratorMatrix::parse(&field, text).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(q: u32, text: &str) -> GeneratorMatrix {
        GeneratorMatrix::parse(&Field::builtin(q).unwrap(), text).unwrap()
    }

    #[test]
    fn single_block_encoding() {
        let g = gen(2, "1+z^2, 1+z+z^2");
        assert_eq!(encode(&g, &[vec![1]], true), vec![vec![1, 1], vec![0, 1], vec![1, 1]]);
        assert_eq!(encode(&g, &vec![vec![0]; 4], true), vec![vec![0, 0]; 6]);
    }

    #[test]
    fn clean_frames_decode_exactly() {
        let g = gen(2, "1+z^2, 1+z+z^2");
        let t = Trellis::new(&g).unwrap();
        let u: Vec<Vec<u32>> = [1, 0, 1, 1, 0, 0, 1, 0].iter().map(|&b| vec![b]).collect();
        let v = encode(&g, &u, true);
        assert_eq!(viterbi_decode(&t, &v, g.memory()), u);
    }

    #[test]
    fn single_error_is_corrected() {
        let g = gen(2, "1+z^2, 1+z+z^2");
        let t = Trellis::new(&g).unwrap();
        let u: Vec<Vec<u32>> = (0..40).map(|i| vec![(i * 7 % 3 == 0) as u32]).collect();
        let mut v = encode(&g, &u, true);
        v[17][1] ^= 1;
        assert_eq!(viterbi_decode(&t, &v, g.memory()), u);
    }

    #[test]
    fn builtins_parse() {
        for name in ["c1", "c2", "c3", "c4c2"] {
            assert!(load_builtin_code(name).is_some(), "{name}");
        }
    }

    fn arb_code() -> impl Strategy<Value = GeneratorMatrix> {
        (prop_oneof![Just(2u32), Just(3)], 1usize..=2, 0usize..=2)
            .prop_flat_map(|(q, k, extra)| {
                let n = k + 1 + extra.min(1);
                let f = Field::builtin(q).unwrap();
                proptest::collection::vec(proptest::collection::vec(0..q, 1..=3), k * n)
                    .prop_map(move |cs| (f.clone(), k, n, cs))
            })
            .prop_filter_map("rank-deficient", |(f, k, n, cs)| {
                let rows = (0..k)
                    .map(|i| (0..n).map(|j| Polynomial::from_coeffs(&f, cs[i * n + j].clone())).collect())
                    .collect();
                GeneratorMatrix::from_rows(&f, rows).ok()
            })
    }

    proptest! {
        #[test]
        fn trellis_walk_matches_polynomial_product(
            g in arb_code(),
            seed in proptest::collection::vec(0u32..3, 1..12)
        ) {
            let t = Trellis::new(&g).unwrap();
            let q = g.field().order();
            let u: Vec<Vec<u32>> = seed
                .chunks(1)
                .map(|c| (0..g.k()).map(|i| (c[0] + i as u32) % q).collect())
                .collect();
            let mut padded = u.clone();
            padded.extend(std::iter::repeat(vec![0; g.k()]).take(g.memory()));
            prop_assert_eq!(t.encode(&padded), encode(&g, &u, true));
        }

        #[test]
        fn decoding_inverts_encoding(
            g in arb_code(),
            seed in proptest::collection::vec(0u32..3, 1..12)
        ) {
            let t = Trellis::new(&g).unwrap();
            let q = g.field().order();
            let u: Vec<Vec<u32>> = seed
                .iter()
                .map(|&c| (0..g.k()).map(|i| (c * (i as u32 + 1)) % q).collect())
                .collect();
            let v = encode(&g, &u, true);
            prop_assert_eq!(viterbi_decode(&t, &v, g.memory()), u);
        }

        #[test]
        fn free_distance_within_singleton(g in arb_code()) {
            if let Ok(p) = profile(&g) {
                prop_assert!(p.d_free <= singleton_bound(g.k(), g.n(), g.degree()));
            }
        }
    }
}
