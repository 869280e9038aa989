use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::convcode::load_builtin_code;
use crate::design::{CneccDesign, DesignOptions, ErrorPatternSet};
use crate::galois::{Field, Polynomial};
use crate::netgraph::{load_network, BUTTERFLY, COMB_4C2};

fn design(text: &str, double: bool, code: &str) -> CneccDesign {
    let net = load_network(text).unwrap();
    let m = net.graph.num_edges();
    let phi = if double { ErrorPatternSet::all_double(m) } else { ErrorPatternSet::all_single(m) };
    let g = load_builtin_code(code).unwrap();
    CneccDesign::build(&net.graph, net.code.as_ref().unwrap(), &phi, Some(&g), &DesignOptions::default()).unwrap()
}

#[test]
fn idle_probability_is_geometric_remainder() {
    // 1 - (0.1 - 0.1^11) / 0.9
    let expect = 1.0 - (0.1 - 0.1f64.powi(11)) / 0.9;
    assert!((idle_probability(0.1, 10) - expect).abs() < 1e-15);
    assert!((idle_probability(0.1, 10) - 0.888888888889).abs() < 1e-9);
}

#[test]
fn invalid_probabilities_are_rejected() {
    let f = Field::prime(2).unwrap();
    assert!(ErrorModel::probabilistic(0.0).is_err());
    assert!(ErrorModel::probabilistic(1.0).is_err());
    // 0.6 + 0.36 + ... exceeds 1 for ten edges
    let m = ErrorModel::probabilistic(0.6).unwrap();
    assert_eq!(ErrorSource::new(&m, &f, 10).unwrap_err(), SimError::InvalidProbability(0.6));
    assert!(ErrorModel::spaced(ErrorPatternSet::all_single(3), 0).is_err());
}

#[test]
fn error_counts_follow_the_model() {
    let f = Field::prime(3).unwrap();
    let p = 0.2;
    let src = ErrorSource::new(&ErrorModel::probabilistic(p).unwrap(), &f, 10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let draws = 1_000_000usize;
    let mut hist = [0usize; 11];
    for _ in 0..draws {
        let w = sample_error_step(&src, &mut rng);
        assert!(w.iter().all(|&v| v < 3));
        hist[w.iter().filter(|&&v| v != 0).count()] += 1;
    }
    for i in 1..=3 {
        let pi = p.powi(i as i32);
        let sigma = (draws as f64 * pi * (1.0 - pi)).sqrt();
        let dev = (hist[i] as f64 - draws as f64 * pi).abs();
        assert!(dev <= 3.0 * sigma, "i = {i}: {} vs {}", hist[i], draws as f64 * pi);
    }
}

#[test]
fn tiny_p_gives_zero_vectors() {
    let f = Field::prime(2).unwrap();
    let src = ErrorSource::new(&ErrorModel::probabilistic(1e-12).unwrap(), &f, 10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert!(src.sequence(1000, &mut rng).iter().flatten().all(|&v| v == 0));
}

#[test]
fn single_errors_reach_t1_as_rows_of_f_t1() {
    let d = design(BUTTERFLY, false, "c2");
    let s = &d.sinks[0];
    let f = &d.field;
    let z = |k| Polynomial::monomial(f, 1, k);
    // e1 -> (z, z^3), e2 -> (0, z^4)
    for (edge, expect) in [(0, vec![z(1), z(3)]), (1, vec![Polynomial::zero(f), z(4)])] {
        let mut w = vec![vec![0; 10]; 8];
        w[0][edge] = 1;
        let y = channel(&vec![vec![0, 0]; 8], &s.transfer, &s.f_t, &w);
        let got: Vec<Polynomial> = (0..2)
            .map(|j| Polynomial::from_coeffs(f, y.iter().map(|b| b[j]).collect()))
            .collect();
        assert_eq!(got, expect);
    }
}

fn arb_blocks(q: u32, width: usize, len: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    proptest::collection::vec(proptest::collection::vec(0..q, width), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn channel_superposition(x in arb_blocks(3, 2, 20), w in arb_blocks(3, 16, 20)) {
        let d = design(COMB_4C2, true, "c4c2");
        for s in &d.sinks {
            let both = channel(&x, &s.transfer, &s.f_t, &w);
            let xs = channel(&x, &s.transfer, &s.f_t, &vec![vec![0; 16]; 20]);
            let ws = channel(&vec![vec![0; 2]; 20], &s.transfer, &s.f_t, &w);
            let sum: Vec<Vec<u32>> = xs.iter().zip(&ws)
                .map(|(a, b)| a.iter().zip(b).map(|(&u, &v)| d.field.add(u, v)).collect())
                .collect();
            prop_assert_eq!(both, sum);
        }
    }
}

#[test]
fn channel_matches_polynomial_product() {
    let d = design(BUTTERFLY, false, "c2");
    let f = &d.field;
    let x = vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![0, 0], vec![0, 0], vec![0, 0], vec![0, 0], vec![0, 0]];
    let s = &d.sinks[1];
    let y = channel(&x, &s.transfer, &s.f_t, &[]);
    let xp: Vec<Polynomial> = (0..2)
        .map(|j| Polynomial::from_coeffs(f, x.iter().map(|b| b[j]).collect()))
        .collect();
    let yp = s.transfer.left_mul_vec(&xp).unwrap();
    for (t, block) in y.iter().enumerate() {
        for j in 0..2 {
            assert_eq!(block[j], yp[j].coeff(t));
        }
    }
}

#[test]
fn scripted_zero_errors_decode_cleanly() {
    let d = design(BUTTERFLY, false, "c2");
    let sim = Simulator::new(&d, 50, false).unwrap();
    let src = ErrorSource::new(&ErrorModel::Scripted { steps: vec![] }, &d.field, 10).unwrap();
    let counts = run_frames(&sim, &src, 20, 3, 0);
    assert!(counts.iter().all(|c| c.symbol_errors == 0 && c.frames == 20 && c.symbols == 1000));
}

#[test]
fn spaced_single_errors_are_corrected() {
    let d = design(BUTTERFLY, false, "c2");
    let phi = ErrorPatternSet::all_single(10);
    // at spacing 6 reflected errors occasionally produce equal-distance ties
    let src = ErrorSource::new(&ErrorModel::spaced(phi, 7).unwrap(), &d.field, 10).unwrap();
    for force in [false, true] {
        let sim = Simulator::new(&d, 60, force).unwrap();
        let counts = run_frames(&sim, &src, 300, 11, 0);
        assert!(counts.iter().all(|c| c.symbol_errors == 0), "{counts:?}");
    }
}

#[test]
fn frame_length_covers_every_decoder() {
    let d = design(BUTTERFLY, false, "c2");
    let sim = Simulator::new(&d, 40, false).unwrap();
    // C_s memory 2, p_T1 = z^4 adds 4 more blocks
    assert_eq!(sim.frame_len(), 40 + 2 + 4);
}

#[test]
fn sweep_is_deterministic_and_shares_errors() {
    let d = design(BUTTERFLY, false, "c2");
    let codes = vec![
        ("c1".to_string(), load_builtin_code("c1").unwrap()),
        ("c2".to_string(), load_builtin_code("c2").unwrap()),
    ];
    let cfg = SimConfig {
        frames: 40,
        frame_len: 30,
        seed: 5,
        p_grid: vec![0.1, 0.3],
        force_input_trellis: true,
    };
    let a = ber_sweep(&d, &codes, &cfg).unwrap();
    let b = ber_sweep(&d, &codes, &cfg).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.records.len(), 2 * 2 * 2);
    let r = a.get("c2", "t1", 0.3).unwrap();
    assert_eq!(r.bits, 40 * 30);
    assert!(r.ber >= 0.0 && r.ber <= 1.0);
    assert!(r.block_errors <= 40 * 30 && r.block_errors <= r.bit_errors);
    assert!(a.to_csv().starts_with("code,sink,p,frames,bits,bit_errors,ber,block_errors\n"));
}

#[test]
fn zero_frames_gives_header_only() {
    let d = design(BUTTERFLY, false, "c2");
    let cfg = SimConfig { frames: 0, ..Default::default() };
    let r = ber_sweep(&d, &[("c2".into(), load_builtin_code("c2").unwrap())], &cfg).unwrap();
    assert_eq!(r.to_csv(), "code,sink,p,frames,bits,bit_errors,ber,block_errors\n");
}

#[test]
fn windowed_sequences_respect_the_window() {
    let f = Field::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let e = windowed_error_sequence(&f, 2, 80, 6, 2, 0.4, &mut rng);
        for t in 0..80usize {
            let lo = (t + 1).saturating_sub(6);
            let wsum: usize = e[lo..=t].iter().flatten().filter(|&&v| v != 0).count();
            assert!(wsum <= 2);
        }
    }
}

#[test]
fn frame_level_standard_error() {
    // frames with 0, 2 and 4 errors out of 10 symbols each
    let c = ErrorCounts { frames: 3, symbols: 30, symbol_errors: 6, block_errors: 6, symbol_errors_sq: 20 };
    assert!((c.ber() - 0.2).abs() < 1e-12);
    // sample variance of {0, 2, 4} is 4, so se of the mean is sqrt(4/3), over 10 symbols per frame
    assert!((c.ber_std_error() - (4.0f64 / 3.0).sqrt() / 10.0).abs() < 1e-12);
}
