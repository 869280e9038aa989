mod common;

use cnecc::convcode::{free_distance, load_builtin_code, GeneratorMatrix};
use common::{affordable_len, brute_force_bracket, random_code};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check(g: &GeneratorMatrix, budget: f64) -> Option<usize> {
    let len = affordable_len(g.field().order(), g.k(), budget);
    let b = brute_force_bracket(g, len);
    let d = free_distance(g).unwrap();
    assert!(b.lower <= d && d <= b.upper, "{g}: {} <= {d} <= {}", b.lower, b.upper);
    (b.lower == b.upper).then_some(b.upper)
}

#[test]
fn shipped_codes_match_exhaustive_search() {
    for (name, expect) in [("c1", 3), ("c2", 5), ("c3", 7), ("c4c2", 9)] {
        let g = load_builtin_code(name).unwrap();
        assert_eq!(check(&g, 1e8), Some(expect), "{name}");
        assert_eq!(free_distance(&g).unwrap(), expect);
    }
}

#[test]
fn random_small_codes_match_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let mut exact = 0;
    let mut tried = 0;
    while exact < 50 {
        tried += 1;
        assert!(tried < 500, "bracket rarely closes");
        let q = if tried % 2 == 0 { 2 } else { 3 };
        let (k, n) = match tried % 5 {
            0 if q == 2 => (2, 3),
            1 => (1, 3),
            _ => (1, 2),
        };
        let g = random_code(&mut rng, q, k, n, 4);
        if let Some(d) = check(&g, 1e5) {
            assert_eq!(free_distance(&g).unwrap(), d, "{g}");
            exact += 1;
        }
    }
}
