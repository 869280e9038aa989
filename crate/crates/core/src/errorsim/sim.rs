use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::model::{ErrorModel, ErrorSource};
use super::SimError;
use crate::convcode::GeneratorMatrix;
use crate::design::{CneccDesign, SinkDecoder};
use crate::galois::{BlockFilter, PolyMatrix};

/// `y(z) = x(z) M_T(z) + w(z) F_T(z)` on blocks. The output has
/// `max(x.len(), w.len())` blocks; anything delayed past that is dropped,
/// so callers pad frames to flush the network.
pub fn channel(x: &[Vec<u32>], m_t: &PolyMatrix, f_t: &PolyMatrix, w: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let len = x.len().max(w.len());
    let mut y = vec![vec![0; m_t.cols()]; len];
    BlockFilter::new(m_t).accumulate(x, &mut y);
    BlockFilter::new(f_t).accumulate(w, &mut y);
    y
}

#[derive(Clone, Debug)]
struct SimSink {
    name: String,
    m_t: BlockFilter,
    f_t: BlockFilter,
    decoder: SinkDecoder,
}

/// Error counts of one sink.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ErrorCounts {
    pub frames: u64,
    /// Information symbols compared.
    pub symbols: u64,
    pub symbol_errors: u64,
    /// Information blocks (one per time instant) with at least one wrong symbol.
    pub block_errors: u64,
    /// Sum over frames of the squared per-frame symbol error count.
    pub symbol_errors_sq: u64,
}

impl ErrorCounts {
    pub fn ber(&self) -> f64 {
        if self.symbols == 0 {
            0.0
        } else {
            self.symbol_errors as f64 / self.symbols as f64
        }
    }

    /// Standard error of [`ber`](Self::ber) with frames as the independent
    /// samples, which accounts for errors clustering within a frame.
    pub fn ber_std_error(&self) -> f64 {
        if self.frames < 2 || self.symbols == 0 {
            return 0.0;
        }
        let f = self.frames as f64;
        let per_frame = self.symbols as f64 / f;
        let mean = self.symbol_errors as f64 / f;
        let var = (self.symbol_errors_sq as f64 / f - mean * mean) * f / (f - 1.0);
        (var.max(0.0) / f).sqrt() / per_frame
    }

    fn add(mut self, o: &ErrorCounts) -> Self {
        self.frames += o.frames;
        self.symbols += o.symbols;
        self.symbol_errors += o.symbol_errors;
        self.block_errors += o.block_errors;
        self.symbol_errors_sq += o.symbol_errors_sq;
        self
    }
}

/// A design with an input code, compiled for frame-by-frame simulation.
///
/// A frame carries `info_len` information blocks followed by the zero tail
/// of the input code and enough flush blocks for every sink decoder to see
/// its complete codeword. Errors may hit any network use of the frame.
#[derive(Clone, Debug)]
pub struct Simulator {
    k: usize,
    q: u32,
    num_edges: usize,
    encoder: BlockFilter,
    info_len: usize,
    frame_len: usize,
    sinks: Vec<SimSink>,
}

impl Simulator {
    pub fn new(design: &CneccDesign, info_len: usize, force_input_trellis: bool) -> Result<Self, SimError> {
        let input = design.input.as_ref().ok_or(SimError::NoInputCode)?;
        let g = &input.generator;
        let mut frame_len = info_len + g.memory();
        let mut sinks = Vec::with_capacity(design.sinks.len());
        for (pos, s) in design.sinks.iter().enumerate() {
            let decoder = SinkDecoder::new(design, pos, force_input_trellis)?;
            frame_len = frame_len.max(decoder.required_len(info_len));
            sinks.push(SimSink {
                name: s.name.clone(),
                m_t: BlockFilter::new(&s.transfer),
                f_t: BlockFilter::new(&s.f_t),
                decoder,
            });
        }
        Ok(Self {
            k: g.k(),
            q: design.field.order(),
            num_edges: design.graph.num_edges(),
            encoder: BlockFilter::new(g.matrix()),
            info_len,
            frame_len,
            sinks,
        })
    }

    pub fn info_len(&self) -> usize {
        self.info_len
    }

    /// Network uses per frame.
    pub fn frame_len(&self) -> usize {
        self.frame_len
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn sink_names(&self) -> Vec<&str> {
        self.sinks.iter().map(|s| s.name.as_str()).collect()
    }

    pub fn random_info<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Vec<u32>> {
        (0..self.info_len)
            .map(|_| (0..self.k).map(|_| rng.gen_range(0..self.q)).collect())
            .collect()
    }

    /// Sends `u` through every sink channel with the shared error sequence
    /// `w` and returns the decoded information blocks per sink.
    pub fn transmit(&self, u: &[Vec<u32>], w: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
        let x = self.encoder.apply(u, self.frame_len);
        self.sinks
            .iter()
            .map(|s| {
                let mut y = vec![vec![0; s.m_t.cols()]; self.frame_len];
                s.m_t.accumulate(&x, &mut y);
                s.f_t.accumulate(w, &mut y);
                s.decoder.decode_blocks(&y, u.len())
            })
            .collect()
    }

    /// Error counts per sink for one frame.
    pub fn frame_errors(&self, u: &[Vec<u32>], w: &[Vec<u32>]) -> Vec<ErrorCounts> {
        self.transmit(u, w)
            .iter()
            .map(|dec| {
                let mut c = ErrorCounts {
                    frames: 1,
                    symbols: (u.len() * self.k) as u64,
                    ..Default::default()
                };
                for (a, b) in u.iter().zip(dec) {
                    let wrong = a.iter().zip(b).filter(|(x, y)| x != y).count() as u64;
                    c.symbol_errors += wrong;
                    c.block_errors += (wrong > 0) as u64;
                }
                c.symbol_errors_sq = c.symbol_errors * c.symbol_errors;
                c
            })
            .collect()
    }
}

/// Independent generator for `(seed, point, trial, purpose)`.
pub fn stream_rng(seed: u64, point: u64, trial: u64, purpose: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    for (i, v) in [seed, point, trial, purpose].into_iter().enumerate() {
        key[i * 8..i * 8 + 8].copy_from_slice(&v.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

const INFO_STREAM: u64 = 0;
const ERROR_STREAM: u64 = 1;

/// One random frame: information from the `INFO_STREAM`, errors from the
/// `ERROR_STREAM`. Codes simulated with the same `(seed, point, trial)` see
/// the same error process.
pub fn run_trial(
    sim: &Simulator,
    source: &ErrorSource,
    seed: u64,
    point: u64,
    trial: u64,
) -> Vec<ErrorCounts> {
    let u = sim.random_info(&mut stream_rng(seed, point, trial, INFO_STREAM));
    let w = source.sequence(sim.frame_len, &mut stream_rng(seed, point, trial, ERROR_STREAM));
    sim.frame_errors(&u, &w)
}

/// Sum of `frames` trials, in parallel; integer sums make the result
/// independent of scheduling.
pub fn run_frames(sim: &Simulator, source: &ErrorSource, frames: u64, seed: u64, point: u64) -> Vec<ErrorCounts> {
    assert_eq!(source.num_edges(), sim.num_edges, "error source and network differ");
    let zero = vec![ErrorCounts::default(); sim.sinks.len()];
    (0..frames)
        .into_par_iter()
        .map(|t| run_trial(sim, source, seed, point, t))
        .reduce(
            || zero.clone(),
            |a, b| a.iter().zip(&b).map(|(x, y)| x.add(y)).collect(),
        )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimConfig {
    pub frames: u64,
    /// Information blocks per frame.
    pub frame_len: usize,
    pub seed: u64,
    pub p_grid: Vec<f64>,
    pub force_input_trellis: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            frames: 1000,
            frame_len: 200,
            seed: 1,
            p_grid: vec![0.05, 0.1, 0.15, 0.2, 0.25, 0.3],
            force_input_trellis: false,
        }
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimRecord {
    pub code: String,
    pub sink: String,
    pub p: f64,
    pub frames: u64,
    pub bits: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub block_errors: u64,
    /// Frame-level standard error of `ber`; not part of the CSV.
    #[serde(skip)]
    pub ber_std_error: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SimResult {
    pub records: Vec<SimRecord>,
}

impl SimResult {
    pub fn get(&self, code: &str, sink: &str, p: f64) -> Option<&SimRecord> {
        self.records
            .iter()
            .find(|r| r.code == code && r.sink == sink && r.p == p)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), SimError> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        w.write_record(["code", "sink", "p", "frames", "bits", "bit_errors", "ber", "block_errors"])
            .map_err(|e| SimError::Csv(e.to_string()))?;
        for r in &self.records {
            w.serialize(r).map_err(|e| SimError::Csv(e.to_string()))?;
        }
        w.flush().map_err(|e| SimError::Csv(e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("utf8")
    }
}

/// BER of every code at every sink over the probability grid. Grid points
/// use separate random streams; all codes share them.
pub fn ber_sweep(
    design: &CneccDesign,
    codes: &[(String, GeneratorMatrix)],
    cfg: &SimConfig,
) -> Result<SimResult, SimError> {
    let mut records = Vec::new();
    if cfg.frames == 0 {
        return Ok(SimResult { records });
    }
    let m = design.graph.num_edges();
    for (name, g) in codes {
        let d = design.with_input(g)?;
        let sim = Simulator::new(&d, cfg.frame_len, cfg.force_input_trellis)?;
        for (point, &p) in cfg.p_grid.iter().enumerate() {
            let source = ErrorSource::new(&ErrorModel::probabilistic(p)?, &design.field, m)?;
            let counts = run_frames(&sim, &source, cfg.frames, cfg.seed, point as u64);
            for (sink, c) in sim.sinks.iter().zip(counts) {
                records.push(SimRecord {
                    code: name.clone(),
                    sink: sink.name.clone(),
                    p,
                    frames: c.frames,
                    bits: c.symbols,
                    bit_errors: c.symbol_errors,
                    ber: c.ber(),
                    block_errors: c.block_errors,
                    ber_std_error: c.ber_std_error(),
                });
            }
        }
    }
    Ok(SimResult { records })
}
