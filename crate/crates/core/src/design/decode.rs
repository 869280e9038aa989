use super::analysis::{CneccDesign, DecodeMode};
use super::DesignError;
use crate::convcode::{viterbi_decode, GeneratorMatrix, Trellis};
use crate::galois::{BlockFilter, Polynomial};

/// Sink-side decoder for one sink of a design.
///
/// The decoding generator (`G_O` in output mode, `p_T G_I` in input mode) is
/// used with its common `z^a` factor removed; the received sequence is read
/// from time `a` on, which leaves every path metric unchanged.
#[derive(Clone, Debug)]
pub struct SinkDecoder {
    mode: DecodeMode,
    generator: GeneratorMatrix,
    trellis: Trellis,
    shift: usize,
    processing: Option<BlockFilter>,
}

impl SinkDecoder {
    /// Uses the design's mode for the sink unless `force_input` is set.
    pub fn new(design: &CneccDesign, sink_pos: usize, force_input: bool) -> Result<Self, DesignError> {
        let input = design.input.as_ref().ok_or(DesignError::NoInputCode)?;
        let sink = &design.sinks[sink_pos];
        let output = sink.output.as_ref().ok_or(DesignError::NoInputCode)?;
        let mode = if force_input {
            DecodeMode::InputTrellis
        } else {
            output.mode
        };
        let (full, processing) = match mode {
            DecodeMode::OutputTrellis => (output.generator.clone(), None),
            DecodeMode::InputTrellis => (
                input.generator.scaled(&sink.p_t)?,
                Some(BlockFilter::new(&sink.processing)),
            ),
        };
        let (generator, shift) = full.strip_delay();
        let trellis = Trellis::new(&generator)?;
        Ok(Self {
            mode,
            generator,
            trellis,
            shift,
            processing,
        })
    }

    pub fn mode(&self) -> DecodeMode {
        self.mode
    }

    /// Zero-tail length of the decoding trellis.
    pub fn tail(&self) -> usize {
        self.generator.memory()
    }

    /// Network uses that must be observed to decode `info_len` blocks.
    pub fn required_len(&self, info_len: usize) -> usize {
        self.shift + info_len + self.tail()
    }

    /// Decodes `info_len` information blocks from the received sequences
    /// `y(z)`, one polynomial per sink output.
    pub fn decode(&self, y: &[Polynomial], info_len: usize) -> Vec<Vec<u32>> {
        let len = self.required_len(info_len);
        let blocks: Vec<Vec<u32>> = (0..len).map(|t| y.iter().map(|p| p.coeff(t)).collect()).collect();
        self.decode_blocks(&blocks, info_len)
    }

    /// Same as [`decode`](Self::decode) on received blocks, one per network
    /// use; blocks past `required_len(info_len)` are ignored.
    pub fn decode_blocks(&self, y: &[Vec<u32>], info_len: usize) -> Vec<Vec<u32>> {
        let len = self.required_len(info_len);
        let processed;
        let seq = match &self.processing {
            Some(p) => {
                processed = p.apply(&y[..len.min(y.len())], len);
                &processed[..]
            }
            None => y,
        };
        let n = self.generator.n();
        let blocks: Vec<Vec<u32>> = (self.shift..len)
            .map(|t| seq.get(t).cloned().unwrap_or_else(|| vec![0; n]))
            .collect();
        viterbi_decode(&self.trellis, &blocks, self.tail())
    }
}

/// Decodes received blocks `y` (one `n`-symbol block per network use) at a
/// sink using the design's mode.
pub fn decode_at_sink(
    design: &CneccDesign,
    sink_pos: usize,
    y: &[Vec<u32>],
    info_len: usize,
) -> Result<Vec<Vec<u32>>, DesignError> {
    let dec = SinkDecoder::new(design, sink_pos, false)?;
    Ok(dec.decode_blocks(y, info_len))
}
