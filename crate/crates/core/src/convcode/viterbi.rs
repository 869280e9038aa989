use super::Trellis;

/// Hard-decision minimum Hamming distance decoding of a zero-tail frame.
///
/// `r` holds `n`-symbol blocks. The last `tail` blocks are decoded with the
/// input forced to zero and the path must end in the zero state; the first
/// `r.len() - tail` information blocks are returned. Among equal metrics the
/// lowest predecessor state wins.
pub fn viterbi_decode(t: &Trellis, r: &[Vec<u32>], tail: usize) -> Vec<Vec<u32>> {
    let steps = r.len();
    let info_len = steps.saturating_sub(tail);
    let ns = t.num_states();
    let ni = t.num_inputs();
    const INF: u32 = u32::MAX;
    let mut metric = vec![INF; ns];
    let mut fresh = vec![INF; ns];
    metric[0] = 0;
    // survivor transition `state * ni + input` per step and state
    let mut back = vec![u32::MAX; steps * ns];
    for (step, block) in r.iter().enumerate() {
        fresh.fill(INF);
        let inputs = if step < info_len { ni } else { 1 };
        let row = &mut back[step * ns..(step + 1) * ns];
        for s in 0..ns {
            let m = metric[s];
            if m == INF {
                continue;
            }
            for u in 0..inputs {
                let out = t.output(s, u);
                let dist = out.iter().zip(block).filter(|(a, b)| a != b).count() as u32;
                let nm = m + dist;
                let nx = t.next_state(s, u);
                if nm < fresh[nx] {
                    fresh[nx] = nm;
                    row[nx] = (s * ni + u) as u32;
                }
            }
        }
        std::mem::swap(&mut metric, &mut fresh);
    }
    // a short tail may leave the zero state unreachable; fall back to the best end state
    let mut state = if metric[0] != INF {
        0
    } else {
        (0..ns).min_by_key(|&s| metric[s]).unwrap_or(0)
    };
    let mut inputs = vec![0usize; steps];
    for step in (0..steps).rev() {
        let tr = back[step * ns + state] as usize;
        inputs[step] = tr % ni;
        state = tr / ni;
    }
    inputs[..info_len].iter().map(|&u| t.input_block(u)).collect()
}
