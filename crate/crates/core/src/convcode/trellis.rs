use super::{CodeError, GeneratorMatrix};

/// Upper limit on `states * q^k` for a materialized trellis.
pub const MAX_TRANSITIONS: u64 = 1 << 22;

/// State machine of the controller canonical form encoder.
///
/// Row `i` owns `nu_i` base-`q` digits of the state index; digit `d` of that
/// row holds `u_i(t - 1 - d)`. Input blocks are indexed as `sum u_i q^i`.
#[derive(Clone, Debug)]
pub struct Trellis {
    q: u32,
    k: usize,
    n: usize,
    num_states: usize,
    num_inputs: usize,
    next: Vec<u32>,
    out: Vec<u32>,
    weight: Vec<u8>,
}

impl Trellis {
    pub fn new(g: &GeneratorMatrix) -> Result<Self, CodeError> {
        let field = g.field();
        let q = field.order();
        let (k, n) = (g.k(), g.n());
        let delta = g.degree();
        let num_states = (q as u64).checked_pow(delta as u32);
        let num_inputs = (q as u64).pow(k as u32);
        let total = num_states.and_then(|s| s.checked_mul(num_inputs));
        let total = match total {
            Some(t) if t <= MAX_TRANSITIONS => t as usize,
            _ => return Err(CodeError::TrellisTooLarge { q, delta, k }),
        };
        let num_states = num_states.expect("checked") as usize;
        let num_inputs = num_inputs as usize;

        let nu = g.row_degrees();
        let mut offset = Vec::with_capacity(k);
        let mut acc = 0;
        for &v in nu {
            offset.push(acc);
            acc += v;
        }
        let mut pow = vec![1usize; delta + 1];
        for i in 1..=delta {
            pow[i] = pow[i - 1] * q as usize;
        }
        // coeffs[i][j][d] = coefficient of z^d in g_ij
        let coeffs: Vec<Vec<Vec<u32>>> = (0..k)
            .map(|i| (0..n).map(|j| g.entry(i, j).coeffs().to_vec()).collect())
            .collect();

        let mut next = vec![0u32; total];
        let mut out = vec![0u32; total * n];
        let mut weight = vec![0u8; total];
        let mut digits = vec![0u32; delta];
        let mut hist: Vec<Vec<u32>> = nu.iter().map(|&v| vec![0u32; v + 1]).collect();
        for s in 0..num_states {
            let mut rem = s;
            for d in digits.iter_mut() {
                *d = (rem % q as usize) as u32;
                rem /= q as usize;
            }
            for u in 0..num_inputs {
                let mut urem = u;
                let mut ns = 0usize;
                for i in 0..k {
                    let ui = (urem % q as usize) as u32;
                    urem /= q as usize;
                    hist[i][0] = ui;
                    hist[i][1..].copy_from_slice(&digits[offset[i]..offset[i] + nu[i]]);
                    for (d, &h) in hist[i][..nu[i]].iter().enumerate() {
                        ns += h as usize * pow[offset[i] + d];
                    }
                }
                let t = s * num_inputs + u;
                next[t] = ns as u32;
                let mut w = 0u8;
                for j in 0..n {
                    let mut v = 0u32;
                    for i in 0..k {
                        for (d, &c) in coeffs[i][j].iter().enumerate() {
                            if c != 0 {
                                v = field.add(v, field.mul(c, hist[i][d]));
                            }
                        }
                    }
                    out[t * n + j] = v;
                    w += (v != 0) as u8;
                }
                weight[t] = w;
            }
        }
        Ok(Self {
            q,
            k,
            n,
            num_states,
            num_inputs,
            next,
            out,
            weight,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn next_state(&self, state: usize, input: usize) -> usize {
        self.next[state * self.num_inputs + input] as usize
    }

    pub fn output(&self, state: usize, input: usize) -> &[u32] {
        let t = state * self.num_inputs + input;
        &self.out[t * self.n..(t + 1) * self.n]
    }

    /// Hamming weight of the output block on a transition.
    pub fn weight(&self, state: usize, input: usize) -> usize {
        self.weight[state * self.num_inputs + input] as usize
    }

    pub fn input_index(&self, block: &[u32]) -> usize {
        block
            .iter()
            .rev()
            .fold(0usize, |acc, &u| acc * self.q as usize + u as usize)
    }

    pub fn input_block(&self, mut index: usize) -> Vec<u32> {
        (0..self.k)
            .map(|_| {
                let d = (index % self.q as usize) as u32;
                index /= self.q as usize;
                d
            })
            .collect()
    }

    /// Walks the trellis from the zero state, one output block per input.
    pub fn encode(&self, blocks: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut s = 0;
        blocks
            .iter()
            .map(|b| {
                let u = self.input_index(b);
                let v = self.output(s, u).to_vec();
                s = self.next_state(s, u);
                v
            })
            .collect()
    }
}
