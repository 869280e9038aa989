use super::analysis::{weight, CneccDesign};
use crate::convcode::{singleton_bound, Separation};
use crate::galois::{FieldMatrix, Polynomial};

/// `(n + 1)(T_delay - 1) + 1`
fn span(n: usize, t_delay: usize) -> usize {
    (n + 1) * t_delay.saturating_sub(1) + 1
}

/// Largest weight of any `W_s` element allowed by the delay structure,
/// `r n [(n + 1)(T_delay - 1) + 1]`.
pub fn error_weight_bound(r: usize, n: usize, t_delay: usize) -> usize {
    r * n * span(n, t_delay)
}

/// Degree of an MDS code correcting weight `t` per window, `ceil((2t - 1) k / n)`.
pub fn mds_degree(t: usize, k: usize, n: usize) -> usize {
    if t == 0 {
        return 0;
    }
    ((2 * t - 1) * k).div_ceil(n)
}

/// Worst-case degree `2 r k [(n + 1)(T_delay - 1) + 1]`.
pub fn worst_case_mds_degree(r: usize, k: usize, n: usize, t_delay: usize) -> usize {
    2 * r * k * span(n, t_delay)
}

/// `4 r^2 n k X^2 + 2 r k (n - k) X + 1` with `X = (n + 1)(T_delay - 1) + 1`.
pub fn worst_case_t_dfree_bound(r: usize, n: usize, k: usize, t_delay: usize) -> u128 {
    let x = span(n, t_delay) as u128;
    let (r, n, k) = (r as u128, n as u128, k as u128);
    4 * r * r * n * k * x * x + 2 * r * k * (n - k) * x + 1
}

/// `(d_free - 1) delta + 1`
pub fn t_dfree_bound(d_free: usize, delta: usize) -> usize {
    d_free.saturating_sub(1) * delta + 1
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut v = q;
            while v % p == 0 {
                v /= p;
            }
            return v == 1;
        }
        p += 1;
    }
    true
}

/// Smallest prime power `q` with `n | q - 1` and `q * den > num` (i.e. `q > num/den`).
fn smallest_field_above(n: usize, num: u128, den: u128, strict: bool) -> u64 {
    let mut q = 2u64;
    loop {
        let lhs = q as u128 * den;
        let above = if strict { lhs > num } else { lhs >= num };
        if above && (q - 1) % n as u64 == 0 && is_prime_power(q) {
            return q;
        }
        q += 1;
    }
}

/// Field-size requirement `n | q - 1` and `q > max{|T|, 2 r n^2 X / (n - k) + 2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldRequirement {
    /// The strict lower bound on `q` as a fraction `num / den`.
    pub num: u128,
    pub den: u128,
    pub smallest_q: u64,
    pub satisfied_by_current: bool,
}

impl FieldRequirement {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

pub fn sufficient_field_requirement(
    n: usize,
    k: usize,
    r: usize,
    t_delay: usize,
    num_sinks: usize,
    current_q: u32,
) -> FieldRequirement {
    let den = (n - k) as u128;
    let x = span(n, t_delay) as u128;
    let num_code = 2 * r as u128 * (n * n) as u128 * x + 2 * den;
    let num_sinks = num_sinks as u128 * den;
    let num = num_code.max(num_sinks);
    let cur = current_q as u128;
    FieldRequirement {
        num,
        den,
        smallest_q: smallest_field_above(n, num, den, true),
        satisfied_by_current: cur * den > num && (cur - 1) % n as u128 == 0,
    }
}

/// `n | q - 1` and `q >= delta n^2 / (k (n - k)) + 2`.
pub fn mds_field_requirement(n: usize, k: usize, delta: usize, current_q: u32) -> FieldRequirement {
    let den = (k * (n - k)) as u128;
    let num = (delta * n * n) as u128 + 2 * den;
    let cur = current_q as u128;
    FieldRequirement {
        num,
        den,
        smallest_q: smallest_field_above(n, num, den, false),
        satisfied_by_current: cur * den >= num && (cur - 1) % n as u128 == 0,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeBounds {
    pub d_free: usize,
    pub delta: usize,
    pub t_dfree: Separation,
    pub t_dfree_bound: usize,
    pub t_dfree_holds: bool,
    pub singleton_bound: usize,
    pub singleton_holds: bool,
    pub is_mds: bool,
    pub mds_field: FieldRequirement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub t_delay: usize,
    pub t_s: usize,
    pub error_weight_bound: usize,
    pub error_weight_holds: bool,
    pub mds_degree: usize,
    pub worst_case_mds_degree: usize,
    pub sufficient_field: FieldRequirement,
    pub worst_case_t_dfree_bound: u128,
    pub input: Option<CodeBounds>,
}

/// Bound calculators evaluated on a design; `k` is taken from the input code
/// when present and defaults to 1.
pub fn bound_report(design: &CneccDesign) -> BoundReport {
    let n = design.n();
    let k = design.input.as_ref().map_or(1, |i| i.generator.k());
    let t_delay = design.t_delay();
    let r = design.r;
    let weight_limit = error_weight_bound(r, n, t_delay);
    let input = design.input.as_ref().map(|i| {
        let g = &i.generator;
        let delta = g.degree();
        let t_dfree_limit = t_dfree_bound(i.profile.d_free, delta);
        let sb = singleton_bound(g.k(), g.n(), delta);
        CodeBounds {
            d_free: i.profile.d_free,
            delta,
            t_dfree: i.profile.t_dfree,
            t_dfree_bound: t_dfree_limit,
            t_dfree_holds: match i.profile.t_dfree {
                Separation::Finite(t) => t <= t_dfree_limit,
                Separation::Unbounded => false,
            },
            singleton_bound: sb,
            singleton_holds: i.profile.d_free <= sb,
            is_mds: i.profile.d_free == sb,
            mds_field: mds_field_requirement(g.n(), g.k(), delta, design.field.order()),
        }
    });
    BoundReport {
        n,
        k,
        r,
        t_delay,
        t_s: design.t_s,
        error_weight_bound: weight_limit,
        error_weight_holds: design.t_s <= weight_limit,
        mds_degree: mds_degree(design.t_s, k, n),
        worst_case_mds_degree: worst_case_mds_degree(r, k, n, t_delay),
        sufficient_field: sufficient_field_requirement(n, k, r, t_delay, design.sinks.len(), design.field.order()),
        worst_case_t_dfree_bound: worst_case_t_dfree_bound(r, n, k, t_delay),
        input,
    }
}

/// One error vector seen at one sink, with and without delays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPair {
    pub sink_pos: usize,
    pub error: Vec<u32>,
    /// Weight of `w F_T(1) M_T(1)^{-1}`.
    pub instantaneous: usize,
    /// Weight of `w F_T(z) P_T(z)`.
    pub unit_delay: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstantaneousComparison {
    pub pairs: Vec<WeightPair>,
    pub max_instantaneous: usize,
    pub max_unit_delay: usize,
    /// Every pair satisfies `instantaneous <= unit_delay`.
    pub holds: bool,
}

pub fn instantaneous_comparison(design: &CneccDesign) -> InstantaneousComparison {
    let f = &design.field;
    let mut pairs = Vec::new();
    for (pos, s) in design.sinks.iter().enumerate() {
        let m_inv = s.transfer.eval(1).inverse().expect("valid network code at z = 1");
        let f_inst: FieldMatrix = s.f_t.eval(1);
        for w in &design.w_phi {
            let inst: Vec<u32> = (0..f_inst.cols())
                .map(|j| {
                    (0..w.len()).fold(0, |acc, e| f.add(acc, f.mul(w[e], f_inst.get(e, j).value())))
                })
                .collect();
            let ws_inst: Vec<u32> = (0..m_inv.cols())
                .map(|j| {
                    (0..inst.len()).fold(0, |acc, i| f.add(acc, f.mul(inst[i], m_inv.get(i, j).value())))
                })
                .collect();
            let image: Vec<Polynomial> = (0..s.f_t.cols())
                .map(|j| {
                    let mut acc = Polynomial::zero(f);
                    for (e, &c) in w.iter().enumerate() {
                        if c != 0 {
                            acc = &acc + &s.f_t.get(e, j).scale(c);
                        }
                    }
                    acc
                })
                .collect();
            let ws = s.processing.left_mul_vec(&image).expect("n-tuple");
            pairs.push(WeightPair {
                sink_pos: pos,
                error: w.clone(),
                instantaneous: ws_inst.iter().filter(|&&x| x != 0).count(),
                unit_delay: weight(&ws),
            });
        }
    }
    let max_instantaneous = pairs.iter().map(|p| p.instantaneous).max().unwrap_or(0);
    let max_unit_delay = pairs.iter().map(|p| p.unit_delay).max().unwrap_or(0);
    let holds = pairs.iter().all(|p| p.instantaneous <= p.unit_delay);
    InstantaneousComparison {
        pairs,
        max_instantaneous,
        max_unit_delay,
        holds,
    }
}
