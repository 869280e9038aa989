use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use super::{CodeError, GeneratorMatrix, Trellis};
use crate::galois::Polynomial;

/// Required spacing between error events, in network uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Separation {
    Finite(usize),
    Unbounded,
}

impl Separation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Separation::Finite(v) => Some(v),
            Separation::Unbounded => None,
        }
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Separation::Finite(v) => write!(f, "{v}"),
            Separation::Unbounded => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeProfile {
    pub d_free: usize,
    pub t_dfree: Separation,
    pub catastrophic: bool,
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Monic gcd of all `k x k` minors.
pub fn minor_gcd(g: &GeneratorMatrix) -> Polynomial {
    let minors: Vec<Polynomial> = combinations(g.n(), g.k())
        .into_iter()
        .map(|cols| g.matrix().select_columns(&cols).det().expect("square"))
        .collect();
    Polynomial::gcd_all(g.field(), minors.iter())
}

/// True unless the gcd of the `k x k` minors is a power of `z`.
pub fn is_catastrophic(g: &GeneratorMatrix) -> bool {
    !minor_gcd(g).is_monomial()
}

/// Minimum output weight over paths that leave the zero state and return.
pub fn free_distance(g: &GeneratorMatrix) -> Result<usize, CodeError> {
    let t = Trellis::new(g)?;
    free_distance_on(&t)
}

pub fn free_distance_on(t: &Trellis) -> Result<usize, CodeError> {
    if has_zero_weight_cycle(t) {
        return Err(CodeError::ZeroWeightCycle);
    }
    let s = t.num_states();
    let mut dist = vec![usize::MAX; s];
    let mut heap = BinaryHeap::new();
    let mut best = usize::MAX;
    for u in 1..t.num_inputs() {
        let w = t.weight(0, u);
        let ns = t.next_state(0, u);
        if ns == 0 {
            best = best.min(w);
        } else if w < dist[ns] {
            dist[ns] = w;
            heap.push(Reverse((w, ns)));
        }
    }
    while let Some(Reverse((d, st))) = heap.pop() {
        if d > dist[st] || d >= best {
            continue;
        }
        for u in 0..t.num_inputs() {
            let nd = d + t.weight(st, u);
            let ns = t.next_state(st, u);
            if ns == 0 {
                best = best.min(nd);
            } else if nd < dist[ns] {
                dist[ns] = nd;
                heap.push(Reverse((nd, ns)));
            }
        }
    }
    Ok(best)
}

/// A cycle of zero-weight transitions avoiding the zero state.
fn has_zero_weight_cycle(t: &Trellis) -> bool {
    let s = t.num_states();
    let mut indeg = vec![0usize; s];
    for st in 1..s {
        for u in 0..t.num_inputs() {
            let ns = t.next_state(st, u);
            if ns != 0 && t.weight(st, u) == 0 {
                indeg[ns] += 1;
            }
        }
    }
    let mut queue: VecDeque<usize> = (1..s).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(st) = queue.pop_front() {
        removed += 1;
        for u in 0..t.num_inputs() {
            let ns = t.next_state(st, u);
            if ns != 0 && t.weight(st, u) == 0 {
                indeg[ns] -= 1;
                if indeg[ns] == 0 {
                    queue.push_back(ns);
                }
            }
        }
    }
    removed < s - 1
}

/// One more than the longest prefix length `j` of a codeword that leaves the
/// zero state at time 0 with a nonzero input block and keeps its weight
/// below `d_free` over the first `j` blocks.
pub fn t_dfree(g: &GeneratorMatrix, d_free: usize) -> Result<Separation, CodeError> {
    let t = Trellis::new(g)?;
    Ok(t_dfree_on(&t, d_free))
}

pub fn t_dfree_on(t: &Trellis, d_free: usize) -> Separation {
    if d_free == 0 {
        return Separation::Finite(1);
    }
    let d = d_free;
    let node = |st: usize, w: usize| st * d + w;
    let total = t.num_states() * d;
    let mut reached = vec![false; total];
    let mut starts = Vec::new();
    for u in 1..t.num_inputs() {
        let w = t.weight(0, u);
        if w < d {
            let v = node(t.next_state(0, u), w);
            if !reached[v] {
                reached[v] = true;
                starts.push(v);
            }
        }
    }
    if starts.is_empty() {
        return Separation::Finite(1);
    }
    let succ = |v: usize| {
        let (st, w) = (v / d, v % d);
        (0..t.num_inputs()).filter_map(move |u| {
            let nw = w + t.weight(st, u);
            (nw < d).then(|| node(t.next_state(st, u), nw))
        })
    };
    let mut order = starts.clone();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for s2 in succ(v) {
            if !reached[s2] {
                reached[s2] = true;
                order.push(s2);
            }
        }
    }
    let mut indeg = vec![0usize; total];
    for &v in &order {
        for s2 in succ(v) {
            indeg[s2] += 1;
        }
    }
    // Kahn over reachable pairs; `len[v]` counts blocks on the longest path to v
    let mut len = vec![0usize; total];
    for &v in &starts {
        len[v] = 1;
    }
    let mut queue: VecDeque<usize> = order.iter().copied().filter(|&v| indeg[v] == 0).collect();
    let mut processed = 0;
    let mut longest = 0;
    while let Some(v) = queue.pop_front() {
        processed += 1;
        longest = longest.max(len[v]);
        for s2 in succ(v) {
            len[s2] = len[s2].max(len[v] + 1);
            indeg[s2] -= 1;
            if indeg[s2] == 0 {
                queue.push_back(s2);
            }
        }
    }
    if processed < order.len() {
        return Separation::Unbounded;
    }
    Separation::Finite(longest + 1)
}

/// Free distance, `T_dfree` and catastrophicity.
///
/// For a catastrophic `1 x n` generator the free distance is taken from the
/// generator divided by the gcd of its entries, which spans the same code;
/// `T_dfree` is unbounded.
pub fn profile(g: &GeneratorMatrix) -> Result<CodeProfile, CodeError> {
    let catastrophic = is_catastrophic(g);
    if !catastrophic {
        let t = Trellis::new(g)?;
        let d_free = free_distance_on(&t)?;
        return Ok(CodeProfile {
            d_free,
            t_dfree: t_dfree_on(&t, d_free),
            catastrophic,
        });
    }
    if g.k() != 1 {
        return Err(CodeError::CatastrophicMultiInput);
    }
    let gcd = Polynomial::gcd_all(g.field(), g.matrix().row(0));
    let reduced = g.matrix().map(|p| p.div_exact(&gcd).expect("gcd divides"));
    let d_free = free_distance(&GeneratorMatrix::new(reduced)?)?;
    Ok(CodeProfile {
        d_free,
        t_dfree: Separation::Unbounded,
        catastrophic,
    })
}

/// `(n - k)(floor(delta / k) + 1) + delta + 1`
pub fn singleton_bound(k: usize, n: usize, delta: usize) -> usize {
    (n - k) * (delta / k + 1) + delta + 1
}

/// The generalized Singleton bound for `g` and whether `d_free` meets it.
pub fn singleton_check(g: &GeneratorMatrix, d_free: usize) -> (usize, bool) {
    let bound = singleton_bound(g.k(), g.n(), g.degree());
    (bound, d_free == bound)
}
