use std::collections::BTreeMap;

use super::code::identity_selection_for;
use super::{NetworkCode, NetworkError, NetworkGraph};
use crate::galois::{Field, FieldSpec};

/// A parsed network-description document.
#[derive(Clone, Debug)]
pub struct LoadedNetwork {
    pub field: Field,
    pub graph: NetworkGraph,
    /// Present when the document carries kernel lines.
    pub code: Option<NetworkCode>,
}

fn malformed(line: usize, reason: impl Into<String>) -> NetworkError {
    NetworkError::Malformed {
        line,
        reason: reason.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, NetworkError> {
    tok.parse()
        .map_err(|_| malformed(line, format!("bad {what} {tok:?}")))
}

/// Parses the line-oriented network format:
///
/// ```text
/// field 3                 # or: field 2 2 1 1 1  (p, m, modulus low to high)
/// node s
/// edge e1 s v1
/// source s
/// sink t1 t2
/// alpha 1 e1 1            # input index (1-based), edge, value
/// beta e1 e3 1
/// epsilon t1 e6 1 1       # sink, edge, output index (1-based), value
/// ```
pub fn load_network(text: &str) -> Result<LoadedNetwork, NetworkError> {
    let mut field = None;
    let mut nodes: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut source = None;
    let mut sinks: Vec<String> = Vec::new();
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut epsilons = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((&kw, args)) = toks.split_first() else {
            continue;
        };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(malformed(line, format!("`{kw}` takes {n} arguments")))
            }
        };
        match kw {
            "field" => {
                if field.is_some() {
                    return Err(malformed(line, "field declared twice"));
                }
                let p: u32 = number(line, args.first().ok_or_else(|| malformed(line, "missing characteristic"))?, "characteristic")?;
                let spec = match args.len() {
                    1 => FieldSpec::prime(p)?,
                    2 => {
                        let m: u32 = number(line, args[1], "extension degree")?;
                        if m == 1 {
                            FieldSpec::prime(p)?
                        } else {
                            let q = p.checked_pow(m).ok_or_else(|| malformed(line, "field too large"))?;
                            FieldSpec::builtin(q)?
                        }
                    }
                    _ => {
                        let m: u32 = number(line, args[1], "extension degree")?;
                        let modulus = args[2..]
                            .iter()
                            .map(|t| number(line, t, "modulus coefficient"))
                            .collect::<Result<Vec<u32>, _>>()?;
                        FieldSpec::extension(p, m, modulus)?
                    }
                };
                field = Some(Field::new(spec)?);
            }
            "node" => {
                arity(1)?;
                nodes.push(args[0].to_string());
            }
            "edge" => {
                arity(3)?;
                edges.push((args[0].to_string(), args[1].to_string(), args[2].to_string()));
            }
            "source" => {
                arity(1)?;
                if source.replace(args[0].to_string()).is_some() {
                    return Err(malformed(line, "source declared twice"));
                }
            }
            "sink" => {
                if args.is_empty() {
                    return Err(malformed(line, "`sink` needs at least one node"));
                }
                sinks.extend(args.iter().map(|s| s.to_string()));
            }
            "alpha" => {
                arity(3)?;
                let input: usize = number(line, args[0], "input index")?;
                if input == 0 {
                    return Err(malformed(line, "input indices start at 1"));
                }
                alphas.push((line, input - 1, args[1].to_string(), number::<u32>(line, args[2], "value")?));
            }
            "beta" => {
                arity(3)?;
                betas.push((line, args[0].to_string(), args[1].to_string(), number::<u32>(line, args[2], "value")?));
            }
            "epsilon" => {
                arity(4)?;
                let output: usize = number(line, args[2], "output index")?;
                if output == 0 {
                    return Err(malformed(line, "output indices start at 1"));
                }
                epsilons.push((
                    line,
                    args[0].to_string(),
                    args[1].to_string(),
                    output - 1,
                    number::<u32>(line, args[3], "value")?,
                ));
            }
            other => return Err(malformed(line, format!("unknown keyword `{other}`"))),
        }
    }

    let field = field.ok_or_else(|| malformed(0, "missing `field` line"))?;
    let source = source.ok_or_else(|| malformed(0, "missing `source` line"))?;
    let graph = NetworkGraph::new(&nodes, &edges, &source, &sinks)?;

    if alphas.is_empty() && betas.is_empty() && epsilons.is_empty() {
        return Ok(LoadedNetwork { field, graph, code: None });
    }
    let n = alphas
        .iter()
        .map(|a| a.1 + 1)
        .max()
        .ok_or_else(|| malformed(0, "kernel lines present but no `alpha` lines"))?;
    let m = graph.num_edges();
    let edge = |line: usize, id: &str| {
        graph
            .edge_index(id)
            .ok_or_else(|| malformed(line, format!("unknown edge {id}")))
    };
    let in_field = |line: usize, v: u32| {
        if field.contains(v) {
            Ok(v)
        } else {
            Err(malformed(line, format!("value {v} not in {field}")))
        }
    };

    let mut alpha = vec![vec![0u32; m]; n];
    for (line, i, e, v) in alphas {
        alpha[i][edge(line, &e)?] = in_field(line, v)?;
    }
    let mut beta = vec![vec![0u32; m]; m];
    for (line, a, b, v) in betas {
        beta[edge(line, &a)?][edge(line, &b)?] = in_field(line, v)?;
    }
    let mut explicit: BTreeMap<usize, Vec<Vec<u32>>> = BTreeMap::new();
    for (line, t, e, out, v) in epsilons {
        let pos = graph
            .sinks()
            .iter()
            .position(|&s| graph.node_name(s) == t)
            .ok_or_else(|| malformed(line, format!("{t} is not a sink")))?;
        if out >= n {
            return Err(malformed(line, format!("output index {} exceeds dimension {n}", out + 1)));
        }
        let b = explicit.entry(pos).or_insert_with(|| vec![vec![0u32; n]; m]);
        b[edge(line, &e)?][out] = in_field(line, v)?;
    }
    let mut epsilon = Vec::with_capacity(graph.sinks().len());
    for (pos, &t) in graph.sinks().iter().enumerate() {
        epsilon.push(match explicit.remove(&pos) {
            Some(b) => b,
            None => identity_selection_for(&graph, t, n)?,
        });
    }
    let code = NetworkCode::new(&graph, &field, n, alpha, beta, epsilon)?;
    Ok(LoadedNetwork {
        field,
        graph,
        code: Some(code),
    })
}
