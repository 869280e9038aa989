use std::fmt::Write;

use super::analysis::CneccDesign;
use super::bounds::{BoundReport, InstantaneousComparison};

/// Ordered `key=value` records describing a design.
pub fn report_records(
    design: &CneccDesign,
    bounds: &BoundReport,
    inst: &InstantaneousComparison,
) -> Vec<(String, String)> {
    let mut kv: Vec<(String, String)> = Vec::new();
    let mut put = |k: String, v: String| kv.push((k, v));
    put("field".into(), design.field.to_string());
    put("edges".into(), design.graph.num_edges().to_string());
    put("sinks".into(), design.sinks.len().to_string());
    put("n".into(), design.n().to_string());
    put("t_delay".into(), design.t_delay().to_string());
    put("patterns".into(), design.patterns.len().to_string());
    put("w_phi.size".into(), design.w_phi.len().to_string());
    put("w_s.size".into(), design.w_s.len().to_string());
    put("t_s".into(), design.t_s.to_string());
    put("r".into(), design.r.to_string());
    if let Some(i) = &design.input {
        put("input.generator".into(), i.generator.to_string());
        put("input.degree".into(), i.generator.degree().to_string());
        put("input.d_free".into(), i.profile.d_free.to_string());
        put("input.t_dfree".into(), i.profile.t_dfree.to_string());
        put("input.catastrophic".into(), i.profile.catastrophic.to_string());
        put("input.valid".into(), i.valid.to_string());
    }
    for s in &design.sinks {
        let p = format!("sink.{}", s.name);
        put(format!("{p}.transfer"), s.transfer.to_string());
        put(format!("{p}.p_t"), s.p_t.to_string());
        put(format!("{p}.processing"), s.processing.to_string());
        put(format!("{p}.w_t.size"), s.w_t.len().to_string());
        put(format!("{p}.t_t"), s.t_t.to_string());
        if let Some(o) = &s.output {
            put(format!("{p}.output.generator"), o.generator.to_string());
            put(format!("{p}.output.d_free"), o.profile.d_free.to_string());
            put(format!("{p}.output.t_dfree"), o.profile.t_dfree.to_string());
            put(format!("{p}.output.catastrophic"), o.profile.catastrophic.to_string());
            put(format!("{p}.m_t"), o.m_t.to_string());
            put(format!("{p}.mode"), o.mode.to_string());
        }
    }
    put("bound.error_weight".into(), bounds.error_weight_bound.to_string());
    put("bound.error_weight.holds".into(), bounds.error_weight_holds.to_string());
    put("bound.mds_degree".into(), bounds.mds_degree.to_string());
    put("bound.worst_case_mds_degree".into(), bounds.worst_case_mds_degree.to_string());
    put("bound.sufficient_field.q_greater_than".into(), format!("{}", bounds.sufficient_field.value()));
    put("bound.sufficient_field.smallest_q".into(), bounds.sufficient_field.smallest_q.to_string());
    put("bound.sufficient_field.current_ok".into(), bounds.sufficient_field.satisfied_by_current.to_string());
    put("bound.worst_case_t_dfree".into(), bounds.worst_case_t_dfree_bound.to_string());
    if let Some(c) = &bounds.input {
        put("bound.t_dfree".into(), c.t_dfree_bound.to_string());
        put("bound.t_dfree.holds".into(), c.t_dfree_holds.to_string());
        put("bound.singleton".into(), c.singleton_bound.to_string());
        put("bound.singleton.holds".into(), c.singleton_holds.to_string());
        put("bound.mds".into(), c.is_mds.to_string());
        put("bound.mds_field.q_at_least".into(), format!("{}", c.mds_field.value()));
        put("bound.mds_field.smallest_q".into(), c.mds_field.smallest_q.to_string());
    }
    put("instantaneous.max_weight".into(), inst.max_instantaneous.to_string());
    put("instantaneous.unit_delay_max_weight".into(), inst.max_unit_delay.to_string());
    put("instantaneous.holds".into(), inst.holds.to_string());
    kv
}

pub fn render_kv(design: &CneccDesign, bounds: &BoundReport, inst: &InstantaneousComparison) -> String {
    let mut out = String::new();
    for (k, v) in report_records(design, bounds, inst) {
        let _ = writeln!(out, "{k}={v}");
    }
    out
}

pub fn render_text(design: &CneccDesign, bounds: &BoundReport, inst: &InstantaneousComparison) -> String {
    let mut o = String::new();
    let _ = writeln!(
        o,
        "network: {} edges, {} sinks, dimension {}, over {}, T_delay = {}",
        design.graph.num_edges(),
        design.sinks.len(),
        design.n(),
        design.field,
        design.t_delay()
    );
    let _ = writeln!(
        o,
        "error patterns: {}   |W_phi| = {}   |W_s| = {}   t_s = {}   r = {}",
        design.patterns.len(),
        design.w_phi.len(),
        design.w_s.len(),
        design.t_s,
        design.r
    );
    if let Some(i) = &design.input {
        let _ = writeln!(
            o,
            "input code {}: degree {}, d_free {}, T_dfree {}{}",
            i.generator,
            i.generator.degree(),
            i.profile.d_free,
            i.profile.t_dfree,
            if i.profile.catastrophic { ", catastrophic" } else { "" }
        );
        let _ = writeln!(
            o,
            "  requirement d_free >= 2 t_s + 1 = {}: {}",
            2 * design.t_s + 1,
            if i.valid { "met" } else { "NOT met" }
        );
    }
    for s in &design.sinks {
        let _ = writeln!(o, "\nsink {}", s.name);
        let _ = writeln!(o, "  M_T(z) = {}", s.transfer);
        let _ = writeln!(o, "  p_T(z) = {}", s.p_t);
        let _ = writeln!(o, "  P_T(z) = {}", s.processing);
        let _ = writeln!(o, "  |W_T| = {}   t_T = {}", s.w_t.len(), s.t_t);
        if let Some(out) = &s.output {
            let _ = writeln!(o, "  G_O(z) = {}", out.generator);
            let _ = writeln!(
                o,
                "  output code: d_free {}, T_dfree {}, m_T {}{}",
                out.profile.d_free,
                out.profile.t_dfree,
                out.m_t,
                if out.profile.catastrophic { ", catastrophic" } else { "" }
            );
            let _ = writeln!(o, "  decoding on: {}", out.mode);
        }
    }
    let _ = writeln!(o, "\nbounds");
    let _ = writeln!(
        o,
        "  t_s <= r n [(n+1)(T_delay-1)+1] = {}: {}",
        bounds.error_weight_bound,
        holds(bounds.error_weight_holds)
    );
    let _ = writeln!(o, "  MDS degree for t_s: {}", bounds.mds_degree);
    let _ = writeln!(o, "  worst-case MDS degree: {}", bounds.worst_case_mds_degree);
    let _ = writeln!(
        o,
        "  sufficient field: n | q-1 and q > {} (smallest {}; current field {})",
        bounds.sufficient_field.value(),
        bounds.sufficient_field.smallest_q,
        if bounds.sufficient_field.satisfied_by_current { "qualifies" } else { "does not qualify" }
    );
    let _ = writeln!(o, "  T_dfree bound for a worst-case MDS input code: {}", bounds.worst_case_t_dfree_bound);
    if let Some(c) = &bounds.input {
        let _ = writeln!(
            o,
            "  T_dfree <= (d_free-1) delta + 1 = {}: {}",
            c.t_dfree_bound,
            holds(c.t_dfree_holds)
        );
        let _ = writeln!(
            o,
            "  generalized Singleton bound {}: {}{}",
            c.singleton_bound,
            holds(c.singleton_holds),
            if c.is_mds { " (MDS)" } else { "" }
        );
        let _ = writeln!(
            o,
            "  MDS construction field: n | q-1 and q >= {} (smallest {})",
            c.mds_field.value(),
            c.mds_field.smallest_q
        );
    }
    let _ = writeln!(
        o,
        "  instantaneous max weight {} vs unit-delay {}: {}",
        inst.max_instantaneous,
        inst.max_unit_delay,
        holds(inst.holds)
    );
    o
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "VIOLATED"
    }
}
