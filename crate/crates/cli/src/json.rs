//! JSON report builders.
//!
//! All payloads are `serde_json` values with sorted keys and no timestamps,
//! so identical invocations emit byte-identical output.  Matrix positions are
//! 1-based in every report.

use euctower_core::euclid_partitions::{DivisionChain, Partition};
use euctower_core::orbit_lemma::LemmaReport;
use euctower_core::tower::Tower;
use serde_json::{json, Value};

pub fn partition_value(p: &Partition) -> Value {
    json!(p.parts())
}

pub fn chain_value(chain: &DivisionChain) -> Value {
    json!({
        "n1": chain.n1(),
        "n2": chain.n2(),
        "s": chain.s(),
        "quotients": chain.quotients(),
        "remainders": chain.remainders(),
    })
}

pub fn tower_value(t: &Tower) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "index": s.index,
                "pair": [s.pair.0, s.pair.1],
                "v_basis": s.v_basis.iter()
                    .map(|g| g.iter().map(|&(r, c)| json!([r + 1, c + 1])).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "f_support": s.f_support.iter()
                    .map(|&(r, c, k)| json!([r + 1, c + 1, k]))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "n1": t.n1,
        "n2": t.n2,
        "n": t.n(),
        "chain": chain_value(&t.chain),
        "steps": steps,
        "af_support": t.af.support.iter()
            .map(|&(r, c, k)| json!([r + 1, c + 1, k]))
            .collect::<Vec<_>>(),
        "dim_df": euctower_core::tower::dim_df(t),
    })
}

pub fn lemma_report_value(r: &LemmaReport) -> Value {
    json!({
        "pair": [r.pair.0, r.pair.1],
        "jordan_type_of_j": r.jordan_type_of_j.as_ref().map(partition_value),
        "claimed": r.claimed.as_ref().map(partition_value),
        "richardson": r.richardson.as_ref().map(partition_value),
        "dim_orbit": r.dim_orbit,
        "dim_df": r.dim_df,
        "all_bullets_ok": r.all_bullets_ok,
        "verdict": r.verdict,
        "diagnostic": r.diagnostic,
    })
}

pub fn render(value: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    };
    s.push('\n');
    s
}
