//! JSON text form of a [`ChainPresentation`]:
//!
//! ```text
//! {"stages":[{"k":3,"q":3,"s":"2^0*P^1"},{"k":9,"q":null,"s":"2^0*3^0*P^1"}],"tail":{"density":"1","rule":"attained"}}
//! ```
//!
//! `k` is the matrix size, `s` the inner Steinitz number and `q` the quotient
//! `s_i / s_{i+1}` (null on the last stage). `tail` is null or a rule with an
//! optional density.

use serde_json::{json, Map, Value};
use spectra_core::{ChainPresentation, ChainStage, DensityBound, Steinitz, TailRule};

pub fn to_value(chain: &ChainPresentation) -> Value {
    let quotients = chain.quotients();
    let stages: Vec<Value> = chain
        .stages()
        .iter()
        .enumerate()
        .map(|(i, stage)| {
            json!({
                "k": stage.size,
                "s": stage.inner.to_string(),
                "q": quotients.get(i),
            })
        })
        .collect();
    let tail = chain.tail().map(|rule| {
        let mut m = Map::new();
        m.insert("rule".into(), rule.name().into());
        if let Some(r) = rule.density() {
            m.insert("density".into(), r.to_string().into());
        }
        Value::Object(m)
    });
    json!({ "stages": stages, "tail": tail })
}

pub fn format(chain: &ChainPresentation) -> String {
    to_value(chain).to_string()
}

pub fn parse(text: &str) -> Result<ChainPresentation, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("chain JSON: {e}"))?;
    let obj = value.as_object().ok_or("chain JSON: expected an object")?;
    let stages = obj
        .get("stages")
        .and_then(Value::as_array)
        .ok_or("chain JSON: missing `stages` array")?;
    let mut parsed = Vec::with_capacity(stages.len());
    let mut quotients = Vec::new();
    for (i, stage) in stages.iter().enumerate() {
        let field = |name: &str| stage.get(name).ok_or(format!("stage {}: missing `{name}`", i + 1));
        let size = field("k")?
            .as_u64()
            .ok_or(format!("stage {}: `k` must be a natural number", i + 1))?;
        let inner: Steinitz = field("s")?
            .as_str()
            .ok_or(format!("stage {}: `s` must be a string", i + 1))?
            .parse()
            .map_err(|e| format!("stage {}: {e}", i + 1))?;
        match stage.get("q") {
            Some(Value::Null) | None if i + 1 == stages.len() => {}
            Some(q) if i + 1 < stages.len() => quotients.push(
                q.as_u64()
                    .ok_or(format!("stage {}: `q` must be a natural number", i + 1))?,
            ),
            _ if i + 1 < stages.len() => return Err(format!("stage {}: missing `q`", i + 1)),
            _ => return Err(format!("stage {}: last stage takes no `q`", i + 1)),
        }
        parsed.push(ChainStage { size, inner });
    }
    let tail = match obj.get("tail") {
        None | Some(Value::Null) => None,
        Some(t) => Some(parse_tail(t)?),
    };
    ChainPresentation::new(parsed, quotients, tail).map_err(|e| e.to_string())
}

fn parse_tail(t: &Value) -> Result<TailRule, String> {
    let rule = t.get("rule").and_then(Value::as_str).ok_or("tail: missing `rule`")?;
    let density = || -> Result<DensityBound, String> {
        t.get("density")
            .and_then(Value::as_str)
            .ok_or(format!("tail: rule `{rule}` needs a `density`"))?
            .parse()
            .map_err(|e| format!("tail: {e}"))
    };
    match rule {
        "attained" => Ok(TailRule::AttainedDensity(density()?)),
        "approached" => Ok(TailRule::ApproachedDensity(density()?)),
        "unbounded" => Ok(TailRule::Unbounded),
        other => Err(format!("tail: unknown rule `{other}`")),
    }
}
