use std::path::Path;

use serde_json::{json, Value};

use sp6::bmquad;
use sp6::lfunc::{
    dirichlet_coefficients, dirichlet_sum, gamma_factor, partial_l, pole_order, spin_factor, HodgeNumbers, SatakeData,
    SatakeInput, SatakeValue,
};
use sp6::packets::packet;
use sp6::rootsys::positive_compact_roots;
use sp6::uchar::{decompose, wedge_tensor_char};
use sp6::wedge::{ad, highest_weight_vector, projection, weight_decompose};
use sp6::Weight;

use crate::Outcome;

pub struct CommandError {
    pub kind: &'static str,
    pub message: String,
}

impl From<sp6::Error> for CommandError {
    fn from(e: sp6::Error) -> Self {
        CommandError { kind: "computation", message: e.to_string() }
    }
}

type Res = Result<Outcome, CommandError>;

fn read_json(path: &Path) -> Result<Value, CommandError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandError { kind: "io", message: format!("{}: {e}", path.display()) })?;
    serde_json::from_str(&text)
        .map_err(|e| CommandError { kind: "malformed-json", message: format!("{}: {e}", path.display()) })
}

pub fn packets(lambda: Weight) -> Res {
    let p = packet(lambda)?;
    Ok(Outcome { inputs: json!({"lambda": lambda}), mode: "exact", results: json!(p) })
}

pub fn ktypes(p: usize, q: usize) -> Res {
    let table = decompose(&wedge_tensor_char(p, q)?)?;
    Ok(Outcome {
        inputs: json!({"p": p, "q": q}),
        mode: "exact",
        results: json!({"decomposition": table, "dimension": table.dimension(), "display": table.to_string()}),
    })
}

pub fn hwv_check(target: Weight) -> Res {
    let v = highest_weight_vector(target)?;
    let weights: Vec<Weight> = weight_decompose(&v).into_keys().collect();
    let mut killed = serde_json::Map::new();
    for r in positive_compact_roots() {
        killed.insert(r.label(), json!(ad(&r, &v)?.is_zero()));
    }
    let all = killed.values().all(|b| b.as_bool() == Some(true));
    Ok(Outcome {
        inputs: json!({"target": target}),
        mode: "exact",
        results: json!({"vector": v, "weights": weights, "annihilated_by": killed, "highest_weight": all}),
    })
}

pub fn projector(target: Weight) -> Res {
    let p = projection(target)?;
    Ok(Outcome {
        inputs: json!({"target": target}),
        mode: "exact",
        results: json!({"alpha": p.alpha.to_string(), "step1": p.step1.to_string(), "step2": p.step2.to_string()}),
    })
}

fn lfactor_generic<V: SatakeValue>(data: &[SatakeData<V>], s: f64, cutoff: Option<u64>, terms: Option<u64>) -> Result<Value, CommandError> {
    let factors: Vec<Value> = data
        .iter()
        .map(|d| {
            let f = spin_factor(d);
            let den: Vec<Value> = f.denominator.iter().map(SatakeValue::to_json).collect();
            json!({"prime": d.prime, "degree": f.degree(), "denominator": den})
        })
        .collect();
    let cutoff = cutoff.unwrap_or(u64::MAX);
    let value = partial_l(data, s, cutoff)?;
    let mut out = json!({"factors": factors, "value": [value.re, value.im]});
    if let Some(bound) = terms {
        let inside: Vec<SatakeData<V>> = data.iter().filter(|d| d.prime <= cutoff).cloned().collect();
        let coeffs = dirichlet_coefficients(&inside, bound)?;
        let sum = dirichlet_sum(&coeffs, s);
        out["dirichlet"] = json!({"bound": bound, "terms": coeffs.len(), "value": [sum.re, sum.im]});
    }
    Ok(out)
}

pub fn lfactor(path: &Path, s: f64, cutoff: Option<u64>, terms: Option<u64>) -> Res {
    let raw = read_json(path)?;
    let input = SatakeInput::from_json(&raw).map_err(|e| CommandError { kind: "schema", message: e.to_string() })?;
    let (values, results) = match &input {
        SatakeInput::Exact(d) => ("exact", lfactor_generic(d, s, cutoff, terms)?),
        SatakeInput::Float(d) => ("float", lfactor_generic(d, s, cutoff, terms)?),
    };
    Ok(Outcome {
        inputs: json!({"satake": raw, "s": s, "cutoff": cutoff, "values": values}),
        mode: "float",
        results,
    })
}

pub fn gamma(path: &Path, at: i64) -> Res {
    let raw = read_json(path)?;
    let h: HodgeNumbers =
        serde_json::from_value(raw.clone()).map_err(|e| CommandError { kind: "schema", message: e.to_string() })?;
    let list = gamma_factor(&h);
    Ok(Outcome {
        inputs: json!({"hodge": raw, "at": at}),
        mode: "exact",
        results: json!({"factors": list, "display": list.to_string(), "pole_order": pole_order(&h, at)}),
    })
}

pub fn bm_verify(n: u32, grid: usize, levels: usize, tol: f64) -> Res {
    let report = bmquad::verify(n, grid, levels, tol)?;
    Ok(Outcome {
        inputs: json!({"N": n, "grid": grid, "levels": levels, "tol": tol}),
        mode: "float",
        results: json!(report),
    })
}
