use std::sync::Arc;

use dashu_int::IBig;
use serde_json::{json, Value};

use super::poly::{Exponents, LaurentPoly};
use super::varset::VarSet;
use crate::error::{Error, Result};

impl LaurentPoly {
    pub fn to_json(&self) -> Value {
        json!({
            "vars": self.vars().names(),
            "terms": self.terms().iter().map(|(e, c)| json!({
                "coeff": c.to_string(),
                "exps": e.as_slice(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Terms in the `terms` array only; the variables come from the caller.
    pub fn to_json_terms(&self) -> Value {
        Value::Array(
            self.terms()
                .iter()
                .map(|(e, c)| json!({"coeff": c.to_string(), "exps": e.as_slice()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let names = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing `vars`".into()))?
            .iter()
            .map(|n| n.as_str().map(str::to_owned).ok_or_else(|| Error::Json("variable name must be a string".into())))
            .collect::<Result<Vec<_>>>()?;
        let vars = VarSet::new(names)?;
        let terms = v.get("terms").ok_or_else(|| Error::Json("missing `terms`".into()))?;
        Self::from_json_terms(&vars, terms)
    }

    pub fn from_json_terms(vars: &Arc<VarSet>, terms: &Value) -> Result<Self> {
        let arr = terms
            .as_array()
            .ok_or_else(|| Error::Json("`terms` must be an array".into()))?;
        let mut out = Vec::with_capacity(arr.len());
        for t in arr {
            let coeff: IBig = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Json("term needs a string `coeff`".into()))?
                .parse()
                .map_err(|_| Error::Json("bad coefficient".into()))?;
            let exps = t
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json("term needs `exps`".into()))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .and_then(|x| i32::try_from(x).ok())
                        .ok_or_else(|| Error::Json("exponent must be a 32-bit integer".into()))
                })
                .collect::<Result<Exponents>>()?;
            out.push((exps, coeff));
        }
        Self::from_terms(vars, out)
    }

    /// LaTeX with indexed names typeset as subscripts, e.g. `s_{1}^{2} t^{-1}`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().iter().rev().enumerate() {
            let neg = c.signum() < IBig::ZERO;
            let abs = if neg { -c } else { c.clone() };
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let factors: Vec<String> = e
                .iter()
                .zip(self.vars().names())
                .filter(|(&x, _)| x != 0)
                .map(|(&x, n)| {
                    let base = latex_name(n);
                    if x == 1 {
                        base
                    } else {
                        format!("{base}^{{{x}}}")
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push(' ');
                }
                out.push_str(&factors.join(" "));
            }
        }
        out
    }
}

fn latex_name(n: &str) -> String {
    let split = n.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if split == 0 || split == n.len() {
        n.to_string()
    } else {
        format!("{}_{{{}}}", &n[..split], &n[split..])
    }
}
