use serde_json::{json, Map, Value};

use super::{FamilySpec, LieAlgebra};
use crate::error::{Error, Result};

impl LieAlgebra {
    /// `{"n", "family", "params", "brackets": [{"i", "j", "coeffs": {k: c}}]}`
    /// with one-based indices, listing nonzero brackets with `i < j` only.
    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut coeffs = Map::new();
                for k in 0..n {
                    let v = self.c(i, j, k);
                    if v != 0.0 {
                        coeffs.insert((k + 1).to_string(), json!(v));
                    }
                }
                if !coeffs.is_empty() {
                    brackets.push(json!({ "i": i + 1, "j": j + 1, "coeffs": coeffs }));
                }
            }
        }
        json!({
            "n": n,
            "family": self.spec().tag(),
            "params": self.spec().params_json(),
            "brackets": brackets,
        })
    }

    /// Inverse of [`LieAlgebra::to_json`]. The tensor is taken from the
    /// bracket list, not rebuilt from the family tag.
    pub fn from_json(v: &Value) -> Result<LieAlgebra> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing `n`".into()))? as usize;
        let spec = FamilySpec::from_json(v)?;
        let mut c = vec![0.0; n * n * n];
        let brackets = v
            .get("brackets")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing `brackets`".into()))?;
        let index = |b: &Value, key: &str| -> Result<usize> {
            let i = b
                .get(key)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("bracket without `{key}`")))? as usize;
            if i == 0 || i > n {
                return Err(Error::Parse(format!("index {i} out of range 1..={n}")));
            }
            Ok(i - 1)
        };
        for b in brackets {
            let (i, j) = (index(b, "i")?, index(b, "j")?);
            if i >= j {
                return Err(Error::Parse(format!("bracket entries need i < j, got ({}, {})", i + 1, j + 1)));
            }
            let coeffs = b
                .get("coeffs")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Parse("bracket without `coeffs`".into()))?;
            for (key, val) in coeffs {
                let k: usize = key.parse().map_err(|_| Error::Parse(format!("bad index `{key}`")))?;
                if k == 0 || k > n {
                    return Err(Error::Parse(format!("index {k} out of range 1..={n}")));
                }
                let val = val.as_f64().ok_or_else(|| Error::Parse("non-numeric coefficient".into()))?;
                c[(i * n + j) * n + k - 1] = val;
                c[(j * n + i) * n + k - 1] = -val;
            }
        }
        if spec.dim() != n {
            return Err(Error::DimensionMismatch { expected: spec.dim(), got: n });
        }
        LieAlgebra::from_tensor(n, c, spec)
    }
}

#[cfg(test)]
mod tests {
    use super::super::build;
    use super::*;

    #[test]
    fn json_lists_upper_brackets_only() {
        let g = build(&FamilySpec::G3_2).unwrap();
        let v = g.to_json();
        assert_eq!(v["n"], 3);
        assert_eq!(v["family"], "g3_2");
        let b = v["brackets"].as_array().unwrap();
        assert_eq!(b.len(), 2);
        // [X_1, X_3] = -X_1, [X_2, X_3] = -X_1 - X_2
        assert_eq!(b[0], json!({"i": 1, "j": 3, "coeffs": {"1": -1.0}}));
        assert_eq!(b[1], json!({"i": 2, "j": 3, "coeffs": {"1": -1.0, "2": -1.0}}));
        assert_eq!(LieAlgebra::from_json(&v).unwrap(), g);
    }

    #[test]
    fn json_rejects_bad_indices() {
        let v = json!({"n": 2, "family": "aff_r", "params": {},
                       "brackets": [{"i": 2, "j": 1, "coeffs": {"2": 1.0}}]});
        assert!(LieAlgebra::from_json(&v).is_err());
    }
}
