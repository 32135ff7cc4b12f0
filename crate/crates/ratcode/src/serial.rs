//! On-disk formats for constructed codes: a JSON object carrying the field
//! data (so coordinates are reproducible) and the words, and a CSV variant.
//! The symbol ∞ is the literal `"inf"` in both.

use serde_json::{json, Value};
use thiserror::Error;

use crate::code::{Code, Codeword};
use crate::funcfield::EvalValue;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SerialError {
    #[error("malformed symbol: {0}")]
    BadSymbol(String),
    #[error("malformed word file: {0}")]
    BadWordFile(String),
    #[error("malformed code file: {0}")]
    BadCodeFile(String),
}

pub const COORDINATE_ORDER: &str =
    "alpha_1..alpha_q ascending by integer encoding, then the infinite place";

pub fn sym_to_json(s: &EvalValue) -> Value {
    match s {
        EvalValue::Fin(e) => json!(e),
        EvalValue::Inf => json!("inf"),
    }
}

pub fn word_to_json(w: &Codeword) -> Vec<Value> {
    w.symbols().iter().map(sym_to_json).collect()
}

pub fn code_to_json(code: &Code) -> Value {
    let f = code.field();
    json!({
        "schema": 1,
        "p": f.p(),
        "k": f.k(),
        "modulus": f.modulus(),
        "q": f.q(),
        "m": code.m(),
        "coordinate_order": COORDINATE_ORDER,
        "words": code.words().iter().map(word_to_json).collect::<Vec<_>>(),
    })
}

pub fn word_to_csv(w: &Codeword) -> String {
    w.symbols()
        .iter()
        .map(|s| match s {
            EvalValue::Fin(e) => e.to_string(),
            EvalValue::Inf => "inf".to_string(),
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn code_to_csv(code: &Code) -> String {
    let mut out = String::new();
    for w in code.words() {
        out.push_str(&word_to_csv(w));
        out.push('\n');
    }
    out
}

pub fn sym_from_str(s: &str) -> Result<EvalValue, SerialError> {
    let s = s.trim();
    if s == "inf" {
        return Ok(EvalValue::Inf);
    }
    s.parse::<u64>()
        .map(EvalValue::Fin)
        .map_err(|_| SerialError::BadSymbol(s.to_string()))
}

fn sym_from_json(v: &Value) -> Result<EvalValue, SerialError> {
    match v {
        Value::Number(n) => n
            .as_u64()
            .map(EvalValue::Fin)
            .ok_or_else(|| SerialError::BadSymbol(n.to_string())),
        Value::String(s) => sym_from_str(s),
        other => Err(SerialError::BadSymbol(other.to_string())),
    }
}

/// Loads a code serialized by [`code_to_json`].
pub fn code_from_json(text: &str) -> Result<Code, SerialError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| SerialError::BadCodeFile(e.to_string()))?;
    let get_u64 = |key: &str| {
        v[key]
            .as_u64()
            .ok_or_else(|| SerialError::BadCodeFile(format!("missing field `{key}`")))
    };
    let p = get_u64("p")?;
    let k = get_u64("k")? as u32;
    let modulus: Vec<u64> = v["modulus"]
        .as_array()
        .ok_or_else(|| SerialError::BadCodeFile("missing field `modulus`".into()))?
        .iter()
        .map(|c| {
            c.as_u64()
                .ok_or_else(|| SerialError::BadCodeFile("bad modulus coefficient".into()))
        })
        .collect::<Result<_, _>>()?;
    let field = crate::gf::FieldSpec::new(p, k, Some(modulus))
        .map_err(|e| SerialError::BadCodeFile(e.to_string()))?;
    let m = v["m"].as_u64();
    let words_json = v["words"]
        .as_array()
        .ok_or_else(|| SerialError::BadCodeFile("missing field `words`".into()))?;
    let mut words = Vec::with_capacity(words_json.len());
    let mut n = None;
    for w in words_json {
        let arr = w
            .as_array()
            .ok_or_else(|| SerialError::BadCodeFile("word is not an array".into()))?;
        let syms = arr.iter().map(sym_from_json).collect::<Result<Vec<_>, _>>()?;
        match n {
            None => n = Some(syms.len()),
            Some(len) if len != syms.len() => {
                return Err(SerialError::BadCodeFile("ragged word lengths".into()));
            }
            _ => {}
        }
        words.push(Codeword::new(syms));
    }
    let n = n.ok_or_else(|| SerialError::BadCodeFile("empty code".into()))?;
    Ok(Code::from_loaded(field, m, n, words))
}

/// Parses a single word from either a JSON array (`[0, 1, "inf"]`) or a
/// CSV line (`0,1,inf`).
pub fn word_from_text(text: &str) -> Result<Codeword, SerialError> {
    let text = text.trim();
    if text.starts_with('[') {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| SerialError::BadWordFile(e.to_string()))?;
        let arr = v
            .as_array()
            .ok_or_else(|| SerialError::BadWordFile("expected a JSON array".into()))?;
        let syms = arr.iter().map(sym_from_json).collect::<Result<Vec<_>, _>>()?;
        Ok(Codeword::new(syms))
    } else {
        let syms = text
            .split(',')
            .map(sym_from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Codeword::new(syms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{construct_code, CodeParams, Limits};
    use crate::gf::FieldSpec;

    #[test]
    fn json_format() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        let params = CodeParams::new(f, 1).unwrap();
        let code = construct_code(&params, &Limits::default()).unwrap();
        let v = code_to_json(&code);
        assert_eq!(v["p"], 2);
        assert_eq!(v["q"], 2);
        assert_eq!(v["m"], 1);
        assert_eq!(v["words"].as_array().unwrap().len(), 9);
        // the all-inf word serializes as "inf" literals
        let last = v["words"].as_array().unwrap().last().unwrap();
        assert_eq!(last, &json!(["inf", "inf", "inf"]));
    }

    #[test]
    fn csv_format() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        let params = CodeParams::new(f, 1).unwrap();
        let code = construct_code(&params, &Limits::default()).unwrap();
        let csv = code_to_csv(&code);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(*lines.last().unwrap(), "inf,inf,inf");
    }

    #[test]
    fn code_json_roundtrip() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        let params = CodeParams::new(f, 1).unwrap();
        let code = construct_code(&params, &Limits::default()).unwrap();
        let text = serde_json::to_string(&code_to_json(&code)).unwrap();
        let loaded = code_from_json(&text).unwrap();
        assert_eq!(loaded.len(), code.len());
        assert_eq!(loaded.n(), code.n());
        assert_eq!(loaded.words(), code.words());
        assert_eq!(loaded.m(), Some(1));
        let (d1, w1) = code
            .min_distance_exact(&Limits::default())
            .unwrap();
        let (d2, w2) = loaded.min_distance_exact(&Limits::default()).unwrap();
        assert_eq!((d1, w1), (d2, w2));
    }

    #[test]
    fn word_parsing() {
        let w = word_from_text("[0, 1, \"inf\"]").unwrap();
        assert_eq!(word_to_csv(&w), "0,1,inf");
        let w = word_from_text("0,1,inf").unwrap();
        assert_eq!(word_to_csv(&w), "0,1,inf");
        assert!(word_from_text("0,x,1").is_err());
        assert!(word_from_text("[true]").is_err());
    }
}
