//! Candidate permutations for `verify` and `classify`.
//!
//! Accepted shapes: the output of `enum` (`{"records": [{"images": ...}]}`),
//! `{"candidates": [...]}`, or a bare array. Each candidate is an image array
//! or an object with an `images` field.

use std::fs::File;
use std::io::{self, BufReader, Read};
use std::path::Path;

use serde_json::Value;

use crate::Failure;

pub fn read_candidates(path: &Path) -> Result<Vec<Vec<u32>>, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
        s
    } else {
        let mut s = String::new();
        File::open(path)
            .and_then(|f| BufReader::new(f).read_to_string(&mut s))
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        s
    };
    parse_candidates(&text)
}

pub fn parse_candidates(text: &str) -> Result<Vec<Vec<u32>>, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| Failure::usage(format!("invalid JSON: {e}")))?;
    let list = match &value {
        Value::Array(items) => items,
        Value::Object(obj) => match obj.get("records").or_else(|| obj.get("candidates")) {
            Some(Value::Array(items)) => items,
            _ => return Err(Failure::usage("expected a \"records\" or \"candidates\" array")),
        },
        _ => return Err(Failure::usage("expected a JSON array or object")),
    };
    list.iter().enumerate().map(|(i, v)| candidate(i, v)).collect()
}

fn candidate(index: usize, v: &Value) -> Result<Vec<u32>, Failure> {
    let images = match v {
        Value::Array(a) => a,
        Value::Object(o) => match o.get("images") {
            Some(Value::Array(a)) => a,
            _ => return Err(Failure::usage(format!("candidate {index}: missing \"images\" array"))),
        },
        _ => return Err(Failure::usage(format!("candidate {index}: expected an array or object"))),
    };
    images
        .iter()
        .map(|x| {
            x.as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| Failure::usage(format!("candidate {index}: {x} is not a non-negative 32-bit integer")))
        })
        .collect()
}
