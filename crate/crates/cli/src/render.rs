use std::fmt::Display;

use serde::Serialize;

use crate::Failure;

pub fn json<T: Serialize>(value: &T) -> Result<Vec<u8>, Failure> {
    let mut out = serde_json::to_vec(value).map_err(|e| Failure::internal(format!("serializing: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

pub fn csv<I, R>(header: &[&str], rows: I) -> Result<Vec<u8>, Failure>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let fail = |e: csv::Error| Failure::internal(format!("writing CSV: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    w.into_inner().map_err(|e| Failure::internal(format!("writing CSV: {e}")))
}

/// `1;2;3`, the list encoding used inside CSV cells.
pub fn semis<T: Display>(values: &[T]) -> String {
    join(values, ";")
}

pub fn spaced<T: Display>(values: &[T]) -> String {
    join(values, " ")
}

fn join<T: Display>(values: &[T], sep: &str) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn opt<T: Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}
