//! Reading matrix files with diagnostics that name the offending entry.
//!
//! Quaternion matrices: `{"rows": m, "cols": n, "entries": [[w,x,y,z], ...]}`.
//! Complex matrices: `{"rows": m, "cols": n, "entries_c": [[re,im], ...]}`.
//! Both are row-major.

use num_complex::Complex64;
use serde_json::Value;

use crate::complex_linalg::ComplexMatrix;
use crate::error::{Error, Result};
use crate::quat_matrix::QuatMatrix;
use crate::quaternion::Quaternion;

fn dims(v: &Value) -> Result<(usize, usize)> {
    let get = |key: &str| -> Result<usize> {
        let n = v
            .get(key)
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse(format!("field \"{key}\" must be a positive integer")))?;
        if n == 0 {
            return Err(Error::Parse(format!("field \"{key}\" must be positive")));
        }
        Ok(n as usize)
    };
    Ok((get("rows")?, get("cols")?))
}

fn numbers<const N: usize>(entry: &Value, index: usize) -> Result<[f64; N]> {
    let arr = entry
        .as_array()
        .filter(|a| a.len() == N)
        .ok_or_else(|| Error::Parse(format!("entry {index}: expected an array of {N} numbers")))?;
    let mut out = [0.0; N];
    for (slot, x) in out.iter_mut().zip(arr) {
        *slot = x
            .as_f64()
            .filter(|f| f.is_finite())
            .ok_or_else(|| Error::Parse(format!("entry {index}: {x} is not a finite number")))?;
    }
    Ok(out)
}

fn entries<'a>(v: &'a Value, key: &str, rows: usize, cols: usize) -> Result<&'a Vec<Value>> {
    let list = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("field \"{key}\" must be an array")))?;
    if list.len() != rows * cols {
        return Err(Error::Parse(format!("{rows}x{cols} matrix needs {} entries, found {}", rows * cols, list.len())));
    }
    Ok(list)
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

pub fn parse_quat_matrix(text: &str) -> Result<QuatMatrix> {
    let v = parse_value(text)?;
    let (rows, cols) = dims(&v)?;
    let data = entries(&v, "entries", rows, cols)?
        .iter()
        .enumerate()
        .map(|(i, e)| numbers::<4>(e, i).map(Quaternion::from))
        .collect::<Result<Vec<_>>>()?;
    QuatMatrix::new(rows, cols, data)
}

pub fn parse_complex_matrix(text: &str) -> Result<ComplexMatrix> {
    let v = parse_value(text)?;
    let (rows, cols) = dims(&v)?;
    let data = entries(&v, "entries_c", rows, cols)?
        .iter()
        .enumerate()
        .map(|(i, e)| numbers::<2>(e, i).map(|[re, im]| Complex64::new(re, im)))
        .collect::<Result<Vec<_>>>()?;
    ComplexMatrix::new(rows, cols, data)
}
