//! Exact solution of `A·x = b` by fraction-free (Bareiss-style) elimination.

use alloc::format;
use alloc::vec::Vec;

use super::cyclo::CycloNumber;
use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Returns one solution of `A·x = b`, or `None` when the system is
/// inconsistent. Free variables are set to zero, so the answer is
/// deterministic for a given system.
pub fn solve_linear_exact(a: &CMatrix, b: &[CycloNumber]) -> Result<Option<Vec<CycloNumber>>> {
    let (rows, cols, p) = (a.rows(), a.cols(), a.prime());
    if b.len() != rows {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side has {} entries for {rows} equations",
            b.len()
        )));
    }
    if let Some(bad) = b.iter().find(|v| v.prime() != p) {
        return Err(Error::PrimeMismatch(p, bad.prime()));
    }

    let width = cols + 1;
    let mut m: Vec<CycloNumber> = Vec::with_capacity(rows * width);
    for (i, bi) in b.iter().enumerate() {
        m.extend(a.row(i).iter().cloned());
        m.push(bi.clone());
    }
    let at = |i: usize, j: usize| i * width + j;

    let mut prev = CycloNumber::one(p);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[at(i, c)].is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..width {
                m.swap(at(pr, j), at(r, j));
            }
        }
        let pivot = m[at(r, c)].clone();
        let prev_inv = prev.inverse()?;
        for i in r + 1..rows {
            let lead = m[at(i, c)].clone();
            for j in c + 1..width {
                let v = &(&pivot * &m[at(i, j)]) - &(&lead * &m[at(r, j)]);
                m[at(i, j)] = &v * &prev_inv;
            }
            m[at(i, c)] = CycloNumber::zero(p);
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }

    if (r..rows).any(|i| !m[at(i, cols)].is_zero()) {
        return Ok(None);
    }

    let mut x = alloc::vec![CycloNumber::zero(p); cols];
    for (row, &c) in pivots.iter().enumerate().rev() {
        let mut acc = m[at(row, cols)].clone();
        for j in c + 1..cols {
            if !x[j].is_zero() && !m[at(row, j)].is_zero() {
                acc -= &(&m[at(row, j)] * &x[j]);
            }
        }
        x[c] = acc.try_div(&m[at(row, c)])?;
    }
    Ok(Some(x))
}
