//! Sparse elimination of unit pivots from a relation matrix.
//!
//! Relations are rows over generator columns. A row with a `±1` entry in
//! column `c` lets `c` be written in terms of the other generators; the row and
//! the column then drop out of the presentation. Triangle relations have at
//! most three nonzero entries, so nearly every generator of a large gadget graph
//! disappears here and the dense Smith form only sees a small residue.

use std::collections::BTreeSet;

use super::HomologyError;

pub(crate) type SparseRow = Vec<(usize, i64)>;

#[derive(Debug)]
pub(crate) struct Elimination {
    /// `(c, expr)`: generator `c` equals `Σ coef · x_d` over `expr`, in elimination order.
    pub steps: Vec<(usize, SparseRow)>,
    pub eliminated: Vec<bool>,
    /// Remaining relations, over surviving columns only.
    pub residual: Vec<SparseRow>,
}

pub(crate) fn eliminate_units(ncols: usize, rows: Vec<SparseRow>) -> Result<Elimination, HomologyError> {
    let mut rows: Vec<SparseRow> = rows
        .into_iter()
        .map(|mut r| {
            r.sort_unstable();
            r.retain(|&(_, x)| x != 0);
            r
        })
        .collect();
    let mut active = vec![true; rows.len()];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c].push(i);
        }
    }
    let has_unit = |r: &SparseRow| r.iter().any(|&(_, x)| x.abs() == 1);
    let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queued_len = vec![usize::MAX; rows.len()];
    for (i, r) in rows.iter().enumerate() {
        if has_unit(r) {
            queue.insert((r.len(), i));
            queued_len[i] = r.len();
        }
    }

    let mut eliminated = vec![false; ncols];
    let mut steps = Vec::new();
    while let Some((_, p)) = queue.pop_first() {
        queued_len[p] = usize::MAX;
        let row = std::mem::take(&mut rows[p]);
        // unit entry whose column touches the fewest rows
        let Some(&(c, a)) = row
            .iter()
            .filter(|&&(_, x)| x.abs() == 1)
            .min_by_key(|&&(col, _)| (col_rows[col].len(), col))
        else {
            rows[p] = row;
            continue;
        };
        active[p] = false;
        // a*x_c + Σ r_d x_d = 0  =>  x_c = Σ (-a * r_d) x_d   (a = ±1)
        let expr: SparseRow = row.iter().filter(|&&(d, _)| d != c).map(|&(d, r)| (d, -a * r)).collect();

        for q in std::mem::take(&mut col_rows[c]) {
            if q == p || !active[q] {
                continue;
            }
            let Ok(pos) = rows[q].binary_search_by_key(&c, |e| e.0) else { continue };
            let b = rows[q][pos].1;
            let mut rest = std::mem::take(&mut rows[q]);
            rest.remove(pos);
            let before: Vec<usize> = rest.iter().map(|e| e.0).collect();
            let merged = add_scaled(&rest, &expr, b)?;
            for &(d, _) in &merged {
                if before.binary_search(&d).is_err() {
                    col_rows[d].push(q);
                }
            }
            rows[q] = merged;
            if queued_len[q] != usize::MAX {
                queue.remove(&(queued_len[q], q));
                queued_len[q] = usize::MAX;
            }
            if has_unit(&rows[q]) {
                queue.insert((rows[q].len(), q));
                queued_len[q] = rows[q].len();
            }
        }
        eliminated[c] = true;
        steps.push((c, expr));
    }

    let residual = rows.into_iter().zip(active).filter(|(r, a)| *a && !r.is_empty()).map(|(r, _)| r).collect();
    Ok(Elimination { steps, eliminated, residual })
}

/// `x + k·y` for sorted sparse rows, dropping zeros.
pub(crate) fn add_scaled(x: &[(usize, i64)], y: &[(usize, i64)], k: i64) -> Result<SparseRow, HomologyError> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, checked_mul(k, y[j].1)?));
            j += 1;
        } else {
            let v = checked_add(x[i].1, checked_mul(k, y[j].1)?)?;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

pub(crate) fn checked_mul(a: i64, b: i64) -> Result<i64, HomologyError> {
    a.checked_mul(b).ok_or(HomologyError::Overflow)
}

pub(crate) fn checked_add(a: i64, b: i64) -> Result<i64, HomologyError> {
    a.checked_add(b).ok_or(HomologyError::Overflow)
}

/// Rewrites every eliminated generator as a combination of survivors.
/// Later steps never mention earlier eliminated columns, so a reverse sweep suffices.
pub(crate) fn back_substitute(elim: &Elimination, ncols: usize) -> Result<Vec<Option<SparseRow>>, HomologyError> {
    let mut finals: Vec<Option<SparseRow>> = vec![None; ncols];
    for (c, expr) in elim.steps.iter().rev() {
        let mut acc: SparseRow = Vec::new();
        for &(d, k) in expr {
            acc = if elim.eliminated[d] {
                let sub = finals[d].as_ref().expect("eliminated later, so already final");
                add_scaled(&acc, sub, k)?
            } else {
                add_scaled(&acc, &[(d, 1)], k)?
            };
        }
        finals[*c] = Some(acc);
    }
    Ok(finals)
}
