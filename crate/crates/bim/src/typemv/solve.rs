//! Exact affine-system solving over the rationals, used to enumerate
//! invariant means. Small dense Gauss-Jordan elimination; no pivots are
//! approximated because everything is a `BigRational`.

use num::{BigRational, Zero};

/// Solution set of a consistent linear system, as a particular point plus a
/// basis of the homogeneous solutions.
pub struct AffineSolution {
    pub particular: Vec<BigRational>,
    pub basis: Vec<Vec<BigRational>>,
}

/// Solves `rows * x = rhs`; returns `None` when inconsistent.
pub fn solve_affine(
    mut rows: Vec<(Vec<BigRational>, BigRational)>,
    nvars: usize,
) -> Option<AffineSolution> {
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..nvars {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let p = rows[rank].0[col].clone();
        for c in 0..nvars {
            let v = rows[rank].0[c].clone() / p.clone();
            rows[rank].0[c] = v;
        }
        rows[rank].1 = rows[rank].1.clone() / p;
        for r in 0..rows.len() {
            if r == rank || rows[r].0[col].is_zero() {
                continue;
            }
            let factor = rows[r].0[col].clone();
            for c in 0..nvars {
                let v = rows[r].0[c].clone() - factor.clone() * rows[rank].0[c].clone();
                rows[r].0[c] = v;
            }
            rows[r].1 = rows[r].1.clone() - factor * rows[rank].1.clone();
        }
        pivot_cols.push(col);
        rank += 1;
    }
    for row in &rows[rank..] {
        if !row.1.is_zero() {
            return None;
        }
    }
    let free_cols: Vec<usize> = (0..nvars).filter(|c| !pivot_cols.contains(c)).collect();
    let mut particular = vec![BigRational::zero(); nvars];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = rows[r].1.clone();
    }
    let basis = free_cols
        .iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); nvars];
            v[fc] = BigRational::from_integer(1.into());
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -rows[r].0[fc].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, basis })
}
