//! Small dense helpers for rank and kernel computations.

use nalgebra::DMatrix;

/// Singular-value rank with threshold `n · σ_max · relative_tolerance`.
///
/// Returns `(rank, threshold, kernel vectors)`; kernel vectors are rows of `Vᵀ`
/// whose singular value falls at or below the threshold.
pub fn svd_rank_and_kernel(m: &DMatrix<f64>, relative_tolerance: f64) -> (usize, f64, Vec<Vec<f64>>) {
    let n = m.ncols();
    if n == 0 {
        return (0, 0.0, Vec::new());
    }
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested Vᵀ");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let threshold = n as f64 * sigma_max * relative_tolerance;
    let mut rank = 0;
    let mut kernel = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > threshold {
            rank += 1;
        } else {
            kernel.push(v_t.row(i).iter().copied().collect());
        }
    }
    // square input: Vᵀ has n rows, one per singular value
    debug_assert_eq!(rank + kernel.len(), n);
    (rank, threshold, kernel)
}

/// Rank by Gaussian elimination with full pivoting.
///
/// Pivots with magnitude at or below `tolerance · max|aᵢⱼ|` count as zero.
/// Kept separate from the SVD path so each can check the other.
pub fn elimination_rank(rows: &[Vec<f64>], tolerance: f64) -> usize {
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let cutoff = tolerance * scale;
    let mut rank = 0;
    let mut col_perm: Vec<usize> = (0..ncols).collect();
    while rank < nrows.min(ncols) {
        let mut best = (rank, rank, 0.0_f64);
        for i in rank..nrows {
            for j in rank..ncols {
                let v = a[i][col_perm[j]].abs();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= cutoff {
            break;
        }
        a.swap(rank, best.0);
        col_perm.swap(rank, best.1);
        let pc = col_perm[rank];
        let pivot = a[rank][pc];
        for i in rank + 1..nrows {
            let factor = a[i][pc] / pivot;
            if factor != 0.0 {
                for j in rank..ncols {
                    let c = col_perm[j];
                    a[i][c] -= factor * a[rank][c];
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn mat_vec_inf(m: &DMatrix<f64>, v: &[f64]) -> f64 {
    m.row_iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum::<f64>().abs())
        .fold(0.0, f64::max)
}
