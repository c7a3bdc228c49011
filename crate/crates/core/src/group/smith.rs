//! Smith normal form over Z, tracking column operations only.

/// Diagonalizes the integer matrix `a` (rows × cols) by unimodular row and
/// column operations. Returns the diagonal (length `cols`, zeros past the
/// rank, each entry dividing the next nonzero one) and the column transform
/// `q`, so that the row span of `a · q` is the row span of the diagonal.
pub fn smith_columns(mut a: Vec<Vec<i128>>, cols: usize) -> (Vec<i128>, Vec<Vec<i128>>) {
    let rows = a.len();
    let mut q: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();

    let swap_cols = |a: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in q.iter_mut() {
            row.swap(i, j);
        }
    };
    // col_j -= f * col_i
    let col_axpy = |a: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, j: usize, i: usize, f: i128| {
        for row in a.iter_mut() {
            row[j] -= f * row[i];
        }
        for row in q.iter_mut() {
            row[j] -= f * row[i];
        }
    };

    let mut diag = vec![0i128; cols];
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let pick = |a: &Vec<Vec<i128>>| {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            best
        };
        let Some((pi, pj)) = pick(&a) else { break };
        a.swap(t, pi);
        swap_cols(&mut a, &mut q, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let f = a[i][t] / a[t][t];
                if f != 0 {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0].iter_mut().zip(&top[t]) {
                        *x -= f * y;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = a[t][j] / a[t][t];
                if f != 0 {
                    col_axpy(&mut a, &mut q, j, t, f);
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                // a remainder smaller than the pivot is left; move it in
                let mut best = (t, t);
                for i in t + 1..rows {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                swap_cols(&mut a, &mut q, t, best.1);
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let p = a[t][t];
            let offending = (t + 1..rows).find(|&i| a[i][t + 1..].iter().any(|&x| x % p != 0));
            match offending {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(&rest[0]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag[t] = a[t][t].abs();
    }
    (diag, q)
}
