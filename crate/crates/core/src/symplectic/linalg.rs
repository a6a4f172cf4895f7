use super::field::Field;

pub(crate) type Row<E> = Vec<E>;

/// Reduced row echelon form; zero rows dropped. Returns the rows and the
/// pivot column of each.
pub(crate) fn rref<F: Field>(field: &F, mut rows: Vec<Row<F::Elem>>, cols: usize) -> (Vec<Row<F::Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot_row) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !field.is_zero(&rows[i][c]) {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let t = field.mul(&factor, &rows[r][j]);
                    rows[i][j] = field.sub(&rows[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub(crate) fn rank<F: Field>(field: &F, rows: Vec<Row<F::Elem>>, cols: usize) -> usize {
    rref(field, rows, cols).0.len()
}

/// Basis of the right kernel `{x : A x = 0}` of an `m × cols` matrix.
pub(crate) fn kernel<F: Field>(field: &F, rows: Vec<Row<F::Elem>>, cols: usize) -> Vec<Row<F::Elem>> {
    let (reduced, pivots) = rref(field, rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); cols];
            v[fc] = field.one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = field.neg(&row[fc]);
            }
            v
        })
        .collect()
}

pub(crate) fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

/// Row vector times matrix.
pub(crate) fn vec_mat<F: Field>(field: &F, v: &[F::Elem], m: &[Row<F::Elem>]) -> Row<F::Elem> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            v.iter()
                .zip(m)
                .fold(field.zero(), |acc, (x, row)| field.add(&acc, &field.mul(x, &row[j])))
        })
        .collect()
}

pub(crate) fn axpy<F: Field>(field: &F, a: &F::Elem, x: &[F::Elem], y: &[F::Elem]) -> Row<F::Elem> {
    x.iter()
        .zip(y)
        .map(|(xi, yi)| field.add(&field.mul(a, xi), yi))
        .collect()
}
