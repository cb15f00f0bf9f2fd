//! Dense Gaussian elimination over the field of rational functions.

use super::ratfunc::RatFunc;

/// Basis of the right nullspace of `rows` (each row a vector over the
/// field). Every basis vector has a 1 in its free column.
pub fn nullspace(rows: &[Vec<RatFunc>]) -> Vec<Vec<RatFunc>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<RatFunc>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut v = vec![RatFunc::zero(); ncols];
            v[free] = RatFunc::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -&m[row][free];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_kernel() {
        let n = RatFunc::n();
        let z = RatFunc::z();
        // rows: [1, n, z], [2, 2n, 2z]  -> nullspace of dim 2
        let rows = vec![
            vec![RatFunc::one(), n.clone(), z.clone()],
            vec![
                RatFunc::int(2),
                &n * &RatFunc::int(2),
                &z * &RatFunc::int(2),
            ],
        ];
        let ns = nullspace(&rows);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot = rows[0]
                .iter()
                .zip(v)
                .fold(RatFunc::zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }
}
