use crate::rational::Rational;

type SparseRow = Vec<(usize, Rational)>;

/// Incremental row echelon form over sparse rows.
///
/// Each stored row is normalized to leading coefficient 1 and carries no
/// entries in columns that were already pivots when it was inserted.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(normalize(row));
        let Some((lead, pivot)) = row.first().cloned() else {
            return false;
        };
        let inv = pivot.recip();
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn insert_dense(&mut self, row: &[Rational]) -> bool {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.insert(
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
        )
    }

    /// Whether the row lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(normalize(row)).is_empty()
    }

    /// Eliminates every pivot column from `row`.
    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut i = 0;
        while i < row.len() {
            let (c, ref v) = row[i];
            match self.pivot_row[c] {
                Some(p) => {
                    let factor = -v;
                    row = axpy(&row, &factor, &self.rows[p]);
                }
                None => i += 1,
            }
        }
        row
    }

    /// Basis of the kernel `{x : r·x = 0 for every inserted row r}`, as sparse
    /// vectors, one per non-pivot column in increasing column order.
    pub fn kernel(&self) -> Vec<SparseRow> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        let mut reduced: Vec<SparseRow> = vec![Vec::new(); self.rows.len()];
        let mut done = vec![false; self.rows.len()];
        for &r in &order {
            let row = &self.rows[r];
            let mut acc: SparseRow = row.clone();
            let mut i = 1;
            while i < acc.len() {
                let (c, ref v) = acc[i];
                match self.pivot_row[c] {
                    Some(p) => {
                        debug_assert!(done[p]);
                        let factor = -v;
                        acc = axpy(&acc, &factor, &reduced[p]);
                    }
                    None => i += 1,
                }
            }
            reduced[r] = acc;
            done[r] = true;
        }
        let mut free_index = vec![usize::MAX; self.ncols];
        let mut kernel: Vec<SparseRow> = Vec::new();
        for c in 0..self.ncols {
            if self.pivot_row[c].is_none() {
                free_index[c] = kernel.len();
                kernel.push(vec![(c, Rational::one())]);
            }
        }
        for row in &reduced {
            let lead = row[0].0;
            for (c, v) in &row[1..] {
                kernel[free_index[*c]].push((lead, -v));
            }
        }
        for v in &mut kernel {
            v.sort_by_key(|&(c, _)| c);
        }
        kernel
    }

    pub fn kernel_dense(&self) -> Vec<Vec<Rational>> {
        self.kernel()
            .into_iter()
            .map(|v| to_dense(&v, self.ncols))
            .collect()
    }
}

pub(crate) fn to_dense(v: &[(usize, Rational)], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (c, x) in v {
        out[*c] = x.clone();
    }
    out
}

fn normalize(mut row: SparseRow) -> SparseRow {
    row.retain(|(_, v)| !v.is_zero());
    row.sort_by_key(|&(c, _)| c);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `a + k*b` for sorted sparse rows.
fn axpy(a: &[(usize, Rational)], k: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, k * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + k * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{nullspace, RatMatrix};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn kernel_matches_dense_nullspace(v in proptest::collection::vec(-2i64..=2, 12)) {
            let m = RatMatrix::from_fn(3, 4, |r, c| Rational::from_integer(v[r * 4 + c]));
            let mut e = SparseEchelon::new(4);
            for r in 0..3 {
                e.insert_dense(m.row(r));
            }
            prop_assert_eq!(e.rank(), m.rank());
            let k = e.kernel_dense();
            prop_assert_eq!(k.len(), nullspace(&m).len());
            for x in &k {
                prop_assert!(m.mul_vec(x).iter().all(Rational::is_zero));
            }
            let mut span = SparseEchelon::new(4);
            for x in &k {
                prop_assert!(span.insert_dense(x));
            }
        }
    }

    #[test]
    fn contains_detects_span_membership() {
        let mut e = SparseEchelon::new(3);
        assert!(e.insert(vec![(0, Rational::one()), (1, Rational::one())]));
        assert!(!e.insert(vec![(1, Rational::from_integer(2)), (0, Rational::from_integer(2))]));
        assert!(e.contains(vec![(0, Rational::from_integer(-3)), (1, Rational::from_integer(-3))]));
        assert!(!e.contains(vec![(2, Rational::one())]));
    }
}
