//! Gaussian elimination over GF(2).
//!
//! [`Gf2Solver`] reduces a matrix once and records the row operations, so
//! solving `A·x = b` for many right-hand sides costs one matrix–vector
//! product each.

use crate::bits::BitVec;

#[derive(Clone, Debug)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r].set(c, v);
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.data[r].toggle(c);
    }
}

#[derive(Clone, Debug)]
pub struct Gf2Solver {
    cols: usize,
    reduced: Vec<BitVec>,
    transform: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Gf2Solver {
    pub fn new(matrix: &Gf2Matrix) -> Self {
        let rows = matrix.rows;
        let mut reduced = matrix.data.clone();
        let mut transform: Vec<BitVec> = (0..rows)
            .map(|i| {
                let mut v = BitVec::zeros(rows);
                v.set(i, true);
                v
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..matrix.cols {
            let Some(p) = (rank..rows).find(|&r| reduced[r].get(col)) else {
                continue;
            };
            reduced.swap(rank, p);
            transform.swap(rank, p);
            for r in 0..rows {
                if r != rank && reduced[r].get(col) {
                    let (src_r, src_t) = (reduced[rank].clone(), transform[rank].clone());
                    reduced[r].xor_assign(&src_r);
                    transform[r].xor_assign(&src_t);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows {
                break;
            }
        }
        Gf2Solver {
            cols: matrix.cols,
            reduced,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Particular solution with all free variables set to zero, or `None`
    /// when `b` is outside the column space.
    pub(crate) fn solve(&self, b: &BitVec) -> Option<BitVec> {
        let c: Vec<bool> = self.transform.iter().map(|t| t.dot(b)).collect();
        if c[self.rank()..].iter().any(|&v| v) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &pc) in self.pivots.iter().enumerate() {
            if c[i] {
                x.set(pc, true);
            }
        }
        Some(x)
    }

    /// Kernel basis, one vector per free column in ascending column order.
    pub(crate) fn kernel(&self) -> Vec<BitVec> {
        let mut is_pivot = vec![false; self.cols];
        for &pc in &self.pivots {
            is_pivot[pc] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::zeros(self.cols);
                v.set(f, true);
                for (i, &pc) in self.pivots.iter().enumerate() {
                    if self.reduced[i].get(f) {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Solves `A·x = b` for `b` given as a list of set rows.
    pub fn solve_indices(&self, rows: usize, ones: &[usize]) -> Option<Vec<usize>> {
        let mut b = BitVec::zeros(rows);
        for &i in ones {
            b.set(i, true);
        }
        self.solve(&b).map(|x| x.ones().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(m: &Gf2Matrix, x: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(m.rows());
        for r in 0..m.rows() {
            out.set(r, m.data[r].dot(x));
        }
        out
    }

    #[test]
    fn solves_small_system() {
        // x0 + x1 = 1, x1 + x2 = 0, x0 + x2 = 1  (rank 2)
        let mut m = Gf2Matrix::zeros(3, 3);
        for (r, c) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)] {
            m.set(r, c, true);
        }
        let s = Gf2Solver::new(&m);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.nullity(), 1);
        let x = s.solve_indices(3, &[0, 2]).unwrap();
        let mut xv = BitVec::zeros(3);
        for i in x {
            xv.set(i, true);
        }
        let mut b = BitVec::zeros(3);
        b.set(0, true);
        b.set(2, true);
        assert_eq!(apply(&m, &xv), b);
        assert!(s.solve_indices(3, &[0]).is_none());
        for k in s.kernel() {
            assert!(apply(&m, &k).is_zero());
        }
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let mut m = Gf2Matrix::zeros(70, 70);
        for i in 0..70 {
            m.set(i, i, true);
        }
        let s = Gf2Solver::new(&m);
        assert_eq!(s.rank(), 70);
        assert!(s.kernel().is_empty());
        assert_eq!(s.solve_indices(70, &[3, 65]).unwrap(), vec![3, 65]);
    }
}
