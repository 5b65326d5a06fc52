use super::{Rat, RatMatrix};

/// A subspace of `k^n` kept as a reduced echelon basis, grown one vector at
/// a time.
#[derive(Clone, Debug)]
pub struct Subspace {
    n: usize,
    /// Echelon rows; `rows[i]` has a 1 at `pivots[i]` and zeros at every other
    /// pivot column.
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    /// The vectors that were actually inserted, in insertion order.
    inserted: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn new(n: usize) -> Self {
        Subspace {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
            inserted: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n
    }

    /// Reduces `v` against the current basis, returning the residual.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Rat::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        self.inserted.push(v.to_vec());
        true
    }

    /// The echelon basis as columns.
    pub fn basis(&self) -> RatMatrix {
        RatMatrix::from_columns(self.n, &self.rows)
    }

    /// The inserted (independent) vectors as columns, in insertion order.
    pub fn inserted(&self) -> RatMatrix {
        RatMatrix::from_columns(self.n, &self.inserted)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn grows_only_on_new_directions() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&v(&[1, 2, 0])));
        assert!(!s.insert(&v(&[2, 4, 0])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[1, 3, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert_eq!(s.basis().rank(), 2);
        assert_eq!(s.inserted().column(0), v(&[1, 2, 0]));
        assert!(s.insert(&v(&[0, 0, 5])));
        assert!(s.is_full());
    }
}
