use std::fmt;
use std::ops::{Index, IndexMut};

use super::{LinalgError, Rat};

/// Dense row-major matrix over the rationals.
///
/// Zero-sized dimensions are legal: a `0 x n` or `n x 0` matrix is the unique
/// map to or from the zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    /// Builds from row vectors; all rows must share one length. An empty row
    /// list gives a `0 x cols` matrix.
    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(RatMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Integer literal convenience, mostly for tests.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    /// Builds an `nrows x columns.len()` matrix from column vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column {j} has wrong length");
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m[(i, j)] = x.clone();
                }
            }
        }
        m
    }

    pub fn column_vector(v: &[Rat]) -> Self {
        Self::from_columns(v.len(), &[v.to_vec()])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn row_mut(&mut self, i: usize) -> &mut [Rat] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = &self[(i, j)];
                if !x.is_zero() {
                    t[(j, i)] = x.clone();
                }
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sub");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Matrix product. Panics when inner dimensions differ.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "inner dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        if other.cols == 0 {
            return out;
        }
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = out.row_mut(i);
                if a.is_one() {
                    for (o, b) in orow.iter_mut().zip(brow) {
                        if !b.is_zero() {
                            *o += b;
                        }
                    }
                } else {
                    for (o, b) in orow.iter_mut().zip(brow) {
                        if !b.is_zero() {
                            *o += &(a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            let (l, r) = out.row_mut(i).split_at_mut(self.cols);
            l.clone_from_slice(self.row(i));
            r.clone_from_slice(other.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        RatMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form with leftmost-nonzero pivoting.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let pivots = a.rref_in_place(self.cols);
        (a, pivots)
    }

    /// Row-reduces in place, choosing pivots only among the first `limit`
    /// columns. Returns the pivot columns.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self[(r, c)].recip();
            let support: Vec<usize> = (c..cols).filter(|&j| !self[(r, j)].is_zero()).collect();
            if !inv.is_one() {
                for &j in &support {
                    self[(r, j)] *= &inv;
                }
            }
            let prow: Vec<(usize, Rat)> = support.iter().map(|&j| (j, self[(r, j)].clone())).collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, x) in &prow {
                    let d = &f * x;
                    self[(i, *j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns spanning the null space, one per free column of the RREF.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut k = Self::zeros(n, free.len());
        for (col, &f) in free.iter().enumerate() {
            k[(f, col)] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                let x = &r[(row, f)];
                if !x.is_zero() {
                    k[(p, col)] = -x;
                }
            }
        }
        k
    }

    /// Solves `A x = b`; `None` when `b` is outside the column space. Free
    /// variables are set to zero.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side of length {} for a {}x{} system",
                b.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(self
            .solve_matrix(&Self::column_vector(b))?
            .map(|x| x.column(0)))
    }

    /// Solves `A X = B` column by column; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &Self) -> Result<Option<Self>, LinalgError> {
        if b.rows != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side with {} rows for a {}x{} system",
                b.rows, self.rows, self.cols
            )));
        }
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        for i in rank..aug.rows {
            if aug.row(i)[self.cols..].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = aug[(row, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_matrix(&Self::identity(self.rows)).ok()??;
        // A left-consistent solve of a singular system still returns Some.
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// `(A ⊗ B)[i·B.rows + k, j·B.cols + l] = A[i,j]·B[k,l]`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (br, bc) = other.shape();
        let mut out = Self::zeros(self.rows * br, self.cols * bc);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..br {
                    for l in 0..bc {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * br + k, j * bc + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Columns forming a basis of the column space (the pivot columns).
    pub fn column_space(&self) -> Self {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A basis of a subspace extended to a basis of the ambient space by standard
/// vectors, with the inverse of the extended basis cached.
///
/// The first `k` rows of the inverse give coordinates in the subspace basis;
/// the remaining rows project onto the quotient.
#[derive(Clone, Debug)]
pub struct BasisExtension {
    sub: RatMatrix,
    complement: Vec<usize>,
    inv: RatMatrix,
}

impl BasisExtension {
    pub fn new(sub: &RatMatrix) -> Result<Self, LinalgError> {
        let n = sub.rows();
        let k = sub.cols();
        let mut aug = sub.hstack(&RatMatrix::identity(n));
        let pivots = aug.rref_in_place(k + n);
        if pivots.iter().take_while(|&&p| p < k).count() != k {
            return Err(LinalgError::DependentBasis);
        }
        let complement: Vec<usize> = pivots.iter().filter(|&&p| p >= k).map(|&p| p - k).collect();
        debug_assert_eq!(complement.len(), n - k);
        let mut full = sub.clone();
        let mut section = RatMatrix::zeros(n, complement.len());
        for (j, &e) in complement.iter().enumerate() {
            section[(e, j)] = Rat::one();
        }
        full = full.hstack(&section);
        let inv = full.inverse().ok_or(LinalgError::DependentBasis)?;
        Ok(BasisExtension {
            sub: sub.clone(),
            complement,
            inv,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.rows()
    }

    pub fn sub_dim(&self) -> usize {
        self.sub.cols()
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    pub fn sub_basis(&self) -> &RatMatrix {
        &self.sub
    }

    /// Coordinates of the columns of `vs` in the subspace basis; `None` if some
    /// column leaves the subspace.
    pub fn coords(&self, vs: &RatMatrix) -> Option<RatMatrix> {
        let k = self.sub_dim();
        let all = self.inv.mul(vs);
        let n = self.ambient_dim();
        if !all.block(k, 0, n - k, vs.cols()).is_zero() {
            return None;
        }
        Some(all.block(0, 0, k, vs.cols()))
    }

    /// Rows of the inverse that kill the subspace.
    pub fn projection(&self) -> RatMatrix {
        let k = self.sub_dim();
        self.inv.block(k, 0, self.ambient_dim() - k, self.ambient_dim())
    }

    /// Standard vectors completing the subspace basis.
    pub fn section(&self) -> RatMatrix {
        let n = self.ambient_dim();
        let mut s = RatMatrix::zeros(n, self.complement.len());
        for (j, &e) in self.complement.iter().enumerate() {
            s[(e, j)] = Rat::one();
        }
        s
    }
}

/// Coordinates on the quotient of `ambient_dim`-space by the span of
/// `sub_basis`: `proj · sub_basis = 0` and `proj · section = I`.
pub fn quotient_coords(
    ambient_dim: usize,
    sub_basis: &RatMatrix,
) -> Result<(RatMatrix, RatMatrix), LinalgError> {
    if sub_basis.rows() != ambient_dim {
        return Err(LinalgError::DimensionMismatch(format!(
            "subspace vectors of length {} in ambient dimension {ambient_dim}",
            sub_basis.rows()
        )));
    }
    let ext = BasisExtension::new(sub_basis)?;
    Ok((ext.projection(), ext.section()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
        let data = (0..rows * cols)
            .map(|_| Rat::new(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
            .collect();
        RatMatrix::from_vec(rows, cols, data).unwrap()
    }

    #[test]
    fn rref_examples() {
        let (rr, p) = RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(rr, RatMatrix::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let id = RatMatrix::identity(3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));

        let empty = RatMatrix::zeros(0, 4);
        assert_eq!(empty.rref(), (empty.clone(), vec![]));
    }

    #[test]
    fn kernel_examples() {
        let k = RatMatrix::from_ints(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.shape(), (2, 1));
        assert_eq!(k.column(0), vec![r(-1), r(1)]);

        assert_eq!(RatMatrix::from_ints(&[&[1, 2], &[3, 4]]).kernel_basis().cols(), 0);

        let m = RatMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        // proportional to (2, -1)
        let v = k.column(0);
        assert_eq!(&v[0] * &r(-1), &v[1] * &r(2));
    }

    #[test]
    fn solve_examples() {
        let x = RatMatrix::identity(2).solve(&[r(3), r(4)]).unwrap();
        assert_eq!(x, Some(vec![r(3), r(4)]));

        let x = RatMatrix::from_ints(&[&[1, 1]]).solve(&[r(5)]).unwrap();
        assert_eq!(x, Some(vec![r(5), r(0)]));

        let x = RatMatrix::from_ints(&[&[1], &[0]]).solve(&[r(0), r(1)]).unwrap();
        assert_eq!(x, None);

        assert!(matches!(
            RatMatrix::identity(2).solve(&[r(1)]),
            Err(LinalgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(
            RatMatrix::identity(2).kronecker(&RatMatrix::identity(3)),
            RatMatrix::identity(6)
        );
        let b = RatMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(RatMatrix::from_ints(&[&[2]]).kronecker(&b), b.scale(&r(2)));
    }

    #[test]
    fn kronecker_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let [a, b, c, d] = [0; 4].map(|_| random_matrix(&mut rng, 2, 2));
            let lhs = a.kronecker(&b).mul(&c.kronecker(&d));
            let rhs = a.mul(&c).kronecker(&b.mul(&d));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn quotient_examples() {
        let (proj, section) = quotient_coords(2, &RatMatrix::from_ints(&[&[1], &[0]])).unwrap();
        assert_eq!(proj, RatMatrix::from_ints(&[&[0, 1]]));
        assert!(proj.mul(&section).is_identity());

        let (proj, _) = quotient_coords(3, &RatMatrix::identity(3)).unwrap();
        assert_eq!(proj.shape(), (0, 3));

        assert!(matches!(
            quotient_coords(2, &RatMatrix::from_ints(&[&[1, 2], &[1, 2]])),
            Err(LinalgError::DependentBasis)
        ));
    }

    #[test]
    fn quotient_of_random_planes_in_five_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut checked = 0;
        while checked < 20 {
            let sub = random_matrix(&mut rng, 5, 2);
            if sub.rank() < 2 {
                continue;
            }
            let (proj, section) = quotient_coords(5, &sub).unwrap();
            assert_eq!(proj.rank(), 3);
            assert!(proj.mul(&sub).is_zero());
            assert!(proj.mul(&section).is_identity());
            checked += 1;
        }
    }

    #[test]
    fn inverse_and_invertibility() {
        let a = RatMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(RatMatrix::zeros(0, 0).is_invertible());
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-4i64..=4, 1i64..=3), r * c).prop_map(move |v| {
                RatMatrix::from_vec(r, c, v.into_iter().map(|(n, d)| Rat::new(n, d)).collect())
                    .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let (r, p) = m.rref();
            prop_assert_eq!(r.rref(), (r.clone(), p));
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn solve_hits_right_hand_side(m in small_matrix(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x: Vec<Rat> = (0..m.cols()).map(|_| r(rng.gen_range(-3..=3))).collect();
            let b = m.mul_vec(&x);
            let sol = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol), b);
        }
    }
}
