//! Exact integer and rational linear algebra over arbitrary-precision integers.
//!
//! Everything downstream (cones, fans, quotients) is built on the routines in
//! this module: row-style Hermite normal form, Smith normal form, saturated
//! integer kernels and rational solving.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// A dense integer matrix stored in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Self::new(rows.len(), cols, data)
    }

    /// Matrix whose rows are the given vectors, with `cols` columns (used when the list may be empty).
    pub fn from_vectors(vectors: &[LatticeVector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * cols);
        for v in vectors {
            assert_eq!(v.dim(), cols, "vector dimension mismatch");
            data.extend(v.0.iter().cloned());
        }
        Self {
            rows: vectors.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_vectors(&self) -> Vec<LatticeVector> {
        (0..self.rows)
            .map(|i| LatticeVector(self.row(i).to_vec()))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector, Error> {
        if v.dim() != self.cols {
            return Err(Error::Dimension(format!(
                "matrix with {} columns applied to vector of length {}",
                self.cols,
                v.dim()
            )));
        }
        Ok(LatticeVector(
            (0..self.rows).map(|i| dot(self.row(i), &v.0)).collect(),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[source * self.cols + j] * factor;
            self.data[target * self.cols + j] += v;
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + source] * factor;
            self.data[i * self.cols + target] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[r * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    /// Determinant by Bareiss elimination. Errors on non-square input.
    pub fn determinant(&self) -> Result<BigInt, Error> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rank_of_rows(&self.to_rows(), self.cols)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols
            && self
                .determinant()
                .map(|d| d.abs().is_one())
                .unwrap_or(false)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// An integer vector; ordering is lexicographic on coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<BigInt>);

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl LatticeVector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides by the content; the zero vector is returned unchanged.
    /// Signs are kept, so this is the primitive generator of the same ray.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self(self.0.iter().map(|x| x / &g).collect())
    }

    /// Primitive representative of the line through `self`, with the first
    /// nonzero coordinate positive.
    pub fn canonical_line(&self) -> Self {
        let p = self.primitive();
        match p.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -&p,
            _ => p,
        }
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        dot(&self.0, &other.0)
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl std::ops::Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl std::ops::Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U·M = H`. Pivots are positive and entries above each pivot lie in
/// `[0, pivot)`. Columns are processed left to right.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        loop {
            // smallest nonzero entry at or below pivot_row
            let best = (pivot_row..m.rows)
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..m.rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = -h[(r, col)].div_floor(&h[(pivot_row, col)]);
                h.add_row_multiple(r, pivot_row, &q);
                u.add_row_multiple(r, pivot_row, &q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for r in 0..pivot_row {
            let q = -h[(r, col)].div_floor(&h[(pivot_row, col)]);
            h.add_row_multiple(r, pivot_row, &q);
            u.add_row_multiple(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(D, U, V)` with `U·M·V = D`, `U` and `V`
/// unimodular, `D` diagonal with nonnegative entries `d₁ | d₂ | …`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(d, u, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..m.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..m.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into row t and retry
            let pivot = d[(t, t)].clone();
            let offending = (t + 1..m.rows)
                .find(|&i| (t + 1..m.cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
    }
    finish_snf(d, u, v)
}

fn finish_snf(
    mut d: IntMatrix,
    mut u: IntMatrix,
    v: IntMatrix,
) -> (IntMatrix, IntMatrix, IntMatrix) {
    for t in 0..d.rows.min(d.cols) {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Diagonal of the Smith normal form (the invariant factors, zeros included).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = smith_normal_form(m);
    (0..d.rows.min(d.cols)).map(|i| d[(i, i)].clone()).collect()
}

/// A basis of the saturated lattice `{v ∈ Zⁿ : M·v = 0}`, in Hermite normal form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<LatticeVector> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let basis: Vec<LatticeVector> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| LatticeVector(u.row(i).to_vec()))
        .collect();
    if basis.is_empty() {
        return basis;
    }
    let (hk, _) = hermite_normal_form(&IntMatrix::from_vectors(&basis, m.cols()));
    hk.row_vectors()
        .into_iter()
        .filter(|v| !v.is_zero())
        .collect()
}

/// Integer right inverse of a surjective lattice map (`M·S = I`), if one exists.
pub fn right_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let (d, u, v) = smith_normal_form(m);
    if (0..m.rows()).any(|i| i >= m.cols() || !d[(i, i)].is_one()) {
        return None;
    }
    // M = U⁻¹ [I 0] V⁻¹, so S = V [I; 0] U.
    let mut padded = IntMatrix::zeros(m.cols(), m.rows());
    for i in 0..m.rows() {
        padded[(i, i)] = BigInt::one();
    }
    v.mul(&padded).and_then(|x| x.mul(&u)).ok()
}

pub(crate) fn rank_of_rows(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pivot_row[col] - &f * pv;
            }
            let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g > BigInt::one() {
                for x in row.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

pub(crate) fn rank_of_vectors(vectors: &[&LatticeVector], cols: usize) -> usize {
    let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.0.clone()).collect();
    rank_of_rows(&rows, cols)
}

/// Solves `Σ cᵢ·basis[i] = target` over ℚ. Returns `None` if `target` is not in the span;
/// the basis is assumed linearly independent.
pub fn solve_in_span(basis: &[LatticeVector], target: &LatticeVector) -> Option<Vec<BigRational>> {
    let n = target.dim();
    let k = basis.len();
    // augmented n × (k+1)
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b.0[i].clone()))
                .collect();
            row.push(BigRational::from_integer(target.0[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a.iter().skip(r).any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = a[i][k].clone();
    }
    Some(sol)
}

/// Integer coordinates of `target` in a lattice basis, if it lies in that lattice.
pub fn integer_coordinates(basis: &[LatticeVector], target: &LatticeVector) -> Option<Vec<BigInt>> {
    let sol = solve_in_span(basis, target)?;
    sol.into_iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Exact inverse of a square integer matrix over ℚ.
pub fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    if m.rows() != m.cols() {
        return None;
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = m
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * pv;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);

        let z = IntMatrix::zeros(2, 2);
        let (h, u) = hermite_normal_form(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_small_example() {
        let a = m(&[&[2, 4], &[1, 1]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a).unwrap(), h);
        assert!(u.is_unimodular());
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn snf_examples() {
        let (d, u, v) = smith_normal_form(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(d, m(&[&[1, 0], &[0, 6]]));
        assert!(u.is_unimodular() && v.is_unimodular());

        let (d, u, v) = smith_normal_form(&m(&[&[0]]));
        assert_eq!(d, m(&[&[0]]));
        assert_eq!(u, m(&[&[1]]));
        assert_eq!(v, m(&[&[1]]));

        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id), (id.clone(), id.clone(), id));
    }

    #[test]
    fn kernel_examples() {
        let k = integer_kernel(&m(&[&[1, 1, -1, -1]]));
        assert_eq!(k.len(), 3);
        for b in &k {
            assert_eq!(&b.0[0] + &b.0[1] - &b.0[2] - &b.0[3], BigInt::zero());
        }
        let basis = IntMatrix::from_vectors(&k, 4);
        assert!(invariant_factors(&basis).iter().all(One::is_one));

        assert!(integer_kernel(&IntMatrix::identity(3)).is_empty());
        let k = integer_kernel(&IntMatrix::zeros(1, 2));
        assert_eq!(
            k,
            vec![
                LatticeVector::from_i64(&[1, 0]),
                LatticeVector::from_i64(&[0, 1])
            ]
        );
    }

    #[test]
    fn primitive_and_canonical() {
        let v = LatticeVector::from_i64(&[0, -4, 6]);
        assert_eq!(v.primitive(), LatticeVector::from_i64(&[0, -2, 3]));
        assert_eq!(v.canonical_line(), LatticeVector::from_i64(&[0, 2, -3]));
        assert!(!LatticeVector::zero(3).is_primitive());
    }

    #[test]
    fn right_inverse_of_projection() {
        let p = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let s = right_inverse(&p).unwrap();
        assert_eq!(p.mul(&s).unwrap(), IntMatrix::identity(2));
        assert!(right_inverse(&m(&[&[2, 0]])).is_none());
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(
            m(&[&[1, 0], &[1, 2]]).determinant().unwrap(),
            BigInt::from(2)
        );
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(
            m(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]])
                .determinant()
                .unwrap(),
            BigInt::from(-3)
        );
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(IntMatrix::new(2, 2, vec![BigInt::one()]).is_err());
        assert!(IntMatrix::identity(2).mul(&IntMatrix::identity(3)).is_err());
    }
}
