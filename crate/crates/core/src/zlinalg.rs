//! Exact linear algebra over `ℤ`: column Hermite reduction with kernels,
//! Smith normal form with transforms, fraction-free rank and determinant.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::json::IntList;
use crate::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
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
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParams("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::InvalidParams("column length mismatch".into()));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::InvalidParams(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::InvalidParams("vector length mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.set(ii, j, self.get(i, j).clone());
            }
        }
        m
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

    /// Rows `(r_a, r_b) ← (p·r_a + q·r_b, r·r_a + s·r_b)`.
    fn row_op(&mut self, a: usize, b: usize, [p, q, r, s]: &[BigInt; 4]) {
        for j in 0..self.cols {
            let (x, y) = (&self.data[a * self.cols + j], &self.data[b * self.cols + j]);
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let nx = p * x + q * y;
            let ny = r * x + s * y;
            self.data[a * self.cols + j] = nx;
            self.data[b * self.cols + j] = ny;
        }
    }

    /// Columns `(c_a, c_b) ← (p·c_a + q·c_b, r·c_a + s·c_b)`.
    fn col_op(&mut self, a: usize, b: usize, blk: &[BigInt; 4]) {
        self.col_op_from(0, a, b, blk);
    }

    fn col_op_from(&mut self, start_row: usize, a: usize, b: usize, [p, q, r, s]: &[BigInt; 4]) {
        for i in start_row..self.rows {
            let (x, y) = (&self.data[i * self.cols + a], &self.data[i * self.cols + b]);
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let nx = p * x + q * y;
            let ny = r * x + s * y;
            self.data[i * self.cols + a] = nx;
            self.data[i * self.cols + b] = ny;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            data: Vec<IntList>,
        }
        Raw {
            rows: self.rows,
            cols: self.cols,
            data: (0..self.rows).map(|i| IntList(self.row(i).to_vec())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            data: Vec<IntList>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.data.len() != raw.rows || raw.data.iter().any(|r| r.0.len() != raw.cols) {
            return Err(serde::de::Error::custom("matrix dimensions do not match data"));
        }
        Ok(IntMatrix {
            rows: raw.rows,
            cols: raw.cols,
            data: raw.data.into_iter().flat_map(|r| r.0).collect(),
        })
    }
}

/// `(g, M)` with `g = ±gcd(a, b)` and `M = [p, q, r, s]` of determinant 1
/// such that `p·a + q·b = g` and `r·a + s·b = 0`.
fn gcd_transform(a: &BigInt, b: &BigInt) -> (BigInt, [BigInt; 4]) {
    if !a.is_zero() && (b % a).is_zero() {
        // keep the first vector unchanged so elimination cannot cycle
        return (a.clone(), [BigInt::one(), BigInt::zero(), -(b / a), BigInt::one()]);
    }
    let e = a.extended_gcd(b);
    let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
    if g.is_negative() {
        g = -g;
        x = -x;
        y = -y;
    }
    if g.is_zero() {
        return (g, [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()]);
    }
    let r = -(b / &g);
    let s = a / &g;
    (g, [x, y, r, s])
}

/// Inverse of a determinant-one 2×2 block `[p, q, r, s]`.
fn inverse_block([p, q, r, s]: &[BigInt; 4]) -> [BigInt; 4] {
    [s.clone(), -q, -r, p.clone()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    /// Invariant factors `d₁ | d₂ | …`, each at least 2.
    #[serde(with = "crate::json::int_vec")]
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// `(ℤ/n)^k`.
    pub fn is_elementary(&self, n: u64, k: usize) -> bool {
        self.free_rank == 0
            && self.torsion.len() == k
            && self.torsion.iter().all(|d| *d == BigInt::from(n))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Smith form `U·A·V = D`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn smith_impl(a: &IntMatrix, track: bool) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let (mut u, mut v) = if track {
        (IntMatrix::identity(m), IntMatrix::identity(n))
    } else {
        (IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0))
    };
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        d.swap_cols(t, pj);
        if track {
            u.swap_rows(t, pi);
            v.swap_cols(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let (_, blk) = gcd_transform(d.get(t, t), d.get(i, t));
                d.row_op(t, i, &blk);
                if track {
                    u.row_op(t, i, &blk);
                }
                changed = true;
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let (_, blk) = gcd_transform(d.get(t, t), d.get(t, j));
                d.col_op(t, j, &blk);
                if track {
                    v.col_op(t, j, &blk);
                }
                changed = true;
            }
            if changed {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(d.get(i, j) % &pivot).is_zero()));
            match bad {
                Some(i) => {
                    let one = [BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::one()];
                    d.row_op(t, i, &one);
                    if track {
                        u.row_op(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            if track {
                u.negate_row(t);
            }
        }
    }
    Smith { d, u, v }
}

/// Smith normal form with unimodular transforms.
pub fn snf(a: &IntMatrix) -> Smith {
    let s = smith_impl(a, true);
    if cfg!(debug_assertions) {
        let check = s.u.mul(a).and_then(|ua| ua.mul(&s.v)).expect("shapes agree");
        assert_eq!(check, s.d, "U·A·V ≠ D");
    }
    s
}

/// Nonzero invariant factors of `a` (transforms not tracked).
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    smith_impl(a, false).diagonal()
}

/// Invariants of `ℤ^ambient_rank / column-span(sub)`.
pub fn quotient_invariants(sub: &IntMatrix, ambient_rank: usize) -> Result<AbelianInvariants> {
    if sub.rows != ambient_rank && sub.cols > 0 {
        return Err(Error::InvalidParams(format!(
            "sublattice generators have {} rows, ambient rank is {ambient_rank}",
            sub.rows
        )));
    }
    let diag = if sub.cols == 0 {
        Vec::new()
    } else {
        invariant_factors(sub)
    };
    Ok(AbelianInvariants {
        free_rank: ambient_rank - diag.len(),
        torsion: diag.into_iter().filter(|x| !x.is_one()).collect(),
    })
}

/// Column echelon form `A·V = H`, `V` unimodular, with `W = V⁻¹`.
#[derive(Debug, Clone)]
pub struct ColumnEchelon {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub w: IntMatrix,
    /// Number of nonzero columns of `h` (they come first).
    pub rank: usize,
}

pub fn column_echelon(a: &IntMatrix) -> ColumnEchelon {
    let n = a.cols;
    let mut h = a.clone();
    let mut v = IntMatrix::identity(n);
    let mut w = IntMatrix::identity(n);
    let mut k = 0;
    for i in 0..a.rows {
        if k == n {
            break;
        }
        for j in k + 1..n {
            if h.get(i, j).is_zero() {
                continue;
            }
            let (_, [p, q, r, s]) = gcd_transform(h.get(i, k), h.get(i, j));
            // new c_k = p·c_k + q·c_j, new c_j = r·c_k + s·c_j
            let blk = [p, q, r, s];
            h.col_op_from(i, k, j, &blk);
            v.col_op(k, j, &blk);
            // W ← M⁻¹·W acts on rows k, j with the inverse transposed block
            let [ip, iq, ir, is] = inverse_block(&blk);
            w.row_op(k, j, &[ip, ir, iq, is]);
        }
        if !h.get(i, k).is_zero() {
            k += 1;
        }
    }
    ColumnEchelon { h, v, w, rank: k }
}

/// A saturated sublattice `ker A ⊂ ℤⁿ` with a coordinate map.
#[derive(Debug, Clone)]
pub struct Kernel {
    /// Columns form a `ℤ`-basis of `ker A`.
    pub basis: IntMatrix,
    /// Rows of `V⁻¹` matching the basis; `coords·x` are the coordinates of
    /// any `x ∈ ker A`.
    coords: IntMatrix,
}

impl Kernel {
    pub fn of(a: &IntMatrix) -> Self {
        let e = column_echelon(a);
        let idx: Vec<usize> = (e.rank..a.cols).collect();
        Kernel {
            basis: e.v.select_columns(&idx),
            coords: e.w.select_rows(&idx),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols
    }

    /// Coordinates of `x` in the kernel basis; errors if `x ∉ ker A`.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self.coords.mul_vec(x)?;
        if self.basis.mul_vec(&y)? != x {
            return Err(Error::Domain("vector is not in the kernel lattice".into()));
        }
        Ok(y)
    }

    /// Coordinates of every column of `m`, as the columns of a matrix.
    pub fn coordinates_of_columns(&self, m: &IntMatrix) -> Result<IntMatrix> {
        let cols = m
            .columns()
            .iter()
            .map(|c| self.coordinates(c))
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_columns(self.rank(), &cols)
    }
}

/// Columns form a saturated `ℤ`-basis of `ker A`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    Kernel::of(a).basis
}

/// Fraction-free Gaussian elimination; returns the rank and, for square
/// input, the determinant.
fn bareiss(a: &IntMatrix) -> (usize, Option<BigInt>) {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap_rows(p, rank);
            sign = -sign;
        }
        let piv = m.get(rank, c).clone();
        for i in rank + 1..rows {
            let lead = m.get(i, c).clone();
            for j in c..cols {
                let val = (&piv * m.get(i, j) - &lead * m.get(rank, j)) / &prev;
                m.set(i, j, val);
            }
        }
        prev = piv;
        rank += 1;
    }
    let det = (rows == cols).then(|| {
        if rank < rows {
            BigInt::zero()
        } else {
            prev * sign
        }
    });
    (rank, det)
}

pub fn rank(a: &IntMatrix) -> usize {
    bareiss(a).0
}

pub fn det(a: &IntMatrix) -> Result<BigInt> {
    if a.rows != a.cols {
        return Err(Error::InvalidParams("determinant of a non-square matrix".into()));
    }
    if a.rows == 0 {
        return Ok(BigInt::one());
    }
    Ok(bareiss(a).1.expect("square"))
}
