//! Dense square matrices over arbitrary-precision integers.
//!
//! Vectors are row vectors and act on the left of a matrix: `v * M`. All group
//! elements built on top of this use that convention.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            data: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, BigInt::one())
    }

    pub fn scalar(dim: usize, value: BigInt) -> Self {
        let mut m = Self::zeros(dim);
        if !value.is_zero() {
            for i in 0..dim {
                m.data[i * dim + i] = value.clone();
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            check_dim(dim, row.len())?;
            data.extend(row);
        }
        Ok(IntMatrix { dim, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.data[row * self.dim + col] = value;
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        check_dim(self.dim, rhs.dim)?;
        let d = self.dim;
        let mut out = IntMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.data[i * d + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * d..(k + 1) * d];
                let out_row = &mut out.data[i * d..(i + 1) * d];
                if a.is_one() {
                    for (o, b) in out_row.iter_mut().zip(rhs_row) {
                        if !b.is_zero() {
                            *o += b;
                        }
                    }
                } else {
                    for (o, b) in out_row.iter_mut().zip(rhs_row) {
                        if !b.is_zero() {
                            *o += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        check_dim(self.dim, rhs.dim)?;
        Ok(IntMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        check_dim(self.dim, rhs.dim)?;
        Ok(IntMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> IntMatrix {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.data[i * self.dim + i] -= 1;
        }
        out
    }

    pub fn pow(&self, k: u32) -> IntMatrix {
        let mut result = IntMatrix::identity(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Signed power; negative exponents need an invertible unitriangular matrix.
    pub fn pow_signed(&self, k: i64) -> Result<IntMatrix> {
        let e = u32::try_from(k.unsigned_abs())
            .map_err(|_| Error::Domain(format!("exponent {k} too large")))?;
        if k >= 0 {
            Ok(self.pow(e))
        } else {
            Ok(self.inverse_unitriangular()?.pow(e))
        }
    }

    pub fn commutes_with(&self, other: &IntMatrix) -> Result<bool> {
        Ok(self.checked_mul(other)? == other.checked_mul(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim;
        self.data.iter().enumerate().all(|(k, x)| {
            if k / d == k % d {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    /// Diagonal all 1, strictly lower part all 0.
    pub fn is_upper_unitriangular(&self) -> bool {
        let d = self.dim;
        self.data.iter().enumerate().all(|(k, x)| {
            let (i, j) = (k / d, k % d);
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => x.is_one(),
                std::cmp::Ordering::Greater => x.is_zero(),
                std::cmp::Ordering::Less => true,
            }
        })
    }

    pub fn has_only_01_entries(&self) -> bool {
        self.data.iter().all(|x| x.is_zero() || x.is_one())
    }

    /// Exact inverse of an upper unitriangular matrix by back substitution.
    pub fn inverse_unitriangular(&self) -> Result<IntMatrix> {
        if !self.is_upper_unitriangular() {
            return Err(Error::Precondition("matrix is not upper unitriangular".into()));
        }
        // Solve X * self = I row by row: row i of X has X[i][i] = 1, X[i][j] = 0 for j < i,
        // and for j > i, X[i][j] = -sum_{i <= k < j} X[i][k] * self[k][j].
        let d = self.dim;
        let mut inv = IntMatrix::identity(d);
        for i in 0..d {
            for j in i + 1..d {
                let mut acc = BigInt::zero();
                for k in i..j {
                    let x = &inv.data[i * d + k];
                    let m = &self.data[k * d + j];
                    if !x.is_zero() && !m.is_zero() {
                        acc += x * m;
                    }
                }
                inv.data[i * d + j] = -acc;
            }
        }
        Ok(inv)
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        let d = self.dim;
        if d == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..d - 1 {
            if a[k * d + k].is_zero() {
                let Some(swap) = (k + 1..d).find(|&r| !a[r * d + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..d {
                    a.swap(k * d + j, swap * d + j);
                }
                sign = -sign;
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let v = &a[i * d + j] * &a[k * d + k] - &a[i * d + k] * &a[k * d + j];
                    let (q, r) = v.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[i * d + j] = q;
                }
            }
            prev = a[k * d + k].clone();
        }
        sign * &a[d * d - 1]
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        check_dim(self.dim, v.len())?;
        let d = self.dim;
        let mut out = vec![BigInt::zero(); d];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(&self.data[k * d..(k + 1) * d]) {
                if !m.is_zero() {
                    *o += x * m;
                }
            }
        }
        Ok(out)
    }

    /// Reduces every entry modulo `modulus` into `[0, modulus)`.
    pub fn reduce_mod(&self, modulus: &BigInt) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x.mod_floor(modulus)).collect(),
        }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(Signed::abs).max().unwrap_or_default()
    }

    /// Certificate text: a header line `d n c i`, then `d` rows of `d`
    /// space-separated integers, each line newline-terminated.
    pub fn to_certificate_text(&self, header: MatrixHeader) -> String {
        let mut out = format!("{} {} {} {}\n", self.dim, header.n, header.c, header.index);
        for row in self.rows() {
            let mut first = true;
            for x in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                write!(out, "{x}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_certificate(text: &str) -> Result<(MatrixHeader, IntMatrix)> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header_line = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix certificate".into()))?;
        let fields = parse_ints::<u64>(header_line)?;
        let [d, n, c, index] = fields[..] else {
            return Err(Error::Parse(format!("header needs 4 fields, got '{header_line}'")));
        };
        let d = d as usize;
        let mut rows = Vec::with_capacity(d);
        for _ in 0..d {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("matrix certificate truncated".into()))?;
            let row = parse_ints::<BigInt>(line)?;
            if row.len() != d {
                return Err(Error::Parse(format!("row has {} entries, expected {d}", row.len())));
            }
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after matrix rows".into()));
        }
        let header = MatrixHeader {
            n: n as u32,
            c: c as u32,
            index: index as u32,
        };
        Ok((header, IntMatrix::from_rows(rows)?))
    }
}

fn parse_ints<T: std::str::FromStr>(line: &str) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| Error::Parse(format!("bad integer '{tok}'")))
        })
        .collect()
}

/// The `n c i` part of a matrix certificate header; `index` is the generator
/// number `i` for `t_i`, or 0 for any other matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixHeader {
    pub n: u32,
    pub c: u32,
    pub index: u32,
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_add(rhs).expect("matrix dimension mismatch")
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_sub(rhs).expect("matrix dimension mismatch")
    }
}

pub fn vec_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_neg(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_is_zero(a: &[BigInt]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// The `i`-th standard basis row vector of length `d`.
pub fn basis_vector(d: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d];
    v[i] = BigInt::one();
    v
}
