//! The finite-dimensional algebra `A = Q[X_1..X_n] / c` and its regular
//! representation in the standard-monomial basis.
//!
//! Basis elements are ordered by total degree (ties broken by
//! [`crate::ideal::basis_order`]), so multiplication by `X_i` moves every basis vector to a
//! strictly later position or to zero. With the row-vector convention, row `r`
//! of `t_i` holds the coordinates of `m_r * (X_i + 1)`, which makes every `t_i`
//! upper unitriangular with 0/1 entries.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::ideal::{build_ideal_c, MonomialIdeal, MIN_DEGREE};
use crate::matrix::{IntMatrix, MatrixHeader};
use crate::poly::{Monomial, Polynomial};

#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    n: u32,
    c: u32,
    ideal: MonomialIdeal,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl QuotientAlgebra {
    /// `A = Q[X_1..X_n] / c` for `n >= c >= 3`.
    pub fn build(n: u32, c: u32) -> Result<Self> {
        if c < MIN_DEGREE || n < c {
            return Err(Error::Domain(format!(
                "quotient needs n >= c >= {MIN_DEGREE} (got n={n}, c={c})"
            )));
        }
        Self::build_unchecked(n, c)
    }

    /// Builds the quotient for any `n, c >= 1` for which it is finite.
    ///
    /// Standard monomials have degree below `c` or are squarefree, so a degree
    /// cap of `max(n, c - 1)` is always enough when the quotient is finite.
    pub fn build_unchecked(n: u32, c: u32) -> Result<Self> {
        let ideal = build_ideal_c(n, c)?;
        let basis = ideal.standard_monomials(n.max(c.saturating_sub(1)))?;
        let index = basis
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        Ok(QuotientAlgebra {
            n,
            c,
            ideal,
            basis,
            index,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `p + c` in the basis.
    pub fn coords(&self, p: &Polynomial) -> Result<Vec<BigInt>> {
        let nf = self.ideal.normal_form(p)?;
        let mut v = vec![BigInt::zero(); self.dim()];
        for (m, c) in nf.terms() {
            let k = self.position(m).ok_or_else(|| {
                Error::Internal(format!("normal form monomial {m} is not in the basis"))
            })?;
            v[k] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(&self, v: &[BigInt]) -> Result<Polynomial> {
        check_dim(self.dim(), v.len())?;
        Polynomial::from_terms(
            self.n as usize,
            self.basis.iter().cloned().zip(v.iter().cloned()),
        )
    }

    /// Matrix of multiplication by `X_i + 1` (1-based `i`), built directly from
    /// the basis: a 1 on the diagonal and a 1 at the column of `m * X_i` when
    /// that product is standard.
    pub fn regular_rep(&self, i: u32) -> Result<IntMatrix> {
        if i == 0 || i > self.n {
            return Err(Error::Domain(format!(
                "variable index {i} out of range 1..={}",
                self.n
            )));
        }
        let d = self.dim();
        let mut t = IntMatrix::identity(d);
        for (r, m) in self.basis.iter().enumerate() {
            if let Some(col) = self.position(&m.mul_var(i as usize - 1)) {
                t.set(r, col, BigInt::one());
            }
        }
        Ok(t)
    }

    /// `t_1, ..., t_n`.
    pub fn generators(&self) -> Vec<IntMatrix> {
        (1..=self.n)
            .map(|i| self.regular_rep(i).expect("index in range"))
            .collect()
    }

    /// Matrix of multiplication by an arbitrary polynomial, row `r` holding the
    /// coordinates of `NF(m_r * p)`.
    pub fn mult_matrix(&self, p: &Polynomial) -> Result<IntMatrix> {
        check_dim(self.n as usize, p.nvars())?;
        let rows = self
            .basis
            .iter()
            .map(|m| self.coords(&(&Polynomial::term(m.clone(), 1) * p)))
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_rows(rows)
    }

    pub fn header(&self, index: u32) -> MatrixHeader {
        MatrixHeader {
            n: self.n,
            c: self.c,
            index,
        }
    }
}

/// Same as [`QuotientAlgebra::build`].
pub fn build_quotient(n: u32, c: u32) -> Result<QuotientAlgebra> {
    QuotientAlgebra::build(n, c)
}

/// Same as [`QuotientAlgebra::regular_rep`].
pub fn regular_rep(q: &QuotientAlgebra, i: u32) -> Result<IntMatrix> {
    q.regular_rep(i)
}

/// `t_i t_j = t_j t_i` for every pair.
pub fn verify_commuting_family(mats: &[IntMatrix]) -> Result<bool> {
    for (k, a) in mats.iter().enumerate() {
        for b in &mats[k + 1..] {
            if !a.commutes_with(b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Upper unitriangular with every entry in {0, 1}.
pub fn is_unitriangular_01(t: &IntMatrix) -> bool {
    t.is_upper_unitriangular() && t.has_only_01_entries()
}
