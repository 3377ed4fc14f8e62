//! Monomial ideals and the specific ideal
//! `c = (X_1^{i_1}...X_n^{i_n} | i_1 + ... + i_n = c, some i_j >= 2)`.
//!
//! Because the ideal is generated by monomials, a monomial lies in it iff some
//! generator divides it, and a polynomial lies in it iff each of its monomials
//! does. The normal form of a polynomial is therefore obtained by deleting
//! every term whose monomial is in the ideal, and the standard monomials
//! (those outside it) give a basis of the quotient.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{check_dim, Error, Result};
use crate::poly::{Monomial, Polynomial};

/// Degree below which the containment `b ⊆ c` breaks down.
pub const MIN_DEGREE: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal, dropping every generator divisible by another one.
    pub fn new(nvars: usize, generators: Vec<Monomial>) -> Result<Self> {
        for g in &generators {
            check_dim(nvars, g.nvars())?;
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let minimal: Vec<Monomial> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides_unchecked(g)))
            .cloned()
            .collect();
        Ok(MonomialIdeal {
            nvars,
            generators: minimal,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Minimal generators in ascending graded-lex order.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains_monomial(&self, m: &Monomial) -> Result<bool> {
        check_dim(self.nvars, m.nvars())?;
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides_unchecked(m))
    }

    /// Deletes every term whose monomial lies in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, p.nvars())?;
        Ok(p.retain_terms(|m| !self.contains_unchecked(m)))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `NF(p * q)`.
    pub fn mul_reduced(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        self.normal_form(&p.checked_mul(q)?)
    }

    /// `NF(p^k)`, reducing after every multiplication.
    pub fn pow_reduced(&self, p: &Polynomial, k: u32) -> Result<Polynomial> {
        let base = self.normal_form(p)?;
        let mut acc = self.normal_form(&Polynomial::one(self.nvars))?;
        for _ in 0..k {
            acc = self.mul_reduced(&acc, &base)?;
        }
        Ok(acc)
    }

    /// All monomials outside the ideal, ordered by [`basis_order`].
    ///
    /// Fails if a standard monomial of degree `degree_cap + 1` exists: then the
    /// cap is too small, or the quotient is infinite-dimensional. If every
    /// monomial of degree `cap + 1` is in the ideal, so is every monomial of
    /// higher degree, since each is a multiple of one of degree `cap + 1`.
    pub fn standard_monomials(&self, degree_cap: u32) -> Result<Vec<Monomial>> {
        if let Some(m) = monomials_of_degree(self.nvars, degree_cap + 1)
            .into_iter()
            .find(|m| !self.contains_unchecked(m))
        {
            return Err(Error::NotFinite {
                cap: degree_cap,
                witness: m.to_string(),
            });
        }
        let mut out: Vec<Monomial> = BoundedExponents::new(self.nvars, degree_cap)
            .filter(|m| !self.contains_unchecked(m))
            .collect();
        out.sort_by(basis_order);
        Ok(out)
    }

    /// One generator per line, descending graded-lex order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in self.generators.iter().rev() {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(s: &str, nvars: usize) -> Result<Self> {
        let mut gens = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let p = Polynomial::parse(line, nvars)?;
            let mut terms = p.terms();
            match (terms.next(), terms.next()) {
                (Some((m, c)), None) if c.is_one() => gens.push(m.clone()),
                _ => return Err(Error::Parse(format!("'{line}' is not a monomial"))),
            }
        }
        MonomialIdeal::new(nvars, gens)
    }
}

/// Same as [`MonomialIdeal::contains_monomial`].
pub fn contains_monomial(ideal: &MonomialIdeal, m: &Monomial) -> Result<bool> {
    ideal.contains_monomial(m)
}

/// Same as [`MonomialIdeal::normal_form`].
pub fn normal_form(ideal: &MonomialIdeal, p: &Polynomial) -> Result<Polynomial> {
    ideal.normal_form(p)
}

/// Basis ordering: ascending total degree, then descending lexicographic order
/// of exponent vectors (so `1, X1, X2, ..., X1^2, X1*X2, ...`).
pub fn basis_order(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.exponents().cmp(a.exponents()))
}

/// Odometer over exponent vectors with total degree at most `cap`.
struct BoundedExponents {
    cap: u32,
    current: Option<Vec<u32>>,
}

impl BoundedExponents {
    fn new(nvars: usize, cap: u32) -> Self {
        BoundedExponents {
            cap,
            current: Some(vec![0; nvars]),
        }
    }
}

impl Iterator for BoundedExponents {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut pos = next.len();
        self.current = loop {
            if pos == 0 {
                break None;
            }
            pos -= 1;
            next[pos] += 1;
            if next.iter().sum::<u32>() <= self.cap {
                break Some(next);
            }
            next[pos] = 0;
        };
        Some(Monomial::new(out))
    }
}

/// Every monomial of total degree exactly `degree`, in descending lex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, nvars: usize, left: u32, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(prefix, nvars, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
    out
}

/// The ideal generated by all degree-`c` monomials in `n` variables having
/// some exponent at least 2.
///
/// `c < 3` is accepted so that negative controls can be built; see
/// [`degree_warning`].
pub fn build_ideal_c(n: u32, c: u32) -> Result<MonomialIdeal> {
    if n == 0 || c == 0 {
        return Err(Error::Domain(format!("ideal c needs n >= 1 and c >= 1 (got n={n}, c={c})")));
    }
    let gens = monomials_of_degree(n as usize, c)
        .into_iter()
        .filter(|m| !m.is_squarefree())
        .collect();
    MonomialIdeal::new(n as usize, gens)
}

pub fn degree_warning(c: u32) -> Option<String> {
    (c < MIN_DEGREE).then(|| format!("c = {c} is below {MIN_DEGREE}; b is not contained in c"))
}

/// Generators of `a = ((X_i - 1)^c, (X_i - 1)(X_i X_j - 1)^{c-1} | i != j)`, in
/// the same order as [`generators_b`].
pub fn generators_a(n: u32, c: u32) -> Vec<Polynomial> {
    shaped_generators(n, c, |n, i| {
        &Polynomial::var(n, i) - &Polynomial::one(n)
    }, |n, i, j| {
        &(&Polynomial::var(n, i) * &Polynomial::var(n, j)) - &Polynomial::one(n)
    })
}

/// Generators of `b = (X_i^c, X_i (X_i + X_j + X_i X_j)^{c-1} | i != j)`.
pub fn generators_b(n: u32, c: u32) -> Vec<Polynomial> {
    shaped_generators(n, c, Polynomial::var, |n, i, j| {
        let xi = Polynomial::var(n, i);
        let xj = Polynomial::var(n, j);
        &(&xi + &xj) + &(&xi * &xj)
    })
}

fn shaped_generators(
    n: u32,
    c: u32,
    single: impl Fn(usize, usize) -> Polynomial,
    pair: impl Fn(usize, usize, usize) -> Polynomial,
) -> Vec<Polynomial> {
    let n = n as usize;
    let mut out: Vec<Polynomial> = (0..n).map(|i| single(n, i).pow(c)).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(&single(n, i) * &pair(n, i, j).pow(c.saturating_sub(1)));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentReport {
    pub holds: bool,
    /// The first generator of `b` with a nonzero normal form, and one of its
    /// surviving monomials.
    pub witness: Option<(Polynomial, Monomial)>,
}

/// Expands every generator of `b` and checks its normal form modulo `c` vanishes.
pub fn check_b_subset_c(n: u32, c: u32) -> Result<ContainmentReport> {
    let ideal = build_ideal_c(n, c)?;
    for g in generators_b(n, c) {
        let nf = ideal.normal_form(&g)?;
        let survivor = nf.monomials().next_back().cloned();
        if let Some(m) = survivor {
            return Ok(ContainmentReport {
                holds: false,
                witness: Some((g, m)),
            });
        }
    }
    Ok(ContainmentReport {
        holds: true,
        witness: None,
    })
}

/// `m^{n+1} ⊆ c`, where `m = (X_1, ..., X_n)`.
///
/// `m^{n+1}` is generated by the degree-`(n+1)` monomials, so it suffices that
/// each of those lies in `c`.
pub fn check_m_power_subset(n: u32, c: u32) -> Result<bool> {
    let ideal = build_ideal_c(n, c)?;
    Ok(monomials_of_degree(n as usize, n + 1)
        .iter()
        .all(|m| ideal.contains_unchecked(m)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub holds: bool,
    /// Coefficient of `X_1...X_n` in the normal form.
    pub coefficient: BigInt,
    /// `e^n n!`.
    pub expected: BigInt,
    /// `X_1...X_n` is a standard monomial.
    pub product_not_in_c: bool,
    pub normal_form: Polynomial,
}

/// `((X_1+1)^e ... (X_n+1)^e - 1)^n ≡ e^n n! X_1...X_n (mod c)`.
pub fn check_congruence(n: u32, c: u32, e: u32) -> Result<CongruenceReport> {
    if e == 0 {
        return Err(Error::Domain("congruence needs e >= 1".into()));
    }
    let ideal = build_ideal_c(n, c)?;
    let nv = n as usize;
    let one = Polynomial::one(nv);
    let mut prod = one.clone();
    for i in 0..nv {
        let factor = (&Polynomial::var(nv, i) + &one).pow(e);
        prod = ideal.mul_reduced(&prod, &factor)?;
    }
    let base = &prod - &one;
    let nf = ideal.pow_reduced(&base, n)?;

    let top = Monomial::new(vec![1; nv]);
    let expected = BigInt::from(e).pow(n) * factorial(n);
    let rhs = Polynomial::term(top.clone(), expected.clone());
    let product_not_in_c = !ideal.contains_unchecked(&top);
    Ok(CongruenceReport {
        holds: ideal.normal_form(&(&nf - &rhs))?.is_zero() && product_not_in_c,
        coefficient: nf.coeff(&top),
        expected,
        product_not_in_c,
        normal_form: nf,
    })
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}
