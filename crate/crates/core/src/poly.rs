//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! lexicographic: total degree first, then the exponent vectors compared
//! lexicographically (so `X1 > X2 > ... > Xn` within a degree). Zero
//! coefficients are never stored, so structural equality is polynomial
//! equality.
//!
//! The `f_c` family lives here as well: `f_c(X, Y) = (X - 1) * prod_{i=0}^{c-2} (X^{2^i} Y^{2^i} - 1)`,
//! together with the cofactors `g_c`, `h_c` of its specialisations.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};

/// Exponent vector over `n` variables. Index `i` holds the exponent of `X_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The variable `X_{index+1}` (zero-based index).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// `self | other`, componentwise `<=`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        check_dim(self.nvars(), other.nvars())?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Product of monomials. Panics if the ambient variable counts differ.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "monomial arity mismatch");
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_var(&self, index: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[index] += 1;
        Monomial { exps }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Same as [`Monomial::divides`].
pub fn mono_divides(d: &Monomial, m: &Monomial) -> Result<bool> {
    d.divides(m)
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_var_names(self.nvars())))
    }
}

/// `X1, X2, ..., Xn`.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("X{i}")).collect()
}

/// Variable names used for the two-variable `f_c` family.
pub fn bivariate_names() -> Vec<String> {
    vec!["X".to_string(), "Y".to_string()]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, value: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(nvars), value)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(Monomial::var(nvars, index), 1)
    }

    pub fn term(m: Monomial, coeff: impl Into<BigInt>) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        p.add_term(m, coeff.into());
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            check_dim(nvars, m.nvars())?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn retain_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Exact `k`-th power by repeated squaring; `p^0 = 1`.
    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
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

    /// Substitutes `images[i]` for `X_{i+1}`. All images must share one arity,
    /// which becomes the arity of the result.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        check_dim(self.nvars, images.len())?;
        let target = images.first().map_or(0, Polynomial::nvars);
        for img in images {
            check_dim(target, img.nvars)?;
        }
        // powers[i][e] = images[i]^e, grown on demand
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|_| vec![Polynomial::one(target)]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `p(X_1 + 1, ..., X_n + 1)`.
    pub fn shift_substitute(&self) -> Polynomial {
        let n = self.nvars;
        let images: Vec<Polynomial> = (0..n)
            .map(|i| &Polynomial::var(n, i) + &Polynomial::one(n))
            .collect();
        self.compose(&images)
            .expect("shift images have the ambient arity")
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        check_dim(self.nvars, point.len())?;
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.fmt_with(names));
            } else {
                out.push_str(&format!("{}*{}", abs, m.fmt_with(names)));
            }
        }
        out
    }

    /// Parses the textual format produced by [`Display`](fmt::Display) with
    /// variables `X1..Xn`.
    pub fn parse(s: &str, nvars: usize) -> Result<Polynomial> {
        Self::parse_with(s, &default_var_names(nvars))
    }

    /// Parses with explicit variable names; the arity is `names.len()`.
    ///
    /// Grammar: `['-'] term (('+'|'-') term)*`, `term = factor ('*' factor)*`,
    /// `factor = integer | name ['^' integer]`.
    pub fn parse_with(s: &str, names: &[String]) -> Result<Polynomial> {
        Parser::new(s, names).parse()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_var_names(self.nvars)))
    }
}

macro_rules! checked_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on arity mismatch; use the `checked_*` form to get an error.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial arity mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &Polynomial, q: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(s: &str, names: &'a [String]) -> Self {
        Parser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            names,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Polynomial> {
        let n = self.names.len();
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut out = Polynomial::zero(n);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, c * sign);
            match self.peek() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let n = self.names.len();
        let mut exps = vec![0u32; n];
        let mut coeff = BigInt::one();
        loop {
            match self.peek() {
                Some(ch) if ch.is_ascii_digit() => coeff *= self.integer()?,
                Some(_) => {
                    let idx = self.name()?;
                    let e = if self.peek() == Some('^') {
                        self.pos += 1;
                        let e = self.integer()?;
                        u32::try_from(&e).map_err(|_| self.err("exponent out of range"))?
                    } else {
                        1
                    };
                    exps[idx] += e;
                }
                None => return Err(self.err("unexpected end of input")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((Monomial::new(exps), coeff));
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.err("bad integer"))
    }

    fn name(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let ident: String = self.chars[start..self.pos].iter().collect();
        self.names
            .iter()
            .position(|n| *n == ident)
            .ok_or_else(|| Error::Parse(format!("unknown variable '{ident}' at offset {start}")))
    }
}

// ---------------------------------------------------------------------------
// The f_c family.

fn x() -> Polynomial {
    Polynomial::var(2, 0)
}

fn y() -> Polynomial {
    Polynomial::var(2, 1)
}

/// `1 + Z + ... + Z^{len-1}` for a given `z`.
fn geometric_sum(z: &Polynomial, len: u64) -> Polynomial {
    let mut acc = Polynomial::zero(z.nvars());
    let mut power = Polynomial::one(z.nvars());
    for _ in 0..len {
        acc = &acc + &power;
        power = &power * z;
    }
    acc
}

/// `f_c(X, Y) = (X - 1) * prod_{i=0}^{c-2} (X^{2^i} Y^{2^i} - 1)` in two variables.
pub fn build_f_c(c: u32) -> Result<Polynomial> {
    if c == 0 {
        return Err(Error::Domain("f_c requires c >= 1".into()));
    }
    let one = Polynomial::one(2);
    let xy = &x() * &y();
    let mut f = &x() - &one;
    for i in 0..c.saturating_sub(1) {
        f = &f * &(&xy.pow(1 << i) - &one);
    }
    Ok(f)
}

/// `g_c(X) = prod_{i=1}^{c-2} (X^{2^i - 1} + ... + X + 1)`, univariate.
pub fn g_c(c: u32) -> Polynomial {
    let xv = Polynomial::var(1, 0);
    let mut g = Polynomial::one(1);
    for i in 1..c.saturating_sub(1) {
        g = &g * &geometric_sum(&xv, 1u64 << i);
    }
    g
}

/// `h_c(X) = g_c(X) * prod_{i=0}^{c-2} (X^{2^i} + 1)`, univariate.
pub fn h_c(c: u32) -> Polynomial {
    let xv = Polynomial::var(1, 0);
    let one = Polynomial::one(1);
    let mut h = g_c(c);
    for i in 0..c.saturating_sub(1) {
        h = &h * &(&xv.pow(1 << i) + &one);
    }
    h
}

/// Restricts a bivariate polynomial to the diagonal `Y = X` or to `Y = 1`,
/// returning a univariate polynomial in `X`.
pub fn specialize_y(p: &Polynomial, y_equals_x: bool) -> Result<Polynomial> {
    check_dim(2, p.nvars())?;
    let xv = Polynomial::var(1, 0);
    let yv = if y_equals_x { xv.clone() } else { Polynomial::one(1) };
    p.compose(&[xv, yv])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub c: u32,
    /// `f_c(X,1) = (X-1)^c * prod_{i=1}^{c-2} (X^{2^i-1} + ... + 1)`.
    pub identity_1: bool,
    /// `f_c(X,X) = f_c(X,1) * prod_{i=0}^{c-2} (X^{2^i} + 1)`.
    pub identity_1bis: bool,
    /// `f_c(X,Y) = (X-1)(XY-1)^{c-1} * prod_{i=1}^{c-2} ((XY)^{2^i-1} + ... + 1)`.
    pub identity_2: bool,
    /// `f_c(X,X) = (X-1)^c h_c(X)`.
    pub diagonal_factor: bool,
    pub g_c: Polynomial,
    pub h_c: Polynomial,
    pub g_at_1: BigInt,
    pub h_at_1: BigInt,
}

impl FactorizationReport {
    pub fn all_hold(&self) -> bool {
        self.identity_1
            && self.identity_1bis
            && self.identity_2
            && self.diagonal_factor
            && !self.g_at_1.is_zero()
            && !self.h_at_1.is_zero()
    }
}

/// Expands both sides of the three factorisations of `f_c` and compares them exactly.
pub fn verify_f_factorizations(c: u32) -> Result<FactorizationReport> {
    let f = build_f_c(c)?;
    let f_x1 = specialize_y(&f, false)?;
    let f_xx = specialize_y(&f, true)?;

    let xv = Polynomial::var(1, 0);
    let one1 = Polynomial::one(1);
    let x_minus_1 = &xv - &one1;
    let g = g_c(c);
    let h = h_c(c);

    let rhs_1 = &x_minus_1.pow(c) * &g;

    let mut diag_extra = Polynomial::one(1);
    for i in 0..c - 1 {
        diag_extra = &diag_extra * &(&xv.pow(1 << i) + &one1);
    }
    let rhs_1bis = &f_x1 * &diag_extra;

    let one2 = Polynomial::one(2);
    let xy = &x() * &y();
    let g_of_xy = g.compose(std::slice::from_ref(&xy))?;
    let rhs_2 = &(&(&x() - &one2) * &(&xy - &one2).pow(c - 1)) * &g_of_xy;

    let one = [BigInt::one()];
    Ok(FactorizationReport {
        c,
        identity_1: f_x1 == rhs_1,
        identity_1bis: f_xx == rhs_1bis,
        identity_2: f == rhs_2,
        diagonal_factor: f_xx == &x_minus_1.pow(c) * &h,
        g_at_1: g.eval(&one)?,
        h_at_1: h.eval(&one)?,
        g_c: g,
        h_c: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    fn pxy(s: &str) -> Polynomial {
        Polynomial::parse_with(s, &bivariate_names()).unwrap()
    }

    #[test]
    fn divides() {
        let x1 = Monomial::new(vec![1, 0]);
        let x1x2 = Monomial::new(vec![1, 1]);
        let x1sq = Monomial::new(vec![2, 0]);
        assert!(mono_divides(&x1, &x1x2).unwrap());
        assert!(!mono_divides(&x1sq, &x1x2).unwrap());
        assert!(mono_divides(&Monomial::one(2), &x1sq).unwrap());
        assert_eq!(
            mono_divides(&x1, &Monomial::one(3)),
            Err(Error::Dimension { expected: 2, found: 3 })
        );
    }

    #[test]
    fn arithmetic_examples() {
        let a = p("X1 - 1", 2);
        let b = p("X1 + 1", 2);
        assert_eq!(poly_arith(&a, &b, ArithOp::Mul).unwrap(), p("X1^2 - 1", 2));
        assert!(poly_arith(&a, &-&a, ArithOp::Add).unwrap().is_zero());
        let s = p("X1 + X2", 2);
        assert_eq!(&s * &s, p("X1^2 + 2*X1*X2 + X2^2", 2));
        assert!(poly_arith(&a, &p("X1", 1), ArithOp::Sub).is_err());
    }

    #[test]
    fn powers() {
        let a = p("X1 - 1", 1);
        assert_eq!(a.pow(0), Polynomial::one(1));
        assert_eq!(a.pow(2), p("X1^2 - 2*X1 + 1", 1));
        let base = p("X1*X2*X3 + X1*X2 + X1*X3 + X2*X3 + X1 + X2 + X3", 3);
        let cube = base.pow(3);
        assert!(cube.coeff(&Monomial::one(3)).is_zero());
    }

    #[test]
    fn shift_examples() {
        for c in 1..6 {
            let lhs = p("X1 - 1", 2).pow(c).shift_substitute();
            assert_eq!(lhs, p("X1", 2).pow(c));
            let gen_a = &p("X1 - 1", 2) * &p("X1*X2 - 1", 2).pow(c - 1);
            let gen_b = &p("X1", 2) * &p("X1 + X2 + X1*X2", 2).pow(c - 1);
            assert_eq!(gen_a.shift_substitute(), gen_b);
        }
        assert_eq!(Polynomial::constant(3, 5).shift_substitute(), Polynomial::constant(3, 5));
    }

    #[test]
    fn f_c_small_cases() {
        assert_eq!(build_f_c(1).unwrap(), pxy("X - 1"));
        assert_eq!(build_f_c(2).unwrap(), pxy("X^2*Y - X*Y - X + 1"));
        assert_eq!(
            build_f_c(3).unwrap(),
            &(&pxy("X - 1") * &pxy("X*Y - 1")) * &pxy("X^2*Y^2 - 1")
        );
        assert!(matches!(build_f_c(0), Err(Error::Domain(_))));
    }

    #[test]
    fn factorization_small_cases() {
        let r2 = verify_f_factorizations(2).unwrap();
        assert!(r2.all_hold());
        assert_eq!(r2.g_c, Polynomial::one(1));

        let r3 = verify_f_factorizations(3).unwrap();
        assert!(r3.all_hold());
        assert_eq!(r3.g_c, p("X1 + 1", 1));
        assert_eq!(r3.g_at_1, BigInt::from(2));
        assert_eq!(r3.h_at_1, &r3.g_at_1 * BigInt::from(4));

        let f3_x1 = specialize_y(&build_f_c(3).unwrap(), false).unwrap();
        assert_eq!(f3_x1, &p("X1 - 1", 1).pow(3) * &p("X1 + 1", 1));

        // degenerate c = 1: empty products everywhere
        assert!(verify_f_factorizations(1).unwrap().all_hold());
    }

    #[test]
    fn h_at_one_scaling() {
        for c in 1..9u32 {
            let r = verify_f_factorizations(c).unwrap();
            let expect = &r.g_at_1 * BigInt::from(2).pow(c - 1);
            assert_eq!(r.h_at_1, expect, "c={c}");
        }
    }

    #[test]
    fn display_and_parse() {
        let f2 = build_f_c(2).unwrap();
        assert_eq!(f2.fmt_with(&bivariate_names()), "X^2*Y - X*Y - X + 1");
        assert_eq!(p("-3*X2^2 + X1 - 7", 2).to_string(), "-3*X2^2 + X1 - 7");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
        assert!(Polynomial::parse("X1 + Z", 2).is_err());
        assert!(Polynomial::parse("", 2).is_err());
        assert!(Polynomial::parse("X1 +", 2).is_err());
        // graded-lex: X1 before X2 within a degree, higher degree first
        assert_eq!(p("X2 + X1^2 + X1 + X1*X2", 2).to_string(), "X1^2 + X1*X2 + X1 + X2");
    }
}
