//! Arithmetic in `G = B ⋉ A` with `A = Z^d` written additively and `B` a group
//! of unitriangular integer matrices acting on row vectors from the right.
//!
//! An element `(t, a)` stands for the product `t * a`. Then
//! `(t, a)(u, b) = (tu, a·u + b)`, since `a u = u a^u` and `a^u = a·u`.
//! Exponent notation `a^{p(t)}` for a polynomial `p` becomes the row-vector
//! product `a · p(t)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::matrix::{vec_add, vec_is_zero, vec_neg, IntMatrix, MatrixHeader};
use crate::poly::{build_f_c, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    t: IntMatrix,
    a: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(t: IntMatrix, a: Vec<BigInt>) -> Result<Self> {
        check_dim(t.dim(), a.len())?;
        if !t.is_upper_unitriangular() {
            return Err(Error::Domain("matrix part must be upper unitriangular".into()));
        }
        Ok(GroupElement { t, a })
    }

    pub fn identity(d: usize) -> Self {
        GroupElement {
            t: IntMatrix::identity(d),
            a: vec![BigInt::zero(); d],
        }
    }

    /// `(t, 0)`.
    pub fn from_matrix(t: IntMatrix) -> Result<Self> {
        let d = t.dim();
        Self::new(t, vec![BigInt::zero(); d])
    }

    /// `(1, a)`.
    pub fn from_vector(a: Vec<BigInt>) -> Self {
        GroupElement {
            t: IntMatrix::identity(a.len()),
            a,
        }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.t
    }

    pub fn vector(&self) -> &[BigInt] {
        &self.a
    }

    pub fn into_parts(self) -> (IntMatrix, Vec<BigInt>) {
        (self.t, self.a)
    }

    pub fn is_identity(&self) -> bool {
        self.t.is_identity() && vec_is_zero(&self.a)
    }

    /// `(t, a)(u, b) = (tu, a·u + b)`.
    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        check_dim(self.dim(), rhs.dim())?;
        let t = self.t.checked_mul(&rhs.t)?;
        let a = vec_add(&rhs.t.vec_mul(&self.a)?, &rhs.a);
        Ok(GroupElement { t, a })
    }

    /// `(t, a)^{-1} = (t^{-1}, -a·t^{-1})`.
    pub fn inverse(&self) -> GroupElement {
        let t_inv = self
            .t
            .inverse_unitriangular()
            .expect("matrix part is unitriangular by construction");
        let a = vec_neg(&t_inv.vec_mul(&self.a).expect("same dimension"));
        GroupElement { t: t_inv, a }
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupElement::identity(self.dim());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq).expect("same dimension");
            }
        }
        acc
    }

    /// `g^{-1} self g`.
    pub fn conjugate_by(&self, g: &GroupElement) -> Result<GroupElement> {
        g.inverse().mul(self)?.mul(g)
    }

    /// `[x, y] = x^{-1} y^{-1} x y`.
    pub fn commutator(x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        x.inverse().mul(&y.inverse())?.mul(x)?.mul(y)
    }

    /// Matrix certificate of `t` followed by one line holding `a`.
    pub fn to_text(&self, header: MatrixHeader) -> String {
        let mut out = self.t.to_certificate_text(header);
        out.push_str(&join_ints(&self.a));
        out.push('\n');
        out
    }

    pub fn parse_text(text: &str) -> Result<(MatrixHeader, GroupElement)> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let (vector_line, matrix_lines) = lines
            .split_last()
            .ok_or_else(|| Error::Parse("empty group element".into()))?;
        let (header, t) = IntMatrix::parse_certificate(&matrix_lines.join("\n"))?;
        let a = vector_line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer '{tok}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((header, GroupElement::new(t, a)?))
    }
}

pub fn join_ints(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Same as [`GroupElement::mul`].
pub fn group_mul(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    g.mul(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X,
    Y,
}

/// A positive word in `x, y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Number of occurrences of `x` and of `y`.
    pub fn weights(&self) -> (usize, usize) {
        let xs = self.letters.iter().filter(|&&l| l == Letter::X).count();
        (xs, self.letters.len() - xs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .map(|ch| match ch {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                other => Err(Error::Parse(format!("word letter '{other}' is not x or y"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }
}

/// The two sides `alpha_c`, `beta_c` of the Malcev law `M_c(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalcevPair {
    pub c: u32,
    pub alpha: Word,
    pub beta: Word,
}

/// Longest word the crate will materialise (`2^24` letters).
pub const MAX_WORD_DEGREE: u32 = 24;

/// `alpha_0 = x`, `beta_0 = y`, `alpha_c = alpha_{c-1} beta_{c-1}`,
/// `beta_c = beta_{c-1} alpha_{c-1}`.
pub fn malcev_words(c: u32) -> Result<MalcevPair> {
    if c == 0 || c > MAX_WORD_DEGREE {
        return Err(Error::Domain(format!(
            "Malcev degree must be in 1..={MAX_WORD_DEGREE}, got {c}"
        )));
    }
    let mut alpha = Word::new(vec![Letter::X]);
    let mut beta = Word::new(vec![Letter::Y]);
    for _ in 0..c {
        let next_alpha = alpha.concat(&beta);
        beta = beta.concat(&alpha);
        alpha = next_alpha;
    }
    Ok(MalcevPair { c, alpha, beta })
}

/// Left-to-right product of the word with `x := gx`, `y := gy`.
pub fn eval_word(w: &Word, gx: &GroupElement, gy: &GroupElement) -> Result<GroupElement> {
    check_dim(gx.dim(), gy.dim())?;
    let mut acc = GroupElement::identity(gx.dim());
    for l in w.letters() {
        acc = acc.mul(match l {
            Letter::X => gx,
            Letter::Y => gy,
        })?;
    }
    Ok(acc)
}

/// Whether `alpha_c(gx, gy) = beta_c(gx, gy)`.
pub fn check_malcev(c: u32, gx: &GroupElement, gy: &GroupElement) -> Result<bool> {
    let pair = malcev_words(c)?;
    Ok(eval_word(&pair.alpha, gx, gy)? == eval_word(&pair.beta, gx, gy)?)
}

/// Substitutes the matrices for the variables of `p`; constants become scalar
/// matrices. The matrices must commute pairwise.
pub fn endo_eval(p: &Polynomial, mats: &[IntMatrix]) -> Result<IntMatrix> {
    check_dim(p.nvars(), mats.len())?;
    let d = mats
        .first()
        .map(IntMatrix::dim)
        .ok_or_else(|| Error::Domain("endo_eval needs at least one matrix".into()))?;
    for m in mats {
        check_dim(d, m.dim())?;
    }
    for (i, a) in mats.iter().enumerate() {
        for b in &mats[i + 1..] {
            if !a.commutes_with(b)? {
                return Err(Error::Precondition("substituted matrices do not commute".into()));
            }
        }
    }
    let mut powers: Vec<Vec<IntMatrix>> = mats.iter().map(|_| vec![IntMatrix::identity(d)]).collect();
    let mut out = IntMatrix::zeros(d);
    for (mono, coeff) in p.terms() {
        let mut term = IntMatrix::scalar(d, coeff.clone());
        for (i, &e) in mono.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = &powers[i][powers[i].len() - 1] * &mats[i];
                powers[i].push(next);
            }
            term = &term * &powers[i][e as usize];
        }
        out = &out + &term;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaOutcome {
    /// `M_c` holds on `(t, a), (u, b)` by direct word evaluation.
    pub direct: bool,
    /// `a·f_c(u, t) = b·f_c(t, u)`.
    pub criterion: bool,
}

impl LemmaOutcome {
    pub fn agrees(&self) -> bool {
        self.direct == self.criterion
    }
}

/// Computes both the direct Malcev check on `x = (t, a)`, `y = (u, b)` and the
/// polynomial criterion `a·f_c(u, t) = b·f_c(t, u)`, independently.
pub fn lemma_identity_check(
    c: u32,
    t: &IntMatrix,
    u: &IntMatrix,
    a: &[BigInt],
    b: &[BigInt],
) -> Result<LemmaOutcome> {
    if !t.commutes_with(u)? {
        return Err(Error::Precondition("t and u must commute".into()));
    }
    let gx = GroupElement::new(t.clone(), a.to_vec())?;
    let gy = GroupElement::new(u.clone(), b.to_vec())?;
    let direct = check_malcev(c, &gx, &gy)?;

    let f = build_f_c(c)?;
    let f_ut = endo_eval(&f, &[u.clone(), t.clone()])?;
    let f_tu = endo_eval(&f, &[t.clone(), u.clone()])?;
    let criterion = f_ut.vec_mul(a)? == f_tu.vec_mul(b)?;
    Ok(LemmaOutcome { direct, criterion })
}

/// Nilpotency class of `B ⋉ Z^d` for a commuting unitriangular family `B`.
///
/// With `A` and `B` abelian, `γ_{k+1}` is spanned by `A` times products of `k`
/// factors `t_i - 1`, so the class is the least `k` for which every such
/// product vanishes. Products of commuting factors depend only on the
/// multiset of indices, and a zero product kills all its extensions.
pub fn nilpotency_class(mats: &[IntMatrix], d: usize) -> usize {
    let steps: Vec<IntMatrix> = mats
        .iter()
        .map(IntMatrix::minus_identity)
        .filter(|m| !m.is_zero())
        .collect();
    // frontier: nonzero products of k factors with nondecreasing indices, tagged
    // with the last index used
    let mut frontier: Vec<(usize, IntMatrix)> = steps.iter().cloned().enumerate().collect();
    let mut k = 1;
    while !frontier.is_empty() && k < d.max(1) {
        let mut next = Vec::new();
        for (last, prod) in &frontier {
            for (j, s) in steps.iter().enumerate().skip(*last) {
                let p = prod * s;
                if !p.is_zero() {
                    next.push((j, p));
                }
            }
        }
        frontier = next;
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityProbe {
    pub determinant: BigInt,
    pub injective: bool,
}

/// Whether `p(t)` is injective on `Z^d`, by computing its determinant.
pub fn injectivity_probe(p: &Polynomial, t: &IntMatrix) -> Result<InjectivityProbe> {
    check_dim(1, p.nvars())?;
    if !t.is_upper_unitriangular() {
        return Err(Error::Precondition("injectivity probe expects a unitriangular matrix".into()));
    }
    let determinant = endo_eval(p, std::slice::from_ref(t))?.determinant();
    Ok(InjectivityProbe {
        injective: !determinant.is_zero(),
        determinant,
    })
}
