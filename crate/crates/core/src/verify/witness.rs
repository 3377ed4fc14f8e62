use num_bigint::BigInt;

use super::GnGroup;
use crate::error::{Error, Result};
use crate::grouplaw::{endo_eval, eval_word, injectivity_probe, malcev_words, GroupElement};
use crate::matrix::{basis_vector, vec_is_zero, IntMatrix};
use crate::poly::{build_f_c, h_c, specialize_y};

/// A verified substitution `x = (t, a)`, `y = (t, b)` with
/// `t = (t_1...t_n)^e` on which `M_n` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MnWitness {
    pub e: u32,
    /// Basis position of the standard vector used as `a`.
    pub row: usize,
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
    pub alpha_val: GroupElement,
    pub beta_val: GroupElement,
    pub transcript: Vec<String>,
}

/// Finds `a` with `a · f_n(t, t) != 0` for `t = (t_1...t_n)^e` and checks by
/// direct evaluation that `alpha_n((t, a), (t, 0)) != beta_n((t, a), (t, 0))`.
///
/// `f_n(X, X) = (X - 1)^n h_n(X)`, so `f_n(t, t)` is nonzero as soon as
/// `(t - 1)^n` is and `h_n(t)` is injective.
pub fn find_mn_failure_witness(group: &GnGroup, e: u32) -> Result<MnWitness> {
    let n = group.n();
    let d = group.dim();
    let t = group.diagonal_power(e);
    let mut transcript = vec![format!("t = (t_1...t_{n})^{e}, d = {d}")];

    let nilpart = t.minus_identity().pow(n);
    if nilpart.is_zero() {
        return Err(Error::Precondition(format!(
            "(t - 1)^{n} = 0 for e = {e}; condition (iii) does not hold"
        )));
    }
    transcript.push(format!("(t - 1)^{n} != 0"));

    let h = h_c(n);
    let probe = injectivity_probe(&h, &t)?;
    transcript.push(format!(
        "det h_{n}(t) = {} ({})",
        probe.determinant,
        if probe.injective { "injective" } else { "not injective" }
    ));

    let diagonal = specialize_y(&build_f_c(n)?, true)?;
    let f = endo_eval(&diagonal, std::slice::from_ref(&t))?;
    let f_bivariate = endo_eval(&build_f_c(n)?, &[t.clone(), t.clone()])?;
    if f != f_bivariate {
        return Err(Error::Internal("f_n(X,X) and f_n(t,t) disagree".into()));
    }
    if f.is_zero() {
        return Err(Error::Internal(format!("f_{n}(t, t) = 0 although (t - 1)^{n} != 0")));
    }
    transcript.push(format!("f_{n}(t, t) != 0"));

    let row = (0..d)
        .find(|&i| !vec_is_zero(f.row(i)))
        .ok_or_else(|| Error::Internal("no basis vector detects f_n(t, t)".into()))?;
    let a = basis_vector(d, row);
    let b = vec![BigInt::from(0); d];
    transcript.push(format!(
        "a = basis vector {row} ({}), b = 0",
        group.algebra().basis()[row]
    ));

    let pair = malcev_words(n)?;
    let x = GroupElement::new(t.clone(), a.clone())?;
    let y = GroupElement::new(t, b.clone())?;
    let alpha_val = eval_word(&pair.alpha, &x, &y)?;
    let beta_val = eval_word(&pair.beta, &x, &y)?;
    if alpha_val == beta_val {
        return Err(Error::Internal(
            "criterion predicts a failure but direct evaluation agrees".into(),
        ));
    }
    transcript.push(format!(
        "alpha_{n} and beta_{n} ({} letters each) evaluate to different elements",
        pair.alpha.len()
    ));

    Ok(MnWitness {
        e,
        row,
        a,
        b,
        alpha_val,
        beta_val,
        transcript,
    })
}

/// A substitution from `{1, t_1..t_k} A` violating `M_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    /// Indices into `{1, t_1, ..., t_k}` for the matrix parts of `x` and `y`.
    pub t_index: usize,
    pub u_index: usize,
    pub x: GroupElement,
    pub y: GroupElement,
}

/// Searches `T = t_1 A ∪ ... ∪ t_k A ∪ A` for a substitution violating `M_c`.
///
/// With `b = 0` the law holds on `(t, a), (u, 0)` iff `a · f_c(u, t) = 0`, so
/// any pair of representatives with `f_c(u, t) != 0` yields a failure at a
/// basis vector; each candidate is confirmed by direct word evaluation.
pub fn find_law_failure(c: u32, gens: &[IntMatrix]) -> Result<Option<LawFailure>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    let d = first.dim();
    let reps: Vec<IntMatrix> = std::iter::once(IntMatrix::identity(d))
        .chain(gens.iter().cloned())
        .collect();
    let f = build_f_c(c)?;
    let pair = malcev_words(c)?;
    for (i, t) in reps.iter().enumerate() {
        for (j, u) in reps.iter().enumerate() {
            let m = endo_eval(&f, &[u.clone(), t.clone()])?;
            let Some(row) = (0..d).find(|&r| !vec_is_zero(m.row(r))) else {
                continue;
            };
            let x = GroupElement::new(t.clone(), basis_vector(d, row))?;
            let y = GroupElement::from_matrix(u.clone())?;
            if eval_word(&pair.alpha, &x, &y)? != eval_word(&pair.beta, &x, &y)? {
                return Ok(Some(LawFailure {
                    t_index: i,
                    u_index: j,
                    x,
                    y,
                }));
            }
            return Err(Error::Internal(format!(
                "criterion predicts a failure at ({i}, {j}) but direct evaluation agrees"
            )));
        }
    }
    Ok(None)
}
