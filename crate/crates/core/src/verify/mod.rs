//! Assembly of `G_n = B_n ⋉ A_n` and the certificate pipeline.
//!
//! [`build_gn`] runs every finite check on one `(c, n)` and records the
//! outcomes in a [`GnCertificate`]; the submodules hold the failure-witness
//! search, finitely supported elements of the restricted product, and the
//! residual-`p` separation probe.

mod certificate;
mod product;
mod residual;
mod witness;

pub use certificate::{CheckResult, GnCertificate};
pub use product::{
    product_mul, t_membership_and_closure_check, ClosureReport, RestrictedProductElement,
};
pub use residual::{image_is_nontrivial, separate_in_p_quotient, torsion_probe, TorsionReport};
pub use witness::{find_law_failure, find_mn_failure_witness, LawFailure, MnWitness};

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grouplaw::{check_malcev, endo_eval, nilpotency_class, GroupElement};
use crate::ideal::{check_b_subset_c, check_congruence, check_m_power_subset, degree_warning, MIN_DEGREE};
use crate::matrix::IntMatrix;
use crate::poly::{build_f_c, Monomial};
use crate::quotient::{is_unitriangular_01, verify_commuting_family, QuotientAlgebra};

/// Default bound `B` for random vector entries in `[-B, B]`.
pub const DEFAULT_BOUND: u32 = 9;

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The group `G_n` as its generating matrices `t_1..t_n` over the quotient algebra.
#[derive(Clone, Debug)]
pub struct GnGroup {
    algebra: QuotientAlgebra,
    gens: Vec<IntMatrix>,
    gens_inv: Vec<IntMatrix>,
}

impl GnGroup {
    /// Strict construction, `n >= c >= 3`.
    pub fn new(n: u32, c: u32) -> Result<Self> {
        Self::from_algebra(QuotientAlgebra::build(n, c)?)
    }

    pub fn from_algebra(algebra: QuotientAlgebra) -> Result<Self> {
        let gens = algebra.generators();
        let gens_inv = gens
            .iter()
            .map(IntMatrix::inverse_unitriangular)
            .collect::<Result<Vec<_>>>()?;
        Ok(GnGroup {
            algebra,
            gens,
            gens_inv,
        })
    }

    pub fn n(&self) -> u32 {
        self.algebra.n()
    }

    pub fn c(&self) -> u32 {
        self.algebra.c()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &QuotientAlgebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.gens
    }

    /// `{1, t_1, ..., t_n}`, the coset representatives of `T_n`.
    pub fn coset_reps(&self) -> Vec<IntMatrix> {
        std::iter::once(IntMatrix::identity(self.dim()))
            .chain(self.gens.iter().cloned())
            .collect()
    }

    /// `(t_1 ... t_n)^e`.
    pub fn diagonal_power(&self, e: u32) -> IntMatrix {
        let prod = self
            .gens
            .iter()
            .fold(IntMatrix::identity(self.dim()), |acc, t| &acc * t);
        prod.pow(e)
    }

    /// Membership in `T_n = t_1 A ∪ ... ∪ t_n A ∪ A`: the matrix part is the
    /// identity or one of the generators.
    pub fn in_t(&self, g: &GroupElement) -> bool {
        g.matrix().is_identity() || self.gens.iter().any(|t| t == g.matrix())
    }

    pub fn random_vector<R: Rng>(&self, rng: &mut R, bound: u32) -> Vec<BigInt> {
        let b = bound as i64;
        (0..self.dim()).map(|_| BigInt::from(rng.gen_range(-b..=b))).collect()
    }

    /// Uniform coset representative from `{1, t_1..t_n}` and a vector with
    /// entries uniform in `[-bound, bound]`.
    pub fn sample_t<R: Rng>(&self, rng: &mut R, bound: u32) -> GroupElement {
        let k = rng.gen_range(0..=self.gens.len());
        let t = if k == 0 {
            IntMatrix::identity(self.dim())
        } else {
            self.gens[k - 1].clone()
        };
        GroupElement::new(t, self.random_vector(rng, bound)).expect("generators are unitriangular")
    }

    /// Matrix part `prod t_i^{k_i}` with `k_i` in `[-2, 2]`, random vector part.
    pub fn sample_g<R: Rng>(&self, rng: &mut R, bound: u32) -> GroupElement {
        let mut t = IntMatrix::identity(self.dim());
        for (g, g_inv) in self.gens.iter().zip(&self.gens_inv) {
            let k: i32 = rng.gen_range(-2..=2);
            let factor = if k < 0 { g_inv } else { g };
            for _ in 0..k.unsigned_abs() {
                t = &t * factor;
            }
        }
        GroupElement::new(t, self.random_vector(rng, bound)).expect("products of unitriangular matrices")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnParams {
    pub c: u32,
    pub n: u32,
    pub e_list: Vec<u32>,
    pub trials: u32,
    pub seed: u64,
    pub bound: u32,
    /// Accept `c < 3` (negative controls); the pipeline then records failures
    /// instead of refusing to run.
    pub allow_degenerate: bool,
}

impl GnParams {
    pub fn new(c: u32, n: u32, e_list: Vec<u32>) -> Self {
        GnParams {
            c,
            n,
            e_list,
            trials: 100,
            seed: 0,
            bound: DEFAULT_BOUND,
            allow_degenerate: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.c == 0 || self.n == 0 {
            return Err(Error::Domain("c and n must be positive".into()));
        }
        if !self.allow_degenerate && self.c < MIN_DEGREE {
            return Err(Error::Domain(format!("c must be at least {MIN_DEGREE}, got {}", self.c)));
        }
        if self.n < self.c {
            return Err(Error::Domain(format!("n must be at least c (n={}, c={})", self.n, self.c)));
        }
        if self.trials == 0 {
            return Err(Error::Domain("trials must be at least 1".into()));
        }
        if self.e_list.contains(&0) {
            return Err(Error::Domain("every e must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalcevOnTReport {
    /// `f_c(t, u) = 0` for every ordered pair of coset representatives.
    pub exhaustive: bool,
    /// First pair `(t, u)` (indices into `{1, t_1..t_n}`) with `f_c(t, u) != 0`.
    pub exhaustive_failure: Option<(usize, usize)>,
    pub trials: u32,
    pub passes: u32,
    pub seed: u64,
    pub bound: u32,
    pub counterexample: Option<(GroupElement, GroupElement)>,
}

impl MalcevOnTReport {
    pub fn passed(&self) -> bool {
        self.exhaustive && self.passes == self.trials
    }
}

/// Checks that `T_n` satisfies `M_c`: exhaustively through the endomorphism
/// criterion, and independently on `trials` random substitutions from `T_n`.
pub fn malcev_on_t(group: &GnGroup, c: u32, trials: u32, seed: u64, bound: u32) -> Result<MalcevOnTReport> {
    let f = build_f_c(c)?;
    let reps = group.coset_reps();
    let mut exhaustive_failure = None;
    'outer: for (i, t) in reps.iter().enumerate() {
        for (j, u) in reps.iter().enumerate() {
            if !endo_eval(&f, &[t.clone(), u.clone()])?.is_zero() {
                exhaustive_failure = Some((i, j));
                break 'outer;
            }
        }
    }

    let mut rng = rng_from_seed(seed);
    let mut passes = 0;
    let mut counterexample = None;
    for _ in 0..trials {
        let x = group.sample_t(&mut rng, bound);
        let y = group.sample_t(&mut rng, bound);
        if check_malcev(c, &x, &y)? {
            passes += 1;
        } else if counterexample.is_none() {
            counterexample = Some((x, y));
        }
    }
    Ok(MalcevOnTReport {
        exhaustive: exhaustive_failure.is_none(),
        exhaustive_failure,
        trials,
        passes,
        seed,
        bound,
        counterexample,
    })
}

/// `(t_i - 1)^c = 0` for every `i`.
pub fn condition_i(gens: &[IntMatrix], c: u32) -> Option<usize> {
    gens.iter().position(|t| !t.minus_identity().pow(c).is_zero())
}

/// `(t_i - 1)(t_i t_j - 1)^{c-1} = 0` for every `i != j`.
pub fn condition_ii(gens: &[IntMatrix], c: u32) -> Option<(usize, usize)> {
    for (i, ti) in gens.iter().enumerate() {
        for (j, tj) in gens.iter().enumerate() {
            if i == j {
                continue;
            }
            let lhs = &ti.minus_identity() * &(ti * tj).minus_identity().pow(c.saturating_sub(1));
            if !lhs.is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// `(t_1^e ... t_n^e - 1)^n`.
pub fn condition_iii_matrix(group: &GnGroup, e: u32) -> IntMatrix {
    group.diagonal_power(e).minus_identity().pow(group.n())
}

/// Runs the full pipeline for one `(c, n)`.
pub fn build_gn(params: &GnParams) -> Result<GnCertificate> {
    params.validate()?;
    let (c, n) = (params.c, params.n);
    let algebra = if params.allow_degenerate {
        QuotientAlgebra::build_unchecked(n, c)?
    } else {
        QuotientAlgebra::build(n, c)?
    };
    let group = GnGroup::from_algebra(algebra)?;
    let d = group.dim();
    let gens = group.generators();
    let mut checks = Vec::new();

    if let Some(w) = degree_warning(c) {
        checks.push(CheckResult::new("parameters", false, w));
    }

    let bad_shape = gens.iter().position(|t| !is_unitriangular_01(t));
    checks.push(CheckResult::new(
        "unitriangular_01",
        bad_shape.is_none(),
        match bad_shape {
            None => format!("all {n} generators are upper unitriangular with 0/1 entries (d={d})"),
            Some(i) => format!("t_{} is not 0/1 upper unitriangular", i + 1),
        },
    ));

    let commuting = verify_commuting_family(gens)?;
    checks.push(CheckResult::new(
        "commuting",
        commuting,
        format!("{} pairs checked", n * (n - 1) / 2),
    ));

    let cond_i = condition_i(gens, c);
    checks.push(CheckResult::new(
        "cond_i",
        cond_i.is_none(),
        match cond_i {
            None => format!("(t_i - 1)^{c} = 0 for i = 1..{n}"),
            Some(i) => format!("(t_{} - 1)^{c} != 0", i + 1),
        },
    ));

    let cond_ii = condition_ii(gens, c);
    checks.push(CheckResult::new(
        "cond_ii",
        cond_ii.is_none(),
        match cond_ii {
            None => format!("(t_i - 1)(t_i t_j - 1)^{} = 0 for all i != j", c - 1),
            Some((i, j)) => format!("(t_{} - 1)(t_{} t_{} - 1)^{} != 0", i + 1, i + 1, j + 1, c - 1),
        },
    ));

    let top = group
        .algebra()
        .position(&Monomial::new(vec![1; n as usize]));
    let mut cond_iii_ok = Vec::new();
    for &e in &params.e_list {
        let m = condition_iii_matrix(&group, e);
        let ok = !m.is_zero();
        cond_iii_ok.push(ok);
        let entry = top.map_or_else(|| "n/a".to_string(), |k| m.get(0, k).to_string());
        checks.push(CheckResult::new(
            &format!("cond_iii[e={e}]"),
            ok,
            format!(
                "(t_1^{e}...t_{n}^{e} - 1)^{n} {} 0; entry (1, X1...X{n}) = {entry}",
                if ok { "!=" } else { "=" },
            ),
        ));
    }

    let b_in_c = check_b_subset_c(n, c)?;
    checks.push(CheckResult::new(
        "b_subset_c",
        b_in_c.holds,
        match &b_in_c.witness {
            None => "every generator of b reduces to 0 modulo c".to_string(),
            Some((g, m)) => format!("generator {g} leaves monomial {m} modulo c"),
        },
    ));

    let m_power = check_m_power_subset(n, c)?;
    checks.push(CheckResult::new(
        "m_power",
        m_power,
        format!("every monomial of degree {} lies in c", n + 1),
    ));

    for &e in &params.e_list {
        let r = check_congruence(n, c, e)?;
        checks.push(CheckResult::new(
            &format!("congruence[e={e}]"),
            r.holds,
            format!("coefficient of X1...X{n} is {} (expected e^n n! = {})", r.coefficient, r.expected),
        ));
    }

    let on_t = malcev_on_t(&group, c, params.trials, params.seed, params.bound)?;
    checks.push(CheckResult::new(
        "malcev_on_T",
        on_t.passed(),
        format!(
            "exhaustive f_{c} criterion over {} pairs: {}; random substitutions: {}/{} (seed {}, bound {})",
            (n + 1) * (n + 1),
            if on_t.exhaustive { "pass" } else { "fail" },
            on_t.passes,
            on_t.trials,
            on_t.seed,
            on_t.bound
        ),
    ));

    let conditions_hold = cond_i.is_none() && cond_ii.is_none();
    checks.push(CheckResult::new(
        "criterion_agreement",
        conditions_hold == on_t.exhaustive,
        format!("conditions (i)+(ii): {conditions_hold}; exhaustive criterion: {}", on_t.exhaustive),
    ));

    let class = nilpotency_class(gens, d);
    checks.push(CheckResult::new(
        "nilpotency_class",
        class <= d,
        format!("class {class} (bound d = {d})"),
    ));

    let mut witnesses = Vec::new();
    for (&e, &ok) in params.e_list.iter().zip(&cond_iii_ok) {
        if !ok {
            continue;
        }
        match find_mn_failure_witness(&group, e) {
            Ok(w) => {
                checks.push(CheckResult::new(
                    &format!("witness[e={e}]"),
                    true,
                    format!(
                        "M_{n} fails on (t_1...t_{n})^{e} A_{n}: a = basis vector of the monomial {}, b = 0",
                        group.algebra().basis()[w.row]
                    ),
                ));
                witnesses.push(w);
            }
            Err(err) => checks.push(CheckResult::new(&format!("witness[e={e}]"), false, err.to_string())),
        }
    }

    Ok(GnCertificate {
        params: params.clone(),
        group,
        checks,
        witnesses,
        nilpotency_class: class,
        malcev_on_t: on_t,
    })
}
