use std::collections::BTreeMap;

use super::{rng_from_seed, GnGroup};
use crate::error::{check_dim, Result};
use crate::grouplaw::GroupElement;

/// A finitely supported element of the restricted direct product of the
/// `G_n`. Components are keyed by `n`; identity components are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RestrictedProductElement {
    components: BTreeMap<u32, GroupElement>,
}

impl RestrictedProductElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The element supported at `n` alone.
    pub fn single(n: u32, g: GroupElement) -> Self {
        let mut out = Self::default();
        if !g.is_identity() {
            out.components.insert(n, g);
        }
        out
    }

    pub fn from_components(components: impl IntoIterator<Item = (u32, GroupElement)>) -> Self {
        RestrictedProductElement {
            components: components
                .into_iter()
                .filter(|(_, g)| !g.is_identity())
                .collect(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.components.keys().copied()
    }

    pub fn component(&self, n: u32) -> Option<&GroupElement> {
        self.components.get(&n)
    }

    pub fn is_identity(&self) -> bool {
        self.components.is_empty()
    }

    /// Componentwise product over the union of supports.
    pub fn mul(&self, rhs: &RestrictedProductElement) -> Result<RestrictedProductElement> {
        let mut out = self.components.clone();
        for (&n, h) in &rhs.components {
            match out.remove(&n) {
                Some(g) => {
                    check_dim(g.dim(), h.dim())?;
                    let prod = g.mul(h)?;
                    if !prod.is_identity() {
                        out.insert(n, prod);
                    }
                }
                None => {
                    out.insert(n, h.clone());
                }
            }
        }
        Ok(RestrictedProductElement { components: out })
    }

    pub fn inverse(&self) -> RestrictedProductElement {
        RestrictedProductElement {
            components: self
                .components
                .iter()
                .map(|(&n, g)| (n, g.inverse()))
                .collect(),
        }
    }
}

/// Same as [`RestrictedProductElement::mul`].
pub fn product_mul(
    g: &RestrictedProductElement,
    h: &RestrictedProductElement,
) -> Result<RestrictedProductElement> {
    g.mul(h)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureReport {
    pub samples: u32,
    /// Sampled elements of `T_n` are recognised by the membership oracle and
    /// `t_1 t_2` (when `n >= 2`) is rejected.
    pub membership: bool,
    /// `g^{-1} s g ∈ T_n` for random `s ∈ T_n`, `g ∈ G_n`.
    pub normality: bool,
    /// `[s, s']` has identity matrix part for random `s, s' ∈ T_n`.
    pub commutator_closure: bool,
    /// Elements supported at different indices commute in the product.
    pub cross_component: bool,
    pub failures: Vec<String>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.membership && self.normality && self.commutator_closure && self.cross_component
    }
}

/// Samples `samples` cases per property and group. Randomness flows from `seed`.
pub fn t_membership_and_closure_check(
    groups: &[&GnGroup],
    samples: u32,
    seed: u64,
    bound: u32,
) -> Result<ClosureReport> {
    let mut rng = rng_from_seed(seed);
    let mut report = ClosureReport {
        samples,
        membership: true,
        normality: true,
        commutator_closure: true,
        cross_component: true,
        failures: Vec::new(),
    };

    for group in groups {
        let n = group.n();
        if group.generators().len() >= 2 {
            let prod = &group.generators()[0] * &group.generators()[1];
            if group.in_t(&GroupElement::from_matrix(prod)?) {
                report.membership = false;
                report.failures.push(format!("n={n}: t_1 t_2 accepted into T_n"));
            }
        }
        for _ in 0..samples {
            let s = group.sample_t(&mut rng, bound);
            if !group.in_t(&s) {
                report.membership = false;
                report.failures.push(format!("n={n}: sampled element of T_n rejected"));
            }

            let g = group.sample_g(&mut rng, bound);
            let conj = s.conjugate_by(&g)?;
            if !group.in_t(&conj) || conj.matrix() != s.matrix() {
                report.normality = false;
                report.failures.push(format!("n={n}: conjugate left T_n"));
            }

            let s2 = group.sample_t(&mut rng, bound);
            let comm = GroupElement::commutator(&s, &s2)?;
            if !comm.matrix().is_identity() || !group.in_t(&comm) {
                report.commutator_closure = false;
                report.failures.push(format!("n={n}: commutator outside A_n"));
            }
        }
    }

    for (i, gi) in groups.iter().enumerate() {
        for gj in &groups[i + 1..] {
            if gi.n() == gj.n() {
                continue;
            }
            for _ in 0..samples {
                let x = RestrictedProductElement::single(gi.n(), gi.sample_t(&mut rng, bound));
                let y = RestrictedProductElement::single(gj.n(), gj.sample_t(&mut rng, bound));
                if x.mul(&y)? != y.mul(&x)? {
                    report.cross_component = false;
                    report
                        .failures
                        .push(format!("components {} and {} do not commute", gi.n(), gj.n()));
                }
            }
        }
    }
    Ok(report)
}
