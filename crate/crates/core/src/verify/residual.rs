use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{rng_from_seed, GnGroup};
use crate::error::{Error, Result};
use crate::grouplaw::GroupElement;

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|q: &u32| q * q <= p).all(|q| !p.is_multiple_of(q))
}

/// The entries that must vanish mod `p^k` for `g` to map to the identity:
/// those of `t - 1` and of `a`.
fn relevant_entries(g: &GroupElement) -> impl Iterator<Item = BigInt> + '_ {
    let d = g.dim();
    let t = g.matrix();
    (0..d)
        .flat_map(move |i| (0..d).map(move |j| (i, j)))
        .map(move |(i, j)| {
            let x = t.get(i, j);
            if i == j {
                x - 1
            } else {
                x.clone()
            }
        })
        .chain(g.vector().iter().cloned())
}

/// Whether the image of `g` in `(matrices mod p^k) ⋉ (Z/p^k)^d` is nontrivial.
pub fn image_is_nontrivial(g: &GroupElement, p: u32, k: u32) -> bool {
    let modulus = BigInt::from(p).pow(k);
    relevant_entries(g).any(|x| !x.is_multiple_of(&modulus))
}

fn valuation(x: &BigInt, p: &BigInt) -> u32 {
    let mut x = x.clone();
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Smallest `k >= 1` such that `g` survives in the finite `p`-group
/// `(matrices mod p^k) ⋉ (Z/p^k)^d`. This is one more than the least
/// `p`-adic valuation among the nonzero entries of `t - 1` and `a`.
pub fn separate_in_p_quotient(g: &GroupElement, p: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if g.is_identity() {
        return Err(Error::Domain("the identity has trivial image in every quotient".into()));
    }
    let pb = BigInt::from(p);
    let k = relevant_entries(g)
        .filter(|x| !x.is_zero())
        .map(|x| valuation(&x, &pb) + 1)
        .min()
        .ok_or_else(|| Error::Internal("non-identity element with no nonzero entry".into()))?;
    debug_assert!(image_is_nontrivial(g, p, k));
    debug_assert!(k == 1 || !image_is_nontrivial(g, p, k - 1));
    Ok(k)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorsionReport {
    pub samples: u32,
    /// Sampled `g` with `g^k = 1` for some probed `k`, recorded as `(sample, k)`.
    pub failures: Vec<(u32, u32)>,
}

impl TorsionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `g^k != 1` for `k ∈ {2, 3, 5}` on `samples` random nontrivial `g ∈ G_n`.
pub fn torsion_probe(group: &GnGroup, samples: u32, seed: u64, bound: u32) -> TorsionReport {
    let mut rng = rng_from_seed(seed);
    let mut report = TorsionReport {
        samples,
        failures: Vec::new(),
    };
    let mut taken = 0;
    while taken < samples {
        let g = group.sample_g(&mut rng, bound);
        if g.is_identity() {
            continue;
        }
        for k in [2u32, 3, 5] {
            if g.pow(k as i64).is_identity() {
                report.failures.push((taken, k));
            }
        }
        taken += 1;
    }
    report
}
