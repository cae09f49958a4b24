use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::quasigroup::Quasigroup;
use crate::s3::S3Elem;

/// An ordered triple of permutations of equal degree, the isotopy part of an
/// isostrophism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotopyTriple {
    perms: [Perm; 3],
}

impl IsotopyTriple {
    pub fn new(perms: [Perm; 3]) -> Result<IsotopyTriple> {
        let n = perms[0].degree();
        for p in &perms[1..] {
            if p.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: p.degree(),
                });
            }
        }
        Ok(IsotopyTriple { perms })
    }

    pub fn identity(n: usize) -> IsotopyTriple {
        IsotopyTriple {
            perms: [Perm::identity(n), Perm::identity(n), Perm::identity(n)],
        }
    }

    pub fn degree(&self) -> usize {
        self.perms[0].degree()
    }

    pub fn get(&self, slot: usize) -> &Perm {
        &self.perms[slot]
    }

    pub fn perms(&self) -> &[Perm; 3] {
        &self.perms
    }

    pub fn is_identity(&self) -> bool {
        self.perms.iter().all(|p| p.is_identity())
    }

    /// Slot action: component `i` of the result is component `tau^-1(i)` of
    /// `self`, so the component in slot `i` moves to slot `tau(i)`.
    pub fn act(&self, tau: S3Elem) -> IsotopyTriple {
        let inv = tau.inverse();
        IsotopyTriple {
            perms: [
                self.perms[inv.apply(0)].clone(),
                self.perms[inv.apply(1)].clone(),
                self.perms[inv.apply(2)].clone(),
            ],
        }
    }

    /// Componentwise product: slot `i` of the result is `self_i * other_i`.
    pub fn compose(&self, other: &IsotopyTriple) -> Result<IsotopyTriple> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(IsotopyTriple {
            perms: [
                self.perms[0].compose_unchecked(&other.perms[0]),
                self.perms[1].compose_unchecked(&other.perms[1]),
                self.perms[2].compose_unchecked(&other.perms[2]),
            ],
        })
    }

    pub fn inverse(&self) -> IsotopyTriple {
        IsotopyTriple {
            perms: [
                self.perms[0].inverse(),
                self.perms[1].inverse(),
                self.perms[2].inverse(),
            ],
        }
    }
}

impl fmt::Display for IsotopyTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {} | {}",
            self.perms[0], self.perms[1], self.perms[2]
        )
    }
}

/// An isostrophism `(sigma, (r0, r1, r2))`: a slot permutation combined with
/// an isotopy triple.
///
/// Applied to a quasigroup it takes the `sigma`-parastrophe and then the
/// principal isotopy: the image has `x * y = r2^-1(A^sigma(r0 x, r1 y))`.
/// Equivalently, on defining triples it acts by
/// `w -> (r0^-1 w_sigma(0), r1^-1 w_sigma(1), r2^-1 w_sigma(2))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isostrophism {
    pub sigma: S3Elem,
    pub triple: IsotopyTriple,
}

impl Isostrophism {
    pub fn new(sigma: S3Elem, triple: IsotopyTriple) -> Isostrophism {
        Isostrophism { sigma, triple }
    }

    pub fn identity(n: usize) -> Isostrophism {
        Isostrophism {
            sigma: S3Elem::E,
            triple: IsotopyTriple::identity(n),
        }
    }

    /// The pure parastrophe `(tau, identity)`.
    pub fn pure_parastrophe(tau: S3Elem, n: usize) -> Isostrophism {
        Isostrophism {
            sigma: tau,
            triple: IsotopyTriple::identity(n),
        }
    }

    /// The principal isostrophism `(e, triple)`, i.e. a plain isotopy.
    pub fn isotopy(triple: IsotopyTriple) -> Isostrophism {
        Isostrophism {
            sigma: S3Elem::E,
            triple,
        }
    }

    pub fn degree(&self) -> usize {
        self.triple.degree()
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_identity() && self.triple.is_identity()
    }

    /// Image of a defining triple under this isostrophism.
    pub fn map_triple(&self, w: [usize; 3]) -> [usize; 3] {
        let mut v = [0; 3];
        for (i, out) in v.iter_mut().enumerate() {
            *out = self.triple.get(i).inverse().apply(w[self.sigma.apply(i)]);
        }
        v
    }

    /// The image quasigroup: parastrophe by `sigma`, then principal isotopy.
    pub fn apply(&self, q: &Quasigroup) -> Result<Quasigroup> {
        let n = q.order();
        if self.degree() != n {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: n,
            });
        }
        let p = q.parastrophe(self.sigma);
        let r0 = self.triple.get(0);
        let r1 = self.triple.get(1);
        let r2_inv = self.triple.get(2).inverse();
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| r2_inv.apply(p.get(r0.apply(x), r1.apply(y))))
                    .collect()
            })
            .collect();
        Quasigroup::from_rows(rows)
    }

    /// Product of isostrophisms: applying `self * other` equals applying
    /// `self` first and `other` second. Slot parts multiply, and the triple
    /// of the product has slot `i` equal to `self_{tau(i)} * other_i` where
    /// `tau` is the slot part of `other`.
    pub fn compose(&self, other: &Isostrophism) -> Result<Isostrophism> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let sigma = self.sigma.compose(other.sigma);
        let tau = other.sigma;
        let triple = IsotopyTriple::new([0, 1, 2].map(|i| {
            self.triple
                .get(tau.apply(i))
                .compose_unchecked(other.triple.get(i))
        }))?;
        Ok(Isostrophism { sigma, triple })
    }

    /// The conjugate `theta^-1 * self * theta`, with factors in the same
    /// application order as [`compose`](Isostrophism::compose), fused into a
    /// single pass per component.
    ///
    /// `theta_inv` must equal `theta.inverse()`; taking it as an argument
    /// lets callers conjugating many elements by one `theta` reuse it.
    pub fn conjugated_by(
        &self,
        theta: &Isostrophism,
        theta_inv: &Isostrophism,
    ) -> Result<Isostrophism> {
        if self.degree() != theta.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: theta.degree(),
            });
        }
        debug_assert_eq!(theta_inv.sigma, theta.sigma.inverse());
        let n = self.degree();
        let tau = theta.sigma;
        let rho = self.sigma;
        let sigma = tau.inverse().compose(rho).compose(tau);
        let triple = IsotopyTriple::new([0, 1, 2].map(|i| {
            let j = tau.apply(i);
            let w = theta_inv.triple.get(rho.apply(j));
            let phi = self.triple.get(j);
            let t = theta.triple.get(i);
            Perm::from_images_unchecked(
                (0..n).map(|x| w.apply(phi.apply(t.apply(x)))).collect(),
            )
        }))?;
        Ok(Isostrophism { sigma, triple })
    }

    /// Group inverse: slot `i` of the inverse triple is the permutation
    /// inverse of the component sitting in slot `sigma^-1(i)`.
    pub fn inverse(&self) -> Isostrophism {
        let inv_sigma = self.sigma.inverse();
        let triple = IsotopyTriple::new([
            self.triple.get(inv_sigma.apply(0)).inverse(),
            self.triple.get(inv_sigma.apply(1)).inverse(),
            self.triple.get(inv_sigma.apply(2)).inverse(),
        ])
        .expect("components of one triple share a degree");
        Isostrophism {
            sigma: inv_sigma,
            triple,
        }
    }

    /// `self^k` for `k >= 0` by repeated multiplication.
    pub fn power(&self, k: usize) -> Isostrophism {
        let mut acc = Isostrophism::identity(self.degree());
        for _ in 0..k {
            acc = acc.compose(self).expect("powers share a degree");
        }
        acc
    }

    /// Uniformly random isostrophism of the given degree.
    pub fn random(n: usize, rng: &mut impl rand::Rng) -> Isostrophism {
        use rand::seq::SliceRandom;
        let sigma = *crate::s3::ALL_S3.choose(rng).expect("six slot permutations");
        let mut triple = Vec::with_capacity(3);
        for _ in 0..3 {
            let mut images: Vec<usize> = (0..n).collect();
            images.shuffle(rng);
            triple.push(Perm::from_images(images).expect("shuffle keeps a bijection"));
        }
        Isostrophism {
            sigma,
            triple: IsotopyTriple::new([
                triple[0].clone(),
                triple[1].clone(),
                triple[2].clone(),
            ])
            .expect("equal degrees by construction"),
        }
    }

    /// Does this isostrophism fix the quasigroup?
    pub fn is_autostrophism_of(&self, q: &Quasigroup) -> bool {
        let n = q.order();
        if self.degree() != n {
            return false;
        }
        let p = q.parastrophe(self.sigma);
        let r0 = self.triple.get(0);
        let r1 = self.triple.get(1);
        let r2 = self.triple.get(2);
        for x in 0..n {
            for y in 0..n {
                if p.get(r0.apply(x), r1.apply(y)) != r2.apply(q.get(x, y)) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Isostrophism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.sigma, self.triple)
    }
}
