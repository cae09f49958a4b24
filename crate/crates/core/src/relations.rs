//! Verification of the identities tying the eighteen nuclei of a quasigroup
//! to each other and to the nuclei of its isostrophic images.
//!
//! Each function recomputes both sides of a family of identities from
//! scratch and reports one [`RelationCheck`] per instance. The numeric
//! `family_id` is an opaque label used to group checks on the command line:
//! 2 for principal isotopes, 3 for inverses, 4 for products, 5 for general
//! isostrophic images, 6 for parastrophes.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::nuclei::{compute_all_nuclei, NucleiMap};
use crate::perm::Perm;
use crate::quasigroup::{NucleusKind, Quasigroup, ALL_KINDS};
use crate::s3::{S3Elem, ALL_S3};
use crate::strophism::Isostrophism;

/// Outcome of one relation instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    /// The identity's proviso is not met (an empty factor, or no members to
    /// test), so the instance holds trivially.
    Vacuous,
    Failed {
        detail: String,
    },
}

/// One verified instance of a relation, e.g. a single set equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub family_id: u8,
    pub description: String,
    pub status: CheckStatus,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        !matches!(self.status, CheckStatus::Failed { .. })
    }
}

/// Aggregate of all checks sharing one table id.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub family_id: u8,
    pub total: usize,
    pub passed: usize,
    pub vacuous: usize,
    pub failures: Vec<RelationCheck>,
}

/// Group checks by table id, ascending.
pub fn summarize(checks: &[RelationCheck]) -> Vec<VerificationReport> {
    let ids: BTreeSet<u8> = checks.iter().map(|c| c.family_id).collect();
    ids.into_iter()
        .map(|id| {
            let mut report = VerificationReport {
                family_id: id,
                total: 0,
                passed: 0,
                vacuous: 0,
                failures: Vec::new(),
            };
            for check in checks.iter().filter(|c| c.family_id == id) {
                report.total += 1;
                match &check.status {
                    CheckStatus::Passed => report.passed += 1,
                    CheckStatus::Vacuous => report.vacuous += 1,
                    CheckStatus::Failed { .. } => report.failures.push(check.clone()),
                }
            }
            report
        })
        .collect()
}

fn set_name(sigma: S3Elem, kind: NucleusKind) -> String {
    format!("N({sigma},{kind})")
}

fn comp_name(sigma: S3Elem, kind: NucleusKind, slot: usize) -> String {
    format!("N({sigma},{kind})[{slot}]")
}

fn render_members(members: &[Isostrophism]) -> String {
    let inner: Vec<String> = members.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn render_perms(perms: &BTreeSet<Perm>) -> String {
    let inner: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", inner.join("; "))
}

/// The slots of a member triple not pinned to the identity by `kind`.
fn free_slots(kind: NucleusKind) -> [usize; 2] {
    match kind.identity_slot() {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

fn member_set_check(
    family_id: u8,
    description: String,
    lhs: &[Isostrophism],
    rhs: &[Isostrophism],
) -> RelationCheck {
    let status = if lhs == rhs {
        CheckStatus::Passed
    } else {
        CheckStatus::Failed {
            detail: format!(
                "left side {} differs from right side {}",
                render_members(lhs),
                render_members(rhs)
            ),
        }
    };
    RelationCheck {
        family_id,
        description,
        status,
    }
}

fn perm_set_check(
    family_id: u8,
    description: String,
    lhs: &BTreeSet<Perm>,
    rhs: &BTreeSet<Perm>,
) -> RelationCheck {
    let status = if lhs == rhs {
        CheckStatus::Passed
    } else {
        CheckStatus::Failed {
            detail: format!(
                "left side {} differs from right side {}",
                render_perms(lhs),
                render_perms(rhs)
            ),
        }
    };
    RelationCheck {
        family_id,
        description,
        status,
    }
}

/// Inverse relations: the elementwise inverse of the nucleus for
/// `(sigma, kind)` is the nucleus for `(sigma^-1, kind')`, where the pinned
/// slot moves under `sigma`; componentwise, slot `j` lands in slot
/// `sigma(j)` with every permutation inverted.
pub fn verify_inverse_relations(nuclei: &NucleiMap) -> Vec<RelationCheck> {
    let mut checks = Vec::new();
    for sigma in ALL_S3 {
        for kind in ALL_KINDS {
            let s = kind.identity_slot();
            let target_kind = NucleusKind::of_identity_slot(sigma.apply(s));
            let source = &nuclei[&(sigma, kind)];
            let target = &nuclei[&(sigma.inverse(), target_kind)];
            let mut inverted: Vec<Isostrophism> =
                source.members().iter().map(|m| m.inverse()).collect();
            inverted.sort();
            checks.push(member_set_check(
                3,
                format!(
                    "inv({}) == {}",
                    set_name(sigma, kind),
                    set_name(sigma.inverse(), target_kind)
                ),
                &inverted,
                target.members(),
            ));
            for j in free_slots(kind) {
                let lhs: BTreeSet<Perm> = source
                    .component_perms(j)
                    .iter()
                    .map(|p| p.inverse())
                    .collect();
                let rhs = target.component_perms(sigma.apply(j));
                checks.push(perm_set_check(
                    3,
                    format!(
                        "inv({}) == {}",
                        comp_name(sigma, kind, j),
                        comp_name(sigma.inverse(), target_kind, sigma.apply(j))
                    ),
                    &lhs,
                    &rhs,
                ));
            }
        }
    }
    checks
}

/// Product relations: composing members of the nucleus for `(sigma, kind')`
/// with members of the nucleus for `(tau, kind)` lands in the nucleus for
/// `(sigma tau, kind)` — an inclusion that is an equality whenever both
/// factors are nonempty. `kind'` pins slot `tau(s)` where `kind` pins `s`.
pub fn verify_product_relations(nuclei: &NucleiMap) -> Vec<RelationCheck> {
    let mut checks = Vec::new();
    for sigma in ALL_S3 {
        for tau in ALL_S3 {
            for kind in ALL_KINDS {
                let s = kind.identity_slot();
                let left_kind = NucleusKind::of_identity_slot(tau.apply(s));
                let left = &nuclei[&(sigma, left_kind)];
                let right = &nuclei[&(tau, kind)];
                let target = &nuclei[&(sigma.compose(tau), kind)];
                let proviso = !left.is_empty() && !right.is_empty();

                let mut product = BTreeSet::new();
                for x in left.members() {
                    for y in right.members() {
                        product.insert(x.compose(y).expect("members share a degree"));
                    }
                }
                let product: Vec<Isostrophism> = product.into_iter().collect();
                let description = format!(
                    "{} * {} == {}",
                    set_name(sigma, left_kind),
                    set_name(tau, kind),
                    set_name(sigma.compose(tau), kind)
                );
                let status = if !product.iter().all(|m| target.contains(m)) {
                    CheckStatus::Failed {
                        detail: format!(
                            "product {} escapes {}",
                            render_members(&product),
                            render_members(target.members())
                        ),
                    }
                } else if !proviso {
                    CheckStatus::Vacuous
                } else if product != target.members() {
                    CheckStatus::Failed {
                        detail: format!(
                            "product {} only covers part of {}",
                            render_members(&product),
                            render_members(target.members())
                        ),
                    }
                } else {
                    CheckStatus::Passed
                };
                checks.push(RelationCheck {
                    family_id: 4,
                    description,
                    status,
                });

                for i in free_slots(kind) {
                    let a = left.component_perms(tau.apply(i));
                    let b = right.component_perms(i);
                    let c = target.component_perms(i);
                    let mut prod = BTreeSet::new();
                    for x in &a {
                        for y in &b {
                            prod.insert(x.compose(y).expect("components share a degree"));
                        }
                    }
                    let description = format!(
                        "{} * {} == {}",
                        comp_name(sigma, left_kind, tau.apply(i)),
                        comp_name(tau, kind, i),
                        comp_name(sigma.compose(tau), kind, i)
                    );
                    let status = if !prod.is_subset(&c) {
                        CheckStatus::Failed {
                            detail: format!(
                                "product {} escapes {}",
                                render_perms(&prod),
                                render_perms(&c)
                            ),
                        }
                    } else if !proviso {
                        CheckStatus::Vacuous
                    } else if prod != c {
                        CheckStatus::Failed {
                            detail: format!(
                                "product {} only covers part of {}",
                                render_perms(&prod),
                                render_perms(&c)
                            ),
                        }
                    } else {
                        CheckStatus::Passed
                    };
                    checks.push(RelationCheck {
                        family_id: 4,
                        description,
                        status,
                    });
                }
            }
        }
    }
    checks
}

/// Shared engine for the image relations. `id_of` labels each slot
/// permutation with its table id.
fn image_relation_checks(
    source: &Quasigroup,
    source_nuclei: &NucleiMap,
    theta: &Isostrophism,
    id_of: impl Fn(S3Elem) -> u8,
) -> Result<Vec<RelationCheck>> {
    let image = theta.apply(source)?;
    let image_nuclei = compute_all_nuclei(&image);
    let tau = theta.sigma;
    let theta_inv = theta.inverse();
    let mut checks = Vec::new();
    for sigma in ALL_S3 {
        let rho = tau.compose(sigma).compose(tau.inverse());
        for kind in ALL_KINDS {
            let s = kind.identity_slot();
            let v = NucleusKind::of_identity_slot(tau.apply(s));
            let family_id = id_of(sigma);
            let actual = &image_nuclei[&(sigma, kind)];
            let src = &source_nuclei[&(rho, v)];
            let gate = theta.triple.get(sigma.apply(s)) == theta.triple.get(s);
            if gate {
                // Full transport: the image nucleus is the theta-conjugate
                // of the matching source nucleus.
                let mut expected: Vec<Isostrophism> = src
                    .members()
                    .iter()
                    .map(|phi| {
                        theta_inv
                            .compose(phi)
                            .and_then(|m| m.compose(theta))
                            .expect("conjugation keeps the degree")
                    })
                    .collect();
                expected.sort();
                checks.push(member_set_check(
                    family_id,
                    format!(
                        "{}@image == conj({}@source)",
                        set_name(sigma, kind),
                        set_name(rho, v)
                    ),
                    actual.members(),
                    &expected,
                ));
                for i in free_slots(kind) {
                    let pre = theta.triple.get(sigma.apply(i)).inverse();
                    let post = theta.triple.get(i);
                    let expected: BTreeSet<Perm> = src
                        .component_perms(tau.apply(i))
                        .iter()
                        .map(|p| {
                            pre.compose(p)
                                .and_then(|x| x.compose(post))
                                .expect("components share a degree")
                        })
                        .collect();
                    checks.push(perm_set_check(
                        family_id,
                        format!(
                            "{}@image == conj({}@source)",
                            comp_name(sigma, kind, i),
                            comp_name(rho, v, tau.apply(i))
                        ),
                        &actual.component_perms(i),
                        &expected,
                    ));
                }
            } else {
                // Mismatched components of theta: conjugates of image
                // members never regain the pinned identity slot, so no
                // source nucleus determines this image nucleus.
                let mut status = if actual.is_empty() {
                    CheckStatus::Vacuous
                } else {
                    CheckStatus::Passed
                };
                for psi in actual.members() {
                    let conj = theta
                        .compose(psi)
                        .and_then(|m| m.compose(&theta_inv))
                        .expect("conjugation keeps the degree");
                    if !conj.is_autostrophism_of(source) {
                        status = CheckStatus::Failed {
                            detail: format!("conjugate {conj} does not fix the source"),
                        };
                        break;
                    }
                    if conj.triple.get(tau.apply(s)).is_identity() {
                        status = CheckStatus::Failed {
                            detail: format!(
                                "conjugate {conj} is pinned at slot {} despite the \
                                 component mismatch",
                                tau.apply(s)
                            ),
                        };
                        break;
                    }
                }
                checks.push(RelationCheck {
                    family_id,
                    description: format!(
                        "conj({}@image) stays outside nucleus shape",
                        set_name(sigma, kind)
                    ),
                    status,
                });
            }
        }
    }
    Ok(checks)
}

/// Image relations for one isostrophism: slot permutations fixing the pinned
/// slot transport the nucleus by conjugation (family 2 when the slot part is
/// trivial, family 5 otherwise); the rest are blocked unless two components
/// of `theta` coincide, and the blockage itself is checked.
pub fn verify_isostrophe_relations(
    source: &Quasigroup,
    source_nuclei: &NucleiMap,
    theta: &Isostrophism,
) -> Result<Vec<RelationCheck>> {
    image_relation_checks(source, source_nuclei, theta, |sigma| {
        if sigma == S3Elem::E {
            2
        } else {
            5
        }
    })
}

/// Image relations for a pure parastrophe: every slot permutation
/// transports, componentwise by plain slot relabeling.
pub fn verify_parastrophe_relations(
    source: &Quasigroup,
    source_nuclei: &NucleiMap,
    tau: S3Elem,
) -> Result<Vec<RelationCheck>> {
    let theta = Isostrophism::pure_parastrophe(tau, source.order());
    image_relation_checks(source, source_nuclei, &theta, |_| 6)
}
