//! Inverse-property classification of a quasigroup, read off its nuclei.
//!
//! Each classical inverse property is equivalent to membership of a shaped
//! element in one of the eighteen nuclei:
//!
//! * left inverse property `lambda(x) * (x * y) = y` — left-nucleus members
//!   for the swap of slots 1 and 2 whose last component is the identity;
//! * right inverse property `(y * x) * rho(x) = y` — right-nucleus members
//!   for the swap of slots 0 and 2 whose last component is the identity;
//! * weak inverse property `x * j(y * x) = j(y)` — right-nucleus members
//!   for the cycle 0 -> 1 -> 2 with equal free components;
//! * crossed inverse property `(x * y) * j(x) = y` — right-nucleus members
//!   for the cycle 0 -> 2 -> 1 whose last component is the identity;
//! * weak crossed inverse property `j(x * y) * y = j(x)` — left-nucleus
//!   members for the swap of slots 0 and 2 with equal free components.
//!
//! The witnesses returned are the permutation inverses of the member
//! components, so they satisfy the identities as written above. Each
//! detector has a `scan_*` counterpart that tests the identity directly
//! against every permutation; the two agree, which the test suite pins down
//! exhaustively on small orders.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::nuclei::{
    enumerate_autostrophisms, enumerate_autostrophisms_with, NucleiMap,
    AUTOSTROPHISM_ORDER_BOUND, ORACLE_ORDER_BOUND,
};
use crate::perm::{all_perms, Perm};
use crate::quasigroup::{NucleusKind, Quasigroup};
use crate::relations::{CheckStatus, RelationCheck};
use crate::s3::S3Elem;
use crate::strophism::{Isostrophism, IsotopyTriple};

/// Witnesses of the left inverse property `lambda(x) * (x * y) = y`.
/// Every witness is an involution.
pub fn find_lip(nuclei: &NucleiMap) -> Vec<Perm> {
    shaped_witnesses(nuclei, S3Elem::S23, NucleusKind::Left, |t| {
        t.get(2).is_identity().then(|| t.get(0).inverse())
    })
}

/// Witnesses of the right inverse property `(y * x) * rho(x) = y`.
/// Every witness is an involution.
pub fn find_rip(nuclei: &NucleiMap) -> Vec<Perm> {
    shaped_witnesses(nuclei, S3Elem::S13, NucleusKind::Right, |t| {
        t.get(2).is_identity().then(|| t.get(1).inverse())
    })
}

/// Witnesses of the weak inverse property `x * j(y * x) = j(y)`.
pub fn find_wip(nuclei: &NucleiMap) -> Vec<Perm> {
    shaped_witnesses(nuclei, S3Elem::S123, NucleusKind::Right, |t| {
        (t.get(1) == t.get(2)).then(|| t.get(1).inverse())
    })
}

/// Witnesses of the crossed inverse property `(x * y) * j(x) = y`.
pub fn find_ci(nuclei: &NucleiMap) -> Vec<Perm> {
    shaped_witnesses(nuclei, S3Elem::S132, NucleusKind::Right, |t| {
        t.get(2).is_identity().then(|| t.get(1).inverse())
    })
}

/// Witnesses of the weak crossed inverse property `j(x * y) * y = j(x)`.
pub fn find_wcip(nuclei: &NucleiMap) -> Vec<Perm> {
    shaped_witnesses(nuclei, S3Elem::S13, NucleusKind::Left, |t| {
        (t.get(0) == t.get(2)).then(|| t.get(0).inverse())
    })
}

fn shaped_witnesses(
    nuclei: &NucleiMap,
    sigma: S3Elem,
    kind: NucleusKind,
    extract: impl Fn(&IsotopyTriple) -> Option<Perm>,
) -> Vec<Perm> {
    let mut out: Vec<Perm> = nuclei[&(sigma, kind)]
        .members()
        .iter()
        .filter_map(|m| extract(&m.triple))
        .collect();
    out.sort();
    out
}

/// Direct scan for the left inverse property: all `lambda` with
/// `lambda(x) * (x * y) = y`.
pub fn scan_lip(q: &Quasigroup, bound: usize) -> Result<Vec<Perm>> {
    scan_unary(q, bound, |q, j, x, y| {
        q.get(j.apply(x), q.get(x, y)) == y
    })
}

/// Direct scan for the right inverse property: all `rho` with
/// `(y * x) * rho(x) = y`.
pub fn scan_rip(q: &Quasigroup, bound: usize) -> Result<Vec<Perm>> {
    scan_unary(q, bound, |q, j, x, y| {
        q.get(q.get(y, x), j.apply(x)) == y
    })
}

/// Direct scan for the weak inverse property: all `j` with
/// `x * j(y * x) = j(y)`.
pub fn scan_wip(q: &Quasigroup, bound: usize) -> Result<Vec<Perm>> {
    scan_unary(q, bound, |q, j, x, y| {
        q.get(x, j.apply(q.get(y, x))) == j.apply(y)
    })
}

/// Direct scan for the crossed inverse property: all `j` with
/// `(x * y) * j(x) = y`.
pub fn scan_ci(q: &Quasigroup, bound: usize) -> Result<Vec<Perm>> {
    scan_unary(q, bound, |q, j, x, y| {
        q.get(q.get(x, y), j.apply(x)) == y
    })
}

/// Direct scan for the weak crossed inverse property: all `j` with
/// `j(x * y) * y = j(x)`.
pub fn scan_wcip(q: &Quasigroup, bound: usize) -> Result<Vec<Perm>> {
    scan_unary(q, bound, |q, j, x, y| {
        q.get(j.apply(q.get(x, y)), y) == j.apply(x)
    })
}

fn scan_unary(
    q: &Quasigroup,
    bound: usize,
    holds: impl Fn(&Quasigroup, &Perm, usize, usize) -> bool,
) -> Result<Vec<Perm>> {
    let n = q.order();
    if n > bound {
        return Err(Error::OrderTooLarge { order: n, bound });
    }
    Ok(all_perms(n)
        .filter(|j| (0..n).all(|x| (0..n).all(|y| holds(q, j, x, y))))
        .collect())
}

/// Does `alpha(x * y) * beta(x) = gamma(y)` hold throughout?
pub fn is_abc_inverse(q: &Quasigroup, alpha: &Perm, beta: &Perm, gamma: &Perm) -> bool {
    let n = q.order();
    if alpha.degree() != n || beta.degree() != n || gamma.degree() != n {
        return false;
    }
    (0..n).all(|x| {
        (0..n).all(|y| q.get(alpha.apply(q.get(x, y)), beta.apply(x)) == gamma.apply(y))
    })
}

/// All triples `(alpha, beta, gamma)` with
/// `alpha(x * y) * beta(x) = gamma(y)`, via the autostrophisms whose slot
/// part is the cycle 0 -> 2 -> 1 (witnesses are the componentwise inverses
/// of the member triples).
pub fn find_inverse_triples(q: &Quasigroup, bound: usize) -> Result<Vec<IsotopyTriple>> {
    let n = q.order();
    if n > bound {
        return Err(Error::OrderTooLarge { order: n, bound });
    }
    let members = enumerate_autostrophisms(q, S3Elem::S132)?;
    let mut out: Vec<IsotopyTriple> = members
        .iter()
        .map(|m| m.triple.inverse())
        .collect();
    out.sort();
    Ok(out)
}

fn signed_power(j: &Perm, k: i64) -> Perm {
    if k >= 0 {
        j.power(k as usize)
    } else {
        j.inverse().power((-k) as usize)
    }
}

/// All `j` with `j^r(x * y) * j^s(x) = j^t(y)`, by scanning every
/// permutation of the carrier.
pub fn find_rst_witnesses(
    q: &Quasigroup,
    r: i64,
    s: i64,
    t: i64,
    bound: usize,
) -> Result<Vec<Perm>> {
    let n = q.order();
    if n > bound {
        return Err(Error::OrderTooLarge { order: n, bound });
    }
    Ok(all_perms(n)
        .filter(|j| {
            is_abc_inverse(
                q,
                &signed_power(j, r),
                &signed_power(j, s),
                &signed_power(j, t),
            )
        })
        .collect())
}

/// All `j` with `j^m(x * y) * j^(m+1)(x) = j^m(y)`.
pub fn find_m_inverse_witnesses(q: &Quasigroup, m: i64, bound: usize) -> Result<Vec<Perm>> {
    find_rst_witnesses(q, m, m + 1, m, bound)
}

/// Inverse-property classification of one quasigroup.
///
/// The five witness lists are complete (they are read off the nuclei);
/// `inverse_triples` is complete too but only computed up to the
/// enumeration bound, and is `None` above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseClassification {
    pub order: usize,
    pub lip: Vec<Perm>,
    pub rip: Vec<Perm>,
    pub wip: Vec<Perm>,
    pub ci: Vec<Perm>,
    pub wcip: Vec<Perm>,
    pub inverse_triples: Option<Vec<IsotopyTriple>>,
}

impl InverseClassification {
    /// Both one-sided inverse properties at once.
    pub fn has_ip(&self) -> bool {
        !self.lip.is_empty() && !self.rip.is_empty()
    }
}

/// Classify `q` from its nuclei.
pub fn classify(q: &Quasigroup, nuclei: &NucleiMap) -> InverseClassification {
    let inverse_triples = if q.order() <= AUTOSTROPHISM_ORDER_BOUND {
        Some(
            find_inverse_triples(q, AUTOSTROPHISM_ORDER_BOUND)
                .expect("order is within the bound"),
        )
    } else {
        None
    };
    InverseClassification {
        order: q.order(),
        lip: find_lip(nuclei),
        rip: find_rip(nuclei),
        wip: find_wip(nuclei),
        ci: find_ci(nuclei),
        wcip: find_wcip(nuclei),
        inverse_triples,
    }
}

// ---------------------------------------------------------------------------
// Structural claims tied to the inverse properties.
// ---------------------------------------------------------------------------

fn conjugate_members(members: &[Isostrophism], theta: &Isostrophism) -> Vec<Isostrophism> {
    let theta_inv = theta.inverse();
    let mut out: Vec<Isostrophism> = members
        .iter()
        .map(|m| {
            theta
                .compose(m)
                .and_then(|x| x.compose(&theta_inv))
                .expect("conjugation keeps the degree")
        })
        .collect();
    out.sort();
    out
}

fn check(checks: &mut Vec<RelationCheck>, description: String, ok: bool, detail: String) {
    checks.push(RelationCheck {
        family_id: 7,
        description,
        status: if ok {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed { detail }
        },
    });
}

fn check_normalizes(
    checks: &mut Vec<RelationCheck>,
    label: &str,
    theta: &Isostrophism,
    nuclei: &NucleiMap,
    sigma: S3Elem,
    kind: NucleusKind,
) {
    let target = nuclei[&(sigma, kind)].members();
    let conj = conjugate_members(target, theta);
    check(
        checks,
        format!("{label} normalizes N({sigma},{kind})"),
        conj == target,
        format!("conjugate set has {} members", conj.len()),
    );
}

/// The double mapping pattern of a two-sided component relation:
/// `left * p * right^-1` over a whole set.
fn mapped_perms(set: &BTreeSet<Perm>, left: &Perm, right: &Perm) -> BTreeSet<Perm> {
    set.iter()
        .map(|p| {
            left.compose(p)
                .and_then(|x| x.compose(&right.inverse()))
                .expect("components share a degree")
        })
        .collect()
}

fn diagonal(g: &Perm) -> Isostrophism {
    Isostrophism::isotopy(
        IsotopyTriple::new([g.clone(), g.clone(), g.clone()])
            .expect("equal degrees by construction"),
    )
}

/// Slot parts and nucleus kinds linked by the conjugation cycle of the
/// inverse-triple family: conjugating by a member with slot part
/// 0 -> 2 -> 1 walks left -> right -> middle -> left.
const CYCLE: [(S3Elem, NucleusKind); 3] = [
    (S3Elem::S13, NucleusKind::Left),
    (S3Elem::S23, NucleusKind::Right),
    (S3Elem::S12, NucleusKind::Middle),
];

/// Verify the structural consequences of the inverse properties `q` enjoys:
/// cube shapes and normalizer membership for inverse-triple members, the
/// three-step conjugation cycle, componentwise two-sided stabilizers, and
/// the witness-level set identities of each detected property.
///
/// Returns one check per instance, labeled with table id 7. Claims about a
/// property a quasigroup lacks are simply absent (the suite never reports
/// them as vacuously true).
pub fn verify_inverse_claims(q: &Quasigroup, nuclei: &NucleiMap) -> Result<Vec<RelationCheck>> {
    let mut checks = Vec::new();
    let n = q.order();

    // Pool of inverse-triple members: the three pinned-slot nuclei always,
    // the full slot-part class when enumeration is cheap.
    let mut pool: BTreeSet<Isostrophism> = BTreeSet::new();
    for kind in crate::quasigroup::ALL_KINDS {
        pool.extend(nuclei[&(S3Elem::S132, kind)].members().iter().cloned());
    }
    if n <= ORACLE_ORDER_BOUND {
        pool.extend(enumerate_autostrophisms_with(q, S3Elem::S132, ORACLE_ORDER_BOUND, 1)?);
    }

    for theta in &pool {
        let (a, b, c) = (
            theta.triple.get(0),
            theta.triple.get(1),
            theta.triple.get(2),
        );
        let cube = theta.power(3);
        let expected = Isostrophism::isotopy(
            IsotopyTriple::new([
                b.compose(c).and_then(|x| x.compose(a))?,
                c.compose(a).and_then(|x| x.compose(b))?,
                a.compose(b).and_then(|x| x.compose(c))?,
            ])?,
        );
        check(
            &mut checks,
            format!("cube of {theta} collapses to a principal isotopy"),
            cube == expected,
            format!("cube is {cube}"),
        );
        for &(sigma, kind) in &CYCLE {
            check_normalizes(&mut checks, "cube", &cube, nuclei, sigma, kind);
        }
        // One conjugation step walks the cycle.
        for i in 0..3 {
            let (from_sigma, from_kind) = CYCLE[i];
            let (to_sigma, to_kind) = CYCLE[(i + 1) % 3];
            let conj = conjugate_members(nuclei[&(from_sigma, from_kind)].members(), theta);
            check(
                &mut checks,
                format!(
                    "conj(N({from_sigma},{from_kind})) == N({to_sigma},{to_kind})"
                ),
                conj == nuclei[&(to_sigma, to_kind)].members(),
                format!("conjugate set has {} members", conj.len()),
            );
        }
        // Componentwise shadow of the cube's normalizing action: slot i of
        // a member maps through g_{sigma(i)} ... g_i^-1.
        let g = &cube.triple;
        for &(sigma, kind) in &CYCLE {
            let nucleus = &nuclei[&(sigma, kind)];
            for slot in [0, 1, 2] {
                if slot == kind.identity_slot() {
                    continue;
                }
                let set = nucleus.component_perms(slot);
                let image = mapped_perms(&set, g.get(sigma.apply(slot)), g.get(slot));
                check(
                    &mut checks,
                    format!(
                        "cube shadow fixes N({sigma},{kind})[{slot}]"
                    ),
                    image == set,
                    format!("image has {} permutations", image.len()),
                );
            }
        }
    }

    // Weak inverse property: the squared witness acts as a principal
    // normalizer, and stabilizes the middle pair componentwise.
    for j in find_wip(nuclei) {
        let j2 = j.compose(&j)?;
        let iso = diagonal(&j2);
        for &(sigma, kind) in &CYCLE {
            check_normalizes(&mut checks, "squared wip witness", &iso, nuclei, sigma, kind);
        }
        for slot in [0, 1] {
            let set = nuclei[&(S3Elem::S12, NucleusKind::Middle)].component_perms(slot);
            check(
                &mut checks,
                format!("squared wip witness stabilizes N(12,m)[{slot}]"),
                mapped_perms(&set, &j2, &j2) == set,
                "conjugated component set differs".into(),
            );
        }
    }

    // Crossed inverse property: the witness itself normalizes, and
    // stabilizes both the left and right pairs componentwise.
    for j in find_ci(nuclei) {
        let iso = diagonal(&j);
        for &(sigma, kind) in &CYCLE {
            check_normalizes(&mut checks, "ci witness", &iso, nuclei, sigma, kind);
        }
        for (sigma, kind, slot) in [
            (S3Elem::S13, NucleusKind::Left, 0),
            (S3Elem::S13, NucleusKind::Left, 2),
            (S3Elem::S23, NucleusKind::Right, 1),
            (S3Elem::S23, NucleusKind::Right, 2),
        ] {
            let set = nuclei[&(sigma, kind)].component_perms(slot);
            check(
                &mut checks,
                format!("ci witness stabilizes N({sigma},{kind})[{slot}]"),
                mapped_perms(&set, &j, &j) == set,
                "conjugated component set differs".into(),
            );
        }
    }

    // Left inverse property: witnesses are involutions and interlock the
    // right pair and the left/middle components.
    let lip = find_lip(nuclei);
    let rip = find_rip(nuclei);
    for lambda in &lip {
        check(
            &mut checks,
            format!("lip witness {lambda} is an involution"),
            lambda.compose(lambda)?.is_identity(),
            "square is not the identity".into(),
        );
        let r1 = nuclei[&(S3Elem::S23, NucleusKind::Right)].component_perms(1);
        let r2 = nuclei[&(S3Elem::S23, NucleusKind::Right)].component_perms(2);
        check(
            &mut checks,
            "lip: right-pair components coincide".into(),
            r1 == r2,
            "free components of N(23,r) differ".into(),
        );
        let l0 = nuclei[&(S3Elem::S13, NucleusKind::Left)].component_perms(0);
        let m0 = nuclei[&(S3Elem::S12, NucleusKind::Middle)].component_perms(0);
        let shifted: BTreeSet<Perm> = m0
            .iter()
            .map(|p| p.compose(lambda).expect("equal degrees"))
            .collect();
        check(
            &mut checks,
            "lip: N(13,l)[0] == N(12,m)[0] * lambda".into(),
            l0 == shifted,
            "sets differ".into(),
        );
        let l2 = nuclei[&(S3Elem::S13, NucleusKind::Left)].component_perms(2);
        let m1 = nuclei[&(S3Elem::S12, NucleusKind::Middle)].component_perms(1);
        let shifted: BTreeSet<Perm> = m1
            .iter()
            .map(|p| lambda.compose(p).expect("equal degrees"))
            .collect();
        check(
            &mut checks,
            "lip: N(13,l)[2] == lambda * N(12,m)[1]".into(),
            l2 == shifted,
            "sets differ".into(),
        );
    }

    // Right inverse property: mirror image of the above.
    for rho in &rip {
        check(
            &mut checks,
            format!("rip witness {rho} is an involution"),
            rho.compose(rho)?.is_identity(),
            "square is not the identity".into(),
        );
        let l0 = nuclei[&(S3Elem::S13, NucleusKind::Left)].component_perms(0);
        let l2 = nuclei[&(S3Elem::S13, NucleusKind::Left)].component_perms(2);
        check(
            &mut checks,
            "rip: left-pair components coincide".into(),
            l0 == l2,
            "free components of N(13,l) differ".into(),
        );
        let r1 = nuclei[&(S3Elem::S23, NucleusKind::Right)].component_perms(1);
        let m1 = nuclei[&(S3Elem::S12, NucleusKind::Middle)].component_perms(1);
        let shifted: BTreeSet<Perm> = m1
            .iter()
            .map(|p| p.compose(rho).expect("equal degrees"))
            .collect();
        check(
            &mut checks,
            "rip: N(23,r)[1] == N(12,m)[1] * rho".into(),
            r1 == shifted,
            "sets differ".into(),
        );
        let m0 = nuclei[&(S3Elem::S12, NucleusKind::Middle)].component_perms(0);
        let r2 = nuclei[&(S3Elem::S23, NucleusKind::Right)].component_perms(2);
        let shifted: BTreeSet<Perm> = r2
            .iter()
            .map(|p| rho.compose(p).expect("equal degrees"))
            .collect();
        check(
            &mut checks,
            "rip: N(12,m)[0] == rho * N(23,r)[2]".into(),
            m0 == shifted,
            "sets differ".into(),
        );
    }

    // Weak crossed inverse property: the witness links the left pair by
    // two-sided conjugation and shifts the right/middle components.
    for j in find_wcip(nuclei) {
        let l0 = nuclei[&(S3Elem::S13, NucleusKind::Left)].component_perms(0);
        let l2 = nuclei[&(S3Elem::S13, NucleusKind::Left)].component_perms(2);
        let conj: BTreeSet<Perm> = l2
            .iter()
            .map(|p| {
                j.inverse()
                    .compose(p)
                    .and_then(|x| x.compose(&j))
                    .expect("equal degrees")
            })
            .collect();
        check(
            &mut checks,
            "wcip: N(13,l)[0] == j^-1 * N(13,l)[2] * j".into(),
            l0 == conj,
            "sets differ".into(),
        );
        let r1 = nuclei[&(S3Elem::S23, NucleusKind::Right)].component_perms(1);
        let m1 = nuclei[&(S3Elem::S12, NucleusKind::Middle)].component_perms(1);
        let shifted: BTreeSet<Perm> = m1
            .iter()
            .map(|p| j.compose(p).expect("equal degrees"))
            .collect();
        check(
            &mut checks,
            "wcip: N(23,r)[1] == j * N(12,m)[1]".into(),
            r1 == shifted,
            "sets differ".into(),
        );
        let m0 = nuclei[&(S3Elem::S12, NucleusKind::Middle)].component_perms(0);
        let r2 = nuclei[&(S3Elem::S23, NucleusKind::Right)].component_perms(2);
        let shifted: BTreeSet<Perm> = r2
            .iter()
            .map(|p| p.compose(&j).expect("equal degrees"))
            .collect();
        check(
            &mut checks,
            "wcip: N(12,m)[0] == N(23,r)[2] * j".into(),
            m0 == shifted,
            "sets differ".into(),
        );
    }

    // Full inverse property: the middle pair is linked by conjugation.
    if !lip.is_empty() && !rip.is_empty() {
        for lambda in &lip {
            let m0 = nuclei[&(S3Elem::S12, NucleusKind::Middle)].component_perms(0);
            let m1 = nuclei[&(S3Elem::S12, NucleusKind::Middle)].component_perms(1);
            check(
                &mut checks,
                "ip: N(12,m)[0] == lambda * N(12,m)[1] * lambda^-1".into(),
                mapped_perms(&m1, lambda, lambda) == m0,
                "sets differ".into(),
            );
        }
    }

    // Single-swap and double-cycle families: any autostrophism whose slot
    // part fixes the pinned slot of a nucleus normalizes it, its square
    // normalizes the other two, and one conjugation hops between them.
    for (family, home, other_a, other_b) in [
        (S3Elem::S23, 1usize, 0usize, 2usize),
        (S3Elem::S13, 0, 1, 2),
        (S3Elem::S12, 2, 0, 1),
    ] {
        let mut family_pool: BTreeSet<Isostrophism> = BTreeSet::new();
        for kind in crate::quasigroup::ALL_KINDS {
            family_pool.extend(nuclei[&(family, kind)].members().iter().cloned());
        }
        for theta in &family_pool {
            let (hs, hk) = CYCLE[home];
            check_normalizes(&mut checks, "family member", theta, nuclei, hs, hk);
            let square = theta.power(2);
            for &i in &[other_a, other_b] {
                let (s, k) = CYCLE[i];
                check_normalizes(&mut checks, "family member squared", &square, nuclei, s, k);
            }
            let (fs, fk) = CYCLE[other_a];
            let (ts, tk) = CYCLE[other_b];
            let conj = conjugate_members(nuclei[&(fs, fk)].members(), theta);
            check(
                &mut checks,
                format!("family conj(N({fs},{fk})) == N({ts},{tk})"),
                conj == nuclei[&(ts, tk)].members(),
                format!("conjugate set has {} members", conj.len()),
            );
        }
    }

    // Repeated-power witnesses: a j with j^m(x*y) * j^(m+1)(x) = j^m(y)
    // contributes the diagonal of j^(3m+1) as a principal normalizer.
    if n <= ORACLE_ORDER_BOUND {
        for m in 0..=1 {
            for j in find_m_inverse_witnesses(q, m, ORACLE_ORDER_BOUND)? {
                let h = signed_power(&j, 3 * m + 1);
                let iso = diagonal(&h);
                for &(sigma, kind) in &CYCLE {
                    check_normalizes(
                        &mut checks,
                        "power-witness diagonal",
                        &iso,
                        nuclei,
                        sigma,
                        kind,
                    );
                }
            }
        }
    }

    Ok(checks)
}
