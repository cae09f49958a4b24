//! Nuclei of finite quasigroups under slot permutations.
//!
//! A quasigroup identity `x * y = z` has three argument slots; permuting
//! them and composing with bijections of the carrier gives isostrophisms.
//! For each of the six slot permutations and each of the three classical
//! nucleus positions this crate computes the corresponding nucleus — the
//! autostrophisms pinning one slot to the identity — in cubic time,
//! verifies the algebraic relations tying the eighteen nuclei of a
//! quasigroup and its isostrophic images together, and classifies
//! inverse properties from the nuclei alone.

pub mod error;
pub mod inverse;
pub mod latin;
pub mod nuclei;
pub mod perm;
pub mod quasigroup;
pub mod relations;
pub mod s3;
pub mod strophism;

pub use error::{Axis, Error, Result};
pub use inverse::{
    classify, find_ci, find_inverse_triples, find_lip, find_m_inverse_witnesses, find_rip,
    find_rst_witnesses, find_wcip, find_wip, is_abc_inverse, scan_ci, scan_lip, scan_rip,
    scan_wcip, scan_wip, verify_inverse_claims, InverseClassification,
};
pub use latin::{all_latin_squares, random_quasigroup};
pub use nuclei::{
    compute_all_nuclei, compute_all_nuclei_oracle, compute_nucleus, compute_nucleus_oracle,
    derive_all_nuclei, derive_nucleus, enumerate_autostrophisms, enumerate_autostrophisms_oracle,
    enumerate_autostrophisms_with, DerivedNucleus, NucleiMap, SigmaNucleus,
};
pub use perm::Perm;
pub use quasigroup::{NucleusKind, Quasigroup, ALL_KINDS};
pub use relations::{
    summarize, verify_inverse_relations, verify_isostrophe_relations,
    verify_parastrophe_relations, verify_product_relations, CheckStatus, RelationCheck,
    VerificationReport,
};
pub use s3::{S3Elem, ALL_S3};
pub use strophism::{Isostrophism, IsotopyTriple};
