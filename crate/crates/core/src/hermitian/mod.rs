//! Hyperhermitian metrics and the operators built from them: Dolbeault
//! operators, Hodge stars, adjoints, Laplacians, the Lee form and the
//! identities relating them.

mod classify;
mod identities;
mod laplacian;
mod lee;
mod operators;
mod structure;

pub use classify::{obata_on_form, sl_certificate, Classification, SlCertificate};
pub use identities::{
    AdjointComparison, BcTraceReport, BochnerReport, CoclosedReport, DeltaIdentity, HktIdentityResiduals,
};
pub use laplacian::{BottChernHarmonic, LaplacianKind};
pub use lee::LeeReport;
pub use operators::Dolbeault;
pub use structure::{compound, form_from_skew, skew_from_form, HermitianError, Hyperhermitian};
