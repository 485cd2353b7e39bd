//! Hypercomplex triples, their action on forms, the adapted complex frame,
//! connections and special vector fields.

mod action;
mod connection;
mod fields;
mod frame;
mod triple;

pub use action::{act_on_form, endo_action_on_forms, endo_images};
pub use connection::{
    bismut_connection, levi_civita, obata_connection, torsion_totally_skew, BismutConnection, ConnectionError,
    ConnectionTable,
};
pub use fields::{
    check_parallel_obata_equivalences, contained_in, hyperholomorphic_10, hyperholomorphic_real, is_hyperholomorphic,
    is_parallel, killing_fields, killing_fields_10, parallel_fields, parallel_fields_10, same_span, ObataEquivalences,
};
pub use frame::{bigrade_projectors, AdaptedFrame};
pub use triple::{
    endo_from_pairs, HypercomplexError, HypercomplexTriple, HypercomplexValidation, NijenhuisFailure, Which,
};
