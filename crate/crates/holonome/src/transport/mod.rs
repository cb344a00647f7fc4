//! Paths in hyperplane complements, numerical parallel transport, and
//! braid-group monodromy representations with their relation and spectra
//! checks.

pub mod integrate;
pub mod monodromy;
pub mod path;

pub use integrate::{parallel_transport, StepMode, TransportResult};
pub use monodromy::{
    bmw_check, bmw_projector, default_words, hecke_check, kd_compare, monodromy_rep, spectrum,
    verify_braid_relations, BmwReport, BraidKind, Equivariance, KdReport, MonodromyRep,
    RelationReport,
};
pub use path::{
    braid_path_cartan, braid_path_config, cartan_arrangement, config_arrangement, PathSpec,
    Segment,
};
