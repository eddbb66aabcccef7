//! Weight modules: supports, action, the induced-module oracle, filtrations
//! and block counts.

pub mod blocks;
pub mod class;
pub mod filtration;
pub mod module;
pub mod oracle;

pub use blocks::{count_simples_in_block, is_isomorphic, y_is_isomorphic, SimpleCount};
pub use class::{ClassDescriptor, Domain, Functional};
pub use filtration::{condensation_filtration, ActionGraph};
pub use module::{
    act, is_preferred, realize, restrict_to_sublattice, socle_class, support_box,
    verify_module_relations, ExplicitModule, ModuleKind, RelationReport, WeightBox, WeightVector,
};
pub use oracle::induced_oracle;
