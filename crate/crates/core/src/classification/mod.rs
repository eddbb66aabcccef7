pub mod reflection;
pub mod schur;
pub mod sl;
pub mod spinor;

pub use reflection::{
    classify_bounded_hw, odd_reflect, reflect_chain, BoundedClassification, IdealClass,
    ReflectionStep, Typicality,
};
pub use schur::schur_degree;
pub use sl::{
    bounded_primitive_ideal_list, is_faithful_y, is_integrable_y, modules_isomorphic_by_support,
    mu_a, parity_ext_obstruction, schur_power_support_check, schur_power_weights,
    schur_support_matches, y_support, BoxedSupport, IdealDescriptor, IdealFamily, IsoVerdict,
    SchurPair,
};
pub use spinor::{decompose_even_odd, twin_of, ProductPart, SpinorOscillatorDescriptor, TwinSide};
