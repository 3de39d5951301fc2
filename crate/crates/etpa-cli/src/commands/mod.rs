pub mod bounds;
pub mod conventions;
pub mod feasibility;
pub mod jsa;
pub mod qef;
