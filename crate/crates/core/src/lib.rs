pub mod algebra;
pub mod chains;
pub mod complex;
pub mod lattice;
pub mod pfaffian;
pub mod verify;
