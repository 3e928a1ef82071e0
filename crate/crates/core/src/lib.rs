pub mod bitset;
pub mod error;
pub mod int;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod order;
pub mod completion;
pub mod generators;
pub mod oracle;
pub mod io;
pub mod tables;
