pub mod cyclotomic;
pub mod group;
pub mod chartab;
pub mod repn;
pub mod clifford;
pub mod catalog;
pub mod oracle;
