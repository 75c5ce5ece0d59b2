pub mod corpora;
pub mod fabric_suites;
pub mod oracles;
