pub mod cache;
pub mod hecke;
pub mod oracle;
pub mod satake;
pub mod weyl;
