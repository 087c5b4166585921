pub mod enumerate;
pub mod error;
pub mod gentree;
pub mod gf;
pub mod perm;
pub mod recurrences;
pub mod series;
pub mod verify;
