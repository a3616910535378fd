//! RSK-style insertion for the partition monoid and its diagram
//! submonoids.
//!
//! * [`partitions`] and [`tableaux`]: integer partitions, standard tableaux,
//!   row insertion and jeu de taquin.
//! * [`diagrams`]: set partition diagrams, composition, families and
//!   enumeration.
//! * [`bijections`]: delete-insert on sequences and the insertion bijection
//!   from diagrams to pairs of vacillating tableaux, with inverses.
//! * [`growth`]: Fomin growth diagrams realising the same bijection.
//! * [`enumeration`]: counting sequences, Bratteli diagrams and exhaustive
//!   identity checks.
//! * [`cli`]: the `vacillating` command-line front end.

pub mod bijections;
pub mod cli;
pub mod diagrams;
pub mod enumeration;
pub mod error;
pub mod growth;
pub mod partitions;
pub mod tableaux;

pub use bijections::{di_insert, di_invert, vac_insert, vac_invert, VacillatingTableau};
pub use diagrams::{Family, SetPartitionDiagram};
pub use error::{Error, Result};
pub use partitions::IntegerPartition;
pub use tableaux::StandardTableau;
