pub mod exactalg;
pub mod grouprep;
pub mod cones;
pub mod germ;
pub mod dgla;
pub mod mhs;
pub mod arrangements;
pub mod cli;
