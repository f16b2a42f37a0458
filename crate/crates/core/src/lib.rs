pub mod cluster;
pub mod factoriality;
pub mod fields;
pub mod groebner;
pub mod poly;
