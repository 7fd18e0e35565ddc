pub mod cli;
pub mod drawing;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod graph;
pub mod io;
pub mod jsonfmt;
pub mod laplacian;
pub mod linalg;
pub mod ncut_k;
pub mod ncut_two;
pub mod oracle;
pub mod projective;
pub mod spectra;
