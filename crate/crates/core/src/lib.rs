pub mod cli;
pub mod exactlin;
pub mod groups;
mod json;
pub mod spectra;
pub mod twisted;
