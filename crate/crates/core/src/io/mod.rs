//! File formats, instance generators and rendering.

pub mod fixtures;
pub mod gen;
pub mod instance;
pub mod svg;
pub mod tracefile;
