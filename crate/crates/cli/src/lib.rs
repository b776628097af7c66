//! Command-line front end: quiver files, renderings and subcommands.

pub mod app;
pub mod document;
pub mod render;

pub use app::run;
