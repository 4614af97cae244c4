pub mod cli;
pub mod decide;
pub mod normalize;
pub mod random;
pub mod rewrite;
pub mod semantics;
pub mod syntax;
pub mod term;
