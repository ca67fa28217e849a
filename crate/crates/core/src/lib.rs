pub mod syntax;
pub mod automata;
pub mod compile;
pub mod corpus;
pub mod hybrid;
pub mod procedures;
pub mod rewrite;
pub mod semantics;
