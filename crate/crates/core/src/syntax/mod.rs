pub mod ast;
pub mod kripke;
pub mod lasso;
pub mod parser;
pub mod render;
