pub mod analyzer;
pub mod bundle;
pub mod error;
pub mod evaluator;
pub mod extract;
pub mod fact;
pub mod generator;
pub mod grammar;
pub mod matcher;
pub mod pack;
pub mod tokenize;
pub mod tree;
pub mod vocab;
