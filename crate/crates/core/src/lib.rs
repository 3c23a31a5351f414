pub mod commands;
pub mod corpus;
pub mod defspace;
pub mod dualcomplex;
pub mod localalg;
pub mod polycore;
pub mod report;
pub mod smallres;
