pub mod f2linalg;
pub mod f2poly;
pub mod partitions;
pub mod qseries;
pub mod asymptotics;
pub mod canonical;
pub mod classcount;
pub mod cli;
