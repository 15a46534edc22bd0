pub mod disk;
pub mod enumerate;
pub mod graph;
pub mod mahler;
pub mod measure;
pub mod pisot;
pub mod poly;
pub mod ratfunc;
pub mod realalg;
pub mod rooted;
pub mod salem;
pub mod sturm;
