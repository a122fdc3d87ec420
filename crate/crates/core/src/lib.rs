pub mod alternating;
pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod frobenius;
pub mod group;
pub mod ingest;
pub mod matgrp;
pub mod numtheory;
pub mod perm;
pub mod verify;
pub mod width;
pub mod report;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/structure-constants.md")]
    mod structure_constants {}
    #[doc = include_str!("../../../book/src/width.md")]
    mod width {}
    #[doc = include_str!("../../../book/src/alternating.md")]
    mod alternating {}
    #[doc = include_str!("../../../book/src/matrix-groups.md")]
    mod matrix_groups {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/reproduction.md")]
    mod reproduction {}
}
