//! Unit groups of `F_q[T]/N`, Dirichlet characters and their subgroups.

mod character;
mod qz;
mod units;

pub use character::{
    genus_from_characters, residue_character, residue_character_on, residue_symbol, CharSubgroup, Character,
    GenusCharacters, MAX_LISTED,
};
pub use qz::QZ;
pub use units::{UnitGroup, MAX_GROUP_ORDER};
