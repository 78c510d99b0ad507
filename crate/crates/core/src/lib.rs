//! Presentation complexity of finite groups: words and presentations,
//! Abelianization lower bounds, short presentations of cyclic, Abelian and
//! Milnor groups, coset enumeration, exhaustive minimal-presentation search,
//! and continued-fraction bounds for lens spaces and Seifert manifolds.

pub mod abelian;
pub mod bounds;
pub mod contfrac;
pub mod coset;
pub mod error;
pub mod families;
pub mod parse;
pub mod presentation;
pub mod search;
pub mod word;

pub use abelian::{smith_normal_form, AbelianInvariants, RelationMatrix};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use parse::parse_presentation;
pub use presentation::Presentation;
pub use word::{Letter, Word};
