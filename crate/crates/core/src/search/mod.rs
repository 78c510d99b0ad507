//! Exhaustive search for shortest presentations of small cyclic groups.

mod canonical;
mod enumerate;
mod exact;
mod quotient;

pub use canonical::{canonical_form, CanonicalPresentation};
pub use enumerate::{count_presentations, enumerate_presentations, Budget};
pub use exact::{exact_cyclic_complexity, SearchOutcome, SearchParams, SearchReport, SearchStats};
pub use quotient::{find_nonabelian_image, PermutationImage};
