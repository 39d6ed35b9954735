//! Milnor concordance data for oriented, ordered links.
//!
//! The pipeline runs `diagram` → `wirtinger` → `milnor` → `basing`:
//! a link diagram is turned into a Wirtinger presentation with meridians and
//! preferred longitudes, the longitudes are rewritten as truncated Magnus
//! series in the meridians, and the resulting μ / Δ / μ̄ table answers
//! basing questions relative to the unlink or to another link.
//!
//! `words`, `magnus` and `hall` provide the free-group machinery; `hall` is
//! an independent check on `magnus` via the collection process. `gseries`
//! handles lower central series of finite-index subgroups Γ = ker(F → G).

pub mod basing;
pub mod diagram;
pub mod error;
pub mod gseries;
pub mod hall;
pub mod limits;
pub mod magnus;
pub mod milnor;
pub mod wirtinger;
pub mod words;

pub use basing::{
    free_quotient_depth, max_basing_rel_unlink, mu_n_equal, relative_max_basing, BasingReport,
    Bound,
};
pub use diagram::{Crossing, LinkDiagram, LinkingMatrix};
pub use error::{Error, Result};
pub use gseries::{FiniteQuotientMap, SchreierData};
pub use hall::{HallBasis, NilpotentCoordinates};
pub use magnus::{LcsDegree, MagnusSeries, Monomial};
pub use milnor::{MilnorEntry, MilnorTable, MultiIndex, ReducedLongitudes};
pub use wirtinger::GroupPresentation;
pub use words::{FreeWord, Letter};
