//! Ghost series for reducible mod-p representations and the Newton polygons
//! of their evaluations at points of the weight disk.
//!
//! Everything is exact: valuations are big rationals and an evaluation point
//! `w⋆` is modeled by its distances to the ghost zeros `w_k`.
//!
//! ```
//! use ghost_slopes::{chars::{EpsilonChar, WStarProfile}, dims::ModuleSpec, newton::series_polygon};
//!
//! let eps = EpsilonChar::new(7, 0, 4).unwrap();
//! let spec = ModuleSpec::parse(eps, "s:3").unwrap();
//! let w = WStarProfile::parse(&eps, "origin:t=1/2").unwrap();
//! let np = series_polygon(&spec, &w, 10, false);
//! assert_eq!(np.slope_list()[0].to_string(), "3/2");
//! ```

pub mod chars;
pub mod cli;
pub mod delta;
pub mod dims;
pub mod error;
pub mod ghost;
pub mod newton;
pub mod padic;
pub mod zigzag;

pub use error::{Error, Result};
