//! Descriptive and strong proximity on finite point sets, antipodal matching
//! over sphere samples, strings and worldsheets, and the surface pipelines
//! built on them.
//!
//! * [`geometry`]: points, labeled regions, hyperplanes, strings, worldsheets
//!   and antipodally symmetric sphere grids.
//! * [`proximity`]: feature maps, the descriptive Lodato, strong and
//!   descriptive strong relations, and seeded axiom checking.
//! * [`engine`]: region descriptors, antipodal search, fixed points on the
//!   unit ball and string shape descriptors.
//! * [`surfaces`]: sheet to cylinder to ring torus maps, torus measures, the
//!   EEG twist lift and quad meshes.
//! * [`io`] and [`cli`]: CSV input, OBJ and JSON output, the `nearness` binary.
//!
//! ```
//! use nearness::geometry::{Point, Region};
//! use nearness::proximity::{dnear, sn, Feature, FeatureMap};
//!
//! let a = Region::open(vec![Point::from_slice(&[1.0, 0.0])]).unwrap();
//! let b = Region::open(vec![Point::from_slice(&[-1.0, 0.0])]).unwrap();
//! assert!(dnear(&a, &b, &FeatureMap::exact(Feature::EvenCoords)).unwrap());
//! assert!(!sn(&a, &b));
//! ```

pub mod cli;
pub mod engine;
pub mod geometry;
pub mod io;
pub mod proximity;
pub mod surfaces;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/proximity.md")]
    mod proximity {}
    #[doc = include_str!("../../../book/src/antipodes.md")]
    mod antipodes {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/fixed-points.md")]
    mod fixed_points {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
