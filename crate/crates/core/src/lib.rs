//! Tropical plane curves from unimodular triangulations, and a troplanarity
//! classifier for trivalent graphs of genus at most six.

pub mod lattice;

pub use lattice::{convex_hull, pt, GeometryError, InteriorHull, LatticePoint, LatticePolygon};
pub mod triangulation;

pub use triangulation::{SplitEdge, Triangle, Triangulation, TriangulationError};
pub mod graph;

pub use graph::{Graph, GraphError, Skeleton};
pub mod regularity;
pub mod classify;
pub mod corpus;
pub mod fixtures;
pub mod io;
pub mod obstruction;
pub mod oracle;
pub mod skeleton;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct BookIntroduction;
    #[doc = include_str!("../../../book/src/polygons.md")]
    pub struct BookPolygons;
    #[doc = include_str!("../../../book/src/triangulations.md")]
    pub struct BookTriangulations;
    #[doc = include_str!("../../../book/src/regularity.md")]
    pub struct BookRegularity;
    #[doc = include_str!("../../../book/src/skeletons.md")]
    pub struct BookSkeletons;
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub struct BookGraphs;
    #[doc = include_str!("../../../book/src/obstructions.md")]
    pub struct BookObstructions;
    #[doc = include_str!("../../../book/src/classification.md")]
    pub struct BookClassification;
    #[doc = include_str!("../../../book/src/census.md")]
    pub struct BookCensus;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct BookCli;
}
