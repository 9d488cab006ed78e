//! Finite-window analysis of automorphisms of periodic cube complexes.

mod analysis;
mod lazy;
mod profile;
mod window;

pub use analysis::{
    classify, contact_orbit_series, default_radius, Analysis, ClassificationReport, ContactOrbitSeries,
    ProjectionBound, Skewering, SlopeSample, StabilizedWall, Verdict, WallRef, DEFAULT_NMAX,
};
pub use lazy::{
    automorphism, lazy_complex, Automorphism, FiniteComplex, Identity, Lattice, LazyComplex, Line, Point,
    Product, ProductMap, Staircase, Translation, Tree, TreeTranslation,
};
pub use profile::{
    essentiality_profile, growth_profile, hyperplane_essentiality_profile, EssentialityProfile, GrowthProfile,
    GrowthRow, HalfspaceDepths, HyperplaneProfile, WallShape,
};
pub use window::{Edge, Window, WINDOW_VERTEX_LIMIT};

/// Builds the window of the given radius around the basepoint.
pub fn window(complex: &dyn LazyComplex, radius: usize) -> crate::Result<Window> {
    Window::build(&mut window::WallNamer::new(complex), radius)
}
