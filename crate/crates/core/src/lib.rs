//! Pinching thresholds for mean curvature flow in spheres: validated
//! inequality checks, model geometries, and flow simulation.

pub mod error;
pub mod extrinsic_oracle;
pub mod flow_sim;
pub mod model_geometry;
pub mod rigor;
pub mod thresholds;

pub use error::{Error, Result};
pub use thresholds::{DeltaConvention, SphereContext, ThresholdProfile};
