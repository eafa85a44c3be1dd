//! Weierstrass models `y^2 = 4x^3 - g2 x - g3` over the affine t-line with
//! named rational parameters: the families behind the mixed-twist
//! construction, Kodaira fiber classification, two-torsion detection, and
//! exact verification of birational identities.

pub mod birational;
pub mod error;
pub mod kodaira;
pub mod mirror;
pub mod model;
pub mod special;
pub mod torsion;
pub mod twist;

pub use birational::{verify_birational, BirationalCheck};
pub use error::WeierstrassError;
pub use kodaira::{fiber_configuration, kodaira_type, FiberConfiguration, FiberType, KodairaFiber, Place, SurfaceClass};
pub use model::{build_family, BoundModel, Family, WeierstrassModel};
pub use special::{kummer_criterion, matsumoto_parameters, KummerCriterion};
pub use torsion::two_torsion_rank;
pub use twist::{mixed_twist, FunctionalInvariant, TwistMode};
