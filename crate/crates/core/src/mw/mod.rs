//! Sections of jacobian elliptic surfaces: group law, intersections, fibre components,
//! heights and Neron-Severi bookkeeping.

pub mod component;
pub mod graph;
pub mod height;
pub mod intersect;
pub mod ns;
pub mod section;
pub mod tau;

pub use component::{component_at, correction, ComponentLabel};
pub use height::{height, height_pairing, HeightReport};
pub use intersect::{intersect, intersect_zero, meetings, meetings_local, zero_meetings, Meeting};
pub use ns::{ns_model, trivial_lattice, NsModel};
pub use section::{add_sections, multiply, negate, subtract, torsion_order, verify_section, Section};
pub use tau::{tau_check, TauReport};
