//! Orbits of the circumcenter map and the similarity they induce.

mod closed_form;
mod kernel;
mod orbit;
mod period;
mod shape;
mod similarity;

pub use closed_form::{
    calibrate_closed_forms, random_scalene_instance, triangle_cos_alpha_closed_form,
    triangle_ratio_closed_form, CalibrationRow, CandidateFit, ClosedFormCalibration,
    CALIBRATION_TOLERANCE, CONVENTION_CANDIDATES,
};
pub use kernel::{ScaleKernel, ScaleSample, KERNEL_RESIDUAL_TOLERANCE};
pub use orbit::{iterate, iterate_with, OrbitFailure, OrbitRecord};
pub use period::detect_period;
pub use shape::{descriptor_distance, shape_descriptor, ShapeDescriptor};
pub use similarity::{
    angle_distance, extract_similarity, repeat_similarity_check, similarity_between, wrap_angle,
    SimilarityParams, SIMILARITY_TOLERANCE,
};
