//! Combinatorial identities, curvature and distances between graphs.

mod curvature;
mod degrees;
mod distance;
mod isospectral;
mod paths;

pub use curvature::{curvature, curvature_operator_form, sphere_clique_counts, vertex_curvature, CurvatureReport};
pub use degrees::{handshake_check, p_degree, HandshakeReport, HandshakeRow};
pub use distance::{lidskii_check, simplex_distance, spectral_distance, DistanceReport, LidskiiReport};
pub use isospectral::{
    compare_block_spectra, compare_spectra, isospectral_check, lifting_search, IsospectralLevel, IsospectralVerdict, LiftingCase,
};
pub use paths::{closed_path_parity, count_paths, dirac_power, dirac_power_entry};

pub(crate) mod ratio_serde {
    use num_rational::Rational64;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn serialize_vec<S: Serializer>(v: &[Rational64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }
}
