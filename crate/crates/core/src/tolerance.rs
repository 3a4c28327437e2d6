/// Numerical gates used by the verification routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative error allowed in `||Zf|| = ||f||`.
    pub isometry_rel: f64,
    /// Per-coordinate error for reconstruction and intertwining.
    pub coord_abs: f64,
    /// Largest commutator entry accepted as commuting.
    pub commutator_abs: f64,
    /// Projections, orthogonality, isometry and self-adjointness.
    pub space_abs: f64,
    /// Largest fiber-solve residual accepted as a genuine range operator.
    pub field_residual_abs: f64,
    /// Relative gap allowed between two routes to a norm or trace.
    pub report_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            isometry_rel: 1e-10,
            coord_abs: 1e-10,
            commutator_abs: 1e-10,
            space_abs: 1e-9,
            field_residual_abs: 1e-8,
            report_rel: 1e-8,
        }
    }
}

impl Tolerances {
    /// Replaces every relative gate with `rel` and every absolute gate with
    /// `abs`, where given.
    pub fn with_overrides(mut self, rel: Option<f64>, abs: Option<f64>) -> Self {
        if let Some(r) = rel {
            self.isometry_rel = r;
            self.report_rel = r;
        }
        if let Some(a) = abs {
            self.coord_abs = a;
            self.commutator_abs = a;
            self.space_abs = a;
            self.field_residual_abs = a;
        }
        self
    }
}

/// `|a - b| / max(1, |a|, |b|)`.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}
