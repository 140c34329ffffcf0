/// Numerical thresholds used for equality and classification decisions.
///
/// `eps` guards equalities and non-negativity assertions on sizes in bits;
/// `eps_det` classifies determinism (`H(a|b) <= eps_det`) and independence
/// (`I(a;b) <= eps_det`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
    pub eps_det: f64,
}

pub const DEFAULT_EPS: f64 = 1e-9;

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps: DEFAULT_EPS,
            eps_det: DEFAULT_EPS,
        }
    }
}

impl Tolerance {
    pub fn new(eps: f64, eps_det: f64) -> Self {
        Tolerance { eps, eps_det }
    }

    /// Defaults overridden by `INFATOM_EPS` and `INFATOM_EPS_DET` when set and parseable.
    pub fn from_env() -> Self {
        let mut tol = Tolerance::default();
        if let Some(v) = read_env("INFATOM_EPS") {
            tol.eps = v;
        }
        if let Some(v) = read_env("INFATOM_EPS_DET") {
            tol.eps_det = v;
        }
        tol
    }
}

fn read_env(key: &str) -> Option<f64> {
    std::env::var(key)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|v| v.is_finite() && *v >= 0.0)
}
