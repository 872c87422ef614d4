//! Quadrature helpers built on Gauss–Legendre rules.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, OnceLock, RwLock};

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

/// A Gauss–Legendre rule on [−1, 1], stored as (node, weight) pairs.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pairs: Vec<(f64, f64)>,
}

impl GaussRule {
    /// # Panics
    /// Panics if `degree` is zero.
    pub fn new(degree: usize) -> Self {
        let degree = NonZeroUsize::new(degree).expect("quadrature degree must be nonzero");
        let rule = GaussLegendre::new(degree);
        Self {
            pairs: rule.as_node_weight_pairs().to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.pairs
            .iter()
            .map(move |&(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
        &self,
        a: f64,
        b: f64,
        mut f: F,
    ) -> Complex64 {
        self.mapped(a, b).map(|(x, w)| f(x) * w).sum()
    }

    /// Composite rule over `panels` equal sub-intervals of [a, b].
    pub fn composite_complex<F: FnMut(f64) -> Complex64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: F,
    ) -> Complex64 {
        let h = (b - a) / panels as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..panels {
            let lo = a + h * k as f64;
            acc += self.integrate_complex(lo, lo + h, &mut f);
        }
        acc
    }

    /// Composite rule for vector-valued integrands; `out` is accumulated into.
    pub fn composite_vec<F: FnMut(f64, &mut [Complex64])>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        out: &mut [Complex64],
        mut f: F,
    ) {
        let h = (b - a) / panels as f64;
        let mut buf = vec![Complex64::new(0.0, 0.0); out.len()];
        for k in 0..panels {
            let lo = a + h * k as f64;
            for (x, w) in self.mapped(lo, lo + h) {
                buf.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
                f(x, &mut buf);
                for (o, v) in out.iter_mut().zip(&buf) {
                    *o += v * w;
                }
            }
        }
    }
}

/// Shared rule of the given degree, built once per process.
pub fn gauss_rule(degree: usize) -> Arc<GaussRule> {
    static RULES: OnceLock<RwLock<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let rules = RULES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(r) = rules.read().unwrap().get(&degree) {
        return Arc::clone(r);
    }
    let rule = Arc::new(GaussRule::new(degree));
    rules.write().unwrap().entry(degree).or_insert(rule).clone()
}

/// Richardson extrapolation to h → 0 of values sampled at h, h/2, h/4, …
/// assuming an error expansion in integer powers of h.
pub fn richardson_halving(values: &[Complex64]) -> Complex64 {
    assert!(!values.is_empty());
    let mut table = values.to_vec();
    let mut factor = 2.0;
    for level in 1..values.len() {
        for i in (level..values.len()).rev() {
            table[i] = (table[i] * factor - table[i - 1]) / (factor - 1.0);
        }
        factor *= 2.0;
    }
    table[values.len() - 1]
}
