//! Seeded sampling of chart points, tangent vectors and group elements.

use crate::ads3::{conjugate_configuration, normalized_configuration, AxisPair};
use crate::mat2::Mat2;
use crate::para_algebra::ParaComplex;
use crate::phk_core::{CotangentPoint, TangentPair};
use core::f64::consts::PI;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// FNV-1a, so each check draws from its own stream.
fn fnv(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn for_check(seed: u64, check: &str) -> Self {
        Self::new(seed ^ fnv(check))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn angle(&mut self) -> f64 {
        self.uniform(-PI, PI)
    }

    /// `(a, c, p, q)` with `a in [-2, 2]`, `c in [0.2, 5]`, `p, q in [-3, 3]`.
    pub fn chart(&mut self) -> [f64; 4] {
        [self.uniform(-2.0, 2.0), self.uniform(0.2, 5.0), self.uniform(-3.0, 3.0), self.uniform(-3.0, 3.0)]
    }

    pub fn point(&mut self) -> CotangentPoint {
        CotangentPoint::from_chart(self.chart()).expect("c > 0")
    }

    pub fn cx_chart(&mut self) -> (f64, f64) {
        (self.uniform(-2.0, 2.0), self.uniform(0.2, 5.0))
    }

    pub fn velocity(&mut self) -> [f64; 4] {
        core::array::from_fn(|_| self.uniform(-1.0, 1.0))
    }

    pub fn tangent(&mut self, pt: &CotangentPoint) -> TangentPair {
        let v = self.velocity();
        TangentPair::from_chart(pt, v)
    }

    pub fn para(&mut self, r: f64) -> ParaComplex {
        ParaComplex::new(self.uniform(-r, r), self.uniform(-r, r))
    }

    /// Unimodular matrix with every entry in `[-2, 2]`, by rejection.
    pub fn unimodular(&mut self) -> Mat2 {
        loop {
            let (a, b, c) = (self.uniform(-2.0, 2.0), self.uniform(-2.0, 2.0), self.uniform(-2.0, 2.0));
            if a.abs() < 1e-3 {
                continue;
            }
            let d = (1.0 + b * c) / a;
            if d.abs() <= 2.0 {
                return Mat2::new(a, b, c, d);
            }
        }
    }

    pub fn traceless(&mut self) -> Mat2 {
        let (a, b, c) = (self.uniform(-2.0, 2.0), self.uniform(-2.0, 2.0), self.uniform(-2.0, 2.0));
        Mat2::new(a, b, c, -a)
    }

    /// `A diag(l, 1/l) A^{-1}` with `l in [1.1, 5]`.
    pub fn loxodromic(&mut self) -> Mat2 {
        let a = self.unimodular();
        let l = self.uniform(1.1, 5.0);
        a * Mat2::diag(l, 1.0 / l) * a.inv()
    }

    /// Conjugated configuration of two pairs of loxodromics with crossing
    /// axes, together with its intersection angles `(phi+, phi-)`.
    pub fn configuration(&mut self) -> ((AxisPair, AxisPair), (f64, f64)) {
        let lambda = (self.uniform(1.1, 5.0), self.uniform(1.1, 5.0));
        let mu = (self.uniform(1.1, 5.0), self.uniform(1.1, 5.0));
        let phi = (self.uniform(0.1, PI - 0.1), self.uniform(0.1, PI - 0.1));
        let (a, b) = (self.unimodular(), self.unimodular());
        (conjugate_configuration(&normalized_configuration(lambda, mu, phi), &a, &b), phi)
    }
}
