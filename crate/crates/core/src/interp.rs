//! Shape-preserving cubic Hermite interpolation of grid profiles.

use crate::mesh::ProfileField;

/// Fritsch–Carlson monotone cubic on a uniform radial grid.
///
/// Node slopes start from centred three-point differences and are limited
/// so that the interpolant is monotone wherever the data are. Outside
/// `[0, R_max]` the interpolant is zero; negative arguments use the even
/// extension.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    h: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(profile: &ProfileField) -> Self {
        Self::from_uniform(profile.grid.h(), profile.values.clone())
    }

    pub fn from_uniform(h: f64, values: Vec<f64>) -> Self {
        let n = values.len();
        assert!(n >= 3, "need at least three nodes");
        let secant: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]) / h).collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = endpoint_slope(secant[0], secant[1]);
        slopes[n - 1] = endpoint_slope(secant[n - 2], secant[n - 3]);
        for k in 1..n - 1 {
            slopes[k] = if secant[k - 1] * secant[k] <= 0.0 { 0.0 } else { 0.5 * (secant[k - 1] + secant[k]) };
        }
        for k in 0..n - 1 {
            let d = secant[k];
            if d == 0.0 {
                slopes[k] = 0.0;
                slopes[k + 1] = 0.0;
                continue;
            }
            let a = slopes[k] / d;
            let b = slopes[k + 1] / d;
            let s = a * a + b * b;
            if s > 9.0 {
                let t = 3.0 / s.sqrt();
                slopes[k] = t * a * d;
                slopes[k + 1] = t * b * d;
            }
        }
        Self { h, values, slopes }
    }

    pub fn r_max(&self) -> f64 {
        self.h * (self.values.len() - 1) as f64
    }

    pub fn eval(&self, r: f64) -> f64 {
        let r = r.abs();
        let last = self.values.len() - 1;
        let x = r / self.h;
        if x > last as f64 {
            return 0.0;
        }
        let nearest = x.round();
        if (x - nearest).abs() < 1e-9 {
            return self.values[nearest as usize];
        }
        let k = (x.floor() as usize).min(last - 1);
        let t = x - k as f64;
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let (m0, m1) = (self.slopes[k] * self.h, self.slopes[k + 1] * self.h);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * m0 + (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * m1
    }
}

fn endpoint_slope(near: f64, far: f64) -> f64 {
    let d = (3.0 * near - far) / 2.0;
    if d * near <= 0.0 {
        0.0
    } else if near * far < 0.0 && d.abs() > 3.0 * near.abs() {
        3.0 * near
    } else {
        d
    }
}
