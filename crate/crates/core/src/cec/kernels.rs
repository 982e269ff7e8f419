//! The fourteen base kernels of the CEC-2014 suite.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kernel {
    Elliptic,
    BentCigar,
    Discus,
    Rosenbrock,
    Ackley,
    Weierstrass,
    Griewank,
    Rastrigin,
    ModSchwefel,
    Katsuura,
    HappyCat,
    HgBat,
    GriewankRosenbrock,
    ExpandedScafferF6,
}

const WEIERSTRASS_A: f64 = 0.5;
const WEIERSTRASS_B: f64 = 3.0;
const WEIERSTRASS_KMAX: usize = 20;
const SCHWEFEL_OFFSET: f64 = 4.209687462275036e2;
const SCHWEFEL_CONST: f64 = 4.189828872724338e2;

impl Kernel {
    pub const ALL: [Kernel; 14] = [
        Kernel::Elliptic,
        Kernel::BentCigar,
        Kernel::Discus,
        Kernel::Rosenbrock,
        Kernel::Ackley,
        Kernel::Weierstrass,
        Kernel::Griewank,
        Kernel::Rastrigin,
        Kernel::ModSchwefel,
        Kernel::Katsuura,
        Kernel::HappyCat,
        Kernel::HgBat,
        Kernel::GriewankRosenbrock,
        Kernel::ExpandedScafferF6,
    ];

    /// Input scaling applied to `x - o` before rotation.
    pub fn input_scale(self) -> f64 {
        match self {
            Kernel::Rosenbrock => 2.048 / 100.0,
            Kernel::Weierstrass => 0.5 / 100.0,
            Kernel::Griewank => 600.0 / 100.0,
            Kernel::Rastrigin => 5.12 / 100.0,
            Kernel::ModSchwefel => 1000.0 / 100.0,
            Kernel::Katsuura | Kernel::HappyCat | Kernel::HgBat | Kernel::GriewankRosenbrock => 5.0 / 100.0,
            Kernel::Elliptic | Kernel::BentCigar | Kernel::Discus | Kernel::Ackley | Kernel::ExpandedScafferF6 => 1.0,
        }
    }

    /// Constant added after rotation so the shifted optimum maps onto the kernel optimum.
    pub fn recenter(self) -> f64 {
        match self {
            Kernel::Rosenbrock | Kernel::GriewankRosenbrock => 1.0,
            Kernel::HappyCat | Kernel::HgBat => -1.0,
            _ => 0.0,
        }
    }

    /// Point at which the kernel attains 0.
    pub fn optimum(self, dim: usize) -> Vec<f64> {
        vec![self.recenter(); dim]
    }

    pub fn eval(self, z: &[f64]) -> f64 {
        match self {
            Kernel::Elliptic => elliptic(z),
            Kernel::BentCigar => z[0] * z[0] + 1e6 * z[1..].iter().map(|v| v * v).sum::<f64>(),
            Kernel::Discus => 1e6 * z[0] * z[0] + z[1..].iter().map(|v| v * v).sum::<f64>(),
            Kernel::Rosenbrock => z.windows(2).map(|w| rosen_pair(w[0], w[1])).sum(),
            Kernel::Ackley => ackley(z),
            Kernel::Weierstrass => weierstrass(z),
            Kernel::Griewank => griewank(z),
            Kernel::Rastrigin => z.iter().map(|&v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0).sum(),
            Kernel::ModSchwefel => mod_schwefel(z),
            Kernel::Katsuura => katsuura(z),
            Kernel::HappyCat => happycat(z),
            Kernel::HgBat => hgbat(z),
            Kernel::GriewankRosenbrock => griewank_rosenbrock(z),
            Kernel::ExpandedScafferF6 => {
                let n = z.len();
                (0..n).map(|i| scaffer_pair(z[i], z[(i + 1) % n])).sum()
            }
        }
    }
}

/// Canonical kernel value.
pub fn eval_base(kernel: Kernel, z: &[f64]) -> f64 {
    kernel.eval(z)
}

fn elliptic(z: &[f64]) -> f64 {
    let n = z.len();
    if n == 1 {
        return z[0] * z[0];
    }
    z.iter()
        .enumerate()
        .map(|(i, v)| 10f64.powf(6.0 * i as f64 / (n - 1) as f64) * v * v)
        .sum()
}

fn rosen_pair(a: f64, b: f64) -> f64 {
    let t = a * a - b;
    100.0 * t * t + (a - 1.0) * (a - 1.0)
}

fn ackley(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let sq = z.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

fn weierstrass(z: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut base = 0.0;
    let mut ak = 1.0;
    let mut bk = 1.0;
    for _ in 0..=WEIERSTRASS_KMAX {
        for &v in z {
            sum += ak * (2.0 * PI * bk * (v + 0.5)).cos();
        }
        base += ak * (2.0 * PI * bk * 0.5).cos();
        ak *= WEIERSTRASS_A;
        bk *= WEIERSTRASS_B;
    }
    sum - z.len() as f64 * base
}

fn griewank(z: &[f64]) -> f64 {
    let s = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let p: f64 = z.iter().enumerate().map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos()).product();
    s - p + 1.0
}

fn mod_schwefel(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let mut f = 0.0;
    for &v in z {
        let zi = v + SCHWEFEL_OFFSET;
        if zi > 500.0 {
            let m = 500.0 - zi % 500.0;
            f -= m * m.abs().sqrt().sin();
            f += (zi - 500.0).powi(2) / 10000.0 / n;
        } else if zi < -500.0 {
            let m = -500.0 + zi.abs() % 500.0;
            f -= m * m.abs().sqrt().sin();
            f += (zi + 500.0).powi(2) / 10000.0 / n;
        } else {
            f -= zi * zi.abs().sqrt().sin();
        }
    }
    f + SCHWEFEL_CONST * n
}

fn katsuura(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let exponent = 10.0 / n.powf(1.2);
    let mut prod = 1.0;
    for (i, &v) in z.iter().enumerate() {
        let mut s = 0.0;
        let mut p = 2.0;
        for _ in 1..=32 {
            let t = p * v;
            s += (t - t.round()).abs() / p;
            p *= 2.0;
        }
        prod *= (1.0 + (i + 1) as f64 * s).powf(exponent);
    }
    let scale = 10.0 / (n * n);
    prod * scale - scale
}

fn happycat(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let r2: f64 = z.iter().map(|v| v * v).sum();
    let s: f64 = z.iter().sum();
    (r2 - n).abs().powf(0.25) + (0.5 * r2 + s) / n + 0.5
}

fn hgbat(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let r2: f64 = z.iter().map(|v| v * v).sum();
    let s: f64 = z.iter().sum();
    (r2 * r2 - s * s).abs().sqrt() + (0.5 * r2 + s) / n + 0.5
}

fn griewank_rosenbrock(z: &[f64]) -> f64 {
    let n = z.len();
    (0..n)
        .map(|i| {
            let t = rosen_pair(z[i], z[(i + 1) % n]);
            t * t / 4000.0 - t.cos() + 1.0
        })
        .sum()
}

fn scaffer_pair(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    let s = r2.sqrt().sin();
    let d = 1.0 + 0.001 * r2;
    0.5 + (s * s - 0.5) / (d * d)
}
