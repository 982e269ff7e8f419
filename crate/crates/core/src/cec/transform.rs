//! Shift/rotate/scale transforms, hybrid splitting and composition weighting.

use serde::{Deserialize, Serialize};

use super::kernels::Kernel;
use crate::error::{Error, Result};

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    dim: usize,
    data: Vec<f64>,
}

impl Rotation {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Block-diagonal matrix of the given square blocks.
    pub fn block_diagonal(blocks: &[Rotation]) -> Self {
        let dim = blocks.iter().map(|b| b.dim).sum();
        let mut m = Self {
            dim,
            data: vec![0.0; dim * dim],
        };
        let mut off = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    m.data[(off + i) * dim + off + j] = b.get(i, j);
                }
            }
            off += b.dim;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// `out = M v`.
    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate().take(self.dim) {
            *o = self.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
        }
    }

    /// `max |M^T M - I|` over all entries.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Shift, rotation, input scale and additive bias of one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformData {
    pub shift: Vec<f64>,
    pub rotation: Rotation,
    pub scale: f64,
    pub bias: f64,
}

impl TransformData {
    /// Identity transform: zero shift, identity rotation, unit scale, no bias.
    pub fn identity(dim: usize) -> Self {
        Self {
            shift: vec![0.0; dim],
            rotation: Rotation::identity(dim),
            scale: 1.0,
            bias: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        for found in [x.len(), self.rotation.dim()] {
            if found != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found,
                });
            }
        }
        Ok(())
    }
}

/// `kernel(scale * M (x - o) + recenter)`, no bias.
pub(crate) fn shifted_rotated_raw(t: &TransformData, kernel: Kernel, x: &[f64]) -> f64 {
    let y: Vec<f64> = x.iter().zip(&t.shift).map(|(a, o)| a - o).collect();
    let mut z = vec![0.0; y.len()];
    t.rotation.apply(&y, &mut z);
    let rc = kernel.recenter();
    for v in z.iter_mut() {
        *v = t.scale * *v + rc;
    }
    kernel.eval(&z)
}

/// Shifted, rotated and scaled kernel plus the function bias.
pub fn eval_shifted_rotated(t: &TransformData, kernel: Kernel, x: &[f64]) -> Result<f64> {
    t.check(x)?;
    Ok(shifted_rotated_raw(t, kernel, x) + t.bias)
}

/// Dimension split of a hybrid function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HybridSpec {
    pub kernels: Vec<Kernel>,
    pub proportions: Vec<f64>,
    /// 0-based permutation `S`: position `i` of the permuted vector takes `y[S[i]]`.
    pub permutation: Vec<usize>,
}

/// Chunk sizes: `ceil(p_k D)` for all but the last kernel, which takes the remainder.
pub fn chunk_sizes(proportions: &[f64], dim: usize) -> Result<Vec<usize>> {
    if proportions.is_empty() {
        return Err(Error::Config("hybrid needs at least one kernel".into()));
    }
    let mut sizes = Vec::with_capacity(proportions.len());
    let mut used = 0usize;
    for &p in &proportions[..proportions.len() - 1] {
        // guard against p*D landing a hair above an integer
        let n = (p * dim as f64 - 1e-9).ceil().max(0.0) as usize;
        sizes.push(n);
        used += n;
    }
    if used >= dim || sizes.contains(&0) {
        return Err(Error::Config(format!(
            "hybrid proportions {proportions:?} leave an empty chunk at dim {dim}"
        )));
    }
    sizes.push(dim - used);
    Ok(sizes)
}

impl HybridSpec {
    pub fn chunk_sizes(&self, dim: usize) -> Result<Vec<usize>> {
        if self.kernels.len() != self.proportions.len() {
            return Err(Error::Config("hybrid kernel and proportion counts differ".into()));
        }
        chunk_sizes(&self.proportions, dim)
    }
}

pub(crate) fn hybrid_raw(h: &HybridSpec, sizes: &[usize], t: &TransformData, x: &[f64]) -> f64 {
    let n = x.len();
    let permuted: Vec<f64> = h.permutation.iter().map(|&s| x[s] - t.shift[s]).collect();
    let mut z = vec![0.0; n];
    t.rotation.apply(&permuted, &mut z);
    let mut start = 0;
    let mut total = 0.0;
    for (&kernel, &size) in h.kernels.iter().zip(sizes) {
        let chunk = &mut z[start..start + size];
        let (s, rc) = (kernel.input_scale(), kernel.recenter());
        for v in chunk.iter_mut() {
            *v = s * *v + rc;
        }
        total += kernel.eval(chunk);
        start += size;
    }
    total
}

/// Hybrid function: `y = x - o`, permuted by `S`, rotated (block-wise), split into
/// chunks, each fed to its kernel with that kernel's own input scale.
pub fn eval_hybrid(h: &HybridSpec, t: &TransformData, x: &[f64]) -> Result<f64> {
    t.check(x)?;
    if h.permutation.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: h.permutation.len(),
        });
    }
    let sizes = h.chunk_sizes(x.len())?;
    Ok(hybrid_raw(h, &sizes, t, x) + t.bias)
}

/// A composition member function, evaluated without its own bias.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MemberFunction {
    Simple { kernel: Kernel, transform: TransformData },
    Hybrid { spec: HybridSpec, transform: TransformData },
}

impl MemberFunction {
    pub fn shift(&self) -> &[f64] {
        match self {
            MemberFunction::Simple { transform, .. } | MemberFunction::Hybrid { transform, .. } => &transform.shift,
        }
    }

    /// The re-based member value `F'(x)` (0 at the member optimum).
    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            MemberFunction::Simple { kernel, transform } => shifted_rotated_raw(transform, *kernel, x),
            MemberFunction::Hybrid { spec, transform } => {
                let sizes = spec.chunk_sizes(x.len()).expect("validated at construction");
                hybrid_raw(spec, &sizes, transform, x)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositionMember {
    pub function: MemberFunction,
    pub sigma: f64,
    pub lambda: f64,
    pub bias: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositionSpec {
    pub members: Vec<CompositionMember>,
    /// Additive bias of the whole composition.
    pub bias: f64,
}

/// Squared distance below which a member's optimum is considered hit.
pub const WEIGHT_SINGULARITY: f64 = 1e-16;

/// Normalized distance weights.
///
/// Raw `w_i = exp(-d_i / (2 D sigma_i^2)) / sqrt(d_i)` with `d_i = |x - o_i|^2`.
/// If some `d_i` is (numerically) zero that member takes all the weight.
pub fn composition_weights(x: &[f64], spec: &CompositionSpec) -> Vec<f64> {
    let dim = x.len() as f64;
    let dists: Vec<f64> = spec
        .members
        .iter()
        .map(|m| x.iter().zip(m.function.shift()).map(|(a, o)| (a - o) * (a - o)).sum())
        .collect();
    if let Some(hit) = dists.iter().position(|&d| d < WEIGHT_SINGULARITY) {
        let mut w = vec![0.0; dists.len()];
        w[hit] = 1.0;
        return w;
    }
    let raw: Vec<f64> = dists
        .iter()
        .zip(&spec.members)
        .map(|(&d, m)| (-d / (2.0 * dim * m.sigma * m.sigma)).exp() / d.sqrt())
        .collect();
    let total: f64 = raw.iter().sum();
    if total == 0.0 || !total.is_finite() {
        return vec![1.0 / raw.len() as f64; raw.len()];
    }
    raw.into_iter().map(|w| w / total).collect()
}

/// `sum_i w_i (lambda_i F'_i(x) + bias_i) + bias`.
pub fn eval_composition(spec: &CompositionSpec, x: &[f64]) -> Result<f64> {
    for m in &spec.members {
        if m.function.shift().len() != x.len() {
            return Err(Error::DimensionMismatch {
                expected: m.function.shift().len(),
                found: x.len(),
            });
        }
    }
    let weights = composition_weights(x, spec);
    let mut total = 0.0;
    for (w, m) in weights.iter().zip(&spec.members) {
        if *w == 0.0 {
            continue;
        }
        total += w * (m.lambda * m.function.value(x) + m.bias);
    }
    Ok(total + spec.bias)
}
