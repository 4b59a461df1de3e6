use std::io::{self, Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::model::AffineIfs;

use super::EstimateError;

/// Points per independently seeded chain.
pub const CHUNK_SIZE: usize = 1 << 16;
pub const DEFAULT_BURN_IN: usize = 64;
pub const CLOUD_MAGIC: [u8; 8] = *b"TRIAFF01";

/// Samples of the uniform Bernoulli measure on the attractor.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<(f64, f64)>,
    pub seed: u64,
    pub burn_in: usize,
    pub generator_tag: String,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Wraps externally produced points (clamped into the unit square).
    pub fn from_points(points: Vec<(f64, f64)>, tag: impl Into<String>) -> Self {
        Self {
            points: points.into_iter().map(|(x, y)| (clamp(x), clamp(y))).collect(),
            seed: 0,
            burn_in: 0,
            generator_tag: tag.into(),
        }
    }
}

fn clamp(t: f64) -> f64 {
    t.clamp(0.0, 1.0)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of chunk `k`: splitmix64 of the master seed mixed with the hashed index.
fn chunk_seed(seed: u64, k: u64) -> u64 {
    splitmix64(seed ^ splitmix64(k))
}

/// Random iteration from the origin. The sample is cut into chunks of
/// [`CHUNK_SIZE`] points; each chunk runs its own chain from the origin with
/// its own burn-in and seed, so the result does not depend on the number of
/// worker threads.
pub fn chaos_game(system: &AffineIfs<f64>, n_points: usize, seed: u64, burn_in: usize) -> PointCloud {
    let maps = system.maps();
    let n_chunks = n_points.div_ceil(CHUNK_SIZE);
    let chunks: Vec<Vec<(f64, f64)>> = (0..n_chunks)
        .into_par_iter()
        .map(|k| {
            let len = CHUNK_SIZE.min(n_points - k * CHUNK_SIZE);
            let mut rng = ChaCha8Rng::seed_from_u64(chunk_seed(seed, k as u64));
            let (mut x, mut y) = (0.0, 0.0);
            let mut out = Vec::with_capacity(len);
            for step in 0..burn_in + len {
                let m = &maps[rng.random_range(0..maps.len())];
                (x, y) = m.apply(&x, &y);
                if step >= burn_in {
                    out.push((clamp(x), clamp(y)));
                }
            }
            out
        })
        .collect();
    PointCloud {
        points: chunks.concat(),
        seed,
        burn_in,
        generator_tag: format!("chacha8-splitmix-chunk{CHUNK_SIZE}"),
    }
}

/// Magic header followed by little-endian `f64` pairs.
pub fn write_binary<W: Write>(cloud: &PointCloud, mut w: W) -> io::Result<()> {
    w.write_all(&CLOUD_MAGIC)?;
    for (x, y) in &cloud.points {
        w.write_all(&x.to_le_bytes())?;
        w.write_all(&y.to_le_bytes())?;
    }
    w.flush()
}

pub fn read_binary<R: Read>(mut r: R) -> Result<PointCloud, EstimateError> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)
        .map_err(|e| EstimateError::Format(e.to_string()))?;
    let body = bytes
        .strip_prefix(&CLOUD_MAGIC)
        .ok_or_else(|| EstimateError::Format("missing magic header".into()))?;
    if body.len() % 16 != 0 {
        return Err(EstimateError::Format("truncated coordinate pair".into()));
    }
    let f = |b: &[u8]| f64::from_le_bytes(b.try_into().unwrap());
    let points = body.chunks_exact(16).map(|p| (f(&p[..8]), f(&p[8..]))).collect();
    Ok(PointCloud::from_points(points, "binary-file"))
}

/// `x,y` header and one row per point, shortest round-trip decimals.
pub fn write_csv<W: Write>(cloud: &PointCloud, mut w: W) -> io::Result<()> {
    writeln!(w, "x,y")?;
    for (x, y) in &cloud.points {
        writeln!(w, "{x},{y}")?;
    }
    w.flush()
}
