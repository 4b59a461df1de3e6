//! Composition of maps along words and the resulting cylinder parallelograms.

use crate::scalar::Scalar;

use super::system::{AffineIfs, TriangularMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("symbol {symbol} at position {position} is out of range (system has {len} maps)")]
    SymbolOutOfRange {
        symbol: usize,
        position: usize,
        len: usize,
    },
    #[error("cylinders need a non-empty word")]
    EmptyWord,
}

/// The affine map `S_w = S_{w_1} o ... o S_{w_n}` with linear part
/// `[[c_total, 0], [shear_total, b_total]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineComposite<T> {
    pub c_total: T,
    pub b_total: T,
    pub shear_total: T,
    pub u_total: T,
    pub v_total: T,
}

impl<T: Scalar> AffineComposite<T> {
    pub fn identity() -> Self {
        Self {
            c_total: T::one(),
            b_total: T::one(),
            shear_total: T::zero(),
            u_total: T::zero(),
            v_total: T::zero(),
        }
    }

    pub fn from_map(m: &TriangularMap<T>) -> Self {
        Self {
            c_total: m.c.clone(),
            b_total: m.b.clone(),
            shear_total: m.d.clone(),
            u_total: m.u.clone(),
            v_total: m.v.clone(),
        }
    }

    /// `self o inner`: apply `inner` first.
    pub fn then_inner(&self, inner: &Self) -> Self {
        Self {
            c_total: self.c_total.clone() * inner.c_total.clone(),
            b_total: self.b_total.clone() * inner.b_total.clone(),
            shear_total: self.shear_total.clone() * inner.c_total.clone()
                + self.b_total.clone() * inner.shear_total.clone(),
            u_total: self.c_total.clone() * inner.u_total.clone() + self.u_total.clone(),
            v_total: self.shear_total.clone() * inner.u_total.clone()
                + self.b_total.clone() * inner.v_total.clone()
                + self.v_total.clone(),
        }
    }

    pub fn apply(&self, x: &T, y: &T) -> (T, T) {
        (
            self.c_total.clone() * x.clone() + self.u_total.clone(),
            self.shear_total.clone() * x.clone() + self.b_total.clone() * y.clone() + self.v_total.clone(),
        )
    }
}

fn check_word(len: usize, word: &[usize]) -> Result<(), WordError> {
    match word.iter().position(|&s| s >= len) {
        Some(position) => Err(WordError::SymbolOutOfRange {
            symbol: word[position],
            position,
            len,
        }),
        None => Ok(()),
    }
}

/// Composes the maps named by `word` (zero-based symbols), outermost first.
pub fn compose<T: Scalar>(system: &AffineIfs<T>, word: &[usize]) -> Result<AffineComposite<T>, WordError> {
    check_word(system.len(), word)?;
    let maps = system.maps();
    Ok(word.iter().fold(AffineComposite::identity(), |acc, &s| {
        acc.then_inner(&AffineComposite::from_map(&maps[s]))
    }))
}

/// `S_w([0,1]^2)`: a parallelogram with two vertical sides.
///
/// Its lower edge runs from `(x0, y0)` to `(x0 + width, y0 + shear)` and the
/// upper edge is that segment lifted by `height`.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderParallelogram<T> {
    pub word: Vec<usize>,
    pub x0: T,
    pub width: T,
    pub y0: T,
    pub shear: T,
    pub height: T,
}

impl<T: Scalar> CylinderParallelogram<T> {
    pub fn from_composite(word: Vec<usize>, comp: &AffineComposite<T>) -> Self {
        Self {
            word,
            x0: comp.u_total.clone(),
            width: comp.c_total.clone(),
            y0: comp.v_total.clone(),
            shear: comp.shear_total.clone(),
            height: comp.b_total.clone(),
        }
    }

    pub fn x_interval(&self) -> (T, T) {
        (self.x0.clone(), self.x0.clone() + self.width.clone())
    }

    /// Corners in the order of the unit-square corners (0,0), (1,0), (0,1), (1,1).
    pub fn corners(&self) -> [(T, T); 4] {
        let x1 = self.x0.clone() + self.width.clone();
        let y_right = self.y0.clone() + self.shear.clone();
        [
            (self.x0.clone(), self.y0.clone()),
            (x1.clone(), y_right.clone()),
            (self.x0.clone(), self.y0.clone() + self.height.clone()),
            (x1, y_right + self.height.clone()),
        ]
    }

    /// Lower edge height at horizontal fraction `t` in [0,1].
    pub fn lower_at(&self, t: &T) -> T {
        self.y0.clone() + self.shear.clone() * t.clone()
    }

    /// Membership of a point, closed, with absolute slack `tol`.
    pub fn contains(&self, x: &T, y: &T, tol: &T) -> bool {
        let (a, b) = self.x_interval();
        if *x < a.clone() - tol.clone() || *x > b + tol.clone() {
            return false;
        }
        let t = (x.clone() - a) / self.width.clone();
        let lower = self.lower_at(&t);
        *y >= lower.clone() - tol.clone() && *y <= lower + self.height.clone() + tol.clone()
    }
}

/// Cylinder parallelogram of a non-empty word.
pub fn cylinder<T: Scalar>(system: &AffineIfs<T>, word: &[usize]) -> Result<CylinderParallelogram<T>, WordError> {
    if word.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let comp = compose(system, word)?;
    Ok(CylinderParallelogram::from_composite(word.to_vec(), &comp))
}

/// Every word of length `n` over `n_symbols` symbols in lexicographic order.
pub fn words(n_symbols: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n_symbols.checked_pow(n as u32).expect("word count overflows usize");
    (0..total).map(move |mut idx| {
        let mut w = vec![0; n];
        for slot in w.iter_mut().rev() {
            *slot = idx % n_symbols;
            idx /= n_symbols;
        }
        w
    })
}

/// Composites of all level-`n` words, built level by level. Index `k` holds
/// the word whose base-`N` digits (most significant first) spell `k`.
pub fn level_composites<T: Scalar>(system: &AffineIfs<T>, n: usize) -> Vec<AffineComposite<T>> {
    let base: Vec<AffineComposite<T>> = system.maps().iter().map(AffineComposite::from_map).collect();
    let mut level = vec![AffineComposite::identity()];
    for _ in 0..n {
        level = level
            .iter()
            .flat_map(|prefix| base.iter().map(move |m| prefix.then_inner(m)))
            .collect();
    }
    level
}
