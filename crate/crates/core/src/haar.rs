//! Haar functions on a shifted dyadic system and analysis/synthesis of
//! lattice functions.
//!
//! A [`LatticeFunction`] is piecewise constant on the fine cells of a cube
//! window. The Haar expansion over a system runs cancellative signatures over
//! levels `k_min..k_max-1` and closes the top with plain averages against the
//! normalized indicators of the coarsest cubes, so reconstruction is exact on
//! finite windows.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Cube, ShiftedDyadicSystem, SystemId, Window};
use crate::stats::pairwise_sum;
use crate::MAX_DIM;

/// 2^(x/2) for integer x; exact for even x, correctly rounded otherwise.
pub(crate) fn pow2_half(x: i32) -> f64 {
    (x as f64 / 2.0).exp2()
}

/// Real-valued function, piecewise constant on the fine cells of a cube
/// window at resolution `2^-k_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeFunction {
    dim: usize,
    k_max: i32,
    window: Window,
    values: Vec<f64>,
}

impl LatticeFunction {
    pub fn zeros(dim: usize, k_max: i32, window: Window) -> Self {
        let cells = (window.side as usize).pow(dim as u32);
        LatticeFunction {
            dim,
            k_max,
            window,
            values: vec![0.0; cells],
        }
    }

    /// Builds from a cell callback receiving fine-unit lower corners.
    pub fn from_fn<F: FnMut(&Index) -> f64>(
        dim: usize,
        k_max: i32,
        window: Window,
        mut f: F,
    ) -> Self {
        let mut out = Self::zeros(dim, k_max, window);
        for i in 0..out.values.len() {
            let p = out.cell_origin(i);
            out.values[i] = f(&p);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn k_max(&self) -> i32 {
        self.k_max
    }
    pub fn window(&self) -> Window {
        self.window
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell_measure(&self) -> f64 {
        2f64.powi(-self.k_max * self.dim as i32)
    }

    /// Lower corner of cell `i` in fine units.
    pub fn cell_origin(&self, i: usize) -> Index {
        let side = self.window.side as usize;
        let mut p = [0i64; MAX_DIM];
        let mut rest = i;
        for d in (0..self.dim).rev() {
            p[d] = self.window.origin[d] + (rest % side) as i64;
            rest /= side;
        }
        p
    }

    /// Cell index holding the fine-unit point, if inside the window.
    pub fn cell_at(&self, p: &Index) -> Option<usize> {
        let side = self.window.side;
        let mut i = 0usize;
        for d in 0..self.dim {
            let c = p[d] - self.window.origin[d];
            if c < 0 || c >= side {
                return None;
            }
            i = i * side as usize + c as usize;
        }
        Some(i)
    }

    pub fn same_lattice(&self, other: &LatticeFunction) -> bool {
        self.dim == other.dim && self.k_max == other.k_max && self.window == other.window
    }

    pub fn integral(&self) -> f64 {
        pairwise_sum(&self.values) * self.cell_measure()
    }

    pub fn inner(&self, other: &LatticeFunction) -> Result<f64> {
        if !self.same_lattice(other) {
            return Err(Error::WindowMismatch);
        }
        let prods: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(pairwise_sum(&prods) * self.cell_measure())
    }

    pub fn norm_l2(&self) -> f64 {
        let sq: Vec<f64> = self.values.iter().map(|v| v * v).collect();
        (pairwise_sum(&sq) * self.cell_measure()).sqrt()
    }

    pub fn norm_l1(&self) -> f64 {
        let ab: Vec<f64> = self.values.iter().map(|v| v.abs()).collect();
        pairwise_sum(&ab) * self.cell_measure()
    }

    pub fn norm_linf(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, c: f64) -> LatticeFunction {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= c;
        }
        out
    }

    pub fn add_assign_scaled(&mut self, other: &LatticeFunction, c: f64) -> Result<()> {
        if !self.same_lattice(other) {
            return Err(Error::WindowMismatch);
        }
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
        Ok(())
    }

    pub fn sub(&self, other: &LatticeFunction) -> Result<LatticeFunction> {
        let mut out = self.clone();
        out.add_assign_scaled(other, -1.0)?;
        Ok(out)
    }

    /// Integral of the function (extended by zero) over a fine-unit box.
    pub fn box_integral(&self, origin: &Index, side: i64) -> f64 {
        let mut lo = [0i64; MAX_DIM];
        let mut hi = [0i64; MAX_DIM];
        for d in 0..self.dim {
            lo[d] = origin[d].max(self.window.origin[d]);
            hi[d] = (origin[d] + side).min(self.window.origin[d] + self.window.side);
            if lo[d] >= hi[d] {
                return 0.0;
            }
        }
        let mut sum = 0.0;
        let mut p = lo;
        'outer: loop {
            sum += self.values[self.cell_at(&p).unwrap()];
            let mut d = self.dim;
            loop {
                if d == 0 {
                    break 'outer;
                }
                d -= 1;
                p[d] += 1;
                if p[d] < hi[d] {
                    break;
                }
                p[d] = lo[d];
            }
        }
        sum * self.cell_measure()
    }

    /// Average of the function (zero-extended) over a cube of the system.
    pub fn cube_average(&self, sys: &ShiftedDyadicSystem, cube: &Cube) -> f64 {
        let o = sys.origin_units(cube);
        self.box_integral(&o, sys.side_units(cube.level)) / sys.cube_measure(cube.level)
    }

    /// Versioned CSV: a header line with the lattice geometry followed by one
    /// value per line in row-major cell order.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let origin: Vec<String> = (0..self.dim)
            .map(|d| self.window.origin[d].to_string())
            .collect();
        let _ = writeln!(
            s,
            "lattice-v1,dim={},k_max={},origin={},side={}",
            self.dim,
            self.k_max,
            origin.join(";"),
            self.window.side
        );
        for v in &self.values {
            let _ = writeln!(s, "{v:?}");
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<LatticeFunction> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty".into()))?;
        let fields: Vec<&str> = header.split(',').collect();
        if fields.first() != Some(&"lattice-v1") {
            return Err(Error::Parse(format!("bad header: {header}")));
        }
        let mut dim = 0usize;
        let mut k_max = 0i32;
        let mut origin = [0i64; MAX_DIM];
        let mut side = 0i64;
        for f in &fields[1..] {
            let (key, val) = f
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad field: {f}")))?;
            match key {
                "dim" => dim = val.parse().map_err(|_| Error::Parse(f.to_string()))?,
                "k_max" => k_max = val.parse().map_err(|_| Error::Parse(f.to_string()))?,
                "side" => side = val.parse().map_err(|_| Error::Parse(f.to_string()))?,
                "origin" => {
                    for (d, o) in val.split(';').enumerate() {
                        origin[d] = o.parse().map_err(|_| Error::Parse(f.to_string()))?;
                    }
                }
                _ => return Err(Error::Parse(format!("unknown field: {key}"))),
            }
        }
        let mut out = LatticeFunction::zeros(dim, k_max, Window::new(origin, side));
        let mut n = 0usize;
        for line in lines {
            if line.is_empty() {
                continue;
            }
            if n >= out.values.len() {
                return Err(Error::Parse("too many values".into()));
            }
            out.values[n] = line.parse().map_err(|_| Error::Parse(line.to_string()))?;
            n += 1;
        }
        if n != out.values.len() {
            return Err(Error::Parse(format!(
                "expected {} values, got {n}",
                out.values.len()
            )));
        }
        Ok(out)
    }
}

pub use crate::grid::Index;

/// A Haar function label: cube plus signature; `eta = 0` is the normalized
/// indicator, any other signature is cancellative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HaarIndex {
    pub cube: Cube,
    pub eta: u8,
}

impl HaarIndex {
    pub fn cancellative(&self) -> bool {
        self.eta != 0
    }
}

/// Value of `h_I^eta` on the child of `I` in `corner`; `side` and `level`
/// describe `I`.
fn haar_child_value(dim: usize, level: i32, eta: u8, corner: u32) -> f64 {
    let mut sign = 1.0;
    for i in 0..dim {
        if (eta >> i) & 1 == 1 && (corner >> i) & 1 == 1 {
            sign = -sign;
        }
    }
    sign * pow2_half(level * dim as i32)
}

/// Renders a Haar function on the given window; the restriction to the
/// window is exact, values outside are dropped.
pub fn haar_function(
    sys: &ShiftedDyadicSystem,
    idx: &HaarIndex,
    window: Window,
) -> Result<LatticeFunction> {
    sys.check_cube(&idx.cube)?;
    if idx.cancellative() && idx.cube.level + 1 > sys.k_max() {
        return Err(Error::ResolutionTooFine);
    }
    let mut out = LatticeFunction::zeros(sys.dim(), sys.k_max(), window);
    fill_haar(sys, idx, &mut out)?;
    Ok(out)
}

fn fill_haar(sys: &ShiftedDyadicSystem, idx: &HaarIndex, out: &mut LatticeFunction) -> Result<()> {
    let o = sys.origin_units(&idx.cube);
    let side = sys.side_units(idx.cube.level);
    let half = side / 2;
    let dim = sys.dim();
    let w = out.window();
    let mut lo = [0i64; MAX_DIM];
    let mut hi = [0i64; MAX_DIM];
    for d in 0..dim {
        lo[d] = o[d].max(w.origin[d]);
        hi[d] = (o[d] + side).min(w.origin[d] + w.side);
        if lo[d] >= hi[d] {
            return Ok(());
        }
    }
    let mut p = lo;
    'outer: loop {
        let mut corner = 0u32;
        if idx.cancellative() {
            for d in 0..dim {
                if p[d] - o[d] >= half {
                    corner |= 1 << d;
                }
            }
        }
        let v = haar_child_value(dim, idx.cube.level, idx.eta, corner);
        let cell = out.cell_at(&p).unwrap();
        out.values_mut()[cell] = v;
        let mut d = dim;
        loop {
            if d == 0 {
                break 'outer;
            }
            d -= 1;
            p[d] += 1;
            if p[d] < hi[d] {
                break;
            }
            p[d] = lo[d];
        }
    }
    Ok(())
}

/// Sparse Haar coefficients of a lattice function over one system:
/// cancellative entries per (cube, signature) and the coarsest-level averages
/// that close the expansion on a finite window.
#[derive(Clone, Debug)]
pub struct HaarCoefficients {
    pub system: SystemId,
    pub dim: usize,
    pub k_max: i32,
    pub window: Window,
    pub cancellative: BTreeMap<(Cube, u8), f64>,
    pub top: BTreeMap<Cube, f64>,
}

impl HaarCoefficients {
    /// Sum of squares of every stored coefficient; equals the squared L2 norm
    /// of the analyzed function.
    pub fn energy(&self) -> f64 {
        let sq: Vec<f64> = self
            .cancellative
            .values()
            .chain(self.top.values())
            .map(|c| c * c)
            .collect();
        pairwise_sum(&sq)
    }
}

/// Integrals of `f` (zero-extended) over all system cubes meeting its
/// window, by levels from finest to coarsest. Parents are exact sums of
/// their children.
pub(crate) fn integral_pyramid(
    sys: &ShiftedDyadicSystem,
    f: &LatticeFunction,
) -> Result<BTreeMap<Cube, f64>> {
    if f.dim() != sys.dim() || f.k_max() != sys.k_max() {
        return Err(Error::WindowMismatch);
    }
    let mut map: BTreeMap<Cube, f64> = BTreeMap::new();
    let measure = f.cell_measure();
    for (i, &v) in f.values().iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let p = f.cell_origin(i);
        let cell = sys.locate_units(&p, sys.k_max())?;
        map.insert(cell, v * measure);
    }
    let mut current: Vec<(Cube, f64)> = map.iter().map(|(c, v)| (*c, *v)).collect();
    for _level in ((sys.k_min() + 1)..=sys.k_max()).rev() {
        let mut parents: BTreeMap<Cube, f64> = BTreeMap::new();
        for (c, v) in &current {
            let p = sys.parent(c)?;
            *parents.entry(p).or_insert(0.0) += v;
        }
        for (c, v) in &parents {
            map.insert(*c, *v);
        }
        current = parents.into_iter().collect();
    }
    Ok(map)
}

/// Haar coefficients of `f` over the system.
pub fn analyze(sys: &ShiftedDyadicSystem, f: &LatticeFunction) -> Result<HaarCoefficients> {
    let integrals = integral_pyramid(sys, f)?;
    let dim = sys.dim();
    let mut cancellative = BTreeMap::new();
    let mut top = BTreeMap::new();
    for (cube, &v) in &integrals {
        if cube.level == sys.k_min() {
            // <f, h^0> = |Q|^{-1/2} integral
            top.insert(*cube, v * pow2_half(cube.level * dim as i32));
        }
        if cube.level == sys.k_max() {
            continue;
        }
        // child integrals, zero where absent
        let mut child_int = [0.0f64; 16];
        for corner in 0..(1u32 << dim) {
            let ch = sys.child(cube, corner)?;
            child_int[corner as usize] = integrals.get(&ch).copied().unwrap_or(0.0);
        }
        for eta in 1..(1u8 << dim) {
            let mut acc = 0.0;
            for corner in 0..(1u32 << dim) {
                let mut sign = 1.0;
                for i in 0..dim {
                    if (eta >> i) & 1 == 1 && (corner >> i) & 1 == 1 {
                        sign = -sign;
                    }
                }
                acc += sign * child_int[corner as usize];
            }
            let coef = acc * pow2_half(cube.level * dim as i32);
            if coef != 0.0 {
                cancellative.insert((*cube, eta), coef);
            }
        }
    }
    Ok(HaarCoefficients {
        system: sys.id(),
        dim,
        k_max: sys.k_max(),
        window: f.window(),
        cancellative,
        top,
    })
}

/// Reconstructs the function on `window` from its coefficients.
pub fn synthesize(
    sys: &ShiftedDyadicSystem,
    coeffs: &HaarCoefficients,
    window: Window,
) -> Result<LatticeFunction> {
    if coeffs.system != sys.id() {
        return Err(Error::SystemMismatch);
    }
    let mut out = LatticeFunction::zeros(sys.dim(), sys.k_max(), window);
    for (cube, c) in &coeffs.top {
        accumulate_haar(sys, &HaarIndex { cube: *cube, eta: 0 }, *c, &mut out)?;
    }
    for ((cube, eta), c) in &coeffs.cancellative {
        accumulate_haar(sys, &HaarIndex { cube: *cube, eta: *eta }, *c, &mut out)?;
    }
    Ok(out)
}

fn accumulate_haar(
    sys: &ShiftedDyadicSystem,
    idx: &HaarIndex,
    coef: f64,
    out: &mut LatticeFunction,
) -> Result<()> {
    let o = sys.origin_units(&idx.cube);
    let side = sys.side_units(idx.cube.level);
    let half = side / 2;
    let dim = sys.dim();
    let w = out.window();
    let mut lo = [0i64; MAX_DIM];
    let mut hi = [0i64; MAX_DIM];
    for d in 0..dim {
        lo[d] = o[d].max(w.origin[d]);
        hi[d] = (o[d] + side).min(w.origin[d] + w.side);
        if lo[d] >= hi[d] {
            return Ok(());
        }
    }
    let mut p = lo;
    'outer: loop {
        let mut corner = 0u32;
        if idx.cancellative() {
            for d in 0..dim {
                if p[d] - o[d] >= half {
                    corner |= 1 << d;
                }
            }
        }
        let v = haar_child_value(dim, idx.cube.level, idx.eta, corner);
        let cell = out.cell_at(&p).unwrap();
        out.values_mut()[cell] += coef * v;
        let mut d = dim;
        loop {
            if d == 0 {
                break 'outer;
            }
            d -= 1;
            p[d] += 1;
            if p[d] < hi[d] {
                break;
            }
            p[d] = lo[d];
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Modulus;
    use crate::rng::derive_rng;
    use rand::Rng;

    fn unit_window(n: i32) -> Window {
        Window::at_origin(1 << n)
    }

    #[test]
    fn h0_on_unit_interval_is_constant_one() {
        let sys = ShiftedDyadicSystem::unshifted(1, 0, 4, unit_window(4)).unwrap();
        let root = sys.locate(&[0.0], 0).unwrap();
        let h = haar_function(&sys, &HaarIndex { cube: root, eta: 0 }, unit_window(4)).unwrap();
        for &v in h.values() {
            assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn h1_on_unit_interval_is_plus_minus_one() {
        let sys = ShiftedDyadicSystem::unshifted(1, 0, 4, unit_window(4)).unwrap();
        let root = sys.locate(&[0.0], 0).unwrap();
        let h = haar_function(&sys, &HaarIndex { cube: root, eta: 1 }, unit_window(4)).unwrap();
        for (i, &v) in h.values().iter().enumerate() {
            if i < 8 {
                assert_eq!(v, 1.0);
            } else {
                assert_eq!(v, -1.0);
            }
        }
        assert!((h.norm_l2() - 1.0).abs() < 1e-14);
        assert!(h.integral().abs() < 1e-15);
    }

    #[test]
    fn tensor_sign_pattern_in_two_dims() {
        // eta = (1, 0): split along x1, constant in x2, values +-1.
        let sys = ShiftedDyadicSystem::unshifted(2, 0, 3, unit_window(3)).unwrap();
        let root = sys.locate(&[0.0, 0.0], 0).unwrap();
        let h = haar_function(&sys, &HaarIndex { cube: root, eta: 0b01 }, unit_window(3)).unwrap();
        for i in 0..h.len() {
            let p = h.cell_origin(i);
            let expected = if p[0] < 4 { 1.0 } else { -1.0 };
            assert_eq!(h.values()[i], expected, "cell {p:?}");
        }
        assert!((h.norm_l2() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn analyzing_a_haar_function_gives_a_unit_coefficient() {
        let mut rng = derive_rng(13, 0, 1);
        let sys = ShiftedDyadicSystem::random(1, -2, 5, unit_window(5), &mut rng).unwrap();
        let cube = sys.locate(&[0.4], 2).unwrap();
        let idx = HaarIndex { cube, eta: 1 };
        let h = haar_function(&sys, &idx, unit_window(5)).unwrap();
        let coeffs = analyze(&sys, &h).unwrap();
        for ((c, eta), v) in &coeffs.cancellative {
            if (*c, *eta) == (cube, 1) {
                assert!((v - 1.0).abs() < 1e-12);
            } else {
                assert!(v.abs() < 1e-12, "stray coefficient at {c:?}/{eta}");
            }
        }
    }

    #[test]
    fn half_indicator_coefficients() {
        // f = 1 on [0, 1/2): both the average and the first cancellative
        // coefficient on [0,1) equal 1/2.
        let sys = ShiftedDyadicSystem::unshifted(1, 0, 4, unit_window(4)).unwrap();
        let f = LatticeFunction::from_fn(1, 4, unit_window(4), |p| if p[0] < 8 { 1.0 } else { 0.0 });
        let coeffs = analyze(&sys, &f).unwrap();
        let root = sys.locate(&[0.0], 0).unwrap();
        assert!((coeffs.top[&root] - 0.5).abs() < 1e-15);
        assert!((coeffs.cancellative[&(root, 1)] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn roundtrip_and_plancherel_on_random_shifted_systems() {
        for trial in 0..10 {
            let mut rng = derive_rng(99, 3, trial);
            let dim = 1 + (trial % 2) as usize;
            let n = if dim == 1 { 6 } else { 4 };
            let window = unit_window(n);
            let sys = ShiftedDyadicSystem::random(dim, -3, n, window, &mut rng).unwrap();
            let f = LatticeFunction::from_fn(dim, n, window, |_| rng.gen_range(-1.0..1.0));
            let coeffs = analyze(&sys, &f).unwrap();
            let back = synthesize(&sys, &coeffs, window).unwrap();
            let err = f.sub(&back).unwrap().norm_linf();
            assert!(err <= 1e-12, "roundtrip error {err}");
            let energy = coeffs.energy();
            let norm2 = f.norm_l2().powi(2);
            assert!((energy - norm2).abs() <= 1e-12 * norm2.max(1.0));
        }
    }

    #[test]
    fn cancellative_coefficients_ignore_global_constants() {
        let mut rng = derive_rng(5, 8, 0);
        let window = unit_window(5);
        let sys = ShiftedDyadicSystem::random(1, -2, 5, window, &mut rng).unwrap();
        let f = LatticeFunction::from_fn(1, 5, window, |_| rng.gen_range(-1.0..1.0));
        let mut g = f.clone();
        for v in g.values_mut() {
            *v += 7.5;
        }
        let cf = analyze(&sys, &f).unwrap();
        let cg = analyze(&sys, &g).unwrap();
        for ((cube, eta), v) in &cf.cancellative {
            // only cubes fully inside the window see a pure constant shift
            let o = sys.origin_units(cube);
            let s = sys.side_units(cube.level);
            let inside = (0..1).all(|i| o[i] >= 0 && o[i] + s <= window.side);
            if inside {
                let w = cg.cancellative.get(&(*cube, *eta)).copied().unwrap_or(0.0);
                assert!((v - w).abs() < 1e-10, "cube {cube:?}");
            }
        }
    }

    #[test]
    fn martingale_difference_identity() {
        // Summing all cancellative terms at one level refines the averages by
        // exactly one level.
        let mut rng = derive_rng(17, 2, 4);
        let window = unit_window(5);
        let sys = ShiftedDyadicSystem::random(2, -1, 5, window, &mut rng).unwrap();
        let f = LatticeFunction::from_fn(2, 5, window, |_| rng.gen_range(-1.0..1.0));
        let coeffs = analyze(&sys, &f).unwrap();
        let level = 2i32;
        let mut delta = LatticeFunction::zeros(2, 5, window);
        for ((cube, eta), c) in &coeffs.cancellative {
            if cube.level == level {
                let h = haar_function(&sys, &HaarIndex { cube: *cube, eta: *eta }, window).unwrap();
                delta.add_assign_scaled(&h, *c).unwrap();
            }
        }
        for i in 0..f.len() {
            let p = f.cell_origin(i);
            let fine = sys.locate_units(&p, level + 1).unwrap();
            let coarse = sys.locate_units(&p, level).unwrap();
            let expected = f.cube_average(&sys, &fine) - f.cube_average(&sys, &coarse);
            assert!((delta.values()[i] - expected).abs() < 1e-11);
        }
    }

    #[test]
    fn orthonormality_gram_identity_inside_window() {
        let mut rng = derive_rng(31, 6, 0);
        let window = unit_window(5);
        let sys = ShiftedDyadicSystem::random(1, 0, 5, window, &mut rng).unwrap();
        let mut funcs = Vec::new();
        for level in 0..5 {
            for cube in sys.cubes_at_level(level, &window).unwrap() {
                let o = sys.origin_units(&cube);
                let s = sys.side_units(level);
                if o[0] < 0 || o[0] + s > window.side {
                    continue;
                }
                funcs.push(haar_function(&sys, &HaarIndex { cube, eta: 1 }, window).unwrap());
            }
        }
        for (i, a) in funcs.iter().enumerate() {
            for (j, b) in funcs.iter().enumerate() {
                let ip = a.inner(b).unwrap();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn csv_roundtrip_preserves_bits() {
        let mut rng = derive_rng(41, 0, 0);
        let window = unit_window(3);
        let f = LatticeFunction::from_fn(2, 3, window, |_| rng.gen_range(-1.0..1.0));
        let text = f.to_csv();
        let g = LatticeFunction::from_csv(&text).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn haar_function_rejects_subresolution_cubes() {
        let sys = ShiftedDyadicSystem::unshifted(1, 0, 3, unit_window(3)).unwrap();
        let cell = sys.locate(&[0.2], 3).unwrap();
        assert!(matches!(
            haar_function(&sys, &HaarIndex { cube: cell, eta: 1 }, unit_window(3)),
            Err(Error::ResolutionTooFine)
        ));
        let _ = Modulus::power(0.5).unwrap(); // keep the import honest
    }
}
