//! Shifted dyadic cube systems with exact integer geometry.
//!
//! A system tracks levels `k` in `[k_min, k_max]`; a cube at level `k` has
//! sidelength `2^-k`. All geometry is done in "fine units" of `2^-k_max`, so
//! membership, nesting, joins and boundary distances are exact integer
//! arithmetic. Each level `j` in `(k_min, k_max]` carries a translation bit
//! vector in `{0,1}^d`; the cube at level `k` with index `m` occupies
//! `prod_i [2^-k m_i, 2^-k (m_i + 1)) + s_k` where
//! `s_k = sum_{j > k} 2^-j w_j` componentwise.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::derive_rng;
use crate::MAX_DIM;

/// Identifier stamped on cubes so cross-system use is caught early.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SystemId(u64);

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

pub type Index = [i64; MAX_DIM];

/// Dyadic cube: level plus integer index, owned by one system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cube {
    pub level: i32,
    pub index: Index,
    pub system: SystemId,
}

/// Axis-aligned cube-shaped region in fine units; the tracked window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub origin: Index,
    pub side: i64,
}

impl Window {
    pub fn new(origin: Index, side: i64) -> Self {
        assert!(side > 0);
        Window { origin, side }
    }

    /// Unit window `[0, side)^d` at the origin.
    pub fn at_origin(side: i64) -> Self {
        Window::new([0; MAX_DIM], side)
    }

    pub fn contains_point(&self, p: &Index, dim: usize) -> bool {
        (0..dim).all(|i| p[i] >= self.origin[i] && p[i] < self.origin[i] + self.side)
    }
}

/// Verdict of the boundary-proximity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BadnessVerdict {
    pub bad: bool,
    /// Not all gap depths required by the config were enumerable.
    pub truncated: bool,
    /// Number of coarser levels that were actually examined.
    pub gaps_tested: u32,
}

/// Modulus of continuity on [0, 1]: strictly increasing, fixing 0 and 1, with
/// `t -> phi(t)/t` non-increasing and a finite Dini integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Modulus {
    /// `t^gamma`, `gamma` in (0, 1].
    Power { gamma: f64 },
    /// `(1 + log(1/t)/gamma)^-gamma`, `gamma > 1`.
    LogPower { gamma: f64 },
}

impl Modulus {
    pub fn power(gamma: f64) -> Result<Self> {
        if gamma > 0.0 && gamma <= 1.0 {
            Ok(Modulus::Power { gamma })
        } else {
            Err(Error::InvalidParameter(format!(
                "power modulus needs gamma in (0,1], got {gamma}"
            )))
        }
    }

    pub fn log_power(gamma: f64) -> Result<Self> {
        if gamma > 1.0 {
            Ok(Modulus::LogPower { gamma })
        } else {
            Err(Error::InvalidParameter(format!(
                "log-power modulus needs gamma > 1, got {gamma}"
            )))
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let t = t.min(1.0);
        match *self {
            Modulus::Power { gamma } => t.powf(gamma),
            Modulus::LogPower { gamma } => (1.0 + (1.0 / t).ln() / gamma).powf(-gamma),
        }
    }

    /// Dini integral `int_0^s eval(t) dt/t` in closed form.
    pub fn dini_to(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        let s = s.min(1.0);
        match *self {
            Modulus::Power { gamma } => s.powf(gamma) / gamma,
            Modulus::LogPower { gamma } => {
                gamma / (gamma - 1.0) * (1.0 + (1.0 / s).ln() / gamma).powf(1.0 - gamma)
            }
        }
    }
}

/// Parameters of the good/bad cube test: modulus, separation exponent `r`,
/// and how many extra gap depths beyond `r` a verdict must see before it is
/// considered untruncated.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GoodnessConfig {
    pub modulus: Modulus,
    pub r: u32,
    pub extra_depth: u32,
}

impl GoodnessConfig {
    pub fn new(modulus: Modulus, r: u32) -> Result<Self> {
        Self::with_extra_depth(modulus, r, 4)
    }

    pub fn with_extra_depth(modulus: Modulus, r: u32, extra_depth: u32) -> Result<Self> {
        let cfg = GoodnessConfig {
            modulus,
            r,
            extra_depth,
        };
        // Standing assumption: the bad boundary region must not swallow the
        // whole cube at the first tested gap.
        if 4.0 * modulus.eval(2f64.powi(-(r as i32))) > 1.0 {
            return Err(Error::InvalidParameter(format!(
                "separation parameter r={r} too small: 4*phi(2^-r) > 1"
            )));
        }
        Ok(cfg)
    }

    /// Depth a verdict must reach to be reported untruncated.
    pub fn required_depth(&self) -> u32 {
        self.r + self.extra_depth
    }
}

/// A translated dyadic grid over a bounded window and level range.
#[derive(Clone, Debug)]
pub struct ShiftedDyadicSystem {
    id: SystemId,
    dim: usize,
    k_min: i32,
    k_max: i32,
    /// Translation bits per level j in (k_min, k_max]; bit i of `bits[t]` is
    /// the i-th coordinate of w_{k_min+1+t}.
    bits: Vec<u32>,
    /// Cumulative shift s_k in fine units, for k in [k_min, k_max].
    shifts: Vec<Index>,
    window: Window,
}

impl ShiftedDyadicSystem {
    pub fn new(dim: usize, k_min: i32, k_max: i32, window: Window, bits: Vec<u32>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidParameter(format!(
                "dimension {dim} outside 1..={MAX_DIM}"
            )));
        }
        if k_min >= k_max {
            return Err(Error::InvalidParameter(format!(
                "need k_min < k_max, got [{k_min}, {k_max}]"
            )));
        }
        let span = (k_max - k_min) as usize;
        if span > 40 {
            return Err(Error::InvalidParameter(format!(
                "level span {span} too deep for exact integer units"
            )));
        }
        if bits.len() != span {
            return Err(Error::InvalidParameter(format!(
                "expected {span} shift bit masks, got {}",
                bits.len()
            )));
        }
        // s_k = s_{k+1} + 2^{k_max - (k+1)} w_{k+1}; s_{k_max} = 0.
        let mut shifts = vec![[0i64; MAX_DIM]; span + 1];
        for t in (0..span).rev() {
            // shifts[t] is s_{k_min + t}; bits[t] is w_{k_min + 1 + t}.
            let step = 1i64 << (span - 1 - t);
            let mask = bits[t];
            for i in 0..dim {
                shifts[t][i] = shifts[t + 1][i] + step * ((mask >> i) & 1) as i64;
            }
        }
        Ok(ShiftedDyadicSystem {
            id: SystemId(NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed)),
            dim,
            k_min,
            k_max,
            bits,
            shifts,
            window,
        })
    }

    /// Reference (unshifted) system.
    pub fn unshifted(dim: usize, k_min: i32, k_max: i32, window: Window) -> Result<Self> {
        let span = (k_max - k_min) as usize;
        Self::new(dim, k_min, k_max, window, vec![0; span])
    }

    /// System with uniformly random translation bits.
    pub fn random<R: Rng>(
        dim: usize,
        k_min: i32,
        k_max: i32,
        window: Window,
        rng: &mut R,
    ) -> Result<Self> {
        let span = (k_max - k_min) as usize;
        let mask = (1u32 << dim) - 1;
        let bits = (0..span).map(|_| rng.gen::<u32>() & mask).collect();
        Self::new(dim, k_min, k_max, window, bits)
    }

    pub fn id(&self) -> SystemId {
        self.id
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn k_min(&self) -> i32 {
        self.k_min
    }
    pub fn k_max(&self) -> i32 {
        self.k_max
    }
    pub fn window(&self) -> Window {
        self.window
    }

    /// Bit mask w_j for level j in (k_min, k_max].
    pub fn level_bits(&self, j: i32) -> u32 {
        assert!(j > self.k_min && j <= self.k_max);
        self.bits[(j - self.k_min - 1) as usize]
    }

    pub fn all_bits(&self) -> &[u32] {
        &self.bits
    }

    fn check_level(&self, level: i32) -> Result<()> {
        if level < self.k_min || level > self.k_max {
            return Err(Error::LevelOutOfRange {
                level,
                k_min: self.k_min,
                k_max: self.k_max,
            });
        }
        Ok(())
    }

    pub fn check_cube(&self, cube: &Cube) -> Result<()> {
        if cube.system != self.id {
            return Err(Error::SystemMismatch);
        }
        self.check_level(cube.level)
    }

    /// Cube sidelength in fine units.
    pub fn side_units(&self, level: i32) -> i64 {
        1i64 << (self.k_max - level)
    }

    /// Physical sidelength `2^-level`.
    pub fn side_len(&self, level: i32) -> f64 {
        2f64.powi(-level)
    }

    /// Physical measure of one fine cell.
    pub fn cell_measure(&self) -> f64 {
        2f64.powi(-self.k_max * self.dim as i32)
    }

    /// Physical measure of a cube at `level`.
    pub fn cube_measure(&self, level: i32) -> f64 {
        2f64.powi(-level * self.dim as i32)
    }

    /// Shift s_k in fine units.
    pub fn shift_units(&self, level: i32) -> &Index {
        &self.shifts[(level - self.k_min) as usize]
    }

    /// Lower corner of a cube in fine units.
    pub fn origin_units(&self, cube: &Cube) -> Index {
        let side = self.side_units(cube.level);
        let s = self.shift_units(cube.level);
        let mut o = [0i64; MAX_DIM];
        for i in 0..self.dim {
            o[i] = cube.index[i] * side + s[i];
        }
        o
    }

    /// Cube at `level` containing the fine-unit point.
    pub fn locate_units(&self, point: &[i64], level: i32) -> Result<Cube> {
        self.check_level(level)?;
        let pad = 2 * self.side_units(self.k_min);
        for i in 0..self.dim {
            if point[i] < self.window.origin[i] - pad
                || point[i] >= self.window.origin[i] + self.window.side + pad
            {
                return Err(Error::PointOutsideWindow);
            }
        }
        let side = self.side_units(level);
        let s = self.shift_units(level);
        let mut index = [0i64; MAX_DIM];
        for i in 0..self.dim {
            index[i] = (point[i] - s[i]).div_euclid(side);
        }
        Ok(Cube {
            level,
            index,
            system: self.id,
        })
    }

    /// Cube at `level` containing the physical point `x`. The point is scaled
    /// to fine units and floored; all membership decisions stay integral.
    pub fn locate(&self, x: &[f64], level: i32) -> Result<Cube> {
        let scale = 2f64.powi(self.k_max);
        let mut p = [0i64; MAX_DIM];
        for i in 0..self.dim {
            let u = (x[i] * scale).floor();
            if u.abs() > 2f64.powi(52) {
                return Err(Error::PointOutsideWindow);
            }
            p[i] = u as i64;
        }
        self.locate_units(&p, level)
    }

    /// Parent cube; the child-to-parent index map uses the translation bit of
    /// the child's level.
    pub fn parent(&self, cube: &Cube) -> Result<Cube> {
        self.check_cube(cube)?;
        if cube.level - 1 < self.k_min {
            return Err(Error::LevelOutOfRange {
                level: cube.level - 1,
                k_min: self.k_min,
                k_max: self.k_max,
            });
        }
        let mask = self.level_bits(cube.level);
        let mut index = [0i64; MAX_DIM];
        for i in 0..self.dim {
            let w = ((mask >> i) & 1) as i64;
            index[i] = (cube.index[i] - w).div_euclid(2);
        }
        Ok(Cube {
            level: cube.level - 1,
            index,
            system: self.id,
        })
    }

    /// The m-fold dyadic ancestor; `ancestor(c, 0) = c`.
    pub fn ancestor(&self, cube: &Cube, m: u32) -> Result<Cube> {
        let mut c = *cube;
        self.check_cube(cube)?;
        for _ in 0..m {
            c = self.parent(&c)?;
        }
        Ok(c)
    }

    /// Child in corner `corner` (bit i selects the upper half in dim i).
    pub fn child(&self, cube: &Cube, corner: u32) -> Result<Cube> {
        self.check_cube(cube)?;
        if cube.level + 1 > self.k_max {
            return Err(Error::ResolutionTooFine);
        }
        let mask = self.level_bits(cube.level + 1);
        let mut index = [0i64; MAX_DIM];
        for i in 0..self.dim {
            let w = ((mask >> i) & 1) as i64;
            index[i] = 2 * cube.index[i] + w + ((corner >> i) & 1) as i64;
        }
        Ok(Cube {
            level: cube.level + 1,
            index,
            system: self.id,
        })
    }

    pub fn children(&self, cube: &Cube) -> Result<Vec<Cube>> {
        (0..(1u32 << self.dim))
            .map(|corner| self.child(cube, corner))
            .collect()
    }

    /// Corner position of `cube` within its parent.
    pub fn corner_in_parent(&self, cube: &Cube) -> Result<u32> {
        self.check_cube(cube)?;
        let mask = self.level_bits(cube.level);
        let mut corner = 0u32;
        for i in 0..self.dim {
            let w = ((mask >> i) & 1) as i64;
            let c = (cube.index[i] - w).rem_euclid(2);
            corner |= (c as u32) << i;
        }
        Ok(corner)
    }

    pub fn contains(&self, outer: &Cube, inner: &Cube) -> Result<bool> {
        self.check_cube(outer)?;
        self.check_cube(inner)?;
        if outer.level > inner.level {
            return Ok(false);
        }
        Ok(self.ancestor(inner, (inner.level - outer.level) as u32)? == *outer)
    }

    /// Smallest cube containing both, if one exists within the level range.
    pub fn join(&self, a: &Cube, b: &Cube) -> Result<Cube> {
        self.check_cube(a)?;
        self.check_cube(b)?;
        let mut x = *a;
        let mut y = *b;
        while x.level > y.level {
            x = self.parent(&x)?;
        }
        while y.level > x.level {
            y = self.parent(&y)?;
        }
        loop {
            if x == y {
                return Ok(x);
            }
            if x.level == self.k_min {
                return Err(Error::NoCommonAncestor);
            }
            x = self.parent(&x)?;
            y = self.parent(&y)?;
        }
    }

    /// l-infinity distance between two cubes in fine units (0 when they touch
    /// or overlap).
    pub fn dist_units(&self, a: &Cube, b: &Cube) -> i64 {
        let oa = self.origin_units(a);
        let ob = self.origin_units(b);
        let sa = self.side_units(a.level);
        let sb = self.side_units(b.level);
        let mut dist = 0i64;
        for i in 0..self.dim {
            let gap = (ob[i] - (oa[i] + sa)).max(oa[i] - (ob[i] + sb)).max(0);
            dist = dist.max(gap);
        }
        dist
    }

    /// Distance from `inner` (contained in `outer`) to the boundary of
    /// `outer`, in fine units.
    pub fn boundary_dist_units(&self, inner: &Cube, outer: &Cube) -> i64 {
        let oi = self.origin_units(inner);
        let oo = self.origin_units(outer);
        let si = self.side_units(inner.level);
        let so = self.side_units(outer.level);
        let mut dist = i64::MAX;
        for i in 0..self.dim {
            let lower = oi[i] - oo[i];
            let upper = (oo[i] + so) - (oi[i] + si);
            dist = dist.min(lower).min(upper);
        }
        dist
    }

    /// Cubes at `level` whose closure meets `region`, in lexicographic index
    /// order.
    pub fn cubes_at_level(&self, level: i32, region: &Window) -> Result<Vec<Cube>> {
        self.check_level(level)?;
        let side = self.side_units(level);
        let s = self.shift_units(level);
        let mut lo = [0i64; MAX_DIM];
        let mut hi = [0i64; MAX_DIM];
        for i in 0..self.dim {
            lo[i] = (region.origin[i] - s[i]).div_euclid(side);
            hi[i] = (region.origin[i] + region.side - 1 - s[i]).div_euclid(side);
        }
        let mut out = Vec::new();
        let mut idx = lo;
        loop {
            out.push(Cube {
                level,
                index: idx,
                system: self.id,
            });
            // lexicographic advance over dims 0..dim
            let mut d = self.dim;
            loop {
                if d == 0 {
                    return Ok(out);
                }
                d -= 1;
                if idx[d] < hi[d] {
                    idx[d] += 1;
                    for t in d + 1..self.dim {
                        idx[t] = lo[t];
                    }
                    break;
                }
            }
        }
    }

    /// All cubes meeting `region` with levels in `[level_from, level_to]`,
    /// coarse to fine.
    pub fn cubes_in_range(
        &self,
        level_from: i32,
        level_to: i32,
        region: &Window,
    ) -> Result<Vec<Cube>> {
        let mut out = Vec::new();
        for level in level_from..=level_to {
            out.extend(self.cubes_at_level(level, region)?);
        }
        Ok(out)
    }

    /// Boundary-proximity test: the cube is bad when some enumerable ancestor
    /// `J` at gap `g >= r` has `dist(I, boundary J) <= phi(2^-g) * side(J)`.
    /// Restricting to containing ancestors is exact for the l-infinity
    /// distance: the nearest grid hyperplane of any same-size cube is a face
    /// of the containing one (tested against brute force over all cubes).
    pub fn is_bad(&self, cube: &Cube, cfg: &GoodnessConfig) -> Result<BadnessVerdict> {
        self.check_cube(cube)?;
        let available = (cube.level - self.k_min) as u32;
        let truncated = available < cfg.required_depth();
        let mut bad = false;
        let mut anc = *cube;
        for g in 1..=available {
            anc = self.parent(&anc)?;
            if g < cfg.r {
                continue;
            }
            let dist = self.boundary_dist_units(cube, &anc) as f64;
            let threshold =
                cfg.modulus.eval(2f64.powi(-(g as i32))) * self.side_units(anc.level) as f64;
            if dist <= threshold {
                bad = true;
                break;
            }
        }
        Ok(BadnessVerdict {
            bad,
            truncated,
            gaps_tested: available,
        })
    }
}

/// Closed-form upper bound `8 d * int_0^{2^-r} phi(t) dt/t` for the badness
/// probability.
pub fn bad_probability_bound(cfg: &GoodnessConfig, dim: usize) -> f64 {
    8.0 * dim as f64 * cfg.modulus.dini_to(2f64.powi(-(cfg.r as i32)))
}

/// Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Badness probability of a reference cube seen through `depth` coarser
/// levels, indexed by how many of those levels are visible. Entry `G` is the
/// probability of being good when gaps `r..=G` are enumerable.
#[derive(Clone, Debug, Serialize)]
pub struct GoodProbabilityTable {
    pub r: u32,
    pub depth_max: u32,
    pub samples: u64,
    pub pi_good: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl GoodProbabilityTable {
    pub fn lookup(&self, gaps_available: u32) -> (f64, f64) {
        assert!(
            gaps_available <= self.depth_max,
            "table depth {} < requested {}",
            self.depth_max,
            gaps_available
        );
        let g = gaps_available as usize;
        (self.pi_good[g], self.stderr[g])
    }
}

/// Offset of a reference cube inside its gap-`g` ancestors, driven by fresh
/// translation bits. `offsets[g-1][i]` is the i-th coordinate of the cube's
/// lower corner inside the gap-`g` ancestor, in units of the cube side.
fn sample_ancestor_offsets<R: Rng>(dim: usize, depth: u32, rng: &mut R) -> Vec<Index> {
    let mask_all = (1u32 << dim) - 1;
    let mut offsets = Vec::with_capacity(depth as usize);
    let mut m = [0i64; MAX_DIM];
    let mut p = [0i64; MAX_DIM];
    for g in 1..=depth {
        let w = rng.gen::<u32>() & mask_all;
        let mut parent = [0i64; MAX_DIM];
        for i in 0..dim {
            let wi = ((w >> i) & 1) as i64;
            parent[i] = (m[i] - wi).div_euclid(2);
            let corner = (m[i] - wi).rem_euclid(2);
            p[i] += corner << (g - 1);
        }
        m = parent;
        offsets.push(p);
    }
    offsets
}

fn bad_at_gap(cfg: &GoodnessConfig, dim: usize, g: u32, offset: &Index) -> bool {
    let side = 1i64 << g;
    let mut dist = i64::MAX;
    for i in 0..dim {
        dist = dist.min(offset[i]).min(side - 1 - offset[i]);
    }
    (dist as f64) <= cfg.modulus.eval(2f64.powi(-(g as i32))) * side as f64
}

/// Per-depth badness table by Monte Carlo over fresh translation bits. The
/// probability is the same for every reference cube with the given number of
/// enumerable coarser levels, which is what makes one table reusable across
/// levels of a lattice.
pub fn estimate_good_table(
    cfg: &GoodnessConfig,
    dim: usize,
    depth_max: u32,
    samples: u64,
    seed: u64,
) -> GoodProbabilityTable {
    let depth = depth_max.max(cfg.r);
    let counts: Vec<u64> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = derive_rng(seed, 0x67726964, s);
            let offsets = sample_ancestor_offsets(dim, depth, &mut rng);
            let mut bad_mask = 0u64;
            let mut bad = false;
            for g in cfg.r..=depth {
                if !bad && bad_at_gap(cfg, dim, g, &offsets[(g - 1) as usize]) {
                    bad = true;
                }
                if bad {
                    bad_mask |= 1 << (g.min(63));
                }
            }
            bad_mask
        })
        .fold(
            || vec![0u64; (depth + 1) as usize],
            |mut acc, mask| {
                for (g, a) in acc.iter_mut().enumerate() {
                    if mask & (1 << (g.min(63))) != 0 {
                        *a += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; (depth + 1) as usize],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let mut pi_good = vec![1.0; (depth_max + 1) as usize];
    let mut stderr = vec![0.0; (depth_max + 1) as usize];
    for g in cfg.r..=depth_max {
        let p_bad = counts[g as usize] as f64 / samples as f64;
        pi_good[g as usize] = 1.0 - p_bad;
        stderr[g as usize] = (p_bad * (1.0 - p_bad) / samples as f64).sqrt();
    }
    GoodProbabilityTable {
        r: cfg.r,
        depth_max,
        samples,
        pi_good,
        stderr,
    }
}

/// Monte Carlo estimate of the badness probability for a reference cube with
/// `required_depth()` enumerable coarser levels.
pub fn estimate_bad_probability(
    cfg: &GoodnessConfig,
    dim: usize,
    samples: u64,
    seed: u64,
) -> McEstimate {
    let depth = cfg.required_depth();
    let table = estimate_good_table(cfg, dim, depth, samples, seed);
    let (pi_good, se) = table.lookup(depth);
    McEstimate {
        mean: 1.0 - pi_good,
        stderr: se,
        samples,
    }
}

/// Independence check between the position of a shifted cube and its badness:
/// samples full translation vectors, classifies the position by the finest
/// shift bits, and runs a chi-square independence test on the
/// (position class) x (bad) contingency table.
pub fn badness_position_chisq(
    cfg: &GoodnessConfig,
    dim: usize,
    samples: u64,
    seed: u64,
) -> Result<(f64, u32, f64)> {
    let depth = cfg.required_depth() as i32;
    let classes = 1usize << dim;
    let mut table = vec![vec![0u64; 2]; classes];
    let window = Window::at_origin(2);
    for s in 0..samples {
        let mut rng = derive_rng(seed, 0x63686973, s);
        let sys = ShiftedDyadicSystem::random(dim, -depth, 1, window, &mut rng)?;
        let cube = Cube {
            level: 0,
            index: [0; MAX_DIM],
            system: sys.id(),
        };
        let verdict = sys.is_bad(&cube, cfg)?;
        // Position class: the level-1 bits, the coarsest bits that move the
        // reference cube without changing its badness.
        let class = (sys.level_bits(1) as usize) & (classes - 1);
        table[class][verdict.bad as usize] += 1;
    }
    Ok(crate::stats::chi_square_independence(&table))
}
