//! Numerical oracle for the orientation sign of the gluing that smooths a
//! three-component real curve into a one-component one.
//!
//! A fixed-point-free real map to `P^{2n-1}` in the standard chart is a pair
//! of polynomials per coordinate pair: coordinate `2i-1` is
//! `A_i prod (x - a_{i;r} y)` and coordinate `2i` its conjugate-reflected
//! partner `conj(A_i) prod (conj(a_{i;r}) x + y)`. Gluing a conjugate pair
//! of degree-`d1` bubbles attached at a node parameter `c` multiplies each
//! coordinate by `d1` factors `(x - (c + b v) y)(conj(c + b' v) x + y)`.
//!
//! In root coordinates the smoothing is, per slot, either the translation
//! `b -> c + b` (holomorphic) or the reflected `b -> -1/conj(c + b)`
//! (antiholomorphic): the factor `(conj(c + b) x + y)` rewrites as
//! `conj(c + b) (x - (-1/conj(c + b)) y)`, with the constant absorbed into
//! the scale vector (dividing by the antiholomorphic root is the same point
//! of `RP^{2n-1}` up to the positive-vs-negative real factor, which the
//! quotient kills). Each antiholomorphic slot flips orientation and there
//! are `n * d1` of them, so the coordinate gluing map has Jacobian sign
//! `(-1)^{n*d1}`; [`jacobian_sign`] verifies that by central finite
//! differences at random well-conditioned samples.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;

use crate::rng::SplitMix64;

type Cx = Complex64;

/// Fixed-locus-free involution on ambient homogeneous coordinates
/// (pairwise `(z1, z2) -> (-conj z2, conj z1)`).
pub fn eta_ambient(z: &[Cx]) -> Vec<Cx> {
    assert!(z.len().is_multiple_of(2));
    let mut out = Vec::with_capacity(z.len());
    for pair in z.chunks_exact(2) {
        out.push(-pair[1].conj());
        out.push(pair[0].conj());
    }
    out
}

/// Involution fixing the real points (pairwise `(z1, z2) -> (conj z2, conj z1)`).
pub fn tau_ambient(z: &[Cx]) -> Vec<Cx> {
    assert!(z.len().is_multiple_of(2));
    let mut out = Vec::with_capacity(z.len());
    for pair in z.chunks_exact(2) {
        out.push(pair[1].conj());
        out.push(pair[0].conj());
    }
    out
}

/// The fixed-point-free involution on the domain line.
pub fn eta_domain(p: [Cx; 2]) -> [Cx; 2] {
    [-p[1].conj(), p[0].conj()]
}

/// Degree-`d2` real map chart: `n` root lists and the scale vector, a point
/// of `RP^{2n-1} = (C^n - 0)/R^*`.
#[derive(Clone, Debug)]
pub struct RealMapChart {
    n: usize,
    degree: usize,
    roots: Vec<Vec<Cx>>,
    scales: Vec<Cx>,
}

impl RealMapChart {
    /// Validates shapes, a nonzero scale vector, and nondegeneracy: no point
    /// of the domain may be a root of all `2n` coordinate polynomials, i.e.
    /// the root lists and their reflected partners `-1/conj(a)` must have no
    /// common element across all coordinates.
    pub fn new(roots: Vec<Vec<Cx>>, scales: Vec<Cx>) -> Result<Self, GluingError> {
        let n = scales.len();
        if n == 0 || roots.len() != n {
            return Err(GluingError::ShapeMismatch {
                what: "need one root list per scale entry",
            });
        }
        let degree = roots[0].len();
        if degree == 0 || roots.iter().any(|list| list.len() != degree) {
            return Err(GluingError::ShapeMismatch {
                what: "root lists must share one positive length",
            });
        }
        if scales.iter().all(|a| a.norm_sqr() == 0.0) {
            return Err(GluingError::ZeroScales);
        }
        let chart = RealMapChart {
            n,
            degree,
            roots,
            scales,
        };
        if chart.is_degenerate() {
            return Err(GluingError::DegenerateChart);
        }
        Ok(chart)
    }

    fn is_degenerate(&self) -> bool {
        'candidate: for &z in &self.roots[0] {
            for list in &self.roots {
                if !list.contains(&z) {
                    continue 'candidate;
                }
            }
            for list in &self.roots {
                if !list
                    .iter()
                    .any(|&a| a.norm_sqr() > 0.0 && -(a.conj()).inv() == z)
                {
                    continue 'candidate;
                }
            }
            return true;
        }
        false
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn roots(&self) -> &[Vec<Cx>] {
        &self.roots
    }

    pub fn scales(&self) -> &[Cx] {
        &self.scales
    }

    /// Evaluates the `2n` homogeneous coordinates at a domain point.
    pub fn eval(&self, p: [Cx; 2]) -> Vec<Cx> {
        let [x, y] = p;
        let mut out = Vec::with_capacity(2 * self.n);
        for (list, &scale) in self.roots.iter().zip(&self.scales) {
            let mut odd = scale;
            let mut even = scale.conj();
            for &a in list {
                odd *= x - a * y;
                even *= a.conj() * x + y;
            }
            out.push(odd);
            out.push(even);
        }
        out
    }
}

/// A three-component real map (conjugate bubble pair of degree `d1` glued to
/// a central chart of degree `d2`) together with one smoothing parameter;
/// `smoothing = 0` is the nodal map.
#[derive(Clone, Debug)]
pub struct BubbleConfiguration {
    chart: RealMapChart,
    bubble_degree: usize,
    node: Cx,
    bubble_roots: Vec<Vec<Cx>>,
    smoothing: Cx,
}

impl BubbleConfiguration {
    pub fn new(
        chart: RealMapChart,
        node: Cx,
        bubble_roots: Vec<Vec<Cx>>,
        smoothing: Cx,
    ) -> Result<Self, GluingError> {
        if node.norm_sqr() == 0.0 {
            return Err(GluingError::DomainViolation {
                what: "node parameter must be nonzero",
            });
        }
        if bubble_roots.len() != 2 * chart.n() {
            return Err(GluingError::ShapeMismatch {
                what: "need 2n bubble root lists",
            });
        }
        let d1 = bubble_roots[0].len();
        if d1 == 0 || bubble_roots.iter().any(|list| list.len() != d1) {
            return Err(GluingError::ShapeMismatch {
                what: "bubble root lists must share one positive length",
            });
        }
        let config = BubbleConfiguration {
            chart,
            bubble_degree: d1,
            node,
            bubble_roots,
            smoothing,
        };
        config.check_smoothing()?;
        Ok(config)
    }

    /// The evaluated smoothing must keep every shifted root inside the node
    /// disk: `|b * v| < |c|`.
    fn check_smoothing(&self) -> Result<(), GluingError> {
        let bound = self.node.norm_sqr();
        let v2 = self.smoothing.norm_sqr();
        for list in &self.bubble_roots {
            if list.iter().any(|b| b.norm_sqr() * v2 >= bound) {
                return Err(GluingError::DomainViolation {
                    what: "|b * v| must stay below |c|",
                });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.chart.n()
    }

    pub fn bubble_degree(&self) -> usize {
        self.bubble_degree
    }

    pub fn node(&self) -> Cx {
        self.node
    }

    pub fn chart(&self) -> &RealMapChart {
        &self.chart
    }

    pub fn smoothing(&self) -> Cx {
        self.smoothing
    }

    /// Replaces the smoothing parameter, re-checking the domain condition.
    pub fn set_smoothing(&mut self, smoothing: Cx) -> Result<(), GluingError> {
        let previous = self.smoothing;
        self.smoothing = smoothing;
        if let Err(err) = self.check_smoothing() {
            self.smoothing = previous;
            return Err(err);
        }
        Ok(())
    }

    /// Total degree `2*d1 + d2` of the glued map.
    pub fn total_degree(&self) -> usize {
        2 * self.bubble_degree + self.chart.degree()
    }

    /// Evaluates the glued family member at a domain point. Coordinate
    /// `2i-1` multiplies the central factors by
    /// `(x - (c + b_{2i-1;s} v) y)(conj(c + b_{2i;s} v) x + y)` over the
    /// bubble slots; coordinate `2i` uses the index-swapped pattern.
    pub fn eval(&self, p: [Cx; 2]) -> Vec<Cx> {
        let [x, y] = p;
        let v = self.smoothing;
        let c = self.node;
        let mut out = self.chart.eval(p);
        for i in 0..self.n() {
            let holo = &self.bubble_roots[2 * i];
            let anti = &self.bubble_roots[2 * i + 1];
            let mut odd = Cx::new(1.0, 0.0);
            let mut even = Cx::new(1.0, 0.0);
            for s in 0..self.bubble_degree {
                let shifted_holo = c + holo[s] * v;
                let shifted_anti = c + anti[s] * v;
                odd *= (x - shifted_holo * y) * (shifted_anti.conj() * x + y);
                even *= (x - shifted_anti * y) * (shifted_holo.conj() * x + y);
            }
            out[2 * i] *= odd;
            out[2 * i + 1] *= even;
        }
        out
    }
}

/// Componentwise distance between two homogeneous coordinate vectors viewed
/// as projective points: both are rescaled to 1 at the index where the first
/// has largest magnitude, and the largest absolute difference of real
/// components is returned.
pub fn projective_residual(u: &[Cx], w: &[Cx]) -> f64 {
    assert_eq!(u.len(), w.len());
    let mut pivot = 0;
    for (i, z) in u.iter().enumerate() {
        if z.norm_sqr() > u[pivot].norm_sqr() {
            pivot = i;
        }
    }
    if u[pivot].norm_sqr() == 0.0 || w[pivot].norm_sqr() == 0.0 {
        return f64::INFINITY;
    }
    let mut worst = 0.0f64;
    for i in 0..u.len() {
        let du = u[i] / u[pivot];
        let dw = w[i] / w[pivot];
        worst = worst.max((du.re - dw.re).abs()).max((du.im - dw.im).abs());
    }
    worst
}

/// Largest reality defect of a map evaluator over the sample points:
/// `u(eta(p))` compared against `eta_ambient(u(p))` as projective points.
pub fn max_reality_residual<F>(eval: F, samples: &[[Cx; 2]]) -> f64
where
    F: Fn([Cx; 2]) -> Vec<Cx>,
{
    let mut worst = 0.0f64;
    for &p in samples {
        let twisted = eval(eta_domain(p));
        let reflected = eta_ambient(&eval(p));
        worst = worst.max(projective_residual(&twisted, &reflected));
    }
    worst
}

/// True iff the evaluator commutes with the involutions at every sample, to
/// tolerance.
pub fn check_reality<F>(eval: F, samples: &[[Cx; 2]], tolerance: f64) -> bool
where
    F: Fn([Cx; 2]) -> Vec<Cx>,
{
    assert!(!samples.is_empty());
    max_reality_residual(eval, samples) < tolerance
}

/// Holomorphic root slot of the smoothing: `b -> c + b`.
pub fn smoothed_root(c: Cx, b: Cx) -> Cx {
    c + b
}

/// Antiholomorphic root slot: the factor `(conj(c + b) x + y)` contributes
/// the root `-1/conj(c + b)` once its constant is absorbed into the scale.
pub fn reflected_root(c: Cx, b: Cx) -> Cx {
    -(c + b).conj().inv()
}

/// The coordinate form of the gluing: bubble roots and central roots go to
/// the root lists of the glued map (interleaving the holomorphic and
/// antiholomorphic slots, then the central roots), and the scale vector is
/// divided by the antiholomorphic constants. Domain and codomain both have
/// real dimension `2n(2*d1 + d2) + (2n - 1)`.
pub fn glue_coordinates(
    node: Cx,
    bubble_roots: &[Vec<Cx>],
    central_roots: &[Vec<Cx>],
    scales: &[Cx],
) -> Result<(Vec<Vec<Cx>>, Vec<Cx>), GluingError> {
    let n = scales.len();
    if central_roots.len() != n || bubble_roots.len() != 2 * n {
        return Err(GluingError::ShapeMismatch {
            what: "need n central root lists, 2n bubble root lists, n scales",
        });
    }
    let d1 = bubble_roots.first().map_or(0, |list| list.len());
    if bubble_roots.iter().any(|list| list.len() != d1) {
        return Err(GluingError::ShapeMismatch {
            what: "bubble root lists must share one length",
        });
    }
    let d2 = central_roots[0].len();
    if central_roots.iter().any(|list| list.len() != d2) {
        return Err(GluingError::ShapeMismatch {
            what: "central root lists must share one length",
        });
    }
    let bound = node.norm_sqr();
    if bound == 0.0 {
        return Err(GluingError::DomainViolation {
            what: "node parameter must be nonzero",
        });
    }
    for list in bubble_roots {
        if list.iter().any(|b| b.norm_sqr() >= bound) {
            return Err(GluingError::DomainViolation {
                what: "|b| must stay below |c|",
            });
        }
    }

    let mut glued_roots = Vec::with_capacity(n);
    let mut glued_scales = Vec::with_capacity(n);
    for i in 0..n {
        let mut list = Vec::with_capacity(2 * d1 + d2);
        let mut divisor = Cx::new(1.0, 0.0);
        #[allow(clippy::needless_range_loop)]
        for s in 0..d1 {
            list.push(smoothed_root(node, bubble_roots[2 * i][s]));
            let reflected = reflected_root(node, bubble_roots[2 * i + 1][s]);
            list.push(reflected);
            divisor *= reflected;
        }
        list.extend_from_slice(&central_roots[i]);
        glued_roots.push(list);
        glued_scales.push(scales[i] / divisor);
    }
    Ok((glued_roots, glued_scales))
}

/// Settings for the finite-difference sign check. Only signs are consumed,
/// so samples whose determinant falls below the floor (relative to the
/// product of row norms) are rejected as ill-conditioned rather than
/// trusted.
#[derive(Clone, Copy, Debug)]
pub struct SignCheckSettings {
    /// Relative step for central differences.
    pub step: f64,
    /// Determinant rejection floor, as a fraction of the row-norm product.
    pub det_floor: f64,
}

impl Default for SignCheckSettings {
    fn default() -> Self {
        SignCheckSettings {
            step: 1e-6,
            det_floor: 1e-8,
        }
    }
}

/// One cell of the sign grid.
#[derive(Clone, Copy, Debug)]
pub struct SignCell {
    pub n: usize,
    pub d1: usize,
    pub d2: usize,
    /// Sign of the Jacobian determinant at the accepted samples.
    pub computed: i8,
    /// `(-1)^{n*d1}`.
    pub expected: i8,
    pub accepted: usize,
    pub rejected: usize,
    /// Whether every accepted sample produced the same sign.
    pub stable: bool,
}

impl SignCell {
    /// A cell passes iff all accepted samples agree with each other and with
    /// the expected sign.
    pub fn passed(&self) -> bool {
        self.accepted > 0 && self.stable && self.computed == self.expected
    }
}

#[derive(Clone, Debug)]
pub struct SignGrid {
    pub cells: Vec<SignCell>,
}

impl SignGrid {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(SignCell::passed)
    }
}

/// Packed real dimension of the domain/codomain of the coordinate gluing.
pub fn packed_dimension(n: usize, d1: usize, d2: usize) -> usize {
    4 * n * d1 + 2 * n * d2 + 2 * n - 1
}

/// Packs `(b, a, A)` into real coordinates. The scale vector is pinned to
/// the affine chart `Re(A_0) = 1` of `RP^{2n-1}`; the same chart is used on
/// the output side, so its orientation contribution cancels in the sign.
fn pack_domain(bubble: &[Vec<Cx>], central: &[Vec<Cx>], scales: &[Cx]) -> Vec<f64> {
    let mut x = Vec::new();
    for list in bubble.iter().chain(central.iter()) {
        for z in list {
            x.push(z.re);
            x.push(z.im);
        }
    }
    debug_assert!((scales[0].re - 1.0).abs() < 1e-12);
    x.push(scales[0].im);
    for z in &scales[1..] {
        x.push(z.re);
        x.push(z.im);
    }
    x
}

fn unpack_domain(
    n: usize,
    d1: usize,
    d2: usize,
    x: &[f64],
) -> (Vec<Vec<Cx>>, Vec<Vec<Cx>>, Vec<Cx>) {
    let mut at = 0;
    let mut take = |count: usize| -> Vec<Cx> {
        let mut list = Vec::with_capacity(count);
        for _ in 0..count {
            list.push(Cx::new(x[at], x[at + 1]));
            at += 2;
        }
        list
    };
    let bubble: Vec<Vec<Cx>> = (0..2 * n).map(|_| take(d1)).collect();
    let central: Vec<Vec<Cx>> = (0..n).map(|_| take(d2)).collect();
    let mut scales = Vec::with_capacity(n);
    scales.push(Cx::new(1.0, x[at]));
    at += 1;
    for _ in 1..n {
        scales.push(Cx::new(x[at], x[at + 1]));
        at += 2;
    }
    debug_assert_eq!(at, x.len());
    (bubble, central, scales)
}

/// Evaluates the gluing in packed coordinates. `None` when the input leaves
/// the domain or the output leaves the scale chart.
fn eval_packed(n: usize, d1: usize, d2: usize, node: Cx, x: &[f64]) -> Option<Vec<f64>> {
    let (bubble, central, scales) = unpack_domain(n, d1, d2, x);
    let (roots, new_scales) = glue_coordinates(node, &bubble, &central, &scales).ok()?;
    if new_scales[0].re.abs() < 1e-6 {
        return None;
    }
    let mut out = Vec::with_capacity(packed_dimension(n, d1, d2));
    for list in &roots {
        for z in list {
            out.push(z.re);
            out.push(z.im);
        }
    }
    let rescale = 1.0 / new_scales[0].re;
    out.push(new_scales[0].im * rescale);
    for z in &new_scales[1..] {
        out.push(z.re * rescale);
        out.push(z.im * rescale);
    }
    Some(out)
}

/// Determinant by LU with partial pivoting; returns 0 for singular input.
fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let dim = m.len();
    let mut det = 1.0f64;
    for col in 0..dim {
        let mut pivot = col;
        for row in col + 1..dim {
            if m[row][col].abs() > m[pivot][col].abs() {
                pivot = row;
            }
        }
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..dim {
            let factor = m[row][col] / m[col][col];
            if factor != 0.0 {
                #[allow(clippy::needless_range_loop)]
                for entry in col..dim {
                    let above = m[col][entry];
                    m[row][entry] -= factor * above;
                }
            }
        }
    }
    det
}

fn draw_in_annulus(rng: &mut SplitMix64, lo_sqr: f64, hi_sqr: f64, box_half: f64) -> Cx {
    loop {
        let z = Cx::new(
            rng.uniform(-box_half, box_half),
            rng.uniform(-box_half, box_half),
        );
        let r2 = z.norm_sqr();
        if r2 >= lo_sqr && r2 <= hi_sqr {
            return z;
        }
    }
}

/// Node parameter with `1 <= |c| <= 2`.
pub fn sample_node(rng: &mut SplitMix64) -> Cx {
    draw_in_annulus(rng, 1.0, 4.0, 2.0)
}

/// Random nondegenerate chart; root magnitudes in `[0.4, 1.6]`, scale
/// magnitudes in `[0.5, 1.5]`.
pub fn sample_chart(rng: &mut SplitMix64, n: usize, d2: usize) -> RealMapChart {
    loop {
        let roots: Vec<Vec<Cx>> = (0..n)
            .map(|_| {
                (0..d2)
                    .map(|_| draw_in_annulus(rng, 0.16, 2.56, 1.6))
                    .collect()
            })
            .collect();
        let scales: Vec<Cx> = (0..n)
            .map(|_| draw_in_annulus(rng, 0.25, 2.25, 1.5))
            .collect();
        if let Ok(chart) = RealMapChart::new(roots, scales) {
            return chart;
        }
    }
}

/// Random admissible bubble configuration; bubble roots stay inside 80% of
/// the node disk so any smoothing with `|v| <= 1` is admissible.
pub fn sample_bubble_configuration(
    rng: &mut SplitMix64,
    n: usize,
    d1: usize,
    d2: usize,
    smoothing: Cx,
) -> BubbleConfiguration {
    let chart = sample_chart(rng, n, d2);
    let node = sample_node(rng);
    let cap = 0.64 * node.norm_sqr();
    let bubble_roots: Vec<Vec<Cx>> = (0..2 * n)
        .map(|_| {
            (0..d1)
                .map(|_| draw_in_annulus(rng, 0.01 * cap, cap, 2.0))
                .collect()
        })
        .collect();
    BubbleConfiguration::new(chart, node, bubble_roots, smoothing)
        .expect("sampled configuration is admissible")
}

/// Domain points of moderate magnitude for reality checks.
pub fn sample_domain_points(rng: &mut SplitMix64, count: usize) -> Vec<[Cx; 2]> {
    (0..count)
        .map(|_| {
            [
                draw_in_annulus(rng, 0.25, 2.0, 1.5),
                draw_in_annulus(rng, 0.25, 2.0, 1.5),
            ]
        })
        .collect()
}

/// Estimates the orientation sign of the coordinate gluing for one
/// `(n, d1, d2)` cell by central finite differences at `samples` accepted
/// random points, and compares with `(-1)^{n*d1}`.
pub fn jacobian_sign(
    n: usize,
    d1: usize,
    d2: usize,
    samples: usize,
    seed: u64,
    settings: SignCheckSettings,
) -> Result<SignCell, GluingError> {
    assert!(n >= 1 && d2 >= 1 && samples >= 1);
    let expected: i8 = if (n * d1).is_multiple_of(2) { 1 } else { -1 };
    let mut rng = SplitMix64::derived(seed, &[n as u64, d1 as u64, d2 as u64]);
    let dim = packed_dimension(n, d1, d2);

    let mut accepted = 0usize;
    let mut rejected = 0usize;
    let mut computed: i8 = 0;
    let mut stable = true;
    let max_attempts = 40 * samples;

    for _ in 0..max_attempts {
        if accepted == samples {
            break;
        }
        let node = sample_node(&mut rng);
        let cap = 0.64 * node.norm_sqr();
        let bubble: Vec<Vec<Cx>> = (0..2 * n)
            .map(|_| {
                (0..d1)
                    .map(|_| draw_in_annulus(&mut rng, 0.01 * cap, cap, 2.0))
                    .collect()
            })
            .collect();
        let central: Vec<Vec<Cx>> = (0..n)
            .map(|_| {
                (0..d2)
                    .map(|_| draw_in_annulus(&mut rng, 0.16, 2.56, 1.6))
                    .collect()
            })
            .collect();
        let mut scales = vec![Cx::new(1.0, rng.uniform(-1.0, 1.0))];
        for _ in 1..n {
            scales.push(Cx::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
        }

        let x0 = pack_domain(&bubble, &central, &scales);
        debug_assert_eq!(x0.len(), dim);
        let Some(_) = eval_packed(n, d1, d2, node, &x0) else {
            rejected += 1;
            continue;
        };

        let mut jacobian: Vec<Vec<f64>> = vec![vec![0.0; dim]; dim];
        let mut valid = true;
        'columns: for col in 0..dim {
            let h = settings.step * x0[col].abs().max(1.0);
            let mut plus = x0.clone();
            plus[col] += h;
            let mut minus = x0.clone();
            minus[col] -= h;
            let (Some(fp), Some(fm)) = (
                eval_packed(n, d1, d2, node, &plus),
                eval_packed(n, d1, d2, node, &minus),
            ) else {
                valid = false;
                break 'columns;
            };
            for row in 0..dim {
                jacobian[row][col] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }
        if !valid {
            rejected += 1;
            continue;
        }

        let mut norm_product = 1.0f64;
        for row in &jacobian {
            norm_product *= row.iter().map(|v| v.abs()).sum::<f64>();
        }
        let det = determinant(jacobian);
        if det.abs() < settings.det_floor * norm_product {
            rejected += 1;
            continue;
        }
        let sign: i8 = if det > 0.0 { 1 } else { -1 };
        if accepted == 0 {
            computed = sign;
        } else if sign != computed {
            stable = false;
        }
        accepted += 1;
    }

    if accepted == 0 {
        return Err(GluingError::Inconclusive {
            n,
            d1,
            d2,
            attempts: max_attempts,
        });
    }
    Ok(SignCell {
        n,
        d1,
        d2,
        computed,
        expected,
        accepted,
        rejected,
        stable,
    })
}

/// Runs [`jacobian_sign`] over the whole `(n, d1, d2)` box.
pub fn sign_grid(
    n_max: usize,
    d1_max: usize,
    d2_max: usize,
    samples: usize,
    seed: u64,
    settings: SignCheckSettings,
) -> Result<SignGrid, GluingError> {
    let mut cells = Vec::new();
    for n in 1..=n_max {
        for d1 in 1..=d1_max {
            for d2 in 1..=d2_max {
                cells.push(jacobian_sign(n, d1, d2, samples, seed, settings)?);
            }
        }
    }
    Ok(SignGrid { cells })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GluingError {
    ShapeMismatch {
        what: &'static str,
    },
    DegenerateChart,
    ZeroScales,
    DomainViolation {
        what: &'static str,
    },
    /// Every sample of a sign-check cell was rejected; retry with another
    /// seed or a larger determinant floor.
    Inconclusive {
        n: usize,
        d1: usize,
        d2: usize,
        attempts: usize,
    },
}

impl fmt::Display for GluingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GluingError::ShapeMismatch { what } => write!(f, "shape mismatch: {what}"),
            GluingError::DegenerateChart => {
                write!(f, "degenerate chart: all coordinates share a root")
            }
            GluingError::ZeroScales => write!(f, "scale vector must be nonzero"),
            GluingError::DomainViolation { what } => write!(f, "domain violation: {what}"),
            GluingError::Inconclusive {
                n,
                d1,
                d2,
                attempts,
            } => write!(
                f,
                "sign check inconclusive for n={n} d1={d1} d2={d2}: all {attempts} samples rejected"
            ),
        }
    }
}

impl core::error::Error for GluingError {}

/// Renders a cell as one human-readable line.
pub fn render_cell(cell: &SignCell) -> String {
    format!(
        "n={} d1={} d2={}: sign={:+} expected={:+} accepted={} rejected={} {}",
        cell.n,
        cell.d1,
        cell.d2,
        cell.computed,
        cell.expected,
        cell.accepted,
        cell.rejected,
        if cell.passed() { "ok" } else { "MISMATCH" }
    )
}
