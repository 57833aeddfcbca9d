//! Fixed point indices as Brouwer degrees of `id − f`, computed from exact
//! rational samples.
//!
//! In the plane the degree is the winding number of the sampled loop,
//! counted by quadrant transitions. On a triangulated 2-sphere it is the
//! signed number of image triangles met by a ray from the origin.
//!
//! Sample points are produced with `libm` and converted exactly to
//! rationals, so every result is reproducible bit for bit.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use crate::error::{bail, Error, Result};
use crate::rational::Rational;

pub type Vec2 = [Rational; 2];
pub type Vec3 = [Rational; 3];

/// Values of `id − f` at equally spaced points of a circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledLoop {
    samples: Vec<Vec2>,
    radius: Rational,
}

impl SampledLoop {
    pub fn new(samples: Vec<Vec2>, radius: Rational) -> Result<Self> {
        if radius.signum() <= 0 {
            bail!(Domain, "radius must be positive, got {radius}");
        }
        if samples.len() < 8 {
            bail!(Undersampled, "a loop needs at least 8 samples, got {}", samples.len());
        }
        if let Some(i) = samples.iter().position(|v| v[0].is_zero() && v[1].is_zero()) {
            bail!(Domain, "sample {i} is zero: a fixed point lies on the circle");
        }
        let n = samples.len();
        for i in 0..n {
            let (a, b) = (&samples[i], &samples[(i + 1) % n]);
            if dot2(a, b).signum() <= 0 {
                bail!(
                    Undersampled,
                    "samples {i} and {} are at least a quarter turn apart",
                    (i + 1) % n
                );
            }
        }
        Ok(Self { samples, radius })
    }

    pub fn samples(&self) -> &[Vec2] {
        &self.samples
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }
}

fn dot2(a: &Vec2, b: &Vec2) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

/// Half-open quadrant: 0 for `x > 0, y ≥ 0`, then counterclockwise.
fn quadrant(v: &Vec2) -> u8 {
    let (x, y) = (v[0].signum(), v[1].signum());
    if x > 0 && y >= 0 {
        0
    } else if x <= 0 && y > 0 {
        1
    } else if x < 0 && y <= 0 {
        2
    } else {
        3
    }
}

/// Winding number of the loop around the origin.
pub fn winding_number(l: &SampledLoop) -> i64 {
    let n = l.samples.len();
    let mut quarter_turns = 0i64;
    for i in 0..n {
        let from = quadrant(&l.samples[i]);
        let to = quadrant(&l.samples[(i + 1) % n]);
        match (to + 4 - from) % 4 {
            1 => quarter_turns += 1,
            3 => quarter_turns -= 1,
            _ => {}
        }
    }
    debug_assert_eq!(quarter_turns % 4, 0);
    quarter_turns / 4
}

/// Samples `id − f` at `samples` equally spaced points of the circle of
/// radius `radius` around the origin. `f` receives the point and returns
/// the value of `id − f` there.
pub fn sample_loop<F>(radius: &Rational, samples: usize, mut f: F) -> Result<SampledLoop>
where
    F: FnMut(&Vec2) -> Vec2,
{
    let values = (0..samples)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / samples as f64;
            let p = [
                radius * &exact(libm::cos(theta)),
                radius * &exact(libm::sin(theta)),
            ];
            f(&p)
        })
        .collect();
    SampledLoop::new(values, radius.clone())
}

fn exact(x: f64) -> Rational {
    Rational::from_f64(x).expect("finite sample coordinate")
}

/// A triangulated sphere around the origin with the value of `id − g` at
/// every vertex. Triangles are listed counterclockwise seen from outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledSphereMap {
    vertices: Vec<Vec3>,
    values: Vec<Vec3>,
    triangles: Vec<[usize; 3]>,
}

impl SampledSphereMap {
    pub fn new(vertices: Vec<Vec3>, values: Vec<Vec3>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        if vertices.len() != values.len() {
            bail!(
                Dimension,
                "{} vertices but {} values",
                vertices.len(),
                values.len()
            );
        }
        if triangles.len() < 4 {
            bail!(Format, "a closed triangulated sphere needs at least 4 triangles");
        }
        let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            if tri.iter().any(|&v| v >= vertices.len()) {
                bail!(Format, "triangle {t} refers to a missing vertex");
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                bail!(Format, "triangle {t} repeats a vertex");
            }
            for e in 0..3 {
                *edges.entry((tri[e], tri[(e + 1) % 3])).or_insert(0) += 1;
            }
            if det3(&vertices[tri[0]], &vertices[tri[1]], &vertices[tri[2]]).signum() <= 0 {
                bail!(Format, "triangle {t} is not oriented outward");
            }
        }
        for (&(a, b), &count) in &edges {
            if count != 1 || edges.get(&(b, a)) != Some(&1) {
                bail!(
                    Format,
                    "edge ({a}, {b}) is not shared by exactly two consistently oriented triangles"
                );
            }
        }
        if let Some(i) = values.iter().position(|v| v.iter().all(Rational::is_zero)) {
            bail!(Domain, "value at vertex {i} is zero: a fixed point lies on the sphere");
        }
        for (t, tri) in triangles.iter().enumerate() {
            let [a, b, c] = tri.map(|i| &values[i]);
            let diam2 = [norm2(&sub(a, b)), norm2(&sub(b, c)), norm2(&sub(c, a))]
                .into_iter()
                .max()
                .expect("three edges");
            if diam2 >= distance2_to_origin(a, b, c) {
                bail!(
                    Undersampled,
                    "image of triangle {t} is not small compared with its distance to the origin"
                );
            }
        }
        Ok(Self {
            vertices,
            values,
            triangles,
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn values(&self) -> &[Vec3] {
        &self.values
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn dot3(a: &Vec3, b: &Vec3) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn norm2(a: &Vec3) -> Rational {
    dot3(a, a)
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Rational {
    dot3(a, &cross(b, c))
}

/// Squared distance from the origin to the segment `ab`.
fn segment_distance2(a: &Vec3, b: &Vec3) -> Rational {
    let d = sub(b, a);
    let len2 = norm2(&d);
    if len2.is_zero() {
        return norm2(a);
    }
    let t = -dot3(a, &d) / len2;
    let t = t.clamp(Rational::ZERO, Rational::ONE);
    let p = [&a[0] + &(&t * &d[0]), &a[1] + &(&t * &d[1]), &a[2] + &(&t * &d[2])];
    norm2(&p)
}

/// Squared distance from the origin to the closed triangle `abc`.
fn distance2_to_origin(a: &Vec3, b: &Vec3, c: &Vec3) -> Rational {
    let n = cross(&sub(b, a), &sub(c, a));
    let nn = norm2(&n);
    if !nn.is_zero() {
        let inside = [(a, b), (b, c), (c, a)]
            .iter()
            .all(|(p, q)| dot3(&cross(p, q), &n).signum() >= 0);
        if inside {
            let h = dot3(a, &n);
            return &h * &h / nn;
        }
    }
    [segment_distance2(a, b), segment_distance2(b, c), segment_distance2(c, a)]
        .into_iter()
        .min()
        .expect("three edges")
}

/// Fixed generic ray directions, tried in order.
const RAY_DIRECTIONS: [[i64; 3]; 8] = [
    [3, 5, 7],
    [-2, 7, 11],
    [13, -3, 5],
    [5, 11, -17],
    [-7, -2, 19],
    [17, -13, -3],
    [-11, 19, -5],
    [2, -23, -29],
];

/// Degree of `id − g` on the sampled sphere: the signed count of image
/// triangles crossed by a ray from the origin, with a triangle counting
/// `+1` when its image is positively oriented.
pub fn sphere_degree(s: &SampledSphereMap) -> Result<i64> {
    'direction: for dir in RAY_DIRECTIONS {
        let r = dir.map(Rational::from_i64);
        let mut total = 0i64;
        for tri in &s.triangles {
            match ray_crossing(&r, tri.map(|i| &s.values[i])) {
                Some(c) => total += c,
                None => continue 'direction,
            }
        }
        return Ok(total);
    }
    Err(Error::Degeneracy(alloc::format!(
        "every one of the {} ray directions meets an image triangle degenerately",
        RAY_DIRECTIONS.len()
    )))
}

/// `Some(±1)` if the ray `t·r, t > 0` crosses the open triangle,
/// `Some(0)` if it misses, `None` if it touches an edge or lies in its plane.
fn ray_crossing(r: &Vec3, [a, b, c]: [&Vec3; 3]) -> Option<i64> {
    let d = det3(a, b, c).signum();
    if d == 0 {
        // The triangle spans a plane through the origin.
        let n = [cross(a, b), cross(b, c), cross(c, a)]
            .into_iter()
            .find(|v| v.iter().any(|x| !x.is_zero()));
        return match n {
            Some(n) if dot3(r, &n).is_zero() => None,
            Some(_) => Some(0),
            None => {
                let parallel = [a, b, c].iter().any(|v| cross(r, v).iter().all(Rational::is_zero));
                if parallel {
                    None
                } else {
                    Some(0)
                }
            }
        };
    }
    let s = [det3(r, b, c).signum(), det3(a, r, c).signum(), det3(a, b, r).signum()];
    if s.contains(&0) {
        let others_agree = s.iter().all(|&x| x == 0 || x == d);
        return if others_agree { None } else { Some(0) };
    }
    if s.iter().all(|&x| x == d) {
        Some(d as i64)
    } else {
        Some(0)
    }
}

/// Triangulated sphere obtained from the `k`-fold subdivided octahedron.
/// The ring `|m| = u·k` is placed on a latitude given by
/// [`latitude_profile`]; a positive grading `s` concentrates rings near the
/// equator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[usize; 3]>,
    pub subdivisions: usize,
}

impl SphereMesh {
    pub fn octahedral(radius: &Rational, k: usize) -> Self {
        Self::graded(radius, k, 0.0)
    }

    pub fn graded(radius: &Rational, k: usize, grading: f64) -> Self {
        assert!(k >= 1, "at least one subdivision");
        let k_i = k as i64;
        let mut index: BTreeMap<[i64; 3], usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut triangles = Vec::new();
        let mut vertex = |p: [i64; 3]| -> usize {
            *index.entry(p).or_insert_with(|| {
                vertices.push(place(radius, k_i, grading, p));
                vertices.len() - 1
            })
        };
        for sx in [1i64, -1] {
            for sy in [1i64, -1] {
                for sz in [1i64, -1] {
                    let point = |i: i64, j: i64| [sx * i, sy * j, sz * (k_i - i - j)];
                    // Faces with an odd number of negative signs are
                    // mirrored, so their winding is reversed.
                    let flip = sx * sy * sz < 0;
                    let mut push = |p: [i64; 3], q: [i64; 3], r: [i64; 3]| {
                        let (a, b, c) = (vertex(p), vertex(q), vertex(r));
                        triangles.push(if flip { [a, c, b] } else { [a, b, c] });
                    };
                    for i in 0..k_i {
                        for j in 0..k_i - i {
                            push(point(i, j), point(i + 1, j), point(i, j + 1));
                            if i + j + 2 <= k_i {
                                push(point(i + 1, j), point(i + 1, j + 1), point(i, j + 1));
                            }
                        }
                    }
                }
            }
        }
        Self {
            vertices,
            triangles,
            subdivisions: k,
        }
    }
}

/// Sine of the latitude of ring `u ∈ [0, 1]`. The latitude angle is
/// `(π/2)·(2^{s·u} − 1)/(2^s − 1)`, uniform in `u` for `s = 0`.
fn latitude_profile(u: f64, grading: f64) -> f64 {
    let fraction = if grading == 0.0 {
        u
    } else {
        libm::expm1(grading * u * LN_2) / libm::expm1(grading * LN_2)
    };
    libm::sin(PI / 2.0 * fraction)
}

/// Sphere point for the octahedral lattice point `p`, `|p|_1 = k`.
fn place(radius: &Rational, k: i64, grading: f64, [i, j, m]: [i64; 3]) -> Vec3 {
    let g = latitude_profile(m.unsigned_abs() as f64 / k as f64, grading);
    let height = radius * &exact(if m < 0 { -g } else { g });
    let ring = i.abs() + j.abs();
    if ring == 0 {
        return [Rational::ZERO, Rational::ZERO, height];
    }
    let p = if i > 0 && j >= 0 {
        j
    } else if i <= 0 && j > 0 {
        ring - i
    } else if i < 0 && j <= 0 {
        2 * ring - j
    } else {
        3 * ring + i
    };
    let theta = PI / 2.0 * p as f64 / ring as f64;
    let horizontal = libm::sqrt((1.0 - g * g).max(0.0));
    [
        radius * &exact(horizontal * libm::cos(theta)),
        radius * &exact(horizontal * libm::sin(theta)),
        height,
    ]
}

/// Grading for which the first latitude above the equator sits at height
/// `gap·ρ`.
fn grading_for_gap(k: usize, gap: f64) -> f64 {
    let first = |s: f64| latitude_profile(1.0 / k as f64, s);
    if first(0.0) <= gap {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1000.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if first(mid) > gap {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Samples `id − g` on graded octahedral meshes of increasing fineness,
/// starting from at least `min_triangles` triangles, until the sample
/// satisfies the refinement condition.
pub fn sample_sphere<F>(
    radius: &Rational,
    min_triangles: usize,
    equator_gap: f64,
    mut f: F,
) -> Result<SampledSphereMap>
where
    F: FnMut(&Vec3) -> Result<Vec3>,
{
    const MAX_SUBDIVISIONS: usize = 256;
    let mut k = 1;
    while 8 * k * k < min_triangles {
        k += 1;
    }
    loop {
        let mesh = SphereMesh::graded(radius, k, grading_for_gap(k, equator_gap));
        let values = mesh.vertices.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        match SampledSphereMap::new(mesh.vertices, values, mesh.triangles) {
            Err(Error::Undersampled(msg)) => {
                if k >= MAX_SUBDIVISIONS {
                    bail!(Undersampled, "{msg} (after {k} subdivisions)");
                }
                k = (k + k.div_ceil(4)).min(MAX_SUBDIVISIONS);
            }
            other => return other,
        }
    }
}

/// Which of the explicit examples to sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleKind {
    /// `f(z) = z + z^l` in the plane.
    PlanarPoly,
    /// `g(z, t) = (z + z^l, −t/|1 + l·z^{l−1}|)` in `R³`.
    VolumePreserving3d,
}

/// Relative error allowed when rationalizing `|f′(z)|`.
pub fn fiber_tolerance() -> Rational {
    Rational::ONE / Rational::from_i64(1 << 20)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sample {
    Loop(SampledLoop),
    Sphere(SampledSphereMap),
}

impl Sample {
    /// Winding number or sphere degree.
    pub fn index(&self) -> Result<i64> {
        match self {
            Sample::Loop(l) => Ok(winding_number(l)),
            Sample::Sphere(s) => sphere_degree(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleMetadata {
    pub kind: ExampleKind,
    pub l: usize,
    pub radius: Rational,
    pub requested_resolution: usize,
    /// Loop samples or sphere triangles actually used.
    pub resolution: usize,
    /// Octahedral subdivisions of the sphere mesh.
    pub subdivisions: Option<usize>,
    /// Bound on the relative error of the rationalized `|f′(z)|`.
    pub fiber_tolerance: Option<Rational>,
    /// Largest relative error of `|f′(z)|²` that occurred.
    pub max_fiber_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleSample {
    pub sample: Sample,
    pub metadata: SampleMetadata,
}

fn complex_pow(z: &Vec2, l: usize) -> Vec2 {
    let mut acc = [Rational::ONE, Rational::ZERO];
    for _ in 0..l {
        acc = [
            &acc[0] * &z[0] - &acc[1] * &z[1],
            &acc[0] * &z[1] + &acc[1] * &z[0],
        ];
    }
    acc
}

/// `id − f` for `f(z) = z + z^l`, which is `−z^l`.
fn planar_displacement(z: &Vec2, l: usize) -> Vec2 {
    let p = complex_pow(z, l);
    [-&p[0], -&p[1]]
}

/// Samples one of the explicit examples around the origin. For the plane
/// `resolution` is the number of samples; for space it is the minimum
/// number of triangles, refined further if needed.
pub fn sample_example_map(
    kind: ExampleKind,
    l: usize,
    radius: &Rational,
    resolution: usize,
) -> Result<ExampleSample> {
    if l == 0 {
        bail!(Domain, "l must be at least 1");
    }
    if radius.signum() <= 0 {
        bail!(Domain, "radius must be positive, got {radius}");
    }
    match kind {
        ExampleKind::PlanarPoly => {
            let lp = sample_loop(radius, resolution, |z| planar_displacement(z, l))?;
            Ok(ExampleSample {
                metadata: SampleMetadata {
                    kind,
                    l,
                    radius: radius.clone(),
                    requested_resolution: resolution,
                    resolution,
                    subdivisions: None,
                    fiber_tolerance: None,
                    max_fiber_error: None,
                },
                sample: Sample::Loop(lp),
            })
        }
        ExampleKind::VolumePreserving3d => {
            let tolerance = fiber_tolerance();
            let mut worst = 0.0f64;
            let gap = libm::pow(radius.to_f64(), (l - 1) as f64) / 8.0;
            let sphere = sample_sphere(radius, resolution, gap, |p| {
                let z = [p[0].clone(), p[1].clone()];
                let horizontal = planar_displacement(&z, l);
                let (q, err) = derivative_modulus(&z, l, &tolerance)?;
                worst = worst.max(err);
                let vertical = &p[2] * &(Rational::ONE + q.recip());
                Ok([horizontal[0].clone(), horizontal[1].clone(), vertical])
            })?;
            Ok(ExampleSample {
                metadata: SampleMetadata {
                    kind,
                    l,
                    radius: radius.clone(),
                    requested_resolution: resolution,
                    resolution: sphere.triangles.len(),
                    subdivisions: Some(sphere_subdivisions(sphere.triangles.len())),
                    fiber_tolerance: Some(tolerance),
                    max_fiber_error: Some(worst),
                },
                sample: Sample::Sphere(sphere),
            })
        }
    }
}

fn sphere_subdivisions(triangles: usize) -> usize {
    libm::round(libm::sqrt(triangles as f64 / 8.0)) as usize
}

/// Rational `q ≈ |1 + l·z^{l−1}|` with `|q² − F²| < tol·F²`, where `F² =
/// |f′(z)|²` is exact. This bounds the relative error of `q` by `tol`.
fn derivative_modulus(z: &Vec2, l: usize, tol: &Rational) -> Result<(Rational, f64)> {
    let w = complex_pow(z, l - 1);
    let scale = Rational::from(l);
    let re = Rational::ONE + &scale * &w[0];
    let im = &scale * &w[1];
    let exact2 = &re * &re + &im * &im;
    if exact2.is_zero() {
        bail!(Domain, "f' vanishes on the sampling sphere");
    }
    let q = exact(libm::hypot(re.to_f64(), im.to_f64()));
    let err = ((&q * &q - &exact2).abs()) / &exact2;
    if err >= *tol {
        bail!(Inconsistency, "|f'(z)| could not be rationalized within the tolerance");
    }
    Ok((q, err.to_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::q;

    fn vec3(x: i64, y: i64, z: i64) -> Vec3 {
        [x, y, z].map(Rational::from_i64)
    }

    fn planar(l: usize, radius: Rational, n: usize) -> i64 {
        match sample_example_map(ExampleKind::PlanarPoly, l, &radius, n).unwrap().sample {
            Sample::Loop(lp) => winding_number(&lp),
            Sample::Sphere(_) => unreachable!(),
        }
    }

    #[test]
    fn winding_examples() {
        assert_eq!(planar(3, q(1, 10), 64), 3);
        assert_eq!(planar(1, q(1, 10), 16), 1);
        let half = sample_loop(&q(1, 10), 16, |z| [&z[0] / &Rational::from_i64(2), &z[1] / &Rational::from_i64(2)]);
        assert_eq!(winding_number(&half.unwrap()), 1);
        let conj = sample_loop(&Rational::ONE, 16, |z| [z[0].clone(), -&z[1]]).unwrap();
        assert_eq!(winding_number(&conj), -1);
    }

    #[test]
    fn winding_errors() {
        assert!(matches!(
            sample_loop(&Rational::ONE, 8, |_| [Rational::ZERO, Rational::ZERO]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(planar_err(3, 8), Error::Undersampled(_)));
        assert!(matches!(planar_err(1, 4), Error::Undersampled(_)));
    }

    fn planar_err(l: usize, n: usize) -> Error {
        sample_example_map(ExampleKind::PlanarPoly, l, &q(1, 10), n).unwrap_err()
    }

    #[test]
    fn winding_is_stable_under_refinement_and_shrinking() {
        for l in 1..=5 {
            for n in [16 * l, 32 * l, 64 * l] {
                assert_eq!(planar(l, q(1, 10), n), l as i64);
                assert_eq!(planar(l, q(1, 20), n), l as i64);
            }
        }
    }

    #[test]
    fn octahedral_mesh_is_a_closed_sphere() {
        for k in 1..=4 {
            let mesh = SphereMesh::octahedral(&Rational::ONE, k);
            assert_eq!(mesh.triangles.len(), 8 * k * k);
            assert_eq!(mesh.vertices.len(), 4 * k * k + 2);
            let values = mesh.vertices.clone();
            let map = SampledSphereMap::new(mesh.vertices, values, mesh.triangles);
            if k >= 3 {
                assert_eq!(sphere_degree(&map.unwrap()).unwrap(), 1);
            }
        }
    }

    fn linear(k: usize, m: [[i64; 3]; 3]) -> Result<i64> {
        let mesh = SphereMesh::octahedral(&Rational::ONE, k);
        let values = mesh
            .vertices
            .iter()
            .map(|p| {
                m.map(|row| {
                    row.iter()
                        .zip(p)
                        .map(|(&a, x)| Rational::from_i64(a) * x)
                        .sum::<Rational>()
                })
            })
            .collect();
        sphere_degree(&SampledSphereMap::new(mesh.vertices, values, mesh.triangles)?)
    }

    #[test]
    fn linear_maps() {
        // id − (−id) = 2·id
        assert_eq!(linear(4, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]).unwrap(), 1);
        // id − (2z, −t) = (−z, 2t)
        assert_eq!(linear(4, [[-1, 0, 0], [0, -1, 0], [0, 0, 2]]).unwrap(), 1);
        assert_eq!(linear(4, [[1, 0, 0], [0, 1, 0], [0, 0, -1]]).unwrap(), -1);
        assert_eq!(linear(6, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap(), -1);
        assert!(matches!(linear(1, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]), Err(Error::Undersampled(_))));
    }

    #[test]
    fn sphere_validation() {
        let mesh = SphereMesh::octahedral(&Rational::ONE, 3);
        let mut flipped = mesh.triangles.clone();
        flipped[0].swap(1, 2);
        assert!(matches!(
            SampledSphereMap::new(mesh.vertices.clone(), mesh.vertices.clone(), flipped),
            Err(Error::Format(_))
        ));
        let mut zero = mesh.vertices.clone();
        zero[0] = vec3(0, 0, 0);
        assert!(matches!(
            SampledSphereMap::new(mesh.vertices.clone(), zero, mesh.triangles.clone()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            SampledSphereMap::new(mesh.vertices.clone(), mesh.vertices[1..].to_vec(), mesh.triangles.clone()),
            Err(Error::Dimension(_))
        ));
        let open = mesh.triangles[1..].to_vec();
        assert!(SampledSphereMap::new(mesh.vertices.clone(), mesh.vertices, open).is_err());
    }

    #[test]
    fn ray_crossing_cases() {
        let (a, b, c) = (vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1));
        assert_eq!(ray_crossing(&vec3(1, 1, 1), [&a, &b, &c]), Some(1));
        assert_eq!(ray_crossing(&vec3(1, 1, 1), [&a, &c, &b]), Some(-1));
        assert_eq!(ray_crossing(&vec3(-1, -1, -1), [&a, &b, &c]), Some(0));
        assert_eq!(ray_crossing(&vec3(1, 1, 0), [&a, &b, &c]), None);
        assert_eq!(ray_crossing(&vec3(1, 2, 0), [&a, &b, &vec3(-1, -1, 0)]), None);
        assert_eq!(ray_crossing(&vec3(0, 0, 1), [&a, &b, &vec3(-1, -1, 0)]), Some(0));
    }

    #[test]
    fn distance_to_triangle() {
        let (a, b, c) = (vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1));
        assert_eq!(distance2_to_origin(&a, &b, &c), q(1, 3));
        assert_eq!(distance2_to_origin(&vec3(1, -1, 2), &vec3(1, 1, 2), &vec3(1, 0, 3)), Rational::from_i64(5));
        assert_eq!(distance2_to_origin(&vec3(1, -1, 0), &vec3(1, 1, 0), &vec3(2, 0, 0)), Rational::ONE);
    }

    fn example_3d(l: usize, radius: Rational, triangles: usize) -> (i64, usize) {
        let s = sample_example_map(ExampleKind::VolumePreserving3d, l, &radius, triangles).unwrap();
        assert!(s.metadata.max_fiber_error.unwrap() < 1e-6);
        (s.sample.index().unwrap(), s.metadata.resolution)
    }

    #[test]
    fn volume_preserving_examples() {
        for l in 1..=3 {
            let (d, t) = example_3d(l, q(1, 20), 512);
            assert_eq!(d, l as i64);
            assert!(t >= 512);
            let (d2, t2) = example_3d(l, q(1, 20), 2 * t);
            assert_eq!(d2, l as i64);
            assert!(t2 >= 2 * t);
        }
    }

    #[test]
    fn product_degree_is_multiplicative() {
        for l in 1..=3usize {
            let radius = q(1, 10);
            let gap = libm::pow(radius.to_f64(), (l - 1) as f64) / 8.0;
            let s = sample_sphere(&radius, 512, gap, |p| {
                let h = planar_displacement(&[p[0].clone(), p[1].clone()], l);
                Ok([h[0].clone(), h[1].clone(), &p[2] * &Rational::from_i64(2)])
            })
            .unwrap();
            let winding = planar(l, radius.clone(), 64 * l);
            assert_eq!(sphere_degree(&s).unwrap(), winding);
        }
    }
}
