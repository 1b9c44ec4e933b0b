//! Complete smooth fans in the plane.
//!
//! Rays are stored in the order they were supplied, which is also the order of the
//! Cox ring variables and of every exponent vector in the crate. The
//! counterclockwise cyclic order is kept separately and only used to derive the
//! maximal cones and wall relations.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice vector in `N = Z^2`, expected to be the primitive generator of its ray.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ray(pub [i64; 2]);

impl Ray {
    pub fn new(a: i64, b: i64) -> Self {
        Ray([a, b])
    }

    pub fn x(&self) -> i64 {
        self.0[0]
    }

    pub fn y(&self) -> i64 {
        self.0[1]
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0]
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.x().gcd(&self.y()) == 1
    }

    /// Pairing with a point of the dual lattice.
    pub fn pair(&self, m: [i64; 2]) -> i64 {
        self.x() * m[0] + self.y() * m[1]
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x(), self.y())
    }
}

pub fn det(u: Ray, v: Ray) -> i64 {
    u.x() * v.y() - u.y() * v.x()
}

/// Total order by polar angle in `[0, 2pi)`, exact.
fn polar_cmp(u: &Ray, v: &Ray) -> Ordering {
    let half = |r: &Ray| u8::from(!(r.y() > 0 || (r.y() == 0 && r.x() > 0)));
    half(u)
        .cmp(&half(v))
        .then_with(|| 0.cmp(&det(*u, *v)))
}

/// A reason a ray list does not describe a complete smooth fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FanViolation {
    TooFewRays { count: usize },
    ZeroRay { index: usize },
    NonPrimitive { index: usize, ray: Ray },
    DuplicateDirection { first: usize, second: usize },
    /// Two consecutive rays (counterclockwise) span an angle of at least pi.
    Incomplete { from: usize, to: usize },
    /// Consecutive rays span a cone that is not unimodular.
    NonUnimodular { from: usize, to: usize, det: i64 },
    LabelCount { expected: usize, got: usize },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::TooFewRays { count } => write!(f, "need at least 3 rays, got {count}"),
            FanViolation::ZeroRay { index } => write!(f, "ray {index} is zero"),
            FanViolation::NonPrimitive { index, ray } => {
                write!(f, "ray {index} = {ray} is not primitive")
            }
            FanViolation::DuplicateDirection { first, second } => {
                write!(f, "rays {first} and {second} point in the same direction")
            }
            FanViolation::Incomplete { from, to } => write!(
                f,
                "incomplete: the rays {from} -> {to} leave a gap of angle >= pi"
            ),
            FanViolation::NonUnimodular { from, to, det } => {
                write!(f, "cone ({from},{to}) is not smooth: det = {det}")
            }
            FanViolation::LabelCount { expected, got } => {
                write!(f, "expected {expected} labels, got {got}")
            }
        }
    }
}

/// Checks every invariant of a complete smooth fan and lists all violations.
pub fn validate(rays: &[Ray]) -> Vec<FanViolation> {
    let mut out = Vec::new();
    if rays.len() < 3 {
        out.push(FanViolation::TooFewRays { count: rays.len() });
    }
    for (index, r) in rays.iter().enumerate() {
        if r.is_zero() {
            out.push(FanViolation::ZeroRay { index });
        } else if !r.is_primitive() {
            out.push(FanViolation::NonPrimitive { index, ray: *r });
        }
    }
    let nonzero: Vec<usize> = (0..rays.len()).filter(|&i| !rays[i].is_zero()).collect();
    let order = ccw_order(rays, &nonzero);
    for w in order.windows(2) {
        if polar_cmp(&rays[w[0]], &rays[w[1]]) == Ordering::Equal {
            out.push(FanViolation::DuplicateDirection {
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
            });
        }
    }
    if order.len() >= 2 {
        for k in 0..order.len() {
            let (i, j) = (order[k], order[(k + 1) % order.len()]);
            if polar_cmp(&rays[i], &rays[j]) == Ordering::Equal {
                continue;
            }
            let d = det(rays[i], rays[j]);
            if d <= 0 {
                out.push(FanViolation::Incomplete { from: i, to: j });
            } else if d != 1 {
                out.push(FanViolation::NonUnimodular { from: i, to: j, det: d });
            }
        }
    }
    out
}

fn ccw_order(rays: &[Ray], indices: &[usize]) -> Vec<usize> {
    let mut order = indices.to_vec();
    order.sort_by(|&i, &j| polar_cmp(&rays[i], &rays[j]).then(i.cmp(&j)));
    order
}

/// A complete smooth fan in `R^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rays: Vec<Ray>,
    labels: Vec<String>,
    ccw: Vec<usize>,
    cones: Vec<(usize, usize)>,
    pivot_cone: (usize, usize),
}

impl Fan {
    /// Builds a fan from rays (any order) and optional variable labels.
    pub fn new(rays: Vec<Ray>, labels: Option<Vec<String>>) -> Result<Self> {
        let mut violations = validate(&rays);
        let labels = match labels {
            Some(l) => {
                if l.len() != rays.len() {
                    violations.push(FanViolation::LabelCount {
                        expected: rays.len(),
                        got: l.len(),
                    });
                }
                l
            }
            None => (1..=rays.len()).map(|i| format!("x{i}")).collect(),
        };
        if !violations.is_empty() {
            return Err(Error::InvalidFan(violations));
        }
        let all: Vec<usize> = (0..rays.len()).collect();
        let ccw = ccw_order(&rays, &all);
        let n = ccw.len();
        let cones: Vec<(usize, usize)> = (0..n).map(|k| (ccw[k], ccw[(k + 1) % n])).collect();
        // Cone holding the largest ray index; ties go to the larger partner. Its two
        // rays are eliminated when reducing divisors to Picard coordinates.
        let pivot_cone = *cones
            .iter()
            .max_by_key(|&&(i, j)| (i.max(j), i.min(j)))
            .expect("at least three cones");
        Ok(Fan {
            rays,
            labels,
            ccw,
            cones,
            pivot_cone,
        })
    }

    /// Hirzebruch surface `H_r` with rays `u1 = -e1 + r e2, u2 = e2, u3 = e1, u4 = -e2`.
    pub fn hirzebruch(r: u32) -> Self {
        let r = i64::from(r);
        Fan::new(
            vec![Ray::new(-1, r), Ray::new(0, 1), Ray::new(1, 0), Ray::new(0, -1)],
            None,
        )
        .expect("Hirzebruch fans are smooth and complete")
    }

    pub fn projective_plane() -> Self {
        Fan::new(vec![Ray::new(1, 0), Ray::new(0, 1), Ray::new(-1, -1)], None)
            .expect("P2 fan is smooth and complete")
    }

    pub fn p1_x_p1() -> Self {
        Fan::hirzebruch(0)
    }

    /// Smooth blowup of the fan at the cone `(i, j)`, inserting `u_i + u_j`.
    pub fn blow_up(&self, i: usize, j: usize) -> Result<Self> {
        if !self.adjacent(i, j) {
            return Err(Error::InvalidArgument(format!(
                "rays {i} and {j} do not span a maximal cone"
            )));
        }
        let mut rays = self.rays.clone();
        rays.push(Ray::new(
            self.rays[i].x() + self.rays[j].x(),
            self.rays[i].y() + self.rays[j].y(),
        ));
        let mut labels = self.labels.clone();
        labels.push(format!("x{}", rays.len()));
        Fan::new(rays, Some(labels))
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> Ray {
        self.rays[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of rays, equal to the number of maximal cones.
    pub fn n(&self) -> usize {
        self.rays.len()
    }

    /// Ray indices in counterclockwise order, starting at the smallest polar angle.
    pub fn ccw_order(&self) -> &[usize] {
        &self.ccw
    }

    /// Maximal cones as counterclockwise-adjacent pairs of ray indices.
    pub fn maximal_cones(&self) -> &[(usize, usize)] {
        &self.cones
    }

    pub fn pivot_cone(&self) -> (usize, usize) {
        self.pivot_cone
    }

    /// Rays whose coefficients serve as Picard coordinates, in index order.
    pub fn free_rays(&self) -> Vec<usize> {
        let (p, q) = self.pivot_cone;
        (0..self.n()).filter(|&i| i != p && i != q).collect()
    }

    /// Short identifier of the Picard basis, e.g. `"[D1,D2]"`.
    pub fn pic_basis_id(&self) -> String {
        let names: Vec<String> = self
            .free_rays()
            .iter()
            .map(|&i| format!("D{}", i + 1))
            .collect();
        format!("[{}]", names.join(","))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j
            && self
                .cones
                .iter()
                .any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }

    fn ccw_neighbors(&self, i: usize) -> (usize, usize) {
        let n = self.n();
        let k = self.ccw.iter().position(|&x| x == i).expect("ray index");
        (self.ccw[(k + n - 1) % n], self.ccw[(k + 1) % n])
    }

    /// One squarefree monomial per maximal cone: the product of the variables
    /// whose rays are not in the cone. Listed in the order of [`Fan::maximal_cones`].
    pub fn irrelevant_generators(&self) -> Vec<Vec<u32>> {
        self.cones
            .iter()
            .map(|&(i, j)| {
                (0..self.n())
                    .map(|k| u32::from(k != i && k != j))
                    .collect()
            })
            .collect()
    }

    /// `D_i^2 = -a_i` where `u_{i-1} + u_{i+1} = a_i u_i`, indexed by ray.
    pub fn self_intersection_numbers(&self) -> Vec<i64> {
        (0..self.n())
            .map(|i| {
                let (p, q) = self.ccw_neighbors(i);
                let s = [
                    self.rays[p].x() + self.rays[q].x(),
                    self.rays[p].y() + self.rays[q].y(),
                ];
                let u = self.rays[i];
                let a = if u.x() != 0 { s[0] / u.x() } else { s[1] / u.y() };
                debug_assert_eq!([a * u.x(), a * u.y()], s, "wall relation");
                -a
            })
            .collect()
    }

    /// Solves `<m, u_i> = c_i, <m, u_j> = c_j` over the integers for a maximal cone.
    pub(crate) fn solve_cone(&self, (i, j): (usize, usize), ci: i64, cj: i64) -> [i64; 2] {
        let (u, v) = (self.rays[i], self.rays[j]);
        let d = det(u, v);
        debug_assert_eq!(d.abs(), 1);
        // Cramer's rule on the rows u, v.
        let m0 = (ci * v.y() - cj * u.y()) * d;
        let m1 = (u.x() * cj - v.x() * ci) * d;
        [m0, m1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: Vec<Vec<u32>>) -> std::collections::BTreeSet<Vec<u32>> {
        v.into_iter().collect()
    }

    #[test]
    fn hirzebruch_one() {
        let f = Fan::hirzebruch(1);
        assert_eq!(
            f.rays(),
            &[Ray::new(-1, 1), Ray::new(0, 1), Ray::new(1, 0), Ray::new(0, -1)]
        );
        assert_eq!(f.maximal_cones().len(), 4);
        // counterclockwise: u3, u2, u1, u4
        assert_eq!(f.ccw_order(), &[2, 1, 0, 3]);
    }

    #[test]
    fn hirzebruch_zero_is_product() {
        let f = Fan::hirzebruch(0);
        let rays: std::collections::BTreeSet<_> = f.rays().iter().copied().collect();
        let want: std::collections::BTreeSet<_> =
            [Ray::new(1, 0), Ray::new(0, 1), Ray::new(-1, 0), Ray::new(0, -1)]
                .into_iter()
                .collect();
        assert_eq!(rays, want);
    }

    #[test]
    fn adjacent_determinants_are_one() {
        for r in 0..6 {
            let f = Fan::hirzebruch(r);
            for &(i, j) in f.maximal_cones() {
                assert_eq!(det(f.ray(i), f.ray(j)), 1);
            }
        }
        // r = 2: det(u1, u2) = det((-1,2),(0,1)) = -1, so u2 precedes u1 counterclockwise
        assert_eq!(det(Ray::new(-1, 2), Ray::new(0, 1)), -1);
    }

    #[test]
    fn validate_reports_each_problem() {
        assert!(validate(Fan::hirzebruch(1).rays()).is_empty());
        let half = validate(&[Ray::new(1, 0), Ray::new(0, 1)]);
        assert!(half.contains(&FanViolation::TooFewRays { count: 2 }));
        assert!(half
            .iter()
            .any(|v| matches!(v, FanViolation::Incomplete { .. })));
        let np = validate(&[Ray::new(2, 0), Ray::new(0, 1), Ray::new(-1, -1)]);
        assert!(np
            .iter()
            .any(|v| matches!(v, FanViolation::NonPrimitive { index: 0, .. })));
        let nu = validate(&[Ray::new(1, 0), Ray::new(1, 2), Ray::new(-1, 0), Ray::new(0, -1)]);
        assert!(nu
            .iter()
            .any(|v| matches!(v, FanViolation::NonUnimodular { det: 2, .. })));
        let gap = validate(&[Ray::new(1, 0), Ray::new(0, 1), Ray::new(-1, 0)]);
        assert_eq!(gap, vec![FanViolation::Incomplete { from: 2, to: 0 }]);
        let dup = validate(&[Ray::new(1, 0), Ray::new(1, 0), Ray::new(0, 1), Ray::new(-1, -1)]);
        assert!(dup
            .iter()
            .any(|v| matches!(v, FanViolation::DuplicateDirection { .. })));
    }

    #[test]
    fn input_order_does_not_matter() {
        let a = Fan::new(vec![Ray::new(0, 1), Ray::new(-1, -1), Ray::new(1, 0)], None).unwrap();
        assert_eq!(a.maximal_cones().len(), 3);
        assert_eq!(a.ccw_order(), &[2, 0, 1]);
    }

    #[test]
    fn irrelevant_generators_hirzebruch() {
        let f = Fan::hirzebruch(2);
        let want = set(vec![
            vec![0, 0, 1, 1],
            vec![1, 0, 0, 1],
            vec![1, 1, 0, 0],
            vec![0, 1, 1, 0],
        ]);
        assert_eq!(set(f.irrelevant_generators()), want);
    }

    #[test]
    fn irrelevant_generators_p2() {
        let f = Fan::projective_plane();
        let want = set(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(set(f.irrelevant_generators()), want);
    }

    #[test]
    fn irrelevant_generator_degree() {
        let fans = [
            Fan::hirzebruch(3),
            Fan::projective_plane(),
            Fan::projective_plane().blow_up(0, 1).unwrap(),
            Fan::hirzebruch(1).blow_up(2, 1).unwrap(),
        ];
        for f in fans {
            let gens = f.irrelevant_generators();
            assert_eq!(gens.len(), f.n());
            for g in &gens {
                assert_eq!(g.iter().sum::<u32>() as usize, f.n() - 2);
            }
            assert_eq!(set(gens).len(), f.n());
        }
    }

    #[test]
    fn self_intersections() {
        assert_eq!(Fan::hirzebruch(1).self_intersection_numbers(), vec![0, -1, 0, 1]);
        assert_eq!(Fan::hirzebruch(0).self_intersection_numbers(), vec![0, 0, 0, 0]);
        assert_eq!(Fan::projective_plane().self_intersection_numbers(), vec![1, 1, 1]);
        for r in 0..=5 {
            let r64 = i64::from(r);
            assert_eq!(
                Fan::hirzebruch(r).self_intersection_numbers(),
                vec![0, -r64, 0, r64]
            );
        }
    }

    #[test]
    fn pivot_cone_for_hirzebruch_frees_d1_d2() {
        let f = Fan::hirzebruch(3);
        assert_eq!(f.free_rays(), vec![0, 1]);
        assert_eq!(f.pic_basis_id(), "[D1,D2]");
    }

    #[test]
    fn solve_cone_roundtrip() {
        let f = Fan::hirzebruch(2);
        for &c in f.maximal_cones() {
            let m = f.solve_cone(c, 3, -7);
            assert_eq!(f.ray(c.0).pair(m), 3);
            assert_eq!(f.ray(c.1).pair(m), -7);
        }
    }
}
