//! Torus-invariant divisors, the Picard group and section polytopes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Fan;

/// `sum_i a_i D_i`, one integer coefficient per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusDivisor {
    pub coeffs: Vec<i64>,
}

impl TorusDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        TorusDivisor { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        TorusDivisor { coeffs: vec![0; n] }
    }

    /// The prime divisor `D_i`.
    pub fn prime(n: usize, i: usize) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[i] = 1;
        TorusDivisor { coeffs }
    }

    /// `div(chi^m) = sum_i <m, u_i> D_i`.
    pub fn principal(fan: &Fan, m: [i64; 2]) -> Self {
        TorusDivisor {
            coeffs: fan.rays().iter().map(|u| u.pair(m)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn check_len(&self, fan: &Fan) -> Result<()> {
        if self.coeffs.len() != fan.n() {
            return Err(Error::Length {
                expected: fan.n(),
                got: self.coeffs.len(),
            });
        }
        Ok(())
    }
}

impl Add for &TorusDivisor {
    type Output = TorusDivisor;
    fn add(self, rhs: &TorusDivisor) -> TorusDivisor {
        TorusDivisor {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TorusDivisor {
    type Output = TorusDivisor;
    fn sub(self, rhs: &TorusDivisor) -> TorusDivisor {
        TorusDivisor {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&TorusDivisor> for i64 {
    type Output = TorusDivisor;
    fn mul(self, rhs: &TorusDivisor) -> TorusDivisor {
        TorusDivisor {
            coeffs: rhs.coeffs.iter().map(|a| self * a).collect(),
        }
    }
}

impl Neg for &TorusDivisor {
    type Output = TorusDivisor;
    fn neg(self) -> TorusDivisor {
        -1 * self
    }
}

/// A class in `Pic(X) = Z^{n-2}`, in the coordinates of the fan's free rays
/// (see [`Fan::free_rays`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PicClass {
    pub coords: Vec<i64>,
}

impl PicClass {
    pub fn new(coords: Vec<i64>) -> Self {
        PicClass { coords }
    }

    pub fn zero(rank: usize) -> Self {
        PicClass {
            coords: vec![0; rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl Add for &PicClass {
    type Output = PicClass;
    fn add(self, rhs: &PicClass) -> PicClass {
        PicClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PicClass {
    type Output = PicClass;
    fn sub(self, rhs: &PicClass) -> PicClass {
        PicClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&PicClass> for i64 {
    type Output = PicClass;
    fn mul(self, rhs: &PicClass) -> PicClass {
        PicClass {
            coords: rhs.coords.iter().map(|a| self * a).collect(),
        }
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Image of `d` in `Pic(X)`.
///
/// Adds the principal divisor that clears the two rays of the pivot cone and reads
/// off the remaining coefficients. This is the Hermite normal form of the relation
/// matrix `(<e_k, u_i>)` with the pivot-cone columns leading, whose pivots are 1
/// because the cone is unimodular.
pub fn pic_class(fan: &Fan, d: &TorusDivisor) -> PicClass {
    let reduced = reduce_to_free(fan, &d.coeffs);
    PicClass {
        coords: fan.free_rays().iter().map(|&i| reduced[i]).collect(),
    }
}

/// Picard class of a monomial (or of any integer vector indexed by rays).
pub fn class_of_exponents(fan: &Fan, exps: &[u32]) -> PicClass {
    let coeffs: Vec<i64> = exps.iter().map(|&e| i64::from(e)).collect();
    let reduced = reduce_to_free(fan, &coeffs);
    PicClass {
        coords: fan.free_rays().iter().map(|&i| reduced[i]).collect(),
    }
}

fn reduce_to_free(fan: &Fan, coeffs: &[i64]) -> Vec<i64> {
    let (p, q) = fan.pivot_cone();
    let m = fan.solve_cone((p, q), -coeffs[p], -coeffs[q]);
    coeffs
        .iter()
        .zip(fan.rays())
        .map(|(a, u)| a + u.pair(m))
        .collect()
}

/// The divisor supported on the free rays whose class is `c`.
pub fn representative(fan: &Fan, c: &PicClass) -> TorusDivisor {
    let mut coeffs = vec![0; fan.n()];
    for (&i, &v) in fan.free_rays().iter().zip(&c.coords) {
        coeffs[i] = v;
    }
    TorusDivisor { coeffs }
}

pub fn pic_rank(fan: &Fan) -> usize {
    fan.n() - 2
}

/// Intersection number, by bilinear extension of the table on the prime divisors.
pub fn intersect(fan: &Fan, d: &TorusDivisor, e: &TorusDivisor) -> i64 {
    let selfint = fan.self_intersection_numbers();
    let mut total = 0;
    for (i, (&di, &si)) in d.coeffs.iter().zip(&selfint).enumerate() {
        if di == 0 {
            continue;
        }
        for (j, &ej) in e.coeffs.iter().enumerate() {
            let dij = if i == j {
                si
            } else if fan.adjacent(i, j) {
                1
            } else {
                0
            };
            total += di * ej * dij;
        }
    }
    total
}

/// `K = -sum_i D_i`.
pub fn canonical_divisor(fan: &Fan) -> TorusDivisor {
    TorusDivisor {
        coeffs: vec![-1; fan.n()],
    }
}

/// Cartier data `m_sigma` for every maximal cone, in [`Fan::maximal_cones`] order.
pub fn cartier_data(fan: &Fan, d: &TorusDivisor) -> Vec<[i64; 2]> {
    fan.maximal_cones()
        .iter()
        .map(|&(i, j)| fan.solve_cone((i, j), -d.coeffs[i], -d.coeffs[j]))
        .collect()
}

/// Strict convexity of the support function: each `m_sigma` satisfies the
/// inequalities of the rays outside `sigma` strictly.
pub fn is_ample(fan: &Fan, d: &TorusDivisor) -> bool {
    fan.maximal_cones()
        .iter()
        .zip(cartier_data(fan, d))
        .all(|(&(i, j), m)| {
            (0..fan.n())
                .filter(|&k| k != i && k != j)
                .all(|k| fan.ray(k).pair(m) > -d.coeffs[k])
        })
}

/// `P_D = { m : <m, u_i> >= -a_i }` with its vertices and lattice points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    /// `(u_i, -a_i)`: the half-plane `<m, u_i> >= -a_i`.
    pub inequalities: Vec<([i64; 2], i64)>,
    #[serde(serialize_with = "ser_vertices")]
    pub vertices: Vec<[Rational64; 2]>,
    pub points: Vec<[i64; 2]>,
}

fn ser_vertices<S: serde::Serializer>(v: &[[Rational64; 2]], s: S) -> Result<S::Ok, S::Error> {
    let strs: Vec<[String; 2]> = v
        .iter()
        .map(|p| [p[0].to_string(), p[1].to_string()])
        .collect();
    serde::Serialize::serialize(&strs, s)
}

impl LatticePolytope {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, m: [i64; 2]) -> bool {
        self.inequalities
            .iter()
            .all(|(u, rhs)| u[0] * m[0] + u[1] * m[1] >= *rhs)
    }
}

pub fn polytope(fan: &Fan, d: &TorusDivisor) -> LatticePolytope {
    let inequalities: Vec<([i64; 2], i64)> = fan
        .rays()
        .iter()
        .zip(&d.coeffs)
        .map(|(u, a)| (u.0, -a))
        .collect();
    let feasible = |p: &[Rational64; 2]| {
        inequalities.iter().all(|(u, rhs)| {
            p[0] * Rational64::from(u[0]) + p[1] * Rational64::from(u[1]) >= Rational64::from(*rhs)
        })
    };
    let mut vertices = Vec::new();
    for i in 0..inequalities.len() {
        for j in i + 1..inequalities.len() {
            let (u, b) = inequalities[i];
            let (v, c) = inequalities[j];
            let det = u[0] * v[1] - u[1] * v[0];
            if det == 0 {
                continue;
            }
            let p = [
                Rational64::new(b * v[1] - c * u[1], det),
                Rational64::new(u[0] * c - v[0] * b, det),
            ];
            if feasible(&p) && !vertices.contains(&p) {
                vertices.push(p);
            }
        }
    }
    vertices.sort();
    let mut points = Vec::new();
    if !vertices.is_empty() {
        let lo = |k: usize| {
            vertices
                .iter()
                .map(|p| p[k].ceil().to_i64().expect("small"))
                .min()
                .expect("nonempty")
        };
        let hi = |k: usize| {
            vertices
                .iter()
                .map(|p| p[k].floor().to_i64().expect("small"))
                .max()
                .expect("nonempty")
        };
        for x in lo(0)..=hi(0) {
            for y in lo(1)..=hi(1) {
                let m = [x, y];
                if inequalities
                    .iter()
                    .all(|(u, rhs)| u[0] * m[0] + u[1] * m[1] >= *rhs)
                {
                    points.push(m);
                }
            }
        }
    }
    debug_assert!(vertices.iter().all(|p| !p[0].denom().is_zero()));
    LatticePolytope {
        inequalities,
        vertices,
        points,
    }
}

/// `dim H^0(X, O(D))`: the number of lattice points of `P_D`.
pub fn h0(fan: &Fan, d: &TorusDivisor) -> usize {
    polytope(fan, d).points.len()
}

/// `h0` of a class, through its deterministic representative.
pub fn h0_class(fan: &Fan, c: &PicClass) -> usize {
    h0(fan, &representative(fan, c))
}

/// Riemann–Roch: `chi(O(D)) = D.(D - K)/2 + 1`.
pub fn euler_characteristic(fan: &Fan, d: &TorusDivisor) -> Result<i64> {
    let k = canonical_divisor(fan);
    let twice = intersect(fan, d, &(d - &k));
    if twice % 2 != 0 {
        return Err(Error::Internal(format!(
            "D.(D-K) = {twice} is odd; the intersection table is inconsistent"
        )));
    }
    Ok(twice / 2 + 1)
}

/// Arithmetic genus of a curve in `|D|`: `1 + (D^2 + D.K)/2`.
pub fn genus(fan: &Fan, d: &TorusDivisor) -> Result<i64> {
    let k = canonical_divisor(fan);
    let twice = intersect(fan, d, d) + intersect(fan, d, &k);
    if twice % 2 != 0 {
        return Err(Error::Internal(format!(
            "D^2 + D.K = {twice} is odd; adjunction parity fails"
        )));
    }
    Ok(1 + twice / 2)
}

/// `K^2`.
pub fn canonical_self_intersection(fan: &Fan) -> i64 {
    let k = canonical_divisor(fan);
    intersect(fan, &k, &k)
}
