//! Independent reference computations for Hirzebruch surfaces.
//!
//! Nothing here calls the crate's divisor, monomial enumeration or echelon code:
//! classes come from the relations `D3 = D1`, `D4 = r D1 + D2`, monomials are
//! enumerated directly from those relations, and ranks use a plain dense
//! Gaussian elimination.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_jacobian::{CoxPolynomial, Exponents, Fan};

/// `(a, b)` stands for `a D1 + b D2` on `H_r`.
pub type HClass = (i64, i64);

pub fn canonical(r: i64) -> HClass {
    (-(r + 2), -2)
}

pub fn add(x: HClass, y: HClass) -> HClass {
    (x.0 + y.0, x.1 + y.1)
}

pub fn combo(a: i64, beta: HClass, b: i64, k: HClass) -> HClass {
    (a * beta.0 + b * k.0, a * beta.1 + b * k.1)
}

/// `D1^2 = 0`, `D1.D2 = 1`, `D2^2 = -r`, extended bilinearly.
pub fn dot(r: i64, x: HClass, y: HClass) -> i64 {
    x.0 * y.1 + x.1 * y.0 - r * x.1 * y.1
}

pub fn h0_closed(r: i64, a: i64, b: i64) -> i64 {
    (a + 1) * (b + 1) - r * b * (b + 1) / 2
}

pub fn riemann_roch(r: i64, d: HClass) -> i64 {
    let k = canonical(r);
    let twice = dot(r, d, (d.0 - k.0, d.1 - k.1));
    assert_eq!(twice % 2, 0);
    twice / 2 + 1
}

/// `(b-1)(a-1-rb/2)`, evaluated exactly.
pub fn genus_closed(r: i64, a: i64, b: i64) -> i64 {
    let twice = (b - 1) * (2 * (a - 1) - r * b);
    assert_eq!(twice % 2, 0);
    twice / 2
}

pub fn adjunction(r: i64, d: HClass) -> i64 {
    let twice = dot(r, d, d) + dot(r, d, canonical(r));
    1 + twice / 2
}

pub fn ample_closed(r: i64, a: i64, b: i64) -> bool {
    a > r * b && b > 0
}

pub fn class_of(r: i64, e: &[u32]) -> HClass {
    let e: Vec<i64> = e.iter().map(|&x| i64::from(x)).collect();
    (e[0] + e[2] + r * e[3], e[1] + e[3])
}

/// All `x1^e1 x2^e2 x3^e3 x4^e4` of class `(a, b)`.
pub fn monomials(r: i64, (a, b): HClass) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if b < 0 {
        return out;
    }
    for e4 in 0..=b {
        let s = a - r * e4;
        if s < 0 {
            continue;
        }
        for e1 in 0..=s {
            let v = [e1, b - e4, s - e1, e4].map(|x| u32::try_from(x).unwrap());
            out.push(v.to_vec());
        }
    }
    out
}

/// Rank over `Q` by dense elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &pivot;
            let (top, bottom) = rows.split_at_mut(i);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[rank][col..]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

fn terms(f: &CoxPolynomial) -> Vec<(Vec<u32>, BigRational)> {
    f.terms().map(|(e, c)| (e.0.clone(), c.clone())).collect()
}

/// `dim J1(f)_alpha` by membership: the number of monomials of `S_alpha`
/// minus the rank their products with `x1 x2 x3 x4` add to `J0(f)_{alpha-K}`.
pub fn j1_dim_oracle(r: i64, f: &CoxPolynomial, beta: HClass, alpha: HClass) -> usize {
    let target_class = add(alpha, (-canonical(r).0, -canonical(r).1));
    let target = monomials(r, target_class);
    let col = |e: &[u32]| target.iter().position(|t| t.as_slice() == e).unwrap();
    let ft = terms(f);
    let mut j0 = Vec::new();
    let mult = monomials(r, (target_class.0 - beta.0, target_class.1 - beta.1));
    for i in 0..4 {
        for m in &mult {
            let mut v = vec![BigRational::zero(); target.len()];
            for (e, c) in &ft {
                if e[i] == 0 {
                    continue;
                }
                let prod: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                v[col(&prod)] += c * BigRational::from_integer(BigInt::from(e[i]));
            }
            j0.push(v);
        }
    }
    let base = rank(j0.clone());
    let source = monomials(r, alpha);
    let mut all = j0;
    for s in &source {
        let prod: Vec<u32> = s.iter().map(|x| x + 1).collect();
        let mut v = vec![BigRational::zero(); target.len()];
        v[col(&prod)] = BigRational::one();
        all.push(v);
    }
    source.len() - (rank(all) - base)
}

pub fn parse(fan: &Fan, text: &str) -> CoxPolynomial {
    toric_jacobian::poly::parse_polynomial(text, fan.labels()).unwrap()
}

/// `x1^d x2^3 + x3^(d-3) x4^3 + x3^d x2^3 + x1^(d-3) x4^3` on `H_1`.
pub fn family(d: u32) -> (Fan, CoxPolynomial) {
    let fan = Fan::hirzebruch(1);
    let e = d - 3;
    let f = parse(
        &fan,
        &format!("x1^{d}*x2^3 + x3^{e}*x4^3 + x3^{d}*x2^3 + x1^{e}*x4^3"),
    );
    (fan, f)
}

/// Biquadric on `P1 x P1` with rulings `{x1, x3}` and `{x2, x4}`.
pub fn lambda_family(lambda: i64) -> (Fan, CoxPolynomial) {
    let fan = Fan::p1_x_p1();
    let f = parse(
        &fan,
        &format!("x1^2*x2^2 + x1^2*x4^2 + x3^2*x2^2 + x3^2*x4^2 + {lambda}*x1*x2*x3*x4"),
    );
    (fan, f)
}

/// Random polynomial with coefficients in `[-3, 3]` on every monomial of the class.
pub fn random_polynomial(r: i64, class: HClass, seed: u64) -> CoxPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms: Vec<(Exponents, BigRational)> = monomials(r, class)
        .into_iter()
        .map(|e| {
            (
                Exponents(e),
                BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))),
            )
        })
        .collect();
    CoxPolynomial::from_terms(4, terms).unwrap()
}

/// A nondegenerate section of `7 D1 + 3 D2` on `H_2`. The four vertex monomials
/// alone give a degenerate curve; the interior term repairs that.
pub fn h2_fixture() -> (Fan, CoxPolynomial) {
    let fan = Fan::hirzebruch(2);
    let f = parse(
        &fan,
        "x1^7*x2^3 + 2*x3^7*x2^3 - x1*x4^3 + 3*x3*x4^3 + x1^2*x3^3*x2^2*x4",
    );
    (fan, f)
}

/// Nondegenerate fixtures: `(name, r, fan, f, beta)`.
pub fn nondegenerate_fixtures() -> Vec<(String, i64, Fan, CoxPolynomial, HClass)> {
    let mut out = Vec::new();
    for d in 5..=10u32 {
        let (fan, f) = family(d);
        out.push((format!("f_{d} on H_1"), 1, fan, f, (i64::from(d), 3)));
    }
    for l in [1, 2] {
        let (fan, f) = lambda_family(l);
        out.push((format!("lambda = {l} on P1xP1"), 0, fan, f, (2, 2)));
    }
    let (fan, f) = h2_fixture();
    out.push(("section of (7,3) on H_2".to_string(), 2, fan, f, (7, 3)));
    out
}
