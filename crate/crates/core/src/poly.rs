//! The Cox ring `S = Q[x_1, ..., x_n]` graded by `Pic(X)`.
//!
//! Coefficients are exact rationals. Monomials are compared lexicographically on
//! their exponent vectors (ray index order); graded bases list the largest
//! monomial first.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::divisor::{class_of_exponents, pic_class, polytope, representative, PicClass, TorusDivisor};
use crate::error::{Error, Result};
use crate::fan::Fan;

/// Exponent vector of a monomial, one entry per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn one(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Exponents) -> Option<Exponents> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponents)
    }

    /// `x_1 x_2 ... x_n`, of class `-K`.
    pub fn product_of_all(n: usize) -> Self {
        Exponents(vec![1; n])
    }

    pub fn render(&self, labels: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    labels[i].clone()
                } else {
                    format!("{}^{}", labels[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational coefficient {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A sparse polynomial in the Cox ring. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxPolynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl CoxPolynomial {
    pub fn zero(nvars: usize) -> Self {
        CoxPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(Exponents::one(nvars), BigRational::one())
    }

    pub fn monomial(exps: Exponents, coeff: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(Exponents(e), BigRational::one())
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponents, BigRational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Length {
                    expected: nvars,
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Like [`CoxPolynomial::from_terms`], additionally requiring every term to lie in `class`.
    pub fn homogeneous(
        fan: &Fan,
        class: &PicClass,
        terms: impl IntoIterator<Item = (Exponents, BigRational)>,
    ) -> Result<Self> {
        let p = Self::from_terms(fan.n(), terms)?;
        match p.class(fan)? {
            Some(c) if &c != class => Err(Error::ClassMismatch(format!(
                "polynomial has class {c}, expected {class}"
            ))),
            _ => Ok(p),
        }
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The common class of all terms; `None` for the zero polynomial.
    pub fn class(&self, fan: &Fan) -> Result<Option<PicClass>> {
        if self.nvars != fan.n() {
            return Err(Error::Length {
                expected: fan.n(),
                got: self.nvars,
            });
        }
        let mut classes = self.terms.keys().map(|e| class_of_exponents(fan, &e.0));
        let Some(first) = classes.next() else {
            return Ok(None);
        };
        for c in classes {
            if c != first {
                return Err(Error::NotHomogeneous(format!(
                    "terms of classes {first} and {c}"
                )));
            }
        }
        Ok(Some(first))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials over different rings");
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        CoxPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials over different rings");
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                p.add_term(e.mul(f), c * d);
            }
        }
        p
    }

    pub fn mul_monomial(&self, m: &Exponents) -> Self {
        CoxPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.mul(m), c.clone())).collect(),
        }
    }

    /// Formal partial derivative in `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut f = e.clone();
            f.0[i] -= 1;
            p.add_term(f, c * rat(i64::from(k)));
        }
        p
    }

    /// `x_i * d/dx_i`.
    pub fn euler_term(&self, i: usize) -> Self {
        CoxPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0[i] > 0)
                .map(|(e, c)| (e.clone(), c * rat(i64::from(e.0[i]))))
                .collect(),
        }
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // largest monomial first
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = e.render(labels);
            if a.is_one() {
                out.push_str(&mono);
            } else if mono == "1" {
                out.push_str(&a.to_string());
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

/// Parses expressions such as `"x1^5*x2^3 - 3/2*x3*x4 + 7"` using the fan's labels.
pub fn parse_polynomial(text: &str, labels: &[String]) -> Result<CoxPolynomial> {
    let n = labels.len();
    let mut p = CoxPolynomial::zero(n);
    let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in src.chars() {
        let is_sign = ch == '+' || ch == '-';
        let binary = matches!(prev, Some(c) if c != '*' && c != '^' && c != '/');
        let after_sign = matches!(prev, Some('+' | '-'));
        if is_sign && after_sign {
            // `a + -b`
            neg ^= ch == '-';
        } else if is_sign && (binary || prev.is_none()) {
            if prev.is_some() {
                terms.push((neg, std::mem::take(&mut cur)));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    terms.push((neg, cur));
    for (neg, t) in terms {
        if t.is_empty() {
            return Err(Error::Parse(format!("missing term in {text:?}")));
        }
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; n];
        let factors: Vec<&str> = t.split('*').collect();
        let mut k = 0;
        while k < factors.len() {
            let fac = factors[k];
            if fac.is_empty() {
                return Err(Error::Parse(format!("empty factor in {t:?}")));
            }
            if fac.starts_with(|c: char| c.is_ascii_digit()) {
                coeff *= parse_rational(fac)?;
            } else {
                let (name, pow) = match fac.split_once('^') {
                    Some((a, b)) => (
                        a,
                        b.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {fac:?}")))?,
                    ),
                    None => (fac, 1),
                };
                let idx = labels
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                exps[idx] += pow;
            }
            k += 1;
        }
        if neg {
            coeff = -coeff;
        }
        p.add_term(Exponents(exps), coeff);
    }
    Ok(p)
}

/// Monomials of `S_[D]`, one per lattice point `m` of `P_D`, with exponents
/// `<m, u_i> + a_i`. Sorted largest first.
pub fn monomial_basis(fan: &Fan, d: &TorusDivisor) -> Vec<Exponents> {
    let poly = polytope(fan, d);
    let mut out: Vec<Exponents> = poly
        .points
        .iter()
        .map(|&m| {
            Exponents(
                fan.rays()
                    .iter()
                    .zip(&d.coeffs)
                    .map(|(u, a)| {
                        u32::try_from(u.pair(m) + a).expect("lattice point of P_D")
                    })
                    .collect(),
            )
        })
        .collect();
    out.sort_by_key(|e| Reverse(e.clone()));
    out
}

pub fn monomial_basis_of_class(fan: &Fan, c: &PicClass) -> Vec<Exponents> {
    monomial_basis(fan, &representative(fan, c))
}

pub fn multidegree(fan: &Fan, m: &Exponents) -> PicClass {
    class_of_exponents(fan, &m.0)
}

/// Weights `phi` with `sum_i phi_i u_i = 0`. For homogeneous `f` of class `beta`,
/// `phi(beta) f = sum_i phi_i x_i df/dx_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerWeights {
    phi: Vec<BigRational>,
}

impl EulerWeights {
    pub fn new(fan: &Fan, phi: Vec<BigRational>) -> Result<Self> {
        if phi.len() != fan.n() {
            return Err(Error::Length {
                expected: fan.n(),
                got: phi.len(),
            });
        }
        let mut s = [BigRational::zero(), BigRational::zero()];
        for (w, u) in phi.iter().zip(fan.rays()) {
            s[0] += w * rat(u.x());
            s[1] += w * rat(u.y());
        }
        if !s[0].is_zero() || !s[1].is_zero() {
            return Err(Error::NotARelation([s[0].to_string(), s[1].to_string()]));
        }
        Ok(EulerWeights { phi })
    }

    pub fn from_integers(fan: &Fan, phi: &[i64]) -> Result<Self> {
        Self::new(fan, phi.iter().map(|&x| rat(x)).collect())
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.phi
    }

    fn pair_divisor(&self, d: &TorusDivisor) -> BigRational {
        self.phi
            .iter()
            .zip(&d.coeffs)
            .map(|(w, &a)| w * rat(a))
            .sum()
    }

    /// `phi(beta) = sum_i phi_i a_i` for any representative `sum a_i D_i` of `beta`.
    pub fn constant_of(&self, fan: &Fan, beta: &PicClass) -> Result<BigRational> {
        let d = representative(fan, beta);
        let v = self.pair_divisor(&d);
        let shifted = &d + &TorusDivisor::principal(fan, [1, 1]);
        if self.pair_divisor(&shifted) != v || pic_class(fan, &shifted) != *beta {
            return Err(Error::Internal(
                "Euler constant depends on the representative".into(),
            ));
        }
        Ok(v)
    }
}

/// A basis of the relations `sum phi_i u_i = 0`, one vector per free ray.
pub fn relation_basis(fan: &Fan) -> Vec<EulerWeights> {
    let (p, q) = fan.pivot_cone();
    fan.free_rays()
        .into_iter()
        .map(|k| {
            // phi_p u_p + phi_q u_q = -u_k, solved in the dual basis of the cone
            let u = fan.ray(k);
            let (a, b) = (fan.ray(p), fan.ray(q));
            let d = crate::fan::det(a, b);
            let phi_p = -(u.x() * b.y() - u.y() * b.x()) * d;
            let phi_q = -(a.x() * u.y() - a.y() * u.x()) * d;
            let mut phi = vec![0i64; fan.n()];
            phi[k] = 1;
            phi[p] = phi_p;
            phi[q] = phi_q;
            EulerWeights::from_integers(fan, &phi).expect("constructed relation")
        })
        .collect()
}

/// Whether `phi(beta) p = sum_i phi_i x_i dp/dx_i` holds exactly.
pub fn check_euler(fan: &Fan, p: &CoxPolynomial, w: &EulerWeights) -> Result<bool> {
    let Some(beta) = p.class(fan)? else {
        return Ok(true);
    };
    let c = w.constant_of(fan, &beta)?;
    let lhs = p.scale(&c);
    let mut rhs = CoxPolynomial::zero(p.nvars());
    for (i, wi) in w.weights().iter().enumerate() {
        rhs = rhs.add(&p.euler_term(i).scale(wi));
    }
    Ok(lhs == rhs)
}

impl fmt::Display for CoxPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&labels))
    }
}
