//! Buchberger's algorithm in two variables over `Q`, graded lexicographic order.
//!
//! Only used to decide whether an ideal of `Q[s, t]` is the unit ideal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// `s^a t^b`, ordered by total degree, then by the power of `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub u32, pub u32);

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0 + self.1, self.0).cmp(&(other.0 + other.1, other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    fn divides(self, other: Mono) -> bool {
        self.0 <= other.0 && self.1 <= other.1
    }

    fn lcm(self, other: Mono) -> Mono {
        Mono(self.0.max(other.0), self.1.max(other.1))
    }

    fn mul(self, other: Mono) -> Mono {
        Mono(self.0 + other.0, self.1 + other.1)
    }

    fn div(self, other: Mono) -> Mono {
        Mono(self.0 - other.0, self.1 - other.1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl BiPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, BigRational)>) -> Self {
        let mut p = BiPoly::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains_key(&Mono(0, 0))
    }

    fn lead(&self) -> (Mono, &BigRational) {
        let (m, c) = self.terms.iter().next_back().expect("nonzero polynomial");
        (*m, c)
    }

    fn monic(mut self) -> Self {
        if self.is_zero() {
            return self;
        }
        let inv = BigRational::one() / self.lead().1;
        for c in self.terms.values_mut() {
            *c *= &inv;
        }
        self
    }

    /// `self - c * m * other`
    fn sub_scaled(&mut self, c: &BigRational, m: Mono, other: &BiPoly) {
        for (k, v) in &other.terms {
            self.add_term(k.mul(m), -(c * v));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }
}

/// Full reduction of `p` by `basis` (every term, not just the leading one).
pub fn normal_form(p: &BiPoly, basis: &[BiPoly]) -> BiPoly {
    let mut p = p.clone();
    let mut rem = BiPoly::default();
    while !p.is_zero() {
        let (m, c) = p.lead();
        let c = c.clone();
        match basis.iter().find(|g| g.lead().0.divides(m)) {
            Some(g) => {
                let (gm, gc) = g.lead();
                let q = &c / gc;
                p.sub_scaled(&q, m.div(gm), g);
            }
            None => {
                rem.add_term(m, c.clone());
                p.add_term(m, -c);
            }
        }
    }
    rem
}

fn s_poly(f: &BiPoly, g: &BiPoly) -> BiPoly {
    let (fm, fc) = f.lead();
    let (gm, gc) = g.lead();
    let l = fm.lcm(gm);
    let mut out = BiPoly::default();
    out.sub_scaled(&-(BigRational::one() / fc), l.div(fm), f);
    out.sub_scaled(&(BigRational::one() / gc), l.div(gm), g);
    out
}

/// Reduced Groebner basis (monic, sorted by leading monomial).
pub fn groebner_basis(gens: &[BiPoly]) -> Vec<BiPoly> {
    let mut basis: Vec<BiPoly> = Vec::new();
    for g in gens {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    // normal strategy: the pair with the smallest lcm first
    while let Some((l, i, j)) = pairs
        .iter()
        .map(|&(i, j)| (basis[i].lead().0.lcm(basis[j].lead().0), i, j))
        .min()
    {
        pairs.remove(&(i, j));
        let (mi, mj) = (basis[i].lead().0, basis[j].lead().0);
        // product criterion: coprime leading monomials
        if l == mi.mul(mj) {
            continue;
        }
        // chain criterion
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.divides(l)
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_poly(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_nonzero_constant() {
            return vec![r];
        }
        let k = basis.len();
        basis.push(r);
        for a in 0..k {
            pairs.insert((a, k));
        }
    }
    reduce_basis(basis)
}

fn reduce_basis(mut basis: Vec<BiPoly>) -> Vec<BiPoly> {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by_key(|p| p.lead().0);
    let mut minimal: Vec<BiPoly> = Vec::new();
    for g in basis {
        let m = g.lead().0;
        if !minimal.iter().any(|h| h.lead().0.divides(m)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<BiPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, g)| g.clone())
            .collect();
        let (m, c) = minimal[k].lead();
        let mut tail = minimal[k].clone();
        tail.add_term(m, -c.clone());
        let mut g = normal_form(&tail, &others);
        g.add_term(m, c.clone());
        out.push(g.monic());
    }
    out
}

pub fn is_unit_ideal(gens: &[BiPoly]) -> bool {
    let gb = groebner_basis(gens);
    gb.len() == 1 && gb[0].is_nonzero_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn p(terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().map(|&(a, b, c)| (Mono(a, b), rat(c))))
    }

    #[test]
    fn order() {
        assert!(Mono(0, 2) > Mono(1, 0));
        assert!(Mono(2, 0) > Mono(1, 1));
    }

    #[test]
    fn unit_and_proper() {
        // s, t - 1: common zero (0, 1)
        assert!(!is_unit_ideal(&[p(&[(1, 0, 1)]), p(&[(0, 1, 1), (0, 0, -1)])]));
        // s, s - 1
        assert!(is_unit_ideal(&[p(&[(1, 0, 1)]), p(&[(1, 0, 1), (0, 0, -1)])]));
        // s^2 + t^2 - 1, s - t, 2 s^2 - 1 + 1 : (s^2+t^2-1, s-t, s^2) has no common zero
        assert!(is_unit_ideal(&[
            p(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]),
            p(&[(1, 0, 1), (0, 1, -1)]),
            p(&[(2, 0, 1)]),
        ]));
        assert!(!is_unit_ideal(&[p(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]), p(&[(1, 0, 1), (0, 1, -1)])]));
        assert!(!is_unit_ideal(&[]));
    }

    #[test]
    fn reduced_basis_of_circle_and_line() {
        let gb = groebner_basis(&[
            p(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]),
            p(&[(1, 0, 1), (0, 1, -1)]),
        ]);
        // {s - t, t^2 - 1/2}
        assert_eq!(gb.len(), 2);
        for g in &gb {
            assert!(g.lead().1.is_one());
        }
        let f = p(&[(3, 0, 2), (0, 1, -1)]); // 2 s^3 - t = 2 t^3 - t = 2t(t^2 - 1/2)
        assert!(normal_form(&f, &gb).is_zero());
    }
}
