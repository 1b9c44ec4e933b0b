//! Graded pieces of the toric Jacobian ideals of a homogeneous `f` in the Cox ring.
//!
//! * `J(f)`  is generated by the partials `df/dx_i`,
//! * `J0(f)` by the Euler terms `x_i df/dx_i`,
//! * `J1(f) = J0(f) : (x_1 ... x_n)`,
//!
//! and `R1(f) = S / J1(f)`. Every piece is a finite-dimensional subspace of a
//! graded piece `S_alpha` and is computed by exact row reduction in that degree;
//! no global Groebner basis is ever formed. The colon ideal in degree `alpha` is
//! the preimage of `J0(f)_{alpha - K}` under multiplication by `x_1 ... x_n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::divisor::{canonical_divisor, pic_class, PicClass, TorusDivisor};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::groebner::{is_unit_ideal, BiPoly, Mono};
use crate::linalg::{rank, Rref};
use crate::poly::{check_euler, monomial_basis_of_class, relation_basis, CoxPolynomial, Exponents};

/// Default bound on the power of the irrelevant ideal tried by
/// [`JacobianSystem::saturation_certificate`].
pub const DEFAULT_K_MAX: u32 = 8;

/// A subspace of the graded piece `S_alpha`, stored as a reduced echelon basis
/// over the monomial basis of `S_alpha`.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    class: PicClass,
    ambient: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    rref: Rref,
}

impl GradedSubspace {
    pub fn zero(fan: &Fan, class: &PicClass) -> Self {
        let ambient = monomial_basis_of_class(fan, class);
        Self::with_ambient(class.clone(), ambient)
    }

    fn with_ambient(class: PicClass, ambient: Vec<Exponents>) -> Self {
        let index = ambient
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let rref = Rref::new(ambient.len());
        GradedSubspace {
            class,
            ambient,
            index,
            rref,
        }
    }

    pub fn class(&self) -> &PicClass {
        &self.class
    }

    pub fn ambient(&self) -> &[Exponents] {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn dim(&self) -> usize {
        self.rref.dim()
    }

    /// `dim S_alpha - dim self`.
    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn rref(&self) -> &Rref {
        &self.rref
    }

    pub fn index_of(&self, m: &Exponents) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `p` in the monomial basis of `S_alpha`.
    pub fn coordinates(&self, p: &CoxPolynomial) -> Result<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); self.ambient.len()];
        for (e, c) in p.terms() {
            let k = self.index_of(e).ok_or_else(|| {
                Error::ClassMismatch(format!(
                    "monomial {:?} is not in the graded piece {}",
                    e.0, self.class
                ))
            })?;
            v[k] = c.clone();
        }
        Ok(v)
    }

    pub fn insert(&mut self, p: &CoxPolynomial) -> Result<bool> {
        let v = self.coordinates(p)?;
        Ok(self.rref.insert(v))
    }

    pub fn contains(&self, p: &CoxPolynomial) -> Result<bool> {
        Ok(self.rref.contains(&self.coordinates(p)?))
    }

    /// Normal form of `p` modulo the subspace, supported on non-pivot monomials.
    pub fn reduce(&self, p: &CoxPolynomial) -> Result<Vec<BigRational>> {
        Ok(self.rref.reduce(self.coordinates(p)?))
    }

    /// Monomials outside the pivot set: a basis of the quotient `S_alpha / self`.
    pub fn quotient_monomials(&self) -> Vec<Exponents> {
        self.rref
            .non_pivots()
            .into_iter()
            .map(|c| self.ambient[c].clone())
            .collect()
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.class == other.class && self.rref.is_subspace_of(&other.rref)
    }

    pub fn basis_polynomials(&self) -> Vec<CoxPolynomial> {
        let n = self.ambient.first().map_or(0, Exponents::len);
        self.rref
            .rows()
            .map(|row| {
                CoxPolynomial::from_terms(
                    n,
                    row.iter().map(|(c, x)| (self.ambient[*c].clone(), x.clone())),
                )
                .expect("ambient monomials share a length")
            })
            .collect()
    }

    pub fn dump(&self, labels: &[String]) -> SubspaceDump {
        SubspaceDump {
            class: self.class.coords.clone(),
            ambient: self.ambient.iter().map(|e| e.render(labels)).collect(),
            ambient_exponents: self.ambient.iter().map(|e| e.0.clone()).collect(),
            rows: self
                .rref
                .dense_rows()
                .into_iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}

/// JSON form of a graded subspace: ambient monomials plus echelon rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceDump {
    pub class: Vec<i64>,
    pub ambient: Vec<String>,
    pub ambient_exponents: Vec<Vec<u32>>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NondegeneracyStatus {
    Nondegenerate,
    Degenerate,
    CertifiedNondegenerate(u32),
    Undetermined(u32),
}

impl fmt::Display for NondegeneracyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NondegeneracyStatus::Nondegenerate => write!(f, "nondegenerate"),
            NondegeneracyStatus::Degenerate => write!(f, "degenerate"),
            NondegeneracyStatus::CertifiedNondegenerate(k) => write!(f, "certified({k})"),
            NondegeneracyStatus::Undetermined(_) => write!(f, "undetermined"),
        }
    }
}

/// The affine chart of a maximal cone where the Euler terms have a common zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartWitness {
    pub chart_index: usize,
    pub cone: (usize, usize),
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NondegeneracyVerdict {
    pub status: NondegeneracyStatus,
    pub witness: Option<ChartWitness>,
}

impl NondegeneracyVerdict {
    pub fn status_string(&self) -> String {
        self.status.to_string()
    }

    pub fn is_nondegenerate(&self) -> bool {
        matches!(
            self.status,
            NondegeneracyStatus::Nondegenerate | NondegeneracyStatus::CertifiedNondegenerate(_)
        )
    }
}

/// Matrix of the multiplication pairing `R1_a x R1_b -> R1_{3 beta + 2K} = Q`,
/// on quotient-monomial bases, in the coordinate of `generator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    pub left_basis: Vec<Exponents>,
    pub right_basis: Vec<Exponents>,
    pub generator: Exponents,
    pub entries: Vec<Vec<BigRational>>,
}

impl PairingMatrix {
    pub fn rank(&self) -> usize {
        rank(&self.entries)
    }
}

/// Multiplication by an element of `S_{to - from}` as a map `R1_from -> R1_to`,
/// with both quotients prepared once so that many multipliers can be tried.
#[derive(Clone, Debug)]
pub struct MultiplicationMap {
    from: GradedSubspace,
    to: GradedSubspace,
    source_basis: Vec<Exponents>,
    target_columns: Vec<usize>,
}

impl MultiplicationMap {
    pub fn source_basis(&self) -> &[Exponents] {
        &self.source_basis
    }

    pub fn target_basis(&self) -> Vec<Exponents> {
        self.to.quotient_monomials()
    }

    /// Rows are images of the source basis, in target quotient coordinates.
    pub fn matrix(&self, eta: &CoxPolynomial) -> Result<Vec<Vec<BigRational>>> {
        self.source_basis
            .iter()
            .map(|m| {
                let v = self.to.reduce(&eta.mul_monomial(m))?;
                Ok(self.target_columns.iter().map(|&c| v[c].clone()).collect())
            })
            .collect()
    }

    pub fn rank(&self, eta: &CoxPolynomial) -> Result<usize> {
        Ok(rank(&self.matrix(eta)?))
    }

    pub fn from_piece(&self) -> &GradedSubspace {
        &self.from
    }
}

/// A homogeneous `f` together with its partials and Euler terms.
#[derive(Clone, Debug)]
pub struct JacobianSystem {
    fan: Fan,
    f: CoxPolynomial,
    beta: PicClass,
    canonical: PicClass,
    euler_terms: Vec<CoxPolynomial>,
    partials: Vec<CoxPolynomial>,
}

impl JacobianSystem {
    pub fn new(fan: &Fan, f: CoxPolynomial) -> Result<Self> {
        let beta = f
            .class(fan)?
            .ok_or_else(|| Error::InvalidArgument("f must be nonzero".into()))?;
        for w in relation_basis(fan) {
            if !check_euler(fan, &f, &w)? {
                return Err(Error::Internal(
                    "generalized Euler identity fails for a homogeneous polynomial".into(),
                ));
            }
        }
        let n = fan.n();
        Ok(JacobianSystem {
            fan: fan.clone(),
            canonical: pic_class(fan, &canonical_divisor(fan)),
            euler_terms: (0..n).map(|i| f.euler_term(i)).collect(),
            partials: (0..n).map(|i| f.partial(i)).collect(),
            f,
            beta,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn f(&self) -> &CoxPolynomial {
        &self.f
    }

    pub fn beta(&self) -> &PicClass {
        &self.beta
    }

    /// Class of the canonical divisor.
    pub fn canonical(&self) -> &PicClass {
        &self.canonical
    }

    /// `a * beta + b * K`.
    pub fn class_combo(&self, a: i64, b: i64) -> PicClass {
        &(a * &self.beta) + &(b * &self.canonical)
    }

    pub fn euler_terms(&self) -> &[CoxPolynomial] {
        &self.euler_terms
    }

    pub fn partials(&self) -> &[CoxPolynomial] {
        &self.partials
    }

    fn generated_piece<'a>(
        &self,
        alpha: &PicClass,
        gens: impl IntoIterator<Item = (&'a CoxPolynomial, PicClass)>,
    ) -> Result<GradedSubspace> {
        let mut piece = GradedSubspace::zero(&self.fan, alpha);
        for (g, class) in gens {
            if g.is_zero() {
                continue;
            }
            for m in monomial_basis_of_class(&self.fan, &(alpha - &class)) {
                piece.insert(&g.mul_monomial(&m))?;
            }
        }
        Ok(piece)
    }

    /// `J0(f)_alpha`, spanned by `m * x_i df/dx_i` for monomials `m` of class `alpha - beta`.
    pub fn j0_piece(&self, alpha: &PicClass) -> Result<GradedSubspace> {
        self.generated_piece(alpha, self.euler_terms.iter().map(|g| (g, self.beta.clone())))
    }

    /// `J(f)_alpha`, spanned by `m * df/dx_i` for `m` of class `alpha - beta + [D_i]`.
    pub fn j_piece(&self, alpha: &PicClass) -> Result<GradedSubspace> {
        let n = self.fan.n();
        let gens: Vec<(&CoxPolynomial, PicClass)> = self
            .partials
            .iter()
            .enumerate()
            .map(|(i, g)| (g, &self.beta - &pic_class(&self.fan, &TorusDivisor::prime(n, i))))
            .collect();
        self.generated_piece(alpha, gens)
    }

    /// `J1(f)_alpha = { g in S_alpha : g * x_1...x_n in J0(f) }`.
    pub fn j1_piece(&self, alpha: &PicClass) -> Result<GradedSubspace> {
        let n = self.fan.n();
        let all = Exponents::product_of_all(n);
        let source = monomial_basis_of_class(&self.fan, alpha);
        let shifted = alpha - &self.canonical;
        let target = monomial_basis_of_class(&self.fan, &shifted);

        // Order target columns: monomials not divisible by x_1...x_n first, then the
        // image of the source basis in source order.
        let target_index: HashMap<&Exponents, usize> =
            target.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut is_image = vec![None; target.len()];
        for (k, m) in source.iter().enumerate() {
            let t = target_index[&m.mul(&all)];
            is_image[t] = Some(k);
        }
        let split = target.len() - source.len();
        let mut position = vec![0; target.len()];
        let mut next_free = 0;
        for (t, img) in is_image.iter().enumerate() {
            position[t] = match img {
                Some(k) => split + k,
                None => {
                    next_free += 1;
                    next_free - 1
                }
            };
        }
        debug_assert_eq!(next_free, split);

        let mut span = Rref::new(target.len());
        let multipliers = monomial_basis_of_class(&self.fan, &(&shifted - &self.beta));
        for g in self.euler_terms.iter().filter(|g| !g.is_zero()) {
            for m in &multipliers {
                let mut v = vec![BigRational::zero(); target.len()];
                for (e, c) in g.terms() {
                    v[position[target_index[&e.mul(m)]]] = c.clone();
                }
                span.insert(v);
            }
        }

        let mut piece = GradedSubspace::with_ambient(alpha.clone(), source);
        for row in span.rows() {
            if row[0].0 >= split {
                let mut v = vec![BigRational::zero(); piece.ambient_dim()];
                for (c, x) in row {
                    v[c - split] = x.clone();
                }
                piece.rref.insert(v);
            }
        }
        Ok(piece)
    }

    /// `dim R1(f)_alpha`.
    pub fn r1_dim(&self, alpha: &PicClass) -> Result<usize> {
        Ok(self.j1_piece(alpha)?.codim())
    }

    /// The Euler terms restricted to the affine chart of each maximal cone, as
    /// polynomials in the two chart coordinates.
    pub fn chart_polynomials(&self, cone: (usize, usize)) -> Vec<BiPoly> {
        self.euler_terms
            .iter()
            .map(|g| {
                BiPoly::from_terms(
                    g.terms()
                        .map(|(e, c)| (Mono(e.0[cone.0], e.0[cone.1]), c.clone())),
                )
            })
            .collect()
    }

    /// Decides whether the Euler terms have a common zero on the surface, chart by
    /// chart: on the chart of `sigma` the other coordinates can be set to 1, and
    /// there is no zero iff the restricted Euler terms generate the unit ideal.
    pub fn nondegenerate_decide(&self) -> NondegeneracyVerdict {
        for (k, &cone) in self.fan.maximal_cones().iter().enumerate() {
            if !is_unit_ideal(&self.chart_polynomials(cone)) {
                let labels = self.fan.labels();
                return NondegeneracyVerdict {
                    status: NondegeneracyStatus::Degenerate,
                    witness: Some(ChartWitness {
                        chart_index: k,
                        cone,
                        description: format!(
                            "Euler terms have a common zero in the chart with coordinates {}, {} \
                             (other variables set to 1)",
                            labels[cone.0], labels[cone.1]
                        ),
                    }),
                };
            }
        }
        NondegeneracyVerdict {
            status: NondegeneracyStatus::Nondegenerate,
            witness: None,
        }
    }

    /// Positive certificate: the smallest `k <= k_max` with `B^k` contained in
    /// `J0(f)`, where `B` is the irrelevant ideal. Never certifies a degenerate `f`.
    pub fn saturation_certificate(&self, k_max: u32) -> Result<NondegeneracyVerdict> {
        if k_max == 0 {
            return Err(Error::InvalidArgument("k_max must be positive".into()));
        }
        let gens: Vec<Exponents> = self
            .fan
            .irrelevant_generators()
            .into_iter()
            .map(Exponents)
            .collect();
        let n = self.fan.n();
        let mut pieces: HashMap<PicClass, GradedSubspace> = HashMap::new();
        let mut power: BTreeSet<Exponents> = [Exponents::one(n)].into_iter().collect();
        for k in 1..=k_max {
            power = power
                .iter()
                .flat_map(|p| gens.iter().map(move |g| p.mul(g)))
                .collect();
            let mut all_in = true;
            for m in &power {
                let class = crate::poly::multidegree(&self.fan, m);
                if !pieces.contains_key(&class) {
                    pieces.insert(class.clone(), self.j0_piece(&class)?);
                }
                let piece = &pieces[&class];
                let mono = CoxPolynomial::monomial(m.clone(), BigRational::one());
                if !piece.contains(&mono)? {
                    all_in = false;
                    break;
                }
            }
            if all_in {
                return Ok(NondegeneracyVerdict {
                    status: NondegeneracyStatus::CertifiedNondegenerate(k),
                    witness: None,
                });
            }
        }
        Ok(NondegeneracyVerdict {
            status: NondegeneracyStatus::Undetermined(k_max),
            witness: None,
        })
    }

    /// The top class `3 beta + 2K`.
    pub fn top_class(&self) -> PicClass {
        self.class_combo(3, 2)
    }

    /// Matrix of `R1_a x R1_b -> R1_{3 beta + 2K}`; requires `a + b = 3 beta + 2K`
    /// and a one-dimensional top piece.
    pub fn pairing_matrix(&self, a: &PicClass, b: &PicClass) -> Result<PairingMatrix> {
        let top_class = self.top_class();
        if a + b != top_class {
            return Err(Error::ClassMismatch(format!(
                "{a} + {b} is not 3 beta + 2K = {top_class}"
            )));
        }
        let top = self.j1_piece(&top_class)?;
        if top.codim() != 1 {
            return Err(Error::Precondition(format!(
                "dim R1_(3 beta + 2K) = {} (expected 1); f is degenerate or the classes are wrong",
                top.codim()
            )));
        }
        let gen_col = top.rref().non_pivots()[0];
        let left = self.j1_piece(a)?.quotient_monomials();
        let right = self.j1_piece(b)?.quotient_monomials();
        let entries = left
            .iter()
            .map(|l| {
                right
                    .iter()
                    .map(|r| {
                        let m = CoxPolynomial::monomial(l.mul(r), BigRational::one());
                        Ok(top.reduce(&m)?[gen_col].clone())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PairingMatrix {
            left_basis: left,
            right_basis: right,
            generator: top.ambient()[gen_col].clone(),
            entries,
        })
    }

    /// Prepares multiplication `R1_from -> R1_to`.
    pub fn multiplication_map(&self, from: &PicClass, to: &PicClass) -> Result<MultiplicationMap> {
        let from_piece = self.j1_piece(from)?;
        let to_piece = self.j1_piece(to)?;
        Ok(MultiplicationMap {
            source_basis: from_piece.quotient_monomials(),
            target_columns: to_piece.rref().non_pivots(),
            from: from_piece,
            to: to_piece,
        })
    }

    /// Rank of multiplication by `eta` from `R1_from` to `R1_to`.
    pub fn multiplication_rank(
        &self,
        eta: &CoxPolynomial,
        from: &PicClass,
        to: &PicClass,
    ) -> Result<usize> {
        if let Some(c) = eta.class(&self.fan)? {
            if &(&c + from) != to {
                return Err(Error::ClassMismatch(format!(
                    "multiplier of class {c} does not map {from} to {to}"
                )));
            }
        }
        self.multiplication_map(from, to)?.rank(eta)
    }
}
