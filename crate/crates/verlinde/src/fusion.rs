//! Verlinde-ring computations: the finite support of the level-h theory,
//! Weyl denominators and characters evaluated there, dimensions,
//! multiplicities, the inner product, and the fusion structure constants.
//!
//! All sums run over one common cyclotomic field `Q(zeta_M)` fixed per
//! level, in the deterministic lexicographic order of the basis weights.

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rat};
use crate::root_system::{Family, RootSystem, Weight};

/// A root system at a fixed level `h`, together with the shifted level
/// `h + c` and the conductor of the common cyclotomic field.
#[derive(Debug, Clone)]
pub struct LevelData {
    pub rs: RootSystem,
    pub level: u64,
    /// Shifted level `h + c` (the twisting the theory is defined at).
    pub shift: u64,
    /// Conductor `M` of the common field: every exponent `<mu, xi>`
    /// occurring in the character sums is an integer multiple of `1/M`.
    pub conductor: u64,
}

/// One support point of the level-h theory: the regular exponent
/// `xi = (lambda + rho) / (h + c)` in the interior of the fundamental
/// alcove, labelled by its dominant weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularPoint {
    pub label: Weight,
    pub xi: Vec<Rat>,
}

impl LevelData {
    pub fn new(rs: RootSystem, level: u64) -> LevelData {
        let shift = level + rs.dual_coxeter;
        // Smallest L clearing the denominators of the pairings of
        // fundamental weights (the inverse coroot Gram matrix), doubled to
        // cover half-integer exponents contributed by rho.
        let mut pairings = Vec::new();
        for (i, wi) in rs.fundamental_weights.iter().enumerate() {
            for wj in rs.fundamental_weights.iter().skip(i) {
                pairings.push(rs.basic(wi, wj));
            }
        }
        let l = linalg::denominator_lcm(pairings.iter());
        let l = u64::try_from(l).expect("denominator lcm fits u64");
        let conductor = 2 * l * shift;
        LevelData {
            rs,
            level,
            shift,
            conductor,
        }
    }

    pub fn build(family: Family, rank: usize, level: u64) -> Result<LevelData> {
        Ok(Self::new(RootSystem::build(family, rank)?, level))
    }

    /// The support points, one per dominant weight of level <= h, in the
    /// lexicographic order of the labels.
    pub fn regular_points(&self) -> Vec<RegularPoint> {
        let shift = rat(self.shift as i64);
        self.rs
            .level_weights(self.level)
            .into_iter()
            .map(|label| {
                let mut v = linalg::vec_add(&self.rs.weight_to_ambient(&label), &self.rs.rho);
                for c in v.iter_mut() {
                    *c /= &shift;
                }
                RegularPoint { label, xi: v }
            })
            .collect()
    }

    /// Order of the finite group `F`, the kernel of the isogeny defined by
    /// the shifted level: determinant of `(h+c)` times the coroot Gram
    /// matrix (simply connected groups, so the integer lattice is the
    /// coroot lattice).
    pub fn f_order(&self) -> BigInt {
        let n = self.rs.rank;
        let s = rat(self.shift as i64);
        let scaled: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| &self.rs.gram_basic[i][j] * &s).collect())
            .collect();
        let det = linalg::determinant(&scaled);
        linalg::to_integer(&det).expect("scaled Gram determinant is integral")
    }

    /// Exponent `M * <mu, xi>` as an integer; the conductor is chosen so
    /// this never fails on the weights that occur.
    fn exponent(&self, mu: &[Rat], xi: &[Rat]) -> i64 {
        let e = self.rs.basic(mu, xi) * rat(self.conductor as i64);
        let b = linalg::to_integer(&e).expect("conductor clears all exponents");
        i64::try_from(b).expect("exponent fits i64")
    }

    /// Check the defining regularity/alcove conditions for a point.
    pub fn is_regular(&self, xi: &[Rat]) -> bool {
        self.rs.positive_roots.iter().all(|a| {
            let p = self.rs.basic(a, xi);
            !linalg::frac(&p).is_zero()
        })
    }

    /// Squared Weyl denominator at a regular point:
    /// `prod_{alpha>0} (2 - zeta^{M<alpha,xi>} - zeta^{-M<alpha,xi>})`,
    /// the exact form of `prod 4 sin^2(pi <alpha, xi>)`.
    pub fn weyl_denominator_sq(&self, p: &RegularPoint) -> Result<Cyclotomic> {
        let m = self.conductor;
        let mut acc = Cyclotomic::one(m);
        for alpha in &self.rs.positive_roots {
            let e = self.exponent(alpha, &p.xi);
            if e.rem_euclid(m as i64) == 0 {
                return Err(Error::NotRegular(format!(
                    "Delta vanishes at {}: <alpha,xi> integral",
                    p.label
                )));
            }
            let term = Cyclotomic::from_integer(m, 2)
                .sub(&Cyclotomic::root_of_unity(m, e))
                .sub(&Cyclotomic::root_of_unity(m, -e));
            acc = acc.mul(&term);
        }
        Ok(acc)
    }

    /// Alternating Weyl sum `sum_w sgn(w) zeta^{M <w(mu), xi>}` for a
    /// strictly dominant (regular) `mu`.
    fn alternating_sum(&self, mu: &[Rat], xi: &[Rat]) -> Cyclotomic {
        let m = self.conductor;
        let terms: Vec<(u64, Rat)> = self
            .rs
            .signed_orbit(mu)
            .into_iter()
            .map(|(v, s)| {
                let e = self.exponent(&v, xi).rem_euclid(m as i64) as u64;
                (e, rat(s as i64))
            })
            .collect();
        Cyclotomic::from_exponents(m, &terms)
    }

    /// Character of the irreducible with highest weight `v`, evaluated at a
    /// regular point: the Weyl quotient of alternating sums (the Kac
    /// numerator at q = 1 divided by the Weyl denominator).
    pub fn character_at(&self, v: &Weight, p: &RegularPoint) -> Result<Cyclotomic> {
        if !v.is_dominant() {
            return Err(Error::NotDominant(v.0.clone()));
        }
        let shifted = linalg::vec_add(&self.rs.weight_to_ambient(v), &self.rs.rho);
        let num = self.alternating_sum(&shifted, &p.xi);
        let den = self.alternating_sum(&self.rs.rho.clone(), &p.xi);
        if den.is_zero() {
            return Err(Error::NotRegular(format!("point {} not regular", p.label)));
        }
        num.div(&den)
    }

    /// The q = 1 Kac numerator of `v` as delta-function coefficients on the
    /// support: at each point the alternating sum over the orbit of
    /// `v + rho`, which equals `character * (numerator of the Weyl
    /// denominator)` with the sign convention fixed by the dominant orbit
    /// representative.
    pub fn kac_numerator_support(&self, v: &Weight) -> Result<Vec<(RegularPoint, Cyclotomic)>> {
        if !v.is_dominant() {
            return Err(Error::NotDominant(v.0.clone()));
        }
        let shifted = linalg::vec_add(&self.rs.weight_to_ambient(v), &self.rs.rho);
        Ok(self
            .regular_points()
            .into_iter()
            .map(|p| {
                let c = self.alternating_sum(&shifted, &p.xi);
                (p, c)
            })
            .collect())
    }

    /// Verlinde dimension at the given genus:
    /// `|F|^{g-1} * sum_f (Delta^2(f))^{1-g}`, returned as the exact
    /// integer it provably is.
    pub fn verlinde_dimension(&self, genus: u64) -> Result<BigInt> {
        if genus < 1 {
            return Err(Error::InvalidInput("genus must be >= 1".into()));
        }
        let m = self.conductor;
        let mut sum = Cyclotomic::zero(m);
        for p in self.regular_points() {
            let d2 = self.weyl_denominator_sq(&p)?;
            sum = sum.add(&d2.pow(1 - genus as i64)?);
        }
        self.finish_count(sum, genus)
    }

    /// Multiplicity of the representation labelled `v` at the given genus:
    /// `|F|^{g-1} * sum_f Delta(f)^{2-2g} chi_v(f)`.
    pub fn multiplicity(&self, v: &Weight, genus: u64) -> Result<BigInt> {
        if genus < 1 {
            return Err(Error::InvalidInput("genus must be >= 1".into()));
        }
        if self.rs.level(v) > self.level as i64 {
            return Err(Error::InvalidInput(format!(
                "weight {v} exceeds level {}",
                self.level
            )));
        }
        let m = self.conductor;
        let mut sum = Cyclotomic::zero(m);
        for p in self.regular_points() {
            let d2 = self.weyl_denominator_sq(&p)?;
            let chi = self.character_at(v, &p)?;
            sum = sum.add(&d2.pow(1 - genus as i64)?.mul(&chi));
        }
        self.finish_count(sum, genus)
    }

    fn finish_count(&self, sum: Cyclotomic, genus: u64) -> Result<BigInt> {
        let f = self.f_order();
        let factor = Rat::from_integer(f).pow((genus - 1) as i32);
        let total = sum.scale(&factor);
        let q = total.as_rational().map_err(|_| {
            Error::Inconsistency(format!("Verlinde sum not rational: {total}"))
        })?;
        let int = linalg::to_integer(&q)
            .ok_or_else(|| Error::Inconsistency(format!("Verlinde sum not integral: {q}")))?;
        Ok(int)
    }

    /// The Verlinde inner product of two functions on the support
    /// (values aligned with `regular_points` order):
    /// `|F|^{-1} sum_f Delta^2(f) conj(phi(f)) psi(f)`.
    pub fn inner_product(&self, phi: &[Cyclotomic], psi: &[Cyclotomic]) -> Result<Cyclotomic> {
        let points = self.regular_points();
        if phi.len() != points.len() || psi.len() != points.len() {
            return Err(Error::MissingPoint(format!(
                "expected values at {} points, got {} and {}",
                points.len(),
                phi.len(),
                psi.len()
            )));
        }
        let m = self.conductor;
        let mut sum = Cyclotomic::zero(m);
        for (i, p) in points.iter().enumerate() {
            let d2 = self.weyl_denominator_sq(p)?;
            sum = sum.add(&d2.mul(&phi[i].conjugate()).mul(&psi[i]));
        }
        let f = self.f_order();
        Ok(sum.scale(&Rat::from_integer(f).recip()))
    }

    /// The genus-g handle element as a function on the support:
    /// `f -> |F|^g * Delta(f)^{-2g}`. Pairing it against a character under
    /// the inner product reproduces the multiplicity at genus g.
    pub fn handle_element(&self, genus: u64) -> Result<Vec<Cyclotomic>> {
        let f = Rat::from_integer(self.f_order()).pow(genus as i32);
        self.regular_points()
            .iter()
            .map(|p| {
                let d2 = self.weyl_denominator_sq(p)?;
                Ok(d2.pow(-(genus as i64))?.scale(&f))
            })
            .collect()
    }

    /// Character table: `table[a][j] = chi_{basis[a]}(point j)`.
    pub fn character_table(&self) -> Result<Vec<Vec<Cyclotomic>>> {
        let points = self.regular_points();
        let basis = self.rs.level_weights(self.level);
        basis
            .iter()
            .map(|w| points.iter().map(|p| self.character_at(w, p)).collect())
            .collect()
    }

    /// The fusion ring on the level-h dominant weights, with structure
    /// constants `N_ab^c = <chi_c, chi_a chi_b>` under the inner product.
    pub fn fusion_ring(&self) -> Result<FusionRing> {
        let basis = self.rs.level_weights(self.level);
        let n = basis.len();
        let points = self.regular_points();
        let table = self.character_table()?;
        let d2: Vec<Cyclotomic> = points
            .iter()
            .map(|p| self.weyl_denominator_sq(p))
            .collect::<Result<_>>()?;
        let f_inv = Rat::from_integer(self.f_order()).recip();
        let m = self.conductor;

        let mut constants = vec![vec![vec![0i64; n]; n]; n];
        for a in 0..n {
            for b in a..n {
                // pointwise product chi_a * chi_b
                let prod: Vec<Cyclotomic> =
                    (0..points.len()).map(|j| table[a][j].mul(&table[b][j])).collect();
                for (c, chi_c) in table.iter().enumerate() {
                    let mut sum = Cyclotomic::zero(m);
                    for j in 0..points.len() {
                        sum = sum.add(&d2[j].mul(&chi_c[j].conjugate()).mul(&prod[j]));
                    }
                    let val = sum.scale(&f_inv);
                    let q = val.as_rational().map_err(|_| {
                        Error::Inconsistency(format!(
                            "structure constant N[{a}][{b}][{c}] not rational"
                        ))
                    })?;
                    let int = linalg::to_integer(&q).ok_or_else(|| {
                        Error::Inconsistency(format!(
                            "structure constant N[{a}][{b}][{c}] = {q} not integral"
                        ))
                    })?;
                    let int = i64::try_from(int).map_err(|_| {
                        Error::Inconsistency("structure constant exceeds i64".into())
                    })?;
                    constants[a][b][c] = int;
                    constants[b][a][c] = int;
                }
            }
        }
        let unit = basis
            .iter()
            .position(|w| w.0.iter().all(|&x| x == 0))
            .expect("zero weight has level 0 <= h");
        Ok(FusionRing {
            family: self.rs.family,
            rank: self.rs.rank,
            level: self.level,
            basis,
            constants,
            unit,
        })
    }
}

/// Fusion ring data: ordered basis of level-h dominant weights and the
/// integer structure-constant tensor `N[a][b][c]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionRing {
    pub family: Family,
    pub rank: usize,
    pub level: u64,
    pub basis: Vec<Weight>,
    pub constants: Vec<Vec<Vec<i64>>>,
    pub unit: usize,
}

impl FusionRing {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    /// Fusion matrix `(N_a)_{bc} = N_ab^c`.
    pub fn fusion_matrix(&self, a: usize) -> Vec<Vec<i64>> {
        self.constants[a].clone()
    }

    /// Full associativity tensor identity
    /// `sum_e N_ab^e N_ec^d = sum_e N_bc^e N_ae^d`.
    pub fn is_associative(&self) -> bool {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs: i64 = (0..n)
                            .map(|e| self.constants[a][b][e] * self.constants[e][c][d])
                            .sum();
                        let rhs: i64 = (0..n)
                            .map(|e| self.constants[b][c][e] * self.constants[a][e][d])
                            .sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.constants[a][b][c] == self.constants[b][a][c]))
        })
    }

    pub fn unit_law_holds(&self) -> bool {
        let n = self.size();
        (0..n).all(|b| {
            (0..n).all(|c| self.constants[self.unit][b][c] == i64::from(b == c))
        })
    }

    pub fn all_nonnegative(&self) -> bool {
        self.constants
            .iter()
            .flatten()
            .flatten()
            .all(|&x| x >= 0)
    }

    /// Documented JSON export: sparse `[a, b, c, N]` triples in
    /// lexicographic order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut triples = Vec::new();
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.constants[a][b][c];
                    if v != 0 {
                        triples.push(serde_json::json!([a, b, c, v]));
                    }
                }
            }
        }
        serde_json::json!({
            "family": self.family.letter().to_string(),
            "rank": self.rank,
            "level": self.level,
            "basis": self.basis.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
            "constants": triples,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FusionRing> {
        let family = v["family"]
            .as_str()
            .and_then(|s| s.chars().next())
            .and_then(Family::parse)
            .ok_or_else(|| Error::InvalidInput("bad family in fusion JSON".into()))?;
        let rank = v["rank"]
            .as_u64()
            .ok_or_else(|| Error::InvalidInput("bad rank".into()))? as usize;
        let level = v["level"]
            .as_u64()
            .ok_or_else(|| Error::InvalidInput("bad level".into()))?;
        let basis: Vec<Weight> = v["basis"]
            .as_array()
            .ok_or_else(|| Error::InvalidInput("bad basis".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .map(|xs| Weight(xs.iter().filter_map(|x| x.as_i64()).collect()))
                    .ok_or_else(|| Error::InvalidInput("bad basis row".into()))
            })
            .collect::<Result<_>>()?;
        let n = basis.len();
        let mut constants = vec![vec![vec![0i64; n]; n]; n];
        for t in v["constants"]
            .as_array()
            .ok_or_else(|| Error::InvalidInput("bad constants".into()))?
        {
            let t = t
                .as_array()
                .filter(|t| t.len() == 4)
                .ok_or_else(|| Error::InvalidInput("bad constant triple".into()))?;
            let idx: Vec<i64> = t.iter().filter_map(|x| x.as_i64()).collect();
            if idx.len() != 4 {
                return Err(Error::InvalidInput("bad constant triple".into()));
            }
            constants[idx[0] as usize][idx[1] as usize][idx[2] as usize] = idx[3];
        }
        let unit = basis
            .iter()
            .position(|w| w.0.iter().all(|&x| x == 0))
            .ok_or_else(|| Error::InvalidInput("missing unit weight".into()))?;
        Ok(FusionRing {
            family,
            rank,
            level,
            basis,
            constants,
            unit,
        })
    }
}
