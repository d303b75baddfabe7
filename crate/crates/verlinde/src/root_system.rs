//! Root-system and Weyl-group combinatorics for the classical families
//! A, B, C, D, in the orthogonal ambient ("epsilon") basis, with the basic
//! inner product normalised so that long roots have squared length 2.
//!
//! All coordinates are exact rationals. The Weyl group is never stored as a
//! list of matrices: orbits and alternating sums are produced by closure
//! under simple reflections, so nothing here assumes the group is small.

use std::collections::BTreeSet;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, rat, ratio, Rat};

/// Classical simple Lie algebra family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    pub fn parse(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Integral weight in the fundamental-weight basis (Dynkin labels).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Root-system data for one simple Lie algebra.
///
/// Vectors live in an ambient rational space of dimension `ambient_dim`
/// (`rank + 1` for A, `rank` otherwise); the basic inner product is
/// `basic_scale`  times the standard dot product.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub ambient_dim: usize,
    basic_scale: Rat,
    pub simple_roots: Vec<Vec<Rat>>,
    pub positive_roots: Vec<Vec<Rat>>,
    pub fundamental_weights: Vec<Vec<Rat>>,
    pub rho: Vec<Rat>,
    pub highest_root: Vec<Rat>,
    pub dual_coxeter: u64,
    /// Gram matrix of the basic inner product on the simple coroots.
    pub gram_basic: Vec<Vec<Rat>>,
    /// Levels of the fundamental weights (pairings with the highest coroot).
    pub comarks: Vec<u64>,
}

impl RootSystem {
    /// Build the root system for `family` at the given rank.
    ///
    /// Ranks follow the usual non-redundancy conventions: A requires
    /// rank >= 1, B and C rank >= 2, D rank >= 3.
    pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
        let unsupported = |reason: &str| Error::UnsupportedRootSystem {
            family: family.letter(),
            rank,
            reason: reason.to_string(),
        };
        match family {
            Family::A if rank < 1 => return Err(unsupported("A requires rank >= 1")),
            Family::B | Family::C if rank < 2 => {
                return Err(unsupported("B and C require rank >= 2"))
            }
            Family::D if rank < 3 => return Err(unsupported("D requires rank >= 3")),
            _ => {}
        }
        if rank > 16 {
            return Err(unsupported("rank capped at 16 in this build"));
        }

        let n = rank;
        let ambient_dim = if family == Family::A { n + 1 } else { n };
        let e = |i: usize| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); ambient_dim];
            v[i] = Rat::one();
            v
        };
        let add = linalg::vec_add;
        let sub = linalg::vec_sub;

        let basic_scale = match family {
            Family::C => ratio(1, 2),
            _ => rat(1),
        };

        let mut simple_roots: Vec<Vec<Rat>> = Vec::new();
        let mut positive_roots: Vec<Vec<Rat>> = Vec::new();
        let mut fundamental_weights: Vec<Vec<Rat>> = Vec::new();
        let highest_root: Vec<Rat>;

        match family {
            Family::A => {
                for i in 0..n {
                    simple_roots.push(sub(&e(i), &e(i + 1)));
                }
                for i in 0..n + 1 {
                    for j in i + 1..n + 1 {
                        positive_roots.push(sub(&e(i), &e(j)));
                    }
                }
                // omega_i = e_1+..+e_i - i/(n+1) * (e_1+..+e_{n+1})
                for i in 1..=n {
                    let mut w = vec![Rat::zero(); ambient_dim];
                    for item in w.iter_mut().take(i) {
                        *item = Rat::one();
                    }
                    let shift = ratio(i as i64, (n + 1) as i64);
                    for item in w.iter_mut() {
                        *item -= &shift;
                    }
                    fundamental_weights.push(w);
                }
                highest_root = sub(&e(0), &e(n));
            }
            Family::B => {
                for i in 0..n - 1 {
                    simple_roots.push(sub(&e(i), &e(i + 1)));
                }
                simple_roots.push(e(n - 1));
                for i in 0..n {
                    for j in i + 1..n {
                        positive_roots.push(sub(&e(i), &e(j)));
                        positive_roots.push(add(&e(i), &e(j)));
                    }
                    positive_roots.push(e(i));
                }
                for i in 1..=n {
                    let mut w = vec![Rat::zero(); ambient_dim];
                    for item in w.iter_mut().take(i) {
                        *item = Rat::one();
                    }
                    if i == n {
                        for item in w.iter_mut() {
                            *item *= ratio(1, 2);
                        }
                    }
                    fundamental_weights.push(w);
                }
                highest_root = add(&e(0), &e(1));
            }
            Family::C => {
                for i in 0..n - 1 {
                    simple_roots.push(sub(&e(i), &e(i + 1)));
                }
                simple_roots.push(linalg::vec_scale(&e(n - 1), &rat(2)));
                for i in 0..n {
                    for j in i + 1..n {
                        positive_roots.push(sub(&e(i), &e(j)));
                        positive_roots.push(add(&e(i), &e(j)));
                    }
                    positive_roots.push(linalg::vec_scale(&e(i), &rat(2)));
                }
                for i in 1..=n {
                    let mut w = vec![Rat::zero(); ambient_dim];
                    for item in w.iter_mut().take(i) {
                        *item = Rat::one();
                    }
                    fundamental_weights.push(w);
                }
                highest_root = linalg::vec_scale(&e(0), &rat(2));
            }
            Family::D => {
                for i in 0..n - 1 {
                    simple_roots.push(sub(&e(i), &e(i + 1)));
                }
                simple_roots.push(add(&e(n - 2), &e(n - 1)));
                for i in 0..n {
                    for j in i + 1..n {
                        positive_roots.push(sub(&e(i), &e(j)));
                        positive_roots.push(add(&e(i), &e(j)));
                    }
                }
                for i in 1..=n - 2 {
                    let mut w = vec![Rat::zero(); ambient_dim];
                    for item in w.iter_mut().take(i) {
                        *item = Rat::one();
                    }
                    fundamental_weights.push(w);
                }
                let mut w1 = vec![ratio(1, 2); ambient_dim];
                w1[n - 1] = ratio(-1, 2);
                fundamental_weights.push(w1);
                fundamental_weights.push(vec![ratio(1, 2); ambient_dim]);
                highest_root = add(&e(0), &e(1));
            }
        }

        let mut rho = vec![Rat::zero(); ambient_dim];
        for w in &fundamental_weights {
            rho = add(&rho, w);
        }

        let mut rs = RootSystem {
            family,
            rank,
            ambient_dim,
            basic_scale,
            simple_roots,
            positive_roots,
            fundamental_weights,
            rho,
            highest_root,
            dual_coxeter: 0,
            gram_basic: Vec::new(),
            comarks: Vec::new(),
        };

        let coroots: Vec<Vec<Rat>> = rs.simple_roots.iter().map(|a| rs.coroot(a)).collect();
        rs.gram_basic = coroots
            .iter()
            .map(|x| coroots.iter().map(|y| rs.basic(x, y)).collect())
            .collect();

        // Levels of the fundamental weights; the highest root is long, so its
        // coroot coincides with it under the basic identification.
        let theta_coroot = rs.coroot(&rs.highest_root.clone());
        rs.comarks = rs
            .fundamental_weights
            .iter()
            .map(|w| {
                let l = rs.basic(w, &theta_coroot);
                linalg::to_integer(&l)
                    .and_then(|b| u64::try_from(b).ok())
                    .expect("fundamental weight levels are positive integers")
            })
            .collect();
        let rho_level = rs.basic(&rs.rho.clone(), &theta_coroot);
        let c = linalg::to_integer(&rho_level).expect("rho level is integral");
        rs.dual_coxeter = u64::try_from(c + BigInt::one()).expect("dual Coxeter number fits u64");

        Ok(rs)
    }

    /// Basic inner product of two ambient vectors.
    pub fn basic(&self, a: &[Rat], b: &[Rat]) -> Rat {
        &self.basic_scale * linalg::dot(a, b)
    }

    /// Coroot of a root, as an ambient vector under the basic identification.
    pub fn coroot(&self, alpha: &[Rat]) -> Vec<Rat> {
        let len2 = self.basic(alpha, alpha);
        linalg::vec_scale(alpha, &(rat(2) / len2))
    }

    /// Pairing of an ambient vector with the coroot of simple root `i`.
    pub fn simple_pairing(&self, v: &[Rat], i: usize) -> Rat {
        let c = self.coroot(&self.simple_roots[i].clone());
        self.basic(v, &c)
    }

    /// Convert Dynkin labels (rational) to an ambient vector.
    pub fn dynkin_to_ambient(&self, coords: &[Rat]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.ambient_dim];
        for (c, w) in coords.iter().zip(&self.fundamental_weights) {
            for (vi, wi) in v.iter_mut().zip(w) {
                *vi += c * wi;
            }
        }
        v
    }

    /// Convert an ambient vector (in the weight span) to Dynkin coordinates.
    pub fn ambient_to_dynkin(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rank).map(|i| self.simple_pairing(v, i)).collect()
    }

    pub fn weight_to_ambient(&self, w: &Weight) -> Vec<Rat> {
        let coords: Vec<Rat> = w.0.iter().map(|&c| rat(c)).collect();
        self.dynkin_to_ambient(&coords)
    }

    /// Level of a weight: pairing with the highest coroot.
    pub fn level(&self, w: &Weight) -> i64 {
        w.0.iter()
            .zip(&self.comarks)
            .map(|(&c, &m)| c * m as i64)
            .sum()
    }

    /// Reflection in the wall of `alpha` (basic-orthogonal reflection).
    pub fn reflect(&self, v: &[Rat], alpha: &[Rat]) -> Vec<Rat> {
        let t = rat(2) * self.basic(v, alpha) / self.basic(alpha, alpha);
        linalg::vec_sub(v, &linalg::vec_scale(alpha, &t))
    }

    /// Signed fold of an ambient vector into the dominant chamber.
    ///
    /// Returns the dominant representative, the sign `(-1)^{#reflections}`
    /// (0 if the vector lies on a reflection wall), and the sequence of
    /// simple reflections applied, outermost first: applying them in order
    /// to the output recovers the input.
    pub fn fold_with_word(&self, v: &[Rat]) -> (Vec<Rat>, i8, Vec<usize>) {
        let mut x = v.to_vec();
        let mut word = Vec::new();
        let mut sign = 1i8;
        loop {
            let mut moved = false;
            for i in 0..self.rank {
                if self.simple_pairing(&x, i) < Rat::zero() {
                    x = self.reflect(&x, &self.simple_roots[i].clone());
                    word.push(i);
                    sign = -sign;
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        if (0..self.rank).any(|i| self.simple_pairing(&x, i).is_zero()) {
            sign = 0;
        }
        word.reverse();
        (x, sign, word)
    }

    /// Signed fold to the dominant chamber on Dynkin-coordinate vectors.
    pub fn weyl_fold(&self, coords: &[Rat]) -> (Vec<Rat>, i8) {
        let v = self.dynkin_to_ambient(coords);
        let (folded, sign, _) = self.fold_with_word(&v);
        (self.ambient_to_dynkin(&folded), sign)
    }

    /// Weyl orbit of an ambient vector, sorted for reproducibility.
    pub fn orbit_ambient(&self, v: &[Rat]) -> Vec<Vec<Rat>> {
        let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let mut stack = vec![v.to_vec()];
        while let Some(x) = stack.pop() {
            if !seen.insert(x.clone()) {
                continue;
            }
            for i in 0..self.rank {
                let y = self.reflect(&x, &self.simple_roots[i].clone());
                if !seen.contains(&y) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Weyl orbit of a weight, as Dynkin-coordinate vectors.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Vec<Rat>> {
        self.orbit_ambient(&self.weight_to_ambient(w))
            .into_iter()
            .map(|v| self.ambient_to_dynkin(&v))
            .collect()
    }

    /// Orbit of a *regular* vector together with signs `sgn(w)`.
    ///
    /// The stabiliser of a regular vector is trivial, so the sign of the
    /// unique Weyl element reaching each orbit point is well defined.
    pub fn signed_orbit(&self, v: &[Rat]) -> Vec<(Vec<Rat>, i8)> {
        let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut stack = vec![(v.to_vec(), 1i8)];
        while let Some((x, s)) = stack.pop() {
            if !seen.insert(x.clone()) {
                continue;
            }
            for i in 0..self.rank {
                let y = self.reflect(&x, &self.simple_roots[i].clone());
                if !seen.contains(&y) {
                    stack.push((y, -s));
                }
            }
            out.push((x, s));
        }
        out.sort();
        out
    }

    /// Dominant weights of level at most `h`, in ascending lexicographic
    /// order of Dynkin labels.
    pub fn level_weights(&self, h: u64) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut coords = vec![0i64; self.rank];
        self.level_weights_rec(h as i64, 0, &mut coords, &mut out);
        out.sort();
        out
    }

    fn level_weights_rec(&self, budget: i64, i: usize, coords: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == self.rank {
            out.push(Weight(coords.clone()));
            return;
        }
        let mark = self.comarks[i] as i64;
        let max = budget / mark;
        for m in 0..=max {
            coords[i] = m;
            self.level_weights_rec(budget - m * mark, i + 1, coords, out);
        }
        coords[i] = 0;
    }

    /// Order of the Weyl group (closed form).
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u32;
        let fact = |k: u32| -> u128 { (1..=k as u128).product::<u128>().max(1) };
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => 2u128.pow(n) * fact(n),
            Family::D => 2u128.pow(n - 1) * fact(n),
        }
    }

    /// Dimension of the group: rank + number of roots.
    pub fn group_dimension(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    /// Serialise to the documented JSON form (rationals as "p/q" strings).
    pub fn to_json(&self) -> serde_json::Value {
        let vecs = |vs: &Vec<Vec<Rat>>| -> serde_json::Value {
            serde_json::Value::Array(
                vs.iter()
                    .map(|v| {
                        serde_json::Value::Array(
                            v.iter()
                                .map(|r| serde_json::Value::String(r.to_string()))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        serde_json::json!({
            "family": self.family.letter().to_string(),
            "rank": self.rank,
            "simple_roots": vecs(&self.simple_roots),
            "positive_roots": vecs(&self.positive_roots),
            "fundamental_weights": vecs(&self.fundamental_weights),
            "rho": self.rho.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "dual_coxeter": self.dual_coxeter,
            "gram_basic": vecs(&self.gram_basic),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::build(f, n).unwrap()
    }

    #[test]
    fn positive_root_counts_match_tables() {
        assert_eq!(rs(Family::A, 1).positive_roots.len(), 1);
        assert_eq!(rs(Family::A, 2).positive_roots.len(), 3);
        assert_eq!(rs(Family::A, 3).positive_roots.len(), 6);
        assert_eq!(rs(Family::B, 2).positive_roots.len(), 4);
        assert_eq!(rs(Family::B, 3).positive_roots.len(), 9);
        assert_eq!(rs(Family::C, 3).positive_roots.len(), 9);
        assert_eq!(rs(Family::D, 3).positive_roots.len(), 6);
        assert_eq!(rs(Family::D, 4).positive_roots.len(), 12);
    }

    #[test]
    fn dual_coxeter_numbers_match_tables() {
        assert_eq!(rs(Family::A, 1).dual_coxeter, 2);
        assert_eq!(rs(Family::A, 2).dual_coxeter, 3);
        assert_eq!(rs(Family::B, 2).dual_coxeter, 3);
        assert_eq!(rs(Family::B, 3).dual_coxeter, 5);
        assert_eq!(rs(Family::C, 2).dual_coxeter, 3);
        assert_eq!(rs(Family::C, 3).dual_coxeter, 4);
        assert_eq!(rs(Family::D, 3).dual_coxeter, 4);
        assert_eq!(rs(Family::D, 4).dual_coxeter, 6);
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(rs(Family::A, 1).weyl_order(), 2);
        assert_eq!(rs(Family::A, 2).weyl_order(), 6);
        assert_eq!(rs(Family::B, 2).weyl_order(), 8);
        assert_eq!(rs(Family::D, 4).weyl_order(), 192);
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for (f, n) in [
            (Family::A, 1),
            (Family::A, 2),
            (Family::A, 3),
            (Family::B, 2),
            (Family::B, 3),
            (Family::C, 2),
            (Family::C, 3),
            (Family::D, 3),
            (Family::D, 4),
        ] {
            let r = rs(f, n);
            let mut sum = vec![Rat::zero(); r.ambient_dim];
            for a in &r.positive_roots {
                sum = linalg::vec_add(&sum, a);
            }
            let two_rho = linalg::vec_scale(&r.rho, &rat(2));
            assert_eq!(sum, two_rho, "{f}{n}");
        }
    }

    #[test]
    fn gram_is_symmetric_and_long_roots_have_length_two() {
        for (f, n) in [(Family::A, 2), (Family::B, 3), (Family::C, 2), (Family::D, 4)] {
            let r = rs(f, n);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(r.gram_basic[i][j], r.gram_basic[j][i]);
                }
            }
            let theta = r.highest_root.clone();
            assert_eq!(r.basic(&theta, &theta), rat(2), "{f}{n}");
            assert!(linalg::determinant(&r.gram_basic) > Rat::zero());
        }
    }

    #[test]
    fn cartan_matrix_recovered_from_pairings() {
        // <alpha_i, alpha_j^vee> must be the Cartan matrix; check
        // the defining properties instead of hardcoding each family.
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let r = rs(f, n);
            for i in 0..n {
                for j in 0..n {
                    let c = r.basic(&r.simple_roots[i].clone(), &r.coroot(&r.simple_roots[j].clone()));
                    let c = linalg::to_integer(&c).expect("Cartan entries are integers");
                    if i == j {
                        assert_eq!(c, BigInt::from(2));
                    } else {
                        assert!(c <= BigInt::zero() && c >= BigInt::from(-3));
                    }
                }
                // fundamental weights are dual to simple coroots
                for j in 0..n {
                    let p = r.basic(
                        &r.fundamental_weights[i].clone(),
                        &r.coroot(&r.simple_roots[j].clone()),
                    );
                    assert_eq!(p, if i == j { rat(1) } else { rat(0) });
                }
            }
        }
    }

    #[test]
    fn a1_fold_examples() {
        let r = rs(Family::A, 1);
        let (v, s) = r.weyl_fold(&[rat(-3)]);
        assert_eq!(v, vec![rat(3)]);
        assert_eq!(s, -1);
        let (v, s) = r.weyl_fold(&[rat(0)]);
        assert_eq!(v, vec![rat(0)]);
        assert_eq!(s, 0);
    }

    #[test]
    fn fold_word_recovers_input() {
        let r = rs(Family::A, 2);
        let input = vec![rat(-2), rat(1)];
        let amb = r.dynkin_to_ambient(&input);
        let (folded, sign, word) = r.fold_with_word(&amb);
        assert!(r.ambient_to_dynkin(&folded).iter().all(|c| *c >= Rat::zero()));
        assert_eq!(sign, if word.len() % 2 == 0 { 1 } else { -1 });
        let mut x = folded;
        for &i in &word {
            x = r.reflect(&x, &r.simple_roots[i].clone());
        }
        assert_eq!(x, amb);
    }

    #[test]
    fn orbit_sizes() {
        let r1 = rs(Family::A, 1);
        assert_eq!(r1.weyl_orbit(&Weight(vec![2])).len(), 2);
        let r2 = rs(Family::A, 2);
        assert_eq!(r2.weyl_orbit(&Weight(vec![0, 0])).len(), 1);
        assert_eq!(r2.weyl_orbit(&Weight(vec![1, 1])).len(), 6);
        // orbit size divides |W|
        for w in [Weight(vec![1, 0]), Weight(vec![2, 1]), Weight(vec![0, 3])] {
            let len = r2.weyl_orbit(&w).len() as u128;
            assert_eq!(r2.weyl_order() % len, 0);
        }
    }

    #[test]
    fn level_weights_enumeration() {
        let r1 = rs(Family::A, 1);
        assert_eq!(
            r1.level_weights(2),
            vec![Weight(vec![0]), Weight(vec![1]), Weight(vec![2])]
        );
        for h in 0..=10 {
            assert_eq!(r1.level_weights(h).len() as u64, h + 1);
        }
        let r2 = rs(Family::A, 2);
        assert_eq!(
            r2.level_weights(1),
            vec![Weight(vec![0, 0]), Weight(vec![0, 1]), Weight(vec![1, 0])]
        );
        assert_eq!(r2.level_weights(0), vec![Weight(vec![0, 0])]);
    }

    #[test]
    fn d3_is_a3_in_disguise() {
        let d3 = rs(Family::D, 3);
        let a3 = rs(Family::A, 3);
        assert_eq!(d3.positive_roots.len(), a3.positive_roots.len());
        assert_eq!(d3.dual_coxeter, a3.dual_coxeter);
        assert_eq!(d3.weyl_order(), a3.weyl_order());
    }

    #[test]
    fn rejects_unsupported_ranks() {
        assert!(RootSystem::build(Family::B, 1).is_err());
        assert!(RootSystem::build(Family::C, 1).is_err());
        assert!(RootSystem::build(Family::D, 2).is_err());
        assert!(RootSystem::build(Family::A, 0).is_err());
    }

    #[test]
    fn json_roundtrips_rationals_as_strings() {
        let r = rs(Family::B, 2);
        let v = r.to_json();
        assert_eq!(v["family"], "B");
        assert_eq!(v["rank"], 2);
        let fw = v["fundamental_weights"].as_array().unwrap();
        assert_eq!(fw[1][0], "1/2");
    }
}
