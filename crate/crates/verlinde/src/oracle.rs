//! Independent, slower verification paths: brute-force enumeration of the
//! finite support group `F`, Clebsch–Gordan fusion for A1, the
//! fusion-matrix route to the genus dimensions, and float cross-checks.
//!
//! Nothing in the core computation path calls into this module; it backs
//! the test suite and the CLI `verify` command.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::cyclotomic::rat_to_f64;
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, LevelData};
use crate::linalg::{self, rat, Rat};
use crate::root_system::{Family, RootSystem, Weight};

/// Result of enumerating `F` directly on the torus.
#[derive(Debug, Clone)]
pub struct LatticeScanResult {
    /// Group elements as coroot-basis coordinate vectors in `[0,1)^rank`.
    pub points: Vec<Vec<Rat>>,
    pub regular_count: usize,
    pub orbit_count: usize,
}

/// Enumerate `F = ker(lambda)` for the shifted level: all `xi` (mod the
/// coroot lattice) with `(h+c) * gram * xi` integral. Iterates the finite
/// abelian group generated by the columns of the inverse scaled Gram
/// matrix rather than scanning a grid.
pub fn scan_f(ld: &LevelData) -> Result<LatticeScanResult> {
    let n = ld.rs.rank;
    if n > 3 {
        return Err(Error::Refused(format!(
            "lattice scan limited to rank <= 3 (got {n})"
        )));
    }
    let ginv = linalg::inverse(&ld.rs.gram_basic)
        .ok_or_else(|| Error::Inconsistency("Gram matrix singular".into()))?;
    let shift = rat(ld.shift as i64);
    let generators: Vec<Vec<Rat>> = (0..n)
        .map(|j| (0..n).map(|i| linalg::frac(&(&ginv[i][j] / &shift))).collect())
        .collect();

    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut stack = vec![vec![Rat::zero(); n]];
    while let Some(x) = stack.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        for g in &generators {
            let y: Vec<Rat> = x
                .iter()
                .zip(g)
                .map(|(a, b)| linalg::frac(&(a + b)))
                .collect();
            if !seen.contains(&y) {
                stack.push(y);
            }
        }
    }

    let points: Vec<Vec<Rat>> = seen.into_iter().collect();
    let mut regular_count = 0;
    for t in &points {
        let xi = coroot_coords_to_ambient(&ld.rs, t);
        if ld.is_regular(&xi) {
            regular_count += 1;
        }
    }
    let w = ld.rs.weyl_order();
    if regular_count as u128 % w != 0 {
        return Err(Error::Inconsistency(format!(
            "regular count {regular_count} not divisible by |W| = {w}"
        )));
    }
    let orbit_count = (regular_count as u128 / w) as usize;
    Ok(LatticeScanResult {
        points,
        regular_count,
        orbit_count,
    })
}

/// Convert coroot-basis coordinates to an ambient vector.
pub fn coroot_coords_to_ambient(rs: &RootSystem, t: &[Rat]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); rs.ambient_dim];
    for (ti, alpha) in t.iter().zip(&rs.simple_roots) {
        let co = rs.coroot(alpha);
        for (vi, ci) in v.iter_mut().zip(&co) {
            *vi += ti * ci;
        }
    }
    v
}

/// Fold a regular torus point into the interior of the fundamental alcove
/// using the affine Weyl group (simple reflections plus the affine
/// reflection at the highest-root wall).
pub fn fold_to_alcove(rs: &RootSystem, xi: &[Rat]) -> Result<Vec<Rat>> {
    let theta = rs.highest_root.clone();
    let theta_co = rs.coroot(&theta);
    let mut x = xi.to_vec();
    for _ in 0..100_000 {
        let mut moved = false;
        for i in 0..rs.rank {
            if rs.basic(&rs.simple_roots[i].clone(), &x) < Rat::zero() {
                x = rs.reflect(&x, &rs.simple_roots[i].clone());
                moved = true;
            }
        }
        if !moved && rs.basic(&theta, &x) > Rat::one() {
            // reflect in the wall <theta, .> = 1
            x = linalg::vec_add(&rs.reflect(&x, &theta), &theta_co);
            moved = true;
        }
        if !moved {
            return Ok(x);
        }
    }
    Err(Error::Inconsistency("alcove fold did not terminate".into()))
}

/// The distinct alcove representatives of the regular scan points.
pub fn scan_alcove_representatives(ld: &LevelData) -> Result<Vec<Vec<Rat>>> {
    let scan = scan_f(ld)?;
    let mut reps: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for t in &scan.points {
        let xi = coroot_coords_to_ambient(&ld.rs, t);
        if ld.is_regular(&xi) {
            reps.insert(fold_to_alcove(&ld.rs, &xi)?);
        }
    }
    Ok(reps.into_iter().collect())
}

/// Textbook level-h A1 fusion: `N_ab^c = 1` iff `|a-b| <= c <= min(a+b,
/// 2h-a-b)` and `a+b+c` is even.
pub fn cg_fusion_a1(h: u64) -> FusionRing {
    let n = (h + 1) as usize;
    let basis: Vec<Weight> = (0..n).map(|a| Weight(vec![a as i64])).collect();
    let mut constants = vec![vec![vec![0i64; n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ai, bi, ci) = (a as i64, b as i64, c as i64);
                let lower = (ai - bi).abs();
                let upper = (ai + bi).min(2 * h as i64 - ai - bi);
                if lower <= ci && ci <= upper && (ai + bi + ci) % 2 == 0 {
                    constants[a][b][c] = 1;
                }
            }
        }
    }
    FusionRing {
        family: Family::A,
        rank: 1,
        level: h,
        basis,
        constants,
        unit: 0,
    }
}

/// Genus-g dimension from the fusion matrices alone: the vacuum entry of
/// the handle operator `(sum_a N_a N_a^T)^g`.
pub fn genus_dim_from_fusion(ring: &FusionRing, genus: u64) -> Result<BigInt> {
    if genus < 1 {
        return Err(Error::InvalidInput("genus must be >= 1".into()));
    }
    let n = ring.size();
    let mut handle = vec![vec![BigInt::zero(); n]; n];
    for a in 0..n {
        let na = &ring.constants[a];
        for i in 0..n {
            for j in 0..n {
                // (N_a N_a^T)_{ij} = sum_k N_a[i][k] N_a[j][k]
                let mut t = BigInt::zero();
                for k in 0..n {
                    t += BigInt::from(na[i][k]) * BigInt::from(na[j][k]);
                }
                handle[i][j] += t;
            }
        }
    }
    // handle^genus, then the vacuum entry
    let mut acc: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    for _ in 0..genus {
        acc = mat_mul_big(&acc, &handle);
    }
    Ok(acc[ring.unit][ring.unit].clone())
}

fn mat_mul_big(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Floating-point cross-check of the genus dimension.
#[derive(Debug, Clone)]
pub struct FloatReport {
    pub exact: BigInt,
    pub float: f64,
    pub rel_error: f64,
    pub ok: bool,
}

pub fn float_crosscheck(ld: &LevelData, genus: u64) -> Result<FloatReport> {
    let exact = ld.verlinde_dimension(genus)?;
    let f_order = ld.f_order();
    let f = bigint_f64(&f_order);
    let mut sum = 0.0f64;
    for p in ld.regular_points() {
        let mut d2 = 1.0f64;
        for alpha in &ld.rs.positive_roots {
            let x = rat_to_f64(&ld.rs.basic(alpha, &p.xi));
            let s = (std::f64::consts::PI * x).sin();
            d2 *= 4.0 * s * s;
        }
        sum += d2.powi(1 - genus as i32);
    }
    let float = f.powi(genus as i32 - 1) * sum;
    let ex = bigint_f64(&exact);
    let rel_error = if ex == 0.0 {
        float.abs()
    } else {
        ((float - ex) / ex).abs()
    };
    Ok(FloatReport {
        exact,
        float,
        rel_error,
        ok: rel_error < 1e-6,
    })
}

fn bigint_f64(b: &BigInt) -> f64 {
    b.to_string().parse().unwrap_or(f64::NAN)
}

/// Test-side enumeration of the full Weyl group as ambient matrices.
/// Guarded to small rank; the core never does this.
pub fn enumerate_weyl(rs: &RootSystem) -> Result<Vec<Vec<Vec<Rat>>>> {
    if rs.rank > 4 {
        return Err(Error::Refused(format!(
            "Weyl enumeration limited to rank <= 4 (got {})",
            rs.rank
        )));
    }
    let dim = rs.ambient_dim;
    let identity: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    let reflections: Vec<Vec<Vec<Rat>>> = (0..rs.rank)
        .map(|i| {
            (0..dim)
                .map(|r| {
                    let mut row = vec![Rat::zero(); dim];
                    row[r] = Rat::one();
                    rs.reflect(&row, &rs.simple_roots[i].clone())
                })
                .collect()
        })
        .collect();
    // note: rows of the matrix are images of basis vectors; composition is
    // matrix product with rows-as-images convention
    let mut seen: BTreeSet<Vec<Vec<Rat>>> = BTreeSet::new();
    let mut stack = vec![identity];
    while let Some(m) = stack.pop() {
        if !seen.insert(m.clone()) {
            continue;
        }
        for s in &reflections {
            let prod: Vec<Vec<Rat>> = m
                .iter()
                .map(|row| {
                    // image of row under reflection s
                    (0..dim)
                        .map(|j| (0..dim).map(|k| &row[k] * &s[k][j]).sum())
                        .collect()
                })
                .collect();
            if !seen.contains(&prod) {
                stack.push(prod);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::LevelData;

    fn level(f: Family, rank: usize, h: u64) -> LevelData {
        LevelData::build(f, rank, h).unwrap()
    }

    #[test]
    fn scan_counts_a1() {
        // h=1: |F| = 6, four regular points forming two Weyl orbit pairs
        let ld = level(Family::A, 1, 1);
        let scan = scan_f(&ld).unwrap();
        assert_eq!(scan.points.len(), 6);
        assert_eq!(scan.regular_count, 4);
        assert_eq!(scan.orbit_count, 2);
        // h=0: 4 points, 2 regular, 1 orbit
        let ld0 = level(Family::A, 1, 0);
        let scan0 = scan_f(&ld0).unwrap();
        assert_eq!(scan0.points.len(), 4);
        assert_eq!(scan0.regular_count, 2);
        assert_eq!(scan0.orbit_count, 1);
    }

    #[test]
    fn scan_counts_a2_h0() {
        let ld = level(Family::A, 2, 0);
        let scan = scan_f(&ld).unwrap();
        assert_eq!(scan.points.len(), 27);
        assert_eq!(scan.regular_count, 6);
        assert_eq!(scan.orbit_count, 1);
    }

    #[test]
    fn scan_count_matches_determinant() {
        for (f, n, hmax) in [(Family::A, 1, 6), (Family::A, 2, 3), (Family::B, 2, 2)] {
            for h in 0..=hmax {
                let ld = level(f, n, h);
                let scan = scan_f(&ld).unwrap();
                assert_eq!(
                    BigInt::from(scan.points.len()),
                    ld.f_order(),
                    "{f}{n} h={h}"
                );
                assert_eq!(scan.orbit_count, ld.rs.level_weights(h).len());
            }
        }
    }

    #[test]
    fn scan_representatives_match_regular_points() {
        for (f, n, h) in [(Family::A, 1, 3), (Family::A, 2, 1), (Family::B, 2, 1)] {
            let ld = level(f, n, h);
            let reps = scan_alcove_representatives(&ld).unwrap();
            let expected: BTreeSet<Vec<Rat>> =
                ld.regular_points().into_iter().map(|p| p.xi).collect();
            let got: BTreeSet<Vec<Rat>> = reps.into_iter().collect();
            assert_eq!(got, expected, "{f}{n} h={h}");
        }
    }

    #[test]
    fn scan_refuses_large_rank() {
        let ld = level(Family::D, 4, 0);
        assert!(matches!(scan_f(&ld), Err(Error::Refused(_))));
    }

    #[test]
    fn cg_fusion_small() {
        let r1 = cg_fusion_a1(1);
        assert_eq!(r1.constants[1][1][0], 1);
        assert_eq!(r1.constants[1][1][1], 0);
        let r2 = cg_fusion_a1(2);
        assert_eq!(r2.constants[1][1][0], 1);
        assert_eq!(r2.constants[1][1][2], 1);
        assert_eq!(r2.constants[2][2][0], 1);
        assert_eq!(r2.constants[2][2][2], 0);
        for h in 0..=8 {
            let r = cg_fusion_a1(h);
            assert!(r.is_associative(), "h={h}");
            assert!(r.is_commutative());
            assert!(r.unit_law_holds());
        }
    }

    #[test]
    fn genus_dims_from_matrices() {
        assert_eq!(
            genus_dim_from_fusion(&cg_fusion_a1(1), 2).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            genus_dim_from_fusion(&cg_fusion_a1(2), 2).unwrap(),
            BigInt::from(10)
        );
        for h in 0..=5 {
            let ring = cg_fusion_a1(h);
            assert_eq!(
                genus_dim_from_fusion(&ring, 1).unwrap(),
                BigInt::from(ring.size())
            );
        }
    }

    #[test]
    fn float_crosscheck_cases() {
        for (f, n, h, g) in [
            (Family::A, 1, 3, 3),
            (Family::A, 2, 2, 2),
            (Family::A, 1, 5, 1),
        ] {
            let ld = level(f, n, h);
            let rep = float_crosscheck(&ld, g).unwrap();
            assert!(rep.ok, "{f}{n} h={h} g={g}: rel {}", rep.rel_error);
        }
    }

    #[test]
    fn weyl_enumeration_orders() {
        for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::A, 3)] {
            let rs = RootSystem::build(f, n).unwrap();
            let w = enumerate_weyl(&rs).unwrap();
            assert_eq!(w.len() as u128, rs.weyl_order(), "{f}{n}");
        }
    }
}
