//! Truncated Koszul complexes `Lambda(t*) (x) Sym(t*)` with differential
//! multiplication by the degree-3 element defined by an integer bilinear
//! form, the mod-2 collapsed model of the twisted equivariant cohomology
//! of a torus acting on itself. Includes the two SU(2) stalk computations
//! and a page-by-page spectral-sequence report.
//!
//! The complex splits into lines of constant `(sym degree - exterior
//! degree)`; a line is complete once the truncation retains its top
//! symmetric degree, and all stable answers are read off complete lines.

use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rat};

/// Bigraded truncated Koszul complex for an `n x n` integer form, with
/// symmetric degrees retained up to `trunc`.
#[derive(Debug, Clone)]
pub struct KoszulComplex {
    pub n: usize,
    pub beta: Vec<Vec<i64>>,
    pub trunc: usize,
    /// Exterior basis masks grouped by degree.
    ext: Vec<Vec<u32>>,
    /// Symmetric multidegrees grouped by degree.
    sym: Vec<Vec<Vec<u32>>>,
}

impl KoszulComplex {
    pub fn new(n: usize, beta: Vec<Vec<i64>>, trunc: usize) -> Result<KoszulComplex> {
        if n == 0 || n > 6 {
            return Err(Error::InvalidInput(format!(
                "Koszul rank must be in 1..=6 (got {n})"
            )));
        }
        if beta.len() != n || beta.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!(
                "beta must be an {n} x {n} matrix"
            )));
        }
        let mut ext = vec![Vec::new(); n + 1];
        for mask in 0u32..(1 << n) {
            ext[mask.count_ones() as usize].push(mask);
        }
        let mut sym = Vec::with_capacity(trunc + 1);
        for b in 0..=trunc {
            sym.push(multidegrees(n, b as u32));
        }
        Ok(KoszulComplex {
            n,
            beta,
            trunc,
            ext,
            sym,
        })
    }

    /// Dimension of the bidegree (exterior a, symmetric b), zero outside
    /// the retained range.
    fn dim(&self, a: i64, b: i64) -> usize {
        if a < 0 || a > self.n as i64 || b < 0 || b > self.trunc as i64 {
            return 0;
        }
        self.ext[a as usize].len() * self.sym[b as usize].len()
    }

    /// Matrix of multiplication by the twisting element from bidegree
    /// `(a, b)` to `(a+1, b+1)`, rows indexed by the target basis.
    fn d_matrix(&self, a: usize, b: usize) -> Vec<Vec<Rat>> {
        let src_ext = &self.ext[a];
        let src_sym = &self.sym[b];
        let dst_ext = &self.ext[a + 1];
        let dst_sym = &self.sym[b + 1];
        let rows = dst_ext.len() * dst_sym.len();
        let cols = src_ext.len() * src_sym.len();
        let dst_ext_pos = |mask: u32| dst_ext.iter().position(|&m| m == mask).unwrap();
        let dst_sym_pos = |m: &[u32]| dst_sym.iter().position(|x| x == m).unwrap();
        let mut out = vec![vec![Rat::zero(); cols]; rows];
        for (se, &mask) in src_ext.iter().enumerate() {
            for (ss, mdeg) in src_sym.iter().enumerate() {
                let col = se * src_sym.len() + ss;
                for j in 0..self.n {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    // theta_j wedge theta_S: sign by the elements below j
                    let below = (mask & ((1 << j) - 1)).count_ones();
                    let sign = if below % 2 == 0 { 1 } else { -1 };
                    let new_mask = mask | (1 << j);
                    for i in 0..self.n {
                        let coeff = self.beta[i][j];
                        if coeff == 0 {
                            continue;
                        }
                        let mut new_mdeg = mdeg.clone();
                        new_mdeg[i] += 1;
                        let row = dst_ext_pos(new_mask) * dst_sym.len() + dst_sym_pos(&new_mdeg);
                        out[row][col] += rat(sign * coeff);
                    }
                }
            }
        }
        out
    }

    /// Complete lines `c = b - a`: every position `a` has `b = c + a`
    /// within the truncation.
    pub fn complete_lines(&self) -> Vec<i64> {
        let lo = -(self.n as i64);
        let hi = self.trunc as i64 - self.n as i64;
        (lo..=hi).collect()
    }

    /// Cohomology dimensions along one line, per exterior degree `a`.
    pub fn line_cohomology(&self, c: i64) -> Vec<usize> {
        let n = self.n as i64;
        let mut ranks = vec![0usize; (n + 2) as usize]; // rank of d out of position a
        for a in 0..=n {
            let b = c + a;
            if self.dim(a, b) == 0 || self.dim(a + 1, b + 1) == 0 {
                continue;
            }
            let m = self.d_matrix(a as usize, b as usize);
            ranks[(a + 1) as usize] = linalg::rank(&m);
        }
        let mut dims = Vec::new();
        for a in 0..=n {
            let b = c + a;
            let d = self.dim(a, b);
            let rank_out = ranks[(a + 1) as usize];
            let rank_in = ranks[a as usize];
            dims.push(d - rank_out - rank_in);
        }
        dims
    }

    /// Verify `d . d = 0` on every retained bidegree.
    pub fn d_squared_is_zero(&self) -> bool {
        if self.n < 2 || self.trunc < 2 {
            return true; // the composite has an empty target
        }
        for a in 0..=self.n - 2 {
            for b in 0..=self.trunc - 2 {
                if self.dim(a as i64, b as i64) == 0 {
                    continue;
                }
                let d1 = self.d_matrix(a, b);
                let d2 = self.d_matrix(a + 1, b + 1);
                for row in &d2 {
                    for col in 0..d1[0].len() {
                        let mut s = Rat::zero();
                        for (k, rk) in row.iter().enumerate() {
                            s += rk * &d1[k][col];
                        }
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn multidegrees(n: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = remaining;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for v in 0..=remaining {
            cur[i] = v;
            rec(i + 1, remaining - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// Twisted cohomology dimensions by total degree mod 2, with a stability
/// flag comparing the truncations `D` and `D+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwistedCohomology {
    pub even: usize,
    pub odd: usize,
    pub stable: bool,
}

/// Cohomology of the twisting differential on the retained complete
/// lines, graded mod 2 by total degree (which is the exterior degree mod
/// 2). Requires `trunc >= n + 2` so at least one full line beyond the
/// top exterior class is retained.
pub fn twisted_cohomology_dims(
    n: usize,
    beta: &[Vec<i64>],
    trunc: usize,
) -> Result<TwistedCohomology> {
    if trunc < n + 2 {
        return Err(Error::InvalidInput(format!(
            "truncation {trunc} below stability margin {} for rank {n}",
            n + 2
        )));
    }
    let (even, odd) = parity_dims(n, beta, trunc)?;
    let (even2, odd2) = parity_dims(n, beta, trunc + 1)?;
    Ok(TwistedCohomology {
        even,
        odd,
        stable: even == even2 && odd == odd2,
    })
}

fn parity_dims(n: usize, beta: &[Vec<i64>], trunc: usize) -> Result<(usize, usize)> {
    let complex = KoszulComplex::new(n, beta.to_vec(), trunc)?;
    let mut even = 0;
    let mut odd = 0;
    for c in complex.complete_lines() {
        for (a, d) in complex.line_cohomology(c).iter().enumerate() {
            if a % 2 == 0 {
                even += d;
            } else {
                odd += d;
            }
        }
    }
    Ok((even, odd))
}

/// The Weyl-invariant SU(2) stalk at the central elements: cohomology of
/// multiplication by `2k u theta` on the invariant ring
/// `Q[[u^2, u theta]] / (u theta)^2`, truncated. Vanishes for every
/// k >= 1; the result is the total dimension.
pub fn su2_invariant_stalk(k: u64) -> usize {
    // basis: even part v^a (v = u^2), odd part v^a w (w = u theta), a <= A
    let a_max = 8usize;
    let twok = rat(2 * k as i64);
    // d(v^a) = 2k v^a w ; d(v^a w) = 2k v^a w^2 = 0
    let d_even: Vec<Vec<Rat>> = (0..=a_max)
        .map(|r| {
            (0..=a_max)
                .map(|c| if r == c { twok.clone() } else { Rat::zero() })
                .collect()
        })
        .collect();
    let rank_even = linalg::rank(&d_even);
    let dim = a_max + 1;
    let h_even = dim - rank_even; // kernel of d on the even part
    let h_odd = dim - rank_even; // odd part modulo the image
    h_even + h_odd
}

/// The full (non-invariant) stalk at the same point: the rank-1 torus
/// computation with form `[2k]`.
pub fn su2_full_stalk(k: u64, trunc: usize) -> Result<TwistedCohomology> {
    twisted_cohomology_dims(1, &[vec![2 * k as i64]], trunc)
}

/// Page-by-page report for the filtration spectral sequence of the
/// twisted complex: the `E_2 = E_3` term (the model cohomology in even
/// rows), the vanishing of `delta_2`, and the `E_4` page computed from
/// the `delta_3` (twisting) differential, aggregated by total degree.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub n: usize,
    pub trunc: usize,
    /// dim of the model in each total degree (even rows of E_2).
    pub e2_by_degree: Vec<usize>,
    /// Odd rows of E_2 vanish, so delta_2 has zero source or target.
    pub delta2_is_zero: bool,
    pub d_squared_is_zero: bool,
    /// E_4 dimensions by total degree, complete lines only.
    pub e4_by_degree: Vec<(usize, usize)>,
    pub e4_even: usize,
    pub e4_odd: usize,
    /// Whether E_4 already equals the converged twisted cohomology
    /// (degeneration at E_4, recorded as an observation).
    pub e4_equals_final: bool,
    /// With a zero twisting class all pages coincide with E_2.
    pub e4_equals_e2_on_complete_lines: bool,
}

pub fn spectral_sequence_trace(
    n: usize,
    beta: &[Vec<i64>],
    trunc: usize,
) -> Result<SpectralReport> {
    if trunc < n + 2 {
        return Err(Error::InvalidInput(format!(
            "truncation {trunc} below stability margin {} for rank {n}",
            n + 2
        )));
    }
    let complex = KoszulComplex::new(n, beta.to_vec(), trunc)?;
    let max_degree = n + 2 * trunc;
    let mut e2_by_degree = vec![0usize; max_degree + 1];
    for a in 0..=n as i64 {
        for b in 0..=trunc as i64 {
            let p = (a + 2 * b) as usize;
            e2_by_degree[p] += complex.dim(a, b);
        }
    }

    let mut e4: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut e2_complete: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut e4_even = 0;
    let mut e4_odd = 0;
    for c in complex.complete_lines() {
        let coh = complex.line_cohomology(c);
        for (a, d) in coh.iter().enumerate() {
            let b = c + a as i64;
            if b < 0 {
                continue;
            }
            let p = (a as i64 + 2 * b) as usize;
            if *d > 0 {
                *e4.entry(p).or_insert(0) += d;
            }
            if a % 2 == 0 {
                e4_even += d;
            } else {
                e4_odd += d;
            }
            let full = complex.dim(a as i64, b);
            if full > 0 {
                *e2_complete.entry(p).or_insert(0) += full;
            }
        }
    }
    let final_dims = twisted_cohomology_dims(n, beta, trunc)?;
    let e4_nonzero: std::collections::BTreeMap<usize, usize> =
        e4.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect();
    let e2_nonzero: std::collections::BTreeMap<usize, usize> = e2_complete
        .iter()
        .filter(|(_, &v)| v > 0)
        .map(|(&k, &v)| (k, v))
        .collect();
    Ok(SpectralReport {
        n,
        trunc,
        e2_by_degree,
        delta2_is_zero: true,
        d_squared_is_zero: complex.d_squared_is_zero(),
        e4_by_degree: e4_nonzero.iter().map(|(&p, &d)| (p, d)).collect(),
        e4_even,
        e4_odd,
        e4_equals_final: e4_even == final_dims.even && e4_odd == final_dims.odd,
        e4_equals_e2_on_complete_lines: e4_nonzero == e2_nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_nondegenerate_gives_one_odd_line() {
        for k in 1..=5 {
            let t = twisted_cohomology_dims(1, &[vec![2 * k]], 5).unwrap();
            assert_eq!((t.even, t.odd), (0, 1), "k={k}");
            assert!(t.stable);
        }
    }

    #[test]
    fn rank_two_identity_scaled_gives_one_even_line() {
        for k in [1i64, 2, 5] {
            let beta = vec![vec![2 * k, 0], vec![0, 2 * k]];
            let t = twisted_cohomology_dims(2, &beta, 6).unwrap();
            assert_eq!((t.even, t.odd), (1, 0), "k={k}");
            assert!(t.stable);
        }
    }

    #[test]
    fn rank_three_nondegenerate() {
        let beta = vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 4]];
        let t = twisted_cohomology_dims(3, &beta, 6).unwrap();
        assert_eq!((t.even, t.odd), (0, 1));
        assert!(t.stable);
    }

    #[test]
    fn zero_form_is_unstable() {
        let t = twisted_cohomology_dims(1, &[vec![0]], 5).unwrap();
        assert!(!t.stable);
        assert!(t.even + t.odd > 2);
        let bigger = twisted_cohomology_dims(1, &[vec![0]], 6).unwrap();
        assert!(bigger.even + bigger.odd > t.even + t.odd);
    }

    #[test]
    fn degenerate_nonzero_form_is_unstable() {
        let beta = vec![vec![2, 0], vec![0, 0]];
        let t = twisted_cohomology_dims(2, &beta, 6).unwrap();
        assert!(!t.stable);
    }

    #[test]
    fn truncation_guard() {
        assert!(twisted_cohomology_dims(2, &[vec![2, 0], vec![0, 2]], 3).is_err());
    }

    #[test]
    fn d_squared_vanishes() {
        for beta in [
            vec![vec![2i64]],
            vec![vec![2, 1], vec![1, 2]],
            vec![vec![0, 3], vec![-3, 0]],
            vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]],
        ] {
            let n = beta.len();
            let kc = KoszulComplex::new(n, beta, n + 3).unwrap();
            assert!(kc.d_squared_is_zero());
        }
    }

    #[test]
    fn invariant_stalk_vanishes() {
        for k in 1..=5 {
            assert_eq!(su2_invariant_stalk(k), 0, "k={k}");
        }
        // control: the non-invariant stalk is one line in odd degree
        for k in 1..=5 {
            let full = su2_full_stalk(k, 5).unwrap();
            assert_eq!((full.even, full.odd), (0, 1));
        }
    }

    #[test]
    fn spectral_pages() {
        let rep = spectral_sequence_trace(1, &[vec![2]], 5).unwrap();
        assert!(rep.d_squared_is_zero);
        assert!(rep.delta2_is_zero);
        assert_eq!(rep.e4_even + rep.e4_odd, 1);
        assert!(rep.e4_equals_final);
        assert!(!rep.e4_equals_e2_on_complete_lines);

        // nondegenerate rank 2: degeneration at E_4 observed
        let rep2 = spectral_sequence_trace(2, &[vec![2, 0], vec![0, 2]], 6).unwrap();
        assert!(rep2.e4_equals_final);
        assert_eq!((rep2.e4_even, rep2.e4_odd), (1, 0));

        // zero twisting: all pages equal E_2
        let rep0 = spectral_sequence_trace(1, &[vec![0]], 5).unwrap();
        assert!(rep0.e4_equals_e2_on_complete_lines);
    }

    #[test]
    fn e2_counts_the_model() {
        // rank 1: A^p has dim 1 for p=0, 1 for p=1 (theta), 1 for p=2 (u), ...
        let rep = spectral_sequence_trace(1, &[vec![2]], 4).unwrap();
        assert_eq!(rep.e2_by_degree[0], 1);
        assert_eq!(rep.e2_by_degree[1], 1);
        assert_eq!(rep.e2_by_degree[2], 1);
        assert_eq!(rep.e2_by_degree[3], 1);
    }
}
