//! The SO(3) worked example: the eight twisting types `(eps1, eps2, k)`,
//! the K-group table, the quotient rings `R(k)` of the SU(2)
//! representation ring, the graded Verlinde ring with split classes
//! `[k]+`, `[k]-`, and the localisation support used to cross-check ranks.
//!
//! Class labels follow the dimension convention: `[p]` is the image of the
//! irreducible p-dimensional SU(2) representation, odd `p` descending to
//! SO(3). `R(k)` is the quotient by the ideal on the 2k-dimensional
//! irreducible; the further identification is `[p] ~ eps1 [2k-p]`, with
//! `[k] = 0` forced when eps1 = -.

use std::fmt;

use num::integer::gcd;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "+" | "plus" | "Plus" => Some(Sign::Plus),
            "-" | "minus" | "Minus" => Some(Sign::Minus),
            _ => None,
        }
    }

    fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Sign::Plus { "+" } else { "-" })
    }
}

/// A twisting class inclusive of the grading, ordered `(H^1, H^3_tors,
/// H^3_free)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistingType {
    pub eps1: Sign,
    pub eps2: Sign,
    pub k: u64,
}

impl fmt::Display for TwistingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.eps1, self.eps2, self.k)
    }
}

/// Additive description of one K-group in the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KGroup {
    Zero,
    Z,
    /// `^{e1,e2}R(k)`, optionally with an extra free summand.
    R {
        eps1: Sign,
        eps2: Sign,
        extra_z: bool,
    },
}

impl KGroup {
    /// Free rank of the group for the given k.
    pub fn rank(&self, k: u64) -> u64 {
        match self {
            KGroup::Zero => 0,
            KGroup::Z => 1,
            KGroup::R { eps1, eps2, extra_z } => {
                rk_rank(*eps1, *eps2, k) + u64::from(*extra_z)
            }
        }
    }

    pub fn label(&self, k: u64) -> String {
        match self {
            KGroup::Zero => "0".into(),
            KGroup::Z => "Z".into(),
            KGroup::R { eps1, eps2, extra_z } => {
                let base = format!("^{{{}{}}}R({k})", eps1, eps2);
                if *extra_z {
                    format!("{base} (+) Z")
                } else {
                    base
                }
            }
        }
    }
}

/// Rank of the quotient `^{eps1,eps2}R(k)`: surviving classes in `1..=k`
/// of the parity selected by eps2 (odd for +, even for -), with `[k]`
/// killed when eps1 = -.
pub fn rk_rank(eps1: Sign, eps2: Sign, k: u64) -> u64 {
    let want_odd = eps2 == Sign::Plus;
    (1..=k)
        .filter(|&m| (m % 2 == 1) == want_odd)
        .filter(|&m| !(m == k && eps1 == Sign::Minus))
        .count() as u64
}

/// One row of the K-group table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTableEntry {
    pub k0: KGroup,
    pub k1: KGroup,
    /// Whether this twisting carries a natural Pontryagin product.
    pub starred: bool,
}

/// The K-group table for SO(3) acting on itself, by twisting type.
pub fn k_table(t: &TwistingType) -> KTableEntry {
    use KGroup::*;
    use Sign::*;
    let r = |e1: Sign, e2: Sign, z: bool| R {
        eps1: e1,
        eps2: e2,
        extra_z: z,
    };
    let even = t.k % 2 == 0;
    match (t.eps1, t.eps2, even) {
        (Plus, Plus, true) => KTableEntry { k0: Z, k1: r(Minus, Minus, false), starred: false },
        (Minus, Plus, true) => KTableEntry { k0: Zero, k1: r(Plus, Minus, true), starred: false },
        (Plus, Minus, true) => KTableEntry { k0: Zero, k1: r(Minus, Plus, false), starred: true },
        (Minus, Minus, true) => KTableEntry { k0: Zero, k1: r(Plus, Plus, false), starred: false },
        (Plus, Plus, false) => KTableEntry { k0: Zero, k1: r(Minus, Minus, false), starred: false },
        (Minus, Plus, false) => KTableEntry { k0: Zero, k1: r(Plus, Minus, false), starred: false },
        (Plus, Minus, false) => KTableEntry { k0: Z, k1: r(Minus, Plus, false), starred: false },
        (Minus, Minus, false) => KTableEntry { k0: Zero, k1: r(Plus, Plus, true), starred: true },
    }
}

/// A class `coeff * [label]` in normal form, `label` in `1..=k`; `None`
/// encodes the zero class.
pub type ReducedClass = Option<(i64, u64)>;

/// Reduce `coeff * [m]` by the R(k) rules: `[0] = [2k] = 0`, the affine
/// sign fold `[2k+j] = -[2k-j]` (period 4k), then `[p] = eps1 [2k-p]`
/// into `1..=k`, with `[k] = 0` when eps1 = -.
pub fn reduce_class(eps1: Sign, k: u64, m: i64, coeff: i64) -> ReducedClass {
    let period = 4 * k as i64;
    let mut m = m.rem_euclid(period);
    let mut c = coeff;
    if m == 0 || m == 2 * k as i64 {
        return None;
    }
    if m > 2 * k as i64 {
        m = period - m;
        c = -c;
    }
    let mut label = m as u64;
    if label > k {
        label = 2 * k - label;
        c *= eps1.as_i64();
    }
    if label == k && eps1 == Sign::Minus {
        return None;
    }
    Some((c, label))
}

/// The quotient `^{eps1,eps2}R(k)` presented on a normal-form basis.
///
/// `basis` lists the surviving labels of the eps2 parity (the summand
/// appearing in the K-group table); `ring_basis` lists all surviving
/// labels in `1..=k`, on which the multiplication tensor is defined.
/// The odd part is a subring (it contains the unit `[1]`); the even part
/// is only a module over it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientRingRk {
    pub eps1: Sign,
    pub eps2: Sign,
    pub k: u64,
    pub basis: Vec<u64>,
    pub ring_basis: Vec<u64>,
    /// `mult[a][b][c]` over `ring_basis` indices.
    pub mult: Vec<Vec<Vec<i64>>>,
}

/// Build the quotient ring for the given identification signs.
pub fn rk_ring(eps1: Sign, eps2: Sign, k: u64) -> QuotientRingRk {
    let ring_basis: Vec<u64> = (1..=k)
        .filter(|&m| !(m == k && eps1 == Sign::Minus))
        .collect();
    let want_odd = eps2 == Sign::Plus;
    let basis: Vec<u64> = ring_basis
        .iter()
        .copied()
        .filter(|&m| (m % 2 == 1) == want_odd)
        .collect();
    let n = ring_basis.len();
    let idx = |label: u64| ring_basis.iter().position(|&m| m == label).unwrap();
    let mut mult = vec![vec![vec![0i64; n]; n]; n];
    for (a, &p) in ring_basis.iter().enumerate() {
        for (b, &q) in ring_basis.iter().enumerate() {
            for (coeff, label) in product_classes(eps1, k, p, q) {
                mult[a][b][idx(label)] += coeff;
            }
        }
    }
    QuotientRingRk {
        eps1,
        eps2,
        k,
        basis,
        ring_basis,
        mult,
    }
}

/// Clebsch–Gordan product of two (arbitrary, not necessarily normal-form)
/// dimension labels, reduced to normal form.
pub fn product_classes(eps1: Sign, k: u64, p: u64, q: u64) -> Vec<(i64, u64)> {
    let (lo, hi) = (p.abs_diff(q) + 1, p + q - 1);
    let mut out = Vec::new();
    let mut m = lo;
    while m <= hi {
        if let Some(t) = reduce_class(eps1, k, m as i64, 1) {
            out.push(t);
        }
        m += 2;
    }
    out
}

impl QuotientRingRk {
    pub fn rank(&self) -> u64 {
        self.basis.len() as u64
    }

    /// Multiplication is defined on classes: reducing either factor to a
    /// different representative must not change the product.
    pub fn product_well_defined(&self) -> bool {
        for &p in &self.ring_basis {
            for &q in &self.ring_basis {
                let direct = canonical(product_classes(self.eps1, self.k, p, q));
                // replace p by its mirror representative eps1*[2k-p]
                let mirror = 2 * self.k - p;
                let mut via: Vec<(i64, u64)> = product_classes(self.eps1, self.k, mirror, q)
                    .into_iter()
                    .map(|(c, l)| (c * self.eps1.as_i64(), l))
                    .collect();
                via = canonical(via);
                if direct != via {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_associative(&self) -> bool {
        let n = self.ring_basis.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs: i64 =
                            (0..n).map(|e| self.mult[a][b][e] * self.mult[e][c][d]).sum();
                        let rhs: i64 =
                            (0..n).map(|e| self.mult[b][c][e] * self.mult[a][e][d]).sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn has_unit(&self) -> bool {
        let Some(u) = self.ring_basis.iter().position(|&m| m == 1) else {
            return false;
        };
        let n = self.ring_basis.len();
        (0..n).all(|b| (0..n).all(|c| self.mult[u][b][c] == i64::from(b == c)))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.mult.iter().flatten().flatten().all(|&x| x >= 0)
    }
}

fn canonical(mut v: Vec<(i64, u64)>) -> Vec<(i64, u64)> {
    use std::collections::BTreeMap;
    let mut acc: BTreeMap<u64, i64> = BTreeMap::new();
    for (c, l) in v.drain(..) {
        *acc.entry(l).or_insert(0) += c;
    }
    acc.into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(l, c)| (c, l))
        .collect()
}

/// Basis classes of the graded Verlinde ring for the odd starred type:
/// the odd labels `[1], [3], ..., [k-2]` and the split classes `[k]+`,
/// `[k]-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GradedClass {
    P(u64),
    KPlus,
    KMinus,
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradedClass::P(p) => write!(f, "[{p}]"),
            GradedClass::KPlus => write!(f, "[k]+"),
            GradedClass::KMinus => write!(f, "[k]-"),
        }
    }
}

/// The graded Verlinde ring of the `(-,-,odd k)` twisting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVerlindeRing {
    pub k: u64,
    pub basis: Vec<GradedClass>,
    pub mult: Vec<Vec<Vec<i64>>>,
}

/// Build the graded ring from its generator-and-relation data: odd
/// products with the fold `[n] = [2k-n]`, the `[p]*[k]_s` rule picking up
/// the sign `i^{p-1}`, and the mod-4 split of `[k]_s * [k]_t`.
pub fn graded_ring(k: u64) -> Result<GradedVerlindeRing> {
    if k % 2 == 0 || k < 3 {
        return Err(Error::InvalidInput(format!(
            "graded basis exists for odd k >= 3 (got {k})"
        )));
    }
    let mut basis: Vec<GradedClass> = (1..=k - 2).step_by(2).map(GradedClass::P).collect();
    basis.push(GradedClass::KPlus);
    basis.push(GradedClass::KMinus);
    let n = basis.len();
    let idx = |g: GradedClass| basis.iter().position(|&x| x == g).unwrap();

    // expand a single product into basis coefficients
    let expand = |x: GradedClass, y: GradedClass| -> Vec<i64> {
        let mut out = vec![0i64; n];
        let mut add = |g: GradedClass, c: i64| {
            let i = idx(g);
            out[i] += c;
        };
        match (x, y) {
            (GradedClass::P(p), GradedClass::P(q)) => {
                // Clebsch-Gordan with the positive fold; a bare [k] splits
                let (lo, hi) = (p.abs_diff(q) + 1, p + q - 1);
                let mut m = lo;
                while m <= hi {
                    let label = if m > k { 2 * k - m } else { m };
                    if label == k {
                        add(GradedClass::KPlus, 1);
                        add(GradedClass::KMinus, 1);
                    } else {
                        add(GradedClass::P(label), 1);
                    }
                    m += 2;
                }
            }
            (GradedClass::P(p), s) | (s, GradedClass::P(p)) => {
                // [p] * [k]_s = [k-p+1] + ... + [k-2] + [k]_{s i^{p-1}}
                let mut m = k - p + 1;
                while m <= k - 2 {
                    add(GradedClass::P(m), 1);
                    m += 2;
                }
                let flip = (p - 1) % 4 == 2; // i^{p-1} = -1 for p = 3 mod 4
                let target = match (s, flip) {
                    (GradedClass::KPlus, false) | (GradedClass::KMinus, true) => GradedClass::KPlus,
                    _ => GradedClass::KMinus,
                };
                add(target, 1);
            }
            (s, t) if s == t => {
                // [k]_s^2 = sum_{0 < 4p < k} [k-4p] + [k]_{s i^{k-1}}
                let mut p = 1;
                while 4 * p < k {
                    add(GradedClass::P(k - 4 * p), 1);
                    p += 1;
                }
                let flip = (k - 1) % 4 == 2;
                let target = match (s, flip) {
                    (GradedClass::KPlus, false) | (GradedClass::KMinus, true) => GradedClass::KPlus,
                    _ => GradedClass::KMinus,
                };
                add(target, 1);
            }
            _ => {
                // [k]+ [k]- = sum_{0 < 4p+2 < k} [k-4p-2]
                let mut p = 0;
                while 4 * p + 2 < k {
                    add(GradedClass::P(k - 4 * p - 2), 1);
                    p += 1;
                }
            }
        }
        out
    };

    let mut mult = vec![vec![vec![0i64; n]; n]; n];
    for (a, &x) in basis.iter().enumerate() {
        for (b, &y) in basis.iter().enumerate() {
            mult[a][b] = expand(x, y);
        }
    }
    Ok(GradedVerlindeRing { k, basis, mult })
}

impl GradedVerlindeRing {
    pub fn rank(&self) -> u64 {
        self.basis.len() as u64
    }

    /// Naive count of the basis list read as consecutive labels
    /// `[1], ..., [k-2]` plus the two split classes. The actual ring has
    /// odd-spaced labels; both numbers are reported side by side.
    pub fn naive_label_count(&self) -> u64 {
        self.k
    }

    pub fn is_associative(&self) -> bool {
        let n = self.basis.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs: i64 =
                            (0..n).map(|e| self.mult[a][b][e] * self.mult[e][c][d]).sum();
                        let rhs: i64 =
                            (0..n).map(|e| self.mult[b][c][e] * self.mult[a][e][d]).sum();
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
        let n = self.basis.len();
        (0..n).all(|a| (0..n).all(|b| self.mult[a][b] == self.mult[b][a]))
    }

    pub fn has_unit(&self) -> bool {
        let Some(u) = self.basis.iter().position(|&g| g == GradedClass::P(1)) else {
            return false;
        };
        let n = self.basis.len();
        (0..n).all(|b| (0..n).all(|c| self.mult[u][b][c] == i64::from(b == c)))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.mult.iter().flatten().flatten().all(|&x| x >= 0)
    }

    fn index(&self, g: GradedClass) -> usize {
        self.basis.iter().position(|&x| x == g).unwrap()
    }

    /// The identity `[k]+^2 + [k]+[k]- = [1] + [3] + ... + [k-2] +
    /// [k]_{i^{k-1}}`, checked on structure constants.
    pub fn b10_holds(&self) -> bool {
        let n = self.basis.len();
        let kp = self.index(GradedClass::KPlus);
        let km = self.index(GradedClass::KMinus);
        let mut lhs = vec![0i64; n];
        for c in 0..n {
            lhs[c] = self.mult[kp][kp][c] + self.mult[kp][km][c];
        }
        let mut rhs = vec![0i64; n];
        let mut m = 1;
        while m <= self.k - 2 {
            rhs[self.index(GradedClass::P(m))] += 1;
            m += 2;
        }
        let target = if (self.k - 1) % 4 == 0 {
            GradedClass::KPlus
        } else {
            GradedClass::KMinus
        };
        rhs[self.index(target)] += 1;
        lhs == rhs
    }

    /// `([k]+ + [k]-)` must multiply exactly like the unsplit class `[k]`
    /// in `^{++}R(k)`: compare against the quotient-ring product.
    pub fn split_consistent_with_unsplit(&self) -> bool {
        let kp = self.index(GradedClass::KPlus);
        let km = self.index(GradedClass::KMinus);
        // [k]^2 in the unsplit quotient ^{++}R(k)
        let unsplit = canonical(product_classes(Sign::Plus, self.k, self.k, self.k));
        // ([k]+ + [k]-)^2 in the graded ring
        let n = self.basis.len();
        let mut sq = vec![0i64; n];
        for (i, j) in [(kp, kp), (kp, km), (km, kp), (km, km)] {
            for c in 0..n {
                sq[c] += self.mult[i][j][c];
            }
        }
        // compare: graded [k]+ + [k]- counts as the class [k]
        let mut got: Vec<(i64, u64)> = Vec::new();
        for (c, &coeff) in sq.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            match self.basis[c] {
                GradedClass::P(p) => got.push((coeff, p)),
                GradedClass::KPlus | GradedClass::KMinus => got.push((coeff, self.k)),
            }
        }
        canonical(got) == unsplit
    }
}

/// Where a support line sits and which K-degree it feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupportSource {
    /// A regular point strictly inside the upper half circle.
    Interior,
    /// The torus contribution at mu = -1.
    TorusMinusOne,
    /// The odd component of the centraliser O(2) at mu = -1.
    OddComponentMinusOne,
}

/// One line of support: the point `mu = exp(2 pi i a/b)` on the unit
/// circle (a/b reduced, in (0, 1/2]), its K-degree, and its origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportPoint {
    pub turns_num: u64,
    pub turns_den: u64,
    pub degree: u8,
    pub source: SupportSource,
}

impl SupportPoint {
    fn new(num: u64, den: u64, degree: u8, source: SupportSource) -> SupportPoint {
        let g = gcd(num, den);
        SupportPoint {
            turns_num: num / g,
            turns_den: den / g,
            degree,
            source,
        }
    }

    /// Cyclotomic label `zeta_b^a` of the point.
    pub fn label(&self) -> String {
        format!("zeta_{}^{}", self.turns_den, self.turns_num)
    }

    fn source_rank(&self) -> u8 {
        match self.source {
            SupportSource::Interior => 0,
            SupportSource::TorusMinusOne => 1,
            SupportSource::OddComponentMinusOne => 2,
        }
    }
}

/// Support of the twisted K-sheaves on the SO(3) conjugacy-class line:
/// the k-th roots of eps1 in the open upper half plane (all in K^1), plus
/// the mu = -1 contributions determined by the twisting type. `mu = 1`
/// never contributes.
pub fn localisation(t: &TwistingType) -> Vec<SupportPoint> {
    use Sign::*;
    let k = t.k;
    let mut out = Vec::new();
    match t.eps1 {
        Plus => {
            // mu = e^{2 pi i j / k}, 0 < j < k/2
            let mut j = 1;
            while 2 * j < k {
                out.push(SupportPoint::new(j, k, 1, SupportSource::Interior));
                j += 1;
            }
        }
        Minus => {
            // mu = e^{pi i (2j+1)/k}, 2j+1 < k
            let mut j = 0;
            while 2 * j + 1 < k {
                out.push(SupportPoint::new(2 * j + 1, 2 * k, 1, SupportSource::Interior));
                j += 1;
            }
        }
    }
    let even = k % 2 == 0;
    // torus contribution at mu = -1
    if (t.eps1, t.eps2, even) == (Plus, Minus, true) || (t.eps1, t.eps2, even) == (Minus, Minus, false) {
        out.push(SupportPoint::new(1, 2, 1, SupportSource::TorusMinusOne));
    }
    // odd component of Z(-1) = O(2)
    match (t.eps1, t.eps2, even) {
        (Plus, Plus, true) | (Plus, Minus, false) => {
            out.push(SupportPoint::new(1, 2, 0, SupportSource::OddComponentMinusOne));
        }
        (Minus, Plus, true) | (Minus, Minus, false) => {
            out.push(SupportPoint::new(1, 2, 1, SupportSource::OddComponentMinusOne));
        }
        _ => {}
    }
    out.sort_by(|a, b| {
        (a.turns_num * b.turns_den, a.degree, a.source_rank())
            .cmp(&(b.turns_num * a.turns_den, b.degree, b.source_rank()))
    });
    out
}

/// Rank cross-check: the K-degree line counts from the localisation must
/// match the ranks of the table entry.
pub fn ranks_match(t: &TwistingType) -> bool {
    let entry = k_table(t);
    let support = localisation(t);
    let k0 = support.iter().filter(|p| p.degree == 0).count() as u64;
    let k1 = support.iter().filter(|p| p.degree == 1).count() as u64;
    k0 == entry.k0.rank(t.k) && k1 == entry.k1.rank(t.k)
}

pub fn all_twisting_types(k: u64) -> Vec<TwistingType> {
    use Sign::*;
    [(Plus, Plus), (Minus, Plus), (Plus, Minus), (Minus, Minus)]
        .into_iter()
        .map(|(eps1, eps2)| TwistingType { eps1, eps2, k })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::*;

    #[test]
    fn table_examples() {
        let e = k_table(&TwistingType { eps1: Plus, eps2: Plus, k: 4 });
        assert_eq!(e.k0, KGroup::Z);
        assert_eq!(e.k1, KGroup::R { eps1: Minus, eps2: Minus, extra_z: false });
        assert!(!e.starred);

        let e = k_table(&TwistingType { eps1: Plus, eps2: Minus, k: 5 });
        assert_eq!(e.k0, KGroup::Z);
        assert_eq!(e.k1, KGroup::R { eps1: Minus, eps2: Plus, extra_z: false });

        let e = k_table(&TwistingType { eps1: Minus, eps2: Minus, k: 5 });
        assert_eq!(e.k0, KGroup::Zero);
        assert_eq!(e.k1, KGroup::R { eps1: Plus, eps2: Plus, extra_z: true });
        assert!(e.starred);

        // exactly two starred types per k
        for k in 1..=12 {
            let starred: Vec<_> = all_twisting_types(k)
                .into_iter()
                .filter(|t| k_table(t).starred)
                .collect();
            assert_eq!(starred.len(), 1, "one starred type per parity, k={k}");
            let t = starred[0];
            if k % 2 == 0 {
                assert_eq!((t.eps1, t.eps2), (Plus, Minus));
            } else {
                assert_eq!((t.eps1, t.eps2), (Minus, Minus));
            }
        }
    }

    #[test]
    fn reduction_rules() {
        // [2k] = 0 and the affine sign fold
        assert_eq!(reduce_class(Plus, 3, 6, 1), None);
        // [7] = -[5] = -[1] for k=3, eps1=+ ([5] -> [2k-5] = [1])
        assert_eq!(reduce_class(Plus, 3, 7, 1), Some((-1, 1)));
        assert_eq!(reduce_class(Plus, 3, 5, 1), Some((1, 1)));
        assert_eq!(reduce_class(Minus, 3, 5, 1), Some((-1, 1)));
        // [k] = 0 iff eps1 = -
        assert_eq!(reduce_class(Minus, 3, 3, 1), None);
        assert_eq!(reduce_class(Plus, 3, 3, 1), Some((1, 3)));
        // period 4k
        assert_eq!(reduce_class(Plus, 3, 12 + 2, 1), Some((1, 2)));
        assert_eq!(reduce_class(Plus, 3, -1, 1), Some((-1, 1)));
    }

    #[test]
    fn rk_ring_examples() {
        // k=3, eps1=+: [2]*[2] = [1] + [3]
        let r = rk_ring(Plus, Plus, 3);
        let i2 = r.ring_basis.iter().position(|&m| m == 2).unwrap();
        let i1 = r.ring_basis.iter().position(|&m| m == 1).unwrap();
        let i3 = r.ring_basis.iter().position(|&m| m == 3).unwrap();
        assert_eq!(r.mult[i2][i2][i1], 1);
        assert_eq!(r.mult[i2][i2][i3], 1);
        // [1] is the unit
        assert!(r.has_unit());
        // eps1 = -: [k] reduces to zero
        assert_eq!(reduce_class(Minus, 4, 4, 1), None);
        for k in 1..=8 {
            for (e1, e2) in [(Plus, Plus), (Plus, Minus), (Minus, Plus), (Minus, Minus)] {
                let r = rk_ring(e1, e2, k);
                assert!(r.product_well_defined(), "k={k} {e1}{e2}");
                assert!(r.is_associative(), "k={k} {e1}{e2}");
                assert!(r.all_nonnegative(), "k={k} {e1}{e2}");
            }
        }
    }

    #[test]
    fn rk_ranks() {
        assert_eq!(rk_rank(Plus, Plus, 5), 3); // [1],[3],[5]
        assert_eq!(rk_rank(Minus, Plus, 5), 2); // [5] killed
        assert_eq!(rk_rank(Plus, Minus, 5), 2); // [2],[4]
        assert_eq!(rk_rank(Minus, Minus, 4), 1); // [2] ([4] killed)
        assert_eq!(rk_rank(Minus, Minus, 2), 0);
    }

    #[test]
    fn unit_adjacent_law() {
        // [1]*[q] = [q] in every R(k) quotient
        for k in 2..=9 {
            let r = rk_ring(Plus, Plus, k);
            let i1 = r.ring_basis.iter().position(|&m| m == 1).unwrap();
            for (b, _) in r.ring_basis.iter().enumerate() {
                for (c, _) in r.ring_basis.iter().enumerate() {
                    assert_eq!(r.mult[i1][b][c], i64::from(b == c));
                }
            }
        }
    }

    #[test]
    fn graded_ring_small_cases() {
        // k=3: [3]+^2 = [3]- (i^2 = -1), [3]+[3]- = [1]
        let g3 = graded_ring(3).unwrap();
        let kp = g3.index(GradedClass::KPlus);
        let km = g3.index(GradedClass::KMinus);
        let p1 = g3.index(GradedClass::P(1));
        assert_eq!(g3.mult[kp][kp][km], 1);
        assert_eq!(g3.mult[kp][kp][kp], 0);
        assert_eq!(g3.mult[kp][km][p1], 1);
        // k=5: [5]+^2 = [1] + [5]+ (i^4 = +1)
        let g5 = graded_ring(5).unwrap();
        let kp = g5.index(GradedClass::KPlus);
        let p1 = g5.index(GradedClass::P(1));
        assert_eq!(g5.mult[kp][kp][p1], 1);
        assert_eq!(g5.mult[kp][kp][g5.index(GradedClass::KPlus)], 1);
        assert_eq!(g5.mult[kp][kp][g5.index(GradedClass::KMinus)], 0);
        // [5]+[5]- = [3]
        assert_eq!(g5.mult[kp][g5.index(GradedClass::KMinus)][g5.index(GradedClass::P(3))], 1);
        assert!(graded_ring(4).is_err());
    }

    #[test]
    fn graded_ring_structural_checks() {
        for k in [3u64, 5, 7, 9, 11] {
            let g = graded_ring(k).unwrap();
            assert!(g.is_associative(), "k={k}");
            assert!(g.is_commutative(), "k={k}");
            assert!(g.has_unit(), "k={k}");
            assert!(g.all_nonnegative(), "k={k}");
            assert!(g.b10_holds(), "k={k}");
            assert!(g.split_consistent_with_unsplit(), "k={k}");
            assert_eq!(g.rank(), (k + 3) / 2);
            assert_eq!(g.naive_label_count(), k);
        }
    }

    #[test]
    fn k_minus_one_absent_by_parity() {
        // The basis has no [k-1]: for odd k that label is even-dimensional,
        // i.e. it lives in the eps2 = - module, not in the SO(3) subring.
        for k in [3u64, 5, 7, 9] {
            let g = graded_ring(k).unwrap();
            assert_eq!((k - 1) % 2, 0);
            assert!(!g.basis.contains(&GradedClass::P(k - 1)));
            // whereas the full quotient ring still carries it as an even class
            let r = rk_ring(Plus, Plus, k);
            assert!(r.ring_basis.contains(&(k - 1)));
            assert!(!r.basis.contains(&(k - 1)));
        }
    }

    #[test]
    fn localisation_matches_table_ranks() {
        for k in 1..=12 {
            for t in all_twisting_types(k) {
                assert!(ranks_match(&t), "rank mismatch at {t}");
            }
        }
    }

    #[test]
    fn localisation_examples() {
        // (+,+,2): no interior points, mu=-1 feeds K^0
        let s = localisation(&TwistingType { eps1: Plus, eps2: Plus, k: 2 });
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].degree, 0);
        assert_eq!((s[0].turns_num, s[0].turns_den), (1, 2));
        // (-,-,3): e^{i pi/3} interior plus two lines at mu = -1
        let s = localisation(&TwistingType { eps1: Minus, eps2: Minus, k: 3 });
        assert_eq!(s.len(), 3);
        assert_eq!((s[0].turns_num, s[0].turns_den), (1, 6));
        assert!(s.iter().all(|p| p.degree == 1));
        // support never includes mu = 1
        for k in 1..=12 {
            for t in all_twisting_types(k) {
                for p in localisation(&t) {
                    assert!(p.turns_num != 0 && p.turns_num * 2 <= p.turns_den);
                }
            }
        }
    }

    #[test]
    fn support_labels() {
        let s = localisation(&TwistingType { eps1: Minus, eps2: Plus, k: 3 });
        assert_eq!(s[0].label(), "zeta_6^1");
    }
}
