//! Exact algebra of subsets of `Z^2` that are finite unions of cosets of a
//! product sublattice `Ma*Z x Mb*Z`.
//!
//! A [`ResidueSet`] stores the modulus pair and a residue bitmask, always in
//! canonical form: the modulus is minimal per axis, so two values represent
//! the same subset of `Z^2` exactly when they are structurally equal. Moduli
//! are restricted to divisors of 8, which covers every translation set in the
//! catalog (those need at most 4) and leaves headroom for map images.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

const MAX_MODULUS: u8 = 8;

fn valid_modulus(m: u8) -> bool {
    m >= 1 && MAX_MODULUS % m == 0
}

fn lcm(a: u8, b: u8) -> u8 {
    // Divisors of 8 form a chain, so lcm is max.
    a.max(b)
}

/// A finite union of cosets of `Ma*Z x Mb*Z`, canonical in its modulus.
///
/// Membership: `(m, n)` belongs to the set iff the bit for
/// `(m mod Ma, n mod Mb)` is set. The empty set is representable and has
/// canonical modulus `(1, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueSet {
    modulus: (u8, u8),
    /// Bit `ra * Mb + rb` is residue `(ra, rb)`.
    bits: u64,
}

impl ResidueSet {
    fn bit(ma: u8, mb: u8, ra: u8, rb: u8) -> u64 {
        let _ = ma;
        1u64 << (u32::from(ra) * u32::from(mb) + u32::from(rb))
    }

    fn has(&self, ra: u8, rb: u8) -> bool {
        self.bits & Self::bit(self.modulus.0, self.modulus.1, ra, rb) != 0
    }

    fn canonicalize(modulus: (u8, u8), bits: u64) -> Self {
        let (ma, mb) = modulus;
        let member = |ra: u8, rb: u8| bits & Self::bit(ma, mb, ra, rb) != 0;
        // The periods of the set form a sublattice containing Ma x Mb, so the
        // minimal period per axis is well defined and jointly attainable.
        let mut da = 1;
        while da < ma {
            let periodic = (0..ma).all(|ra| (0..mb).all(|rb| member(ra, rb) == member((ra + da) % ma, rb)));
            if periodic {
                break;
            }
            da *= 2;
        }
        let mut db = 1;
        while db < mb {
            let periodic = (0..ma).all(|ra| (0..mb).all(|rb| member(ra, rb) == member(ra, (rb + db) % mb)));
            if periodic {
                break;
            }
            db *= 2;
        }
        let mut out = 0u64;
        for ra in 0..da {
            for rb in 0..db {
                if member(ra, rb) {
                    out |= Self::bit(da, db, ra, rb);
                }
            }
        }
        ResidueSet {
            modulus: (da, db),
            bits: out,
        }
    }

    /// Builds a set from explicit residues, validating ranges and
    /// canonicalizing the modulus.
    pub fn make(modulus: (u8, u8), residues: &[(u8, u8)]) -> Result<Self> {
        let (ma, mb) = modulus;
        if !valid_modulus(ma) || !valid_modulus(mb) {
            return Err(Error::InvalidModulus(modulus));
        }
        let mut bits = 0u64;
        for &(ra, rb) in residues {
            if ra >= ma || rb >= mb {
                return Err(Error::ResidueOutOfRange {
                    residue: (ra, rb),
                    modulus,
                });
            }
            bits |= Self::bit(ma, mb, ra, rb);
        }
        Ok(Self::canonicalize(modulus, bits))
    }

    fn from_fn(modulus: (u8, u8), f: impl Fn(u8, u8) -> bool) -> Self {
        let (ma, mb) = modulus;
        let mut bits = 0u64;
        for ra in 0..ma {
            for rb in 0..mb {
                if f(ra, rb) {
                    bits |= Self::bit(ma, mb, ra, rb);
                }
            }
        }
        Self::canonicalize(modulus, bits)
    }

    /// The empty subset of `Z^2`.
    pub fn empty() -> Self {
        ResidueSet {
            modulus: (1, 1),
            bits: 0,
        }
    }

    /// All of `Z^2`.
    pub fn full() -> Self {
        ResidueSet {
            modulus: (1, 1),
            bits: 1,
        }
    }

    /// The product lattice `ma*Za + mb*Zb`.
    pub fn lattice(ma: u8, mb: u8) -> Self {
        assert!(valid_modulus(ma) && valid_modulus(mb), "modulus must divide 8");
        ResidueSet {
            modulus: (ma, mb),
            bits: 1,
        }
    }

    /// `L_{i,j} = { ma + nb : (m - i)(n - j) = 0 mod 2 }` for `i, j` in `{0, 1}`.
    pub fn l_set(i: u8, j: u8) -> Self {
        assert!(i <= 1 && j <= 1, "l_set indices must be 0 or 1");
        Self::from_fn((2, 2), |ra, rb| {
            (i64::from(ra) - i64::from(i)) * (i64::from(rb) - i64::from(j)) % 2 == 0
        })
    }

    /// `L^{s1,s2}_{i,j} = { s2*m*a + s1*n*b : (m - i)(n - j) = 0 mod 2 }`.
    ///
    /// `s1` scales the `b` coefficient and `s2` scales the `a` coefficient;
    /// `l_set_scaled(i, j, 1, 1)` equals `l_set(i, j)`.
    pub fn l_set_scaled(i: u8, j: u8, s1: u8, s2: u8) -> Self {
        assert!(i <= 1 && j <= 1, "l_set indices must be 0 or 1");
        assert!(
            matches!(s1, 1 | 2 | 4) && matches!(s2, 1 | 2 | 4),
            "scales must be 1, 2 or 4"
        );
        Self::from_fn((2 * s2, 2 * s1), |ra, rb| {
            if ra % s2 != 0 || rb % s1 != 0 {
                return false;
            }
            let m = i64::from(ra / s2);
            let n = i64::from(rb / s1);
            (m - i64::from(i)) * (n - i64::from(j)) % 2 == 0
        })
    }

    pub fn modulus(&self) -> (u8, u8) {
        self.modulus
    }

    /// Residues in sorted order.
    pub fn residues(&self) -> Vec<(u8, u8)> {
        let (ma, mb) = self.modulus;
        let mut out = Vec::new();
        for ra in 0..ma {
            for rb in 0..mb {
                if self.has(ra, rb) {
                    out.push((ra, rb));
                }
            }
        }
        out
    }

    pub fn residue_count(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Exact membership of an arbitrary integer vector.
    pub fn contains(&self, v: (i64, i64)) -> bool {
        let ra = v.0.rem_euclid(i64::from(self.modulus.0)) as u8;
        let rb = v.1.rem_euclid(i64::from(self.modulus.1)) as u8;
        self.has(ra, rb)
    }

    fn lift_bits(&self, modulus: (u8, u8)) -> u64 {
        let (ma, mb) = modulus;
        debug_assert!(ma % self.modulus.0 == 0 && mb % self.modulus.1 == 0);
        let mut bits = 0u64;
        for ra in 0..ma {
            for rb in 0..mb {
                if self.has(ra % self.modulus.0, rb % self.modulus.1) {
                    bits |= Self::bit(ma, mb, ra, rb);
                }
            }
        }
        bits
    }

    /// The residue bitmask at square modulus `m` (cell `ra * m + rb`).
    /// Fails if this set is not periodic at that modulus.
    pub fn square_mask(&self, m: u8) -> Result<u64> {
        if !valid_modulus(m) || m % self.modulus.0 != 0 || m % self.modulus.1 != 0 {
            return Err(Error::ModulusOverflow {
                required: self.modulus.0.max(self.modulus.1),
                supported: m,
            });
        }
        Ok(self.lift_bits((m, m)))
    }

    /// Rebuilds a set from a square-modulus bitmask.
    pub fn from_square_mask(m: u8, bits: u64) -> Self {
        assert!(valid_modulus(m), "modulus must divide 8");
        Self::canonicalize((m, m), bits)
    }

    fn common(a: &Self, b: &Self) -> ((u8, u8), u64, u64) {
        let ma = lcm(a.modulus.0, b.modulus.0);
        let mb = lcm(a.modulus.1, b.modulus.1);
        ((ma, mb), a.lift_bits((ma, mb)), b.lift_bits((ma, mb)))
    }

    pub fn union(&self, other: &Self) -> Self {
        let (m, x, y) = Self::common(self, other);
        Self::canonicalize(m, x | y)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (m, x, y) = Self::common(self, other);
        Self::canonicalize(m, x & y)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        let (_, x, y) = Self::common(self, other);
        x & !y == 0
    }

    /// Image under `v -> -v`.
    pub fn negate(&self) -> Self {
        let (ma, mb) = self.modulus;
        let mut bits = 0u64;
        for (ra, rb) in self.residues() {
            bits |= Self::bit(ma, mb, (ma - ra) % ma, (mb - rb) % mb);
        }
        ResidueSet {
            modulus: (ma, mb),
            bits,
        }
    }

    /// Image under translation by `t`.
    pub fn translate(&self, t: (i64, i64)) -> Self {
        let (ma, mb) = self.modulus;
        let ta = t.0.rem_euclid(i64::from(ma)) as u8;
        let tb = t.1.rem_euclid(i64::from(mb)) as u8;
        let mut bits = 0u64;
        for (ra, rb) in self.residues() {
            bits |= Self::bit(ma, mb, (ra + ta) % ma, (rb + tb) % mb);
        }
        ResidueSet {
            modulus: (ma, mb),
            bits,
        }
    }

    /// Exact Minkowski combination `self - k * other`.
    ///
    /// The result is a union of cosets of this set's lattice, so it is
    /// computed at this set's modulus: lifting `other` to the common modulus
    /// makes `k * v` well defined there. For `k = 0` the result is `self`.
    pub fn scale_subtract(&self, k: i64, other: &Self) -> Self {
        if k == 0 {
            return self.clone();
        }
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let (ma, mb) = self.modulus;
        let la = lcm(ma, other.modulus.0);
        let lb = lcm(mb, other.modulus.1);
        let mut bits = 0u64;
        for ra in 0..la {
            for rb in 0..lb {
                if !other.contains((i64::from(ra), i64::from(rb))) {
                    continue;
                }
                let shift = (-k * i64::from(ra), -k * i64::from(rb));
                for (sa, sb) in self.residues() {
                    let na = (i64::from(sa) + shift.0).rem_euclid(i64::from(ma)) as u8;
                    let nb = (i64::from(sb) + shift.1).rem_euclid(i64::from(mb)) as u8;
                    bits |= Self::bit(ma, mb, na, nb);
                }
            }
        }
        Self::canonicalize((ma, mb), bits)
    }

    /// Image under a unimodular map of the radical lattice.
    pub fn apply_map(&self, map: &RadicalMap) -> Self {
        if self.is_empty() {
            return Self::empty();
        }
        // A unimodular map fixes d*Z^2, so the image of a union of cosets of
        // d*Z^2 is again one; lift to the square modulus first.
        let d = lcm(self.modulus.0, self.modulus.1);
        let bits = self.lift_bits((d, d));
        let mut out = 0u64;
        for ra in 0..d {
            for rb in 0..d {
                if bits & Self::bit(d, d, ra, rb) == 0 {
                    continue;
                }
                let (x, y) = map.apply((i64::from(ra), i64::from(rb)));
                let na = x.rem_euclid(i64::from(d)) as u8;
                let nb = y.rem_euclid(i64::from(d)) as u8;
                out |= Self::bit(d, d, na, nb);
            }
        }
        Self::canonicalize((d, d), out)
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mod({},{}):{{", self.modulus.0, self.modulus.1)?;
        for (i, r) in self.residues().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", r.0, r.1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ResidueSetRepr {
    modulus: [u8; 2],
    residues: Vec<[u8; 2]>,
}

impl Serialize for ResidueSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = ResidueSetRepr {
            modulus: [self.modulus.0, self.modulus.1],
            residues: self.residues().iter().map(|&(a, b)| [a, b]).collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ResidueSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ResidueSetRepr::deserialize(deserializer)?;
        let residues: Vec<(u8, u8)> = repr.residues.iter().map(|r| (r[0], r[1])).collect();
        ResidueSet::make((repr.modulus[0], repr.modulus[1]), &residues)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// A 2x2 integer matrix of determinant +1 or -1 acting on the coefficient
/// vector `(m, n)` of `m*a + n*b`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RadicalMap {
    entries: [[i64; 2]; 2],
}

impl RadicalMap {
    pub fn new(entries: [[i64; 2]; 2]) -> Result<Self> {
        let det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
        if det != 1 && det != -1 {
            return Err(Error::NonUnimodular { det });
        }
        Ok(RadicalMap { entries })
    }

    pub fn identity() -> Self {
        RadicalMap {
            entries: [[1, 0], [0, 1]],
        }
    }

    /// Exchanges `a` and `b`.
    pub fn swap() -> Self {
        RadicalMap {
            entries: [[0, 1], [1, 0]],
        }
    }

    /// Sends `a` to `a + k*b` and fixes `b` (coefficients `(m, n) -> (m, n + k*m)`).
    pub fn shear_a(k: i64) -> Self {
        RadicalMap {
            entries: [[1, 0], [k, 1]],
        }
    }

    /// Sends `b` to `b + k*a` and fixes `a`; this preserves the marking line.
    pub fn shear_b(k: i64) -> Self {
        RadicalMap {
            entries: [[1, k], [0, 1]],
        }
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.entries
    }

    pub fn det(&self) -> i64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        (
            self.entries[0][0] * v.0 + self.entries[0][1] * v.1,
            self.entries[1][0] * v.0 + self.entries[1][1] * v.1,
        )
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        let a = self.entries;
        let b = other.entries;
        RadicalMap {
            entries: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.entries;
        let det = self.det();
        RadicalMap {
            entries: [[d * det, -b * det], [-c * det, a * det]],
        }
    }

    /// Reduction mod `m`, for residue-level orbit scans.
    pub fn entries_mod(&self, m: u8) -> [[i64; 2]; 2] {
        let md = i64::from(m);
        let r = |x: i64| x.rem_euclid(md);
        [
            [r(self.entries[0][0]), r(self.entries[0][1])],
            [r(self.entries[1][0]), r(self.entries[1][1])],
        ]
    }
}

/// Index in `Z^2` of the subgroup generated by the given vectors, or `None`
/// if they do not span a finite-index subgroup.
pub fn subgroup_index(generators: &[(i64, i64)]) -> Option<u64> {
    // Row-reduce to a Hermite-style triangular basis [[a, b], [0, c]].
    let mut rows: Vec<(i64, i64)> = generators.to_vec();
    let mut first: Option<(i64, i64)> = None;
    // Combine everything into one vector with nonzero first coordinate via gcd.
    for &(x, y) in &rows {
        if x != 0 {
            first = Some(match first {
                None => (x, y),
                Some(f) => gcd_combine(f, (x, y)),
            });
        }
    }
    let (a, b) = match first {
        Some(f) => f,
        None => {
            // All generators lie on the b-axis.
            return None;
        }
    };
    // Eliminate the first coordinate from every generator.
    let mut c: i64 = 0;
    for row in rows.iter_mut() {
        let (x, y) = *row;
        debug_assert!(x % a == 0);
        let q = x / a;
        let rest = y - q * b;
        c = gcd(c, rest);
    }
    if c == 0 {
        return None;
    }
    Some((a.unsigned_abs()) * (c.unsigned_abs()))
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Combines two rows so the result's first coordinate is gcd of the inputs'.
fn gcd_combine(p: (i64, i64), q: (i64, i64)) -> (i64, i64) {
    let (mut a, mut b) = p;
    let (mut c, mut d) = q;
    while c != 0 {
        let k = a / c;
        let (na, nb) = (a - k * c, b - k * d);
        a = c;
        b = d;
        c = na;
        d = nb;
    }
    if a < 0 {
        (-a, -b)
    } else {
        (a, b)
    }
}

/// Whether the union of the given sets generates all of `Z^2` as a group.
pub fn generates_full_lattice(sets: &[&ResidueSet]) -> bool {
    let mut gens: Vec<(i64, i64)> = Vec::new();
    for s in sets {
        let (ma, mb) = s.modulus();
        gens.push((i64::from(ma), 0));
        gens.push((0, i64::from(mb)));
        for (ra, rb) in s.residues() {
            gens.push((i64::from(ra), i64::from(rb)));
        }
    }
    subgroup_index(&gens) == Some(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct congruence membership for `L^{s1,s2}_{i,j}`, used as an oracle.
    fn l_scaled_member(i: i64, j: i64, s1: i64, s2: i64, v: (i64, i64)) -> bool {
        if v.0.rem_euclid(s2) != 0 || v.1.rem_euclid(s1) != 0 {
            return false;
        }
        let m = v.0.div_euclid(s2);
        let n = v.1.div_euclid(s1);
        (m - i) * (n - j) % 2 == 0
    }

    fn window() -> impl Iterator<Item = (i64, i64)> {
        (-8..=8).flat_map(|x| (-8..=8).map(move |y| (x, y)))
    }

    #[test]
    fn full_residue_set_canonicalizes_to_trivial_modulus() {
        let s = ResidueSet::make((2, 2), &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(s, ResidueSet::full());
        assert_eq!(s.modulus(), (1, 1));
    }

    #[test]
    fn single_residue_is_scaled_lattice() {
        let s = ResidueSet::make((2, 2), &[(0, 0)]).unwrap();
        assert_eq!(s, ResidueSet::lattice(2, 2));
        assert!(s.contains((4, -2)));
        assert!(!s.contains((1, 0)));
    }

    #[test]
    fn make_rejects_bad_input() {
        assert!(matches!(
            ResidueSet::make((3, 2), &[]),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            ResidueSet::make((2, 2), &[(2, 0)]),
            Err(Error::ResidueOutOfRange { .. })
        ));
    }

    #[test]
    fn l_set_membership_examples() {
        let l11 = ResidueSet::l_set(1, 1);
        assert!(l11.contains((1, 0)));
        assert!(!l11.contains((0, 0)));
        assert!(l11.contains((3, 7)));
        let l00 = ResidueSet::l_set(0, 0);
        assert_eq!(l00.residues(), vec![(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn l_set_scaled_membership_examples() {
        let s = ResidueSet::l_set_scaled(0, 0, 2, 2);
        assert!(s.contains((2, 4)));
        assert!(!s.contains((2, 2)));
        // At modulus (4,4): the three even-even cells with m*n even.
        assert_eq!(s.modulus(), (4, 4));
        assert_eq!(s.residues(), vec![(0, 0), (0, 2), (2, 0)]);
    }

    #[test]
    fn l_sets_match_congruence_oracle_on_window() {
        for i in 0..=1u8 {
            for j in 0..=1u8 {
                for &s1 in &[1u8, 2, 4] {
                    for &s2 in &[1u8, 2, 4] {
                        let s = ResidueSet::l_set_scaled(i, j, s1, s2);
                        for v in window() {
                            assert_eq!(
                                s.contains(v),
                                l_scaled_member(i.into(), j.into(), s1.into(), s2.into(), v),
                                "mismatch for L^{{{s1},{s2}}}_{{{i},{j}}} at {v:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn l_set_scaled_reduces_to_l_set() {
        for i in 0..=1 {
            for j in 0..=1 {
                assert_eq!(ResidueSet::l_set_scaled(i, j, 1, 1), ResidueSet::l_set(i, j));
            }
        }
    }

    #[test]
    fn negate_fixes_symmetric_l_set() {
        let l11 = ResidueSet::l_set(1, 1);
        assert_eq!(l11.negate(), l11);
        let l01 = ResidueSet::l_set(0, 1);
        assert_eq!(l01.negate(), l01);
    }

    #[test]
    fn union_with_missing_coset_gives_everything() {
        let l00 = ResidueSet::l_set(0, 0);
        let odd_odd = ResidueSet::make((2, 2), &[(1, 1)]).unwrap();
        assert_eq!(l00.union(&odd_odd), ResidueSet::full());
    }

    #[test]
    fn set_ops_match_pointwise_oracle() {
        let a = ResidueSet::make((4, 2), &[(0, 0), (1, 1), (3, 1)]).unwrap();
        let b = ResidueSet::make((2, 4), &[(0, 0), (1, 2), (1, 3)]).unwrap();
        let u = a.union(&b);
        let i = a.intersect(&b);
        let n = a.negate();
        for v in window() {
            assert_eq!(u.contains(v), a.contains(v) || b.contains(v));
            assert_eq!(i.contains(v), a.contains(v) && b.contains(v));
            assert_eq!(n.contains(v), a.contains((-v.0, -v.1)));
        }
    }

    #[test]
    fn contains_respects_lattice_membership() {
        assert!(ResidueSet::lattice(2, 1).contains((2, 5)));
        assert!(!ResidueSet::lattice(4, 4).contains((2, 0)));
    }

    /// Oracle: `x` belongs to `t2 - k*t1` iff some `v` in a fundamental
    /// domain of `t1` has `x + k*v` in `t2`.
    fn scale_sub_member(t2: &ResidueSet, k: i64, t1: &ResidueSet, x: (i64, i64)) -> bool {
        if t1.is_empty() || t2.is_empty() {
            return false;
        }
        for va in 0..8 {
            for vb in 0..8 {
                let v = (i64::from(va), i64::from(vb));
                if t1.contains(v) && t2.contains((x.0 + k * v.0, x.1 + k * v.1)) {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn scale_subtract_matches_minkowski_oracle() {
        let sets = [
            ResidueSet::full(),
            ResidueSet::lattice(2, 1),
            ResidueSet::lattice(2, 2),
            ResidueSet::l_set(1, 1),
            ResidueSet::l_set(0, 1),
            ResidueSet::l_set_scaled(0, 0, 2, 2),
            ResidueSet::make((4, 4), &[(1, 2), (3, 2), (0, 0), (2, 0)]).unwrap(),
        ];
        for t2 in &sets {
            for t1 in &sets {
                for &k in &[0i64, 1, 2, 4, -1, -2, -4] {
                    let got = t2.scale_subtract(k, t1);
                    for v in window() {
                        let expect = if k == 0 {
                            t2.contains(v)
                        } else {
                            scale_sub_member(t2, k, t1, v)
                        };
                        assert_eq!(got.contains(v), expect, "k={k} t2={t2:?} t1={t1:?} at {v:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn scale_subtract_examples() {
        let z2 = ResidueSet::full();
        assert_eq!(z2.scale_subtract(1, &z2), z2);
        let two_a = ResidueSet::lattice(2, 1);
        let a = ResidueSet::lattice(1, 1);
        assert_eq!(two_a.scale_subtract(2, &a), two_a);
        let l11 = ResidueSet::l_set(1, 1);
        assert_eq!(l11.scale_subtract(4, &z2), l11);
        // Empty operands.
        assert_eq!(z2.scale_subtract(2, &ResidueSet::empty()), ResidueSet::empty());
        assert_eq!(z2.scale_subtract(0, &ResidueSet::empty()), z2);
    }

    #[test]
    fn apply_map_examples() {
        let s = ResidueSet::lattice(2, 1);
        assert_eq!(s.apply_map(&RadicalMap::swap()), ResidueSet::lattice(1, 2));
        // a -> a + b sends L_{0,1} to L_{0,0}.
        let sheared = ResidueSet::l_set(0, 1).apply_map(&RadicalMap::shear_a(1));
        assert_eq!(sheared, ResidueSet::l_set(0, 0));
        let id = RadicalMap::identity();
        let l = ResidueSet::l_set_scaled(1, 1, 2, 2);
        assert_eq!(l.apply_map(&id), l);
    }

    #[test]
    fn apply_map_matches_preimage_oracle() {
        let maps = [
            RadicalMap::swap(),
            RadicalMap::shear_a(1),
            RadicalMap::shear_b(-1),
            RadicalMap::new([[1, 0], [-2, 1]]).unwrap(),
            RadicalMap::new([[-1, 0], [0, -1]]).unwrap(),
        ];
        let sets = [
            ResidueSet::lattice(2, 4),
            ResidueSet::l_set(1, 0),
            ResidueSet::make((4, 4), &[(0, 0), (1, 2), (3, 2), (2, 0)]).unwrap(),
        ];
        for map in &maps {
            let inv = map.inverse();
            assert_eq!(map.compose(&inv), RadicalMap::identity());
            for s in &sets {
                let image = s.apply_map(map);
                for v in window() {
                    assert_eq!(image.contains(v), s.contains(inv.apply(v)));
                }
            }
        }
    }

    #[test]
    fn radical_map_rejects_non_unimodular() {
        assert!(matches!(
            RadicalMap::new([[2, 0], [0, 1]]),
            Err(Error::NonUnimodular { det: 2 })
        ));
    }

    #[test]
    fn equals_respects_canonicalization() {
        let a = ResidueSet::make((4, 4), &[(0, 0), (2, 0), (0, 2), (2, 2)]).unwrap();
        let b = ResidueSet::make((2, 2), &[(0, 0)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn subgroup_index_basics() {
        assert_eq!(subgroup_index(&[(1, 0), (0, 1)]), Some(1));
        assert_eq!(subgroup_index(&[(2, 0), (0, 2)]), Some(4));
        assert_eq!(subgroup_index(&[(1, 1), (1, -1)]), Some(2));
        assert_eq!(subgroup_index(&[(2, 0)]), None);
        assert_eq!(subgroup_index(&[]), None);
    }

    #[test]
    fn generates_full_lattice_examples() {
        let l11 = ResidueSet::l_set(1, 1);
        assert!(generates_full_lattice(&[&l11]));
        let p44 = ResidueSet::lattice(4, 4);
        assert!(!generates_full_lattice(&[&p44]));
        assert!(generates_full_lattice(&[&p44, &ResidueSet::full()]));
    }

    #[test]
    fn serde_round_trip() {
        let s = ResidueSet::l_set_scaled(1, 0, 2, 2);
        let json = serde_json::to_string(&s).unwrap();
        let back: ResidueSet = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
        assert!(json.contains("\"modulus\""));
    }
}
