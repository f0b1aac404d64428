//! Finite root data of type `BC_l`: roots in the epsilon basis, inner
//! products, coroots, reflections, and the symbolic closure conditions that
//! reflections induce on radical translation sets.
//!
//! Reflecting `beta + w` in `alpha + v` (with `v`, `w` radical) gives
//! `(beta - k*alpha) + (w - k*v)` where `k = I(beta, alpha^vee)` only depends
//! on the finite parts. Closure of the infinite root set is therefore
//! equivalent to one residue-set inclusion per distinct tuple
//! `(class(alpha), class(beta), k)`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Length class of a `BC_l` root; squared lengths are 1, 2 and 4.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Middle,
    Long,
}

impl LengthClass {
    pub const ALL: [LengthClass; 3] = [LengthClass::Short, LengthClass::Middle, LengthClass::Long];

    pub fn squared_length(self) -> i64 {
        match self {
            LengthClass::Short => 1,
            LengthClass::Middle => 2,
            LengthClass::Long => 4,
        }
    }
}

impl fmt::Display for LengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LengthClass::Short => "short",
            LengthClass::Middle => "middle",
            LengthClass::Long => "long",
        };
        f.write_str(s)
    }
}

/// An integer vector in the epsilon basis together with its length class.
///
/// Valid shapes are `±e_i` (short), `±(e_i ± e_j)` (middle) and `±2e_i`
/// (long).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteRoot {
    coords: Vec<i64>,
    class: LengthClass,
}

impl FiniteRoot {
    fn new(coords: Vec<i64>) -> Self {
        let class = classify(&coords).expect("not a BC root shape");
        FiniteRoot { coords, class }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn class(&self) -> LengthClass {
        self.class
    }
}

/// Length class of a coordinate vector, if it has a `BC` root shape.
pub fn classify(coords: &[i64]) -> Option<LengthClass> {
    let sq: i64 = coords.iter().map(|c| c * c).sum();
    match sq {
        1 => Some(LengthClass::Short),
        2 => Some(LengthClass::Middle),
        4 if coords.iter().all(|&c| c == 0 || c.abs() == 2) => Some(LengthClass::Long),
        _ => None,
    }
}

/// All roots of `BC_l`: `2l` short, `2l(l-1)` middle, `2l` long. The middle
/// class is empty exactly at rank 1.
pub fn finite_roots(rank: u32) -> Result<Vec<FiniteRoot>> {
    if rank == 0 {
        return Err(Error::InvalidRank(rank));
    }
    let l = rank as usize;
    let mut out = Vec::new();
    let unit = |i: usize, v: i64| {
        let mut c = vec![0i64; l];
        c[i] = v;
        c
    };
    for i in 0..l {
        out.push(FiniteRoot::new(unit(i, 1)));
        out.push(FiniteRoot::new(unit(i, -1)));
    }
    for i in 0..l {
        for j in (i + 1)..l {
            for &(si, sj) in &[(1, -1), (1, 1), (-1, 1), (-1, -1)] {
                let mut c = vec![0i64; l];
                c[i] = si;
                c[j] = sj;
                out.push(FiniteRoot::new(c));
            }
        }
    }
    for i in 0..l {
        out.push(FiniteRoot::new(unit(i, 2)));
        out.push(FiniteRoot::new(unit(i, -2)));
    }
    Ok(out)
}

/// Standard inner product in the epsilon basis.
pub fn inner(a: &FiniteRoot, b: &FiniteRoot) -> i64 {
    assert_eq!(a.rank(), b.rank(), "rank mismatch");
    a.coords.iter().zip(&b.coords).map(|(x, y)| x * y).sum()
}

/// The coroot `2a / I(a, a)`, stored with doubled coordinates to stay exact:
/// `coroot(a) = twice / 2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coroot {
    pub twice: Vec<i64>,
}

pub fn coroot(a: &FiniteRoot) -> Coroot {
    let sq = a.class.squared_length();
    // twice = 2 * (2 a / sq) = 4 a / sq; exact for sq in {1, 2, 4}.
    Coroot {
        twice: a.coords.iter().map(|c| 4 * c / sq).collect(),
    }
}

/// `I(b, a^vee)`, always an integer on `BC_l`.
pub fn pairing(a: &FiniteRoot, b: &FiniteRoot) -> i64 {
    let num = 2 * inner(a, b);
    let den = a.class.squared_length();
    debug_assert_eq!(num % den, 0);
    num / den
}

/// Reflects `b` in the hyperplane of `a`: returns `(b - k*a, k)` with
/// `k = I(b, a^vee)`. The image is again a `BC_l` root of the same class.
pub fn reflect_finite(a: &FiniteRoot, b: &FiniteRoot) -> (FiniteRoot, i64) {
    let k = pairing(a, b);
    let coords: Vec<i64> = b
        .coords
        .iter()
        .zip(&a.coords)
        .map(|(x, y)| x - k * y)
        .collect();
    let image = FiniteRoot::new(coords);
    debug_assert_eq!(image.class(), b.class());
    (image, k)
}

/// One symbolic closure condition: reflecting a root of `reflecting` class
/// maps the translation set of `reflected` into `image` via subtraction of
/// `k` times the reflecting translation set. Reflections preserve length, so
/// `image == reflected` always; the field stays for self-checking.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ClosureCondition {
    pub reflecting: LengthClass,
    pub reflected: LengthClass,
    pub image: LengthClass,
    pub k: i64,
}

/// All distinct `(class(a), class(b), class(b - k*a), k)` tuples over pairs
/// of finite roots at the given rank.
pub fn closure_conditions(rank: u32) -> Result<BTreeSet<ClosureCondition>> {
    let roots = finite_roots(rank)?;
    let mut out = BTreeSet::new();
    for a in &roots {
        for b in &roots {
            let (image, k) = reflect_finite(a, b);
            out.insert(ClosureCondition {
                reflecting: a.class(),
                reflected: b.class(),
                image: image.class(),
                k,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(coords: &[i64]) -> FiniteRoot {
        FiniteRoot::new(coords.to_vec())
    }

    fn count_class(roots: &[FiniteRoot], c: LengthClass) -> usize {
        roots.iter().filter(|r| r.class() == c).count()
    }

    #[test]
    fn root_counts_per_rank() {
        let r1 = finite_roots(1).unwrap();
        assert_eq!(r1.len(), 4);
        assert_eq!(count_class(&r1, LengthClass::Middle), 0);

        let r2 = finite_roots(2).unwrap();
        assert_eq!(r2.len(), 12);
        assert_eq!(count_class(&r2, LengthClass::Short), 4);
        assert_eq!(count_class(&r2, LengthClass::Middle), 4);
        assert_eq!(count_class(&r2, LengthClass::Long), 4);

        let r3 = finite_roots(3).unwrap();
        assert_eq!(r3.len(), 24);
        assert_eq!(count_class(&r3, LengthClass::Middle), 12);

        assert!(finite_roots(0).is_err());
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(inner(&root(&[1]), &root(&[1])), 1);
        assert_eq!(inner(&root(&[2, 0]), &root(&[1, -1])), 2);
        assert_eq!(inner(&root(&[1, 1]), &root(&[1, -1])), 0);
    }

    #[test]
    fn coroot_examples() {
        assert_eq!(coroot(&root(&[1])).twice, vec![4]);
        assert_eq!(coroot(&root(&[1, -1])).twice, vec![2, -2]);
        assert_eq!(coroot(&root(&[2])).twice, vec![2]);
    }

    #[test]
    fn reflect_examples() {
        let (g, k) = reflect_finite(&root(&[2]), &root(&[1]));
        assert_eq!((g.coords(), k), ([-1].as_slice(), 1));

        let (g, k) = reflect_finite(&root(&[1]), &root(&[2]));
        assert_eq!((g.coords(), k), ([-2].as_slice(), 4));

        let (g, k) = reflect_finite(&root(&[1, -1]), &root(&[0, 1]));
        assert_eq!((g.coords(), k), ([1, 0].as_slice(), -1));
    }

    #[test]
    fn reflection_closes_and_involutes_up_to_rank_4() {
        for rank in 1..=4 {
            let roots = finite_roots(rank).unwrap();
            for a in &roots {
                for b in &roots {
                    let (g, k) = reflect_finite(a, b);
                    assert!(matches!(k, -4..=4));
                    assert!(roots.contains(&g), "image not a root");
                    assert_eq!(g.class(), b.class());
                    let (back, _) = reflect_finite(a, &g);
                    assert_eq!(&back, b);
                }
            }
        }
    }

    #[test]
    fn pairing_values_are_small_integers() {
        for rank in 1..=3 {
            let roots = finite_roots(rank).unwrap();
            for a in &roots {
                assert!(matches!(inner(a, a), 1 | 2 | 4));
                for b in &roots {
                    let k = pairing(a, b);
                    assert!(matches!(k, -4 | -2 | -1 | 0 | 1 | 2 | 4));
                }
            }
        }
    }

    #[test]
    fn closure_conditions_rank_1() {
        let conds = closure_conditions(1).unwrap();
        let has = |r, d, k| {
            conds.contains(&ClosureCondition {
                reflecting: r,
                reflected: d,
                image: d,
                k,
            })
        };
        assert!(has(LengthClass::Short, LengthClass::Long, 4));
        assert!(has(LengthClass::Long, LengthClass::Short, 1));
        assert!(has(LengthClass::Short, LengthClass::Short, 2));
        assert!(conds.iter().all(|c| c.reflecting != LengthClass::Middle
            && c.reflected != LengthClass::Middle));
    }

    #[test]
    fn closure_conditions_rank_2_and_3() {
        let c2 = closure_conditions(2).unwrap();
        let mid_short = ClosureCondition {
            reflecting: LengthClass::Middle,
            reflected: LengthClass::Short,
            image: LengthClass::Short,
            k: -1,
        };
        assert!(c2.contains(&mid_short));
        // Middle-by-middle pairing -1 needs three distinct indices.
        let mid_mid_one = ClosureCondition {
            reflecting: LengthClass::Middle,
            reflected: LengthClass::Middle,
            image: LengthClass::Middle,
            k: 1,
        };
        assert!(!c2.contains(&mid_mid_one));
        let c3 = closure_conditions(3).unwrap();
        assert!(c3.contains(&mid_mid_one));
        // The condition set is stable from rank 3 on.
        assert_eq!(c3, closure_conditions(4).unwrap());
    }

    #[test]
    fn image_class_always_matches_reflected_class() {
        for rank in 1..=3 {
            for c in closure_conditions(rank).unwrap() {
                assert_eq!(c.image, c.reflected);
            }
        }
    }
}
