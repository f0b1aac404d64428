//! Quotient of a marked system by its marking line: project out the `a`
//! coordinate and identify the resulting affine root system among the four
//! non-reduced affine families built on `BC_l`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::catalog::MarkedERS;
use crate::finite::LengthClass;

/// The four non-reduced affine families.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum AffineFamily {
    /// Profile `(Z, Z, Z)`.
    Bcc,
    /// Profile `(Z, 2Z, 4Z)`.
    CvBc,
    /// Profile `(Z, Z, 2Z)`, rank at least 2.
    BBv,
    /// Profile `(Z, 2Z, 2Z)`.
    CvC,
}

impl fmt::Display for AffineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AffineFamily::Bcc => "BCC",
            AffineFamily::CvBc => "CvBC",
            AffineFamily::BBv => "BBv",
            AffineFamily::CvC => "CvC",
        };
        f.write_str(s)
    }
}

/// Identification outcome for a quotient profile.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum QuotientType {
    Family(AffineFamily),
    ReducedOrOther,
}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientType::Family(fam) => fam.fmt(f),
            QuotientType::ReducedOrOther => f.write_str("reduced-or-other"),
        }
    }
}

/// A subset of `Z` as residues mod a divisor of 8, canonical in its modulus.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LineSet {
    pub modulus: u8,
    pub residues: Vec<u8>,
}

impl LineSet {
    pub fn new(modulus: u8, residues: impl IntoIterator<Item = u8>) -> Self {
        let set: BTreeSet<u8> = residues.into_iter().map(|r| r % modulus).collect();
        // Reduce to the minimal period.
        let mut d = 1;
        while d < modulus {
            if (0..modulus).all(|r| set.contains(&r) == set.contains(&((r + d) % modulus))) {
                break;
            }
            d *= 2;
        }
        LineSet {
            modulus: d,
            residues: set.into_iter().filter(|&r| r < d).collect(),
        }
    }

    pub fn integers() -> Self {
        LineSet {
            modulus: 1,
            residues: vec![0],
        }
    }

    pub fn multiples(d: u8) -> Self {
        LineSet {
            modulus: d,
            residues: vec![0],
        }
    }

    pub fn contains(&self, n: i64) -> bool {
        let r = n.rem_euclid(i64::from(self.modulus)) as u8;
        self.residues.contains(&r)
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn negated(&self) -> Self {
        LineSet::new(
            self.modulus,
            self.residues.iter().map(|&r| (self.modulus - r) % self.modulus),
        )
    }
}

/// The quotient profile: per length class, the set of `b` coefficients that
/// survive projecting out `a`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AffineProfile {
    pub rank: u32,
    pub short: LineSet,
    pub middle: Option<LineSet>,
    pub long: LineSet,
}

fn project_b(set: &crate::coset::ResidueSet) -> LineSet {
    let (_, mb) = set.modulus();
    LineSet::new(mb, set.residues().into_iter().map(|(_, rb)| rb))
}

/// Projects the root system along the marking.
pub fn quotient(r: &MarkedERS) -> AffineProfile {
    let middle_set = r.translation(LengthClass::Middle);
    AffineProfile {
        rank: r.rank(),
        short: project_b(r.translation(LengthClass::Short)),
        middle: if middle_set.is_empty() {
            None
        } else {
            Some(project_b(middle_set))
        },
        long: project_b(r.translation(LengthClass::Long)),
    }
}

/// Matches the profile triple against the four non-reduced affine patterns.
/// At rank 1 there is no middle class; the long profile alone separates the
/// remaining candidates because the rank-1 families coincide otherwise.
pub fn identify_affine_type(p: &AffineProfile) -> QuotientType {
    let z = LineSet::integers();
    if p.short != z {
        return QuotientType::ReducedOrOther;
    }
    let two = LineSet::multiples(2);
    let four = LineSet::multiples(4);
    if p.rank == 1 || p.middle.is_none() {
        return if p.long == z {
            QuotientType::Family(AffineFamily::Bcc)
        } else if p.long == two {
            QuotientType::Family(AffineFamily::CvC)
        } else if p.long == four {
            QuotientType::Family(AffineFamily::CvBc)
        } else {
            QuotientType::ReducedOrOther
        };
    }
    let middle = p.middle.as_ref().expect("checked");
    let pattern = (middle.clone(), p.long.clone());
    if pattern == (z.clone(), z.clone()) {
        QuotientType::Family(AffineFamily::Bcc)
    } else if pattern == (z, two.clone()) {
        QuotientType::Family(AffineFamily::BBv)
    } else if pattern == (two.clone(), two) {
        QuotientType::Family(AffineFamily::CvC)
    } else if pattern == (LineSet::multiples(2), four) {
        QuotientType::Family(AffineFamily::CvBc)
    } else {
        QuotientType::ReducedOrOther
    }
}

/// Whether the quotient is non-reduced: some short residue doubles into the
/// long profile.
pub fn is_quotient_non_reduced(p: &AffineProfile) -> bool {
    (0..8i64).any(|v| p.short.contains(v) && p.long.contains(2 * v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, catalog, ErsType};

    #[test]
    fn quotient_profiles_of_named_types() {
        let p = quotient(&build(ErsType::CvBc4Star0, 2).unwrap());
        assert_eq!(p.short, LineSet::integers());
        assert_eq!(p.middle, Some(LineSet::multiples(2)));
        assert_eq!(p.long, LineSet::multiples(4));
        assert_eq!(identify_affine_type(&p), QuotientType::Family(AffineFamily::CvBc));

        let p = quotient(&build(ErsType::Bc12, 2).unwrap());
        assert_eq!(p.short, LineSet::integers());
        assert_eq!(p.middle, Some(LineSet::integers()));
        assert_eq!(p.long, LineSet::integers());
        assert_eq!(identify_affine_type(&p), QuotientType::Family(AffineFamily::Bcc));

        let p = quotient(&build(ErsType::BBv2StarIso, 2).unwrap());
        assert_eq!(p.long, LineSet::multiples(2));
        assert_eq!(identify_affine_type(&p), QuotientType::Family(AffineFamily::BBv));
    }

    #[test]
    fn rank_one_identification_uses_long_profile() {
        let mk = |long| AffineProfile {
            rank: 1,
            short: LineSet::integers(),
            middle: None,
            long,
        };
        assert_eq!(
            identify_affine_type(&mk(LineSet::integers())),
            QuotientType::Family(AffineFamily::Bcc)
        );
        assert_eq!(
            identify_affine_type(&mk(LineSet::multiples(2))),
            QuotientType::Family(AffineFamily::CvC)
        );
        assert_eq!(
            identify_affine_type(&mk(LineSet::multiples(4))),
            QuotientType::Family(AffineFamily::CvBc)
        );
        assert_eq!(
            identify_affine_type(&mk(LineSet::new(8, [1, 3, 5, 7]))),
            QuotientType::ReducedOrOther
        );
    }

    #[test]
    fn non_subgroup_profile_is_other() {
        let p = AffineProfile {
            rank: 2,
            short: LineSet::integers(),
            middle: Some(LineSet::integers()),
            long: LineSet::new(4, [1, 3]),
        };
        assert_eq!(identify_affine_type(&p), QuotientType::ReducedOrOther);
    }

    #[test]
    fn quotient_non_reduced_examples() {
        for rank in [1u32, 2, 3] {
            for (t, r) in catalog(rank).unwrap() {
                let p = quotient(&r);
                assert!(is_quotient_non_reduced(&p), "{t} rank {rank}");
                assert_eq!(
                    identify_affine_type(&p),
                    QuotientType::Family(t.family()),
                    "{t} rank {rank}"
                );
            }
        }
    }

    #[test]
    fn shifted_long_profile_is_reduced() {
        let p = AffineProfile {
            rank: 2,
            short: LineSet::integers(),
            middle: Some(LineSet::integers()),
            long: LineSet::new(2, [1]),
        };
        assert!(!is_quotient_non_reduced(&p));
    }

    #[test]
    fn profiles_are_negation_symmetric() {
        for (_, r) in catalog(2).unwrap() {
            let p = quotient(&r);
            assert_eq!(p.short.negated(), p.short);
            assert_eq!(p.long.negated(), p.long);
            if let Some(m) = &p.middle {
                assert_eq!(m.negated(), *m);
            }
        }
    }
}
