//! The catalog of marked elliptic root systems built on `BC_l` whose affine
//! quotient is non-reduced, plus axiom verification.
//!
//! A [`MarkedERS`] is the rank together with one translation set per length
//! class; the full root set is
//! `(BC_s + short) u (BC_m + middle) u (BC_l + long)` inside `R^{l+2}`, with
//! the marking fixed as the line through `a` (the first radical coordinate).
//! The catalog has 41 named types: 35 non-reduced ones and 6 reduced ones
//! whose quotient is still non-reduced.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::coset::{generates_full_lattice, ResidueSet};
use crate::error::{Error, Result};
use crate::finite::{classify, closure_conditions, finite_roots, inner, FiniteRoot, LengthClass};
use crate::quotient::AffineFamily;

/// Catalog label. `P` in a name stands for the primed variant, `Star` for
/// `*`, and the trailing number of `..2_1` / `..2_2` is the middle-class
/// variant argument.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[allow(non_camel_case_types)]
pub enum ErsType {
    // Quotient of type BCC.
    Bcc1,
    Bcc1Star0,
    Bcc1Star0P,
    Bcc2_1,
    Bcc2_2,
    Bcc2Star0,
    Bcc2Star1,
    Bcc4,
    // Quotient of type C^vee BC.
    CvBc1,
    CvBc2_1,
    CvBc2_2,
    CvBc2Star0,
    CvBc2Star1,
    CvBc4,
    CvBc4Star0,
    CvBc4Star0P,
    // Quotient of type BB^vee.
    BBv1,
    BBv2_1,
    BBv2_2,
    BBv4,
    BBv2StarIso,
    // Quotient of type C^vee C.
    CvC1,
    CvC1Star0,
    CvC1Star1,
    CvC2_1,
    CvC2_2,
    CvC2StarS,
    CvC2StarL,
    CvC2Star0,
    CvC2Star1,
    CvC2Star1P,
    CvC2Diamond,
    CvC4,
    CvC4Star0,
    CvC4Star1,
    // Reduced systems with non-reduced quotient.
    Bc12,
    Bc11Star,
    Bc42,
    Bc44Star,
    Bc22Sigma1,
    Bc22Sigma2,
}

use ErsType::*;

impl ErsType {
    /// Catalog order: non-reduced types grouped by quotient family, then the
    /// reduced types.
    pub const ALL: [ErsType; 41] = [
        Bcc1, Bcc1Star0, Bcc1Star0P, Bcc2_1, Bcc2_2, Bcc2Star0, Bcc2Star1, Bcc4, CvBc1, CvBc2_1,
        CvBc2_2, CvBc2Star0, CvBc2Star1, CvBc4, CvBc4Star0, CvBc4Star0P, BBv1, BBv2_1, BBv2_2,
        BBv4, BBv2StarIso, CvC1, CvC1Star0, CvC1Star1, CvC2_1, CvC2_2, CvC2StarS, CvC2StarL,
        CvC2Star0, CvC2Star1, CvC2Star1P, CvC2Diamond, CvC4, CvC4Star0, CvC4Star1, Bc12, Bc11Star,
        Bc42, Bc44Star, Bc22Sigma1, Bc22Sigma2,
    ];

    pub fn ascii_name(self) -> &'static str {
        match self {
            Bcc1 => "BCC(1)",
            Bcc1Star0 => "BCC(1)*0",
            Bcc1Star0P => "BCC(1)*0'",
            Bcc2_1 => "BCC(2)(1)",
            Bcc2_2 => "BCC(2)(2)",
            Bcc2Star0 => "BCC(2)*0",
            Bcc2Star1 => "BCC(2)*1",
            Bcc4 => "BCC(4)",
            CvBc1 => "CvBC(1)",
            CvBc2_1 => "CvBC(2)(1)",
            CvBc2_2 => "CvBC(2)(2)",
            CvBc2Star0 => "CvBC(2)*0",
            CvBc2Star1 => "CvBC(2)*1",
            CvBc4 => "CvBC(4)",
            CvBc4Star0 => "CvBC(4)*0",
            CvBc4Star0P => "CvBC(4)*0'",
            BBv1 => "BBv(1)",
            BBv2_1 => "BBv(2)(1)",
            BBv2_2 => "BBv(2)(2)",
            BBv4 => "BBv(4)",
            BBv2StarIso => "BBv(2)*",
            CvC1 => "CvC(1)",
            CvC1Star0 => "CvC(1)*0",
            CvC1Star1 => "CvC(1)*1",
            CvC2_1 => "CvC(2)(1)",
            CvC2_2 => "CvC(2)(2)",
            CvC2StarS => "CvC(2)*s",
            CvC2StarL => "CvC(2)*l",
            CvC2Star0 => "CvC(2)*0",
            CvC2Star1 => "CvC(2)*1",
            CvC2Star1P => "CvC(2)*1'",
            CvC2Diamond => "CvC(2)diamond",
            CvC4 => "CvC(4)",
            CvC4Star0 => "CvC(4)*0",
            CvC4Star1 => "CvC(4)*1",
            Bc12 => "BC(1,2)",
            Bc11Star => "BC(1,1)*",
            Bc42 => "BC(4,2)",
            Bc44Star => "BC(4,4)*",
            Bc22Sigma1 => "BC(2,2)sigma(1)",
            Bc22Sigma2 => "BC(2,2)sigma(2)",
        }
    }

    /// Mathematical notation for tables and docs.
    pub fn display_name(self) -> &'static str {
        match self {
            Bcc1 => "BCC^(1)",
            Bcc1Star0 => "BCC^(1)*_0",
            Bcc1Star0P => "BCC^(1)*_0'",
            Bcc2_1 => "BCC^(2)(1)",
            Bcc2_2 => "BCC^(2)(2)",
            Bcc2Star0 => "BCC^(2)*_0",
            Bcc2Star1 => "BCC^(2)*_1",
            Bcc4 => "BCC^(4)",
            CvBc1 => "C∨BC^(1)",
            CvBc2_1 => "C∨BC^(2)(1)",
            CvBc2_2 => "C∨BC^(2)(2)",
            CvBc2Star0 => "C∨BC^(2)*_0",
            CvBc2Star1 => "C∨BC^(2)*_1",
            CvBc4 => "C∨BC^(4)",
            CvBc4Star0 => "C∨BC^(4)*_0",
            CvBc4Star0P => "C∨BC^(4)*_0'",
            BBv1 => "BB∨^(1)",
            BBv2_1 => "BB∨^(2)(1)",
            BBv2_2 => "BB∨^(2)(2)",
            BBv4 => "BB∨^(4)",
            BBv2StarIso => "BB∨_2^(2)*",
            CvC1 => "C∨C^(1)",
            CvC1Star0 => "C∨C^(1)*_0",
            CvC1Star1 => "C∨C^(1)*_1",
            CvC2_1 => "C∨C^(2)(1)",
            CvC2_2 => "C∨C^(2)(2)",
            CvC2StarS => "C∨C^(2)*_s",
            CvC2StarL => "C∨C^(2)*_l",
            CvC2Star0 => "C∨C^(2)*_0",
            CvC2Star1 => "C∨C^(2)*_1",
            CvC2Star1P => "C∨C^(2)*_1'",
            CvC2Diamond => "C∨C^(2)◇",
            CvC4 => "C∨C^(4)",
            CvC4Star0 => "C∨C^(4)*_0",
            CvC4Star1 => "C∨C^(4)*_1",
            Bc12 => "BC^(1,2)",
            Bc11Star => "BC^(1,1)*",
            Bc42 => "BC^(4,2)",
            Bc44Star => "BC^(4,4)*",
            Bc22Sigma1 => "BC^(2,2)σ(1)",
            Bc22Sigma2 => "BC^(2,2)σ(2)",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|t| t.ascii_name() == name)
            .ok_or_else(|| Error::UnknownType(name.to_string()))
    }

    /// Reduced systems (their quotient is still non-reduced).
    pub fn is_reduced_type(self) -> bool {
        matches!(self, Bc12 | Bc11Star | Bc42 | Bc44Star | Bc22Sigma1 | Bc22Sigma2)
    }

    /// Family of the affine quotient.
    pub fn family(self) -> AffineFamily {
        match self {
            Bcc1 | Bcc1Star0 | Bcc1Star0P | Bcc2_1 | Bcc2_2 | Bcc2Star0 | Bcc2Star1 | Bcc4
            | Bc12 | Bc11Star => AffineFamily::Bcc,
            CvBc1 | CvBc2_1 | CvBc2_2 | CvBc2Star0 | CvBc2Star1 | CvBc4 | CvBc4Star0
            | CvBc4Star0P | Bc42 | Bc44Star => AffineFamily::CvBc,
            BBv1 | BBv2_1 | BBv2_2 | BBv4 | BBv2StarIso | Bc22Sigma1 => AffineFamily::BBv,
            CvC1 | CvC1Star0 | CvC1Star1 | CvC2_1 | CvC2_2 | CvC2StarS | CvC2StarL | CvC2Star0
            | CvC2Star1 | CvC2Star1P | CvC2Diamond | CvC4 | CvC4Star0 | CvC4Star1 | Bc22Sigma2 => {
                AffineFamily::CvC
            }
        }
    }

    /// Rank constraint as `(min, max)`; `max` is `None` when unbounded.
    pub fn rank_range(self) -> (u32, Option<u32>) {
        match self {
            BBv2StarIso => (2, Some(2)),
            Bcc2_1 | CvBc2_1 | CvC2_1 | BBv1 | BBv2_1 | BBv2_2 | BBv4 | Bc22Sigma1 => (2, None),
            _ => (1, None),
        }
    }

    pub fn admissible(self, rank: u32) -> bool {
        let (lo, hi) = self.rank_range();
        rank >= lo && hi.map_or(true, |h| rank <= h)
    }

    fn rank_constraint(self) -> String {
        match self.rank_range() {
            (lo, None) => format!("requires rank >= {lo}"),
            (lo, Some(hi)) if lo == hi => format!("requires rank = {lo}"),
            (lo, Some(hi)) => format!("requires {lo} <= rank <= {hi}"),
        }
    }
}

impl fmt::Display for ErsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ascii_name())
    }
}

impl Serialize for ErsType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.ascii_name())
    }
}

/// A marked elliptic root system of `BC` shape: rank plus one translation
/// set per length class. The middle set is empty exactly at rank 1, and the
/// short and long sets are nonempty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkedERS {
    rank: u32,
    name: Option<String>,
    short: ResidueSet,
    middle: ResidueSet,
    long: ResidueSet,
}

impl MarkedERS {
    /// Validating constructor, used for descriptor input.
    pub fn new(
        rank: u32,
        name: Option<String>,
        short: ResidueSet,
        middle: ResidueSet,
        long: ResidueSet,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRank(rank));
        }
        if short.is_empty() || long.is_empty() {
            return Err(Error::Descriptor(
                "short and long translation sets must be nonempty".into(),
            ));
        }
        if (rank == 1) != middle.is_empty() {
            return Err(Error::Descriptor(
                "middle translation set must be empty exactly at rank 1".into(),
            ));
        }
        Ok(MarkedERS {
            rank,
            name,
            short,
            middle,
            long,
        })
    }

    /// Constructor without shape validation, for building deliberately
    /// broken systems in tests and mutation analysis.
    pub fn new_unchecked(
        rank: u32,
        name: Option<String>,
        short: ResidueSet,
        middle: ResidueSet,
        long: ResidueSet,
    ) -> Self {
        MarkedERS {
            rank,
            name,
            short,
            middle,
            long,
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: Option<String>) -> Self {
        self.name = name;
        self
    }

    pub fn translation(&self, class: LengthClass) -> &ResidueSet {
        match class {
            LengthClass::Short => &self.short,
            LengthClass::Middle => &self.middle,
            LengthClass::Long => &self.long,
        }
    }

    /// Same rank and translation sets, ignoring the name.
    pub fn same_root_system(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.short == other.short
            && self.middle == other.middle
            && self.long == other.long
    }

    /// All roots `alpha + m*a + n*b` with `|m|, |n| <= bound`, in a
    /// deterministic order. Each entry has `rank + 2` coordinates, the last
    /// two being `(m, n)`.
    pub fn roots_in_window(&self, bound: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let roots = finite_roots(self.rank).expect("rank validated");
        for class in LengthClass::ALL {
            let t = self.translation(class);
            if t.is_empty() {
                continue;
            }
            for root in roots.iter().filter(|r| r.class() == class) {
                for m in -bound..=bound {
                    for n in -bound..=bound {
                        if t.contains((m, n)) {
                            let mut v = root.coords().to_vec();
                            v.push(m);
                            v.push(n);
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Outcome of one verification step.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    fn ok() -> Self {
        CheckResult {
            pass: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        CheckResult {
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Per-axiom verdicts of the symbolic checker.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AxiomReport {
    /// Root lattice full: translations generate `Z^2` and the finite parts
    /// span the rank-`l` space.
    pub axiom1_full_lattice: CheckResult,
    /// Roots are anisotropic; holds by construction for `BC` shapes.
    pub axiom2_anisotropic: CheckResult,
    /// Integrality of all coroot pairings.
    pub axiom3_integral: CheckResult,
    /// Reflection closure, checked as coset inclusions; exact for the full
    /// infinite root set.
    pub axiom4_closure: CheckResult,
    /// Irreducibility via connectivity of the pairing graph.
    pub axiom5_irreducible: CheckResult,
    /// The marking line meets the root lattice in a full sublattice.
    pub marking: CheckResult,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.axiom1_full_lattice.pass
            && self.axiom2_anisotropic.pass
            && self.axiom3_integral.pass
            && self.axiom4_closure.pass
            && self.axiom5_irreducible.pass
            && self.marking.pass
    }

    pub fn first_failure(&self) -> Option<(&'static str, &str)> {
        let items = [
            ("axiom1", &self.axiom1_full_lattice),
            ("axiom2", &self.axiom2_anisotropic),
            ("axiom3", &self.axiom3_integral),
            ("axiom4", &self.axiom4_closure),
            ("axiom5", &self.axiom5_irreducible),
            ("marking", &self.marking),
        ];
        for (name, check) in items {
            if !check.pass {
                return Some((name, check.witness.as_deref().unwrap_or("")));
            }
        }
        None
    }
}

/// Verdicts of the windowed brute-force oracle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowedReport {
    pub closure: CheckResult,
    pub integrality: CheckResult,
    pub connectivity: CheckResult,
}

impl WindowedReport {
    pub fn pass(&self) -> bool {
        self.closure.pass && self.integrality.pass && self.connectivity.pass
    }
}

fn product(ma: u8, mb: u8) -> ResidueSet {
    ResidueSet::lattice(ma, mb)
}

fn odd_a(mb: u8) -> ResidueSet {
    ResidueSet::make((2, mb), &[(1, 0)]).expect("static set")
}

/// Long translation set of the diamond type: `{ m*a + 2n*b : m - n even }`.
fn diamond_long() -> ResidueSet {
    ResidueSet::make((2, 4), &[(0, 0), (1, 2)]).expect("static set")
}

/// Translation sets `(short, middle, long)` of a catalog type at rank >= 2.
fn translations(t: ErsType) -> (ResidueSet, ResidueSet, ResidueSet) {
    let l = ResidueSet::l_set;
    let ls = ResidueSet::l_set_scaled;
    let p = product;
    match t {
        Bcc1 => (p(1, 1), p(1, 1), p(1, 1)),
        Bcc1Star0 => (p(1, 1), p(1, 1), l(0, 0)),
        Bcc1Star0P => (p(1, 1), p(1, 1), l(0, 1)),
        Bcc2_1 => (p(1, 1), p(1, 1), p(2, 1)),
        Bcc2_2 => (p(1, 1), p(2, 1), p(2, 1)),
        Bcc2Star0 => (p(1, 1), p(2, 1), ls(0, 0, 1, 2)),
        Bcc2Star1 => (p(1, 1), p(2, 1), ls(1, 1, 1, 2)),
        Bcc4 => (p(1, 1), p(2, 1), p(4, 1)),
        CvBc1 => (p(1, 1), p(1, 2), p(1, 4)),
        CvBc2_1 => (p(1, 1), p(1, 2), p(2, 4)),
        CvBc2_2 => (p(1, 1), p(2, 2), p(2, 4)),
        CvBc2Star0 => (l(0, 0), p(2, 2), p(2, 4)),
        CvBc2Star1 => (l(1, 1), p(2, 2), p(2, 4)),
        CvBc4 => (p(1, 1), p(2, 2), p(4, 4)),
        CvBc4Star0 => (l(0, 0), p(2, 2), p(4, 4)),
        CvBc4Star0P => (l(0, 1), p(2, 2), p(4, 4)),
        BBv1 => (p(1, 1), p(1, 1), p(1, 2)),
        BBv2_1 => (p(1, 1), p(1, 1), p(2, 2)),
        BBv2_2 => (p(1, 1), p(2, 1), p(2, 2)),
        BBv4 => (p(1, 1), p(2, 1), p(4, 2)),
        BBv2StarIso => (p(1, 1), l(0, 0), p(2, 2)),
        CvC1 => (p(1, 1), p(1, 2), p(1, 2)),
        CvC1Star0 => (p(1, 1), p(1, 2), ls(0, 0, 2, 1)),
        CvC1Star1 => (p(1, 1), p(1, 2), ls(1, 1, 2, 1)),
        CvC2_1 => (p(1, 1), p(1, 2), p(2, 2)),
        CvC2_2 => (p(1, 1), p(2, 2), p(2, 2)),
        CvC2StarS => (l(0, 0), p(2, 2), p(2, 2)),
        CvC2StarL => (p(1, 1), p(2, 2), ls(0, 0, 2, 2)),
        CvC2Star0 => (l(0, 0), p(2, 2), ls(0, 0, 2, 2)),
        CvC2Star1 => (l(0, 0), p(2, 2), ls(1, 1, 2, 2)),
        CvC2Star1P => (l(0, 0), p(2, 2), ls(1, 0, 2, 2)),
        CvC2Diamond => (p(1, 1), p(1, 2), diamond_long()),
        CvC4 => (p(1, 1), p(2, 2), p(4, 2)),
        CvC4Star0 => (l(0, 0), p(2, 2), p(4, 2)),
        CvC4Star1 => (l(1, 1), p(2, 2), p(4, 2)),
        Bc12 => (p(1, 1), p(1, 1), odd_a(1)),
        Bc11Star => (p(1, 1), p(1, 1), l(1, 1)),
        Bc42 => (p(1, 1), p(1, 2), odd_a(4)),
        Bc44Star => (l(1, 1), p(2, 2), p(4, 4)),
        Bc22Sigma1 => (p(1, 1), p(1, 1), odd_a(2)),
        Bc22Sigma2 => (p(1, 1), p(1, 2), odd_a(2)),
    }
}

/// Builds a named catalog entry at the given rank.
pub fn build(t: ErsType, rank: u32) -> Result<MarkedERS> {
    if rank == 0 {
        return Err(Error::InvalidRank(rank));
    }
    if !t.admissible(rank) {
        return Err(Error::InadmissibleType {
            name: t.ascii_name().to_string(),
            rank,
            constraint: t.rank_constraint(),
        });
    }
    let (short, middle, long) = translations(t);
    let middle = if rank == 1 { ResidueSet::empty() } else { middle };
    MarkedERS::new(rank, Some(t.ascii_name().to_string()), short, middle, long)
}

/// All admissible catalog entries at the given rank, in catalog order.
pub fn catalog(rank: u32) -> Result<Vec<(ErsType, MarkedERS)>> {
    if rank == 0 {
        return Err(Error::InvalidRank(rank));
    }
    Ok(ErsType::ALL
        .iter()
        .copied()
        .filter(|t| t.admissible(rank))
        .map(|t| (t, build(t, rank).expect("admissible")))
        .collect())
}

/// Symbolic verification of the root system axioms.
///
/// Closure is decided exactly for the infinite root set: for every condition
/// `(c1, c2, k)` coming from the finite reflections, the translation set of
/// `c2` must absorb `k` times the translation set of `c1`.
pub fn check_axioms_symbolic(r: &MarkedERS) -> AxiomReport {
    let roots = finite_roots(r.rank()).expect("positive rank");
    let present: Vec<LengthClass> = LengthClass::ALL
        .into_iter()
        .filter(|&c| !r.translation(c).is_empty())
        .collect();

    // Axiom 1: translations generate Z^2 and finite parts span rank-l space.
    let axiom1 = {
        let sets: Vec<&ResidueSet> = present.iter().map(|&c| r.translation(c)).collect();
        if sets.is_empty() {
            CheckResult::fail("no nonempty length class".into())
        } else if !generates_full_lattice(&sets) {
            CheckResult::fail("translation sets do not generate the radical lattice".into())
        } else if !finite_parts_span(&roots, &present, r.rank()) {
            CheckResult::fail("finite parts do not span the reflection space".into())
        } else {
            CheckResult::ok()
        }
    };

    // Axiom 2: every finite part has nonzero squared length by construction.
    let axiom2 = CheckResult::ok();

    // Axiom 3: coroot pairings are integral on the finite parts; radical
    // summands vanish under the form.
    let axiom3 = {
        let mut result = CheckResult::ok();
        'outer: for a in &roots {
            for b in &roots {
                if (2 * inner(a, b)) % inner(a, a) != 0 {
                    result = CheckResult::fail(format!(
                        "non-integral pairing between {:?} and {:?}",
                        a.coords(),
                        b.coords()
                    ));
                    break 'outer;
                }
            }
        }
        result
    };

    // Axiom 4: reflection closure as residue-set inclusions.
    let axiom4 = {
        let mut result = CheckResult::ok();
        let conditions = closure_conditions(r.rank()).expect("positive rank");
        for cond in conditions {
            let reflecting = r.translation(cond.reflecting);
            let reflected = r.translation(cond.reflected);
            if reflecting.is_empty() || reflected.is_empty() {
                continue;
            }
            let image = reflected.scale_subtract(cond.k, reflecting);
            if !image.is_subset(reflected) {
                let bad = image
                    .residues()
                    .into_iter()
                    .find(|&(a, b)| !reflected.contains((i64::from(a), i64::from(b))))
                    .unwrap_or((0, 0));
                result = CheckResult::fail(format!(
                    "reflecting {} into {} with k={} escapes: residue ({},{}) of {} not in {}",
                    cond.reflecting, cond.reflected, cond.k, bad.0, bad.1, image, reflected
                ));
                break;
            }
        }
        result
    };

    // Axiom 5: the pairing graph on finite roots of nonempty classes must be
    // connected. Verified, not assumed: an empty middle class at rank >= 2
    // genuinely disconnects the index components.
    let axiom5 = {
        let nodes: Vec<&FiniteRoot> = roots
            .iter()
            .filter(|root| present.contains(&root.class()))
            .collect();
        if nodes.is_empty() {
            CheckResult::fail("no roots present".into())
        } else if let Some((i, j)) = disconnected_pair(&nodes) {
            CheckResult::fail(format!(
                "orthogonal decomposition: {:?} and {:?} lie in different components",
                nodes[i].coords(),
                nodes[j].coords()
            ))
        } else {
            CheckResult::ok()
        }
    };

    // Marking: some nonzero multiple of `a` lies in the group generated by
    // the translations. The group contains the vector (Ma, 0) of any
    // nonempty class, so only the all-empty degenerate case fails.
    let marking = {
        let mut gens: Vec<(i64, i64)> = Vec::new();
        for &c in &present {
            let set = r.translation(c);
            let (ma, mb) = set.modulus();
            gens.push((i64::from(ma), 0));
            gens.push((0, i64::from(mb)));
            for (ra, rb) in set.residues() {
                gens.push((i64::from(ra), i64::from(rb)));
            }
        }
        if marking_meets_lattice(&gens) {
            CheckResult::ok()
        } else {
            CheckResult::fail("marking line misses the root lattice".into())
        }
    };

    AxiomReport {
        axiom1_full_lattice: axiom1,
        axiom2_anisotropic: axiom2,
        axiom3_integral: axiom3,
        axiom4_closure: axiom4,
        axiom5_irreducible: axiom5,
        marking,
    }
}

/// Whether the group generated by `gens` contains a nonzero vector on the
/// `a` axis.
fn marking_meets_lattice(gens: &[(i64, i64)]) -> bool {
    // Smallest positive b-part combination is g = gcd of b-parts; eliminating
    // it from any generator with nonzero a-part yields an axis vector. If all
    // b-parts are zero the generators already lie on the axis.
    let has_a = gens.iter().any(|&(x, _)| x != 0);
    if !has_a {
        return false;
    }
    // (Ma, 0) is itself a generator whenever a class is nonempty; check for a
    // direct axis vector first, then fall back to elimination.
    if gens.iter().any(|&(x, y)| x != 0 && y == 0) {
        return true;
    }
    // Eliminate b-parts pairwise: any two generators (x1,y1),(x2,y2) give
    // (x1*y2 - x2*y1, 0).
    for (i, &(x1, y1)) in gens.iter().enumerate() {
        for &(x2, y2) in gens.iter().skip(i + 1) {
            if x1 * y2 - x2 * y1 != 0 {
                return true;
            }
        }
    }
    false
}

fn finite_parts_span(roots: &[FiniteRoot], present: &[LengthClass], rank: u32) -> bool {
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for root in roots.iter().filter(|r| present.contains(&r.class())) {
        let mut v = root.coords().to_vec();
        // Fraction-free elimination against the current basis.
        for b in &basis {
            let pivot = b.iter().position(|&x| x != 0).expect("nonzero basis row");
            if v[pivot] != 0 {
                let (p, q) = (b[pivot], v[pivot]);
                for i in 0..v.len() {
                    v[i] = v[i] * p - b[i] * q;
                }
            }
        }
        if v.iter().any(|&x| x != 0) {
            basis.push(v);
        }
        if basis.len() == rank as usize {
            return true;
        }
    }
    basis.len() == rank as usize
}

fn disconnected_pair(nodes: &[&FiniteRoot]) -> Option<(usize, usize)> {
    let n = nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if inner(nodes[i], nodes[j]) != 0 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let root0 = find(&mut parent, 0);
    (1..n)
        .find(|&i| find(&mut parent, i) != root0)
        .map(|i| (0, i))
}

/// Brute-force oracle: checks reflection closure, pairing integrality and
/// connectivity literally on the roots inside the window. Membership of a
/// reflected root is tested against the full infinite set, so a failure here
/// is definitive.
pub fn check_axioms_windowed(r: &MarkedERS, bound: i64) -> WindowedReport {
    let window = r.roots_in_window(bound);
    let mut closure = CheckResult::ok();
    let mut integrality = CheckResult::ok();

    'outer: for alpha in &window {
        let (fa, ra) = split(alpha);
        let sq: i64 = fa.iter().map(|c| c * c).sum();
        for beta in &window {
            let (fb, rb) = split(beta);
            let num: i64 = 2 * fa.iter().zip(fb).map(|(x, y)| x * y).sum::<i64>();
            if num % sq != 0 {
                integrality = CheckResult::fail(format!(
                    "pairing of {beta:?} with coroot of {alpha:?} is not integral"
                ));
                break 'outer;
            }
            let k = num / sq;
            let image_finite: Vec<i64> = fb.iter().zip(fa).map(|(x, y)| x - k * y).collect();
            let image_rad = (rb.0 - k * ra.0, rb.1 - k * ra.1);
            let class = classify(&image_finite).expect("reflection preserves BC shapes");
            if !r.translation(class).contains(image_rad) {
                closure = CheckResult::fail(format!(
                    "reflection of {beta:?} by {alpha:?} leaves the root set (k={k})"
                ));
                break 'outer;
            }
        }
    }

    let connectivity = if window.is_empty() {
        CheckResult::fail("empty window".into())
    } else {
        match window_disconnected(&window) {
            Some((i, j)) => CheckResult::fail(format!(
                "window roots {:?} and {:?} are in different components",
                window[i], window[j]
            )),
            None => CheckResult::ok(),
        }
    };

    WindowedReport {
        closure,
        integrality,
        connectivity,
    }
}

fn split(v: &[i64]) -> (&[i64], (i64, i64)) {
    let l = v.len() - 2;
    (&v[..l], (v[l], v[l + 1]))
}

fn window_disconnected(window: &[Vec<i64>]) -> Option<(usize, usize)> {
    let n = window.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        let (fi, _) = split(&window[i]);
        for j in (i + 1)..n {
            let (fj, _) = split(&window[j]);
            let dot: i64 = fi.iter().zip(fj).map(|(x, y)| x * y).sum();
            if dot != 0 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let root0 = find(&mut parent, 0);
    (1..n)
        .find(|&i| find(&mut parent, i) != root0)
        .map(|i| (0, i))
}

/// Whether no root has its double or half inside the system. A short root
/// `e_i + v` doubles into the long class iff `2v` lies in the long set, and
/// middle roots never double (squared length 8 is not a root length), so
/// this reduces to disjointness of `2 * short` from `long`.
pub fn is_reduced(r: &MarkedERS) -> bool {
    let short = r.translation(LengthClass::Short);
    let long = r.translation(LengthClass::Long);
    // Both memberships are 8-periodic, so a fundamental domain suffices.
    for a in 0..8i64 {
        for b in 0..8i64 {
            if short.contains((a, b)) && long.contains((2 * a, 2 * b)) {
                return false;
            }
        }
    }
    true
}

/// Projection of a residue set to one axis, as `(residues, modulus)`;
/// axis 0 projects to the `a` coefficient, axis 1 to `b`.
fn axis_profile(set: &ResidueSet, axis: usize) -> (Vec<u8>, u8) {
    let modulus = if axis == 0 { set.modulus().0 } else { set.modulus().1 };
    let mut seen = BTreeSet::new();
    for (ra, rb) in set.residues() {
        seen.insert(if axis == 0 { ra } else { rb });
    }
    (seen.into_iter().collect(), modulus)
}

/// Represents a 1-d residue set as a coset `r + d*Z` if possible.
fn coset_form(residues: &[u8], modulus: u8) -> Option<(u8, u8)> {
    let first = *residues.first()?;
    let mut d = modulus;
    for &r in residues {
        d = gcd_u8(d, r.wrapping_sub(first) % modulus);
    }
    if d == 0 {
        d = modulus;
    }
    let expected = (u32::from(modulus) / u32::from(d)) as usize;
    if residues.len() != expected {
        return None;
    }
    let base = first % d.max(1);
    if residues.iter().all(|&r| r % d == base % d) {
        Some((d, base))
    } else {
        None
    }
}

fn gcd_u8(a: u8, b: u8) -> u8 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Tier numbers `(t1, t2)`: how much the long-class translation lattice
/// shrinks relative to the short class in the `b` direction (`t1`) and the
/// `a` direction (`t2`). Each class projection must be a coset of a
/// subgroup; otherwise the system is not of classical profile and `None` is
/// returned.
pub fn tier_numbers(r: &MarkedERS) -> Option<(u32, u32)> {
    let short = r.translation(LengthClass::Short);
    let long = r.translation(LengthClass::Long);
    let mut tiers = [0u32; 2];
    for axis in 0..2 {
        let (sres, smod) = axis_profile(short, axis);
        let (lres, lmod) = axis_profile(long, axis);
        let (ds, _) = coset_form(&sres, smod)?;
        let (dl, _) = coset_form(&lres, lmod)?;
        if dl % ds != 0 {
            return None;
        }
        tiers[axis] = u32::from(dl / ds);
    }
    // tiers[1] is the b direction (t1), tiers[0] the a direction (t2).
    Some((tiers[1], tiers[0]))
}

#[derive(Serialize, Deserialize)]
struct ClassesRepr {
    short: ResidueSet,
    middle: Option<ResidueSet>,
    long: ResidueSet,
}

/// Serialized descriptor: `{"name", "rank", "classes": {short, middle, long}}`
/// with `middle` null at rank 1.
#[derive(Serialize, Deserialize)]
pub struct Descriptor {
    name: String,
    rank: u32,
    classes: ClassesRepr,
}

impl MarkedERS {
    pub fn to_descriptor(&self) -> Descriptor {
        Descriptor {
            name: self.name.clone().unwrap_or_else(|| "custom".into()),
            rank: self.rank,
            classes: ClassesRepr {
                short: self.short.clone(),
                middle: if self.middle.is_empty() {
                    None
                } else {
                    Some(self.middle.clone())
                },
                long: self.long.clone(),
            },
        }
    }

    pub fn from_descriptor(d: Descriptor) -> Result<Self> {
        let middle = d.classes.middle.unwrap_or_else(ResidueSet::empty);
        MarkedERS::new(
            d.rank,
            Some(d.name),
            d.classes.short,
            middle,
            d.classes.long,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_descriptor()).expect("descriptor serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: Descriptor =
            serde_json::from_str(s).map_err(|e| Error::Descriptor(e.to_string()))?;
        Self::from_descriptor(d)
    }
}
