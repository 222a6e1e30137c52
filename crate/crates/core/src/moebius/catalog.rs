use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::{FinGroup, MoebiusError, MoebiusT, SpherePoint};
use crate::scalars::{CycNum, Scalar};

/// The five families of finite Möbius groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl GroupKind {
    pub fn order(&self) -> usize {
        match *self {
            GroupKind::Cyclic(n) => n as usize,
            GroupKind::Dihedral(n) => 2 * n as usize,
            GroupKind::Tetrahedral => 12,
            GroupKind::Octahedral => 24,
            GroupKind::Icosahedral => 60,
        }
    }

    /// Parse `Z4`, `D3`, `T`, `O`, `I`, or a bare `Z`/`D` with a separate `n`.
    pub fn parse(name: &str, n: Option<u32>) -> Result<GroupKind, MoebiusError> {
        let bad = || MoebiusError::UnknownGroup(name.to_string());
        let (head, tail) = name.split_at(name.len().min(1));
        let num = if tail.is_empty() {
            n
        } else {
            Some(tail.parse::<u32>().map_err(|_| bad())?)
        };
        match (head, num) {
            ("Z", Some(k)) if k >= 1 => Ok(GroupKind::Cyclic(k)),
            ("D", Some(k)) if k >= 2 => Ok(GroupKind::Dihedral(k)),
            ("T", None) => Ok(GroupKind::Tetrahedral),
            ("O", None) => Ok(GroupKind::Octahedral),
            ("I", None) => Ok(GroupKind::Icosahedral),
            _ => Err(bad()),
        }
    }

    /// Defining relations as `(word in generators s=0, t=1, exponent)`.
    pub fn relations(&self) -> Vec<(&'static str, Vec<usize>, usize)> {
        match *self {
            GroupKind::Cyclic(n) => vec![("s^N", vec![0], n as usize)],
            GroupKind::Dihedral(n) => vec![
                ("s^N", vec![0], n as usize),
                ("t^2", vec![1], 2),
                ("(st)^2", vec![0, 1], 2),
            ],
            GroupKind::Tetrahedral => vec![
                ("s^2", vec![0], 2),
                ("t^3", vec![1], 3),
                ("(st)^3", vec![0, 1], 3),
            ],
            GroupKind::Octahedral => vec![
                ("s^4", vec![0], 4),
                ("t^2", vec![1], 2),
                ("(st)^3", vec![0, 1], 3),
            ],
            GroupKind::Icosahedral => vec![
                ("s^5", vec![0], 5),
                ("t^2", vec![1], 2),
                ("(st)^3", vec![0, 1], 3),
            ],
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "Z{n}"),
            GroupKind::Dihedral(n) => write!(f, "D{n}"),
            GroupKind::Tetrahedral => write!(f, "T"),
            GroupKind::Octahedral => write!(f, "O"),
            GroupKind::Icosahedral => write!(f, "I"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = MoebiusError;
    fn from_str(s: &str) -> Result<GroupKind, MoebiusError> {
        GroupKind::parse(s, None)
    }
}

/// Smallest conductor hosting the generators and the degenerate orbit seeds.
pub fn default_conductor(kind: GroupKind) -> u32 {
    match kind {
        GroupKind::Cyclic(n) | GroupKind::Dihedral(n) => n.lcm(&4),
        GroupKind::Tetrahedral => 12,
        GroupKind::Octahedral => 8,
        GroupKind::Icosahedral => 20,
    }
}

/// The two generators `σ_s, σ_t` (only `σ_s` for cyclic groups) at conductor `l`.
pub fn generators(kind: GroupKind, l: u32) -> Result<Vec<MoebiusT>, MoebiusError> {
    let root = |k: u32, e: i64| -> Result<Scalar, MoebiusError> {
        if !l.is_multiple_of(k) {
            return Err(MoebiusError::Scalar(crate::scalars::ScalarError::TowerMismatch(
                format!("ζ_{k} is not in Q(ζ_{l})"),
            )));
        }
        Ok(Scalar::Cyc(CycNum::root(l, e * (l / k) as i64)))
    };
    let s = |v: i64| Scalar::from_int(l, v);
    Ok(match kind {
        GroupKind::Cyclic(n) => vec![MoebiusT::scaling(root(n, 1)?)],
        GroupKind::Dihedral(n) => vec![MoebiusT::scaling(root(n, 1)?), MoebiusT::inversion(l)],
        GroupKind::Tetrahedral => {
            let i = root(4, 1)?;
            vec![
                MoebiusT::scaling(s(-1)),
                MoebiusT::new(s(1), i.clone(), s(1), i.neg_ref())?,
            ]
        }
        GroupKind::Octahedral => vec![
            MoebiusT::scaling(root(4, 1)?),
            MoebiusT::from_ints(l, 1, 1, 1, -1)?,
        ],
        GroupKind::Icosahedral => {
            let e2 = root(5, 2)?;
            let e3 = root(5, 3)?;
            let c = &e2 + &e3;
            vec![
                MoebiusT::scaling(root(5, 1)?),
                MoebiusT::new(c.clone(), s(1), s(1), c.neg_ref())?,
            ]
        }
    })
}

/// The catalog group at its default conductor.
pub fn catalog(kind: GroupKind) -> Result<FinGroup, MoebiusError> {
    catalog_with(kind, default_conductor(kind))
}

/// The catalog group over `Q(ζ_l)`.
pub fn catalog_with(kind: GroupKind, l: u32) -> Result<FinGroup, MoebiusError> {
    let gens = generators(kind, l)?;
    Ok(FinGroup::generate(&kind.to_string(), &gens, kind.order().max(1) * 2 + 4)?.with_kind(kind))
}

/// Smallest conductor hosting the generators alone.
pub fn generator_conductor(kind: GroupKind) -> u32 {
    match kind {
        GroupKind::Cyclic(n) | GroupKind::Dihedral(n) => n,
        GroupKind::Tetrahedral | GroupKind::Octahedral => 4,
        GroupKind::Icosahedral => 5,
    }
}

/// Distinguished seed points by name: `0`, `inf`, `1`, `-1`, `i`, `face`,
/// `face2`, `edge`, or any integer.
///
/// `face` is the vertex of the dual polyhedron (`γ₁` in the tetrahedral,
/// octahedral and icosahedral cases), `edge` the middle of an edge.
pub fn named_point(kind: GroupKind, name: &str, l: u32) -> Result<SpherePoint, MoebiusError> {
    let root = |k: u32, e: i64| -> Result<Scalar, MoebiusError> {
        if !l.is_multiple_of(k) {
            return Err(MoebiusError::Scalar(crate::scalars::ScalarError::TowerMismatch(
                format!("point `{name}` needs ζ_{k}, not in Q(ζ_{l})"),
            )));
        }
        Ok(Scalar::Cyc(CycNum::root(l, e * (l / k) as i64)))
    };
    let one = Scalar::one(l);
    Ok(match (kind, name) {
        (_, "inf") | (_, "infinity") => SpherePoint::infinity(l),
        (_, "i") => SpherePoint::finite(root(4, 1)?),
        (GroupKind::Tetrahedral, "face") => {
            // ω + iω̄
            let w = root(3, 1)?;
            SpherePoint::finite(&w + &(&root(4, 1)? * &w.conj()))
        }
        (GroupKind::Tetrahedral, "face2") => {
            // iω + ω̄
            let w = root(3, 1)?;
            SpherePoint::finite(&(&root(4, 1)? * &w) + &w.conj())
        }
        (GroupKind::Octahedral, "face") => {
            let w = root(3, 1)?;
            SpherePoint::finite(&w + &(&root(4, 1)? * &w.conj()))
        }
        (GroupKind::Octahedral, "edge") => SpherePoint::finite(root(8, 1)?),
        (GroupKind::Icosahedral, "face") => {
            // 1 − ωε − ω̄ε̄
            let w = root(3, 1)?;
            let e = root(5, 1)?;
            SpherePoint::finite(&(&one - &(&w * &e)) - &(&w.conj() * &e.conj()))
        }
        (GroupKind::Icosahedral, "face2") => {
            let w = root(3, 1)?;
            let e = root(5, 1)?;
            SpherePoint::finite(&(&one - &(&w.conj() * &e)) - &(&w * &e.conj()))
        }
        (GroupKind::Icosahedral, "edge") => SpherePoint::finite(root(4, 1)?),
        (_, s) => match s.parse::<i64>() {
            Ok(v) => SpherePoint::from_int(l, v),
            Err(_) => return Err(MoebiusError::UnknownPoint(s.to_string())),
        },
    })
}

/// Conductor needed for a named point of a group (at least the group's own).
pub fn point_conductor(kind: GroupKind, name: &str) -> u32 {
    let base = default_conductor(kind);
    let need: u32 = match (kind, name) {
        (_, "i") => 4,
        (GroupKind::Tetrahedral, _) => 12,
        (GroupKind::Octahedral, "face") => 24,
        (GroupKind::Icosahedral, "face") | (GroupKind::Icosahedral, "face2") => 60,
        _ => 1,
    };
    base.lcm(&need)
}
