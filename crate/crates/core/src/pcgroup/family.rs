use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_quadratic_residue, smallest_nonresidue};
use crate::error::{Error, Result};

/// The p-groups used by the classification, plus elementary abelian and
/// cyclic groups for affine constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    /// `Z_p^n`.
    ElemAbelian(u32),
    /// `Z_{p^k}`.
    Cyclic(u32),
    /// `Z_p² ⋊ Z_p`, exponent p.
    Heis,
    /// `Z_{p²} ⋊ Z_p`.
    ModMax,
    G7,
    G8,
    G9,
    G10 {
        w: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupFamily {
    pub tag: FamilyTag,
    pub p: u32,
}

/// How a non-top pc generator is obtained from earlier ones. Automorphisms
/// are determined by the images of the top generators; the rest follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Derivation {
    /// `g_t = [g_a, g_b]`
    Commutator(usize, usize),
    /// `g_t = g_a^p`
    Power(usize),
}

/// Power-conjugate presentation data, exponent vectors in normal form.
pub(crate) struct Presentation {
    pub rank: usize,
    /// `power[i]` = normal form of `g_i^p`.
    pub power: Vec<Vec<u32>>,
    /// `conj[i][j]` (i < j) = normal form of `g_i⁻¹ g_j g_i`.
    pub conj: Vec<Vec<Vec<u32>>>,
    pub top: Vec<usize>,
    pub derived: Vec<(usize, Derivation)>,
}

impl GroupFamily {
    pub fn new(tag: FamilyTag, p: u32) -> Self {
        GroupFamily { tag, p }
    }

    pub fn heis(p: u32) -> Self {
        GroupFamily::new(FamilyTag::Heis, p)
    }

    pub fn g10_default(p: u32) -> Self {
        GroupFamily::new(
            FamilyTag::G10 {
                w: smallest_nonresidue(p),
            },
            p,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.p;
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        match self.tag {
            FamilyTag::ElemAbelian(0) | FamilyTag::Cyclic(0) => {
                Err(Error::InvalidFamily("rank must be positive".into()))
            }
            FamilyTag::ElemAbelian(_) | FamilyTag::Cyclic(_) => Ok(()),
            FamilyTag::Heis | FamilyTag::ModMax if p == 2 => Err(Error::InvalidFamily(format!(
                "{} needs an odd prime",
                self.name()
            ))),
            FamilyTag::Heis | FamilyTag::ModMax => Ok(()),
            FamilyTag::G7 | FamilyTag::G8 | FamilyTag::G9 | FamilyTag::G10 { .. } if p <= 3 => {
                Err(Error::InvalidFamily(format!("{} needs p > 3", self.name())))
            }
            FamilyTag::G10 { w } => {
                if w % p == 0 || is_quadratic_residue(w as u64 % p as u64, p as u64) {
                    Err(Error::InvalidFamily(format!(
                        "G10 parameter {w} is not a quadratic non-residue mod {p}"
                    )))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> String {
        match self.tag {
            FamilyTag::ElemAbelian(n) => format!("Z{}^{}", self.p, n),
            FamilyTag::Cyclic(k) => format!("Z{}", (self.p as u64).pow(k)),
            FamilyTag::Heis => "Heis".into(),
            FamilyTag::ModMax => "ModMax".into(),
            FamilyTag::G7 => "G7".into(),
            FamilyTag::G8 => "G8".into(),
            FamilyTag::G9 => "G9".into(),
            FamilyTag::G10 { .. } => "G10".into(),
        }
    }

    pub fn rank(&self) -> usize {
        match self.tag {
            FamilyTag::ElemAbelian(n) | FamilyTag::Cyclic(n) => n as usize,
            FamilyTag::Heis | FamilyTag::ModMax => 3,
            _ => 4,
        }
    }

    pub(crate) fn presentation(&self) -> Presentation {
        let k = self.rank();
        let p = self.p;
        let unit = |i: usize| {
            let mut v = vec![0u32; k];
            v[i] = 1;
            v
        };
        let zero = vec![0u32; k];
        let mut power = vec![zero.clone(); k];
        let mut conj: Vec<Vec<Vec<u32>>> = (0..k).map(|_| (0..k).map(unit).collect()).collect();
        let mut top = vec![0, 1];
        let mut derived = Vec::new();
        match self.tag {
            FamilyTag::ElemAbelian(_) => {
                top = (0..k).collect();
            }
            FamilyTag::Cyclic(_) => {
                top = vec![0];
                for i in 0..k - 1 {
                    power[i] = unit(i + 1);
                    derived.push((i + 1, Derivation::Power(i)));
                }
            }
            FamilyTag::Heis => {
                // [g1, g2] = g3, i.e. g1⁻¹ g2 g1 = g2 g3⁻¹.
                conj[0][1] = vec![0, 1, p - 1];
                derived.push((2, Derivation::Commutator(0, 1)));
            }
            FamilyTag::ModMax => {
                // g2^p = g3, g1⁻¹ g2 g1 = g2^{1+p}.
                power[1] = unit(2);
                conj[0][1] = vec![0, 1, 1];
                derived.push((2, Derivation::Power(1)));
            }
            FamilyTag::G7 | FamilyTag::G8 | FamilyTag::G9 | FamilyTag::G10 { .. } => {
                // [g2, g1] = g3, [g3, g1] = g4.
                conj[0][1] = vec![0, 1, 1, 0];
                conj[0][2] = vec![0, 0, 1, 1];
                derived.push((2, Derivation::Commutator(1, 0)));
                derived.push((3, Derivation::Commutator(2, 0)));
                match self.tag {
                    FamilyTag::G8 => power[0] = unit(3),
                    FamilyTag::G9 => power[1] = unit(3),
                    FamilyTag::G10 { w } => power[1] = vec![0, 0, 0, w % p],
                    _ => {}
                }
            }
        }
        Presentation {
            rank: k,
            power,
            conj,
            top,
            derived,
        }
    }

    /// G10 with `w` replaced, or `self` for any other family.
    pub fn with_w(self, w: u32) -> Self {
        match self.tag {
            FamilyTag::G10 { .. } => GroupFamily::new(FamilyTag::G10 { w }, self.p),
            _ => self,
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
