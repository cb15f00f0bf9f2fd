//! Index vectors of the sunset family
//! `I(a1..a5) = ∫∫ D1^-a1 D2^-a2 D3^-a3 N1^-a4 N2^-a5` with
//! `D1 = (p-k1)²`, `D2 = (k1-k2)²+M²`, `D3 = k2²+m²`, `N1 = k1²`, `N2 = k2·p`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sunset::SunsetIndices;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FamilyIndex(pub [i64; 5]);

impl FamilyIndex {
    pub fn new(a: [i64; 5]) -> Result<Self> {
        if a[3] > 0 || a[4] > 0 {
            return Err(Error::Invalid(format!(
                "numerator indices must be <= 0, got {}",
                FamilyIndex(a)
            )));
        }
        Ok(FamilyIndex(a))
    }

    /// `J(σ, β, α) = I(σ, α, β, 0, 0)`.
    pub fn from_sunset(j: SunsetIndices) -> Self {
        FamilyIndex([j.sigma, j.alpha, j.beta, 0, 0])
    }

    /// The sunset integral, when all three lines are present and there are
    /// no numerators.
    pub fn to_sunset(&self) -> Option<SunsetIndices> {
        let [a1, a2, a3, a4, a5] = self.0;
        (a1 > 0 && a2 > 0 && a3 > 0 && a4 == 0 && a5 == 0).then(|| SunsetIndices::new(a1, a3, a2))
    }

    /// Bit `i` set when `D(i+1)` is a denominator.
    pub fn sector(&self) -> u8 {
        (0..3)
            .filter(|&i| self.0[i] > 0)
            .fold(0, |s, i| s | (1 << i))
    }

    pub fn dots(&self) -> i64 {
        self.0.iter().filter(|&&a| a > 1).map(|a| a - 1).sum()
    }

    pub fn numerators(&self) -> i64 {
        self.0.iter().filter(|&&a| a < 0).map(|a| -a).sum()
    }

    /// Scaleless in dimensional regularization: without both massive lines
    /// one loop momentum is left with at most a massless propagator.
    pub fn is_zero_sector(&self) -> bool {
        self.0[1] <= 0 || self.0[2] <= 0
    }

    /// Product of two one-loop tadpoles.
    pub fn is_tadpole(&self) -> bool {
        self.sector() == 0b110
    }

    pub fn shifted(&self, s: &[i64; 5]) -> Self {
        let mut a = self.0;
        for (x, d) in a.iter_mut().zip(s) {
            *x += d;
        }
        FamilyIndex(a)
    }

    fn key(&self) -> (u8, i64, i64, [i64; 5]) {
        (self.sector(), self.numerators(), self.dots(), self.0)
    }
}

impl Ord for FamilyIndex {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

impl PartialOrd for FamilyIndex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.0;
        write!(f, "{a},{b},{c},{d},{e}")
    }
}

impl FromStr for FamilyIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<i64> = s
            .trim()
            .trim_start_matches("I(")
            .trim_end_matches(')')
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Invalid(format!("bad family index {s:?}")))?;
        let a: [i64; 5] = v
            .try_into()
            .map_err(|_| Error::Invalid(format!("family index {s:?} needs five entries")))?;
        FamilyIndex::new(a)
    }
}

impl TryFrom<String> for FamilyIndex {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FamilyIndex> for String {
    fn from(i: FamilyIndex) -> String {
        i.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sunset::{J112, J121};

    fn fi(s: &str) -> FamilyIndex {
        s.parse().unwrap()
    }

    #[test]
    fn mapping_and_order() {
        assert_eq!(FamilyIndex::from_sunset(J121), fi("1,1,2,0,0"));
        assert_eq!(FamilyIndex::from_sunset(J112), fi("1,2,1,0,0"));
        assert_eq!(fi("1,1,2,0,0").to_sunset(), Some(J121));
        assert!(fi("0,1,1,0,0") < fi("1,1,1,0,0"));
        assert!(fi("1,1,1,0,0") < fi("1,1,2,0,0"));
        assert!(fi("1,1,2,0,0") < fi("1,2,1,0,0"));
        assert!(fi("1,2,1,0,0") < fi("2,1,1,0,0"));
        assert!(fi("1,1,3,0,0") < fi("1,1,1,-1,0"));
        assert!(fi("1,0,2,0,0").is_zero_sector());
        assert!(fi("0,1,1,0,0").is_tadpole());
        assert!("1,1,1,1,0".parse::<FamilyIndex>().is_err());
        assert_eq!(fi("I(1,2,1,0,-1)").to_string(), "1,2,1,0,-1");
    }
}
