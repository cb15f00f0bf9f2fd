use std::fmt;

use serde::{Deserialize, Serialize};

use super::param::ParamExpr;
use crate::error::{Error, Result};

/// `pFq(upper; lower; z)` with `p = q + 1`. Both parameter lists are kept
/// sorted so that structural equality is meaningful.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPfq")]
pub struct PFQ {
    upper: Vec<ParamExpr>,
    lower: Vec<ParamExpr>,
}

#[derive(Deserialize)]
struct RawPfq {
    upper: Vec<ParamExpr>,
    lower: Vec<ParamExpr>,
}

impl TryFrom<RawPfq> for PFQ {
    type Error = Error;
    fn try_from(r: RawPfq) -> Result<Self> {
        PFQ::new(r.upper, r.lower)
    }
}

impl PFQ {
    pub fn new(mut upper: Vec<ParamExpr>, mut lower: Vec<ParamExpr>) -> Result<Self> {
        if upper.len() != lower.len() + 1 {
            return Err(Error::Invalid(format!(
                "{}F{} is outside scope: need p = q+1",
                upper.len(),
                lower.len()
            )));
        }
        upper.sort();
        lower.sort();
        Ok(PFQ { upper, lower })
    }

    /// Builds from parameter text, e.g. `PFQ::from_strs(&["1/2", "3-n"], &["n/2"])`.
    pub fn from_strs(upper: &[&str], lower: &[&str]) -> Result<Self> {
        let u = upper
            .iter()
            .map(|s| ParamExpr::parse(s))
            .collect::<Result<_>>()?;
        let l = lower
            .iter()
            .map(|s| ParamExpr::parse(s))
            .collect::<Result<_>>()?;
        PFQ::new(u, l)
    }

    pub fn upper(&self) -> &[ParamExpr] {
        &self.upper
    }

    pub fn lower(&self) -> &[ParamExpr] {
        &self.lower
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// Order of the hypergeometric differential equation.
    pub fn ode_order(&self) -> usize {
        self.p().max(self.q() + 1)
    }

    pub fn unit_uppers(&self) -> usize {
        self.upper.iter().filter(|a| a.is_one()).count()
    }

    pub fn with_upper(&self, i: usize, a: ParamExpr) -> Self {
        let mut u = self.upper.clone();
        u[i] = a;
        PFQ::new(u, self.lower.clone()).expect("same shape")
    }

    pub fn with_lower(&self, j: usize, b: ParamExpr) -> Self {
        let mut l = self.lower.clone();
        l[j] = b;
        PFQ::new(self.upper.clone(), l).expect("same shape")
    }

    /// Parses `pFq[u1,...,up; l1,...,lq]`.
    pub fn parse(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let digits = |pos: &mut usize| -> Result<usize> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            s[start..*pos]
                .parse()
                .map_err(|_| Error::parse(start, "expected digit"))
        };
        skip_ws(&mut pos);
        let p = digits(&mut pos)?;
        skip_ws(&mut pos);
        if bytes.get(pos) != Some(&b'F') {
            return Err(Error::parse(pos, "expected 'F'"));
        }
        pos += 1;
        skip_ws(&mut pos);
        let q = digits(&mut pos)?;
        skip_ws(&mut pos);
        if bytes.get(pos) != Some(&b'[') {
            return Err(Error::parse(pos, "expected '['"));
        }
        let open = pos;
        let close = s
            .rfind(']')
            .filter(|&c| c > open)
            .ok_or_else(|| Error::parse(s.len(), "expected ']'"))?;
        let tail = close + 1;
        if let Some(off) = s[tail..].find(|c: char| !c.is_whitespace()) {
            return Err(Error::parse(tail + off, "unexpected trailing input"));
        }
        let inner = &s[open + 1..close];
        let (up_txt, lo_txt, lo_off) = match inner.find(';') {
            Some(k) => (&inner[..k], &inner[k + 1..], open + 1 + k + 1),
            None => (inner, "", close),
        };
        let upper = parse_list(up_txt, open + 1)?;
        let lower = parse_list(lo_txt, lo_off)?;
        if upper.len() != p {
            return Err(Error::parse(
                open,
                format!("expected {p} upper parameters, found {}", upper.len()),
            ));
        }
        if lower.len() != q {
            return Err(Error::parse(
                lo_off.min(s.len()),
                format!("expected {q} lower parameters, found {}", lower.len()),
            ));
        }
        PFQ::new(upper, lower).map_err(|e| Error::parse(0, e.to_string()))
    }
}

fn parse_list(txt: &str, base: usize) -> Result<Vec<ParamExpr>> {
    if txt.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut off = 0;
    for part in txt.split(',') {
        let lead = part.len() - part.trim_start().len();
        if part.trim().is_empty() {
            return Err(Error::parse(base + off, "empty parameter"));
        }
        let p = ParamExpr::parse(part).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::parse(base + off + pos.max(lead), msg),
            other => other,
        })?;
        out.push(p);
        off += part.len() + 1;
    }
    Ok(out)
}

fn join(ps: &[ParamExpr]) -> String {
    ps.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for PFQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lower.is_empty() {
            write!(f, "{}F{}[{}]", self.p(), self.q(), join(&self.upper))
        } else {
            write!(
                f,
                "{}F{}[{}; {}]",
                self.p(),
                self.q(),
                join(&self.upper),
                join(&self.lower)
            )
        }
    }
}

/// Removes upper/lower pairs that are structurally equal.
pub fn cancel_params(f: &PFQ) -> PFQ {
    let mut upper = Vec::new();
    let mut lower = f.lower.clone();
    for a in &f.upper {
        if let Some(j) = lower.iter().position(|b| b == a) {
            lower.remove(j);
        } else {
            upper.push(a.clone());
        }
    }
    PFQ::new(upper, lower).expect("pairwise removal keeps p = q+1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let f = PFQ::parse("4F3[3-n,2-n/2,1/2,1; 2-n/2,1,n/2]").unwrap();
        assert_eq!(f.p(), 4);
        let g = PFQ::parse(&f.to_string()).unwrap();
        assert_eq!(f, g);
        assert_eq!(PFQ::parse(" 1F0 [ 1/2 ] ").unwrap().to_string(), "1F0[1/2]");
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<PFQ>(&json).unwrap(), f);
    }

    #[test]
    fn parse_errors_point_at_the_problem() {
        match PFQ::parse("2F1[1,q;2]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(PFQ::parse("2F1[1;2]"), Err(Error::Parse { .. })));
        assert!(matches!(PFQ::parse("2F1[1,1;2"), Err(Error::Parse { .. })));
        assert!(matches!(
            PFQ::parse("3F1[1,1,1;2]"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn cancellation() {
        let f = PFQ::parse("4F3[3-n,2-n/2,1/2,1; 2-n/2,1,n/2]").unwrap();
        assert_eq!(cancel_params(&f), PFQ::parse("2F1[3-n,1/2; n/2]").unwrap());
        let g = PFQ::parse("4F3[1,2,3,4; 5,6,7]").unwrap();
        assert_eq!(cancel_params(&g), g);
    }
}
