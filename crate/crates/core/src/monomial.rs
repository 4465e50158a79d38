//! Monomials as exponent vectors over a fixed variable universe.

use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonomialParseError {
    #[error("empty monomial string")]
    Empty,
    #[error("malformed factor `{0}`")]
    Factor(String),
    #[error("variable x{index} outside a universe of {universe} variables")]
    Variable { index: usize, universe: usize },
}

/// A monomial `x^a = x_1^{a_1} ⋯ x_n^{a_n}`.
///
/// Ordering is the canonical generator order: total degree ascending, then
/// lexicographic with `x_1` highest, larger monomials first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// Product of the listed variables (with repetition).
    pub fn from_vars(nvars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Monomial::one(nvars);
        for v in vars {
            m.exps[v] = m.exps[v].checked_add(1).expect("exponent overflow");
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn pow(&self, t: u32) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|a| a.checked_mul(t).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    /// `self / other`, when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial { exps })
    }

    /// `self / gcd(self, other)`: the generator of `(self) : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        }
    }

    /// Lexicographic comparison with `x_1` highest.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    /// Parses `x1^2*x3`, `1`, or `x2`. Indices are 1-based.
    pub fn parse(s: &str, nvars: usize) -> Result<Monomial, MonomialParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(MonomialParseError::Empty);
        }
        let mut m = Monomial::one(nvars);
        if s == "1" {
            return Ok(m);
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let bad = || MonomialParseError::Factor(factor.to_string());
            let rest = factor.strip_prefix('x').ok_or_else(bad)?;
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let index: usize = idx.parse().map_err(|_| bad())?;
            if index == 0 || index > nvars {
                return Err(MonomialParseError::Variable {
                    index,
                    universe: nvars,
                });
            }
            m.exps[index - 1] = m.exps[index - 1].checked_add(exp).ok_or_else(bad)?;
        }
        Ok(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn render_and_parse() {
        let m = Monomial::from_exponents(vec![2, 0, 1]);
        assert_eq!(m.to_string(), "x1^2*x3");
        assert_eq!(Monomial::parse("x1^2*x3", 3).unwrap(), m);
        assert_eq!(Monomial::parse("x3*x1*x1", 3).unwrap(), m);
        assert_eq!(Monomial::one(3).to_string(), "1");
        assert_eq!(Monomial::parse("1", 3).unwrap(), Monomial::one(3));
        assert!(Monomial::parse("x4", 3).is_err());
        assert!(Monomial::parse("y1", 3).is_err());
        assert!(Monomial::parse("", 3).is_err());
        assert!(Monomial::parse("x0", 3).is_err());
    }

    #[test]
    fn canonical_order_within_degree() {
        let x2 = Monomial::from_exponents(vec![2, 0]);
        let xy = Monomial::from_exponents(vec![1, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2]);
        let x = Monomial::from_exponents(vec![1, 0]);
        let mut v = vec![y2.clone(), xy.clone(), x2.clone(), x.clone()];
        v.sort();
        assert_eq!(v, vec![x, x2, xy, y2]);
    }

    #[test]
    fn colon_and_division() {
        let a = Monomial::parse("x1*x2^2", 3).unwrap();
        let b = Monomial::parse("x2*x3", 3).unwrap();
        assert_eq!(a.colon(&b), Monomial::parse("x1*x2", 3).unwrap());
        assert_eq!(a.checked_div(&b), None);
        assert_eq!(a.checked_div(&Monomial::parse("x2", 3).unwrap()), Some(Monomial::parse("x1*x2", 3).unwrap()));
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(exps in proptest::collection::vec(0u32..5, 1..7)) {
            let m = Monomial::from_exponents(exps);
            prop_assert_eq!(Monomial::parse(&m.to_string(), m.nvars()).unwrap(), m);
        }

        #[test]
        fn gcd_lcm_product(a in proptest::collection::vec(0u32..5, 4), b in proptest::collection::vec(0u32..5, 4)) {
            let (a, b) = (Monomial::from_exponents(a), Monomial::from_exponents(b));
            prop_assert_eq!(a.gcd(&b).mul(&a.lcm(&b)), a.mul(&b));
            prop_assert!(a.divides(&a.lcm(&b)) && a.gcd(&b).divides(&b));
        }
    }
}
