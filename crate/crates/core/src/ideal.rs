//! Monomial ideals kept as canonically ordered minimal generating sets.

use std::fmt;

use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("variable universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },
    #[error("operation is undefined for the zero ideal")]
    ZeroIdeal,
}

/// A monomial ideal in `k[x_1..x_n]`.
///
/// Generators are minimal and sorted by total degree, then lexicographically
/// with `x_1` highest. The zero ideal has no generators; the unit ideal is
/// generated by the unit monomial. Two ideals are equal iff their generator
/// lists are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal {
            nvars: m.nvars(),
            gens: vec![m],
        }
    }

    /// Ideal generated by the given variables.
    pub fn variables(nvars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        Self::minimalize_unchecked(nvars, vars.into_iter().map(|v| Monomial::var(nvars, v)).collect())
    }

    /// Builds the ideal, dropping every generator divisible by another.
    pub fn minimalize(nvars: usize, gens: Vec<Monomial>) -> Result<Self, IdealError> {
        if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(IdealError::UniverseMismatch {
                left: nvars,
                right: bad.nvars(),
            });
        }
        Ok(Self::minimalize_unchecked(nvars, gens))
    }

    pub(crate) fn minimalize_unchecked(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_unstable();
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            // kept generators have degree <= deg g; equal degree divisors are equal
            if !kept.iter().any(|k| k.degree() < g.degree() && k.divides(&g)) {
                kept.push(g);
            }
        }
        MonomialIdeal { nvars, gens: kept }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(Monomial::is_one)
    }

    fn same_universe(&self, other: &MonomialIdeal) -> Result<(), IdealError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(IdealError::UniverseMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    fn check_monomial(&self, m: &Monomial) -> Result<(), IdealError> {
        if m.nvars() == self.nvars {
            Ok(())
        } else {
            Err(IdealError::UniverseMismatch {
                left: self.nvars,
                right: m.nvars(),
            })
        }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.same_universe(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.same_universe(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    /// Multiplies every generator by `m`; minimality is preserved.
    pub fn times_monomial(&self, m: &Monomial) -> Result<MonomialIdeal, IdealError> {
        self.check_monomial(m)?;
        let mut gens: Vec<Monomial> = self.gens.iter().map(|g| g.mul(m)).collect();
        gens.sort_unstable();
        Ok(MonomialIdeal { nvars: self.nvars, gens })
    }

    pub fn power(&self, t: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..t {
            acc = acc.product(self).expect("same universe");
        }
        acc
    }

    /// Exact for monomial ideals: generated by pairwise lcms.
    pub fn intersection(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.same_universe(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    /// Left-to-right intersection, minimalizing after each step.
    pub fn intersect_all<'a>(
        nvars: usize,
        ideals: impl IntoIterator<Item = &'a MonomialIdeal>,
    ) -> Result<MonomialIdeal, IdealError> {
        let mut acc = MonomialIdeal::unit(nvars);
        for ideal in ideals {
            acc = acc.intersection(ideal)?;
        }
        Ok(acc)
    }

    /// `self : (d)` for a monomial `d`.
    pub fn colon_monomial(&self, d: &Monomial) -> Result<MonomialIdeal, IdealError> {
        self.check_monomial(d)?;
        let gens = self.gens.iter().map(|g| g.colon(d)).collect();
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    /// `self : other`, the intersection of the colons by each generator.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.same_universe(other)?;
        if other.is_zero() {
            return Err(IdealError::ZeroIdeal);
        }
        let colons = other
            .gens
            .iter()
            .map(|d| self.colon_monomial(d))
            .collect::<Result<Vec<_>, _>>()?;
        Self::intersect_all(self.nvars, &colons)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        debug_assert_eq!(m.nvars(), self.nvars);
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn try_contains(&self, m: &Monomial) -> Result<bool, IdealError> {
        self.check_monomial(m)?;
        Ok(self.contains(m))
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool, IdealError> {
        self.same_universe(other)?;
        Ok(other.gens.iter().all(|g| self.contains(g)))
    }

    /// A generator of `other` outside `self`, if any.
    pub fn containment_witness(&self, other: &MonomialIdeal) -> Option<Monomial> {
        other.gens.iter().find(|g| !self.contains(g)).cloned()
    }

    /// A monomial in exactly one of the two ideals, if they differ.
    pub fn difference_witness(&self, other: &MonomialIdeal) -> Option<Monomial> {
        self.containment_witness(other)
            .or_else(|| other.containment_witness(self))
    }

    /// Least degree of a minimal generator.
    pub fn alpha_degree(&self) -> Result<u32, IdealError> {
        self.gens.first().map(Monomial::degree).ok_or(IdealError::ZeroIdeal)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).max()
    }

    /// Ideal generated by every degree-`t` monomial in the given variables.
    pub fn variable_power(nvars: usize, vars: &[usize], t: u32) -> MonomialIdeal {
        let mut gens = Vec::new();
        let mut exps = vec![0u32; nvars];
        fn rec(vars: &[usize], left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            match vars.split_first() {
                None => {
                    if left == 0 {
                        out.push(Monomial::from_exponents(exps.clone()));
                    }
                }
                Some((&v, rest)) => {
                    let top = if rest.is_empty() { left } else { 0 };
                    for e in (top..=left).rev() {
                        exps[v] = e;
                        rec(rest, left - e, exps, out);
                    }
                    exps[v] = 0;
                }
            }
        }
        if t == 0 {
            return MonomialIdeal::unit(nvars);
        }
        rec(vars, t, &mut exps, &mut gens);
        Self::minimalize_unchecked(nvars, gens)
    }

    /// `m^t` for the homogeneous maximal ideal.
    pub fn maximal_power(nvars: usize, t: u32) -> MonomialIdeal {
        let vars: Vec<usize> = (0..nvars).collect();
        Self::variable_power(nvars, &vars, t)
    }

    /// Whether every minimal generator has degree one.
    pub fn is_generated_by_variables(&self) -> bool {
        self.gens.iter().all(|g| g.degree() == 1)
    }

    /// Indices of the variables among the minimal generators.
    pub fn linear_part(&self) -> Vec<usize> {
        self.gens
            .iter()
            .filter(|g| g.degree() == 1)
            .map(|g| g.support()[0])
            .collect()
    }

    /// Monomials of degree `d` outside the ideal.
    pub fn standard_monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let all = MonomialIdeal::maximal_power(self.nvars, d);
        all.gens.into_iter().filter(|m| !self.contains(m)).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(ToString::to_string).collect()
    }

    pub fn parse(s: &str, nvars: usize) -> Result<MonomialIdeal, crate::monomial::MonomialParseError> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() || inner == "0" {
            return Ok(MonomialIdeal::zero(nvars));
        }
        let gens = inner
            .split(',')
            .map(|t| Monomial::parse(t, nvars))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::minimalize_unchecked(nvars, gens))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
