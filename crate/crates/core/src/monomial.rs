//! Monomials, monomial ideals and colon ideals.
//!
//! A [`Monomial`] is an exponent vector over a fixed list of variables. A
//! [`MonomialIdeal`] stores its unique minimal generating set `G(I)` in
//! canonical (lexicographic exponent-vector) order, so two ideals are equal
//! exactly when their generator lists are equal.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest exponent accepted from user input.
pub const MAX_EXPONENT: u32 = (1 << 31) - 1;

/// Ordered list of distinct variable names, `K[x_1, ..., x_n]` without the field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    /// The ring `K[x1, ..., xn]`.
    pub fn standard(n: usize) -> Arc<Ring> {
        Arc::new(Ring {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        })
    }

    pub fn with_names(names: Vec<String>) -> Result<Arc<Ring>> {
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let mut sorted = names.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidRing("variable names must be distinct".into()));
        }
        Ok(Arc::new(Ring { names }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Renders a monomial in the `x1*x2^2` text form using this ring's names.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        parts.join("*")
    }
}

/// A monomial `x^a`, stored as its exponent vector.
///
/// The derived ordering is lexicographic on exponent vectors and is the
/// canonical order used for generators and witness tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn variable(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    /// Square-free monomial `X_A` of a set of zero-based variable indices.
    pub fn from_support(n: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut exps = vec![0; n];
        for i in support {
            exps[i] = 1;
        }
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Zero-based indices of the variables occurring in the monomial.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `self | other`. Both monomials must live in the same ring.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// `self / other`, saturating at zero; exact when `other | self`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        }
    }

    /// Exponents capped componentwise at `caps`.
    pub fn capped(&self, caps: &[u32]) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(caps).map(|(&a, &c)| a.min(c)).collect(),
        }
    }

    pub fn with_exponent(mut self, i: usize, e: u32) -> Monomial {
        self.exps[i] = e;
        self
    }

    /// Appends the variables of `other` after those of `self`.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend_from_slice(&other.exps);
        Monomial { exps }
    }
}

fn check_ambient(a: &Monomial, b: &Monomial) -> Result<()> {
    if a.nvars() != b.nvars() {
        return Err(Error::AmbientMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    Ok(())
}

/// Checked divisibility: `a | b`.
pub fn divides(a: &Monomial, b: &Monomial) -> Result<bool> {
    check_ambient(a, b)?;
    Ok(a.divides(b))
}

pub fn monomial_gcd(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    check_ambient(a, b)?;
    Ok(a.gcd(b))
}

pub fn monomial_lcm(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    check_ambient(a, b)?;
    Ok(a.lcm(b))
}

/// Support of a monomial prime `<x_s : s in vars>`, zero-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSupport {
    vars: Vec<usize>,
}

impl PrimeSupport {
    pub fn new(mut vars: Vec<usize>, nvars: usize) -> Result<Self> {
        vars.sort_unstable();
        vars.dedup();
        if vars.is_empty() || vars.iter().any(|&v| v >= nvars) {
            return Err(Error::InvalidPrime);
        }
        Ok(PrimeSupport { vars })
    }

    /// Builds from one-based indices, as used by the CLI and JSON.
    pub fn from_one_based(vars: &[usize], nvars: usize) -> Result<Self> {
        if vars.contains(&0) {
            return Err(Error::InvalidPrime);
        }
        Self::new(vars.iter().map(|v| v - 1).collect(), nvars)
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.vars.iter().map(|v| v + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &PrimeSupport) -> bool {
        self.vars.iter().all(|&v| other.contains_var(v))
    }

    /// `X_p`, the product of the prime's variables.
    pub fn to_monomial(&self, nvars: usize) -> Monomial {
        Monomial::from_support(nvars, self.vars.iter().copied())
    }

    pub fn to_ideal(&self, ring: &Arc<Ring>) -> MonomialIdeal {
        let n = ring.nvars();
        MonomialIdeal {
            ring: ring.clone(),
            gens: canonical_order(self.vars.iter().map(|&v| Monomial::variable(n, v)).collect()),
        }
    }

    /// Canonical ordering key: the characteristic vector of the support.
    pub(crate) fn sort_key(&self, nvars: usize) -> Monomial {
        self.to_monomial(nvars)
    }
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vars.iter().map(|v| format!("x{}", v + 1)).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

fn canonical_order(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    gens
}

/// Reduces a generator list to its divisibility antichain, in canonical order.
pub(crate) fn minimal_generators(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    canonical_order(kept)
}

/// A monomial ideal given by its minimal generators `G(I)`.
///
/// The unit ideal is represented by the single generator `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Arc<Ring>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, discarding non-minimal generators.
    pub fn new(ring: Arc<Ring>, gens: Vec<Monomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for g in &gens {
            if g.nvars() != ring.nvars() {
                return Err(Error::AmbientMismatch {
                    left: ring.nvars(),
                    right: g.nvars(),
                });
            }
        }
        Ok(MonomialIdeal {
            ring,
            gens: minimal_generators(gens),
        })
    }

    /// Builds an ideal from generators already known to be in the same ring.
    pub(crate) fn from_gens_unchecked(ring: Arc<Ring>, gens: Vec<Monomial>) -> Self {
        debug_assert!(!gens.is_empty());
        MonomialIdeal {
            ring,
            gens: minimal_generators(gens),
        }
    }

    pub fn unit(ring: Arc<Ring>) -> Self {
        let n = ring.nvars();
        MonomialIdeal {
            ring,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn require_proper(&self) -> Result<()> {
        if self.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Membership test: some generator divides `f`.
    pub fn contains(&self, f: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(f))
    }

    pub fn try_contains(&self, f: &Monomial) -> Result<bool> {
        self.check_monomial(f)?;
        Ok(self.contains(f))
    }

    /// `J ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    fn check_monomial(&self, f: &Monomial) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::AmbientMismatch {
                left: self.nvars(),
                right: f.nvars(),
            });
        }
        Ok(())
    }

    fn check_ideal(&self, other: &MonomialIdeal) -> Result<()> {
        if other.nvars() != self.nvars() {
            return Err(Error::AmbientMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(())
    }

    /// `(I : f) = <u / gcd(u, f) : u in G(I)>`.
    pub fn colon(&self, f: &Monomial) -> MonomialIdeal {
        let gens = self.gens.iter().map(|u| u.quotient(&u.gcd(f))).collect();
        MonomialIdeal::from_gens_unchecked(self.ring.clone(), gens)
    }

    pub fn try_colon(&self, f: &Monomial) -> Result<MonomialIdeal> {
        self.check_monomial(f)?;
        Ok(self.colon(f))
    }

    /// `(I : J)`, the intersection of `(I : g)` over `g` in `G(J)`.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ideal(other)?;
        let mut acc: Option<MonomialIdeal> = None;
        for g in &other.gens {
            let c = self.colon(g);
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect_unchecked(&c),
            });
        }
        Ok(acc.expect("ideals have at least one generator"))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ideal(other)?;
        Ok(self.intersect_unchecked(other))
    }

    fn intersect_unchecked(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        MonomialIdeal::from_gens_unchecked(self.ring.clone(), gens)
    }

    /// `I + J`.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ideal(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(MonomialIdeal::from_gens_unchecked(self.ring.clone(), gens))
    }

    /// `I + <f>`.
    pub fn add_generator(&self, f: &Monomial) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.push(f.clone());
        MonomialIdeal::from_gens_unchecked(self.ring.clone(), gens)
    }

    /// Returns the support when every generator is a single variable.
    pub fn is_monomial_prime(&self) -> Option<PrimeSupport> {
        let mut vars = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            if g.degree() != 1 {
                return None;
            }
            vars.push(g.support()[0]);
        }
        PrimeSupport::new(vars, self.nvars()).ok()
    }

    /// Highest power of each variable among the generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut caps = vec![0; self.nvars()];
        for g in &self.gens {
            for (c, &e) in caps.iter_mut().zip(g.exponents()) {
                *c = (*c).max(e);
            }
        }
        caps
    }

    /// `I_1 R + I_2 R` in the ring whose variables are those of `self`
    /// followed by those of `other`.
    pub fn disjoint_sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut names: Vec<String> = self.ring.names().to_vec();
        let clash = other.ring.names().iter().any(|n| names.contains(n));
        if clash {
            let total = self.nvars() + other.nvars();
            names = (1..=total).map(|i| format!("x{i}")).collect();
        } else {
            names.extend(other.ring.names().iter().cloned());
        }
        let ring = Ring::with_names(names)?;
        let one_left = Monomial::one(self.nvars());
        let one_right = Monomial::one(other.nvars());
        let mut gens: Vec<Monomial> = self.gens.iter().map(|g| g.concat(&one_right)).collect();
        gens.extend(other.gens.iter().map(|g| one_left.concat(g)));
        Ok(MonomialIdeal::from_gens_unchecked(ring, gens))
    }

    /// Copy of the ideal in a ring with `extra` additional variables.
    pub fn extend_ring(&self, extra: usize) -> MonomialIdeal {
        let ring = Ring::standard(self.nvars() + extra);
        let pad = Monomial::one(extra);
        MonomialIdeal {
            ring,
            gens: self.gens.iter().map(|g| g.concat(&pad)).collect(),
        }
    }

    /// Total degree of each minimal generator.
    pub fn generator_degrees(&self) -> Vec<u64> {
        self.gens.iter().map(Monomial::degree).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| self.ring.format_monomial(g)).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Checked constructor matching `minimalize`: the divisibility antichain of
/// `gens` in the standard ring of matching size.
pub fn minimalize(gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    let n = gens.first().ok_or(Error::EmptyGenerators)?.nvars();
    MonomialIdeal::new(Ring::standard(n), gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    fn worked_ideal() -> MonomialIdeal {
        minimalize(vec![m(&[1, 2, 0]), m(&[0, 1, 2]), m(&[2, 0, 1])]).unwrap()
    }

    #[test]
    fn divisibility() {
        assert!(divides(&m(&[1, 0, 0]), &m(&[2, 0, 1])).unwrap());
        assert!(!divides(&m(&[0, 2]), &m(&[1, 1])).unwrap());
        assert!(divides(&Monomial::one(3), &m(&[4, 1, 7])).unwrap());
        assert_eq!(
            divides(&m(&[1]), &m(&[1, 1])),
            Err(Error::AmbientMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn gcd_and_lcm() {
        assert_eq!(monomial_gcd(&m(&[1, 2, 0]), &m(&[2, 0, 1])).unwrap(), m(&[1, 0, 0]));
        assert_eq!(monomial_lcm(&m(&[1, 2, 0]), &m(&[0, 1, 2])).unwrap(), m(&[1, 2, 2]));
        assert_eq!(m(&[3, 1]).gcd(&Monomial::one(2)), Monomial::one(2));
        assert!(monomial_lcm(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn minimalize_examples() {
        let i = minimalize(vec![m(&[1, 0]), m(&[1, 1])]).unwrap();
        assert_eq!(i.generators(), &[m(&[1, 0])]);

        let i = worked_ideal();
        assert_eq!(i.generators().len(), 3);
        assert_eq!(i.to_string(), "x2*x3^2, x1*x2^2, x1^2*x3");

        let i = minimalize(vec![m(&[0, 0]), m(&[1, 0])]).unwrap();
        assert!(i.is_unit());
        assert_eq!(minimalize(vec![]), Err(Error::EmptyGenerators));
    }

    #[test]
    fn membership() {
        let i = worked_ideal();
        assert!(i.contains(&m(&[1, 2, 1])));
        assert!(!i.contains(&m(&[1, 1, 1])));
        assert!(!i.contains(&Monomial::one(3)));
    }

    #[test]
    fn colon_examples() {
        let i = worked_ideal();
        let c = i.colon(&m(&[1, 1, 1]));
        assert_eq!(c.is_monomial_prime().unwrap().one_based(), vec![1, 2, 3]);
        assert_eq!(i.colon(&Monomial::one(3)), i);
        let j = minimalize(vec![m(&[1, 1])]).unwrap();
        assert_eq!(j.colon(&m(&[1, 0])).generators(), &[m(&[0, 1])]);
        assert!(i.colon(&m(&[1, 2, 0])).is_unit());
    }

    #[test]
    fn colon_by_ideal_examples() {
        let i = worked_ideal();
        assert!(i.colon_ideal(&i).unwrap().is_unit());
        let j = minimalize(vec![m(&[1, 1])]).unwrap();
        let max = minimalize(vec![m(&[1, 0]), m(&[0, 1])]).unwrap();
        assert_eq!(j.colon_ideal(&max).unwrap(), j);
        let unit = MonomialIdeal::unit(Ring::standard(3));
        assert_eq!(i.colon_ideal(&unit).unwrap(), i);
    }

    #[test]
    fn prime_detection() {
        let p = minimalize(vec![m(&[1, 0, 0]), m(&[0, 0, 1])]).unwrap();
        assert_eq!(p.is_monomial_prime().unwrap().one_based(), vec![1, 3]);
        assert!(minimalize(vec![m(&[1, 1])]).unwrap().is_monomial_prime().is_none());
        assert!(minimalize(vec![m(&[0, 2, 0]), m(&[0, 0, 1])])
            .unwrap()
            .is_monomial_prime()
            .is_none());
    }

    #[test]
    fn max_exponent_vectors() {
        assert_eq!(worked_ideal().max_exponents(), vec![2, 2, 2]);
        assert_eq!(minimalize(vec![m(&[1, 1, 0])]).unwrap().max_exponents(), vec![1, 1, 0]);
        assert_eq!(minimalize(vec![m(&[3])]).unwrap().max_exponents(), vec![3]);
    }

    #[test]
    fn disjoint_sum_concatenates_variables() {
        let a = minimalize(vec![m(&[1, 1])]).unwrap();
        let b = minimalize(vec![m(&[2])]).unwrap();
        let s = a.disjoint_sum(&b).unwrap();
        assert_eq!(s.nvars(), 3);
        assert_eq!(s.generators(), &[m(&[0, 0, 2]), m(&[1, 1, 0])]);
    }
}
