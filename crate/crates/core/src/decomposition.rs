//! Irreducible decomposition and associated primes of monomial ideals.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, PrimeSupport, Ring};
use crate::vnumber::{self, VWitness};

/// An irreducible monomial ideal `<x_i^{a_i} : i in support>`.
///
/// Stored as a full exponent vector where `0` marks an absent variable, so
/// the derived order is the canonical lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrreducibleComponent {
    powers: Vec<u32>,
}

impl IrreducibleComponent {
    pub fn from_powers(powers: Vec<u32>) -> Result<Self> {
        if powers.iter().all(|&a| a == 0) {
            return Err(Error::InvalidPrime);
        }
        Ok(IrreducibleComponent { powers })
    }

    pub fn powers(&self) -> &[u32] {
        &self.powers
    }

    /// `(variable, exponent)` pairs, zero-based.
    pub fn pure_powers(&self) -> Vec<(usize, u32)> {
        self.powers
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| (i, a))
            .collect()
    }

    /// The radical, a monomial prime.
    pub fn support(&self) -> PrimeSupport {
        let vars = self.pure_powers().into_iter().map(|(i, _)| i).collect();
        PrimeSupport::new(vars, self.powers.len()).expect("components have non-empty support")
    }

    pub fn to_ideal(&self, ring: &Arc<Ring>) -> MonomialIdeal {
        let n = self.powers.len();
        let gens = self
            .pure_powers()
            .into_iter()
            .map(|(i, a)| Monomial::one(n).with_exponent(i, a))
            .collect();
        MonomialIdeal::new(ring.clone(), gens).expect("non-empty support")
    }

    /// Whether `self ⊇ other` as ideals.
    fn contains(&self, other: &IrreducibleComponent) -> bool {
        other
            .pure_powers()
            .into_iter()
            .all(|(i, a)| self.powers[i] > 0 && self.powers[i] <= a)
    }
}

struct Splitter {
    memo: HashMap<Vec<Monomial>, Vec<IrreducibleComponent>>,
}

impl Splitter {
    fn decompose(&mut self, ideal: &MonomialIdeal) -> Vec<IrreducibleComponent> {
        if let Some(hit) = self.memo.get(ideal.generators()) {
            return hit.clone();
        }
        // Lexicographically first generator that is not a pure power.
        let mixed = ideal.generators().iter().find(|g| g.support().len() >= 2);
        let result = match mixed {
            None => {
                let mut powers = vec![0u32; ideal.nvars()];
                for g in ideal.generators() {
                    let i = g.support()[0];
                    powers[i] = g.exponents()[i];
                }
                vec![IrreducibleComponent { powers }]
            }
            Some(u) => {
                let i = u.support()[0];
                let head = Monomial::one(u.nvars()).with_exponent(i, u.exponents()[i]);
                let tail = u.clone().with_exponent(i, 0);
                let mut parts = self.decompose(&ideal.add_generator(&head));
                parts.extend(self.decompose(&ideal.add_generator(&tail)));
                irredundant(parts)
            }
        };
        self.memo.insert(ideal.generators().to_vec(), result.clone());
        result
    }
}

/// Drops duplicates and every component containing another one.
fn irredundant(mut parts: Vec<IrreducibleComponent>) -> Vec<IrreducibleComponent> {
    parts.sort();
    parts.dedup();
    let keep: Vec<bool> = parts
        .iter()
        .enumerate()
        .map(|(a, qa)| {
            !parts
                .iter()
                .enumerate()
                .any(|(b, qb)| a != b && qa.contains(qb))
        })
        .collect();
    parts
        .into_iter()
        .zip(keep)
        .filter_map(|(q, k)| k.then_some(q))
        .collect()
}

/// The unique irredundant irreducible decomposition, in canonical order.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    ideal.require_proper()?;
    let mut splitter = Splitter { memo: HashMap::new() };
    Ok(splitter.decompose(ideal))
}

/// Associated primes split into minimal and embedded ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedPrimeReport {
    pub primes: Vec<PrimeSupport>,
    pub minimal: Vec<PrimeSupport>,
    pub embedded: Vec<PrimeSupport>,
}

impl AssociatedPrimeReport {
    pub fn contains(&self, p: &PrimeSupport) -> bool {
        self.primes.contains(p)
    }

    /// Minimum prime size, i.e. the height of the ideal.
    pub fn height(&self) -> usize {
        self.minimal.iter().map(PrimeSupport::len).min().unwrap_or(0)
    }
}

pub(crate) fn sort_primes(primes: &mut [PrimeSupport], nvars: usize) {
    primes.sort_by_key(|p| p.sort_key(nvars));
}

pub fn associated_primes(ideal: &MonomialIdeal) -> Result<AssociatedPrimeReport> {
    let n = ideal.nvars();
    let mut primes: Vec<PrimeSupport> = irreducible_decomposition(ideal)?
        .iter()
        .map(IrreducibleComponent::support)
        .collect();
    sort_primes(&mut primes, n);
    primes.dedup();
    let (embedded, minimal): (Vec<_>, Vec<_>) = primes.iter().cloned().partition(|p| {
        primes
            .iter()
            .any(|q| q != p && q.is_subset_of(p))
    });
    Ok(AssociatedPrimeReport {
        primes,
        minimal,
        embedded,
    })
}

pub fn has_embedded_prime(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(!associated_primes(ideal)?.embedded.is_empty())
}

/// A minimum-degree monomial `f` with `(I : f) = p`.
pub fn witness_for_prime(ideal: &MonomialIdeal, prime: &PrimeSupport) -> Result<VWitness> {
    vnumber::local_witness(ideal, prime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn ones(p: &PrimeSupport) -> Vec<usize> {
        p.one_based()
    }

    #[test]
    fn worked_example_decomposition() {
        let i = parse_ideal("x1*x2^2, x2*x3^2, x1^2*x3").unwrap();
        let comps = irreducible_decomposition(&i).unwrap();
        let rendered: Vec<String> = comps.iter().map(|c| c.to_ideal(i.ring()).to_string()).collect();
        assert_eq!(
            rendered,
            vec!["x3, x2^2", "x3^2, x1", "x2, x1^2", "x3^2, x2^2, x1^2"]
        );
        let back = comps
            .iter()
            .map(|c| c.to_ideal(i.ring()))
            .reduce(|a, b| a.intersect(&b).unwrap())
            .unwrap();
        assert_eq!(back, i);
    }

    #[test]
    fn trivial_decompositions() {
        let i = parse_ideal("x1^2").unwrap();
        assert_eq!(irreducible_decomposition(&i).unwrap().len(), 1);
        let i = parse_ideal("x1*x2").unwrap();
        let comps = irreducible_decomposition(&i).unwrap();
        assert_eq!(comps.iter().map(|c| c.powers().to_vec()).collect::<Vec<_>>(), vec![vec![0, 1], vec![1, 0]]);
        let unit = MonomialIdeal::unit(Ring::standard(2));
        assert_eq!(irreducible_decomposition(&unit), Err(Error::UnitIdeal));
    }

    #[test]
    fn worked_example_primes() {
        let i = parse_ideal("x1*x2^2, x2*x3^2, x1^2*x3").unwrap();
        let ass = associated_primes(&i).unwrap();
        let primes: Vec<Vec<usize>> = ass.primes.iter().map(ones).collect();
        assert_eq!(primes, vec![vec![2, 3], vec![1, 3], vec![1, 2], vec![1, 2, 3]]);
        assert_eq!(ass.embedded.iter().map(ones).collect::<Vec<_>>(), vec![vec![1, 2, 3]]);
        assert!(has_embedded_prime(&i).unwrap());
    }

    #[test]
    fn unmixed_examples_have_no_embedded_primes() {
        let i = parse_ideal("x1*x2").unwrap();
        let ass = associated_primes(&i).unwrap();
        assert_eq!(ass.primes.iter().map(ones).collect::<Vec<_>>(), vec![vec![2], vec![1]]);
        assert!(!has_embedded_prime(&parse_ideal("x1*x2, x3*x4").unwrap()).unwrap());
        assert!(!has_embedded_prime(&parse_ideal("x1*x2, x2*x3, x3*x1").unwrap()).unwrap());
    }

    #[test]
    fn witnesses() {
        let i = parse_ideal("x1*x2^2, x2*x3^2, x1^2*x3").unwrap();
        let p = PrimeSupport::from_one_based(&[1, 2, 3], 3).unwrap();
        let w = witness_for_prime(&i, &p).unwrap();
        assert_eq!(w.degree, 3);
        assert_eq!(i.colon(&w.f).is_monomial_prime(), Some(p));

        let j = parse_ideal("x1*x2").unwrap();
        let p1 = PrimeSupport::from_one_based(&[1], 2).unwrap();
        assert_eq!(witness_for_prime(&j, &p1).unwrap().f.exponents(), &[0, 1]);
        let p12 = PrimeSupport::from_one_based(&[1, 2], 2).unwrap();
        assert!(matches!(witness_for_prime(&j, &p12), Err(Error::NotAssociated { .. })));
    }
}
