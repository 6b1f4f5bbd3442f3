//! Polarization `x_i^a -> x_{i,1} ... x_{i,a}` into a square-free ideal.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, PrimeSupport, Ring};

/// The enlarged ring `K[x_{i,j} : 1 <= j <= r_i]` and its indexing.
///
/// Target variables are ordered by `i`, then `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationContext {
    source: Arc<Ring>,
    caps: Vec<u32>,
    target: Arc<Ring>,
    offsets: Vec<usize>,
}

impl PolarizationContext {
    pub fn new(source: Arc<Ring>, caps: Vec<u32>) -> Result<Self> {
        if caps.len() != source.nvars() {
            return Err(Error::AmbientMismatch {
                left: source.nvars(),
                right: caps.len(),
            });
        }
        let mut offsets = Vec::with_capacity(caps.len());
        let mut names = Vec::new();
        for (i, &r) in caps.iter().enumerate() {
            offsets.push(names.len());
            for j in 1..=r {
                names.push(format!("x{}_{}", i + 1, j));
            }
        }
        let target = Ring::with_names(names)?;
        Ok(PolarizationContext {
            source,
            caps,
            target,
            offsets,
        })
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    /// Target position of `x_{i,j}`; `i` zero-based, `j` one-based.
    pub fn position(&self, i: usize, j: u32) -> Option<usize> {
        (j >= 1 && j <= *self.caps.get(i)?).then(|| self.offsets[i] + (j as usize - 1))
    }

    /// Inverse of [`position`](Self::position).
    pub fn pair(&self, position: usize) -> (usize, u32) {
        let i = self.offsets.partition_point(|&o| o <= position) - 1;
        // Skip variables with cap 0, which share an offset with their successor.
        let i = (i..self.caps.len())
            .find(|&k| self.caps[k] > 0 && position < self.offsets[k] + self.caps[k] as usize)
            .expect("position inside the target ring");
        (i, (position - self.offsets[i]) as u32 + 1)
    }

    /// All `(i, j, position)` triples, zero-based `i` and position.
    pub fn index_map(&self) -> Vec<(usize, u32, usize)> {
        let mut out = Vec::new();
        for (i, &r) in self.caps.iter().enumerate() {
            for j in 1..=r {
                out.push((i, j, self.offsets[i] + j as usize - 1));
            }
        }
        out
    }

    pub fn polarize_monomial(&self, f: &Monomial) -> Result<Monomial> {
        if f.nvars() != self.source.nvars() {
            return Err(Error::AmbientMismatch {
                left: self.source.nvars(),
                right: f.nvars(),
            });
        }
        let mut exps = vec![0u32; self.target.nvars()];
        for (i, (&a, &r)) in f.exponents().iter().zip(&self.caps).enumerate() {
            if a > r {
                return Err(Error::ExponentExceedsCap {
                    variable: i + 1,
                    exponent: a,
                    cap: r,
                });
            }
            for j in 0..a as usize {
                exps[self.offsets[i] + j] = 1;
            }
        }
        Ok(Monomial::from_exponents(exps))
    }

    /// Substitutes `x_{i,j} -> x_i`.
    pub fn depolarize_monomial(&self, g: &Monomial) -> Monomial {
        let mut exps = vec![0u32; self.source.nvars()];
        for (pos, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                let (i, _) = self.pair(pos);
                exps[i] += e;
            }
        }
        Monomial::from_exponents(exps)
    }
}

/// `I(pol)` together with its context; caps come from `max_exponents(I)`.
pub fn polarize_ideal(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, PolarizationContext)> {
    ideal.require_proper()?;
    let ctx = PolarizationContext::new(ideal.ring().clone(), ideal.max_exponents())?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| ctx.polarize_monomial(g))
        .collect::<Result<Vec<_>>>()?;
    let pol = MonomialIdeal::new(ctx.target.clone(), gens)?;
    Ok((pol, ctx))
}

/// Predicts `(I(pol) : f(pol))` from a prime `(I : f) = <x_s : s in S>`: the
/// prime `<x_{s, b_s}>` where `b_s - 1` is the exponent of `x_s` in `f`.
///
/// The prediction is checked against the colon computed directly in the
/// target ring.
pub fn polarized_colon_prime(ideal: &MonomialIdeal, f: &Monomial) -> Result<PrimeSupport> {
    let (pol, ctx) = polarize_ideal(ideal)?;
    let fpol = ctx.polarize_monomial(f)?;
    let prime = ideal.try_colon(f)?.is_monomial_prime().ok_or(Error::ColonNotPrime)?;
    let mut vars = Vec::with_capacity(prime.len());
    for &s in prime.vars() {
        let b = f.exponents()[s] + 1;
        let pos = ctx.position(s, b).ok_or_else(|| {
            Error::Inconsistency(format!("x{}_{} lies outside the polarized ring", s + 1, b))
        })?;
        vars.push(pos);
    }
    let predicted = PrimeSupport::new(vars, ctx.target.nvars())?;
    let direct = pol.colon(&fpol);
    if direct != predicted.to_ideal(ctx.target()) {
        return Err(Error::Inconsistency(format!(
            "(I(pol) : f(pol)) = {direct} differs from the predicted prime"
        )));
    }
    Ok(predicted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ideal, parse_monomial};

    fn worked() -> MonomialIdeal {
        parse_ideal("x1*x2^2, x2*x3^2, x1^2*x3").unwrap()
    }

    #[test]
    fn polarize_monomials() {
        let (_, ctx) = polarize_ideal(&worked()).unwrap();
        let f = parse_monomial("x1*x2^2", 3).unwrap();
        let g = ctx.polarize_monomial(&f).unwrap();
        assert_eq!(ctx.target().format_monomial(&g), "x1_1*x2_1*x2_2");
        assert!(ctx.polarize_monomial(&Monomial::one(3)).unwrap().is_one());

        let (_, small) = polarize_ideal(&parse_ideal("x1^2").unwrap()).unwrap();
        let err = small.polarize_monomial(&parse_monomial("x1^3", 1).unwrap());
        assert_eq!(err, Err(Error::ExponentExceedsCap { variable: 1, exponent: 3, cap: 2 }));
    }

    #[test]
    fn polarize_worked_ideal() {
        let (pol, ctx) = polarize_ideal(&worked()).unwrap();
        assert_eq!(ctx.target().names(), &["x1_1", "x1_2", "x2_1", "x2_2", "x3_1", "x3_2"]);
        let mut rendered: Vec<String> =
            pol.generators().iter().map(|g| ctx.target().format_monomial(g)).collect();
        rendered.sort();
        assert_eq!(rendered, vec!["x1_1*x1_2*x3_1", "x1_1*x2_1*x2_2", "x2_1*x3_1*x3_2"]);
        assert!(pol.is_squarefree());
    }

    #[test]
    fn squarefree_and_pure_power_polarizations() {
        let sq = parse_ideal("x1*x2, x2*x3").unwrap();
        let (pol, ctx) = polarize_ideal(&sq).unwrap();
        assert_eq!(ctx.target().nvars(), 3);
        assert_eq!(pol.generators().len(), 2);
        let (pol, ctx) = polarize_ideal(&parse_ideal("x1^2").unwrap()).unwrap();
        assert_eq!(pol.to_string(), "x1_1*x1_2");
        assert_eq!(ctx.caps(), &[2]);
    }

    #[test]
    fn depolarization() {
        let (_, ctx) = polarize_ideal(&worked()).unwrap();
        let g = parse_monomial("x1*x3*x4", 6).unwrap();
        assert_eq!(ctx.depolarize_monomial(&g), parse_monomial("x1*x2^2", 3).unwrap());
        let single = Monomial::variable(6, 1);
        assert_eq!(ctx.depolarize_monomial(&single), parse_monomial("x1", 3).unwrap());
    }

    #[test]
    fn zero_caps_are_skipped_in_the_index() {
        let i = parse_ideal("ring 3; x1^2*x3").unwrap();
        let (_, ctx) = polarize_ideal(&i).unwrap();
        assert_eq!(ctx.target().names(), &["x1_1", "x1_2", "x3_1"]);
        assert_eq!(ctx.pair(2), (2, 1));
        assert_eq!(ctx.position(1, 1), None);
        for (i, j, pos) in ctx.index_map() {
            assert_eq!(ctx.pair(pos), (i, j));
        }
    }

    #[test]
    fn colon_prime_prediction() {
        let p = polarized_colon_prime(&worked(), &parse_monomial("x1*x2*x3", 3).unwrap()).unwrap();
        let (_, ctx) = polarize_ideal(&worked()).unwrap();
        let names: Vec<&str> = p.vars().iter().map(|&v| ctx.target().name(v)).collect();
        assert_eq!(names, vec!["x1_2", "x2_2", "x3_2"]);

        let j = parse_ideal("x1*x2").unwrap();
        let p = polarized_colon_prime(&j, &parse_monomial("x2", 2).unwrap()).unwrap();
        assert_eq!(p.vars(), &[0]);

        let k = parse_ideal("x1^2").unwrap();
        let p = polarized_colon_prime(&k, &parse_monomial("x1", 1).unwrap()).unwrap();
        assert_eq!(p.vars(), &[1]);

        assert_eq!(
            polarized_colon_prime(&worked(), &Monomial::one(3)),
            Err(Error::ColonNotPrime)
        );
    }
}
