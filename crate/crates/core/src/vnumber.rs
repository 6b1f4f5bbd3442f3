//! The v-number of monomial ideals, computed by three independent routes.
//!
//! * [`v_number_definition`]: degree-ascending search over the box of
//!   monomials whose exponents are capped by [`MonomialIdeal::max_exponents`].
//!   Capping never changes `(I : f)` because no generator has a larger
//!   exponent, and never increases the degree.
//! * [`v_number_squarefree`]: stable sets `A` of the clutter, by increasing
//!   size, until the neighbor set of `A` is a vertex cover.
//! * [`v_number_via_polarization`]: the stable-set formula on `I(pol)`, a
//!   lower bound that is exact when `I` has no embedded prime.

use crate::clutter::{Clutter, VertexSet};
use crate::decomposition::{associated_primes, AssociatedPrimeReport};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, PrimeSupport};
use crate::polarization::polarize_ideal;

/// Certificate `(I : f) = prime` with `degree = deg(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VWitness {
    pub degree: u64,
    pub f: Monomial,
    pub prime: PrimeSupport,
}

/// Visits every monomial of total degree `degree` inside the box
/// `0 <= e_i <= caps[i]`, in ascending lexicographic order. Stops early when
/// `visit` returns `true`.
pub(crate) fn for_each_in_box(
    caps: &[u32],
    degree: u64,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    fn rec(
        caps: &[u32],
        suffix_cap: &[u64],
        pos: usize,
        remaining: u64,
        exps: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if pos == caps.len() {
            return remaining == 0 && visit(exps);
        }
        // The remaining positions must be able to absorb what is left.
        let rest = suffix_cap[pos + 1];
        let lo = remaining.saturating_sub(rest);
        let hi = remaining.min(u64::from(caps[pos]));
        let mut e = lo;
        while e <= hi {
            exps[pos] = e as u32;
            if rec(caps, suffix_cap, pos + 1, remaining - e, exps, visit) {
                return true;
            }
            e += 1;
        }
        exps[pos] = 0;
        false
    }
    let mut suffix_cap = vec![0u64; caps.len() + 1];
    for i in (0..caps.len()).rev() {
        suffix_cap[i] = suffix_cap[i + 1] + u64::from(caps[i]);
    }
    if degree > suffix_cap[0] {
        return false;
    }
    let mut exps = vec![0u32; caps.len()];
    rec(caps, &suffix_cap, 0, degree, &mut exps, visit)
}

fn box_degree_bound(caps: &[u32]) -> u64 {
    caps.iter().map(|&c| u64::from(c)).sum()
}

/// `v(I)` by exhaustive degree-ascending search.
///
/// Ties are broken by the lexicographically least witness; a prime ideal has
/// `v = 0` with witness `1`.
pub fn v_number_definition(ideal: &MonomialIdeal) -> Result<VWitness> {
    ideal.require_proper()?;
    let caps = ideal.max_exponents();
    for degree in 0..=box_degree_bound(&caps) {
        let mut found = None;
        for_each_in_box(&caps, degree, &mut |exps| {
            let f = Monomial::from_exponents(exps.to_vec());
            if ideal.contains(&f) {
                return false;
            }
            if let Some(prime) = ideal.colon(&f).is_monomial_prime() {
                found = Some(VWitness { degree, f, prime });
                return true;
            }
            false
        });
        if let Some(w) = found {
            return Ok(w);
        }
    }
    Err(Error::Inconsistency(
        "no associated prime reached inside the exponent box".into(),
    ))
}

fn search_local(ideal: &MonomialIdeal, prime: &PrimeSupport) -> Option<VWitness> {
    let n = ideal.nvars();
    let caps = ideal.max_exponents();
    let target = prime.to_ideal(ideal.ring());
    for degree in 0..=box_degree_bound(&caps) {
        let mut found = None;
        for_each_in_box(&caps, degree, &mut |exps| {
            let f = Monomial::from_exponents(exps.to_vec());
            if ideal.contains(&f) {
                return false;
            }
            // Necessary: x_s * f in I for every s in the prime.
            let cheap = prime.vars().iter().all(|&s| {
                let xs = Monomial::variable(n, s);
                ideal.contains(&f.mul(&xs))
            });
            if cheap && ideal.colon(&f) == target {
                found = Some(VWitness {
                    degree,
                    f,
                    prime: prime.clone(),
                });
                return true;
            }
            false
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn require_associated(report: &AssociatedPrimeReport, prime: &PrimeSupport) -> Result<()> {
    if report.contains(prime) {
        Ok(())
    } else {
        Err(Error::NotAssociated {
            prime: prime.one_based(),
        })
    }
}

fn check_prime_ring(ideal: &MonomialIdeal, prime: &PrimeSupport) -> Result<()> {
    if prime.vars().iter().any(|&v| v >= ideal.nvars()) {
        return Err(Error::InvalidPrime);
    }
    Ok(())
}

/// Minimum-degree witness for a fixed associated prime.
pub fn local_witness(ideal: &MonomialIdeal, prime: &PrimeSupport) -> Result<VWitness> {
    check_prime_ring(ideal, prime)?;
    let report = associated_primes(ideal)?;
    require_associated(&report, prime)?;
    search_local(ideal, prime).ok_or_else(|| {
        Error::Inconsistency(format!("associated prime {prime} has no witness in the box"))
    })
}

/// `v_p(I)`.
pub fn v_number_local(ideal: &MonomialIdeal, prime: &PrimeSupport) -> Result<u64> {
    local_witness(ideal, prime).map(|w| w.degree)
}

/// Every `v_p(I)` from one box sweep, in canonical prime order.
pub fn local_v_numbers(ideal: &MonomialIdeal) -> Result<Vec<VWitness>> {
    let report = associated_primes(ideal)?;
    let caps = ideal.max_exponents();
    let mut slots: Vec<Option<VWitness>> = vec![None; report.primes.len()];
    let mut open = slots.len();
    for degree in 0..=box_degree_bound(&caps) {
        if open == 0 {
            break;
        }
        for_each_in_box(&caps, degree, &mut |exps| {
            let f = Monomial::from_exponents(exps.to_vec());
            if ideal.contains(&f) {
                return false;
            }
            if let Some(prime) = ideal.colon(&f).is_monomial_prime() {
                if let Some(k) = report.primes.iter().position(|p| *p == prime) {
                    if slots[k].is_none() {
                        slots[k] = Some(VWitness { degree, f, prime });
                        open -= 1;
                    }
                }
            }
            open == 0
        });
    }
    slots
        .into_iter()
        .zip(&report.primes)
        .map(|(w, p)| {
            w.ok_or_else(|| Error::Inconsistency(format!("associated prime {p} never reached")))
        })
        .collect()
}

/// `v(I(C))` from the stable-set formula.
///
/// Stable sets are tried by increasing size and, within a size, in
/// lexicographic order of their sorted vertex lists.
pub fn v_number_squarefree(clutter: &Clutter) -> Result<VWitness> {
    if clutter.edges().is_empty() {
        return Err(Error::InvalidClutter(
            "edge ideal of an edgeless clutter is the zero ideal".into(),
        ));
    }
    let n = clutter.nvertices();
    let candidates: Vec<usize> = (0..n)
        .filter(|&v| !clutter.edges().iter().any(|e| *e == VertexSet::singleton(v)))
        .collect();
    for size in 0..=candidates.len() {
        let mut found = None;
        clutter.for_each_stable_subset_of_size(&candidates, size, &mut |a| {
            let nb = clutter.neighbor_set(a);
            if clutter.is_vertex_cover(nb) {
                found = Some(a);
                true
            } else {
                false
            }
        });
        if let Some(a) = found {
            let nb = clutter.neighbor_set(a);
            let prime = PrimeSupport::new(nb.iter().collect(), n)
                .map_err(|_| Error::Inconsistency("empty neighbor cover".into()))?;
            return Ok(VWitness {
                degree: size as u64,
                f: Monomial::from_support(n, a.iter()),
                prime,
            });
        }
    }
    Err(Error::Inconsistency(
        "no stable set has a covering neighbor set".into(),
    ))
}

/// `v(I(pol))`, computed by the stable-set formula on the polarized clutter.
pub fn v_number_via_polarization(ideal: &MonomialIdeal) -> Result<u64> {
    ideal.require_proper()?;
    let (pol, _) = polarize_ideal(ideal)?;
    let clutter = Clutter::from_ideal(&pol)?;
    Ok(v_number_squarefree(&clutter)?.degree)
}

/// Least degree of a monomial in `(I : p) \ I`, for `p` an associated prime.
pub fn alpha_quotient(ideal: &MonomialIdeal, prime: &PrimeSupport) -> Result<u64> {
    check_prime_ring(ideal, prime)?;
    let report = associated_primes(ideal)?;
    require_associated(&report, prime)?;
    Ok(alpha_quotient_unchecked(ideal, prime))
}

fn alpha_quotient_unchecked(ideal: &MonomialIdeal, prime: &PrimeSupport) -> u64 {
    let n = ideal.nvars();
    let caps = ideal.max_exponents();
    for degree in 0..=box_degree_bound(&caps) {
        let hit = for_each_in_box(&caps, degree, &mut |exps| {
            let m = Monomial::from_exponents(exps.to_vec());
            !ideal.contains(&m)
                && prime
                    .vars()
                    .iter()
                    .all(|&s| ideal.contains(&m.mul(&Monomial::variable(n, s))))
        });
        if hit {
            return degree;
        }
    }
    unreachable!("a witness of p lies in (I : p) \\ I inside the box")
}

/// All routes side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VReport {
    pub definition: VWitness,
    pub squarefree: Option<VWitness>,
    pub polarization: u64,
    /// `min_p alpha((I : p) / I)` over the associated primes.
    pub alpha: u64,
    pub alpha_per_prime: Vec<(PrimeSupport, u64)>,
    pub local: Vec<VWitness>,
    pub has_embedded_prime: bool,
}

impl VReport {
    /// Whether the quotient formula reproduced `v`; it may legitimately
    /// differ on ideals with embedded primes.
    pub fn alpha_agrees(&self) -> bool {
        self.alpha == self.definition.degree
    }
}

/// Runs every applicable method and enforces the consistency rules between
/// them; any violation is reported as [`Error::Inconsistency`].
pub fn v_all_methods(ideal: &MonomialIdeal) -> Result<VReport> {
    ideal.require_proper()?;
    let definition = v_number_definition(ideal)?;
    let report = associated_primes(ideal)?;
    let local = local_v_numbers(ideal)?;
    let has_embedded_prime = !report.embedded.is_empty();
    let squarefree = if ideal.is_squarefree() {
        Some(v_number_squarefree(&Clutter::from_ideal(ideal)?)?)
    } else {
        None
    };
    let polarization = v_number_via_polarization(ideal)?;
    let alpha_per_prime: Vec<(PrimeSupport, u64)> = report
        .primes
        .iter()
        .map(|p| (p.clone(), alpha_quotient_unchecked(ideal, p)))
        .collect();
    let alpha = alpha_per_prime.iter().map(|(_, a)| *a).min().unwrap_or(0);

    let v = definition.degree;
    let mut problems = Vec::new();
    if let Some(sq) = &squarefree {
        if sq.degree != v {
            problems.push(format!("definition {v} != stable-set formula {}", sq.degree));
        }
    }
    if polarization > v {
        problems.push(format!("v(I(pol)) = {polarization} exceeds v(I) = {v}"));
    }
    if !has_embedded_prime && polarization != v {
        problems.push(format!(
            "no embedded prime but v(I(pol)) = {polarization} != v(I) = {v}"
        ));
    }
    if alpha > v {
        problems.push(format!("alpha quotient minimum {alpha} exceeds v(I) = {v}"));
    }
    let local_min = local.iter().map(|w| w.degree).min();
    if local_min != Some(v) {
        problems.push(format!("min of local v-numbers {local_min:?} != v(I) = {v}"));
    }
    if !problems.is_empty() {
        return Err(Error::Inconsistency(problems.join("; ")));
    }
    Ok(VReport {
        definition,
        squarefree,
        polarization,
        alpha,
        alpha_per_prime,
        local,
        has_embedded_prime,
    })
}
