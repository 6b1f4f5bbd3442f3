//! Graded Betti numbers of square-free monomial ideals through the homology
//! of restricted independence complexes, and the invariants read off them.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::clutter::{alexander_dual, Clutter, SimplicialComplex, VertexSet};
use crate::decomposition::associated_primes;
use crate::error::{Error, Result};
use crate::linalg::{is_prime, rank_in_characteristic};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::polarization::polarize_ideal;

pub const DEFAULT_BETTI_GUARD: usize = 16;
pub const DEFAULT_COMPLEX_GUARD: usize = 20;

/// Coefficient field, identified by its characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldChoice {
    #[default]
    Rational,
    Prime(u64),
}

impl FieldChoice {
    pub fn from_characteristic(p: u64) -> Result<Self> {
        match p {
            0 => Ok(FieldChoice::Rational),
            p if p < 1 << 32 && is_prime(p) => Ok(FieldChoice::Prime(p)),
            p => Err(Error::InvalidField(p)),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldChoice::Rational => 0,
            FieldChoice::Prime(p) => p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyOptions {
    pub field: FieldChoice,
    /// Largest vertex count for a full Betti table.
    pub betti_guard: usize,
    /// Largest vertex count for the homology of a single complex.
    pub complex_guard: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            field: FieldChoice::Rational,
            betti_guard: DEFAULT_BETTI_GUARD,
            complex_guard: DEFAULT_COMPLEX_GUARD,
        }
    }
}

impl HomologyOptions {
    pub fn with_field(field: FieldChoice) -> Self {
        HomologyOptions {
            field,
            ..Default::default()
        }
    }
}

/// Ranks of `∂ : C_s -> C_{s-1}` where `C_s` is spanned by the faces of size
/// `s`; index `s` of the result, `0` at `s = 0`.
fn boundary_ranks(faces: &[Vec<VertexSet>], p: u64) -> Vec<usize> {
    let mut ranks = vec![0; faces.len() + 1];
    for s in 1..faces.len() {
        let index: HashMap<VertexSet, usize> =
            faces[s - 1].iter().enumerate().map(|(k, f)| (*f, k)).collect();
        let matrix: Vec<Vec<i64>> = faces[s]
            .iter()
            .map(|f| {
                let mut row = vec![0i64; faces[s - 1].len()];
                for (pos, v) in f.iter().enumerate() {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    row[index[&f.without(v)]] = sign;
                }
                row
            })
            .collect();
        ranks[s] = rank_in_characteristic(&matrix, p);
    }
    ranks
}

/// Reduced homology ranks from faces grouped by size; entry `k + 1` holds
/// the rank in dimension `k`, starting at `k = -1`.
fn homology_from_faces(faces: &[Vec<VertexSet>], field: FieldChoice) -> Vec<usize> {
    let ranks = boundary_ranks(faces, field.characteristic());
    (0..faces.len())
        .map(|s| faces[s].len() - ranks[s] - ranks[s + 1])
        .collect()
}

/// Reduced homology ranks of `Δ`: entry `k + 1` is `dim H̃_k(Δ)`, from
/// `k = -1`. The void complex has no homology and yields an empty list.
pub fn reduced_homology_ranks(delta: &SimplicialComplex, field: FieldChoice) -> Vec<usize> {
    homology_from_faces(&delta.faces_by_size(), field)
}

/// [`reduced_homology_ranks`] behind the single-complex size guard.
pub fn reduced_homology_checked(
    delta: &SimplicialComplex,
    opts: &HomologyOptions,
) -> Result<Vec<usize>> {
    let n = delta.support().len();
    if n > opts.complex_guard {
        return Err(Error::SizeGuard {
            what: "reduced homology",
            n,
            guard: opts.complex_guard,
        });
    }
    Ok(reduced_homology_ranks(delta, opts.field))
}

/// Stable sets of `clutter` inside `w`, grouped by size.
fn stable_faces(incident: &[Vec<VertexSet>], w: VertexSet) -> Vec<Vec<VertexSet>> {
    fn rec(
        incident: &[Vec<VertexSet>],
        rest: VertexSet,
        current: VertexSet,
        out: &mut Vec<Vec<VertexSet>>,
    ) {
        for v in rest.iter() {
            let next = current.with(v);
            if incident[v].iter().any(|e| e.is_subset(next)) {
                continue;
            }
            if out.len() <= next.len() {
                out.push(Vec::new());
            }
            out[next.len()].push(next);
            let later = rest.difference(VertexSet::full(v + 1));
            rec(incident, later, next, out);
        }
    }
    let mut out = vec![vec![VertexSet::EMPTY]];
    rec(incident, w, VertexSet::EMPTY, &mut out);
    out
}

/// `β_{i,j}(R/I)` for `i >= 1`; `β_{0,0} = 1` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Non-zero entries `((i, j), rank)` ordered by `i`, then `j`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// `max{j - i}`, which is `0` for an empty table.
    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `Σ_j β_{i,j}`, index `i` from `0`.
    pub fn total_betti_numbers(&self) -> Vec<usize> {
        let mut totals = vec![1];
        for (&(i, _), &r) in &self.entries {
            if totals.len() <= i {
                totals.resize(i + 1, 0);
            }
            totals[i] += r;
        }
        totals
    }

    fn merge(mut self, other: BettiTable) -> BettiTable {
        for (k, v) in other.entries {
            *self.entries.entry(k).or_insert(0) += v;
        }
        self
    }
}

/// The Betti table of `R/I(C)` by summing, over all vertex subsets `W`, the
/// reduced homology of the independence complex restricted to `W`.
pub fn betti_table_clutter(clutter: &Clutter, opts: &HomologyOptions) -> Result<BettiTable> {
    let n = clutter.nvertices();
    if n > opts.betti_guard {
        return Err(Error::SizeGuard {
            what: "Betti table",
            n,
            guard: opts.betti_guard,
        });
    }
    let incident: Vec<Vec<VertexSet>> = (0..n)
        .map(|v| clutter.edges().iter().copied().filter(|e| e.contains(v)).collect())
        .collect();
    let field = opts.field;
    let table = (1u64..1 << n)
        .into_par_iter()
        .map(|mask| {
            let w = VertexSet(u128::from(mask));
            let faces = stable_faces(&incident, w);
            let ranks = homology_from_faces(&faces, field);
            let size = w.len();
            let mut t = BettiTable::default();
            for (idx, &r) in ranks.iter().enumerate() {
                // Dimension k = idx - 1 contributes to i = |W| - k - 1.
                if r > 0 && idx < size {
                    t.entries.insert((size - idx, size), r);
                }
            }
            t
        })
        .reduce(BettiTable::default, BettiTable::merge);
    Ok(table)
}

/// A square-free clutter standing in for `I`: its own, or that of `I(pol)`.
fn squarefree_model(ideal: &MonomialIdeal) -> Result<Clutter> {
    ideal.require_proper()?;
    if ideal.is_squarefree() {
        Clutter::from_ideal(ideal)
    } else {
        let (pol, _) = polarize_ideal(ideal)?;
        Clutter::from_ideal(&pol)
    }
}

/// Betti table of `R/I` from the polarization, which has the same graded
/// Betti numbers.
pub fn betti_table_polarized(ideal: &MonomialIdeal, opts: &HomologyOptions) -> Result<BettiTable> {
    betti_table_clutter(&squarefree_model(ideal)?, opts)
}

/// All lcms of non-empty sets of generators.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut frontier: Vec<Monomial> = ideal.generators().to_vec();
    seen.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in ideal.generators() {
                let l = m.lcm(g);
                if seen.insert(l.clone()) {
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort();
    out
}

/// Faces of the upper Koszul complex `K^b(I) = {F ⊆ supp b : x^(b - F) ∈ I}`,
/// grouped by size.
fn upper_koszul_faces(ideal: &MonomialIdeal, b: &Monomial) -> Vec<Vec<VertexSet>> {
    let support = b.support();
    let mut out: Vec<Vec<VertexSet>> = vec![Vec::new(); support.len() + 1];
    for mask in 0u64..1 << support.len() {
        let mut exps = b.exponents().to_vec();
        let mut face = VertexSet::EMPTY;
        for (k, &v) in support.iter().enumerate() {
            if mask >> k & 1 == 1 {
                exps[v] -= 1;
                face.insert(v);
            }
        }
        if ideal.contains(&Monomial::from_exponents(exps)) {
            out[face.len()].push(face);
        }
    }
    while out.last().is_some_and(|level| level.is_empty()) {
        out.pop();
    }
    out
}

/// Betti table of `R/I` from `β_{i,b}(R/I) = dim H̃_{i-2}(K^b(I))`, summed
/// over the lcm lattice. Works on `I` directly, without polarizing.
pub fn betti_table_lcm(ideal: &MonomialIdeal, opts: &HomologyOptions) -> Result<BettiTable> {
    ideal.require_proper()?;
    let total: u64 = ideal.max_exponents().iter().map(|&e| u64::from(e)).sum();
    let n = ideal.generators().len().min(total as usize);
    if n > opts.betti_guard {
        return Err(Error::SizeGuard {
            what: "Betti table",
            n,
            guard: opts.betti_guard,
        });
    }
    let field = opts.field;
    let table = lcm_lattice(ideal)
        .into_par_iter()
        .map(|b| {
            let ranks = homology_from_faces(&upper_koszul_faces(ideal, &b), field);
            let j = b.degree() as usize;
            let mut t = BettiTable::default();
            for (idx, &r) in ranks.iter().enumerate() {
                // idx = k + 1 with k = i - 2.
                if r > 0 {
                    *t.entries.entry((idx + 1, j)).or_insert(0) += r;
                }
            }
            t
        })
        .reduce(BettiTable::default, BettiTable::merge);
    Ok(table)
}

/// Betti table of `R/I`: square-free ideals use restricted independence
/// complexes, others the lcm lattice.
pub fn betti_table(ideal: &MonomialIdeal, opts: &HomologyOptions) -> Result<BettiTable> {
    if ideal.is_squarefree() {
        betti_table_clutter(&squarefree_model(ideal)?, opts)
    } else {
        betti_table_lcm(ideal, opts)
    }
}

/// `reg(R/I)`.
pub fn regularity(ideal: &MonomialIdeal, opts: &HomologyOptions) -> Result<usize> {
    Ok(betti_table(ideal, opts)?.regularity())
}

/// `pd(R/I)`.
pub fn projective_dimension(ideal: &MonomialIdeal, opts: &HomologyOptions) -> Result<usize> {
    Ok(betti_table(ideal, opts)?.projective_dimension())
}

/// `depth(R/I) = n - pd(R/I)`.
pub fn depth(ideal: &MonomialIdeal, opts: &HomologyOptions) -> Result<usize> {
    Ok(ideal.nvars() - projective_dimension(ideal, opts)?)
}

/// `dim(R/I) = n - ht(I)`.
pub fn krull_dim(ideal: &MonomialIdeal) -> Result<usize> {
    ideal.require_proper()?;
    if ideal.is_squarefree() {
        return Ok(Clutter::from_ideal(ideal)?.cover_numbers().beta0);
    }
    Ok(ideal.nvars() - associated_primes(ideal)?.height())
}

/// `dim(R/I(C)) = β₀(C)`.
pub fn krull_dim_clutter(clutter: &Clutter) -> usize {
    clutter.cover_numbers().beta0
}

pub fn is_cohen_macaulay(ideal: &MonomialIdeal, opts: &HomologyOptions) -> Result<bool> {
    Ok(depth(ideal, opts)? == krull_dim(ideal)?)
}

/// `depth k[Δ]` as the least `|F| + 1 + k` with `H̃_k(lk F) ≠ 0`, over all
/// faces `F` of the independence complex. Independent of Betti numbers.
pub fn depth_via_links(clutter: &Clutter, field: FieldChoice) -> usize {
    let delta = clutter.independence_complex();
    let mut best = usize::MAX;
    for level in delta.faces_by_size() {
        for f in level {
            let ranks = reduced_homology_ranks(&delta.link(f), field);
            if let Some(idx) = ranks.iter().position(|&r| r > 0) {
                // idx = k + 1.
                best = best.min(f.len() + idx);
            }
        }
    }
    best
}

/// Both sides of `reg(R/I) + 1 = pd(R/I^∨)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TeraiReport {
    pub reg_plus_one: usize,
    pub pd_of_dual: usize,
}

impl TeraiReport {
    pub fn holds(&self) -> bool {
        self.reg_plus_one == self.pd_of_dual
    }
}

pub fn terai_check(ideal: &MonomialIdeal, opts: &HomologyOptions) -> Result<TeraiReport> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquareFree);
    }
    let reg = regularity(ideal, opts)?;
    let dual = alexander_dual(ideal)?;
    let pd = projective_dimension(&dual, opts)?;
    Ok(TeraiReport {
        reg_plus_one: reg + 1,
        pd_of_dual: pd,
    })
}

/// Evaluation of the chain `α₀(C) <= v(I^∨) <= reg(R/I^∨)`, which forbids
/// `I(C)` from being Cohen–Macaulay, together with the bound
/// `v(I^∨) >= α₀(C) - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonCmReport {
    pub alpha0: usize,
    pub dual_v_number: u64,
    pub dual_regularity: usize,
    pub hypothesis: bool,
    pub cohen_macaulay: bool,
    pub dual_lower_bound: bool,
}

impl NonCmReport {
    /// The inequality chain, when it certifies non-Cohen–Macaulayness.
    pub fn certificate(&self) -> Option<String> {
        self.hypothesis.then(|| {
            format!(
                "alpha0 = {} <= v(I^dual) = {} <= reg(R/I^dual) = {}",
                self.alpha0, self.dual_v_number, self.dual_regularity
            )
        })
    }
}

pub fn non_cm_certificate(clutter: &Clutter, opts: &HomologyOptions) -> Result<NonCmReport> {
    let ideal = clutter.edge_ideal()?;
    let dual = clutter.dual()?;
    let alpha0 = clutter.cover_numbers().alpha0;
    let dual_v_number = dual.v_number();
    let dual_regularity = betti_table_clutter(&dual, opts)?.regularity();
    let cohen_macaulay = is_cohen_macaulay(&ideal, opts)?;
    let hypothesis = alpha0 as u64 <= dual_v_number && dual_v_number <= dual_regularity as u64;
    if hypothesis && cohen_macaulay {
        return Err(Error::Inconsistency(format!(
            "alpha0 <= v(I^dual) <= reg(R/I^dual) holds but {ideal} is Cohen-Macaulay"
        )));
    }
    Ok(NonCmReport {
        alpha0,
        dual_v_number,
        dual_regularity,
        hypothesis,
        cohen_macaulay,
        dual_lower_bound: dual_v_number + 1 >= alpha0 as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().map(|x| x - 1).collect()
    }

    fn opts() -> HomologyOptions {
        HomologyOptions::default()
    }

    fn c5() -> MonomialIdeal {
        parse_ideal("x1*x2, x1*x3, x2*x4, x3*x5, x4*x5").unwrap()
    }

    #[test]
    fn homology_of_basic_complexes() {
        let field = FieldChoice::Rational;
        let empty = SimplicialComplex::generated_by(3, vec![VertexSet::EMPTY]).unwrap();
        assert_eq!(reduced_homology_ranks(&empty, field), vec![1]);
        let circle = SimplicialComplex::generated_by(3, vec![set(&[1, 2]), set(&[2, 3]), set(&[1, 3])]).unwrap();
        assert_eq!(reduced_homology_ranks(&circle, field), vec![0, 0, 1]);
        let simplex = SimplicialComplex::generated_by(3, vec![set(&[1, 2, 3])]).unwrap();
        assert!(reduced_homology_ranks(&simplex, field).iter().all(|&r| r == 0));
        let two_points = SimplicialComplex::generated_by(2, vec![set(&[1]), set(&[2])]).unwrap();
        assert_eq!(reduced_homology_ranks(&two_points, FieldChoice::Prime(2)), vec![0, 1]);
    }

    #[test]
    fn betti_tables() {
        let t = betti_table(&parse_ideal("x1*x2").unwrap(), &opts()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((1, 2), 1)]);
        let t = betti_table(&parse_ideal("x1*x2, x3*x4").unwrap(), &opts()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((1, 2), 2), ((2, 4), 1)]);
        assert_eq!((t.regularity(), t.projective_dimension()), (2, 2));
        let t = betti_table(&parse_ideal("x1, x2").unwrap(), &opts()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((1, 1), 2), ((2, 2), 1)]);
    }

    #[test]
    fn lcm_route_on_known_tables() {
        let t = betti_table_lcm(&parse_ideal("x1^3").unwrap(), &opts()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((1, 3), 1)]);
        let m = parse_ideal("x1^2, x1*x2, x2^2").unwrap();
        let t = betti_table_lcm(&m, &opts()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((1, 2), 3), ((2, 3), 2)]);
        assert_eq!(t, betti_table_polarized(&m, &opts()).unwrap());
        let ci = parse_ideal("x1^2*x2, x3^3").unwrap();
        let t = betti_table(&ci, &opts()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((1, 3), 2), ((2, 6), 1)]);
        assert_eq!(lcm_lattice(&ci).len(), 3);
        assert_eq!(betti_table_lcm(&c5(), &opts()).unwrap(), betti_table(&c5(), &opts()).unwrap());
    }

    #[test]
    fn five_cycle_invariants() {
        assert_eq!(regularity(&c5(), &opts()).unwrap(), 2);
        assert_eq!(krull_dim(&c5()).unwrap(), 2);
        let d = depth(&c5(), &opts()).unwrap();
        assert_eq!(d, depth_via_links(&Clutter::from_ideal(&c5()).unwrap(), FieldChoice::Rational));
        assert!(terai_check(&c5(), &opts()).unwrap().holds());
    }

    #[test]
    fn depth_dimension_and_cm() {
        let i = parse_ideal("x1*x2").unwrap();
        assert_eq!((depth(&i, &opts()).unwrap(), krull_dim(&i).unwrap()), (1, 1));
        assert!(is_cohen_macaulay(&i, &opts()).unwrap());
        let star = parse_ideal("x1*x2, x1*x3").unwrap();
        assert_eq!(krull_dim(&star).unwrap(), 2);
        let two = parse_ideal("x1*x2, x3*x4").unwrap();
        assert!(is_cohen_macaulay(&two, &opts()).unwrap());
        let k22 = parse_ideal("x1*x3, x1*x4, x2*x3, x2*x4").unwrap();
        assert_eq!(depth(&k22, &opts()).unwrap(), 1);
        assert!(!is_cohen_macaulay(&k22, &opts()).unwrap());
    }

    #[test]
    fn polarization_route_for_powers() {
        let i = parse_ideal("x1^2").unwrap();
        assert_eq!(regularity(&i, &opts()).unwrap(), 1);
        assert_eq!(depth(&i, &opts()).unwrap(), 0);
        assert_eq!(krull_dim(&i).unwrap(), 0);
    }

    #[test]
    fn terai_on_an_edge() {
        let r = terai_check(&parse_ideal("x1*x2").unwrap(), &opts()).unwrap();
        assert_eq!((r.reg_plus_one, r.pd_of_dual), (2, 2));
    }

    #[test]
    fn non_cm_on_an_edge() {
        let c = Clutter::from_one_based(2, &[vec![1, 2]]).unwrap();
        let r = non_cm_certificate(&c, &opts()).unwrap();
        assert_eq!((r.alpha0, r.dual_v_number), (1, 0));
        assert!(!r.hypothesis && r.certificate().is_none() && r.dual_lower_bound);
    }

    #[test]
    fn guards_and_fields() {
        let small = HomologyOptions {
            betti_guard: 2,
            ..Default::default()
        };
        assert!(matches!(betti_table(&c5(), &small), Err(Error::SizeGuard { .. })));
        assert_eq!(FieldChoice::from_characteristic(4), Err(Error::InvalidField(4)));
        assert_eq!(FieldChoice::from_characteristic(2).unwrap().characteristic(), 2);
    }
}
