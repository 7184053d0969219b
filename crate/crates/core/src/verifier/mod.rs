//! Exhaustive theorem checking over small instances.
//!
//! Every suite enumerates its instances in a fixed order, stops at the first
//! failing instance and reports it as a [`Counterexample`] whose witnesses
//! re-fail the law when evaluated directly.

mod laws;
mod model;
mod tables;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::lgroup::UnitalLGroup;
use crate::mcnaughton::PLFunction;
use crate::mv::{ChainProduct, MvElement};
use crate::rational::Rational;

pub use laws::{Law, Witnesses};
pub use model::{Model, Mutant, Mutation, Standard};

use laws::{coords_boolean, coords_triadic};
use tables::{BelowBits, Tables};

/// A failing instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub law: Law,
    pub witnesses: Witnesses,
}

impl Counterexample {
    /// Whether the law now holds on the stored witnesses (it should not).
    pub fn recheck(&self, model: &dyn Model) -> bool {
        self.law.holds(model, &self.witnesses)
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}` fails on {}", self.law, self.witnesses)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Counterexample(Counterexample),
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub model: String,
    /// Named instance counts, e.g. `("triples", 1728)`.
    pub counts: Vec<(&'static str, u64)>,
    pub outcome: Outcome,
    pub elapsed: Duration,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn count(&self, name: &str) -> u64 {
        self.counts
            .iter()
            .find(|(k, _)| *k == name)
            .map_or(0, |(_, v)| *v)
    }

    pub fn instances(&self) -> u64 {
        self.counts.iter().map(|(_, v)| v).sum()
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.outcome {
            Outcome::Pass => None,
            Outcome::Counterexample(c) => Some(c),
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let verdict = match &self.outcome {
            Outcome::Pass => "pass".to_string(),
            Outcome::Counterexample(c) => format!("FAIL: {c}"),
        };
        write!(
            f,
            "{}: {} ({}; {:.3}s)",
            self.suite,
            verdict,
            counts.join(", "),
            self.elapsed.as_secs_f64()
        )?;
        for note in &self.notes {
            write!(f, "\n  {note}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    MvAxioms,
    PartialOrder,
    Centrality,
    Sigma,
    Corollary9,
    Ideals,
    SigmaClosedForm,
    Structure,
    Comparability,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::MvAxioms,
        Suite::PartialOrder,
        Suite::Centrality,
        Suite::Sigma,
        Suite::Corollary9,
        Suite::Ideals,
        Suite::SigmaClosedForm,
        Suite::Structure,
        Suite::Comparability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MvAxioms => "mv-axioms",
            Suite::PartialOrder => "partial-order",
            Suite::Centrality => "centrality",
            Suite::Sigma => "sigma",
            Suite::Corollary9 => "corollary9",
            Suite::Ideals => "ideals",
            Suite::SigmaClosedForm => "sigma-closed-form",
            Suite::Structure => "structure",
            Suite::Comparability => "comparability",
        }
    }

    pub fn run(self, model: &dyn Model, bounds: &Bounds) -> SuiteReport {
        match self {
            Suite::MvAxioms => verify_mv_axioms(model, &bounds.sweep),
            Suite::PartialOrder => verify_partial_order(model, &bounds.order_sweep),
            Suite::Centrality => verify_centrality_equivalences(model, &bounds.sweep),
            Suite::Sigma => verify_sigma_props(model, &bounds.sweep, bounds.chain_max),
            Suite::Corollary9 => verify_corollary9(model, &bounds.sweep, bounds.chain_max),
            Suite::Ideals => verify_ideal_model(model, bounds.ideal_carrier),
            Suite::SigmaClosedForm => verify_sigma_closed_form(),
            Suite::Structure => {
                verify_structure(&bounds.structure_sweep, bounds.samples, bounds.seed, &bounds.k0)
            }
            Suite::Comparability => verify_comparability(&bounds.k0),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        write!(f, "unknown suite `{}` (known: all, {})", self.0, names.join(", "))
    }
}

impl std::error::Error for UnknownSuite {}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Which chain products a suite sweeps: every sorted denominator multiset
/// within all three bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub max_carrier: u64,
    pub max_denominator: u32,
    pub max_factors: usize,
}

impl Sweep {
    /// Every product with carrier size at most `max_carrier`.
    pub fn carrier(max_carrier: u64) -> Self {
        Sweep {
            max_carrier,
            max_denominator: u32::MAX,
            max_factors: usize::MAX,
        }
    }

    /// Every product of at most `max_factors` chains with denominators up to
    /// `max_denominator`.
    pub fn bounded(max_denominator: u32, max_factors: usize) -> Self {
        Sweep {
            max_carrier: u64::MAX,
            max_denominator,
            max_factors,
        }
    }

    /// Sorted by carrier size, then denominators.
    pub fn algebras(&self) -> Vec<ChainProduct> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend(1, 1, &mut current, &mut out);
        out.sort_by(|a: &ChainProduct, b| {
            a.carrier_size()
                .cmp(&b.carrier_size())
                .then_with(|| a.denominators().cmp(b.denominators()))
        });
        out
    }

    fn extend(&self, min_d: u32, size: u64, current: &mut Vec<u32>, out: &mut Vec<ChainProduct>) {
        if current.len() == self.max_factors {
            return;
        }
        let mut d = min_d;
        while d <= self.max_denominator {
            let Some(next) = size.checked_mul(u64::from(d) + 1) else { break };
            if next > self.max_carrier {
                break;
            }
            current.push(d);
            out.push(ChainProduct::new(current.clone()).expect("positive denominators"));
            self.extend(d, next, current, out);
            current.pop();
            d += 1;
        }
    }
}

/// Ranges for the ℓ-group suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct K0Bounds {
    /// Coordinates range over `-max_abs..=max_abs`.
    pub max_abs: i64,
    pub max_rank: usize,
    pub max_unit: u32,
    /// Largest rank for the exhaustive good-sequence uniqueness search.
    pub unique_rank: usize,
}

impl Default for K0Bounds {
    fn default() -> Self {
        K0Bounds {
            max_abs: 5,
            max_rank: 3,
            max_unit: 4,
            unique_rank: 2,
        }
    }
}

impl K0Bounds {
    /// Unit vectors as sorted multisets.
    pub fn groups(&self, max_rank: usize) -> Vec<UnitalLGroup> {
        Sweep::bounded(self.max_unit, max_rank)
            .algebras()
            .iter()
            .map(UnitalLGroup::of_algebra)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Products for the element-level suites.
    pub sweep: Sweep,
    /// Products for the partial-order suite.
    pub order_sweep: Sweep,
    /// Chains `Ł_d`, `d ≤ chain_max`, added to the σ and fixpoint suites.
    pub chain_max: u32,
    /// Carrier bound for subset enumeration in the ideal suite.
    pub ideal_carrier: u64,
    /// Products for the local-finiteness/indicator suite.
    pub structure_sweep: Sweep,
    /// Random generator sets per algebra in the structure suite.
    pub samples: usize,
    pub seed: u64,
    pub k0: K0Bounds,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            sweep: Sweep::bounded(5, 3),
            order_sweep: Sweep::carrier(300),
            chain_max: 50,
            ideal_carrier: 12,
            structure_sweep: Sweep::bounded(5, 3),
            samples: 100,
            seed: 0x6d76_6b21,
            k0: K0Bounds::default(),
        }
    }
}

impl Bounds {
    /// Defaults with every element-level sweep capped at `max_carrier`.
    pub fn with_max_carrier(max_carrier: u64) -> Self {
        let d = Bounds::default();
        Bounds {
            sweep: Sweep {
                max_carrier,
                ..d.sweep
            },
            order_sweep: Sweep::carrier(max_carrier),
            ideal_carrier: max_carrier.min(d.ideal_carrier),
            ..d
        }
    }
}

/// Runs every suite with the given model.
pub fn run_all(model: &dyn Model, bounds: &Bounds) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|s| s.run(model, bounds)).collect()
}

#[derive(Clone, Copy, Default)]
struct Tally {
    algebras: u64,
    elements: u64,
    pairs: u64,
    triples: u64,
}

impl Tally {
    fn add(&mut self, other: &Tally) {
        self.algebras += other.algebras;
        self.elements += other.elements;
        self.pairs += other.pairs;
        self.triples += other.triples;
    }

    fn counts(&self) -> Vec<(&'static str, u64)> {
        [
            ("algebras", self.algebras),
            ("elements", self.elements),
            ("pairs", self.pairs),
            ("triples", self.triples),
        ]
        .into_iter()
        .filter(|&(_, v)| v > 0)
        .collect()
    }
}

type Check = (Tally, Option<Counterexample>);

fn failure(model: &dyn Model, law: Law, witnesses: Witnesses) -> Option<Counterexample> {
    let c = Counterexample { law, witnesses };
    debug_assert!(!c.recheck(model), "table and direct evaluation disagree on {c}");
    Some(c)
}

fn elements_witness(t: &Tables, idx: &[usize]) -> Witnesses {
    Witnesses::elements(idx.iter().map(|&i| t.elems[i].clone()).collect())
}

/// Runs `check` on every algebra (in parallel) and keeps the first failure in
/// sweep order.
fn over_algebras(
    suite: Suite,
    model: &dyn Model,
    algebras: &[ChainProduct],
    check: impl Fn(&ChainProduct) -> Check + Sync,
) -> SuiteReport {
    let start = Instant::now();
    let results: Vec<Check> = algebras.par_iter().map(&check).collect();
    let mut tally = Tally::default();
    let mut outcome = Outcome::Pass;
    for (t, fail) in results {
        tally.add(&t);
        if let Some(c) = fail {
            outcome = Outcome::Counterexample(c);
            break;
        }
    }
    SuiteReport {
        suite,
        model: model.name(),
        counts: tally.counts(),
        outcome,
        elapsed: start.elapsed(),
        notes: Vec::new(),
    }
}

fn with_chains(sweep: &Sweep, chain_max: u32) -> Vec<ChainProduct> {
    let mut all: BTreeSet<(u64, Vec<u32>)> = sweep
        .algebras()
        .into_iter()
        .map(|a| (a.carrier_size(), a.denominators().to_vec()))
        .collect();
    for d in 1..=chain_max {
        all.insert((u64::from(d) + 1, vec![d]));
    }
    all.into_iter()
        .map(|(_, ds)| ChainProduct::new(ds).expect("positive"))
        .collect()
}

/// MV-algebra equations and the commutative monoid laws for `⊕`, plus the
/// lattice operations and the Chang distance.
pub fn verify_mv_axioms(model: &dyn Model, sweep: &Sweep) -> SuiteReport {
    over_algebras(Suite::MvAxioms, model, &sweep.algebras(), |alg| {
        let t = Tables::new(model, alg);
        let n = t.n;
        let mut tally = Tally {
            algebras: 1,
            ..Tally::default()
        };
        let top = t.ng(t.zero());
        for x in 0..n {
            tally.elements += 1;
            let checks = [
                (Law::DoubleNegation, t.ng(t.ng(x)) == x),
                (Law::NegZeroAbsorbs, t.op(top, x) == top),
                (Law::OplusZeroIdentity, t.op(x, t.zero()) == x),
            ];
            if let Some((law, _)) = checks.iter().find(|(_, ok)| !ok) {
                return (tally, failure(model, *law, elements_witness(&t, &[x])));
            }
        }
        for x in 0..n {
            let ex = t.elems[x].numerators();
            for y in 0..n {
                tally.pairs += 1;
                let ey = t.elems[y].numerators();
                let max = t.index_of(ex.iter().zip(ey).map(|(a, b)| *a.max(b)));
                let min = t.index_of(ex.iter().zip(ey).map(|(a, b)| *a.min(b)));
                let dist = t.op(t.odot(x, t.ng(y)), t.odot(y, t.ng(x)));
                let checks = [
                    (Law::OplusCommutative, t.op(x, y) == t.op(y, x)),
                    (
                        Law::LukasiewiczAxiom,
                        t.op(t.ng(t.op(t.ng(x), y)), y) == t.op(t.ng(t.op(t.ng(y), x)), x),
                    ),
                    (Law::JoinIsMax, t.join(x, y) == max),
                    (Law::MeetIsMin, t.meet(x, y) == min),
                    (Law::DistanceSeparates, (dist == t.zero()) == (x == y)),
                ];
                if let Some((law, _)) = checks.iter().find(|(_, ok)| !ok) {
                    return (tally, failure(model, *law, elements_witness(&t, &[x, y])));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = t.op(x, y);
                for z in 0..n {
                    if t.op(xy, z) != t.op(x, t.op(y, z)) {
                        tally.triples += (x * n * n + y * n + z + 1) as u64;
                        return (
                            tally,
                            failure(model, Law::OplusAssociative, elements_witness(&t, &[x, y, z])),
                        );
                    }
                }
            }
        }
        tally.triples += (n * n * n) as u64;
        (tally, None)
    })
}

/// `⊑` is reflexive, antisymmetric and transitive.
///
/// Transitivity over all triples is checked row-wise: whenever `x ⊑ y`, the
/// up-set of `y` must be contained in the up-set of `x`.
pub fn verify_partial_order(model: &dyn Model, sweep: &Sweep) -> SuiteReport {
    over_algebras(Suite::PartialOrder, model, &sweep.algebras(), |alg| {
        let elems: Vec<MvElement> = alg.elements().collect();
        let n = elems.len();
        let below = BelowBits::new(model, &elems);
        let w = |idx: &[usize]| Witnesses::elements(idx.iter().map(|&i| elems[i].clone()).collect());
        let mut tally = Tally {
            algebras: 1,
            ..Tally::default()
        };
        for x in 0..n {
            tally.elements += 1;
            if !below.get(x, x) {
                return (tally, failure(model, Law::Reflexive, w(&[x])));
            }
        }
        for x in 0..n {
            for y in 0..n {
                tally.pairs += 1;
                if x != y && below.get(x, y) && below.get(y, x) {
                    return (tally, failure(model, Law::Antisymmetric, w(&[x, y])));
                }
            }
        }
        for x in 0..n {
            for y in below.ones(x) {
                let missing = below
                    .row(y)
                    .iter()
                    .zip(below.row(x))
                    .enumerate()
                    .find_map(|(wi, (ry, rx))| {
                        let diff = ry & !rx;
                        (diff != 0).then(|| wi * 64 + diff.trailing_zeros() as usize)
                    });
                if let Some(z) = missing {
                    tally.triples += (x * n * n + y * n + z + 1) as u64;
                    return (tally, failure(model, Law::Transitive, w(&[x, y, z])));
                }
            }
        }
        tally.triples += (n * n * n) as u64;
        (tally, None)
    })
}

/// boolean ⟺ characteristic ⟺ ⊑-minimal ⟺ coordinates in {0,1}.
pub fn verify_centrality_equivalences(model: &dyn Model, sweep: &Sweep) -> SuiteReport {
    over_algebras(Suite::Centrality, model, &sweep.algebras(), |alg| {
        let t = Tables::new(model, alg);
        let below = BelowBits::new(model, &t.elems);
        let mut tally = Tally {
            algebras: 1,
            ..Tally::default()
        };
        for x in 0..t.n {
            tally.elements += 1;
            tally.pairs += t.n as u64;
            let boolean = t.op(x, x) == x;
            let characteristic = t.meet(x, t.ng(x)) == t.zero();
            let minimal = (0..t.n).all(|y| y == x || !below.get(y, x));
            let coords = coords_boolean(&t.elems[x]);
            if !(boolean == characteristic && characteristic == minimal && minimal == coords) {
                return (
                    tally,
                    failure(model, Law::CentralityEquivalence, elements_witness(&t, &[x])),
                );
            }
        }
        (tally, None)
    })
}

/// `x_σ ⊑ x` everywhere, and σ moves every value strictly toward the nearest
/// of 0, 1/2, 1.
pub fn verify_sigma_props(model: &dyn Model, sweep: &Sweep, chain_max: u32) -> SuiteReport {
    let algebras = with_chains(sweep, chain_max);
    over_algebras(Suite::Sigma, model, &algebras, |alg| {
        let t = Tables::new(model, alg);
        let below = BelowBits::new(model, &t.elems);
        let mut tally = Tally {
            algebras: 1,
            ..Tally::default()
        };
        for x in 0..t.n {
            tally.elements += 1;
            let s = t.sigma(x);
            if !below.get(s, x) {
                return (tally, failure(model, Law::CentripetalStep, elements_witness(&t, &[x])));
            }
            let ex = &t.elems[x];
            let es = &t.elems[s];
            let strict = (0..ex.rank()).all(|i| {
                let (xi, si, d) = (ex.numerators()[i], es.numerators()[i], alg.denominators()[i]);
                match ex.side_of_half(i) {
                    std::cmp::Ordering::Less if xi > 0 => si < xi,
                    std::cmp::Ordering::Greater if xi < d => si > xi,
                    _ => true,
                }
            });
            if !strict {
                return (tally, failure(model, Law::StrictProgress, elements_witness(&t, &[x])));
            }
        }
        (tally, None)
    })
}

/// Fixpoint iteration, the step count `n` and the central cone.
pub fn verify_corollary9(model: &dyn Model, sweep: &Sweep, chain_max: u32) -> SuiteReport {
    let algebras = with_chains(sweep, chain_max);
    over_algebras(Suite::Corollary9, model, &algebras, |alg| {
        let t = Tables::new(model, alg);
        let below = BelowBits::new(model, &t.elems);
        let bound = alg.max_denominator() as usize;
        let mut tally = Tally {
            algebras: 1,
            ..Tally::default()
        };
        let w = |idx: &[usize]| elements_witness(&t, idx);
        let booleans: Vec<usize> = (0..t.n).filter(|&i| coords_boolean(&t.elems[i])).collect();
        let halves: Vec<Vec<bool>> = t
            .elems
            .iter()
            .map(|e| (0..e.rank()).map(|i| e.is_half_at(i)).collect())
            .collect();
        let mut steps = vec![0usize; t.n];
        let mut fixpoints = vec![0usize; t.n];
        for x in 0..t.n {
            tally.elements += 1;
            let mut cur = x;
            let mut n = None;
            for k in 0..=bound {
                let next = t.sigma(cur);
                if next == cur {
                    n = Some(k);
                    break;
                }
                cur = next;
            }
            let Some(n) = n.filter(|&n| n <= bound) else {
                return (tally, failure(model, Law::StabilizesWithinBound, w(&[x])));
            };
            steps[x] = n;
            fixpoints[x] = cur;
            let ex = &t.elems[x];
            let central = coords_boolean(ex) || t.ng(x) == x;
            let no_half = halves[x].iter().all(|h| !h);
            let cone: Vec<usize> = booleans.iter().copied().filter(|&r| below.get(r, x)).collect();
            let up = t.op(cur, cur);
            let down = t.odot(cur, cur);
            let checks = [
                (Law::CentralIsFixed, !central || n == 0),
                (Law::FixedIsTriadic, n != 0 || coords_triadic(ex)),
                (Law::FixpointIsTriadic, coords_triadic(&t.elems[cur])),
                (Law::ConeNonempty, !cone.is_empty()),
                (Law::ConeSingletonIffNoHalf, (cone.len() == 1) == no_half),
                (Law::ConeSingletonIsFixpoint, cone.len() != 1 || cone[0] == cur),
                (
                    Law::ConeHasTwoExtremes,
                    no_half || (up != down && cone.contains(&up) && cone.contains(&down)),
                ),
            ];
            if let Some((law, _)) = checks.iter().find(|(_, ok)| !ok) {
                return (tally, failure(model, *law, w(&[x])));
            }
        }
        for x in 0..t.n {
            for y in 0..t.n {
                tally.pairs += 1;
                if below.get(x, y) && halves[x] == halves[y] && steps[x] > steps[y] {
                    return (tally, failure(model, Law::Monotone, w(&[x, y])));
                }
            }
        }
        (tally, None)
    })
}

/// Ideals found by brute-force subset enumeration are exactly the
/// coordinate-vanishing sets, and primes are exactly the ideals with a chain
/// quotient, the singleton vanishing sets, and the meet-irreducible ideals.
pub fn verify_ideal_model(model: &dyn Model, max_carrier: u64) -> SuiteReport {
    let max_carrier = max_carrier.min(16);
    let algebras = Sweep::carrier(max_carrier).algebras();
    let mut report = over_algebras(Suite::Ideals, model, &algebras, |alg| {
        let all: Vec<MvElement> = alg.elements().collect();
        let n = all.len();
        let mut tally = Tally {
            algebras: 1,
            ..Tally::default()
        };
        let induced: Vec<BTreeSet<MvElement>> = crate::spectra::enumerate_ideals(alg)
            .iter()
            .map(|i| i.members().into_iter().collect())
            .collect();
        let mut ideals: Vec<BTreeSet<MvElement>> = Vec::new();
        for bits in 0u64..(1 << n) {
            tally.elements += 1;
            let subset: Vec<MvElement> =
                (0..n).filter(|i| bits >> i & 1 == 1).map(|i| all[i].clone()).collect();
            let is_ideal = laws::is_ideal(model, alg, &subset);
            let set: BTreeSet<MvElement> = subset.iter().cloned().collect();
            if is_ideal != induced.contains(&set) {
                let witnesses = Witnesses {
                    algebra: Some(alg.clone()),
                    elements: subset,
                    ..Default::default()
                };
                return (
                    tally,
                    failure(model, Law::IdealsAreCoordinateInduced, witnesses),
                );
            }
            if is_ideal {
                ideals.push(set);
            }
        }
        for ideal in &ideals {
            tally.pairs += 1;
            if !laws::prime_characterization_holds(model, alg, ideal, &ideals) {
                let witnesses = Witnesses {
                    algebra: Some(alg.clone()),
                    elements: ideal.iter().cloned().collect(),
                    ..Default::default()
                };
                return (tally, failure(model, Law::PrimeIffChainQuotient, witnesses));
            }
        }
        (tally, None)
    });
    report.counts = vec![
        ("algebras", report.count("algebras")),
        ("subsets", report.count("elements")),
        ("ideals", report.count("pairs")),
    ];
    report
}

/// Expands σ over the free generator and compares it with both candidate
/// closed forms.
pub fn verify_sigma_closed_form() -> SuiteReport {
    let start = Instant::now();
    let sigma = PLFunction::sigma_star();
    let three = Rational::from_integer(3);
    let shifted = PLFunction::clamped_affine(&three, &Rational::from_integer(-1));
    let unshifted = PLFunction::clamped_affine(&three, &Rational::zero());
    let half = Rational::half();
    let fix: Vec<String> = sigma
        .fixpoints()
        .iter()
        .map(|(a, b)| if a == b { a.to_string() } else { format!("[{a}, {b}]") })
        .collect();
    let notes = vec![
        format!("σ* by term expansion = {sigma}"),
        format!(
            "equals min(1, max(0, 3x − 1)): {}",
            if sigma == shifted { "yes" } else { "no" }
        ),
        format!(
            "equals min(1, max(0, 3x)): {} (at x = 1/2: term gives {}, 3x form gives {})",
            if sigma == unshifted { "yes" } else { "no" },
            sigma.eval(&half).expect("in range"),
            unshifted.eval(&half).expect("in range"),
        ),
        format!("fixpoints: {{{}}}", fix.join(", ")),
    ];
    let outcome = if laws::sigma_closed_form_holds() {
        Outcome::Pass
    } else {
        Outcome::Counterexample(Counterexample {
            law: Law::SigmaClosedForm,
            witnesses: Witnesses::default(),
        })
    };
    SuiteReport {
        suite: Suite::SigmaClosedForm,
        model: Standard.name(),
        counts: vec![("pieces", sigma.pieces().len() as u64)],
        outcome,
        elapsed: start.elapsed(),
        notes,
    }
}

/// Local finiteness, zeroset and level-set indicators, and discreteness of
/// extremal states.
pub fn verify_structure(sweep: &Sweep, samples: usize, seed: u64, k0: &K0Bounds) -> SuiteReport {
    let algebras = sweep.algebras();
    let start = Instant::now();
    let results: Vec<(u64, u64, Option<Counterexample>)> = algebras
        .par_iter()
        .enumerate()
        .map(|(ai, alg)| structure_check(alg, samples, seed ^ ((ai as u64) << 16)))
        .collect();
    let (mut subalgebras, mut indicators) = (0, 0);
    let mut outcome = Outcome::Pass;
    for (s, i, fail) in results {
        subalgebras += s;
        indicators += i;
        if let Some(c) = fail {
            outcome = Outcome::Counterexample(c);
            break;
        }
    }
    let mut states = 0;
    if outcome == Outcome::Pass {
        'groups: for g in k0.groups(k0.max_rank) {
            for i in 0..g.rank() {
                states += 1;
                let w = Witnesses {
                    groups: vec![g.unit_element()],
                    indices: vec![i],
                    ..Default::default()
                };
                if !Law::DiscreteState.holds(&Standard, &w) {
                    outcome = Outcome::Counterexample(Counterexample {
                        law: Law::DiscreteState,
                        witnesses: w,
                    });
                    break 'groups;
                }
            }
        }
    }
    SuiteReport {
        suite: Suite::Structure,
        model: Standard.name(),
        counts: vec![
            ("algebras", algebras.len() as u64),
            ("subalgebras", subalgebras),
            ("indicators", indicators),
            ("states", states),
        ],
        outcome,
        elapsed: start.elapsed(),
        notes: Vec::new(),
    }
}

fn structure_check(alg: &ChainProduct, samples: usize, seed: u64) -> (u64, u64, Option<Counterexample>) {
    let t = Tables::new(&Standard, alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subalgebras = 0;
    for _ in 0..samples {
        subalgebras += 1;
        let k = rng.gen_range(1..=3usize);
        let gens: Vec<MvElement> = (0..k).map(|_| t.elems[rng.gen_range(0..t.n)].clone()).collect();
        let sub = crate::spectra::generated_subalgebra(alg, &gens).expect("same algebra");
        let mut member = vec![false; t.n];
        for e in &sub {
            member[e.index()] = true;
        }
        let closed = member[t.zero()]
            && member[t.one()]
            && gens.iter().all(|g| member[g.index()])
            && sub.len() <= t.n
            && sub.iter().all(|x| {
                let x = x.index();
                member[t.ng(x)]
                    && sub.iter().all(|y| {
                        let y = y.index();
                        member[t.op(x, y)]
                            && member[t.odot(x, y)]
                            && member[t.join(x, y)]
                            && member[t.meet(x, y)]
                    })
            });
        if !closed {
            let w = Witnesses {
                algebra: Some(alg.clone()),
                elements: gens,
                ..Default::default()
            };
            return (subalgebras, 0, failure(&Standard, Law::SubalgebraClosed, w));
        }
    }
    let mut levels: BTreeSet<Rational> = alg
        .denominators()
        .iter()
        .flat_map(|&d| crate::mv::Chain::new(d).expect("positive").values())
        .collect();
    levels.insert(Rational::frac(1, i64::from(alg.max_denominator()) + 1));
    let mut indicators = 0;
    for a in &t.elems {
        for rho in &levels {
            indicators += 1;
            if !laws::indicator_exact(a, rho) {
                let w = Witnesses {
                    algebra: Some(alg.clone()),
                    elements: vec![a.clone()],
                    rationals: vec![rho.clone()],
                    ..Default::default()
                };
                return (subalgebras, indicators, failure(&Standard, Law::IndicatorExact, w));
            }
        }
    }
    (subalgebras, indicators, None)
}

/// General comparability and good sequences in `(ℤ^m, u)`.
pub fn verify_comparability(k0: &K0Bounds) -> SuiteReport {
    let start = Instant::now();
    let mut counts = [0u64; 4];
    let mut outcome = Outcome::Pass;
    'groups: for g in k0.groups(k0.max_rank) {
        let m = g.rank();
        let vectors: Vec<_> = box_vectors(m, -k0.max_abs, k0.max_abs)
            .into_iter()
            .map(|v| g.element(v).expect("arity"))
            .collect();
        // comparability over all pairs, in parallel per h
        let split: Vec<(u64, Option<Counterexample>)> = vectors
            .par_iter()
            .map(|h| {
                let mut n = 0;
                for k in &vectors {
                    n += 1;
                    if !laws::comparability_holds(h, k) {
                        let w = Witnesses::groups(vec![h.clone(), k.clone()]);
                        return (n, failure(&Standard, Law::ComparabilitySplit, w));
                    }
                }
                (n, None)
            })
            .collect();
        for (n, fail) in split {
            counts[0] += n;
            if let Some(c) = fail {
                outcome = Outcome::Counterexample(c);
                break 'groups;
            }
        }
        // good sequences for 0 ≤ h ≤ 3u
        let upper: Vec<i64> = g.unit().iter().map(|&d| 3 * i64::from(d)).collect();
        let hs = box_vectors_upto(&upper);
        let unique = m <= k0.unique_rank;
        let seq: Vec<(u64, u64, Option<Counterexample>)> = hs
            .par_iter()
            .map(|h| {
                let h = g.element(h.clone()).expect("arity");
                let w = Witnesses {
                    groups: vec![h],
                    indices: vec![4],
                    ..Default::default()
                };
                if !Law::GoodSequence.holds(&Standard, &w) {
                    return (1, 0, failure(&Standard, Law::GoodSequence, w));
                }
                if unique && !Law::GoodSequenceUnique.holds(&Standard, &w) {
                    return (1, 1, failure(&Standard, Law::GoodSequenceUnique, w));
                }
                (1, u64::from(unique), None)
            })
            .collect();
        for (a, u, fail) in seq {
            counts[1] += a;
            counts[2] += u;
            if let Some(c) = fail {
                outcome = Outcome::Counterexample(c);
                break 'groups;
            }
        }
        // order test on the nonnegative part of the box
        let nonneg = box_vectors(m, 0, k0.max_abs);
        for h in &nonneg {
            for k in &nonneg {
                counts[3] += 1;
                let w = Witnesses::groups(vec![
                    g.element(h.clone()).expect("arity"),
                    g.element(k.clone()).expect("arity"),
                ]);
                if !Law::GoodSequenceOrder.holds(&Standard, &w) {
                    outcome = Outcome::Counterexample(Counterexample {
                        law: Law::GoodSequenceOrder,
                        witnesses: w,
                    });
                    break 'groups;
                }
            }
        }
    }
    SuiteReport {
        suite: Suite::Comparability,
        model: Standard.name(),
        counts: vec![
            ("splits", counts[0]),
            ("good sequences", counts[1]),
            ("uniqueness searches", counts[2]),
            ("order tests", counts[3]),
        ],
        outcome,
        elapsed: start.elapsed(),
        notes: Vec::new(),
    }
}

fn box_vectors(m: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    box_vectors_upto(&vec![hi - lo; m])
        .into_iter()
        .map(|v| v.into_iter().map(|c| c + lo).collect())
        .collect()
}

fn box_vectors_upto(upper: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &u in upper {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=u).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}
