//! Games, coalition structures, and the individual-rationality checks shared
//! by every solver.
//!
//! Agents are `0..n` and coalitions are `0..k` throughout the library; the
//! text formats in [`crate::io`] shift both to 1-based ids.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

pub type Agent = usize;

/// Inclusive size window for one coalition of a size-constrained game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SizeBound {
    pub lower: usize,
    pub upper: usize,
}

impl SizeBound {
    pub fn new(lower: usize, upper: usize) -> Self {
        SizeBound { lower, upper }
    }

    pub fn contains(&self, size: usize) -> bool {
        self.lower <= size && size <= self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Exactly `k` nonempty coalitions.
    KAshg,
    /// `k` labeled coalitions, coalition `j` holding between `bounds[j].lower`
    /// and `bounds[j].upper` agents.
    Scc(Vec<SizeBound>),
}

impl Mode {
    pub fn is_scc(&self) -> bool {
        matches!(self, Mode::Scc(_))
    }
}

/// Utility semantics over the same pairwise valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Ashg,
    Fhg,
    Mfhg,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least one agent")]
    NoAgents,
    #[error("the number of coalitions must be at least 1")]
    NoCoalitions,
    #[error("agent {agent} is out of range for {n} agents")]
    AgentOutOfRange { agent: Agent, n: usize },
    #[error("agent {0} cannot value itself")]
    SelfValuation(Agent),
    #[error("arc ({0}, {1}) has weight zero; absent arcs are implicit")]
    ZeroWeight(Agent, Agent),
    #[error("arc ({0}, {1}) is given more than once")]
    DuplicateArc(Agent, Agent),
    #[error("expected {expected} size bounds, got {got}")]
    BoundCount { expected: usize, got: usize },
    #[error("coalition {coalition} has lower bound {lower} above upper bound {upper}")]
    InvertedBound { coalition: usize, lower: usize, upper: usize },
    #[error("upper bounds must be nonincreasing, but coalition {coalition} exceeds its predecessor")]
    UnsortedUpperBounds { coalition: usize },
    #[error("bounds cannot fit {n} agents: lower bounds sum to {lower_sum}, upper bounds to {upper_sum}")]
    BoundSumMismatch { n: usize, lower_sum: usize, upper_sum: usize },
    #[error("structure has {structure} agents but the game has {game}")]
    AgentCountMismatch { game: usize, structure: usize },
    #[error("structure has {structure} coalitions but the game has {game}")]
    CoalitionCountMismatch { game: usize, structure: usize },
    #[error("operation requires k = 1, game has k = {0}")]
    WrongK(usize),
}

/// An additively separable hedonic game with a coalition-count constraint
/// and, in size-constrained mode, per-coalition size bounds.
///
/// Valuations are a sparse digraph of nonzero integer weights; `weight(i, j)`
/// is agent `i`'s value for sharing a coalition with `j`.
#[derive(Debug, Clone)]
pub struct Game {
    n: usize,
    k: usize,
    mode: Mode,
    arcs: BTreeMap<(Agent, Agent), i64>,
    dense: Vec<i64>,
    out: Vec<Vec<(Agent, i64)>>,
}

impl PartialEq for Game {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.mode == other.mode && self.arcs == other.arcs
    }
}

impl Eq for Game {}

impl Game {
    pub fn new<I>(n: usize, k: usize, mode: Mode, arcs: I) -> Result<Self, GameError>
    where
        I: IntoIterator<Item = (Agent, Agent, i64)>,
    {
        if n == 0 {
            return Err(GameError::NoAgents);
        }
        if k == 0 {
            return Err(GameError::NoCoalitions);
        }
        if let Mode::Scc(bounds) = &mode {
            validate_bounds(n, k, bounds)?;
        }
        let mut map = BTreeMap::new();
        for (i, j, w) in arcs {
            for a in [i, j] {
                if a >= n {
                    return Err(GameError::AgentOutOfRange { agent: a, n });
                }
            }
            if i == j {
                return Err(GameError::SelfValuation(i));
            }
            if w == 0 {
                return Err(GameError::ZeroWeight(i, j));
            }
            if map.insert((i, j), w).is_some() {
                return Err(GameError::DuplicateArc(i, j));
            }
        }
        let mut dense = vec![0i64; n * n];
        let mut out = vec![Vec::new(); n];
        for (&(i, j), &w) in &map {
            dense[i * n + j] = w;
            out[i].push((j, w));
        }
        Ok(Game { n, k, mode, arcs: map, dense, out })
    }

    /// Builds a game from undirected weighted edges, storing both orientations.
    pub fn symmetric<I>(n: usize, k: usize, mode: Mode, edges: I) -> Result<Self, GameError>
    where
        I: IntoIterator<Item = (Agent, Agent, i64)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        let arcs = edges.iter().flat_map(|&(i, j, w)| [(i, j, w), (j, i, w)]);
        Game::new(n, k, mode, arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn bounds(&self) -> Option<&[SizeBound]> {
        match &self.mode {
            Mode::KAshg => None,
            Mode::Scc(b) => Some(b),
        }
    }

    #[inline]
    pub fn weight(&self, from: Agent, to: Agent) -> i64 {
        self.dense[from * self.n + to]
    }

    /// Nonzero arcs `(from, to, weight)` in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Agent, Agent, i64)> + '_ {
        self.arcs.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_arcs(&self, agent: Agent) -> &[(Agent, i64)] {
        &self.out[agent]
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs.iter().all(|(&(i, j), &w)| self.weight(j, i) == w)
    }

    /// Every weight lies in {-1, 0, +1}.
    pub fn is_binary(&self) -> bool {
        self.arcs.values().all(|w| w.abs() == 1)
    }

    pub fn max_abs_weight(&self) -> u64 {
        self.arcs.values().map(|w| w.unsigned_abs()).max().unwrap_or(0)
    }

    /// Same valuations and mode with the number of coalitions replaced.
    pub fn with_k(&self, k: usize, mode: Mode) -> Result<Game, GameError> {
        Game::new(self.n, k, mode, self.arcs())
    }

    /// Relabels agents: agent `a` of `self` becomes `perm[a]`.
    pub fn permuted(&self, perm: &[Agent]) -> Result<Game, GameError> {
        assert_eq!(perm.len(), self.n, "permutation length");
        Game::new(self.n, self.k, self.mode.clone(), self.arcs().map(|(i, j, w)| (perm[i], perm[j], w)))
    }

    /// Sum of `weight(agent, m)` over `members`, in exact arithmetic.
    pub(crate) fn sum_towards(&self, agent: Agent, members: impl IntoIterator<Item = Agent>) -> i128 {
        members.into_iter().map(|m| self.weight(agent, m) as i128).sum()
    }

    fn check_structure(&self, structure: &CoalitionStructure) -> Result<(), GameError> {
        if structure.n() != self.n {
            return Err(GameError::AgentCountMismatch { game: self.n, structure: structure.n() });
        }
        if structure.k() != self.k {
            return Err(GameError::CoalitionCountMismatch { game: self.k, structure: structure.k() });
        }
        Ok(())
    }

    fn check_agent(&self, agent: Agent) -> Result<(), GameError> {
        if agent >= self.n {
            return Err(GameError::AgentOutOfRange { agent, n: self.n });
        }
        Ok(())
    }

    /// Additive utilities of all agents. Sums of `i64` weights cannot overflow
    /// `i128` for any realistic agent count.
    pub(crate) fn utilities(&self, structure: &CoalitionStructure) -> Vec<i128> {
        let mut util = vec![0i128; self.n];
        for (i, u) in util.iter_mut().enumerate() {
            let c = structure.coalition_of(i);
            *u = self
                .out_arcs(i)
                .iter()
                .filter(|&&(j, _)| structure.coalition_of(j) == c)
                .map(|&(_, w)| w as i128)
                .sum();
        }
        util
    }
}

fn validate_bounds(n: usize, k: usize, bounds: &[SizeBound]) -> Result<(), GameError> {
    if bounds.len() != k {
        return Err(GameError::BoundCount { expected: k, got: bounds.len() });
    }
    for (j, b) in bounds.iter().enumerate() {
        if b.lower > b.upper {
            return Err(GameError::InvertedBound { coalition: j, lower: b.lower, upper: b.upper });
        }
        if j > 0 && b.upper > bounds[j - 1].upper {
            return Err(GameError::UnsortedUpperBounds { coalition: j });
        }
    }
    let lower_sum: usize = bounds.iter().map(|b| b.lower).sum();
    let upper_sum: usize = bounds.iter().map(|b| b.upper).sum();
    if lower_sum > n || upper_sum < n {
        return Err(GameError::BoundSumMismatch { n, lower_sum, upper_sum });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("agent {agent} assigned to coalition {coalition}, but only {k} coalitions exist")]
    LabelOutOfRange { agent: Agent, coalition: usize, k: usize },
    #[error("agent {0} appears in more than one coalition")]
    AssignedTwice(Agent),
    #[error("agent {0} is not assigned to any coalition")]
    Unassigned(Agent),
    #[error("agent {agent} is out of range for {n} agents")]
    AgentOutOfRange { agent: Agent, n: usize },
}

/// A labeled partition of agents into coalitions `0..k`. Coalitions may be
/// empty here; whether that is allowed depends on the game's mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoalitionStructure {
    k: usize,
    assignment: Vec<usize>,
}

impl CoalitionStructure {
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self, StructureError> {
        for (agent, &c) in assignment.iter().enumerate() {
            if c >= k {
                return Err(StructureError::LabelOutOfRange { agent, coalition: c, k });
            }
        }
        Ok(CoalitionStructure { k, assignment })
    }

    /// Builds a structure from explicit member lists, one per coalition label.
    pub fn from_coalitions(n: usize, coalitions: &[Vec<Agent>]) -> Result<Self, StructureError> {
        let mut assignment = vec![usize::MAX; n];
        for (c, members) in coalitions.iter().enumerate() {
            for &a in members {
                if a >= n {
                    return Err(StructureError::AgentOutOfRange { agent: a, n });
                }
                if assignment[a] != usize::MAX {
                    return Err(StructureError::AssignedTwice(a));
                }
                assignment[a] = c;
            }
        }
        if let Some(a) = assignment.iter().position(|&c| c == usize::MAX) {
            return Err(StructureError::Unassigned(a));
        }
        Ok(CoalitionStructure { k: coalitions.len(), assignment })
    }

    pub fn grand(n: usize) -> Self {
        CoalitionStructure { k: 1, assignment: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn coalition_of(&self, agent: Agent) -> usize {
        self.assignment[agent]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn members(&self, coalition: usize) -> Vec<Agent> {
        (0..self.n()).filter(|&a| self.assignment[a] == coalition).collect()
    }

    pub fn coalitions(&self) -> Vec<Vec<Agent>> {
        let mut out = vec![Vec::new(); self.k];
        for (a, &c) in self.assignment.iter().enumerate() {
            out[c].push(a);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }

    /// The structure seen after relabeling agents by `perm` (agent `a`
    /// becomes `perm[a]`).
    pub fn permuted(&self, perm: &[Agent]) -> Self {
        let mut assignment = vec![0; self.n()];
        for (a, &c) in self.assignment.iter().enumerate() {
            assignment[perm[a]] = c;
        }
        CoalitionStructure { k: self.k, assignment }
    }
}

/// Outcome of every decision procedure: a certificate or a definitive no.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(CoalitionStructure),
    No,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn structure(&self) -> Option<&CoalitionStructure> {
        match self {
            Verdict::Yes(s) => Some(s),
            Verdict::No => None,
        }
    }
}

fn coalition_sum(game: &Game, structure: &CoalitionStructure, agent: Agent) -> (i128, usize) {
    let c = structure.coalition_of(agent);
    let sum = game
        .out_arcs(agent)
        .iter()
        .filter(|&&(j, _)| structure.coalition_of(j) == c)
        .map(|&(_, w)| w as i128)
        .sum();
    let size = structure.assignment().iter().filter(|&&x| x == c).count();
    (sum, size)
}

pub fn ashg_utility(game: &Game, structure: &CoalitionStructure, agent: Agent) -> Result<BigInt, GameError> {
    game.check_structure(structure)?;
    game.check_agent(agent)?;
    Ok(BigInt::from(coalition_sum(game, structure, agent).0))
}

pub fn fhg_utility(game: &Game, structure: &CoalitionStructure, agent: Agent) -> Result<BigRational, GameError> {
    game.check_structure(structure)?;
    game.check_agent(agent)?;
    let (sum, size) = coalition_sum(game, structure, agent);
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(size)))
}

pub fn mfhg_utility(game: &Game, structure: &CoalitionStructure, agent: Agent) -> Result<BigRational, GameError> {
    game.check_structure(structure)?;
    game.check_agent(agent)?;
    let (sum, size) = coalition_sum(game, structure, agent);
    if size == 1 {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(size - 1)))
}

/// Every agent weakly prefers its coalition to being alone. A singleton is
/// worth zero under all three semantics.
pub fn is_individually_rational(
    game: &Game,
    structure: &CoalitionStructure,
    semantics: Semantics,
) -> Result<bool, GameError> {
    game.check_structure(structure)?;
    for agent in 0..game.n() {
        let ok = match semantics {
            Semantics::Ashg => !ashg_utility(game, structure, agent)?.is_negative_value(),
            Semantics::Fhg => !fhg_utility(game, structure, agent)?.is_negative_value(),
            Semantics::Mfhg => !mfhg_utility(game, structure, agent)?.is_negative_value(),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

trait NegativeValue {
    fn is_negative_value(&self) -> bool;
}

impl NegativeValue for BigInt {
    fn is_negative_value(&self) -> bool {
        self < &BigInt::zero()
    }
}

impl NegativeValue for BigRational {
    fn is_negative_value(&self) -> bool {
        self < &BigRational::zero()
    }
}

/// IR verdicts under (ASHG, FHG, MFHG). The three always agree.
pub fn ir_equivalence_witness(
    game: &Game,
    structure: &CoalitionStructure,
) -> Result<(bool, bool, bool), GameError> {
    Ok((
        is_individually_rational(game, structure, Semantics::Ashg)?,
        is_individually_rational(game, structure, Semantics::Fhg)?,
        is_individually_rational(game, structure, Semantics::Mfhg)?,
    ))
}

/// First reason a structure fails to certify a game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    AgentCount { game: usize, structure: usize },
    CoalitionCount { game: usize, structure: usize },
    EmptyCoalition { coalition: usize },
    SizeBound { coalition: usize, size: usize, bound: SizeBound },
    NotIndividuallyRational { agent: Agent, utility: BigInt },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AgentCount { game, structure } => {
                write!(f, "structure covers {structure} agents, game has {game}")
            }
            Violation::CoalitionCount { game, structure } => {
                write!(f, "structure has {structure} coalitions, game needs {game}")
            }
            Violation::EmptyCoalition { coalition } => write!(f, "coalition {} is empty", coalition + 1),
            Violation::SizeBound { coalition, size, bound } => write!(
                f,
                "coalition {} has {} agents, outside [{}, {}]",
                coalition + 1,
                size,
                bound.lower,
                bound.upper
            ),
            Violation::NotIndividuallyRational { agent, utility } => {
                write!(f, "agent {} has utility {} < 0", agent + 1, utility)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Valid,
    Invalid(Violation),
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        matches!(self, Certificate::Valid)
    }
}

/// Full certificate check: partition shape, mode constraints, then IR.
pub fn check_certificate(game: &Game, structure: &CoalitionStructure) -> Certificate {
    if structure.n() != game.n() {
        return Certificate::Invalid(Violation::AgentCount { game: game.n(), structure: structure.n() });
    }
    if structure.k() != game.k() {
        return Certificate::Invalid(Violation::CoalitionCount { game: game.k(), structure: structure.k() });
    }
    let sizes = structure.sizes();
    match game.mode() {
        Mode::KAshg => {
            if let Some(coalition) = sizes.iter().position(|&s| s == 0) {
                return Certificate::Invalid(Violation::EmptyCoalition { coalition });
            }
        }
        Mode::Scc(bounds) => {
            for (coalition, (&size, bound)) in sizes.iter().zip(bounds).enumerate() {
                if !bound.contains(size) {
                    return Certificate::Invalid(Violation::SizeBound { coalition, size, bound: *bound });
                }
            }
        }
    }
    for (agent, u) in game.utilities(structure).into_iter().enumerate() {
        if u < 0 {
            return Certificate::Invalid(Violation::NotIndividuallyRational { agent, utility: BigInt::from(u) });
        }
    }
    Certificate::Valid
}

/// With a single coalition the grand coalition is the only candidate.
pub fn solve_k_equals_1(game: &Game) -> Result<Verdict, GameError> {
    if game.k() != 1 {
        return Err(GameError::WrongK(game.k()));
    }
    let grand = CoalitionStructure::grand(game.n());
    Ok(match check_certificate(game, &grand) {
        Certificate::Valid => Verdict::Yes(grand),
        Certificate::Invalid(_) => Verdict::No,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_agents() -> Game {
        Game::new(3, 1, Mode::KAshg, [(0, 1, 2), (0, 2, -1)]).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ashg_sums_over_coalition_mates() {
        let g = three_agents();
        let grand = CoalitionStructure::grand(3);
        assert_eq!(ashg_utility(&g, &grand, 0).unwrap(), BigInt::from(1));
        let g2 = g.with_k(3, Mode::KAshg).unwrap();
        let singles = CoalitionStructure::new(3, vec![0, 1, 2]).unwrap();
        for a in 0..3 {
            assert_eq!(ashg_utility(&g2, &singles, a).unwrap(), BigInt::zero());
        }
    }

    #[test]
    fn fractional_utilities() {
        let g = three_agents();
        let grand = CoalitionStructure::grand(3);
        assert_eq!(fhg_utility(&g, &grand, 0).unwrap(), rat(1, 3));
        assert_eq!(mfhg_utility(&g, &grand, 0).unwrap(), rat(1, 2));

        let pair = Game::new(2, 1, Mode::KAshg, [(0, 1, -4)]).unwrap();
        let grand = CoalitionStructure::grand(2);
        assert_eq!(fhg_utility(&pair, &grand, 0).unwrap(), rat(-2, 1));
        assert_eq!(mfhg_utility(&pair, &grand, 0).unwrap(), rat(-4, 1));

        let single = Game::new(1, 1, Mode::KAshg, []).unwrap();
        let s = CoalitionStructure::grand(1);
        assert_eq!(fhg_utility(&single, &s, 0).unwrap(), rat(0, 1));
        assert_eq!(mfhg_utility(&single, &s, 0).unwrap(), rat(0, 1));
    }

    #[test]
    fn utility_errors() {
        let g = three_agents();
        let grand = CoalitionStructure::grand(3);
        assert_eq!(ashg_utility(&g, &grand, 3), Err(GameError::AgentOutOfRange { agent: 3, n: 3 }));
        let short = CoalitionStructure::grand(2);
        assert!(matches!(fhg_utility(&g, &short, 0), Err(GameError::AgentCountMismatch { .. })));
    }

    #[test]
    fn ir_examples() {
        let g = Game::symmetric(3, 3, Mode::KAshg, [(0, 1, -1), (1, 2, -5)]).unwrap();
        let singles = CoalitionStructure::new(3, vec![0, 1, 2]).unwrap();
        for sem in [Semantics::Ashg, Semantics::Fhg, Semantics::Mfhg] {
            assert!(is_individually_rational(&g, &singles, sem).unwrap());
        }
        let pair = Game::symmetric(2, 1, Mode::KAshg, [(0, 1, -1)]).unwrap();
        let grand = CoalitionStructure::grand(2);
        assert!(!is_individually_rational(&pair, &grand, Semantics::Ashg).unwrap());
        assert_eq!(ir_equivalence_witness(&pair, &grand).unwrap(), (false, false, false));

        let pos = Game::symmetric(3, 2, Mode::KAshg, [(0, 1, 3), (1, 2, 1)]).unwrap();
        let s = CoalitionStructure::new(2, vec![0, 1, 1]).unwrap();
        assert_eq!(ir_equivalence_witness(&pos, &s).unwrap(), (true, true, true));
    }

    #[test]
    fn certificate_examples() {
        let g = Game::symmetric(3, 2, Mode::KAshg, [(0, 1, 1), (1, 2, 2)]).unwrap();
        let ok = CoalitionStructure::from_coalitions(3, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(check_certificate(&g, &ok), Certificate::Valid);
        let empty = CoalitionStructure::from_coalitions(3, &[vec![0, 1, 2], vec![]]).unwrap();
        assert_eq!(
            check_certificate(&g, &empty),
            Certificate::Invalid(Violation::EmptyCoalition { coalition: 1 })
        );

        let bounds = vec![SizeBound::new(2, 2); 2];
        let scc = Game::new(4, 2, Mode::Scc(bounds), []).unwrap();
        let lopsided = CoalitionStructure::from_coalitions(4, &[vec![0, 1, 2], vec![3]]).unwrap();
        assert!(matches!(
            check_certificate(&scc, &lopsided),
            Certificate::Invalid(Violation::SizeBound { coalition: 0, size: 3, .. })
        ));
    }

    #[test]
    fn certificate_reports_ir_violation() {
        let g = Game::symmetric(2, 1, Mode::KAshg, [(0, 1, -1)]).unwrap();
        let cert = check_certificate(&g, &CoalitionStructure::grand(2));
        assert!(matches!(cert, Certificate::Invalid(Violation::NotIndividuallyRational { agent: 0, .. })));
    }

    #[test]
    fn grand_coalition_fast_path() {
        let friends = Game::symmetric(2, 1, Mode::KAshg, [(0, 1, 1)]).unwrap();
        assert_eq!(solve_k_equals_1(&friends).unwrap(), Verdict::Yes(CoalitionStructure::grand(2)));
        let enemies = Game::symmetric(2, 1, Mode::KAshg, [(0, 1, -1)]).unwrap();
        assert_eq!(solve_k_equals_1(&enemies).unwrap(), Verdict::No);
        let lone = Game::new(1, 1, Mode::KAshg, []).unwrap();
        assert!(solve_k_equals_1(&lone).unwrap().is_yes());
        let two = friends.with_k(2, Mode::KAshg).unwrap();
        assert_eq!(solve_k_equals_1(&two), Err(GameError::WrongK(2)));
    }

    #[test]
    fn construction_rejects_malformed_input() {
        assert_eq!(Game::new(2, 1, Mode::KAshg, [(0, 0, 1)]), Err(GameError::SelfValuation(0)));
        assert_eq!(Game::new(2, 1, Mode::KAshg, [(0, 1, 0)]), Err(GameError::ZeroWeight(0, 1)));
        assert_eq!(Game::new(2, 1, Mode::KAshg, [(0, 1, 1), (0, 1, 2)]), Err(GameError::DuplicateArc(0, 1)));
        assert_eq!(
            Game::new(2, 1, Mode::KAshg, [(0, 2, 1)]),
            Err(GameError::AgentOutOfRange { agent: 2, n: 2 })
        );
        let unsorted = vec![SizeBound::new(0, 1), SizeBound::new(0, 2)];
        assert_eq!(
            Game::new(3, 2, Mode::Scc(unsorted), []),
            Err(GameError::UnsortedUpperBounds { coalition: 1 })
        );
        let tight = vec![SizeBound::new(1, 1), SizeBound::new(1, 1)];
        assert!(matches!(Game::new(3, 2, Mode::Scc(tight), []), Err(GameError::BoundSumMismatch { .. })));
        assert!(matches!(
            Game::new(3, 1, Mode::Scc(vec![SizeBound::new(3, 2)]), []),
            Err(GameError::InvertedBound { .. })
        ));
    }

    #[test]
    fn symmetry_and_binary_flags() {
        let g = Game::symmetric(3, 1, Mode::KAshg, [(0, 1, -1), (1, 2, 1)]).unwrap();
        assert!(g.is_symmetric());
        assert!(g.is_binary());
        let d = Game::new(3, 1, Mode::KAshg, [(0, 1, -2)]).unwrap();
        assert!(!d.is_symmetric());
        assert!(!d.is_binary());
        assert_eq!(d.max_abs_weight(), 2);
    }
}
