"""Chemical reaction optimization engine."""

import logging
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .entities import EngineState, Molecule
from .exceptions import ConfigurationError
from .models import CroParams, ReactionKind

logger = logging.getLogger(__name__)

Objective = Callable[[Any], float]
SolutionGenerator = Callable[[np.random.Generator], Any]
NeighbourOp = Callable[[Any, np.random.Generator], Any]
DecompositionOp = Callable[[Any, np.random.Generator], Tuple[Any, Any]]
SynthesisOp = Callable[[Any, Any, np.random.Generator], Any]
StopCheck = Callable[[EngineState], bool]
ProgressCallback = Callable[[int, float], None]


class Reaction(BaseModel):
    """A selected reaction and the population indices taking part."""

    kind: ReactionKind
    indices: Tuple[int, ...]

    model_config = {"frozen": True}


class ReactionStats(BaseModel):
    """Attempted and accepted counts per reaction kind."""

    attempted: Dict[ReactionKind, int] = Field(
        default_factory=lambda: {kind: 0 for kind in ReactionKind}
    )
    accepted: Dict[ReactionKind, int] = Field(
        default_factory=lambda: {kind: 0 for kind in ReactionKind}
    )

    def record(self, kind: ReactionKind, accepted: bool) -> None:
        self.attempted[kind] += 1
        if accepted:
            self.accepted[kind] += 1


class RunResult(BaseModel):
    """Outcome of an optimization run."""

    best_structure: Any = Field(..., description="Best structure ever evaluated")
    best_pe: float = Field(..., description="Objective value of best_structure")
    fe_count: int = Field(..., description="Objective evaluations consumed")
    stopped_early: bool = Field(..., description="True when the stop check ended the run")
    reactions: ReactionStats = Field(..., description="Reaction counters")

    model_config = ConfigDict(arbitrary_types_allowed=True)


class ChemicalReactionOptimizer:
    """
    Variable-population CRO minimizing an objective.

    All randomness comes from the injected generator; the engine never
    touches global random state. Energy bookkeeping keeps
    sum(pe + ke) + buffer constant across every reaction.
    """

    def __init__(
        self,
        params: CroParams,
        objective: Objective,
        rng: np.random.Generator,
        progress: Optional[ProgressCallback] = None,
    ):
        self.params = params
        self.objective = objective
        self.rng = rng
        self.progress = progress
        self.stats = ReactionStats()
        self._state: Optional[EngineState] = None

    @property
    def state(self) -> EngineState:
        if self._state is None:
            raise RuntimeError("engine not initialized; call init_engine first")
        return self._state

    @state.setter
    def state(self, state: EngineState) -> None:
        self._state = state

    def evaluate(self, structure: Any) -> float:
        """Objective value of a structure; counts one evaluation."""
        pe = float(self.objective(structure))
        state = self.state
        state.fe_count += 1
        if pe < state.global_best_pe:
            state.global_best_pe = pe
            state.global_best_structure = structure
            if self.progress is not None:
                self.progress(state.fe_count, pe)
        return pe

    def init_engine(self, generator: SolutionGenerator) -> EngineState:
        """
        Create the initial population.

        Args:
            generator: Source of initial structures

        Returns:
            Fresh engine state with pop_size evaluated molecules

        Raises:
            ConfigurationError: If pop_size < 1
        """
        if self.params.pop_size < 1:
            raise ConfigurationError("population size must be at least 1", key="cro.pop_size")

        structures = [generator(self.rng) for _ in range(self.params.pop_size)]
        # Evaluations below need a state to count against
        self._state = EngineState.model_construct(
            population=[],
            buffer=self.params.buffer_init,
            fe_count=0,
            global_best_pe=float("inf"),
            global_best_structure=None,
        )
        population = [
            Molecule.fresh(s, self.evaluate(s), self.params.initial_ke) for s in structures
        ]
        self._state = EngineState(
            population=population,
            buffer=self.params.buffer_init,
            fe_count=self._state.fe_count,
            global_best_pe=self._state.global_best_pe,
            global_best_structure=self._state.global_best_structure,
        )
        return self._state

    def select_reaction(self) -> Reaction:
        """Draw the next reaction kind and its participants."""
        population = self.state.population
        t = self.rng.random()
        if t > self.params.mole_coll or len(population) == 1:
            i = int(self.rng.integers(len(population)))
            m = population[i]
            if m.num_hit - m.min_hit > self.params.decomp_threshold:
                return Reaction(kind=ReactionKind.DECOMPOSITION, indices=(i,))
            return Reaction(kind=ReactionKind.ON_WALL, indices=(i,))

        i, j = (int(k) for k in self.rng.choice(len(population), size=2, replace=False))
        m1, m2 = population[i], population[j]
        if m1.ke <= self.params.synth_threshold and m2.ke <= self.params.synth_threshold:
            return Reaction(kind=ReactionKind.SYNTHESIS, indices=(i, j))
        return Reaction(kind=ReactionKind.INTERMOLECULAR, indices=(i, j))

    def on_wall_step(self, index: int, candidate: Any) -> bool:
        """On-wall ineffective collision of one molecule."""
        state = self.state
        m = state.population[index]
        new_pe = self.evaluate(candidate)
        if m.energy >= new_pe:
            surplus = m.energy - new_pe
            a = self.rng.uniform(self.params.ke_loss_rate, 1.0)
            state.buffer += surplus * (1.0 - a)
            m.adopt(candidate, new_pe, surplus * a)
            self.stats.record(ReactionKind.ON_WALL, True)
            return True

        m.num_hit += 1
        self.stats.record(ReactionKind.ON_WALL, False)
        return False

    def decomposition_step(self, index: int, candidates: Tuple[Any, Any]) -> bool:
        """Split one molecule into two, borrowing from the buffer if needed."""
        state = self.state
        m = state.population[index]
        pe1 = self.evaluate(candidates[0])
        pe2 = self.evaluate(candidates[1])
        e = m.energy - pe1 - pe2
        if e < 0:
            d1, d2 = self.rng.random(), self.rng.random()
            borrowed = state.buffer * d1 * d2
            if e + borrowed >= 0:
                e += borrowed
                state.buffer -= borrowed

        if e < 0:
            m.num_hit += 1
            self.stats.record(ReactionKind.DECOMPOSITION, False)
            return False

        k = self.rng.random()
        state.population[index] = Molecule.fresh(candidates[0], pe1, e * k)
        state.population.append(Molecule.fresh(candidates[1], pe2, e * (1.0 - k)))
        self.stats.record(ReactionKind.DECOMPOSITION, True)
        return True

    def intermolecular_step(self, i: int, j: int, candidates: Tuple[Any, Any]) -> bool:
        """Inter-molecular ineffective collision of two molecules."""
        state = self.state
        m1, m2 = state.population[i], state.population[j]
        pe1 = self.evaluate(candidates[0])
        pe2 = self.evaluate(candidates[1])
        e = m1.pe + m1.ke + m2.pe + m2.ke - pe1 - pe2
        if e >= 0:
            k = self.rng.random()
            m1.adopt(candidates[0], pe1, e * k)
            m2.adopt(candidates[1], pe2, e * (1.0 - k))
            self.stats.record(ReactionKind.INTERMOLECULAR, True)
            return True

        m1.num_hit += 1
        m2.num_hit += 1
        self.stats.record(ReactionKind.INTERMOLECULAR, False)
        return False

    def synthesis_step(self, i: int, j: int, candidate: Any) -> bool:
        """Merge two molecules into one."""
        state = self.state
        m1, m2 = state.population[i], state.population[j]
        new_pe = self.evaluate(candidate)
        pooled = m1.pe + m1.ke + m2.pe + m2.ke
        if pooled >= new_pe:
            keep, drop = min(i, j), max(i, j)
            state.population[keep] = Molecule.fresh(candidate, new_pe, pooled - new_pe)
            del state.population[drop]
            self.stats.record(ReactionKind.SYNTHESIS, True)
            return True

        m1.num_hit += 1
        m2.num_hit += 1
        self.stats.record(ReactionKind.SYNTHESIS, False)
        return False

    def react(
        self,
        reaction: Reaction,
        neighbour: NeighbourOp,
        decompose: DecompositionOp,
        synthesize: SynthesisOp,
    ) -> bool:
        """Build candidates for a selected reaction and apply it."""
        population = self.state.population
        if reaction.kind is ReactionKind.ON_WALL:
            i = reaction.indices[0]
            return self.on_wall_step(i, neighbour(population[i].structure, self.rng))
        if reaction.kind is ReactionKind.DECOMPOSITION:
            i = reaction.indices[0]
            return self.decomposition_step(i, decompose(population[i].structure, self.rng))

        i, j = reaction.indices
        s1, s2 = population[i].structure, population[j].structure
        if reaction.kind is ReactionKind.INTERMOLECULAR:
            return self.intermolecular_step(i, j, (neighbour(s1, self.rng), neighbour(s2, self.rng)))
        return self.synthesis_step(i, j, synthesize(s1, s2, self.rng))

    def run(
        self,
        generator: SolutionGenerator,
        neighbour: NeighbourOp,
        decompose: DecompositionOp,
        synthesize: SynthesisOp,
        stop_check: Optional[StopCheck] = None,
    ) -> RunResult:
        """
        Initialize and react until the budget is spent or the stop check fires.

        Args:
            generator: Initial-solution source
            neighbour: Single-structure local move
            decompose: One structure to two
            synthesize: Two structures to one
            stop_check: Consulted after every reaction; True ends the run

        Returns:
            Best structure ever evaluated, its PE and the evaluations used

        Raises:
            ConfigurationError: If the initial population alone exceeds the budget
        """
        if self.params.pop_size > self.params.fe_limit:
            raise ConfigurationError(
                f"population size {self.params.pop_size} exceeds the evaluation limit "
                f"{self.params.fe_limit}",
                key="cro.fe_limit",
            )

        state = self.init_engine(generator)
        stopped_early = False
        while state.fe_count < self.params.fe_limit:
            reaction = self.select_reaction()
            if reaction.kind.evaluations > self.params.fe_limit - state.fe_count:
                # One evaluation left: fall back to a single on-wall collision
                reaction = Reaction(kind=ReactionKind.ON_WALL, indices=reaction.indices[:1])
            self.react(reaction, neighbour, decompose, synthesize)
            if stop_check is not None and stop_check(state):
                stopped_early = True
                break

        logger.debug(
            "CRO finished after %d evaluations, best PE %.6g, population %d",
            state.fe_count,
            state.global_best_pe,
            len(state.population),
        )
        return RunResult(
            best_structure=state.global_best_structure,
            best_pe=state.global_best_pe,
            fe_count=state.fe_count,
            stopped_early=stopped_early,
            reactions=self.stats,
        )


def optimize(
    params: CroParams,
    generator: SolutionGenerator,
    neighbour: NeighbourOp,
    decompose: DecompositionOp,
    synthesize: SynthesisOp,
    objective: Objective,
    rng: np.random.Generator,
    stop_check: Optional[StopCheck] = None,
    progress: Optional[ProgressCallback] = None,
) -> RunResult:
    """Run a fresh optimizer with the given operators and objective."""
    engine = ChemicalReactionOptimizer(params, objective, rng, progress=progress)
    return engine.run(generator, neighbour, decompose, synthesize, stop_check=stop_check)
