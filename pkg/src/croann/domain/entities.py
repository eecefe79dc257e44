"""Domain entities - mutable optimizer state."""

from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class Molecule(BaseModel):
    """A candidate solution together with its energy state."""

    structure: Any = Field(..., description="Solution structure (opaque to the engine)")
    pe: float = Field(..., description="Potential energy, the objective value")
    ke: float = Field(..., ge=0.0, description="Kinetic energy")
    num_hit: int = Field(default=0, ge=0, description="Reactions undergone")
    min_hit: int = Field(default=0, ge=0, description="num_hit at last personal-best improvement")
    min_pe: float = Field(..., description="Best PE this molecule attained")
    min_structure: Any = Field(..., description="Structure at min_pe")

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @classmethod
    def fresh(cls, structure: Any, pe: float, ke: float) -> "Molecule":
        """New molecule with zeroed hit counters."""
        return cls(structure=structure, pe=pe, ke=ke, min_pe=pe, min_structure=structure)

    @property
    def energy(self) -> float:
        """PE plus KE."""
        return self.pe + self.ke

    def adopt(self, structure: Any, pe: float, ke: float) -> None:
        """Move to a new structure and record a personal best."""
        self.structure = structure
        self.pe = pe
        self.ke = ke
        self.num_hit += 1
        if pe < self.min_pe:
            self.min_pe = pe
            self.min_structure = structure
            self.min_hit = self.num_hit


class EngineState(BaseModel):
    """Population, central energy buffer and search bookkeeping."""

    population: List[Molecule] = Field(..., min_length=1, description="Molecules")
    buffer: float = Field(..., ge=0.0, description="Central energy buffer")
    fe_count: int = Field(default=0, ge=0, description="Objective evaluations consumed")
    global_best_pe: float = Field(default=float("inf"), description="Best PE ever evaluated")
    global_best_structure: Optional[Any] = Field(default=None, description="Structure at global_best_pe")

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def total_energy(self) -> float:
        """Sum of PE and KE over the population plus the buffer."""
        return sum(m.energy for m in self.population) + self.buffer
