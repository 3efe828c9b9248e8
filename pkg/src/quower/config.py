"""
Process-wide solver settings.

`SolverConfig` follows the pattern of `LogConfig`: the last instance created is
the active one and `solver_config()` returns it, creating the defaults on first
use. Per-call settings go through `quower.setcover.SolveOptions`; its fields
left at None fall back to the active `SolverConfig`.
"""
from __future__ import annotations

from typing import Any

from quower.errors import InputError

SYMMETRY_MODES = ("auto", "translation", "off")


class SolverConfig:
    """
    Defaults of the exact solver.

    Attributes
    ----------
    time_limit : float or None
        Seconds allowed for every search; None applies `large_time_limit` to
        large instances only.
    large_time_limit : float
        Seconds allowed for instances beyond desk scale (boards with n > 13,
        wind roses with q > 9) when `time_limit` is None.
    workers : int
        Processes exploring root branches; 1 searches in-process.
    symmetry : str
        One of "auto", "translation", "off" (see `quower.setcover.solve_exact`).
    progress_every : int
        Nodes between two DEBUG progress records.
    """
    _last_instance: SolverConfig | None = None

    def __init__(self, time_limit: float | None = None, large_time_limit: float = 600.0,
                 workers: int = 1, symmetry: str = "auto", progress_every: int = 100000):
        if symmetry not in SYMMETRY_MODES:
            raise InputError(f"symmetry must be one of {SYMMETRY_MODES}, got {symmetry!r}")
        if workers < 1:
            raise InputError("workers must be at least 1")
        self.time_limit = time_limit
        self.large_time_limit = large_time_limit
        self.workers = workers
        self.symmetry = symmetry
        self.progress_every = progress_every
        SolverConfig._last_instance = self

    def time_limit_for(self, inst: Any) -> float | None:
        """Time limit for a `SetCoverInstance` (or its metadata dictionary)."""
        metadata = getattr(inst, "metadata", inst)
        if self.time_limit is not None:
            return self.time_limit
        if metadata.get("kind") == "board" and metadata.get("n", 0) <= 13:
            return None
        if metadata.get("kind") == "windrose" and metadata.get("q", 0) <= 9:
            return None
        return self.large_time_limit

    @classmethod
    def last_instance(cls) -> SolverConfig:
        if cls._last_instance is None:
            return SolverConfig()
        return cls._last_instance

    def __repr__(self) -> str:
        return (f"SolverConfig(time_limit={self.time_limit}, large_time_limit={self.large_time_limit}, "
                f"workers={self.workers}, symmetry={self.symmetry!r})")


def solver_config() -> SolverConfig:
    """Returns the active `SolverConfig` object that its properties can change."""
    return SolverConfig.last_instance()
