"""Search budgets counted either in SUT evaluations or in wall-clock seconds."""
from __future__ import annotations

import time


class Budget:
    """A spendable allowance for one phase of a search.

    Exactly one of ``evaluations`` / ``seconds`` is given.  Wall-clock
    budgets start ticking at construction.
    """

    def __init__(self, evaluations=None, seconds=None):
        if (evaluations is None) == (seconds is None):
            raise ValueError("give exactly one of evaluations / seconds")
        if (evaluations is not None and evaluations < 0) or (seconds is not None and seconds < 0):
            raise ValueError("budget must be non-negative")
        self.evaluations = evaluations
        self.seconds = seconds
        self.spent = 0
        self._deadline = None if seconds is None else time.perf_counter() + seconds

    @property
    def counted(self) -> bool:
        return self.evaluations is not None

    def remaining(self) -> float:
        if self.counted:
            return self.evaluations - self.spent
        return max(0.0, self._deadline - time.perf_counter())

    def allows(self, cost: int = 2) -> bool:
        if self.counted:
            return self.spent + cost <= self.evaluations
        return time.perf_counter() < self._deadline

    def charge(self, cost: int = 2) -> None:
        self.spent += cost

    def share(self, parts: int, unit: int = 1) -> list:
        """Split what remains into ``parts`` equal sub-budgets (started lazily).

        Evaluation shares are whole multiples of ``unit``; any remainder
        smaller than ``unit`` is left unallocated.
        """
        if parts <= 0:
            return []
        if self.counted:
            each, extra = divmod((self.evaluations - self.spent) // unit, parts)
            return [("evaluations", unit * (each + (i < extra))) for i in range(parts)]
        return [("seconds", self.remaining() / parts)] * parts

    @classmethod
    def of(cls, spec) -> "Budget":
        mode, amount = spec
        return cls(**{mode: amount})
