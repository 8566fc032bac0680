"""Grid archive holding one elite boundary candidate per behavioural cell."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .derivative import BoundaryCandidate
from .descriptors import CellCoord, cell_coord
from .errors import EmptyArchive
from .suts import SutSpec


class Phase(str, enum.Enum):
    SAMPLER = "Sampler"
    EXPLORER = "Explorer"
    TRACER = "Tracer"


class AddOutcome(enum.Enum):
    NEW_CELL = "new"
    IMPROVED = "improved"
    REJECTED = "rejected"

    @property
    def added(self) -> bool:
        return self is not AddOutcome.REJECTED


class Selection(str, enum.Enum):
    UNIFORM = "uniform"
    FITNESS = "fitness"
    CURIOSITY = "curiosity"


CURIOSITY_REWARD = 1.0
CURIOSITY_PENALTY = 0.5
# added to shifted curiosity so every entry keeps a positive weight
CURIOSITY_EPSILON = 0.1


@dataclass(eq=False)
class ArchiveEntry:
    candidate: BoundaryCandidate
    cell: CellCoord
    curiosity: float = 0.0
    phase: Phase = Phase.SAMPLER

    @property
    def pd(self) -> float:
        return self.candidate.pd


@dataclass
class OfferStats:
    offers: int = 0
    new: int = 0
    improved: int = 0
    rejected: int = 0

    def record(self, outcome: AddOutcome) -> None:
        self.offers += 1
        if outcome is AddOutcome.NEW_CELL:
            self.new += 1
        elif outcome is AddOutcome.IMPROVED:
            self.improved += 1
        else:
            self.rejected += 1


class Archive:
    """Cells are allocated lazily; an entry's slot index never changes."""

    def __init__(self, sut: SutSpec):
        self.sut = sut
        self.cells: dict = {}
        self._entries: list = []
        self._pd = np.zeros(64)
        self._curiosity = np.zeros(64)
        self.stats = OfferStats()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, cell) -> bool:
        return cell in self.cells

    def __iter__(self):
        return iter(self._entries)

    def get(self, cell) -> Optional[ArchiveEntry]:
        slot = self.cells.get(cell)
        return None if slot is None else self._entries[slot]

    @property
    def offer_count(self):
        return self.stats.offers

    @property
    def new_cell_count(self):
        return self.stats.new

    @property
    def improve_count(self):
        return self.stats.improved

    @property
    def reject_count(self):
        return self.stats.rejected

    def offer(self, c: BoundaryCandidate, phase: Phase = Phase.SAMPLER,
              cell: Optional[CellCoord] = None) -> AddOutcome:
        """Store ``c`` if its cell is empty or it beats the incumbent's PD."""
        if c.pd <= 0:
            outcome = AddOutcome.REJECTED
        else:
            if cell is None:
                cell = cell_coord(c, self.sut)
            slot = self.cells.get(cell)
            if slot is None:
                self._append(ArchiveEntry(c, cell, 0.0, phase))
                outcome = AddOutcome.NEW_CELL
            elif c.pd > self._entries[slot].candidate.pd:
                self._entries[slot] = ArchiveEntry(c, cell, 0.0, phase)
                self._pd[slot] = c.pd
                self._curiosity[slot] = 0.0
                outcome = AddOutcome.IMPROVED
            else:
                outcome = AddOutcome.REJECTED
        self.stats.record(outcome)
        return outcome

    def _append(self, entry: ArchiveEntry) -> None:
        slot = len(self._entries)
        if slot == len(self._pd):
            self._pd = np.concatenate([self._pd, np.zeros(slot)])
            self._curiosity = np.concatenate([self._curiosity, np.zeros(slot)])
        self._entries.append(entry)
        self.cells[entry.cell] = slot
        self._pd[slot] = entry.candidate.pd
        self._curiosity[slot] = entry.curiosity

    def weights(self, selection: Selection) -> np.ndarray:
        n = len(self._entries)
        if selection is Selection.UNIFORM:
            return np.ones(n)
        if selection is Selection.FITNESS:
            return self._pd[:n].copy()
        cur = self._curiosity[:n]
        return cur - min(0.0, cur.min()) + CURIOSITY_EPSILON

    def select(self, selection: Selection, rng) -> ArchiveEntry:
        """Draw a parent; ``rng`` is a :class:`random.Random`."""
        n = len(self._entries)
        if n == 0:
            raise EmptyArchive("cannot select from an empty archive")
        selection = Selection(selection)
        if selection is Selection.UNIFORM:
            return self._entries[rng.randrange(n)]
        cum = np.cumsum(self.weights(selection))
        slot = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
        return self._entries[min(slot, n - 1)]

    def update_curiosity(self, parent: ArchiveEntry, outcome: AddOutcome) -> None:
        """Reward or penalise ``parent``; no-op once it has been displaced."""
        slot = self.cells.get(parent.cell)
        if slot is None or self._entries[slot] is not parent:
            return
        parent.curiosity += CURIOSITY_REWARD if outcome.added else -CURIOSITY_PENALTY
        self._curiosity[slot] = parent.curiosity

    def snapshot(self) -> list:
        return sorted(self._entries, key=lambda e: e.cell)


def select_weighted(archive: Archive, weight: Selection, rng) -> ArchiveEntry:
    return archive.select(weight, rng)
