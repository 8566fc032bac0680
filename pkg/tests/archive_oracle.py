"""Brute-force replay of archive operations, used to cross-check Archive."""
import random

from bvexplore.archive import AddOutcome, Archive, Phase
from bvexplore.derivative import BoundaryCandidate
from bvexplore.descriptors import CellCoord
from bvexplore.suts import ExecutionOutcome, get_sut

_OK = ExecutionOutcome.ok("x")


def synthetic(pd, k):
    return BoundaryCandidate((k,), (k + 1,), _OK, _OK, pd)


def replay(seed, steps, n_cells=6):
    """Run a random offer/update log; return (archive, oracle, mismatches).

    The oracle keeps, per cell, the elite's pd, its curiosity and its add/reject tallies.
    """
    rng = random.Random(seed)
    archive = Archive(get_sut("circle"))
    oracle = {}
    history = []   # every entry object ever stored, to exercise stale updates
    bad = []
    for step in range(steps):
        if archive and rng.random() < 0.5:
            entry = rng.choice(history)
            outcome = rng.choice(list(AddOutcome))
            archive.update_curiosity(entry, outcome)
            slot = oracle.get(entry.cell)
            if slot is not None and slot["entry"] is entry:
                if outcome.added:
                    slot["adds"] += 1
                else:
                    slot["rejects"] += 1
            continue
        cell = CellCoord(rng.randrange(n_cells), 0, 0, 0)
        pd = rng.choice([0.0, 0.1, 0.25, 0.5, 0.5, 1.0]) * rng.choice([1, 1, 0.3])
        got = archive.offer(synthetic(pd, step), Phase.SAMPLER, cell=cell)
        cur = oracle.get(cell)
        if pd <= 0 or (cur is not None and pd <= cur["pd"]):
            expected = AddOutcome.REJECTED
        else:
            expected = AddOutcome.NEW_CELL if cur is None else AddOutcome.IMPROVED
            oracle[cell] = {"pd": pd, "adds": 0, "rejects": 0, "entry": archive.get(cell)}
            history.append(archive.get(cell))
        if got is not expected:
            bad.append((step, got, expected))
    return archive, oracle, bad
