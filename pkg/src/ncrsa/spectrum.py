"""Per-link flex-grid state and the three slot-assignment constraints.

Every directed link owns a row of `slot_count` cells.  A cell is either free
or holds the id of the one connection occupying it (non-overlapping); the
cells one connection holds on one link always form a single run (contiguity);
and a connection occupies the same slot ids on every link of its path
(continuity).  `available_intervals` returns exactly the slot windows that
satisfy all three at once.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

__all__ = ["SlotInterval", "SpectrumGrid", "FREE"]

log = logging.getLogger(__name__)

FREE = -1


@dataclass(frozen=True, order=True)
class SlotInterval:
    """Inclusive 1-based slot range [start, end]."""

    start: int
    end: int

    def __post_init__(self):
        if not (1 <= self.start <= self.end):
            raise ValueError(f"invalid slot interval {self.start}-{self.end}")

    @property
    def width(self):
        return self.end - self.start + 1

    @property
    def slots(self):
        return range(self.start, self.end + 1)

    @property
    def as_slice(self):
        return slice(self.start - 1, self.end)

    def overlap(self, other):
        """Sorted common slot ids with another interval."""
        lo = max(self.start, other.start)
        hi = min(self.end, other.end)
        return tuple(range(lo, hi + 1)) if lo <= hi else ()

    def __str__(self):
        return f"{self.start}-{self.end}"


class SpectrumGrid:
    """Mutable slot occupancy for every directed link of a topology."""

    def __init__(self, topology):
        self.topology = topology
        self.slot_count = topology.slot_count
        self._cells = {
            link: np.full(self.slot_count, FREE, dtype=np.int64) for link in topology.links
        }

    def occupancy(self, link):
        """Read-only view of one link's cells (FREE or a connection id)."""
        row = self._cells[link]
        view = row.view()
        view.flags.writeable = False
        return view

    def column_occupied(self, path):
        """Per-slot flag: occupied on at least one link of `path`."""
        occupied = np.zeros(self.slot_count, dtype=bool)
        for link in path.links:
            occupied |= self._cells[link] != FREE
        return occupied

    def available_intervals(self, path, width):
        """Every width-slot window free on all links of `path`, ascending start."""
        if width < 1:
            raise ValueError("width must be >= 1")
        if width > self.slot_count:
            raise ValueError(f"width {width} exceeds grid size {self.slot_count}")
        free = ~self.column_occupied(path)
        if width == 1:
            starts = np.nonzero(free)[0]
        else:
            window = np.convolve(free.astype(np.int32), np.ones(width, dtype=np.int32), "valid")
            starts = np.nonzero(window == width)[0]
        return [SlotInterval(int(s) + 1, int(s) + width) for s in starts]

    def allocate(self, conn_id, path, interval):
        """Write `conn_id` into `interval` on every link of `path` (all-or-nothing)."""
        if conn_id < 0:
            raise ValueError("connection ids must be non-negative")
        sl = interval.as_slice
        for link in path.links:
            if (self._cells[link][sl] != FREE).any():
                raise ValueError(
                    f"slots {interval} not free on link {link}; allocation refused"
                )
        for link in path.links:
            self._cells[link][sl] = conn_id

    def release(self, conn_id):
        """Free every cell held by `conn_id`; warns when the id holds nothing."""
        hit = False
        for row in self._cells.values():
            mask = row == conn_id
            if mask.any():
                row[mask] = FREE
                hit = True
        if not hit:
            log.warning("release of unknown connection id %s ignored", conn_id)

    def occupied_cells(self):
        """Total occupied link-slot cells across the network."""
        return int(sum((row != FREE).sum() for row in self._cells.values()))

    def connection_links(self, conn_id):
        """Links on which `conn_id` currently holds cells."""
        return [link for link, row in self._cells.items() if (row == conn_id).any()]

    def write_csv(self, fileobj):
        """Snapshot rows `link_from,link_to,slot,connection_id` (occupied cells only)."""
        fileobj.write("link_from,link_to,slot,connection_id\n")
        for (u, v), row in sorted(self._cells.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
            for slot in np.nonzero(row != FREE)[0]:
                fileobj.write(f"{u},{v},{int(slot) + 1},{int(row[slot])}\n")
