"""Which links of one path can be encrypted by traffic on another.

A partner route can encrypt a stretch of a path when both visit two common
nodes in the same order: the first common node XORs the partner's stream in,
the second XORs it back out, so every link strictly between the two carries a
combined signal.  The coverage vector of an ordered pair (p, q) flags, per
link of p, whether q can do that.  The scan anchors at the earliest usable
common node of p and extends to the latest order-consistent one, which yields
the longest segment reachable from that anchor; coverage is therefore a single
contiguous run of links (or all zeros), and (p, q) coverage is generally
different from (q, p) coverage.
"""

from __future__ import annotations

__all__ = ["link_coverage", "CoverageTable", "build_coverage_table"]


def _coverage(p_nodes, hops, q_positions):
    """Core scan; returns a 0/1 tuple over p's links, or None when all zero."""
    common = [i for i, node in enumerate(p_nodes) if node in q_positions]
    if len(common) < 2:
        return None
    for pos, i in enumerate(common):
        start_pos = q_positions[p_nodes[i]]
        for j in reversed(common[pos + 1:]):
            if q_positions[p_nodes[j]] > start_pos:
                return tuple(1 if i <= l < j else 0 for l in range(hops))
    return None


def link_coverage(p, q):
    """Per-link 0/1 vector over the links of `p`: 1 where `q` can encrypt."""
    positions_q = {node: i for i, node in enumerate(q.nodes)}
    vector = _coverage(p.nodes, p.hops, positions_q)
    return vector if vector is not None else (0,) * p.hops


class CoverageTable:
    """Coverage vectors for ordered pairs of candidate paths, keyed by path id.

    Rows are computed on first lookup and memoized; `build()` forces every
    ordered pair.  All-zero rows are held as None so the table stays sparse.
    """

    def __init__(self, paths):
        self.paths = {}
        for p in paths:
            if p.path_id in self.paths:
                raise ValueError(f"duplicate path id {p.path_id}")
            self.paths[p.path_id] = p
        self._positions = {
            pid: {node: i for i, node in enumerate(p.nodes)} for pid, p in self.paths.items()
        }
        self._rows = {}  # p_id -> {q_id: vector or None}

    def rows_for(self, p_id):
        """Mutable per-path row cache; missing partners are simply absent keys."""
        rows = self._rows.get(p_id)
        if rows is None:
            rows = self._rows[p_id] = {}
        return rows

    def row(self, p_id, q_id):
        """Coverage of path `p_id` by path `q_id`; None when no link is coverable."""
        if p_id == q_id:
            return None
        rows = self.rows_for(p_id)
        try:
            return rows[q_id]
        except KeyError:
            p = self.paths[p_id]
            vector = _coverage(p.nodes, p.hops, self._positions[q_id])
            rows[q_id] = vector
            return vector

    def build(self):
        """Compute every ordered pair; returns {(p_id, q_id): vector} for non-zero rows."""
        ids = list(self.paths)
        for p_id in ids:
            for q_id in ids:
                if p_id != q_id:
                    self.row(p_id, q_id)
        return self.as_dict()

    def as_dict(self):
        return {
            (p_id, q_id): vec
            for p_id, rows in self._rows.items()
            for q_id, vec in rows.items()
            if vec is not None
        }

    def write_csv(self, fileobj, build=True):
        """Dump non-zero rows as `path_id,partner_id,v1 v2 ...` (one bit per link)."""
        if build:
            self.build()
        fileobj.write("path_id,partner_id,coverage\n")
        for (p_id, q_id), vec in sorted(self.as_dict().items()):
            bits = " ".join(str(b) for b in vec)
            fileobj.write(f"{p_id},{q_id},{bits}\n")


def build_coverage_table(paths):
    """Eagerly computed coverage table over a candidate path set."""
    table = CoverageTable(paths)
    table.build()
    return table
