"""Ground-truth layers from node attributes.

A layer groups nodes by one attribute (or a tuple of attributes); its
communities are the connected components of each same-valued group.
Nodes missing any chosen attribute are dropped from the graph.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import TextIO

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import ParseError
from .graph import WeightedGraph, induced_subgraph
from .partition import Layer
from .synth import GroundTruth

MISSING = {"", "0", "na", "nan", "none"}


def load_attributes(stream: TextIO) -> tuple[list[str], dict[str, dict[str, str]]]:
    """Whitespace- or tab-separated table with a header row; first column is the node label."""
    rows = [line.split() for line in stream if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise ParseError(1, "empty attribute table")
    header = rows[0]
    table = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(lineno, f"expected {len(header)} fields, got {len(row)}")
        table[row[0]] = dict(zip(header[1:], row[1:]))
    return header[1:], table


def attribute_layers(
    g: WeightedGraph, table: dict[str, dict[str, str]], layers: Sequence[Sequence[str]]
) -> tuple[WeightedGraph, GroundTruth]:
    """Drop nodes lacking any chosen attribute; one partition per attribute group."""
    chosen = [a for group in layers for a in group]

    def present(label):
        row = table.get(label)
        return row is not None and all(row.get(a, "").strip().lower() not in MISSING for a in chosen)

    keep = np.array([v for v in range(g.n) if present(g.labels[v])], dtype=np.int64)
    sub, _ = induced_subgraph(g, keep)
    truth = GroundTruth()
    u, v, _ = sub.edges()
    for group in layers:
        keys = [tuple(table[lab][a] for a in group) for lab in sub.labels]
        _, code = np.unique(np.array(["\x1f".join(k) for k in keys]), return_inverse=True)
        same = code[u] == code[v]
        adj = sp.coo_matrix((np.ones(int(same.sum())), (u[same], v[same])), shape=(sub.n, sub.n))
        _, comp = connected_components(adj, directed=False)
        truth.layers.append(Layer.from_membership(comp))
    return sub, truth
