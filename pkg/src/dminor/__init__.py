"""Directed minors of 2-terminal DAGs and the widths they characterize."""

from __future__ import annotations

from .embed import is_d_embedded, is_d_minor, is_h_embedded
from .errors import GraphError
from .families import braess, gsp, gsp_variant, gsp_variants, parallel_graph
from .graph import DiGraph, Edge, Path, Tdag, topological_order, validate_tdag
from .ops import OpSequence, verify_witness
from .oracle import oracle_d_minor, oracle_disjoint_paths, oracle_enumerate
from .disjoint import vertex_disjoint_paths_dag
from .sets import is_concurrent, is_parallel, is_serial, longest_path
from .width import extract_spw_minor_witness, parallel_width, serial_parallel_width, spw, spw_witness

__version__ = "0.1.0"
