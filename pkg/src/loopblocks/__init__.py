"""Block structure of reduced density matrices for loop-symmetric states of finite-group gauge theories."""

from .block_engine import BlockStructure, blocks
from .double_mtc import s_matrix
from .gauge_engine import gauge_blocks, gsd
from .group_core import FiniteGroup, from_name, load_group
from .rep_theory import character_table
from .topology import BipartitionSpec, LatticeCounts, spec_from_strings, validate

__all__ = [
    "BipartitionSpec",
    "BlockStructure",
    "FiniteGroup",
    "LatticeCounts",
    "blocks",
    "character_table",
    "from_name",
    "gauge_blocks",
    "gsd",
    "load_group",
    "s_matrix",
    "spec_from_strings",
    "validate",
]

__version__ = "0.1.0"
