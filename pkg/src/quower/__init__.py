"""quower computes minimum covers of toroidal boards by quowers (queen-tower hybrids) and short coverings of F_q^3, and passes between the two through the projective plane PG(2, q).
"""
__version__ = "0.1.0"

from quower.board import BoardCover, BoardPoint, BoardVariant, is_cover
from quower.constructions import best_construction, known_bounds
from quower.field import FieldSpec, field
from quower.lifting import extract, lift, normalize_cover
from quower.log_cfg import log_config, logger
from quower.projective import ProjPoint, ShortCover, Vector3, is_short_cover
from quower.setcover import (SolveOptions, build_board_instance, build_windrose_instance,
                             solve_exact, solve_greedy)
