"""Exact capacity calculator for Moore and Eilenberg-MacLane spaces."""

try:
    from ._capax import *  # noqa: F401,F403
    from ._capax import CapaxError  # noqa: F401
except ImportError:  # build-tree layout: module next to the package on sys.path
    from _capax import *  # noqa: F401,F403
    from _capax import CapaxError  # noqa: F401

__all__ = [
    "CapaxError",
    "capacity",
    "dominated",
    "normalize",
    "summands",
    "homology",
    "homotopy_group",
    "pp_form",
    "group_canonical",
    "smith_normal_form",
    "oracle_count_summands",
    "idempotents",
]
