"""Parabolic alignment of bounded weight modules over gl(∞), o(∞), sp(∞).

Orders on index sets give parabolic subalgebras; the align module decides
when a module has nonzero vectors killed by the nilradical, and the oracle
module checks those answers by brute force at finite rank.
"""
from .align import (
    AlignmentReport,
    InducingModule,
    check_aligned,
    check_highest_weight,
    check_pseudo_aligned,
    fernando_futorny,
    ff_aligned,
    inducing_module,
    shadow,
)
from .families import module_from_json
from .orders import OrderDescriptor, FiniteOrder

__all__ = [
    "AlignmentReport", "InducingModule", "check_aligned", "check_highest_weight",
    "check_pseudo_aligned", "fernando_futorny", "ff_aligned", "inducing_module",
    "shadow", "module_from_json", "OrderDescriptor", "FiniteOrder",
]
