"""
The two Mackey-functor operations that C_p slices are built from.

P0:       largest quotient on which restriction is injective. For C_p the
          top level is divided by ker(res) and the bottom level is kept.
EC_p (x): sub-Mackey functor generated by the underlying level. Its top
          level is the image of the transfer.
"""
from __future__ import annotations

import logging

from ..linalg.abelian import Homomorphism, image_with_corestriction, kernel, quotient
from .functor import CpMackey, MackeyMorphism, require_valid

logger = logging.getLogger(__name__)


def p_zero_projection(m: CpMackey) -> MackeyMorphism:
    """The quotient map M -> P0(M): onto on the top level, identity on the bottom."""
    require_valid(m)
    _, incl = kernel(m.res)
    top, proj = quotient(m.top, incl.matrix)
    raw = m.with_top(
        top,
        res=Homomorphism(top, m.bottom, m.res.matrix),
        tr=Homomorphism(m.bottom, top, m.tr.matrix),
    )
    result, to_normal = raw.simplified()
    logger.debug("P0: top %s -> %s", m.top.describe(), result.top.describe())
    return MackeyMorphism(m, result, to_normal.compose(proj), Homomorphism.identity(m.bottom))


def p_zero(m: CpMackey) -> CpMackey:
    return p_zero_projection(m).target


def e_tensor_inclusion(m: CpMackey) -> MackeyMorphism:
    """The inclusion EC_p (x) M -> M: injective on the top level, identity on the bottom."""
    require_valid(m)
    top, incl, corestriction = image_with_corestriction(m.tr)
    result = m.with_top(top, res=m.res.compose(incl), tr=corestriction)
    logger.debug("EC_p (x): top %s -> %s", m.top.describe(), result.top.describe())
    return MackeyMorphism(result, m, incl, Homomorphism.identity(m.bottom))


def e_tensor(m: CpMackey) -> CpMackey:
    return e_tensor_inclusion(m).source
