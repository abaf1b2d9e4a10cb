"""
Representation expressions such as "2*lambda(1) - rho + 3" or "Vj(3,2,1)+sign".

term   := [sign] [int ["*"]] atom | [sign] int
atom   := rho | rhobar | sign | 1 | lambda(k) | Vj(p,k,j)
A bare integer stands for that many trivial summands. Whitespace is ignored
between tokens, but a coefficient before the atom 1 needs the "*": "2*1" is
2 trivial summands while "2 1" is rejected.
"""
from __future__ import annotations

import re
from typing import Optional

from ..errors import InvalidSpecError
from .group import CyclicGroup
from .virtual import VirtualRep, lam, reduced_regular, regular_rep, sign, trivial, v_j, zero

_TERM_RE = re.compile(
    r"""
    \s*(?P<op>[+-])?\s*
    (?:(?P<coeff>\d+)\s*(?P<star>\*)?\s*)?
    (?P<atom>
        rhobar
      | rho
      | sign
      | lambda\(\s*(?P<k>-?\d+)\s*\)
      | vj\(\s*(?P<p>\d+)\s*,\s*(?P<pk>\d+)\s*,\s*(?P<j>\d+)\s*\)
      | 1
    )?
    \s*
    """,
    re.X | re.I,
)


def _atom(group: CyclicGroup, match: "re.Match[str]") -> VirtualRep:
    atom = match.group("atom").lower()
    if atom == "rho":
        return regular_rep(group)
    if atom == "rhobar":
        return reduced_regular(group)
    if atom == "sign":
        return sign(group)
    if atom == "1":
        return trivial(group)
    if atom.startswith("lambda"):
        return lam(group, int(match.group("k")))
    p, k, j = int(match.group("p")), int(match.group("pk")), int(match.group("j"))
    rep = v_j(p, k, j)
    if rep.group != group:
        raise InvalidSpecError(f"Vj({p},{k},{j}) lives on C{p ** k}, not on {group}")
    return rep


def parse_rep(expr: str, group: CyclicGroup) -> VirtualRep:
    text = (expr or "").strip()
    if not text:
        raise InvalidSpecError("empty representation expression")
    total = zero(group)
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise InvalidSpecError(f"cannot parse {text[pos:]!r} in {expr!r}")
        op: Optional[str] = m.group("op")
        coeff_s, star, atom = m.group("coeff"), m.group("star"), m.group("atom")
        if op is None and not first:
            raise InvalidSpecError(f"expected '+' or '-' before {text[pos:m.end()].strip()!r}")
        if atom is None and (coeff_s is None or star):
            raise InvalidSpecError(f"dangling term {text[pos:m.end()].strip()!r} in {expr!r}")
        if atom == "1" and coeff_s is not None and not star:
            raise InvalidSpecError(f"ambiguous term {text[pos:m.end()].strip()!r}; write {coeff_s}*1 or {coeff_s}")
        coeff = int(coeff_s) if coeff_s is not None else 1
        if op == "-":
            coeff = -coeff
        term = trivial(group, coeff) if atom is None else coeff * _atom(group, m)
        total = total + term
        pos = m.end()
        first = False
    return total
