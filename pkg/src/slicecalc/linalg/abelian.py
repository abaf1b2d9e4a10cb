"""
Finitely generated abelian groups by integer presentation, and their homomorphisms.

A group with n generators and relation matrix R (n rows, one column per
relator) is Z^n / colspan(R). Elements are integer vectors of length n.
Every question about subgroups (membership, kernels, images, quotients)
is reduced to a Smith normal form computation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, List, Optional, Sequence, Tuple

from ..errors import IllDefinedMapError, InvalidSpecError
from ..io_utils import decode_int
from .matrix import IntMatrix
from .snf import SmithForm, integer_nullspace, smith_normal_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FgAbGroup:
    generators: int
    relations: IntMatrix = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.generators < 0:
            raise InvalidSpecError(f"generator count must be >= 0, got {self.generators}")
        if self.relations is None:
            object.__setattr__(self, "relations", IntMatrix.zeros(self.generators, 0))
        if self.relations.rows != self.generators:
            raise InvalidSpecError(
                f"relation matrix has {self.relations.rows} rows for {self.generators} generators"
            )

    # -----------------------------
    # Constructors
    # -----------------------------
    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank)

    @classmethod
    def zero(cls) -> "FgAbGroup":
        return cls(0)

    @classmethod
    def cyclic(cls, order: int) -> "FgAbGroup":
        """Z/order, with order 0 meaning Z."""
        if order == 0:
            return cls(1)
        return cls(1, IntMatrix.scalar(order))

    @classmethod
    def from_invariants(cls, free_rank: int, factors: Sequence[int]) -> "FgAbGroup":
        n = len(factors) + free_rank
        rels = IntMatrix.zeros(n, 0)
        if factors:
            rows = [[factors[j] if i == j else 0 for j in range(len(factors))] for i in range(n)]
            rels = IntMatrix.from_rows(rows, cols=len(factors))
        return cls(n, rels)

    # -----------------------------
    # Invariants
    # -----------------------------
    @cached_property
    def smith(self) -> SmithForm:
        return smith_normal_form(self.relations)

    def invariant_factors(self) -> Tuple[int, Tuple[int, ...]]:
        """(free rank, invariant factors > 1 in divisibility order)."""
        form = self.smith
        return self.generators - form.rank, tuple(d for d in form.divisors if d > 1)

    @property
    def free_rank(self) -> int:
        return self.invariant_factors()[0]

    def is_trivial(self) -> bool:
        return self.invariant_factors() == (0, ())

    def order(self) -> Optional[int]:
        """Number of elements, None when infinite."""
        rank, factors = self.invariant_factors()
        if rank:
            return None
        out = 1
        for d in factors:
            out *= d
        return out

    def is_isomorphic(self, other: "FgAbGroup") -> bool:
        return self.invariant_factors() == other.invariant_factors()

    def describe(self) -> str:
        rank, factors = self.invariant_factors()
        parts = [f"Z/{d}" for d in factors]
        if rank == 1:
            parts.append("Z")
        elif rank > 1:
            parts.append(f"Z^{rank}")
        return " x ".join(parts) if parts else "0"

    # -----------------------------
    # Elements
    # -----------------------------
    def solve(self, vector: Sequence[int]) -> Optional[List[int]]:
        """
        Coefficients c with relations @ c == vector, or None when the vector
        is not zero in the group.
        """
        if len(vector) != self.generators:
            raise InvalidSpecError(f"vector of length {len(vector)} in a group on {self.generators} generators")
        form = self.smith
        w = form.left.apply(vector)
        divs = form.divisors
        y = [0] * self.relations.cols
        for i, wi in enumerate(w):
            if i < len(divs):
                if wi % divs[i]:
                    return None
                y[i] = wi // divs[i]
            elif wi != 0:
                return None
        return form.right.apply(y)

    def contains(self, vector: Sequence[int]) -> bool:
        """True when the vector lies in the relation lattice, i.e. is zero in the group."""
        return self.solve(vector) is not None

    def normal_form(self) -> "NormalForm":
        """
        Isomorphic diagonal presentation Z/d_1 + ... + Z/d_t + Z^r with every
        d_i > 1, together with the isomorphisms in both directions.
        """
        form = self.smith
        divs = form.divisors
        torsion = [i for i, d in enumerate(divs) if d > 1]
        free = list(range(len(divs), self.generators))
        keep = torsion + free
        factors = [divs[i] for i in torsion]
        target = FgAbGroup.from_invariants(len(free), factors)
        to_normal = Homomorphism(self, target, form.left.take_rows(keep))
        from_normal = Homomorphism(target, self, form.left_inv.take_cols(keep))
        return NormalForm(target, to_normal, from_normal)

    def moduli(self) -> Optional[List[int]]:
        """
        Per-generator order when the presentation is diagonal (0 = free), else None.
        Normal-form groups always qualify.
        """
        mods = [0] * self.generators
        for j in range(self.relations.cols):
            col = self.relations.col(j)
            nonzero = [i for i, v in enumerate(col) if v != 0]
            if not nonzero:
                continue
            if len(nonzero) > 1 or mods[nonzero[0]]:
                return None
            mods[nonzero[0]] = abs(col[nonzero[0]])
        return mods

    # -----------------------------
    # JSON
    # -----------------------------
    def to_json(self) -> dict:
        return {"gens": self.generators, "rels": self.relations.to_json()}

    @classmethod
    def from_json(cls, obj: Any, path: str = "$") -> "FgAbGroup":
        if not isinstance(obj, dict):
            raise InvalidSpecError("expected an object with 'gens' and 'rels'", path=path)
        if "gens" not in obj:
            raise InvalidSpecError("missing field", path=f"{path}.gens")
        gens = decode_int(obj["gens"], f"{path}.gens")
        if gens < 0:
            raise InvalidSpecError("must be >= 0", path=f"{path}.gens")
        rels_obj = obj.get("rels", [])
        rels = IntMatrix.from_json(rels_obj, f"{path}.rels")
        # rels may be given as an empty list meaning "no relators"
        if rels.rows == 0 and gens:
            rels = IntMatrix.zeros(gens, 0)
        if rels.rows != gens:
            raise InvalidSpecError(f"expected {gens} rows, got {rels.rows}", path=f"{path}.rels")
        return cls(gens, rels)


@dataclass(frozen=True)
class NormalForm:
    group: FgAbGroup
    to_normal: "Homomorphism"
    from_normal: "Homomorphism"


@dataclass(frozen=True)
class Homomorphism:
    """
    Map source -> target given by a (target generators x source generators) matrix.
    Construction checks shapes only; `is_well_defined` checks relations.
    """
    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        expected = (self.target.generators, self.source.generators)
        if self.matrix.shape != expected:
            raise InvalidSpecError(f"map matrix has shape {self.matrix.shape}, expected {expected}")

    @classmethod
    def identity(cls, group: FgAbGroup) -> "Homomorphism":
        return cls(group, group, IntMatrix.identity(group.generators))

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> "Homomorphism":
        return cls(source, target, IntMatrix.zeros(target.generators, source.generators))

    def __call__(self, vector: Sequence[int]) -> List[int]:
        return self.matrix.apply(vector)

    def ill_defined_relators(self) -> List[int]:
        """Indices of source relators whose image is nonzero in the target."""
        image = self.matrix @ self.source.relations
        return [j for j in range(image.cols) if not self.target.contains(image.col(j))]

    def is_well_defined(self) -> bool:
        return not self.ill_defined_relators()

    def require_well_defined(self, name: str = "map") -> None:
        bad = self.ill_defined_relators()
        if bad:
            raise IllDefinedMapError(f"{name} does not respect source relators {bad}")

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """self after inner."""
        if inner.target.generators != self.source.generators:
            raise InvalidSpecError("cannot compose: generator counts differ")
        return Homomorphism(inner.source, self.target, self.matrix @ inner.matrix)

    def __add__(self, other: "Homomorphism") -> "Homomorphism":
        return Homomorphism(self.source, self.target, self.matrix + other.matrix)

    def failing_generators(self, other: "Homomorphism") -> List[int]:
        """Source generators on which the two maps differ modulo target relations."""
        diff = self.matrix - other.matrix
        return [j for j in range(diff.cols) if not self.target.contains(diff.col(j))]

    def equals(self, other: "Homomorphism") -> bool:
        return not self.failing_generators(other)

    def is_zero(self) -> bool:
        return self.equals(Homomorphism.zero(self.source, self.target))

    def is_injective(self) -> bool:
        return is_injective(self)

    def is_surjective(self) -> bool:
        stacked = IntMatrix.hstack([self.matrix, self.target.relations], rows=self.target.generators)
        form = smith_normal_form(stacked)
        return form.rank == self.target.generators and all(d == 1 for d in form.divisors)

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def reduced(self) -> "Homomorphism":
        """Entries reduced into [0, d) on rows whose target generator has order d."""
        mods = self.target.moduli()
        if mods is None:
            return self
        rows = self.matrix.to_lists()
        for i, d in enumerate(mods):
            if d:
                rows[i] = [v % d for v in rows[i]]
        return Homomorphism(self.source, self.target, IntMatrix.from_rows(rows, cols=self.matrix.cols))


# -----------------------------
# Subgroup calculus
# -----------------------------

def invariant_factors(group: FgAbGroup) -> Tuple[int, Tuple[int, ...]]:
    return group.invariant_factors()


def relations_among(columns: IntMatrix, ambient: FgAbGroup) -> IntMatrix:
    """
    Lattice {c : columns @ c == 0 in ambient}, as a matrix of generating columns.
    """
    k = columns.cols
    stacked = IntMatrix.hstack([columns, ambient.relations], rows=ambient.generators)
    null = integer_nullspace(stacked)
    return null.take_rows(range(k))


def _normalized_subgroup(columns: IntMatrix, ambient: FgAbGroup) -> Tuple[FgAbGroup, Homomorphism, Homomorphism]:
    """
    Subgroup of `ambient` generated by `columns`, in normal form.
    Returns (subgroup, inclusion, coordinates) where coordinates sends the
    free group on the columns onto the subgroup.
    """
    raw = FgAbGroup(columns.cols, relations_among(columns, ambient))
    nf = raw.normal_form()
    inclusion = Homomorphism(nf.group, ambient, columns @ nf.from_normal.matrix)
    return nf.group, inclusion, nf.to_normal


def kernel(f: Homomorphism) -> Tuple[FgAbGroup, Homomorphism]:
    """
    Kernel of f as a subgroup of f.source: the preimage lattice
    {x : f(x) in relations of target} taken modulo the source relations.
    """
    f.require_well_defined("kernel argument")
    n_src = f.source.generators
    stacked = IntMatrix.hstack([f.matrix, f.target.relations], rows=f.target.generators)
    preimage = integer_nullspace(stacked).take_rows(range(n_src))
    group, inclusion, _ = _normalized_subgroup(preimage, f.source)
    logger.debug("kernel: %s", group.describe())
    return group, inclusion


def image(f: Homomorphism) -> Tuple[FgAbGroup, Homomorphism]:
    """Subgroup of f.target generated by the images of the source generators."""
    group, inclusion, _ = image_with_corestriction(f)
    return group, inclusion


def image_with_corestriction(f: Homomorphism) -> Tuple[FgAbGroup, Homomorphism, Homomorphism]:
    """(image, inclusion into target, corestriction source -> image)."""
    f.require_well_defined("image argument")
    group, inclusion, coords = _normalized_subgroup(f.matrix, f.target)
    corestriction = Homomorphism(f.source, group, coords.matrix)
    return group, inclusion, corestriction.reduced()


def quotient(group: FgAbGroup, generators: IntMatrix) -> Tuple[FgAbGroup, Homomorphism]:
    """
    group / <columns of generators>: the columns join the relators, and the
    projection is the identity on generators.
    """
    if generators.rows != group.generators:
        raise InvalidSpecError(
            f"subgroup generators have {generators.rows} coordinates, group has {group.generators}"
        )
    rels = IntMatrix.hstack([group.relations, generators], rows=group.generators)
    q = FgAbGroup(group.generators, rels)
    return q, Homomorphism(group, q, IntMatrix.identity(group.generators))


def is_injective(f: Homomorphism) -> bool:
    k, _ = kernel(f)
    return k.is_trivial()
