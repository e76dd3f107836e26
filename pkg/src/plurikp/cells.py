"""Oriented cells and integer chains on the root lattice and the cubic lattice.

Lattice points are plain integer tuples.  Root-lattice cells live in an
ambient of N+1 coordinates and come in two colour families:

    kind      vertices (offsets from the base point)
    btri      e_i, e_j, e_k                      (weight-1 triangle)
    wtri      e_i+e_j, e_i+e_k, e_j+e_k          (weight-2 triangle)
    btet      four single offsets
    oct       the six pair offsets of 4 directions
    wtet      four triple offsets
    bsimp4    five single offsets
    bambo4    the ten pair offsets of 5 directions
    wambo4    the ten triple offsets
    wsimp4    five quadruple offsets

Cubic-lattice cells (sq, cube3, cube4) take all subsets of their directions
as offsets.  A cell stores (kind, base, indices, sign); indices are kept
strictly increasing and any transposition is folded into the sign, so equal
cells compare equal bit for bit and chains cancel exactly.

Facets follow one orientation recipe: put alternating signs on the index
list starting with "+" on the last index, delete one index, keep the sign.
For a weight-w root-lattice cell the deleted-index facet of weight w stays
at the base while the weight w-1 facet is shifted by the deleted direction;
a cube has an unshifted facet and an opposite shifted facet with flipped
sign per deleted direction.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from . import config
from .errors import (
    CellError,
    ChainError,
    DecompositionError,
    FormatError,
    NotFlowerError,
    NotInteriorError,
)

Point = tuple[int, ...]

__all__ = [
    "CellKind",
    "Chain",
    "OrientedCell",
    "Point",
    "boundary",
    "corner",
    "cubic_point_flower",
    "decompose_flower",
    "facets",
    "flower",
    "format_cell",
    "format_chain",
    "parse_cell",
    "parse_chain",
    "project_cell",
    "project_point",
    "qan_point_flower",
    "vertices",
]


class CellKind(Enum):
    BLACK_TRIANGLE = "btri"
    WHITE_TRIANGLE = "wtri"
    BLACK_TETRAHEDRON = "btet"
    OCTAHEDRON = "oct"
    WHITE_TETRAHEDRON = "wtet"
    BLACK_SIMPLEX4 = "bsimp4"
    BLACK_AMBO4 = "bambo4"
    WHITE_AMBO4 = "wambo4"
    WHITE_SIMPLEX4 = "wsimp4"
    SQUARE = "sq"
    CUBE3 = "cube3"
    CUBE4 = "cube4"


# kind -> (family, cell dimension, index count, vertex weight or None)
_INFO: dict[CellKind, tuple[str, int, int, int | None]] = {
    CellKind.BLACK_TRIANGLE: ("qan", 2, 3, 1),
    CellKind.WHITE_TRIANGLE: ("qan", 2, 3, 2),
    CellKind.BLACK_TETRAHEDRON: ("qan", 3, 4, 1),
    CellKind.OCTAHEDRON: ("qan", 3, 4, 2),
    CellKind.WHITE_TETRAHEDRON: ("qan", 3, 4, 3),
    CellKind.BLACK_SIMPLEX4: ("qan", 4, 5, 1),
    CellKind.BLACK_AMBO4: ("qan", 4, 5, 2),
    CellKind.WHITE_AMBO4: ("qan", 4, 5, 3),
    CellKind.WHITE_SIMPLEX4: ("qan", 4, 5, 4),
    CellKind.SQUARE: ("cubic", 2, 2, None),
    CellKind.CUBE3: ("cubic", 3, 3, None),
    CellKind.CUBE4: ("cubic", 4, 4, None),
}

# (vertex weight, index count) -> root-lattice kind, for facet lookups.
_QAN_BY_WEIGHT_COUNT = {
    (info[3], info[2]): kind
    for kind, info in _INFO.items()
    if info[0] == "qan"
}

_CUBIC_BY_COUNT = {2: CellKind.SQUARE, 3: CellKind.CUBE3, 4: CellKind.CUBE4}

_KIND_BY_TOKEN = {kind.value: kind for kind in CellKind}

FOUR_CELL_KINDS = (
    CellKind.BLACK_SIMPLEX4,
    CellKind.BLACK_AMBO4,
    CellKind.WHITE_AMBO4,
    CellKind.WHITE_SIMPLEX4,
    CellKind.CUBE4,
)


def _sort_with_parity(indices: Iterable[int]) -> tuple[tuple[int, ...], int]:
    seq = list(indices)
    parity = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            parity = -parity
            j -= 1
    return tuple(seq), parity


@dataclass(frozen=True)
class OrientedCell:
    """A lattice cell in canonical form: sorted indices, sign in {+1, -1}."""

    kind: CellKind
    base: Point
    indices: tuple[int, ...]
    sign: int = 1

    def __post_init__(self) -> None:
        if self.kind not in _INFO:
            raise CellError(f"unknown cell kind {self.kind!r}")
        family, _, n_idx, _ = _INFO[self.kind]
        base = tuple(int(c) for c in self.base)
        sorted_idx, parity = _sort_with_parity(int(i) for i in self.indices)
        if len(sorted_idx) != n_idx:
            raise CellError(
                f"{self.kind.value} needs {n_idx} indices, got {len(sorted_idx)}"
            )
        if len(set(sorted_idx)) != n_idx:
            raise CellError(f"repeated index in {sorted_idx}")
        ambient = len(base)
        min_ambient = 4 if family == "qan" else 3
        # Headroom past MAX_DIM covers the auxiliary directions that corner
        # decompositions append (two on the root lattice, one on the cubic).
        max_ambient = config.MAX_DIM + (3 if family == "qan" else 1)
        if ambient < min_ambient or ambient > max_ambient:
            raise CellError(
                f"ambient size {ambient} outside [{min_ambient}, {max_ambient}]"
                f" for a {family} cell"
            )
        if sorted_idx[0] < 0 or sorted_idx[-1] >= ambient:
            raise CellError(f"indices {sorted_idx} out of range for ambient {ambient}")
        if self.sign not in (1, -1):
            raise CellError(f"sign must be +1 or -1, got {self.sign!r}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "indices", sorted_idx)
        object.__setattr__(self, "sign", self.sign * parity)

    @property
    def family(self) -> str:
        return _INFO[self.kind][0]

    @property
    def dim(self) -> int:
        return _INFO[self.kind][1]

    @property
    def weight(self) -> int | None:
        """Vertex weight of a root-lattice cell, None for cubic cells."""
        return _INFO[self.kind][3]

    def positive(self) -> "OrientedCell":
        return self if self.sign == 1 else OrientedCell(self.kind, self.base, self.indices)

    def __neg__(self) -> "OrientedCell":
        return OrientedCell(self.kind, self.base, self.indices, -self.sign)

    def shifted(self, direction: int, steps: int = 1) -> "OrientedCell":
        base = list(self.base)
        base[direction] += steps
        return OrientedCell(self.kind, tuple(base), self.indices, self.sign)

    def translated(self, vector: Point) -> "OrientedCell":
        base = tuple(b + v for b, v in zip(self.base, vector, strict=True))
        return OrientedCell(self.kind, base, self.indices, self.sign)

    def padded(self, extra: int) -> "OrientedCell":
        return OrientedCell(self.kind, self.base + (0,) * extra, self.indices, self.sign)

    def __str__(self) -> str:
        return format_cell(self)


def _offset(base: Point, directions: Iterable[int]) -> Point:
    point = list(base)
    for d in directions:
        point[d] += 1
    return tuple(point)


def vertices(cell: OrientedCell) -> frozenset[Point]:
    """Vertex set of the cell, translated by its base point."""
    if cell.family == "qan":
        w = cell.weight
        return frozenset(
            _offset(cell.base, combo)
            for combo in itertools.combinations(cell.indices, w)
        )
    return frozenset(
        _offset(cell.base, combo)
        for r in range(len(cell.indices) + 1)
        for combo in itertools.combinations(cell.indices, r)
    )


def has_vertex(cell: OrientedCell, point: Point) -> bool:
    return tuple(point) in vertices(cell)


class Chain:
    """Integer formal sum of oriented cells with exact cancellation.

    Keys are positively oriented canonical cells; a negatively oriented cell
    contributes through the sign of its coefficient.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[OrientedCell, int]] = ()) -> None:
        acc: dict[OrientedCell, int] = {}
        for cell, coeff in terms:
            coeff = int(coeff) * cell.sign
            if coeff == 0:
                continue
            key = cell.positive()
            new = acc.get(key, 0) + coeff
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)
        self._terms = acc

    @classmethod
    def of(cls, *cells: OrientedCell) -> "Chain":
        return cls((cell, 1) for cell in cells)

    def items(self) -> Iterator[tuple[OrientedCell, int]]:
        return iter(sorted(self._terms.items(), key=lambda kv: format_cell(kv[0])))

    def coefficient(self, cell: OrientedCell) -> int:
        return self._terms.get(cell.positive(), 0) * cell.sign

    def cells(self) -> list[OrientedCell]:
        return [cell for cell, _ in self.items()]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Chain) and self._terms == other._terms

    def __add__(self, other: "Chain") -> "Chain":
        return Chain(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Chain":
        return Chain((cell, -c) for cell, c in self._terms.items())

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, scalar: int) -> "Chain":
        return Chain((cell, c * scalar) for cell, c in self._terms.items())

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return "Chain()"
        return "Chain[" + ", ".join(f"{c}*{cell}" for cell, c in self.items()) + "]"

    def restricted_to_vertex(self, point: Point) -> "Chain":
        point = tuple(point)
        return Chain(
            (cell, c) for cell, c in self._terms.items() if has_vertex(cell, point)
        )

    def padded(self, extra: int) -> "Chain":
        return Chain((cell.padded(extra), c) for cell, c in self._terms.items())


def _deletion_signs(count: int) -> list[int]:
    # Alternating signs over the sorted index list, "+" on the last index.
    return [1 if (count - 1 - p) % 2 == 0 else -1 for p in range(count)]


def facets(cell: OrientedCell) -> Chain:
    """Signed facet chain of a 3-cell or 4-cell."""
    if cell.dim == 2:
        raise CellError(f"facets of a 2-cell ({cell.kind.value}) are not supported")
    idx = cell.indices
    signs = _deletion_signs(len(idx))
    terms: list[tuple[OrientedCell, int]] = []
    if cell.family == "qan":
        w = cell.weight
        n = len(idx) - 1
        same_weight = _QAN_BY_WEIGHT_COUNT.get((w, n))
        lower_weight = _QAN_BY_WEIGHT_COUNT.get((w - 1, n))
        for pos, deleted in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1 :]
            s = signs[pos] * cell.sign
            if same_weight is not None:
                terms.append((OrientedCell(same_weight, cell.base, rest), s))
            if lower_weight is not None:
                shifted = _offset(cell.base, (deleted,))
                terms.append((OrientedCell(lower_weight, shifted, rest), s))
    else:
        facet_kind = _CUBIC_BY_COUNT[len(idx) - 1]
        for pos, deleted in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1 :]
            s = signs[pos] * cell.sign
            terms.append((OrientedCell(facet_kind, cell.base, rest), s))
            shifted = _offset(cell.base, (deleted,))
            terms.append((OrientedCell(facet_kind, shifted, rest), -s))
    return Chain(terms)


def boundary(chain: Chain) -> Chain:
    """Linear extension of facets to chains."""
    total = Chain()
    for cell, coeff in chain.items():
        total = total + facets(cell) * coeff
    return total


def corner(cell4: OrientedCell, center: Point) -> Chain:
    """All facets of a 4-cell adjacent to the center vertex."""
    if cell4.dim != 4:
        raise CellError(f"corner needs a 4-cell, got {cell4.kind.value}")
    center = tuple(center)
    if not has_vertex(cell4, center):
        raise CellError(f"{center} is not a vertex of {cell4}")
    return facets(cell4).restricted_to_vertex(center)


def _check_three_manifold_terms(chain: Chain) -> str:
    families = set()
    ambients = set()
    for cell, coeff in chain.items():
        if cell.dim != 3:
            raise ChainError(f"chain contains a non-3-cell {cell}")
        if abs(coeff) != 1:
            raise ChainError(f"coefficient {coeff} on {cell}: not a manifold chain")
        families.add(cell.family)
        ambients.add(len(cell.base))
    if len(families) > 1:
        raise ChainError("chain mixes root-lattice and cubic cells")
    if len(ambients) > 1:
        raise ChainError("mixed ambient sizes in one chain")
    return families.pop() if families else "qan"


def flower(manifold: Chain, vertex: Point) -> Chain:
    """Sub-chain of all 3-cells of the manifold containing the vertex.

    Raises NotInteriorError when some 2-cell facet at the vertex is left
    unmatched, i.e. the vertex lies on the boundary of the star.
    """
    vertex = tuple(vertex)
    star = manifold.restricted_to_vertex(vertex)
    if not star:
        raise NotFlowerError(f"no 3-cell of the chain contains {vertex}")
    _check_three_manifold_terms(star)
    for cell, coeff in boundary(star).items():
        if coeff != 0 and has_vertex(cell, vertex):
            raise NotInteriorError(
                f"unmatched facet {cell} at {vertex} (coefficient {coeff})"
            )
    return star


def qan_point_flower(center: Point, directions: Iterable[int]) -> Chain:
    """The 14-cell flower of a 4-direction root sub-lattice around a vertex.

    Four black tetrahedra, six octahedra with reversed orientation, and four
    white tetrahedra; the unique (up to global orientation) flower of the
    full 3-dimensional sub-lattice star.
    """
    dirs = tuple(sorted(set(int(d) for d in directions)))
    if len(dirs) != 4:
        raise ChainError(f"need exactly 4 directions, got {dirs}")
    center = tuple(center)
    terms = []
    for combo in itertools.combinations(dirs, 1):
        base = tuple(c - (1 if d in combo else 0) for d, c in enumerate(center))
        terms.append((OrientedCell(CellKind.BLACK_TETRAHEDRON, base, dirs), 1))
    for combo in itertools.combinations(dirs, 2):
        base = tuple(c - (1 if d in combo else 0) for d, c in enumerate(center))
        terms.append((OrientedCell(CellKind.OCTAHEDRON, base, dirs), -1))
    for combo in itertools.combinations(dirs, 3):
        base = tuple(c - (1 if d in combo else 0) for d, c in enumerate(center))
        terms.append((OrientedCell(CellKind.WHITE_TETRAHEDRON, base, dirs), 1))
    return Chain(terms)


def cubic_point_flower(center: Point, directions: Iterable[int]) -> Chain:
    """The eight 3D cubes around a vertex of a cubic sub-lattice."""
    dirs = tuple(sorted(set(int(d) for d in directions)))
    if len(dirs) != 3:
        raise ChainError(f"need exactly 3 directions, got {dirs}")
    center = tuple(center)
    terms = []
    for r in range(4):
        for combo in itertools.combinations(dirs, r):
            base = tuple(c - (1 if d in combo else 0) for d, c in enumerate(center))
            terms.append((OrientedCell(CellKind.CUBE3, base, dirs), 1))
    return Chain(terms)


def decompose_flower(
    flower_chain: Chain, vertex: Point
) -> list[tuple[OrientedCell, Point]]:
    """Represent a flower as a list of 4D corners (4-cell, center) pairs.

    Root-lattice flowers are lifted over two auxiliary directions M and L
    (the next two coordinates); cubic flowers over one.  The chain sum of
    the returned corners reproduces the padded input exactly, which is
    re-checked before returning.
    """
    vertex = tuple(vertex)
    star = flower(flower_chain, vertex)
    if len(star) != len(flower_chain):
        raise NotFlowerError("chain contains cells away from the vertex")
    family = _check_three_manifold_terms(star)

    if family == "cubic":
        padded_vertex = vertex + (0,)
        aux = len(vertex)
        pairs = []
        for cell, coeff in star.padded(1).items():
            cube4 = OrientedCell(
                CellKind.CUBE4, cell.base, cell.indices + (aux,), coeff
            )
            pairs.append((cube4, padded_vertex))
        residual = _corner_sum(pairs) - star.padded(1)
        if residual:
            raise DecompositionError(f"nonzero residual chain: {residual!r}")
        return pairs

    aux_m = len(vertex)
    aux_l = aux_m + 1
    padded_vertex = vertex + (0, 0)
    padded = star.padded(2)
    pairs = []
    lift_kind = {
        CellKind.BLACK_TETRAHEDRON: CellKind.BLACK_SIMPLEX4,
        CellKind.OCTAHEDRON: CellKind.BLACK_AMBO4,
        CellKind.WHITE_TETRAHEDRON: CellKind.WHITE_AMBO4,
    }
    white_corner_sum = Chain()
    for cell, coeff in padded.items():
        lifted = OrientedCell(
            lift_kind[cell.kind], cell.base, cell.indices + (aux_m,), coeff
        )
        pairs.append((lifted, padded_vertex))
        if cell.kind is CellKind.WHITE_TETRAHEDRON:
            white_corner_sum = white_corner_sum + corner(lifted, padded_vertex)
    for cell, coeff in white_corner_sum.items():
        if cell.kind is not CellKind.WHITE_TETRAHEDRON or aux_m not in cell.indices:
            continue
        if abs(coeff) != 1:
            raise DecompositionError(
                f"auxiliary tetrahedron {cell} has coefficient {coeff}"
            )
        base = list(cell.base)
        base[aux_l] -= 1
        simplex = OrientedCell(
            CellKind.WHITE_SIMPLEX4, tuple(base), cell.indices + (aux_l,), -coeff
        )
        pairs.append((simplex, padded_vertex))
    residual = _corner_sum(pairs) - padded
    if residual:
        raise DecompositionError(f"nonzero residual chain: {residual!r}")
    return pairs


def _corner_sum(pairs: Iterable[tuple[OrientedCell, Point]]) -> Chain:
    total = Chain()
    for cell4, center in pairs:
        total = total + corner(cell4, center)
    return total


def project_point(axis: int, point: Point) -> Point:
    """Drop the given coordinate, mapping a root-lattice point to a cubic one."""
    point = tuple(point)
    if not 0 <= axis < len(point):
        raise CellError(f"axis {axis} out of range for point of size {len(point)}")
    return point[:axis] + point[axis + 1 :]


def project_cell(axis: int, cell: OrientedCell) -> OrientedCell:
    """Cell-wise projection: octahedra to 3D cubes, black 4-ambo cells to 4D cubes.

    The axis must be the smallest index of the cell; remaining directions
    shift down by one after the coordinate is dropped.
    """
    if cell.kind is CellKind.OCTAHEDRON:
        new_kind = CellKind.CUBE3
    elif cell.kind is CellKind.BLACK_AMBO4:
        new_kind = CellKind.CUBE4
    else:
        raise CellError(f"no cubic counterpart for {cell.kind.value}")
    if cell.indices[0] != axis:
        raise CellError(
            f"axis {axis} must be the smallest cell index {cell.indices[0]}"
        )
    new_dirs = tuple(d - 1 for d in cell.indices[1:])
    return OrientedCell(new_kind, project_point(axis, cell.base), new_dirs, cell.sign)


_CELL_RE = re.compile(
    r"^\s*([+-]?)([a-z0-9]+)\[([0-9 ]+)\]@\(([-0-9,]+)\)\s*$"
)


def format_cell(cell: OrientedCell) -> str:
    sign = "-" if cell.sign < 0 else "+"
    idx = " ".join(str(i) for i in cell.indices)
    base = ",".join(str(c) for c in cell.base)
    return f"{sign}{cell.kind.value}[{idx}]@({base})"


def parse_cell(text: str) -> OrientedCell:
    match = _CELL_RE.match(text)
    if not match:
        raise FormatError(f"malformed cell text {text!r}")
    sign_txt, token, idx_txt, base_txt = match.groups()
    kind = _KIND_BY_TOKEN.get(token)
    if kind is None:
        raise FormatError(f"unknown cell kind token {token!r}")
    sign = -1 if sign_txt == "-" else 1
    try:
        indices = tuple(int(t) for t in idx_txt.split())
        base = tuple(int(t) for t in base_txt.split(","))
        return OrientedCell(kind, base, indices, sign)
    except (ValueError, CellError) as exc:
        raise FormatError(f"invalid cell {text!r}: {exc}") from exc


def format_chain(chain: Chain) -> str:
    return "\n".join(f"{coeff} {format_cell(cell)}" for cell, coeff in chain.items())


def parse_chain(text: str) -> Chain:
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        try:
            coeff = int(head)
        except ValueError as exc:
            raise FormatError(f"line {lineno}: expected integer coefficient") from exc
        terms.append((parse_cell(rest), coeff))
    return Chain(terms)
