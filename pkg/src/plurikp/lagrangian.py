"""Discrete 3-form, action functionals, and corner quantities.

The 3-form on an octahedron with values (x_ij, ..., x_kl) is

    L = (1/2) * ( Lam(x_ij x_kl / (x_ik x_jl))
                + Lam(x_ik x_jl / (x_il x_jk))
                + Lam(-x_il x_jk / (x_ij x_kl)) )

times the orientation sign; on a 3D cube it is the same expression on the
inscribed octahedron.  Tetrahedra carry no Lagrangian, so the exterior
derivative (the action over the facet chain) vanishes identically on
4-simplices.

Differentiating the exterior derivative of a 4-ambo cell at one of its
vertices yields (1/x) * log|E| with E a product of three fractions; the ten
corner products of a cell arise from two templates (one for vertices whose
direction pair is a step of the five-cycle, one for the two-step pairs, and
likewise for the complementary triples on the white cell) by rotating the
cycle.  4D-cube corners reuse the same templates through the projection
substitution: a virtual smallest direction is prepended to the cube
directions and simply drops out of every vertex offset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

from .cells import Chain, CellKind, OrientedCell, Point, _offset, facets
from .dilog import skew_dilog
from .dkp import six_points
from .errors import (
    CellError,
    MissingVertexError,
    NoCornerEquationError,
    SingularFieldError,
)

__all__ = [
    "CornerProduct",
    "action",
    "action_at",
    "corner_product",
    "corner_residual",
    "exterior_derivative",
    "three_form",
]

_FRACTION_GUARD = 1e-12


def _values(field: Mapping[Point, float], cell: OrientedCell) -> tuple[float, ...]:
    out = []
    for point in six_points(cell):
        try:
            value = float(field[point])
        except KeyError as exc:
            raise MissingVertexError(f"field has no value at {point}") from exc
        if value == 0.0 or not math.isfinite(value):
            raise SingularFieldError(f"singular field value {value!r} at {point}")
        out.append(value)
    return tuple(out)


def three_form(field: Mapping[Point, float], cell: OrientedCell) -> float:
    """Value of the discrete 3-form on an octahedron or a 3D cube."""
    a, b, c, d, e, f = _values(field, cell)
    m1, m2, m3 = a * f, b * e, c * d
    return 0.5 * cell.sign * (
        skew_dilog(m1 / m2) + skew_dilog(m2 / m3) + skew_dilog(-m3 / m1)
    )


def action(field: Mapping[Point, float], manifold: Chain) -> float:
    """Signed sum of the 3-form over a chain; tetrahedra contribute zero."""
    total = 0.0
    for cell, coeff in manifold.items():
        if cell.kind in (CellKind.OCTAHEDRON, CellKind.CUBE3):
            total += coeff * three_form(field, cell)
        elif cell.kind in (CellKind.BLACK_TETRAHEDRON, CellKind.WHITE_TETRAHEDRON):
            continue
        else:
            raise CellError(f"action is defined on 3-cells only, got {cell}")
    return total


def action_at(field: Mapping[Point, float], manifold: Chain, vertex: Point) -> float:
    """Action restricted to the cells containing the vertex.

    Identical to the full action up to terms independent of the value at the
    vertex, hence interchangeable inside derivatives with respect to it.
    """
    return action(field, manifold.restricted_to_vertex(tuple(vertex)))


def exterior_derivative(field: Mapping[Point, float], cell4: OrientedCell) -> float:
    """Action of the 3-form over the facet chain of a 4-cell."""
    if cell4.dim != 4:
        raise CellError(f"exterior derivative needs a 4-cell, got {cell4.kind.value}")
    return action(field, facets(cell4))


# --- corner product templates ----------------------------------------------
#
# Labels are position tuples into the five-cycle (0, 1, 2, 3, 4) of cell
# directions; a term (s, A, B) stands for s * x[A] * x[B] and a fraction is
# a (numerator, denominator) pair of two-term sums.  The black templates sit
# at the pair (0,1) respectively (0,2); the white ones at the triple (0,1,2)
# respectively (0,1,3).  All other corners follow by cyclic rotation.

_T = tuple[int, tuple[int, ...], tuple[int, ...]]
_Fraction = tuple[tuple[_T, _T], tuple[_T, _T]]
_Template = tuple[_Fraction, _Fraction, _Fraction]

_BLACK_STEP: _Template = (
    (((1, (0, 1), (2, 3)), (1, (0, 3), (1, 2))),
     ((1, (0, 1), (2, 3)), (-1, (0, 2), (1, 3)))),
    (((1, (0, 1), (2, 4)), (-1, (0, 2), (1, 4))),
     ((1, (0, 1), (2, 4)), (1, (0, 4), (1, 2)))),
    (((1, (0, 1), (3, 4)), (1, (0, 4), (1, 3))),
     ((1, (0, 1), (3, 4)), (-1, (0, 3), (1, 4)))),
)

_BLACK_SKIP: _Template = (
    (((1, (0, 2), (1, 3)), (-1, (0, 1), (2, 3))),
     ((1, (0, 2), (1, 3)), (-1, (0, 3), (1, 2)))),
    (((1, (0, 2), (1, 4)), (-1, (0, 4), (1, 2))),
     ((1, (0, 2), (1, 4)), (-1, (0, 1), (2, 4)))),
    (((1, (0, 2), (3, 4)), (-1, (0, 3), (2, 4))),
     ((1, (0, 2), (3, 4)), (1, (0, 4), (2, 3)))),
)

_WHITE_STEP: _Template = (
    (((1, (0, 1, 2), (2, 3, 4)), (1, (0, 2, 4), (1, 2, 3))),
     ((1, (0, 1, 2), (2, 3, 4)), (-1, (0, 2, 3), (1, 2, 4)))),
    (((1, (0, 1, 2), (1, 3, 4)), (-1, (0, 1, 3), (1, 2, 4))),
     ((1, (0, 1, 2), (1, 3, 4)), (1, (0, 1, 4), (1, 2, 3)))),
    (((1, (0, 1, 2), (0, 3, 4)), (1, (0, 1, 4), (0, 2, 3))),
     ((1, (0, 1, 2), (0, 3, 4)), (-1, (0, 1, 3), (0, 2, 4)))),
)

_WHITE_SKIP: _Template = (
    (((1, (0, 1, 3), (2, 3, 4)), (-1, (0, 2, 3), (1, 3, 4))),
     ((1, (0, 1, 3), (2, 3, 4)), (1, (0, 3, 4), (1, 2, 3)))),
    (((1, (0, 1, 3), (1, 2, 4)), (-1, (0, 1, 4), (1, 2, 3))),
     ((1, (0, 1, 3), (1, 2, 4)), (-1, (0, 1, 2), (1, 3, 4)))),
    (((1, (0, 1, 3), (0, 2, 4)), (-1, (0, 1, 2), (0, 3, 4))),
     ((1, (0, 1, 3), (0, 2, 4)), (-1, (0, 1, 4), (0, 2, 3)))),
)


def _eval_template(
    template: _Template,
    rotation: int,
    value_of: Callable[[tuple[int, ...]], float],
) -> float:
    product = 1.0
    for numerator, denominator in template:
        parts = []
        for terms in (numerator, denominator):
            (s1, a1, b1), (s2, a2, b2) = terms
            t1 = s1 * value_of(_rotate(a1, rotation)) * value_of(_rotate(b1, rotation))
            t2 = s2 * value_of(_rotate(a2, rotation)) * value_of(_rotate(b2, rotation))
            total = t1 + t2
            if abs(total) < _FRACTION_GUARD * (abs(t1) + abs(t2)):
                raise SingularFieldError("near-singular corner fraction")
            parts.append(total)
        product *= parts[0] / parts[1]
    return product


def _rotate(labels: tuple[int, ...], rotation: int) -> tuple[int, ...]:
    return tuple((p + rotation) % 5 for p in labels)


def _black_selector(p: int, q: int) -> tuple[_Template, int]:
    # Pair positions p < q on the five-cycle.
    step = (q - p) % 5
    if step == 1:
        return _BLACK_STEP, p
    if step == 4:
        return _BLACK_STEP, q
    if step == 2:
        return _BLACK_SKIP, p
    return _BLACK_SKIP, q


def _white_selector(positions: tuple[int, int, int]) -> tuple[_Template, int]:
    u, v = tuple(p for p in range(5) if p not in positions)
    step = (v - u) % 5
    if step == 1:
        return _WHITE_STEP, (u - 3) % 5
    if step == 4:
        return _WHITE_STEP, (v - 3) % 5
    if step == 2:
        return _WHITE_SKIP, (u - 2) % 5
    return _WHITE_SKIP, (v - 2) % 5


@dataclass(frozen=True)
class CornerProduct:
    """Corner quantity at one vertex of a 4-cell.

    value enters the corner equation as (1/x) log|value|; factors are the
    quantities that equal -1 or +1 on the two solution branches (one for
    ambo cells, the black and white factors for double-index cube corners).
    """

    value: float
    factors: tuple[float, ...]


def _qan_values(
    field: Mapping[Point, float], cell4: OrientedCell
) -> Callable[[tuple[int, ...]], float]:
    dirs = cell4.indices

    def value_of(positions: tuple[int, ...]) -> float:
        point = _offset(cell4.base, tuple(dirs[p] for p in positions))
        value = float(field[point])
        if value == 0.0:
            raise SingularFieldError(f"zero field value at {point}")
        return value

    return value_of


def _cube_values(
    field: Mapping[Point, float], cell4: OrientedCell
) -> Callable[[tuple[int, ...]], float]:
    # Position 0 is the virtual projected-out direction: it contributes no
    # offset, which realizes both substitutions of the projection at once.
    dirs = (None,) + cell4.indices

    def value_of(positions: tuple[int, ...]) -> float:
        real = tuple(dirs[p] for p in positions if dirs[p] is not None)
        point = _offset(cell4.base, real)
        value = float(field[point])
        if value == 0.0:
            raise SingularFieldError(f"zero field value at {point}")
        return value

    return value_of


def _vertex_positions(cell4: OrientedCell, vertex: Point) -> tuple[int, ...]:
    offset = tuple(v - b for v, b in zip(vertex, cell4.base, strict=True))
    if any(o not in (0, 1) for o in offset):
        raise CellError(f"{vertex} is not a vertex of {cell4}")
    chosen = tuple(d for d, o in enumerate(offset) if o == 1)
    if any(d not in cell4.indices for d in chosen):
        raise CellError(f"{vertex} is not a vertex of {cell4}")
    return tuple(cell4.indices.index(d) for d in chosen)


def corner_product(
    field: Mapping[Point, float], cell4: OrientedCell, vertex: Point
) -> CornerProduct:
    """The product of fractions behind the corner equation at the vertex."""
    vertex = tuple(vertex)
    kind = cell4.kind
    if kind is CellKind.BLACK_AMBO4:
        p, q = _vertex_positions(cell4, vertex)
        template, rot = _black_selector(p, q)
        value = _eval_template(template, rot, _qan_values(field, cell4))
        return CornerProduct(value, (value,))
    if kind is CellKind.WHITE_AMBO4:
        positions = _vertex_positions(cell4, vertex)
        template, rot = _white_selector(positions)
        value = _eval_template(template, rot, _qan_values(field, cell4))
        return CornerProduct(value, (value,))
    if kind is CellKind.CUBE4:
        positions = _vertex_positions(cell4, vertex)
        cube_value = _cube_values(field, cell4)
        shifted = tuple(p + 1 for p in positions)
        if len(shifted) == 1:
            template, rot = _black_selector(0, shifted[0])
            value = _eval_template(template, rot, cube_value)
            return CornerProduct(value, (value,))
        if len(shifted) == 2:
            template, rot = _black_selector(*shifted)
            black = _eval_template(template, rot, cube_value)
            template, rot = _white_selector((0,) + shifted)
            white = _eval_template(template, rot, cube_value)
            return CornerProduct(black / white, (black, white))
        if len(shifted) == 3:
            template, rot = _white_selector(shifted)
            white = _eval_template(template, rot, cube_value)
            return CornerProduct(1.0 / white, (white,))
        raise NoCornerEquationError(
            f"no corner equation at {vertex}: the action does not depend on it"
        )
    raise CellError(f"no corner product on {kind.value}")


def corner_residual(
    field: Mapping[Point, float], cell4: OrientedCell, vertex: Point
) -> float:
    """Analytic derivative of the exterior derivative at one vertex.

    Equals sign * (1/x) * log|corner product|; identically zero on the two
    4-simplex kinds, whose facets carry no Lagrangian.
    """
    if cell4.kind in (CellKind.BLACK_SIMPLEX4, CellKind.WHITE_SIMPLEX4):
        return 0.0
    product = corner_product(field, cell4, vertex)
    magnitude = abs(product.value)
    if magnitude == 0.0 or not math.isfinite(magnitude):
        raise SingularFieldError(f"corner product {product.value} at {vertex}")
    try:
        x = float(field[tuple(vertex)])
    except KeyError as exc:
        raise MissingVertexError(f"field has no value at {vertex}") from exc
    return cell4.sign * math.log(magnitude) / x
