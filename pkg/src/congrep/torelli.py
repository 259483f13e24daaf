"""The degree-<=3 Boolean polynomial algebra on homology classes.

Polynomials over F_2 in idempotent variables Xbar_1..Xbar_2g, modulo the
rewriting rules (x+y)bar = xbar + ybar + x.y and xbar^2 = xbar.  Monomials
are subsets of {1..2g} of size <= 3, ordered by degree then
lexicographically, the empty monomial (the constant 1) first.  The
symplectic group acts by substitution, preserving the degree filtration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .fflinalg import FFMatrix
from .groups import Representation, SymplecticSpace, burkhardt_generators
from .sato import class_support, intersection
from .weights import Weight, sp_index_weight
from .functors import LabeledModule


def b3_labels(g: int) -> list[tuple[int, ...]]:
    """Monomials: () then (i), (i,j), (i,j,k), 1-based, degree-then-lex."""
    idx = range(1, 2 * g + 1)
    out: list[tuple[int, ...]] = [()]
    out += [(i,) for i in idx]
    out += list(combinations(idx, 2))
    out += list(combinations(idx, 3))
    return out


@dataclass
class B3Element:
    """Element of the algebra as a coefficient vector over the monomials."""

    g: int
    coeffs: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.coeffs, dtype=np.int64) % 2
        if v.shape != (len(b3_labels(self.g)),):
            raise ValueError("coefficient vector has the wrong length")
        self.coeffs = v

    def __add__(self, other: "B3Element") -> "B3Element":
        return B3Element(self.g, self.coeffs ^ other.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, B3Element)
            and self.g == other.g
            and bool((self.coeffs == other.coeffs).all())
        )

    def monomials(self) -> list[tuple[int, ...]]:
        labels = b3_labels(self.g)
        return [labels[i] for i in np.nonzero(self.coeffs)[0]]


def _expand_class(g: int, c: int) -> dict[tuple[int, ...], int]:
    """cbar as a polynomial: sum of Xbar_i plus the block-count constant."""
    support = class_support(c)
    terms: dict[tuple[int, ...], int] = {}
    const = 0
    for a, b in combinations(support, 2):
        const ^= intersection(g, 1 << (a - 1), 1 << (b - 1))
    if const:
        terms[()] = 1
    for i in support:
        terms[(i,)] = terms.get((i,), 0) ^ 1
    return {k: v for k, v in terms.items() if v}


def _poly_mul(a: dict, b: dict) -> dict:
    """Multiply in the idempotent monomial algebra (union of index sets)."""
    out: dict[tuple[int, ...], int] = {}
    for s, cs in a.items():
        for t, ct in b.items():
            key = tuple(sorted(set(s) | set(t)))
            out[key] = out.get(key, 0) ^ (cs & ct)
    return {k: v for k, v in out.items() if v}


def b3_reduce(g: int, classes) -> B3Element:
    """Normal form of a formal product of class generators abar bbar ...

    Expands each class via the linearization rule, multiplies with the
    idempotent reduction, and returns the graded coefficient vector.  A
    residual monomial of degree > 3 raises (cannot occur for products of
    at most three classes).
    """
    labels = b3_labels(g)
    index = {lab: i for i, lab in enumerate(labels)}
    poly: dict[tuple[int, ...], int] = {(): 1}
    for c in classes:
        poly = _poly_mul(poly, _expand_class(g, c))
    v = np.zeros(len(labels), dtype=np.int64)
    for mono, coeff in poly.items():
        if len(mono) > 3:
            raise ValueError(f"monomial of degree {len(mono)} survives reduction")
        if coeff:
            v[index[mono]] = 1
    return B3Element(g, v)


def b3_representation(g: int) -> LabeledModule:
    """The substitution action of Sp_2g(F_2) on the degree-<=3 algebra.

    The degree filtration (constants, degree <= 1, <= 2, <= 3) is a chain
    of coordinate-prefix submodules with quotients of dimensions
    1, 2g, C(2g,2), C(2g,3).
    """
    if g < 2:
        raise ValueError("need genus >= 2")
    space = SymplecticSpace(g)
    base = burkhardt_generators(space)
    labels = b3_labels(g)
    n = len(labels)
    gens: dict[str, FFMatrix] = {}
    for name, mat in base.gens.items():
        images = [
            sum(1 << j for j in np.nonzero(mat.array[i])[0]) for i in range(2 * g)
        ]
        rows = np.zeros((n, n), dtype=np.int64)
        for t, lab in enumerate(labels):
            rows[t] = b3_reduce(g, [images[i - 1] for i in lab]).coeffs
        gens[name] = FFMatrix(2, rows)
    ws = [Weight.zero("C", g)]
    for lab in labels[1:]:
        w = Weight.zero("C", g)
        for i in lab:
            w = w + sp_index_weight(g, i)
        ws.append(w)
    return LabeledModule(Representation(2, n, gens), tuple(labels), tuple(ws))
