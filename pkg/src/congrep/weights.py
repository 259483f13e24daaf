"""Symbolic weight bookkeeping for types C_g (Sp_2g) and A_{n-1} (SL_n).

Weights are integer coordinate vectors in the L_1..L_g basis (type C) or
Z^n modulo the all-ones vector, stored with last coordinate 0 (type A).
The dominance order solves mu - lambda against the simple roots and
requires nonnegative integer coefficients.  Weights are read off basis
labels symbolically; the torus over F_2 itself is trivial, so nothing is
computed from matrices.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Weight:
    """Torus weight; family "C" (length g) or "A" (length n, last coord 0)."""

    family: str
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.family not in ("C", "A"):
            raise ValueError("weight family must be 'C' or 'A'")
        cs = tuple(int(c) for c in self.coords)
        if self.family == "A" and cs:
            cs = tuple(c - cs[-1] for c in cs)
        object.__setattr__(self, "coords", cs)

    def __add__(self, other: "Weight") -> "Weight":
        if self.family != other.family or len(self.coords) != len(other.coords):
            raise ValueError("weights live in different lattices")
        return Weight(self.family, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(self.family, tuple(-c for c in self.coords))

    @staticmethod
    def zero(family: str, rank_dim: int) -> "Weight":
        return Weight(family, (0,) * rank_dim)

    @staticmethod
    def fundamental(family: str, rank_dim: int, i: int) -> "Weight":
        """omega_i = L_1 + ... + L_i."""
        return Weight(family, tuple(1 if j < i else 0 for j in range(rank_dim)))


def leq(lam: Weight, mu: Weight) -> bool:
    """lam <= mu iff mu - lam is a nonnegative integer sum of positive roots."""
    if lam.family != mu.family or len(lam.coords) != len(mu.coords):
        raise ValueError("weights live in different lattices")
    d = [m - l for l, m in zip(lam.coords, mu.coords)]
    n = len(d)
    if lam.family == "C":
        # simple roots L_i - L_{i+1} (i < g) and 2L_g
        s = 0
        for i in range(n - 1):
            s += d[i]
            if s < 0:
                return False
        s += d[n - 1]
        return s >= 0 and s % 2 == 0
    # type A: adjust by a multiple of (1,...,1), then partial sums
    total = sum(d)
    if total % n != 0:
        return False
    t = -total // n
    s = 0
    for i in range(n - 1):
        s += d[i] + t
        if s < 0:
            return False
    return True


@dataclass(frozen=True)
class DominantLabel:
    """Nonnegative coefficients over the fundamental weights omega_i."""

    family: str
    coeffs: tuple[int, ...]

    def p_restricted(self, p: int) -> bool:
        return all(c < p for c in self.coeffs)

    def render(self) -> str:
        """Exact label format: L(0) or L(w<i>+w<j>+...)."""
        parts = []
        for i, c in enumerate(self.coeffs, start=1):
            parts.extend([f"w{i}"] * c)
        return "L(" + ("+".join(parts) if parts else "0") + ")"


def dominant_label(w: Weight) -> DominantLabel:
    """Express a dominant weight in fundamental-weight coordinates."""
    cs = w.coords
    n = len(cs)
    if w.family == "C":
        coeffs = tuple(cs[i] - cs[i + 1] for i in range(n - 1)) + (cs[-1],)
    else:
        coeffs = tuple(cs[i] - cs[i + 1] for i in range(n - 1))
    if any(c < 0 for c in coeffs):
        raise ValueError(f"weight {cs} is not dominant")
    return DominantLabel(w.family, coeffs)


def highest_of(ws) -> DominantLabel:
    """Unique maximum of a weight multiset under the root order.

    Raises if the occurring weights have no unique maximum.
    """
    ws = list(ws)
    if not ws:
        raise ValueError("empty weight multiset")
    top = ws[0]
    for w in ws[1:]:
        if w != top and leq(top, w):
            top = w
    for w in ws:
        if not leq(w, top):
            raise ValueError(f"incomparable maxima: {w.coords} vs {top.coords}")
    return dominant_label(top)


def basis_weight(module, label) -> Weight:
    """Weight of a labeled basis vector of a module built by functors."""
    if module.weights is None:
        raise ValueError("module carries no weight data")
    try:
        idx = module.label_index(label)
    except KeyError:
        raise ValueError(f"unknown basis label {label!r}")
    return module.weights[idx]


def _row_weight(module, row_support) -> Weight:
    ws = {module.weights[j] for j in row_support}
    if len(ws) != 1:
        raise ValueError("basis row mixes several weights")
    return next(iter(ws))


def submodule_weights(module, basis_rows) -> list[Weight]:
    """Weights of rref basis rows; each row must be weight-homogeneous."""
    if module.weights is None:
        raise ValueError("module carries no weight data")
    out = []
    for row in basis_rows:
        support = [j for j, c in enumerate(row) if c % module.rep.p]
        if not support:
            raise ValueError("zero row in submodule basis")
        out.append(_row_weight(module, support))
    return out


def highest_weight(module, subspace=None) -> DominantLabel:
    """Highest weight of a module, or of an invariant subspace of it.

    ``subspace`` is a Submodule (rref row basis) or None for the whole
    module.  Rows must have weight-homogeneous support.
    """
    if subspace is None:
        if module.weights is None:
            raise ValueError("module carries no weight data")
        return highest_of(module.weights)
    return highest_of(submodule_weights(module, subspace.basis.array[: subspace.dim]))


def sp_index_weight(g: int, i: int) -> Weight:
    """Type C weight of basis vector X_i: a_k -> +L_k, b_k -> -L_k."""
    k = (i + 1) // 2
    sign = 1 if i % 2 == 1 else -1
    return Weight("C", tuple(sign if j == k else 0 for j in range(1, g + 1)))


def sl_index_weight(n: int, i: int) -> Weight:
    """Type A weight of basis vector e_i: L_i."""
    return Weight("A", tuple(1 if j == i else 0 for j in range(1, n + 1)))
