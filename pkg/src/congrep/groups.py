"""Matrix generators for Sp_2g(F_2) and SL_n(F_p).

The symplectic basis is ordered (a_1, b_1, a_2, b_2, ...) = (X_1, ..., X_2g)
with X_{2i-1}.X_{2j} = delta_ij and all other pairings zero; index pairs
{2i-1, 2i} are the blocks.  Matrices act on row vectors on the right, so
row i of a generator is the image of basis vector X_{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fflinalg import FFMatrix


@dataclass(frozen=True)
class SymplecticSpace:
    """Genus-g symplectic space over F_p with the standard block basis."""

    g: int
    p: int = 2

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("genus must be >= 1")

    @property
    def dim(self) -> int:
        return 2 * self.g

    def basis_labels(self) -> tuple[str, ...]:
        return tuple(f"X{i}" for i in range(1, self.dim + 1))

    def gram(self) -> FFMatrix:
        """Gram matrix of the intersection form (alternating, non-singular)."""
        n = self.dim
        a = np.zeros((n, n), dtype=np.int64)
        for i in range(self.g):
            a[2 * i, 2 * i + 1] = 1
            a[2 * i + 1, 2 * i] = -1  # = 1 over F_2
        return FFMatrix(self.p, a)

    def pairing(self, u, v) -> int:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return int((u @ self.gram().array @ v) % self.p)


@dataclass
class Representation:
    """A matrix representation: named invertible generators over F_p."""

    p: int
    dim: int
    gens: dict[str, FFMatrix] = field(default_factory=dict)

    def __post_init__(self):
        names = list(self.gens)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        for name, m in self.gens.items():
            if m.p != self.p or m.nrows != self.dim or m.ncols != self.dim:
                raise ValueError(f"generator {name} has the wrong shape or modulus")
            if m.rank() != self.dim:
                raise ValueError(f"generator {name} is not invertible")

    @property
    def gen_names(self) -> tuple[str, ...]:
        return tuple(self.gens)

    def matrices(self) -> list[FFMatrix]:
        return list(self.gens.values())

    def act(self, v, name: str) -> np.ndarray:
        return self.gens[name].apply(v)

    def word(self, names) -> FFMatrix:
        """Product of generators, applied left to right to row vectors."""
        m = FFMatrix.identity(self.p, self.dim)
        for name in names:
            m = m * self.gens[name]
        return m

    def transposed(self) -> "Representation":
        """Same generators transposed (annihilator-dual module)."""
        return Representation(self.p, self.dim, {n: m.transpose() for n, m in self.gens.items()})

    def dual(self) -> "Representation":
        """Contragredient module: inverse-transpose generators."""
        return Representation(
            self.p, self.dim, {n: m.inverse().transpose() for n, m in self.gens.items()}
        )


def trivial_representation(p: int, gen_names) -> Representation:
    """1-dimensional trivial module over the given generator set."""
    one = FFMatrix.identity(p, 1)
    return Representation(p, 1, {name: one for name in gen_names})


def _from_images(p: int, images: list[np.ndarray]) -> FFMatrix:
    return FFMatrix(p, np.array(images, dtype=np.int64))


def burkhardt_generators(space: SymplecticSpace) -> Representation:
    """Burkhardt's generating set of Sp_2g(F_2) on the tautological module.

    Generators: the transvection a1 -> a1+b1, the factor rotation
    a1 <-> b1, the factor mix a1 -> a1+b2 / a2 -> a2-b1, and the g-1
    adjacent factor swaps.  Every generator preserves the Gram matrix.
    """
    g, p, n = space.g, space.p, space.dim
    if g < 2:
        raise ValueError("Burkhardt generators need genus >= 2")
    eye = np.eye(n, dtype=np.int64)

    def unit(i):
        return eye[i].copy()

    gens: dict[str, FFMatrix] = {}

    rows = [unit(i) for i in range(n)]
    rows[0] = (unit(0) + unit(1)) % p
    gens["transvection"] = _from_images(p, rows)

    rows = [unit(i) for i in range(n)]
    rows[0], rows[1] = unit(1), unit(0)
    gens["rotation"] = _from_images(p, rows)

    rows = [unit(i) for i in range(n)]
    rows[0] = (unit(0) + unit(3)) % p
    rows[2] = (unit(2) - unit(1)) % p
    gens["mix"] = _from_images(p, rows)

    for i in range(1, g):
        rows = [unit(j) for j in range(n)]
        a, b = 2 * (i - 1), 2 * i
        rows[a], rows[a + 1], rows[b], rows[b + 1] = unit(b), unit(b + 1), unit(a), unit(a + 1)
        gens[f"swap{i}"] = _from_images(p, rows)

    rep = Representation(p, n, gens)
    gram = space.gram()
    for name, m in gens.items():
        if m * gram * m.transpose() != gram:
            raise AssertionError(f"generator {name} is not symplectic")
    return rep


def transvection(space: SymplecticSpace, u) -> FFMatrix:
    """Matrix of the symplectic transvection w -> w + (w.u)u."""
    u = np.asarray(u, dtype=np.int64) % space.p
    if not u.any():
        raise ValueError("transvection direction must be nonzero")
    n = space.dim
    gram = space.gram().array
    rows = []
    eye = np.eye(n, dtype=np.int64)
    for i in range(n):
        c = int((eye[i] @ gram @ u) % space.p)
        rows.append((eye[i] + c * u) % space.p)
    return _from_images(space.p, rows)


def sl_generators(n: int, p: int) -> Representation:
    """All n(n-1) elementary transvections of SL_n(F_p) on F_p^n.

    The generator named ``E{i}{j}`` sends e_j to e_j + e_i and fixes the
    other basis vectors (1-based indices).
    """
    if n < 2:
        raise ValueError("SL_n needs n >= 2")
    eye = np.eye(n, dtype=np.int64)
    gens: dict[str, FFMatrix] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            rows = [eye[k].copy() for k in range(n)]
            rows[j - 1] = (eye[j - 1] + eye[i - 1]) % p
            gens[f"E{i}{j}"] = _from_images(p, rows)
    return Representation(p, n, gens)


def orbit(rep: Representation, v) -> set[tuple[int, ...]]:
    """Orbit of a vector under the generated group (BFS closure)."""
    start = tuple(int(x) % rep.p for x in np.asarray(v, dtype=np.int64))
    seen = {start}
    queue = [start]
    while queue:
        w = queue.pop()
        for name in rep.gen_names:
            img = tuple(int(x) for x in rep.act(np.array(w), name))
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return seen
