"""Derived modules and equivariant maps between them.

Builds labeled modules (tautological, exterior powers, duals, tensors,
traceless matrices) and the standard equivariant maps: the contractions
wedge^k -> wedge^{k-2}, the invariant vector omega and the multiplication
map v -> omega ^ v, and on the SL_n side the evaluation, matrix-unit,
contraction and comultiplication maps between V* (x) V, V* (x) wedge^2 V
and V.  Signs are carried for general p; over F_2 they vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .fflinalg import FFMatrix, row_space
from .groups import Representation, SymplecticSpace, burkhardt_generators, sl_generators
from .weights import Weight, sl_index_weight, sp_index_weight


class NotInvariantError(ValueError):
    """A claimed submodule is not closed under a generator."""

    def __init__(self, gen_name, row_index):
        self.gen_name = gen_name
        self.row_index = row_index
        super().__init__(
            f"row {row_index} leaves the subspace under generator {gen_name!r}"
        )


@dataclass
class LabeledModule:
    """A representation together with combinatorial basis labels.

    Labels are unique, canonically ordered, and (when weights are present)
    carry a symbolic torus weight per basis vector.
    """

    rep: Representation
    labels: tuple
    weights: tuple[Weight, ...] | None = None
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.labels) != self.rep.dim:
            raise ValueError("label count must equal the dimension")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("labels must be unique")
        if self.weights is not None and len(self.weights) != self.rep.dim:
            raise ValueError("weight count must equal the dimension")

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def p(self) -> int:
        return self.rep.p

    def label_index(self, label) -> int:
        return self._index[label]

    def unit(self, label) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.label_index(label)] = 1
        return v


@dataclass
class Submodule:
    """Invariant subspace given by an rref row basis inside a parent module."""

    parent: Representation
    basis: FFMatrix  # exactly dim rows, in rref
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def contains(self, v) -> bool:
        return not _reduce_mod_rows(np.asarray(v), self.basis, self.pivots).any()

    def coords(self, v) -> np.ndarray:
        """Coordinates of v in the rref basis (v must lie in the subspace)."""
        v = np.asarray(v, dtype=np.int64) % self.parent.p
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return v[list(self.pivots)] % self.parent.p

    def same_space(self, other: "Submodule") -> bool:
        return self.basis == other.basis


def _reduce_mod_rows(v, basis: FFMatrix, pivots) -> np.ndarray:
    p = basis.p
    v = np.asarray(v, dtype=np.int64) % p
    a = basis.array
    for i, c in enumerate(pivots):
        if v[c]:
            v = (v - v[c] * a[i]) % p
    return v


def submodule(parent: Representation, rows, check: bool = True) -> Submodule:
    """Row-span of ``rows`` as a Submodule; verifies invariance by default."""
    mat = rows if isinstance(rows, FFMatrix) else FFMatrix(parent.p, np.atleast_2d(np.asarray(rows, dtype=np.int64)))
    basis = row_space(mat)
    pivots = tuple(int(np.nonzero(r)[0][0]) for r in basis.array)
    sub = Submodule(parent, basis, pivots)
    if check:
        for name, g in parent.gens.items():
            img = basis * g
            for i in range(img.nrows):
                if _reduce_mod_rows(img.array[i], basis, pivots).any():
                    raise NotInvariantError(name, i)
    return sub


def sub_quotient(m, s: Submodule) -> tuple[Representation, Representation]:
    """Restrict and quotient a representation along an invariant subspace.

    Returns (sub, quotient): the action on the rref basis of ``s`` in its
    own coordinates, and the action on the non-pivot coordinates modulo
    ``s``.  Raises NotInvariantError if ``s`` is not invariant.
    """
    rep = m.rep if isinstance(m, LabeledModule) else m
    p = rep.p
    basis, pivots = s.basis, s.pivots
    r = basis.nrows
    nonpiv = [c for c in range(rep.dim) if c not in set(pivots)]
    sub_gens: dict[str, FFMatrix] = {}
    quo_gens: dict[str, FFMatrix] = {}
    for name, g in rep.gens.items():
        img = basis * g
        coeff = img.array[:, list(pivots)] % p if r else np.zeros((0, 0), np.int64)
        back = coeff @ basis.array % p if r else np.zeros((0, rep.dim), np.int64)
        if ((img.array - back) % p).any():
            bad = int(np.nonzero(((img.array - back) % p).any(axis=1))[0][0])
            raise NotInvariantError(name, bad)
        sub_gens[name] = FFMatrix(p, coeff.reshape(r, r))
        rows = []
        for c in nonpiv:
            red = _reduce_mod_rows(g.array[c], basis, pivots)
            rows.append(red[nonpiv])
        quo_gens[name] = FFMatrix(p, np.array(rows, dtype=np.int64).reshape(len(nonpiv), len(nonpiv)))
    return Representation(p, r, sub_gens), Representation(p, len(nonpiv), quo_gens)


# -- tautological modules -----------------------------------------------------


def sp_tautological(space: SymplecticSpace) -> LabeledModule:
    rep = burkhardt_generators(space)
    labels = tuple(range(1, space.dim + 1))
    ws = tuple(sp_index_weight(space.g, i) for i in labels)
    return LabeledModule(rep, labels, ws)


def sl_tautological(n: int, p: int) -> LabeledModule:
    rep = sl_generators(n, p)
    labels = tuple(range(1, n + 1))
    ws = tuple(sl_index_weight(n, i) for i in labels)
    return LabeledModule(rep, labels, ws)


# -- exterior powers ----------------------------------------------------------


def wedge_labels(dim: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of {1..dim} in lexicographic order."""
    return list(combinations(range(1, dim + 1), k))


def _wedge_expand(row_supports, p: int, index: dict) -> np.ndarray:
    """Expand v_1 ^ ... ^ v_k where v_i is a list of (col, coeff)."""
    # terms: sorted tuple of 1-based indices -> coefficient
    terms: dict[tuple[int, ...], int] = {(): 1}
    for vec in row_supports:
        new: dict[tuple[int, ...], int] = {}
        for mono, c in terms.items():
            for col, a in vec:
                if col in mono:
                    continue
                pos = sum(1 for m in mono if m > col)
                sign = -1 if pos % 2 else 1
                key = tuple(sorted(mono + (col,)))
                val = (new.get(key, 0) + sign * c * a) % p
                new[key] = val
        terms = {k2: v for k2, v in new.items() if v}
    out = np.zeros(len(index), dtype=np.int64)
    for mono, c in terms.items():
        out[index[mono]] = c
    return out


def exterior_power(base: LabeledModule, k: int) -> LabeledModule:
    """k-th exterior power with the induced action on wedge monomials."""
    d, p = base.dim, base.p
    if k < 0 or k > d:
        raise ValueError("exterior power degree out of range")
    if k > 5:
        raise ValueError("exterior powers above degree 5 are not supported")
    labels = wedge_labels(d, k)
    index = {lab: i for i, lab in enumerate(labels)}
    gens: dict[str, FFMatrix] = {}
    for name, g in base.rep.gens.items():
        supports = []
        for i in range(d):
            row = g.array[i]
            supports.append([(j + 1, int(row[j])) for j in np.nonzero(row)[0]])
        rows = [_wedge_expand([supports[i - 1] for i in lab], p, index) for lab in labels]
        arr = np.array(rows, dtype=np.int64) if rows else np.zeros((0, 0), np.int64)
        gens[name] = FFMatrix(p, arr.reshape(len(labels), len(labels)))
    ws = None
    if base.weights is not None:
        zero = Weight.zero(base.weights[0].family, len(base.weights[0].coords)) if base.weights else None
        ws = []
        for lab in labels:
            w = zero
            for i in lab:
                w = w + base.weights[i - 1]
            ws.append(w)
        ws = tuple(ws)
    return LabeledModule(Representation(p, len(labels), gens), tuple(labels), ws)


# -- contractions, omega, epsilon --------------------------------------------


def contraction_matrix(space: SymplecticSpace, k: int) -> FFMatrix:
    """Matrix of the contraction wedge^k -> wedge^{k-2} in the wedge bases.

    On X_J the map pairs two slots by the intersection form with the sign
    (-1)^{a+b-1} for slot positions a < b; over F_2 this is the block rule:
    the sum over blocks contained in J of X_{J minus block}.
    """
    if k < 2:
        raise ValueError("contraction needs k >= 2")
    d, p = space.dim, space.p
    src = wedge_labels(d, k)
    dst = wedge_labels(d, k - 2)
    idx = {lab: i for i, lab in enumerate(dst)}
    gram = space.gram().array
    rows = np.zeros((len(src), len(dst)), dtype=np.int64)
    for r, lab in enumerate(src):
        for a in range(k):
            for b in range(a + 1, k):
                pair = int(gram[lab[a] - 1, lab[b] - 1]) % p
                if not pair:
                    continue
                rest = tuple(x for t, x in enumerate(lab) if t not in (a, b))
                sign = -1 if (a + b - 1) % 2 else 1
                rows[r, idx[rest]] = (rows[r, idx[rest]] + sign * pair) % p
    return FFMatrix(p, rows)


def omega_vector(space: SymplecticSpace) -> np.ndarray:
    """Coordinates of omega = sum X_{2i-1} ^ X_{2i} in the wedge^2 basis."""
    labels = wedge_labels(space.dim, 2)
    idx = {lab: i for i, lab in enumerate(labels)}
    v = np.zeros(len(labels), dtype=np.int64)
    for i in range(1, space.g + 1):
        v[idx[(2 * i - 1, 2 * i)]] = 1
    return v


def epsilon_matrix(space: SymplecticSpace) -> FFMatrix:
    """Matrix of v -> omega ^ v from the tautological module to wedge^3."""
    d, p = space.dim, space.p
    dst = wedge_labels(d, 3)
    idx = {lab: i for i, lab in enumerate(dst)}
    rows = np.zeros((d, len(dst)), dtype=np.int64)
    for i in range(1, d + 1):
        for j in range(1, space.g + 1):
            a, b = 2 * j - 1, 2 * j
            if i in (a, b):
                continue
            lab = tuple(sorted((a, b, i)))
            # X_a ^ X_b ^ X_i sorts with an even permutation in every case
            rows[i - 1, idx[lab]] = (rows[i - 1, idx[lab]] + 1) % p
    return FFMatrix(p, rows)


# -- duals and tensors ---------------------------------------------------------


def dual(m: LabeledModule) -> LabeledModule:
    """Contragredient module; labels are tagged, weights negated."""
    labels = tuple(("*", lab) for lab in m.labels)
    ws = tuple(-w for w in m.weights) if m.weights is not None else None
    return LabeledModule(m.rep.dual(), labels, ws)


def tensor(a: LabeledModule, b: LabeledModule) -> LabeledModule:
    """Tensor product with Kronecker-product generators and pair labels."""
    if a.p != b.p:
        raise ValueError("tensor factors must share the prime")
    if set(a.rep.gen_names) != set(b.rep.gen_names):
        raise ValueError("tensor factors must share generator names")
    gens = {name: a.rep.gens[name].kron(b.rep.gens[name]) for name in a.rep.gen_names}
    labels = tuple((la, lb) for la in a.labels for lb in b.labels)
    ws = None
    if a.weights is not None and b.weights is not None:
        ws = tuple(wa + wb for wa in a.weights for wb in b.weights)
    return LabeledModule(Representation(a.p, a.dim * b.dim, gens), labels, ws)


# -- SL_n equivariant maps ------------------------------------------------------


def vstar_tensor_v(n: int, p: int) -> LabeledModule:
    """V* (x) V with the conjugation-compatible action."""
    taut = sl_tautological(n, p)
    return tensor(dual(taut), taut)


def vstar_tensor_wedge2(n: int, p: int) -> LabeledModule:
    """V* (x) wedge^2 V."""
    taut = sl_tautological(n, p)
    return tensor(dual(taut), exterior_power(taut, 2))


def xi_matrix(n: int, p: int) -> FFMatrix:
    """Evaluation map V* (x) V -> F, e_i* (x) e_j -> delta_ij."""
    if n < 2:
        raise ValueError("need n >= 2")
    rows = np.zeros((n * n, 1), dtype=np.int64)
    for i in range(n):
        rows[i * n + i, 0] = 1
    return FFMatrix(p, rows)


def psi_check(n: int, p: int) -> bool:
    """Verify the matrix-unit identification of V* (x) V with End(V).

    Psi(f (x) v) is the operator w -> f(w) v, i.e. the matrix f^T v in the
    row-vector convention; checks equivariance against conjugation
    A -> G^{-1} A G on all elementary generators and all basis tensors,
    and that Psi(sum e_i* (x) e_i) is the identity matrix.
    """
    mod = vstar_tensor_v(n, p)
    taut = sl_generators(n, p)

    def psi(vec: np.ndarray) -> np.ndarray:
        return vec.reshape(n, n) % p  # entry (i, j) = coeff of e_i* (x) e_j

    trace_tensor = np.zeros(n * n, dtype=np.int64)
    for i in range(n):
        trace_tensor[i * n + i] = 1
    if (psi(trace_tensor) != np.eye(n, dtype=np.int64)).any():
        return False
    for name in taut.gen_names:
        g = taut.gens[name]
        ginv = g.inverse()
        big = mod.rep.gens[name]
        for t in range(n * n):
            vec = np.zeros(n * n, dtype=np.int64)
            vec[t] = 1
            lhs = psi(big.apply(vec))
            rhs = (ginv.array @ psi(vec) @ g.array) % p
            if (lhs != rhs).any():
                return False
    return True


def kappa_matrix(n: int, p: int) -> FFMatrix:
    """Contraction V* (x) wedge^2 V -> V, f (x) v^w -> f(v)w - f(w)v."""
    if n < 3:
        raise ValueError("need n >= 3")
    pairs = wedge_labels(n, 2)
    rows = np.zeros((n * len(pairs), n), dtype=np.int64)
    for i in range(1, n + 1):
        for t, (j, k) in enumerate(pairs):
            r = (i - 1) * len(pairs) + t
            if i == j:
                rows[r, k - 1] = (rows[r, k - 1] + 1) % p
            if i == k:
                rows[r, j - 1] = (rows[r, j - 1] - 1) % p
    return FFMatrix(p, rows)


def tau_matrix(n: int, p: int) -> FFMatrix:
    """Comultiplication V -> V* (x) wedge^2 V, e_k -> sum_i e_i* (x) e_k ^ e_i."""
    if n < 3:
        raise ValueError("need n >= 3")
    pairs = wedge_labels(n, 2)
    idx = {lab: t for t, lab in enumerate(pairs)}
    rows = np.zeros((n, n * len(pairs)), dtype=np.int64)
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if i == k:
                continue
            col = (i - 1) * len(pairs)
            if k < i:
                rows[k - 1, col + idx[(k, i)]] = 1 % p
            else:
                rows[k - 1, col + idx[(i, k)]] = (-1) % p
    return FFMatrix(p, rows)


def traceless_module(n: int, p: int) -> LabeledModule:
    """Traceless n x n matrices under conjugation by SL_n(F_p).

    Basis: matrix units E(i,j) for i != j, then D(i) = E(i,i) - E(n,n)
    for i < n.  The action is A -> G^{-1} A G.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    labels: list = [("E", i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    labels += [("D", i) for i in range(1, n)]
    dim = len(labels)
    basis_mats = []
    for lab in labels:
        m = np.zeros((n, n), dtype=np.int64)
        if lab[0] == "E":
            m[lab[1] - 1, lab[2] - 1] = 1
        else:
            m[lab[1] - 1, lab[1] - 1] = 1
            m[n - 1, n - 1] = -1 % p
        basis_mats.append(m % p)

    def coords(mat: np.ndarray) -> np.ndarray:
        # traceless matrix -> coordinates in the basis above
        v = np.zeros(dim, dtype=np.int64)
        t = 0
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    v[t] = mat[i - 1, j - 1] % p
                    t += 1
        for i in range(1, n):
            v[t] = mat[i - 1, i - 1] % p
            t += 1
        return v

    taut = sl_generators(n, p)
    gens: dict[str, FFMatrix] = {}
    for name, g in taut.gens.items():
        ginv = g.inverse()
        rows = [coords((ginv.array @ bm @ g.array) % p) for bm in basis_mats]
        gens[name] = FFMatrix(p, np.array(rows, dtype=np.int64))
    ws: list[Weight] = []
    for lab in labels:
        if lab[0] == "E":
            ws.append(sl_index_weight(n, lab[2]) + (-sl_index_weight(n, lab[1])))
        else:
            ws.append(Weight.zero("A", n))
    return LabeledModule(Representation(p, dim, gens), tuple(labels), tuple(ws))
