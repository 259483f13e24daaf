"""The Z/8-valued function algebra on H_1(Sigma_g; F_2).

Homology classes are bitmasks over the symplectic basis X_1..X_2g
(bit i-1 = X_i), functions H_1 -> Z/8 are dense arrays of length 4^g
indexed by the little-endian bitmask.  The algebra is generated by the
functions Cbar = (-1)^{q(C)} i_C attached to a symplectic quadratic form
q; twist-square words evaluate through the additive homomorphism beta,
and the monomials Xbar_i, 2 Xbar_i Xbar_j, 4 Xbar_i Xbar_j Xbar_k give
the Z/8-module structure Z/8^{2g} + (2Z/8)^C(2g,2) + (4Z/8)^C(2g,3).
Reduction mod 2 yields an Sp_2g(F_2) representation whose generator
matrices are assembled combinatorially.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .fflinalg import FFMatrix, Z8Span
from .functors import LabeledModule, Submodule, submodule
from .groups import Representation, SymplecticSpace, burkhardt_generators
from .weights import Weight, sp_index_weight

# -- homology classes as bitmasks ---------------------------------------------


def _even_mask(g: int) -> int:
    return sum(1 << (2 * i) for i in range(g))


def intersection(g: int, u: int, v: int) -> int:
    """Intersection pairing of two classes (bitmasks) over F_2."""
    even = _even_mask(g)
    swapped = ((u & even) << 1) | ((u & (even << 1)) >> 1)
    return bin(swapped & v).count("1") & 1


def class_support(c: int) -> tuple[int, ...]:
    """1-based indices of the basis vectors appearing in a class."""
    out = []
    i = 1
    while c:
        if c & 1:
            out.append(i)
        c >>= 1
        i += 1
    return tuple(out)


def class_of(indices) -> int:
    c = 0
    for i in indices:
        c |= 1 << (i - 1)
    return c


@dataclass(frozen=True)
class QuadraticForm:
    """Symplectic quadratic form: q(x+y) = q(x) + q(y) + x.y."""

    g: int
    basis_values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) & 1 for v in self.basis_values)
        if len(vals) != 2 * self.g:
            raise ValueError("need one basis value per basis vector")
        object.__setattr__(self, "basis_values", vals)

    def value(self, c: int) -> int:
        """q of a class, extended by q(x+y) = q(x)+q(y)+x.y."""
        acc = 0
        for i in class_support(c):
            acc ^= self.basis_values[i - 1]
        blocks = c & (c >> 1) & _even_mask(self.g)
        acc ^= bin(blocks).count("1") & 1
        return acc


def default_form(g: int) -> QuadraticForm:
    """The form vanishing on the basis (Arf invariant 0)."""
    return QuadraticForm(g, (0,) * (2 * g))


# -- Z/8-valued functions ------------------------------------------------------


@dataclass
class Z8Function:
    """Function H_1(Sigma_g) -> Z/8 as a dense array of length 4^g."""

    g: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64) % 8
        if v.shape != (4**self.g,):
            raise ValueError("value array must have length 4^g")
        self.values = v

    def __add__(self, other: "Z8Function") -> "Z8Function":
        return Z8Function(self.g, self.values + other.values)

    def __mul__(self, other: "Z8Function") -> "Z8Function":
        return Z8Function(self.g, self.values * other.values)

    def scale(self, c: int) -> "Z8Function":
        return Z8Function(self.g, self.values * (c % 8))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Z8Function)
            and self.g == other.g
            and bool((self.values == other.values).all())
        )

    def is_zero(self) -> bool:
        return not self.values.any()

    def __call__(self, c: int) -> int:
        return int(self.values[c])

    def dump_line(self, label: str) -> str:
        return f"{label}: " + "".join(format(int(v), "x") for v in self.values)


_PARITY8 = np.array([bin(i).count("1") & 1 for i in range(256)], dtype=np.int64)


def _pairing_column(g: int, z: int) -> np.ndarray:
    """Vector of z.y over all y in index order."""
    even = _even_mask(g)
    swapped = ((z & even) << 1) | ((z & (even << 1)) >> 1)
    y = np.arange(4**g, dtype=np.int64)
    masked = y & swapped
    par = np.zeros(4**g, dtype=np.int64)
    while True:
        par ^= _PARITY8[masked & 0xFF]
        masked >>= 8
        if not masked.any():
            break
    return par


def i_function(g: int, z: int) -> Z8Function:
    """The indicator i_z(y) = z.y mod 2, valued in Z/8."""
    if z == 0:
        raise ValueError("i_z needs a nonzero class")
    return Z8Function(g, _pairing_column(g, z))


def cbar(q: QuadraticForm, c: int) -> Z8Function:
    """Cbar = (-1)^{q(c)} i_c, values in {0, 1, 7}."""
    if c == 0:
        raise ValueError("Cbar needs a nonzero class")
    f = i_function(q.g, c)
    if q.value(c):
        return f.scale(7)
    return f


@dataclass(frozen=True)
class TwistWord:
    """Formal product of even twist powers: (class, exponent/2) entries."""

    g: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for c, _half in self.entries:
            if c == 0:
                raise ValueError("twist classes must be nonzero")


def beta_eval(q: QuadraticForm, w: TwistWord) -> Z8Function:
    """Image of a twist-square word: sum of (exponent/2) * Cbar(class)."""
    acc = Z8Function(w.g, np.zeros(4**w.g, dtype=np.int64))
    for c, half in w.entries:
        acc = acc + cbar(q, c).scale(half % 8)
    return acc


# -- standard twist words -------------------------------------------------------


def bounding_pair_word(g: int) -> TwistWord:
    """Genus-1 bounding pair as a product of twist squares.

    Chain classes C1 = X1, C2 = X2, C3 = X1+X3, boundary class D1 = X3;
    the word lists the seven squares with the inverse twist carried as
    exponent -1.
    """
    if g < 2:
        raise ValueError("need genus >= 2")
    c1, c2, c3 = class_of([1]), class_of([2]), class_of([1, 3])
    d1 = c1 ^ c3
    return TwistWord(
        g,
        (
            (c1, 1),
            (c1 ^ c2, 1),
            (c1 ^ c2 ^ c3, 1),
            (c2, 1),
            (c2 ^ c3, 1),
            (c3, 1),
            (d1, -1),
        ),
    )


def separating_twist_word(g: int) -> TwistWord:
    """Genus-1 separating twist (chain of length 2) as twist squares."""
    if g < 1:
        raise ValueError("need genus >= 1")
    c1, c2 = class_of([1]), class_of([2])
    return TwistWord(g, ((c1, 1), (c1 ^ c2, 1), (c1, 1), (c1 ^ c2, 1), (c2, 2)))


def boundary_twist_word(g: int) -> TwistWord:
    """The boundary twist as a product of squares via the length-2g chain.

    Chain classes C_1 = X1, C_{2i} = X_{2i}, C_{2i+1} = X_{2i-1}+X_{2i+1};
    the word collects the 4g conjugated squares of t_{c_1} plus the two
    boundary-curve squares of the odd subchain.
    """
    if g < 2:
        raise ValueError("need genus >= 2")
    k = 2 * g
    chain = [0] * (k + 1)
    chain[1] = class_of([1])
    for i in range(1, g + 1):
        chain[2 * i] = class_of([2 * i])
    for i in range(1, g):
        chain[2 * i + 1] = class_of([2 * i - 1, 2 * i + 1])
    orbit = []
    acc = 0
    for j in range(k):
        acc ^= chain[j + 1]
        orbit.append(acc)  # f^j(C_1) = C_1 + ... + C_{j+1}
    d1 = 0
    for i in range(1, g + 1):
        d1 ^= chain[2 * i]
    entries = [(orbit[j % k], 1) for j in range(2 * k)]
    entries.append((d1, 2))
    return TwistWord(g, tuple(entries))


# -- the monomial basis ---------------------------------------------------------


def monomial_labels(g: int) -> list[tuple[int, ...]]:
    """Degree-then-lex ordered labels (i,), (i,j), (i,j,k), 1-based."""
    idx = range(1, 2 * g + 1)
    out: list[tuple[int, ...]] = [(i,) for i in idx]
    out += list(combinations(idx, 2))
    out += list(combinations(idx, 3))
    return out


def monomial_basis(g: int, q: QuadraticForm | None = None):
    """The functions Xbar_i, 2 Xbar_i Xbar_j, 4 Xbar_i Xbar_j Xbar_k.

    Returns (labels, functions) in degree-then-lex order.
    """
    q = q if q is not None else default_form(g)
    labels = monomial_labels(g)
    singles = {i: cbar(q, class_of([i])) for i in range(1, 2 * g + 1)}
    funcs = []
    for lab in labels:
        f = singles[lab[0]]
        for i in lab[1:]:
            f = f * singles[i]
        funcs.append(f.scale(2 ** (len(lab) - 1)))
    return labels, funcs


def render_monomial(label: tuple[int, ...]) -> str:
    head = {1: "", 2: "2", 3: "4"}[len(label)]
    return head + "".join(f"X{i}" for i in label)


@lru_cache(maxsize=None)
def _monomial_solver(g: int, q: QuadraticForm) -> Z8Span:
    _labels, funcs = monomial_basis(g, q)
    return Z8Span([f.values for f in funcs])


def function_coords_mod2(g: int, fn: Z8Function, q: QuadraticForm | None = None) -> np.ndarray:
    """Coordinates of a function of the image algebra, reduced mod 2.

    The mod-2 reduction of the monomial coordinates is well defined: the
    coefficient of a degree-d monomial is unique mod 2^{4-d}.
    """
    q = q if q is not None else default_form(g)
    coeffs = _monomial_solver(g, q).solve(fn.values)
    if coeffs is None:
        raise ValueError("function does not lie in the image algebra")
    return np.array([c & 1 for c in coeffs], dtype=np.int64)


# -- the Z/8 structure check -----------------------------------------------------


def verify_sato_basis(g: int, q: QuadraticForm | None = None, monomials=None):
    """Check that the monomials satisfy only the forced Z/8 relations.

    Runs the three-stage evaluation scheme (basis vectors, pairs, triples)
    that pins each degree in turn, then extracts generators of the full
    relation module by Z/8 elimination and checks every generator is a
    forced annihilator (8 on degree 1, 4 on degree 2, 2 on degree 3).

    Returns (ok, (2g, C(2g,2), C(2g,3))).  ``monomials`` may override the
    candidate list as [(label, Z8Function)] pairs.
    """
    if g < 2:
        raise ValueError("need genus >= 2")
    q = q if q is not None else default_form(g)
    if monomials is None:
        labels, funcs = monomial_basis(g, q)
    else:
        labels = [lab for lab, _ in monomials]
        funcs = [fn for _, fn in monomials]
    counts = (2 * g, comb(2 * g, 2), comb(2 * g, 3))

    def partner(i: int) -> int:
        return i + 1 if i % 2 else i - 1

    basis_pts = [class_of([i]) for i in range(1, 2 * g + 1)]
    pair_pts = {frozenset(t): class_of(t) for t in combinations(range(1, 2 * g + 1), 2)}
    triple_pts = {frozenset(t): class_of(t) for t in combinations(range(1, 2 * g + 1), 3)}

    ok = True
    for lab, fn in zip(labels, funcs):
        vals = fn.values
        deg = len(lab)
        if deg == 1:
            target = partner(lab[0])
            for i, pt in enumerate(basis_pts, start=1):
                v = int(vals[pt])
                if i == target:
                    if v not in (1, 7):
                        ok = False
                elif v:
                    ok = False
        elif deg == 2:
            if ((vals % 2) != 0).any():
                ok = False  # all values must be even
            if any(vals[pt] for pt in basis_pts):
                ok = False
            hot = frozenset(partner(i) for i in lab)
            for key, pt in pair_pts.items():
                v = int(vals[pt])
                if key == hot:
                    if v not in (2, 6):
                        ok = False
                elif v:
                    ok = False
        else:
            if ((vals % 4) != 0).any():
                ok = False
            if any(vals[pt] for pt in basis_pts):
                ok = False
            if any(vals[pt] for pt in pair_pts.values()):
                ok = False
            hot = frozenset(partner(i) for i in lab)
            for key, pt in triple_pts.items():
                v = int(vals[pt])
                if key == hot:
                    if v != 4:
                        ok = False
                elif v:
                    ok = False

    # forced annihilators really are relations
    for lab, fn in zip(labels, funcs):
        order = {1: 8, 2: 4, 3: 2}[len(lab)]
        if fn.scale(order).values.any():
            ok = False

    # the relation module contains nothing beyond the forced annihilators
    span = Z8Span([fn.values for fn in funcs])
    for gen in span.relation_generators():
        for t, lab in enumerate(labels):
            c = gen[t]
            if len(lab) == 1 and c != 0:
                ok = False
            elif len(lab) == 2 and c % 4 != 0:
                ok = False
            elif len(lab) == 3 and c % 2 != 0:
                ok = False
    return ok, counts


# -- the mod-2 representation -----------------------------------------------------


def _expand_linear(support: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = [(i,) for i in support]
    out += list(combinations(support, 2))
    out += list(combinations(support, 3))
    return out


def _expand_quadratic(a: tuple[int, ...], b: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = []
    for i in a:
        for j in b:
            if i != j:
                out.append((min(i, j), max(i, j)))
    for i, i2 in combinations(a, 2):
        for j in b:
            if j not in (i, i2):
                out.append(tuple(sorted((i, i2, j))))
    for j, j2 in combinations(b, 2):
        for i in a:
            if i not in (j, j2):
                out.append(tuple(sorted((i, j, j2))))
    return out


def _expand_cubic(a, b, c) -> list[tuple[int, ...]]:
    out = []
    for i in a:
        for j in b:
            for k in c:
                if i != j and j != k and i != k:
                    out.append(tuple(sorted((i, j, k))))
    return out


def cbar_coords_mod2(g: int, c: int) -> np.ndarray:
    """Mod-2 monomial coordinates of Cbar (x) 1 for a class c."""
    labels = monomial_labels(g)
    index = {lab: t for t, lab in enumerate(labels)}
    v = np.zeros(len(labels), dtype=np.int64)
    for lab in _expand_linear(class_support(c)):
        v[index[lab]] ^= 1
    return v


@lru_cache(maxsize=None)
def _w_mod2_build(g: int) -> LabeledModule:
    space = SymplecticSpace(g)
    base = burkhardt_generators(space)
    labels = monomial_labels(g)
    index = {lab: t for t, lab in enumerate(labels)}
    n = len(labels)
    gens: dict = {}
    for name, mat in base.gens.items():
        img_support = [
            tuple(int(j) + 1 for j in np.nonzero(mat.array[i])[0]) for i in range(2 * g)
        ]
        rows = np.zeros((n, n), dtype=np.int64)
        for t, lab in enumerate(labels):
            if len(lab) == 1:
                terms = _expand_linear(img_support[lab[0] - 1])
            elif len(lab) == 2:
                terms = _expand_quadratic(img_support[lab[0] - 1], img_support[lab[1] - 1])
            else:
                terms = _expand_cubic(
                    img_support[lab[0] - 1],
                    img_support[lab[1] - 1],
                    img_support[lab[2] - 1],
                )
            for term in terms:
                rows[t, index[term]] ^= 1
        gens[name] = FFMatrix(2, rows)
    ws = []
    zero = Weight.zero("C", g)
    for lab in labels:
        w = zero
        for i in lab:
            w = w + sp_index_weight(g, i)
        ws.append(w)
    return LabeledModule(Representation(2, n, gens), tuple(labels), tuple(ws))


def w_mod2_representation(g: int, q: QuadraticForm | None = None) -> LabeledModule:
    """The mod-2 image algebra as an Sp_2g(F_2) representation.

    Basis = monomial labels in degree-then-lex order; generator matrices
    are assembled from the Burkhardt generators by the degree-1 expansion
    formula and the multiplicativity rules for degrees 2 and 3.  The
    matrices do not depend on the quadratic form; ``q`` is accepted for
    interface parity and cross-checking.
    """
    if g < 2:
        raise ValueError("need genus >= 2")
    del q
    return _w_mod2_build(g)


# -- invariant subspaces from normal subgroups -------------------------------------


def degree3_block(g: int) -> Submodule:
    """The coordinate subspace spanned by all cubic monomials."""
    mod = w_mod2_representation(g)
    rows = []
    for lab in mod.labels:
        if len(lab) == 3:
            rows.append(mod.unit(lab))
    return submodule(mod.rep, np.array(rows, dtype=np.int64))


def subgroup_image(
    g: int,
    q: QuadraticForm | None = None,
    which: str = "torelli",
    k: int | None = None,
) -> Submodule:
    """Invariant subspace generated by the image of a normal subgroup.

    ``which``: "torelli" (genus-1 bounding pair seed), "johnson-kernel"
    (separating twist), "boundary-twist", "push" (point-pushing image,
    seeded by the omega ^ A_1 cubic), or "level" with even level 2k.
    """
    from .meataxe import spin

    if g < 3:
        raise ValueError("subgroup images need genus >= 3")
    q = q if q is not None else default_form(g)
    mod = w_mod2_representation(g)
    seeds: list[np.ndarray]
    if which == "torelli":
        seeds = [function_coords_mod2(g, beta_eval(q, bounding_pair_word(g)), q)]
    elif which == "johnson-kernel":
        seeds = [function_coords_mod2(g, beta_eval(q, separating_twist_word(g)), q)]
    elif which == "boundary-twist":
        seeds = [function_coords_mod2(g, beta_eval(q, boundary_twist_word(g)), q)]
    elif which == "push":
        a1 = class_of([2 * g - 1])
        acc = Z8Function(g, np.zeros(4**g, dtype=np.int64))
        for i in range(1, g + 1):
            ci, di = class_of([2 * i - 1]), class_of([2 * i])
            acc = acc + (cbar(q, ci) * cbar(q, di) * cbar(q, a1)).scale(4)
        seeds = [function_coords_mod2(g, acc, q)]
    elif which == "level":
        if k is None or k < 1:
            raise ValueError("level images need k >= 1 (level 2k)")
        torelli = function_coords_mod2(g, beta_eval(q, bounding_pair_word(g)), q)
        twist = function_coords_mod2(g, cbar(q, class_of([1])).scale(k), q)
        seeds = [torelli, twist]
    else:
        raise ValueError(f"unknown subgroup image {which!r}")
    return spin(mod.rep, seeds)
