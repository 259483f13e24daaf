"""Exact dense linear algebra over prime fields F_p, plus Z/8 utilities.

Matrices are immutable-by-convention wrappers around small integer numpy
arrays.  For p = 2 the hot operations (multiply, rref, kernels) run on rows
packed into Python ints, bit i = column i; the packed and generic paths are
observationally identical and the packed path can be disabled globally for
testing via ``packed_path``.

Also provides polynomials over F_p with complete factorization
(squarefree decomposition + distinct-degree + Cantor-Zassenhaus splitting)
and Gaussian elimination over the local ring Z/8 with 2-adic pivoting.
"""

from __future__ import annotations

import random
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

_SMALL_PRIMES = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227,
    229, 233, 239, 241, 251,
}

# Global switch for the GF(2) bit-packed fast path.  Tests flip it to check
# that both code paths agree; everything else leaves it on.
_PACKED_ENABLED = True


@contextmanager
def packed_path(enabled: bool):
    """Temporarily enable/disable the GF(2) bit-packed code path."""
    global _PACKED_ENABLED
    old = _PACKED_ENABLED
    _PACKED_ENABLED = enabled
    try:
        yield
    finally:
        _PACKED_ENABLED = old


def _check_prime(p: int) -> None:
    if p not in _SMALL_PRIMES:
        raise ValueError(f"modulus {p} is not a prime in [2, 251]")


class FFMatrix:
    """Dense matrix over F_p, row-major.

    Vectors act on the right as row vectors: the image of basis vector i
    under the matrix is row i.
    """

    __slots__ = ("p", "nrows", "ncols", "_a", "_bits")

    def __init__(self, p: int, entries, ncols: int | None = None):
        _check_prime(p)
        a = np.array(entries, dtype=np.int64)
        if a.ndim == 1:
            if ncols is None:
                raise ValueError("1-d entries need an explicit ncols")
            a = a.reshape(-1, ncols)
        if a.ndim != 2:
            raise ValueError("entries must be 2-dimensional")
        self.p = p
        self._a = a % p
        self.nrows, self.ncols = self._a.shape
        self._bits: list[int] | None = None

    # -- construction helpers -------------------------------------------

    @staticmethod
    def zeros(p: int, nrows: int, ncols: int) -> "FFMatrix":
        return FFMatrix(p, np.zeros((nrows, ncols), dtype=np.int64))

    @staticmethod
    def identity(p: int, n: int) -> "FFMatrix":
        return FFMatrix(p, np.eye(n, dtype=np.int64))

    @staticmethod
    def from_bit_rows(rows: list[int], ncols: int) -> "FFMatrix":
        """Build a GF(2) matrix from rows given as int bitsets."""
        a = np.zeros((len(rows), ncols), dtype=np.int64)
        for i, r in enumerate(rows):
            while r:
                low = r & -r
                a[i, low.bit_length() - 1] = 1
                r ^= low
        return FFMatrix(2, a)

    # -- views ------------------------------------------------------------

    @property
    def array(self) -> np.ndarray:
        """Entry array (do not mutate)."""
        return self._a

    def bit_rows(self) -> list[int]:
        """Rows as int bitsets (p = 2 only), cached."""
        if self.p != 2:
            raise ValueError("bit rows only exist for p = 2")
        if self._bits is None:
            self._bits = _pack(self._a)
        return self._bits

    def row(self, i: int) -> np.ndarray:
        return self._a[i].copy()

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return not self._a.any()

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FFMatrix)
            and self.p == other.p
            and self._a.shape == other._a.shape
            and bool((self._a == other._a).all())
        )

    __hash__ = None

    def __add__(self, other: "FFMatrix") -> "FFMatrix":
        self._compat(other)
        return FFMatrix(self.p, self._a + other._a)

    def __sub__(self, other: "FFMatrix") -> "FFMatrix":
        self._compat(other)
        return FFMatrix(self.p, self._a - other._a)

    def __neg__(self) -> "FFMatrix":
        return FFMatrix(self.p, -self._a)

    def scale(self, c: int) -> "FFMatrix":
        return FFMatrix(self.p, self._a * (c % self.p))

    def __mul__(self, other: "FFMatrix") -> "FFMatrix":
        if not isinstance(other, FFMatrix):
            return NotImplemented
        if self.p != other.p or self.ncols != other.nrows:
            raise ValueError("matrix shapes/moduli do not match")
        if self.p == 2 and _PACKED_ENABLED:
            brows = other.bit_rows()
            out = [_bit_vec_mat(r, brows) for r in self.bit_rows()]
            return FFMatrix.from_bit_rows(out, other.ncols)
        return FFMatrix(self.p, (self._a @ other._a) % self.p)

    def pow(self, k: int) -> "FFMatrix":
        if not self.is_square():
            raise ValueError("pow needs a square matrix")
        if k < 0:
            return self.inverse().pow(-k)
        acc = FFMatrix.identity(self.p, self.nrows)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def transpose(self) -> "FFMatrix":
        return FFMatrix(self.p, self._a.T)

    def kron(self, other: "FFMatrix") -> "FFMatrix":
        self._compat_p(other)
        return FFMatrix(self.p, np.kron(self._a, other._a))

    def apply(self, v) -> np.ndarray:
        """Row vector times matrix."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.p == 2 and _PACKED_ENABLED:
            bits = _pack_vec(v)
            return _unpack_vec(_bit_vec_mat(bits, self.bit_rows()), self.ncols)
        return (v @ self._a) % self.p

    def inverse(self) -> "FFMatrix":
        if not self.is_square():
            raise ValueError("inverse needs a square matrix")
        n = self.nrows
        aug = np.concatenate([self._a, np.eye(n, dtype=np.int64)], axis=1)
        r, rank, piv = rref(FFMatrix(self.p, aug))
        if rank < n or piv != list(range(n)):
            raise ValueError("matrix is singular")
        return FFMatrix(self.p, r.array[:, n:])

    def rank(self) -> int:
        return rref(self)[1]

    def _compat(self, other: "FFMatrix") -> None:
        if self.p != other.p or self._a.shape != other._a.shape:
            raise ValueError("matrix shapes/moduli do not match")

    def _compat_p(self, other: "FFMatrix") -> None:
        if self.p != other.p:
            raise ValueError("moduli do not match")

    def __repr__(self) -> str:
        return f"FFMatrix(p={self.p}, {self.nrows}x{self.ncols})"


# -- packed GF(2) helpers --------------------------------------------------


def _pack(a: np.ndarray) -> list[int]:
    out = []
    for row in a:
        v = 0
        for j in np.nonzero(row)[0]:
            v |= 1 << int(j)
        out.append(v)
    return out


def _pack_vec(v: np.ndarray) -> int:
    acc = 0
    for j in np.nonzero(v)[0]:
        acc |= 1 << int(j)
    return acc


def _unpack_vec(bits: int, ncols: int) -> np.ndarray:
    v = np.zeros(ncols, dtype=np.int64)
    while bits:
        low = bits & -bits
        v[low.bit_length() - 1] = 1
        bits ^= low
    return v


def _bit_vec_mat(vbits: int, mrows: list[int]) -> int:
    """Row vector (bitset) times matrix (list of row bitsets) over GF(2)."""
    acc = 0
    while vbits:
        low = vbits & -vbits
        acc ^= mrows[low.bit_length() - 1]
        vbits ^= low
    return acc


def _rref_bits(rows: list[int]) -> tuple[list[int], list[int]]:
    """Fully reduced row echelon form of GF(2) bit rows.

    Returns (rows sorted by pivot, pivot columns).  Zero rows are dropped.
    """
    pivrows: dict[int, int] = {}
    for r in rows:
        r = _reduce_bits(r, pivrows)
        if r:
            piv = (r & -r).bit_length() - 1
            for q, row in list(pivrows.items()):
                if (row >> piv) & 1:
                    pivrows[q] = row ^ r
            pivrows[piv] = r
    pivots = sorted(pivrows)
    return [pivrows[c] for c in pivots], pivots


def _reduce_bits(r: int, pivrows: dict[int, int]) -> int:
    """Clear every pivot column of r (rows are mutually fully reduced)."""
    scan = r
    while scan:
        low = scan & -scan
        scan ^= low
        j = low.bit_length() - 1
        if j in pivrows and (r >> j) & 1:
            r ^= pivrows[j]
    return r


# -- echelon forms ----------------------------------------------------------


def rref(m: FFMatrix) -> tuple[FFMatrix, int, list[int]]:
    """Reduced row echelon form.

    Returns (rref matrix of the same shape, rank, pivot column list).
    Zero rows are kept at the bottom so the shape is preserved.
    """
    if m.p == 2 and _PACKED_ENABLED:
        rows, pivots = _rref_bits(m.bit_rows())
        rows = rows + [0] * (m.nrows - len(rows))
        return FFMatrix.from_bit_rows(rows, m.ncols), len(pivots), pivots
    p = m.p
    a = m.array.copy()
    nr, nc = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        for i in range(nr):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return FFMatrix(p, a), len(pivots), pivots


def row_space(m: FFMatrix) -> FFMatrix:
    """rref basis of the row space (zero rows dropped)."""
    r, rank, _ = rref(m)
    return FFMatrix(m.p, r.array[:rank])


def kernel_basis(m: FFMatrix) -> list[np.ndarray]:
    """Basis of the right null space {x : m @ x = 0}, as 1-d vectors."""
    r, rank, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    out = []
    a = r.array
    for c in free:
        v = np.zeros(m.ncols, dtype=np.int64)
        v[c] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-a[i, c]) % m.p
        out.append(v)
    return out


def left_kernel(m: FFMatrix) -> list[np.ndarray]:
    """Basis of {v : v @ m = 0}."""
    return kernel_basis(m.transpose())


# -- characteristic polynomial ----------------------------------------------


def char_poly(m: FFMatrix) -> "FFPoly":
    """Characteristic polynomial det(xI - m), monic, exact.

    Uses Hessenberg reduction by similarity transformations followed by the
    standard leading-minor recurrence on the Hessenberg form.
    """
    if not m.is_square():
        raise ValueError("char_poly needs a square matrix")
    p, n = m.p, m.nrows
    if n == 0:
        return FFPoly(p, (1,))
    h = m.array.copy()
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i, j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[[j + 1, piv]] = h[[piv, j + 1]]
            h[:, [j + 1, piv]] = h[:, [piv, j + 1]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        for i in range(j + 2, n):
            f = (h[i, j] * inv) % p
            if f:
                h[i] = (h[i] - f * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + f * h[:, i]) % p
    # c[k] = char poly of the leading k x k block, low-to-high coefficients
    c: list[np.ndarray] = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        prev = c[k - 1]
        term = np.zeros(k + 1, dtype=np.int64)
        term[1:] = prev
        term[:k] -= int(h[k - 1, k - 1]) * prev
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = (prod * int(h[i, i - 1])) % p
            if prod == 0:
                break
            coef = (int(h[i - 1, k - 1]) * prod) % p
            if coef:
                term[: i] -= coef * c[i - 1]
        c.append(term % p)
    return FFPoly(p, tuple(int(x) for x in c[n]))


# -- polynomials over F_p ----------------------------------------------------


@dataclass(frozen=True)
class FFPoly:
    """Polynomial over F_p; coefficients low-to-high, no trailing zeros."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        _check_prime(self.p)
        cs = tuple(c % self.p for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def zero(p: int) -> "FFPoly":
        return FFPoly(p, ())

    @staticmethod
    def x(p: int) -> "FFPoly":
        return FFPoly(p, (0, 1))

    @staticmethod
    def const(p: int, c: int) -> "FFPoly":
        return FFPoly(p, (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __add__(self, other: "FFPoly") -> "FFPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return FFPoly(self.p, tuple(out))

    def __sub__(self, other: "FFPoly") -> "FFPoly":
        return self + other.scale(self.p - 1)

    def scale(self, c: int) -> "FFPoly":
        c %= self.p
        return FFPoly(self.p, tuple(x * c for x in self.coeffs))

    def __mul__(self, other: "FFPoly") -> "FFPoly":
        if self.is_zero() or other.is_zero():
            return FFPoly.zero(self.p)
        if self.p == 2:
            return _gf2_poly(_gf2_clmul(_gf2_int(self), _gf2_int(other)))
        a = np.array(self.coeffs, dtype=np.int64)
        b = np.array(other.coeffs, dtype=np.int64)
        return FFPoly(self.p, tuple(int(c) for c in np.convolve(a, b) % self.p))

    def shift(self, k: int) -> "FFPoly":
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return FFPoly(self.p, (0,) * k + self.coeffs)

    def divmod(self, other: "FFPoly") -> tuple["FFPoly", "FFPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.p == 2:
            q, r = _gf2_divmod(_gf2_int(self), _gf2_int(other))
            return _gf2_poly(q), _gf2_poly(r)
        p = self.p
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = pow(other.coeffs[-1], p - 2, p)
        quo = [0] * max(0, len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                q = (c * lead_inv) % p
                quo[i - d] = q
                for j, oc in enumerate(other.coeffs):
                    rem[i - d + j] = (rem[i - d + j] - q * oc) % p
        return FFPoly(p, tuple(quo)), FFPoly(p, tuple(rem))

    def __mod__(self, other: "FFPoly") -> "FFPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "FFPoly") -> "FFPoly":
        return self.divmod(other)[0]

    def monic(self) -> "FFPoly":
        if self.is_zero():
            return self
        return self.scale(pow(self.coeffs[-1], self.p - 2, self.p))

    def gcd(self, other: "FFPoly") -> "FFPoly":
        if self.p == 2:
            a, b = _gf2_int(self), _gf2_int(other)
            while b:
                a, b = b, _gf2_divmod(a, b)[1]
            return _gf2_poly(a)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "FFPoly":
        return FFPoly(self.p, tuple((i * c) % self.p for i, c in enumerate(self.coeffs))[1:])

    def pow_mod(self, e: int, mod: "FFPoly") -> "FFPoly":
        acc = FFPoly.const(self.p, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                acc = (acc * base) % mod
            base = (base * base) % mod
            e >>= 1
        return acc

    def eval_matrix(self, m: FFMatrix) -> FFMatrix:
        """Evaluate the polynomial at a square matrix (Horner)."""
        if not m.is_square():
            raise ValueError("matrix substitution needs a square matrix")
        n = m.nrows
        acc = FFMatrix.zeros(self.p, n, n)
        ident = FFMatrix.identity(self.p, n)
        for c in reversed(self.coeffs):
            acc = acc * m
            if c:
                acc = acc + ident.scale(c)
        return acc

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                terms.append(f"{head}x^{i}" if i > 1 else f"{head}x")
        return " + ".join(terms)


def _gf2_int(f: FFPoly) -> int:
    v = 0
    for i, c in enumerate(f.coeffs):
        if c:
            v |= 1 << i
    return v


def _gf2_poly(v: int) -> FFPoly:
    out = []
    while v:
        out.append(v & 1)
        v >>= 1
    return FFPoly(2, tuple(out))


def _gf2_clmul(a: int, b: int) -> int:
    acc = 0
    while a:
        low = a & -a
        acc ^= b << (low.bit_length() - 1)
        a ^= low
    return acc


def _gf2_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _pth_root(f: FFPoly) -> FFPoly:
    """For f(x) = g(x^p) over F_p, return the p-th root of f."""
    p = f.p
    return FFPoly(p, f.coeffs[::p])


def _squarefree_parts(f: FFPoly) -> list[tuple[FFPoly, int]]:
    """Squarefree decomposition: list of (squarefree factor, multiplicity)."""
    p = f.p
    out: list[tuple[FFPoly, int]] = []
    fp = f.derivative()
    if fp.is_zero():
        for g, e in _squarefree_parts(_pth_root(f)):
            out.append((g, e * p))
        return out
    c = f.gcd(fp)
    w = (f // c).monic()
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        z = (w // y).monic()
        if not z.is_one():
            out.append((z, i))
        i += 1
        w = y
        c = (c // y).monic()
    if not c.is_one():
        for g, e in _squarefree_parts(_pth_root(c)):
            out.append((g, e * p))
    return out


def _distinct_degree(f: FFPoly) -> list[tuple[FFPoly, int]]:
    """Split a monic squarefree f into (product of irreducibles of degree d, d)."""
    p = f.p
    out = []
    h = FFPoly.x(p)
    rest = f
    d = 0
    x = FFPoly.x(p)
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out.append((rest, rest.degree))
            break
        h = h.pow_mod(p, rest)
        g = (h - x).gcd(rest)
        if not g.is_one():
            out.append((g, d))
            rest = (rest // g).monic()
            h = h % rest
    return out


def _equal_degree_split(f: FFPoly, d: int, rng: random.Random) -> list[FFPoly]:
    """Cantor-Zassenhaus: split monic squarefree f, all factors of degree d."""
    p = f.p
    n = f.degree
    if n == d:
        return [f]
    while True:
        a = FFPoly(p, tuple(rng.randrange(p) for _ in range(n)))
        if a.degree < 1:
            continue
        if p == 2:
            # trace map over F_{2^d}
            t = FFPoly.zero(2)
            b = a % f
            for _ in range(d):
                t = (t + b) % f
                b = (b * b) % f
            g = t.gcd(f)
        else:
            g = a.gcd(f)
            if g.is_one():
                t = a.pow_mod((p**d - 1) // 2, f) - FFPoly.const(p, 1)
                g = t.gcd(f)
        if 0 < g.degree < n:
            left = _equal_degree_split(g, d, rng)
            right = _equal_degree_split((f // g).monic(), d, rng)
            return left + right


def factor_squarefree(f: FFPoly, seed: int = 0) -> list[tuple[FFPoly, int]]:
    """Complete factorization of f into monic irreducibles.

    Returns (irreducible, multiplicity) pairs sorted by (degree, coeffs);
    the leading coefficient is dropped (factors are monic).  Deterministic
    for a fixed seed.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(("cz", f.p, f.coeffs, seed))
    found: dict[tuple[int, ...], int] = {}
    for sqf, mult in _squarefree_parts(f.monic()):
        for prod, d in _distinct_degree(sqf):
            for irr in _equal_degree_split(prod, d, rng):
                found[irr.coeffs] = found.get(irr.coeffs, 0) + mult
    out = [(FFPoly(f.p, cs), m) for cs, m in found.items()]
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def is_irreducible(f: FFPoly, seed: int = 0) -> bool:
    fac = factor_squarefree(f, seed)
    return len(fac) == 1 and fac[0][1] == 1 and fac[0][0].degree == f.degree


# -- Z/8 vectors and elimination ---------------------------------------------

_VAL8 = {0: 3, 1: 0, 2: 1, 3: 0, 4: 2, 5: 0, 6: 1, 7: 0}
_INV8 = {1: 1, 3: 3, 5: 5, 7: 7}


@dataclass(frozen=True)
class Z8Vector:
    """Vector with entries in Z/8."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) % 8 for e in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def length(self) -> int:
        return len(self.entries)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)


def _as_z8_array(v) -> np.ndarray:
    if isinstance(v, Z8Vector):
        return v.as_array() % 8
    return np.asarray(v, dtype=np.int64) % 8


class Z8Span:
    """Echelonized span of vectors over Z/8 with membership solving.

    Elimination picks pivots of minimal 2-adic valuation (units first),
    breaking ties by column then row, and tracks the expression of each
    echelon row in terms of the original spanning vectors.
    """

    def __init__(self, vectors):
        rows = [_as_z8_array(v) for v in vectors]
        self.n = len(rows)
        self.length = len(rows[0]) if rows else None
        for r in rows:
            if len(r) != self.length:
                raise ValueError("span vectors have mismatched lengths")
        work = np.array(rows, dtype=np.int64) if rows else np.zeros((0, 0), np.int64)
        trans = np.eye(self.n, dtype=np.int64)
        pivots: list[tuple[int, int, int]] = []  # (row, col, valuation)
        used_rows: set[int] = set()
        used_cols: set[int] = set()
        while True:
            best = None
            for i in range(self.n):
                if i in used_rows:
                    continue
                for j in range(self.length):
                    if j in used_cols:
                        continue
                    v = _VAL8[int(work[i, j])]
                    if v == 3:
                        continue
                    key = (v, j, i)
                    if best is None or key < best:
                        best = key
            if best is None:
                break
            val, col, row = best
            unit = int(work[row, col]) >> val
            inv = _INV8[unit & 7]
            work[row] = (work[row] * inv) % 8
            trans[row] = (trans[row] * inv) % 8
            for i in range(self.n):
                if i == row or not work[i, col]:
                    continue
                c = int(work[i, col]) >> val
                work[i] = (work[i] - c * work[row]) % 8
                trans[i] = (trans[i] - c * trans[row]) % 8
            used_rows.add(row)
            used_cols.add(col)
            pivots.append((row, col, val))
        self._work = work % 8
        self._trans = trans % 8
        self.pivots = pivots
        self.zero_rows = [i for i in range(self.n) if i not in used_rows]

    def solve(self, v) -> tuple[int, ...] | None:
        """Coefficients x with sum x_i * span_i = v, or None."""
        v = _as_z8_array(v)
        if self.length is None:
            return () if not v.any() else None
        if len(v) != self.length:
            raise ValueError("vector length does not match the span")
        v = v.copy()
        coeff = np.zeros(self.n, dtype=np.int64)
        for row, col, val in self.pivots:
            e = int(v[col])
            if e == 0:
                continue
            if _VAL8[e] < val:
                return None
            c = e >> val
            v = (v - c * self._work[row]) % 8
            coeff = (coeff + c * self._trans[row]) % 8
        if v.any():
            return None
        return tuple(int(c) for c in coeff)

    def relation_generators(self) -> list[tuple[int, ...]]:
        """Generators of {x : sum x_i * span_i = 0} over Z/8."""
        gens = []
        for row, _col, val in self.pivots:
            if val > 0:
                scale = 1 << (3 - val)
                gens.append(tuple(int(c) for c in (scale * self._trans[row]) % 8))
        for z in self.zero_rows:
            gens.append(tuple(int(c) for c in self._trans[z]))
        return gens


def z8_solve_membership(span, v) -> tuple[bool, tuple[int, ...] | None]:
    """Decide whether v lies in the Z/8-span; return witness coefficients."""
    coeffs = Z8Span(span).solve(v)
    return (coeffs is not None), coeffs
