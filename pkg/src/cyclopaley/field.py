"""Exact arithmetic in GF(p^n) backed by discrete-log tables.

Elements are encoded as integers ``code = c_0 + c_1 p + ... + c_{n-1} p^{n-1}``
where ``c_0 + c_1 x + ... + c_{n-1} x^{n-1}`` is the polynomial-basis
representative.  Codes ``0 .. p-1`` are therefore exactly the prime field,
which is what the clique search uses for its integer seed prefixes.

The :class:`Field` methods work on raw integer codes (and on numpy arrays of
codes for the bulk operations).  :class:`FieldElement` is a thin wrapper
with operator overloading for interactive use and tests.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import struct
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from .errors import LogOfZeroError, NotPrimeError, SizeCapExceeded, ZeroInverseError

DEFAULT_SIZE_CAP = 2**27

_CACHE_HEADER = struct.Struct("<QQQ")


# -- polynomial helpers over GF(p); coefficient lists are low -> high ----------

def _poly_mulmod(a: list[int], b: list[int], red: list[int], p: int) -> list[int]:
    """Multiply two residues modulo the monic modulus x^n + red(x)."""
    n = len(red)
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k] % p
        if c:
            # x^k = x^(k-n) * x^n = -x^(k-n) * red(x)
            for j, rj in enumerate(red):
                prod[k - n + j] -= c * rj
    return [c % p for c in prod[:n]]


def _poly_powmod(a: list[int], e: int, red: list[int], p: int) -> list[int]:
    result = [1] + [0] * (len(red) - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, red, p)
        base = _poly_mulmod(base, base, red, p)
        e >>= 1
    return result


def _is_primitive_poly(poly: tuple[int, ...], p: int) -> bool:
    """poly (monic, high -> low) is irreducible and x generates the unit group."""
    if not gf_irreducible_p(list(poly), p, ZZ):
        return False
    n = len(poly) - 1
    q = p**n
    red = [int(c) for c in reversed(poly[1:])]
    x = [0, 1] + [0] * (n - 2) if n > 1 else [(-red[0]) % p]
    one = [1] + [0] * (n - 1)
    return all(_poly_powmod(x, (q - 1) // ell, red, p) != one for ell in factorint(q - 1))


@lru_cache(maxsize=None)
def conway_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Conway polynomial of GF(p^n), high -> low coefficients.

    Writing f = x^n + sum_i (-1)^(n-i) a_i x^i, this is the primitive f with
    the lexicographically least (a_{n-1}, ..., a_0) whose root, raised to
    (p^n - 1)/(p^m - 1), is a root of the Conway polynomial of every proper
    subfield GF(p^m).
    """
    subs = [(m, conway_polynomial(p, m)) for m in range(1, n) if n % m == 0]
    for alphas in itertools.product(range(p), repeat=n):
        # alphas[0] is a_{n-1}, alphas[-1] is a_0
        poly = (1, *(((-1) ** (k + 1) * a) % p for k, a in enumerate(alphas)))
        if poly[-1] == 0 or not _is_primitive_poly(poly, p):
            continue
        red = [int(c) for c in reversed(poly[1:])]
        x = [0, 1] + [0] * (n - 2) if n > 1 else [(-red[0]) % p]
        ok = True
        for m, sub in subs:
            y = _poly_powmod(x, (p**n - 1) // (p**m - 1), red, p)
            # Horner evaluation of the subfield polynomial at y
            acc = [0] * n
            for c in sub:
                acc = _poly_mulmod(acc, y, red, p)
                acc[0] = (acc[0] + c) % p
            if any(acc):
                ok = False
                break
        if ok:
            return poly
    raise AssertionError(f"no Conway polynomial found for GF({p}^{n})")


def _smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible, high -> low coefficients."""
    for tail in itertools.product(range(p), repeat=n):
        poly = (1, *tail)
        if gf_irreducible_p(list(poly), p, ZZ):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {n} over GF({p})")


class Field:
    """GF(p^n) with a fixed modulus, primitive root and full log table.

    Instances are immutable after construction; obtain them through
    :func:`make_field`, which memoizes on its arguments.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...], g: int,
                 log_table: np.ndarray | None = None):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = tuple(int(c) for c in modulus)
        # reduction tail of x^n + c_{n-1} x^{n-1} + ... + c_0, low -> high
        self._red = [int(c) for c in reversed(self.modulus[1:])]
        self.g = int(g)
        self._powers = np.array([p**i for i in range(n)], dtype=np.int64)

        codes = np.arange(self.q, dtype=np.int64)
        self.digits = (codes[:, None] // self._powers[None, :]) % p
        self.digits.setflags(write=False)

        if log_table is None:
            exp = self._build_exp_table()
        else:
            exp = np.empty(self.q - 1, dtype=np.int64)
            exp[log_table[1:]] = np.arange(1, self.q, dtype=np.int64)
        self.exp = exp
        self.log = np.full(self.q, -1, dtype=np.int64)
        self.log[exp] = np.arange(self.q - 1, dtype=np.int64)
        if (self.log[1:] < 0).any() or self.log[0] != -1:
            raise ValueError(f"{self.g} is not a primitive root of GF({p}^{n})")
        self.exp.setflags(write=False)
        self.log.setflags(write=False)

        self.trace_table = self._build_trace_table()
        self.trace_table.setflags(write=False)

    # -- construction ---------------------------------------------------------

    def _build_exp_table(self) -> np.ndarray:
        p, n, q = self.p, self.n, self.q
        gvec = self.coeffs(self.g)
        # multiplication-by-g as a matrix acting on coefficient columns
        mat = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            basis = [0] * n
            basis[j] = 1
            mat[:, j] = _poly_mulmod(basis, list(gvec), self._red, p)
        block = min(q - 1, 4096)
        cols = np.zeros((n, block), dtype=np.int64)
        cur = np.zeros(n, dtype=np.int64)
        cur[0] = 1
        for k in range(block):
            cols[:, k] = cur
            cur = (mat @ cur) % p
        step = np.eye(n, dtype=np.int64)
        for _ in range(block):
            step = (mat @ step) % p
        chunks = [cols]
        total = block
        while total < q - 1:
            cols = (step @ cols) % p
            chunks.append(cols)
            total += block
        allcols = np.concatenate(chunks, axis=1)[:, : q - 1]
        return (self._powers @ allcols).astype(np.int64)

    def _build_trace_table(self) -> np.ndarray:
        p, n = self.p, self.n
        basis_traces = np.zeros(n, dtype=np.int64)
        for j in range(n):
            xj = [0] * n
            xj[j] = 1
            acc = [0] * n
            cur = xj
            for _ in range(n):
                acc = [(u + v) % p for u, v in zip(acc, cur)]
                cur = _poly_powmod(cur, p, self._red, p)
            if any(acc[1:]):
                raise AssertionError("trace did not land in the prime field")
            basis_traces[j] = acc[0]
        return (self.digits @ basis_traces) % p

    # -- encoding ---------------------------------------------------------------

    def coeffs(self, code: int) -> tuple[int, ...]:
        """Coefficient vector (low -> high) of an element code."""
        out = []
        for _ in range(self.n):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    def code(self, coeffs) -> int:
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(coeffs)}")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def from_digits(self, digits: np.ndarray) -> np.ndarray:
        return (digits % self.p) @ self._powers

    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (tuple, list)):
            return FieldElement(self, self.code(value))
        code = int(value)
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} outside [0, {self.q})")
        return FieldElement(self, code)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def generator(self) -> FieldElement:
        return FieldElement(self, self.g)

    # -- scalar arithmetic on codes ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.from_digits(self.digits[a] + self.digits[b]))

    def sub(self, a: int, b: int) -> int:
        return int(self.from_digits(self.digits[a] - self.digits[b]))

    def neg(self, a: int) -> int:
        return int(self.from_digits(-self.digits[a]))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverseError("zero has no multiplicative inverse")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroInverseError("zero has no multiplicative inverse")
            return 1 if k == 0 else 0
        return int(self.exp[(int(self.log[a]) * k) % (self.q - 1)])

    def gpow(self, k: int) -> int:
        """g^k as a code."""
        return int(self.exp[k % (self.q - 1)])

    def discrete_log(self, x: int) -> int:
        if x == 0:
            raise LogOfZeroError("discrete log of zero is undefined")
        return int(self.log[x])

    def trace(self, x: int) -> int:
        return int(self.trace_table[x])

    def poly_mul(self, a: int, b: int) -> int:
        """Multiply by schoolbook polynomial arithmetic, bypassing the tables."""
        return self.code(_poly_mulmod(list(self.coeffs(a)), list(self.coeffs(b)), self._red, self.p))

    def poly_pow(self, a: int, k: int) -> int:
        return self.code(_poly_powmod(list(self.coeffs(a)), k, self._red, self.p))

    # -- vectorized helpers --------------------------------------------------------

    def add_vec(self, a, b) -> np.ndarray:
        return self.from_digits(self.digits[a] + self.digits[b])

    def sub_vec(self, a, b) -> np.ndarray:
        return self.from_digits(self.digits[a] - self.digits[b])

    def mul_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    # -- structure ---------------------------------------------------------------------

    def subfield(self, m: int) -> np.ndarray:
        """Sorted codes of the subfield GF(p^m) (requires m | n)."""
        if self.n % m:
            raise ValueError(f"GF({self.p}^{m}) is not a subfield of GF({self.p}^{self.n})")
        step = (self.q - 1) // (self.p**m - 1)
        nonzero = self.exp[np.arange(0, self.q - 1, step)]
        return np.sort(np.concatenate(([0], nonzero)))

    def frobenius(self, x: int, power: int) -> int:
        """x^(p^power)."""
        return self.pow(x, self.p**power)

    def descriptor(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus),
                "g": list(self.coeffs(self.g))}

    def descriptor_hash(self) -> str:
        blob = json.dumps(self.descriptor(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def __repr__(self) -> str:
        return f"Field(p={self.p}, n={self.n}, modulus={list(self.modulus)}, g={list(self.coeffs(self.g))})"


@dataclass(frozen=True)
class FieldElement:
    field: Field
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements belong to different fields")
            return other.code
        return self.field.code([int(other)] + [0] * (self.field.n - 1))

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(self._other(other))))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.code, k))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.code))

    def log(self) -> int:
        return self.field.discrete_log(self.code)

    def trace(self) -> int:
        return self.field.trace(self.code)

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coeffs)})"


def _find_primitive_root(p: int, n: int, modulus: tuple[int, ...]) -> int:
    q = p**n
    red = [int(c) for c in reversed(modulus[1:])]
    cofactors = [(q - 1) // ell for ell in factorint(q - 1)]
    one = [1] + [0] * (n - 1)
    for code in range(1, q):
        cand = []
        c = code
        for _ in range(n):
            c, d = divmod(c, p)
            cand.append(d)
        if q == 2 or all(_poly_powmod(cand, e, red, p) != one for e in cofactors):
            if _poly_powmod(cand, q - 1, red, p) == one:
                return code
    raise AssertionError("no primitive root found; modulus cannot be irreducible")


def _cache_path(cache_dir: Path, field_key: dict) -> Path:
    digest = hashlib.sha256(json.dumps(field_key, sort_keys=True).encode()).hexdigest()[:16]
    return Path(cache_dir) / f"log_p{field_key['p']}_n{field_key['n']}_{digest}.bin"


def write_log_cache(field: Field, cache_dir) -> Path:
    """Write log[1..q-1] as little-endian u32 after a (p, n, q) u64 header."""
    path = _cache_path(cache_dir, field.descriptor())
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(_CACHE_HEADER.pack(field.p, field.n, field.q))
        fh.write(field.log[1:].astype("<u4").tobytes())
    return path


def read_log_cache(path, p: int, n: int) -> np.ndarray | None:
    path = Path(path)
    if not path.exists():
        return None
    raw = path.read_bytes()
    hp, hn, hq = _CACHE_HEADER.unpack_from(raw)
    if (hp, hn, hq) != (p, n, p**n):
        return None
    body = np.frombuffer(raw, dtype="<u4", offset=_CACHE_HEADER.size)
    if body.size != hq - 1:
        return None
    log = np.empty(hq, dtype=np.int64)
    log[0] = -1
    log[1:] = body
    return log


@lru_cache(maxsize=64)
def _make_field_cached(p: int, n: int, modulus_rule: str, generator: int | None,
                       cache_dir: str | None) -> Field:
    if modulus_rule == "conway":
        modulus = conway_polynomial(p, n)
        # the class of x is primitive by construction
        default_g = p if n > 1 else (-modulus[1]) % p
    elif modulus_rule == "lex":
        modulus = _smallest_irreducible(p, n)
        default_g = None
    else:
        raise ValueError(f"unknown modulus rule {modulus_rule!r}")
    if generator is not None:
        g = generator
    elif default_g is not None:
        g = default_g
    else:
        g = _find_primitive_root(p, n, modulus)
    log_table = None
    if cache_dir is not None:
        key = {"p": p, "n": n, "modulus": list(modulus), "g": list(_digits_of(g, p, n))}
        log_table = read_log_cache(_cache_path(Path(cache_dir), key), p, n)
    field = Field(p, n, modulus, g, log_table)
    if cache_dir is not None and log_table is None:
        write_log_cache(field, cache_dir)
    return field


def _digits_of(code: int, p: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        code, c = divmod(code, p)
        out.append(c)
    return tuple(out)


def make_field(p: int, n: int, *, modulus: str = "conway", size_cap: int = DEFAULT_SIZE_CAP,
               generator: int | None = None, cache_dir=None) -> Field:
    """Construct GF(p^n) deterministically.

    ``modulus="conway"`` (default) uses the Conway polynomial with g = x, the
    convention of common computer-algebra systems.  The labelling of the
    classes C_j depends on g: replacing g by g^u relabels C_j as C_{uj}, so
    PP(q, 2d, I) built here matches graphs computed elsewhere only under the
    same convention.  ``modulus="lex"`` takes the lexicographically smallest
    monic irreducible and the smallest-code element of order p^n - 1.
    ``generator`` overrides g; it is verified either way.
    """
    if not isprime(p) or p == 2:
        raise NotPrimeError(f"{p} is not an odd prime")
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if p**n > size_cap:
        raise SizeCapExceeded(f"field of order {p}^{n} exceeds size cap {size_cap}")
    return _make_field_cached(p, n, modulus, generator,
                              None if cache_dir is None else str(cache_dir))
