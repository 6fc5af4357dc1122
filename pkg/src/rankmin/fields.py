"""Exact arithmetic in the two-level tower GF(q^m)/GF(q) with q = p^e.

Elements are plain Python ints.  An element of the base field F = GF(p^e)
is an int in [0, q) whose ascending base-p digits are the coefficients of
its polynomial representative modulo ``base_poly``.  An element of the top
field E = GF(q^m) is an int in [0, q^m) whose ascending base-q digits are
the coefficients modulo ``ext_poly``.  All arithmetic happens on these
internal ints; a custom ordered basis only changes the coordinate maps
(``to_coords`` / ``expand``) and the external serialization integers.

Multiplication uses log/antilog tables whenever the field order is at most
2^16 and falls back to schoolbook polynomial arithmetic above that.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

_TABLE_LIMIT = 1 << 16


class NonIrreducible(ValueError):
    """A supplied modulus polynomial factors over its coefficient field."""


class BadBasis(ValueError):
    """A supplied basis of E over F is not F-linearly independent."""


def int_to_digits(x: int, base: int, length: int) -> Tuple[int, ...]:
    digits = []
    for _ in range(length):
        x, d = divmod(x, base)
        digits.append(d)
    return tuple(digits)


def digits_to_int(digits: Sequence[int], base: int) -> int:
    x = 0
    for d in reversed(digits):
        x = x * base + d
    return x


# ---------------------------------------------------------------------------
# Field engines.  _PrimeField and _PolyField both expose: order, add, sub,
# neg, mul, inv, pow_.  _PolyField stacks on any engine below it, so the
# same code builds GF(p^e) over GF(p) and GF(q^m) over GF(q).
# ---------------------------------------------------------------------------


class _PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"p={p} is not prime")
        self.order = p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.order

    def neg(self, a: int) -> int:
        return (-a) % self.order

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.order

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.order - 2, self.order)

    def pow_(self, a: int, n: int) -> int:
        return pow(a, n, self.order)


class _PolyField:
    """GF(s^d) built as subfield[x]/(modulus), elements packed base-s."""

    def __init__(self, subfield, degree: int, modulus: Sequence[int]):
        if len(modulus) != degree + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of the stated degree")
        if not _is_irreducible(modulus, subfield):
            raise NonIrreducible(f"polynomial {list(modulus)} factors")
        self.sub_ = subfield
        self.degree = degree
        self.modulus = tuple(modulus)
        self.base = subfield.order
        self.order = subfield.order**degree
        # x^degree = -(low-order part of modulus)
        self._overflow = tuple(subfield.neg(c) for c in modulus[:degree])
        self._log: Optional[List[int]] = None
        self._exp: Optional[List[int]] = None
        if self.order <= _TABLE_LIMIT:
            self._build_tables()

    # -- packed digit helpers -------------------------------------------
    def _digits(self, a: int) -> Tuple[int, ...]:
        return int_to_digits(a, self.base, self.degree)

    def _pack(self, digits: Sequence[int]) -> int:
        return digits_to_int(digits, self.base)

    def add(self, a: int, b: int) -> int:
        s = self.sub_
        da, db = self._digits(a), self._digits(b)
        return self._pack([s.add(x, y) for x, y in zip(da, db)])

    def sub(self, a: int, b: int) -> int:
        s = self.sub_
        da, db = self._digits(a), self._digits(b)
        return self._pack([s.sub(x, y) for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        s = self.sub_
        return self._pack([s.neg(x) for x in self._digits(a)])

    def _mul_poly(self, a: int, b: int) -> int:
        s = self.sub_
        d = self.degree
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = s.add(prod[i + j], s.mul(x, y))
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c == 0:
                continue
            prod[i] = 0
            for j, o in enumerate(self._overflow):
                if o:
                    prod[i - d + j] = s.add(prod[i - d + j], s.mul(c, o))
        return self._pack(prod[:d])

    def _build_tables(self) -> None:
        n = self.order
        g = self._find_generator()
        exp = [1] * (2 * n)
        log = [0] * n
        v = 1
        for i in range(n - 1):
            exp[i] = v
            log[v] = i
            v = self._mul_poly(v, g)
        for i in range(n - 1, 2 * n):
            exp[i] = exp[i - (n - 1)]
        self._exp, self._log = exp, log

    def _find_generator(self) -> int:
        if self.order == 2:
            return 1
        n1 = self.order - 1
        primes = _prime_factors(n1)
        for g in range(2, self.order):
            if all(self._pow_poly(g, n1 // ell) != 1 for ell in primes):
                return g
        raise AssertionError("no multiplicative generator found")

    def _pow_poly(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._mul_poly(r, a)
            a = self._mul_poly(a, a)
            n >>= 1
        return r

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            return self._exp[(self.order - 1) - self._log[a]]
        return self._pow_poly(a, self.order - 2)

    def pow_(self, a: int, n: int) -> int:
        if self._log is not None and a != 0:
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        return self._pow_poly(a % self.order, n)


def _prime_factors(n: int) -> List[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomial utilities over an arbitrary engine (coefficients = packed ints).
# ---------------------------------------------------------------------------


def _poly_mod(num: Sequence[int], den: Sequence[int], fld) -> Tuple[int, ...]:
    num = list(num)
    dd = len(den) - 1
    lead_inv = fld.inv(den[-1])
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        f = fld.mul(c, lead_inv)
        for j in range(dd + 1):
            num[i - dd + j] = fld.sub(num[i - dd + j], fld.mul(f, den[j]))
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def _is_irreducible(poly: Sequence[int], fld) -> bool:
    """Exhaustive factor check: no monic divisor of degree 1..deg//2."""
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    q = fld.order
    for d in range(1, deg // 2 + 1):
        for tail in range(q**d):
            cand = list(int_to_digits(tail, q, d)) + [1]
            rem = _poly_mod(poly, cand, fld)
            if rem == (0,):
                return False
    return True


def default_irreducible(fld, degree: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible, coefficients compared
    low degree first."""
    q = fld.order
    for low in range(q**degree):
        # ascending lex on (c0,...,c_{d-1}): c0 is the most significant digit
        digits = int_to_digits(low, q, degree)
        cand = tuple(reversed(digits)) + (1,)
        if _is_irreducible(cand, fld):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# The tower itself.
# ---------------------------------------------------------------------------


class FieldLevel:
    """One coefficient level of a tower (F or E), as used by linalg."""

    __slots__ = ("tower", "name", "order", "add", "sub", "neg", "mul", "inv")

    def __init__(self, tower: "FieldTower", name: str, engine):
        self.tower = tower
        self.name = name
        self.order = engine.order
        self.add = engine.add
        self.sub = engine.sub
        self.neg = engine.neg
        self.mul = engine.mul
        self.inv = engine.inv

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:  # pragma: no cover
        return f"FieldLevel({self.name}, order={self.order})"


class FieldTower:
    """Immutable description of GF(q^m)/GF(q); all ops are pure."""

    def __init__(self, p: int, e: int, m: int,
                 base_poly: Optional[Sequence[int]],
                 ext_poly: Optional[Sequence[int]],
                 basis: Optional[Sequence[int]] = None):
        self.p = p
        self.e = e
        self.m = m
        prime = _PrimeField(p)
        if e == 1:
            self._fops = prime
            self.base_poly = tuple(base_poly) if base_poly is not None else None
        else:
            if base_poly is None:
                base_poly = default_irreducible(prime, e)
            self._fops = _PolyField(prime, e, base_poly)
            self.base_poly = tuple(base_poly)
        self.q = self._fops.order
        if ext_poly is None:
            ext_poly = default_irreducible(self._fops, m)
        self._xops = _PolyField(self._fops, m, ext_poly)
        self.ext_poly = tuple(ext_poly)
        self.order = self._xops.order

        if basis is None:
            basis = tuple(self.q**i for i in range(m))  # 1, x, ..., x^(m-1)
        basis = tuple(basis)
        if len(basis) != m:
            raise BadBasis(f"basis must have {m} elements")
        self.basis = basis
        # columns of T = polynomial digits of the basis elements
        cols = [int_to_digits(b, self.q, m) for b in basis]
        tinv = _invert_matrix([[cols[j][i] for j in range(m)] for i in range(m)],
                              self._fops)
        if tinv is None:
            raise BadBasis("basis is not F-linearly independent")
        self._coord_matrix = tinv
        self._default_basis = basis == tuple(self.q**i for i in range(m))

        self.F = FieldLevel(self, "F", self._fops)
        self.E = FieldLevel(self, "E", self._xops)

    # -- base field ------------------------------------------------------
    def fadd(self, a: int, b: int) -> int:
        return self._fops.add(a, b)

    def fsub(self, a: int, b: int) -> int:
        return self._fops.sub(a, b)

    def fneg(self, a: int) -> int:
        return self._fops.neg(a)

    def fmul(self, a: int, b: int) -> int:
        return self._fops.mul(a, b)

    def finv(self, a: int) -> int:
        return self._fops.inv(a)

    # -- top field ---------------------------------------------------------
    def xadd(self, a: int, b: int) -> int:
        return self._xops.add(a, b)

    def xsub(self, a: int, b: int) -> int:
        return self._xops.sub(a, b)

    def xneg(self, a: int) -> int:
        return self._xops.neg(a)

    def xmul(self, a: int, b: int) -> int:
        return self._xops.mul(a, b)

    def xinv(self, a: int) -> int:
        return self._xops.inv(a)

    def xpow(self, a: int, n: int) -> int:
        return self._xops.pow_(a, n)

    def scalar(self, c: int) -> int:
        """Embed c in F as an element of E (constant polynomial)."""
        return c

    def scale(self, c: int, x: int) -> int:
        """Multiply x in E by the scalar c in F."""
        return self._xops.mul(self.scalar(c), x)

    # -- coordinates -------------------------------------------------------
    def to_coords(self, x: int) -> Tuple[int, ...]:
        """Coordinates of x with respect to the ordered basis (tau_1..tau_m)."""
        digits = int_to_digits(x, self.q, self.m)
        if self._default_basis:
            return digits
        f = self._fops
        return tuple(
            _dot_row(self._coord_matrix[i], digits, f) for i in range(self.m)
        )

    def from_coords(self, coords: Sequence[int]) -> int:
        if self._default_basis:
            return digits_to_int(coords, self.q)
        x = 0
        for c, b in zip(coords, self.basis):
            x = self.xadd(x, self.scale(c, b))
        return x

    def encode(self, x: int) -> int:
        """External serialization integer (base-q digits = basis coordinates)."""
        return digits_to_int(self.to_coords(x), self.q)

    def decode(self, v: int) -> int:
        return self.from_coords(int_to_digits(v, self.q, self.m))

    # -- expansion map -----------------------------------------------------
    def expand(self, alpha: Sequence[int]) -> List[List[int]]:
        """The unique M with alpha = (tau_1..tau_m) M; column j holds the
        coordinates of alpha_j."""
        cols = [self.to_coords(a) for a in alpha]
        return [[col[i] for col in cols] for i in range(self.m)]

    def reconstruct(self, mat: Sequence[Sequence[int]]) -> Tuple[int, ...]:
        n = len(mat[0]) if mat else 0
        out = []
        for j in range(n):
            x = 0
            for i in range(self.m):
                x = self.xadd(x, self.scale(mat[i][j], self.basis[i]))
            out.append(x)
        return tuple(out)

    # -- serialization -------------------------------------------------------
    def spec_string(self) -> str:
        parts = [f"p={self.p}", f"e={self.e}", f"m={self.m}"]
        if self.e > 1:
            parts.append("base=" + ",".join(str(c) for c in self.base_poly))
        parts.append("ext=" + ",".join(str(c) for c in self.ext_poly))
        return ",".join(parts[:3]) + "," + ",".join(parts[3:])

    def __repr__(self) -> str:  # pragma: no cover
        return f"FieldTower(GF({self.q}^{self.m})/GF({self.q}))"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldTower)
                and (self.p, self.e, self.m, self.base_poly, self.ext_poly,
                     self.basis)
                == (other.p, other.e, other.m, other.base_poly,
                    other.ext_poly, other.basis))

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.m, self.base_poly, self.ext_poly,
                     self.basis))


def _dot_row(row: Sequence[int], vec: Sequence[int], fld) -> int:
    acc = 0
    for a, b in zip(row, vec):
        if a and b:
            acc = fld.add(acc, fld.mul(a, b))
    return acc


def _invert_matrix(rows: List[List[int]], fld) -> Optional[List[List[int]]]:
    n = len(rows)
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(n)]
           for i in range(n)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        f = fld.inv(aug[r][c])
        aug[r] = [fld.mul(f, v) for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                g = aug[i][c]
                aug[i] = [fld.sub(v, fld.mul(g, w))
                          for v, w in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]


def make_field(p: int, m: int, *, e: int = 1,
               base_poly: Optional[Sequence[int]] = None,
               ext_poly: Optional[Sequence[int]] = None,
               basis: Optional[Sequence[int]] = None) -> FieldTower:
    """Build and validate a tower GF(q^m)/GF(q) with q = p^e.

    Raises NonIrreducible if either modulus factors and BadBasis if the
    supplied basis is dependent.  Omitted polynomials default to the
    lexicographically smallest monic irreducible of the right degree.
    """
    if m < 1 or e < 1:
        raise ValueError("extension degrees must be >= 1")
    if base_poly is not None and (len(base_poly) != e + 1 or base_poly[-1] != 1):
        raise ValueError("base_poly must be monic of degree e")
    if ext_poly is not None and (len(ext_poly) != m + 1 or ext_poly[-1] != 1):
        raise ValueError("ext_poly must be monic of degree m")
    return FieldTower(p, e, m, base_poly, ext_poly, basis)


def parse_field_spec(spec: str) -> FieldTower:
    """Parse a field spec string, e.g. ``p=2,e=1,m=3,ext=1,1,0,1``."""
    p = e = m = None
    base: Optional[List[int]] = None
    ext: Optional[List[int]] = None
    current: Optional[List[int]] = None
    for token in spec.split(","):
        token = token.strip()
        if "=" in token:
            key, val = token.split("=", 1)
            key = key.strip()
            if key == "p":
                p, current = int(val), None
            elif key == "e":
                e, current = int(val), None
            elif key == "m":
                m, current = int(val), None
            elif key == "base":
                base = [int(val)]
                current = base
            elif key == "ext":
                ext = [int(val)]
                current = ext
            else:
                raise ValueError(f"unknown field spec key {key!r}")
        else:
            if current is None:
                raise ValueError(f"stray token {token!r} in field spec")
            current.append(int(token))
    if p is None or m is None:
        raise ValueError("field spec needs at least p= and m=")
    return make_field(p, m, e=e or 1, base_poly=base, ext_poly=ext)
