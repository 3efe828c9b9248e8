"""
Arithmetic in the finite fields GF(p^k).

An element is a coefficient vector (c_0, ..., c_{k-1}) of a polynomial over
Z_p reduced modulo a monic irreducible polynomial of degree k. `field(q)`
chooses the modulus deterministically: the lexicographically smallest monic
irreducible polynomial, comparing coefficients from the constant term up. The
generator of the multiplicative group is the first element of order q - 1 in
the canonical enumeration order, so generator and logarithms are reproducible.

Elements are numbered by their *index*: the coefficient vector read as a
base-p numeral with c_0 most significant. Ascending indices follow the
canonical enumeration order.
"""
from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator

import numpy as np

from quower._utils import _is_prime, _swap_dict_keys_values
from quower.errors import DomainError, FieldMismatchError, InputError
from quower.log_cfg import logger


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, p prime. Raises InputError otherwise."""
    if not isinstance(q, (int, np.integer)) or q < 2:
        raise InputError(f"{q!r} is not a prime power")
    p = 2
    while q % p:
        p += 1
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1 or not _is_prime(p):
        raise InputError(f"{q} is not a prime power")
    return int(p), k


def _poly_mod(num: list[int], den: tuple[int, ...], p: int) -> list[int]:
    """Remainder of num by the monic polynomial den over Z_p (constant term first)."""
    num = [c % p for c in num]
    deg = len(den) - 1
    for i in range(len(num) - 1, deg - 1, -1):
        coef = num[i]
        if coef:
            for j in range(deg + 1):
                num[i - deg + j] = (num[i - deg + j] - coef * den[j]) % p
    return num[:deg] + [0] * (deg - len(num[:deg]))


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """
    Trial division of a monic polynomial by all monic polynomials of degree 1..k//2.

    The degree-1 "modulus" x used for prime fields counts as irreducible.
    """
    k = len(coeffs) - 1
    if k < 1 or coeffs[-1] % p != 1:
        return False
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_mod(list(coeffs), tuple(low) + (1,), p)):
                return False
    return True


class FieldSpec:
    """
    Description of GF(p^k): characteristic, degree and modulus.

    Attributes
    ----------
    p : int
        The characteristic.
    k : int
        Extension degree.
    modulus : tuple of int
        Monic irreducible polynomial of degree k, constant term first. For k = 1
        it is the placeholder x and arithmetic is plain arithmetic mod p.
    q : int
        Number of elements.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p) or k < 1:
            raise InputError(f"GF({p}^{k}) is not a field description")
        if modulus is None:
            modulus = (0, 1) if k == 1 else _smallest_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or not is_irreducible(modulus, p):
            raise InputError(f"{modulus} is not a monic irreducible polynomial of degree {k} over Z_{p}")
        if k == 1 and modulus != (0, 1):
            raise InputError("prime fields use the modulus placeholder x")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p ** k

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldSpec)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __str__(self) -> str:
        return f"GF({self.q})"

    def element(self, value) -> FieldElement:
        """
        Element from an index (int) or a coefficient vector (constant term first).

        For prime fields an int is read as the residue itself.
        """
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatchError(f"{value!r} does not belong to {self}")
            return value
        if isinstance(value, (int, np.integer)):
            if self.k == 1:
                return FieldElement(self, (int(value) % self.p,))
            if not 0 <= value < self.q:
                raise InputError(f"index {value} out of range for {self}")
            digits = []
            for _ in range(self.k):
                value, digit = divmod(int(value), self.p)
                digits.append(digit)
            return FieldElement(self, tuple(reversed(digits)))
        coeffs = tuple(int(c) for c in value)
        if len(coeffs) != self.k or any(not 0 <= c < self.p for c in coeffs):
            raise InputError(f"{coeffs} is not a reduced coefficient vector of {self}")
        return FieldElement(self, coeffs)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.k)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def elements(self) -> Iterator[FieldElement]:
        """All q elements in canonical order (lexicographic, constant term compared first)."""
        for coeffs in product(range(self.p), repeat=self.k):
            yield FieldElement(self, coeffs)

    def nonzero(self) -> Iterator[FieldElement]:
        return (e for e in self.elements() if e)

    @cached_property
    def generator(self) -> FieldElement:
        """First element in canonical order whose multiplicative order is q - 1."""
        for candidate in self.nonzero():
            if candidate.order() == self.q - 1:
                logger.debug("%s: generator %s", self, candidate)
                return candidate
        raise InputError(f"{self} has no generator")  # unreachable for a field

    @cached_property
    def _exp_table(self) -> tuple[FieldElement, ...]:
        g = self.generator
        table, x = [], self.one
        for _ in range(self.q - 1):
            table.append(x)
            x = x * g
        return tuple(table)

    @cached_property
    def _log_table(self) -> dict:
        return _swap_dict_keys_values(dict(enumerate(self._exp_table)))

    def exp(self, e: int) -> FieldElement:
        """g^e for the canonical generator g."""
        return self._exp_table[e % (self.q - 1)]

    def power_table(self, g: FieldElement) -> dict:
        """{e: g^e} for 0 <= e < q - 1; g must generate the multiplicative group."""
        g = self.element(g)
        if not g:
            raise InputError(f"zero is not a generator of {self}")
        if g == self.generator:
            return dict(enumerate(self._exp_table))
        table, x = {}, self.one
        for e in range(self.q - 1):
            if e > 0 and x == self.one:
                raise InputError(f"{g} is not a generator of {self}")
            table[e] = x
            x = x * g
        return table

    def dlog(self, g: FieldElement, a: FieldElement) -> int:
        """The unique e in [0, q-1) with g^e = a, read from a power table."""
        a = self.element(a)
        if not a:
            raise DomainError(f"logarithm of zero in {self}")
        g = self.element(g)
        if g == self.generator:
            return self._log_table[a]
        return _swap_dict_keys_values(self.power_table(g))[a]

    @cached_property
    def mul_table(self) -> np.ndarray:
        """q x q array of products over element indices."""
        elems = list(self.elements())
        table = np.zeros((self.q, self.q), dtype=np.int64)
        for i, x in enumerate(elems):
            for j in range(i, self.q):
                table[i, j] = table[j, i] = (x * elems[j]).index
        return table

    def metadata(self) -> dict:
        """Description stored with covers so coordinates can be reinterpreted elsewhere."""
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus),
                "generator": list(self.generator.coeffs)}


class FieldElement:
    """
    An element of GF(p^k) as a reduced coefficient vector, constant term first.

    Supports ``+ - * / **``, unary minus, `inv()` and comparison by value with
    elements of the same field. Plain ints take part in arithmetic but never
    compare equal to an element.
    Operands from different fields raise `FieldMismatchError`.
    """
    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple[int, ...]):
        self.spec = spec
        self.coeffs = coeffs

    def _other(self, other) -> FieldElement:
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return self.spec.one.scale(int(other))
        if not isinstance(other, FieldElement):
            raise FieldMismatchError(f"cannot combine {self!r} with {other!r}")
        if other.spec != self.spec:
            raise FieldMismatchError(f"operands from {self.spec!r} and {other.spec!r}")
        return other

    def scale(self, c: int) -> FieldElement:
        p = self.spec.p
        return FieldElement(self.spec, tuple((c * x) % p for x in self.coeffs))

    def __add__(self, other) -> FieldElement:
        other = self._other(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return self.scale(-1)

    def __sub__(self, other) -> FieldElement:
        return self + (-self._other(other))

    def __rsub__(self, other) -> FieldElement:
        return self._other(other) - self

    def __mul__(self, other) -> FieldElement:
        other = self._other(other)
        spec = self.spec
        prod = [0] * (2 * spec.k - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    prod[i + j] += x * y
        return FieldElement(spec, tuple(_poly_mod(prod, spec.modulus, spec.p)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inv() ** (-e)
        result, base = self.spec.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> FieldElement:
        """Multiplicative inverse, a^(q-2)."""
        if not self:
            raise DomainError(f"zero has no inverse in {self.spec}")
        return self ** (self.spec.q - 2)

    def __truediv__(self, other) -> FieldElement:
        return self * self._other(other).inv()

    def order(self) -> int:
        """Multiplicative order."""
        if not self:
            raise DomainError("zero has no multiplicative order")
        one, x, e = self.spec.one, self, 1
        while x != one:
            x = x * self
            e += 1
        return e

    @property
    def index(self) -> int:
        value = 0
        for c in self.coeffs:
            value = value * self.spec.p + c
        return value

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        # never equal to a plain int; convert with spec.element first
        return (isinstance(other, FieldElement) and self.spec == other.spec
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.spec.q, self.coeffs))

    def __lt__(self, other: FieldElement) -> bool:
        return self.coeffs < self._other(other).coeffs

    def __repr__(self) -> str:
        return f"FieldElement({self.spec}, {self.coeffs})"

    def __str__(self) -> str:
        if self.spec.k == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        return "+".join(reversed(terms)) or "0"


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for low in product(range(p), repeat=k):
        coeffs = tuple(low) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise InputError(f"no irreducible polynomial of degree {k} over Z_{p}")  # unreachable


@lru_cache(maxsize=None)
def field(q: int) -> FieldSpec:
    """The field with q elements and the canonical modulus."""
    p, k = prime_power(q)
    spec = FieldSpec(p, k)
    logger.debug("field(%d): p=%d k=%d modulus=%s", q, p, k, spec.modulus)
    return spec


# module-level operation forms
def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def power(a: FieldElement, e: int) -> FieldElement:
    return a ** e


def generator(spec: FieldSpec) -> FieldElement:
    return spec.generator


def dlog(spec: FieldSpec, g: FieldElement, a: FieldElement) -> int:
    return spec.dlog(g, a)
