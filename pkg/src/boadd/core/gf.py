# boadd - bounded-strength decoupling schemes from balanced-cycle orthogonal arrays
# Copyright (C) 2024 Paweł Głomski

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published
# by the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU Affero General Public License for more details.

# You should have received a copy of the GNU Affero General Public License
# along with this program. If not, see <https://www.gnu.org/licenses/>.

"""Arithmetic in GF(p^e) on top of `galois` field arrays.

Elements are encoded as integers 0..q-1 whose base-p digits (little-endian) are the coordinates
w.r.t. the power basis {1, x, ..., x^(e-1)} of the modulus root, which is the integer
representation `galois` uses. Scalar code goes through `FieldElement`, array code calls the
vectorized methods of `FiniteField` on plain integer numpy arrays.
"""

from __future__ import annotations

import dataclasses as dclass
import enum
import functools
import math

import galois
import numpy as np

from boadd.log import logger


MAX_ORDER = 2**16
MAX_DEGREE = 8

# ascending coefficients, leading 1 included
_MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (1, 0, 1),
}

# --------------------------------------------- Utils -------------------------------------------- #


def prime_power(q: int) -> tuple[int, int]:
    """Splits a field order into its characteristic and extension degree.

    Args:
        q (int): Field order

    Returns:
        tuple[int, int]: (p, e) such that q = p^e
    """
    if q < 2 or not galois.is_prime_power(q):
        raise ValueError(f"{q} is not a prime power")
    primes, exponents = galois.factors(q)
    return int(primes[0]), int(exponents[0])


def _ints(values) -> np.ndarray:
    return np.asarray(values.view(np.ndarray), dtype=np.int64)


def _prime_poly(coeffs: tuple[int, ...], p: int) -> galois.Poly:
    return galois.Poly(list(reversed(coeffs)), field=galois.GF(p))


def _ascending(poly: galois.Poly) -> tuple[int, ...]:
    return tuple(int(coef) for coef in poly.coeffs[::-1])


# ------------------------------------------ FiniteField ----------------------------------------- #


class FieldOp(enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


@dclass.dataclass(frozen=True)
class FiniteField:
    class MismatchError(ValueError):
        pass

    p: int
    e: int
    modulus: tuple[int, ...]

    GF: type[galois.FieldArray] = dclass.field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise ValueError(f"Modulus {self.modulus} is not monic of degree {self.e}")
        modulus = _prime_poly(self.modulus, self.p)
        if not modulus.is_irreducible():
            raise ValueError(f"Modulus {self.modulus} is reducible over GF({self.p})")

        if self.e == 1:
            # GF(p) does not depend on the (linear) modulus, only alpha does
            field_array = galois.GF(self.p)
        else:
            primitive = galois.primitive_element(modulus, method="min")
            field_array = galois.GF(
                self.p**self.e, irreducible_poly=modulus, primitive_element=primitive
            )
        object.__setattr__(self, "GF", field_array)

    def __str__(self) -> str:
        return f"GF({self.q})"

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    # --------------------------------------- elements --------------------------------------- #

    def element(self, value: int | tuple[int, ...] | list[int]) -> FieldElement:
        if isinstance(value, (tuple, list)):
            return FieldElement.from_coords(self, value)
        return FieldElement(self, int(value))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, value) for value in range(self.q)]

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def alpha(self) -> FieldElement:
        """Root of the modulus, i.e. the element whose powers form the coordinate basis."""
        if self.e == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def primitive_element(self) -> FieldElement:
        return FieldElement(self, int(self.GF.primitive_element))

    def basis(self) -> list[FieldElement]:
        """The fixed F_p-basis {1, alpha, ..., alpha^(e-1)} of the field."""
        return [FieldElement(self, self.p**i) for i in range(self.e)]

    def array(self, values) -> galois.FieldArray:
        return self.GF(self.validate(values))

    def coords(self, values: np.ndarray | int) -> np.ndarray:
        return _ints(self.array(values).vector())[..., ::-1]

    def from_coords(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64) % self.p
        return _ints(self.GF.Vector(coords[..., ::-1]))

    def validate(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=np.int64)
        if values.size and (values.min() < 0 or values.max() >= self.q):
            raise ValueError(f"Values outside of {self} encodings 0..{self.q - 1}")
        return values

    # ---------------------------------- vectorized arithmetic ---------------------------------- #

    def add(self, a, b) -> np.ndarray:
        return _ints(self.array(a) + self.array(b))

    def neg(self, a) -> np.ndarray:
        return _ints(-self.array(a))

    def sub(self, a, b) -> np.ndarray:
        return _ints(self.array(a) - self.array(b))

    def mul(self, a, b) -> np.ndarray:
        return _ints(self.array(a) * self.array(b))

    def inv(self, a) -> np.ndarray:
        a = self.array(a)
        if np.any(a == 0):
            raise ZeroDivisionError(f"Division by zero in {self}")
        return _ints(np.reciprocal(a))

    def div(self, a, b) -> np.ndarray:
        return self.mul(a, self.inv(b))

    def power(self, a: int, exponent: int) -> int:
        return int(self.array(a) ** exponent)

    def log(self, a: int) -> int:
        """Discrete logarithm w.r.t. `primitive_element()`."""
        if a == 0:
            raise ZeroDivisionError(f"Logarithm of zero in {self}")
        return int(self.array(a).log())

    def exp(self, exponent: int) -> int:
        return int(self.GF.primitive_element ** (exponent % (self.q - 1)))

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = self.array(a), self.array(b)
        if a.shape[-1] != b.shape[0]:
            raise ValueError(f"Incompatible shapes {a.shape} and {b.shape}")
        return _ints(a @ b)

    # -------------------------------------- linear algebra ------------------------------------- #

    def row_reduce(self, matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Computes the reduced row echelon form over the field.

        Args:
            matrix (np.ndarray): 2-dimensional array of element encodings

        Returns:
            tuple[np.ndarray, list[int]]: The reduced matrix and its pivot columns
        """
        matrix = self.validate(matrix)
        assert matrix.ndim == 2
        if 0 in matrix.shape:
            return matrix.copy(), []

        reduced = _ints(self.GF(matrix).row_reduce())
        pivots = [int(np.flatnonzero(row)[0]) for row in reduced if np.any(row)]
        return reduced, pivots

    def rank(self, matrix: np.ndarray) -> int:
        matrix = self.validate(matrix)
        if 0 in matrix.shape:
            return 0
        return int(np.linalg.matrix_rank(self.GF(matrix)))

    def null_space(self, matrix: np.ndarray) -> np.ndarray:
        """Basis of {x : matrix @ x = 0}, returned as the columns of a (cols, cols - rank) array."""
        matrix = self.validate(matrix)
        if matrix.shape[0] == 0:
            return np.eye(matrix.shape[1], dtype=np.int64)
        return _ints(self.GF(matrix).null_space().T)


@functools.lru_cache(maxsize=None)
def field_create(p: int, e: int) -> FiniteField:
    """Creates GF(p^e) with a deterministic modulus: a fixed table for the small fields and the
    lexicographically least irreducible polynomial otherwise.
    """
    if not galois.is_prime(p):
        raise ValueError(f"Characteristic {p} is not prime")
    if not 1 <= e <= MAX_DEGREE:
        raise ValueError(f"Extension degree {e} outside of 1..{MAX_DEGREE}")
    if p**e > MAX_ORDER:
        raise ValueError(f"Field order {p}^{e} exceeds {MAX_ORDER}")

    if (p, e) in _MODULUS_TABLE:
        modulus = _MODULUS_TABLE[p, e]
    elif e == 1:
        modulus = (-galois.primitive_root(p) % p, 1)
    else:
        modulus = _ascending(galois.irreducible_poly(p, e, method="min"))
    field = FiniteField(p, e, modulus)
    logger.debug(
        f"Created {field} with modulus {modulus} and primitive element {field.primitive_element()}"
    )
    return field


def field_of_order(q: int) -> FiniteField:
    return field_create(*prime_power(q))


# ----------------------------------------- FieldElement ----------------------------------------- #


@dclass.dataclass(frozen=True, slots=True)
class FieldElement:
    field: FiniteField
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} does not encode an element of {self.field}")

    @staticmethod
    def from_coords(field: FiniteField, coords: tuple[int, ...] | list[int]) -> FieldElement:
        if len(coords) != field.e or any(not 0 <= coord < field.p for coord in coords):
            raise ValueError(f"{coords} are not coordinates of an element of {field}")
        return FieldElement(field, int(field.from_coords(coords)))

    def __str__(self) -> str:
        return str(self.value)

    def __int__(self) -> int:
        return self.value

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(int(coord) for coord in self.field.coords(self.value))

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def _other(self, other: FieldElement) -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"Expected a FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FiniteField.MismatchError(f"Operands from {self.field} and {other.field}")
        return other.value

    def __add__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, int(self.field.add(self.value, self._other(other))))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, int(self.field.sub(self.value, self._other(other))))

    def __mul__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, int(self.field.mul(self.value, self._other(other))))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, int(self.field.div(self.value, self._other(other))))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, int(self.field.neg(self.value)))

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(self.field, self.field.power(self.value, exponent))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, int(self.field.inv(self.value)))

    def order(self) -> int:
        """Multiplicative order."""
        if self.is_zero:
            raise ZeroDivisionError("Zero has no multiplicative order")
        return int(self.field.array(self.value).multiplicative_order())


def arith(a: FieldElement, b: FieldElement, op: FieldOp | str) -> FieldElement:
    match FieldOp(op):
        case FieldOp.ADD:
            return a + b
        case FieldOp.SUB:
            return a - b
        case FieldOp.MUL:
            return a * b
        case FieldOp.DIV:
            return a / b


# ------------------------------------------ Polynomial ------------------------------------------ #


@dclass.dataclass(frozen=True)
class Polynomial:
    """Polynomial with coefficients (ascending, as element encodings) in `field`."""

    field: FiniteField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(coef) for coef in self.coeffs)
        if any(not 0 <= coef < self.field.q for coef in coeffs):
            raise ValueError(f"Coefficients {coeffs} outside of {self.field}")
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @staticmethod
    def from_galois(field: FiniteField, poly: galois.Poly) -> Polynomial:
        return Polynomial(field, _ascending(poly))

    @staticmethod
    def from_roots(field: FiniteField, roots: list[int]) -> Polynomial:
        return Polynomial.from_galois(field, galois.Poly.Roots(field.array(roots), field=field.GF))

    @property
    def poly(self) -> galois.Poly:
        return galois.Poly(list(reversed(self.coeffs)) or [0], field=self.field.GF)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = [
            (f"{coef}*" if coef != 1 or power == 0 else "") + (f"x^{power}" if power else "")
            for power, coef in enumerate(self.coeffs)
            if coef
        ]
        return " + ".join(reversed([term.rstrip("*") for term in terms]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def coefficients(self) -> list[FieldElement]:
        return [FieldElement(self.field, coef) for coef in self.coeffs]

    def monic(self) -> Polynomial:
        if self.is_zero:
            return self
        leading = galois.Poly([self.poly.coeffs[0]], field=self.field.GF)
        return Polynomial.from_galois(self.field, self.poly // leading)

    def _check(self, other: Polynomial) -> None:
        if other.field != self.field:
            raise FiniteField.MismatchError(f"Polynomials over {self.field} and {other.field}")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        return Polynomial.from_galois(self.field, self.poly + other.poly)

    def __neg__(self) -> Polynomial:
        return Polynomial.from_galois(self.field, -self.poly)

    def __sub__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        return Polynomial.from_galois(self.field, self.poly - other.poly)

    def __mul__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        return Polynomial.from_galois(self.field, self.poly * other.poly)

    def __divmod__(self, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
        self._check(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("Polynomial division by zero")
        quotient, remainder = divmod(self.poly, divisor.poly)
        return Polynomial.from_galois(self.field, quotient), Polynomial.from_galois(
            self.field, remainder
        )

    def __mod__(self, divisor: Polynomial) -> Polynomial:
        return divmod(self, divisor)[1]

    def evaluate(self, x: FieldElement) -> FieldElement:
        if x.field != self.field:
            raise FiniteField.MismatchError(f"Evaluating a polynomial over {self.field} at {x}")
        return FieldElement(self.field, int(self.poly(self.field.array(x.value))))

    def evaluate_in(self, x: FieldElement) -> FieldElement:
        """Evaluates at an element of an extension of the coefficient field."""
        embedding = embed_subfield(x.field, self.field)
        return Polynomial(x.field, tuple(embedding[list(self.coeffs)])).evaluate(x)


# ---------------------------------- Subfields, cosets, minimal ---------------------------------- #


@functools.lru_cache(maxsize=None)
def embed_subfield(ext: FiniteField, base: FiniteField) -> np.ndarray:
    """Fixed embedding of `base` into `ext`: the base modulus root is sent to its smallest-encoded
    root in `ext`.

    Returns:
        np.ndarray: `ext` encodings of the base elements, indexed by base encodings
    """
    if base.p != ext.p or ext.e % base.e != 0:
        raise FiniteField.MismatchError(f"{base} is not a subfield of {ext}")

    # the base modulus has coefficients in the prime field, shared by both fields
    roots = galois.Poly(list(reversed(base.modulus)), field=ext.GF).roots()
    root = ext.GF(int(np.min(_ints(roots))))
    root_powers = root ** np.arange(base.e)

    images = _ints(ext.GF(base.coords(np.arange(base.q))) @ root_powers)
    images.setflags(write=False)
    return images


def cyclotomic_coset(i: int, n: int, q: int, m: int | None = None) -> frozenset[int]:
    """The q-cyclotomic coset {i, iq, iq^2, ...} mod n.

    Args:
        i (int): Coset representative, 0 <= i < n
        n (int): Modulus, must divide q^m - 1 when `m` is given (else be coprime with q)
        q (int): Field order
        m (int | None): Extension degree of the working field

    Returns:
        frozenset[int]: The coset
    """
    if not 0 <= i < n:
        raise ValueError(f"Representative {i} outside of 0..{n - 1}")
    if m is not None:
        if (q**m - 1) % n != 0:
            raise ValueError(f"{n} does not divide {q}^{m} - 1")
    elif math.gcd(n, q) != 1:
        raise ValueError(f"{n} and {q} are not coprime")

    coset = set[int]()
    member = i
    while member not in coset:
        coset.add(member)
        member = member * q % n
    return frozenset(coset)


def minimal_polynomial(beta: FieldElement, base: FiniteField) -> Polynomial:
    """Monic polynomial over `base` of least degree annihilating `beta`.

    Over the prime field this is `galois`' minimal polynomial; over a larger subfield it is the
    product of (x - c) over the conjugates c = beta^(q^j), whose coefficients lie in `base`.
    """
    ext = beta.field
    embedding = embed_subfield(ext, base)
    if base.is_prime:
        return Polynomial.from_galois(base, ext.array(beta.value).minimal_poly())

    conjugates = list[int]()
    conjugate = beta.value
    while conjugate not in conjugates:
        conjugates.append(conjugate)
        conjugate = ext.power(conjugate, base.q)

    product = Polynomial.from_roots(ext, conjugates)
    restriction = {int(image): value for value, image in enumerate(embedding)}
    assert all(coef in restriction for coef in product.coeffs), "Coefficients outside subfield"
    return Polynomial(base, tuple(restriction[coef] for coef in product.coeffs))
