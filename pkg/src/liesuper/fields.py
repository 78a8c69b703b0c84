"""Exact scalar fields: the rationals and prime fields GF(p) with p >= 5."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

# keeps every GF(p) dot product of small matrices inside int64
MAX_PRIME = 1 << 20

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^[+-]?\d+/\d+$")


class FieldError(ValueError):
    """Invalid field specification or a scalar that does not belong to the field."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``p is None``) or GF(p).

    Scalars are canonical Python values: ``Fraction`` in lowest terms for the
    rationals, ``int`` in ``0..p-1`` for GF(p). Arrays use ``dtype=object`` of
    ``Fraction`` and ``int64`` respectively.
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is None:
            return
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise FieldError(f"prime modulus must be an integer, got {self.p!r}")
        if not is_prime(int(self.p)):
            raise FieldError(f"GF({self.p}): modulus is not prime")
        if self.p in (2, 3):
            raise FieldError(f"GF({self.p}): characteristic 2 and 3 are not supported")
        if self.p >= MAX_PRIME:
            raise FieldError(f"GF({self.p}): modulus must be below {MAX_PRIME}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(int(p))

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def dtype(self):
        return np.int64 if self.p is not None else object

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    # -- scalars ---------------------------------------------------------------

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, or numeric string) into a canonical scalar."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (bool, float, np.floating)):
            raise FieldError(f"refusing inexact or boolean scalar {x!r}")
        if self.p is None:
            if isinstance(x, (int, np.integer)):
                return Fraction(int(x))
            if isinstance(x, Fraction):
                return x
            raise FieldError(f"{x!r} is not a rational scalar")
        if isinstance(x, (int, np.integer)):
            return int(x) % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in {self}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise FieldError(f"{x!r} is not a scalar of {self}")

    def parse(self, text: str):
        """Parse a coefficient string: ``"3"``, ``"-2"``, or ``"p/q"`` over Q."""
        s = text.strip()
        if _INT_RE.match(s):
            return self(int(s))
        if self.p is None and _FRAC_RE.match(s):
            num, den = s.split("/")
            if int(den) == 0:
                raise FieldError(f"zero denominator in {text!r}")
            return Fraction(int(num), int(den))
        kind = "an integer or p/q" if self.p is None else "an integer"
        raise FieldError(f"coefficient {text!r} is not {kind} over {self}")

    def format(self, x) -> str:
        return str(x)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(int(a), -1, self.p)

    def elements(self) -> Iterator[int]:
        if self.p is None:
            raise FieldError("the rationals are not enumerable")
        return iter(range(self.p))

    # -- arrays ----------------------------------------------------------------

    def array(self, data) -> np.ndarray:
        """Build a canonical array from nested data, rejecting foreign scalars."""
        if isinstance(data, np.ndarray) and self.p is not None and data.dtype.kind in "iu":
            return np.mod(data.astype(np.int64), self.p)
        raw = np.asarray(data, dtype=object)
        out = np.empty(raw.shape, dtype=object)
        flat_in = raw.reshape(-1)
        flat_out = out.reshape(-1)
        for idx, x in enumerate(flat_in):
            flat_out[idx] = self(x)
        if self.p is not None:
            return out.astype(np.int64)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.p is not None:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.p is None:
            return arr
        return np.mod(arr, self.p)

    def check_array(self, arr: np.ndarray) -> np.ndarray:
        """Reject arrays whose entries do not live in this field."""
        arr = np.asarray(arr)
        if self.p is None:
            if arr.dtype != object:
                if arr.dtype.kind in "iu":
                    return self.array(arr)
                raise FieldError(f"array of dtype {arr.dtype} is not over Q")
            for x in arr.reshape(-1):
                if not isinstance(x, (Fraction, int)) or isinstance(x, bool):
                    raise FieldError(f"entry {x!r} is not a rational")
            return self.array(arr)
        if arr.dtype.kind in "iu":
            if arr.size and (arr.min() < 0 or arr.max() >= self.p):
                raise FieldError(f"entries outside 0..{self.p - 1}: not canonical {self}")
            return arr.astype(np.int64)
        if arr.dtype == object:
            for x in arr.reshape(-1):
                if isinstance(x, Fraction) and x.denominator != 1:
                    raise FieldError(f"rational entry {x} in a {self} matrix")
                if not isinstance(x, (int, np.integer, Fraction)) or isinstance(x, bool):
                    raise FieldError(f"entry {x!r} is not in {self}")
                if not 0 <= int(x) < self.p:
                    raise FieldError(f"entry {x} is not a canonical {self} representative")
            return arr.astype(np.int64)
        raise FieldError(f"array of dtype {arr.dtype} is not over {self}")

    # -- serialization ---------------------------------------------------------

    def to_json(self):
        return "Q" if self.p is None else {"GF": self.p}

    @classmethod
    def from_json(cls, obj) -> "Field":
        if obj == "Q":
            return cls.rationals()
        if isinstance(obj, dict) and set(obj) == {"GF"}:
            p = obj["GF"]
            if isinstance(p, bool) or not isinstance(p, int):
                raise FieldError(f"GF modulus must be an integer, got {p!r}")
            return cls.gf(p)
        raise FieldError(f'field must be "Q" or {{"GF": p}}, got {obj!r}')

    @classmethod
    def from_string(cls, text: str) -> "Field":
        """Parse ``Q`` / ``QQ`` / ``GF(5)`` / ``GF5`` / ``5``."""
        s = text.strip().upper()
        if s in ("Q", "QQ"):
            return cls.rationals()
        m = re.match(r"^(?:GF\(?|F)?(\d+)\)?$", s)
        if not m:
            raise FieldError(f"cannot parse field {text!r}")
        return cls.gf(int(m.group(1)))


QQ = Field.rationals()


def GF(p: int) -> Field:
    return Field.gf(p)
