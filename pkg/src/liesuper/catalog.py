"""Bundled example algebras and a seeded random generator over GF(p)."""
from __future__ import annotations

import re

import numpy as np

from .algebra import AxiomViolation, LieSuperalgebra, direct_sum, validate
from .fields import QQ, Field, FieldError


def abelian(m: int, n: int, field: Field = QQ) -> LieSuperalgebra:
    """A(m|n): every bracket zero."""
    even = [f"x{i + 1}" for i in range(m)]
    odd = [f"y{i + 1}" for i in range(n)]
    return LieSuperalgebra(field, even, odd, field.zeros((m + n,) * 3), name=f"A({m}|{n})")


def hodd(field: Field = QQ) -> LieSuperalgebra:
    """x even, y odd, [y, y] = x."""
    return validate(field, ["x"], ["y"], {("y", "y"): {"x": 1}}, name="Hodd")


def hev(field: Field = QQ) -> LieSuperalgebra:
    """Three-dimensional Heisenberg Lie algebra [x1, x2] = z, as a (3|0) superalgebra."""
    return validate(field, ["x1", "x2", "z"], [], {("x1", "x2"): {"z": 1}}, name="Hev")


def _with_abelian(L: LieSuperalgebra, a: int, b: int, field: Field) -> LieSuperalgebra:
    A = abelian(a, b, field)
    A = A.renamed([f"a{i + 1}" for i in range(a)], [f"c{i + 1}" for i in range(b)])
    return direct_sum(L, A, name=f"{L.name}+A({a}|{b})")


def hodd_plus(a: int, b: int, field: Field = QQ) -> LieSuperalgebra:
    """Hodd + A(a|b)."""
    return _with_abelian(hodd(field), a, b, field)


def hev_plus(a: int, b: int, field: Field = QQ) -> LieSuperalgebra:
    """Hev + A(a|b)."""
    return _with_abelian(hev(field), a, b, field)


def random_algebra(
    field: Field,
    seed: int,
    max_total: int = 4,
    density: float = 0.35,
    max_tries: int = 100_000,
    allow_abelian: bool = False,
) -> LieSuperalgebra:
    """Seeded rejection sampling of a valid algebra of total dimension <= ``max_total``.

    Dimensions are drawn first (total at least 2 unless ``max_total`` is 1);
    then each grading-compatible slot of the upper triangle is nonzero with
    probability ``density``. Candidates failing the Jacobi identity, and
    abelian ones unless ``allow_abelian``, are redrawn.
    """
    if not field.is_finite:
        raise FieldError("random algebras are sampled over GF(p) only")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        total = int(rng.integers(min(2, max_total), max_total + 1))
        m = int(rng.integers(0, total + 1))
        n = total - m
        par = [0] * m + [1] * n
        even = [f"e{i + 1}" for i in range(m)]
        odd = [f"o{i + 1}" for i in range(n)]
        table = {}
        for i in range(total):
            for j in range(i, total):
                if i == j and par[i] == 0:
                    continue
                terms = {}
                for k in range(total):
                    if par[k] != par[i] ^ par[j]:
                        continue
                    if rng.random() < density:
                        terms[k] = int(rng.integers(1, field.p))
                if terms:
                    table[(i, j)] = terms
        if not table and not allow_abelian:
            continue
        try:
            return validate(field, even, odd, table, name=f"random({field.p},{seed})")
        except AxiomViolation:
            continue
    raise RuntimeError(f"no valid algebra found after {max_tries} draws")


_NAME_RE = re.compile(r"^\s*(?P<base>A\((?P<m>\d+)\|(?P<n>\d+)\)|Hodd|Hev)(?:\s*\+\s*A\((?P<a>\d+)\|(?P<b>\d+)\))?\s*$")
_RANDOM_RE = re.compile(r"^\s*random\((?P<p>\d+),(?P<seed>\d+)(?:,(?P<dim>\d+))?\)\s*$")


def by_name(name: str, field: Field = QQ) -> LieSuperalgebra:
    """Look up ``A(m|n)``, ``Hodd``, ``Hev``, ``Hodd+A(a|b)``, ``Hev+A(a|b)``, ``random(p,seed[,dim])``."""
    r = _RANDOM_RE.match(name)
    if r:
        p = int(r.group("p"))
        if field.is_finite and field.p != p:
            raise FieldError(f"{name} is over GF({p}), not {field}")
        return random_algebra(Field.gf(p), int(r.group("seed")), int(r.group("dim") or 4))
    mt = _NAME_RE.match(name)
    if not mt:
        raise KeyError(f"unknown catalog entry {name!r}")
    base = mt.group("base")
    if base == "Hodd":
        L = hodd(field)
    elif base == "Hev":
        L = hev(field)
    else:
        L = abelian(int(mt.group("m")), int(mt.group("n")), field)
    if mt.group("a") is not None:
        a, b = int(mt.group("a")), int(mt.group("b"))
        if base == "Hodd":
            return hodd_plus(a, b, field)
        if base == "Hev":
            return hev_plus(a, b, field)
        return abelian(L.dim.even + a, L.dim.odd + b, field)
    return L


CATALOG_NAMES = ("A(0|1)", "A(1|0)", "A(1|1)", "A(2|0)", "A(2|1)", "Hodd", "Hev", "Hodd+A(1|0)", "Hodd+A(2|1)", "Hev+A(0|1)")


def catalog(field: Field = QQ) -> list[LieSuperalgebra]:
    """The fixed catalog used by the test and acceptance suites."""
    return [by_name(nm, field) for nm in CATALOG_NAMES]
