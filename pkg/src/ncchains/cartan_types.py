"""Named Cartan types and the plain-text Cartan file format.

Finite types are built from explicit simple roots in Euclidean space, so the
Cartan entries come out as 2(α_i, α_j)/(α_i, α_i).  The untwisted affine
type X~k prepends the node α_0 = -θ (θ the highest root of X_k), except for
A~(n-1), whose n nodes are numbered so that node i is the reflection
swapping the points i and i+1 of the annulus model.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .roots import CartanError, CartanMatrix, RootDatum

F = Fraction


def _unit(dim: int, i: int, c=1) -> list:
    v = [F(0)] * dim
    v[i] = F(c)
    return v


def _simple_roots(family: str, k: int) -> list[list[Fraction]]:
    if family == "A":
        if k < 1:
            raise CartanError("A_k needs k >= 1")
        return [[F(1) if j == i else F(-1) if j == i + 1 else F(0) for j in range(k + 1)] for i in range(k)]
    if family in "BCD":
        base = [[F(1) if j == i else F(-1) if j == i + 1 else F(0) for j in range(k)] for i in range(k - 1)]
        if family == "B":
            if k < 2:
                raise CartanError("B_k needs k >= 2")
            return base + [_unit(k, k - 1)]
        if family == "C":
            if k < 2:
                raise CartanError("C_k needs k >= 2")
            return base + [_unit(k, k - 1, 2)]
        if k < 4:
            raise CartanError("D_k needs k >= 4")
        last = [F(0)] * k
        last[k - 2] = last[k - 1] = F(1)
        return base + [last]
    if family == "F":
        if k != 4:
            raise CartanError("F only exists in rank 4")
        h = F(1, 2)
        return [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [h, -h, -h, -h]]
    if family == "G":
        if k != 2:
            raise CartanError("G only exists in rank 2")
        return [[1, -1, 0], [-2, 1, 1]]
    if family == "E":
        if k not in (6, 7, 8):
            raise CartanError("E_k needs k in 6, 7, 8")
        h = F(1, 2)
        e8 = [
            [h, -h, -h, -h, -h, -h, -h, h],
            [1, 1, 0, 0, 0, 0, 0, 0],
            [-1, 1, 0, 0, 0, 0, 0, 0],
            [0, -1, 1, 0, 0, 0, 0, 0],
            [0, 0, -1, 1, 0, 0, 0, 0],
            [0, 0, 0, -1, 1, 0, 0, 0],
            [0, 0, 0, 0, -1, 1, 0, 0],
            [0, 0, 0, 0, 0, -1, 1, 0],
        ]
        return [[F(x) for x in row] for row in e8[:k]]
    raise CartanError(f"unknown family {family!r}")


def _ip(u, v):
    return sum(F(x) * F(y) for x, y in zip(u, v))


def _cartan_from_roots(roots: Sequence[Sequence]) -> CartanMatrix:
    n = len(roots)
    a = [[int(2 * _ip(roots[i], roots[j]) / _ip(roots[i], roots[i])) for j in range(n)] for i in range(n)]
    d = [_ip(r, r) / 2 for r in roots]
    return CartanMatrix(a, d)


def _highest_root(simple: Sequence[Sequence]) -> list:
    datum = RootDatum(_cartan_from_roots(simple))
    top = max(datum.positive_roots, key=sum)
    dim = len(simple[0])
    return [sum(F(c) * F(r[j]) for c, r in zip(top, simple)) for j in range(dim)]


def finite_cartan(family: str, k: int) -> CartanMatrix:
    return _cartan_from_roots(_simple_roots(family, k))


def affine_cartan(family: str, k: int) -> CartanMatrix:
    if family == "A":
        n = k + 1
        if n == 2:
            return CartanMatrix([[2, -2], [-2, 2]])
        a = [[2 if i == j else -1 if (i - j) % n in (1, n - 1) else 0 for j in range(n)] for i in range(n)]
        return CartanMatrix(a)
    simple = _simple_roots(family, k)
    theta = _highest_root(simple)
    return _cartan_from_roots([[-x for x in theta]] + simple)


def annulus_cox_word(n: int, outer: Sequence[int]) -> tuple:
    """Defining word for the A~(n-1) Coxeter element with the given outer points.

    Node i (1-based) precedes node i+1 (cyclically) exactly when the point
    i+1 is outer; any linear extension of that orientation works.
    """
    outer = {int(a) for a in outer}
    if not outer or len(outer) == n or not outer <= set(range(1, n + 1)):
        raise CartanError("outer points must be a proper nonempty subset of 1..n")
    before = {i: set() for i in range(1, n + 1)}  # i -> nodes that must come before i
    for i in range(1, n + 1):
        j = i % n + 1
        if j in outer:
            before[j].add(i)
        else:
            before[i].add(j)
    order: list[int] = []
    remaining = set(range(1, n + 1))
    while remaining:
        ready = sorted(i for i in remaining if before[i] <= set(order))
        order.append(ready[0])
        remaining.remove(ready[0])
    return tuple(i - 1 for i in order)


_NAME = re.compile(r"^\s*([A-G])(~?)(\d+)\s*(?::(.*))?$")


def _parse_options(text: str | None) -> dict:
    opts: dict = {}
    if not text:
        return opts
    for part in re.split(r"[;:]", text):
        if not part.strip():
            continue
        if "=" not in part:
            raise CartanError(f"malformed type option {part!r}")
        key, value = part.split("=", 1)
        opts[key.strip().lower()] = [int(x) for x in re.split(r"[,\s]+", value.strip()) if x]
    return opts


def datum_from_name(name: str) -> RootDatum:
    """Parse names like ``A3``, ``B3``, ``D~4``, ``F~4`` or ``A~3:outer=1,3``.

    The option ``cox=...`` gives an explicit 1-based defining word.  For A~
    types without options the outer points default to 1..n//2.
    """
    m = _NAME.match(name)
    if not m:
        raise CartanError(f"cannot parse type name {name!r}")
    family, tilde, k, rest = m.group(1), m.group(2), int(m.group(3)), m.group(4)
    opts = _parse_options(rest)
    if tilde:
        cartan = affine_cartan(family, k)
    else:
        cartan = finite_cartan(family, k)
    n = cartan.n
    label = f"{family}{tilde}{k}"
    if "cox" in opts:
        word = tuple(i - 1 for i in opts["cox"])
    elif tilde and family == "A" and n >= 3:
        outer = opts.get("outer") or list(range(1, n // 2 + 1))
        word = annulus_cox_word(n, outer)
        label += ":outer=" + ",".join(str(a) for a in sorted(outer))
    else:
        word = None
    for key in opts:
        if key not in ("cox", "outer"):
            raise CartanError(f"unknown type option {key!r}")
    if "outer" in opts and not (tilde and family == "A"):
        raise CartanError("outer= only applies to A~ types")
    return RootDatum(cartan, word, name=label)


def parse_cartan_text(text: str, name: str = "custom") -> RootDatum:
    """First line n, then n rows of integers, then optional ``d:`` and ``cox:`` lines."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise CartanError("empty Cartan file")
    try:
        n = int(lines[0])
        rows = [[int(x) for x in ln.split()] for ln in lines[1:n + 1]]
    except ValueError as exc:
        raise CartanError(f"malformed Cartan file: {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise CartanError(f"expected {n} rows of {n} integers")
    d = word = None
    for ln in lines[n + 1:]:
        key, _, value = ln.partition(":")
        key = key.strip().lower()
        try:
            if key == "d":
                d = [Fraction(x) for x in value.split()]
            elif key == "cox":
                word = [int(x) - 1 for x in value.split()]
            else:
                raise CartanError(f"unknown line {ln!r}")
        except ValueError as exc:
            raise CartanError(f"malformed {key!r} line: {exc}") from None
    return RootDatum(CartanMatrix(rows, d), word, name=name)


def load_datum(text: str) -> RootDatum:
    """A type name, or a path to a Cartan file."""
    path = Path(text)
    if path.exists():
        return parse_cartan_text(path.read_text(), name=path.stem)
    return datum_from_name(text)
