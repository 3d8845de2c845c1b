"""Textual group specifications, table files and the built-in catalog.

Grammar of the canonical text form::

    spec  := atom | 'product(' spec (',' spec)* ')' | 'quotient(' spec ';' label (',' label)* ')'
    atom  := 'q8' | 'q8ext' | 'cyclic:' n | 'elem2:' k | 'extraspecial:' p | 'table:' path

``q8ext`` is <Q8, g> with g central and g^2 = x^2 (order 16).
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    GroupError,
    OrderCapExceeded,
    Orientation,
    make_orientation,
    quotient_group,
    subgroup_generated,
)

ENV_CAP = "INVOLUTION_LAB_CAP_ORDER"


def default_order_cap() -> int:
    return int(os.environ.get(ENV_CAP, DEFAULT_ORDER_CAP))


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    params: tuple = ()
    children: tuple = ()

    def __str__(self) -> str:
        if self.kind in ("q8", "q8ext"):
            return self.kind
        if self.kind in ("cyclic", "elem2", "extraspecial", "table"):
            return f"{self.kind}:{self.params[0]}"
        if self.kind == "product":
            return "product(" + ", ".join(str(c) for c in self.children) + ")"
        if self.kind == "quotient":
            return f"quotient({self.children[0]}; " + ", ".join(self.params) + ")"
        raise GroupError(f"unknown spec kind {self.kind}")


def cyclic(n: int) -> GroupSpec:
    return GroupSpec("cyclic", (n,))


def elem2(k: int) -> GroupSpec:
    return GroupSpec("elem2", (k,))


def extraspecial(p: int) -> GroupSpec:
    return GroupSpec("extraspecial", (p,))


def table_file(path) -> GroupSpec:
    return GroupSpec("table", (str(path),))


Q8 = GroupSpec("q8")
Q8EXT = GroupSpec("q8ext")


def product(*specs: GroupSpec) -> GroupSpec:
    return GroupSpec("product", (), tuple(specs))


def quotient(spec: GroupSpec, gens) -> GroupSpec:
    return GroupSpec("quotient", tuple(gens), (spec,))


_TOKEN = re.compile(r"\s*(?:(product|quotient)\s*\(|([A-Za-z0-9_^*]+(?::[^,;()\s]+)?)|([,;)]))")


def parse_spec(text: str) -> GroupSpec:
    """Parse the canonical text form into a GroupSpec."""
    pos = 0

    def err(msg):
        return GroupError(f"bad group spec {text!r} at {pos}: {msg}")

    def peek():
        m = _TOKEN.match(text, pos)
        return m

    def parse() -> GroupSpec:
        nonlocal pos
        m = peek()
        if not m:
            raise err("expected a group")
        pos = m.end()
        if m.group(1) == "product":
            kids = [parse()]
            while True:
                m = peek()
                if not m or not m.group(3):
                    raise err("expected ',' or ')'")
                pos = m.end()
                if m.group(3) == ")":
                    return product(*kids)
                if m.group(3) != ",":
                    raise err("unexpected ';'")
                kids.append(parse())
        if m.group(1) == "quotient":
            base = parse()
            m = peek()
            if not m or m.group(3) != ";":
                raise err("expected ';' in quotient")
            pos = m.end()
            labels = []
            while True:
                m = peek()
                if not m or not m.group(2):
                    raise err("expected a generator label")
                labels.append(m.group(2))
                pos = m.end()
                m = peek()
                if not m or m.group(3) not in (",", ")"):
                    raise err("expected ',' or ')'")
                pos = m.end()
                if m.group(3) == ")":
                    return quotient(base, labels)
        word = m.group(2)
        if not word:
            raise err("expected an atom")
        name, _, arg = word.partition(":")
        if name in ("q8", "q8ext") and not arg:
            return GroupSpec(name)
        if name in ("cyclic", "elem2", "extraspecial"):
            if not arg.isdigit():
                raise err(f"{name} needs an integer argument")
            return GroupSpec(name, (int(arg),))
        if name == "table" and arg:
            return table_file(arg)
        raise err(f"unknown atom {word!r}")

    spec = parse()
    if text[pos:].strip():
        raise err("trailing input")
    return spec


# --- construction -----------------------------------------------------------


def _power_label(name: str, k: int) -> str:
    return "" if k == 0 else (name if k == 1 else f"{name}^{k}")


def _join(*parts: str) -> str:
    parts = [p for p in parts if p and p != "1"]
    return "*".join(parts) if parts else "1"


def _cyclic_group(n: int, name: str) -> FiniteGroup:
    a = np.arange(n)
    labels = [_power_label(name, k) or "1" for k in range(n)]
    return FiniteGroup((a[:, None] + a[None, :]) % n, labels, validate=False)


def _elem2_group(k: int, names: list[str]) -> FiniteGroup:
    a = np.arange(2**k)
    labels = ["".join(names[i] for i in range(k) if m >> i & 1) or "1" for m in range(2**k)]
    return FiniteGroup(a[:, None] ^ a[None, :], labels, validate=False)


def _q8_group() -> FiniteGroup:
    # x^a y^b <-> a + 4b ; y x = x^-1 y, y^2 = x^2
    def mul(i, j):
        a, b = i % 4, i // 4
        c, d = j % 4, j // 4
        e = (a + (c if b == 0 else -c)) % 4
        if b and d:
            e = (e + 2) % 4
        return e + 4 * ((b + d) % 2)

    table = [[mul(i, j) for j in range(8)] for i in range(8)]
    labels = [(_power_label("x", i % 4) + ("y" if i // 4 else "")) or "1" for i in range(8)]
    return FiniteGroup(table, labels)


def _extraspecial_group(p: int) -> FiniteGroup:
    # upper unitriangular 3x3 over F_p: (a, b, c)(a', b', c') = (a+a', b+b', c+c'+ab')
    n = p**3
    idx = np.arange(n)
    a, b, c = idx % p, (idx // p) % p, idx // (p * p)
    na = (a[:, None] + a[None, :]) % p
    nb = (b[:, None] + b[None, :]) % p
    nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    labels = [
        "".join(_power_label(s, k) for s, k in (("s", a[i]), ("t", b[i]), ("z", c[i]))) or "1"
        for i in range(n)
    ]
    return FiniteGroup(na + p * nb + p * p * nc, labels)


def _direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    m = B.order
    table = (A.mul[:, None, :, None] * m + B.mul[None, :, None, :]).reshape(A.order * m, A.order * m)
    labels = [_join(la, lb) for la in A.labels for lb in B.labels]
    return FiniteGroup(table, labels, validate=False)


def _q8ext_group() -> FiniteGroup:
    # C4 first so that coset representatives carry g-exponent 0 or 1
    q8, c4 = _q8_group(), _cyclic_group(4, "g")
    big = _direct_product(c4, q8)
    A = subgroup_generated(big, [big.m(big.index("x^2"), big.index("g^2"))])
    quo = quotient_group(big, A)
    labels = [_join(q8.labels[r % 8], c4.labels[r // 8]) for r in quo.representatives]
    return FiniteGroup(quo.group.mul, labels, validate=False)


def read_table_file(path) -> FiniteGroup:
    """Line 1: order n; then n rows of n whitespace-separated 1-based indices."""
    try:
        tokens = Path(path).read_text().split()
    except OSError as exc:
        raise GroupError(f"cannot read table file {path}: {exc}") from exc
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise GroupError(f"malformed table file {path}: non-integer entry") from exc
    if not nums:
        raise GroupError(f"malformed table file {path}: empty")
    n = nums[0]
    if n < 1 or len(nums) != 1 + n * n:
        raise GroupError(f"malformed table file {path}: expected {n * n} entries")
    table = np.asarray(nums[1:], dtype=np.int64).reshape(n, n) - 1
    if table.min() < 0 or table.max() >= n:
        raise GroupError(f"malformed table file {path}: index out of range")
    ident = [e for e in range(n) if np.array_equal(table[e], np.arange(n))]
    if len(ident) != 1:
        raise GroupError(f"malformed table file {path}: no unique identity")
    order = [ident[0]] + [e for e in range(n) if e != ident[0]]
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    relabelled = pos[table[np.ix_(order, order)]]
    labels = ["1"] + [f"t{e + 1}" for e in order[1:]]
    return FiniteGroup(relabelled, labels)


def write_table_file(G: FiniteGroup, path) -> None:
    lines = [str(G.order)] + [" ".join(str(int(v) + 1) for v in row) for row in G.mul]
    Path(path).write_text("\n".join(lines) + "\n")


def _spec_order(spec: GroupSpec) -> int | None:
    k = spec.kind
    if k == "q8":
        return 8
    if k == "q8ext":
        return 16
    if k == "cyclic":
        return spec.params[0]
    if k == "elem2":
        return 2 ** spec.params[0]
    if k == "extraspecial":
        return spec.params[0] ** 3
    if k == "product":
        out = 1
        for c in spec.children:
            o = _spec_order(c)
            if o is None:
                return None
            out *= o
        return out
    return None


def build_group(spec: GroupSpec | str, cap: int | None = None) -> FiniteGroup:
    """Build and validate the group described by ``spec``."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    cap = default_order_cap() if cap is None else cap
    expected = _spec_order(spec)
    if expected is not None and expected > cap:
        raise OrderCapExceeded(f"order {expected} exceeds cap {cap}")
    counters = {"h": 0, "e": 0}
    G = _build(spec, counters, cap)
    if G.order > cap:
        raise OrderCapExceeded(f"order {G.order} exceeds cap {cap}")
    return FiniteGroup(G.mul, G.labels, validate=True)


def _build(spec: GroupSpec, counters: dict, cap: int) -> FiniteGroup:
    k = spec.kind
    if k == "q8":
        return _q8_group()
    if k == "q8ext":
        return _q8ext_group()
    if k == "cyclic":
        n = spec.params[0]
        if n < 1:
            raise GroupError("cyclic order must be positive")
        counters["h"] += 1
        return _cyclic_group(n, f"h{counters['h']}")
    if k == "elem2":
        names = []
        for _ in range(spec.params[0]):
            counters["e"] += 1
            names.append(f"e{counters['e']}")
        return _elem2_group(spec.params[0], names)
    if k == "extraspecial":
        p = spec.params[0]
        if p % 2 == 0:
            raise GroupError("extraspecial groups here need an odd prime")
        return _extraspecial_group(p)
    if k == "table":
        return read_table_file(spec.params[0])
    if k == "product":
        out = _build(spec.children[0], counters, cap)
        for child in spec.children[1:]:
            nxt = _build(child, counters, cap)
            if out.order * nxt.order > cap:
                raise OrderCapExceeded(f"order {out.order * nxt.order} exceeds cap {cap}")
            out = _direct_product(out, nxt)
        return out
    if k == "quotient":
        base = _build(spec.children[0], counters, cap)
        A = subgroup_generated(base, spec.params)
        return quotient_group(base, A).group
    raise GroupError(f"unknown spec kind {k}")


def parse_kernel(G: FiniteGroup, text: str | None):
    """Kernel from comma-separated generator labels; 'all' or None means G."""
    if text is None or text.strip() in ("", "all", "trivial"):
        return tuple(range(G.order))
    labels = [t.strip() for t in text.split(",") if t.strip()]
    return subgroup_generated(G, labels)


# --- catalog ----------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: str
    kernel: str | None
    characteristic: int
    note: str = ""

    def group(self, cap: int | None = None) -> FiniteGroup:
        return build_group(self.spec, cap=cap)

    def orientation(self, G: FiniteGroup | None = None) -> Orientation:
        G = G if G is not None else self.group()
        return make_orientation(G, parse_kernel(G, self.kernel))


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("c3", "cyclic:3", None, 3, "cyclic of order 3"),
        CatalogEntry("q8", "q8", None, 3, "quaternion group, classical involution"),
        CatalogEntry("q8_c2", "product(q8, cyclic:2)", "x,y", 3, "sigma -1 on the C2 factor"),
        CatalogEntry("q8_c4", "product(q8, cyclic:4)", "x,y,h1^2", 3, "sigma -1 on the C4 generator"),
        CatalogEntry("q8ext", "q8ext", "x,y", 3, "<Q8,g>, g central, g^2 = x^2"),
        CatalogEntry("q8ext_c2", "product(q8ext, cyclic:2)", "x,y,h1", 0, "E = C2"),
        CatalogEntry("q8ext_c3", "product(q8ext, cyclic:3)", "x,y,h1", 3, "P = C3"),
        CatalogEntry("q8ext_c5", "product(q8ext, cyclic:5)", "x,y,h1", 5, "P = C5"),
        CatalogEntry("q8ext_c9", "product(q8ext, cyclic:9)", "x,y,h1", 3, "P = C9"),
        CatalogEntry("q8ext_c3c3", "product(q8ext, cyclic:3, cyclic:3)", "x,y,h1,h2", 3, "P = C3 x C3"),
        CatalogEntry("q8ext_c2_c3", "product(q8ext, cyclic:2, cyclic:3)", "x,y,h1,h2", 3, "E = C2, P = C3"),
        CatalogEntry("extraspecial3", "extraspecial:3", None, 3, "Heisenberg group mod 3"),
        CatalogEntry("es3_c2", "product(extraspecial:3, cyclic:2)", "s,t", 3, "sigma -1 on the C2 factor"),
    ]
}


def resolve_group(text: str, cap: int | None = None) -> tuple[FiniteGroup, CatalogEntry | None]:
    """A catalog name or a spec string."""
    if text in CATALOG:
        entry = CATALOG[text]
        return entry.group(cap), entry
    return build_group(text, cap=cap), None
