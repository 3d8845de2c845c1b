"""Brute-force oracles, written without any of the library's group, algebra or
linear-algebra code.

Groups are built from concrete matrices or tuples and closed under
multiplication; the algebra uses dense regular-representation matrices;
ranks come from a plain Gaussian elimination mod p. Running this module
regenerates the expected values in ``involution_lab/data/fixtures.json``.
"""
from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

import numpy as np

FIXTURE_PATH = Path(__file__).resolve().parents[1] / "src" / "involution_lab" / "data" / "fixtures.json"
SOURCE = "brute-force oracle (tests/oracles.py)"


# --- groups as closed sets of hashable elements ---------------------------------


class OracleGroup:
    def __init__(self, elements, mul):
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        self.table = np.array([[self.index[mul(a, b)] for b in self.elements] for a in self.elements])
        self.n = n
        ident = [i for i in range(n) if all(self.table[i, j] == j for j in range(n))]
        self.identity = ident[0]
        self.inv = np.array([int(np.flatnonzero(self.table[i] == self.identity)[0]) for i in range(n)])


def closure(gens, mul):
    elems = list(gens)
    seen = set(elems)
    frontier = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = mul(a, g)
                if c not in seen:
                    seen.add(c)
                    new.append(c)
        elems += new
        frontier = new
    return elems


def _mat_key(m):
    return tuple(complex(v) for v in np.asarray(m).ravel())


def pauli_group():
    """<Q8, g>: 2x2 matrices generated by iX, iZ and the central iI."""
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Z = np.array([[1, 0], [0, -1]], dtype=complex)
    I = np.eye(2, dtype=complex)
    gens = [_mat_key(1j * X), _mat_key(1j * Z), _mat_key(1j * I)]

    def mul(a, b):
        return _mat_key(np.array(a).reshape(2, 2) @ np.array(b).reshape(2, 2))

    elems = closure(gens, mul)
    q8 = closure(gens[:2], mul)
    return elems, mul, q8


def unitriangular3():
    """Upper unitriangular 3x3 matrices mod 3 as (a, b, c)."""
    def mul(u, v):
        a1, b1, c1 = u
        a2, b2, c2 = v
        return ((a1 + a2) % 3, (b1 + b2 + a1 * c2) % 3, (c1 + c2) % 3)
    return [(a, b, c) for a in range(3) for b in range(3) for c in range(3)], mul


def cyclic(n):
    return list(range(n)), lambda a, b: (a + b) % n


def product(*factors):
    """factors: (elements, mul) pairs; returns elements as tuples."""
    elems = list(itertools.product(*[f[0] for f in factors]))

    def mul(a, b):
        return tuple(f[1](x, y) for f, x, y in zip(factors, a, b))
    return elems, mul


def wreath_c3_c3():
    """C3 wr C3 as permutations of 9 points."""
    def mul(a, b):  # apply a then b
        return tuple(b[a[i]] for i in range(9))
    base = tuple([1, 2, 0] + list(range(3, 9)))
    top = tuple([3, 4, 5, 6, 7, 8, 0, 1, 2])
    return closure([base, top], mul), mul


# --- linear algebra mod p -------------------------------------------------------


def echelon(rows, p):
    """Row-echelon basis of the span of ``rows`` (int arrays mod p)."""
    m = np.array(rows, dtype=np.int64) % p
    if m.size == 0:
        return m.reshape(0, m.shape[-1] if m.ndim == 2 else 0)
    r = 0
    for c in range(m.shape[1]):
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        m[[r, k]] = m[[k, r]]
        m[r] = m[r] * pow(int(m[r, c]), p - 2, p) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        r += 1
        if r == m.shape[0]:
            break
    return m[:r]


def rank(rows, p):
    return echelon(rows, p).shape[0]


# --- group algebra --------------------------------------------------------------


class OracleAlgebra:
    def __init__(self, G: OracleGroup, sign, p):
        self.G, self.p, self.n = G, p, G.n
        self.sign = np.array(sign)
        # left[g] @ v = g*v,  right[g] @ v = v*g
        self.left = np.zeros((G.n, G.n, G.n), dtype=np.int64)
        self.right = np.zeros((G.n, G.n, G.n), dtype=np.int64)
        for g in range(G.n):
            for h in range(G.n):
                self.left[g, G.table[g, h], h] = 1
                self.right[g, G.table[h, g], h] = 1

    def lmat(self, a):
        return np.tensordot(a, self.left, axes=1) % self.p

    def rmat(self, a):
        return np.tensordot(a, self.right, axes=1) % self.p

    def symmetric(self):
        G, out = self.G, []
        for g in range(G.n):
            gi = int(G.inv[g])
            v = np.zeros(G.n, dtype=np.int64)
            v[g] += 1
            v[gi] += self.sign[g]
            v %= self.p
            if v.any():
                out.append(v)
        return echelon(out, self.p)

    def brackets(self, A, S):
        blocks = [(A @ (self.rmat(s) - self.lmat(s)).T) % self.p for s in S]
        return echelon(np.concatenate(blocks), self.p) if blocks else A[:0]

    def ideal(self, V):
        basis = echelon(V, self.p)
        while True:
            cand = [basis] + [(basis @ self.left[g].T) % self.p for g in range(self.n)]
            cand += [(basis @ self.right[g].T) % self.p for g in range(self.n)]
            nb = echelon(np.concatenate(cand), self.p)
            if nb.shape[0] == basis.shape[0]:
                return nb
            basis = nb

    def lie_index(self, S, cap=40):
        cur, n = S, 1
        dims = []
        while cur.shape[0] and n <= cap:
            dims.append(cur.shape[0])
            cur = self.brackets(cur, S)
            n += 1
        return (n if not cur.shape[0] else None), dims

    def strong_index(self, S, cap=40, start=None):
        cur = np.eye(self.n, dtype=np.int64) if start is None else start
        n, dims = 1, []
        while cur.shape[0] and n <= cap:
            dims.append(cur.shape[0])
            cur = self.ideal(self.brackets(cur, S))
            n += 1
        return (n if not cur.shape[0] else None), dims


def t_nil(G: OracleGroup, p):
    """Least n with Delta(G)^n = 0 in F_p G."""
    A = OracleAlgebra(G, [1] * G.n, p)
    aug = []
    for g in range(G.n):
        if g != G.identity:
            v = np.zeros(G.n, dtype=np.int64)
            v[g], v[G.identity] = 1, p - 1
            aug.append(v)
    if not aug:
        return 1
    D = echelon(aug, p)
    cur, n = D, 1
    while cur.shape[0]:
        cur = echelon(np.concatenate([(cur @ A.rmat(d).T) % p for d in D]), p)
        n += 1
    return n


# --- cases ------------------------------------------------------------------------


def q8ext_case(extra, p, e2=0):
    """<Q8,g> x E x P; kernel Q8 x E x P (sign -1 exactly off the Q8 part)."""
    pel, pmul, q8 = pauli_group()
    factors = [(pel, pmul)] + [cyclic(2) for _ in range(e2)] + [cyclic(m) for m in extra]
    elems, mul = product(*factors)
    G = OracleGroup(elems, mul)
    q8 = set(q8)
    sign = [1 if e[0] in q8 else -1 for e in G.elements]
    return G, sign


def es3_c2_case():
    u = unitriangular3()
    elems, mul = product(u, cyclic(2))
    G = OracleGroup(elems, mul)
    sign = [1 if e[1] == 0 else -1 for e in G.elements]
    return G, sign


def wreath_case():
    elems, mul = wreath_c3_c3()
    G = OracleGroup(elems, mul)
    return G, [1] * G.n


def derived_order(G: OracleGroup):
    comms = {int(G.table[G.table[G.inv[a], G.inv[b]], G.table[a, b]]) for a in range(G.n) for b in range(G.n)}
    elems = set(comms) | {G.identity}
    while True:
        new = {int(G.table[a, b]) for a in elems for b in elems} - elems
        if not new:
            return len(elems)
        elems |= new


def lie_values(G, sign, p, strong=True):
    A = OracleAlgebra(G, sign, p)
    S = A.symmetric()
    t, tdims = A.lie_index(S)
    out = {"t": t, "lower_dims": tdims, "sym_dim": int(S.shape[0])}
    if strong:
        tl, sdims = A.strong_index(S)
        out.update({"tL": tl, "strong_dims": sdims})
        tls, _ = A.strong_index(S, start=S)
        out["tL_set"] = tls
    return out


def generate() -> dict:
    fixtures = {}

    def put(key, value, what):
        fixtures[key] = {"value": value, "source": SOURCE, "what": what}

    for name, extra, p, e2 in [("q8ext_c3", [3], 3, 0), ("q8ext_c5", [5], 5, 0),
                               ("q8ext_c9", [9], 3, 0), ("q8ext_c3c3", [3, 3], 3, 0),
                               ("q8ext", [], 3, 0), ("q8ext_c2_c3", [3], 3, 1)]:
        G, sign = q8ext_case(extra, p, e2)
        vals = lie_values(G, sign, p)
        put(f"{name}/t", vals["t"], "Lie nilpotency index of the symmetric elements")
        put(f"{name}/tL", vals["tL"], "strong Lie index, chain started at the whole algebra")
        put(f"{name}/tL_set", vals["tL_set"], "strong Lie index, chain started at the symmetric elements")
        put(f"{name}/sym_dim", vals["sym_dim"], "dimension of the symmetric elements")
        print(name, vals, file=sys.stderr)

    for name, m, p in [("C3", [3], 3), ("C5", [5], 5), ("C9", [9], 3), ("C3xC3", [3, 3], 3)]:
        elems, mul = product(*[cyclic(k) for k in m])
        put(f"t_nil/{name}", t_nil(OracleGroup(elems, mul), p), "nilpotency index of the augmentation ideal")

    for name, (G, sign) in [("es3_c2", es3_c2_case()), ("c3_wr_c3", wreath_case())]:
        vals = lie_values(G, sign, 3, strong=False)
        A = OracleAlgebra(G, sign, 3)
        whole, _ = A.strong_index(np.eye(G.n, dtype=np.int64))
        put(f"{name}/t", vals["t"], "Lie nilpotency index of the symmetric elements")
        put(f"{name}/tL_whole", whole, "strong Lie index of the whole algebra")
        put(f"{name}/derived_order", derived_order(G), "order of the derived subgroup")
        print(name, vals, whole, file=sys.stderr)

    # tiny unit counts by brute force over all symmetric elements
    for name, (G, sign), p in [("q8", _q8_only(), 3), ("c3", _c3_only(), 3)]:
        A = OracleAlgebra(G, sign, p)
        S = A.symmetric()
        units = 0
        for coeffs in itertools.product(range(p), repeat=S.shape[0]):
            a = (np.array(coeffs) @ S) % p if S.shape[0] else np.zeros(G.n, dtype=np.int64)
            if rank(A.lmat(a), p) == G.n:
                units += 1
        put(f"{name}/sym_elements", p ** S.shape[0], "number of symmetric elements")
        put(f"{name}/sym_units", units, "number of symmetric units")
    return fixtures


def _q8_only():
    _, mul, q8 = pauli_group()
    G = OracleGroup(q8, mul)
    return G, [1] * G.n


def _c3_only():
    elems, mul = cyclic(3)
    G = OracleGroup(elems, mul)
    return G, [1] * G.n


def main():
    fixtures = generate()
    FIXTURE_PATH.parent.mkdir(parents=True, exist_ok=True)
    FIXTURE_PATH.write_text(json.dumps(fixtures, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(fixtures)} fixtures to {FIXTURE_PATH}", file=sys.stderr)


if __name__ == "__main__":
    main()
