"""Finite-index subgroups of PSL(2, Z) through their coset action.

The subgroup ``H`` is known only through a membership oracle.  Right cosets
``H x`` are enumerated by acting with ``L = (1,1;0,1)`` and ``R = (1,0;1,1)``,
giving two permutations of ``{0, ..., index-1}``.  Everything else (level,
Hsu's congruence test for odd level, the order of the image group, i.e. the
index of the core of ``H``) is read off those permutations.

Permutations are numpy arrays ``p`` with ``p[i]`` the image of ``i``; products
are taken left to right, ``(p*q)[i] = q[p[i]]``, matching the right action on
cosets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from .domains import FundamentalDomain, reduce
from .exactnum import QuadRat
from .halfplane import MoebiusMap

L = MoebiusMap(1, 1, 0, 1)
R = MoebiusMap(1, 0, 1, 1)

Oracle = Callable[[MoebiusMap], bool]


# ---------------------------------------------------------------------------
# words in L and R

def _int_entries(g: MoebiusMap):
    out = []
    for e in g.entries:
        q = QuadRat(e) if not isinstance(e, QuadRat) else e
        if not q.is_integer():
            raise ValueError(f"entry {e} is not an integer")
        out.append(int(q.a))
    a, b, c, d = out
    if a * d - b * c != 1:
        raise ValueError("determinant must be 1")
    return out


@dataclass(frozen=True)
class LRWord:
    letters: tuple = ()   # (("L" or "R", nonzero exponent), ...)

    def evaluate(self) -> MoebiusMap:
        g = MoebiusMap.identity()
        for name, e in self.letters:
            g = g * (L if name == "L" else R) ** e
        return g

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.letters)


def _push(word, name, e):
    if e == 0:
        return
    if word and word[-1][0] == name:
        e += word[-1][1]
        word.pop()
        if e:
            word.append((name, e))
    else:
        word.append((name, e))


def lr_decompose(g: MoebiusMap) -> LRWord:
    """Write ``g`` in PSL(2, Z) as a word in ``L`` and ``R``.

    Euclid's algorithm on the first column: left multiplication by ``L**-q``
    and ``R**-q`` shrinks it to ``(+-1, 0)`` or ``(0, +-1)``.
    """
    a, b, c, d = _int_entries(g)
    applied = []  # left factors M_1, M_2, ... with M_k ... M_1 g = rest
    while c != 0 and a != 0:
        if abs(a) >= abs(c):
            q = a // c if a * c > 0 else -(-a // c)
            a, b = a - q * c, b - q * d
            applied.append(("L", -q))
        else:
            q = c // a if a * c > 0 else -(-c // a)
            c, d = c - q * a, d - q * b
            applied.append(("R", -q))
    word = []
    for name, e in applied:
        _push(word, name, -e)
    if c == 0:
        # a = d = +-1
        _push(word, "L", b * a)
    else:
        # (0, -1/c; c, d) = +-S L^(d*c) and S = L R^-1 L
        _push(word, "L", 1)
        _push(word, "R", -1)
        _push(word, "L", 1 + d * c)
    out = LRWord(tuple(word))
    if out.evaluate() != g:
        raise AssertionError("LR decomposition failed to reproduce the matrix")
    return out


# ---------------------------------------------------------------------------
# permutations

def perm_mul(p, q):
    return q[p]


def perm_inv(p):
    out = np.empty_like(p)
    out[p] = np.arange(len(p))
    return out


def perm_pow(p, k: int):
    if k < 0:
        p, k = perm_inv(p), -k
    out = np.arange(len(p))
    base = p
    while k:
        if k & 1:
            out = perm_mul(out, base)
        base = perm_mul(base, base)
        k >>= 1
    return out


def cycles(p) -> list:
    seen = np.zeros(len(p), dtype=bool)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc, j = [], i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = int(p[j])
        out.append(cyc)
    return out


def cycle_type(p) -> tuple:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def format_cycles(p, one_based: bool = True) -> str:
    off = 1 if one_based else 0
    parts = ["(" + " ".join(str(i + off) for i in c) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(parts) or "()"


def parse_cycles(text: str, n: int, one_based: bool = True):
    """Permutation of ``n`` points from cycle notation like ``(1 2 3)(4 5)``."""
    p = np.arange(n)
    off = 1 if one_based else 0
    for chunk in text.replace(")", ")\n").split("\n"):
        chunk = chunk.strip().strip("()").replace(",", " ")
        if not chunk:
            continue
        pts = [int(t) - off for t in chunk.split()]
        for x, y in zip(pts, pts[1:] + pts[:1]):
            p[x] = y
    return p


def perm_order(p) -> int:
    return _kernels.perm_order(p)


# ---------------------------------------------------------------------------
# coset enumeration

@dataclass(frozen=True)
class CosetAction:
    index: int
    perm_L: np.ndarray
    perm_R: np.ndarray
    coset_reps: tuple

    def cusp_widths(self) -> tuple:
        return cycle_type(self.perm_L)

    def as_dict(self) -> dict:
        return {"index": self.index,
                "perm_L": format_cycles(self.perm_L),
                "perm_R": format_cycles(self.perm_R),
                "cusp_widths": list(self.cusp_widths())}


def coset_enumerate(membership: Oracle, budget: int = 1000) -> CosetAction:
    """Right coset action of ``L`` and ``R`` on ``H \\ PSL(2, Z)``.

    ``membership`` decides ``g in H``.  Cosets ``H x`` and ``H y`` coincide
    when ``x y^-1`` is a member.
    """
    if not membership(MoebiusMap.identity()):
        raise ValueError("membership oracle rejects the identity")
    reps = [MoebiusMap.identity()]
    inv_reps = [MoebiusMap.identity()]
    table = {"L": [], "R": []}
    gens = {"L": L, "R": R}
    i = 0
    while i < len(reps):
        for name, g in gens.items():
            x = reps[i] * g
            target = None
            for j, rinv in enumerate(inv_reps):
                if membership(x * rinv):
                    target = j
                    break
            if target is None:
                if len(reps) >= budget:
                    raise ValueError("index exceeds budget")
                reps.append(x)
                inv_reps.append(x.inverse())
                target = len(reps) - 1
            table[name].append(target)
        i += 1
    pl = np.array(table["L"], dtype=np.int64)
    pr = np.array(table["R"], dtype=np.int64)
    for p in (pl, pr):
        if len(set(p.tolist())) != len(p):
            raise ValueError("membership oracle is not a subgroup: coset action is not a permutation")
    return CosetAction(len(reps), pl, pr, tuple(reps))


def level(action: CosetAction) -> int:
    """Lcm of the cusp widths (cycle lengths of ``L``)."""
    return math.lcm(*action.cusp_widths())


# ---------------------------------------------------------------------------
# congruence

@dataclass(frozen=True)
class CongruenceReport:
    level: int
    verdict: str                # congruence | non-congruence | untested
    witness: dict = field(default_factory=dict)
    reason: str = ""

    def as_dict(self) -> dict:
        out = {"level": self.level, "verdict": self.verdict, "witness": self.witness}
        if self.reason:
            out["reason"] = self.reason
        return out


def hsu_test(action: CosetAction) -> CongruenceReport:
    """Hsu's criterion for odd level ``n``: congruence iff ``(R^2 L^-e)^3 = 1``
    with ``e`` the inverse of 2 modulo ``n``."""
    n = level(action)
    if n % 2 == 0:
        return CongruenceReport(n, "untested", reason="even level")
    e = pow(2, -1, n) if n > 1 else 0
    p = perm_mul(perm_pow(action.perm_R, 2), perm_pow(action.perm_L, -e))
    order = perm_order(p)
    ident = bool(np.array_equal(perm_pow(p, 3), np.arange(action.index)))
    witness = {"relation": f"(R^2 L^-{e})^3", "e": e, "order": order}
    return CongruenceReport(n, "congruence" if ident else "non-congruence", witness)


def principal_congruence_index(n: int) -> int:
    """``[PSL(2,Z) : Gamma(n)]``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n == 2:
        return 6
    num, den = n ** 3, 2
    for p in _prime_factors(n):
        num *= p * p - 1
        den *= p * p
    return num // den


def _prime_factors(n: int):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# stabiliser chain

class _Chain:
    def __init__(self, n: int):
        self.n = n
        self.base: list = []
        self.gens: list = []          # gens[l]: strong generators fixing base[:l]
        self.orbits: list = []        # orbits[l]: {point: transversal element}

    def _orbit(self, level: int):
        b = self.base[level]
        ident = np.arange(self.n)
        orbit = {b: ident}
        queue = [b]
        for y in queue:
            for s in self.gens[level]:
                z = int(s[y])
                if z not in orbit:
                    orbit[z] = perm_mul(orbit[y], s)
                    queue.append(z)
        self.orbits[level] = orbit

    def _arrays(self, start: int):
        levels = len(self.base) - start
        trans_inv = np.zeros((max(levels, 1), self.n, self.n), dtype=np.int64)
        present = np.zeros((max(levels, 1), self.n), dtype=np.bool_)
        for k in range(levels):
            for x, u in self.orbits[start + k].items():
                trans_inv[k, x] = perm_inv(u)
                present[k, x] = True
        base = np.array(self.base[start:] or [0], dtype=np.int64)
        return base, trans_inv, present, levels

    def sift(self, g, start: int):
        base, trans_inv, present, levels = self._arrays(start)
        h, stop = _kernels.sift(np.asarray(g, dtype=np.int64), base, trans_inv, present, levels)
        return h, start + stop

    def add_level(self, h):
        moved = int(np.flatnonzero(h != np.arange(self.n))[0])
        self.base.append(moved)
        self.gens.append([])
        self.orbits.append({})

    def order(self) -> int:
        out = 1
        for orb in self.orbits:
            out *= len(orb)
        return out


def perm_group_order(perms) -> int:
    """Order of the group generated by ``perms`` (deterministic Schreier-Sims)."""
    perms = [np.asarray(p, dtype=np.int64) for p in perms]
    if not perms:
        return 1
    n = len(perms[0])
    ident = np.arange(n)
    chain = _Chain(n)
    for g in perms:
        if np.array_equal(g, ident):
            continue
        if all(g[b] == b for b in chain.base):
            chain.add_level(g)
        for level in range(len(chain.base)):
            if all(g[b] == b for b in chain.base[:level]):
                chain.gens[level].append(g)
    if not chain.base:
        return 1
    for level in range(len(chain.base)):
        chain._orbit(level)
    i = len(chain.base) - 1
    while i >= 0:
        extended = False
        for x, u in list(chain.orbits[i].items()):
            for s in chain.gens[i]:
                y = int(s[x])
                schreier = perm_mul(perm_mul(u, s), perm_inv(chain.orbits[i][y]))
                if np.array_equal(schreier, ident):
                    continue
                h, j = chain.sift(schreier, i + 1)
                if j == len(chain.base) and np.array_equal(h, ident):
                    continue
                if j == len(chain.base):
                    chain.add_level(h)
                for level in range(i + 1, j + 1):
                    chain.gens[level].append(h)
                    chain._orbit(level)
                i = j
                extended = True
                break
            if extended:
                break
        if not extended:
            i -= 1
    return chain.order()


# ---------------------------------------------------------------------------
# relabelling against published permutations

def find_relabeling(source, target):
    """Bijection ``s`` with ``s[p[i]] = q[s[i]]`` for all paired perms, or ``None``.

    ``source`` and ``target`` are equally long lists of permutations; the group
    generated by ``source`` must be transitive.
    """
    n = len(source[0])
    for image0 in range(n):
        s = -np.ones(n, dtype=np.int64)
        s[0] = image0
        queue, ok = [0], True
        while queue and ok:
            i = queue.pop()
            for p, q in zip(source, target):
                for pp, qq in ((p, q), (perm_inv(p), perm_inv(q))):
                    j, want = int(pp[i]), int(qq[s[i]])
                    if s[j] < 0:
                        s[j] = want
                        queue.append(j)
                    elif s[j] != want:
                        ok = False
                        break
                if not ok:
                    break
        if ok and (s >= 0).all() and len(set(s.tolist())) == n:
            return s
    return None


# ---------------------------------------------------------------------------
# membership oracles

def _integer_matrix(g: MoebiusMap):
    try:
        return _int_entries(g)
    except ValueError:
        return None


def congruence_oracle(n: int, kind: str = "principal") -> Oracle:
    """Membership in ``Gamma(n)``, ``Gamma1(n)`` or ``Gamma0(n)`` (up to sign)."""
    if kind not in ("principal", "gamma0", "gamma1"):
        raise ValueError(f"unknown congruence subgroup kind {kind!r}")

    def member(g):
        m = _integer_matrix(g)
        if m is None:
            return False
        a, b, c, d = m
        if kind == "gamma0":
            return c % n == 0
        for s in (1, -1):
            if (s * c) % n == 0 and (s * a - 1) % n == 0 and (s * d - 1) % n == 0:
                if kind == "gamma1" or (s * b) % n == 0:
                    return True
        return False

    return member


def intersection_oracle(dom: FundamentalDomain) -> Oracle:
    """Membership in ``Gamma intersected with PSL(2, Z)`` with ``dom`` a verified
    domain for ``Gamma``."""

    def member(g):
        if _integer_matrix(g) is None:
            return False
        return reduce(g, dom).in_group

    return member


def generated_oracle(gens, max_word_length: int = 4) -> Oracle:
    """Membership in the group generated by integral ``gens``, through its Ford domain."""
    from .domains import ford_domain
    return intersection_oracle(ford_domain(gens, max_word_length))


def conjugates_in_group(membership: Oracle, element: MoebiusMap, conjugators) -> list:
    """For each ``c`` report whether ``c * element * c^-1`` is a member."""
    return [bool(membership(c * element * c.inverse())) for c in conjugators]
