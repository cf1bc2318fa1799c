"""Exact Dirichlet characters modulo q.

Characters are represented by exponent vectors over the cyclic decomposition
of the unit group (Chinese remainder split; the two-part of the modulus uses
the {-1, 5} generators for 2**k with k >= 3). Values are exact roots of
unity stored as integer indices; conversion to floating complex happens only
at sum-evaluation boundaries.

Canonical ordering: cyclic factors are listed with the 2-part first, then
ascending odd prime powers; the group lists characters in lexicographic
order of their exponent vectors. Per-character value tables are built
lazily, so constructing groups for thousands of moduli stays linear in q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np


def _factorize(q: int) -> list[tuple[int, int]]:
    """Prime-power factorization [(p, a), ...] with p ascending."""
    out = []
    m = q
    p = 2
    while p * p <= m:
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out.append((p, a))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def _primitive_root(pk: int, p: int) -> int:
    """Primitive root modulo an odd prime power pk = p**a."""
    phi = pk - pk // p
    fac = [f for f, _ in _factorize(phi)]
    g = 2
    while True:
        if math.gcd(g, pk) == 1 and all(pow(g, phi // f, pk) != 1 for f in fac):
            return g
        g += 1


def euler_phi(q: int) -> int:
    """Euler totient."""
    phi = 1
    for p, a in _factorize(q):
        phi *= (p - 1) * p ** (a - 1)
    return phi


def divisors(q: int) -> list[int]:
    """Sorted divisors of q."""
    divs = [1]
    for p, a in _factorize(q):
        divs = [d * p**k for d in divs for k in range(a + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class _Structure:
    """Cyclic decomposition of the unit group mod q, with discrete logs."""

    q: int
    factor_moduli: tuple[int, ...]  # CRT modulus each factor lives in
    factor_orders: tuple[int, ...]  # cyclic orders d_j
    exponent: int  # lcm of the factor orders (denoted D below)
    # dlogs[j][n % factor_moduli[j]] = discrete log of n in factor j (-1 off units)
    dlogs: tuple[np.ndarray, ...] = field(repr=False, default=())
    coprime_mask: np.ndarray = field(repr=False, default=None)

    def exponent_weights(self) -> np.ndarray:
        """Per-factor weight D / d_j forming common-denominator indices."""
        return np.array(
            [self.exponent // d for d in self.factor_orders], dtype=np.int64
        )

    def dlog_matrix(self, residues: np.ndarray) -> np.ndarray:
        """Stacked discrete logs, shape (num_factors, len(residues))."""
        rows = [dl[residues % m] for dl, m in zip(self.dlogs, self.factor_moduli)]
        if not rows:
            return np.zeros((0, residues.shape[0]), dtype=np.int64)
        return np.stack(rows)


@lru_cache(maxsize=4096)
def _roots_of_unity(m: int) -> np.ndarray:
    """``exp(2*pi*i*k/m)`` for k in [0, m), conjugate-symmetric bit for bit.

    The upper half of the table is stored as the exact complex conjugate of
    the lower half, and the quarter points 1, i, -1, -i are exact, so
    conjugating a character conjugates its values with no rounding drift.
    """
    out = np.empty(m, dtype=np.complex128)
    half = m // 2
    ang = 2.0 * np.pi * np.arange(half + 1) / m
    out[: half + 1] = np.cos(ang) + 1j * np.sin(ang)
    if half + 1 < m:
        out[half + 1 :] = np.conj(out[1 : m - half][::-1])
    out[0] = 1.0
    if m % 2 == 0:
        out[half] = -1.0
    if m % 4 == 0:
        out[m // 4] = 1j
        out[3 * m // 4] = -1j
    out.flags.writeable = False
    return out


def _dlog_table(modulus: int, generator: int, order: int) -> np.ndarray:
    table = np.full(modulus, -1, dtype=np.int64)
    v = 1
    for e in range(order):
        table[v] = e
        v = (v * generator) % modulus
    return table


@lru_cache(maxsize=4096)
def _structure(q: int) -> _Structure:
    if q < 1:
        raise ValueError("modulus must be >= 1")
    moduli: list[int] = []
    orders: list[int] = []
    dlogs: list[np.ndarray] = []
    for p, a in _factorize(q):
        pk = p**a
        if p == 2:
            if a == 1:
                continue  # (Z/2)* is trivial
            if a == 2:
                moduli.append(4)
                orders.append(2)
                dlogs.append(_dlog_table(4, 3, 2))
            else:
                # u = (-1)**s * 5**t: a sign factor of order 2, then <5>.
                half = pk // 4
                t5 = np.full(pk, -1, dtype=np.int64)
                v = 1
                for e in range(half):
                    t5[v] = e
                    v = (v * 5) % pk
                sign = np.full(pk, -1, dtype=np.int64)
                five = np.full(pk, -1, dtype=np.int64)
                for u in range(1, pk, 2):
                    if t5[u] >= 0:
                        sign[u] = 0
                        five[u] = t5[u]
                    else:
                        sign[u] = 1
                        five[u] = t5[(-u) % pk]
                moduli.extend([pk, pk])
                orders.extend([2, half])
                dlogs.extend([sign, five])
        else:
            g = _primitive_root(pk, p)
            d = (p - 1) * p ** (a - 1)
            moduli.append(pk)
            orders.append(d)
            dlogs.append(_dlog_table(pk, g, d))
    exponent = 1
    for d in orders:
        exponent = math.lcm(exponent, d)
    size = q if q > 1 else 1
    res = np.arange(size, dtype=np.int64)
    coprime = np.gcd(res, q) == 1 if q > 1 else np.ones(1, dtype=bool)
    return _Structure(
        q=q,
        factor_moduli=tuple(moduli),
        factor_orders=tuple(orders),
        exponent=exponent,
        dlogs=tuple(dlogs),
        coprime_mask=coprime,
    )


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """One character mod q, with exact root-of-unity value indices."""

    modulus: int
    exponents: tuple[int, ...]
    order: int
    parity: int  # 0 when chi(-1) = +1, 1 when chi(-1) = -1
    is_principal: bool
    _structure: _Structure = field(repr=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.exponents == other.exponents
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.exponents))

    @cached_property
    def index_table(self) -> np.ndarray:
        """index_table[n] = k with chi(n) = exp(2*pi*i*k/order); -1 off units."""
        st = self._structure
        size = st.q if st.q > 1 else 1
        res = np.arange(size, dtype=np.int64)
        dmat = st.dlog_matrix(res)
        cvec = np.array(self.exponents, dtype=np.int64) * st.exponent_weights()
        if dmat.shape[0]:
            full_idx = (cvec @ dmat) % st.exponent
        else:
            full_idx = np.zeros(size, dtype=np.int64)
        return np.where(
            st.coprime_mask, full_idx * self.order // st.exponent, -1
        ).astype(np.int64)

    @cached_property
    def _unit_values(self) -> np.ndarray:
        idx = self.index_table
        out = _roots_of_unity(self.order)[np.maximum(idx, 0)]
        out[idx < 0] = 0.0
        return out

    @cached_property
    def conductor(self) -> int:
        """Smallest modulus this character factors through (restriction test)."""
        q = self.modulus
        if self.is_principal:
            return 1
        idx = self.index_table
        coprime = self._structure.coprime_mask
        for d in divisors(q):
            if d == q:
                return q
            ns = np.arange(1, q, d, dtype=np.int64)  # n == 1 (mod d)
            ns = ns[coprime[ns % q]]
            if np.all(idx[ns % q] == 0):
                return d
        return q

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def value_index(self, n: int) -> tuple[int, int]:
        """Exact value as (numerator, denominator=order); (-1, order) off units."""
        return int(self.index_table[n % self.modulus]), self.order

    def __call__(self, n: int) -> complex:
        return complex(self._unit_values[n % self.modulus])

    def values(self) -> np.ndarray:
        """Complex values on residues 0..q-1 (floats derived from indices)."""
        return self._unit_values.copy()

    def on(self, ns: np.ndarray) -> np.ndarray:
        """Complex values on an integer array."""
        return self._unit_values[np.asarray(ns) % self.modulus]

    def conjugate(self) -> "DirichletCharacter":
        st = self._structure
        exps = tuple((-c) % d for c, d in zip(self.exponents, st.factor_orders))
        return _build_character(st, exps)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise ValueError("characters must share a modulus")
        st = self._structure
        exps = tuple(
            (a + b) % d
            for a, b, d in zip(self.exponents, other.exponents, st.factor_orders)
        )
        return _build_character(st, exps)


def _build_character(st: _Structure, exps: tuple[int, ...]) -> DirichletCharacter:
    order = 1
    for c, d in zip(exps, st.factor_orders):
        order = math.lcm(order, d // math.gcd(d, c))
    q = st.q
    if q > 2:
        # chi(-1) from the per-factor discrete logs of -1 (O(num factors)).
        k = 0
        weights = st.exponent_weights()
        for j, (m, dl) in enumerate(zip(st.factor_moduli, st.dlogs)):
            t = int(dl[(m - 1) % m])
            k = (k + exps[j] * int(weights[j]) * t) % st.exponent
        parity = 0 if k == 0 else 1
    else:
        parity = 0
    return DirichletCharacter(
        modulus=q,
        exponents=exps,
        order=order,
        parity=parity,
        is_principal=all(c == 0 for c in exps),
        _structure=st,
    )


@dataclass(frozen=True)
class CharacterGroup:
    """All phi(q) characters mod q in canonical exponent-vector order."""

    modulus: int
    characters: tuple[DirichletCharacter, ...]
    structure: _Structure = field(repr=False)

    def __len__(self) -> int:
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    @property
    def principal(self) -> DirichletCharacter:
        return self.characters[0]

    def value_matrix(self, residues: np.ndarray) -> np.ndarray:
        """Values of every character on ``residues``: shape (phi(q), len).

        Computed from the exponent vectors in one integer matrix product;
        rows follow the canonical character order. Does not build the
        per-character value tables.
        """
        st = self.structure
        residues = np.asarray(residues, dtype=np.int64)
        dmat = st.dlog_matrix(residues)
        weights = st.exponent_weights()
        cmat = np.array(
            [chi.exponents for chi in self.characters], dtype=np.int64
        )
        if cmat.size and dmat.shape[0]:
            kmat = ((cmat * weights[None, :]) @ dmat) % st.exponent
        else:
            kmat = np.zeros((len(self.characters), residues.shape[0]), np.int64)
        out = _roots_of_unity(st.exponent)[kmat]
        if st.q > 1:
            bad = ~st.coprime_mask[residues % st.q]
            out[:, bad] = 0.0
        return out


def character_group(q: int) -> CharacterGroup:
    """Construct the full character group mod q (1 <= q <= 1e6)."""
    if q < 1:
        raise ValueError("modulus must be >= 1")
    if q > 10**6:
        raise ValueError("modulus above the supported bound 1e6")
    st = _structure(q)
    exps_list: list[tuple[int, ...]] = [()]
    for d in st.factor_orders:
        exps_list = [e + (c,) for e in exps_list for c in range(d)]
    exps_list.sort()
    chars = tuple(_build_character(st, e) for e in exps_list)
    return CharacterGroup(modulus=q, characters=chars, structure=st)


def induce_primitive(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character (mod conductor) inducing ``chi``."""
    d = chi.conductor
    if d == chi.modulus:
        return chi
    sub = character_group(d)
    q = chi.modulus
    probe = {}
    for n in range(1, q + 1):
        if math.gcd(n, q) == 1:
            a = n % d
            if a not in probe:
                probe[a] = chi(n)
    for cand in sub:
        if all(abs(cand(a) - v) < 1e-12 for a, v in probe.items()):
            return cand
    raise AssertionError("no inducing character found (conductor bug)")


def gauss_sum(chi: DirichletCharacter) -> complex:
    """``sum_a chi(a) exp(2*pi*i*a/q)`` by direct summation."""
    q = chi.modulus
    a = np.arange(q, dtype=np.int64)
    return complex(np.sum(chi.values() * np.exp(2j * np.pi * a / q)))


def root_number(chi: DirichletCharacter) -> complex:
    """``tau(chi) / (i**kappa * sqrt(q))``; modulus one for primitive chi."""
    if not chi.is_primitive:
        raise ValueError(
            "root number requires a primitive character; induce to the "
            "conductor first"
        )
    q = chi.modulus
    return gauss_sum(chi) / (1j**chi.parity * math.sqrt(q))


def orthogonality_exact(group: CharacterGroup, n: int) -> int:
    """Exact integer evaluation of ``sum_chi chi(n)``.

    Returns phi(q) when n == 1 (mod q), 0 otherwise; the zero case is proved
    in integer arithmetic by checking that the value indices fill complete
    sets of m-th roots of unity. Raises if the structure is inconsistent.
    """
    q = group.modulus
    if q > 1 and math.gcd(n, q) != 1:
        return 0
    st = group.structure
    d = st.exponent
    counts: dict[int, int] = {}
    for chi in group:
        k, order = chi.value_index(n)
        key = k * (d // order) % d
        counts[key] = counts.get(key, 0) + 1
    if set(counts) == {0}:
        return counts[0]
    m = d // math.gcd(d, *counts.keys())
    expected = {j * (d // m) for j in range(m)}
    if set(counts) != expected or len(set(counts.values())) != 1:
        raise AssertionError("orthogonality structure violated")
    return 0


def chi4() -> DirichletCharacter:
    """The non-principal character mod 4 (the classic odd real character)."""
    return character_group(4).characters[1]
