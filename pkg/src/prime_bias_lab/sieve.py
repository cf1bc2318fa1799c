"""Prime-power sieve: the support of the von Mangoldt function.

A :class:`MangoldtTable` lists every prime power ``n = p**k`` up to a limit
together with ``log p``, built by a segmented sieve of Eratosthenes. It is
the backbone of every weighted prime sum in the package.

Boundary convention for real upper limits: membership ``n <= x`` means
``n <= floor(x)``; an exactly-integer ``x`` therefore includes ``n == x``.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

#: Default segment length of the sieve (cache-resident segments dominate
#: run time).
SEGMENT_SIZE = 1 << 22

#: Default ceiling on table limits, to fail fast instead of swapping.
MEMORY_CEILING = 10**9

_MAGIC = b"MGT1"
_HEADER = struct.Struct("<4sQQ")  # magic, limit, entry count
_ENTRY_DTYPE = np.dtype([("n", "<u8"), ("log_p", "<f8")])


class CapacityError(ValueError):
    """Requested limit exceeds the configured memory ceiling."""


class CacheInvalid(ValueError):
    """Sieve cache file failed validation (magic or limit mismatch)."""


def int_boundary(x: float) -> int:
    """Largest integer n with n <= x (exact integer comparison)."""
    return int(math.floor(x))


@dataclass(frozen=True)
class MangoldtTable:
    """Prime powers ``n <= limit`` with their von Mangoldt values.

    ``n`` is sorted ascending; ``log_p[i]`` is ``log p`` for ``n[i] = p**k``;
    ``is_prime[i]`` marks first powers (``k == 1``).
    """

    limit: int
    n: np.ndarray
    log_p: np.ndarray
    is_prime: np.ndarray
    _sqrt_n: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_sqrt_n", np.sqrt(self.n.astype(np.float64)))

    def __len__(self) -> int:
        return int(self.n.shape[0])

    @property
    def sqrt_n(self) -> np.ndarray:
        """Cached ``sqrt(n)`` for the weighted sums."""
        return self._sqrt_n

    def count_upto(self, x: float) -> int:
        """Number of table entries with n <= x (membership convention)."""
        return int(np.searchsorted(self.n, int_boundary(x), side="right"))

    def is_prime_power(self, x: float) -> bool:
        """True when x is exactly an integer prime power within the table."""
        if x != int(x):
            return False
        m = int(x)
        if m < 2 or m > self.limit:
            return False
        i = int(np.searchsorted(self.n, m))
        return i < len(self) and int(self.n[i]) == m

    def mangoldt(self, m: int) -> float:
        """Von Mangoldt value of a single integer (0 off prime powers)."""
        if m < 2 or m > self.limit:
            return 0.0
        i = int(np.searchsorted(self.n, m))
        if i < len(self) and int(self.n[i]) == m:
            return float(self.log_p[i])
        return 0.0


def _simple_primes(limit: int) -> np.ndarray:
    """Primes up to ``limit`` by a dense sieve (used for the base primes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(math.isqrt(limit)) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def build_mangoldt_table(
    limit: int,
    segment_size: int = SEGMENT_SIZE,
    memory_ceiling: int = MEMORY_CEILING,
) -> MangoldtTable:
    """Sieve all prime powers up to ``limit`` with their ``log p`` weights."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > memory_ceiling:
        raise CapacityError(
            f"limit {limit} exceeds the memory ceiling {memory_ceiling}"
        )
    base = _simple_primes(int(math.isqrt(limit)))
    prime_chunks = []
    lo = 2
    while lo <= limit:
        hi = min(lo + segment_size - 1, limit)
        seg = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            p = int(p)
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            seg[start - lo :: p] = False
        prime_chunks.append(np.nonzero(seg)[0].astype(np.int64) + lo)
        lo = hi + 1
    primes = np.concatenate(prime_chunks) if prime_chunks else np.empty(0, np.int64)

    ns = [primes]
    lps = [np.log(primes.astype(np.float64))]
    flags = [np.ones(primes.shape[0], dtype=bool)]
    # Higher powers p**k <= limit only need p <= sqrt(limit).
    for p in base:
        p = int(p)
        pk = p * p
        lp = math.log(p)
        while pk <= limit:
            ns.append(np.array([pk], dtype=np.int64))
            lps.append(np.array([lp], dtype=np.float64))
            flags.append(np.zeros(1, dtype=bool))
            pk *= p
    n = np.concatenate(ns)
    order = np.argsort(n, kind="stable")
    return MangoldtTable(
        limit=limit,
        n=n[order],
        log_p=np.concatenate(lps)[order],
        is_prime=np.concatenate(flags)[order],
    )


def divisor_count_table(limit: int, memory_ceiling: int = MEMORY_CEILING) -> np.ndarray:
    """Sieve of divisor counts: ``table[m]`` is the number of divisors of m.

    ``table[0]`` is 0 by convention.
    """
    if limit > memory_ceiling:
        raise CapacityError(
            f"limit {limit} exceeds the memory ceiling {memory_ceiling}"
        )
    table = np.zeros(limit + 1, dtype=np.int32)
    for d in range(1, limit + 1):
        table[d::d] += 1
    return table


def save_table(table: MangoldtTable, path: str | Path) -> None:
    """Write the binary little-endian sieve cache."""
    entries = np.empty(len(table), dtype=_ENTRY_DTYPE)
    entries["n"] = table.n
    entries["log_p"] = table.log_p
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, table.limit, len(table)))
        fh.write(entries.tobytes())


def load_table(path: str | Path, expected_limit: int | None = None) -> MangoldtTable:
    """Read a sieve cache, validating magic and (optionally) the limit."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise CacheInvalid(f"{path}: truncated header")
    magic, limit, count = _HEADER.unpack_from(raw)
    if magic != _MAGIC:
        raise CacheInvalid(f"{path}: bad magic {magic!r}")
    if expected_limit is not None and limit != expected_limit:
        raise CacheInvalid(
            f"{path}: cache limit {limit} != requested {expected_limit}"
        )
    if len(raw) != _HEADER.size + count * _ENTRY_DTYPE.itemsize:
        raise CacheInvalid(
            f"{path}: payload size {len(raw) - _HEADER.size} does not match "
            f"entry count {count}"
        )
    body = np.frombuffer(raw, dtype=_ENTRY_DTYPE, count=count, offset=_HEADER.size)
    n = body["n"].astype(np.int64)
    log_p = body["log_p"].astype(np.float64)
    # Reconstruct the first-power flags: n is prime iff its log_p equals log n.
    is_prime = np.abs(np.log(n.astype(np.float64)) - log_p) < 1e-12
    return MangoldtTable(limit=int(limit), n=n, log_p=log_p, is_prime=is_prime)
