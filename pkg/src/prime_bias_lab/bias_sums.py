"""Weighted prime-power sums around the square-root scale.

This module hosts every sum family whose bias toward negative values
reflects the central log-derivatives of zeta and Dirichlet L-functions:
half-power Chebyshev sums, log- and Riesz-weighted versions, character
and residue-class restrictions, race-style prime sums, screw functions,
averages over moduli, and the divisor-twisted von Mangoldt sum.

Conventions implemented once and shared by all kinds:

* membership is ``n <= floor(x)``;
* the primed convention gives weight 1/2 to the boundary term when x is
  exactly a prime power (only the kinds defined with a primed sum use it;
  log-type weights vanish at the boundary, so those sums are unprimed);
* shifted kinds extend the range to ``n <= x e^2`` while keeping log x in
  the weight, which makes the tail of the weight negative;
* term reductions use deterministic compensated summation, so results are
  bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .characters import DirichletCharacter, character_group, euler_phi
from .classical import titchmarsh_divisor_sum
from .sieve import CapacityError, MangoldtTable, _simple_primes, int_boundary
from .specials import digamma, hurwitz_zeta, lerch_phi, zeta
from .summation import comp_sum

E_SQUARED = math.exp(2.0)
EXP_WEIGHT_CUTOFF = 41.5  # e^(-41.5) < 1e-18: truncation point of exp kinds

SUM_KINDS = (
    "psi_half",
    "f_log",
    "riesz",
    "f_log_shifted",
    "riesz_shifted",
    "f_chi",
    "riesz_chi",
    "prime_only_sqrtlog",
    "cheb_exp",
    "cheb_exp_logp",
    "sqrt_race",
    "residue_f_q",
    "residue_F_q",
    "riesz_q",
    "riesz_q_lognorm",
    "screw_g0",
    "screw_ginf",
    "screw_total",
    "modulus_avg_bruteforce",
    "modulus_avg_fast",
    "titchmarsh",
)

_PRIMED_KINDS = {"psi_half"}
_SHIFTABLE_KINDS = {"riesz_q", "riesz_q_lognorm"}
_CHARACTER_KINDS = {"f_chi", "riesz_chi"}
_MODULUS_KINDS = {"residue_f_q", "residue_F_q", "riesz_q", "riesz_q_lognorm"}
_AVERAGE_KINDS = {"modulus_avg_bruteforce", "modulus_avg_fast"}

# Brute-force feasibility ceiling for the modulus averages.
_BRUTEFORCE_X_MAX = 2000
_BRUTEFORCE_Q_MAX = 2000
_BRUTEFORCE_SHIFTED_X_MAX = 550


class HypothesisError(ValueError):
    """A fast-path identity was requested outside its validity range."""


@dataclass(frozen=True)
class SumSpec:
    """Selects one sum kind plus its parameters for sweeps and dispatch."""

    kind: str
    modulus: int | None = None
    residue: int | None = None
    character: DirichletCharacter | None = None
    primed: bool = True
    shift_e2: bool = False
    q_limit: int | None = None
    mode: str | None = None  # prime_only_sqrtlog: {chi4 | shifted_trivial}
    variant: str | None = None  # modulus averages: {plain | shifted}

    def __post_init__(self):
        if self.kind not in SUM_KINDS:
            raise ValueError(f"unknown sum kind {self.kind!r}")
        if not self.primed and self.kind not in _PRIMED_KINDS:
            raise ValueError(
                "the primed flag only applies to kinds defined with the "
                "primed convention"
            )
        if self.shift_e2 and self.kind not in _SHIFTABLE_KINDS:
            raise ValueError(
                f"shift_e2 does not apply to kind {self.kind!r}; shifted "
                "kinds have the shift built in"
            )
        if self.kind in _CHARACTER_KINDS and self.character is None:
            raise ValueError(f"kind {self.kind!r} needs a character")
        if self.kind in _MODULUS_KINDS and self.modulus is None:
            raise ValueError(f"kind {self.kind!r} needs a modulus")
        if (
            self.kind == "psi_half"
            and self.modulus is not None
            and self.residue is None
        ):
            raise ValueError("psi_half with a modulus also needs a residue")
        if self.variant is not None and self.kind not in _AVERAGE_KINDS:
            raise ValueError("variant only applies to the modulus averages")


@dataclass(frozen=True)
class SumSeries:
    """Sampled values of one sum kind along increasing x."""

    spec: SumSpec
    samples: tuple[tuple[float, float, int, float], ...] = field(repr=False)

    def __post_init__(self):
        xs = [s[0] for s in self.samples]
        if any(b >= a for a, b in zip(xs[1:], xs)):
            raise ValueError("sample x values must be strictly increasing")
        for x, value, _, bound in self.samples:
            if bound > 1e-6 * max(1.0, abs(value)):
                raise ValueError(
                    f"compensation bound {bound:g} too large at x={x:g}"
                )

    @property
    def xs(self) -> np.ndarray:
        return np.array([s[0] for s in self.samples])

    @property
    def values(self) -> np.ndarray:
        return np.array([s[1] for s in self.samples])


# --------------------------------------------------------------------------
# Shared term machinery.


def _require_range(table: MangoldtTable, upper: float) -> None:
    if int_boundary(upper) > table.limit:
        raise CapacityError(
            f"sum needs prime powers up to {int_boundary(upper)} but the "
            f"table stops at {table.limit}"
        )


def _terms(table: MangoldtTable, upper: float):
    """Prime powers n <= floor(upper) with their log p amplitudes."""
    k = table.count_upto(upper)
    return table.n[:k], table.log_p[:k]


def _primed_weights(ns: np.ndarray, x: float) -> np.ndarray | None:
    """Half-weight column for the boundary term of a primed sum, or None."""
    if ns.size and x == int(x) and ns[-1] == int(x):
        w = np.ones(ns.size)
        w[-1] = 0.5
        return w
    return None


def _finish(terms: np.ndarray, workers: int):
    acc = comp_sum(terms, workers=workers)
    return acc.value, int(terms.size), acc.bound


def _finish_complex(re_terms: np.ndarray, im_terms: np.ndarray, workers: int):
    re = comp_sum(re_terms, workers=workers)
    im = comp_sum(im_terms, workers=workers)
    return complex(re.value, im.value), int(re_terms.size), re.bound + im.bound


# --------------------------------------------------------------------------
# Half-power Chebyshev sums (primed convention).


def _psi_half_eval(
    x: float,
    table: MangoldtTable,
    chi: DirichletCharacter | None = None,
    progression: tuple[int, int] | None = None,
    primed: bool = True,
    workers: int = 1,
):
    if x < 1:
        raise ValueError("x must be >= 1")
    if chi is not None and progression is not None:
        raise ValueError("give either a character or a progression, not both")
    _require_range(table, x)
    ns, logp = _terms(table, x)
    if progression is not None:
        q, a = progression
        if q < 1 or math.gcd(q, a) != 1:
            raise ValueError("progression needs gcd(q, a) = 1")
        keep = ns % q == a % q
        ns, logp = ns[keep], logp[keep]
    amp = logp / np.sqrt(ns.astype(np.float64))
    if primed:
        w = _primed_weights(ns, x)
        if w is not None:
            amp = amp * w
    if chi is None:
        return _finish(amp, workers)
    vals = chi.on(ns)
    if chi.is_real:
        return _finish(amp * vals.real, workers)
    return _finish_complex(amp * vals.real, amp * vals.imag, workers)


def psi_half(
    x: float,
    table: MangoldtTable,
    chi: DirichletCharacter | None = None,
    progression: tuple[int, int] | None = None,
    workers: int = 1,
):
    """Primed sum of Lambda(n)/sqrt(n) over n <= x.

    Optionally restricted by a character weight or to a residue class
    (q, a) with gcd(q, a) = 1. The boundary term gets weight 1/2 when x is
    exactly a prime power.
    """
    return _psi_half_eval(x, table, chi, progression, True, workers)[0]


def _sqrt_sum_chi_unprimed(
    x: float, table: MangoldtTable, chi: DirichletCharacter, workers: int = 1
):
    """Unprimed sum of Lambda(n) chi(n)/sqrt(n), used by the F_q route."""
    _require_range(table, x)
    ns, logp = _terms(table, x)
    amp = logp / np.sqrt(ns.astype(np.float64))
    vals = chi.on(ns)
    return _finish_complex(amp * vals.real, amp * vals.imag, workers)


# --------------------------------------------------------------------------
# Log-weighted sums.


def _f_log_eval(
    x: float,
    table: MangoldtTable,
    chi: DirichletCharacter | None = None,
    upper: float | None = None,
    workers: int = 1,
):
    """Sum of Lambda(n) [chi(n)] / sqrt(n) * log(x/n) over n <= upper."""
    if x < 1:
        raise ValueError("x must be >= 1")
    upper = x if upper is None else upper
    _require_range(table, upper)
    ns, logp = _terms(table, upper)
    nsf = ns.astype(np.float64)
    amp = logp / np.sqrt(nsf) * (math.log(x) - np.log(nsf))
    if chi is None:
        return _finish(amp, workers)
    vals = chi.on(ns)
    if chi.is_real:
        return _finish(amp * vals.real, workers)
    return _finish_complex(amp * vals.real, amp * vals.imag, workers)


def f_log(
    x: float,
    table: MangoldtTable,
    chi: DirichletCharacter | None = None,
    workers: int = 1,
):
    """Sum of Lambda(n) [chi(n)] / sqrt(n) * log(x/n) over n <= x.

    Unprimed: the weight vanishes at n = x, so the boundary convention is
    moot. Callers compare against 4 sqrt(x) where relevant.
    """
    return _f_log_eval(x, table, chi, None, workers)[0]


def f_log_shifted(x: float, table: MangoldtTable, workers: int = 1) -> float:
    """Sum of Lambda(n)/sqrt(n) * log(x/n) over the extended range n <= x e^2."""
    return _f_log_eval(x, table, None, x * E_SQUARED, workers)[0]


# --------------------------------------------------------------------------
# Riesz-weighted left-hand sides.


def _riesz_eval(x: float, table: MangoldtTable, spec: SumSpec, workers: int = 1):
    if x <= 1:
        raise ValueError("x must be > 1 so that log x != 0")
    logx = math.log(x)
    kind = spec.kind
    if kind == "riesz":
        value, n, b = _f_log_eval(x, table, None, None, workers)
        return (value - 4.0 * math.sqrt(x)) / logx, n, b / logx
    if kind == "riesz_shifted":
        value, n, b = _f_log_eval(x, table, None, x * E_SQUARED, workers)
        return value / logx, n, b / logx
    if kind == "riesz_chi":
        value, n, b = _f_log_eval(x, table, spec.character, None, workers)
        if isinstance(value, complex):
            return value / logx, n, b / logx
        return value / logx, n, b / logx
    if kind in ("riesz_q", "riesz_q_lognorm"):
        q = spec.modulus
        upper = x * E_SQUARED if spec.shift_e2 else x
        _require_range(table, upper)
        ns, logp = _terms(table, upper)
        keep = ns % q == 1 % q
        ns, logp = ns[keep], logp[keep]
        nsf = ns.astype(np.float64)
        amp = logp / np.sqrt(nsf) * (1.0 - np.log(nsf) / logx)
        value, n, b = _finish(amp, workers)
        if kind == "riesz_q":
            if not spec.shift_e2:
                value -= 4.0 * math.sqrt(x) / (euler_phi(q) * logx)
            return value, n, b
        value /= logx
        if not spec.shift_e2:
            value -= 4.0 * math.sqrt(x) / (euler_phi(q) * logx**2)
        return value, n, b / logx
    raise ValueError(f"kind {kind!r} is not a Riesz-family kind")


def riesz_sum(x: float, table: MangoldtTable, spec: SumSpec, workers: int = 1):
    """The full left-hand side of the selected Riesz-weighted statement.

    Kinds and their expressions (the weight always uses log x, even on the
    extended range):

    * ``riesz``: sum_{n<=x} Lambda(n)/sqrt(n) (1 - log n/log x)
      - 4 sqrt(x)/log x; tends to -zeta'/zeta(1/2) when all zeros are
      central and the zero sum is small.
    * ``riesz_shifted``: same weight, range n <= x e^2, no subtraction.
    * ``riesz_chi``: character-weighted, range n <= x, no subtraction;
      tends to -L'/L(1/2, chi).
    * ``riesz_q``: restricted to n = 1 mod q; unshifted subtracts
      4 sqrt(x)/(phi(q) log x); shifted (shift_e2) has no subtraction.
    * ``riesz_q_lognorm``: the riesz_q expression divided by log x, with
      the unshifted subtraction 4 sqrt(x)/(phi(q) (log x)^2); the limit
      counts central zeros, so it vanishes under nonvanishing.
    """
    return _riesz_eval(x, table, spec, workers)[0]


# --------------------------------------------------------------------------
# Prime-only race sums.


def _odd_primes(table: MangoldtTable, upper: float):
    k = table.count_upto(upper)
    ns = table.n[:k]
    logp = table.log_p[:k]
    keep = table.is_prime[:k] & (ns > 2)
    return ns[keep], logp[keep]


def _prime_only_eval(x: float, table: MangoldtTable, mode: str, workers: int = 1):
    if x < 2:
        raise ValueError("x must be >= 2")
    if mode == "chi4":
        _require_range(table, x)
        ps, logp = _odd_primes(table, x)
        psf = ps.astype(np.float64)
        sign = np.where(ps % 4 == 1, 1.0, -1.0)
        terms = sign * logp * np.sqrt(x / psf) * np.log(x / psf)
        return _finish(terms, workers)
    if mode == "shifted_trivial":
        upper = x * E_SQUARED
        _require_range(table, upper)
        k = table.count_upto(upper)
        keep = table.is_prime[:k]
        ps = table.n[:k][keep].astype(np.float64)
        logp = table.log_p[:k][keep]
        terms = logp * np.sqrt(x / ps) * np.log(x / ps)
        return _finish(terms, workers)
    raise ValueError(f"unknown mode {mode!r}")


def prime_only_sqrtlog(
    x: float, table: MangoldtTable, mode: str, workers: int = 1
) -> float:
    """Race sums over primes with the sqrt(x/p) log(x/p) weight.

    mode="chi4": sum over odd p <= x of (-1)^((p-1)/2) log p
    sqrt(x/p) log(x/p); drifts to -infinity exactly when the odd quadratic
    character mod 4 has all its L-zeros central.
    mode="shifted_trivial": sum over all p <= x e^2 of log p sqrt(x/p)
    log(x/p); the weight is negative beyond p = x.
    """
    return _prime_only_eval(x, table, mode, workers)[0]


def prime_square_log_sum(x: float, table: MangoldtTable, workers: int = 1) -> float:
    """Sum over p <= sqrt(x) of (log p / p) * log(x/p^2).

    The prime-square block of the race decomposition; grows like
    (1/4)(log x)^2 with a slowly decaying relative error.
    """
    if x < 4:
        return 0.0
    root = math.sqrt(x)
    _require_range(table, root)
    k = table.count_upto(root)
    keep = table.is_prime[:k]
    ps = table.n[:k][keep].astype(np.float64)
    logp = table.log_p[:k][keep]
    terms = logp / ps * (math.log(x) - 2.0 * np.log(ps))
    return _finish(terms, workers)[0]


def _chebyshev_eval(x: float, table: MangoldtTable, weight: str, workers: int = 1):
    if x < 3:
        raise ValueError("x must be >= 3")
    if weight in ("exp", "exp_logp"):
        upper = EXP_WEIGHT_CUTOFF * x
        _require_range(table, upper)
        ps, logp = _odd_primes(table, upper)
        psf = ps.astype(np.float64)
        sign = np.where(ps % 4 == 1, 1.0, -1.0)
        damp = np.exp(-psf / x)
        terms = sign * damp if weight == "exp" else sign * logp * damp
        return _finish(terms, workers)
    if weight == "sqrt_race":
        _require_range(table, x)
        ps, _ = _odd_primes(table, x)
        psf = ps.astype(np.float64)
        sign = np.where(ps % 4 == 1, 1.0, -1.0)
        return _finish(sign * np.sqrt(x / psf), workers)
    raise ValueError(f"unknown weight {weight!r}")


def chebyshev_weight_sum(
    x: float, table: MangoldtTable, weight: str, workers: int = 1
) -> float:
    """Prime races with smooth or square-root weights.

    weight="exp": sum over odd p of (-1)^((p-1)/2) e^(-p/x), truncated at
    p > 41.5 x where e^(-p/x) < 1e-18 (the table must reach that far).
    weight="exp_logp": same with an extra log p factor.
    weight="sqrt_race": sum over 2 < p <= x of (-1)^((p-1)/2) sqrt(x/p).
    """
    return _chebyshev_eval(x, table, weight, workers)[0]


# --------------------------------------------------------------------------
# Screw functions.


def _screw_g0_eval(t: float, table: MangoldtTable, workers: int = 1):
    at = abs(t)
    x = math.exp(at)
    _require_range(table, x)
    value, n, b = _f_log_eval(x, table, None, None, workers)
    value -= 4.0 * (math.exp(at / 2.0) + math.exp(-at / 2.0) - 2.0)
    return value, n, b


def screw_g0(t: float, table: MangoldtTable, workers: int = 1) -> float:
    """Non-archimedean screw component at parameter t.

    g0(t) = sum_{n <= e^|t|} Lambda(n)/sqrt(n) (|t| - log n)
            - 4 (e^(t/2) + e^(-t/2) - 2).
    """
    return _screw_g0_eval(t, table, workers)[0]


def screw_ginf(t: float) -> float:
    """Archimedean screw component at parameter t.

    g_inf(t) = -(|t|/2)(psi(1/4) - log pi)
               - (1/4)(Phi(1,2,1/4) - e^(-|t|/2) Phi(e^(-2|t|),2,1/4)),
    with Phi(1,2,1/4) evaluated as the Hurwitz value zeta(2, 1/4) (the
    z -> 1 endpoint of the Lerch series).
    """
    at = abs(t)
    lead = -(at / 2.0) * (digamma(0.25) - math.log(math.pi))
    phi_at_one = float(hurwitz_zeta(2.0, 0.25).real)
    phi_here = lerch_phi(math.exp(-2.0 * at), 2.0, 0.25)
    return lead - 0.25 * (phi_at_one - math.exp(-at / 2.0) * phi_here)


def screw_total(t: float, table: MangoldtTable, workers: int = 1) -> float:
    """g0(t) + g_inf(t); nonpositive for all t exactly when all zeta zeros
    are central."""
    return screw_g0(t, table, workers) + screw_ginf(t)


# --------------------------------------------------------------------------
# Residue-class sums and their character routes.


def _residue_direct_eval(
    x: float, q: int, table: MangoldtTable, kind: str, workers: int = 1
):
    _require_range(table, x)
    ns, logp = _terms(table, x)
    keep = ns % q == 1 % q
    ns, logp = ns[keep], logp[keep]
    nsf = ns.astype(np.float64)
    shift = 0.0 if kind == "f_q" else 2.0
    amp = logp / np.sqrt(nsf) * (math.log(x) - np.log(nsf) - shift)
    value, n, b = _finish(amp, workers)
    if kind == "f_q":
        value -= 4.0 * math.sqrt(x) / euler_phi(q)
    return value, n, b


def residue_sums(
    x: float,
    q: int,
    table: MangoldtTable,
    kind: str,
    route: str = "direct",
    workers: int = 1,
) -> float:
    """The n = 1 mod q restricted log-weighted sums.

    kind="f_q": sum_{n<=x, n=1 mod q} Lambda(n)/sqrt(n) log(x/n)
    - 4 sqrt(x)/phi(q).
    kind="F_q": the same restriction and range with weight log(x/(n e^2)).

    route="direct" evaluates the restricted sum; route="characters"
    averages the character-weighted sums over the full group: f_q is
    (1/phi) sum_chi f_chi - 4 sqrt(x)/phi, and F_q is (1/phi) sum_chi
    f_chi - (2/phi) sum_chi sum_n Lambda(n) chi(n)/sqrt(n). The routes
    are term-for-term regroupings and agree to rounding.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if kind not in ("f_q", "F_q"):
        raise ValueError(f"unknown kind {kind!r}")
    if route == "direct":
        return _residue_direct_eval(x, q, table, kind, workers)[0]
    if route != "characters":
        raise ValueError(f"unknown route {route!r}")
    phi = euler_phi(q)
    group = character_group(q)
    total = 0.0 + 0.0j
    for chi in group:
        v = _f_log_eval(x, table, chi, None, workers)[0]
        total += v
    if kind == "F_q":
        for chi in group:
            total -= 2.0 * _sqrt_sum_chi_unprimed(x, table, chi, workers)[0]
        return total.real / phi
    return total.real / phi - 4.0 * math.sqrt(x) / phi


# --------------------------------------------------------------------------
# Averages over moduli.


def _collapse_weights(ns: np.ndarray) -> np.ndarray:
    """sum over q >= 3, q | n-1 of phi(q): n-3 for odd prime powers (n-1
    even, so phi(1)+phi(2) = 2 drops out) and n-2 for powers of two."""
    return np.where(ns % 2 == 1, ns - 3, ns - 2).astype(np.float64)


def _modulus_avg_fast(
    x: float, Q: int, table: MangoldtTable, variant: str, workers: int
):
    if Q < x:
        raise HypothesisError(
            "the divisor collapse needs Q >= x; smaller Q truncates the "
            "divisor sums"
        )
    upper = x if variant == "plain" else x * E_SQUARED
    _require_range(table, upper)
    ns, logp = _terms(table, upper)
    nsf = ns.astype(np.float64)
    amp = logp / np.sqrt(nsf) * (math.log(x) - np.log(nsf)) * _collapse_weights(ns)
    value, n, b = _finish(amp, workers)
    if variant == "plain":
        value -= 4.0 * math.sqrt(x) * (Q - 2)
    return value, n, b


def _character_block_sum(q: int, ns: np.ndarray, amp: np.ndarray) -> float:
    """sum over chi mod q and n of chi(n) amp(n), by explicit enumeration.

    Compresses to distinct coprime residues, then contracts the full
    character value matrix against the per-residue totals.
    """
    res = (ns % q).astype(np.int64)
    uniq, inv = np.unique(res, return_inverse=True)
    bucket = np.zeros(uniq.size)
    np.add.at(bucket, inv, amp)
    coprime = np.gcd(uniq, q) == 1
    uniq, bucket = uniq[coprime], bucket[coprime]
    if uniq.size == 0:
        return 0.0
    group = character_group(q)
    vm = group.value_matrix(uniq)
    per_char = vm @ bucket.astype(np.complex128)
    return float(per_char.sum().real)


def _modulus_avg_bruteforce(
    x: float, Q: int, table: MangoldtTable, variant: str, workers: int
):
    if x > _BRUTEFORCE_X_MAX or Q > _BRUTEFORCE_Q_MAX:
        raise CapacityError(
            f"brute force is budgeted for x <= {_BRUTEFORCE_X_MAX} and "
            f"Q <= {_BRUTEFORCE_Q_MAX}"
        )
    sqx = math.sqrt(x)
    if variant == "plain":
        _require_range(table, x)
        ns, logp = _terms(table, x)
        nsf = ns.astype(np.float64)
        amp = logp / np.sqrt(nsf) * (math.log(x) - np.log(nsf))
        total = 0.0
        for q in range(3, Q + 1):
            inner = _character_block_sum(q, ns, amp) if q <= x else 0.0
            total += inner - 4.0 * sqx
        return total, int(ns.size), 0.0
    if x > _BRUTEFORCE_SHIFTED_X_MAX:
        raise CapacityError(
            "shifted brute force enumerates every modulus up to x e^2 and "
            f"is budgeted for x <= {_BRUTEFORCE_SHIFTED_X_MAX}"
        )
    if Q < x:
        raise HypothesisError(
            "the shifted average is asserted for Q >= x; its value is the "
            "untruncated modulus sum, so smaller Q has no defined reading"
        )
    upper = x * E_SQUARED
    _require_range(table, upper)
    ns, logp = _terms(table, upper)
    nsf = ns.astype(np.float64)
    amp = logp / np.sqrt(nsf) * (math.log(x) - np.log(nsf))
    q_top = int_boundary(upper)
    total = 0.0
    for q in range(3, q_top + 1):
        total += _character_block_sum(q, ns, amp)
    return total, int(ns.size), 0.0


def modulus_average_sum(
    x: float,
    Q: int,
    table: MangoldtTable,
    path: str = "fast",
    variant: str = "plain",
    workers: int = 1,
) -> float:
    """Log-weighted character sums aggregated over all moduli 3 <= q <= Q.

    variant="plain": sum over q of (sum over chi mod q and n <= x of
    Lambda(n) chi(n)/sqrt(n) log(x/n) - 4 sqrt(x)); grows like
    4 sqrt(x) ((1/9) x - Q).
    variant="shifted": the same inner sums with range n <= x e^2 and no
    subtraction. Its divisor collapse is untruncated (every q up to x e^2
    contributes), so Q enters only through the Q >= x hypothesis; the
    value grows like -(8/9) e^3 x sqrt(x).

    path="fast" applies the divisor-sum collapse (requires Q >= x);
    path="bruteforce" enumerates every character group explicitly and
    must agree with the fast path to rounding.
    """
    if Q < 3:
        raise ValueError("Q must be >= 3")
    if variant not in ("plain", "shifted"):
        raise ValueError(f"unknown variant {variant!r}")
    if path == "fast":
        return _modulus_avg_fast(x, Q, table, variant, workers)[0]
    if path == "bruteforce":
        return _modulus_avg_bruteforce(x, Q, table, variant, workers)[0]
    raise ValueError(f"unknown path {path!r}")


# --------------------------------------------------------------------------
# Divisor-twisted von Mangoldt sum.


_PRIME_CONSTANT_LIMIT = 10**6
PRIME_CONSTANT_TAIL = 2e-5  # bound on the p > 1e6 tail of the constant
_prime_constant_cache: dict[int, float] = {}


def titchmarsh_prime_constant(limit: int = _PRIME_CONSTANT_LIMIT) -> float:
    """sum over p <= limit of log p / (p^2 - p + 1)."""
    if limit not in _prime_constant_cache:
        ps = _simple_primes(limit).astype(np.float64)
        terms = np.log(ps) / (ps * ps - ps + 1.0)
        _prime_constant_cache[limit] = comp_sum(terms).value
    return _prime_constant_cache[limit]


@dataclass(frozen=True)
class TitchmarshResult:
    sum: float
    predicted: float


def titchmarsh_sum(
    x: float, table: MangoldtTable, sigma0: np.ndarray
) -> TitchmarshResult:
    """sum_{n<=x} Lambda(n) sigma_0(n-1) against its two-term asymptotic.

    predicted = c x log x + c (2 (gamma - P) - 1) x with
    c = zeta(2) zeta(3) / zeta(6) and P the prime constant above; the
    truncation tail of P (below 2e-5) is the dominant uncertainty of the
    prediction.
    """
    _require_range(table, x)
    total = titchmarsh_divisor_sum(x, table, sigma0).value
    c = float((zeta(2.0) * zeta(3.0) / zeta(6.0)).real)
    gamma0 = float(np.euler_gamma)
    p_const = titchmarsh_prime_constant()
    predicted = c * x * math.log(x) + c * (2.0 * (gamma0 - p_const) - 1.0) * x
    return TitchmarshResult(sum=total, predicted=predicted)


# --------------------------------------------------------------------------
# Sweeps.


def _evaluate(
    spec: SumSpec,
    x: float,
    table: MangoldtTable,
    sigma0: np.ndarray | None = None,
    workers: int = 1,
):
    """(value, n_terms, comp_bound) for one spec at one x."""
    kind = spec.kind
    if kind == "psi_half":
        prog = (
            (spec.modulus, spec.residue)
            if spec.modulus is not None and spec.character is None
            else None
        )
        out = _psi_half_eval(x, table, spec.character, prog, spec.primed, workers)
    elif kind == "f_log":
        out = _f_log_eval(x, table, None, None, workers)
    elif kind == "f_log_shifted":
        out = _f_log_eval(x, table, None, x * E_SQUARED, workers)
    elif kind == "f_chi":
        out = _f_log_eval(x, table, spec.character, None, workers)
    elif kind in ("riesz", "riesz_shifted", "riesz_chi", "riesz_q", "riesz_q_lognorm"):
        out = _riesz_eval(x, table, spec, workers)
    elif kind == "prime_only_sqrtlog":
        out = _prime_only_eval(x, table, spec.mode or "chi4", workers)
    elif kind == "cheb_exp":
        out = _chebyshev_eval(x, table, "exp", workers)
    elif kind == "cheb_exp_logp":
        out = _chebyshev_eval(x, table, "exp_logp", workers)
    elif kind == "sqrt_race":
        out = _chebyshev_eval(x, table, "sqrt_race", workers)
    elif kind == "residue_f_q":
        out = _residue_direct_eval(x, spec.modulus, table, "f_q", workers)
    elif kind == "residue_F_q":
        out = _residue_direct_eval(x, spec.modulus, table, "F_q", workers)
    elif kind == "screw_g0":
        out = _screw_g0_eval(x, table, workers)
    elif kind == "screw_ginf":
        out = (screw_ginf(x), 0, 0.0)
    elif kind == "screw_total":
        v, n, b = _screw_g0_eval(x, table, workers)
        out = (v + screw_ginf(x), n, b)
    elif kind in _AVERAGE_KINDS:
        q_lim = spec.q_limit if spec.q_limit is not None else int_boundary(x)
        variant = spec.variant or "plain"
        if kind == "modulus_avg_fast":
            out = _modulus_avg_fast(x, q_lim, table, variant, workers)
        else:
            out = _modulus_avg_bruteforce(x, q_lim, table, variant, workers)
    elif kind == "titchmarsh":
        if sigma0 is None:
            raise ValueError("titchmarsh sweeps need the divisor-count table")
        res = titchmarsh_sum(x, table, sigma0)
        out = (res.sum, 0, 0.0)
    else:  # pragma: no cover - SumSpec validation precludes this.
        raise ValueError(f"unknown kind {kind!r}")
    value, n_terms, bound = out
    if isinstance(value, complex):
        value = value.real
    return float(value), int(n_terms), float(bound)


def sweep(
    spec: SumSpec,
    xs,
    table: MangoldtTable,
    sigma0: np.ndarray | None = None,
    workers: int = 1,
) -> SumSeries:
    """Evaluate one sum kind on an increasing grid of x values.

    Sample points are distributed across threads; results are assembled in
    grid order and every reduction is deterministic, so the output is
    bit-identical for any worker count. Complex-valued kinds record the
    real part.
    """
    xs = [float(v) for v in xs]
    if workers <= 1 or len(xs) <= 1:
        rows = [(_x, *_evaluate(spec, _x, table, sigma0, 1)) for _x in xs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_evaluate, spec, _x, table, sigma0, 1) for _x in xs
            ]
            rows = [(_x, *f.result()) for _x, f in zip(xs, futures)]
    return SumSeries(spec=spec, samples=tuple(rows))
