"""Critical-line zeros of zeta and Dirichlet L-functions, and zero sums.

Zeta zeros are located as sign changes of the rotated real function
``Z(t) = exp(i theta(t)) zeta(1/2 + it)`` using Euler-Maclaurin evaluation
with roughly ``3 + t/2`` leading terms, then sharpened by bisection to an
interval of width 1e-10. The count below the scan ceiling is checked
against the smooth zero-counting estimate ``(T/2pi) log(T/(2pi e)) + 7/8``;
a discrepancy beyond +-2 triggers a finer rescan.

Dirichlet zeros use the analogous rotated completed function, which is
real on the critical line for every primitive character once the root
number is divided out.

``zero_sum`` evaluates the oscillatory sums over zeros that appear in the
truncated explicit formulas, with deterministic compensated summation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from importlib.resources import as_file as _as_file, files as _resource_files
from pathlib import Path

import numpy as np

from .characters import DirichletCharacter, root_number
from .specials import _B_EVEN, _hurwitz_em, _dirichlet_L_derivs, log_gamma
from .summation import comp_sum

_BISECT_WIDTH = 1e-10
_SCAN_STEP = 0.05
_RESCAN_STEP = 0.01
_ZETA_T_MAX = 5000.0
_DIRICHLET_T_MAX = 1000.0
_DIRICHLET_Q_MAX = 100
_PHASE_GUARD = 1e-4


class PhasePrecisionError(ValueError):
    """Stored ordinate precision too coarse for the requested phase."""


@dataclass(frozen=True)
class ZeroSet:
    """Ordinates of critical-line zeros, sorted ascending.

    ``symmetric`` means the underlying zero multiset is closed under
    ``gamma -> -gamma`` (true for zeta and real characters), so only
    positive ordinates are stored; complex characters store signed
    ordinates. ``assumes_rh`` is False when the count in range was
    verified against the smooth counting function, so the listing is
    unconditionally complete there.
    """

    ordinates: np.ndarray = field(repr=False)
    precision: float
    source: str
    assumes_rh: bool = False
    symmetric: bool = True

    def __post_init__(self):
        arr = np.asarray(self.ordinates, dtype=np.float64)
        object.__setattr__(self, "ordinates", arr)
        if arr.size and np.any(np.diff(arr) <= 0):
            raise ValueError("ordinates must be strictly increasing")

    def __len__(self) -> int:
        return int(self.ordinates.size)

    def truncated(self, t_max: float) -> "ZeroSet":
        """Restrict to |gamma| <= t_max."""
        keep = np.abs(self.ordinates) <= t_max
        return ZeroSet(
            ordinates=self.ordinates[keep],
            precision=self.precision,
            source=self.source,
            assumes_rh=self.assumes_rh,
            symmetric=self.symmetric,
        )

    def mirrored(self) -> "ZeroSet":
        """The zero set of the conjugate character: gamma -> -gamma.

        Zeros of L(s, conj(chi)) are the conjugates of those of L(s, chi),
        so the signed ordinate list is negated. Symmetric sets are their
        own mirror.
        """
        if self.symmetric:
            return self
        return ZeroSet(
            ordinates=-self.ordinates[::-1],
            precision=self.precision,
            source=self.source + ",mirrored",
            assumes_rh=self.assumes_rh,
            symmetric=False,
        )


def zero_count_estimate(t: float) -> float:
    """Smooth estimate of the number of zeta zeros with 0 < gamma <= t."""
    if t <= 2.0 * math.pi * math.e:
        return 0.0
    u = t / (2.0 * math.pi)
    return u * math.log(u / math.e) + 7.0 / 8.0


# --------------------------------------------------------------------------
# Vectorized Euler-Maclaurin zeta on the critical line.


def _zeta_block(ts: np.ndarray) -> np.ndarray:
    """zeta(1/2 + i t) for an array of t >= 0, one shared truncation."""
    ts = np.asarray(ts, dtype=np.float64)
    n_terms = int(3 + math.ceil(ts.max() / 2.0)) if ts.size else 3
    ns = np.arange(1, n_terms + 1, dtype=np.float64)
    logn = np.log(ns)
    s = 0.5 + 1j * ts
    # sum_{n<=N} n^{-s} via an outer product of phases.
    phases = np.exp(-1j * np.outer(ts, logn))
    main = phases @ (ns**-0.5)
    big = float(n_terms)
    ell = math.log(big)
    tail = np.exp((1.0 - s) * ell) / (s - 1.0)
    half = -0.5 * np.exp(-s * ell)
    corr = np.zeros_like(s)
    poch = np.ones_like(s)
    k = 0
    for j in range(1, 13):
        target = 2 * j - 1
        while k < target:
            poch = poch * (s + k)
            k += 1
        coeff = _B_EVEN[j - 1] / math.factorial(2 * j)
        corr = corr + coeff * poch * np.exp(-(s + 2 * j - 1) * ell)
    return main + tail + half + corr


def _theta_block(ts: np.ndarray) -> np.ndarray:
    """Riemann-Siegel-type rotation angle theta(t), vectorized.

    theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log pi, evaluated with a
    fixed upward shift so Stirling's series applies throughout.
    """
    ts = np.asarray(ts, dtype=np.float64)
    z = 0.25 + 0.5j * ts
    shift = 24
    acc = np.zeros_like(z)
    for k in range(shift):
        acc = acc + np.log(z + k)
    zs = z + shift
    series = np.zeros_like(zs)
    zpow = zs.copy()
    for j in range(8):
        kk = 2 * (j + 1)
        series = series + _B_EVEN[j] / (kk * (kk - 1) * zpow)
        zpow = zpow * zs * zs
    lg = (zs - 0.5) * np.log(zs) - zs + 0.5 * math.log(2.0 * math.pi) + series - acc
    return lg.imag - 0.5 * ts * math.log(math.pi)


def _z_block(ts: np.ndarray) -> np.ndarray:
    """Hardy-type real function whose sign changes locate zeta zeros."""
    return (np.exp(1j * _theta_block(ts)) * _zeta_block(ts)).real


def _bisect_brackets(fblock, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Lockstep bisection of many sign-change brackets to width 1e-10."""
    flo = fblock(lo)
    rounds = max(1, math.ceil(math.log2((hi - lo).max() / _BISECT_WIDTH)))
    for _ in range(rounds):
        mid = 0.5 * (lo + hi)
        fmid = fblock(mid)
        take_left = (flo * fmid) <= 0
        hi = np.where(take_left, mid, hi)
        lo = np.where(take_left, lo, mid)
        flo = np.where(take_left, flo, fmid)
    return 0.5 * (lo + hi)


def _scan_and_bisect(fblock, t_lo: float, t_hi: float, step: float,
                     chunk: int = 4000) -> np.ndarray:
    """Find all sign changes of a real function on a grid, then bisect."""
    edges = np.arange(t_lo, t_hi + step, step)
    values = np.empty_like(edges)
    for start in range(0, edges.size, chunk):
        sl = slice(start, min(start + chunk, edges.size))
        values[sl] = fblock(edges[sl])
    flip = values[:-1] * values[1:] < 0
    lo = edges[:-1][flip]
    hi = edges[1:][flip]
    exact = np.flatnonzero(values == 0.0)
    roots = _bisect_brackets(fblock, lo, hi) if lo.size else np.empty(0)
    if exact.size:
        roots = np.sort(np.concatenate([roots, edges[exact]]))
    return roots


def compute_zeta_zeros(t_max: float, step: float = _SCAN_STEP) -> ZeroSet:
    """Locate all zeta zeros with 0 < gamma <= t_max (t_max <= 5000).

    Scans the rotated real function on a uniform grid, bisects each sign
    change, and cross-checks the count against the smooth counting
    estimate; a discrepancy beyond +-2 triggers one rescan at a fifth of
    the step before failing.
    """
    if not 0 < t_max <= _ZETA_T_MAX:
        raise ValueError(f"t_max must lie in (0, {_ZETA_T_MAX}]")
    roots = _scan_and_bisect(_z_block, 0.5, float(t_max), step)
    roots = roots[roots <= t_max]
    expected = zero_count_estimate(t_max)
    if abs(roots.size - expected) > 2.0 and step > _RESCAN_STEP:
        roots = _scan_and_bisect(_z_block, 0.5, float(t_max), _RESCAN_STEP)
        roots = roots[roots <= t_max]
    if abs(roots.size - expected) > 2.0:
        raise ArithmeticError(
            f"found {roots.size} zeros below {t_max} but the counting "
            f"estimate gives {expected:.2f}"
        )
    return ZeroSet(
        ordinates=roots,
        precision=_BISECT_WIDTH,
        source=f"computed:zeta,t_max={t_max:g}",
        assumes_rh=False,
        symmetric=True,
    )


# --------------------------------------------------------------------------
# Dirichlet L zeros.


def _dirichlet_z_factory(chi: DirichletCharacter):
    """Real rotated completed L on the critical line, as a scalar function.

    W(t) = Re[e^{i theta_chi(t)} L(1/2 + it, chi)] with
    theta_chi(t) = Im[((s+kappa)/2) log(q/pi) + log Gamma((s+kappa)/2)]
                   - arg(root number)/2.
    """
    q = chi.modulus
    kappa = chi.parity
    half_arg_eps = 0.5 * math.atan2(root_number(chi).imag, root_number(chi).real)
    logq_pi = math.log(q / math.pi)

    def zfun(ts: np.ndarray) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=np.float64))
        out = np.empty_like(ts)
        for i, t in enumerate(ts):
            s = 0.5 + 1j * t
            w = (s + kappa) / 2.0
            theta = (w * logq_pi + log_gamma(w)).imag - half_arg_eps
            lval = _dirichlet_L_derivs(s, chi)[0]
            out[i] = (np.exp(1j * theta) * lval).real
        return out

    return zfun


def compute_dirichlet_zeros(
    chi: DirichletCharacter, t_max: float, step: float = _SCAN_STEP
) -> ZeroSet:
    """Zeros of L(s, chi) on the critical line for primitive chi.

    Real characters scan (0, t_max] and store positive ordinates
    (symmetric set); complex characters scan [-t_max, t_max] and store
    signed ordinates. Moduli up to 100 and heights up to 1000.
    """
    if chi.is_principal:
        raise ValueError("principal character reduces to zeta; use that path")
    if not chi.is_primitive:
        raise ValueError("zeros are computed for primitive characters")
    if chi.modulus > _DIRICHLET_Q_MAX:
        raise ValueError(f"modulus above the supported bound {_DIRICHLET_Q_MAX}")
    if not 0 < t_max <= _DIRICHLET_T_MAX:
        raise ValueError(f"t_max must lie in (0, {_DIRICHLET_T_MAX}]")
    zfun = _dirichlet_z_factory(chi)
    symmetric = chi.is_real
    t_lo = 1e-3 if symmetric else -float(t_max)
    roots = _scan_and_bisect(zfun, t_lo, float(t_max), step)
    roots = roots[np.abs(roots) <= t_max]
    return ZeroSet(
        ordinates=roots,
        precision=_BISECT_WIDTH,
        source=f"computed:L,q={chi.modulus},exponents={chi.exponents}",
        assumes_rh=False,
        symmetric=symmetric,
    )


# --------------------------------------------------------------------------
# Persistence.


def save_zeros(zeros: ZeroSet, path: str | Path) -> None:
    """Write a zero set as text: '# key: value' headers, one ordinate/line."""
    path = Path(path)
    lines = [
        f"# precision: {zeros.precision:.3e}",
        f"# source: {zeros.source}",
        f"# assumes_rh: {str(zeros.assumes_rh).lower()}",
        f"# symmetric: {str(zeros.symmetric).lower()}",
    ]
    lines.extend(f"{g:.12f}" for g in zeros.ordinates)
    path.write_text("\n".join(lines) + "\n")


def load_zeros(path: str | Path) -> ZeroSet:
    """Read a zero-set file; malformed content reports the line number."""
    path = Path(path)
    headers: dict[str, str] = {}
    ordinates: list[float] = []
    last = -math.inf
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*([\w-]+)\s*:\s*(.*)$", line)
            if m:
                headers[m.group(1)] = m.group(2).strip()
            continue
        try:
            g = float(line)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: not a number: {line!r}") from exc
        if g <= last:
            raise ValueError(
                f"{path}:{lineno}: ordinates must be strictly increasing "
                f"({g} after {last})"
            )
        last = g
        ordinates.append(g)
    return ZeroSet(
        ordinates=np.array(ordinates, dtype=np.float64),
        precision=float(headers.get("precision", "1e-9")),
        source=headers.get("source", str(path)),
        assumes_rh=headers.get("assumes_rh", "false").lower() == "true",
        symmetric=headers.get("symmetric", "true").lower() == "true",
    )


def load_bundled_zeta_zeros() -> ZeroSet:
    """The 2000 zeta ordinates shipped with the package."""
    res = _resource_files("prime_bias_lab").joinpath("data/zeta_zeros_2000.txt")
    with _as_file(res) as p:
        return load_zeros(p)


# --------------------------------------------------------------------------
# Sums over zeros.


@dataclass(frozen=True)
class ZeroSumResult:
    """A truncated sum over zeros with its bookkeeping."""

    value: float | complex
    n_terms: int
    comp_bound: float
    t_max: float
    tail_estimate: float | None


def ensure_phase_precision(zeros: ZeroSet, x: float, t_max: float | None = None):
    """Raise PhasePrecisionError if gamma*log(x) phases cannot be resolved.

    The worst-case phase error is max|gamma| * ordinate precision *
    |log x|; sums over zeros refuse to run when it exceeds 1e-4.
    """
    gam = zeros.ordinates
    if t_max is not None:
        gam = gam[np.abs(gam) <= t_max]
    if gam.size == 0:
        return
    g_edge = float(np.abs(gam).max())
    slop = g_edge * zeros.precision * abs(math.log(x))
    if slop > _PHASE_GUARD:
        raise PhasePrecisionError(
            "ordinate precision insufficient: max|gamma| * precision * "
            f"|log x| = {slop:.2e} > {_PHASE_GUARD:g}"
        )


def zero_sum(
    x: float,
    zeros: ZeroSet,
    power: int,
    t_max: float | None = None,
    workers: int = 1,
) -> ZeroSumResult:
    """Truncated oscillatory sum over zeros rho = 1/2 + i gamma.

    power=1 evaluates ``sum_rho x^{i gamma} / (i gamma)``, which for a
    symmetric set collapses to ``2 sum_{gamma>0} sin(gamma log x)/gamma``;
    power=2 evaluates ``sum_rho x^{i gamma} / (i gamma)^2 =
    -2 sum_{gamma>0} cos(gamma log x)/gamma^2``. Terms are combined with
    deterministic compensated summation. For power 2 a density-based
    estimate of the truncated tail is attached.

    Raises PhasePrecisionError when stored ordinate precision is too
    coarse to resolve the phases gamma*log(x).
    """
    if x <= 0:
        raise ValueError("x must be positive")
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    gam = zeros.ordinates
    if t_max is not None:
        gam = gam[np.abs(gam) <= t_max]
    if gam.size == 0:
        return ZeroSumResult(0.0, 0, 0.0, 0.0, None)
    logx = math.log(x)
    g_edge = float(np.abs(gam).max())
    ensure_phase_precision(zeros, x, t_max)
    tail = None
    if power == 2 and g_edge > 2.0 * math.pi:
        # Integrate the mean zero density log(gamma/2pi)/(2pi) against
        # 2/gamma^2 beyond the last ordinate used.
        tail = (math.log(g_edge / (2.0 * math.pi)) + 1.0) / (math.pi * g_edge)
    if zeros.symmetric:
        if power == 1:
            terms = 2.0 * np.sin(gam * logx) / gam
        else:
            terms = -2.0 * np.cos(gam * logx) / (gam * gam)
        acc = comp_sum(terms, workers=workers)
        return ZeroSumResult(acc.value, int(gam.size), acc.bound, g_edge, tail)
    ig = 1j * gam
    cterms = np.exp(ig * logx) / ig**power
    re = comp_sum(cterms.real, workers=workers)
    im = comp_sum(cterms.imag, workers=workers)
    return ZeroSumResult(
        complex(re.value, im.value),
        int(gam.size),
        re.bound + im.bound,
        g_edge,
        tail,
    )
