"""Probe explicit-formula values before freezing them into tests."""
import math
import time

import numpy as np

from prime_bias_lab import characters, sieve, zeros
from prime_bias_lab.bias_sums import SumSpec, f_log, riesz_sum
from prime_bias_lab.explicit import (
    SingularityError,
    character_log_weighted_formula,
    character_power_sum_formula,
    character_shifted_formula,
    log_weighted_formula,
    power_sum_formula,
    residual_profile,
    residue_zero_formula,
    shifted_log_weighted_formula,
    shifted_riesz_decomposition,
    sqrt_scale_formula,
    trivial_zero_tail,
    zero_block,
)
from prime_bias_lab.specials import central_constants

t0 = time.time()
table6 = sieve.build_mangoldt_table(10**6)
zz = zeros.load_bundled_zeta_zeros()
c4 = characters.chi4()
c4z = zeros.compute_dirichlet_zeros(c4, 500.0)
g3 = characters.character_group(3)
c3 = next(ch for ch in g3 if not ch.is_principal)
c3z = zeros.compute_dirichlet_zeros(c3, 500.0)
print(f"setup {time.time()-t0:.1f}s  chi3 zeros: {c3z.ordinates.size}")

# 1. power_sum at s=0 (psi formula), x = 1000.5
e = power_sum_formula(1000.5, 0.0, table6, zz)
print(f"power_sum s=0 x=1000.5: residual={e.residual!r} n_zeros={e.n_zeros}")
e5 = power_sum_formula(1000.5, 0.0, table6, zz, t_max=500.0)
print(f"  ... t_max=500: residual={e5.residual!r}")

# 2. sqrt_scale at 10000.5 and 10^4.5
e = sqrt_scale_formula(10000.5, table6, zz)
print(f"sqrt_scale x=10000.5: residual={e.residual!r}")
e = sqrt_scale_formula(10**4.5, table6, zz)
print(f"sqrt_scale x=10^4.5={10**4.5!r}: residual={e.residual!r} x={e.x!r}")

# 3. log_weighted at 1e3, 1e4, 1e6
for x in (1000.0, 10000.0, 1e6):
    e = log_weighted_formula(x, table6, zz)
    print(f"log_weighted x={x}: residual={e.residual!r} x_used={e.x!r}")

# 4. residual_profile over the 20-point criterion grid
xs = np.geomspace(100.0, 1e6, 20)
t0 = time.time()
prof_lw = residual_profile(log_weighted_formula, xs, table6, zz)
print(f"profile log_weighted: {prof_lw}  ({time.time()-t0:.1f}s)")
res_all = [log_weighted_formula(float(x), table6, zz).residual for x in xs]
print(f"  max residual over grid (T=full): {max(res_all)!r}")
t0 = time.time()
prof_ss = residual_profile(sqrt_scale_formula, xs, table6, zz)
print(f"profile sqrt_scale: {prof_ss}  ({time.time()-t0:.1f}s)")

# 5. character formulas (chi4)
e = character_power_sum_formula(1000.5, 0.5, c4, table6, c4z)
print(f"char_power chi4 s=1/2 x=1000.5: residual={e.residual!r}")
e = character_power_sum_formula(10**3.5, 0.5, c4, table6, c4z)
print(f"char_power chi4 s=1/2 x=10^3.5: residual={e.residual!r}")
e = character_log_weighted_formula(1000.0, c4, table6, c4z)
print(f"char_log_weighted chi4 x=1e3: residual={e.residual!r}")
e = character_shifted_formula(1000.5, c4, table6, c4z)
print(f"char_shifted chi4 x=1000.5: residual={e.residual!r}")
e = character_shifted_formula(10000.5, c4, table6, c4z)
print(f"char_shifted chi4 x=10000.5: residual={e.residual!r}")

# 6. shifted_log_weighted at 1000.5 + algebra identity
x = 1000.5
e308 = shifted_log_weighted_formula(x, table6, zz)
el = log_weighted_formula(x, table6, zz, strict=True)
es = sqrt_scale_formula(x, table6, zz, strict=True)
alg = abs(
    (e308.assembled)
    - (el.assembled + 4.0 * math.sqrt(x) - 2.0 * es.assembled)
)
algd = abs(
    e308.direct_value - (el.direct_value + 4.0 * math.sqrt(x) - 2.0 * es.direct_value)
)
print(f"shifted_log_weighted x=1000.5: residual={e308.residual!r} "
      f"alg={alg!r} algd={algd!r}")

# 7. shifted_riesz_decomposition at 1e4 (y = 7.4e4 <= 1e6)
d = shifted_riesz_decomposition(1e4, table6, zz)
print(f"riesz_decomp x=1e4: residual={d.residual!r} power2={d.power2_term!r} "
      f"osc={d.oscillation_term!r}")
d3 = shifted_riesz_decomposition(1e3, table6, zz)
d5 = shifted_riesz_decomposition(1e5, table6, zz)
print(f"  power2 at 1e3={d3.power2_term!r} at 1e5={d5.power2_term!r}")
# cross-check against zero_sum
y = 1e4 * math.exp(2.0)
zs1 = zeros.zero_sum(y, zz, power=1)
zs2 = zeros.zero_sum(y, zz, power=2)
print(f"  osc vs zero_sum: {abs(d.oscillation_term - 2.0*zs1.value/math.log(1e4))!r}")
print(f"  p2 vs zero_sum:  {abs(d.power2_term + zs2.value/math.log(1e4))!r}")

# 8. residue_zero_formula
t0 = time.time()
e = residue_zero_formula(1000.0, 4, table6, zz, {c4: c4z}, kind="f_q", t_max=500.0)
print(f"residue q=4 f_q x=1e3: residual={e.residual!r} n_zeros={e.n_zeros}")
e = residue_zero_formula(1000.0, 4, table6, zz, {c4: c4z}, kind="F_q", t_max=500.0)
print(f"residue q=4 F_q x=1e3: residual={e.residual!r}")
e = residue_zero_formula(1000.0, 3, table6, zz, {c3: c3z}, kind="f_q", t_max=500.0)
print(f"residue q=3 f_q x=1e3: residual={e.residual!r}  ({time.time()-t0:.1f}s)")
# conjugate-supplied path: give zeros under the conjugate key
e_conj = residue_zero_formula(
    1000.0, 3, table6, zz, {c3.conjugate(): c3z.mirrored()}, kind="f_q", t_max=500.0
)
print(f"residue q=3 via conjugate key: residual={e_conj.residual!r}")

# 9. trivial tail checks
tail = trivial_zero_tail(10.0, 0.5)
brute3 = sum(10 ** (-2 * k - 0.5) / (2 * k + 0.5) for k in (1, 2, 3))
brute8 = sum(10 ** (-2 * k - 0.5) / (2 * k + 0.5) for k in range(1, 9))
print(f"tail(10, 1/2): {tail!r}  |t-b3|={abs(tail-brute3)!r} |t-b8|={abs(tail-brute8)!r}")
t1 = trivial_zero_tail(10.0, 0.5, power=1, kappa=1)
first = 10 ** (-1.5) / 1.5
print(f"tail kappa=1 first-term frac: {abs(t1 - first)/first!r}")

# 10. singularity errors
for s in (1.0, -2.0, 0.5 + 14.134725141734693j):
    try:
        power_sum_formula(1000.5, s, table6, zz)
        print(f"s={s}: NO RAISE (bad)")
    except SingularityError as exc:
        print(f"s={s}: SingularityError: {exc}")

# 11. conjugate symmetry
ea = power_sum_formula(1000.5, 0.3 + 2.0j, table6, zz)
eb = power_sum_formula(1000.5, 0.3 - 2.0j, table6, zz)
print(f"conj symmetry: |assembled diff|={abs(ea.assembled - np.conj(eb.assembled))!r} "
      f"|direct diff|={abs(ea.direct_value - np.conj(eb.direct_value))!r} "
      f"res diff={abs(ea.residual - eb.residual)!r}")

# 12. strict vs default at x = 243 = 3^5
ed = log_weighted_formula(243.0, table6, zz)
es_ = log_weighted_formula(243.0, table6, zz, strict=True)
print(f"lw at 243: default x={ed.x} strict x={es_.x} strict residual={es_.residual!r}")
eqs = sqrt_scale_formula(243.0, table6, zz, strict=True)
print(f"sqrt_scale strict at 243: residual={eqs.residual!r}")

# 13. riesz oracle identity at 1e6
e = log_weighted_formula(1e6, table6, zz, strict=True)
cc = central_constants()
rz = riesz_sum(1e6, table6, SumSpec(kind="riesz"))
lhs = rz - (-cc.zeta_logderiv_half)
rhs = float((e.assembled.real + cc.zeta_logderiv_half * math.log(1e6))) / math.log(1e6)
print(f"riesz identity at 1e6: |lhs-rhs|={abs(lhs - rhs)!r} "
      f"(residual/logx={e.residual/math.log(1e6)!r})")

# 14. zero_block manual cross-check
gam = zz.ordinates[:50]
s = 0.3 + 2.0j
x = 500.5
rho = 0.5 + 1j * gam
manual = np.sum(x ** (rho - s) / (rho - s)) + np.sum(
    x ** (np.conj(rho) - s) / (np.conj(rho) - s)
)
zb = zero_block(x, gam, s, 1, True)
print(f"zero_block manual diff: {abs(zb - manual)!r}")
