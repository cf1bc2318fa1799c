import math, time
import numpy as np
from prime_bias_lab.sieve import build_mangoldt_table
from prime_bias_lab.characters import chi4
from prime_bias_lab import explicit as ex
from prime_bias_lab.zeros import load_bundled_zeta_zeros, compute_dirichlet_zeros, zero_sum
from prime_bias_lab.specials import central_constants
from prime_bias_lab.bias_sums import SumSpec, riesz_sum

T6 = build_mangoldt_table(10**6)
Z = load_bundled_zeta_zeros()
print("zeta zeros:", len(Z), "max", Z.ordinates[-1])

# 1. psi(x) formula at s=0, x=1000.5, T=2000
e = ex.power_sum_formula(1000.5, 0.0, T6, Z, t_max=2000.0)
print(f"s=0 x=1000.5: direct {e.direct_value.real:.6f} assembled {e.assembled.real:.6f} residual {e.residual:.2e}")

# 2. s=1/2 at x=10000.5 via power_sum and via sqrt_scale (same residual)
e2 = ex.power_sum_formula(10000.5, 0.5, T6, Z, t_max=2000.0)
e3 = ex.sqrt_scale_formula(10000.5, T6, Z, t_max=2000.0)
print(f"s=1/2 x=10000.5: power_sum residual {e2.residual:.2e} sqrt_scale residual {e3.residual:.2e}")

# 3. trivial tail at x=10, s=1/2 vs 3 terms
t = ex.trivial_zero_tail(10.0, 0.5, power=1, kappa=0)
hand = sum(10.0**(-2*k-0.5)/(2*k+0.5) for k in (1,2,3))
print(f"tail(10,1/2): {t.real:.16e} vs 3-term {hand:.16e} diff {abs(t.real-hand):.2e}")
# kappa=1 tail starts at x^-3/2/(3/2)
t1 = ex.trivial_zero_tail(10.0, 0.5, power=1, kappa=1)
print(f"kappa=1 first-term ratio: {t1.real / (10.0**-1.5/1.5):.6f} (→1 as x grows)")

# 4. log_weighted at x=1e4 T=2000
e4 = ex.log_weighted_formula(1e4, T6, Z, t_max=2000.0)
print(f"log_weighted x=1e4: residual {e4.residual:.2e}")

# acceptance-3 grid: 20 log-spaced x in [1e2,1e6] off prime powers
xs = np.floor(np.logspace(2, 6, 20)) + 0.5
t0 = time.time()
r301_2000 = [ex.log_weighted_formula(float(x), T6, Z, t_max=2000.0).residual for x in xs]
r307_2000 = [ex.sqrt_scale_formula(float(x), T6, Z, t_max=2000.0).residual for x in xs]
r301_500 = [ex.log_weighted_formula(float(x), T6, Z, t_max=500.0).residual for x in xs]
r307_500 = [ex.sqrt_scale_formula(float(x), T6, Z, t_max=500.0).residual for x in xs]
dt = time.time()-t0
print(f"grid time {dt:.1f}s")
print(f"301 T=2000: max {max(r301_2000):.4f} mean {np.mean(r301_2000):.5f} (≤0.02?)")
print(f"307 T=2000: max {max(r307_2000):.4f} mean {np.mean(r307_2000):.5f} (≤0.05?)")
print(f"avg shrink 301: {np.mean(r301_500):.5f} -> {np.mean(r301_2000):.5f}")
print(f"avg shrink 307: {np.mean(r307_500):.5f} -> {np.mean(r307_2000):.5f}")

# 5. 308 combination + 309
e8 = ex.shifted_log_weighted_formula(10000.5, T6, Z, t_max=2000.0)
print(f"308 x=10000.5: residual {e8.residual:.2e}")
d9 = ex.shifted_riesz_decomposition(1e4, T6, Z, t_max=2000.0)
print(f"309 x=1e4: direct {d9.direct_value:.6f} assembled {d9.assembled:.6f} residual {d9.residual:.2e}")
d9a = ex.shifted_riesz_decomposition(1e3, T6, Z, t_max=2000.0)
d9b = ex.shifted_riesz_decomposition(1.3e5, T6, Z, t_max=2000.0)
print(f"309 power2 decay: |{d9a.power2_term:.5f}| (1e3) -> |{d9b.power2_term:.5f}| (1.3e5)")

# 6. conjugate symmetry at s=2+3j
sa = ex.power_sum_formula(500.5, 2+3j, T6, Z, t_max=1000.0)
sb = ex.power_sum_formula(500.5, 2-3j, T6, Z, t_max=1000.0)
print("conj symmetry:", abs(sa.assembled - np.conj(sb.assembled)), abs(sa.direct_value - np.conj(sb.direct_value)))

# 7. riesz oracle identity at 1e6: residual301/log x
e6 = ex.log_weighted_formula(1e6 + 0.5, T6, Z)
cc = central_constants()
direct = riesz_sum(1e6 + 0.5, T6, SumSpec(kind="riesz"))
ident = direct - float(e6.assembled.real)/math.log(1e6+0.5)
print(f"riesz identity gap at 1e6: {abs(ident):.2e} (residual/logx = {e6.residual/math.log(1e6):.2e})")
print(f"  zero-sum tail estimate p2: {zero_sum(1e6, Z, 2).tail_estimate:.2e}")

# 8. chi4 zeros to 500 and L-oracles
t0 = time.time()
Z4 = compute_dirichlet_zeros(chi4(), 500.0)
print(f"chi4 zeros to 500: {len(Z4)} in {time.time()-t0:.1f}s; first {Z4.ordinates[0]:.6f}")
eL = ex.character_power_sum_formula(1000.5, 0.5, chi4(), T6, Z4, t_max=500.0)
print(f"L power_sum chi4 x=1000.5 T=500: residual {eL.residual:.2e} (≤0.05?)")
e405 = ex.character_log_weighted_formula(1000.5, chi4(), T6, Z4)
print(f"405 chi4 x=1000.5: residual {e405.residual:.2e} (≤0.02?)")

# 9. residue assembly q=4 (needs chi4 zeros) and q=3
from prime_bias_lab.characters import character_group
g4 = character_group(4)
nonpr4 = [c for c in g4 if not c.is_principal][0]
r4 = ex.residue_zero_formula(10000.5, 4, T6, Z, {nonpr4: Z4}, kind="f_q")
print(f"residue f_q q=4: residual {r4.residual:.2e}")
r4F = ex.residue_zero_formula(10000.5, 4, T6, Z, {nonpr4: Z4}, kind="F_q")
print(f"residue F_q q=4: residual {r4F.residual:.2e}")
t0 = time.time()
g3 = character_group(3)
nonpr3 = [c for c in g3 if not c.is_principal][0]
Z3 = compute_dirichlet_zeros(nonpr3, 200.0)
print(f"chi3 zeros to 200: {len(Z3)} in {time.time()-t0:.1f}s")
r3 = ex.residue_zero_formula(10000.5, 3, T6, Z, {nonpr3: Z3}, kind="f_q")
print(f"residue f_q q=3 (T=200 for chi): residual {r3.residual:.2e}")

# 10. strict mode at a prime power
es = ex.sqrt_scale_formula(8.0, T6, Z, t_max=2000.0, strict=True)
ed = ex.sqrt_scale_formula(8.0, T6, Z, t_max=2000.0)
print(f"strict x=8: x={es.x} residual {es.residual:.3f}; default shifts to x={ed.x} residual {ed.residual:.3f}")
