import math, time
import numpy as np
from prime_bias_lab.sieve import build_mangoldt_table, divisor_count_table
from prime_bias_lab.characters import chi4, character_group
from prime_bias_lab import bias_sums as bs
from prime_bias_lab.specials import central_constants, l_central_data

t0 = time.time()
T4 = build_mangoldt_table(10**4)
T6 = build_mangoldtable = build_mangoldt_table(10**6)
print(f"tables built {time.time()-t0:.2f}s")

c4 = chi4()
CC = central_constants()

# --- psi_half hand values
v4 = bs.psi_half(4.0, T4)
expect = math.log(2)/math.sqrt(2) + math.log(3)/math.sqrt(3) + 0.5*math.log(2)/2.0
print("psi_half(4) primed:", v4, "expect", expect, "diff", v4-expect)
print("psi_half(1):", bs.psi_half(1.0, T4))
v4u = bs._psi_half_eval(4.0, T4, primed=False)[0]
print("psi_half(4) unprimed:", v4u, "expect", expect + 0.5*math.log(2)/2.0)

# --- character vs progression difference at x=100
a = bs.psi_half(100.0, T4, progression=(4,1))
b = bs.psi_half(100.0, T4, progression=(4,3))
c = bs.psi_half(100.0, T4, chi=c4)
print("psi dif(4,1)-(4,3) vs chi4:", a-b, c, "diff", (a-b)-c)

# --- f_log(10) hand enumeration: n in {2,3,4,5,7,8,9}
hand = sum(lp*math.log(10.0/n)/math.sqrt(n) for n, lp in
           [(2, math.log(2)), (3, math.log(3)), (4, math.log(2)), (5, math.log(5)),
            (7, math.log(7)), (8, math.log(2)), (9, math.log(3))])
v = bs.f_log(10.0, T4)
print("f_log(10):", v, "hand:", hand, "diff", v-hand)

# --- riesz identity: riesz * log x == f_log - 4 sqrt x
for x in (100.0, 12345.0):
    r = bs.riesz_sum(x, T6, bs.SumSpec(kind="riesz"))
    lhs = r * math.log(x)
    rhs = bs.f_log(x, T6) - 4.0*math.sqrt(x)
    print(f"riesz identity x={x}: diff {lhs-rhs:.3e}")

# --- riesz limit at 1e6 vs -zeta'/zeta(1/2)
r6 = bs.riesz_sum(1e6, T6, bs.SumSpec(kind="riesz"))
print("riesz(1e6):", r6, "target", -CC.zeta_logderiv_half, "diff", r6 + CC.zeta_logderiv_half)

# --- riesz_chi at 1e5 vs -L'/L(1/2,chi4), window 3/log x
ld = l_central_data(c4)
rc = bs.riesz_sum(1e5, T6, bs.SumSpec(kind="riesz_chi", character=c4))
print("riesz_chi(1e5):", rc, "target", -ld.logderiv.real,
      "diff", abs(rc + ld.logderiv.real), "window", 3/math.log(1e5))

# --- riesz_q with q=1 unshifted == riesz; shifted == riesz_shifted
for sh in (False, True):
    s1 = bs.riesz_sum(1e4, T6, bs.SumSpec(kind="riesz_q", modulus=1, shift_e2=sh))
    s2 = bs.riesz_sum(1e4, T6, bs.SumSpec(kind="riesz_shifted" if sh else "riesz"))
    print(f"riesz_q(q=1,shift={sh}) vs base: diff {s1-s2:.3e}")

# --- residue two routes
for q in (3, 4, 5, 8):
    d = bs.residue_sums(1e4, q, T4, "f_q", route="direct")
    ch = bs.residue_sums(1e4, q, T4, "f_q", route="characters")
    print(f"f_q q={q}: direct {d:.10f} char {ch:.10f} diff {abs(d-ch):.2e}")
for q in (4, 5):
    d = bs.residue_sums(1e3, q, T4, "F_q", route="direct")
    ch = bs.residue_sums(1e3, q, T4, "F_q", route="characters")
    print(f"F_q q={q}: direct {d:.10f} char {ch:.10f} diff {abs(d-ch):.2e}")

# --- modulus averages: bruteforce vs fast at x=Q=500
t0 = time.time()
bp = bs.modulus_average_sum(500.0, 500, T6, path="bruteforce", variant="plain")
t1 = time.time()
fp = bs.modulus_average_sum(500.0, 500, T6, path="fast", variant="plain")
print(f"avg plain x=Q=500: brute {bp:.8f} ({t1-t0:.2f}s) fast {fp:.8f} diff {abs(bp-fp):.2e}")
t0 = time.time()
bsh = bs.modulus_average_sum(500.0, 500, T6, path="bruteforce", variant="shifted")
t1 = time.time()
fsh = bs.modulus_average_sum(500.0, 500, T6, path="fast", variant="shifted")
print(f"avg shifted x=Q=500: brute {bsh:.6f} ({t1-t0:.2f}s) fast {fsh:.6f} diff {abs(bsh-fsh):.2e}")

# --- asymptotic ratios
x = 1e5
fpl = bs.modulus_average_sum(x, int(x), T6, path="fast", variant="plain")
pred = 4.0*math.sqrt(x)*((1.0/9.0)*x - x)
print("avg plain ratio (x=1e5, Q=x):", fpl/pred)
fshl = bs.modulus_average_sum(x, int(x), T6, path="fast", variant="shifted")
predsh = -(8.0/9.0)*math.exp(3.0)*x*math.sqrt(x)
print("avg shifted ratio (x=1e5):", fshl/predsh)

# --- titchmarsh: hand check at x=10, ratio at 1e6
S6 = divisor_count_table(10**6)
# n in {2,3,4,5,7,8,9}; sigma0(n-1) for 1,2,3,4,6,7,8 -> 1,2,2,3,4,2,4
handt = (math.log(2)*1 + math.log(3)*2 + math.log(2)*2 + math.log(5)*3 +
         math.log(7)*4 + math.log(2)*2 + math.log(3)*4)
rt = bs.titchmarsh_sum(10.0, T4, S6)
print("titchmarsh(10):", rt.sum, "hand:", handt, "diff", rt.sum-handt)
rt6 = bs.titchmarsh_sum(1e6, T6, S6)
print("titchmarsh(1e6): sum", rt6.sum, "pred", rt6.predicted, "ratio", rt6.sum/rt6.predicted)

# --- screw functions
t0 = time.time()
T7 = build_mangoldt_table(10**7)
print(f"T7 built {time.time()-t0:.2f}s")
print("screw g0(0):", bs.screw_g0(0.0, T4), " ginf(0):", bs.screw_ginf(0.0))
bad = []
for t in np.arange(0.5, 15.01, 0.5):
    g = bs.screw_total(float(t), T7)
    if g > 0:
        bad.append((t, g))
print("screw_total>0 count on grid:", len(bad), bad[:3])
print("screw_total(1.0):", bs.screw_total(1.0, T7), " (10.0):", bs.screw_total(10.0, T7))

# --- races
ce3 = bs.chebyshev_weight_sum(1e3, T6, "exp")
ce5 = bs.chebyshev_weight_sum(1e5, T7, "exp")
print("cheb_exp 1e3, 1e5:", ce3, ce5, "(want value(1e5)<value(1e3)<0)")
sr = bs.chebyshev_weight_sum(1e6, T6, "sqrt_race")
pred = 0.5*math.sqrt(1e6)*math.log(math.log(1e6))
print("sqrt_race(1e6):", sr, "pred(+):", pred, "ratio", sr/pred)
po = bs.prime_only_sqrtlog(1e6, T6, "chi4")
predp = -2.0*math.sqrt(1e6)*math.log(1e6)*ld.l_half.real  # heuristic scale
print("prime_only chi4(1e6):", po)
f2 = bs.prime_square_log_sum(1e6, T6)
print("f2(1e6):", f2, "pred 0.25*log^2:", 0.25*math.log(1e6)**2, "ratio",
      f2/(0.25*math.log(1e6)**2))

# --- shifted trivial race ratio: ~ value/(something)? Eq120 target 8e^3? check growth sign
st3 = bs.prime_only_sqrtlog(1e3, T6, "shifted_trivial")
st5 = bs.prime_only_sqrtlog(1e5, T6, "shifted_trivial")
preds = lambda x: -2.0*math.e**1.5*0  # placeholder; just print raw
print("shifted_trivial 1e3, 1e5:", st3, st5, " per -4e*x-ish?",
      st3/(1e3), st5/(1e5))

# --- sweep determinism
spec = bs.SumSpec(kind="riesz")
xs = [10.0**k for k in range(2, 7)]
s1 = bs.sweep(spec, xs, T6, workers=1)
s8 = bs.sweep(spec, xs, T6, workers=8)
print("sweep determinism:", s1.samples == s8.samples)
print("sweep riesz values:", [f"{v:.6f}" for v in s1.values])
print("total", time.time()-t0, "s")
