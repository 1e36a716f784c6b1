"""
Mean time to failure and cost per unit time
===========================================

MTTF is the integral of survival.  A bare system of n units costs n per
cycle; with the standby it costs n + 1.
"""

from relstandby import FGM4, EvalConfig, Exponential, SystemSpec, cost_rates, mean_standby_gain

cfg = EvalConfig()
for theta in [(0, 0, 0, 0, 0), (0.1, 0.2, 0.3, 0.4, 0.5), (0.2, 0.3, 0.5, 0.6, 0.7)]:
    spec = SystemSpec(3, 2, Exponential(2.0), Exponential(2.0), FGM4(*theta))
    r = cost_rates(spec, 1.0, cfg)
    gain = mean_standby_gain(spec, cfg).value
    print(f"theta={theta}: E(bare)={r.mttf_bare.value:.6f}  E(T)={r.mttf_standby.value:.6f}  "
          f"gain={gain:.6f}  C_bare={r.cost_rate_bare:.4f}  C_T={r.cost_rate_standby:.4f}")

# Adding the standby is worth it here: C_T < C_bare in every row.
