"""
Three mean residual lives
=========================

psi1 conditions on T > t, psi2 on the principal system still working at t,
psi3 on no component having failed by t.  For independent exponential
units psi3 is constant by memorylessness (5/6 + 1/2 = 4/3).
"""

import numpy as np

from relstandby import FGM4, EvalConfig, Exponential, SystemSpec, psi1, psi2, psi3

cfg = EvalConfig()
e1 = Exponential(1.0)
for label, theta in (("independent", (0,) * 5), ("dependent", (0.2, 0.3, 0.5, 0.6, 0.7))):
    spec = SystemSpec(3, 2, e1, e1, FGM4(*theta))
    print(label)
    for t in np.linspace(0, 3, 7):
        p = [f(spec, t, cfg).value for f in (psi1, psi2, psi3)]
        print(f"  t={t:3.1f}  psi1={p[0]:.4f}  psi2={p[1]:.4f}  psi3={p[2]:.4f}")
