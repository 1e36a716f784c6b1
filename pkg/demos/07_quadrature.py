"""
Adaptive Gauss-Kronrod on half-lines
====================================

The integrator behind every analytic number.  Infinite upper limits are
mapped onto [0, 1); the result carries an error bound.
"""

import numpy as np

from relstandby import EvalConfig, integrate_1d

est = integrate_1d(lambda x: np.exp(-x * x), 0.0, np.inf)
print(f"int_0^inf exp(-x^2) = {est.value:.15f}  (sqrt(pi)/2 = {np.sqrt(np.pi) / 2:.15f}, bound {est.error_bound:.1e})")

loose = integrate_1d(lambda x: np.sin(x) ** 2, 0.0, 10.0, EvalConfig(quad_rel_tol=1e-4))
print(f"int_0^10 sin^2 = {loose.value:.10f}  exact {5 - np.sin(20) / 4:.10f}")
