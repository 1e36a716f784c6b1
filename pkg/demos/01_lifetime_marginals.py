"""
Lifetime distributions
======================

The three component laws used throughout, plus a tabulated empirical CDF.
Each exposes cdf, sf, pdf and quantile on numpy arrays.
"""

import numpy as np

from relstandby import Exponential, Lomax, Tabulated, Weibull

laws = {"exponential(2)": Exponential(2.0), "Lomax(2, 1)": Lomax(2.0, 1.0), "Weibull(2, 1)": Weibull(2.0, 1.0)}
z = np.array([0.1, 0.5, 1.0, 2.0])

for name, law in laws.items():
    print(f"{name:>15}  F(z) = {np.round(law.cdf(z), 4)}  median = {law.quantile(0.5):.4f}")

# the quantile inverts the cdf
law = laws["Weibull(2, 1)"]
print("max |Q(F(z)) - z| =", np.abs(law.quantile(law.cdf(z)) - z).max())

# a piecewise-linear CDF read from data; it has no density, but every
# reliability routine still accepts it
emp = Tabulated((0.0, 0.5, 1.0, 3.0), (0.0, 0.4, 0.8, 1.0))
print("tabulated F(0.75) =", emp.cdf(0.75))
