"""Closed-form convolution of two weighted circles against a mollified oracle.

Run: python demos/circle_convolution.py
"""

import numpy as np

from kplane_bilinear.measures import CircleDensity, circle_conv_closed, conv_oracle

g1 = lambda p: 1.0 + 0.3 * p[..., 0] + 0j
g2 = lambda p: np.exp(0.2j * p[..., 1])
a, b = CircleDensity(1.0, g1), CircleDensity(1.5, g2)

print(f"{'|x|':>6} {'closed form':>28} {'oracle sigma=0.005':>28}  status")
for rho in (0.2, 0.5, 1.0, 1.8, 2.4, 2.5, 3.0):
    x = np.array([rho * np.cos(0.4), rho * np.sin(0.4)])
    c = circle_conv_closed(a, b, x)
    if not c.finite:
        print(f"{rho:6.2f} {'-':>28} {'-':>28}  {c.status.value}")
        continue
    o = conv_oracle("circle", (1.0, 1.5), g1, g2, x, 0.005)
    print(f"{rho:6.2f} {c.value:28.6f} {o:28.6f}  {c.status.value}")
