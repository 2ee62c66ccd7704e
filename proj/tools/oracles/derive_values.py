# Copyright 2026 The isacopt Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values frozen into the C++ unit tests.

Nothing here calls the C++ code. Run with numpy and scipy available:

    python3 tools/oracles/derive_values.py
"""

import itertools
import math

import numpy as np
from scipy.optimize import linprog

C = 299792458.0


def dbm_to_mw(dbm):
    return 10.0 ** (dbm / 10.0)


def physics():
    lam = C / 71e9
    alpha = lam**2 * 1.0 / ((4 * math.pi) ** 3 * 20.0**4)
    p = dbm_to_mw(36.0)
    noise = dbm_to_mw(-84.0)
    print(f"lambda            {lam:.12e}")
    print(f"alpha(71,1,20)    {alpha:.12e}")
    print(f"rho_sen defaults  {noise / (2 * alpha * 10 * p):.12f}")
    print(f"tau_max defaults  {alpha * 10 * p / noise:.12f}")
    for d in (40.0, 10.0):
        print(f"uma({d:g},71)       {28 + 22 * math.log10(d) + 20 * math.log10(71):.12f}")


def steering(theta_deg, n):
    c = math.cos(math.radians(theta_deg))
    return np.array([np.exp(1j * math.pi * (k - (n + 1) / 2) * c) for k in range(1, n + 1)])


# Hand-made instance shared with tests/test_support.hpp.
G = [np.array([1 + 0.5j, -0.3 + 0.8j, 0.7 - 0.2j]), np.array([0.2 - 1j, 0.9 + 0.1j, -0.4 - 0.6j])]
T = [0.3 * steering(100.0, 3), 0.3 * steering(120.0, 3)]
GAMMA = 6.5
RHO_SEN = 0.05


def hand_instance_es(gamma=GAMMA, couple=False):
    symbols = [np.exp(2j * math.pi * l / 4) for l in range(4)]
    best = None
    for tup in itertools.product(range(4), repeat=3):  # last antenna fastest
        w = np.array([symbols[l] for l in tup])
        com = [abs(np.vdot(g, w)) ** 2 for g in G]  # |g^H w|^2
        mu = [1 if s >= gamma else 0 for s in com]
        if couple and sum(mu) < len(mu):
            mu = [0] * len(mu)
        tau = min(abs(np.vdot(t, w)) ** 2 for t in T)
        f = sum(mu) + RHO_SEN * tau
        if best is None or f > best[0]:
            best = (f, tup, mu, tau)
    return best


def lp_values():
    # max 3x + 2y + z   s.t. x + y + z <= 4, x + 3y <= 6, 2x + z >= 1, y - z = 0.5
    # 0 <= x <= 3, 0 <= y <= 2, -1 <= z <= 5
    r = linprog(c=[-3, -2, -1], A_ub=[[1, 1, 1], [1, 3, 0], [-2, 0, -1]], b_ub=[4, 6, -1],
                A_eq=[[0, 1, -1]], b_eq=[0.5], bounds=[(0, 3), (0, 2), (-1, 5)], method="highs")
    print(f"lp1 objective     {-r.fun:.12f}  x = {r.x}")
    # min x - 2y + 0.5z  s.t. x + y >= 1, y + z <= 2.5, x - z >= -3
    # -2 <= x <= 2, 0 <= y <= 3, -1 <= z <= 4
    r = linprog(c=[1, -2, 0.5], A_ub=[[-1, -1, 0], [0, 1, 1], [-1, 0, 1]], b_ub=[-1, 2.5, 3],
                bounds=[(-2, 2), (0, 3), (-1, 4)], method="highs")
    print(f"lp2 objective     {r.fun:.12f}  x = {r.x}")


def knapsack():
    # max 5a + 4b + 3c + 7d + 2e s.t. 2a + 3b + c + 4d + 2e <= 7, a + b + d <= 2, binaries
    best = max((5 * a + 4 * b + 3 * c + 7 * d + 2 * e, (a, b, c, d, e))
               for a, b, c, d, e in itertools.product((0, 1), repeat=5)
               if 2 * a + 3 * b + c + 4 * d + 2 * e <= 7 and a + b + d <= 2)
    print(f"knapsack          {best}")


if __name__ == "__main__":
    physics()
    f, tup, mu, tau = hand_instance_es()
    print(f"hand ES           f={f:.15f} phases={tup} mu={mu} tau={tau:.15f}")
    f, tup, mu, tau = hand_instance_es(couple=True)
    print(f"hand ES coupled   f={f:.15f} phases={tup} mu={mu} tau={tau:.15f}")
    f, tup, mu, tau = hand_instance_es(gamma=0.0)
    print(f"hand ES gamma=0   f={f:.15f} phases={tup} mu={mu} tau={tau:.15f}")
    f, tup, mu, tau = hand_instance_es(gamma=4.0)
    print(f"hand ES gamma=4   f={f:.15f} phases={tup} mu={mu} tau={tau:.15f}")
    lp_values()
    knapsack()
