"""
Squaring on a symmetric interval
================================

``f(x) = x**2`` on ``[-1/3, 1/3]`` is not monotone: it decreases on the left
half and increases on the right. The usual order is total, so every pair of
images is still comparable, and that is all the comparability-based
hypothesis lists ask for. This script walks through the interval run and the
exact five-point grid version.
"""

# %%
# The interval instance
# ---------------------
# Continuity and the contraction constant 2/3 are declared, because an
# interval cannot be scanned exhaustively.
from ordfix import SolverConfig, a_priori_bound, check_hypotheses, presets, solve

interval = presets.square_interval()
report = check_hypotheses(interval, "C51")
for entry in report:
    print(f"{entry.id:8} {entry.verdict.value:8} {entry.name}")

# %%
# Joint iteration from 1/3
# ------------------------
# Every step is checked against the a-priori tail bound.
res = solve(interval, SolverConfig(hypotheses="C51"))
d0 = res.trace.distances[0]
for n, gx in enumerate(res.trace.gvalues):
    print(f"n={n}  g(x_n)={gx:.3e}  bound={a_priori_bound(d0, 2 / 3, n):.3e}")
print("status:", res.trace.status.value, "point:", res.point)

# %%
# Starting on the other side
# --------------------------
# From -1/3 the first image is 1/9, comparable by totality, and the run
# reaches the same fixed point.
left = solve(presets.square_interval(x0=-presets.THIRD), SolverConfig(hypotheses="C51"))
print("from -1/3:", left.trace.status.value, left.point)

# %%
# The grid version
# ----------------
# On {-1/3, 0, 1/81, 1/9, 1/3} squaring lands on grid points, so everything
# is decided exactly: comparable holds, monotone fails, alpha is 4/9.
contrast = presets.grid_contrast()
print("comparable:", contrast["comparable"].verdict.value)
print("monotone:  ", contrast["monotone"].verdict.value, "witness", contrast["monotone"].witness)
print("alpha:     ", contrast["grid_alpha"], "(exact)" if contrast["grid_alpha_exact"] else "")

grid = presets.square_grid()
trace = solve(grid).trace
print("grid iterates:", [grid.space.labels[i] for i in trace.iterates])
print("grid distances:", [str(d) for d in trace.distances])
