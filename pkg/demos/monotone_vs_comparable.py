"""
Monotone versus comparable hypotheses
=====================================

The single-map lists ``RR`` and ``NRL`` require ``f`` to be monotone. On the
squaring grid they reject the instance, while the comparability list accepts
it and the uniqueness certificate confirms the fixed point 0.
"""

# %%
from ordfix import HypothesesFailed, SolverConfig, certify, check_hypotheses, enumerate_instance, presets, solve

grid = presets.square_grid()

for theorem in ("RR", "NRL", "C51", "T33", "T45"):
    report = check_hypotheses(grid, theorem)
    failed = ", ".join(f"{e.id} ({e.name})" for e in report.failed()) or "none"
    print(f"{theorem:4} ok={report.ok!s:5} failed: {failed}")

# %%
# The command-line demo uses the same gate and exits with code 2.
from ordfix.cli import cmd_demo

rr = cmd_demo("rr-preset")
print("rr-preset exit code:", rr.exit_code, rr.error["failed"])

# %%
# Certificate for the common fixed point
# --------------------------------------
cert = certify(grid, "COMMON_FIXED")
print(cert.conclusion, "at", grid.space.labels[cert.point], "via", cert.theorem)
print("conditions used:", cert.condition_used)
print("chains re-verify:", cert.verify(grid))
print("enumeration agrees:", enumerate_instance(grid).common_fixed_points == {cert.point})

try:
    solve(grid, SolverConfig(hypotheses="RR"))
except HypothesesFailed as exc:
    print("solve under RR refused:", exc)
