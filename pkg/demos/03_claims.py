"""Checking the identities around the duals.

Each claim is decided numerically first at seeded points; whatever survives is
expanded and canonicalized.  Run with ``python3 demos/03_claims.py``.
"""

# %% Complex case: everything closes
from hyperclebsch.claims import ConventionConfig, check_dF_consistency, run_suite, verify
from hyperclebsch.hyperform import PotentialSet

print(run_suite(ConventionConfig(), 1).to_text())

# %% Quaternions under the default reading
# Coefficients like "f2 A~1" are read as df2 ^ A~1 (the only degree-consistent reading).
report = run_suite(ConventionConfig(), 3)
print()
print(report.to_text())

# %% Every reading of the ambiguous claims
grid = run_suite(ConventionConfig(), 3, grid=True, ids=["C3", "C4", "C5", "C6"])
print()
for claim, v in grid.entries:
    c = v.convention
    print(f"{claim.id}  {c.coeff_kind:<12} {c.mul_order:<5} {v.status.value}")

# %% A failing identity comes with a witness that can be replayed
v = verify("C4", ConventionConfig(seed=3), PotentialSet.generic(3))
print("\nC4:", v.status.value, "term", v.witness["term"], "value", round(v.witness["value"], 6))
again = verify("C4", ConventionConfig(seed=3), PotentialSet.generic(3))
print("replayed witness identical:", again.witness == v.witness)

# %% The closed form of dF against finite differences
for label, P in [
    ("m=1", PotentialSet.generic(1)),
    ("m=3, f4=f6=0", PotentialSet.generic(3).with_zeros(4, 6)),
    ("m=3 generic", PotentialSet.generic(3)),
]:
    residual, _ = check_dF_consistency(P)
    print(f"{label:<14} max residual {residual:.3g}")
