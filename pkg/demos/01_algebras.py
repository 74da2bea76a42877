"""Tour of the two algebra families.

Run with ``python3 demos/01_algebras.py``.
"""

# %% Multiplication tables
# Quaternions come out of the doubling construction with e1 e2 = e3 cyclically.
import numpy as np

from hyperclebsch.hyperalg import HNum, exp_pure, hconj, hmul, make_algebra, norm2, table_rows

H = make_algebra("cayley_dickson", 3)
for name, row in zip(H.names, table_rows(H)):
    print(f"{name:>3} | " + " ".join(f"{c:>3}" for c in row))

# Cl(0,2) has the same dimension but a different fourth unit: e12 is a bivector,
# not a generator, so only two units are available for potentials.
cl2 = make_algebra("clifford", 2)
print("\nCl(0,2) blades:", list(cl2.names))

# %% Octonions are alternative, not associative
rng = np.random.default_rng(0)
O = make_algebra("cayley_dickson", 7)
x, y, z = (HNum(O, rng.uniform(-1, 1, 8).tolist()) for _ in range(3))
assoc = np.subtract(hmul(hmul(x, y), z).coeffs, hmul(x, hmul(y, z)).coeffs)
alt = np.subtract(hmul(x, hmul(x, y)).coeffs, hmul(hmul(x, x), y).coeffs)
print("\n(xy)z - x(yz) max   :", np.abs(assoc).max())
print("x(xy) - (xx)y max   :", np.abs(alt).max())
print("|xy|^2 - |x|^2|y|^2 :", norm2(hmul(x, y)) - norm2(x) * norm2(y))

# %% Exponentials of pure units
# exp(v) = cos|v| + sin|v| v/|v|, and exp(v) exp(-v) = 1 even without commutativity,
# because v commutes with itself.
v = HNum(H, [0.0, 0.3, -1.2, 0.5])
print("\nexp(v) exp(-v) =", hmul(exp_pure(v), exp_pure(-v)).coeffs)
# but exp(a) exp(b) is not exp(a + b) when a and b point in different directions
a, b = HNum(H, [0.0, 1.0, 0.0, 0.0]), HNum(H, [0.0, 0.0, 1.0, 0.0])
print("exp(a) exp(b)  =", np.round(hmul(exp_pure(a), exp_pure(b)).coeffs, 4))
print("exp(a + b)     =", np.round(exp_pure(a + b).coeffs, 4))
print("conj(e1)       =", hconj(HNum.basis(H, "e1")).coeffs)
