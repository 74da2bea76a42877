"""Building the hypercomplex duals of a Clebsch one-form.

Run with ``python3 demos/02_duals.py``.
"""

# %% The complex case
# Three potentials f1, f2, f3 give A = f1 df2 + df3 and a single dual.
from hyperclebsch.extcalc import hreal
from hyperclebsch.hyperalg import make_algebra
from hyperclebsch.hyperform import PotentialSet, build_A, build_B, extract_duals, printed_duals

P1 = PotentialSet.generic(1)
b1 = extract_duals(build_B(P1))
print("A   =", b1.A)
print("A~1 =", b1.dual(1))

# %% Quaternions
# With seven potentials the imaginary parts of B give three duals, and they agree
# term for term with the transcribed formulas.
P3 = PotentialSet.generic(3)
b3 = extract_duals(build_B(P3, "plain"))
for k, (got, printed) in enumerate(zip(b3.duals, printed_duals(P3)), 1):
    print(f"A~{k} = {got}    matches transcription: {got == printed}")

# %% The two readings of B
# "plain" drops the exponentials; "conjugated" keeps exp(u) (...) exp(-u).  The real
# part is A either way, the duals are rotated.
conj = extract_duals(build_B(P3, "conjugated"))
print("\nRe(B) = A for conjugated B:", (hreal(build_B(P3, "conjugated")) - build_A(P3)).is_zero())
print("conjugated A~1 has", len(conj.dual(1).terms), "terms; first few coefficients:")
for key, c in list(conj.dual(1).terms.items())[:2]:
    print("   df%d:" % key[0], str(c)[:90], "...")

# %% Substituted potentials
# Zero entries implement reduced cases; any expression in the grammar works.
reduced = PotentialSet.parse(3, "f1, f2, f3, f4, 0, 0, f7")
for k, d in enumerate(extract_duals(build_B(reduced)).duals, 1):
    print(f"[f5=f6=0] A~{k} = {d}")
curved = PotentialSet.parse(1, "sin(f1), f2^2, f3")
print("\ncurved potentials: A~1 =", extract_duals(build_B(curved)).dual(1))

# %% A Clifford algebra leaves the paravector span
# In Cl(0,2) the product Q du picks up an e12 part; it is kept as residue.
bc = extract_duals(build_B(PotentialSet.generic(2), "plain", make_algebra("clifford", 2)))
print("\nCl(0,2) residue:", {k: str(v) for k, v in bc.residue.items()})
