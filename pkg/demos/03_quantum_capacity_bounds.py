"""Quantum-capacity bounds for a thermal channel across input energies.

Prints the lower bound and all four upper bounds on one grid, then
illustrates the 1/ln 2 gap law and the bound crossovers that make the
different upper bounds useful in different regimes.
"""

import numpy as np

import bosonic_bounds as bb

eta, nb = 0.99, 0.5
ch = bb.thermal(eta, nb)

print(f"thermal channel eta={eta}, nb={nb}")
print(f"{'ns':>8} {'QL':>8} {'QU1':>8} {'QU2':>8} {'QU3':>8} {'QU4':>8}")
for ns in np.geomspace(0.1, 500, 12):
    row = [
        bb.q_lower_thermal(eta, nb, ns).value,
        bb.q_u1(ch, ns).value,
        bb.q_u2(ch, ns).value,
        bb.q_u3(ch, ns).value,
        bb.q_u4(ch, ns).value,
    ]
    print(f"{ns:8.3f} " + " ".join(f"{v:8.4f}" for v in row))

print("\nAt low energy the data-processing bound QU1 is tightest; at high")
print("energy the degrading-channel bound QU2 crosses below it.")

print("\n== gap law ==")
print("QU1 - QL is nonnegative and never exceeds 1/ln 2 = 1.4427 bits:")
for ns in (0.1, 1, 10, 100, 1e4, 1e6):
    print(f"  ns={ns:>9g}: gap = {bb.gap_qu1_ql(0.8, 1.0, ns):.6f} bits")
print("(at fixed nb the large-energy asymptote is nb*log2(1+1/nb);")
print(" it approaches 1/ln 2 only for large nb)")

print("\n== unconstrained limits and comparison bounds ==")
ch2 = bb.thermal(0.9, 0.5)
print("QU1 limit:        ", bb.q_u1_unconstrained(ch2))
print("QU4 limit (= RMG):", bb.q_u4_unconstrained(ch2))
print("RMG:              ", bb.comparison_bounds(ch2, "RMG"))
print("PLOB:             ", bb.comparison_bounds(ch2, "PLOB_thermal"))

print("\n== additive-noise channel: QU1 vs QU4 vs PLOB (unconstrained) ==")
print(f"{'nbar':>6} {'QU1':>8} {'QU4':>8} {'PLOB':>8}")
for nbar in (0.1, 0.3, 0.5, 0.7):
    a = bb.additive_noise(nbar)
    print(f"{nbar:6.2f} {bb.q_u1_unconstrained(a):8.4f} "
          f"{max(0, bb.q_u4_unconstrained(a)):8.4f} "
          f"{bb.comparison_bounds(a, 'PLOB_addnoise'):8.4f}")
print("QU4 overtakes PLOB at high noise and loses at low noise.")
