"""Two-local annihilation study for the qutrit depolarizing channel.

Feeding a Schmidt-decomposed pure state sum_j sqrt(q_j)|jj> through two
independent copies of the depolarizing channel and applying
(id ⊗ Lambda_k) with Lambda_k(X) = Tr(X)I - kX yields a one-sided
certificate: a negative eigenvalue proves the channel pair does not
annihilate Schmidt number down to r, where k sits in the r-positivity
window (1/(r+1), 1/r].

At the uniform input q = (1/3, 1/3, 1/3) the minimum eigenvalue has an
exact closed form in the channel parameter p:

    k = 1/2 (2-positive window endpoint):  (5 - 8 p^2)/18, zero at sqrt(5/8)
    k = 1   (1-positive window endpoint):  (2 - 8 p^2)/9,  zero at 1/2

On the simplex corners (product inputs) the k = 1/2 value is
(1-p)(5-2p)/18 instead; corner and uniform tie exactly at p = 7/10, so
the uniform point is the strict simplex minimizer precisely for
p > 7/10, which covers the whole detection regime p > sqrt(5/8).

Run:  python3 demos/snac_two_local.py
"""

import numpy as np

from schmidt_lens import depolarizing, snac_lattice_minimum, snac_min_eig

q_uniform = np.full(3, 1 / 3)

print("=" * 78)
print("Minimum eigenvalue of (id x Lambda_k)((E_p x E_p)|psi><psi|), uniform q")
print("=" * 78)
print(f"{'p':>5} | {'k=1/2':>12} {'(5-8p^2)/18':>12} | {'k=1':>12} {'(2-8p^2)/9':>12}")
for p in np.linspace(0.0, 1.0, 11):
    ch = depolarizing(3, float(p))
    half = snac_min_eig(ch, q_uniform, 0.5)
    one = snac_min_eig(ch, q_uniform, 1.0)
    print(f"{p:5.2f} | {half:12.8f} {(5 - 8 * p * p) / 18:12.8f} "
          f"| {one:12.8f} {(2 - 8 * p * p) / 9:12.8f}")
    assert abs(half - (5 - 8 * p * p) / 18) < 1e-9
    assert abs(one - (2 - 8 * p * p) / 9) < 1e-9

print()
print(f"k=1/2 certificate fires for p > sqrt(5/8) = {np.sqrt(5 / 8):.6f}")
print(f"k=1   certificate fires for p > 1/2 (entanglement, not 2-annihilation)")
print()

print("=" * 78)
print("Simplex-lattice minimizer of the k = 1/2 certificate (N = 30)")
print("=" * 78)
print(f"{'p':>5} | {'q_star':>18} | {'min eigenvalue':>15}")
for p in (0.3, 0.5, 0.7, 0.75, 0.85, 0.95):
    q_star, val = snac_lattice_minimum(depolarizing(3, p), 0.5, 30)
    label = " ".join(str(f) for f in q_star)
    print(f"{p:5.2f} | {label:>18} | {val:15.10f}")

print()
print("Below the tie point p = 7/10 the minimum sits on a simplex corner")
print("(a product input, closed form (1-p)(5-2p)/18); above it the uniform")
print("point takes over and eventually drives the eigenvalue negative.")
