"""
Dark-state trapping
===================

The cavity couples only to the symmetric spin combination, so the singlet
population is conserved.  A local lowering operator on one qubit breaks
the symmetry and moves weight out of the singlet.
"""
import numpy as np

from dressed_cqed import numeric, transitions
from dressed_cqed.model import ModelParams

params = ModelParams(omega_a=4.0, omega=4.0, J=4.0, g=2.0, n_max=20)
dec = numeric.decompose(params)
rng = np.random.default_rng(7)
psi = numeric.random_state(params.n_max, rng)

print("initial singlet population:", numeric.singlet_population(psi))
for t in (0.1, 1.0, 10.0, 100.0):
    out = numeric.evolve(psi, params, t / params.g, decomposition=dec)
    print(f"  t={t:>5}/g  population={numeric.singlet_population(out):.15f}")

# %%
# Kick with sigma- on qubit one, renormalize, and evolve again.
kicked = (psi.reshape(-1, 4) @ transitions.bath_lowering(1.0, 0.0).T).ravel()
kicked = numeric.normalized(kicked)
after = numeric.evolve(kicked, params, 1.0 / params.g, decomposition=dec)
print("after kick:", numeric.singlet_population(after))
