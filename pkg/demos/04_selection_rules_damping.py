"""
Selection rules and emission damping
====================================

Symmetric bath coupling never connects singlet and triplet states.  With
unequal couplings the singlet can decay, and the two emission lines into
the ground state |0,dd> get different rates.
"""
from dressed_cqed import analytic, transitions
from dressed_cqed.model import ModelParams

p = ModelParams(4.0, 4.0, 4.0, 2.0, n_max=12)
states = [s for s in analytic.all_states(p) if s.n <= 3]

for g1, g2 in ((1.0, 1.0), (1.0, 0.0)):
    cross = [r for r in transitions.selection_rules(states, g1, g2) if r.crosses_sectors]
    biggest = max(cross, key=lambda r: abs(r.amplitude))
    print(f"g1={g1} g2={g2}: {sum(r.allowed for r in cross)} allowed singlet-triplet transitions,"
          f" largest |amp|={abs(biggest.amplitude):.4f}")

# %%
print("Rabi splitting (GHz):", transitions.rabi_splitting(p))

# %%
# Damping ratio of the two lines, closed form and golden rule.
q = ModelParams(12.0, 12.0, 4.0, 2.0, n_max=12)
bath = transitions.BathModel.uniform(1.0, 0.0)
print("closed form      :", transitions.damping_ratio(q, bath).value)
print("golden rule upper:", transitions.golden_rule_ratio(q, bath, branch="+").value)
print("golden rule lower:", transitions.golden_rule_ratio(q, bath, branch="-").value)
print("symmetric bath   :", transitions.damping_ratio(q, transitions.BathModel.uniform(1.0, 1.0)).reason)
