"""
From circuit parameters to model frequencies
============================================

Two capacitively coupled charge qubits and a transmission-line resonator.
"""
from dressed_cqed import analytic
from dressed_cqed.model import DeviceParams, device_to_model

dev = DeviceParams(C_m=1e-16, C_Sigma=1e-15, C_g=1e-16, V_g=1.6e-3,
                   E_J=10.0, S=1e-10, d=1e-6, L=0.01, l=4.1e-7, c=1.6e-10, n0=1)
params, E_c = device_to_model(dev)
print(f"E_c     = {E_c:.4f} GHz")
print(f"J       = {params.J:.4f} GHz")
print(f"omega   = {params.omega:.4f} GHz")
print(f"omega_a = {params.omega_a:.4f} GHz")
print(f"g       = {params.g:.3e} GHz")
print("g/J     =", params.g / params.J, " xi0 =", analytic.xi0(params))
