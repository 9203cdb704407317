"""Why Maxwell's original speed-sorter cannot even begin.

Measuring a molecule's momentum gently enough to sort it (h nu << kT)
delocalizes it to sigma_x = sqrt(kT / h nu) times the largest workable
door. The Monte-Carlo harness lets the demon aim every molecule dead
center at the door and still counts ~4% passage at ratio 10.
"""

from demonlab import speed_demon as sd
from demonlab.units import SI_UNITS

print("=== SI argon at 300 K, probe energy kT/100 ===")
argon = sd.GasSpec(temperature_T=300.0, mass_m=6.64e-26)
probe = sd.ProbeSpec.from_energy_ratio(argon, 100.0, SI_UNITS)
p_rms = sd.rms_momentum(argon, SI_UNITS)
door = sd.max_door_size(p_rms, SI_UNITS)
spreads = sd.post_measurement_spreads(argon, probe, SI_UNITS)
print(f"thermal p_rms          = {p_rms:.3e} kg m/s")
print(f"max door size          = {door:.3e} m")
print(f"post-probe sigma_p     = {spreads.sigma_p:.3e} kg m/s")
print(f"post-probe sigma_x     = {spreads.sigma_x:.3e} m")
print(f"sigma_x / door         = {sd.sorting_feasibility(argon, probe, SI_UNITS):.2f}"
      "  (sqrt(kT / h nu) = 10)")

ledger = sd.information_ledger(argon, probe, SI_UNITS)
print(f"\nmolecule entropy drop from the probe: {ledger['dS_momentum']:.3e} J/K")
print(f"position-information rise (nats):     {ledger['dI_position']:+.4f}")
print(f"sorting-usable change:                {ledger['sorting_usable_change']:+.1e}")

print("\n=== Monte-Carlo sorting attempt (natural units, ratio 100) ===")
gas = sd.GasSpec(temperature_T=1.0, mass_m=1.0)
probe = sd.ProbeSpec.from_energy_ratio(gas, 100.0)
geometry = sd.SortingGeometry(sd.max_door_size(sd.rms_momentum(gas)))
report = sd.simulate_sorting(gas, probe, geometry, n_attempts=500_000, rng_seed=3)
print(f"attempts                 = {report.n_attempts}")
print(f"passed through the door  = {report.n_passed}")
print(f"empirical passage        = {report.empirical_passage:.5f}")
print(f"analytic erf prediction  = {report.analytic_passage:.5f}")
print(f"probe energy injected    = {report.injected_energy:.2f} (h nu per attempt)")
print(f"verdict: sorting infeasible = {report.sorting_infeasible}")
