"""A Szilard engine cycle, with the books balanced by measurement itself.

Inserting the partition halves the packet's position spread and doubles its
momentum spread: that localization costs k ln 2 of entropy before anyone
looks at the outcome. The isothermal stroke then recovers kT ln 2 of work
from the bath, and every prefix of the ledger stays nonnegative: no demon
profit, with erasure never entering the argument.
"""

from demonlab import szilard

box = szilard.EngineBox(length_L=1.0, temperature_T=1.0, mass_m=1.0)

state = szilard.initial_state(box)
print("initial packet:  sigma_x^2 = "
      f"{state.state.sigma_x**2:.3f}, sigma_p^2 = {state.state.sigma_p**2:.3f}")

localized, ds = szilard.insert_partition(state, rng_seed=2025)
print(f"after insertion: sigma_x^2 = {localized.state.sigma_x**2:.3f}, "
      f"sigma_p^2 = {localized.state.sigma_p**2:.3f}  (side: {localized.side})")
print(f"entropy cost of the insertion: {ds:.6f}  (k ln 2 = 0.693147)")

work, ds_bath, _ = szilard.extract_work(localized, box)
print(f"work extracted isothermally:   {work:.6f}  (kT ln 2)")
print(f"bath entropy change:           {ds_bath:+.6f}")

print("\nten cycles, ledger prefix sums:")
ledger = szilard.run_cycle(box, n_cycles=10, rng_seed=7)
print(" cycle  step        dS         dW        cum dS")
for cycle, label, d_s, d_w, cum in ledger.to_rows():
    print(f"  {cycle:3d}   {label:9s}  {d_s:+.6f}  {d_w:+.6f}  {cum:+.6f}")
print(f"\nsides drawn: {' '.join(ledger.sides)}")
print(f"net entropy change of the universe: {ledger.net_entropy():+.2e}")
print(f"net work extracted:                 {ledger.net_work():.6f}")
print(f"every prefix nonnegative:           {ledger.prefix_nonnegative()}")

print("\nthe same cost in both variance conventions:")
for convention in szilard.CONVENTIONS:
    s0 = szilard.initial_state(box, convention=convention)
    _, cost = szilard.insert_partition(s0, 0)
    print(f"  {convention:15s} -> dS = {cost:.15f}")
