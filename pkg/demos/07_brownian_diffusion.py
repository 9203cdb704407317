"""Unbiased random walks: no net drift, yet relentless spreading.

Equally probable steps in both directions leave the ensemble mean pinned
at zero while the mean-square displacement grows linearly, msd = 2 D t.
At long times the position histogram collapses onto the diffusion
equation's Gaussian.
"""

from demonlab import brownian as br

spec = br.WalkSpec(n_steps=200, n_walkers=100_000, rng_seed=17)
report = br.simulate_walks(spec)

print("+-1 steps, 100000 walkers:")
print("   t    mean displacement      msd    msd/t")
for t in (10, 50, 100, 200):
    print(f" {t:4d}       {report.mean_displacement[t]:+8.4f}      "
          f"{report.msd[t]:8.2f}  {report.msd[t] / t:.4f}")

print(f"\nfitted D  = {report.fitted_D:.4f}   (analytic {report.analytic_D:.4f})")
print(f"msd-vs-t linearity R^2 = {report.r_squared:.6f}")

hist = br.histogram_vs_gaussian(spec, t=200)
print(f"\nhistogram vs N(0, t) at t = 200: chi^2/bin = {hist.chi2_per_bin:.3f} "
      f"over {len(hist.observed)} bins -> {'consistent' if hist.passes else 'inconsistent'}")

print("\ncrude text histogram (observed | expected):")
for lo, hi, obs, exp in zip(
    hist.bin_edges[:-1], hist.bin_edges[1:], hist.observed, hist.expected
):
    bar = "#" * int(obs / 400)
    print(f" [{lo:+7.1f},{hi:+7.1f})  {obs:6d} | {exp:8.1f}  {bar}")

wide = br.simulate_walks(
    br.WalkSpec(n_steps=100, n_walkers=50_000, rng_seed=18,
                step_law=br.STEP_GAUSSIAN, sigma_step=2.0)
)
print(f"\nGaussian steps, sigma = 2: fitted D = {wide.fitted_D:.3f} (analytic 2.0)")
