"""Exactness of the trajectory estimator for the harmonic oscillator.

For a quadratic Hamiltonian the classical flow transports expectation values
without semiclassical error, so the only deviation from the analytic
rotating center is Monte Carlo noise.  The script prints the maximum
deviation and the maximum deviation measured in standard errors.

Run:  python3 demos/harmonic_exactness.py
"""

import numpy as np

from semiphase import (
    Gaussian,
    IntegratorConfig,
    SamplerConfig,
    estimator_standard_errors,
    harmonic,
    observable_from_name,
)


def main():
    eps = 0.1
    pot = harmonic(1)
    state = Gaussian([1.0, 0.0], eps)
    obs = [observable_from_name("q1", 1, pot), observable_from_name("p1", 1, pot)]
    integ = IntegratorConfig("order8", 0.1, 5.0, 5)
    sampler = SamplerConfig(mode="mc", count=20_000, seed=0)

    series, se = estimator_standard_errors(state, "spectrogram", obs, sampler,
                                           integ, pot)
    t = series.times
    for name, exact in (("q1", np.cos(t)), ("p1", -np.sin(t))):
        dev = np.abs(series.values[name] - exact)
        print(f"{name}: max |error| = {dev.max():.2e}, "
              f"max |error|/SE = {np.max(dev / se[name]):.2f}  "
              f"(pure sampling noise)")


if __name__ == "__main__":
    main()
