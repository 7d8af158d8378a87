"""Chart generators shared by the geometry tests and the acceptance suite."""

import numpy as np

MONOMIALS = ("u", "v", "u*u", "u*v", "v*v", "u^3", "v^3", "u^2*v", "u*v^2")


def random_polynomial_components(seed: int, dim: int = 4) -> list[str]:
    """Components ``x_i = (u, v, 0, ..)_i + three random monomials`` of degree at most 3."""
    rng = np.random.default_rng(seed)
    base = ["u", "v"] + ["0"] * (dim - 2)
    comps = []
    for i in range(dim):
        terms = [f"{int(rng.integers(-2, 3))}*{m}" for m in rng.choice(MONOMIALS, size=3, replace=False)]
        comps.append(" + ".join([base[i]] + terms))
    return comps
