"""Smoke test for the gdewalk_py extension module."""

import cmath
import math

import gdewalk_py as gw


def main():
    p = gw.WalkParameters(0.4, math.pi / 6)
    coin = gw.solve_coefficients(p)
    assert abs(coin.r1 - 0.07585312423256163) < 1e-15
    assert abs(coin.r2 - 0.9133708466686242) < 1e-15
    assert max(v for _, v in coin.residuals()) < 1e-12

    try:
        gw.solve_coefficients(gw.WalkParameters(0.8, 1.0))
    except ValueError as e:
        assert "no real coin" in str(e)
    else:
        raise AssertionError("(0.8, 1) should have no real coin")

    sim = gw.simulate(gw.WalkParameters(0.8, 0.0), 100, 300, init="quarter")
    assert len(sim.frames) == 300 and len(sim.frames[0]) == 100
    assert sim.conservation_drift < 1e-9
    last = sim.frames[-1]
    assert max(abs(a - b) for a, b in zip(last, reversed(last))) < 1e-12

    eig = gw.eigenvalues(gw.WalkParameters(0.8, 0.2), 8)
    assert len(eig) == 16
    assert all(abs(abs(z) - 1) < 1e-10 for _, _, z in eig)

    paths = gw.enumerate_paths(gw.WalkParameters(0.8, 0.2), 3, 8, site=2)
    assert sum(c for *_, c in paths) == 64
    assert abs(sum(abs(a) ** 2 for _, _, a, _ in paths) - 1) < 1e-12

    study = gw.run_refinement(1.0, math.pi / 6)
    assert study.estimated_order >= 0.9 and study.fit_r_squared >= 0.95
    assert gw.run_refinement(0.0, 0.7).estimated_order is None

    assert cmath.isclose(coin.f1, coin.g1.conjugate())
    print(f"ok: r1={coin.r1:.6f} order={study.estimated_order:.3f}")


if __name__ == "__main__":
    main()
