"""Smoke test for the spinpath Python module.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import cmath
import math

import spinpath as sp


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    assert close(sp.character(1.0, 0.3), 1 + 2 * math.cos(0.3), 1e-14)
    assert close(sp.character(0.5, 0.0), 2.0, 1e-14)

    d = sp.wigner_d(0.5, [0.0, 0.0, 0.4])
    assert close(d[0][0], cmath.exp(-0.2j), 1e-14)

    k = sp.su2_kernel(0.7, 1.0)
    assert abs(k.imag) < abs(k.real)

    x = sp.FourVector(2.0, 0.3, -0.1, 0.2)
    y = x.transformed(0.8, [0.0, 1.0, 0.0], [0.1, 0.2, 0.3])
    assert close(y.norm_sq(), x.norm_sq(), 1e-12)

    # Scalar propagator is invariant, Dirac one is a 4x4 matrix.
    assert close(sp.feynman_propagator(y, 1.0), sp.feynman_propagator(x, 1.0), 1e-10)
    dirac = sp.propagator("dirac", x, 1.0)
    assert len(dirac) == 4 and all(len(r) == 4 for r in dirac)

    frame = sp.spin_frame("dirac", sp.FourVector(math.sqrt(1.25), 0.5, 0.0, 0.0), 1.0)
    for key in ("normalization", "idempotency", "absorption", "uv_projector"):
        assert frame[key] < 1e-12, (key, frame[key])

    e = sp.Particle(0, "dirac", 1.0)
    assert e.statistics == "fermion"
    a = sp.Leg(sp.FourVector(1.0, 0.0, 0.0, 0.0), e, 0)
    b = sp.Leg(sp.FourVector(2.5, 0.2, 0.0, 0.0), e, 1)
    c = sp.Leg(sp.FourVector(-1.0, 0.1, 0.3, 0.0), e, 0)
    d = sp.Leg(sp.FourVector(-2.0, 0.0, -0.2, 0.1), e, 1)
    ab, mismatch = sp.inner_product([a, b], [c, d])
    ba, _ = sp.inner_product([a, b], [d, c])
    assert not mismatch
    assert close(ba, -ab, 1e-12)

    phi = sp.Particle(1, "scalar", 1.0)
    _, mismatch = sp.inner_product([a], [sp.Leg(sp.FourVector(0, 0, 0, 0), phi, 0)])
    assert mismatch

    amp = sp.vertex_amplitude(
        [([0.0, 0.0, 0.0], phi, "particle", 0), ([0.0, 0.0, 0.0], phi, "particle", 0)],
        [([0.0, 0.0, 0.0], sp.Particle(2, "scalar", 2.0), "particle", 0)],
        1.0,
    )
    assert math.isfinite(abs(amp))

    try:
        sp.Particle(0, "dirac", 1.0, "boson")
    except ValueError:
        pass
    else:
        raise AssertionError("spin-statistics violation accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
