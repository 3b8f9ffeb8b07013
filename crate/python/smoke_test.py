"""Smoke test for the compiled `blaschke` extension module."""

import cmath
import math

import blaschke


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    assert blaschke.hyper_poly(2, "7/4", "-3/4") == ["1", "14/3", "-77/3"]
    assert blaschke.extremal_numerator_coeffs(2, 1) == ["1", "3", "6"]
    assert blaschke.predicted_extrema(15, 5) == ("20", "5/2")

    ep = blaschke.extremal_product(2, "1")
    assert ep.kind == "first" and ep.kappa == "1/6"
    assert ep.denominator == ["6", "3", "1"]
    e = ep.product.extrema()
    assert close(e["M"], 3.0) and close(e["m"], 1.0) and close(e["mean"], 2.0)
    assert ep.product.is_extremal()
    assert close(abs(ep.product.eval(1.0) - 1.0), 0.0, 1e-12)

    cube = blaschke.BlaschkeProduct([0j, 0j, 0j])
    assert cube.degree == 3 and cube.deriv_modulus(0.4) == 3.0

    a = 0.5j
    b = blaschke.BlaschkeProduct([a, -a], 1 + 0j)
    e = b.extrema()
    assert close(e["M"], 10 / 3) and close(e["m"], 1.2)
    again = blaschke.BlaschkeProduct.from_json(b.to_json())
    assert again.zeros == b.zeros
    for z in b.preimages(0.3):
        assert close(abs(z), 1.0) and abs(b.eval(z) - cmath.exp(0.3j)) < 1e-9

    f = blaschke.feasibility(3, 2.9, 4.0)
    assert not f["feasible"] and "2.75" in f["violation"]
    try:
        blaschke.construct(3, 2.9, 4.0)
    except ValueError:
        pass
    else:
        raise AssertionError("infeasible triple accepted")

    c = blaschke.construct(3, 1.6, 4.0)
    assert c["case"] == 4
    assert abs(c["achieved"]["M"] - 4.0) < 1e-4 and abs(c["achieved"]["m"] - 1.6) < 1e-4
    assert 0 < c["t"] < 1 and not math.isnan(c["lambda"])

    try:
        blaschke.extremal_product(2, -1)
    except ValueError:
        pass
    else:
        raise AssertionError("nu = -1 accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
