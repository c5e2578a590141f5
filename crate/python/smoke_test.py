"""Smoke test for the mzvff Python module.

Build first:  pip install maturin && maturin develop -m crates/python/Cargo.toml
"""

from fractions import Fraction

import mzvff


def main():
    z = mzvff.closed_form_poly(2, 2)
    assert str(z) == "1/((1 - 4*x1*x2)(1 - 2*x2))", str(z)
    assert z.series(1) == {(0, 0): 1, (0, 1): 2, (1, 1): 4}

    # genus 0 closed form agrees with the defining sum
    rat = mzvff.FieldSpec.rational(3)
    g0 = mzvff.closed_form_genus0(3, 2)
    assert g0.series(5) == mzvff.oracle_series(rat, 2, 5)

    # elliptic curve y^2 = x^3 + x over F_5
    e5 = mzvff.FieldSpec.from_l_polynomial(5, [1, -2, 5])
    assert e5 == mzvff.FieldSpec.bundled("e5")
    assert e5.class_number == mzvff.elliptic_point_count(5, 1, 0) == 4
    zg = mzvff.closed_form_genus(e5)
    assert zg.variables == ["u", "v"]
    assert zg.series(2)[(1, 0)] == Fraction(16)
    p, q = mzvff.pq_form(e5)
    assert q.startswith("1 - 6*v - 31*u") and q.endswith("625*u^3*v^2")

    assert mzvff.check_involution(3, 3)
    assert mzvff.mixed_relation_d2(3)
    assert mzvff.euler_agrees(3, 2, 3)
    assert mzvff.decomposition_check_d2(5)

    value, s_form = mzvff.scaled_residue(3, "w=1")
    assert str(value) == "1/(1 - 3*x1)" and "3^(1-s)" in s_form

    back = mzvff.RationalFunction.from_json(g0.to_json())
    assert back == g0 and str(back) == str(g0)

    ok, checks = mzvff.run_checks(only=["involution"], qs=[2, 3], depths=[1, 2])
    assert ok and len(checks) == 4

    try:
        mzvff.FieldSpec(5, 1, 4, [2])
    except mzvff.MzvffError:
        pass
    else:
        raise AssertionError("inconsistent spec accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
