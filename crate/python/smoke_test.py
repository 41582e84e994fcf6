"""Smoke test for the latmon extension module.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import latmon


def main():
    u = latmon.Lattice([[0, 1], [1, 0]], labels=["e", "f"])
    assert u.rank == 2
    assert u.signature() == (1, 1, 0)
    assert u.determinant() == -1
    assert u.is_even() and u.is_unimodular()

    swap = latmon.Isometry.reflection(u, [1, -1])
    assert swap.matrix() == [[0, 1], [1, 0]]
    assert swap.spinor_norm() == 1
    minus_id = latmon.Isometry(u, [[-1, 0], [0, -1]])
    assert minus_id.spinor_norm() == -1
    assert swap.compose(swap) == latmon.Isometry.identity(u)

    try:
        latmon.Lattice([[0, 1], [2, 0]])
    except ValueError:
        pass
    else:
        raise AssertionError("asymmetric Gram matrix accepted")

    e8 = latmon.milnor_lattice(5, 3, 2)
    assert e8.signature() == (0, 8, 0) and e8.determinant() == 1
    roots = e8.roots(-2, 2)
    assert len(roots) == 240
    simple = [[1 if i == j else 0 for j in range(8)] for i in range(8)]
    assert latmon.reflection_group_order(e8, simple) == 696729600

    report = latmon.cvl_check(e8, roots)
    assert report["generates"] and report["orbit"] == "certified"
    assert report["diagram"] == "false" and not report["complete"]

    k3 = latmon.surface_model(1)
    assert k3["k_scalar"] == 0 and k3["l_prime"].signature() == (2, 18, 0)
    assert k3["l_prime"].determinant() == latmon.milnor_lattice(11, 3, 2).determinant()

    dolgachev = latmon.surface_model(1, [2, 3])
    assert dolgachev["k_scalar"] == 7
    witnesses = latmon.surface_witnesses(1, [2, 3])
    assert witnesses["splitting"] is not None
    assert all(w is not None for w in witnesses["fibre_spans"].values())

    try:
        latmon.surface_model(0)
    except ValueError as e:
        assert "positive geometric genus" in str(e)
    else:
        raise AssertionError("pg = 0 accepted")

    print("latmon smoke test OK")


if __name__ == "__main__":
    main()
