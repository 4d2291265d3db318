from __future__ import annotations

import pytest

from spiralblock.exactalg import IntLaurent
from spiralblock.rootsys import (
    GroupClosureError,
    build_root_system,
    closure,
    poincare,
    reflection_subgroup,
    root_reflection_group,
    weyl_group,
)


@pytest.mark.parametrize("label,roots,order", [("A1", 2, 2), ("A2", 6, 6), ("B2", 8, 8), ("G2", 12, 12), ("A3", 12, 24)])
def test_root_counts_and_weyl_orders(label, roots, order):
    rs = build_root_system(label)
    assert len(rs.roots) == roots
    assert weyl_group(rs).order == order


def test_reflections_permute_roots():
    rs = build_root_system("B2")
    for a in rs.roots:
        s = rs.reflection(a)
        image = {tuple(sum(s[i][k] * r[k] for k in range(len(r))) for i in range(len(r))) for r in rs.roots}
        assert image == set(rs.roots)


def test_poincare_a2():
    rs = build_root_system("A2")
    assert poincare(weyl_group(rs)) == IntLaurent({0: 1, 2: 2, 4: 2, 6: 1})


def test_root_reflection_group_from_roots():
    rs = build_root_system("A2")
    g = root_reflection_group(rs.roots)
    assert g.order == 6 and g.positive_root_count == 3
    assert root_reflection_group([]).order == 1


def test_reflection_subgroup():
    rs = build_root_system("B2")
    # two orthogonal roots generate a Klein four-group
    a = rs.roots[0]
    b = next(r for r in rs.roots if sum(x * y for x, y in zip(r, rs.coroot(a))) == 0)
    assert reflection_subgroup(rs, [a, b]).order == 4
    assert reflection_subgroup(rs, [a]).order == 2


def test_closure_cap():
    with pytest.raises(GroupClosureError):
        closure([((1, 1), (0, 1))], 2, cap=50)


def test_bad_label():
    with pytest.raises(ValueError):
        build_root_system("Q7")
