from itertools import combinations

import pytest

import leray

M5 = {"ground": ["1", "2", "3", "4", "5"], "circuits": [["1", "2", "4"], ["1", "3", "5"], ["2", "3", "4", "5"]]}
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def nbc_counts(n, circuits):
    # independent count: subsets containing no broken circuit
    broken = [frozenset(c) - {min(c)} for c in circuits]
    out = []
    for k in range(n + 1):
        c = sum(1 for s in combinations(range(n), k) if not any(b <= set(s) for b in broken))
        if c == 0:
            break
        out.append(c)
    return out


def divide_one_plus_t(p):
    q, carry = [], 0
    for a in p[:-1]:
        carry = a - carry
        q.append(carry)
    assert p[-1] == carry
    return q


def h0_per_line(coh):
    lines = {}
    for p, k, d in coh:
        if p == 0:
            lines[k] = d
    return [lines.get(k, 0) for k in range(max(lines) + 1)]


def test_os_dims_match_nbc_oracle():
    m = leray.Matroid(M5)
    idx = {g: i for i, g in enumerate(M5["ground"])}
    circuits = [[idx[e] for e in c] for c in M5["circuits"]]
    assert m.os()["dims"] == nbc_counts(5, circuits)
    assert leray.Matroid.fixture("U23").os()["dims"] == [1, 3, 2]


def test_fixture_and_json_agree():
    a = leray.Matroid.fixture("M5")
    b = leray.Matroid(M5)
    assert a.lattice()["rank_profile"] == b.lattice()["rank_profile"] == [1, 5, 6, 1]
    assert set(a.building_set()) == {"1", "2", "3", "4", "5", "124", "135", "1hat"}


def test_graph_input():
    k4 = leray.Matroid.from_graph(4, K4_EDGES)
    assert k4.lattice()["rank_profile"] == [1, 6, 7, 1]


def test_chow_degree_one_is_the_core():
    m = leray.Matroid.fixture("M5")
    for core in m.cores():
        if "1hat" not in core:
            continue
        dims = m.chow(core)["dims"]
        assert dims[1] == len(core)
        assert dims == dims[::-1]


def test_model_cohomology_is_os():
    m = leray.Matroid.fixture("M5")
    os_dims = m.os()["dims"]
    for core in m.cores():
        hat = m.model(core, hat=True)
        assert h0_per_line(hat["cohomology"]) == os_dims
        assert all(d == 0 for p, _, d in hat["cohomology"] if p > 0)
        if "1hat" in core:
            b = m.model(core)
            assert h0_per_line(b["cohomology"]) == divide_one_plus_t(os_dims)
            assert all(b["checks"].values())


def test_list_core_with_commas():
    pi4 = leray.Matroid.fixture("Pi4")
    flat = next(x for x in pi4.building_set() if "," in x)
    d = pi4.chow(["1hat", flat])["dims"]
    assert d[1] == 2


def test_bad_input_raises():
    m = leray.Matroid.fixture("M5")
    with pytest.raises(leray.InputError):
        m.chow("124")
    with pytest.raises(ValueError):
        leray.Matroid({"ground": ["1"]})
    with pytest.raises(ValueError):
        leray.Matroid("{not json")


def test_verify_reports_cap():
    m = leray.Matroid.fixture("M5")
    r = m.verify("1hat", max_poset_size=10)
    assert not r["ok"]
    assert "cap_breach" in r
    assert m.verify("1hat")["ok"]
