import pytest

import hornred

BASE = "P0(x1,x2) :- P1(x1,x3), P2(x1,x4), P3(x2,x3), P4(x2,x4), P5(x3,x4)."


def test_canonical_and_alpha_equivalence():
    assert hornred.canonical("Q(a) :- R(b), S(a).") == "P0(x1) :- P1(x1), P2(x2)."
    assert hornred.alpha_equivalent("P0(x) :- P1(x).", "P5(y) :- P9(y).")


def test_enumerate_and_count():
    assert hornred.count(2, 2, two_connected=True) == 32
    assert hornred.enumerate(1, 1, connected=True) == ["P0(x1).", "P0(x1) :- P1(x1)."]


def test_base_clause_verdicts():
    assert hornred.c_base() == BASE
    sld = hornred.is_reducible(BASE)
    assert not sld["reducible"] and sld["exact"]
    std = hornred.is_reducible(BASE, mode="standard")
    assert std["reducible"]
    assert std["witness"]["proof"]["steps"]


def test_reduce_intro_theory():
    report = hornred.reduce_theory(["P0(x) :- P1(x).", "P0(x) :- P1(x), P2(x).", "P0(x) :- P1(x), P2(x), P3(x)."])
    assert len(report["core"]) == 2
    assert len(report["removed"]) == 1


def test_derive_and_graph():
    result = hornred.derive(["P0(x) :- P1(x), P2(x)."], "P0(x) :- P1(x), P2(x), P3(x).")
    assert result["found"]
    assert hornred.pending_variables("P0(x1,x2) :- P1(x1,x3).") == ["x2", "x3"]
    assert hornred.to_dot("P0(x1) :- P1(x1).").startswith("graph {")


def test_extension_family():
    assert len(hornred.hnr_family(1)) == 17
    c1, c2 = hornred.spanning_tree_split("P0(x1,x2) :- P1(x1,x3), P2(x3,x4), P3(x4,x2).")
    assert c2.count("P") == 3


def test_errors_map_to_value_error():
    with pytest.raises(ValueError):
        hornred.canonical("P0(x1 :- .")
    with pytest.raises(hornred.PreconditionError):
        hornred.nonred_extend(BASE, 0, 3)


def test_cli_in_process():
    code, out, err = hornred.run_cli(["enumerate", "--arity", "2", "--body", "2", "--two-connected", "--most-general", "--count"])
    assert (code, out) == (0, "32\n")
