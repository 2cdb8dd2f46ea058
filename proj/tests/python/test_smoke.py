"""Smoke tests for the Python bindings."""

import os
import sys

ext_dir = os.environ.get("MODELFORGE_EXT_DIR")
if ext_dir:
    sys.path.insert(0, ext_dir)

try:
    import _core as modelforge
except ImportError:
    import modelforge


GROUP_INPUT = """
list(usable).
  e * x = x.
  g(x) * x = e.
  (x * y) * z = x * (y * z).
  a * b != b * a.
end_of_list.
"""

EVEN_INPUT = """
list(usable).
  even(a).
  -even(x) | even(s(s(x))).
  -even(s(a)).
end_of_list.
"""


def test_search_finds_the_order_six_group():
    result = modelforge.search(GROUP_INPUT, start_n=2, end_n=6, max_models=1)
    assert result["exit_code"] == 15
    assert result["domain_sizes"] == [6]
    (model,) = result["models"]
    assert model["size"] == 6
    star = model["functions"]["*"]
    assert len(star) == 36
    assert any(star[i * 6 + j] != star[j * 6 + i]
               for i in range(6) for j in range(6))


def test_search_is_unsatisfiable_below_six():
    result = modelforge.search(GROUP_INPUT, start_n=2, end_n=5)
    assert result["exit_code"] == 12
    assert result["models"] == []


def test_search_model_tables():
    result = modelforge.search(EVEN_INPUT, start_n=3, end_n=3)
    assert result["exit_code"] == 15
    (model,) = result["models"]
    a = model["functions"]["a"][0]
    s = model["functions"]["s"]
    even = model["relations"]["even"]
    assert even[a] == 1
    assert even[s[a]] == 0
    for x in range(3):
        if even[x]:
            assert even[s[s[x]]] == 1
    assert "Processing clause: -a(v0) | even(v0)." in result["trace"]


def test_solve_cnf():
    unsat = modelforge.solve_cnf([[1, 2], [1, -2], [-1, 2], [-1, -2]])
    assert unsat["status"] == "unsatisfiable"
    assert unsat["model_count"] == 0

    sat = modelforge.solve_cnf([[1, 2]], max_models=10)
    assert sat["status"] == "models_found"
    assert sat["model_count"] == 3
    assert sat["exhausted"]
    for model in sat["models"]:
        assert 1 in model or 2 in model


def test_flatten():
    flat = modelforge.flatten(EVEN_INPUT)
    assert flat == [
        "-a(v0) | even(v0)",
        "-s(v0,v1) | -s(v1,v2) | -even(v0) | even(v2)",
        "-a(v0) | -s(v0,v1) | -even(v1)",
    ]


def test_filter_identities():
    survivors = modelforge.filter_identities(
        "f(x,y) = f(y,x).\nf(x,y) = x.\n", max_n=3)
    assert survivors == ["f(x,y) = f(y,x)."]


def test_input_error():
    try:
        modelforge.search("not a theory")
    except ValueError:
        pass
    else:
        raise AssertionError("expected a parse error")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
