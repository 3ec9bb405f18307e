"""Smoke test for the raagfp_py extension.

Build first with `cargo build -p raagfp-py` (or `--release`); the script
loads the shared library straight from the cargo target directory.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "crates" / "core" / "corpus"


def load_extension():
    for profile in ("release", "debug"):
        for name in ("libraagfp_py.so", "libraagfp_py.dylib", "raagfp_py.dll"):
            path = ROOT / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("raagfp_py", str(path))
                spec = importlib.util.spec_from_loader("raagfp_py", loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                return module
    sys.exit("raagfp_py not built; run `cargo build -p raagfp-py` first")


def main():
    rp = load_extension()

    c4 = rp.Graph.from_json((CORPUS / "graphs" / "c4.json").read_text())
    ones = {v: 1 for v in c4.vertices}
    assert len(c4) == 4 and c4.clique_number() == 2
    assert rp.is_fg(c4, ones, 2)
    assert rp.max_fp(c4, ones, 3) == 1
    report = json.loads(rp.analyze(c4, ones, 2))
    assert report["routes_agree"] and report["decomposition"]["pass"]
    assert [d["dim_h_c"] for d in report["degrees"]] == [0, 1]

    p3 = rp.Graph(["v1", "v2", "v3"], [("v1", "v2"), ("v2", "v3")])
    assert not rp.is_fg(p3, {"v1": 1, "v2": 0, "v3": 1}, 2)
    assert rp.max_fp(p3, {"v1": 0, "v2": 1, "v3": 0}, 2) is None
    assert sorted(map(sorted, p3.join_factors())) == [["v1", "v3"], ["v2"]]

    octa = rp.Graph.from_json((CORPUS / "graphs" / "octahedron.json").read_text())
    assert octa.reduced_homology(2) == {2: 1}

    pair = rp.Graph(["a", "b"], [])
    co = json.loads(rp.coabelian(pair, [[1, 0], [0, 1]], 2))
    assert co["fg"]["fg"] is False and co["fg"]["witness"]["zero_set"] == []

    g = json.loads(rp.gog((CORPUS / "gog" / "edge_4_2_6.json").read_text(), 12))
    assert g["euler"]["chi"] == "-1/12" and g["bounds"]["rank"] == 2

    try:
        rp.is_fg(c4, {v: 0 for v in c4.vertices}, 2)
    except ValueError as e:
        assert "epimorphism" in str(e)
    else:
        raise AssertionError("zero character accepted")

    v = json.loads(rp.verify_all(trials=5, max_vertices=5))
    assert v["pass"]

    print(f"raagfp_py {rp.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
