"""Smoke test for the relaycover Python bindings.

Build the extension first:

    cargo build -p relaycover-py --release

then run ``python3 python/smoke_test.py``. The library is loaded straight
from ``target/`` (or from ``$RELAYCOVER_PY_LIB`` when set).
"""

import importlib.machinery
import importlib.util
import json
import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    candidates = []
    if os.environ.get("RELAYCOVER_PY_LIB"):
        candidates.append(Path(os.environ["RELAYCOVER_PY_LIB"]))
    for profile in ("release", "debug"):
        for name in ("librelaycover_py.so", "librelaycover_py.dylib", "relaycover_py.dll"):
            candidates.append(ROOT / "target" / profile / name)
    for path in candidates:
        if path.exists():
            loader = importlib.machinery.ExtensionFileLoader("relaycover_py", str(path))
            spec = importlib.util.spec_from_file_location("relaycover_py", path, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("relaycover_py library not found; run `cargo build -p relaycover-py` first")


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    rc = load()
    env = rc.RadioEnvironment()
    qos = rc.QosSpec()
    dev = rc.DevicePowers.ladder(20.0)

    td = rc.solve_relays(env, qos, dev, "td", 1)
    fd = rc.solve_relays(env, qos, dev, "fd", 1)
    assert close(td.total, 341, 2) and close(td.relay_offsets[0], 192, 2), td
    assert close(fd.total, 493, 2) and close(fd.relay_offsets[0], 277, 2), fd
    assert td.binding in ("forward", "backward", "both")

    assert rc.max_relay_count(env, qos) == 9
    best, reach, totals = rc.sweep(env, qos, dev, "td")
    assert best == 6 and close(reach, 622, 3), (best, reach)
    assert len(totals) == 10

    assert close(rc.coverage_radius(env, qos, dev, "td"), 204, 2)
    assert close(rc.coverage_radius(env, qos, dev, "fd"), 245, 2)

    try:
        rc.solve_relays(env, qos, dev, "td", 10)
    except rc.InfeasibleError as e:
        assert "9" in str(e)
    else:
        raise AssertionError("relay bound not enforced")

    quad = rc.Polygon([(0, 350), (300, 650), (500, 600), (600, 300)])
    (cx, cy), r = rc.min_enclosing_disk(quad)
    assert close(r, 304.1, 0.1)
    (ex, ey), er = rc.constrained_min_enclosing_disk(quad)
    assert quad.classify(ex, ey) == "boundary"
    assert close(ex, 325, 1) and close(ey, 323, 1)
    assert quad.classify(cx, cy) == "interior"

    fwd, bwd = rc.outage_probability(env, qos, dev, td.distances, "td")
    assert 0 < fwd < 1 and 0 < bwd < 1
    sim = rc.simulate(env, qos, dev, td.distances, "td", trials=200_000, seed=3)
    assert abs(sim["forward"]["z_score"]) < 4 and abs(sim["backward"]["z_score"]) < 4, sim
    assert sim == rc.simulate(env, qos, dev, td.distances, "td", trials=200_000, seed=3)

    plan = json.loads(rc.plan_json(json.dumps({"destinations": [[0, 350]]})))
    dest = plan["destinations"][0]
    assert dest["relay_count"] == 1 and dest["feasible"]

    try:
        rc.Polygon([(0, 0), (1, 1)])
    except ValueError:
        pass
    else:
        raise AssertionError("degenerate polygon accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
