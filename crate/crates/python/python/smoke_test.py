"""Smoke test for the powseries extension module.

Build it first, e.g. `maturin develop -m crates/python/Cargo.toml`, or copy
target/release/libpowseries_py.so to powseries.so on PYTHONPATH.
"""

import math

import powseries as ps


def close(a, b, tol=1e-12):
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(a, b))


def main():
    assert close(ps.recip([1, -1], 5), [1] * 5)
    assert close(ps.sqrt([1, 2, 1], 4), [1, 1, 0, 0])
    assert close(ps.sqrt([1, 1], 4), [1, 0.5, -0.125, 0.0625])

    root, rem = ps.sqrt_rem([1, 0, 1])
    assert close(root, [0, 1]) and close(rem, [1])

    assert ps.next_supported(25) == 27 and ps.is_supported(48)
    assert ps.sqrt_params(1024) == (5, 216)

    spec = ps.forward([0, 1], 4)
    assert close(spec, [1, 1j, -1, -1j])
    assert close(ps.inverse(spec), [0, 1, 0, 0])

    g = [complex(i, 1) for i in range(8)]
    h = [complex(1, -i) for i in range(4)]
    full = [sum(g[i] * h[k - i] for i in range(len(g)) if 0 <= k - i < len(h)) for k in range(11)]
    assert close(ps.middle_product(g, h, 4), full[4:8], 1e-9)

    ledger = ps.Ledger()
    r, m = 6, 32
    f = ps.random_series(3, r * m, dist="damped")
    out = ps.sqrt(f, r * m, blocks=r, ledger=ledger)
    assert ledger.forward(2 * m) == 2 * r - 1 and ledger.inverse(2 * m) == 2 * r - 2
    assert ledger.total() == 4 * r - 3 and ledger.total("base") > 0
    sq = [sum(out[i] * out[k - i] for i in range(k + 1)) for k in range(r * m)]
    assert max(abs(a - b) for a, b in zip(sq, f)) < 1e-10

    ledger.reset()
    ps.recip(ps.random_series(4, 3 * 4 * 16), 3 * 4 * 16, blocks=4, ledger=ledger)
    assert (ledger.forward(32), ledger.inverse(32)) == (27, 22)

    rec = ps.bench("recip", blocks=4, block_size=64)
    assert rec["n"] == 768 and math.isclose(rec["cost_ratio"], rec["expected_ratio"])

    try:
        ps.sqrt([2, 1], 3)
    except ValueError as e:
        assert "constant term" in str(e)
    else:
        raise AssertionError("expected ValueError")

    passed, lines = ps.selftest()
    assert passed, "\n".join(lines)
    print(f"powseries smoke test passed ({len(lines)} selftest suites)")


if __name__ == "__main__":
    main()
