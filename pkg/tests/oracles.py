"""Closed-form dimension formulas used as independent oracles."""

from __future__ import annotations


def classical_sdim(series, m, n=None):
    if series == "gl":
        return (m * m + n * n, 2 * m * n)
    if series == "sl":
        return (m * m + n * n - 1, 2 * m * n)
    if series == "psl":
        return (2 * m * m - 2, 2 * m * m)
    if series == "q":
        return (m * m, m * m)
    if series == "sq":
        return (m * m, m * m - 1)
    if series == "psq":
        return (m * m - 1, m * m - 1)
    if series == "pe":
        return (m * m, m * m)
    if series == "spe":
        return (m * m - 1, m * m)
    if series == "osp":
        return (m * (m - 1) // 2 + n * (2 * n + 1), 2 * m * n)
    raise KeyError(series)


def _gl(p, q):
    return (p * p + q * q, 2 * p * q)


def _add(*dims):
    return tuple(sum(d[i] for d in dims) for i in (0, 1))


def _tensor(a, b):
    return (a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _sym2(p, q):
    return (p * (p + 1) // 2 + q * (q - 1) // 2, p * q)


def _alt2(p, q):
    return (p * (p - 1) // 2 + q * (q + 1) // 2, p * q)


def _pi(d):
    return (d[1], d[0])


def depth_one_dims(series, params, variant=""):
    """``(g_0, g_-1)`` superdimensions read off the depth-one table."""
    if series == "sl":
        m, n, p, q = params
        g0 = _add(_gl(p, q), _gl(m - p, n - q), (-1, 0))
        return g0, _tensor((p, q), (m - p, n - q))
    if series == "psl":
        m, p = params
        g0 = _add(_gl(p, p), _gl(m - p, m - p), (-2, 0))
        return g0, _tensor((p, p), (m - p, m - p))
    if series == "osp" and variant == "OLGr":
        m, n = params
        return _gl(m, n), _alt2(m, n)
    if series == "osp":
        m, n = params
        return _add(classical_sdim("osp", m - 2, n), (1, 0)), (m - 2, 2 * n)
    if series in ("sq", "psq"):
        n, p = params
        k = p * p + (n - p) ** 2
        g0 = (k, k - 1) if series == "sq" else (k - 1, k - 1)
        return g0, (p * (n - p), p * (n - p))
    if series in ("pe", "spe") and len(params) == 1:
        n = params[0]
        return _add(classical_sdim(series, n - 1), (1, 0)), (n - 1, n - 1)
    if series in ("pe", "spe"):
        n, p = params
        g0 = _gl(p, n - p) if series == "pe" else _add(_gl(p, n - p), (-1, 0))
        g1 = _pi(_sym2(p, n - p)) if variant == "S2" else _pi(_alt2(p, n - p))
        return g0, g1
    raise KeyError(series)


DEPTH_ONE_CASES = [
    ("sl", (2, 1, 1, 0), ""),
    ("sl", (3, 2, 1, 1), ""),
    ("sl", (3, 1, 1, 0), ""),
    ("sl", (2, 2, 1, 0), ""),
    ("sl", (3, 3, 2, 1), ""),
    ("psl", (2, 1), ""),
    ("psl", (3, 1), ""),
    ("osp", (3, 1), ""),
    ("osp", (4, 1), ""),
    ("osp", (2, 1), ""),
    ("osp", (3, 2), ""),
    ("osp", (4, 2), ""),
    ("osp", (2, 1), "OLGr"),
    ("osp", (1, 1), "OLGr"),
    ("osp", (1, 2), "OLGr"),
    ("osp", (2, 2), "OLGr"),
    ("sq", (2, 1), ""),
    ("sq", (3, 1), ""),
    ("psq", (3, 1), ""),
    ("pe", (2,), ""),
    ("pe", (3,), ""),
    ("spe", (3,), ""),
    ("pe", (2, 1), "S2"),
    ("pe", (2, 1), "L2"),
    ("pe", (3, 1), "S2"),
    ("pe", (3, 1), "L2"),
    ("pe", (3, 2), "S2"),
    ("pe", (3, 2), "L2"),
    ("spe", (3, 1), "L2"),
]

BUILDER_CASES = (
    [("gl", m, n) for m in range(4) for n in range(4) if m + n]
    + [("sl", m, n) for m in range(4) for n in range(4) if m + n]
    + [("psl", m, None) for m in (1, 2, 3)]
    + [(s, m, None) for s in ("q", "sq", "psq", "pe", "spe") for m in (1, 2, 3)]
    + [("osp", m, n) for m in range(4) for n in range(4) if m + 2 * n]
)
