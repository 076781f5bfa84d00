"""Command-line surface: graph export, bijection and energy queries,
verification suites, and a figure-producing report.

All commands are deterministic: fixed flags give byte-identical stdout.
Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from collections import Counter

from . import tableaux
from .cartan import cartan, kr_spec
from .crystals import CapExceeded, E, F, TensorCrystal
from .kr import (
    LEFT,
    RIGHT,
    CoordCrystal,
    _subpartitions,
    build_kr,
    coord_to_tableau,
    enumerate_highest,
    tableau_to_coord,
)
from .pmdiag import enumerate_pm, phi
from .rmatrix import brute_force_R, closed_form_R, verify_theorem


def _spec_of(args, need_l=False):
    cspec = cartan(args.type, args.n)
    spec = kr_spec(cspec, args.r, args.k)
    if need_l:
        if args.l is None:
            raise ValueError("--l is required for this command")
        if args.l < 1:
            raise ValueError(f"--l must be positive, got {args.l}")
    return spec


def _emit(args, text):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _dumps(obj):
    return json.dumps(obj, separators=(",", ":"))


# -- graph -----------------------------------------------------------------


def cmd_graph(args):
    spec = _spec_of(args)
    store = build_kr(spec, args.cap)
    indices = store.cspec.classical_indices if args.classical else store.indices
    elements = store.elements
    pos = {store.element_key(b): j for j, b in enumerate(elements)}
    edges = []
    for j, b in enumerate(elements):
        for i in indices:
            c = store.apply(F, i, b)
            if c is not None:
                edges.append({"src": j, "i": i, "dst": pos[store.element_key(c)]})
    obj = {"nodes": [store.serialize(b) for b in elements], "edges": edges}
    if args.format == "json":
        _emit(args, _dumps(obj))
    elif args.format == "dot":
        _emit(args, _render_dot(obj))
    else:
        lines = ["src\ti\tdst"]
        for e in edges:
            lines.append(f"{e['src']}\t{e['i']}\t{e['dst']}")
        _emit(args, "\n".join(lines))
    return 0


def _render_dot(obj):
    lines = ["digraph crystal {", "  rankdir=TB;"]
    for j, node in enumerate(obj["nodes"]):
        label = _dumps(node).replace('"', '\\"')
        lines.append(f'  n{j} [label="{label}"];')
    for e in obj["edges"]:
        lines.append(f'  n{e["src"]} -> n{e["dst"]} [label="{e["i"]}"];')
    lines.append("}")
    return "\n".join(lines)


# -- rmatrix ---------------------------------------------------------------


def _parse_pair(text, store, coord):
    data = json.loads(text)
    if not isinstance(data, list) or len(data) != 2:
        raise ValueError("--element must be a JSON array of two elements")
    tab = tableaux.tableau_from_json(data[0])
    if tab not in store.element_set():
        raise ValueError("left element does not lie in the requested crystal")
    v = coord.from_json(data[1])
    return tab, v


def _closed_row(spec, l, coord, tab, v):
    mu = tableaux.shape(tab)
    if tab != tableaux.highest_tableau(mu):
        raise ValueError("closed form needs a classically highest left factor")
    P, h = closed_form_R(spec, l, mu, v)
    dst = (coord.u0(), phi(P, spec.cartan.n))
    return dst, h


def cmd_rmatrix(args):
    spec = _spec_of(args, need_l=True)
    store = build_kr(spec, args.cap)
    coord = CoordCrystal(spec.cartan, args.l)
    tl = TensorCrystal([store, coord])
    tr = TensorCrystal([coord, store])
    table = None
    if args.method in ("brute", "both") or (not args.element and not args.all_highest):
        table = brute_force_R(store, coord, args.cap)

    if args.all_highest:
        rows = []
        for tab, v in enumerate_highest(LEFT, spec, args.l, args.cap):
            t = (tab, v)
            row = {"src": tl.serialize(t)}
            if args.method in ("closed", "both"):
                dst, h = _closed_row(spec, args.l, coord, tab, v)
                row["closed"] = {"dst": tr.serialize(dst), "H": h}
            if args.method in ("brute", "both"):
                row["brute"] = {
                    "dst": tr.serialize(table.forward[t]),
                    "H": table.energy[t],
                }
            if args.method == "both" and (
                row["closed"]["dst"] != row["brute"]["dst"]
                or row["closed"]["H"] != row["brute"]["H"]
            ):
                raise RuntimeError(f"methods disagree on {_dumps(row['src'])}")
            rows.append(row)
        _print_rows(args, rows)
        return 0

    if args.element:
        tab, v = _parse_pair(args.element, store, coord)
        t = (tab, v)
        results = {}
        if args.method in ("closed", "both"):
            dst, h = _closed_row(spec, args.l, coord, tab, v)
            results["closed"] = (dst, h)
        if args.method in ("brute", "both"):
            results["brute"] = (table.forward[t], table.energy[t])
        if args.method == "both" and results["closed"] != results["brute"]:
            raise RuntimeError("closed and brute methods disagree on this element")
        dst, h = results[args.method if args.method != "both" else "brute"]
        obj = {"src": tl.serialize(t), "dst": tr.serialize(dst), "H": h}
        if args.format == "table":
            print("src\tdst\tH")
            print(f"{_dumps(obj['src'])}\t{_dumps(obj['dst'])}\t{h}")
        else:
            print(_dumps(obj))
        return 0

    # no element and no --all-highest: the full table
    _print_rows(args, table.rows())
    return 0


def _print_rows(args, rows):
    if args.format == "table":
        cols = sorted({k for row in rows for k in row})
        print("\t".join(cols))
        for row in rows:
            print("\t".join(_dumps(row[c]) if c in row else "" for c in cols))
    else:
        print(_dumps(rows))


# -- verify ----------------------------------------------------------------


def _alpha(cspec, i):
    n = cspec.n
    v = [0] * n
    if i == 0:
        v[0] -= 1
        v[1] -= 1
    elif i < n:
        v[i - 1] += 1
        v[i] -= 1
    else:
        fam = cspec.classical
        if fam == "D":
            v[n - 2] += 1
            v[n - 1] += 1
        elif fam == "B":
            v[n - 1] += 1
        else:
            v[n - 1] += 2
    return tuple(v)


def _count_until_none(crystal, direction, i, b, bound=10000):
    c = 0
    while b is not None:
        b = crystal.apply(direction, i, b)
        c += 1
        if c > bound:
            raise RuntimeError("operator chain does not terminate")
    return c - 1


def _axiom_violations(crystal, elements, indices, cspec, limit=20):
    bad = []
    for b in elements:
        for i in indices:
            eps, ph = crystal.eps_phi(i, b)
            up = crystal.apply(E, i, b)
            dn = crystal.apply(F, i, b)
            if (up is None) != (eps == 0) or (dn is None) != (ph == 0):
                bad.append(f"support mismatch at i={i}: {crystal.element_key(b)}")
            if up is not None:
                if crystal.apply(F, i, up) != b:
                    bad.append(f"f_{i} fails to invert e_{i} at {crystal.element_key(b)}")
                dw = tuple(
                    a - c for a, c in zip(crystal.weight(up), crystal.weight(b))
                )
                if dw != _alpha(cspec, i):
                    bad.append(f"weight shift wrong for e_{i} at {crystal.element_key(b)}")
            if dn is not None and crystal.apply(E, i, dn) != b:
                bad.append(f"e_{i} fails to invert f_{i} at {crystal.element_key(b)}")
            if _count_until_none(crystal, E, i, b) != eps:
                bad.append(f"eps_{i} count mismatch at {crystal.element_key(b)}")
            if _count_until_none(crystal, F, i, b) != ph:
                bad.append(f"phi_{i} count mismatch at {crystal.element_key(b)}")
            if len(bad) >= limit:
                return bad
    return bad


def _suite_axioms(spec, l, cap):
    cspec = spec.cartan
    store = build_kr(spec, cap)
    coord = CoordCrystal(cspec, l)
    celems = coord.elements()
    bad = _axiom_violations(store, store.elements, store.indices, cspec)
    bad += _axiom_violations(coord, celems, coord.indices, cspec)
    for b in store.elements:
        if store.sigma(store.sigma(b)) != b:
            bad.append(f"involution fails at {store.element_key(b)}")
        for j in cspec.branch_indices:
            up = store.apply(E, j, b)
            lhs = store.sigma(up) if up is not None else None
            rhs = store.apply(E, j, store.sigma(b))
            if lhs != rhs:
                bad.append(f"involution does not commute with e_{j} at {store.element_key(b)}")
    if spec.r == 1:
        for w in (1, 2, 3):
            alt = CoordCrystal(cspec, w)
            tstore = build_kr(kr_spec(cspec, 1, w), cap)
            for v in alt.elements():
                tb = coord_to_tableau(cspec, v)
                for direction in (E, F):
                    got = tstore.apply(direction, 0, tb)
                    want = alt.apply(direction, 0, v)
                    got_v = tableau_to_coord(cspec, w, got) if got is not None else None
                    if got_v != want:
                        bad.append(f"index-0 routes disagree at {alt.element_key(v)}")
    return {
        "suite": "axioms",
        "elements": len(store.elements) + len(celems),
        "violations": bad,
        "ok": not bad,
    }


def _suite_branching(spec, l, cap):
    cspec = spec.cartan
    store = build_kr(spec, cap)
    rows = []
    ok = True
    for lam in sorted(store.components, key=lambda p: p.rows):
        comp = store.components[lam]
        found = Counter()
        for b in comp.elements:
            if all(store.apply(E, j, b) is None for j in cspec.branch_indices):
                found[tableaux.weight(cspec, b)[1:]] += 1
        expected = {}
        for sub in _subpartitions(lam):
            if cspec.classical == "C" and sub.depth >= cspec.n:
                continue
            m = len(enumerate_pm(lam, sub))
            if m:
                expected[sub.weight_vec(cspec.n - 1)] = m
        keys = sorted(set(found) | set(expected))
        for w in keys:
            f, m = found.get(w, 0), expected.get(w, 0)
            if f != m:
                ok = False
            rows.append(
                {
                    "component": list(lam.rows),
                    "restricted": list(w),
                    "found": f,
                    "expected": m,
                }
            )
    return {"suite": "branching", "rows": rows, "ok": ok}


def _suite_theorem(spec, l, cap, threads):
    report = verify_theorem(spec, l, cap, threads)
    report["suite"] = "theorem"
    return report


def _suite_highest(spec, l, cap):
    cspec = spec.cartan
    store = build_kr(spec, cap)
    coord = CoordCrystal(cspec, l)
    celems = coord.elements()
    out = {"suite": "highest"}
    ok = True
    for side, factors in ((LEFT, (store.elements, celems)), (RIGHT, (celems, store.elements))):
        crystals = (store, coord) if side == LEFT else (coord, store)
        tensor = TensorCrystal(list(crystals))
        brute = [
            t
            for t in itertools.product(*factors)
            if all(tensor.apply(E, i, t) is None for i in cspec.classical_indices)
        ]
        closed = enumerate_highest(side, spec, l, cap)
        bkeys = sorted(tensor.element_key(t) for t in brute)
        ckeys = sorted(tensor.element_key(t) for t in closed)
        out[side.lower()] = {"brute": len(bkeys), "closed": len(ckeys)}
        if bkeys != ckeys:
            ok = False
    out["ok"] = ok
    return out


def cmd_verify(args):
    spec = _spec_of(args, need_l=True)
    names = (
        ["axioms", "branching", "theorem", "highest"]
        if args.suite == "all"
        else [args.suite]
    )
    suites = []
    for name in names:
        if name == "axioms":
            suites.append(_suite_axioms(spec, args.l, args.cap))
        elif name == "branching":
            suites.append(_suite_branching(spec, args.l, args.cap))
        elif name == "theorem":
            suites.append(_suite_theorem(spec, args.l, args.cap, args.threads))
        else:
            suites.append(_suite_highest(spec, args.l, args.cap))
    ok = all(s["ok"] for s in suites)
    print(_dumps({"suites": suites, "ok": ok}))
    return 0 if ok else 1


# -- report ----------------------------------------------------------------


def cmd_report(args):
    spec = _spec_of(args, need_l=True)
    store = build_kr(spec, args.cap)
    coord = CoordCrystal(spec.cartan, args.l)
    table = brute_force_R(store, coord, args.cap)
    os.makedirs(args.out_dir, exist_ok=True)

    tsv = os.path.join(args.out_dir, "rtable.tsv")
    with open(tsv, "w") as fh:
        fh.write("src\tdst\tH\n")
        for row in table.rows():
            fh.write(f"{_dumps(row['src'])}\t{_dumps(row['dst'])}\t{row['H']}\n")

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    r, k, l = spec.r, spec.k, args.l
    hist = os.path.join(args.out_dir, "energy_histogram.png")
    counts = Counter(table.energy.values())
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = sorted(counts)
    ax.bar(range(len(xs)), [counts[v] for v in xs], color="#4878a8")
    ax.set_xticks(range(len(xs)), [str(v) for v in xs])
    ax.set_xlabel("H")
    ax.set_ylabel("tensor pairs")
    ax.set_title(f"local energy, rows={r} width={k} against width={l}")
    fig.tight_layout()
    fig.savefig(hist, dpi=120)
    plt.close(fig)

    comp = os.path.join(args.out_dir, "component_sizes.png")
    labels = [str(list(lam.rows)) for lam in sorted(store.components, key=lambda p: p.rows)]
    sizes = [
        len(store.components[lam].elements)
        for lam in sorted(store.components, key=lambda p: p.rows)
    ]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(sizes)), sizes, color="#6a9a58")
    ax.set_xticks(range(len(labels)), labels, rotation=30, ha="right")
    ax.set_ylabel("elements")
    ax.set_title(f"classical components, rows={r} width={k}")
    fig.tight_layout()
    fig.savefig(comp, dpi=120)
    plt.close(fig)

    for path in (tsv, hist, comp):
        print(path)
    return 0


# -- plumbing ----------------------------------------------------------------


def _add_spec_flags(p, with_l):
    p.add_argument("--type", required=True, choices=["d1", "b1", "a2"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    if with_l:
        p.add_argument("--l", type=int, default=None)
    p.add_argument("--cap", type=int, default=200000)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="krcrystals",
        description="finite affine crystals, their bijection tables, and energies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="export one crystal graph")
    _add_spec_flags(g, with_l=False)
    g.add_argument("--format", choices=["json", "dot", "table"], default="json")
    g.add_argument("--classical", action="store_true", help="drop the index-0 arrows")
    g.add_argument("--out", default=None, help="write to a file instead of stdout")
    g.set_defaults(func=cmd_graph)

    rm = sub.add_parser("rmatrix", help="bijection images and energies")
    _add_spec_flags(rm, with_l=True)
    rm.add_argument("--element", default=None, help="JSON pair [left, right]")
    rm.add_argument("--method", choices=["closed", "brute", "both"], default="both")
    rm.add_argument("--all-highest", action="store_true", dest="all_highest")
    rm.add_argument("--format", choices=["json", "table"], default="json")
    rm.set_defaults(func=cmd_rmatrix)

    v = sub.add_parser("verify", help="run invariant suites")
    _add_spec_flags(v, with_l=True)
    v.add_argument(
        "--suite",
        choices=["axioms", "branching", "theorem", "highest", "all"],
        default="all",
    )
    v.add_argument("--threads", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    rp = sub.add_parser("report", help="delimited table plus figures")
    _add_spec_flags(rp, with_l=True)
    rp.add_argument("--out-dir", default="krc-report", dest="out_dir")
    rp.set_defaults(func=cmd_report)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (ValueError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
