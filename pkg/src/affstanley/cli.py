"""
Command-line interface.

    affstanley assf --family B --n 3 --all --dual
    affstanley pieri --family B --n 3 --i 1 --word 0
    affstanley verify relations --family B --n 3
    affstanley factors --family C --n 3

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .cartan import FAMILIES, MIN_RANK
from .errors import InconsistencyError, NotGrassmannianError, RankError, WordError
from .weyl import load_grassmannian, parse_word, weyl_group

CACHE_ENV = "AFFSTANLEY_CACHE_DIR"
SUITES = ("membership", "relations", "coproduct", "typefree", "kernel",
          "duality", "positivity", "typeD")


class UsageError(ValueError):
    pass


def load_schema(name):
    """Shipped JSON schema: "symfunc", "certificate" or "report"."""
    text = resources.files("affstanley").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class RunConfig:
    family: str = "B"
    n: int = 3
    max_degree: int | None = None
    format: str = "table"
    cache_dir: str | None = None
    jobs: int = 1

    def validate(self):
        if self.family not in FAMILIES:
            raise UsageError(f"unknown family {self.family!r}")
        if self.n < MIN_RANK[self.family]:
            raise UsageError(f"type {self.family} requires n >= {MIN_RANK[self.family]}")
        if self.max_degree is not None and self.max_degree > 2 * self.n:
            print(f"warning: max degree {self.max_degree} exceeds 2n = {2 * self.n}",
                  file=sys.stderr)
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        return self

    def group(self):
        g = weyl_group(self.family, self.n)
        if self.cache_dir and self.max_degree is not None:
            # the file is written even when this process already enumerated g
            levels = load_grassmannian(self.cache_dir, self.family, self.n, self.max_degree)
            g._grass.setdefault("levels", [list(level) for level in levels])
        return g


def _config(args):
    cache = getattr(args, "cache_dir", None) or os.environ.get(CACHE_ENV)
    return RunConfig(args.family.upper(), args.n, getattr(args, "max_degree", None),
                     getattr(args, "format", "table"), cache,
                     getattr(args, "jobs", 1)).validate()


def _word_text(w):
    return " ".join(map(str, w.canonical_word))


def _parse_element(g, text):
    """``"2"``, ``"0 2 + 2*3 2 0"`` or ``"1/2*0"``: a sum of coefficient*word terms."""
    from .nilcox import NilCoxElement
    terms = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        coeff, _, word = chunk.rpartition("*")
        c = Fraction(coeff.strip()) if coeff else Fraction(1)
        letters = parse_word(word, g.cartan)
        w = g.from_word(letters)
        if w.length != len(letters):
            raise WordError(f"word {word.strip()!r} is not reduced")
        terms[w] = terms.get(w, 0) + c
    return NilCoxElement(g, terms)


def _element(g, text):
    letters = parse_word(text, g.cartan)
    w = g.from_word(letters)
    if w.length != len(letters):
        raise WordError(f"word {text!r} is not reduced")
    return w


# assf -----------------------------------------------------------------------

def _appendix_order(w):
    from .pieri import partition_of
    cd = w.group.cartan
    if cd.family in ("B", "D") and w.length:
        return (w.length, partition_of(w).parts, w.canonical_word)
    return (w.length, (), w.canonical_word)


def _assf_row(family, n, word, dual):
    from .assf import UndefinedDualError, assf, kschur_dual
    g = weyl_group(family, n)
    w = g.from_word(word)
    row = {"w": w, "assf": assf(w)}
    if dual:
        try:
            row["dual"] = kschur_dual(w) if w.length else None
        except UndefinedDualError:
            row["dual"] = None
    return row


def _assf_job(args):
    family, n, word, dual = args
    row = _assf_row(family, n, word, dual)
    return {"assf": row["assf"].to_json(),
            "dual": row["dual"].to_json() if row.get("dual") else None,
            "text": (repr(row["assf"].value),
                     repr(row["dual"].value) if row.get("dual") else "undefined")}


def cmd_assf(args):
    cfg = _config(args)
    g = cfg.group()
    if args.all:
        top = cfg.max_degree if cfg.max_degree is not None else \
            (2 * cfg.n - 1 if cfg.family == "B" else 2 * cfg.n - 2 if cfg.family == "D" else cfg.n)
        elements = [w for level in g.grassmannian_elements(top)[1:] for w in level]
        elements.sort(key=_appendix_order)
    else:
        if args.word is None:
            raise UsageError("give --word or --all")
        elements = [_element(g, args.word)]
    if args.dual:
        if cfg.family not in ("B", "D"):
            raise UsageError("--dual is available for types B and D")
        for w in elements:
            if not w.is_grassmannian():
                raise NotGrassmannianError(f"{_word_text(w)!r} is not 0-Grassmannian")
    jobs = [(cfg.family, cfg.n, w.canonical_word, args.dual) for w in elements]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_assf_job, jobs))
    else:
        rows = [_assf_job(j) for j in jobs]
    out = []
    if cfg.format == "json":
        data = []
        for row in rows:
            item = row["assf"]
            if args.dual:
                item["dual"] = row["dual"]
            data.append(item)
        out.append(json.dumps(data if args.all else data[0], indent=2))
    elif cfg.format == "tsv":
        out.append("word\tbasis\tpartition\tcoefficient")
        for row in rows:
            parts = [row["assf"]] + ([row["dual"]] if row["dual"] else [])
            for sf in parts:
                for t in sf["terms"]:
                    c = Fraction(t["numerator"], t["denominator"])
                    out.append(f"{' '.join(map(str, sf['w']))}\t{sf['basis']}\t"
                               f"{' '.join(map(str, t['partition']))}\t{c}")
    else:
        for row in rows:
            m, q = row["text"]
            if args.all:
                word = " ".join(map(str, row["assf"]["w"]))
                out.append(f"{word} | {m}" + (f" | {q}" if args.dual else ""))
            else:
                out.append(m + (f" | {q}" if args.dual and row["assf"]["w"] else ""))
    print("\n".join(out))
    return 0


# pieri ------------------------------------------------------------------------

def format_xi(coeffs):
    if not coeffs:
        return "0"
    terms = []
    for u, c in sorted(coeffs.items(), key=lambda t: (t[0].length, t[0].canonical_word)):
        body = f"xi[{_word_text(u)}]"
        terms.append(body if c == 1 else f"{c} * {body}")
    return " + ".join(terms)


def cmd_pieri(args):
    from .nilcox import homology_product, pieri_range, pieri_rho_element
    from .pieri import rho
    cfg = _config(args)
    g = cfg.group()
    if cfg.family not in ("B", "D"):
        raise UsageError("the homology Pieri rule is stated for types B and D")
    if args.i not in pieri_range(cfg.family, cfg.n):
        raise UsageError(f"index {args.i} out of range")
    variant = 1 if args.rho1 else 2 if args.rho2 else None
    if cfg.family == "D" and args.i == cfg.n - 1 and variant is None:
        raise UsageError("index n-1 in type D needs --rho1 or --rho2")
    if not (cfg.family == "D" and args.i == cfg.n - 1):
        variant = None
    w = _element(g, args.word)
    x = g.from_word(rho(cfg.family, cfg.n, args.i, variant))
    coeffs = homology_product(x, w, left=pieri_rho_element(cfg.family, cfg.n, args.i, variant))
    if cfg.format == "json":
        print(json.dumps({
            "family": cfg.family, "n": cfg.n, "i": args.i, "variant": variant,
            "w": list(w.canonical_word),
            "terms": [{"word": list(u.canonical_word), "numerator": c.numerator,
                       "denominator": c.denominator}
                      for u, c in sorted(coeffs.items(), key=lambda t: t[0].canonical_word)],
        }, indent=2))
    else:
        print(format_xi(coeffs))
    return 0


# factors ------------------------------------------------------------------------

def cmd_factors(args):
    from .pieri import pieri_factors, support_profile
    cfg = _config(args)
    zs = pieri_factors(cfg.family, cfg.n)
    print("length\tword\tcc\tc")
    for ell in range(zs.max_length + 1):
        for w in zs.level(ell):
            prof = support_profile(w)
            print(f"{ell}\t{_word_text(w)}\t{prof.cc}\t{prof.c}")
    return 0


# verify -------------------------------------------------------------------------

def _check(name, passed, **detail):
    return {"name": name, "passed": bool(passed), "detail": detail}


def _suite_membership(cfg, args):
    from .nilcox import epsilon, kschur_solver, pieri_element, pieri_range, verify_in_B
    from .pieri import rho
    g = cfg.group()
    if args.element:
        cert = verify_in_B(_parse_element(g, args.element))
        return [_check("element", bool(cert), certificate=cert.to_json())]
    out = []
    fam, n = cfg.family, cfg.n
    if fam == "B":
        for r in pieri_range(fam, n):
            cert = verify_in_B(pieri_element(fam, n, r))
            out.append(_check(f"pieri_element r={r}", bool(cert), certificate=cert.to_json()))
    if fam == "D":
        cert = verify_in_B(epsilon(n))
        out.append(_check("epsilon", bool(cert), certificate=cert.to_json()))
    for r in pieri_range(fam, n):
        variants = (1, 2) if fam == "D" and r == n - 1 else (None,)
        if fam == "D" and r == n - 1:
            continue  # the average of both solver outputs by construction
        for v in variants:
            w = g.from_word(rho(fam, n, r, v))
            ok = kschur_solver(w).value == pieri_element(fam, n, r)
            out.append(_check(f"solver rho_{r}", ok))
    return out


def _suite_relations(cfg, args):
    from .nilcox import check_relations
    return [_check(f"m={m}", ok) for m, ok in check_relations(cfg.family, cfg.n).items()]


def _suite_coproduct(cfg, args):
    from .nilhecke import check_coproduct_theorems
    return [_check(f"r={r}", ok)
            for r, ok in check_coproduct_theorems(cfg.family, cfg.n).items()]


def _suite_typefree(cfg, args):
    from .pieri import pieri_factors, pieri_factors_typefree
    families = FAMILIES if args.family.lower() == "all" else (cfg.family,)
    top = args.n_max if args.n_max is not None else cfg.n
    out = []
    for fam in families:
        for n in range(MIN_RANK[fam], top + 1):
            ok = pieri_factors(fam, n).as_set() == pieri_factors_typefree(fam, n).as_set()
            out.append(_check(f"{fam}{n}", ok))
    return out


def _degree_bound(cfg, default):
    return cfg.max_degree if cfg.max_degree is not None else default


def _suite_kernel(cfg, args):
    from .assf import assf, assf_via_kernel, grassmannian_level
    from .symfun import kernel_pairs
    out = []
    top = _degree_bound(cfg, 5)
    for d in range(1, top + 1):
        if cfg.family in ("B", "D"):
            out.append(_check(f"kernel_pairs d={d}", kernel_pairs(cfg.family, cfg.n, d)[0]))
        bad = [_word_text(w) for w in grassmannian_level(cfg.family, cfg.n, d)
               if assf(w).value != assf_via_kernel(w).value]
        out.append(_check(f"assf=via_kernel d={d}", not bad, mismatches=bad))
    return out


def _suite_duality(cfg, args):
    from .assf import assf, grassmannian_level, kschur_dual
    from .symfun import hl_pairing
    if cfg.family != "B":
        raise UsageError("the duality suite runs in type B")
    out = []
    for d in range(1, _degree_bound(cfg, 5) + 1):
        level = grassmannian_level(cfg.family, cfg.n, d)
        bad = []
        for w in level:
            ks = kschur_dual(w).q_expansion()
            for v in level:
                if hl_pairing(ks, assf(v).value) != (1 if v == w else 0):
                    bad.append([_word_text(w), _word_text(v)])
        out.append(_check(f"d={d}", not bad, failures=bad))
    return out


def _report_checks(reports):
    return [_check(r.name, r.passed, rows=r.rows) for r in reports]


def _suite_positivity(cfg, args):
    from .assf import positivity_checks
    if cfg.family != "B":
        raise UsageError("the positivity suite runs in type B")
    return _report_checks(positivity_checks(cfg.n, _degree_bound(cfg, 4)))


def _suite_typeD(cfg, args):
    from .assf import typeD_checks
    if cfg.family != "D":
        raise UsageError("the typeD suite runs in type D")
    return _report_checks(typeD_checks(cfg.n, _degree_bound(cfg, 5)))


def cmd_verify(args):
    if args.family.lower() == "all":
        if args.suite != "typefree":
            raise UsageError("--family all is only meaningful for the typefree suite")
        args.family = "A"
    cfg = _config(args)
    runner = globals()[f"_suite_{args.suite}"]
    checks = runner(cfg, args)
    passed = all(c["passed"] for c in checks)
    report = {"suite": args.suite, "family": cfg.family, "n": cfg.n,
              "passed": passed, "checks": checks}
    if cfg.format == "json":
        print(json.dumps(report, indent=2, default=str))
    else:
        for c in checks:
            print(f"{'PASS' if c['passed'] else 'FAIL'}  {args.suite}: {c['name']}")
        print(f"{args.suite}: {'pass' if passed else 'fail'}")
    return 0 if passed else 1


# argument parsing -------------------------------------------------------------------

def _common(p, formats=("table", "json", "tsv")):
    p.add_argument("--family", default="B", help="A, B, C or D")
    p.add_argument("--n", type=int, default=3, help="rank")
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--cache-dir", default=None,
                   help=f"directory for cached Grassmannian elements (or ${CACHE_ENV})")


def build_parser():
    parser = argparse.ArgumentParser(prog="affstanley", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("assf", help="affine Stanley symmetric functions")
    _common(p)
    p.add_argument("--word", help="reduced word, e.g. '3 2 0' or '320'")
    p.add_argument("--all", action="store_true", help="all Grassmannian elements")
    p.add_argument("--dual", action="store_true", help="add the dual k-Schur Q-expansion")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_assf)

    p = sub.add_parser("pieri", help="homology Pieri rule xi_rho_i * xi_w")
    _common(p, ("table", "json"))
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--word", default="")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--rho1", action="store_true")
    group.add_argument("--rho2", action="store_true")
    p.set_defaults(func=cmd_pieri)

    p = sub.add_parser("factors", help="Pieri factors as TSV")
    _common(p, ("tsv",))
    p.set_defaults(func=cmd_factors)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _common(p, ("table", "json"))
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--element", default=None, help="nilCoxeter element for membership")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, WordError, RankError, NotGrassmannianError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
