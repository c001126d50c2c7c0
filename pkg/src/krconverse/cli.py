"""Command-line front end.

Nodes on the command line and in JSON are numbered from 1; the library
numbers them from 0. Exit codes: 0 success, 1 a mathematical condition
fails, 2 bad usage or precondition, 3 internal consistency failure.
"""

import argparse
import csv
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import Certificate, check_certificate, check_rhs_conditions, verify_theorem, witness
from .errors import ConditionFailure, ConsistencyError, PreconditionError
from .lattices import LatticeClass, check_levi, project, quotient_M
from .minuscule import GameWord
from .orbits import in_Pmu
from .rootdata import build, from_dynkin

EXIT_OK, EXIT_CONDITION, EXIT_USAGE, EXIT_CONSISTENCY = 0, 1, 2, 3


@dataclass
class RunConfig:
    family: str
    rank: int
    levi: tuple = ()  # 0-based
    mu: tuple = ()  # Dynkin labels
    bound: int = 2
    sigma: tuple = None  # 0-based permutation
    out: str = None
    mode: str = "verify"
    extra: dict = field(default_factory=dict)

    def datum(self):
        return build(self.family, self.rank)

    def mu_root(self, R):
        if len(self.mu) != R.rank:
            raise PreconditionError(f"--mu needs {R.rank} labels, got {len(self.mu)}")
        if any(v < 0 for v in self.mu):
            raise PreconditionError("--mu labels must be nonnegative")
        return from_dynkin(R, self.mu)


# serialization


def rat(v):
    v = Fraction(v)
    return {"num": str(v.numerator), "den": str(v.denominator)}


def unrat(d):
    return Fraction(int(d["num"]), int(d["den"]))


def vec(x):
    return [rat(v) for v in x]


def unvec(x):
    return tuple(unrat(v) for v in x)


def nodes_out(J):
    return [j + 1 for j in J]


def nodes_in(J):
    return tuple(j - 1 for j in J)


def cls_out(c):
    return {"ambient": c.ambient, "coords": list(c.coords)}


def cls_in(d):
    return LatticeClass(d["ambient"], tuple(int(v) for v in d["coords"]))


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def certificate_json(R, cert):
    g = cert.game
    game = None if g is None else {"word": nodes_out(g.word), "start": vec(g.start), "end": vec(g.end)}
    # word from nu to the dominant end: transport first, then the game
    full = (nodes_out(g.word) if g is not None else []) + nodes_out(reversed(cert.transport))
    return {
        "kind": "direct",
        "type": R.family,
        "rank": R.rank,
        "mu": vec(cert.mu),
        "J": nodes_out(cert.J),
        "y": cls_out(cert.y),
        "transport": nodes_out(cert.transport),
        "J_prime": nodes_out(cert.J_prime),
        "y_prime": cls_out(cert.y_prime),
        "z": vec(cert.z),
        "k": vec(cert.k),
        "z_prime": vec(cert.z_prime),
        "game": game,
        "word": full,
        "nu": vec(cert.nu),
        "checks": dict(cert.checks),
        "same_orbit": cert.same_orbit,
    }


def certificate_from_json(d):
    g = d["game"]
    game = None if g is None else GameWord(nodes_in(g["word"]), unvec(g["start"]), unvec(g["end"]))
    return Certificate(
        mu=unvec(d["mu"]), J=nodes_in(d["J"]), y=cls_in(d["y"]), transport=nodes_in(d["transport"]),
        J_prime=nodes_in(d["J_prime"]), y_prime=cls_in(d["y_prime"]), z=unvec(d["z"]), k=unvec(d["k"]),
        z_prime=unvec(d["z_prime"]), game=game, nu=unvec(d["nu"]), checks=dict(d["checks"]),
        same_orbit=d["same_orbit"],
    )


def folded_json(R, cert):
    return {
        "kind": "folded",
        "type": R.family,
        "rank": R.rank,
        "mu": vec(cert.mu),
        "J": nodes_out(cert.J),
        "y": cls_out(cert.y),
        "nu": vec(from_dynkin(R, _from_H(R, cert.nu))),
        "checks": dict(cert.checks),
    }


def _from_H(R, d):
    from .folding import folding_for

    _, p = folding_for(R.family, R.rank)
    return tuple(d[p[i]] for i in range(R.rank))


def report_json(rep):
    key = lambda c: c.coords  # noqa: E731
    return {
        "type": rep.type,
        "J": nodes_out(rep.J),
        "mu": vec(rep.mu),
        "lhs": [list(c.coords) for c in sorted(rep.lhs, key=key)],
        "rhs": [list(c.coords) for c in sorted(rep.rhs, key=key)],
        "equal": rep.equal,
        "certificates": len(rep.certificates),
        "certificates_ok": sum(1 for c in rep.certificates if c.ok),
        "counterexamples": [[kind, list(c.coords)] for kind, c in rep.counterexamples],
    }


def _emit(cfg, text):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands


def cmd_verify(cfg):
    R = cfg.datum()
    mu = cfg.mu_root(R)
    if cfg.sigma is not None:
        from .quasisplit import build_coinvariants, verify_conjecture2

        D = build_coinvariants(R, cfg.sigma)
        rep = verify_conjecture2(D, cfg.levi, mu, bound=cfg.bound)
        steps = [s["kind"] for w in rep.witnesses for s in w.steps]
        out = {
            "type": D.name,
            "relative_type": D.relative_type,
            "J": nodes_out(rep.J),
            "mu": vec(rep.mu),
            "lhs": [list(c.coords) for c in sorted(rep.lhs, key=lambda c: c.coords)],
            "rhs": [list(c.coords) for c in sorted(rep.rhs, key=lambda c: c.coords)],
            "equal": rep.equal,
            "witnesses": len(rep.witnesses),
            "direct_steps": steps.count("direct"),
            "fiber_steps": steps.count("fiber"),
            "counterexamples": [[kind, list(c.coords)] for kind, c in rep.counterexamples],
        }
        _emit(cfg, dumps(out))
        return EXIT_OK if rep.equal and not rep.counterexamples else EXIT_CONSISTENCY
    rep = verify_theorem(R, cfg.levi, mu)
    _emit(cfg, dumps(report_json(rep)))
    return EXIT_OK if rep.equal and not rep.counterexamples else EXIT_CONSISTENCY


def _parse_class(R, J, coords):
    q = quotient_M(R, J)
    if len(coords) != len(q.moduli):
        raise PreconditionError(f"{q.tag} classes have {len(q.moduli)} coordinates, got {len(coords)}")
    return LatticeClass(q.tag, q.normalize(coords))


def cmd_witness(cfg):
    R = cfg.datum()
    mu = cfg.mu_root(R)
    J = check_levi(R, cfg.levi)
    y = _parse_class(R, J, cfg.extra["y"])
    check_rhs_conditions(R, J, mu, y)
    if R.is_simply_laced:
        cert = witness(R, J, mu, y)
        _emit(cfg, dumps(certificate_json(R, cert)))
    else:
        from .folding import folded_certificate

        cert = folded_certificate(R, J, mu, y)
        if not cert.ok:
            raise ConsistencyError("folded certificate failed", check="folded", witness=cert.checks)
        _emit(cfg, dumps(folded_json(R, cert)))
    return EXIT_OK


def check_certificate_json(d):
    """Standalone verdicts for a certificate read from JSON."""
    R = build(d["type"], int(d["rank"]))
    mu, J, y, nu = unvec(d["mu"]), nodes_in(d["J"]), cls_in(d["y"]), unvec(d["nu"])
    out = {"nu_in_Pmu": in_Pmu(R, mu, nu), "nu_class": project(R, nu, J) == y}
    if d["kind"] == "direct":
        out.update(check_certificate(R, certificate_from_json(d)))
    return out


def cmd_check_cert(cfg):
    with open(cfg.extra["path"]) as fh:
        d = json.load(fh)
    verdicts = check_certificate_json(d)
    _emit(cfg, dumps({"verdicts": verdicts, "ok": all(verdicts.values())}))
    return EXIT_OK if all(verdicts.values()) else EXIT_CONDITION


def cmd_adlv(cfg):
    from .quasisplit import ADLVQuery, adlv_nonempty, build_coinvariants

    R = cfg.datum()
    mu = cfg.mu_root(R)
    sigma = cfg.sigma if cfg.sigma is not None else tuple(range(R.rank))
    D = build_coinvariants(R, sigma)
    q = D.YM(cfg.levi)
    coords = cfg.extra["nu"]
    if len(coords) != len(q.moduli):
        raise PreconditionError(f"{q.tag} classes have {len(q.moduli)} coordinates, got {len(coords)}")
    nu = LatticeClass(q.tag, q.normalize(coords))
    verdict = adlv_nonempty(ADLVQuery(D, mu, cfg.levi, nu))
    _emit(cfg, ("nonempty" if verdict else "empty") + " (order and image tests agree)\n")
    return EXIT_OK


def _sweep_task(args):
    family, rank, J, mu = args
    R = build(family, rank)
    rep = verify_theorem(R, J, from_dynkin(R, mu))
    ok = rep.equal and not rep.counterexamples
    return (family, rank, " ".join(map(str, nodes_out(J))), " ".join(map(str, mu)), len(rep.lhs), rep.equal, ok)


def sweep_tasks(family, rank, bound):
    for mu in itertools.product(range(bound + 1), repeat=rank):
        for r in range(1, rank):
            for J in itertools.combinations(range(rank), r):
                yield family, rank, J, mu


def cmd_sweep(cfg):
    types = cfg.extra["types"]
    tasks = []
    for fam, rank in types:
        build(fam, rank)
        tasks.extend(sweep_tasks(fam, rank, cfg.bound))
    workers = int(os.environ.get("KR_WORKERS", "1"))
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            rows = list(ex.map(_sweep_task, tasks, chunksize=4))
    else:
        rows = [_sweep_task(t) for t in tasks]
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    fh = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["type", "rank", "J", "mu", "lhs_size", "equal", "certified"])
    for r in rows:
        w.writerow([r[0], r[1], r[2], r[3], r[4], str(r[5]).lower(), str(r[6]).lower()])
    if cfg.out:
        fh.close()
    return EXIT_OK if all(r[6] for r in rows) else EXIT_CONSISTENCY


def cmd_lemmas(cfg):
    from .folding import build_folding, verify_folding_lemmas

    R = cfg.datum()
    F = build_folding(R, cfg.extra["theta"])
    rep = verify_folding_lemmas(F, bound=cfg.bound)
    out = {"source": R.name, "folded_type": F.folded_type, "passed": rep.passed, "ok": rep.ok}
    _emit(cfg, dumps(out))
    return EXIT_OK if rep.ok else EXIT_CONSISTENCY


# argument parsing


def _ints(text):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _types(text):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if len(tok) < 2 or not tok[1:].isdigit():
            raise argparse.ArgumentTypeError(f"bad type {tok!r}; expected e.g. A3")
        out.append((tok[0].upper(), int(tok[1:])))
    return out


def _perm(values):
    return None if values is None else tuple(v - 1 for v in values)


def make_parser():
    p = argparse.ArgumentParser(prog="krconverse", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="mode", required=True)

    def datum_args(sp, levi=True, mu=True):
        sp.add_argument("--type", required=True, dest="family")
        sp.add_argument("--rank", required=True, type=int)
        if levi:
            sp.add_argument("--levi", required=True, type=_ints, help="nodes of J, 1-based, comma-separated")
        if mu:
            sp.add_argument("--mu", required=True, type=_ints, help="Dynkin labels of mu")
        sp.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("verify", help="compare both sides of the main equality, with certificates")
    datum_args(sp)
    sp.add_argument("--sigma", type=_ints, help="diagram automorphism (1-based images); quasi-split criterion")
    sp.add_argument("--bound", type=int, default=2)

    sp = sub.add_parser("witness", help="certificate for one class y")
    datum_args(sp)
    sp.add_argument("--y", required=True, type=_ints, help="class coordinates in X_M")

    sp = sub.add_parser("check-cert", help="re-validate a certificate file")
    sp.add_argument("path")
    sp.add_argument("--out")

    sp = sub.add_parser("adlv", help="root-theoretic non-emptiness criterion")
    datum_args(sp)
    sp.add_argument("--nu", required=True, type=_ints, help="class coordinates of nu_M in Y_M")
    sp.add_argument("--sigma", type=_ints)

    sp = sub.add_parser("sweep", help="verify every (J, mu) under a label bound; CSV output")
    sp.add_argument("--types", required=True, type=_types, help="e.g. A2,B2,G2")
    sp.add_argument("--bound", type=int, default=2)
    sp.add_argument("--out")

    sp = sub.add_parser("lemmas", help="run the folding lemma checks")
    datum_args(sp, levi=False, mu=False)
    sp.add_argument("--theta", required=True, type=_ints, help="automorphism, 1-based images")
    sp.add_argument("--bound", type=int, default=2)
    return p


def config_from_args(ns):
    extra = {}
    if ns.mode == "witness":
        extra["y"] = ns.y
    elif ns.mode == "check-cert":
        extra["path"] = ns.path
    elif ns.mode == "adlv":
        extra["nu"] = ns.nu
    elif ns.mode == "sweep":
        extra["types"] = ns.types
    elif ns.mode == "lemmas":
        extra["theta"] = _perm(ns.theta)
    return RunConfig(
        family=getattr(ns, "family", "A"),
        rank=getattr(ns, "rank", 0),
        levi=nodes_in(getattr(ns, "levi", ()) or ()),
        mu=getattr(ns, "mu", ()) or (),
        bound=getattr(ns, "bound", 2),
        sigma=_perm(getattr(ns, "sigma", None)),
        out=ns.out,
        mode=ns.mode,
        extra=extra,
    )


COMMANDS = {
    "verify": cmd_verify,
    "witness": cmd_witness,
    "check-cert": cmd_check_cert,
    "adlv": cmd_adlv,
    "sweep": cmd_sweep,
    "lemmas": cmd_lemmas,
}


def main(argv=None):
    ns = make_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        return COMMANDS[cfg.mode](cfg)
    except ConditionFailure as e:
        print(f"condition ({e.condition}) fails: {e}", file=sys.stderr)
        return EXIT_CONDITION
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as e:
        print(f"consistency failure [{e.check}]: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
