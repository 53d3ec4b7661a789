"""Command-line interface.

Exit codes: 0 success, 1 a representation failed verification, 2 input
error, 3 size guard, 4 internal inconsistency in the relations.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources

from . import report
from .classical import automorphisms, format_cycles, parse_cycles, permutation_matrix
from .classify import verify_numeric_rep
from .io import ParseError, load_model, parse_rep
from .model import GuardError, ModelError
from .oracle import ConfigurationError, check_preservation, energy_spectrum, partition_function
from .relations import Inconsistent, saturate

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_GUARD, EXIT_INCONSISTENT = 0, 1, 2, 3, 4

COMMANDS = ("analyze", "relations", "classical", "energy", "partition", "check-perm", "verify-rep")


def resolve_model_path(path: str) -> str:
    """Use ``path`` if it exists, else fall back to a bundled model of the same base name."""
    if os.path.exists(path):
        return path
    name = os.path.basename(path)
    if not name.endswith(".json"):
        name += ".json"
    bundled = resources.files("qpotts") / "models" / name
    if bundled.is_file():
        return str(bundled)
    return path


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qpotts", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("model", help="model file (JSON) or the name of a bundled model")
        sp.add_argument("--format", choices=("text", "machine"), default="text")
        return sp

    sp = add("analyze", "full classification report")
    sp.add_argument("--trace", action="store_true", help="include the rule-application trace")
    sp.add_argument("--timestamp", action="store_true")
    sp = add("relations", "saturated presentation of Q")
    sp.add_argument("--trace", action="store_true")
    add("classical", "classical symmetry group")
    add("energy", "exact energy spectrum")
    sp = add("partition", "partition function Z(beta)")
    sp.add_argument("--beta", type=float, required=True)
    sp = add("check-perm", "does a permutation preserve the hamiltonian?")
    sp.add_argument("--perm", required=True, help="cycle notation over vertex labels")
    sp = add("verify-rep", "verify a matrix representation of Q")
    sp.add_argument("rep", help="representation document or analyze report")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--no-relations", action="store_true", help="skip the presentation family")
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = _parser().parse_args(argv)
    try:
        model = load_model(resolve_model_path(args.model))
        return _dispatch(args, model, out)
    except (ParseError, ModelError, ConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except Inconsistent as exc:
        print(f"inconsistent relations: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


def _dispatch(args, model, out) -> int:
    machine = args.format == "machine"
    labels = model.labels
    cmd = args.command
    if cmd == "analyze":
        doc = report.analyze(model, with_trace=args.trace, timestamp=args.timestamp)
        if machine:
            out.write(report.dumps(doc))
        else:
            _, text = report.relations(model)
            out.write(report.analyze_text(doc, text))
        return EXIT_OK
    if cmd == "relations":
        doc, text = report.relations(model, with_trace=args.trace)
        if machine:
            out.write(report.dumps(doc))
        else:
            out.write(text + "\n")
            for t in doc.get("trace", []):
                out.write(f"{t['rule']}: {t['message']}\n")
        return EXIT_OK
    if cmd == "classical":
        aut = automorphisms(model)
        doc = report._header("classical", model)
        doc["classical_group"] = report.group_section(aut, labels)
        if machine:
            out.write(report.dumps(doc))
        else:
            g = doc["classical_group"]
            out.write(f"order {g['order']} ({g['name']})\n")
            for gen in g["generators"]:
                out.write(gen + "\n")
        return EXIT_OK
    if cmd == "energy":
        spec = energy_spectrum(model)
        doc = report._header("energy", model)
        doc["convention"] = report.HAMILTONIAN_CONVENTION
        doc["spectrum"] = report.spectrum_section(spec)
        if machine:
            out.write(report.dumps(doc))
        else:
            for lv in doc["spectrum"]:
                out.write(f"E = {lv['energy']}  x{lv['multiplicity']}\n")
        return EXIT_OK
    if cmd == "partition":
        spec = energy_spectrum(model)
        z = partition_function(model, args.beta, spec)
        exact = str(spec.total()) if args.beta == 0 else None
        doc = report._header("partition", model)
        doc["convention"] = report.HAMILTONIAN_CONVENTION
        doc["beta"] = args.beta
        doc["Z"] = {"value": z if isinstance(z, float) else [z.real, z.imag], "exact": exact}
        if machine:
            out.write(report.dumps(doc))
        else:
            out.write(f"Z({args.beta:g}) = {z!r}\n")
        return EXIT_OK
    if cmd == "check-perm":
        perm = parse_cycles(args.perm, labels)
        ok = check_preservation(model, perm)
        P = permutation_matrix(perm)
        commutes = all(
            model.J[perm[i]][perm[j]] == model.J[i][j] for i in range(model.n) for j in range(model.n)
        )
        doc = report._header("check-perm", model)
        doc["perm"] = format_cycles(perm, labels)
        doc["permutation_matrix"] = P.tolist()
        doc["preserves_hamiltonian"] = ok
        doc["commutes_with_couplings"] = commutes
        if machine:
            out.write(report.dumps(doc))
        else:
            out.write(f"{'true' if ok else 'false'}\n")
        return EXIT_OK
    if cmd == "verify-rep":
        try:
            with open(args.rep, encoding="utf-8") as fh:
                rep = parse_rep(fh.read(), model.n)
        except OSError as exc:
            raise ParseError(f"{args.rep}: {exc.strerror}") from None
        rs = None if args.no_relations else saturate(model)
        ver = verify_numeric_rep(model, rep, args.tol, rs)
        doc = report._header("verify-rep", model)
        doc["verification"] = report.verification_section(ver, labels)
        if machine:
            out.write(report.dumps(doc))
        else:
            out.write(f"passed: {ver.passed}\n")
            for k, v in ver.residuals.items():
                out.write(f"  {k}: {v:.3g}\n")
            out.write(f"  max commutator: {ver.commutator:.6g}\n")
        return EXIT_OK if ver.passed else EXIT_FAILED
    raise AssertionError(cmd)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
