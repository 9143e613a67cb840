"""
Command Line Interface
Subcommands wrapping the catalog, verification, channel and teleportation
experiments; every report echoes its seed and tolerances
"""

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from jinja2 import Template
from config import *
from errors import NoSolutionError, SchemaError, VerificationError
from channel_model import (
    arrows_channel,
    clock_channel,
    compatible_channel_for,
    cube_channel,
    end_to_end_action,
    rf_channel,
    transmit_record,
)
from fixtures import EXAMPLES, PROTOCOLS, example_named, protocol_named
from group_core import FiniteGroup, build_group, natural_gset
from monomial_check import a5_group, monomial_characters, monomial_check_for, table2_frame
from oeb_catalog import (
    CONTINUOUS_FAMILIES,
    binary_lift,
    catalog_frame,
    discrete_catalog,
    distinct_solutions,
    nonexistence_certificate,
    oeb_ballpoints,
    oeb_from_dict,
    orbit_type_of_tag,
    sample_family,
)
from teleport_sim import (
    dynamical_robustness_run,
    misaligned_conventional,
    no_leakage_experiment,
    prealigned_run,
    rf_teleport,
    sweep,
    sweep_summary,
)
from ueb_engine import commuting_hadamard, hadamard_ueb, lift_oeb, ueb_from_dict, verify_equivariant
from unitary_core import Representation, matrix_to_dict, permutation_rep, random_state


class CommandResult:
    """Payload of one command: JSON body, optional table and markdown template"""

    def __init__(self, payload: Dict, frame: Optional[pd.DataFrame] = None, template: str = "", context=None):
        self.payload = payload
        self.frame = frame
        self.template = template or VERDICT_MARKDOWN_TEMPLATE
        self.context = context or {}


# ===== INPUT HELPERS =====


def load_json(path: str, required: Sequence[str] = ()) -> Dict:
    """
    Raises:
        SchemaError: unreadable file, invalid JSON or missing keys
    """
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read JSON from {path}: {exc}")
    if not isinstance(data, dict):
        raise SchemaError(f"{path} must contain a JSON object")
    missing = [k for k in required if k not in data]
    if missing:
        raise SchemaError(f"{path} is missing keys: {', '.join(missing)}")
    return data


def _parse_with_schema(parser, data, what: str):
    try:
        return parser(data)
    except (KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"malformed {what}: {exc!r}")


def element_by_label(G: FiniteGroup, label: str) -> int:
    for g in range(G.order):
        if G.label(g) == label:
            return g
    raise SchemaError(f"{label} is not an element label of {G.name}")


def _elements(G: FiniteGroup, label: Optional[str]) -> List[int]:
    if label is None or label == "all":
        return list(range(G.order))
    return [element_by_label(G, label)]


def parse_state(text: str, n: int, rng: np.random.Generator) -> np.ndarray:
    """'random' or comma separated amplitudes, complex literals allowed ('1,1j')"""
    if text == "random":
        return random_state(n, rng)
    try:
        psi = np.array([complex(v.strip()) for v in text.split(",")])
    except ValueError as exc:
        raise SchemaError(f"cannot parse state {text}: {exc}")
    if len(psi) != n or np.linalg.norm(psi) == 0:
        raise SchemaError(f"state must have {n} amplitudes, not all zero")
    return psi / np.linalg.norm(psi)


def tolerances(tol: float) -> Dict[str, float]:
    return {
        "TOLERANCE": tol,
        "TARGET_MATCH_TOLERANCE": TARGET_MATCH_TOLERANCE,
        "FLOAT_CHARACTER_TOLERANCE": FLOAT_CHARACTER_TOLERANCE,
        "LEAKAGE_TV_BOUND": LEAKAGE_TV_BOUND,
    }


# ===== COMMANDS =====


def _reference_source(image: str) -> str:
    if image == "Trivial":
        return "trivial"
    if image.startswith("Zn"):
        return "Z5"
    if image.startswith("Dn"):
        return "D5"
    for tag in ("A4", "S4", "A5"):
        if f"({tag})" in image:
            return tag
    return image


def table1_rows(seed: int, samples: int, trials: int) -> Dict:
    """Construct, verify and count every row of the qubit classification"""
    rng = np.random.default_rng(seed)
    rows, refusals = [], []
    catalogs = {}
    print("🔧 Reproducing the qubit OEB classification...")
    for ref in TABLE1_REFERENCE:
        source = _reference_source(ref["image"])
        row = {"image": ref["image"], "orbit_type": ref["orbit_type"], "expected": ref["solutions"]}
        if ref["solutions"] == "No solutions":
            refusal = nonexistence_certificate(source, trials, seed)
            refusals.append(refusal.to_dict())
            row.update(solutions="No solutions", verified=refusal.candidates_found == 0, max_residual=0.0)
        elif source in DISCRETE_GROUP_TAGS:
            if source not in catalogs:
                catalogs[source] = discrete_catalog(source)
            wanted = orbit_type_of_tag(f"x-{ref['orbit_type']}")
            members = [o for o in catalogs[source] if o.orbit_type() == wanted]
            expected = DISCRETE_CATALOG_COUNTS[source][wanted]
            if len(members) != expected:
                raise VerificationError(
                    f"{ref['image']} {ref['orbit_type']}: found {len(members)} solutions, expected {expected}"
                )
            distinct = len(distinct_solutions(members))
            text = f"{len(members)} isolated"
            if distinct != len(members):
                text += f" ({distinct} distinct point sets)"
            row.update(
                solutions=text, verified=True, max_residual=max(o.max_residual for o in members)
            )
        else:
            tag = "trivial-(1,1,1,1)" if source == "trivial" else f"{source}-{ref['orbit_type']}"
            family = sample_family(tag, rng, samples)
            text = "any UEB" if source == "trivial" else "one 2-parameter family"
            row.update(
                solutions=f"{text} ({len(family)} samples verified)",
                verified=True,
                max_residual=max(o.max_residual for o in family),
            )
        rows.append(row)
    notes = []
    for tag, oebs in catalogs.items():
        distinct = len(distinct_solutions(oebs))
        if distinct != len(oebs):
            notes.append(f"{tag}: {len(oebs)} case labels, {distinct} distinct point sets")
    print(f"✅ {len(rows)} rows verified, {len(refusals)} refusals")
    return {"rows": rows, "refusals": refusals, "notes": notes}


def cmd_table1(args) -> CommandResult:
    result = table1_rows(args.seed, args.samples, args.trials)
    frame = pd.DataFrame(result["rows"])
    return CommandResult(result, frame, TABLE1_MARKDOWN_TEMPLATE, result)


def _oebs_for(group: str, args):
    aliases = {"tetrahedral": "A4", "octahedral": "S4", "icosahedral": "A5"}
    tag = aliases.get(group, group)
    if tag in DISCRETE_GROUP_TAGS:
        return discrete_catalog(tag)
    if tag in CONTINUOUS_FAMILIES:
        return sample_family(tag, np.random.default_rng(args.seed), args.samples)
    refusal = nonexistence_certificate(tag, args.trials, args.seed)
    raise NoSolutionError(
        f"no equivariant OEB for {tag}: {refusal.reason} "
        f"(randomized search: {refusal.candidates_found} of {refusal.search_trials} trials)",
        citation=refusal.citation,
    )


def cmd_catalog(args) -> CommandResult:
    oebs = _oebs_for(args.group, args)
    if args.emit_ball_csv:
        frames = [oeb_ballpoints(o) for o in oebs]
        _write_text(args.emit_ball_csv, pd.concat(frames).to_csv(index=False))
    frame = catalog_frame(oebs)
    payload = {"group": args.group, "solutions": [o.to_dict() for o in oebs]}
    details = {"solutions": len(oebs), "distinct point sets": len(distinct_solutions(oebs))}
    return CommandResult(payload, frame, context={"title": f"Catalog {args.group}", "verdict": "verified", "details": details})


def _load_rep(path: str) -> Representation:
    data = load_json(path, ["group", "images"])
    G = _parse_with_schema(FiniteGroup.from_dict, data["group"], "group")
    return _parse_with_schema(lambda d: Representation.from_dict(G, d), data, "representation")


def cmd_verify(args) -> CommandResult:
    details = {}
    if args.oeb:
        data = load_json(args.oeb, ["elements"])
        oeb = _parse_with_schema(oeb_from_dict, data, "OEB")
        details.update(oeb_orbit_type=str(oeb.orbit_type()), oeb_max_residual=oeb.max_residual)
    if args.example:
        G, rho, eueb = example_named(args.example)
        details.update(example=args.example, orbit_type=str(eueb.orbit_type()))
    if args.ueb:
        data = load_json(args.ueb, ["elements"])
        ueb = _parse_with_schema(ueb_from_dict, data, "UEB")
        details.update(ueb_elements=len(ueb))
        if args.rep:
            eueb = verify_equivariant(ueb, _load_rep(args.rep), args.tol)
            details.update(
                orbit_type=str(eueb.orbit_type()),
                phase_equation_residual=eueb.phase_equation_residual(),
            )
    if not details:
        raise SchemaError("verify needs --ueb, --oeb or --example")
    payload = {"verdict": "verified", "details": details}
    return CommandResult(payload, context={"title": "Verification", "verdict": "verified", "details": details})


def cmd_lift(args) -> CommandResult:
    if args.family:
        group_tag = args.family.split("-")[0]
        oeb = sample_family(args.family, np.random.default_rng(args.seed), 1)[0]
    else:
        group_tag = args.group
        catalog = discrete_catalog(group_tag)
        if not 0 <= args.index < len(catalog):
            raise SchemaError(f"{group_tag} has {len(catalog)} catalog entries")
        oeb = catalog[args.index]
    G, rho = binary_lift(group_tag)
    eueb = lift_oeb(oeb, rho)
    details = {"oeb": oeb.family_tag, "group": G.name, "order": G.order, "orbit_type": str(eueb.orbit_type())}
    return CommandResult(
        {"details": details, "ueb": eueb.to_dict()},
        context={"title": "Lifted OEB", "verdict": "verified", "details": details},
    )


def cmd_hadamard(args) -> CommandResult:
    group = args.group or f"S{args.n}"
    H = commuting_hadamard(args.n)
    G = build_group(group)
    rho = permutation_rep(natural_gset(G))
    eueb = hadamard_ueb(rho, H, args.tol)
    details = {"n": args.n, "group": G.name, "order": G.order, "orbit_type": str(eueb.orbit_type())}
    return CommandResult(
        {"details": details, "hadamard": matrix_to_dict(H), "ueb": eueb.to_dict()},
        context={"title": "Hadamard UEB", "verdict": "verified", "details": details},
    )


def _channel_named(args):
    if args.kind == "rf":
        return rf_channel(build_group(args.group))
    if args.kind == "clock":
        return clock_channel(args.clock)
    if args.kind == "cube":
        return cube_channel()[0]
    if args.kind == "arrows":
        G, _, _ = example_named("z3")
        return arrows_channel(G, G.index_of("a"))
    G, rho, eueb = example_named(args.example)
    return compatible_channel_for(eueb.tau, seed=args.seed)


def cmd_channel(args) -> CommandResult:
    ch = _channel_named(args)
    messages = range(ch.size) if args.message is None else [args.message]
    records = [
        transmit_record(ch, m, g, args.seed)
        for g in _elements(ch.group, args.g)
        for m in messages
    ]
    action = end_to_end_action(ch, args.seed)
    laws_hold = bool(np.array_equal(action, ch.messages.action))
    if not laws_hold:
        raise VerificationError(f"{ch.name}: end-to-end transmission differs from sigma")
    details = {"channel": ch.name, "kind": ch.kind, "messages": ch.size, "transmission law": "holds"}
    return CommandResult(
        {"details": details, "transcripts": records},
        pd.DataFrame(records),
        context={"title": "Channel transcripts", "verdict": "verified", "details": details},
    )


def _protocol_from(args):
    name = args.protocol
    if args.spec:
        data = load_json(args.spec, ["protocol"])
        name = data["protocol"]
        args.g = data.get("g", args.g)
        args.psi = data.get("psi", args.psi)
        args.states = data.get("states", args.states)
    return protocol_named(name)


def cmd_teleport(args) -> CommandResult:
    spec = _protocol_from(args)
    G = spec.rho.group
    rng = np.random.default_rng(args.seed)
    if args.states:
        frame = sweep(spec, args.states, args.seed)
        summary = sweep_summary(frame)
        worst = float(frame["fidelity"].min())
        if worst < 1 - args.tol:
            raise VerificationError(f"sweep minimum fidelity {worst:.12f} below 1 - {args.tol}")
        context = {"runs": len(frame), "rows": summary.to_dict("records")}
        payload = {"protocol": args.protocol, "min_fidelity": worst, "summary": summary.to_dict("records")}
        return CommandResult(payload, summary, SWEEP_MARKDOWN_TEMPLATE, context)

    psi = parse_state(args.psi, spec.n, rng)
    transcripts = [rf_teleport(spec, psi, g, seed=args.seed).to_dict() for g in _elements(G, args.g)]
    details = {"runs": len(transcripts), "min fidelity": min(t["fidelity"] for t in transcripts)}
    if args.baseline:
        baseline = misaligned_conventional(psi, spec.ueb, spec.X, spec.rho_bob)
        details.update(conventional_fidelity=baseline["fidelity"], conventional_purity=baseline["purity"])
    return CommandResult(
        {"details": details, "transcripts": transcripts},
        pd.DataFrame(transcripts).drop(columns=["input_state", "output_state"]),
        context={"title": "Teleportation", "verdict": "verified", "details": details},
    )


def cmd_dr_test(args) -> CommandResult:
    spec = _protocol_from(args)
    G = spec.rho.group
    rng = np.random.default_rng(args.seed)
    rows = []
    print(f"🔧 Drift test over {G.order * G.order} (send, receive) pairs...")
    for _ in range(args.states or 5):
        psi = random_state(spec.n, rng)
        for gs in range(G.order):
            for gr in range(G.order):
                for i in range(len(spec.ueb)):
                    robust = dynamical_robustness_run(spec, psi, gs, gr, forced_outcome=i, seed=args.seed)
                    control = prealigned_run(spec, psi, gs, gr, forced_outcome=i, seed=args.seed)
                    rows.append(
                        {
                            "g_send": G.label(gs),
                            "g_receive": G.label(gr),
                            "outcome": i,
                            "fidelity": robust.fidelity,
                            "prealigned_fidelity": control.fidelity,
                        }
                    )
    frame = pd.DataFrame(rows)
    worst = float(frame["fidelity"].min())
    if worst < 1 - args.tol:
        raise VerificationError(f"drift test minimum fidelity {worst:.12f} below 1 - {args.tol}")
    details = {
        "pairs": G.order * G.order,
        "min fidelity": worst,
        "prealigned min fidelity": float(frame["prealigned_fidelity"].min()),
    }
    return CommandResult(
        {"details": details}, frame, context={"title": "Dynamical robustness", "verdict": "robust", "details": details}
    )


def cmd_leakage(args) -> CommandResult:
    spec = _protocol_from(args)
    result = no_leakage_experiment(spec, args.samples, args.seed, args.forced_outcome)
    max_tv = result["max_tv"]
    verdict = "no leakage" if max_tv < LEAKAGE_TV_BOUND else "leaks"
    if args.forced_outcome is None and verdict == "leaks":
        raise VerificationError(f"wire distributions differ across misalignments (max TV {max_tv:.4f})")
    details = {"samples": args.samples, "forced outcome": args.forced_outcome, "max TV": max_tv}
    frame = result["distributions"].reset_index().rename(columns={"index": "wire"})
    return CommandResult(
        {"verdict": verdict, "details": details, "distributions": frame.to_dict("records")},
        frame,
        context={"title": "Leakage", "verdict": verdict, "details": details},
    )


def cmd_monomial(args) -> CommandResult:
    verdict = monomial_check_for(args.group, args.rep)
    frame = None
    if args.group == "A5":
        G, classes = a5_group()
        frame = table2_frame(monomial_characters(G, 6, classes))
    details = dict(verdict.certificate or verdict.witness)
    label = "feasible" if verdict.feasible else "infeasible"
    return CommandResult(
        verdict.to_dict(), frame, context={"title": f"Monomial check {args.group} {args.rep}", "verdict": label, "details": details}
    )


COMMANDS = {
    "table1": cmd_table1,
    "catalog": cmd_catalog,
    "verify": cmd_verify,
    "lift": cmd_lift,
    "hadamard": cmd_hadamard,
    "channel": cmd_channel,
    "teleport": cmd_teleport,
    "dr-test": cmd_dr_test,
    "leakage": cmd_leakage,
    "monomial-check": cmd_monomial,
}


# ===== OUTPUT =====


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def _write_text(path: str, text: str):
    """Write through a temporary file so readers never see a partial report"""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    tmp = target.with_suffix(target.suffix + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, target)
    print(f"💾 Saved {target}")


def render(result: CommandResult, fmt: str, seed: int, tol: float) -> str:
    if fmt == "json":
        body = {"seed": seed, "tolerances": tolerances(tol), **result.payload}
        return json.dumps(_jsonable(body), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        if result.frame is None:
            raise SchemaError("this command has no tabular output; use --format json or md")
        return result.frame.to_csv(index=False)
    context = {"seed": seed, "tolerance": tol, **result.context}
    return Template(result.template).render(**context)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equitel", description="Equivariant error bases and frame-independent teleportation"
    )
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--tol", type=float, default=TOLERANCE)
    parser.add_argument("--emit", help="Write the report to this path instead of stdout")
    parser.add_argument("--format", choices=["json", "md", "csv"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="Reproduce the qubit OEB classification")
    p.add_argument("--samples", type=int, default=CONTINUOUS_FAMILY_SAMPLES)
    p.add_argument("--trials", type=int, default=1000, help="Randomized nonexistence search trials")

    p = sub.add_parser("catalog", help="Equivariant OEBs of one group or family")
    p.add_argument("--group", required=True)
    p.add_argument("--samples", type=int, default=CONTINUOUS_FAMILY_SAMPLES)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--emit-ball-csv", help="Write the four ball points of every solution")

    p = sub.add_parser("verify", help="Verify a UEB, an equivariant UEB or an OEB file")
    p.add_argument("--ueb")
    p.add_argument("--rep")
    p.add_argument("--oeb")
    p.add_argument("--example", choices=sorted(EXAMPLES))

    p = sub.add_parser("lift", help="Lift a catalog OEB along the binary group")
    p.add_argument("--group", default="A4")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--family", help="Continuous family tag instead of a catalog entry")

    p = sub.add_parser("hadamard", help="Hadamard UEB for a permutation representation")
    p.add_argument("n", type=int)
    p.add_argument("group", nargs="?")

    p = sub.add_parser("channel", help="Transmission transcripts of an unspeakable channel")
    p.add_argument("--kind", choices=["rf", "arrows", "cube", "clock", "compatible"], default="arrows")
    p.add_argument("--group", default="Z3")
    p.add_argument("--clock", type=int, default=12)
    p.add_argument("--example", choices=sorted(EXAMPLES), default="z3")
    p.add_argument("--message", type=int)
    p.add_argument("--g", default="all")

    for name, helptext in (
        ("teleport", "Run the frame-independent protocol"),
        ("dr-test", "Frame drift during transmission, with a prealigned control"),
        ("leakage", "Wire distributions across misalignments"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--protocol", choices=sorted(PROTOCOLS), default="z3")
        p.add_argument("--spec", help="JSON file with protocol, g, psi and states")
        p.add_argument("--g", default="all")
        p.add_argument("--psi", default="random")
        p.add_argument("--states", type=int, default=0)
        if name == "teleport":
            p.add_argument("--baseline", action="store_true", help="Also run the misaligned conventional protocol")
        if name == "leakage":
            p.add_argument("--samples", type=int, default=LEAKAGE_SAMPLES)
            p.add_argument("--forced-outcome", type=int)

    p = sub.add_parser("monomial-check", help="Monomial decomposition of |chi|^2")
    p.add_argument("--group", default="A5")
    p.add_argument("--rep", default="3d-irrep")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
        text = render(result, args.format, args.seed, args.tol)
    except NoSolutionError as exc:
        print(f"⚠️ No solution: {exc}", file=sys.stderr)
        if exc.citation:
            print(f"   citation: {exc.citation}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except SchemaError as exc:
        print(f"❌ Invalid input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA_ERROR
    except VerificationError as exc:
        print(f"❌ Verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILURE
    except ValueError as exc:
        print(f"❌ Invalid input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA_ERROR

    if args.emit:
        _write_text(args.emit, text)
    else:
        print(text, end="")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
