"""JSON forms of results and certificates, and reading models from files.

Rationals are written as "p/q" strings so nothing is ever rounded.  Every
document is dumped with sorted keys, which makes outputs byte-stable.
"""

import json
import sys

from .model import ModelError, RealizedModel, UcaDescriptor, parse_model
from .rational import format_rational
from .recognition import Circuit, Independent, Negative, Positive
from .synthetic import SynEdge


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def edge_json(e):
    return {"from": e.frm, "to": e.to, "kind": e.kind, "internal": e.internal, "jump": e.jump}


def edge_from_json(data):
    return SynEdge(int(data["from"]), int(data["to"]), data["kind"], bool(data["internal"]),
                   int(data["jump"]))


def cycle_json(cycle):
    return [edge_json(e) for e in cycle]


def certificate_json(cert):
    if isinstance(cert, Positive):
        return {"type": "positive", "c": format_rational(cert.c), "l": format_rational(cert.l),
                "model": cert.model.to_json()}
    ind, cir = cert.independent, cert.circuit
    return {"type": "negative",
            "independent": {"arcs": list(ind.arcs), "a": ind.a, "b": ind.b},
            "circuit": {"arcs": list(cir.arcs), "x": cir.x, "y": cir.y},
            "nose_cycle": cycle_json(cert.nose_cycle),
            "hollow_cycle": cycle_json(cert.hollow_cycle),
            "witness_cycle": cycle_json(cert.witness_cycle)}


def certificate_from_json(data):
    kind = data.get("type")
    if kind == "positive":
        model = RealizedModel.from_json(data["model"])
        return Positive(model, model.c, model.l)
    if kind == "negative":
        ind = data["independent"]
        cir = data["circuit"]
        cycles = [tuple(edge_from_json(e) for e in data.get(name, ()))
                  for name in ("nose_cycle", "hollow_cycle", "witness_cycle")]
        return Negative(*cycles,
                        Independent(tuple(ind["arcs"]), int(ind["a"]), int(ind["b"])),
                        Circuit(tuple(cir["arcs"]), int(cir["x"]), int(cir["y"])))
    raise ModelError("token", f"unknown certificate type {kind!r}")


def solver_json(res):
    if res.feasible:
        labels = []
        for t in res.labels:
            if t is None:
                labels.append(None)
            else:
                labels.append({"b": format_rational(t.b), "c": t.coef_c, "l": t.coef_l,
                               "d": t.coef_d, "ds": t.coef_ds})
        return {"feasible": True, "d": format_rational(res.d_used),
                "descriptor": res.descriptor.to_json(), "model": res.model.to_json(),
                "labels": labels}
    return {"feasible": False, "cycle": cycle_json(res.cycle),
            "weight": format_rational(res.weight)}


def load_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def read_model(path, allow_trivial=False):
    """A combinatorial model from the text format or a realized-model JSON."""
    text = load_text(path)
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelError("token", f"bad JSON: {exc}") from exc
        if "model" in data and "begins" not in data:
            data = data["model"]
        return RealizedModel.from_json(data).to_model(allow_trivial=allow_trivial)
    return parse_model(text, allow_trivial=allow_trivial)


def read_realized(path):
    data = json.loads(load_text(path))
    if "model" in data and "begins" not in data:
        data = data["model"]
    return RealizedModel.from_json(data)


def read_descriptor(path):
    try:
        return UcaDescriptor.from_json(json.loads(load_text(path)))
    except (KeyError, json.JSONDecodeError) as exc:
        raise ModelError("token", f"bad descriptor file: {exc}") from exc
