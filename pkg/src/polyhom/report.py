"""Structured run reports: one document per analysis, JSON and text forms.

The JSON form is deterministic for fixed input and flags apart from the
wall_time fields, which carry measured seconds.
"""

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


def verdict_to_dict(verdict):
    d = {"value": verdict.value, "bounds": dict(sorted(verdict.bounds.items()))}
    if verdict.certificate is not None:
        d["certificate"] = verdict.certificate
    if verdict.witness is not None:
        d["witness"] = {
            "kind": verdict.witness.kind,
            "data": _jsonable(verdict.witness.data),
        }
    return d


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in obj]
        if isinstance(obj, (set, frozenset)):
            items.sort(key=repr)
        return items
    return obj


def render_witness(witness, indent="    "):
    lines = [f"{indent}witness: {witness.kind}"]
    for key in sorted(witness.data):
        val = witness.data[key]
        if isinstance(val, dict):
            pairs = ", ".join(f"{k} -> {v}" for k, v in sorted(val.items()))
            lines.append(f"{indent}  {key}: {{{pairs}}}")
        else:
            lines.append(f"{indent}  {key}: {val}")
    return lines


@dataclass
class Report:
    algebra: str
    size: int
    variety: str
    verdicts: dict = field(default_factory=dict)
    wall_times: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add(self, prop, verdict, wall_time):
        self.verdicts[prop] = verdict
        self.wall_times[prop] = wall_time

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "algebra": self.algebra,
            "size": self.size,
            "variety": self.variety,
            "properties": {
                name: verdict_to_dict(v) for name, v in sorted(self.verdicts.items())
            },
            "wall_times": {k: round(t, 6) for k, t in sorted(self.wall_times.items())},
            "notes": list(self.notes),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self):
        lines = [
            f"algebra: {self.algebra} (size {self.size})",
            f"variety: {self.variety}",
        ]
        for note in self.notes:
            lines.append(f"note: {note}")
        for name in sorted(self.verdicts):
            v = self.verdicts[name]
            bounds = " ".join(f"{k}={val}" for k, val in sorted(v.bounds.items()))
            tail = f" [{bounds}]" if bounds else ""
            cert = f" via {v.certificate}" if v.certificate else ""
            lines.append(f"  {name}: {v.value}{cert}{tail}"
                         f"  ({self.wall_times.get(name, 0.0):.3f}s)")
            if v.witness is not None:
                lines.extend(render_witness(v.witness))
        return "\n".join(lines) + "\n"
