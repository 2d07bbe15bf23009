"""Command-line front end.

One command is one pipeline: parse the input poset or integer set, bind a
function, run the requested analysis, and emit a deterministic report on
stdout or to a file.  Reports are JSON by default (rationals serialized as
"p/q" strings so sign information survives exactly) with a CSV option for
the tabular commands.  Exit codes: 0 on success, 2 when a precondition or
hypothesis fails, 1 on I/O and parse errors.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import click

from .definiteness import classify_and_test, structure_flags
from .errors import DuplicateError, MeetJoinError
from .matrices import det_general, join_matrix, meet_matrix
from .mobius import PosetFunction, phi, psi
from .numtheory import (
    NamedFunction,
    build_named_matrix,
    divisibility_poset,
    divisor_down_set,
    divisors,
    normalize_family,
)
from .poset import FinitePoset, Subset, build_poset, join_closure, meet_closure
from .spectral import eigen_sym, join_bounds, meet_bounds


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, resolved from flags."""

    command: str
    poset_path: str | None = None
    set_text: str | None = None
    family: str | None = None
    alpha: str = "1"
    values_path: str | None = None
    function_tag: str | None = None
    kind: str | None = None
    ambient: str = "canonical"
    fmt: str = "json"
    output_path: str | None = None
    tol: float = 1e-10
    slack: float = 1e-9
    seed: int = 0

    def echo(self) -> dict:
        return {
            "command": self.command,
            "poset": self.poset_path,
            "set": self.set_text,
            "family": self.family,
            "alpha": self.alpha,
            "values": self.values_path,
            "function": self.function_tag,
            "kind": self.kind,
            "ambient": self.ambient,
            "format": self.fmt,
            "tol": self.tol,
            "slack": self.slack,
            "seed": self.seed,
        }


def _reject_duplicate_keys(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise DuplicateError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as err:
        raise ValueError(f"{path}:{err.lineno}: {err.msg}") from err


def parse_poset_file(path: str) -> tuple[FinitePoset, Subset]:
    """Read a poset file; returns the poset and the subset it designates.

    Three shapes are accepted: explicit ``n`` + ``relation`` (+ optional
    ``labels``), ``divisors_of: m``, or ``generated_by: [ints]`` for the
    divisors of a generating set.  An optional ``set`` field lists the
    member labels; without it the whole universe is the subset.
    """
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: poset file must be a JSON object")
    sources = [k for k in ("n", "divisors_of", "generated_by") if k in data]
    if len(sources) != 1:
        raise ValueError(
            f"{path}: need exactly one of n, divisors_of, generated_by"
        )
    if "divisors_of" in data:
        m = data["divisors_of"]
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise ValueError(f"{path}: divisors_of must be a positive integer")
        universe = divisors(m)
        poset = divisibility_poset(universe)
        default_set = universe
    elif "generated_by" in data:
        gens = data["generated_by"]
        if not isinstance(gens, list) or not gens:
            raise ValueError(f"{path}: generated_by must be a nonempty list")
        lattice = divisor_down_set(gens)
        poset = lattice.poset
        default_set = tuple(sorted(set(gens)))
    else:
        n = data["n"]
        relation = data.get("relation", [])
        if not isinstance(relation, list):
            raise ValueError(f"{path}: relation must be a list of pairs")
        pairs = []
        for entry in relation:
            if not isinstance(entry, list) or len(entry) != 2:
                raise ValueError(f"{path}: relation entries must be [i, j] pairs")
            pairs.append((entry[0], entry[1]))
        labels = data.get("labels")
        poset = build_poset(n, pairs, labels=tuple(labels) if labels else None)
        default_set = poset.labels
    chosen = data.get("set", list(default_set))
    if not isinstance(chosen, list) or not chosen:
        raise ValueError(f"{path}: set must be a nonempty list of labels")
    return poset, Subset.of_labels(poset, chosen)


def parse_function_table(poset: FinitePoset, path: str) -> PosetFunction:
    """Read a label -> value table and bind it to the poset.

    Values may be integers, "p/q" strings, or floats; every element of the
    poset must be covered or MissingValueError names the gaps.
    """
    data = _load_json(path)
    if isinstance(data, dict) and isinstance(data.get("values"), dict):
        data = data["values"]
    if not isinstance(data, dict):
        raise ValueError(f"{path}: function table must be a JSON object")
    return PosetFunction.from_table(poset, data)


def _parse_number(text: str):
    s = text.strip()
    try:
        return int(s)
    except ValueError:
        pass
    if "/" in s:
        return Fraction(s)
    return float(s)


def _parse_int_set(text: str) -> list[int]:
    items = [piece.strip() for piece in text.split(",") if piece.strip()]
    if not items:
        raise ValueError("the set shorthand is empty")
    return [int(piece) for piece in items]


def _encode(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    return value


@dataclass
class _Resolved:
    poset: FinitePoset
    subset: Subset
    kind: str
    function: PosetFunction | None = None
    family: str | None = None
    matrix: object = None

    def need_function(self) -> PosetFunction:
        if self.function is None:
            raise ValueError("no function source: give --values or --function")
        return self.function

    def build_matrix(self):
        if self.matrix is None:
            f = self.need_function()
            if self.kind == "meet":
                self.matrix = meet_matrix(self.subset, f)
            else:
                self.matrix = join_matrix(self.subset, f)
        return self.matrix


def _resolve(config: RunConfig) -> _Resolved:
    if (config.poset_path is None) == (config.set_text is None):
        raise ValueError("exactly one input source: --poset or --set")
    if config.tol <= 0 or config.slack <= 0:
        raise ValueError("tolerances must be positive")

    if config.set_text is not None:
        family = normalize_family(config.family or "power_gcd")
        members = _parse_int_set(config.set_text)
        alpha = _parse_number(config.alpha)
        model = build_named_matrix(
            family, members, alpha=alpha, ambient=config.ambient
        )
        kind = config.kind or model.kind
        if kind != model.kind:
            raise ValueError(
                f"family {family} builds a {model.kind} matrix, not {kind}"
            )
        return _Resolved(
            model.poset, model.subset, model.kind,
            function=model.function, family=family, matrix=model.matrix,
        )

    if config.family is not None:
        raise ValueError("--family needs --set, not --poset")
    poset, subset = parse_poset_file(config.poset_path)
    kind = config.kind or "meet"
    function = None
    if config.values_path is not None and config.function_tag is not None:
        raise ValueError("give --values or --function, not both")
    if config.values_path is not None:
        function = parse_function_table(poset, config.values_path)
    elif config.function_tag is not None:
        tag = config.function_tag.strip().lower().replace("-", "_")
        if tag == "identity":
            named = NamedFunction("identity")
        else:
            named = NamedFunction(tag, _parse_number(config.alpha))
        function = named.bind(poset)
    return _Resolved(poset, subset, kind, function=function)


def _flag_payload(subset: Subset) -> dict:
    flags = structure_flags(subset)
    return {name: flags[name] for name in sorted(flags)}


def _closure_vector(resolved: _Resolved) -> dict | None:
    f = resolved.function
    if f is None or not f.is_exact:
        return None
    try:
        if resolved.kind == "meet":
            closure = meet_closure(resolved.subset)
            vec = psi(closure.subset, f)
        else:
            closure = join_closure(resolved.subset)
            vec = phi(closure.subset, f)
    except MeetJoinError:
        return None
    return {str(lb): _encode(v) for lb, v in zip(vec.labels, vec.values)}


def _execute(config: RunConfig, resolved: _Resolved) -> tuple[int, dict]:
    if config.command == "build":
        matrix = resolved.build_matrix()
        rows = [[_encode(matrix.entry(i, j)) for j in range(matrix.n)]
                for i in range(matrix.n)]
        return 0, {
            "labels": _encode(list(resolved.subset.labels)),
            "kind": resolved.kind,
            "exact": matrix.is_exact,
            "matrix": rows,
        }

    if config.command == "classify":
        return 0, {
            "labels": _encode(list(resolved.subset.labels)),
            "flags": _flag_payload(resolved.subset),
        }

    if config.command == "closure":
        if resolved.kind == "meet":
            result = meet_closure(resolved.subset)
        else:
            result = join_closure(resolved.subset)
        original = set(resolved.subset.members)
        added = [m for m in result.subset.members if m not in original]
        return 0, {
            "kind": resolved.kind,
            "closed": not added,
            "members": _encode(list(result.subset.labels)),
            "added": _encode([resolved.poset.labels[m] for m in added]),
        }

    if config.command == "check-pd":
        f = resolved.need_function()
        report = classify_and_test(resolved.subset, f, resolved.kind)
        payload = {
            "verdict": report.verdict,
            "method": report.method,
            "certificate": _encode(report.certificate),
            "flags": _flag_payload(resolved.subset),
        }
        vector = _closure_vector(resolved)
        if vector is not None:
            payload["psi" if resolved.kind == "meet" else "phi"] = vector
        payload["det"] = _encode(det_general(resolved.build_matrix()))
        return 0, payload

    if config.command == "bounds":
        f = resolved.need_function()
        if resolved.kind == "meet":
            bounds = meet_bounds(resolved.subset, f)
        else:
            bounds = join_bounds(resolved.subset, f)
        spectrum = eigen_sym(resolved.build_matrix(), tol=config.tol)
        rows = bounds.table(spectrum, slack=config.slack)
        payload = {
            "kind": resolved.kind,
            "hypotheses": bounds.hypotheses_ok,
            "verified": bounds.verified,
            "eigenvalues": list(spectrum.eigenvalues),
            "residual": spectrum.residual,
            "bounds": rows,
            "lower": {
                "bound": bounds.lower_max,
                "lambda_max": spectrum.eigenvalues[-1],
                "ok": bounds.lower_ok(spectrum, slack=config.slack),
            },
            "permutation": list(bounds.reindex_permutation),
        }
        return (0 if bounds.verified else 2), payload

    raise ValueError(f"unknown command {config.command!r}")


def _render_csv(config: RunConfig, payload: dict) -> str:
    def cell(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        return str(v)

    if config.command == "bounds":
        lines = ["k,lambda,bound,ok"]
        for row in payload["bounds"]:
            lines.append(
                f"{row['k']},{cell(row['lambda'])},{cell(row['bound'])},{cell(row['ok'])}"
            )
        return "\n".join(lines) + "\n"
    if config.command == "build":
        return "\n".join(
            ",".join(cell(v) for v in row) for row in payload["matrix"]
        ) + "\n"
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                lines.append(f"{key}.{sub},{cell(v)}")
        elif isinstance(value, list):
            lines.append(f"{key}," + ";".join(cell(v) for v in value))
        else:
            lines.append(f"{key},{cell(value)}")
    return "\n".join(lines) + "\n"


def _render(config: RunConfig, payload: dict) -> str:
    if config.fmt == "csv":
        return _render_csv(config, payload)
    body = {"config": config.echo()}
    body.update(payload)
    return json.dumps(body, indent=2) + "\n"


def _render_error(config: RunConfig, err: Exception) -> str:
    body = {
        "config": config.echo(),
        "error": {"type": type(err).__name__, "message": str(err)},
    }
    return json.dumps(body, indent=2) + "\n"


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one pipeline; returns (exit code, rendered report)."""
    try:
        resolved = _resolve(config)
        code, payload = _execute(config, resolved)
        return code, _render(config, payload)
    except MeetJoinError as err:
        return 2, _render_error(config, err)
    except (OSError, ValueError, TypeError, IndexError, KeyError) as err:
        return 1, _render_error(config, err)


def _emit(config: RunConfig) -> None:
    code, text = run(config)
    if config.output_path is not None:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code != 0:
        raise SystemExit(code)


def _common(fn):
    options = [
        click.option("--poset", "poset_path", default=None,
                     help="poset file (JSON)"),
        click.option("--set", "set_text", default=None,
                     help="comma-separated positive integers"),
        click.option("--family", default=None,
                     help="power-gcd | reciprocal-power-lcm | gcud-power | min | max"),
        click.option("--alpha", default="1", help="exponent for power families"),
        click.option("--values", "values_path", default=None,
                     help="function table file (JSON)"),
        click.option("--function", "function_tag", default=None,
                     help="identity | power | reciprocal-power"),
        click.option("--kind", type=click.Choice(["meet", "join"]), default=None),
        click.option("--ambient", type=click.Choice(["closure", "canonical"]),
                     default="canonical", help="universe for family inputs"),
        click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
                     default="json"),
        click.option("--output", "output_path", default=None,
                     help="write the report here instead of stdout"),
        click.option("--tol", type=float, default=1e-10,
                     help="eigensolver tolerance"),
        click.option("--slack", type=float, default=1e-9,
                     help="bound satisfaction slack"),
        click.option("--seed", type=int, default=0,
                     help="echoed into the report for reproducibility"),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


@click.group()
def main() -> None:
    """Meet and join matrices: construction, definiteness, bounds."""


def _register(name: str):
    @main.command(name)
    @_common
    def _cmd(**kw):
        _emit(RunConfig(command=name, **kw))

    _cmd.__name__ = name.replace("-", "_")
    return _cmd


build = _register("build")
classify = _register("classify")
check_pd = _register("check-pd")
bounds = _register("bounds")
closure = _register("closure")


if __name__ == "__main__":
    main()
