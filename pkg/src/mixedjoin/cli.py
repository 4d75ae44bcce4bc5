"""Command-line front end: ``mixedjoin <subcommand> ...``.

Every invocation prints one JSON document on stdout, either
``{"result": ..., "manifest": ...}`` or ``{"error": ..., "manifest": ...}``.
Exit status: 0 on success, 1 on a domain error, 2 on a usage error.

The manifest holds the argument list, seed, tool version and SHA-256 digests
of the inputs, so repeated runs print byte-identical output.  Wall time would
break that, so it goes only into the optional ``--manifest FILE``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from typing import Any, Callable

from . import __version__
from .enhanced import EnhancedMilnor, base_cases, brieskorn_enhanced, join_enhanced, witness
from .intpoly import IntPolynomial
from .newton import (
    Budget,
    check_strong_nondegeneracy,
    compact_faces,
    is_convenient,
    newton_polytope,
)
from .polyparse import ParseError, parse
from .seifert import (
    NonUnimodularError,
    SeifertForm,
    brieskorn_form,
    check_congruent,
    congruence_invariants,
    extend,
    join_tensor,
    lambda_matrix,
    monodromy_charpoly,
    sum_of_squares_form,
)
from .winding import InsufficientSamples, NearZeroOnCircle, mapping_degree
from .zeta import (
    Divisor,
    ZeroRootError,
    composed_product,
    divisor_join,
    divisor_of,
    reduced_zeta,
    simple_fiber_charpolys,
    zeta_from_charpolys,
)

__all__ = ["run", "main", "run_pipeline", "CliError", "PipelineError"]


class CliError(Exception):
    """Domain error with a machine-readable code."""

    def __init__(self, code: str, message: str, **extra):
        super().__init__(message)
        self.code = code
        self.message = message
        self.extra = extra

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, **self.extra}


class PipelineError(CliError):
    pass


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so :func:`run` returns a code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


def _classify(exc: Exception) -> CliError:
    if isinstance(exc, CliError):
        return exc
    if isinstance(exc, ParseError):
        return CliError("parse_error", str(exc), line=exc.line, column=exc.column)
    if isinstance(exc, ZeroRootError):
        return CliError("zero_root", str(exc))
    if isinstance(exc, NonUnimodularError):
        return CliError("non_unimodular", str(exc))
    if isinstance(exc, NearZeroOnCircle):
        return CliError("near_zero_on_circle", str(exc))
    if isinstance(exc, InsufficientSamples):
        return CliError("insufficient_samples", str(exc))
    if isinstance(exc, (ValueError, TypeError, ArithmeticError)):
        return CliError("invalid_input", str(exc))
    raise exc


# ---------------------------------------------------------------------------
# input helpers


class _Inputs:
    """Collects digests of everything read, for the manifest."""

    def __init__(self):
        self.digests: dict[str, str] = {}

    def _note(self, label: str, data: bytes):
        self.digests[label] = hashlib.sha256(data).hexdigest()

    def text(self, label: str, value: str) -> str:
        self._note(label, value.encode())
        return value

    def json_file(self, path: str):
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as e:
            raise CliError("file_error", f"cannot read {path}: {e.strerror}") from None
        self._note(path, data)
        try:
            return json.loads(data)
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise CliError("invalid_json", f"{path}: {e}") from None

    def json_arg(self, label: str, value: str):
        self._note(label, value.encode())
        try:
            return json.loads(value)
        except json.JSONDecodeError as e:
            raise CliError("invalid_json", f"{label}: {e}") from None


def _int_list(x, what: str) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in x):
        raise CliError("invalid_input", f"{what} must be a JSON list of integers")
    return x


def _matrix(x, what: str) -> list[list[int]]:
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise CliError("invalid_input", f"{what} must be a JSON array of integer arrays")
    rows = [_int_list(r, what) for r in x]
    if any(len(r) != len(rows) for r in rows):
        raise CliError("invalid_input", f"{what} must be square")
    return rows


def _form_from_json(x, what: str, strict: bool = False) -> SeifertForm:
    k = None
    if isinstance(x, dict):
        k = x.get("k")
        x = x.get("matrix")
    rows = _matrix(x, what)
    return SeifertForm(rows, k) if strict else SeifertForm.relaxed(rows, k)


def _poly_json(p: IntPolynomial) -> dict:
    return {"coeffs": p.to_list(), "text": str(p)}


# ---------------------------------------------------------------------------
# subcommands


def _cmd_parse(a, inp: _Inputs):
    p = parse(inp.text("poly", a.poly), a.n)
    return {"canonical": str(p), **p.to_json()}


def _cmd_newton(a, inp: _Inputs):
    p = parse(inp.text("poly", a.poly), a.n)
    show_all = not (a.faces or a.convenient or a.nondegenerate)
    np_ = newton_polytope(p)
    out: dict[str, Any] = {"polynomial": str(p), **np_.to_json()}
    if a.faces or show_all:
        out["faces"] = [f.to_json() for f in compact_faces(np_)]
    if a.convenient or show_all:
        out["convenient"] = is_convenient(p)
    if a.nondegenerate:
        budget = Budget(samples=a.samples, iterations=a.iterations)
        reports = check_strong_nondegeneracy(p, budget, seed=a.seed)
        out["reports"] = [r.to_json() for r in reports]
        out["seed"] = a.seed
    return out


def _cmd_degree(a, inp: _Inputs):
    p = parse(inp.text("poly", a.poly), 1)
    return mapping_degree(p, a.eps, a.samples).to_json()


def _cmd_seifert(a, inp: _Inputs):
    if a.action == "lambda":
        return lambda_matrix(a.m).to_json()
    if a.action == "brieskorn":
        return brieskorn_form(a.exponents).to_json()
    if a.action == "squares":
        return sum_of_squares_form(a.m).to_json()
    if a.action == "tensor":
        l1 = _form_from_json(inp.json_file(a.fileA), a.fileA)
        l2 = _form_from_json(inp.json_file(a.fileB), a.fileB)
        return join_tensor(l1, a.n, l2, a.m).to_json()
    if a.action == "extend":
        l = _form_from_json(inp.json_file(a.file), a.file)
        b = _int_list(inp.json_arg("b", a.b), "--b")
        f = extend(l, b, a.eps)
        out = {**f.to_json(), "unimodular": f.unimodular}
        if l.k is not None and l.k < 3 and not a.quiet:
            print("warning: the Hopf-band extension argument assumes k >= 3", file=sys.stderr)
        return out
    if a.action == "congruent":
        l1 = _form_from_json(inp.json_file(a.fileA), a.fileA)
        l2 = _form_from_json(inp.json_file(a.fileB), a.fileB)
        return check_congruent(l1, l2, a.depth).to_json()
    if a.action == "invariants":
        return congruence_invariants(_form_from_json(inp.json_file(a.file), a.file)).to_json()
    if a.action == "charpoly":
        l = _form_from_json(inp.json_file(a.file), a.file, strict=True)
        return _poly_json(monodromy_charpoly(l, a.convention))
    raise AssertionError(a.action)


def _cmd_zeta(a, inp: _Inputs):
    if a.action == "join":
        d1 = divisor_of(_int_list(inp.json_arg("num1", a.num1), "--num1"), _int_list(inp.json_arg("den1", a.den1), "--den1"))
        d2 = divisor_of(_int_list(inp.json_arg("num2", a.num2), "--num2"), _int_list(inp.json_arg("den2", a.den2), "--den2"))
        d = divisor_join(d1, d2)
        return {**d.to_json(), "text": str(d)}
    if a.action == "from-charpolys":
        data = inp.json_file(a.file)
        if not isinstance(data, list):
            raise CliError("invalid_input", "expected a JSON list of coefficient lists")
        z = zeta_from_charpolys([_int_list(p, "charpoly") for p in data])
        return {**z.to_json(), "text": str(z.divisor)}
    if a.action == "reduced":
        d = reduced_zeta(divisor_of(_int_list(inp.json_arg("num", a.num), "--num"), _int_list(inp.json_arg("den", a.den), "--den")))
        return {**d.to_json(), "text": str(d)}
    if a.action == "composed":
        p = _int_list(inp.json_arg("p", a.p), "--p")
        q = _int_list(inp.json_arg("q", a.q), "--q")
        return _poly_json(composed_product(p, q))
    raise AssertionError(a.action)


def _cmd_enhanced(a, inp: _Inputs):
    if a.action == "join":
        e1 = EnhancedMilnor(a.mu1, a.lambda1)
        e2 = EnhancedMilnor(a.mu2, a.lambda2)
        return join_enhanced(e1, e2, a.k).to_json()
    if a.action == "brieskorn":
        return brieskorn_enhanced(a.exponents, a.k).to_json()
    if a.action == "witness":
        w = witness(a.ell, a.k)
        return w.to_json()
    if a.action == "base-cases":
        return [{"name": r["name"], "polynomial": str(r["polynomial"]), **r["invariant"].to_json()} for r in base_cases()]
    raise AssertionError(a.action)


def _cmd_pipeline(a, inp: _Inputs):
    script = inp.json_file(a.file)
    results, err = run_pipeline(script, seed=a.seed)
    if err is not None:
        raise PipelineError(err.code, err.message, partial_results=results, **err.extra)
    return results


# ---------------------------------------------------------------------------
# pipelines


@dataclass
class _Value:
    kind: str
    value: Any
    k: int | None = None


def _to_json(v: _Value):
    x = v.value
    if v.kind == "intpoly":
        out = _poly_json(x)
        if v.k is not None:
            out["k"] = v.k
        return out
    if v.kind == "poly":
        return str(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def _coerce(kind: str, raw, name: str) -> _Value:
    """Turn a literal JSON argument into a typed value."""
    try:
        if kind == "poly":
            if not isinstance(raw, str):
                raise TypeError
            return _Value("poly", parse(raw))
        if kind == "form":
            f = _form_from_json(raw, name)
            return _Value("form", f, f.k)
        if kind == "intpoly":
            return _Value("intpoly", IntPolynomial(_int_list(raw, name)))
        if kind == "divisor":
            if isinstance(raw, dict):
                return _Value("divisor", Divisor.from_json(raw))
            return _Value("divisor", divisor_of(_int_list(raw, name)))
        if kind == "enhanced":
            if not isinstance(raw, dict):
                raise TypeError
            return _Value("enhanced", EnhancedMilnor(int(raw["mu"]), int(raw["lambda"]), raw.get("k")))
        if kind == "int":
            if not isinstance(raw, int) or isinstance(raw, bool):
                raise TypeError
            return _Value("int", raw)
        if kind == "number":
            if not isinstance(raw, (int, float)) or isinstance(raw, bool):
                raise TypeError
            return _Value("number", raw)
        if kind == "ints":
            return _Value("ints", _int_list(raw, name))
        return _Value("json", raw)
    except CliError:
        raise PipelineError("type_mismatch", f"argument {name!r} is not a valid {kind}") from None
    except (TypeError, KeyError):
        raise PipelineError("type_mismatch", f"argument {name!r} is not a valid {kind}") from None


@dataclass(frozen=True)
class _Op:
    fn: Callable
    params: dict  # name -> (accepted kinds tuple, required)


def _p(*kinds, required=True):
    return (kinds, required)


def _op_zeta_from_charpolys(charpolys: _Value, k: _Value | None = None) -> _Value:
    if charpolys.kind == "intpoly":
        kk = k.value if k is not None else charpolys.k
        if kk is None:
            raise PipelineError("type_mismatch", "a single charpoly needs the fiber parameter k")
        return _Value("zeta", zeta_from_charpolys(simple_fiber_charpolys(charpolys.value, kk)))
    if not isinstance(charpolys.value, list) or not all(isinstance(p, list) for p in charpolys.value):
        raise PipelineError("type_mismatch", "charpolys must be a charpoly or a list of coefficient lists")
    return _Value("zeta", zeta_from_charpolys([_int_list(p, "charpolys") for p in charpolys.value]))


def _op_nondeg(poly, samples=None, seed_=0):
    budget = Budget(samples=samples.value) if samples is not None else Budget()
    return _Value("json", [r.to_json() for r in check_strong_nondegeneracy(poly.value, budget, seed=seed_)])


def _op_enhanced(mu, k=None, **kw):
    return _Value("enhanced", EnhancedMilnor(mu.value, kw["lambda"].value, k.value if k else None))


def _form_k(f: SeifertForm) -> _Value:
    return _Value("form", f, f.k)


_OPS: dict[str, _Op] = {
    "parse": _Op(lambda source, n=None: _Value("poly", parse(source.value, n.value if n else None)),
                 {"source": _p("json"), "n": _p("int", required=False)}),
    "newton_polytope": _Op(lambda poly: _Value("json", newton_polytope(poly.value).to_json()), {"poly": _p("poly")}),
    "compact_faces": _Op(lambda poly: _Value("json", [f.to_json() for f in compact_faces(newton_polytope(poly.value))]),
                         {"poly": _p("poly")}),
    "is_convenient": _Op(lambda poly: _Value("json", is_convenient(poly.value)), {"poly": _p("poly")}),
    "check_strong_nondegeneracy": _Op(_op_nondeg, {"poly": _p("poly"), "samples": _p("int", required=False)}),
    "degree": _Op(lambda poly, eps=None: _Value("json", mapping_degree(poly.value, eps.value if eps else 1e-2).to_json()),
                  {"poly": _p("poly"), "eps": _p("number", required=False)}),
    "lambda_matrix": _Op(lambda m: _form_k(lambda_matrix(m.value)), {"m": _p("int")}),
    "brieskorn_form": _Op(lambda exponents: _form_k(brieskorn_form(exponents.value)), {"exponents": _p("ints")}),
    "sum_of_squares_form": _Op(lambda m: _form_k(sum_of_squares_form(m.value)), {"m": _p("int")}),
    "seifert_form": _Op(lambda matrix: _form_k(matrix.value), {"matrix": _p("form")}),
    "join_tensor": _Op(lambda l1, n, l2, m: _form_k(join_tensor(l1.value, n.value, l2.value, m.value)),
                       {"l1": _p("form"), "n": _p("int"), "l2": _p("form"), "m": _p("int")}),
    "extend": _Op(lambda form, b, eps: _form_k(extend(form.value, b.value, eps.value)),
                  {"form": _p("form"), "b": _p("ints"), "eps": _p("int")}),
    "congruence_invariants": _Op(lambda form: _Value("json", congruence_invariants(form.value).to_json()),
                                 {"form": _p("form")}),
    "check_congruent": _Op(
        lambda a, b, depth=None: _Value("json", check_congruent(a.value, b.value, depth.value if depth else 8).to_json()),
        {"a": _p("form"), "b": _p("form"), "depth": _p("int", required=False)},
    ),
    "monodromy_charpoly": _Op(
        lambda form, convention=None: _Value(
            "intpoly", monodromy_charpoly(form.value, convention.value if convention else "left"), form.value.k
        ),
        {"form": _p("form"), "convention": _p("json", required=False)},
    ),
    "zeta_from_charpolys": _Op(_op_zeta_from_charpolys, {"charpolys": _p("intpoly", "json"), "k": _p("int", required=False)}),
    "reduced_zeta": _Op(lambda zeta: _Value("divisor", reduced_zeta(zeta.value)), {"zeta": _p("zeta", "divisor")}),
    "divisor": _Op(lambda num, den=None: _Value("divisor", divisor_of(num.value, den.value if den else IntPolynomial((1,)))),
                   {"num": _p("intpoly"), "den": _p("intpoly", required=False)}),
    "divisor_join": _Op(lambda d1, d2: _Value("divisor", divisor_join(d1.value, d2.value)),
                        {"d1": _p("divisor"), "d2": _p("divisor")}),
    "composed_product": _Op(lambda p, q: _Value("intpoly", composed_product(p.value, q.value)),
                            {"p": _p("intpoly"), "q": _p("intpoly")}),
    "enhanced": _Op(_op_enhanced, {"mu": _p("int"), "lambda": _p("int"), "k": _p("int", required=False)}),
    "join_enhanced": _Op(lambda e1, e2, k=None: _Value("enhanced", join_enhanced(e1.value, e2.value, k.value if k else None)),
                         {"e1": _p("enhanced"), "e2": _p("enhanced"), "k": _p("int", required=False)}),
    "brieskorn_enhanced": _Op(lambda exponents: _Value("enhanced", brieskorn_enhanced(exponents.value)),
                              {"exponents": _p("ints")}),
    "witness": _Op(lambda ell, k: _Value("json", witness(ell.value, k.value).to_json()), {"ell": _p("int"), "k": _p("int")}),
}


def _resolve(raw, kinds: tuple, name: str, outputs: list[_Value], index: int) -> _Value:
    if isinstance(raw, str) and raw.startswith("$"):
        try:
            ref = int(raw[1:])
        except ValueError:
            raise PipelineError("dangling_reference", f"step {index}: malformed reference {raw!r}") from None
        if not 0 <= ref < index:
            raise PipelineError("dangling_reference", f"step {index}: {raw!r} does not name an earlier step")
        v = outputs[ref]
        if v.kind not in kinds and "json" not in kinds:
            raise PipelineError(
                "type_mismatch", f"step {index}: argument {name!r} expects {'/'.join(kinds)}, step {ref} produced {v.kind}"
            )
        return v
    last = None
    for kind in kinds:
        try:
            return _coerce(kind, raw, name)
        except PipelineError as e:
            last = e
    raise PipelineError("type_mismatch", f"step {index}: {last.message}")


def run_pipeline(script, seed: int = 0) -> tuple[list, CliError | None]:
    """Run steps in order; returns ``(results, error)``.

    A step is ``{"op": name, "args": {...}}``; a string argument ``"$i"``
    refers to the output of step ``i``.  The first failing step stops the run
    and its error is returned next to the results computed so far.
    """
    if not isinstance(script, list):
        return [], PipelineError("invalid_input", "pipeline script must be a JSON list of steps")
    outputs: list[_Value] = []
    results: list = []
    for i, step in enumerate(script):
        try:
            if not isinstance(step, dict) or not isinstance(step.get("op"), str):
                raise PipelineError("invalid_input", f"step {i}: expected an object with an 'op' string")
            op = _OPS.get(step["op"])
            if op is None:
                raise PipelineError("unknown_op", f"step {i}: unknown operation {step['op']!r}")
            args = step.get("args", {})
            if not isinstance(args, dict):
                raise PipelineError("invalid_input", f"step {i}: 'args' must be an object")
            extra = set(args) - set(op.params)
            if extra:
                raise PipelineError("invalid_input", f"step {i}: unexpected arguments {sorted(extra)}")
            kwargs = {}
            for name, (kinds, required) in op.params.items():
                if name not in args:
                    if required:
                        raise PipelineError("invalid_input", f"step {i}: missing argument {name!r}")
                    continue
                kwargs[name] = _resolve(args[name], kinds, name, outputs, i)
            if op.fn is _op_nondeg:
                kwargs["seed_"] = seed
            out = op.fn(**kwargs)
        except Exception as exc:  # noqa: BLE001 - every failure becomes a coded error
            err = _classify(exc)
            err.extra.setdefault("step", i)
            return results, err
        outputs.append(out)
        results.append(_to_json(out))
    return results, None


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="mixedjoin", description="Invariants of join-type mixed polynomial singularities.")
    ap.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    ap.add_argument("--json-indent", type=int, default=None, help="pretty-print JSON with this indent")
    ap.add_argument("--quiet", action="store_true", help="suppress warnings on stderr")
    ap.add_argument("--manifest", metavar="FILE", help="also write the run manifest, with wall time, to FILE")
    ap.add_argument("--version", action="version", version=f"mixedjoin {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse and print a mixed polynomial canonically")
    p.add_argument("poly")
    p.add_argument("--n", type=int, default=None, help="number of variables")

    p = sub.add_parser("newton", help="Newton polyhedron, compact faces, convenience, non-degeneracy")
    p.add_argument("--poly", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--faces", action="store_true")
    p.add_argument("--convenient", action="store_true")
    p.add_argument("--nondegenerate", action="store_true")
    p.add_argument("--samples", type=int, default=Budget.samples)
    p.add_argument("--iterations", type=int, default=Budget.iterations)
    # accept --seed after the subcommand as well
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = sub.add_parser("degree", help="mapping degree of f/|f| on a small circle")
    p.add_argument("--poly", required=True)
    p.add_argument("--eps", type=float, default=1e-2)
    p.add_argument("--samples", type=int, default=64)

    p = sub.add_parser("seifert", help="Seifert form algebra")
    ss = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = ss.add_parser("lambda")
    q.add_argument("-m", type=int, required=True)
    q = ss.add_parser("brieskorn")
    q.add_argument("exponents", type=int, nargs="+")
    q = ss.add_parser("squares")
    q.add_argument("-m", type=int, required=True)
    q = ss.add_parser("tensor")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("fileA")
    q.add_argument("fileB")
    q = ss.add_parser("extend")
    q.add_argument("file")
    q.add_argument("--b", required=True, help="border row as a JSON list")
    q.add_argument("--eps", type=int, required=True, choices=(1, -1))
    q = ss.add_parser("congruent")
    q.add_argument("--depth", type=int, default=8)
    q.add_argument("fileA")
    q.add_argument("fileB")
    q = ss.add_parser("invariants")
    q.add_argument("file")
    q = ss.add_parser("charpoly")
    q.add_argument("file")
    q.add_argument("--convention", choices=("left", "right"), default="left")

    p = sub.add_parser("zeta", help="divisors and zeta functions")
    zs = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = zs.add_parser("join")
    for name in ("num1", "den1", "num2", "den2"):
        q.add_argument(f"--{name}", default="[1]" if name.startswith("den") else None, required=name.startswith("num"))
    q = zs.add_parser("from-charpolys")
    q.add_argument("file")
    q = zs.add_parser("reduced")
    q.add_argument("--num", required=True)
    q.add_argument("--den", default="[1]")
    q = zs.add_parser("composed")
    q.add_argument("--p", required=True)
    q.add_argument("--q", required=True)

    p = sub.add_parser("enhanced", help="enhanced Milnor numbers")
    es = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = es.add_parser("join")
    q.add_argument("--mu1", type=int, required=True)
    q.add_argument("--lambda1", type=int, required=True)
    q.add_argument("--mu2", type=int, required=True)
    q.add_argument("--lambda2", type=int, required=True)
    q.add_argument("--k", type=int, default=None, help="fiber parameter of the join (caller-supplied)")
    q = es.add_parser("brieskorn")
    q.add_argument("exponents", type=int, nargs="+")
    q.add_argument("--k", type=int, default=None)
    q = es.add_parser("witness")
    q.add_argument("--ell", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    es.add_parser("base-cases")

    p = sub.add_parser("pipeline", help="run a JSON list of steps")
    p.add_argument("file")
    return ap


_COMMANDS = {
    "parse": _cmd_parse,
    "newton": _cmd_newton,
    "degree": _cmd_degree,
    "seifert": _cmd_seifert,
    "zeta": _cmd_zeta,
    "enhanced": _cmd_enhanced,
    "pipeline": _cmd_pipeline,
}


def _emit(doc: dict, indent: int | None, out=None):
    out = out or sys.stdout
    out.write(json.dumps(doc, indent=indent, sort_keys=False) + "\n")


def run(argv: list[str] | None = None) -> int:
    """Run one CLI invocation; returns the exit status."""
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    try:
        args = _build_parser().parse_args(argv)
    except _Usage as e:
        print(str(e), file=sys.stderr)
        return 2
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)

    inp = _Inputs()
    manifest = {"argv": argv, "seed": args.seed, "version": __version__, "inputs": inp.digests}
    code = 0
    try:
        result = _COMMANDS[args.command](args, inp)
        doc = {"result": result, "manifest": manifest}
    except Exception as exc:  # noqa: BLE001
        try:
            err = _classify(exc)
        except Exception as unexpected:  # noqa: BLE001
            err = CliError("internal_error", f"{type(unexpected).__name__}: {unexpected}")
        doc = {"error": err.to_json(), "manifest": manifest}
        code = 1
    _emit(doc, args.json_indent)
    if args.manifest:
        try:
            with open(args.manifest, "w") as fh:
                json.dump({**manifest, "wall_time_s": time.perf_counter() - start, "exit_code": code}, fh, indent=2)
        except OSError as e:
            if not args.quiet:
                print(f"warning: cannot write manifest: {e}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())
