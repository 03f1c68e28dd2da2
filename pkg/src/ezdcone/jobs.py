"""Job files: parsing, module construction and task execution.

A job is a JSON document::

    {
      "ring": {"variables": ["x", "y"], "relations": ["x^2", "y^2"]},
      "elements": {"f": "x", "g": "x"},
      "modules": {"Ry": {"quotient": ["x", "y"]}},
      "tasks": [{"id": "kk", "M": "k", "N": "k"}],
      "cap": 8,
      "seed": 0
    }

A structure-constant ring is ``{"labels": [...], "table": [[[...]]]}`` with
rationals written as strings such as ``"1/2"``. Module references are the
builtins ``k``, ``R``, ``S``, ``Q`` and ``m``, names from ``modules``, or
inline descriptions.
"""

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    check_ezhil_part1,
    check_ezhil_part2,
    embedding_dim,
    from_monomial_quotient,
    from_structure_constants,
    hilbert_series_ring,
    is_conca_generator,
    is_exact_pair,
    is_short,
    quotient,
)
from .complexes import homology
from .cone import (
    EzdContext,
    connec_check,
    mth_verify,
    tor_Q,
    tor_R,
    vanish_verify,
    verify_naturality_and_independence,
    vh_verify,
)
from .errors import EzdError, ParseError, PreconditionError
from .modules import (
    cyclic,
    descend,
    direct_sum,
    from_action_dict,
    hilbert_series_module,
    regular,
    residue_field,
    restrict_scalars,
    submodule_mM,
)
from .poincare import (
    Verdict,
    check_final_formula,
    check_koszul_formula,
    check_n2_formula,
    check_poincare1,
    check_poincare2,
    poincare_pair,
    rank_identity,
)
from .series import TruncatedSeries, growth_diagnostics, rational_form
from .tate import extract_lifting

DEFAULT_CHECKS = ("mth", "poincare1", "poincare2", "connec", "final")
ALL_CHECKS = DEFAULT_CHECKS + ("vh", "vanish", "naturality", "n2", "koszul")
BUILTINS = ("k", "R", "S", "Q", "m")


# parsing

def _rat(x, where):
    try:
        return Fraction(x) if isinstance(x, (int, str)) else Fraction(str(x))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {x!r}", where) from None


def _need(obj, key, kind, where):
    if key not in obj:
        raise ParseError(f"missing key {key!r}", where)
    val = obj[key]
    if not isinstance(val, kind):
        raise ParseError(f"{key!r} has the wrong type", f"{where}.{key}")
    return val


def load_job(text):
    """Parse job text into a dict; syntax errors carry a byte offset."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError("input is not UTF-8", f"byte {e.start}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        offset = len(text[: e.pos].encode("utf-8"))
        raise ParseError(f"invalid JSON: {e.msg}", f"byte {offset}") from None
    if not isinstance(data, dict):
        raise ParseError("a job must be a JSON object", "byte 0")
    return data


def build_ring(spec):
    where = "ring"
    if not isinstance(spec, dict):
        raise ParseError("ring must be an object", where)
    if "variables" in spec:
        variables = _need(spec, "variables", list, where)
        relations = _need(spec, "relations", list, where)
        return from_monomial_quotient([str(v) for v in variables], [str(r) for r in relations])
    if "labels" in spec:
        labels = _need(spec, "labels", list, where)
        table = _need(spec, "table", list, where)
        d = len(labels)
        if len(table) != d or any(not isinstance(r, list) or len(r) != d for r in table):
            raise ParseError(f"table must be {d} x {d}", f"{where}.table")
        conv = []
        for i, row in enumerate(table):
            out = []
            for j, v in enumerate(row):
                if not isinstance(v, list) or len(v) != d:
                    raise ParseError(f"entry must be a vector of length {d}",
                                     f"{where}.table[{i}][{j}]")
                out.append([_rat(c, f"{where}.table[{i}][{j}]") for c in v])
            conv.append(out)
        return from_structure_constants([str(x) for x in labels], conv)
    raise ParseError("ring needs either variables/relations or labels/table", where)


@dataclass
class Job:
    Q: object
    f: object = None
    g: object = None
    modules: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)
    cap: int = 8
    seed: int = 0
    _ctx: object = None

    @property
    def ctx(self):
        if self._ctx is None:
            if self.f is None or self.g is None:
                raise PreconditionError("this task needs elements f and g")
            self._ctx = EzdContext(self.Q, self.f, self.g, self.cap, self.seed)
        return self._ctx

    def module(self, ref, where="task"):
        """Resolve a module reference to a Q-module."""
        if isinstance(ref, str):
            if ref in self.modules:
                return self.module(self.modules[ref], f"modules.{ref}")
            if ref == "k":
                return residue_field(self.Q)
            if ref == "Q":
                return regular(self.Q)
            if ref == "m":
                return submodule_mM(regular(self.Q))[0]
            if ref == "R":
                return restrict_scalars(regular(self.ctx.R), self.ctx.qR)
            if ref == "S":
                return restrict_scalars(regular(self.ctx.S), self.ctx.qS)
            raise ParseError(f"unknown module {ref!r}", where)
        if not isinstance(ref, dict):
            raise ParseError("a module is a name or an object", where)
        if "quotient" in ref:
            gens = ref["quotient"]
            if not isinstance(gens, list):
                raise ParseError("quotient expects a list of generators", where)
            return cyclic(quotient(self.Q, [str(x) for x in gens]))
        if "sum" in ref:
            parts = ref["sum"]
            if not isinstance(parts, list) or not parts:
                raise ParseError("sum expects a nonempty list", where)
            return direct_sum(*[self.module(p, f"{where}.sum[{i}]") for i, p in enumerate(parts)])
        if "action" in ref:
            dim = _need(ref, "dim", int, where)
            over = ref.get("over", "Q")
            ring = {"Q": self.Q}.get(over) or {"R": lambda: self.ctx.R,
                                                 "S": lambda: self.ctx.S}.get(over, lambda: None)()
            if ring is None:
                raise ParseError(f"unknown ring {over!r}", f"{where}.over")
            action = _need(ref, "action", dict, where)
            rows = {}
            for key, mat in action.items():
                if not isinstance(mat, list):
                    raise ParseError("action matrices are lists of rows", f"{where}.action.{key}")
                rows[key] = [[_rat(c, f"{where}.action.{key}") for c in r] for r in mat]
            M = from_action_dict(ring, dim, rows)
            if over == "R":
                return restrict_scalars(M, self.ctx.qR)
            if over == "S":
                return restrict_scalars(M, self.ctx.qS)
            return M
        raise ParseError("module object needs quotient, sum or action", where)


def build_job(data, cap=None, seed=None):
    if "ring" not in data:
        raise ParseError("missing key 'ring'", "top level")
    Q = build_ring(data["ring"])
    els = data.get("elements", {})
    if not isinstance(els, dict):
        raise ParseError("elements must be an object", "elements")
    f = Q.elem(str(els["f"])) if "f" in els else None
    g = Q.elem(str(els["g"])) if "g" in els else None
    modules = data.get("modules", {})
    if not isinstance(modules, dict):
        raise ParseError("modules must be an object", "modules")
    tasks = data.get("tasks", [{"id": "default", "M": "k", "N": "k"}])
    if not isinstance(tasks, list):
        raise ParseError("tasks must be a list", "tasks")
    seen = set()
    for i, t in enumerate(tasks):
        if not isinstance(t, dict) or "id" not in t:
            raise ParseError("each task needs an id", f"tasks[{i}]")
        if t["id"] in seen:
            raise ParseError(f"duplicate task id {t['id']!r}", f"tasks[{i}]")
        seen.add(t["id"])
        for c in t.get("checks", ()):
            if c not in ALL_CHECKS:
                raise ParseError(f"unknown check {c!r}", f"tasks[{i}].checks")
    cap = data.get("cap", 8) if cap is None else cap
    seed = data.get("seed", 0) if seed is None else seed
    if not isinstance(cap, int) or cap < 4:
        raise ParseError("cap must be an integer >= 4", "cap")
    if not isinstance(seed, int):
        raise ParseError("seed must be an integer", "seed")
    return Job(Q, f, g, modules, sorted(tasks, key=lambda t: str(t["id"])), cap, seed)


# running

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, float, str)):
        return x
    return str(x)


def _series_dict(p):
    rf = rational_form(p)
    return {"coeffs": list(p.coeffs), "rational_form": str(rf) if rf else None}


def _verdict(name, window, **details):
    return {"check": name, "status": "pass", "window": window, "details": _jsonable(details)}


def _from_verdict(v):
    status = "pass" if v else ("hypothesis" if not v.applicable else "fail")
    return {"check": v.name, "status": status, "window": v.window, "reason": v.reason,
            "details": _jsonable(v.details)}


def _failure(name, err):
    status = "theorem-violation" if err.kind == "theorem-violation" else err.kind
    return {"check": name, "status": status, "reason": str(err)}


def run_check(job, name, task, cache):
    """Run one named check for a task and return a result row."""
    ctx = job.ctx if name not in ("n2", "koszul") else None
    M = job.module(task.get("M", "k"), f"task {task['id']}.M")
    N = job.module(task.get("N", "k"), f"task {task['id']}.N")

    def report():
        if "mth" not in cache:
            cache["mth"] = mth_verify(ctx, M, N)
        return cache["mth"]

    if name == "mth":
        r = report()
        lhs, rhs = rank_identity(r)
        return _verdict("mth", r.window, betti_Q=r.betti_Q, betti_R=r.betti_R, h_W=r.h_W,
                        unverifiable=len(r.unverifiable), defects=len(r.defects),
                        psi_phi=all(r.psi_phi_ok.values()),
                        delta_equals_minus_tau=all(r.delta_is_tau.values()),
                        excess=lhs, map_ranks=rhs)
    if name == "poincare1":
        PQ, PR = poincare_pair(ctx, M, N, report=report())
        return _from_verdict(check_poincare1(PQ, PR))
    if name == "poincare2":
        return _from_verdict(check_poincare2(ctx, M, N, report=report()))
    if name == "final":
        return _from_verdict(check_final_formula(ctx, M, N, report=report()))
    if name == "connec":
        out = connec_check(ctx, M, N, report())
        return _dict_verdict("connec", out)
    if name == "vanish":
        return _dict_verdict("vanish", vanish_verify(ctx, M, N))
    if name == "vh":
        return _vh(ctx, M, N, task, report())
    if name == "naturality":
        seeds = task.get("seeds", [job.seed, job.seed + 1])
        U1 = ctx.resolution(M, job.cap, seeds[0])
        U2 = ctx.resolution(M, job.cap, seeds[1])
        res = verify_naturality_and_independence(ctx, U1, U2, top=job.cap - 2)
        ok = all(all(v.values()) for v in res.values())
        row = _verdict("naturality", job.cap - 2, seeds=seeds,
                       distinct=U1.gens != U2.gens, by_module=res)
        if not ok:
            row["status"] = "fail"
        return row
    if name == "n2":
        return _from_verdict(check_n2_formula(job.Q, M, N, job.cap - 2))
    if name == "koszul":
        return _from_verdict(check_koszul_formula(job.Q, M, job.cap - 2))
    raise PreconditionError(f"unknown check {name!r}")


def _dict_verdict(name, out):
    if not out.get("applicable"):
        return {"check": name, "status": "hypothesis", "reason": out.get("reason", "")}
    return _verdict(name, out.get("window", -1), **{k: v for k, v in out.items()
                                                     if k not in ("applicable", "window")})


def vanishing_windows(betti, window):
    """Maximal runs [m, n] with n - m >= 1 and Tor^R_i = 0 for m <= i <= n <= window."""
    runs, start = [], None
    for i in range(window + 1):
        if betti[i] == 0:
            start = i if start is None else start
        else:
            if start is not None and i - 1 - start >= 1:
                runs.append((start, i - 1))
            start = None
    if start is not None and window - start >= 1:
        runs.append((start, window))
    return runs


def _vh(ctx, M, N, task, r):
    if "m" in task and "n" in task:
        windows = [(int(task["m"]), int(task["n"]))]
    else:
        windows = vanishing_windows(r.betti_R, r.top)
    if not windows:
        return {"check": "vh", "status": "hypothesis",
                "reason": "no window where Tor^R vanishes in two consecutive degrees"}
    results = []
    for m, n in windows:
        out = vh_verify(ctx, M, N, m, n, r)
        if not out.get("applicable"):
            return {"check": "vh", "status": "hypothesis", "reason": out["reason"]}
        results.append({"m": m, "n": n, **out})
    return _verdict("vh", r.window, windows=results)


def vh_search(job, candidates=None):
    """Search small modules for pairs with a vanishing window of Tor^R."""
    ctx = job.ctx
    names = candidates or ["k", "R", "S"]
    found = []
    for a in names:
        for b in names:
            M, N = job.module(a), job.module(b)
            try:
                r = mth_verify(ctx, M, N)
            except EzdError:
                continue
            for m, n in vanishing_windows(r.betti_R, r.top):
                found.append((a, b, m, n))
    return found


def cmd_check_ezd(job, tasks=None):
    Q = job.Q
    rows = []
    if Q.dim == 1:
        return [{"check": "exact_pair", "status": "hypothesis",
                 "reason": "the ring is a field; no exact pairs possible"}]
    H = hilbert_series_ring(Q)
    rows.append(_verdict("hilbert", H.n, hilbert=list(H.coeffs), embedding_dim=embedding_dim(Q)))
    if job.f is None or job.g is None:
        rows.append({"check": "exact_pair", "status": "precondition",
                     "reason": "elements f and g are required"})
        return rows
    ep = is_exact_pair(Q, job.f, job.g)
    rows.append({"check": "exact_pair", "status": "pass" if ep else "hypothesis",
                 "details": _jsonable(ep.as_dict())})
    if is_short(Q):
        for name, fn in (("ezhil_part1", lambda: check_ezhil_part1(Q, job.f, job.g)),
                         ("ezhil_part2", lambda: {"exact": check_ezhil_part2(Q, job.f)}),
                         ("conca", lambda: {"conca": is_conca_generator(Q, job.f)})):
            try:
                rows.append(_verdict(name, 2, **fn()))
            except EzdError as e:
                rows.append(_failure(name, e))
    else:
        rows.append({"check": "conca", "status": "hypothesis", "reason": "the ring is not short"})
    return rows


def cmd_verify_task(job, task):
    rows, cache = [], {}
    for name in task.get("checks", DEFAULT_CHECKS):
        try:
            rows.append(run_check(job, name, task, cache))
        except EzdError as e:
            rows.append(_failure(name, e))
            if name == "mth" or e.kind in ("precondition", "parse"):
                break
    return rows


def cmd_series_task(job, task):
    ctx = job.ctx
    M = job.module(task.get("M", "k"))
    N = job.module(task.get("N", "k"))
    r = mth_verify(ctx, M, N)
    PQ, PR = poincare_pair(ctx, M, N, report=r)
    rows = [_verdict("series", PQ.n, P_Q=_series_dict(PQ), P_R=_series_dict(PR),
                     H_Q=list(hilbert_series_ring(job.Q).coeffs),
                     H_R=list(hilbert_series_ring(ctx.R).coeffs),
                     H_M=list(hilbert_series_module(M).coeffs),
                     H_N=list(hilbert_series_module(N).coeffs))]
    rows.append(_from_verdict(check_poincare1(PQ, PR)))
    rows.append(_from_verdict(check_poincare2(ctx, M, N, report=r)))
    rows.append(_from_verdict(check_final_formula(ctx, M, N, report=r)))
    diag = {}
    for tag, p in (("P_Q", PQ), ("P_R", PR)):
        if p.n >= 6:
            g = growth_diagnostics(p)
            diag[tag] = {"cx_estimate": g.cx_estimate, "curv_estimate": round(g.curv_estimate, 6),
                         "tail": list(g.window)}
    rows.append({"check": "growth", "status": "diagnostic", "label": "diagnostic",
                 "details": diag})
    return rows


def cmd_tor_task(job, task):
    ctx = job.ctx
    M = job.module(task.get("M", "k"))
    N = job.module(task.get("N", "k"))
    ctx.check_hypotheses(M, N)
    top = job.cap - 2
    U = ctx.resolution(M)
    CQ = tor_Q(U, N)
    CR = tor_R(extract_lifting(U), ctx.qR, descend(N, ctx.qR))
    return [_verdict("tor", top, Q=[homology(CQ, n).dim for n in range(top + 1)],
                     R=[homology(CR, n).dim for n in range(top + 1)])]


COMMANDS = {"verify": cmd_verify_task, "series": cmd_series_task, "tor": cmd_tor_task}


def run_job(job, command, task_ids=None):
    """Execute a command; the report is ordered by task id."""
    t0 = time.perf_counter()
    out = {"command": command, "cap": job.cap, "seed": job.seed, "tasks": []}
    if command == "check-ezd":
        rows = cmd_check_ezd(job)
        out["tasks"].append({"id": "ring", "results": rows})
    else:
        fn = COMMANDS[command]
        tasks = [t for t in job.tasks if task_ids is None or str(t["id"]) in task_ids]
        if task_ids is not None:
            missing = set(task_ids) - {str(t["id"]) for t in job.tasks}
            if missing:
                raise ParseError(f"unknown task ids {sorted(missing)}", "--tasks")
        for t in tasks:
            t1 = time.perf_counter()
            try:
                rows = fn(job, t)
            except EzdError as e:
                rows = [_failure(command, e)]
            out["tasks"].append({"id": str(t["id"]), "results": rows,
                                 "timing": round(time.perf_counter() - t1, 3)})
    out["status"] = overall_status(out)
    out["timing"] = round(time.perf_counter() - t0, 3)
    return out


def overall_status(report):
    statuses = {r["status"] for t in report["tasks"] for r in t["results"]}
    if statuses & {"theorem-violation", "fail"}:
        return "theorem-violation"
    if statuses & {"parse", "precondition", "truncation-boundary"}:
        return "input-error"
    if "hypothesis" in statuses:
        return "hypothesis"
    return "pass"


EXIT_CODES = {"pass": 0, "hypothesis": 1, "theorem-violation": 2, "input-error": 3}


def strip_timing(report):
    """A copy without timing fields, for determinism comparisons."""
    out = {k: v for k, v in report.items() if k != "timing"}
    out["tasks"] = [{k: v for k, v in t.items() if k != "timing"} for t in report["tasks"]]
    return out


__all__ = [
    "Job",
    "load_job",
    "build_ring",
    "build_job",
    "run_job",
    "vh_search",
    "vanishing_windows",
    "strip_timing",
    "EXIT_CODES",
    "TruncatedSeries",
    "Verdict",
]
