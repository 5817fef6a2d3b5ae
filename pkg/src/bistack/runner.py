"""Execute the named checks declared in a workspace document.

Every check is a dict with an ``op`` field plus references into the
document's declared structures.  Reports are plain dicts, deterministic
except for the ``elapsed_s`` timing field.
"""

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor

from .descent import is_2stack, is_2stack_direct, is_stack_catvalued, \
    is_subcanonical
from .errors import UnknownCheck
from .fincat import check_category
from .report import Budget, guarded
from .sieves import check_bisieve, check_bitopology, check_T1, check_T2, \
    check_T3
from .sigma_colim import is_sigma_bicolim_bisieve
from .two_cat import check_two_category
from .workspace import WorkspaceDoc, load_data

REPORT_SCHEMA = "bistack-report/1"

_TIMING_FIELDS = ("elapsed_s",)


def _dispatch(doc, body, budget):
    op = body["op"]
    if op == "category":
        return check_category(doc.cats[body["cat"]], budget)
    if op == "two_category":
        return check_two_category(doc.two_cats[body["two_cat"]], budget)
    if op == "bisieve":
        return check_bisieve(doc.bisieves[body["bisieve"]], budget)
    if op == "bitopology":
        return check_bitopology(doc.bitopologies[body["bitopology"]], budget)
    if op in ("T1", "T2", "T3"):
        fn = {"T1": check_T1, "T2": check_T2, "T3": check_T3}[op]
        return fn(doc.bitopologies[body["bitopology"]], budget)
    if op == "sigma_bicolim":
        return is_sigma_bicolim_bisieve(doc.bisieves[body["bisieve"]], budget)
    if op == "subcanonical":
        tau = doc.bitopologies[body["bitopology"]]
        return is_subcanonical(tau.k, tau, budget)
    if op == "stack":
        return is_stack_catvalued(doc.presheaves[body["presheaf"]],
                                  doc.bitopologies[body["bitopology"]],
                                  budget)
    if op == "2stack":
        return is_2stack(doc.trihoms[body["trihom"]],
                         doc.bitopologies[body["bitopology"]], budget)
    if op == "2stack_direct":
        return is_2stack_direct(doc.trihoms[body["trihom"]],
                                doc.bitopologies[body["bitopology"]], budget)
    raise UnknownCheck("unknown check op %r" % op)


def run_check(doc, name, limit=None):
    """Run one named check; a report dict."""
    if name not in doc.checks:
        raise UnknownCheck("no check named %r (have: %s)"
                           % (name, ", ".join(sorted(doc.checks)) or "none"))
    body = doc.checks[name]
    budget = Budget(limit)
    start = time.monotonic()
    report = guarded(name, budget, _dispatch, doc, body, budget)
    elapsed = time.monotonic() - start
    return {
        "schema": REPORT_SCHEMA,
        "check": name,
        "op": body["op"],
        "budget_limit": limit,
        "verdict": report.verdict,
        "details": list(report.details),
        "witness": report.witness,
        "steps": budget.steps,
        "elapsed_s": round(elapsed, 6),
    }


def run_all(doc, limit=None):
    """Run every declared check; reports sorted by check name.

    DKIT_THREADS caps worker parallelism (default 1, fully sequential).
    """
    names = sorted(doc.checks)
    threads = max(1, int(os.environ.get("DKIT_THREADS", "1")))
    if threads == 1 or len(names) <= 1:
        return [run_check(doc, n, limit) for n in names]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {n: pool.submit(run_check, doc, n, limit) for n in names}
        return [futures[n].result() for n in names]


def strip_timing(report):
    return {k: v for k, v in report.items() if k not in _TIMING_FIELDS}


def replay(report, doc):
    """Re-run the check recorded in a report against a document.

    Returns (reproduced, fresh_report); reproduced is True when the fresh
    report equals the recorded one in every field except timing.
    """
    fresh = run_check(doc, report["check"], report.get("budget_limit"))
    same = strip_timing(fresh) == strip_timing(report)
    return same, fresh


def report_text(report):
    lines = ["%s: %s" % (report["check"], report["verdict"])]
    for d in report["details"]:
        lines.append("  %s" % d)
    if report["witness"]:
        lines.append("  witness: %s" % json.dumps(report["witness"],
                                                  sort_keys=True))
    return "\n".join(lines)
