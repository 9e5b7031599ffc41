"""Exhaustive verification driver over the default corpus.

Each corpus group is one work item; a work item returns a list of check
records.  Records carry stable ids and the report is sorted by id, so the JSON
output does not depend on the number of workers.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations

from .config import BudgetExceeded, default_budget
from .corpus import CorpusEntry, builtin, default_corpus, format_perm
from .corpus import extension_tau, factor_subgroups, named_subgroups, wreath_base, wreath_product, make_gl32
from .hall import (
    PrimeSet,
    frattini_holds,
    hall_subgroups,
    is_hall_subgroup,
    is_pi_separable,
    is_pronormal,
    is_strongly_pronormal,
    lemma16_test,
    recheck_witness,
    sylow_subgroup,
)
from .structure import (
    Subgroup,
    as_subgroup,
    conjugacy_class,
    conjugacy_classes,
    conjugate,
    intersection,
    is_normal,
    join,
    normal_subgroups,
    normalizer,
    quotient,
    subgroups,
    trivial,
)
from .theorems import e_pi_criterion, pronormal_hall_in_normal

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SIMPLE_GROUPS = ("a5", "a6", "gl32")
PRODUCT_GROUPS = ("s3xs3", "a5xa5")
# above this order only one subgroup per conjugacy class is tested (pronormality
# is invariant under conjugation)
ALL_MEMBERS_ORDER = 1000
LEMMA14_MAX_ORDER = 200
CONJECTURE_MAX_ORDER = 400


@dataclass
class CheckRecord:
    id: str
    check: str
    group: str
    params: dict
    verdict: str  # "pass", "fail" or "skipped"
    witness: dict = field(default_factory=dict)
    reason: str = ""
    mandatory: bool = True
    seconds: float = 0.0


@dataclass
class Options:
    budget: int = field(default_factory=default_budget)
    include_conjecture_search: bool = False


def gens_text(H: Subgroup) -> list[str]:
    return [format_perm(p) for p in H.generators()]


def trace_digest(w) -> dict:
    t = w.subject.table
    rows = [[format_perm(t.perm(g)), None if x is None else format_perm(t.perm(x))]
            for g, x in w.trace]
    digest = hashlib.sha256(json.dumps(rows).encode()).hexdigest()[:16]
    return {"coset_reps": len(rows), "trace_sha256": digest}


def pi_subsets(n: int) -> list[PrimeSet]:
    primes = PrimeSet.of(n).primes
    return [PrimeSet(c) for k in range(1, len(primes) + 1) for c in combinations(primes, k)]


def _pi_label(pi: PrimeSet) -> str:
    return ",".join(map(str, pi.primes))


class _GroupRun:
    """All mandatory checks for one corpus group."""

    def __init__(self, entry: CorpusEntry, opts: Options):
        self.entry = entry
        self.name = entry.name
        self.opts = opts
        self.records: list[CheckRecord] = []
        self.witnesses = []

    def add(self, check, key, params, ok, witness=None, reason="", mandatory=True, seconds=0.0):
        verdict = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        self.records.append(CheckRecord(
            f"{self.name}/{check}/{key}", check, self.name, params, verdict,
            witness or {}, reason, mandatory, round(seconds, 3)))

    def guarded(self, check, key, params, fn, mandatory=True):
        start = time.perf_counter()
        try:
            ok, witness = fn()
            reason = ""
        except BudgetExceeded as exc:
            ok, witness, reason = "skipped", {}, f"budget: {exc}"
        except AssertionError as exc:
            ok, witness, reason = False, {}, f"assertion: {exc}"
        self.add(check, key, params, ok, witness, reason, mandatory, time.perf_counter() - start)

    def pronormal(self, G, H):
        w = is_pronormal(G, H)
        self.witnesses.append(w)
        return w

    def run(self) -> list[CheckRecord]:
        start = time.perf_counter()
        G = self.entry.build()
        self.G = as_subgroup(G)
        self.add("order", "-", {}, G.order() == self.entry.expected_order,
                 {"order": G.order()}, seconds=time.perf_counter() - start)
        self.normals = normal_subgroups(self.G)
        self.pis = pi_subsets(self.G.order)
        self.reports = {pi: hall_subgroups(self.G, pi) for pi in self.pis}
        self.check_sweep()
        self.check_lemma4()
        self.check_lemma5()
        self.check_sylow()
        self.check_lemma10_11()
        self.check_lemma16()
        if self.G.order <= LEMMA14_MAX_ORDER:
            self.check_lemma14()
        if self.name in SIMPLE_GROUPS:
            self.check_lemma7()
        if self.name in PRODUCT_GROUPS:
            self.check_lemma12()
        if self.name == "gl32ext":
            self.check_remark1()
        if self.opts.include_conjecture_search:
            self.search_remark2()
            self.search_remark3()
        self.check_witnesses()
        return self.records

    def a_label(self, A: Subgroup) -> str:
        i = next(k for k, N in enumerate(self.normals) if N == A)
        return f"N{i}o{A.order}"

    # -- sweeps -----------------------------------------------------------

    def check_sweep(self):
        for A in self.normals:
            for pi in self.pis:
                key = f"{self.a_label(A)}/pi={_pi_label(pi)}"
                params = {"A": self.a_label(A), "pi": list(pi.primes)}

                def cor3(A=A, pi=pi):
                    res = e_pi_criterion(self.G, A, pi)
                    direct = self.reports[pi].satisfies_E
                    return res.verdict == direct, {"E": direct, "quotient_E": res.quotient_in_E}

                self.guarded("corollary3", key, params, cor3)
                if not self.reports[pi].satisfies_E:
                    continue

                def thm1(A=A, pi=pi):
                    H, trace = pronormal_hall_in_normal(self.G, A, pi)
                    w = self.pronormal(self.G, H)
                    ok = is_hall_subgroup(A, H, pi) and w.verdict
                    ok = ok and frattini_holds(self.G, A, H)
                    orders = [lv.group_order for lv in trace.levels]
                    ok = ok and all(a > b for a, b in zip(orders, orders[1:]))
                    ok = ok and 2 ** trace.depth <= max(self.G.order, 1)
                    return ok, {"H": gens_text(H), "order": H.order, "depth": trace.depth,
                                "B_orders": [lv.B_order for lv in trace.levels],
                                **trace_digest(w)}

                self.guarded("theorem1", key, params, thm1)
                if A == self.G:
                    def cor2(pi=pi):
                        reps = self.reports[pi].representatives()
                        some = any(is_pronormal(self.G, H).verdict for H in reps)
                        return some, {"classes": len(reps)}

                    self.guarded("corollary2", f"pi={_pi_label(pi)}", {"pi": list(pi.primes)}, cor2)

    def check_lemma4(self):
        for pi in self.pis:
            members = self.reports[pi].members()
            if not members:
                continue
            for A in self.normals:
                key = f"{self.a_label(A)}/pi={_pi_label(pi)}"

                def run(A=A, pi=pi, members=members):
                    ok = all(is_hall_subgroup(A, intersection(H, A), pi) for H in members)
                    if not A.is_trivial() and A != self.G:
                        phi = quotient(self.G, A)
                        Q = phi.whole_target()
                        ok = ok and all(is_hall_subgroup(Q, phi.forward(H), pi) for H in members)
                    return ok, {"members": len(members)}

                self.guarded("lemma4", key, {"A": self.a_label(A), "pi": list(pi.primes)}, run)

    def check_lemma5(self):
        for pi in self.pis:
            def run(pi=pi):
                sep = is_pi_separable(self.G, pi)
                classes = len(self.reports[pi].classes)
                return (not sep) or classes == 1, {"separable": sep, "classes": classes}

            self.guarded("lemma5", f"pi={_pi_label(pi)}", {"pi": list(pi.primes)}, run)

    def _class_members(self, cls):
        return cls.members if self.G.order <= ALL_MEMBERS_ORDER else [cls.representative]

    def check_sylow(self):
        for p in PrimeSet.of(self.G.order):
            def run(p=p):
                cls = conjugacy_class(self.G, sylow_subgroup(self.G, p))
                tested = self._class_members(cls)
                ok = all(self.pronormal(self.G, P).verdict for P in tested)
                return ok, {"sylow_count": cls.size, "tested": len(tested)}

            self.guarded("sylow", f"p={p}", {"p": p}, run)

    def check_lemma7(self):
        for pi in self.pis:
            def run(pi=pi):
                members = self.reports[pi].members()
                ok = all(is_pronormal(self.G, H).verdict for H in members)
                return ok, {"members": len(members), "classes": len(self.reports[pi].classes)}

            self.guarded("lemma7", f"pi={_pi_label(pi)}", {"pi": list(pi.primes)}, run)

    def _pronormal_reps(self, pi):
        return [H for H in self.reports[pi].representatives() if is_pronormal(self.G, H).verdict]

    def check_lemma10_11(self):
        for pi in self.pis:
            reps = self._pronormal_reps(pi)
            if not reps:
                continue
            for A in self.normals:
                if A.is_trivial() or A == self.G:
                    continue

                def l10(A=A, reps=reps):
                    phi = quotient(self.G, A)
                    Q = phi.whole_target()
                    return all(is_pronormal(Q, phi.forward(H)).verdict for H in reps), {"tested": len(reps)}

                self.guarded("lemma10", f"{self.a_label(A)}/pi={_pi_label(pi)}",
                             {"A": self.a_label(A), "pi": list(pi.primes)}, l10)

            def l11(reps=reps):
                tested = 0
                for H in reps:
                    over = subgroups(self.G, self.opts.budget, start=H)
                    step = max(1, len(over) // 12)
                    for K in over[::step]:
                        tested += 1
                        if not is_pronormal(K, H).verdict:
                            return False, {"tested": tested}
                return True, {"tested": tested}

            self.guarded("lemma11", f"pi={_pi_label(pi)}", {"pi": list(pi.primes)}, l11)

    def check_lemma14(self):
        def run():
            reps = [c.representative for c in conjugacy_classes(self.G, subgroups(self.G, self.opts.budget))]
            pairs = 0
            for H in reps:
                lhs = is_pronormal(self.G, H).verdict
                for A in self.normals:
                    HA = join(self.G, H, A)
                    rhs = (is_pronormal(self.G, HA).verdict
                           and is_pronormal(normalizer(self.G, HA), H).verdict)
                    pairs += 1
                    if lhs != rhs:
                        return False, {"pairs": pairs, "H": gens_text(H)}
            return True, {"pairs": pairs, "subgroup_classes": len(reps)}

        self.guarded("lemma14", "-", {}, run)

    def check_lemma16(self):
        for A in self.normals:
            for B in self.normals:
                if not B.issubgroup(A):
                    continue
                for pi in self.pis:
                    key = f"{self.a_label(B)}/{self.a_label(A)}/pi={_pi_label(pi)}"

                    def run(A=A, B=B, pi=pi):
                        halls = hall_subgroups(A, pi)
                        reps = [c.representative for c in conjugacy_classes(self.G, halls.members())]
                        held = 0
                        for H in reps:
                            res = lemma16_test(self.G, B, A, H, pi)
                            held += res.premises
                        return True, {"hall_classes": len(reps), "premises_held": held}

                    params = {"B": self.a_label(B), "A": self.a_label(A), "pi": list(pi.primes)}
                    self.guarded("lemma16", key, params, run)

    def check_lemma12(self):
        factors = [builtin(n) for n in self.entry.factors]
        parts = factor_subgroups(self.G.ambient, factors)

        def choices(Gi):
            opts = {trivial(Gi).key: trivial(Gi), Gi.key: Gi}
            for pi in pi_subsets(Gi.order):
                for H in hall_subgroups(Gi, pi).representatives():
                    opts.setdefault(H.key, H)
            return sorted(opts.values(), key=lambda S: (S.order, S.sort_key()))

        def run():
            ok = all(is_normal(self.G, P) for P in parts)
            per = [[H for H in choices(P) if is_pronormal(P, H).verdict] for P in parts]
            tested = 0
            for H1 in per[0]:
                for H2 in per[1]:
                    tested += 1
                    ok = ok and self.pronormal(self.G, join(self.G, H1, H2)).verdict
            return ok, {"combinations": tested}

        self.guarded("lemma12", "-", {"factors": self.entry.factors}, run)

    def check_remark1(self):
        G = self.G
        pi = PrimeSet((2, 3))
        named = named_subgroups("gl32ext", G.ambient)
        A, H1, H2 = named["A"], named["H1"], named["H2"]

        def run():
            rep = hall_subgroups(A, pi)
            sizes = [c.size for c in rep.classes]
            ok = sizes == [7, 7] and all(H.order == 24 for H in rep.members())
            c1 = next(c for c in rep.classes if H1 in c)
            c2 = next(c for c in rep.classes if H2 in c)
            tau = G.table.index(extension_tau())
            swapped = c1 is not c2 and {conjugate(H, tau).key for H in c1.members} == c2.keys()
            w = self.pronormal(G, H1)
            not_e = not self.reports[pi].satisfies_E
            crit = e_pi_criterion(G, A, pi)
            ok = ok and swapped and not w.verdict and not_e and not crit.verdict
            failing = w.failing()
            return ok, {"class_sizes": sizes, "tau_swaps": swapped, "H1_pronormal": w.verdict,
                        "failing_g": None if failing is None else format_perm(G.table.perm(failing)),
                        "E": not not_e, "criterion": crit.verdict}

        self.guarded("remark1", "-", {"pi": [2, 3]}, run)

    def check_witnesses(self):
        def run():
            total = sum(1 for w in self.witnesses for _, x in w.trace if x is not None)
            ok = all(recheck_witness(w) for w in self.witnesses)
            return ok, {"witnesses": len(self.witnesses), "conjugators": total}

        self.guarded("witness", "-", {}, run)

    # -- informational searches ------------------------------------------

    def search_remark2(self):
        for pi in self.pis:
            reps = self.reports[pi].representatives()
            if not reps:
                continue

            def run(pi=pi, reps=reps):
                if self.G.order > CONJECTURE_MAX_ORDER:
                    raise BudgetExceeded(f"order {self.G.order} above {CONJECTURE_MAX_ORDER}")
                found = []
                for H in reps:
                    prn = is_pronormal(self.G, H).verdict
                    strong = is_strongly_pronormal(self.G, H, self.opts.budget)
                    found.append({"H": gens_text(H), "pronormal": prn, "strong": strong})
                counter = [f for f in found if f["pronormal"] and not f["strong"]]
                return True, {"hall_classes": found, "has_strong": any(f["strong"] for f in found),
                              "counterexamples": len(counter)}

            self.guarded("remark2", f"pi={_pi_label(pi)}", {"pi": list(pi.primes)}, run,
                         mandatory=False)

    def search_remark3(self):
        for pi in self.pis:
            reps = self.reports[pi].representatives()
            if not reps:
                continue

            def run(pi=pi, reps=reps):
                counter = []
                for H in reps:
                    if not is_pronormal(self.G, H).verdict:
                        continue
                    for A in self.normals:
                        HA = intersection(H, A)
                        c2 = is_pronormal(A, HA).verdict
                        c3 = frattini_holds(self.G, A, HA)
                        if not (c2 and c3):
                            counter.append({"H": gens_text(H), "A": self.a_label(A),
                                            "cond2": c2, "cond3": c3})
                return True, {"counterexamples": counter}

            self.guarded("remark3", f"pi={_pi_label(pi)}", {"pi": list(pi.primes)}, run,
                         mandatory=False)


def run_entry(entry: CorpusEntry, opts: Options) -> list[CheckRecord]:
    return _GroupRun(entry, opts).run()


def _wreath_record() -> CheckRecord:
    start = time.perf_counter()
    X = make_gl32()
    W = wreath_product(X, 5)
    base = wreath_base(W, X, 5)
    ok = W.order() == 168**5 * 5 and base.order() == 168**5
    ok = ok and all(W.contains(g) for g in base.generators)
    return CheckRecord("gl32wrz5/wreath_natural_size/-", "wreath_natural_size", "gl32wrz5",
                       {"pi": [2, 3], "p": 5}, "pass" if ok else "fail",
                       {"order": W.order(), "base_order": base.order(), "status": "out_of_budget"},
                       "nonpronormality needs exhaustive search over a group of order "
                       f"{W.order()}; only the construction is checked",
                       mandatory=False, seconds=round(time.perf_counter() - start, 3))


def verify_corpus(opts: Options | None = None, jobs: int = 1, groups: list[str] | None = None,
                  allow_skip: bool = False) -> dict:
    opts = opts or Options()
    entries = default_corpus()
    if groups:
        entries = [e for e in entries if e.name in set(groups)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run_entry, entries, [opts] * len(entries)))
    else:
        chunks = [run_entry(e, opts) for e in entries]
    records = [r for chunk in chunks for r in chunk]
    records.append(_wreath_record())
    return build_report(records, opts, allow_skip)


def build_report(records: list[CheckRecord], opts: Options, allow_skip: bool) -> dict:
    records = sorted(records, key=lambda r: r.id)
    summary: dict = {}
    for r in records:
        s = summary.setdefault(r.check, {"pass": 0, "fail": 0, "skipped": 0, "mandatory": r.mandatory})
        s[r.verdict] += 1
    bad = [r for r in records if r.mandatory and
           (r.verdict == "fail" or (r.verdict == "skipped" and not allow_skip))]
    return {
        "schema_version": SCHEMA_VERSION,
        "aggregate": "pass" if not bad else "fail",
        "budget": opts.budget,
        "conjecture_search": opts.include_conjecture_search,
        "summary": summary,
        "checks": [asdict(r) for r in records if r.mandatory],
        "informational": [asdict(r) for r in records if not r.mandatory],
    }


def report_json(report: dict, timings: bool = False) -> str:
    def strip(rows):
        return [{k: v for k, v in r.items() if timings or k != "seconds"} for r in rows]

    out = dict(report, checks=strip(report["checks"]), informational=strip(report["informational"]))
    return json.dumps(out, indent=1, sort_keys=True) + "\n"
