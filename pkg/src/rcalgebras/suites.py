"""Named verification suites behind `rcalg verify`.

Each suite returns a SuiteReport with one Check per verified fact; all
comparisons are exact in Q.  Suites that take an algebra accept an
AlgebraSystem (builtin or loaded from JSON); called without one they run
over their default algebras.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .algebra import reduce_mod_relations, weight_of, ZERO
from .brackets import (
    EMPTY_WINDOW,
    bracket_support_window,
    canonical_bracket,
    standard_bracket,
)
from .catalog import AlgebraSystem, builtin
from .ckseries import (
    CANONICAL_ITERATE,
    D_POWER,
    ck_series,
    exp_series,
    verify_lemma42,
)
from .derivations import check_sl2_triple
from .extension import (
    ExtensionSpec,
    build_extension,
    d_power_e2,
    e2_profile,
    kk_theta_e2,
    kk_theta_e2_closed,
    kk_theta_f,
    kk_theta_f_closed,
    partial_iter_expansion,
    verify_bracket_equality,
)
from .qseries import check_ramanujan
from .rrc import RRCShapeError, certify_rrc, from_canonical, rrc_sl2_data, strip_rrc


@dataclass
class Check:
    name: str
    status: str  # "pass" or "fail"
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, "pass" if ok else "fail", detail))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [
                {"name": c.name, "status": c.status, "detail": c.detail}
                for c in self.checks
            ],
        }

    def __str__(self):
        lines = [f"suite {self.suite}: {'pass' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            detail = f"  [{c.detail}]" if c.detail and not c.ok else ""
            lines.append(f"  {mark} {c.name}{detail}")
        return "\n".join(lines)


def _extension_of(system: AlgebraSystem) -> ExtensionSpec:
    """An E2-extension for either kind of entry (standard ones get stripped)."""
    if system.kind == "canonical":
        return system.extension()
    rrc = certify_rrc(system.derivation, system.algebra, t1=system.e2_name)
    base, cd = strip_rrc(rrc)
    return build_extension(base, cd, e2_name=system.e2_name)


# ---------------------------------------------------------------- thm-main1

def _bracket_pairs(system: AlgebraSystem, ext: ExtensionSpec):
    if system.name == "classical":
        base = system.algebra
        elems = [
            ("E4", base.gen("E4")),
            ("E6", base.gen("E6")),
            ("E4*E6", base.gen("E4") * base.gen("E6")),
        ]
    else:
        base = ext.base
        elems = [(name, base.gen(name)) for name, _ in base.generators]
    return [(fn, f, gn, g) for fn, f in elems for gn, g in elems]


def suite_thm_main1(system: AlgebraSystem = None, max_n: int = None) -> SuiteReport:
    report = SuiteReport("thm-main1")
    if system is None:
        for name, n in (("classical", 6), ("negweights", 10), ("fracweights", 6)):
            sub = suite_thm_main1(builtin(name), max_n=max_n or n)
            report.checks.extend(sub.checks)
        return report
    ext = _extension_of(system)
    if max_n is None:
        max_n = 10 if system.name == "negweights" else 6
    for fn, f, gn, g in _bracket_pairs(system, ext):
        res = verify_bracket_equality(ext, f, g, max_n)
        report.add(
            f"{system.name}: canonical = standard for ({fn}, {gn}), n <= {max_n}",
            res.passed,
            str(res),
        )
    # the forced-zero band for negative integer weight pairs
    for fn, f, gn, g in _bracket_pairs(system, ext):
        k = weight_of(f)
        l = weight_of(g)
        if isinstance(k, str) or isinstance(l, str):
            continue
        if not (k.denominator == 1 and l.denominator == 1 and k < 0 and l < 0):
            continue
        ki, li = int(k), int(l)
        if li > ki:
            ki, li = li, ki
            f, g = g, f
            fn, gn = gn, fn
        window_ns = [
            n for n in range(max_n + 1)
            if bracket_support_window(ki, li, n) == EMPTY_WINDOW
        ]
        if not window_ns:
            continue
        zero_ok = all(
            standard_bracket(ext.D, ext.lift(f), ext.lift(g), n).is_zero()
            and canonical_bracket(ext.cd_ext, ext.lift(f), ext.lift(g), n).is_zero()
            for n in window_ns
        )
        report.add(
            f"{system.name}: forced-zero window for ({fn}, {gn}), "
            f"n in {window_ns}",
            zero_ok,
        )
    return report


# ----------------------------------------------------------------------- kk

def _kk_checks(report: SuiteReport, system_name: str, ext: ExtensionSpec,
               elems, max_n: int):
    for fname, f in elems:
        k = ext.lift(f).homogeneous_weight()
        for n in range(max_n + 1):
            theta = kk_theta_f(ext, f, n)
            profile = e2_profile(theta, ext)
            in_m = all(i == 0 for i in profile)
            w = weight_of(theta)
            w_ok = w == ZERO or w == k + 2 + 2 * n
            closed_ok = (theta - kk_theta_f_closed(ext, f, n)).is_zero()
            report.add(
                f"{system_name}: theta^({n}) {fname} lands in the base at "
                f"weight {k + 2 + 2 * n}",
                in_m and w_ok,
                f"E2-degrees {sorted(profile)}, weight {w}",
            )
            report.add(
                f"{system_name}: theta^({n}) {fname} matches its closed form",
                closed_ok,
            )
    for n in range(max_n + 1):
        theta = kk_theta_e2(ext, n)
        profile = e2_profile(theta, ext)
        in_m = all(i == 0 for i in profile)
        w = weight_of(theta)
        w_ok = w == ZERO or w == 4 + 2 * n
        report.add(
            f"{system_name}: theta^({n}) E2 lands in the base at weight {4 + 2 * n}",
            in_m and w_ok,
            f"E2-degrees {sorted(profile)}, weight {w}",
        )
        if n % 2 == 1:
            report.add(
                f"{system_name}: theta^({n}) E2 vanishes for odd n",
                theta.is_zero(),
            )
        else:
            report.add(
                f"{system_name}: theta^({n}) E2 matches its closed form",
                (theta - kk_theta_e2_closed(ext, n)).is_zero(),
            )


def suite_kk(max_n: int = 5) -> SuiteReport:
    report = SuiteReport("kk")
    classical = builtin("classical")
    ext = classical.extension()
    base = classical.algebra
    _kk_checks(report, "classical", ext,
               [("E4", base.gen("E4")), ("E6", base.gen("E6"))], max_n)
    neg = builtin("negweights")
    next_ = neg.extension()
    nbase = neg.algebra
    _kk_checks(report, "negweights", next_,
               [("n1", nbase.gen("n1")), ("n2", nbase.gen("n2"))], max_n)
    return report


# ----------------------------------------------------------------------- ck

def _case1_product_checks(report: SuiteReport, ext: ExtensionSpec, name, f, g, order):
    k = int(ext.lift(f).homogeneous_weight())
    l = int(ext.lift(g).homogeneous_weight())
    ck_f = ck_series(D_POWER, f, order, ext)
    ck_g = ck_series(D_POWER, g, order, ext)
    prod_minus = ck_f.minus.alternate() * ck_g.minus
    ok = True
    for n in range(min(-k, order) + 1):
        expected = standard_bracket(ext.D, ext.lift(f), ext.lift(g), n) * (
            factorial(-k - n) * factorial(-l - n)
        )
        if prod_minus.coeffs[n] != expected:
            ok = False
    report.add(f"minus-part product encodes the brackets for {name}, n <= {-k}", ok)
    prod_plus = ck_f.plus.alternate() * ck_g.plus
    ok = True
    for n in range(-k - l + 2, order + 1):
        expected = standard_bracket(ext.D, ext.lift(f), ext.lift(g), n) * Fraction(
            1, factorial(k + n - 1) * factorial(l + n - 1)
        )
        if prod_plus.coeffs[n] != expected:
            ok = False
    report.add(
        f"plus-part product encodes the brackets for {name}, n >= {-k - l + 2}", ok
    )


def suite_ck(order: int = 8) -> SuiteReport:
    report = SuiteReport("ck")
    neg = builtin("negweights")
    negext = neg.extension()
    nbase = neg.algebra
    frac = builtin("fracweights")
    fracext = frac.extension()
    fbase = frac.algebra
    classical = builtin("classical")
    cext = classical.extension()

    sweep = [
        ("negweights", negext, "n3", nbase.gen("n3")),          # weight -3
        ("negweights", negext, "n2", nbase.gen("n2")),          # weight -2
        ("negweights", negext, "n1", nbase.gen("n1")),          # weight -1
        ("negweights", negext, "1", nbase.one()),               # weight 0
        ("fracweights", fracext, "h", fbase.gen("h")),          # weight 1/2
        ("fracweights", fracext, "h^2", fbase.gen("h") ** 2),   # weight 1
        ("fracweights", fracext, "h^4", fbase.gen("h") ** 4),   # weight 2
        ("fracweights", fracext, "u", fbase.gen("u")),          # weight 5/2
        ("fracweights", fracext, "h^6", fbase.gen("h") ** 6),   # weight 3
        ("classical", cext, "E4", classical.algebra.gen("E4")),  # weight 4
    ]
    for sysname, ext, fname, f in sweep:
        res = verify_lemma42(ext, f, order)
        report.add(
            f"{sysname}: CK transfer for {fname} (weight {res.weight}) at order {order}",
            res.passed,
            str(res),
        )

    pairs = [("n1", "n1"), ("n1", "n2"), ("n2", "n2"), ("n1", "n3"),
             ("n2", "n3"), ("n3", "n3")]
    for fn, gn in pairs:
        f, g = nbase.gen(fn), nbase.gen(gn)
        # the identities assume l <= k, i.e. |l| >= |k|
        _case1_product_checks(report, negext, f"({fn}, {gn})", f, g, order)

    for sysname, ext in (("classical", cext), ("negweights", negext)):
        ck_d = ck_series(D_POWER, ext.e2, order, ext)
        ck_p = ck_series(CANONICAL_ITERATE, ext.e2, order, ext)
        emx = exp_series(ext.e2, order, sign=-1)
        report.add(
            f"{sysname}: CK transfer for the adjoined E2 at order {order}",
            (emx * ck_d.total) == ck_p.total,
        )
    return report


# ---------------------------------------------------------------------- psi

def suite_psi(max_n: int = 8) -> SuiteReport:
    report = SuiteReport("psi")
    for sysname in ("classical", "fracweights"):
        ext = builtin(sysname).extension()
        ladder_ok = True
        for n in range(max_n + 1):
            p = ext.psi(n)
            profile = e2_profile(p, ext)
            free = all(i == 0 for i in profile)
            w = weight_of(p)
            w_ok = w == ZERO or w == 2 * n + 2
            rec = ext.partial_iterate(ext.e2, n) - (
                (ext.e2 ** (n + 1)) * (factorial(n) * (-1) ** n)
            )
            if not (free and w_ok and (rec - p).is_zero()):
                ladder_ok = False
        report.add(
            f"{sysname}: Psi_n is E2-free of weight 2n+2 and matches the "
            f"E2-iterates, n <= {max_n}",
            ladder_ok,
        )
        power_ok = True
        for n in range(max_n + 1):
            try:
                d_power_e2(ext, n)
            except AssertionError:
                power_ok = False
        report.add(
            f"{sysname}: closed form of D^(n+1) E2 holds for n <= {max_n}",
            power_ok,
        )
        expansion_ok = all(
            (
                ext.partial_iterate(ext.e2, n)
                - partial_iter_expansion(ext, ext.e2, n)
            ).is_zero()
            for n in range(7)
        )
        report.add(
            f"{sysname}: E2-iterates match their expansion in D-powers, n <= 6",
            expansion_ok,
        )
    binom_ok = all(
        sum(
            (-1) ** j * Fraction(
                factorial(n + 1) * factorial(n + 2),
                factorial(j + 1) * factorial(n + 1 - j),
            )
            for j in range(n + 2)
        )
        == factorial(n + 1)
        for n in range(13)
    )
    report.add("alternating factorial identity, n <= 12", binom_ok)

    ext = builtin("classical").extension()
    e4 = ext.lift(builtin("classical").algebra.gen("E4"))
    transfer_ok = all(
        (
            standard_bracket(ext.D, ext.e2, e4, n)
            - canonical_bracket(ext.cd_ext, ext.e2, e4, n)
        ).is_zero()
        and (
            standard_bracket(ext.D, ext.e2, ext.e2, n)
            - canonical_bracket(ext.cd_ext, ext.e2, ext.e2, n)
        ).is_zero()
        for n in range(7)
    )
    report.add("classical: brackets with E2 transfer to the canonical side, n <= 6",
               transfer_ok)
    return report


# ---------------------------------------------------------------------- sl2

def suite_sl2(system: AlgebraSystem = None) -> SuiteReport:
    report = SuiteReport("sl2")
    if system is None:
        for name in ("classical", "ramanujan", "ramanujan_rescaled", "mirror_quintic"):
            sub = suite_sl2(builtin(name))
            report.checks.extend(sub.checks)
        return report
    D, W, delta = system.sl2_triple()
    res = check_sl2_triple(D, W, delta, D.algebra)
    by_relation = {}
    for rel, gen, ok, _ in res.entries:
        by_relation.setdefault(rel, []).append((gen, ok))
    for rel, entries in by_relation.items():
        bad = [g for g, ok in entries if not ok]
        report.add(
            f"{system.name}: {rel} on every generator",
            not bad,
            f"failing generators: {', '.join(bad)}" if bad else "",
        )
    return report


# ---------------------------------------------------------------- rrc-shape

def suite_rrc_shape() -> SuiteReport:
    report = SuiteReport("rrc-shape")
    rescaled = builtin("ramanujan_rescaled")
    try:
        system = certify_rrc(rescaled.derivation, rescaled.algebra, t1="t1")
        p1 = system.parts["t1"]
        expected = rescaled.algebra.parse("-1/144*t2")
        report.add(
            "rescaled Ramanujan system certifies with P1 = -t2/144",
            (p1 - expected).is_zero(),
        )
    except RRCShapeError as e:
        report.add("rescaled Ramanujan system certifies with P1 = -t2/144",
                   False, str(e))

    mq = builtin("mirror_quintic")
    try:
        system = certify_rrc(mq.derivation, mq.algebra, t1="t2")
        report.add(
            "mirror quintic certifies as an RRC system on 8 generators",
            len(system.parts) == 8 and system.parts["t5"].is_zero(),
        )
    except RRCShapeError as e:
        report.add("mirror quintic certifies as an RRC system on 8 generators",
                   False, str(e))

    classical = builtin("classical")
    built = from_canonical(classical.algebra, classical.canonical, t1="t1")
    lam_ok = (built.parts["t1"] - built.algebra.parse("-1/144*E4")).is_zero()
    report.add(
        "classical canonical data rebuilds the rescaled system shape",
        lam_ok,
    )
    D, W, delta = rrc_sl2_data(built)
    report.add(
        "rebuilt classical system carries an sl2 triple",
        check_sl2_triple(D, W, delta, built.algebra).passed,
    )

    raw = builtin("ramanujan")
    try:
        certify_rrc(raw.derivation, raw.algebra, t1="t1")
        report.add(
            "unrescaled Ramanujan system is rejected (t1^2 coefficient 1/12)",
            False,
        )
    except RRCShapeError:
        report.add(
            "unrescaled Ramanujan system is rejected (t1^2 coefficient 1/12)",
            True,
        )
    return report


# ------------------------------------------------------------------ relation

MQ_CLOSURE_PAIRS = [
    ("t1", "t3"), ("t1", "t4"), ("t1", "t8"), ("t3", "t4"), ("t3", "t5"),
    ("t4", "t5"), ("t4", "t8"), ("t5", "t8"), ("t6", "t7"), ("t1", "t7"),
]


def suite_relation(max_n: int = 3) -> SuiteReport:
    report = SuiteReport("relation")
    mq = builtin("mirror_quintic")
    algebra = mq.algebra
    relation = algebra.relations[0]
    report.add(
        "the reciprocal relation reduces to zero",
        reduce_mod_relations(relation, algebra).is_zero(),
    )
    d_rel = mq.derivation(relation)
    report.add(
        "D of the relation reduces to zero mod the relation",
        reduce_mod_relations(d_rel, algebra).is_zero(),
    )
    untouched = algebra.gen("t1")
    report.add(
        "reduction leaves relation-free elements alone",
        reduce_mod_relations(untouched, algebra) == untouched,
    )
    closure_ok = True
    failing = []
    for fn, gn in MQ_CLOSURE_PAIRS:
        for n in range(max_n + 1):
            br = standard_bracket(mq.derivation, algebra.gen(fn), algebra.gen(gn), n)
            if any(m.exponent("t2") for m in br.terms):
                closure_ok = False
                failing.append(f"({fn},{gn})@{n}")
    report.add(
        f"brackets of t2-free generators stay t2-free, n <= {max_n}",
        closure_ok,
        ", ".join(failing),
    )
    return report


# ----------------------------------------------------------------- ramanujan

def suite_ramanujan(order: int = 50) -> SuiteReport:
    report = SuiteReport("ramanujan")
    res = check_ramanujan(order)
    for name, residual in res.residuals:
        report.add(f"{name} through q^{order}", residual.is_zero())
    from .qseries import QSeries

    tweak = QSeries([0] + [1] + [0] * (order - 1), order)
    perturbed = check_ramanujan(order, perturb={"E4": tweak})
    report.add(
        "perturbing E4 breaks the system (falsifiability control)",
        not perturbed.passed,
    )
    return report


# ------------------------------------------------------------------ dispatch

SUITES = ("thm-main1", "kk", "ck", "psi", "sl2", "rrc-shape", "relation", "ramanujan")


def run_suite(name: str, system: AlgebraSystem = None, max_n: int = None,
              order: int = None) -> SuiteReport:
    if name == "thm-main1":
        return suite_thm_main1(system, max_n=max_n)
    if name == "kk":
        return suite_kk(max_n=max_n if max_n is not None else 5)
    if name == "ck":
        return suite_ck(order=order if order is not None else 8)
    if name == "psi":
        return suite_psi(max_n=max_n if max_n is not None else 8)
    if name == "sl2":
        return suite_sl2(system)
    if name == "rrc-shape":
        return suite_rrc_shape()
    if name == "relation":
        return suite_relation(max_n=max_n if max_n is not None else 3)
    if name == "ramanujan":
        return suite_ramanujan(order=order if order is not None else 50)
    raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
