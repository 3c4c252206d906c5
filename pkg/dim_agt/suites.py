"""Named verification suites composed from the algebra checks."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Iterator

from sympy import QQ

from dim_agt.algebra import genmac, rmatrix
from dim_agt.algebra.combinat import partitions_of
from dim_agt.algebra.generators import (
    Frame,
    crystal_pbw_check,
    crystal_relation_check,
    crystal_virasoro_check,
    crystal_virasoro_relation_check,
    jing_check,
    virasoro_relation_check,
    x_relation_check,
)
from dim_agt.algebra.kacdet import (
    crystal_shapovalov_check,
    kac_det_check,
    multi_singular_check,
    multi_singular_tuple,
    singular_vector_check,
    whittaker_check,
)
from dim_agt.algebra.nekrasov import (
    conjecture_checks,
    crystal_conjecture_checks,
    crystal_limit_check,
    crystal_n1_check,
    four_point_check,
    integrality_check,
    simple_property_check,
)
from dim_agt.algebra.scalars import ScalarPoint, Slot, make_point
from dim_agt.algebra.symfunc import hl_pairing_identities, macdonald_property_checks
from dim_agt.algebra.vertex_phi import crystal_phi_check, phi_check
from dim_agt.algebra.vertical import action_conjecture_check, duality_check, higher_hamiltonian_check, vertical_relation_check
from dim_agt.config import DEFAULT_POINTS, KAC_LEVEL_GUARD
from dim_agt.errors import CostGuardError, ScalarModeError
from dim_agt.reports import CheckReport

logger = logging.getLogger(__name__)

CRYSTAL_Q_VALUES = (QQ(5, 3), QQ(-2), QQ(7, 4), QQ(2, 9))
FOUR_POINT_W = (QQ(7, 3), QQ(3, 8))
MAX_SINGULAR_LEVEL = 3
MULTI_SINGULAR_CASES = (
    ((1,), (1,)),
    ((1, 1), (1, 1)),
    ((2, 1), (1, 1)),
    ((0, 1), (1, 1)),
    ((1, 2), (1, 1)),
)

Job = tuple[str, Callable[[], CheckReport]]


@dataclass(frozen=True)
class SuiteOptions:
    n_components: int | None = None
    level: int | None = None
    seed: int = 7
    points: int = DEFAULT_POINTS
    slot: Slot = Slot.NONE

    def level_or(self, default: int) -> int:
        return default if self.level is None else self.level

    def n_or(self, default: int) -> int:
        return default if self.n_components is None else self.n_components

    def point(self, n_components: int, index: int, level: int) -> ScalarPoint:
        return make_point(self.seed + index, n_components, max(level, 1), self.slot)

    def to_dict(self) -> dict[str, Any]:
        return {
            "N": self.n_components,
            "level": self.level,
            "seed": self.seed,
            "points": self.points,
            "symbolic": self.slot.value,
        }


def _symfunc(options: SuiteOptions) -> Iterator[Job]:
    level = options.level_or(4)
    for k in range(options.points):
        point = options.point(1, k, level)
        for n in range(level + 1):
            yield f"symfunc.properties.{n}.p{k}", lambda n=n, point=point: macdonald_property_checks(n, point)
            for lam in partitions_of(n) if n else ():
                yield f"symfunc.hl-pairing.{lam}.p{k}", lambda lam=lam, point=point: hl_pairing_identities(lam, point)


def _fock_relations(options: SuiteOptions) -> Iterator[Job]:
    level = options.level_or(2)
    for k in range(options.points):
        one, two = options.point(1, k, level), options.point(2, k, level)
        many = options.point(options.n_or(2), k, level)
        for frame in (Frame.ORIGINAL, Frame.BALANCED):
            yield (
                f"fock.x-relations.{frame.value}.p{k}",
                lambda frame=frame, many=many: x_relation_check(many, level=level, mode_bound=1, frame=frame),
            )
        yield f"fock.virasoro.p{k}", lambda one=one: virasoro_relation_check(one, level=level, mode_bound=1)
        yield f"fock.crystal-virasoro-relations.p{k}", lambda one=one: crystal_virasoro_relation_check(one, level=level)
        yield f"fock.crystal-relations.p{k}", lambda two=two: crystal_relation_check(two, level=min(level, 1))
        yield f"fock.crystal-virasoro.p{k}", lambda one=one: crystal_virasoro_check(level, one)
        yield f"fock.crystal-pbw.p{k}", lambda two=two: crystal_pbw_check(level, two)
        yield f"fock.jing.p{k}", lambda one=one: jing_check(level, one)


def _genmac(options: SuiteOptions) -> Iterator[Job]:
    level = options.level_or(2)
    for k in range(options.points):
        point = options.point(options.n_or(2), k, level)
        two = options.point(2, k, level)
        yield f"genmac.eigen.p{k}", lambda point=point: genmac.genmac_check(level, point)
        yield f"genmac.ordering.p{k}", lambda two=two: genmac.ordering_vanishing_check(level, two)
        yield f"genmac.hall-littlewood.p{k}", lambda point=point: genmac.gen_hall_littlewood_check(level, point)
        yield f"genmac.jack.p{k}", lambda point=point: genmac.gen_jack_check(level, point.beta, point.uu)
        if level >= 2:
            yield f"genmac.reference.p{k}", lambda two=two: genmac.reference_check(two)


def _kacdet(options: SuiteOptions) -> Iterator[Job]:
    components = [options.n_components] if options.n_components else sorted(KAC_LEVEL_GUARD)
    for n_components in components:
        level = options.level_or(KAC_LEVEL_GUARD.get(n_components, 0))
        points = [options.point(n_components, k, level) for k in range(options.points)]
        for n in range(1, level + 1):
            yield f"kacdet.det.N{n_components}.L{n}", lambda n=n, nc=n_components, points=points: kac_det_check(n, nc, points)
    level = options.level_or(2)
    singular = min(level, MAX_SINGULAR_LEVEL)
    for k in range(options.points):
        two = options.point(2, k, level)
        yield f"kacdet.crystal-shapovalov.p{k}", lambda two=two: crystal_shapovalov_check(min(level, 2), two, min(level, 4))
    base = options.point(3, 0, singular)
    for n_components in (2, 3):
        for i in range(1, n_components):
            for r in range(1, singular + 1):
                for s in range(1, singular // r + 1):
                    yield (
                        f"kacdet.singular.N{n_components}.i{i}.r{r}.s{s}",
                        lambda nc=n_components, i=i, r=r, s=s: singular_vector_check(nc, i, r, s, base),
                    )
    for r, s in MULTI_SINGULAR_CASES:
        lam, case = multi_singular_tuple(r, s)
        if lam.size <= singular:
            yield (
                f"kacdet.singular-{case}.N{len(r) + 1}.r{'-'.join(map(str, r))}",
                lambda r=r, s=s: multi_singular_check(r, s, base),
            )


def _agt_generic(options: SuiteOptions) -> Iterator[Job]:
    level = options.level_or(2)
    for k in range(options.points):
        one = options.point(1, k, level)
        many = options.point(options.n_or(2), k, level)
        yield f"agt.whittaker.p{k}", lambda one=one: whittaker_check(level, one)
        yield f"agt.phi.p{k}", lambda many=many: phi_check(level, many)
        if many.n_components <= 2:
            yield f"agt.conjectures.p{k}", lambda many=many: conjecture_checks(min(level, 2), many)
            yield f"agt.integrality.p{k}", lambda many=many: integrality_check(min(level, 2), many)


def _agt_crystal(options: SuiteOptions) -> Iterator[Job]:
    level = options.level_or(2)
    first, *others = CRYSTAL_Q_VALUES
    for k in range(options.points):
        one, two = options.point(1, k, level), options.point(2, k, level)
        yield f"crystal.limit.p{k}", lambda one=one: crystal_limit_check(level, first, one, extra_q=others)
        yield f"crystal.n1.p{k}", lambda one=one: crystal_n1_check(level, one)
        yield f"crystal.phi.p{k}", lambda two=two: crystal_phi_check(level, two)
        yield f"crystal.simple.p{k}", lambda two=two: simple_property_check(level, two)
        yield f"crystal.conjectures.p{k}", lambda two=two: crystal_conjecture_checks(min(level, 2), two)
        yield f"crystal.four-point.p{k}", lambda two=two: four_point_check(level, two, FOUR_POINT_W, fock_level=min(level, 1))


def _rmatrix(options: SuiteOptions) -> Iterator[Job]:
    if options.n_components not in (None, 3):
        raise ValueError("the R-matrix suite runs on three Fock modules (--N 3)")
    level = options.level_or(2)
    for k in range(options.points):
        point = options.point(3, k, level)
        for n in range(level + 1):
            yield f"rmatrix.yang-baxter.L{n}.p{k}", lambda n=n, point=point: rmatrix.yang_baxter_check(n, point)
            yield f"rmatrix.unitarity.L{n}.p{k}", lambda n=n, point=point: rmatrix.unitarity_check(n, point)
            yield f"rmatrix.product-route.L{n}.p{k}", lambda n=n, point=point: rmatrix.product_route_check(n, point)
            yield f"rmatrix.integral.L{n}.p{k}", lambda n=n, point=point: rmatrix.integral_form_r_check(n, point)
        if level >= 2:
            yield f"rmatrix.reference.p{k}", lambda point=point: rmatrix.reference_check(point)


def _vertical(options: SuiteOptions) -> Iterator[Job]:
    level = options.level_or(2)
    for k in range(options.points):
        one = options.point(1, k, level)
        many = options.point(options.n_or(2), k, level)
        yield f"vertical.relations.p{k}", lambda one=one: vertical_relation_check(level, one, 1)
        for n in range(level + 1):
            top = 5 if n <= 1 else 3
            for hamiltonian in range(1, top + 1):
                yield (
                    f"vertical.hamiltonian.k{hamiltonian}.L{n}.p{k}",
                    lambda h=hamiltonian, n=n, many=many: higher_hamiltonian_check(h, n, many),
                )
            yield f"vertical.action.L{n}.p{k}", lambda n=n, many=many: action_conjecture_check(n, many)
            yield f"vertical.duality.L{n}.p{k}", lambda n=n, many=many: duality_check(n, many)


SUITES: dict[str, Callable[[SuiteOptions], Iterator[Job]]] = {
    "symfunc": _symfunc,
    "fock-relations": _fock_relations,
    "genmac": _genmac,
    "kacdet": _kacdet,
    "agt-generic": _agt_generic,
    "agt-crystal": _agt_crystal,
    "rmatrix": _rmatrix,
    "vertical": _vertical,
}

SUITE_NAMES = (*SUITES, "all")


def _run_job(report: CheckReport, name: str, build: Callable[[], CheckReport]) -> None:
    logger.info("running %s", name)
    with report.timed():
        try:
            report.extend(build())
        except CostGuardError:
            raise
        except ScalarModeError as exc:
            report.skip(name, "scalar mode", str(exc))
        except Exception as exc:
            logger.exception("check %s raised", name)
            report.record(name, "check completed without raising", False, error=f"{type(exc).__name__}: {exc}")


def run_suite(name: str, options: SuiteOptions | None = None) -> CheckReport:
    """Run every check of suite ``name``; CostGuardError and an unknown name propagate."""
    options = options or SuiteOptions()
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES)}")
    selected = list(SUITES) if name == "all" else [name]
    report = CheckReport(name, options=options.to_dict())
    for suite in selected:
        for job_name, build in SUITES[suite](options):
            _run_job(report, job_name, build)
    failures = len(report.failures)
    if failures:
        logger.warning("suite %s: %s failing checks", name, failures)
    else:
        logger.info("suite %s: %s checks passed", name, len(report.results))
    return report
