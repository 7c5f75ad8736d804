"""The four sum uncertainty relations for non-Hermitian operator pairs.

Each relation bounds the variance sum ``Var(A) + Var(B)`` from below:

  ur1        rhs = 2 Im Cov(A, B)
  ur2        rhs = 2 Re Cov(A, B)
  combined   rhs = 2 max{Re Cov, Im Cov}
  ur3        rhs = +-2 Im Cov + |<perp|G(A +- iB)|psi>|^2,  best sign branch
  ur4        rhs = max over A+B, A-B of half the squared matrix element
             <perp_(A+-B)|G(A+-B)|psi> with perp the normalized orthogonal
             state of that combination (equivalently half its variance)

All statistics are taken in the formalism's inner product:

  plain    Dirac product, any supplied metric ignored for statistics
  gmetric  metric-weighted statistics, arbitrary operators
  good     metric-weighted, both operators must satisfy X^dag G = G X;
           the rhs of ur1/ur2 is then evaluated through the commutator and
           anticommutator forms that the good-observable condition makes
           real-valued

The evaluation record carries lhs, rhs, their gap, and a holds flag with
slack ``gap >= -tol``; the default tolerance honors NHUR_TOLERANCE_UR.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    InternalInconsistencyError,
    NotGoodObservableError,
    NotOrthogonalError,
)
from .linalg import anticommutator, as_operator, commutator
from .metric import (
    Metric,
    _as_real_variance,
    _covariance_raw,
    _expect,
    _variance_raw,
    identity_metric,
    is_good_observable,
    require_normalized,
)
from .states import av_orthogonal_state, ur3_default_perp
from .tolerances import EPS_DEGEN, EPS_ORTH, EPS_VAR, ur_tolerance


class Formalism(enum.Enum):
    PLAIN = "plain"
    GMETRIC = "gmetric"
    GOOD = "good"

    @classmethod
    def parse(cls, text: str) -> "Formalism":
        return cls(text.strip().lower())


@dataclass(frozen=True)
class UrEvaluation:
    """One evaluated inequality instance.

    gap = lhs - rhs; holds means gap >= -tol for the tolerance in force.
    sign_branch records which branch achieved the reported bound for the
    relations that have one.  degenerate marks ur4 evaluations where at
    least one branch hit an eigenstate of A+B or A-B and contributed 0.
    """

    relation: str
    formalism: Formalism
    lhs: float
    rhs: float
    gap: float
    holds: bool
    sign_branch: str | None = None
    degenerate: bool = False


@dataclass(frozen=True)
class _Context:
    a: np.ndarray
    b: np.ndarray
    psi: np.ndarray
    metric: Metric
    formalism: Formalism
    var_a: float
    var_b: float
    cov: complex

    @property
    def lhs(self) -> float:
        return self.var_a + self.var_b


def _prepare(a, b, psi, g: Metric | None, formalism: Formalism) -> _Context:
    a = as_operator(a, name="first operator")
    b = as_operator(b, dim=a.shape[0], name="second operator")
    if formalism is Formalism.PLAIN or g is None:
        metric = identity_metric(a.shape[0])
    else:
        metric = g
    if formalism is Formalism.GOOD:
        check_a = is_good_observable(a, metric)
        check_b = is_good_observable(b, metric)
        if not (check_a and check_b):
            raise NotGoodObservableError(
                "good-observable formalism requires both operators to satisfy "
                f"X^dag G = G X; residuals a={check_a.residual:.3e}, "
                f"b={check_b.residual:.3e} (threshold {check_a.threshold:g})"
            )
    psi = require_normalized(psi, metric)
    garr = metric.g
    return _Context(
        a=a,
        b=b,
        psi=psi,
        metric=metric,
        formalism=formalism,
        var_a=_as_real_variance(_variance_raw(a, psi, garr)),
        var_b=_as_real_variance(_variance_raw(b, psi, garr)),
        cov=_covariance_raw(a, b, psi, garr),
    )


def _real_bracket(value: complex, what: str) -> float:
    if abs(value.imag) > EPS_VAR:
        raise InternalInconsistencyError(
            f"{what} must be real for good observables, got imaginary part "
            f"{value.imag:.3e}"
        )
    return value.real


def _rhs_imag(ctx: _Context) -> float:
    """2 Im Cov, or its commutator form in the good formalism."""
    if ctx.formalism is Formalism.GOOD:
        bracket = 1j * _expect(commutator(ctx.b, ctx.a), ctx.psi, ctx.metric.g)
        return _real_bracket(bracket, "i<[B,A]>")
    return 2.0 * ctx.cov.imag


def _rhs_real(ctx: _Context) -> float:
    """2 Re Cov, or its anticommutator form in the good formalism."""
    if ctx.formalism is Formalism.GOOD:
        g = ctx.metric.g
        bracket = _expect(anticommutator(ctx.a, ctx.b), ctx.psi, g) - 2.0 * _expect(
            ctx.a, ctx.psi, g
        ) * _expect(ctx.b, ctx.psi, g)
        return _real_bracket(bracket, "<{A,B}> - 2<A><B>")
    return 2.0 * ctx.cov.real


def _finish(
    relation: str,
    ctx: _Context,
    rhs: float,
    tol: float,
    sign_branch: str | None = None,
    degenerate: bool = False,
) -> UrEvaluation:
    lhs = ctx.lhs
    gap = lhs - rhs
    return UrEvaluation(
        relation=relation,
        formalism=ctx.formalism,
        lhs=lhs,
        rhs=float(rhs),
        gap=gap,
        holds=gap >= -tol,
        sign_branch=sign_branch,
        degenerate=degenerate,
    )


def _resolve_tol(ur_tol: float | None) -> float:
    return ur_tolerance() if ur_tol is None else float(ur_tol)


def ur1(a, b, psi, g: Metric | None = None, formalism: Formalism = Formalism.PLAIN,
        *, ur_tol: float | None = None) -> UrEvaluation:
    """Variance sum against twice the imaginary part of the covariance."""
    ctx = _prepare(a, b, psi, g, formalism)
    return _finish("ur1", ctx, _rhs_imag(ctx), _resolve_tol(ur_tol))


def ur2(a, b, psi, g: Metric | None = None, formalism: Formalism = Formalism.PLAIN,
        *, ur_tol: float | None = None) -> UrEvaluation:
    """Variance sum against twice the real part of the covariance."""
    ctx = _prepare(a, b, psi, g, formalism)
    return _finish("ur2", ctx, _rhs_real(ctx), _resolve_tol(ur_tol))


def ur_combined(a, b, psi, g: Metric | None = None,
                formalism: Formalism = Formalism.PLAIN,
                *, ur_tol: float | None = None) -> UrEvaluation:
    """Variance sum against the larger of the ur1 and ur2 bounds."""
    ctx = _prepare(a, b, psi, g, formalism)
    return _finish("ur12", ctx, max(_rhs_imag(ctx), _rhs_real(ctx)),
                   _resolve_tol(ur_tol))


def _ur3_from_ctx(ctx: _Context, psi_perp, sign: str, tol: float) -> UrEvaluation:
    if sign not in ("plus", "minus", "max"):
        raise ValueError(f"sign must be plus, minus, or max, got {sign!r}")
    signs = {"plus": (1,), "minus": (-1,), "max": (1, -1)}[sign]
    base = _rhs_imag(ctx)
    garr = ctx.metric.g
    if psi_perp is not None:
        psi_perp = require_normalized(psi_perp, ctx.metric, name="auxiliary state")
        overlap = abs(complex(np.vdot(psi_perp, garr @ ctx.psi)))
        if overlap > EPS_ORTH:
            raise NotOrthogonalError(
                f"auxiliary state has metric overlap {overlap:.3e} with the "
                f"state (limit {EPS_ORTH:g})"
            )
    best_rhs = None
    best_label = None
    for s in signs:
        perp = psi_perp
        if perp is None:
            perp = ur3_default_perp(ctx.a, ctx.b, ctx.psi, ctx.metric, s)
        combined = ctx.a + (1j * s) * ctx.b
        element = complex(np.vdot(perp, garr @ (combined @ ctx.psi)))
        rhs = s * base + abs(element) ** 2
        if best_rhs is None or rhs > best_rhs:
            best_rhs = rhs
            best_label = "plus" if s == 1 else "minus"
    return _finish("ur3", ctx, best_rhs, tol, sign_branch=best_label)


def ur3(a, b, psi, g: Metric | None = None, formalism: Formalism = Formalism.PLAIN,
        *, psi_perp=None, sign: str = "max",
        ur_tol: float | None = None) -> UrEvaluation:
    """Variance sum against the auxiliary-state-strengthened bound.

    For each sign branch the bound adds the squared matrix element of
    A + sign*iB between psi and a unit vector metric-orthogonal to psi.
    With sign="max" both branches are evaluated and the larger bound is
    reported.  psi_perp overrides the canonical auxiliary state; it must
    be metric-normalized and metric-orthogonal to psi.
    """
    ctx = _prepare(a, b, psi, g, formalism)
    return _ur3_from_ctx(ctx, psi_perp, sign, _resolve_tol(ur_tol))


def _ur4_from_ctx(ctx: _Context, tol: float) -> UrEvaluation:
    garr = ctx.metric.g
    best_rhs = None
    best_label = None
    degenerate = False
    for s in (1, -1):
        combined = ctx.a + s * ctx.b
        sd = float(np.sqrt(_as_real_variance(_variance_raw(combined, ctx.psi, garr))))
        if sd <= EPS_DEGEN:
            # eigenstate of A+-B: the branch bound is trivially zero
            degenerate = True
            value = 0.0
        else:
            pair = av_orthogonal_state(combined, ctx.psi, ctx.metric)
            element = complex(np.vdot(pair.psi_perp, garr @ (combined @ ctx.psi)))
            value = 0.5 * abs(element) ** 2
        if best_rhs is None or value > best_rhs:
            best_rhs = value
            best_label = "plus" if s == 1 else "minus"
    return _finish("ur4", ctx, best_rhs, tol, sign_branch=best_label,
                   degenerate=degenerate)


def ur4(a, b, psi, g: Metric | None = None, formalism: Formalism = Formalism.PLAIN,
        *, ur_tol: float | None = None) -> UrEvaluation:
    """Variance sum against the stronger of the two combination bounds.

    Each branch uses the normalized orthogonal state of A+B or A-B; a
    branch whose combination has psi as an eigenstate contributes zero
    and sets the degenerate flag instead of failing.
    """
    ctx = _prepare(a, b, psi, g, formalism)
    return _ur4_from_ctx(ctx, _resolve_tol(ur_tol))


def evaluate_all(a, b, psi, g: Metric | None = None,
                 formalism: Formalism = Formalism.PLAIN,
                 *, psi_perp=None,
                 ur_tol: float | None = None) -> tuple[UrEvaluation, ...]:
    """All four relations over one input, sharing a single context."""
    ctx = _prepare(a, b, psi, g, formalism)
    tol = _resolve_tol(ur_tol)
    return (
        _finish("ur1", ctx, _rhs_imag(ctx), tol),
        _finish("ur2", ctx, _rhs_real(ctx), tol),
        _ur3_from_ctx(ctx, psi_perp, "max", tol),
        _ur4_from_ctx(ctx, tol),
    )
