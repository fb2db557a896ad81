"""Trace-based linear-recurrence pseudorandom generators over GF(p^k),
with an exact discrepancy measurement toolkit.

Quick tour:

>>> from traceprn import FieldCtx, GeneratorParams, theorem1_points
>>> from traceprn import PointSet, star_discrepancy_exact
>>> ctx = FieldCtx(3, 2, [2, 2, 1])
>>> params = GeneratorParams(ctx, ctx.one, ctx.gen)
>>> pts = theorem1_points(params, 8)
>>> star_discrepancy_exact(PointSet.from_prn_points(pts, base=3))
Fraction(2, 9)
"""

from .bounds import Lemma6Result, c1, c2, eq23_avg_bound, lemma6_check, theorem1_rhs, theorem2_rhs
from .discrepancy import (
    PointSet,
    completion_check,
    completion_check_multi,
    digit_d,
    exp_sum,
    lemma1_lhs,
    lemma1_rhs,
    lemma2_delta_check,
    q_weight,
    star_discrepancy_exact,
    theorem_a_bound,
    w_weight,
)
from .gf import FieldCtx, FieldElement, ctx_new, euler_phi, factorize
from .multiseq import MultiseqParams, block_points, d_offset, lemma5_check, tilde, x_multiseq, y_value
from .scan import MultiScanSettings, ScanRecord, ScanSettings, run_multiscan, run_scan
from .seqgen import (
    GeneratorParams,
    PrnPoint,
    lfsr_seq,
    lfsr_to_alpha,
    multistep_x,
    theorem1_points,
    trace_seq,
)

__version__ = "0.1.0"
