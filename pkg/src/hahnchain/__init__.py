"""Exactly solvable two-parameter spin chain: closed-form eigensystems built
from discrete orthogonal polynomial tables, correlation functions, and
perfect-state-transfer detection, all cross-checked against an independent
tridiagonal eigensolver."""

from .chain import (ChainSpec, CouplingArray, EigenSystem, TridiagonalMatrix,
                    analytic_eigensystem, build_couplings, interaction_matrix,
                    mode_frequencies, residual_MU_UD)
from .dynamics import (CorrelationSample, PSTResult, RationalWindow,
                       amplitude_at_halfpi, amplitude_at_pi, correlation,
                       correlation_closed_form, correlation_matrix, end_to_end,
                       pst_condition, pst_scan, q_end_to_end)
from .hahn import (HahnParams, diff_residual_1, diff_residual_2, hahn_Q,
                   hahn_norm, hahn_orthonormal, hahn_weight, orthonormal_table,
                   polynomial_table)
from .oracle import (ConvergenceError, EigenMatch, OracleEigenSystem,
                     match_eigensystems, max_abs_residual, tridiag_eigen)
from .qhahn import (QHahnParams, q_diff_residual_1, q_diff_residual_2,
                    q_hahn_Q, q_hahn_norm, q_hahn_orthonormal, q_hahn_weight,
                    q_orthonormal_table, q_polynomial_table)
from .special import (HypSeriesSpec, QHypSeriesSpec, hyp_terminating,
                      log_pochhammer, pochhammer, q_hyp_terminating,
                      q_pochhammer)
from .verify import VerificationReport, run_verification

__version__ = "0.1.0"
