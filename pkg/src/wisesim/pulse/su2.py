import logging
import math
from typing import Iterable

import numpy as np
import pandas as pd
from scipy import linalg

from wisesim.pulse.api import Rotation, PulseSequence, UnitarityError

logger = logging.getLogger(__name__)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

UNITARITY_TOLERANCE = 1e-10


def rotation_matrix(angle: float, phase: float) -> np.ndarray:
    """
    R(angle, phase) = cos(angle / 2) I - i sin(angle / 2) (cos(phase) X + sin(phase) Y)
    """
    axis = math.cos(phase) * SIGMA_X + math.sin(phase) * SIGMA_Y
    return math.cos(angle / 2) * IDENTITY - 1j * math.sin(angle / 2) * axis


def check_unitary(u: np.ndarray, tolerance: float = UNITARITY_TOLERANCE) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise UnitarityError(f'expected a 2x2 matrix, got shape {u.shape}')
    deviation = linalg.norm(u.conj().T @ u - IDENTITY)
    if deviation > tolerance:
        raise UnitarityError(f'matrix is not unitary: |U^dag U - I| = {deviation:.3g}')
    return u


def plain(theta: float, phi: float = 0.0) -> PulseSequence:
    return PulseSequence([Rotation(theta, phi)], 'plain')


def sk1(theta: float, phi: float = 0.0) -> PulseSequence:
    """
    SK1 composite pulse: the target rotation followed by two full turns at phases phi + phi_c and
    phi - phi_c, phi_c = arccos(-theta / 4 pi). The full turns cancel at zero error and their
    first-order error terms cancel that of the target pulse.
    """
    if abs(theta) > 4 * math.pi:
        raise ValueError(f'SK1 needs |theta| <= 4 pi, got {theta}')
    phi_c = math.acos(-theta / (4 * math.pi))
    return PulseSequence([
        Rotation(theta, phi),
        Rotation(2 * math.pi, phi + phi_c),
        Rotation(2 * math.pi, phi - phi_c)
    ], 'sk1')


def evolve(seq: PulseSequence, scale: float = 1.0) -> np.ndarray:
    """
    Propagator of the sequence with every pulse angle multiplied by scale.
    """
    if not math.isfinite(scale):
        raise ValueError(f'scale must be finite: {scale}')
    u = IDENTITY.copy()
    for pulse in seq.get_pulses():
        u = rotation_matrix(pulse.get_angle() * scale, pulse.get_phase()) @ u
    return check_unitary(u)


def infidelity(u: np.ndarray, v: np.ndarray) -> float:
    u = check_unitary(u)
    v = check_unitary(v)
    overlap = abs(np.trace(u.conj().T @ v)) ** 2 / 4
    return float(min(1.0, max(0.0, 1.0 - overlap)))


def rotation_angle(u: np.ndarray) -> float:
    """
    Net rotation angle in [0, pi] of an SU(2) element, ignoring global phase.
    """
    u = check_unitary(u)
    det = np.linalg.det(u)
    u = u / np.sqrt(det)
    a = u[0, 0]
    b = u[1, 0]
    return 2 * math.atan2(math.sqrt(a.imag ** 2 + abs(b) ** 2), abs(a.real))


def loglog_slope(x: Iterable[float], y: Iterable[float]) -> float:
    x = np.asarray(list(x), dtype=float)
    y = np.asarray(list(y), dtype=float)
    keep = (x > 0) & (y > 0)
    if keep.sum() < 2:
        return math.nan
    slope, _ = np.polyfit(np.log(x[keep]), np.log(y[keep]), 1)
    return float(slope)


class SuppressionReport:
    """
    Plain against SK1 infidelities over an error grid, with log-log slope fits.
    """

    def __init__(self, table: pd.DataFrame, error_column: str):
        self.table = table
        self.error_column = error_column

    def get_table(self) -> pd.DataFrame:
        return self.table

    def get_plain_slope(self) -> float:
        return loglog_slope(self.table[self.error_column], self.table['plain_infid'])

    def get_sk1_slope(self) -> float:
        return loglog_slope(self.table[self.error_column], self.table['sk1_infid'])

    def get_slopes(self) -> dict:
        return {'plain': self.get_plain_slope(), 'sk1': self.get_sk1_slope()}


def crosstalk_report(theta: float, phi: float, eps_grid: Iterable[float]) -> SuppressionReport:
    """
    Residual rotation of a spectator qubit that sees a fraction eps of the drive, for the plain
    pulse and for SK1. The ideal spectator evolution is the identity.
    """
    plain_seq = plain(theta, phi)
    sk1_seq = sk1(theta, phi)
    rows = []
    for eps in eps_grid:
        if not 0 < eps <= 0.5:
            raise ValueError(f'addressing error must lie in (0, 0.5]: {eps}')
        plain_u = evolve(plain_seq, eps)
        sk1_u = evolve(sk1_seq, eps)
        rows.append({
            'eps': eps,
            'plain_infid': infidelity(IDENTITY, plain_u),
            'sk1_infid': infidelity(IDENTITY, sk1_u),
            'plain_angle': rotation_angle(plain_u),
            'sk1_angle': rotation_angle(sk1_u)
        })
    report = SuppressionReport(pd.DataFrame(rows, columns=['eps', 'plain_infid', 'sk1_infid', 'plain_angle',
                                                           'sk1_angle']), 'eps')
    logger.info(f'spectator suppression at theta={theta:.4g}: slopes {report.get_slopes()}')
    return report


def amplitude_report(theta: float, phi: float, delta_grid: Iterable[float]) -> SuppressionReport:
    """
    Infidelity of the addressed qubit against the ideal rotation when the drive amplitude is off
    by a factor 1 + delta.
    """
    target = rotation_matrix(theta, phi)
    plain_seq = plain(theta, phi)
    sk1_seq = sk1(theta, phi)
    rows = []
    for delta in delta_grid:
        rows.append({
            'delta': delta,
            'plain_infid': infidelity(target, evolve(plain_seq, 1 + delta)),
            'sk1_infid': infidelity(target, evolve(sk1_seq, 1 + delta))
        })
    report = SuppressionReport(pd.DataFrame(rows, columns=['delta', 'plain_infid', 'sk1_infid']), 'delta')
    logger.info(f'amplitude robustness at theta={theta:.4g}: slopes {report.get_slopes()}')
    return report
