import math

from wisesim.gates.api import RabiProfile, RabiKind, GateCompileError


def rabi_at(profile: RabiProfile, displacement: float) -> float:
    if not math.isfinite(displacement):
        raise ValueError(f'displacement must be finite: {displacement}')
    if profile.get_kind() == RabiKind.MICROWAVE_LINEAR:
        return profile.get_alpha_i() * displacement
    return profile.get_omega0() * math.exp(-(displacement / profile.get_waist()) ** 2)


def solve_displacement(profile: RabiProfile, target: float) -> float:
    """
    Displacement at which the profile gives the target Rabi frequency; for a Gaussian beam the
    solution on the x >= 0 side.
    """
    if profile.get_kind() == RabiKind.MICROWAVE_LINEAR:
        return target / profile.get_alpha_i()
    omega0 = profile.get_omega0()
    if not 0 < target <= omega0:
        raise GateCompileError(f'Rabi frequency {target:.6g} rad/s is outside the beam range (0, {omega0:.6g}]')
    return profile.get_waist() * math.sqrt(math.log(omega0 / target))
