"""Physical parameters and derived scalar quantities.

All frequencies and rates are angular (rad/s).  The reference values quoted
for the experiment are linear frequencies, so they appear below multiplied
by ``TWO_PI``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from scipy import constants

from .errors import ConfigurationError, DomainError, SingularityError

TWO_PI = 2.0 * math.pi

FREQUENCY_FIELDS = ("omega_a", "omega_m", "omega_b", "omega_c")
RATE_FIELDS = ("kappa_a", "kappa_m", "kappa_c", "gamma_b", "g_a", "G_mb", "G_bc")


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = constants.hbar
    k_B: float = constants.k
    mu0: float = constants.mu_0
    c_light: float = constants.c
    gyromagnetic_ratio: float = TWO_PI * 28e9  # rad/s/T
    spin_density: float = 4.22e27  # YIG, 1/m^3


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class SubsystemParams:
    """Mode frequencies, damping rates and couplings of one subsystem."""

    omega_a: float = TWO_PI * 10e9
    omega_m: float = TWO_PI * 10e9
    omega_b: float = TWO_PI * 40e6
    omega_c: float = TWO_PI * constants.c / 1550e-9
    kappa_a: float = TWO_PI * 1.5e6
    kappa_m: float = TWO_PI * 1.5e6 / 5
    kappa_c: float = TWO_PI * 3e6
    gamma_b: float = TWO_PI * 100.0
    g_a: float = TWO_PI * 4e6
    G_mb: float = TWO_PI * 4.5e6
    G_bc: float = TWO_PI * 10e6

    def replace(self, **changes) -> SubsystemParams:
        return replace(self, **changes)

    def scaled(self, s: float) -> SubsystemParams:
        """Damping rates and couplings multiplied by ``s``; mode frequencies kept."""
        return replace(self, **{name: getattr(self, name) * s for name in RATE_FIELDS})


@dataclass(frozen=True)
class SystemParams:
    sub1: SubsystemParams = field(default_factory=SubsystemParams)
    sub2: SubsystemParams = field(default_factory=SubsystemParams)

    @classmethod
    def symmetric(cls, sub: SubsystemParams | None = None, **changes) -> SystemParams:
        sub = (sub or SubsystemParams()).replace(**changes)
        return cls(sub, sub)

    @property
    def subsystems(self) -> tuple[SubsystemParams, SubsystemParams]:
        return (self.sub1, self.sub2)

    def replace_both(self, **changes) -> SystemParams:
        return SystemParams(self.sub1.replace(**changes), self.sub2.replace(**changes))

    def swapped(self) -> SystemParams:
        return SystemParams(self.sub2, self.sub1)

    def scaled(self, s: float) -> SystemParams:
        return SystemParams(self.sub1.scaled(s), self.sub2.scaled(s))


@dataclass(frozen=True)
class EnvironmentParams:
    temperature: float = 0.01  # K
    squeeze_r: float = 1.0


@dataclass(frozen=True)
class SqueezeMoments:
    n_sq: float
    m_sq: float


@dataclass(frozen=True)
class DriveParams:
    """Inputs of the drive-power to effective-coupling calculator.

    The detunings default to the red-sideband resonance with a 40 MHz
    mechanical mode.  ``bare_g_m`` and ``bare_g_c`` have no reference value
    and must be supplied before couplings can be derived.
    """

    drive_power: float = 0.91e-3
    laser_power: float = 0.64e-3
    laser_wavelength: float = 1550e-9
    yig_length: float = 100e-6
    yig_width: float = 5e-6
    yig_height: float = 2e-6
    bias_field: float = 10e9 / 28e9
    bare_g_m: float | None = None
    bare_g_c: float | None = None
    Delta_a: float = TWO_PI * 40e6
    Delta_m_tilde: float = TWO_PI * 40e6
    Delta_c_tilde: float = TWO_PI * 40e6

    @property
    def yig_volume(self) -> float:
        return self.yig_length * self.yig_width * self.yig_height


@dataclass(frozen=True)
class DerivedDrives:
    rabi_omega: float
    optical_E: float
    h_drive: float
    total_spins: float
    amp_a: complex
    amp_m: complex
    amp_b: complex
    amp_c: complex


def reference_system() -> SystemParams:
    """Symmetric reference system at the reported optimum couplings."""
    return SystemParams.symmetric()


def bose_occupation(omega: float, temperature: float, consts: PhysicalConstants = CONSTANTS) -> float:
    """Mean thermal occupation ``1 / (exp(hbar*omega / k_B*T) - 1)``."""
    if not omega > 0:
        raise DomainError(f"mode frequency must be positive, got {omega!r}")
    if temperature < 0:
        raise DomainError(f"temperature must be non-negative, got {temperature!r}")
    thermal_energy = consts.k_B * temperature
    if thermal_energy == 0:
        return 0.0
    x = consts.hbar * omega / thermal_energy
    if x > 700:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def squeeze_moments(r: float) -> SqueezeMoments:
    if r < 0:
        raise DomainError(f"squeezing parameter must be non-negative, got {r!r}")
    s, c = math.sinh(r), math.cosh(r)
    return SqueezeMoments(n_sq=s * s, m_sq=s * c)


def magnon_frequency(bias_field: float, consts: PhysicalConstants = CONSTANTS) -> float:
    if bias_field < 0:
        raise DomainError(f"bias field must be non-negative, got {bias_field!r}")
    return consts.gyromagnetic_ratio * bias_field


def drive_field_amplitude(
    drive_power: float, length: float, width: float, consts: PhysicalConstants = CONSTANTS
) -> float:
    """Drive magnetic field amplitude ``sqrt(2 mu0 P / (l w c))`` in tesla."""
    if drive_power < 0:
        raise DomainError(f"drive power must be non-negative, got {drive_power!r}")
    if not (length > 0 and width > 0):
        raise DomainError("micro-bridge length and width must be positive")
    return math.sqrt(2.0 * consts.mu0 * drive_power / (length * width * consts.c_light))


def rabi_frequency(h_drive: float, volume: float, consts: PhysicalConstants = CONSTANTS) -> float:
    if h_drive < 0:
        raise DomainError(f"drive field must be non-negative, got {h_drive!r}")
    if not volume > 0:
        raise DomainError(f"volume must be positive, got {volume!r}")
    n_spins = consts.spin_density * volume
    return math.sqrt(5.0) / 4.0 * consts.gyromagnetic_ratio * math.sqrt(n_spins) * h_drive


def optical_drive_amplitude(
    laser_power: float, kappa_c: float, laser_wavelength: float, consts: PhysicalConstants = CONSTANTS
) -> float:
    if laser_power < 0:
        raise DomainError(f"laser power must be non-negative, got {laser_power!r}")
    if not (kappa_c > 0 and laser_wavelength > 0):
        raise DomainError("kappa_c and laser wavelength must be positive")
    omega_L = TWO_PI * consts.c_light / laser_wavelength
    return math.sqrt(2.0 * kappa_c * laser_power / (consts.hbar * omega_L))


def steady_state_amplitudes(
    sub: SubsystemParams,
    drives: DriveParams,
    approximate: bool = False,
    consts: PhysicalConstants = CONSTANTS,
) -> DerivedDrives:
    """Classical mean amplitudes of the four modes under steady driving.

    With ``approximate=True`` the large-detuning forms are used, which drop
    every decay rate next to the detunings.  The mechanical amplitude needs
    ``bare_g_m``/``bare_g_c``; missing values are treated as zero coupling.
    """
    volume = drives.yig_volume
    h_d = drive_field_amplitude(drives.drive_power, drives.yig_length, drives.yig_width, consts)
    omega_rabi = rabi_frequency(h_d, volume, consts)
    e_opt = optical_drive_amplitude(drives.laser_power, sub.kappa_c, drives.laser_wavelength, consts)
    g_m = drives.bare_g_m or 0.0
    g_c = drives.bare_g_c or 0.0
    d_a, d_m, d_c = drives.Delta_a, drives.Delta_m_tilde, drives.Delta_c_tilde

    if approximate:
        den_m = sub.g_a**2 - d_m * d_a
        if den_m == 0 or d_a == 0 or d_c == 0 or sub.omega_b == 0:
            raise SingularityError("large-detuning approximation needs nonzero detunings")
        m = 1j * omega_rabi * d_a / den_m
        a = -sub.g_a * m / d_a
        c = e_opt / (1j * d_c)
        b = (-1j * g_m * abs(m) ** 2 + 1j * g_c * abs(c) ** 2) / (1j * sub.omega_b)
    else:
        den_m = sub.g_a**2 + (sub.kappa_m + 1j * d_m) * (sub.kappa_a + 1j * d_a)
        den_c = sub.kappa_c + 1j * d_c
        if den_m == 0 or den_c == 0:
            raise SingularityError("vanishing denominator in steady-state amplitudes")
        m = omega_rabi * (sub.kappa_a + 1j * d_a) / den_m
        a = -1j * sub.g_a * m / (1j * d_a + sub.kappa_a)
        c = e_opt / den_c
        b = (-1j * g_m * abs(m) ** 2 + 1j * g_c * abs(c) ** 2) / (1j * sub.omega_b + sub.gamma_b)

    return DerivedDrives(
        rabi_omega=omega_rabi,
        optical_E=e_opt,
        h_drive=h_d,
        total_spins=consts.spin_density * volume,
        amp_a=complex(a),
        amp_m=complex(m),
        amp_b=complex(b),
        amp_c=complex(c),
    )


def effective_couplings_from_drives(drives: DriveParams, derived: DerivedDrives) -> tuple[float, float]:
    """Return ``(G_mb, G_bc)`` as magnitudes of ``g_m <m>`` and ``g_c <c>``."""
    if drives.bare_g_m is None or drives.bare_g_c is None:
        raise ConfigurationError("bare_g_m and bare_g_c are required to derive effective couplings")
    if drives.bare_g_m <= 0 or drives.bare_g_c <= 0:
        raise ConfigurationError("bare couplings must be positive")
    return float(abs(drives.bare_g_m * derived.amp_m)), float(abs(drives.bare_g_c * derived.amp_c))

