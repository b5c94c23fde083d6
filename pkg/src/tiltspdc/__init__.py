"""Frequency-correlation control of type-II SPDC photon pairs with a tilted pump pulse front."""

__version__ = "0.1.0"

from .biphoton import (FilterShape, FilterSpec, FrequencyGrid, JointSpectrum, ScenarioConfig,
                       build_jsa, diagonal_spectra, marginal_idler, marginal_signal,
                       pearson_correlation, schmidt_number)
from .dispersion import (CrystalModel, PropagationGeometry, WaveParameters, degenerate_type_ii,
                         get_crystal, load_crystals, phase_matching_angle, wave_parameters)
from .errors import TiltSpdcError
from .hom import HomTrace, coincidence_trace, visibility
from .polarization import PolarizationMixModel, coincidence_vs_angles, curve_visibility, purity
from .tilt import (EffectiveWave, GratingSpec, TiltedPumpConfig, effective_wave,
                   grating_for_tilt, solve_tilt_anticorrelation, solve_tilt_correlation,
                   tilt_from_grating)
