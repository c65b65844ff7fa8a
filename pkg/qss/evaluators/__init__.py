# Copyright 2024 The QSS Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

#  noqa: D400
"""
# Evaluators

This module collects everything computed from states: observables, ground states, the
orbit distance, rescalings and the checkers for blow-up, instability and the
Gagliardo-Nirenberg threshold.
"""

from qss.evaluators.blowup import (
    BlowupBranch,
    BlowupVerdict,
    blowup_condition,
    lambda_scaling_energy,
    make_supercritical_data,
    variance_bound_check,
)
from qss.evaluators.gagliardo_nirenberg import cgn_threshold_check, random_gn_pairs
from qss.evaluators.instability import (
    GammaCurveBase,
    InstabilityDirection,
    curve_hessian,
    curve_second_difference,
    gamma_constraint,
    gamma_curve_energy,
    hessian_determinant,
    instability_direction,
    reduced_form_coefficients,
)
from qss.evaluators.observables import (
    ObservableRecord,
    energy,
    gn_quotient,
    kj_functionals,
    mass,
    record_observables,
    variance,
    virial_second_formula,
)
from qss.evaluators.orbit import apply_orbit, orbit_distance, orbit_distance_with_argmin
from qss.evaluators.petviashvili import (
    GroundStateResult,
    PetviashviliConfig,
    petviashvili_solve,
    pohozaev_check,
)
from qss.evaluators.rescaling import rescale, rescale_to_targets

__all__ = [
    "BlowupBranch",
    "BlowupVerdict",
    "GammaCurveBase",
    "GroundStateResult",
    "InstabilityDirection",
    "ObservableRecord",
    "PetviashviliConfig",
    "apply_orbit",
    "blowup_condition",
    "cgn_threshold_check",
    "curve_hessian",
    "curve_second_difference",
    "energy",
    "gamma_constraint",
    "gamma_curve_energy",
    "gn_quotient",
    "hessian_determinant",
    "instability_direction",
    "kj_functionals",
    "lambda_scaling_energy",
    "make_supercritical_data",
    "mass",
    "orbit_distance",
    "orbit_distance_with_argmin",
    "petviashvili_solve",
    "pohozaev_check",
    "random_gn_pairs",
    "record_observables",
    "reduced_form_coefficients",
    "rescale",
    "rescale_to_targets",
    "variance",
    "virial_second_formula",
]
