#pragma once

#include <string>
#include <vector>

#include "iskp/spectrum.hpp"
#include "iskp/units.hpp"

namespace iskp {

struct CalibrationCandidate {
    std::string label;
    double value = 0.0;    // model energy, eV
    double residual = 0.0; // model - target, eV
};

// One-entry fits against Table 2 (H2, cbar = -1), each frozen before the next:
//   delta   from (m=0,  n=0, B=0, Phi=0) = -0.013053
//   Omega   from (m=-1, n=0, B=0, Phi=0) =  0.016833
//   w*      from (m=0,  n=0, B=2, Phi=0) = -0.013854, sign from (m=1, n=0, B=2, Phi=0)
//   kappa   from (m=0,  n=0, B=2, Phi=2) = -3.552120, used only by the "table" convention
struct Calibration {
    SpectrumConvention convention;
    FieldCalibration field;
    double w_star = 0.0;             // w of the calibration molecule at B = 2
    double calibration_screening = 0.0;
    std::vector<CalibrationCandidate> delta_candidates;
    std::vector<CalibrationCandidate> omega_candidates;
    double w_residual = 0.0;
    double w_sign_residual = 0.0;
    double coupling_residual = 0.0;
    std::string molecule = "H2";
};

struct CalibrationTargets {
    double zero_field = -0.013053;
    double m_minus_one = 0.016833;
    double magnetic = -0.013854;
    double magnetic_m1 = -0.027578;
    double magnetic_flux = -3.552120;
    double B = 2.0;
    double Phi = 2.0;
};

Calibration calibrate(const MoleculeDatabase& db, const UnitSystem& u, const CalibrationTargets& t = {});

// Calibration of the built-in database, computed once.
const Calibration& default_calibration();

std::string calibration_to_json(const Calibration& c);
Calibration calibration_from_json(const std::string& text);
void save_calibration(const Calibration& c, const std::string& path);
Calibration load_calibration(const std::string& path);

// Physical reading: delta = 0 and Omega from the radial equation itself.
SpectrumConvention physical_convention();

} // namespace iskp
