#pragma once

#include <string>

#include "iskp/units.hpp"

namespace iskp {

struct PotentialParams {
    double De = 0.0;    // eV
    double a = 0.0;     // Angstrom, r_e
    double b = 0.0;     // Angstrom^2, r_e^2
    double alpha = 0.0; // 1/Angstrom
    double delta = 0.0; // 1/Angstrom
    int cbar = 1;       // control parameter, one of -1, 0, 1

    double screening() const { return alpha + delta; }
};

struct StrengthConstants {
    double P1 = 0.0; // eV Angstrom
    double P2 = 0.0; // eV Angstrom^2
    double P3 = 0.0; // eV Angstrom
    double P4 = 0.0; // eV Angstrom^2
};

enum class SpecialCase { ISKP, ScreenedCoshKratzer, ScreenedKratzer, Kratzer };

std::string to_string(SpecialCase c);

void validate(const PotentialParams& p);

PotentialParams potential_from_molecule(const Molecule& mol, int cbar, double delta);

StrengthConstants derive_strengths(const PotentialParams& p);

// V(r) = -4 De (a/r - b/(2 r^2)) (exp(-x) cosh(x) + cbar/2), x = (alpha+delta) r / 2.
double evaluate_potential(const PotentialParams& p, double r);

SpecialCase reduce_special_case(const PotentialParams& p);

// Direct closed form of the classified family member, written out independently of
// evaluate_potential so the two can be compared.
double special_case_potential(const PotentialParams& p, double r);

} // namespace iskp
