#include "iskp/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace iskp {

std::string to_string(SpecialCase c) {
    switch (c) {
    case SpecialCase::ISKP: return "ISKP";
    case SpecialCase::ScreenedCoshKratzer: return "ScreenedCoshKratzer";
    case SpecialCase::ScreenedKratzer: return "ScreenedKratzer";
    case SpecialCase::Kratzer: return "Kratzer";
    }
    return "?";
}

void validate(const PotentialParams& p) {
    if (p.cbar < -1 || p.cbar > 1) throw std::invalid_argument("cbar must be -1, 0 or 1");
    if (!(p.alpha >= 0) || !(p.delta >= 0)) throw std::invalid_argument("alpha and delta must be >= 0");
    if (!(p.a > 0) || !(p.b > 0)) throw std::invalid_argument("a and b must be positive");
    if (!(p.De >= 0)) throw std::invalid_argument("De must be >= 0");
}

PotentialParams potential_from_molecule(const Molecule& mol, int cbar, double delta) {
    PotentialParams p;
    p.De = mol.De;
    p.a = mol.re;
    p.b = mol.re * mol.re;
    p.alpha = mol.alpha;
    p.delta = delta;
    p.cbar = cbar;
    validate(p);
    return p;
}

StrengthConstants derive_strengths(const PotentialParams& p) {
    StrengthConstants s;
    s.P1 = 2.0 * p.De * p.a * (1 + p.cbar);
    s.P2 = p.De * p.b * (1 + p.cbar);
    s.P3 = 2.0 * p.De * p.a;
    s.P4 = p.De * p.b;
    return s;
}

double evaluate_potential(const PotentialParams& p, double r) {
    if (!(r > 0)) throw std::domain_error("potential: radius must be positive");
    const double x = 0.5 * p.screening() * r;
    // exp(-x) cosh(x) + cbar/2 = (exp(-2x) + 1 + cbar)/2: no overflow, and no cancellation at cbar = -1
    const double shape = 0.5 * (std::exp(-2.0 * x) + (1.0 + p.cbar));
    return -4.0 * p.De * (p.a / r - p.b / (2.0 * r * r)) * shape;
}

SpecialCase reduce_special_case(const PotentialParams& p) {
    if (p.cbar == 0 && p.alpha == p.delta) return SpecialCase::ScreenedCoshKratzer;
    if (p.cbar == -1 && p.delta == 0.0 && p.alpha > 0) return SpecialCase::ScreenedKratzer;
    if (p.cbar == -1 && p.alpha == 0.0 && p.delta == 0.0) return SpecialCase::Kratzer;
    return SpecialCase::ISKP;
}

double special_case_potential(const PotentialParams& p, double r) {
    if (!(r > 0)) throw std::domain_error("potential: radius must be positive");
    const double kr = p.De * (p.a / r - p.b / (2.0 * r * r));
    switch (reduce_special_case(p)) {
    case SpecialCase::Kratzer: return -2.0 * kr;
    case SpecialCase::ScreenedKratzer: return -2.0 * kr * std::exp(-p.alpha * r);
    case SpecialCase::ScreenedCoshKratzer: return -4.0 * kr * std::exp(-p.alpha * r) * std::cosh(p.alpha * r);
    case SpecialCase::ISKP: break;
    }
    const double s = p.screening();
    return -4.0 * kr * (std::exp(-s * r / 2) * std::cosh(s * r / 2) + p.cbar / 2.0);
}

} // namespace iskp
