#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace iskp {

struct Molecule {
    std::string name;
    double De = 0.0;    // eV
    double re = 0.0;    // Angstrom
    double alpha = 0.0; // 1/Angstrom
    double mu = 0.0;    // amu
};

enum class UnitMode { physical, reduced };

// reduced mode sets hbar = 2mu = 1, so 2mu/hbar^2 == 1.
struct UnitSystem {
    double hbar_c = 1973.269;    // eV Angstrom
    double amu_to_eV = 931.5e6;  // eV per amu
    UnitMode mode = UnitMode::physical;

    static UnitSystem reduced() {
        UnitSystem u;
        u.mode = UnitMode::reduced;
        return u;
    }
};

class UnknownMoleculeError : public std::runtime_error {
public:
    UnknownMoleculeError(const std::string& name, const std::vector<std::string>& keys);
    const std::vector<std::string>& available() const { return keys_; }

private:
    std::vector<std::string> keys_;
};

class DatabaseParseError : public std::runtime_error {
public:
    DatabaseParseError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

class MoleculeDatabase {
public:
    MoleculeDatabase() = default;

    // Grammar: one record per line, "name De re alpha mu"; '#' starts a comment.
    static MoleculeDatabase parse(const std::string& text);
    static MoleculeDatabase load(const std::string& path);

    // Table 1 values; the same content ships as data/molecules.dat.
    static const MoleculeDatabase& builtin();

    // ISKP_MOLECULE_DB overrides the built-in table when set.
    static MoleculeDatabase from_environment();

    std::string serialize() const;
    void add(const Molecule& m);
    const std::vector<Molecule>& molecules() const { return mols_; }
    std::vector<std::string> keys() const;

private:
    std::vector<Molecule> mols_;
};

void validate(const Molecule& m);
void validate(const UnitSystem& u);

Molecule lookup_molecule(const std::string& name, const MoleculeDatabase& db);

// 2 mu / hbar^2 in 1/(eV Angstrom^2). Returns 1 in reduced mode.
double two_mu_over_hbar2(const Molecule& mol, const UnitSystem& u);

} // namespace iskp
