#include "iskp/units.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "iskp/format.hpp"

namespace iskp {

namespace {

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i];
    }
    return out;
}

const char* kBuiltinTable =
    "# name De re alpha mu\n"
    "H2   4.7446    0.7416  1.9426  0.50391\n"
    "HCl  4.619031  1.2746  1.8677  0.980105\n"
    "LiH  2.515267  1.5956  1.128   0.880122\n";

} // namespace

UnknownMoleculeError::UnknownMoleculeError(const std::string& name,
                                           const std::vector<std::string>& keys)
    : std::runtime_error("unknown molecule '" + name + "'; available: " + join(keys)), keys_(keys) {}

DatabaseParseError::DatabaseParseError(int line, const std::string& what)
    : std::runtime_error("molecule database line " + std::to_string(line) + ": " + what), line_(line) {}

void validate(const Molecule& m) {
    if (m.name.empty()) throw std::invalid_argument("molecule name is empty");
    if (!(m.De > 0) || !(m.re > 0) || !(m.alpha > 0) || !(m.mu > 0))
        throw std::invalid_argument("molecule '" + m.name + "': De, re, alpha, mu must be positive");
}

void validate(const UnitSystem& u) {
    if (!(u.hbar_c > 0) || !(u.amu_to_eV > 0))
        throw std::invalid_argument("unit system constants must be positive");
}

MoleculeDatabase MoleculeDatabase::parse(const std::string& text) {
    MoleculeDatabase db;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 5)
            throw DatabaseParseError(lineno, "expected 'name De re alpha mu', got " +
                                                 std::to_string(tok.size()) + " fields");
        Molecule m;
        m.name = tok[0];
        double* fields[] = {&m.De, &m.re, &m.alpha, &m.mu};
        const char* names[] = {"De", "re", "alpha", "mu"};
        for (int i = 0; i < 4; ++i) {
            try {
                *fields[i] = parse_double(tok[i + 1]);
            } catch (const std::invalid_argument&) {
                throw DatabaseParseError(lineno, std::string("field ") + names[i] + " is not a number: '" +
                                                     tok[i + 1] + "'");
            }
        }
        try {
            db.add(m);
        } catch (const std::invalid_argument& e) {
            throw DatabaseParseError(lineno, e.what());
        }
    }
    return db;
}

MoleculeDatabase MoleculeDatabase::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open molecule database '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

const MoleculeDatabase& MoleculeDatabase::builtin() {
    static const MoleculeDatabase db = parse(kBuiltinTable);
    return db;
}

MoleculeDatabase MoleculeDatabase::from_environment() {
    const char* p = std::getenv("ISKP_MOLECULE_DB");
    if (p && *p) return load(p);
    return builtin();
}

std::string MoleculeDatabase::serialize() const {
    std::string out = "# name De re alpha mu\n";
    for (const auto& m : mols_) {
        out += m.name + ' ' + format_double(m.De) + ' ' + format_double(m.re) + ' ' +
               format_double(m.alpha) + ' ' + format_double(m.mu) + '\n';
    }
    return out;
}

void MoleculeDatabase::add(const Molecule& m) {
    validate(m);
    for (const auto& x : mols_)
        if (lower(x.name) == lower(m.name))
            throw std::invalid_argument("duplicate molecule name '" + m.name + "'");
    mols_.push_back(m);
}

std::vector<std::string> MoleculeDatabase::keys() const {
    std::vector<std::string> k;
    for (const auto& m : mols_) k.push_back(m.name);
    return k;
}

Molecule lookup_molecule(const std::string& name, const MoleculeDatabase& db) {
    const auto key = lower(name);
    for (const auto& m : db.molecules())
        if (lower(m.name) == key) return m;
    throw UnknownMoleculeError(name, db.keys());
}

double two_mu_over_hbar2(const Molecule& mol, const UnitSystem& u) {
    if (u.mode == UnitMode::reduced) return 1.0;
    validate(u);
    return 2.0 * (mol.mu * u.amu_to_eV) / (u.hbar_c * u.hbar_c);
}

} // namespace iskp
