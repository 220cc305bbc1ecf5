#include "iskp/validation.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "iskp/format.hpp"

namespace iskp {

namespace {

struct Tridiag {
    std::vector<double> d; // diagonal
    double e = 0.0;        // constant off-diagonal
};

Tridiag assemble(const Molecule& mol, const UnitSystem& u, const PotentialParams& p, const FieldConfig& f, int m,
                 const RadialGrid& g, OracleMode mode) {
    if (g.N < 1 || !(g.r_min > 0) || !(g.r_max > g.r_min)) throw std::invalid_argument("invalid radial grid");
    const double h = g.spacing();
    Tridiag t;
    t.d.resize(g.N);
    t.e = -1.0 / (h * h);
    for (int i = 0; i < g.N; ++i) t.d[i] = 2.0 / (h * h) + effective_potential(mol, u, p, f, m, g.r(i), mode);
    return t;
}

int sturm_count(const Tridiag& t, double x) {
    int count = 0;
    double q = 1.0;
    const double e2 = t.e * t.e;
    for (size_t i = 0; i < t.d.size(); ++i) {
        q = (t.d[i] - x) - (i ? e2 / q : 0.0);
        if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::fabs(t.d[i]) + std::fabs(x) + 1.0);
        if (q < 0) ++count;
    }
    return count;
}

// j-th smallest eigenvalue (0-based) by bisection on the Sturm count
double bisect_eigenvalue(const Tridiag& t, int j, double lo, double hi) {
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(t, mid) > j)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lo), std::fabs(hi)))
            break;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> lowest_eigenvalues(const Tridiag& t, int k) {
    double lo = t.d[0], hi = t.d[0];
    for (double x : t.d) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    lo -= 2.0 * std::fabs(t.e) + 1.0;
    hi += 2.0 * std::fabs(t.e) + 1.0;
    std::vector<double> ev;
    const int kk = std::min<int>(k, static_cast<int>(t.d.size()));
    for (int j = 0; j < kk; ++j) ev.push_back(bisect_eigenvalue(t, j, lo, hi));
    return ev;
}

double k_factor(const Molecule& mol, const UnitSystem& u) { return two_mu_over_hbar2(mol, u); }

} // namespace

RadialGrid default_grid(const PotentialParams& p, int N) {
    RadialGrid g;
    g.r_min = 1e-4;
    if (!(p.screening() > 0)) throw DegenerateScreeningError("default grid needs alpha + delta > 0; set r_max");
    g.r_max = 30.0 / p.screening();
    g.N = N;
    return g;
}

double effective_potential(const Molecule& mol, const UnitSystem& u, const PotentialParams& p, const FieldConfig& f,
                           int m, double r, OracleMode mode) {
    const double k = k_factor(mol, u);
    const double mx = m + f.xi;
    const double gamma = mx * mx - 0.25;
    if (mode == OracleMode::exact) {
        if (f.w != 0.0) throw std::invalid_argument("exact oracle mode supports zero magnetic field only");
        return k * evaluate_potential(p, r) + gamma / (r * r);
    }
    const DimensionlessParams d = dimensionless_params(mol, u, p, f, m);
    const double s = d.s;
    const double y = std::exp(-s * r);
    const double one_minus_y = -std::expm1(-s * r);
    const double num = (d.d3 + d.z2) * y * y + (d.d1 - d.d3 + d.d4 - d.z1 + d.z3) * y + (-d.d1 + d.d2 + d.gamma);
    return s * s * num / (one_minus_y * one_minus_y);
}

std::vector<double> fd_eigensolve(const Molecule& mol, const UnitSystem& u, const PotentialParams& p,
                                  const FieldConfig& f, int m, int k, const RadialGrid& grid, OracleMode mode) {
    const Tridiag t = assemble(mol, u, p, f, m, grid, mode);
    std::vector<double> ev = lowest_eigenvalues(t, k);
    const double kf = k_factor(mol, u);
    for (double& e : ev) e /= kf;
    return ev;
}

FdResult fd_eigensolve_refined(const Molecule& mol, const UnitSystem& u, const PotentialParams& p,
                               const FieldConfig& f, int m, int k, const RadialGrid& grid, double tol,
                               OracleMode mode) {
    // N -> 2N+1 halves the spacing exactly
    RadialGrid g1 = grid, g2 = grid, g3 = grid;
    g2.N = 2 * grid.N + 1;
    g3.N = 2 * g2.N + 1;
    const auto e1 = fd_eigensolve(mol, u, p, f, m, k, g1, mode);
    const auto e2 = fd_eigensolve(mol, u, p, f, m, k, g2, mode);
    const auto e3 = fd_eigensolve(mol, u, p, f, m, k, g3, mode);
    FdResult res;
    std::string bad;
    for (size_t j = 0; j < e1.size(); ++j) {
        const double r12 = (4.0 * e2[j] - e1[j]) / 3.0;
        const double r23 = (4.0 * e3[j] - e2[j]) / 3.0;
        res.E.push_back(r23);
        res.drift.push_back(std::fabs(r23 - r12));
        if (res.drift.back() > tol)
            bad += " level " + std::to_string(j) + " drift " + format_double(res.drift.back()) + " eV;";
    }
    if (!bad.empty()) throw UnresolvedGridError("grid not resolved:" + bad);
    return res;
}

int fd_count_below(const Molecule& mol, const UnitSystem& u, const PotentialParams& p, const FieldConfig& f, int m,
                   double E, const RadialGrid& grid, OracleMode mode) {
    const Tridiag t = assemble(mol, u, p, f, m, grid, mode);
    return sturm_count(t, E * k_factor(mol, u));
}

int fd_node_count(const Molecule& mol, const UnitSystem& u, const PotentialParams& p, const FieldConfig& f, int m,
                  int j, const RadialGrid& grid, OracleMode mode) {
    const Tridiag t = assemble(mol, u, p, f, m, grid, mode);
    const auto ev = lowest_eigenvalues(t, j + 1);
    if (static_cast<int>(ev.size()) <= j) throw std::invalid_argument("grid too small for requested level");
    const double lam = ev[j];
    const double gap = j > 0 ? lam - ev[j - 1] : 1.0;
    const double sigma = lam - 1e-6 * std::max(std::fabs(gap), 1e-8);
    const size_t n = t.d.size();
    std::vector<double> x(n, 1.0), c(n), dd(n);
    for (int it = 0; it < 3; ++it) {
        // Thomas algorithm for (A - sigma I) y = x
        dd[0] = t.d[0] - sigma;
        c[0] = x[0];
        for (size_t i = 1; i < n; ++i) {
            const double w = t.e / dd[i - 1];
            dd[i] = t.d[i] - sigma - w * t.e;
            c[i] = x[i] - w * c[i - 1];
        }
        std::vector<double> y(n);
        y[n - 1] = c[n - 1] / dd[n - 1];
        for (size_t i = n - 1; i-- > 0;) y[i] = (c[i] - t.e * y[i + 1]) / dd[i];
        double nrm = 0.0;
        for (double v : y) nrm = std::max(nrm, std::fabs(v));
        for (size_t i = 0; i < n; ++i) x[i] = y[i] / nrm;
    }
    int nodes = 0;
    double prev = 0.0;
    for (double v : x) {
        if (std::fabs(v) < 1e-7) continue;
        if (prev != 0.0 && (v > 0) != (prev > 0)) ++nodes;
        prev = v;
    }
    return nodes;
}

int VerifyReport::failures() const {
    int f = 0;
    for (const auto& e : entries)
        if (!e.pass) ++f;
    return f;
}

std::string VerifyReport::text() const {
    std::ostringstream o;
    o << "molecule cbar  m  n        w       xi      E_closed          E_fd   rel_err  status\n";
    for (const auto& e : entries) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-8s %4d %2d %2d %8.4f %8.4f %13.6f %13.6f %9.2e  %s%s%s\n",
                      e.molecule.c_str(), e.cbar, e.m, e.n, e.w, e.xi, e.E_closed, e.E_fd, e.rel_err,
                      e.pass ? "ok" : "FAIL", e.note.empty() ? "" : "  ", e.note.c_str());
        o << buf;
    }
    o << entries.size() << " compared, " << failures() << " failed, " << skipped
      << " non-normalizable levels skipped\n";
    return o.str();
}

std::string VerifyReport::csv() const {
    std::string out = csv_row({"molecule", "cbar", "m", "n", "w", "xi", "E_closed", "E_fd", "rel_err", "drift",
                               "normalizable", "pass", "note"});
    for (const auto& e : entries)
        out += csv_row({e.molecule, std::to_string(e.cbar), std::to_string(e.m), std::to_string(e.n),
                        format_double(e.w), format_double(e.xi), format_double(e.E_closed), format_double(e.E_fd),
                        format_double(e.rel_err), format_double(e.drift), e.normalizable ? "1" : "0",
                        e.pass ? "1" : "0", e.note});
    return out;
}

namespace {

struct Group {
    std::string molecule;
    int cbar;
    int m;
    FieldConfig field;
};

std::vector<Group> groups_of(const VerifyScope& s) {
    std::vector<Group> g;
    std::vector<FieldConfig> fields = s.fields;
    if (fields.empty() && !s.molecules.empty()) fields.push_back(FieldConfig{});
    for (const auto& mol : s.molecules)
        for (int cb : s.cbars)
            for (int m : s.ms)
                for (const auto& f : fields) g.push_back({mol, cb, m, f});
    return g;
}

std::pair<std::vector<VerifyEntry>, int> verify_group(const Group& g, const VerifyScope& s,
                                                      const MoleculeDatabase& db, const UnitSystem& u) {
    std::vector<VerifyEntry> out;
    int skipped = 0;
    const Molecule mol = lookup_molecule(g.molecule, db);
    SpectrumContext ctx = make_context(mol, u, g.cbar, s.convention, g.field);

    std::vector<VerifyEntry> pending;
    for (int n = 0; n <= s.n_top; ++n) {
        VerifyEntry e;
        e.molecule = mol.name;
        e.cbar = g.cbar;
        e.m = g.m;
        e.n = n;
        e.w = g.field.w;
        e.xi = g.field.xi;
        try {
            const DimensionlessParams d = ctx.params(g.m);
            const QRPhi q = qr_phi(d);
            const double om = omega(d, g.m, ctx.field, ctx.form) + s.omega_fault;
            const double rho = n + om;
            const double h = (q.R - rho * rho) / rho;
            e.E_closed = q.Q - q.phi * h * h;
            e.normalizable = h > 0;
        } catch (const std::exception& ex) {
            e.note = ex.what();
            e.pass = false;
            out.push_back(e);
            continue;
        }
        if (!e.normalizable && !s.include_unbound) {
            ++skipped;
            continue;
        }
        pending.push_back(e);
    }
    if (pending.empty()) return {out, skipped};

    try {
        const FdResult fd = fd_eigensolve_refined(mol, u, ctx.pot, ctx.field, g.m, s.n_top + 1,
                                                  default_grid(ctx.pot, s.N), s.drift_tol);
        for (auto& e : pending) {
            e.E_fd = fd.E[e.n];
            e.drift = fd.drift[e.n];
            e.rel_err = std::fabs(e.E_closed - e.E_fd) / std::max(std::fabs(e.E_closed), 1e-300);
            e.pass = e.rel_err <= s.tolerance;
            if (!e.normalizable) e.note = "non-normalizable closed-form level";
            out.push_back(e);
        }
    } catch (const std::exception& ex) {
        for (auto& e : pending) {
            e.pass = false;
            e.note = ex.what();
            out.push_back(e);
        }
    }
    return {out, skipped};
}

} // namespace

VerifyReport verify_closed_form(const VerifyScope& scope, const MoleculeDatabase& db, const UnitSystem& u) {
    VerifyReport rep;
    for (const auto& g : groups_of(scope)) {
        auto [entries, skipped] = verify_group(g, scope, db, u);
        rep.entries.insert(rep.entries.end(), entries.begin(), entries.end());
        rep.skipped += skipped;
    }
    return rep;
}

VerifyReport verify_closed_form_parallel(const VerifyScope& scope, const MoleculeDatabase& db,
                                         const UnitSystem& u) {
    const auto groups = groups_of(scope);
    const int n = static_cast<int>(groups.size());
    std::vector<std::pair<std::vector<VerifyEntry>, int>> parts(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) parts[i] = verify_group(groups[i], scope, db, u);
    VerifyReport rep;
    for (auto& p : parts) {
        rep.entries.insert(rep.entries.end(), p.first.begin(), p.first.end());
        rep.skipped += p.second;
    }
    return rep;
}

namespace {

using hp = boost::multiprecision::cpp_bin_float_50;

hp partition_hp(const SpectrumRecast& r, double beta) {
    const hp Q = r.Q, R = r.R, phi = r.phi, om = r.omega, b = beta;
    auto E = [&](int n) {
        const hp rho = hp(n) + om;
        const hp h = (R - rho * rho) / rho;
        return Q - phi * h * h;
    };
    const hp e0 = E(0);
    hp z = 0;
    for (int n = 0; n <= r.n_max; ++n) z += exp(-b * (E(n) - e0));
    return z;
}

} // namespace

double partition_high_precision(const SpectrumRecast& r, double beta) {
    return partition_hp(r, beta).convert_to<double>();
}

std::string partition_high_precision_string(const SpectrumRecast& r, double beta, int digits) {
    return partition_hp(r, beta).str(digits);
}

} // namespace iskp
