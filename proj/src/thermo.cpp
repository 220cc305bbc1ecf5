#include "iskp/thermo.hpp"

#include <cmath>
#include <numbers>

#include "iskp/special_functions.hpp"

namespace iskp {

namespace {

SpectrumRecast build_recast(const SpectrumContext& ctx, int m) {
    const DimensionlessParams d = ctx.params(m);
    const QRPhi q = qr_phi(d);
    SpectrumRecast r;
    r.Q = q.Q;
    r.R = q.R;
    r.phi = q.phi;
    r.omega = omega(d, m, ctx.field, ctx.form);
    const NMax nm = n_max(q, r.omega);
    r.n_max = nm.n;
    r.bound = nm.bound;
    return r;
}

// Derivatives of E(rho) = Q - phi h^2, h = R/rho - rho, with respect to rho (= n).
struct EnergyDerivs {
    double e1, e2, e3;
};

EnergyDerivs energy_derivs(const SpectrumRecast& r, double rho) {
    const double R = r.R;
    const double h = R / rho - rho;
    const double h1 = -R / (rho * rho) - 1.0;
    const double h2 = 2.0 * R / (rho * rho * rho);
    const double h3 = -6.0 * R / (rho * rho * rho * rho);
    EnergyDerivs d;
    d.e1 = -2.0 * r.phi * h * h1;
    d.e2 = -2.0 * r.phi * (h1 * h1 + h * h2);
    d.e3 = -2.0 * r.phi * (3.0 * h1 * h2 + h * h3);
    return d;
}

} // namespace

SpectrumRecast recast(const SpectrumContext& ctx, int m) {
    SpectrumRecast r = build_recast(ctx, m);
    const DimensionlessParams d = ctx.params(m);
    const int top = std::max(r.n_max, 0);
    for (int n = 0; n <= top; ++n) {
        const double e_recast = recast_energy(r, n);
        const double e_direct = ctx.level(n, m).E;
        const double e_eps = energy_via_epsilon(d, r.omega, n);
        const double scale = std::max(1.0, std::fabs(e_direct));
        if (std::fabs(e_recast - e_direct) > 1e-10 * scale || std::fabs(e_eps - e_direct) > 1e-10 * scale)
            throw RecastInconsistencyError("recast energy disagrees with the closed form at n = " +
                                           std::to_string(n));
    }
    return r;
}

SpectrumRecast recast_frozen(const SpectrumContext& ctx, int m, int n_max) {
    SpectrumRecast r = build_recast(ctx, m);
    r.n_max = n_max;
    return r;
}

double recast_energy(const SpectrumRecast& r, int n) {
    const double rho = n + r.omega;
    const double h = (r.R - rho * rho) / rho;
    return r.Q - r.phi * h * h;
}

std::vector<double> recast_levels(const SpectrumRecast& r) {
    std::vector<double> e;
    for (int n = 0; n <= r.n_max; ++n) e.push_back(recast_energy(r, n));
    return e;
}

double partition_direct(const SpectrumRecast& r, double beta) {
    const double e0 = recast_energy(r, 0);
    double z = 0.0;
    for (int n = 0; n <= r.n_max; ++n) z += std::exp(-beta * (recast_energy(r, n) - e0));
    return z;
}

EmResult partition_euler_maclaurin(const SpectrumRecast& r, double beta, EmEnds ends) {
    EmResult res;
    if (!r.bound || r.n_max == 0) {
        res.Z = partition_direct(r, beta);
        res.fallback = true;
        res.warning = r.bound ? "n_max = 0: Euler-Maclaurin range is empty, using the direct sum"
                              : "no bound states: using the single-level direct sum";
        return res;
    }
    const double e0 = recast_energy(r, 0);
    const double N = r.n_max;
    const double a = std::sqrt(beta * r.phi);
    const cplx p(0.0, a);
    const cplx q(0.0, a * r.R);
    const cplx pq2 = 2.0 * p * q;
    auto F = [&](double x) {
        const cplx t1 = std::exp(pq2) * erf_complex(p * x + q / x);
        const cplx t2 = std::exp(-pq2) * erf_complex(p * x - q / x);
        return std::sqrt(std::numbers::pi) / (4.0 * p) * (t1 + t2);
    };
    const double pref = std::exp(-beta * (r.Q + 2.0 * r.phi * r.R - e0));
    const cplx I1 = pref * (F(r.omega + N) - F(r.omega));

    auto f = [&](double n) { return std::exp(-beta * (recast_energy(r, static_cast<int>(n)) - e0)); };
    // f = exp(g), g = -beta (E - E0)
    auto odd_derivs = [&](double n, double fn, double& f1, double& f3) {
        const EnergyDerivs d = energy_derivs(r, n + r.omega);
        const double g1 = -beta * d.e1, g2 = -beta * d.e2, g3 = -beta * d.e3;
        f1 = g1 * fn;
        f3 = (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) * fn;
    };
    const double c2 = BernoulliConstants::B2 / 2.0;
    const double c4 = BernoulliConstants::B4 / 24.0;

    const double f0 = f(0);
    double f1_0, f3_0;
    odd_derivs(0.0, f0, f1_0, f3_0);
    cplx total = 0.5 * f0 + I1 - (c2 * f1_0 + c4 * f3_0);
    if (ends == EmEnds::both_ends) {
        const double fN = f(N);
        double f1_N, f3_N;
        odd_derivs(N, fN, f1_N, f3_N);
        total += 0.5 * fN + c2 * f1_N + c4 * f3_N;
    }
    res.Z = total.real();
    res.imag = total.imag();
    res.integral = I1.real();
    return res;
}

double log_partition_excess(const SpectrumRecast& r, double beta, const ThermoSettings& s) {
    const double count = r.n_max + 1.0;
    if (s.method == PartitionMethod::euler_maclaurin)
        return std::log(partition_euler_maclaurin(r, beta, s.ends).Z / count);
    // log1p/expm1 keep the small beta-dependent part free of the ln(n_max+1) offset
    const double e0 = recast_energy(r, 0);
    double acc = 0.0;
    for (int n = 1; n <= r.n_max; ++n) acc += std::expm1(-beta * (recast_energy(r, n) - e0));
    return std::log1p(acc / count);
}

double log_partition(const SpectrumRecast& r, double beta, const ThermoSettings& s) {
    return std::log(r.n_max + 1.0) + log_partition_excess(r, beta, s);
}

double fluctuation_heat_capacity(const SpectrumRecast& r, double beta) {
    const double e0 = recast_energy(r, 0);
    double z = 0.0, m1 = 0.0, m2 = 0.0;
    for (int n = 0; n <= r.n_max; ++n) {
        const double de = recast_energy(r, n) - e0;
        const double wgt = std::exp(-beta * de);
        z += wgt;
        m1 += wgt * de;
        m2 += wgt * de * de;
    }
    m1 /= z;
    m2 /= z;
    // two-pass variance keeps the cancellation out of m2 - m1^2
    double var = 0.0;
    for (int n = 0; n <= r.n_max; ++n) {
        const double de = recast_energy(r, n) - e0;
        var += std::exp(-beta * de) * (de - m1) * (de - m1);
    }
    var /= z;
    return beta * beta * var;
}

ThermoPoint observables(const SpectrumContext& ctx, int m, double beta, const ThermoSettings& s) {
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
    const SpectrumRecast rec = recast(ctx, m);
    ThermoPoint tp;
    tp.beta = beta;
    tp.field = ctx.field;
    tp.m = m;
    // derivatives act on the excess only; ln(n_max+1) is constant
    auto lnz_beta = [&](double b) { return log_partition_excess(rec, b, s); };
    const double lnz = log_partition(rec, beta, s);
    tp.Z = std::exp(lnz);
    if (s.method == PartitionMethod::euler_maclaurin) {
        const EmResult em = partition_euler_maclaurin(rec, beta, s.ends);
        if (em.fallback) tp.warning = em.warning;
    }

    const DerivativeResult d1 = richardson_first(lnz_beta, beta, s.beta_deriv);
    const DerivativeResult d2 = richardson_second(lnz_beta, beta, s.beta_deriv);
    tp.dlnZ_err = d1.error;
    tp.d2lnZ_err = d2.error;
    tp.dlnZ_plain = d1.plain;
    tp.d2lnZ_plain = d2.plain;
    bool ok = d1.converged && d2.converged;

    tp.F = -lnz / beta;
    tp.U = -d1.value;
    tp.S = lnz - beta * d1.value;
    tp.C = beta * beta * d2.value;
    tp.C_fluct = fluctuation_heat_capacity(rec, beta);

    if (s.magnetic) {
        auto lnz_w = [&](double w) {
            SpectrumContext c = ctx;
            c.field.w = w;
            return log_partition_excess(recast_frozen(c, m, rec.n_max), beta, s);
        };
        const DerivativeResult m1 = richardson_first(lnz_w, ctx.field.w, s.field_deriv);
        const DerivativeResult m2 = richardson_second(lnz_w, ctx.field.w, s.field_deriv);
        tp.M = m1.value / beta;
        tp.chi = m2.value / beta;
        ok = ok && m1.converged && m2.converged;
    }
    tp.derivatives_converged = ok;
    if (!ok)
        throw StepCollapseError("Richardson extrapolation did not converge at beta = " + std::to_string(beta));
    return tp;
}

std::string to_string(SweepVariable v) {
    switch (v) {
    case SweepVariable::beta: return "beta";
    case SweepVariable::B: return "B";
    case SweepVariable::Phi: return "Phi";
    }
    return "?";
}

SweepVariable parse_sweep_variable(const std::string& s) {
    if (s == "beta") return SweepVariable::beta;
    if (s == "B") return SweepVariable::B;
    if (s == "Phi") return SweepVariable::Phi;
    throw std::invalid_argument("unknown sweep variable '" + s + "'; expected beta, B or Phi");
}

namespace {

SweepRow sweep_point(const SpectrumContext& base, const SweepSpec& spec, const ThermoSettings& s, double x) {
    SweepRow row;
    row.x = x;
    try {
        SpectrumContext ctx = base;
        double beta = spec.beta;
        double B = spec.B;
        double Phi = spec.Phi;
        switch (spec.variable) {
        case SweepVariable::beta: beta = x; break;
        case SweepVariable::B: B = x; break;
        case SweepVariable::Phi: Phi = x; break;
        }
        ctx.field = field_from_raw(B, Phi, ctx.pot, spec.convention, spec.calibration);
        row.point = observables(ctx, spec.m, beta, s);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

void check_monotone(const std::vector<double>& g) {
    for (size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw std::invalid_argument("sweep grid must be strictly increasing");
}

} // namespace

std::vector<SweepRow> sweep(const SpectrumContext& base, const SweepSpec& spec, const ThermoSettings& s) {
    check_monotone(spec.grid);
    std::vector<SweepRow> rows;
    rows.reserve(spec.grid.size());
    for (double x : spec.grid) rows.push_back(sweep_point(base, spec, s, x));
    return rows;
}

std::vector<SweepRow> sweep_parallel(const SpectrumContext& base, const SweepSpec& spec, const ThermoSettings& s) {
    check_monotone(spec.grid);
    const int n = static_cast<int>(spec.grid.size());
    std::vector<SweepRow> rows(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) rows[i] = sweep_point(base, spec, s, spec.grid[i]);
    return rows;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (n <= 0) return {};
    if (!(lo > 0) || !(hi > lo)) throw std::invalid_argument("log grid needs 0 < lo < hi");
    if (n == 1) return {lo};
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (n <= 0) return {};
    if (n == 1) return {lo};
    if (!(hi > lo)) throw std::invalid_argument("linear grid needs lo < hi");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

std::vector<double> default_beta_grid() { return log_grid(0.1, 5.0, 30); }

} // namespace iskp
