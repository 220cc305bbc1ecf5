#include "iskp/special_functions.hpp"

#include <cmath>
#include <limits>

namespace iskp {

namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257390;
constexpr double kMaxExp = 708.503061461606;

} // namespace

// Poppe & Wijers, ACM TOMS 16 (1990) 38-46, algorithm 680.
cplx faddeeva_w(cplx z) {
    const double xi = z.real();
    const double yi = z.imag();
    const double xabs = std::fabs(xi);
    const double yabs = std::fabs(yi);
    if (!std::isfinite(xabs) || !std::isfinite(yabs) || xabs > 0.5e154 || yabs > 0.5e154)
        throw ErfDomainError("faddeeva_w: argument too large");

    const double x = xabs / 6.3;
    const double y = yabs / 4.4;
    double qrho = x * x + y * y;
    const double xquad = xabs * xabs - yabs * yabs;
    const double yquad = 2.0 * xabs * yabs;

    double u = 0.0, v = 0.0;
    double u2 = 0.0, v2 = 0.0;
    const bool small = qrho < 0.085264;

    if (small) {
        // power series of erf around the origin, then w = exp(-z^2)(1 - erf(-iz))
        qrho = (1.0 - 0.85 * y) * std::sqrt(qrho);
        const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
        int j = 2 * n + 1;
        double xsum = 1.0 / j;
        double ysum = 0.0;
        for (int i = n; i >= 1; --i) {
            j -= 2;
            const double xaux = (xsum * xquad - ysum * yquad) / i;
            ysum = (xsum * yquad + ysum * xquad) / i;
            xsum = xaux + 1.0 / j;
        }
        const double u1 = -kTwoOverSqrtPi * (xsum * yabs + ysum * xabs) + 1.0;
        const double v1 = kTwoOverSqrtPi * (xsum * xabs - ysum * yabs);
        if (-xquad > kMaxExp) throw ErfDomainError("faddeeva_w: exp overflow");
        const double daux = std::exp(-xquad);
        u2 = daux * std::cos(yquad);
        v2 = -daux * std::sin(yquad);
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        // Laplace continued fraction, with the truncated Taylor correction inside the unit ellipse
        double h = 0.0;
        int kapn = 0;
        int nu = 0;
        if (qrho > 1.0) {
            qrho = std::sqrt(qrho);
            nu = static_cast<int>(3.0 + 1442.0 / (26.0 * qrho + 77.0));
        } else {
            qrho = (1.0 - y) * std::sqrt(1.0 - qrho);
            h = 1.88 * qrho;
            kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
            nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
        }
        const double h2 = 2.0 * h;
        const bool b = h > 0.0;
        double qlambda = b ? std::pow(h2, kapn) : 0.0;
        double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
        for (int n = nu; n >= 0; --n) {
            const double np1 = n + 1.0;
            double tx = yabs + h + np1 * rx;
            double ty = xabs - np1 * ry;
            const double c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if (b && n <= kapn) {
                tx = qlambda + sx;
                sx = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                qlambda /= h2;
            }
        }
        if (h == 0.0) {
            u = kTwoOverSqrtPi * rx;
            v = kTwoOverSqrtPi * ry;
        } else {
            u = kTwoOverSqrtPi * sx;
            v = kTwoOverSqrtPi * sy;
        }
        if (yabs == 0.0) u = std::exp(-xabs * xabs);
    }

    // map back from the first quadrant
    if (yi < 0.0) {
        if (small) {
            u2 = 2.0 * u2;
            v2 = 2.0 * v2;
        } else {
            if (-xquad > kMaxExp) throw ErfDomainError("faddeeva_w: exp overflow");
            const double w1 = 2.0 * std::exp(-xquad);
            u2 = w1 * std::cos(yquad);
            v2 = -w1 * std::sin(yquad);
        }
        u = u2 - u;
        v = v2 - v;
        if (xi > 0.0) v = -v;
    } else if (xi < 0.0) {
        v = -v;
    }
    return {u, v};
}

cplx erf_series(cplx z) {
    // erf(z) = 2/sqrt(pi) sum (-1)^k z^(2k+1) / (k! (2k+1))
    const cplx z2 = z * z;
    cplx term = z; // (-1)^k z^(2k+1) / k!
    cplx sum = z;
    for (int k = 1; k < 400; ++k) {
        term *= -z2 / static_cast<double>(k);
        const cplx add = term / static_cast<double>(2 * k + 1);
        sum += add;
        if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
    }
    return kTwoOverSqrtPi * sum;
}

cplx erf_complex(cplx z) {
    const double x = z.real();
    const double y = z.imag();
    if (!std::isfinite(x) || !std::isfinite(y)) throw ErfDomainError("erf_complex: non-finite argument");
    if (y == 0.0) return {std::erf(x), 0.0};
    if (x < 0.0) return -erf_complex(-z);
    // now Re z >= 0
    if (std::abs(z) < 1.0) {
        cplx r = erf_series(z);
        if (x == 0.0) r = {0.0, r.imag()};
        return r;
    }
    // erf(z) = 1 - exp(-z^2) w(iz); iz lies in the upper half plane
    const cplx mz2 = -z * z;
    if (mz2.real() > kMaxExp) throw ErfDomainError("erf_complex: result overflows");
    const cplx r = 1.0 - std::exp(mz2) * faddeeva_w(cplx(-y, x));
    if (x == 0.0) return {0.0, r.imag()};
    return r;
}

double gauss_2f1_terminating(double a, double b, double c, double s) {
    const double na = -a;
    const double n_round = std::round(na);
    if (n_round < 0 || std::fabs(na - n_round) > 1e-6)
        throw NonterminatingSeriesError("2F1: a = " + std::to_string(a) + " is not a nonpositive integer");
    const int n = static_cast<int>(n_round);
    const double cr = std::round(c);
    if (n > 0 && c <= 0 && std::fabs(c - cr) < 1e-12 && -cr < n)
        throw HypergeometricPoleError("2F1: c is a nonpositive integer inside the series range");
    const double aa = -static_cast<double>(n);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < n; ++k) {
        term *= (aa + k) * (b + k) / ((c + k) * (k + 1)) * s;
        sum += term;
    }
    return sum;
}

} // namespace iskp
