#pragma once

#include <complex>
#include <stdexcept>

namespace iskp {

using cplx = std::complex<double>;

struct BernoulliConstants {
    static constexpr double B2 = 1.0 / 6.0;
    static constexpr double B4 = -1.0 / 30.0;
};

class ErfDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NonterminatingSeriesError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class HypergeometricPoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
cplx faddeeva_w(cplx z);

// Entire error function. Throws ErfDomainError when the result would overflow.
cplx erf_complex(cplx z);

// Maclaurin series of erf, summed until the terms stop contributing. Reliable for |z| <~ 3.
cplx erf_series(cplx z);

// Terminating 2F1(a, b; c; s) with a = -n. Throws when a is not a nonpositive integer
// (within 1e-6) or when c hits a nonpositive integer before the series ends.
double gauss_2f1_terminating(double a, double b, double c, double s);

} // namespace iskp
