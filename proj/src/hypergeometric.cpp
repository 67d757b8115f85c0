#include "heunkit/hypergeometric.hpp"

#include "heunkit/error.hpp"

#include <cmath>

namespace heunkit::reference {

namespace {

constexpr double kTailTol = 1e-16;
constexpr int kMaxTerms = 200000;

} // namespace

bool is_pole_parameter(cplx c)
{
    return std::abs(c.imag()) <= 1e-12 && c.real() < 0.5 && std::abs(c.real() - std::round(c.real())) <= 1e-12;
}

cplx gauss_2f1(cplx a, cplx b, cplx c, cplx z)
{
    if (is_pole_parameter(c))
        throw Error(ErrorKind::PoleParameter, "c is a non-positive integer");
    if (std::abs(z) >= 1.0)
        throw Error(ErrorKind::SlowConvergence, "|z| >= 1 is outside the series domain");
    cplx sum = 1.0, term = 1.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double kk = k;
        const cplx ratio = (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
        term *= ratio;
        sum += term;
        if (term == cplx{})
            return sum;
        const double r = std::abs(ratio);
        // once the terms shrink geometrically, bound the remainder by the geometric tail
        if (r < 1.0 && std::abs(term) * r / (1.0 - r) <= kTailTol * std::abs(sum))
            return sum;
    }
    throw Error(ErrorKind::SlowConvergence, "2F1 series did not converge");
}

cplx confluent_1f1(cplx a, cplx c, cplx z)
{
    if (is_pole_parameter(c))
        throw Error(ErrorKind::PoleParameter, "c is a non-positive integer");
    cplx sum = 1.0, term = 1.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double kk = k;
        const cplx ratio = (a + kk) / ((c + kk) * (kk + 1.0)) * z;
        term *= ratio;
        sum += term;
        if (term == cplx{})
            return sum;
        const double r = std::abs(ratio);
        if (r < 1.0 && std::abs(term) * r / (1.0 - r) <= kTailTol * std::abs(sum))
            return sum;
    }
    throw Error(ErrorKind::SlowConvergence, "1F1 series did not converge");
}

} // namespace heunkit::reference
