#pragma once

#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

namespace heunkit {

using cplx = std::complex<double>;

namespace odekit {

/// Dense polynomial with complex coefficients stored in ascending degree.
/// The zero polynomial has an empty coefficient list and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs);
    Polynomial(std::initializer_list<cplx> coeffs);

    static Polynomial constant(cplx c);
    /// (z - root)^power
    static Polynomial linear_power(cplx root, int power);
    static Polynomial monomial(cplx c, int degree);
    static Polynomial from_roots(const std::vector<cplx>& roots, cplx leading = 1.0);

    const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    cplx coeff(int i) const noexcept;
    cplx leading() const noexcept { return is_zero() ? cplx{} : coeffs_.back(); }

    cplx operator()(cplx z) const noexcept;
    Polynomial derivative() const;

    /// Sum of |a_i| max(1,|z|)^i; the magnitude against which values near z are judged.
    double scale_at(cplx z) const noexcept;

    /// Coefficients c_j of the expansion P(z) = sum_j c_j (z - z0)^j.
    std::vector<cplx> taylor_coeffs(cplx z0) const;
    /// Multiplicity of z0 as a root, judged with relative tolerance tol.
    int root_multiplicity(cplx z0, double tol) const;

    /// Coefficient list reversed against a nominal degree n: z^n P(1/z).
    Polynomial reversed(int n) const;

    /// Drops leading coefficients below rel_tol * max|a_i|.
    Polynomial trimmed(double rel_tol) const;

    /// Quotient and remainder of Euclidean division.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
    /// Synthetic division by (z - root); the remainder is discarded.
    Polynomial deflate(cplx root) const;

    /// All complex roots (Aberth-Ehrlich), degree() of them.
    std::vector<cplx> roots() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(cplx s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
    friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void normalize();
    std::vector<cplx> coeffs_;
};

} // namespace odekit
} // namespace heunkit
