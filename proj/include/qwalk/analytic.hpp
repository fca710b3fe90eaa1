#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "qwalk/lattice.hpp"

namespace qwalk {

using Rational = mpq_class;

// Laurent polynomial in the formal variable w = e^{ik cos(theta)}, stored as
// the N+1 coefficients of exponents N-2l, l = 0..N (only every other
// exponent appears for a fixed parity, which is all the walk recursion
// produces). Exact rational coefficients throughout.
class LaurentPolynomial {
  public:
    // order N with all coefficients zero
    explicit LaurentPolynomial(int order);

    int order() const { return order_; }
    // coefficient of w^(order-2l)
    const Rational& coeff(int l) const { return coeff_[static_cast<size_t>(l)]; }
    Rational& coeff(int l) { return coeff_[static_cast<size_t>(l)]; }

    // z = w^-1 + w and ztilde = w^-1 - w
    static LaurentPolynomial z();
    static LaurentPolynomial ztilde();
    static LaurentPolynomial constant(const Rational& c);  // order 0

    // multiplication by ztilde: coeff of exponent e becomes
    // (coeff at e+1) - (coeff at e-1); order grows by one
    LaurentPolynomial times_ztilde() const;

    LaurentPolynomial operator*(const LaurentPolynomial& rhs) const;
    // addition embeds the lower order into the higher; parities must match
    LaurentPolynomial operator+(const LaurentPolynomial& rhs) const;
    LaurentPolynomial scaled(const Rational& c) const;
    bool operator==(const LaurentPolynomial& rhs) const;

  private:
    int order_;
    std::vector<Rational> coeff_;
};

// Exact coefficients a_{l,1} and a_{l,2}, l = 0..N, of the step-N walk
// polynomials. Both closed form and recursion yield integers; they agree
// exactly (the closed-form triple sums are 2^N times integer coefficient
// vectors, with the 1/2^N prefactor folded in).
struct AnalyticCoefficients {
    int N = 0;
    std::vector<Rational> a1;
    std::vector<Rational> a2;
};

inline constexpr int default_max_coefficient_order = 64;

// Triple binomial sums in exact integer arithmetic:
//   a_{l,1}: (C(N,2u)-C(N,2u+1)) C(u,m) C(N-2m,l-m)   (-1)^(N-l+m) 8^m
//          +2 C(N,2u+1) C(u,m) C(N-2m-1,l-m-1)        (-1)^(N-l+m) 8^m
//          -2 C(N,2u+1) C(u,m) C(N-2m-1,l-m)          (-1)^(N-l+m) 8^m
//   a_{l,2}: C(N+1,2u+1) C(u,m) C(N-2m,l-m)           (-1)^(N-l+m) 8^m
// summed over u = 0..floor(N/2), m (C(a,b) = 0 outside 0 <= b <= a),
// all divided by 2^N.
AnalyticCoefficients coefficients_closed_form(int N, int max_N = default_max_coefficient_order);

// Independent oracle: builds p1, p2 by the exact shift-and-add recursion
//   p^(N) = ztilde p^(N-1) + 2 p^(N-2),  p1^(0) = p2^(0) = 1,
//   p1^(1) = z, p2^(1) = ztilde,
// and reads the coefficient vectors off the Laurent representation.
AnalyticCoefficients coefficients_recursion(int N, int max_N = default_max_coefficient_order);

// Closed-form momentum distribution of the Hadamard-executed walk at
// resonance after j steps (N = j-1):
//   P(n) = 1/(2^{j+1} S) [ S1^2 + S2^2 + S3^2 + S4^2 ],
//   S1 = sum_{l,s} a_{l,1} (-1)^s J_{n-s}( (N-2l-1) k ),
//   S2 = sum_{l,s} a_{l,2} (-1)^s J_{n-s}( (N-2l+1) k ),
//   S3, S4 the same at negated Bessel argument.
// Throws TruncationError if the lattice cannot hold the Bessel spread.
std::vector<double> analytic_distribution(int j, double k, const RatchetSpec& spec,
                                          const MomentumLattice& lattice);

// exact "numerator/denominator" strings, columns N, l, a1, a2
std::string coefficients_to_csv(const AnalyticCoefficients& coeffs);

}  // namespace qwalk
