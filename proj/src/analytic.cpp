#include "qwalk/analytic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qwalk/bessel.hpp"
#include "qwalk/evolution.hpp"

namespace qwalk {

namespace {

void check_order(int N, int max_N) {
    if (N < 0) throw std::invalid_argument("coefficient order N must be >= 0");
    if (N > max_N)
        throw std::length_error("coefficient order N = " + std::to_string(N) +
                                " exceeds configured maximum " + std::to_string(max_N));
}

// C(a, b) with the convention C(a, b) = 0 outside 0 <= b <= a; this also
// absorbs the m <= u constraint of the sums.
mpz_class binomial(long a, long b) {
    if (b < 0 || a < 0 || b > a) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
}

int sign_pm(long e) { return (e % 2 == 0) ? 1 : -1; }  // (-1)^e for any integer e

}  // namespace

LaurentPolynomial::LaurentPolynomial(int order)
    : order_(order), coeff_(static_cast<size_t>(order) + 1, Rational(0)) {
    if (order < 0) throw std::invalid_argument("LaurentPolynomial: order must be >= 0");
}

LaurentPolynomial LaurentPolynomial::z() {
    LaurentPolynomial p(1);  // w^-1 + w
    p.coeff(0) = 1;
    p.coeff(1) = 1;
    return p;
}

LaurentPolynomial LaurentPolynomial::ztilde() {
    LaurentPolynomial p(1);  // w^-1 - w
    p.coeff(0) = -1;
    p.coeff(1) = 1;
    return p;
}

LaurentPolynomial LaurentPolynomial::constant(const Rational& c) {
    LaurentPolynomial p(0);
    p.coeff(0) = c;
    return p;
}

LaurentPolynomial LaurentPolynomial::times_ztilde() const {
    // (w^-1 - w) * sum_l c_l w^{order-2l}: the w^-1 part lands one slot down,
    // the -w part one slot up, in the order+1 layout
    LaurentPolynomial out(order_ + 1);
    for (int l = 0; l <= order_; ++l) {
        out.coeff(l + 1) += coeff(l);
        out.coeff(l) -= coeff(l);
    }
    return out;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& rhs) const {
    LaurentPolynomial out(order_ + rhs.order_);
    for (int i = 0; i <= order_; ++i)
        for (int j = 0; j <= rhs.order_; ++j) out.coeff(i + j) += coeff(i) * rhs.coeff(j);
    return out;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& rhs) const {
    const LaurentPolynomial& high = (order_ >= rhs.order_) ? *this : rhs;
    const LaurentPolynomial& low = (order_ >= rhs.order_) ? rhs : *this;
    if ((high.order_ - low.order_) % 2 != 0)
        throw std::invalid_argument("LaurentPolynomial: mismatched exponent parity in +");
    LaurentPolynomial out = high;
    const int offset = (high.order_ - low.order_) / 2;
    for (int l = 0; l <= low.order_; ++l) out.coeff(l + offset) += low.coeff(l);
    return out;
}

LaurentPolynomial LaurentPolynomial::scaled(const Rational& c) const {
    LaurentPolynomial out = *this;
    for (int l = 0; l <= order_; ++l) out.coeff(l) *= c;
    return out;
}

bool LaurentPolynomial::operator==(const LaurentPolynomial& rhs) const {
    return order_ == rhs.order_ && coeff_ == rhs.coeff_;
}

AnalyticCoefficients coefficients_closed_form(int N, int max_N) {
    check_order(N, max_N);
    AnalyticCoefficients out;
    out.N = N;
    out.a1.reserve(static_cast<size_t>(N) + 1);
    out.a2.reserve(static_cast<size_t>(N) + 1);

    std::vector<mpz_class> pow8(static_cast<size_t>(N) + 1);
    pow8[0] = 1;
    for (size_t m = 1; m < pow8.size(); ++m) pow8[m] = pow8[m - 1] * 8;

    mpz_class two_N;
    mpz_ui_pow_ui(two_N.get_mpz_t(), 2, static_cast<unsigned long>(N));

    for (long l = 0; l <= N; ++l) {
        mpz_class t1 = 0;
        mpz_class t2 = 0;
        for (long u = 0; u <= N / 2; ++u) {
            const mpz_class even_odd = binomial(N, 2 * u) - binomial(N, 2 * u + 1);
            const mpz_class odd = binomial(N, 2 * u + 1);
            const mpz_class odd2 = binomial(N + 1, 2 * u + 1);
            for (long m = 0; m <= l; ++m) {
                const mpz_class um = binomial(u, m);
                if (um == 0) continue;
                const mpz_class s = sign_pm(N - l + m) * pow8[static_cast<size_t>(m)] * um;
                t1 += s * even_odd * binomial(N - 2 * m, l - m);
                if (m <= l - 1) t1 += 2 * s * odd * binomial(N - 2 * m - 1, l - m - 1);
                t1 -= 2 * s * odd * binomial(N - 2 * m - 1, l - m);
                t2 += s * odd2 * binomial(N - 2 * m, l - m);
            }
        }
        out.a1.emplace_back(t1, two_N);
        out.a2.emplace_back(t2, two_N);
        out.a1.back().canonicalize();
        out.a2.back().canonicalize();
    }
    return out;
}

AnalyticCoefficients coefficients_recursion(int N, int max_N) {
    check_order(N, max_N);

    const auto collect = [N](const LaurentPolynomial& p1, const LaurentPolynomial& p2) {
        AnalyticCoefficients out;
        out.N = N;
        for (int l = 0; l <= N; ++l) {
            out.a1.push_back(p1.coeff(l));
            out.a2.push_back(p2.coeff(l));
        }
        return out;
    };

    LaurentPolynomial p1_prev = LaurentPolynomial::constant(1);
    LaurentPolynomial p2_prev = LaurentPolynomial::constant(1);
    if (N == 0) return collect(p1_prev, p2_prev);

    LaurentPolynomial p1 = LaurentPolynomial::z();
    LaurentPolynomial p2 = LaurentPolynomial::ztilde();
    for (int order = 2; order <= N; ++order) {
        LaurentPolynomial next1 = p1.times_ztilde() + p1_prev.scaled(2);
        LaurentPolynomial next2 = p2.times_ztilde() + p2_prev.scaled(2);
        p1_prev = std::move(p1);
        p2_prev = std::move(p2);
        p1 = std::move(next1);
        p2 = std::move(next2);
    }
    return collect(p1, p2);
}

std::vector<double> analytic_distribution(int j, double k, const RatchetSpec& spec,
                                          const MomentumLattice& lattice) {
    if (j < 1) throw std::invalid_argument("analytic_distribution: j must be >= 1");
    if (!std::isfinite(k) || k < 0.0)
        throw std::invalid_argument("analytic_distribution: k must be finite and >= 0");
    spec.validate();
    for (int s : spec.classes)
        if (!lattice.contains(s))
            throw std::out_of_range("analytic_distribution: class outside lattice");

    const int N = j - 1;
    // Bessel arguments reach (N+1)k; beyond argument + margin the kernels
    // carry no weight, so the lattice must extend at least that far past the
    // outermost classes.
    const int reach = static_cast<int>(std::ceil((N + 1) * k)) + 5;
    int min_class = spec.classes.front();
    int max_class = min_class;
    for (int s : spec.classes) {
        min_class = std::min(min_class, s);
        max_class = std::max(max_class, s);
    }
    if (lattice.n_min > min_class - reach || lattice.n_max < max_class + reach)
        throw TruncationError("analytic_distribution: lattice too small for Bessel arguments up to " +
                              std::to_string((N + 1) * k));

    const AnalyticCoefficients coeffs = coefficients_closed_form(N);
    std::vector<double> a1(coeffs.a1.size()), a2(coeffs.a2.size());
    for (size_t l = 0; l < a1.size(); ++l) {
        a1[l] = coeffs.a1[l].get_d();
        a2[l] = coeffs.a2[l].get_d();
    }

    const int size = lattice.size();
    std::vector<double> s1(static_cast<size_t>(size), 0.0), s2 = s1, s3 = s1, s4 = s1;

    // max |order| needed: lattice endpoints relative to each class
    int max_order = 0;
    for (int s : spec.classes)
        max_order = std::max({max_order, std::abs(lattice.n_min - s), std::abs(lattice.n_max - s)});

    for (int l = 0; l <= N; ++l) {
        const double arg1 = (N - 2 * l - 1) * k;
        const double arg2 = (N - 2 * l + 1) * k;
        const std::vector<double> row1 = bessel_j_sequence(max_order, std::abs(arg1));
        const std::vector<double> row2 = bessel_j_sequence(max_order, std::abs(arg2));
        // J_d(arg) for d of either sign and the sign of the argument itself,
        // via J_{-d}(x) = J_d(-x) = (-1)^d J_d(x)
        const auto eval = [](const std::vector<double>& row, double arg, int d) {
            const int ad = std::abs(d);
            double v = row[static_cast<size_t>(ad)];
            if (arg < 0.0 && ad % 2 != 0) v = -v;
            if (d < 0 && ad % 2 != 0) v = -v;
            return v;
        };
        for (const int s : spec.classes) {
            const double class_sign = (((s % 2) + 2) % 2 == 0) ? 1.0 : -1.0;  // (-1)^s
            for (int i = 0; i < size; ++i) {
                const int d = lattice.momentum_at(i) - s;
                s1[static_cast<size_t>(i)] += a1[static_cast<size_t>(l)] * class_sign * eval(row1, arg1, d);
                s2[static_cast<size_t>(i)] += a2[static_cast<size_t>(l)] * class_sign * eval(row2, arg2, d);
                s3[static_cast<size_t>(i)] += a1[static_cast<size_t>(l)] * class_sign * eval(row1, -arg1, d);
                s4[static_cast<size_t>(i)] += a2[static_cast<size_t>(l)] * class_sign * eval(row2, -arg2, d);
            }
        }
    }

    const double prefactor = 1.0 / (std::ldexp(1.0, j + 1) * spec.size());
    std::vector<double> P(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) {
        const size_t u = static_cast<size_t>(i);
        P[u] = prefactor * (s1[u] * s1[u] + s2[u] * s2[u] + s3[u] * s3[u] + s4[u] * s4[u]);
    }
    return P;
}

std::string coefficients_to_csv(const AnalyticCoefficients& coeffs) {
    std::ostringstream out;
    out << "N,l,a1,a2\n";
    const auto exact = [](const Rational& q) {
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    };
    for (size_t l = 0; l < coeffs.a1.size(); ++l) {
        out << coeffs.N << ',' << l << ',' << exact(coeffs.a1[l]) << ',' << exact(coeffs.a2[l])
            << '\n';
    }
    return out.str();
}

}  // namespace qwalk
