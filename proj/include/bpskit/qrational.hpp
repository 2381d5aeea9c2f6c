#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bpskit/half_laurent.hpp"
#include "bpskit/rational.hpp"

namespace bpskit {

/// Dense univariate polynomial in q with rational coefficients.
class QPoly {
public:
    QPoly() = default;
    QPoly(int c);                    // NOLINT(google-explicit-constructor)
    QPoly(const Rational& c);        // NOLINT(google-explicit-constructor)
    explicit QPoly(std::vector<Rational> coeffs);

    static QPoly q_power(int n, const Rational& c = 1);
    /// Product of (q^k - 1) style factors is common enough to get a helper:
    /// returns q^n - c.
    static QPoly binomial(int n, const Rational& c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    /// Largest power of q dividing the polynomial (0 for the zero polynomial).
    int valuation() const;

    Rational operator()(const Rational& q) const;

    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly operator-() const;
    friend bool operator==(const QPoly&, const QPoly&) = default;

    /// Euclidean division; throws on a zero divisor.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
    QPoly monic() const;
    /// q^{deg} p(1/q).
    QPoly reversed() const;

    HalfLaurent to_laurent() const;
    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

QPoly gcd(QPoly a, QPoly b);
QPoly pow(const QPoly& p, int n);

/// A rational function in q (integer powers only), kept in lowest terms with a
/// monic denominator so that equal values compare equal structurally.
class QRational {
public:
    QRational() : num_(0), den_(1) {}
    QRational(const QPoly& num);  // NOLINT(google-explicit-constructor)
    QRational(QPoly num, QPoly den);
    /// Laurent polynomial in integer powers of q as num/den.
    static QRational from_laurent(const HalfLaurent& num, const HalfLaurent& den);

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    Rational operator()(const Rational& q) const;

    friend QRational operator+(const QRational& a, const QRational& b);
    friend QRational operator-(const QRational& a, const QRational& b);
    friend QRational operator*(const QRational& a, const QRational& b);
    friend QRational operator/(const QRational& a, const QRational& b);
    QRational operator-() const { return QRational(-num_, den_); }
    friend bool operator==(const QRational&, const QRational&) = default;

    /// Multiplication by q^n (n may be negative).
    QRational times_q_power(int n) const;
    /// q -> 1/q.
    QRational invert_q() const;

    std::string str() const;

private:
    void normalize();
    QPoly num_;
    QPoly den_;
};

/// Laurent expansion at q = 0, known through q^{order/2}. The window's lower
/// edge is the exact order of r at 0.
HalfLaurent series_of_rational(const QRational& r, int order = kDefaultOrder);

/// q -> 1/q on an exact Laurent object.
HalfLaurent invert_q(const HalfLaurent& x);
QRational invert_q(const QRational& r);

struct Sample {
    Rational point;
    Rational value;
};

/// The unique polynomial of degree <= degree_bound through the first
/// degree_bound+1 samples. Every remaining sample is a holdout that must lie on
/// it exactly; a mismatch throws Refusal (the data is not polynomial).
QPoly interpolate_polynomial(const std::vector<Sample>& samples, int degree_bound);

}  // namespace bpskit
