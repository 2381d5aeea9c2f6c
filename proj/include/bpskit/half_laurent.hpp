#pragma once

#include <map>
#include <optional>
#include <string>

#include "bpskit/rational.hpp"

namespace bpskit {

/// Exponents are stored in half units: key h stands for q^{h/2}.
struct Window {
    int lo;  ///< exact order at 0 (or hi + 1 when nothing nonzero is known)
    int hi;  ///< highest exponent whose coefficient is known
    friend bool operator==(const Window&, const Window&) = default;
};

/// Default truncation order q^20.
inline constexpr int kDefaultOrder = 40;

/// A Laurent polynomial in q^{1/2}, or a Laurent series in q^{1/2} known
/// through a finite order.
///
/// An object without a window is exact. A windowed object records the
/// coefficients of every exponent <= hi; nothing is known beyond hi. Arithmetic
/// never extends precision: a product or sum is only known as far as both
/// operands allow.
class HalfLaurent {
public:
    using Terms = std::map<int, Rational>;

    HalfLaurent() = default;
    HalfLaurent(int c);  // NOLINT(google-explicit-constructor)
    HalfLaurent(const Rational& c);  // NOLINT(google-explicit-constructor)

    static HalfLaurent monomial(int h, const Rational& c = 1);
    static HalfLaurent exact(Terms terms);
    /// Windowed series; terms above `hi` are discarded.
    static HalfLaurent series(Terms terms, int hi);

    bool is_exact() const { return !hi_.has_value(); }
    std::optional<Window> window() const;
    /// Highest known exponent, or a large sentinel for exact objects.
    int known_through() const;
    /// Exact order at q = 0, or known_through()+1 if no nonzero coefficient is known.
    int lower() const;

    const Terms& terms() const { return terms_; }
    Rational coeff(int h) const;
    /// True when every known coefficient is zero.
    bool is_zero() const { return terms_.empty(); }
    bool has_only_integer_powers() const;

    /// Drops exponents above `hi` and marks the result as a truncated series.
    HalfLaurent truncated(int hi) const;
    /// Forgets the window; only legal when the caller has proved exactness.
    HalfLaurent as_exact() const;

    HalfLaurent& operator+=(const HalfLaurent& o);
    HalfLaurent& operator-=(const HalfLaurent& o);
    HalfLaurent& operator*=(const HalfLaurent& o);
    HalfLaurent& operator*=(const Rational& c);
    friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
    friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
    friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b);
    friend HalfLaurent operator*(HalfLaurent a, const Rational& c) { return a *= c; }
    friend HalfLaurent operator*(const Rational& c, HalfLaurent a) { return a *= c; }
    HalfLaurent operator-() const;

    /// Multiplication by q^{h/2}.
    HalfLaurent shifted(int h) const;
    /// Multiplicative inverse as a series known through at most `hi`.
    /// Requires a nonzero known lowest coefficient.
    HalfLaurent inverse(int hi) const;
    /// Adams operation q^{1/2} -> q^{k/2}.
    HalfLaurent adams(int k) const;
    /// Substitutes q^{1/2} -> q^{-1/2}; exact objects only.
    HalfLaurent invert_q() const;

    /// Coefficients agree for every exponent <= min(through, both windows).
    bool agrees_with(const HalfLaurent& o, int through) const;
    /// Coefficients agree on the common known range.
    bool agrees_with(const HalfLaurent& o) const;

    /// "-q^{-1/2}-q^{1/2}", with " + O(q^{21/2})" appended for series.
    std::string str() const;

    friend bool operator==(const HalfLaurent&, const HalfLaurent&) = default;

private:
    void prune();
    Terms terms_;
    std::optional<int> hi_;
};

/// (-q^{1/2})^n as an exact monomial.
HalfLaurent minus_sqrt_q_pow(int n);

/// Formats a half exponent as "q^{3/2}", "q^{-1}", "q" or "".
std::string format_q_power(int h);

}  // namespace bpskit
