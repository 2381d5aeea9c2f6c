#include "bpskit/qrational.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bpskit/error.hpp"

namespace bpskit {

// --- QPoly ----------------------------------------------------------------

QPoly::QPoly(int c) : QPoly(Rational(c)) {}

QPoly::QPoly(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::q_power(int n, const Rational& c) {
    if (n < 0) throw std::invalid_argument("negative power in QPoly::q_power");
    std::vector<Rational> v(n + 1);
    v[n] = c;
    return QPoly(std::move(v));
}

QPoly QPoly::binomial(int n, const Rational& c) { return q_power(n) - QPoly(c); }

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::coeff(int i) const {
    return (i < 0 || i >= static_cast<int>(c_.size())) ? Rational(0) : c_[i];
}

int QPoly::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) return static_cast<int>(i);
    }
    return 0;
}

Rational QPoly::operator()(const Rational& q) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + *it;
    return acc;
}

QPoly& QPoly::operator+=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) { return *this += -o; }

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    QPoly rem = *this;
    if (rem.degree() < d.degree()) return {QPoly(), rem};
    std::vector<Rational> quot(rem.degree() - d.degree() + 1);
    const Rational lead = d.leading();
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        const int shift = rem.degree() - d.degree();
        const Rational f = rem.leading() / lead;
        quot[shift] = f;
        for (int i = 0; i <= d.degree(); ++i) rem.c_[i + shift] -= f * d.c_[i];
        rem.trim();
    }
    return {QPoly(std::move(quot)), rem};
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    QPoly r = *this;
    const Rational lead = leading();
    for (auto& c : r.c_) c /= lead;
    return r;
}

QPoly QPoly::reversed() const {
    QPoly r = *this;
    std::reverse(r.c_.begin(), r.c_.end());
    r.trim();
    return r;
}

HalfLaurent QPoly::to_laurent() const {
    HalfLaurent::Terms t;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) t.emplace(2 * static_cast<int>(i), c_[i]);
    }
    return HalfLaurent::exact(std::move(t));
}

std::string QPoly::str() const {
    std::string out = to_laurent().str();
    return out;
}

QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

QPoly pow(const QPoly& p, int n) {
    QPoly r(1);
    for (int i = 0; i < n; ++i) r = r * p;
    return r;
}

// --- QRational ------------------------------------------------------------

QRational::QRational(const QPoly& num) : num_(num), den_(1) {}

QRational::QRational(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void QRational::normalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = QPoly(1);
        return;
    }
    const QPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    const Rational lead = den_.leading();
    if (lead != 1) {
        num_ = num_ * QPoly(1 / lead);
        den_ = den_ * QPoly(1 / lead);
    }
}

QRational QRational::from_laurent(const HalfLaurent& num, const HalfLaurent& den) {
    if (!num.is_exact() || !den.is_exact() || !num.has_only_integer_powers() ||
        !den.has_only_integer_powers()) {
        throw std::invalid_argument("QRational needs exact integer-power Laurent polynomials");
    }
    auto to_poly = [](const HalfLaurent& x, int shift) {
        std::vector<Rational> v;
        for (const auto& [h, c] : x.terms()) {
            const int e = h / 2 + shift;
            if (static_cast<int>(v.size()) <= e) v.resize(e + 1);
            v[e] = c;
        }
        return QPoly(std::move(v));
    };
    const int ln = num.is_zero() ? 0 : num.lower() / 2;
    const int ld = den.is_zero() ? 0 : den.lower() / 2;
    const int base = std::min(ln, ld);
    return QRational(to_poly(num, -base), to_poly(den, -base));
}

Rational QRational::operator()(const Rational& q) const {
    const Rational d = den_(q);
    if (d == 0) throw std::domain_error("evaluation at a pole");
    return num_(q) / d;
}

QRational operator+(const QRational& a, const QRational& b) {
    return QRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QRational operator-(const QRational& a, const QRational& b) { return a + (-b); }

QRational operator*(const QRational& a, const QRational& b) {
    return QRational(a.num_ * b.num_, a.den_ * b.den_);
}

QRational operator/(const QRational& a, const QRational& b) {
    if (b.num_.is_zero()) throw std::domain_error("division by the zero rational function");
    return QRational(a.num_ * b.den_, a.den_ * b.num_);
}

QRational QRational::times_q_power(int n) const {
    if (n >= 0) return QRational(num_ * QPoly::q_power(n), den_);
    return QRational(num_, den_ * QPoly::q_power(-n));
}

QRational QRational::invert_q() const {
    // n(1/q)/d(1/q) = rev(n) q^{deg d} / (rev(d) q^{deg n})
    const int dn = std::max(num_.degree(), 0);
    const int dd = den_.degree();
    return QRational(num_.reversed() * QPoly::q_power(dd), den_.reversed() * QPoly::q_power(dn));
}

std::string QRational::str() const {
    if (den_ == QPoly(1)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// --- free functions -------------------------------------------------------

HalfLaurent series_of_rational(const QRational& r, int order) {
    const QPoly& num = r.num();
    const QPoly& den = r.den();
    if (num.is_zero()) return HalfLaurent();
    const int vn = num.valuation();
    const int vd = den.valuation();
    const int val = vn - vd;  // exact order in q
    // r = q^{val} * N0/D0 with N0(0), D0(0) nonzero.
    const int half = order >= 0 ? order / 2 : -((-order + 1) / 2);
    const int n_terms = half - val;  // highest relative q-power needed
    HalfLaurent::Terms terms;
    if (n_terms >= 0) {
        std::vector<Rational> out(n_terms + 1);
        const Rational d0 = den.coeff(vd);
        for (int n = 0; n <= n_terms; ++n) {
            Rational s = num.coeff(vn + n);
            for (int m = 1; m <= n; ++m) {
                const Rational& dm = den.coeff(vd + m);
                if (dm != 0 && out[n - m] != 0) s -= dm * out[n - m];
            }
            out[n] = s / d0;
            if (out[n] != 0) terms.emplace(2 * (val + n), out[n]);
        }
    }
    return HalfLaurent::series(std::move(terms), order);
}

HalfLaurent invert_q(const HalfLaurent& x) { return x.invert_q(); }

QRational invert_q(const QRational& r) { return r.invert_q(); }

QPoly interpolate_polynomial(const std::vector<Sample>& samples, int degree_bound) {
    if (degree_bound < 0) throw std::invalid_argument("negative degree bound");
    if (static_cast<int>(samples.size()) < degree_bound + 2) {
        throw InvalidInput("interpolation needs at least degree_bound + 2 samples (" +
                           std::to_string(degree_bound + 2) + "), got " +
                           std::to_string(samples.size()));
    }
    std::set<Rational> seen;
    for (const auto& s : samples) {
        if (!seen.insert(s.point).second) {
            throw InvalidInput("interpolation sample points must be distinct");
        }
    }
    // Newton divided differences on the fitting samples.
    const int n = degree_bound + 1;
    std::vector<Rational> dd(n);
    for (int i = 0; i < n; ++i) dd[i] = samples[i].value;
    for (int j = 1; j < n; ++j) {
        for (int i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (samples[i].point - samples[i - j].point);
        }
    }
    QPoly p;
    QPoly basis(1);
    for (int i = 0; i < n; ++i) {
        p += basis * QPoly(dd[i]);
        basis = basis * QPoly::binomial(1, samples[i].point);
    }
    for (std::size_t i = n; i < samples.size(); ++i) {
        if (p(samples[i].point) != samples[i].value) {
            throw Refusal("holdout sample at q=" + samples[i].point.get_str() +
                          " does not lie on the interpolated polynomial " + p.str() +
                          "; the count is not polynomial in q");
        }
    }
    return p;
}

}  // namespace bpskit
