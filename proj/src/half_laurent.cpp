#include "bpskit/half_laurent.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bpskit/error.hpp"

namespace bpskit {

namespace {

constexpr int kExactSentinel = 1 << 28;

}  // namespace

HalfLaurent::HalfLaurent(int c) : HalfLaurent(Rational(c)) {}

HalfLaurent::HalfLaurent(const Rational& c) {
    if (c != 0) terms_.emplace(0, c);
}

HalfLaurent HalfLaurent::monomial(int h, const Rational& c) {
    HalfLaurent r;
    if (c != 0) r.terms_.emplace(h, c);
    return r;
}

HalfLaurent HalfLaurent::exact(Terms terms) {
    HalfLaurent r;
    r.terms_ = std::move(terms);
    r.prune();
    return r;
}

HalfLaurent HalfLaurent::series(Terms terms, int hi) {
    HalfLaurent r;
    r.terms_ = std::move(terms);
    r.hi_ = hi;
    r.prune();
    return r;
}

void HalfLaurent::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0 || (hi_ && it->first > *hi_)) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

std::optional<Window> HalfLaurent::window() const {
    if (!hi_) return std::nullopt;
    return Window{lower(), *hi_};
}

int HalfLaurent::known_through() const { return hi_ ? *hi_ : kExactSentinel; }

int HalfLaurent::lower() const {
    if (!terms_.empty()) return terms_.begin()->first;
    return hi_ ? *hi_ + 1 : kExactSentinel;
}

Rational HalfLaurent::coeff(int h) const {
    if (hi_ && h > *hi_) {
        throw std::out_of_range("coefficient of q^{" + std::to_string(h) +
                                "/2} lies beyond the series window");
    }
    auto it = terms_.find(h);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool HalfLaurent::has_only_integer_powers() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first % 2 == 0; });
}

HalfLaurent HalfLaurent::truncated(int hi) const {
    HalfLaurent r = *this;
    r.hi_ = hi_ ? std::min(*hi_, hi) : hi;
    r.prune();
    return r;
}

HalfLaurent HalfLaurent::as_exact() const {
    HalfLaurent r = *this;
    r.hi_.reset();
    return r;
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& o) {
    if (o.hi_) hi_ = hi_ ? std::min(*hi_, *o.hi_) : *o.hi_;
    for (const auto& [h, c] : o.terms_) {
        if (hi_ && h > *hi_) break;
        terms_[h] += c;
    }
    prune();
    return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& o) { return *this += -o; }

HalfLaurent HalfLaurent::operator-() const {
    HalfLaurent r = *this;
    for (auto& [h, c] : r.terms_) c = -c;
    return r;
}

HalfLaurent& HalfLaurent::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [h, v] : terms_) v *= c;
    return *this;
}

HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
    HalfLaurent r;
    if (a.is_exact() && b.is_exact()) {
        if (a.is_zero() || b.is_zero()) return r;
    } else if (a.is_exact() && a.is_zero()) {
        return r;
    } else if (b.is_exact() && b.is_zero()) {
        return r;
    }
    if (!a.is_exact() || !b.is_exact()) {
        // Unknown terms of a sit above a.hi and meet b's terms >= b.lower().
        int hi = kExactSentinel;
        if (a.hi_) hi = std::min(hi, *a.hi_ + b.lower());
        if (b.hi_) hi = std::min(hi, *b.hi_ + a.lower());
        r.hi_ = hi;
    }
    for (const auto& [ha, ca] : a.terms_) {
        for (const auto& [hb, cb] : b.terms_) {
            const int h = ha + hb;
            if (r.hi_ && h > *r.hi_) break;
            r.terms_[h] += ca * cb;
        }
    }
    r.prune();
    return r;
}

HalfLaurent& HalfLaurent::operator*=(const HalfLaurent& o) {
    *this = *this * o;
    return *this;
}

HalfLaurent HalfLaurent::shifted(int h) const {
    HalfLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + h, c);
    if (hi_) r.hi_ = *hi_ + h;
    return r;
}

HalfLaurent HalfLaurent::inverse(int hi) const {
    if (terms_.empty()) {
        throw std::domain_error("inverse of a series with no known nonzero coefficient");
    }
    const int v = terms_.begin()->first;
    const Rational lead = terms_.begin()->second;
    int out_hi = hi;
    if (hi_) out_hi = std::min(out_hi, *hi_ - 2 * v);
    HalfLaurent r;
    r.hi_ = out_hi;
    const int n_max = out_hi + v;  // relative precision
    if (n_max < 0) return r;
    std::vector<Rational> a(n_max + 1), b(n_max + 1);
    for (const auto& [h, c] : terms_) {
        if (h - v > n_max) break;
        a[h - v] = c;
    }
    b[0] = 1 / lead;
    for (int n = 1; n <= n_max; ++n) {
        Rational s = 0;
        for (int m = 1; m <= n; ++m) {
            if (a[m] != 0 && b[n - m] != 0) s += a[m] * b[n - m];
        }
        b[n] = -s / lead;
    }
    for (int n = 0; n <= n_max; ++n) {
        if (b[n] != 0) r.terms_.emplace_hint(r.terms_.end(), n - v, b[n]);
    }
    return r;
}

HalfLaurent HalfLaurent::adams(int k) const {
    if (k < 1) throw std::invalid_argument("Adams operation needs k >= 1");
    HalfLaurent r;
    for (const auto& [h, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), k * h, c);
    if (hi_) r.hi_ = k * (*hi_ + 1) - 1;
    return r;
}

HalfLaurent HalfLaurent::invert_q() const {
    if (hi_) {
        throw std::domain_error("q -> 1/q is undefined on a truncated series");
    }
    HalfLaurent r;
    for (const auto& [h, c] : terms_) r.terms_.emplace(-h, c);
    return r;
}

bool HalfLaurent::agrees_with(const HalfLaurent& o, int through) const {
    const int hi = std::min({through, known_through(), o.known_through()});
    auto clip = [hi](const Terms& t) {
        Terms out;
        for (const auto& [h, c] : t) {
            if (h > hi) break;
            out.emplace(h, c);
        }
        return out;
    };
    return clip(terms_) == clip(o.terms_);
}

bool HalfLaurent::agrees_with(const HalfLaurent& o) const {
    return agrees_with(o, kExactSentinel);
}

std::string format_q_power(int h) {
    if (h == 0) return "";
    if (h == 2) return "q";
    if (h % 2 == 0) return "q^{" + std::to_string(h / 2) + "}";
    return "q^{" + std::to_string(h) + "/2}";
}

std::string HalfLaurent::str() const {
    std::string out;
    for (const auto& [h, c] : terms_) {
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        const std::string pw = format_q_power(h);
        if (pw.empty()) {
            out += mag.get_str();
        } else {
            if (mag != 1) out += mag.get_str();
            out += pw;
        }
    }
    if (out.empty()) out = "0";
    if (hi_) out += " + O(" + (format_q_power(*hi_ + 1).empty() ? std::string("1")
                                                              : format_q_power(*hi_ + 1)) + ")";
    return out;
}

HalfLaurent minus_sqrt_q_pow(int n) {
    return HalfLaurent::monomial(n, (n % 2 == 0) ? 1 : -1);
}

}  // namespace bpskit
