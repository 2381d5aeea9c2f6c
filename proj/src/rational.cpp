#include "bpskit/rational.hpp"

#include <cctype>

#include "bpskit/error.hpp"

namespace bpskit {

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw InvalidInput("empty rational literal");
    const auto slash = s.find('/');
    auto valid_int = [](const std::string& part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i >= part.size()) return false;
        for (; i < part.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        }
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-') {
        throw InvalidInput("not a rational literal: '" + std::string(text) + "'");
    }
    Integer n(num), d(den);
    if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace bpskit
