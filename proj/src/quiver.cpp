#include "bpskit/quiver.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bpskit/error.hpp"

namespace bpskit {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    std::set<std::string> names(vertices_.begin(), vertices_.end());
    if (names.size() != vertices_.size()) throw InvalidInput("duplicate vertex name");
    std::set<std::string> anames;
    const int n = static_cast<int>(vertices_.size());
    for (const auto& a : arrows_) {
        if (!anames.insert(a.name).second) throw InvalidInput("duplicate arrow name '" + a.name + "'");
        if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n) {
            throw InvalidInput("arrow '" + a.name + "' has an undeclared endpoint");
        }
    }
}

int Quiver::vertex_index(const std::string& name) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end()) throw InvalidInput("unknown vertex '" + name + "'");
    return static_cast<int>(it - vertices_.begin());
}

std::optional<int> Quiver::find_arrow(const std::string& name) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        if (arrows_[i].name == name) return static_cast<int>(i);
    }
    return std::nullopt;
}

int Quiver::arrow_index(const std::string& name) const {
    auto i = find_arrow(name);
    if (!i) throw InvalidInput("unknown arrow '" + name + "'");
    return *i;
}

std::vector<std::vector<int>> Quiver::arrow_counts() const {
    std::vector<std::vector<int>> m(vertices_.size(), std::vector<int>(vertices_.size(), 0));
    for (const auto& a : arrows_) ++m[a.source][a.target];
    return m;
}

bool Quiver::has_loop() const {
    return std::any_of(arrows_.begin(), arrows_.end(),
                       [](const Arrow& a) { return a.source == a.target; });
}

// --- DimVector --------------------------------------------------------------

DimVector::DimVector(std::vector<int> entries) : e_(std::move(entries)) {
    for (int x : e_) {
        if (x < 0) throw InvalidInput("dimension vectors have nonnegative entries");
    }
}

DimVector DimVector::unit(std::size_t n, std::size_t i) {
    std::vector<int> v(n, 0);
    v.at(i) = 1;
    return DimVector(std::move(v));
}

int DimVector::total() const {
    int s = 0;
    for (int x : e_) s += x;
    return s;
}

bool DimVector::leq(const DimVector& o) const {
    if (o.size() != size()) throw std::invalid_argument("dimension vector size mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] > o.e_[i]) return false;
    }
    return true;
}

DimVector DimVector::operator+(const DimVector& o) const {
    if (o.size() != size()) throw std::invalid_argument("dimension vector size mismatch");
    std::vector<int> v(e_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.e_[i];
    return DimVector(std::move(v));
}

DimVector DimVector::operator-(const DimVector& o) const {
    if (o.size() != size()) throw std::invalid_argument("dimension vector size mismatch");
    std::vector<int> v(e_);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] -= o.e_[i];
        if (v[i] < 0) throw std::domain_error("dimension vector difference is negative");
    }
    return DimVector(std::move(v));
}

DimVector DimVector::operator*(int k) const {
    std::vector<int> v(e_);
    for (int& x : v) x *= k;
    return DimVector(std::move(v));
}

std::string DimVector::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e_[i]);
    }
    return s + ")";
}

DimVector parse_dim_vector(const std::string& text) {
    std::string t;
    for (char c : text) {
        if (c != '(' && c != ')' && c != ' ') t.push_back(c);
    }
    std::vector<int> v;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            int x = std::stoi(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            v.push_back(x);
        } catch (const std::exception&) {
            throw InvalidInput("bad dimension vector '" + text + "'");
        }
    }
    if (v.empty()) throw InvalidInput("empty dimension vector");
    return DimVector(std::move(v));
}

std::vector<DimVector> vectors_in_box(const DimVector& box) {
    std::vector<DimVector> out;
    std::vector<int> cur(box.size(), 0);
    while (true) {
        out.emplace_back(cur);
        std::size_t i = 0;
        for (; i < cur.size(); ++i) {
            if (cur[i] < box[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
        }
        if (i == cur.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const DimVector& a, const DimVector& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return a > b;  // delta_1 before delta_2 before ...
    });
    return out;
}

int euler_form(const Quiver& q, const DimVector& d, const DimVector& e) {
    if (d.size() != q.num_vertices() || e.size() != q.num_vertices()) {
        throw InvalidInput("dimension vector does not match the quiver's vertex count");
    }
    int s = 0;
    for (std::size_t i = 0; i < d.size(); ++i) s += d[i] * e[i];
    for (const auto& a : q.arrows()) s -= d[a.source] * e[a.target];
    return s;
}

Rational slope(const Stability& zeta, const DimVector& d) {
    if (zeta.size() != d.size()) throw InvalidInput("stability does not match dimension vector");
    if (d.is_zero()) throw std::domain_error("slope of the zero dimension vector");
    Rational s = 0;
    for (std::size_t i = 0; i < d.size(); ++i) s += zeta[i] * d[i];
    return s / d.total();
}

GenericityReport is_generic(const Quiver& q, const Stability& zeta, const DimVector& box) {
    GenericityReport rep;
    std::vector<std::pair<Rational, DimVector>> vs;
    for (const auto& d : vectors_in_box(box)) {
        if (!d.is_zero()) vs.emplace_back(slope(zeta, d), d);
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            if (vs[i].first != vs[j].first) continue;
            const auto& d = vs[i].second;
            const auto& e = vs[j].second;
            if (euler_form(q, d, e) != euler_form(q, e, d)) {
                rep.generic = false;
                rep.witness = std::make_pair(d, e);
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace bpskit
