#include "bpskit/qtorus.hpp"

#include <set>
#include <stdexcept>

#include "bpskit/error.hpp"

namespace bpskit {

std::string to_string(TwistConvention t) {
    switch (t) {
        case TwistConvention::Antisymmetric:
            return "(-q^{1/2})^{chi(d,e)-chi(e,d)}";
        case TwistConvention::Euler:
            return "(-q^{1/2})^{chi(d,e)}";
        case TwistConvention::NegatedEuler:
            return "(-q^{1/2})^{-chi(d,e)}";
    }
    return "?";
}

TorusElement::TorusElement(std::shared_ptr<const Quiver> quiver, DimVector box,
                           TwistConvention twist)
    : quiver_(std::move(quiver)), box_(std::move(box)), twist_(twist) {
    if (!quiver_) throw std::invalid_argument("TorusElement needs a quiver");
    if (box_.size() != quiver_->num_vertices()) {
        throw InvalidInput("truncation box does not match the quiver");
    }
}

TorusElement TorusElement::one(std::shared_ptr<const Quiver> quiver, DimVector box,
                               TwistConvention twist) {
    TorusElement r(std::move(quiver), std::move(box), twist);
    r.coeffs_.emplace(DimVector::zero(r.box_.size()), HalfLaurent(1));
    return r;
}

HalfLaurent TorusElement::coeff(const DimVector& d) const {
    auto it = coeffs_.find(d);
    return it == coeffs_.end() ? HalfLaurent() : it->second;
}

void TorusElement::set(const DimVector& d, HalfLaurent c) {
    if (!d.leq(box_)) throw std::out_of_range("x^" + d.str() + " lies outside the box");
    if (c.is_exact() && c.is_zero()) {
        coeffs_.erase(d);
    } else {
        coeffs_[d] = std::move(c);
    }
}

bool TorusElement::compatible(const TorusElement& o) const {
    return (quiver_ == o.quiver_ || *quiver_ == *o.quiver_) && box_ == o.box_ &&
           twist_ == o.twist_;
}

TorusElement TorusElement::restricted(const DimVector& box) const {
    TorusElement r(quiver_, box, twist_);
    for (const auto& [d, c] : coeffs_) {
        if (d.leq(box)) r.coeffs_.emplace(d, c);
    }
    return r;
}

int TorusElement::twist_exponent(const DimVector& d, const DimVector& e) const {
    switch (twist_) {
        case TwistConvention::Antisymmetric:
            return euler_form(*quiver_, d, e) - euler_form(*quiver_, e, d);
        case TwistConvention::Euler:
            return euler_form(*quiver_, d, e);
        case TwistConvention::NegatedEuler:
            return -euler_form(*quiver_, d, e);
    }
    return 0;
}

HalfLaurent TorusElement::twist(const DimVector& d, const DimVector& e) const {
    return minus_sqrt_q_pow(twist_exponent(d, e));
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
    if (!compatible(o)) throw InvalidInput("adding torus elements of different rings");
    for (const auto& [d, c] : o.coeffs_) set(d, coeff(d) + c);
    return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) { return *this += o.scaled(-1); }

TorusElement TorusElement::scaled(const Rational& c) const {
    TorusElement r(quiver_, box_, twist_);
    for (const auto& [d, v] : coeffs_) r.set(d, v * c);
    return r;
}

bool TorusElement::agrees_with(const TorusElement& o) const {
    if (!compatible(o)) return false;
    for (const auto& d : vectors_in_box(box_)) {
        if (!coeff(d).agrees_with(o.coeff(d))) return false;
    }
    return true;
}

std::string TorusElement::str() const {
    std::string s;
    for (const auto& [d, c] : coeffs_) s += "x^" + d.str() + ": " + c.str() + "\n";
    return s.empty() ? "0\n" : s;
}

TorusElement twisted_mul(const TorusElement& x, const TorusElement& y) {
    if (!x.compatible(y)) throw InvalidInput("multiplying torus elements of different rings");
    TorusElement r(x.quiver_ptr(), x.box(), x.twist_convention());
    std::map<DimVector, HalfLaurent> acc;
    for (const auto& [d, a] : x.coeffs()) {
        for (const auto& [e, b] : y.coeffs()) {
            DimVector f = d + e;
            if (!f.leq(x.box())) continue;
            HalfLaurent term = x.twist(d, e) * a * b;
            auto it = acc.find(f);
            if (it == acc.end()) {
                acc.emplace(std::move(f), std::move(term));
            } else {
                it->second += term;
            }
        }
    }
    for (auto& [f, c] : acc) r.set(f, std::move(c));
    return r;
}

namespace {

int moebius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

// psi_k: x^d -> x^{kd}, q^{1/2} -> q^{k/2}
TorusElement adams(const TorusElement& f, int k) {
    TorusElement r(f.quiver_ptr(), f.box(), f.twist_convention());
    for (const auto& [d, c] : f.coeffs()) {
        DimVector kd = d * k;
        if (kd.leq(f.box())) r.set(kd, c.adams(k));
    }
    return r;
}

int max_total(const DimVector& box) { return box.total(); }

void require_single_slope(const TorusElement& f, const Stability& zeta, const char* what) {
    std::optional<Rational> theta;
    for (const auto& [d, c] : f.coeffs()) {
        if (d.is_zero() || c.is_zero()) continue;
        const Rational s = slope(zeta, d);
        if (theta && *theta != s) {
            throw std::domain_error(std::string(what) +
                                    ": support spans two slopes, the product there is not "
                                    "commutative");
        }
        theta = s;
    }
    // Within one slope class the twist must be trivial (generic stability).
    std::vector<DimVector> support;
    for (const auto& [d, c] : f.coeffs()) {
        if (!d.is_zero() && !c.is_zero()) support.push_back(d);
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
        for (std::size_t j = i; j < support.size(); ++j) {
            const auto& d = support[i];
            const auto& e = support[j];
            if (euler_form(f.quiver(), d, e) != euler_form(f.quiver(), e, d)) {
                throw std::domain_error(std::string(what) + ": stability is not generic on " +
                                        d.str() + ", " + e.str());
            }
        }
    }
}

}  // namespace

TorusElement pleth_exp(const TorusElement& f, const Stability& zeta) {
    const DimVector zero = DimVector::zero(f.box().size());
    if (!f.coeff(zero).is_zero()) {
        throw std::domain_error("Exp needs a zero constant term");
    }
    require_single_slope(f, zeta, "Exp");
    const int n_max = max_total(f.box());
    TorusElement log_part(f.quiver_ptr(), f.box(), f.twist_convention());
    for (int k = 1; k <= n_max; ++k) log_part += adams(f, k).scaled(Rational(1, k));
    TorusElement result = TorusElement::one(f.quiver_ptr(), f.box(), f.twist_convention());
    TorusElement power = result;
    for (int n = 1; n <= n_max; ++n) {
        power = (power * log_part).scaled(Rational(1, n));
        result += power;
    }
    return result;
}

TorusElement pleth_log(const TorusElement& big_f, const Stability& zeta) {
    const DimVector zero = DimVector::zero(big_f.box().size());
    const HalfLaurent c0 = big_f.coeff(zero);
    if (!c0.agrees_with(HalfLaurent(1)) || c0.known_through() < 0) {
        throw std::domain_error("Log needs constant term 1");
    }
    TorusElement g = big_f;
    g.set(zero, HalfLaurent());
    require_single_slope(g, zeta, "Log");
    const int n_max = max_total(big_f.box());
    TorusElement log_f(big_f.quiver_ptr(), big_f.box(), big_f.twist_convention());
    TorusElement power = TorusElement::one(big_f.quiver_ptr(), big_f.box(),
                                           big_f.twist_convention());
    for (int n = 1; n <= n_max; ++n) {
        power = power * g;
        log_f += power.scaled(Rational(n % 2 == 1 ? 1 : -1, n));
    }
    TorusElement f(big_f.quiver_ptr(), big_f.box(), big_f.twist_convention());
    for (int k = 1; k <= n_max; ++k) {
        const int mu = moebius(k);
        if (mu != 0) f += adams(log_f, k).scaled(Rational(mu, k));
    }
    return f;
}

SlopeFactors factorize_by_slope(const TorusElement& z, const Stability& zeta) {
    const auto gen = is_generic(z.quiver(), zeta, z.box());
    if (!gen.generic) {
        throw std::domain_error("stability is not generic on the box: " +
                                gen.witness->first.str() + " and " + gen.witness->second.str() +
                                " share a slope but pair asymmetrically");
    }
    const DimVector zero = DimVector::zero(z.box().size());
    if (!z.coeff(zero).agrees_with(HalfLaurent(1))) {
        throw std::domain_error("factorization needs constant term 1");
    }
    SlopeFactors factors;
    const auto all = vectors_in_box(z.box());
    for (const auto& d : all) {
        if (d.is_zero()) continue;
        factors.try_emplace(slope(zeta, d),
                            TorusElement::one(z.quiver_ptr(), z.box(), z.twist_convention()));
    }
    for (const auto& d : all) {
        if (d.is_zero()) continue;
        TorusElement partial = TorusElement::one(z.quiver_ptr(), d, z.twist_convention());
        for (const auto& [theta, fac] : factors) partial = partial * fac.restricted(d);
        factors.at(slope(zeta, d)).set(d, z.coeff(d) - partial.coeff(d));
    }
    return factors;
}

TorusElement ordered_product(const SlopeFactors& factors) {
    if (factors.empty()) throw std::invalid_argument("empty factor list");
    const TorusElement& first = factors.begin()->second;
    TorusElement r = TorusElement::one(first.quiver_ptr(), first.box(), first.twist_convention());
    for (const auto& [theta, fac] : factors) r = r * fac;
    return r;
}

BPSTable extract_bps(const TorusElement& factor, const Stability& zeta, const Rational& theta,
                     int guard) {
    const TorusElement log_f = pleth_log(factor, zeta);
    // (1-q)/(-q^{1/2}) = -q^{-1/2} + q^{1/2}
    const HalfLaurent rescale = HalfLaurent::exact({{-1, Rational(-1)}, {1, Rational(1)}});
    BPSTable out;
    for (const auto& d : vectors_in_box(factor.box())) {
        if (d.is_zero() || slope(zeta, d) != theta) continue;
        HalfLaurent omega = log_f.coeff(d) * rescale;
        if (!omega.is_exact()) {
            const int hi = omega.known_through();
            if (!omega.is_zero() && omega.terms().rbegin()->first > hi - guard) {
                throw Refusal("BPS invariant at " + d.str() +
                              " is not a Laurent polynomial inside the window (nonzero "
                              "coefficient within " +
                              std::to_string(guard) + " half-steps of q^{" + std::to_string(hi) +
                              "/2}); raise the order or check the input series");
            }
            omega = omega.as_exact();
        }
        out.emplace(d, std::move(omega));
    }
    return out;
}

BPSTable bps_invariants(const TorusElement& z, const Stability& zeta, int guard) {
    BPSTable out;
    for (const auto& [theta, fac] : factorize_by_slope(z, zeta)) {
        out.merge(extract_bps(fac, zeta, theta, guard));
    }
    return out;
}

HalfLaurent point_stack_series(int order) {
    HalfLaurent::Terms t;
    for (int h = 1; h <= order; h += 2) t.emplace(h, Rational(-1));
    return HalfLaurent::series(std::move(t), order);
}

TorusElement recombine(const BPSTable& omegas, const Stability& zeta,
                       std::shared_ptr<const Quiver> quiver, const DimVector& box, int order,
                       TwistConvention twist) {
    const HalfLaurent unit = point_stack_series(order);
    std::map<Rational, TorusElement> by_slope;
    for (const auto& [d, omega] : omegas) {
        if (d.is_zero() || !d.leq(box) || omega.is_zero()) continue;
        auto [it, ins] = by_slope.try_emplace(slope(zeta, d), quiver, box, twist);
        it->second.set(d, omega * unit);
    }
    TorusElement r = TorusElement::one(quiver, box, twist);
    for (const auto& [theta, f] : by_slope) r = r * pleth_exp(f, zeta);
    return r;
}

}  // namespace bpskit
