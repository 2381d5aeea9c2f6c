#include "bpskit/pipeline.hpp"

#include "bpskit/error.hpp"

namespace bpskit {

std::vector<int> choose_cut(const QuiverWithPotential& qp) {
    if (qp.cut) return *qp.cut;
    auto cut = find_cut(qp.quiver, qp.potential);
    if (!cut) throw InvalidInput("potential of '" + qp.name + "' admits no cut");
    return *cut;
}

TorusElement partition_series(const QuiverWithPotential& qp, const PipelineOptions& opt) {
    if (opt.box.size() != qp.quiver.num_vertices())
        throw InvalidInput("box " + opt.box.str() + " does not match the quiver");
    if (qp.potential.is_zero()) return zseries_w0(qp.quiver, opt.box, opt.order, opt.twist);
    const CutData cd = cut_reduce(qp.quiver, qp.potential, choose_cut(qp));
    return partition_function(cd, opt.box, opt.count, opt.order, opt.tate, opt.twist);
}

BPSTable bps_table(const QuiverWithPotential& qp, const PipelineOptions& opt) {
    if (qp.stability.size() != qp.quiver.num_vertices())
        throw InvalidInput("'" + qp.name + "' has no stability condition");
    const auto gen = is_generic(qp.quiver, qp.stability, opt.box);
    if (!gen.generic)
        throw InvalidInput("stability is not generic on the box " + opt.box.str() + ": " +
                           gen.witness->first.str() + " and " + gen.witness->second.str() +
                           " share a slope");
    return bps_invariants(partition_series(qp, opt), qp.stability);
}

DependenceReport dependence_check(const QuiverWithPotential& a, const QuiverWithPotential& b,
                                  const PipelineOptions& opt) {
    if (!(a.quiver == b.quiver)) throw InvalidInput("dependence check needs a common quiver");
    DependenceReport r;
    r.dim = opt.box;
    const BPSTable ta = bps_table(a, opt), tb = bps_table(b, opt);
    r.coeff_a = partition_series(a, opt).coeff(opt.box);
    r.coeff_b = partition_series(b, opt).coeff(opt.box);
    r.coeff_diff = r.coeff_a - r.coeff_b;
    auto at = [&](const BPSTable& t) {
        const auto it = t.find(opt.box);
        return it == t.end() ? HalfLaurent() : it->second;
    };
    r.omega_a = at(ta);
    r.omega_b = at(tb);
    r.omega_diff = r.omega_a - r.omega_b;
    return r;
}

std::vector<std::pair<std::string, std::string>> convention_report(const PipelineOptions& opt) {
    std::string twist;
    switch (opt.twist) {
        case TwistConvention::Antisymmetric:
            twist = "x^d x^e = (-q^{1/2})^{chi(d,e)-chi(e,d)} x^{d+e}";
            break;
        case TwistConvention::Euler:
            twist = "x^d x^e = (-q^{1/2})^{chi(d,e)} x^{d+e} (perturbed)";
            break;
        case TwistConvention::NegatedEuler:
            twist = "x^d x^e = (-q^{1/2})^{-chi(d,e)} x^{d+e} (perturbed)";
            break;
    }
    const std::string euler = opt.tate == TateTwist::CutQuiver ? "chi_{Q'} of the cut quiver"
                                                               : "chi_Q of the full quiver (perturbed)";
    return {
        {"twist", twist},
        {"factor order", "Z = product over slopes in increasing order"},
        {"normalization", "[Z]_d = (-q^{1/2})^{chi_Q(d,d)} q^{-chi(d,d)} E_d(q^{-1}), chi = " + euler},
        {"E-series", "E_d = #{reps of the cut Jacobi algebra over F_q} / |GL_d(F_q)| (purity assumed)"},
        {"BPS", "Z_theta = Exp(sum Omega_d x^d (-q^{1/2})/(1-q))"},
        {"window", "series known through q^{" + std::to_string(opt.order) + "/2}"},
    };
}

}  // namespace bpskit
