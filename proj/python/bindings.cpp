#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bpskit/cubic_germ.hpp"
#include "bpskit/error.hpp"
#include "bpskit/io.hpp"
#include "bpskit/mutation.hpp"
#include "bpskit/pipeline.hpp"
#include "bpskit/selftest.hpp"
#include "bpskit/shuffle.hpp"

namespace py = pybind11;
using namespace bpskit;

namespace {

// A preset name or a quiver document in JSON.
QuiverWithPotential source(const std::string& s) {
    if (!s.empty() && s.front() == '{') {
        Json j;
        try {
            j = Json::parse(s);
        } catch (const Json::parse_error& e) {
            throw InvalidInput(std::string("quiver document is not valid JSON: ") + e.what());
        }
        return qp_from_json(j);
    }
    return preset(s);
}

PipelineOptions options(const QuiverWithPotential& qp, const std::string& box, int order,
                        const std::vector<int>& primes) {
    PipelineOptions o;
    o.box = box.empty() ? DimVector(std::vector<int>(qp.quiver.num_vertices(), 1)) : parse_dim_vector(box);
    o.order = order;
    o.count.primes = primes;
    return o;
}

Json dims(const GradedDims& g) {
    Json j = Json::object();
    for (const auto& [n, v] : g.dims) j[std::to_string(n)] = v.get_str();
    return j;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact refined BPS, quantum torus, shuffle algebra and mutation computations";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
    py::register_exception<Refusal>(m, "Refusal", base.ptr());

    m.def("preset_names", &preset_names);
    m.def("preset_json", [](const std::string& s) { return to_json(source(s)).dump(); }, py::arg("source"));

    m.def("bps",
          [](const std::string& s, const std::string& box, int order, const std::vector<int>& primes) {
              const auto qp = source(s);
              return to_json(bps_table(qp, options(qp, box, order, primes))).dump();
          },
          py::arg("source"), py::arg("box") = "", py::arg("order") = kDefaultOrder,
          py::arg("primes") = std::vector<int>{});

    m.def("zseries",
          [](const std::string& s, const std::string& box, int order, const std::vector<int>& primes) {
              const auto qp = source(s);
              return to_json(partition_series(qp, options(qp, box, order, primes))).dump();
          },
          py::arg("source"), py::arg("box") = "", py::arg("order") = kDefaultOrder,
          py::arg("primes") = std::vector<int>{});

    m.def("dependence_check",
          [](const std::string& a, const std::string& b, const std::string& box) {
              const auto qa = source(a);
              const auto r = dependence_check(qa, source(b), options(qa, box, kDefaultOrder, {}));
              Json j;
              j["coefficient_difference"] = to_json(r.coeff_diff);
              j["omega_first"] = to_json(r.omega_a);
              j["omega_second"] = to_json(r.omega_b);
              j["omega_difference"] = to_json(r.omega_diff);
              return j.dump();
          },
          py::arg("first"), py::arg("second"), py::arg("box") = "");

    m.def("point_count",
          [](const std::string& s, const std::string& dim, const std::vector<int>& primes) {
              const auto qp = source(s);
              const auto o = options(qp, dim, kDefaultOrder, primes);
              const StackCount sc =
                  stack_count_series(cut_reduce(qp.quiver, qp.potential, choose_cut(qp)), o.box, o.count);
              Json j;
              j["count_polynomial"] = sc.count_poly.str();
              j["e_series"] = sc.e_series.str();
              Json samples = Json::object();
              for (const auto& x : sc.samples) samples[std::to_string(x.prime)] = x.count.get_str();
              j["counts"] = samples;
              return j.dump();
          },
          py::arg("source"), py::arg("dim") = "", py::arg("primes") = std::vector<int>{});

    m.def("spherical_dimensions",
          [](const std::string& dim, int n_max) {
              const GradedDims g = spherical_dimensions(markov_quiver(), parse_dim_vector(dim), n_max);
              Json j;
              j["dims"] = dims(g);
              j["partial"] = g.partial;
              return j.dump();
          },
          py::arg("dim"), py::arg("n_max") = 7);

    m.def("compare_spherical",
          [](const std::string& s, const std::string& dim, int n_max) {
              const auto qp = source(s);
              const auto o = options(qp, dim, kDefaultOrder, {});
              const SphericalVerdict v = compare_spherical(partition_series(qp, o).coeff(o.box),
                                                           spherical_dimensions(qp.quiver, o.box, n_max));
              Json j = {{"kind", to_string(v.kind)},
                        {"degree", v.degree},
                        {"coha_dim", v.coha_dim.get_str()},
                        {"spherical_dim", v.spherical_dim.get_str()},
                        {"compared_through", v.compared_through}};
              return j.dump();
          },
          py::arg("source"), py::arg("dim") = "", py::arg("n_max") = 7);

    m.def("mutate",
          [](const std::string& s, const std::vector<std::string>& word, int trunc) {
              const auto qp = source(s);
              QPState st = QPState::make(qp.quiver, qp.potential, trunc);
              for (const auto& v : word) st = mutate(st, st.quiver.vertex_index(v));
              Json j = to_json(st);
              j["has_two_cycle"] = has_two_cycle(st.quiver).has_value();
              if (markov_shape(st.quiver))
                  j["germ"] = to_string(classify(cubic_tensor(st.quiver, st.potential)));
              return j.dump();
          },
          py::arg("source"), py::arg("word"), py::arg("trunc") = kDefaultTrunc);

    m.def("mutability_search",
          [](const std::string& s, int depth, int trunc) {
              const auto qp = source(s);
              const auto r = mutability_search(QPState::make(qp.quiver, qp.potential, trunc), depth);
              Json word = Json::array();
              for (int v : r.word) word.push_back(qp.quiver.vertices()[v]);
              Json j = {{"obstructed", r.obstructed}, {"word", word}, {"mutations", r.nodes}};
              return j.dump();
          },
          py::arg("source"), py::arg("depth") = 4, py::arg("trunc") = kDefaultTrunc);

    m.def("classify_cubic",
          [](const std::string& s) {
              const auto qp = source(s);
              return to_string(classify(cubic_tensor(qp.quiver, qp.potential)));
          },
          py::arg("source"));

    m.def("classify_tensor",
          [](const std::vector<std::string>& entries) {
              if (entries.size() != 8) throw InvalidInput("a cubic tensor has 8 entries");
              CubicTensor t;
              for (int n = 0; n < 8; ++n) t.t[n / 4][(n / 2) % 2][n % 2] = parse_rational(entries[n]);
              return to_string(classify(t));
          },
          py::arg("entries"));

    m.def("selftest",
          [](const std::vector<int>& only) {
              SelftestOptions o;
              o.only = only;
              Json rows = Json::array();
              for (const auto& r : run_selftest(o))
                  rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
              return rows.dump();
          },
          py::arg("only") = std::vector<int>{});
}
