#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "bpskit/cubic_germ.hpp"
#include "bpskit/error.hpp"
#include "bpskit/io.hpp"
#include "bpskit/mutation.hpp"
#include "bpskit/pipeline.hpp"
#include "bpskit/selftest.hpp"
#include "bpskit/shuffle.hpp"

using namespace bpskit;

namespace {

struct Config {
    std::string preset = "markov-gen";
    std::string input;
    std::string box;
    int order = kDefaultOrder;
    std::string primes = "auto";
    bool json = false;
    std::string output;
};

struct Report {
    Json json = Json::object();
    std::ostringstream text;
};

QuiverWithPotential load(const Config& c) {
    if (!c.input.empty()) return load_qp_file(c.input);
    return preset(c.preset);
}

DimVector box_for(const Config& c, const Quiver& q) {
    if (c.box.empty()) {
        if (q.num_vertices() == 3) return DimVector({1, 1, 1});
        throw InvalidInput("--box is required for this quiver");
    }
    DimVector d = parse_dim_vector(c.box);
    if (d.size() != q.num_vertices())
        throw InvalidInput("--box " + c.box + " has the wrong number of entries");
    return d;
}

std::vector<int> parse_primes(const std::string& text) {
    if (text == "auto") return {};
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int p = std::stoi(item, &used);
            if (used != item.size() || p < 2) throw std::invalid_argument(item);
            out.push_back(p);
        } catch (const std::exception&) {
            throw InvalidInput("--primes expects 'auto' or a comma-separated list of primes");
        }
    }
    if (out.empty()) throw InvalidInput("--primes list is empty");
    return out;
}

PipelineOptions pipeline_options(const Config& c, const Quiver& q) {
    PipelineOptions o;
    o.box = box_for(c, q);
    o.order = c.order;
    o.count.primes = parse_primes(c.primes);
    return o;
}

void add_conventions(Report& r, const PipelineOptions& o) {
    Json conv = Json::object();
    r.text << "conventions:\n";
    for (const auto& [k, v] : convention_report(o)) {
        conv[k] = v;
        r.text << "  " << k << ": " << v << "\n";
    }
    r.json["conventions"] = conv;
}

void describe_input(Report& r, const QuiverWithPotential& qp) {
    r.json["input"] = qp.name;
    r.json["potential"] = qp.potential.str(qp.quiver);
    r.text << "input: " << qp.name << "\npotential: W = " << qp.potential.str(qp.quiver) << "\n";
}

void print_table(Report& r, const std::string& heading, const std::map<DimVector, HalfLaurent>& t) {
    r.text << heading << ":\n";
    for (const auto& [d, f] : t) r.text << "  " << d.str() << "  " << f.str() << "\n";
}

int cmd_bps(const Config& c, Report& r) {
    const auto qp = load(c);
    const auto o = pipeline_options(c, qp.quiver);
    describe_input(r, qp);
    add_conventions(r, o);
    const BPSTable t = bps_table(qp, o);
    r.json["box"] = o.box.str();
    r.json["omega"] = to_json(t);
    print_table(r, "Omega (box " + o.box.str() + ")", t);
    const std::string note =
        "Omega values are computed from point counts of the reduced stacks under the conventions "
        "above; E-series (purity assumed)";
    r.json["note"] = note;
    r.text << "note: " << note << "\n";
    return 0;
}

int cmd_zseries(const Config& c, Report& r) {
    const auto qp = load(c);
    const auto o = pipeline_options(c, qp.quiver);
    describe_input(r, qp);
    add_conventions(r, o);
    const TorusElement z = partition_series(qp, o);
    r.json["box"] = o.box.str();
    r.json["z"] = to_json(z);
    print_table(r, "Z coefficients, E-series (purity assumed)", z.coeffs());
    return 0;
}

int cmd_factorize(const Config& c, Report& r) {
    const auto qp = load(c);
    const auto o = pipeline_options(c, qp.quiver);
    if (qp.stability.size() != qp.quiver.num_vertices())
        throw InvalidInput("'" + qp.name + "' has no stability condition");
    describe_input(r, qp);
    add_conventions(r, o);
    const SlopeFactors f = factorize_by_slope(partition_series(qp, o), qp.stability);
    Json factors = Json::array();
    r.text << "slope factors in increasing slope order:\n";
    for (const auto& [theta, e] : f) {
        Json coeffs = Json::object();
        r.text << "slope " << theta.get_str() << ":\n";
        for (const auto& [d, v] : e.coeffs()) {
            if (d.is_zero()) continue;
            coeffs[d.str()] = to_json(v);
            r.text << "  " << d.str() << "  " << v.str() << "\n";
        }
        factors.push_back({{"slope", theta.get_str()}, {"coefficients", coeffs}});
    }
    r.json["factors"] = factors;
    return 0;
}

Json dims_json(const GradedDims& g) {
    Json j = Json::object();
    for (const auto& [n, v] : g.dims) j[std::to_string(n)] = v.get_str();
    return j;
}

void print_dims(Report& r, const std::string& label, const GradedDims& g) {
    r.text << label << " (through degree " << g.n_max << (g.partial ? ", lower bounds" : "") << "):";
    for (const auto& [n, v] : g.dims) r.text << "  " << n << ":" << v.get_str();
    r.text << "\n";
}

void add_verdict(Report& r, const SphericalVerdict& v) {
    r.json["verdict"] = {{"kind", to_string(v.kind)},
                         {"degree", v.degree},
                         {"coha_dim", v.coha_dim.get_str()},
                         {"spherical_dim", v.spherical_dim.get_str()},
                         {"compared_through", v.compared_through},
                         {"detail", v.detail}};
    r.text << "verdict: " << to_string(v.kind);
    if (!v.detail.empty()) r.text << " (" << v.detail << ")";
    r.text << "\n";
}

int cmd_spherical(const Config& c, int n_max, Report& r) {
    const auto qp = load(c);
    const auto o = pipeline_options(c, qp.quiver);
    describe_input(r, qp);
    add_conventions(r, o);
    const GradedDims sph = spherical_dimensions(qp.quiver, o.box, n_max);
    r.json["dimension"] = o.box.str();
    r.json["spherical"] = dims_json(sph);
    r.json["partial"] = sph.partial;
    print_dims(r, "spherical dims", sph);
    const HalfLaurent coeff = partition_series(qp, o).coeff(o.box);
    r.json["coefficient"] = to_json(coeff);
    r.text << "x^" << o.box.str() << " coefficient: " << coeff.str() << "\n";
    add_verdict(r, compare_spherical(coeff, sph));
    return 0;
}

int cmd_ginv(const Config& c, int n_max, Report& r) {
    auto q = std::make_shared<const Quiver>(markov_quiver());
    PipelineOptions o = pipeline_options(c, *q);
    add_conventions(r, o);
    const BPSTable table = markov_ginv_table();
    const TorusElement z = g_invariant_series(table, markov_stability(), q, o.box, o.order);
    r.json["omega"] = to_json(table);
    r.json["z"] = to_json(z);
    print_table(r, "G-invariant Omega", table);
    print_table(r, "recombined series", z.coeffs());
    const GradedDims sph = spherical_dimensions(*q, o.box, n_max);
    print_dims(r, "spherical dims", sph);
    add_verdict(r, compare_spherical(z.coeff(o.box), sph));
    return 0;
}

int vertex_of(const Quiver& q, const std::string& v) {
    try {
        return q.vertex_index(v);
    } catch (const InvalidInput&) {
        throw InvalidInput("unknown vertex '" + v + "'");
    }
}

void describe_state(Report& r, const QPState& s) {
    r.json["result"] = to_json(s);
    r.text << "arrows:";
    for (const auto& a : s.quiver.arrows())
        r.text << " " << a.name << ":" << s.quiver.vertices()[a.source] << "->"
               << s.quiver.vertices()[a.target];
    r.text << "\npotential: W = " << s.potential.str(s.quiver) << "\nvalid through length "
           << s.valid_to << " (truncation " << s.trunc << ")\n";
    const auto w = has_two_cycle(s.quiver);
    if (w) {
        r.json["two_cycle"] = {s.quiver.arrow(w->first).name, s.quiver.arrow(w->second).name};
        r.text << "2-cycle: " << s.quiver.arrow(w->first).name << ", " << s.quiver.arrow(w->second).name
               << "\n";
    } else {
        r.json["two_cycle"] = nullptr;
        r.text << "no 2-cycles\n";
    }
    if (markov_shape(s.quiver)) {
        const GermType g = classify(cubic_tensor(s.quiver, s.potential));
        r.json["germ"] = to_string(g);
        r.text << "cubic germ: " << to_string(g) << "\n";
    }
}

int cmd_mutate(const Config& c, const std::vector<std::string>& word, int trunc, Report& r) {
    const auto qp = load(c);
    describe_input(r, qp);
    QPState s = QPState::make(qp.quiver, qp.potential, trunc);
    for (const auto& v : word) s = mutate(s, vertex_of(s.quiver, v));
    r.json["word"] = word;
    describe_state(r, s);
    return 0;
}

int cmd_mutability(const Config& c, int depth, int trunc, Report& r) {
    const auto qp = load(c);
    describe_input(r, qp);
    const MutabilityResult res = mutability_search(QPState::make(qp.quiver, qp.potential, trunc), depth);
    Json word = Json::array();
    std::string w;
    for (int v : res.word) {
        word.push_back(qp.quiver.vertices()[v]);
        w += (w.empty() ? "" : ",") + qp.quiver.vertices()[v];
    }
    r.json["obstructed"] = res.obstructed;
    r.json["word"] = word;
    r.json["depth"] = depth;
    r.json["mutations"] = res.nodes;
    r.json["min_valid_to"] = res.min_valid_to;
    if (res.obstructed)
        r.text << "obstructed: mutation word [" << w << "] produces a 2-cycle\n";
    else
        r.text << "clear through depth " << depth << " (" << res.nodes
               << " mutations; no proof beyond this depth)\n";
    r.text << "potentials exact through length " << res.min_valid_to << "\n";
    return 0;
}

int cmd_classify(const Config& c, Report& r) {
    const auto qp = load(c);
    describe_input(r, qp);
    const CubicTensor t = cubic_tensor(qp.quiver, qp.potential);
    const auto p = mode_rank_profile(t);
    const GermType g = classify(t);
    r.json["tensor"] = t.str();
    r.json["mode_ranks"] = p;
    r.json["hyperdeterminant"] = hyperdet(t).get_str();
    r.json["type"] = to_string(g);
    r.text << "cubic part: " << t.str() << "\nmode ranks: (" << p[0] << "," << p[1] << "," << p[2]
           << ")\nhyperdeterminant: " << hyperdet(t).get_str() << "\ntype: " << to_string(g) << "\n";
    return 0;
}

int cmd_pointcount(const Config& c, Report& r) {
    const auto qp = load(c);
    const auto o = pipeline_options(c, qp.quiver);
    describe_input(r, qp);
    add_conventions(r, o);
    const CutData cd = cut_reduce(qp.quiver, qp.potential, choose_cut(qp));
    const StackCount sc = stack_count_series(cd, o.box, o.count);
    Json samples = Json::array();
    r.text << "dimension " << o.box.str() << ", cut:";
    for (int a : cd.cut) r.text << " " << qp.quiver.arrow(a).name;
    r.text << "\n";
    for (const auto& s : sc.samples) {
        samples.push_back({{"q", s.prime}, {"count", s.count.get_str()}, {"gauge", s.gauge.get_str()}});
        r.text << "  q = " << s.prime << ": " << s.count.get_str() << " points\n";
    }
    r.json["dimension"] = o.box.str();
    r.json["samples"] = samples;
    r.json["count_polynomial"] = sc.count_poly.str();
    r.json["degree_bound"] = sc.degree_bound;
    r.json["e_series"] = sc.e_series.str();
    r.text << "count polynomial: " << sc.count_poly.str() << " (degree bound " << sc.degree_bound
           << ", extra primes held out)\nE-series (purity assumed): " << sc.e_series.str() << "\n";
    return 0;
}

int cmd_depcheck(const Config& c, const std::string& other, Report& r) {
    const auto a = load(c);
    const auto b = preset(other);
    const auto o = pipeline_options(c, a.quiver);
    add_conventions(r, o);
    const DependenceReport d = dependence_check(a, b, o);
    r.json["first"] = a.name;
    r.json["second"] = b.name;
    r.json["dimension"] = d.dim.str();
    r.json["coefficient_difference"] = to_json(d.coeff_diff);
    r.json["omega_first"] = to_json(d.omega_a);
    r.json["omega_second"] = to_json(d.omega_b);
    r.json["omega_difference"] = to_json(d.omega_diff);
    r.text << a.name << " minus " << b.name << " at " << d.dim.str() << ":\n  coefficient: "
           << d.coeff_diff.str() << "\n  Omega: " << d.omega_a.str() << " - " << d.omega_b.str()
           << " = " << d.omega_diff.str() << "\n";
    return 0;
}

int cmd_selftest(const SelftestOptions& so, const std::string& twist, bool perturb_norm, Report& r) {
    SelftestOptions o = so;
    if (twist == "euler")
        o.twist = TwistConvention::Euler;
    else if (twist == "negated-euler")
        o.twist = TwistConvention::NegatedEuler;
    else if (twist != "antisymmetric")
        throw InvalidInput("unknown twist '" + twist + "'");
    if (perturb_norm) o.tate = TateTwist::FullQuiver;
    int failed = 0;
    Json rows = Json::array();
    r.json["seed"] = o.seed;
    r.json["twist"] = to_string(o.twist);
    r.json["normalization"] = perturb_norm ? "full quiver (perturbed)" : "cut quiver";
    r.text << "seed " << o.seed << ", twist " << to_string(o.twist) << ", normalization "
           << (perturb_norm ? "full quiver (perturbed)" : "cut quiver") << "\n";
    for (const auto& res : run_selftest(o)) {
        rows.push_back({{"id", res.id},
                        {"title", res.title},
                        {"pass", res.pass},
                        {"seconds", res.seconds},
                        {"detail", res.detail}});
        r.text << format_result(res) << "\n";
        if (!res.pass) ++failed;
    }
    r.json["criteria"] = rows;
    r.text << failed << " criteria failed\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Refined BPS invariants, quantum torus factorizations, shuffle algebra dimensions "
                 "and quiver mutations"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App* sub, bool counting) {
        sub->add_option("--preset", cfg.preset, "built-in quiver with potential")
            ->check(CLI::IsMember(preset_names()));
        sub->add_option("--input", cfg.input, "quiver file (JSON)");
        sub->add_flag("--json", cfg.json, "emit JSON");
        sub->add_flag("--pretty{false}", cfg.json, "emit text (default)");
        sub->add_option("-o,--output", cfg.output, "write the report to a file");
        if (counting) {
            sub->add_option("--box", cfg.box, "dimension vector, e.g. 1,1,1");
            sub->add_option("--order", cfg.order, "series window in half powers of q")
                ->check(CLI::Range(4, 400));
            sub->add_option("--primes", cfg.primes, "auto or a list such as 5,7,11,13");
        }
    };

    auto* bps = app.add_subcommand("bps", "BPS invariants on a box");
    common(bps, true);
    auto* zs = app.add_subcommand("zseries", "partition function coefficients");
    common(zs, true);
    auto* fac = app.add_subcommand("factorize", "slope factorization of the partition function");
    common(fac, true);
    int n_max = 7;
    auto* sph = app.add_subcommand("spherical", "spherical subalgebra dimensions and comparison");
    common(sph, true);
    sph->add_option("--nmax", n_max, "highest cohomological degree")->check(CLI::Range(0, 15));
    auto* ginv = app.add_subcommand("ginv", "G-invariant series of the Markov quiver");
    common(ginv, true);
    ginv->add_option("--nmax", n_max, "highest cohomological degree")->check(CLI::Range(0, 15));

    std::vector<std::string> word;
    int trunc = kDefaultTrunc, depth = 4;
    auto* mut = app.add_subcommand("mutate", "mutate at a sequence of vertices");
    common(mut, false);
    mut->add_option("--vertex", word, "vertex name; repeat for a word")->required();
    mut->add_option("--trunc", trunc, "truncation length")->check(CLI::Range(2, 30));
    auto* mab = app.add_subcommand("mutability", "bounded search for 2-cycles under mutation");
    common(mab, false);
    mab->add_option("--depth", depth, "maximal word length")->check(CLI::Range(1, 12));
    mab->add_option("--trunc", trunc, "truncation length")->check(CLI::Range(2, 30));
    auto* cls = app.add_subcommand("classify-cubic", "type of the cubic part of a Markov potential");
    common(cls, false);
    auto* pc = app.add_subcommand("pointcount", "finite-field counts for one dimension vector");
    common(pc, true);
    std::string other = "markov-marg";
    auto* dep = app.add_subcommand("depcheck", "compare two potentials at the box");
    common(dep, true);
    dep->add_option("--against", other, "second preset")->check(CLI::IsMember(preset_names()));

    SelftestOptions so;
    std::string twist = "antisymmetric";
    bool perturb_norm = false;
    auto* st = app.add_subcommand("selftest", "run every acceptance criterion");
    st->add_flag("--json", cfg.json, "emit JSON");
    st->add_option("-o,--output", cfg.output, "write the report to a file");
    st->add_option("--only", so.only, "criterion ids")->check(CLI::Range(1, 10));
    st->add_option("--depth", so.mutation_depth, "mutation search depth")->check(CLI::Range(1, 12));
    st->add_option("--seed", so.seed, "seed of the randomized checks");
    st->add_option("--perturb-twist", twist, "antisymmetric, euler or negated-euler");
    st->add_flag("--perturb-normalization", perturb_norm, "use the full quiver's Euler form");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!cfg.input.empty() && app.get_subcommands().front()->count("--preset")) {
        std::cerr << "error: give either --preset or --input\n";
        return 2;
    }

    Report r;
    int code = 0;
    try {
        CLI::App* sub = app.get_subcommands().front();
        r.json["command"] = sub->get_name();
        if (sub == bps) code = cmd_bps(cfg, r);
        else if (sub == zs) code = cmd_zseries(cfg, r);
        else if (sub == fac) code = cmd_factorize(cfg, r);
        else if (sub == sph) code = cmd_spherical(cfg, n_max, r);
        else if (sub == ginv) code = cmd_ginv(cfg, n_max, r);
        else if (sub == mut) code = cmd_mutate(cfg, word, trunc, r);
        else if (sub == mab) code = cmd_mutability(cfg, depth, trunc, r);
        else if (sub == cls) code = cmd_classify(cfg, r);
        else if (sub == pc) code = cmd_pointcount(cfg, r);
        else if (sub == dep) code = cmd_depcheck(cfg, other, r);
        else if (sub == st) code = cmd_selftest(so, twist, perturb_norm, r);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Refusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    const std::string out = cfg.json ? r.json.dump(2) + "\n" : r.text.str();
    if (cfg.output.empty()) {
        std::cout << out;
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            std::cerr << "error: cannot write '" << cfg.output << "'\n";
            return 2;
        }
        f << out;
    }
    return code;
}
