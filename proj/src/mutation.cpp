#include "bpskit/mutation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bpskit/error.hpp"

namespace bpskit {

namespace {

std::string star(const std::string& name) {
    if (!name.empty() && name.back() == '*') return name.substr(0, name.size() - 1);
    return name + "*";
}

void note_loss(QPState& s, int length) {
    if (!s.lost_from || length < *s.lost_from) s.lost_from = length;
    s.valid_to = std::min(s.trunc, *s.lost_from - 1);
}

void add_truncated(QPState& s, Potential& w, const Path& p, const Rational& c) {
    if (static_cast<int>(p.size()) > s.trunc) {
        note_loss(s, static_cast<int>(p.size()));
        return;
    }
    w.add_unchecked(p, c);
}

// Rotates so that position `at` comes first.
Path rotated(const Path& p, std::size_t at) {
    Path r(p.begin() + at, p.end());
    r.insert(r.end(), p.begin(), p.begin() + at);
    return r;
}

// u -> u + sum c * path, applied to every occurrence of u in every term.
Potential substitute(QPState& s, const Potential& w, int u, const std::vector<PathTerm>& shift) {
    Potential out;
    for (const auto& [cycle, coeff] : w.terms()) {
        if (std::find(cycle.begin(), cycle.end(), u) == cycle.end()) {
            out.add_unchecked(cycle, coeff);
            continue;
        }
        std::vector<std::pair<Path, Rational>> partial = {{{}, coeff}};
        for (int arrow : cycle) {
            std::vector<std::pair<Path, Rational>> next;
            for (auto& [p, c] : partial) {
                if (arrow != u) {
                    p.push_back(arrow);
                    next.emplace_back(std::move(p), c);
                    continue;
                }
                Path keep = p;
                keep.push_back(u);
                next.emplace_back(std::move(keep), c);
                for (const auto& t : shift) {
                    Path q = p;
                    q.insert(q.end(), t.path.begin(), t.path.end());
                    if (static_cast<int>(q.size()) > s.trunc) {
                        note_loss(s, static_cast<int>(q.size()));
                        continue;
                    }
                    next.emplace_back(std::move(q), c * t.coeff);
                }
            }
            partial = std::move(next);
        }
        for (const auto& [p, c] : partial) add_truncated(s, out, p, c);
    }
    return out;
}

// Complements of the first occurrence of `x` in every term other than the
// quadratic one, so that x * R reproduces those terms.
std::vector<PathTerm> first_occurrence_complements(const Potential& w, int x, const Path& quad) {
    std::map<Path, Rational> acc;
    for (const auto& [cycle, c] : w.terms()) {
        if (cycle == quad) continue;
        const auto it = std::find(cycle.begin(), cycle.end(), x);
        if (it == cycle.end()) continue;
        Path r = rotated(cycle, static_cast<std::size_t>(it - cycle.begin()));
        r.erase(r.begin());
        acc[r] += c;
    }
    std::vector<PathTerm> out;
    for (auto& [p, c] : acc)
        if (c != 0) out.push_back({c, p});
    return out;
}

Path quadratic_term(const Potential& w) {
    for (const auto& [p, c] : w.terms())
        if (p.size() == 2 && p[0] != p[1]) return p;
    return {};
}

}  // namespace

QPState QPState::make(Quiver q, Potential w, int trunc) {
    if (trunc < 2) throw InvalidInput("truncation length must be at least 2");
    if (static_cast<int>(w.max_length()) > trunc)
        throw InvalidInput("potential has a term longer than the truncation length");
    QPState s;
    s.quiver = std::move(q);
    s.potential = std::move(w);
    s.trunc = trunc;
    s.valid_to = trunc;
    return s;
}

QPState premutate(const QPState& s, int k) {
    const Quiver& q = s.quiver;
    if (k < 0 || k >= static_cast<int>(q.num_vertices())) throw InvalidInput("no such vertex");
    std::vector<int> in, out;
    std::vector<Arrow> arrows;
    for (std::size_t i = 0; i < q.num_arrows(); ++i) {
        const Arrow& a = q.arrow(static_cast<int>(i));
        if (a.source == k && a.target == k)
            throw InvalidInput("cannot mutate at vertex " + q.vertices()[k] + ": it carries a loop");
        if (a.target == k) {
            in.push_back(static_cast<int>(i));
            arrows.push_back({star(a.name), k, a.source});
        } else if (a.source == k) {
            out.push_back(static_cast<int>(i));
            arrows.push_back({star(a.name), a.target, k});
        } else {
            arrows.push_back(a);
        }
    }
    std::map<std::pair<int, int>, int> composite;
    for (int b : out)
        for (int a : in) {
            composite[{b, a}] = static_cast<int>(arrows.size());
            arrows.push_back({"[" + q.arrow(b).name + "." + q.arrow(a).name + "]",
                              q.arrow(a).source, q.arrow(b).target});
        }

    QPState r;
    r.quiver = Quiver(q.vertices(), std::move(arrows));
    r.trunc = s.trunc;
    r.lost_from = s.lost_from;
    if (s.lost_from) {
        // a lost term of length l passes through k at most l/2 times
        note_loss(r, (*s.lost_from + 1) / 2);
    } else {
        r.valid_to = s.trunc;
    }

    for (const auto& [cycle, c] : s.potential.terms()) {
        std::size_t start = 0;
        while (start < cycle.size() && q.arrow(cycle[start]).target == k) ++start;
        if (start == cycle.size()) throw InvalidInput("potential term is not a cycle");
        const Path p = rotated(cycle, start);
        Path np;
        for (std::size_t t = 0; t < p.size(); ++t) {
            if (t + 1 < p.size() && q.arrow(p[t + 1]).target == k) {
                np.push_back(composite.at({p[t], p[t + 1]}));
                ++t;
            } else {
                np.push_back(p[t]);
            }
        }
        r.potential.add_unchecked(np, c);
    }
    for (const auto& [ba, idx] : composite) {
        // [ba] a* b*: j -> k -> i -> j
        add_truncated(r, r.potential, {idx, ba.second, ba.first}, Rational(1));
    }
    return r;
}

QPState reduce(const QPState& s) {
    QPState r = s;
    std::set<int> removed;
    const int max_steps = 4 * r.trunc + 8;
    for (Path quad = quadratic_term(r.potential); !quad.empty(); quad = quadratic_term(r.potential)) {
        const int x = quad[0], y = quad[1];
        const Rational lambda = r.potential.terms().at(quad);
        int steps = 0;
        while (true) {
            const auto rx = first_occurrence_complements(r.potential, x, quad);
            if (!rx.empty()) {
                // y -> y - R/lambda cancels every other term through x
                std::vector<PathTerm> shift;
                for (const auto& t : rx) shift.push_back({-t.coeff / lambda, t.path});
                r.potential = substitute(r, r.potential, y, shift);
            } else {
                const Path quad_y = {y, x};
                auto ry = first_occurrence_complements(r.potential, y, canonical_rotation(quad_y));
                if (ry.empty()) break;
                std::vector<PathTerm> shift;
                for (const auto& t : ry) shift.push_back({-t.coeff / lambda, t.path});
                r.potential = substitute(r, r.potential, x, shift);
            }
            if (++steps > max_steps)
                throw Refusal("reduction did not settle within " + std::to_string(max_steps) +
                              " substitutions; increase the truncation length");
        }
        if (r.potential.terms().at(quad) != lambda)
            throw std::logic_error("reduce: quadratic coefficient changed");
        r.potential.add_unchecked(quad, -lambda);
        removed.insert(x);
        removed.insert(y);
    }
    if (removed.empty()) return r;

    std::vector<int> remap(r.quiver.num_arrows(), -1);
    std::vector<Arrow> arrows;
    for (std::size_t i = 0; i < r.quiver.num_arrows(); ++i) {
        if (removed.count(static_cast<int>(i))) continue;
        remap[i] = static_cast<int>(arrows.size());
        arrows.push_back(r.quiver.arrow(static_cast<int>(i)));
    }
    Potential w;
    for (const auto& [cycle, c] : r.potential.terms()) {
        Path p;
        for (int a : cycle) {
            if (remap[a] < 0) throw std::logic_error("reduce: eliminated arrow survived");
            p.push_back(remap[a]);
        }
        w.add_unchecked(p, c);
    }
    r.quiver = Quiver(r.quiver.vertices(), std::move(arrows));
    r.potential = std::move(w);
    return r;
}

std::optional<std::pair<int, int>> has_two_cycle(const Quiver& q) {
    for (std::size_t i = 0; i < q.num_arrows(); ++i)
        for (std::size_t j = i + 1; j < q.num_arrows(); ++j) {
            const Arrow& u = q.arrow(static_cast<int>(i));
            const Arrow& v = q.arrow(static_cast<int>(j));
            if (u.source != u.target && u.source == v.target && u.target == v.source)
                return std::make_pair(static_cast<int>(i), static_cast<int>(j));
        }
    return std::nullopt;
}

QPState mutate(const QPState& s, int k) { return reduce(premutate(s, k)); }

namespace {

bool search(const QPState& s, int depth, std::vector<int>& word, MutabilityResult& res,
            const MutationVisitor& visit) {
    if (static_cast<int>(word.size()) == depth) return false;
    for (int k = 0; k < static_cast<int>(s.quiver.num_vertices()); ++k) {
        if (!word.empty() && word.back() == k) continue;
        word.push_back(k);
        QPState next;
        try {
            next = mutate(s, k);
        } catch (const Error& e) {
            std::string w;
            for (int v : word) w += (w.empty() ? "" : ",") + s.quiver.vertices()[v];
            throw Refusal(std::string(e.what()) + " (mutation word [" + w + "])");
        }
        ++res.nodes;
        res.min_valid_to = std::min(res.min_valid_to, next.valid_to);
        if (visit) visit(word, next);
        if (has_two_cycle(next.quiver)) {
            res.obstructed = true;
            res.word = word;
            return true;
        }
        if (search(next, depth, word, res, visit)) return true;
        word.pop_back();
    }
    return false;
}

}  // namespace

MutabilityResult mutability_search(const QPState& s, int depth, const MutationVisitor& visit) {
    if (depth < 1) throw InvalidInput("search depth must be at least 1");
    MutabilityResult res;
    res.min_valid_to = s.valid_to;
    std::vector<int> word;
    if (!search(s, depth, word, res, visit)) res.depth = depth;
    return res;
}

}  // namespace bpskit
