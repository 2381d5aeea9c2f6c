#include "bpskit/cubic_germ.hpp"

#include "bpskit/error.hpp"

namespace bpskit {

std::optional<MarkovFamilies> markov_shape(const Quiver& q) {
    if (q.num_vertices() != 3 || q.num_arrows() != 6) return std::nullopt;
    const auto counts = q.arrow_counts();
    int y = -1;
    for (int v = 1; v < 3; ++v)
        if (counts[0][v] == 2) y = v;
    if (y < 0) return std::nullopt;
    const int z = 3 - y;
    if (counts[y][z] != 2 || counts[z][0] != 2) return std::nullopt;
    MarkovFamilies fam;
    fam.vertices = {0, y, z};
    const std::array<std::pair<int, int>, 3> edges = {{{z, 0}, {y, z}, {0, y}}};
    for (int f = 0; f < 3; ++f) {
        int n = 0;
        for (std::size_t a = 0; a < q.num_arrows(); ++a)
            if (q.arrow(a).source == edges[f].first && q.arrow(a).target == edges[f].second)
                fam.arrows[f][n++] = static_cast<int>(a);
    }
    return fam;
}

std::string CubicTensor::str() const {
    std::string s;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                if (t[i][j][k] == 0) continue;
                if (!s.empty()) s += " + ";
                if (t[i][j][k] != 1) s += to_string(t[i][j][k]) + "*";
                s += "c" + std::to_string(i + 1) + "b" + std::to_string(j + 1) + "a" +
                     std::to_string(k + 1);
            }
    return s.empty() ? "0" : s;
}

CubicTensor cubic_tensor(const Quiver& q, const Potential& w, const MarkovFamilies& fam) {
    auto slot = [&](int family, int arrow) {
        for (int i = 0; i < 2; ++i)
            if (fam.arrows[family][i] == arrow) return i;
        return -1;
    };
    CubicTensor t;
    for (const auto& [path, coeff] : w.terms()) {
        if (path.size() != 3) continue;
        // rotate so the c arrow is printed first
        std::size_t r = 0;
        while (r < 3 && slot(0, path[r]) < 0) ++r;
        if (r == 3) throw InvalidInput("cubic term " + path_str(q, path) + " is not of the form cba");
        const int i = slot(0, path[r]);
        const int j = slot(1, path[(r + 1) % 3]);
        const int k = slot(2, path[(r + 2) % 3]);
        if (j < 0 || k < 0)
            throw InvalidInput("cubic term " + path_str(q, path) + " is not of the form cba");
        t.t[i][j][k] += coeff;
    }
    return t;
}

CubicTensor cubic_tensor(const Quiver& q, const Potential& w) {
    const auto fam = markov_shape(q);
    if (!fam) throw InvalidInput("quiver is not Markov-shaped");
    return cubic_tensor(q, w, *fam);
}

namespace {

int rank_2x4(std::array<std::array<Rational, 4>, 2> m) {
    int col = 0;
    while (col < 4 && m[0][col] == 0 && m[1][col] == 0) ++col;
    if (col == 4) return 0;
    if (m[0][col] == 0) std::swap(m[0], m[1]);
    const Rational f = m[1][col] / m[0][col];
    for (int c = 0; c < 4; ++c) m[1][c] -= f * m[0][c];
    for (int c = 0; c < 4; ++c)
        if (m[1][c] != 0) return 2;
    return 1;
}

Rational det_slice(const CubicTensor& t, int i) {
    return t.t[i][0][0] * t.t[i][1][1] - t.t[i][0][1] * t.t[i][1][0];
}

}  // namespace

std::array<int, 3> mode_rank_profile(const CubicTensor& t) {
    std::array<std::array<Rational, 4>, 2> mc{}, mb{}, ma{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                mc[i][2 * j + k] = t.t[i][j][k];
                mb[j][2 * i + k] = t.t[i][j][k];
                ma[k][2 * i + j] = t.t[i][j][k];
            }
    return {rank_2x4(mc), rank_2x4(mb), rank_2x4(ma)};
}

Rational hyperdet(const CubicTensor& t) {
    const Rational a = det_slice(t, 0);
    const Rational c = det_slice(t, 1);
    CubicTensor sum;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) sum.t[0][j][k] = t.t[0][j][k] + t.t[1][j][k];
    const Rational b = det_slice(sum, 0) - a - c;
    return b * b - 4 * a * c;
}

std::string to_string(GermType g) {
    switch (g) {
        case GermType::T1:
            return "T1";
        case GermType::T2:
            return "T2";
        case GermType::T3:
            return "T3";
        case GermType::T4:
            return "T4";
        case GermType::T5:
            return "T5";
    }
    return "?";
}

GermType classify(const CubicTensor& t) {
    const auto p = mode_rank_profile(t);
    if (p == std::array<int, 3>{0, 0, 0}) return GermType::T1;
    if (p == std::array<int, 3>{1, 1, 1}) return GermType::T2;
    if (p == std::array<int, 3>{1, 2, 2} || p == std::array<int, 3>{2, 1, 2} ||
        p == std::array<int, 3>{2, 2, 1})
        return GermType::T3;
    if (p == std::array<int, 3>{2, 2, 2}) return hyperdet(t) != 0 ? GermType::T5 : GermType::T4;
    throw Error("mode rank profile (" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," +
                std::to_string(p[2]) + ") is not realized by any tensor");
}

Rational det(const Matrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

CubicTensor transform(const CubicTensor& t, const Matrix2& ma, const Matrix2& mb,
                      const Matrix2& mc) {
    if (det(ma) == 0 || det(mb) == 0 || det(mc) == 0)
        throw InvalidInput("transform needs invertible matrices");
    CubicTensor r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                Rational s = 0;
                for (int i2 = 0; i2 < 2; ++i2)
                    for (int j2 = 0; j2 < 2; ++j2)
                        for (int k2 = 0; k2 < 2; ++k2)
                            s += mc[i][i2] * mb[j][j2] * ma[k][k2] * t.t[i2][j2][k2];
                r.t[i][j][k] = s;
            }
    return r;
}

CubicTensor rotate_modes(const CubicTensor& t) {
    CubicTensor r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r.t[j][k][i] = t.t[i][j][k];
    return r;
}

}  // namespace bpskit
