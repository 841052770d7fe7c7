// genlab.hpp — corpus generators and persistence.
//
// Exact order-zero maps φ(x) = h·π(x) with π a multiplicity block-embedding
// conjugated by a random unitary and h positive in the commutant of π(A);
// Jordan *-homomorphisms π ⊕ (transpose∘π′); norm-certified perturbations;
// the almost-commuting shift/diagonal pair; seeded random corpora with a
// versioned JSON format (complex entries as [re, im], row-major matrices).

#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "defect.hpp"
#include "linmap.hpp"

namespace ozkit {

// ---- element samplers -------------------------------------------------------

inline AlgElement sample_general(const AlgebraShape& shape, Rand& rng) {
    AlgElement x(shape);
    for (int b = 0; b < shape.num_blocks(); ++b) x.blocks[b] = gaussian_matrix(rng, shape.blocks[b], shape.blocks[b]);
    const double n = norm(x);
    return n > 0 ? (1.0 / n) * x : x;
}

inline AlgElement sample_selfadjoint(const AlgebraShape& shape, Rand& rng) {
    AlgElement x(shape);
    for (int b = 0; b < shape.num_blocks(); ++b) x.blocks[b] = hermitian_gaussian(rng, shape.blocks[b]);
    const double n = norm(x);
    return n > 0 ? (1.0 / n) * x : x;
}

inline AlgElement sample_positive(const AlgebraShape& shape, Rand& rng) {
    AlgElement x(shape);
    for (int b = 0; b < shape.num_blocks(); ++b) x.blocks[b] = random_psd(rng, shape.blocks[b], 0.0, 1.0);
    const double n = norm(x);
    return n > 0 ? (1.0 / n) * x : x;
}

enum class PairKind { positive, selfadjoint, general };

// Orthogonal pair x ⊥ y built in a shared random eigenbasis.  Positive and
// self-adjoint pairs are diagonal with disjoint supports; general pairs are
// two-sided compressions by orthogonal projections, which satisfy all four
// orthogonality products exactly.
inline std::pair<AlgElement, AlgElement> sample_orthogonal_pair(const AlgebraShape& shape, Rand& rng, PairKind kind) {
    AlgElement x(shape), y(shape);
    bool has_x = false, has_y = false;
    std::vector<std::vector<int>> assign(shape.blocks.size());
    for (int b = 0; b < shape.num_blocks(); ++b) {
        assign[b].resize(shape.blocks[b]);
        for (int i = 0; i < shape.blocks[b]; ++i) assign[b][i] = rng.uniform_int(0, 2);
    }
    // ensure both supports are nonempty
    {
        int nb = shape.num_blocks();
        int bx = rng.uniform_int(0, nb - 1);
        assign[bx][rng.uniform_int(0, shape.blocks[bx] - 1)] = 1;
        for (int b = 0; b < nb; ++b)
            for (int i = 0; i < shape.blocks[b]; ++i)
                if (assign[b][i] == 2) has_y = true;
        if (!has_y) {
            // claim a slot not already alone in the x-support
            for (int b = nb - 1; b >= 0 && !has_y; --b)
                for (int i = shape.blocks[b] - 1; i >= 0 && !has_y; --i)
                    if (!(b == bx && assign[b][i] == 1)) {
                        assign[b][i] = 2;
                        has_y = true;
                    }
        }
        has_x = has_y = false;
    }

    for (int b = 0; b < shape.num_blocks(); ++b) {
        const int n = shape.blocks[b];
        const CMat u = random_unitary(rng, n);
        RVec dx = RVec::Zero(n), dy = RVec::Zero(n);
        for (int i = 0; i < n; ++i) {
            if (assign[b][i] == 1) {
                dx(i) = (kind == PairKind::selfadjoint) ? rng.uniform(-1.0, 1.0) : rng.uniform(0.2, 1.0);
                has_x = true;
            } else if (assign[b][i] == 2) {
                dy(i) = (kind == PairKind::selfadjoint) ? rng.uniform(-1.0, 1.0) : rng.uniform(0.2, 1.0);
                has_y = true;
            }
        }
        x.blocks[b] = u * dx.asDiagonal() * u.adjoint();
        y.blocks[b] = u * dy.asDiagonal() * u.adjoint();
        if (kind == PairKind::general) {
            const CMat px = u * RVec(dx.array().sign().matrix()).asDiagonal() * u.adjoint();
            const CMat py = u * RVec(dy.array().sign().matrix()).asDiagonal() * u.adjoint();
            x.blocks[b] = px * gaussian_matrix(rng, n, n) * px;
            y.blocks[b] = py * gaussian_matrix(rng, n, n) * py;
        }
    }
    (void)has_x;
    (void)has_y;
    const double nx = norm(x), ny = norm(y);
    if (nx > 0) x = (1.0 / nx) * x;
    if (ny > 0) y = (1.0 / ny) * y;
    return {x, y};
}

// ---- generators --------------------------------------------------------------

struct OrderZeroOptions {
    double spec_lo = 0.3;       // h-eigenvalue range on the embedded part
    double spec_hi = 1.0;
    bool allow_kernel = false;  // admit zero eigenvalues in h
};

// φ(x) = h·π(x) into M_{cod_n}: π embeds block i with multiplicity m_i,
// conjugated by a random unitary; h is positive in the commutant of π(A).
inline LinMap gen_order_zero(const AlgebraShape& dom, int cod_n, const std::vector<int>& multiplicities,
                             std::uint64_t seed, const OrderZeroOptions& opt = {}) {
    if (static_cast<int>(multiplicities.size()) != dom.num_blocks())
        throw ShapeMismatchError("gen_order_zero: one multiplicity per domain block");
    int used = 0;
    for (int b = 0; b < dom.num_blocks(); ++b) {
        if (multiplicities[b] < 0) throw DimensionOverflowError("gen_order_zero: negative multiplicity");
        used += multiplicities[b] * dom.blocks[b];
    }
    if (used > cod_n) throw DimensionOverflowError("gen_order_zero: multiplicities exceed codomain dimension");

    Rand rng(seed);
    const CMat u = random_unitary(rng, cod_n);

    // diagonal commutant weights: one value per copy slot, zero on the padding
    RVec weights = RVec::Zero(cod_n);
    {
        int off = 0;
        for (int b = 0; b < dom.num_blocks(); ++b) {
            for (int m = 0; m < multiplicities[b]; ++m) {
                double w = rng.uniform(opt.spec_lo, opt.spec_hi);
                if (opt.allow_kernel && rng.uniform() < 0.25) w = 0.0;
                for (int i = 0; i < dom.blocks[b]; ++i) weights(off + i) = w;
                off += dom.blocks[b];
            }
        }
    }

    const AlgebraShape cod({cod_n});
    return map_from_function(dom, cod, [&](const AlgElement& x) {
        CMat pix = CMat::Zero(cod_n, cod_n);
        int off = 0;
        for (int b = 0; b < dom.num_blocks(); ++b)
            for (int m = 0; m < multiplicities[b]; ++m) {
                pix.block(off, off, dom.blocks[b], dom.blocks[b]) = x.blocks[b];
                off += dom.blocks[b];
            }
        const CMat img = u * (weights.asDiagonal() * pix) * u.adjoint();
        AlgElement r(cod);
        r.blocks[0] = img;
        return r;
    });
}

struct JordanSplit {
    std::vector<int> plain;      // multiplicities of π
    std::vector<int> transposed; // multiplicities of transpose∘π′
};

// self-adjoint Jordan *-homomorphism π ⊕ (transpose∘π′), unitarily conjugated
inline LinMap gen_jordan_hom(const AlgebraShape& dom, int cod_n, const JordanSplit& split, std::uint64_t seed) {
    if (static_cast<int>(split.plain.size()) != dom.num_blocks() ||
        static_cast<int>(split.transposed.size()) != dom.num_blocks())
        throw ShapeMismatchError("gen_jordan_hom: one multiplicity per domain block and part");
    int used = 0;
    for (int b = 0; b < dom.num_blocks(); ++b)
        used += (split.plain[b] + split.transposed[b]) * dom.blocks[b];
    if (used > cod_n) throw DimensionOverflowError("gen_jordan_hom: multiplicities exceed codomain dimension");

    Rand rng(seed);
    const CMat u = random_unitary(rng, cod_n);
    const AlgebraShape cod({cod_n});
    return map_from_function(dom, cod, [&](const AlgElement& x) {
        CMat jx = CMat::Zero(cod_n, cod_n);
        int off = 0;
        for (int b = 0; b < dom.num_blocks(); ++b)
            for (int m = 0; m < split.plain[b]; ++m) {
                jx.block(off, off, dom.blocks[b], dom.blocks[b]) = x.blocks[b];
                off += dom.blocks[b];
            }
        for (int b = 0; b < dom.num_blocks(); ++b)
            for (int m = 0; m < split.transposed[b]; ++m) {
                jx.block(off, off, dom.blocks[b], dom.blocks[b]) = x.blocks[b].transpose();
                off += dom.blocks[b];
            }
        AlgElement r(cod);
        r.blocks[0] = u * jx * u.adjoint();
        return r;
    });
}

enum class PerturbMode { general, self_adjoint, positive_preserving };

// φ + Δ with ‖Δ‖ ≤ magnitude certified.  slack = 2·magnitude·‖φ‖_upper +
// magnitude² certifies oz-defect(φ+Δ) ≤ oz-defect(φ) + slack.
inline std::pair<LinMap, double> perturb(const LinMap& map, double magnitude, PerturbMode mode, std::uint64_t seed) {
    if (magnitude < 0) throw DomainError("perturb: magnitude must be nonnegative");
    const double slack = 2.0 * magnitude * map_norm_upper(map) + magnitude * magnitude;
    if (magnitude == 0.0) return {map, 0.0};

    Rand rng(seed);
    LinMap delta = zero_map(map.dom, map.cod);
    if (mode == PerturbMode::positive_preserving) {
        // a completely positive bump x ↦ V* π_plain(x) V keeps φ + Δ positive;
        // its norm equals ‖Δ(1)‖, rescaled to the requested magnitude
        const int m = map.cod.total_matrix_dim();
        const int d = map.dom.total_matrix_dim();
        const CMat v = gaussian_matrix(rng, d, m);
        delta = map_from_function(map.dom, map.cod, [&](const AlgElement& x) {
            const CMat big = v.adjoint() * assemble(x) * v;
            AlgElement r(map.cod);
            int off = 0;
            for (int b = 0; b < map.cod.num_blocks(); ++b) {
                r.blocks[b] = big.block(off, off, map.cod.blocks[b], map.cod.blocks[b]);
                off += map.cod.blocks[b];
            }
            return r;
        });
        const double dnorm = norm(apply(delta, unit(map.dom))); // exact for positive maps
        if (dnorm > 0) delta = map_scale(magnitude / dnorm, delta);
    } else {
        CMat g = gaussian_matrix(rng, map.cod.coord_dim(), map.dom.coord_dim());
        delta = LinMap(map.dom, map.cod, std::move(g));
        if (mode == PerturbMode::self_adjoint) delta = selfadjointify(delta);
        const double up = map_norm_upper(delta);
        if (up > 0) delta = map_scale(magnitude / up, delta);
    }
    return {map_add(map, delta), slack};
}

// Almost-commuting pair: A the nilpotent weighted shift with weights j/n,
// B = diag(1 − 2(j−1)/(n−1)).  Contracts ‖A‖ = 1 − 1/n, ‖B‖ ≤ 1,
// ‖[A,B]‖ ≤ 2/n are re-verified numerically after construction.  (The source
// construction also stays provably far from every commuting pair; that lower
// bound is not checked here.)
inline std::pair<CMat, CMat> gen_choi_pair(int n) {
    if (n < 2) throw DomainError("gen_choi_pair: n must be at least 2");
    CMat a = CMat::Zero(n, n), b = CMat::Zero(n, n);
    for (int j = 1; j < n; ++j) a(j, j - 1) = static_cast<double>(j) / n;
    for (int j = 0; j < n; ++j) b(j, j) = 1.0 - 2.0 * j / (n - 1.0);
    const double na = op_norm(a);
    const double nb = op_norm(b);
    const double nc = op_norm(CMat(a * b - b * a));
    if (std::abs(na - (1.0 - 1.0 / n)) > 1e-9) throw ContractViolatedError("gen_choi_pair: ‖A‖ contract failed");
    if (nb > 1.0 + 1e-9) throw ContractViolatedError("gen_choi_pair: ‖B‖ contract failed");
    if (nc > 2.0 / n + 1e-9) throw ContractViolatedError("gen_choi_pair: commutator contract failed");
    return {a, b};
}

// ---- corpus -------------------------------------------------------------------

inline constexpr int kCorpusFormatVersion = 1;

struct CorpusEntry {
    LinMap map;
    std::optional<double> planted_eps; // certified upper bound on the oz defect
    std::vector<std::string> tags;

    bool has_tag(const std::string& t) const {
        return std::find(tags.begin(), tags.end(), t) != tags.end();
    }
};

struct Corpus {
    std::uint64_t seed = 0;
    int format_version = kCorpusFormatVersion;
    std::vector<CorpusEntry> entries;
};

struct CorpusSpec {
    int n_exact = 60;
    int n_jordan = 20;
    int n_perturbed = 150;          // self-adjoint perturbations of exact maps
    int n_positive_perturbed = 70;  // completely positive perturbations
    double eps_lo = 1e-8;           // certified-defect target range
    double eps_hi = 1e-2;

    static CorpusSpec standard() { return CorpusSpec{}; }
};

namespace detail {

struct ShapeChoice {
    AlgebraShape dom;
    int cod_n;
    std::vector<int> mults;
};

inline ShapeChoice pick_shape(Rand& rng) {
    static const std::vector<ShapeChoice> menu = {
        {AlgebraShape({2}), 2, {1}},
        {AlgebraShape({2}), 5, {2}},
        {AlgebraShape({3}), 7, {2}},
        {AlgebraShape({1, 1}), 3, {1, 1}},
        {AlgebraShape({1, 2}), 6, {1, 2}},
        {AlgebraShape({2, 2}), 9, {1, 1}},
        {AlgebraShape({1, 1, 1}), 4, {1, 1, 1}},
        {AlgebraShape({3}), 10, {3}},
        {AlgebraShape({2, 3}), 12, {2, 1}},
    };
    return menu[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(menu.size()) - 1))];
}

} // namespace detail

inline Corpus gen_random_corpus(const CorpusSpec& spec, std::uint64_t seed) {
    Corpus corpus;
    corpus.seed = seed;
    Rand rng(seed);
    std::uint64_t salt = 1;

    auto next = [&]() { return rng.fork(salt++); };

    for (int i = 0; i < spec.n_exact; ++i) {
        Rand sub = next();
        const auto ch = detail::pick_shape(sub);
        OrderZeroOptions opt;
        opt.allow_kernel = (i % 3 == 0);
        CorpusEntry e{gen_order_zero(ch.dom, ch.cod_n, ch.mults, sub.seed(), opt), 1e-12,
                      {"exact-oz", "positive", "sa"}};
        corpus.entries.push_back(std::move(e));
    }
    for (int i = 0; i < spec.n_jordan; ++i) {
        Rand sub = next();
        const auto ch = detail::pick_shape(sub);
        JordanSplit split;
        split.plain = ch.mults;
        split.transposed.assign(ch.mults.size(), 0);
        if (i % 2 == 0 && 2 * ch.dom.total_matrix_dim() <= ch.cod_n) {
            split.transposed = ch.mults;
        } else {
            split.transposed[static_cast<size_t>(i) % split.transposed.size()] =
                split.plain[static_cast<size_t>(i) % split.plain.size()];
            split.plain[static_cast<size_t>(i) % split.plain.size()] = 0;
        }
        int used = 0;
        for (size_t b = 0; b < split.plain.size(); ++b)
            used += (split.plain[b] + split.transposed[b]) * ch.dom.blocks[b];
        if (used > ch.cod_n) { split.plain = ch.mults; split.transposed.assign(ch.mults.size(), 0); }
        CorpusEntry e{gen_jordan_hom(ch.dom, ch.cod_n, split, sub.seed()), std::nullopt, {"jordan-hom", "sa"}};
        corpus.entries.push_back(std::move(e));
    }
    auto log_uniform = [](Rand& r, double lo, double hi) {
        return std::exp(r.uniform(std::log(lo), std::log(hi)));
    };
    for (int i = 0; i < spec.n_perturbed; ++i) {
        Rand sub = next();
        const auto ch = detail::pick_shape(sub);
        OrderZeroOptions opt;
        opt.allow_kernel = (i % 4 == 0);
        const LinMap base = gen_order_zero(ch.dom, ch.cod_n, ch.mults, sub.seed(), opt);
        // choose the perturbation size so the certified defect lands in range
        const double target = log_uniform(sub, spec.eps_lo, spec.eps_hi);
        const double up = map_norm_upper(base);
        const double magnitude = target / (2.0 * up + 1.0); // slack ≤ target
        auto [pm, slack] = perturb(base, magnitude, PerturbMode::self_adjoint, sub.seed() ^ 0xabcdULL);
        CorpusEntry e{std::move(pm), slack + 1e-12, {"perturbed", "sa"}};
        corpus.entries.push_back(std::move(e));
    }
    for (int i = 0; i < spec.n_positive_perturbed; ++i) {
        Rand sub = next();
        const auto ch = detail::pick_shape(sub);
        const LinMap base = gen_order_zero(ch.dom, ch.cod_n, ch.mults, sub.seed());
        const double target = log_uniform(sub, spec.eps_lo, spec.eps_hi);
        const double up = map_norm_upper(base);
        const double magnitude = target / (2.0 * up + 1.0);
        auto [pm, slack] = perturb(base, magnitude, PerturbMode::positive_preserving, sub.seed() ^ 0xbcdeULL);
        CorpusEntry e{std::move(pm), slack + 1e-12, {"perturbed", "positive", "sa"}};
        corpus.entries.push_back(std::move(e));
    }
    return corpus;
}

// ---- JSON persistence ----------------------------------------------------------

namespace detail {

inline nlohmann::json matrix_to_json(const CMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMat matrix_from_json(const nlohmann::json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows) throw FormatError("corpus: bad matrix row count");
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) throw FormatError("corpus: bad matrix column count");
        for (int jj = 0; jj < cols; ++jj) {
            const auto& c = row[static_cast<size_t>(jj)];
            if (!c.is_array() || c.size() != 2) throw FormatError("corpus: complex entries must be [re, im]");
            m(i, jj) = cd(c[0].get<double>(), c[1].get<double>());
        }
    }
    return m;
}

} // namespace detail

inline nlohmann::ordered_json map_to_json(const LinMap& map) {
    nlohmann::ordered_json j;
    j["dom"] = map.dom.blocks;
    j["cod"] = map.cod.blocks;
    j["action"] = detail::matrix_to_json(map.action);
    return j;
}

inline LinMap map_from_json(const nlohmann::json& j) {
    if (!j.contains("dom") || !j.contains("cod") || !j.contains("action"))
        throw FormatError("corpus: map requires dom/cod/action");
    const AlgebraShape dom(j["dom"].get<std::vector<int>>());
    const AlgebraShape cod(j["cod"].get<std::vector<int>>());
    return LinMap(dom, cod, detail::matrix_from_json(j["action"], cod.coord_dim(), dom.coord_dim()));
}

inline void save_corpus(const Corpus& corpus, const std::string& path) {
    nlohmann::ordered_json j;
    j["format_version"] = corpus.format_version;
    j["seed"] = corpus.seed;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const CorpusEntry& e : corpus.entries) {
        nlohmann::ordered_json je;
        je["tags"] = e.tags;
        if (e.planted_eps) je["planted_eps"] = *e.planted_eps;
        je["map"] = map_to_json(e.map);
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("save_corpus: cannot open " + path);
    out << j.dump(1, '\t') << '\n';
}

inline Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_corpus: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("load_corpus: malformed JSON: ") + ex.what());
    }
    if (!j.contains("format_version") || !j["format_version"].is_number_integer())
        throw FormatError("load_corpus: missing format_version");
    if (j["format_version"].get<int>() != kCorpusFormatVersion)
        throw FormatError("load_corpus: unsupported format_version");
    Corpus corpus;
    corpus.format_version = j["format_version"].get<int>();
    corpus.seed = j.value("seed", 0ULL);
    if (!j.contains("entries") || !j["entries"].is_array()) throw FormatError("load_corpus: missing entries");
    for (const auto& je : j["entries"]) {
        CorpusEntry e{map_from_json(je.at("map")), std::nullopt, {}};
        if (je.contains("planted_eps")) e.planted_eps = je["planted_eps"].get<double>();
        if (je.contains("tags")) e.tags = je["tags"].get<std::vector<std::string>>();
        corpus.entries.push_back(std::move(e));
    }
    return corpus;
}

} // namespace ozkit
