#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "riesz/dyadic.hpp"
#include "riesz/inner.hpp"
#include "riesz/io.hpp"
#include "riesz/matrix.hpp"
#include "riesz/multop.hpp"
#include "riesz/superop.hpp"
#include "riesz/version.hpp"

namespace riesz::fuzz {

/// splitmix64 with the published constants; every implementation of the
/// harness draws from this exact stream so corpora line up across runs.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    bool coin() { return below(2) == 1; }

private:
    std::uint64_t s_;
};

/// Independent per-(property, trial) stream: trials can run in any order
/// (or be distributed) without changing any draw.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    SplitMix64 g(seed);
    SplitMix64 h(g.next() ^ (a * 0x9E3779B97F4A7C15ull + 0x7F4A7C15ull));
    SplitMix64 k(h.next() ^ (b * 0xBF58476D1CE4E5B9ull + 0x1CE4E5B9ull));
    return k.next();
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Generators. Small rationals keep every check exact and every failure
// readable.

template <ScalarType S>
S gen_scalar(SplitMix64& g, bool nonneg = false) {
    const long long num =
        nonneg ? static_cast<long long>(g.below(7))
               : static_cast<long long>(g.below(13)) - 6;
    const long long den = 1 + static_cast<long long>(g.below(4));
    return S::from_fraction(num, den);
}

template <ScalarType S>
Vector<S> gen_vector(SplitMix64& g, std::size_t n, bool nonneg = false) {
    Vector<S> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = gen_scalar<S>(g, nonneg);
    return v;
}

template <ScalarType S>
Matrix<S> gen_matrix(SplitMix64& g, std::size_t n, bool nonneg = false) {
    Matrix<S> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = gen_scalar<S>(g, nonneg);
    return m;
}

template <ScalarType S>
Matrix<S> gen_nonzero_matrix(SplitMix64& g, std::size_t n, bool nonneg = false) {
    for (int tries = 0; tries < 8; ++tries) {
        Matrix<S> m = gen_matrix<S>(g, n, nonneg);
        if (!m.is_zero()) return m;
    }
    return Matrix<S>::identity(n);
}

inline std::set<std::size_t> gen_support(SplitMix64& g, std::size_t n) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
        if (g.coin()) s.insert(i);
    return s;
}

/// Disjoint blocks over a random share of the coordinates; coverage is
/// deliberately allowed to be partial.
inline BlockFamily gen_block_family(SplitMix64& g, std::size_t n) {
    const std::size_t k = 1 + g.below(std::min<std::size_t>(n, 3));
    BlockFamily::BlockMap blocks;
    for (std::size_t c = 0; c < n; ++c) {
        const std::uint64_t pick = g.below(k + 1);
        if (pick == k) continue; // uncovered
        blocks["b" + std::to_string(pick)].insert(c);
    }
    return BlockFamily(n, std::move(blocks));
}

inline IndexRelation gen_relation(SplitMix64& g, const BlockFamily& f,
                                  std::size_t max_pairs = ~std::size_t{0}) {
    IndexRelation r;
    for (const Label& a : f.labels())
        for (const Label& b : f.labels()) {
            if (r.size() >= max_pairs) return r;
            if (g.coin()) r.insert(a, b);
        }
    return r;
}

inline AtomRelation gen_atom_relation(SplitMix64& g, std::size_t n) {
    AtomRelation r;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (g.coin()) r.insert({a, b});
    return r;
}

inline std::vector<std::size_t> gen_permutation(SplitMix64& g, std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(p[i - 1], p[g.below(i)]);
    return p;
}

// ---------------------------------------------------------------------------
// Crafted non-band-projections with their expected rejection stages. Used by
// the stability property here and by the detector acceptance sweep.

template <ScalarType S>
struct CraftedNonExample {
    std::string name;
    SuperOperator<S> op;
    DetectStage expected;
};

template <ScalarType S>
std::vector<CraftedNonExample<S>> crafted_non_examples(std::size_t n) {
    if (n < 2) throw std::invalid_argument("crafted catalog needs n >= 2");
    std::vector<CraftedNonExample<S>> out;
    const std::size_t nn = n * n;
    const auto mask = [&](const AtomRelation& gamma) {
        return assemble<S>(to_inner_projection(gamma, n));
    };
    const AtomRelation full = [&] {
        AtomRelation r;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) r.insert({a, b});
        return r;
    }();
    const AtomRelation diag = [&] {
        AtomRelation r;
        for (std::size_t a = 0; a < n; ++a) r.insert({a, a});
        return r;
    }();

    const S half = S::from_fraction(1, 2);

    // Not idempotent (several of these are exactly the gamma-in-(0,1)
    // dichotomy violations; scaling breaks idempotence first).
    out.push_back({"half_identity", half * SuperOperator<S>::identity(n), DetectStage::idempotence});
    out.push_back({"double_identity", S(2) * SuperOperator<S>::identity(n), DetectStage::idempotence});
    out.push_back({"negated_identity", S(-1) * SuperOperator<S>::identity(n), DetectStage::idempotence});
    out.push_back({"half_diagonal_mask", half * mask(diag), DetectStage::idempotence});
    out.push_back({"double_full_mask", S(2) * mask(full), DetectStage::idempotence});
    out.push_back({"negated_diagonal_mask", S(-1) * mask(diag), DetectStage::idempotence});
    {
        SuperOperator<S> p = mask(full);
        p.matrix()(0, 0) = half; // stray 1/2 inside an otherwise clean mask
        out.push_back({"full_mask_stray_half", std::move(p), DetectStage::idempotence});
    }
    {
        SuperOperator<S> p = mask(diag);
        p.matrix()(vec_slot(0, 0, n), vec_slot(0, 0, n)) = half;
        out.push_back({"diag_mask_stray_half", std::move(p), DetectStage::idempotence});
    }
    {
        SuperOperator<S> p(n); // T maps to T^t: an involution, not idempotent
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                p.matrix()(vec_slot(j, i, n), vec_slot(i, j, n)) = S(1);
        out.push_back({"transpose", std::move(p), DetectStage::idempotence});
    }
    {
        SuperOperator<S> p(n); // nilpotent single off-diagonal entry
        p.matrix()(0, 1) = S(1);
        out.push_back({"nilpotent_shift", std::move(p), DetectStage::idempotence});
    }
    {
        SuperOperator<S> p = mask(full);
        p.matrix()(0, 1) = S(1); // mask plus an off-diagonal leak
        out.push_back({"mask_offdiagonal_leak", std::move(p), DetectStage::idempotence});
    }
    {
        // (P_full + P_diag)/2 averages two distinct idempotents.
        SuperOperator<S> p = half * (mask(full) + mask(diag));
        out.push_back({"blended_masks", std::move(p), DetectStage::idempotence});
    }

    // Idempotent but not positive.
    {
        SuperOperator<S> p = SuperOperator<S>::identity(n);
        p.matrix()(0, 0) = S(1);
        p.matrix()(0, 1) = S(-1);
        p.matrix()(1, 0) = S(0);
        p.matrix()(1, 1) = S(0);
        out.push_back({"skew_projector", std::move(p), DetectStage::positivity});
    }
    {
        SuperOperator<S> p = SuperOperator<S>::identity(n);
        p.matrix()(0, 0) = S(0);
        p.matrix()(0, 1) = S(0);
        p.matrix()(1, 0) = S(-1);
        p.matrix()(1, 1) = S(1);
        out.push_back({"skew_projector_lower", std::move(p), DetectStage::positivity});
    }
    {
        // Projector onto the span of (1, -1) in the first two slots.
        SuperOperator<S> p = SuperOperator<S>::identity(n);
        p.matrix()(0, 0) = half;
        p.matrix()(0, 1) = -half;
        p.matrix()(1, 0) = -half;
        p.matrix()(1, 1) = half;
        out.push_back({"difference_projector", std::move(p), DetectStage::positivity});
    }
    {
        SuperOperator<S> p = SuperOperator<S>::identity(n);
        p.matrix()(nn - 2, nn - 2) = half;
        p.matrix()(nn - 2, nn - 1) = -half;
        p.matrix()(nn - 1, nn - 2) = -half;
        p.matrix()(nn - 1, nn - 1) = half;
        out.push_back({"difference_projector_tail", std::move(p), DetectStage::positivity});
    }

    // Idempotent and positive but not dominated by the identity.
    {
        const S w = S::from_fraction(1, static_cast<long long>(nn));
        SuperOperator<S> p(n);
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = 0; j < nn; ++j) p.matrix()(i, j) = w;
        out.push_back({"averaging", std::move(p), DetectStage::domination});
    }
    {
        SuperOperator<S> p(n); // T maps to (T + T^t)/2
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                p.matrix()(vec_slot(i, j, n), vec_slot(i, j, n)) += half;
                p.matrix()(vec_slot(j, i, n), vec_slot(i, j, n)) += half;
            }
        out.push_back({"symmetrizer", std::move(p), DetectStage::domination});
    }
    {
        // Each column of T is replaced by its average row value.
        const S w = S::from_fraction(1, static_cast<long long>(n));
        SuperOperator<S> p(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    p.matrix()(vec_slot(i, j, n), vec_slot(k, j, n)) = w;
        out.push_back({"column_averaging", std::move(p), DetectStage::domination});
    }
    {
        // Rank-one projector onto the all-ones matrix in the first 2 slots.
        SuperOperator<S> p = SuperOperator<S>::identity(n);
        p.matrix()(0, 0) = half;
        p.matrix()(0, 1) = half;
        p.matrix()(1, 0) = half;
        p.matrix()(1, 1) = half;
        out.push_back({"ones_projector", std::move(p), DetectStage::domination});
    }
    {
        // L_A R_I for the rank-one averaging idempotent A = ones/n.
        const S w = S::from_fraction(1, static_cast<long long>(n));
        Matrix<S> a(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = w;
        out.push_back({"left_averaging_mult", assemble_mult(a, Matrix<S>::identity(n)),
                       DetectStage::domination});
    }

    return out;
}

// ---------------------------------------------------------------------------
// Harness.

inline const std::set<std::string>& all_modules() {
    static const std::set<std::string> m = {"lattice", "inner",        "boolean",
                                            "orthogonality", "detect", "mult"};
    return m;
}

struct FuzzConfig {
    std::uint64_t seed = 42;
    std::uint64_t trials = 1000;
    std::size_t max_dim = 4;               // capped at 6
    std::set<std::string> modules;         // empty means all
    bool inject_mutant = false;            // test hook: breaks one detect input
};

struct PropertyOutcome {
    std::string name;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::optional<std::uint64_t> first_failure;
    std::string counterexample; // compact JSON, replayable inputs
};

struct RunReport {
    std::string text;
    bool all_passed = true;
    std::uint64_t digest = 0;
    std::vector<PropertyOutcome> outcomes;
};

namespace detail {

using R = Rational;
using Vec = Vector<R>;
using Mat = Matrix<R>;

struct PropertyDef {
    std::string module;
    std::string name; // "module/short_name"
    // Returns pass/fail; on failure fills `inputs` with a replayable
    // serialization of everything the trial consumed.
    std::function<bool(SplitMix64&, std::uint64_t, const FuzzConfig&, io::json&)> run;
};

inline std::size_t gen_dim(SplitMix64& g, const FuzzConfig& cfg, std::size_t cap = 6) {
    return 1 + g.below(std::min(cfg.max_dim, cap));
}

inline io::json support_json(const std::set<std::size_t>& s) {
    io::json a = io::json::array();
    for (std::size_t i : s) a.push_back(i);
    return a;
}

inline io::json atom_relation_json(const AtomRelation& r) {
    io::json a = io::json::array();
    for (const auto& [x, y] : r) a.push_back(io::json::array({x, y}));
    return a;
}

inline const std::vector<PropertyDef>& registry() {
    static const std::vector<PropertyDef> props = [] {
        std::vector<PropertyDef> p;
        const auto add = [&p](std::string module, std::string short_name, auto fn) {
            p.push_back({module, module + "/" + short_name, fn});
        };

        // -- lattice ---------------------------------------------------
        add("lattice", "vector_lattice_axioms",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const Vec x = gen_vector<R>(g, n), y = gen_vector<R>(g, n),
                          z = gen_vector<R>(g, n);
                const bool ok = meet(x, y) == meet(y, x) && join(x, y) == join(y, x) &&
                                meet(meet(x, y), z) == meet(x, meet(y, z)) &&
                                join(join(x, y), z) == join(x, join(y, z)) &&
                                meet(x, join(x, y)) == x && join(x, meet(x, y)) == x &&
                                abs(x) == join(x, -x);
                if (!ok)
                    ce = {{"x", io::to_json(x)}, {"y", io::to_json(y)}, {"z", io::to_json(z)}};
                return ok;
            });
        add("lattice", "band_projection_on_x",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BandProjection p(n, gen_support(g, n));
                const Vec x = gen_vector<R>(g, n, true);
                const Vec px = p(x);
                const bool ok = p(px) == px && px.is_nonneg() && dominated_by(px, x) &&
                                to_matrix<R>(p) * x == px;
                if (!ok) ce = {{"support", support_json(p.support())}, {"x", io::to_json(x)}};
                return ok;
            });
        add("lattice", "exact_float_agreement",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const Vec x = gen_vector<R>(g, n), y = gen_vector<R>(g, n);
                Vector<FloatScalar> xf(n), yf(n);
                for (std::size_t i = 0; i < n; ++i) {
                    xf[i] = approximate(x[i]);
                    yf[i] = approximate(y[i]);
                }
                const double tol = 10.0 * FloatScalar::epsilon();
                const Vec em = meet(x, y), ej = join(x, y), ea = abs(x);
                const Vector<FloatScalar> fm = meet(xf, yf), fj = join(xf, yf), fa = abs(xf);
                bool ok = true;
                for (std::size_t i = 0; i < n; ++i)
                    ok = ok && std::fabs(em[i].to_double() - fm[i].value()) <= tol &&
                         std::fabs(ej[i].to_double() - fj[i].value()) <= tol &&
                         std::fabs(ea[i].to_double() - fa[i].value()) <= tol;
                if (!ok) ce = {{"x", io::to_json(x)}, {"y", io::to_json(y)}};
                return ok;
            });
        add("lattice", "operator_lattice_axioms",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg, 5);
                const Mat s = gen_matrix<R>(g, n), t = gen_matrix<R>(g, n),
                          u = gen_matrix<R>(g, n);
                const bool ok = meet(s, t) == meet(t, s) && join(s, t) == join(t, s) &&
                                meet(meet(s, t), u) == meet(s, meet(t, u)) &&
                                join(s, meet(s, t)) == s && meet(s, join(s, t)) == s &&
                                meet(s, s) == s;
                if (!ok)
                    ce = {{"s", io::to_json(s)}, {"t", io::to_json(t)}, {"u", io::to_json(u)}};
                return ok;
            });
        add("lattice", "riesz_decomposition",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg, 5);
                const Mat t = gen_matrix<R>(g, n);
                const Mat pos = t.positive_part(), neg = t.negative_part();
                const bool ok = pos - neg == t && pos + neg == abs(t) &&
                                meet(pos, neg).is_zero();
                if (!ok) ce = {{"t", io::to_json(t)}};
                return ok;
            });
        add("lattice", "rk_oracle_matches_meet",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg, 4);
                const Mat s = gen_matrix<R>(g, n, true), t = gen_matrix<R>(g, n, true);
                const Mat closed = meet(s, t);
                for (std::size_t j = 0; j < n; ++j) {
                    const Vec e = Vec::basis(n, j);
                    if (!(rk_oracle_meet(s, t, e) == closed * e)) {
                        ce = {{"s", io::to_json(s)}, {"t", io::to_json(t)}, {"column", j}};
                        return false;
                    }
                }
                // and at a random nonnegative point
                const Vec x = gen_vector<R>(g, n, true);
                if (!(rk_oracle_meet(s, t, x) == closed * x)) {
                    ce = {{"s", io::to_json(s)}, {"t", io::to_json(t)}, {"x", io::to_json(x)}};
                    return false;
                }
                return true;
            });
        add("lattice", "disjoint_blocks_meet_zero",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                std::set<std::size_t> sa, sb;
                for (std::size_t i = 0; i < n; ++i) {
                    switch (g.below(3)) {
                        case 0: sa.insert(i); break;
                        case 1: sb.insert(i); break;
                        default: break;
                    }
                }
                const Mat s1 = gen_matrix<R>(g, n, true), s2 = gen_matrix<R>(g, n, true);
                const Mat lhs = to_matrix<R>(BandProjection(n, sa)) * s1;
                const Mat rhs = to_matrix<R>(BandProjection(n, sb)) * s2;
                const bool ok = meet(lhs, rhs).is_zero();
                if (!ok)
                    ce = {{"support_a", support_json(sa)}, {"support_b", support_json(sb)},
                          {"s1", io::to_json(s1)}, {"s2", io::to_json(s2)}};
                return ok;
            });
        add("lattice", "atom_factor_recovery",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const std::size_t a = g.below(n), b = g.below(n);
                const long long den = 1 + static_cast<long long>(g.below(9));
                const R gamma = R::from_fraction(static_cast<long long>(g.below(den + 1)), den);
                const Mat t = gamma * elementary<R>(a, b, n);
                const bool ok = atom_domination_factor(t, a, b) == gamma;
                if (!ok) ce = {{"a", a}, {"b", b}, {"gamma", gamma.str()}};
                return ok;
            });

        // -- inner -----------------------------------------------------
        const auto family_ce = [](const InnerProjection& p) {
            return io::json{{"family", io::to_json(p.family())},
                            {"relation", io::to_json(p.relation())}};
        };
        add("inner", "apply_idempotent",
            [family_ce](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BlockFamily f = gen_block_family(g, n);
                const InnerProjection p(f, gen_relation(g, f));
                const Mat t = gen_matrix<R>(g, n);
                const Mat once = apply(p, t);
                const bool ok = apply(p, once) == once;
                if (!ok) {
                    ce = family_ce(p);
                    ce["matrix"] = io::to_json(t);
                }
                return ok;
            });
        add("inner", "apply_dominated",
            [family_ce](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BlockFamily f = gen_block_family(g, n);
                const InnerProjection p(f, gen_relation(g, f));
                const Mat t = gen_matrix<R>(g, n, true);
                const Mat pt = apply(p, t);
                const bool ok = pt.is_nonneg() && dominated_by(pt, t);
                if (!ok) {
                    ce = family_ce(p);
                    ce["matrix"] = io::to_json(t);
                }
                return ok;
            });
        add("inner", "apply_additive",
            [family_ce](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BlockFamily f = gen_block_family(g, n);
                const InnerProjection p(f, gen_relation(g, f));
                const Mat s = gen_matrix<R>(g, n), t = gen_matrix<R>(g, n);
                const bool ok = apply(p, s + t) == apply(p, s) + apply(p, t);
                if (!ok) {
                    ce = family_ce(p);
                    ce["s"] = io::to_json(s);
                    ce["t"] = io::to_json(t);
                }
                return ok;
            });
        add("inner", "sup_oracle_matches_apply",
            [family_ce](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BlockFamily f = gen_block_family(g, n);
                const InnerProjection p(f, gen_relation(g, f, 6));
                const Mat t = gen_matrix<R>(g, n, true);
                const Vec x = gen_vector<R>(g, n, true);
                const bool ok = sup_over_finite_oracle(p, t, x) == apply(p, t) * x;
                if (!ok) {
                    ce = family_ce(p);
                    ce["matrix"] = io::to_json(t);
                    ce["x"] = io::to_json(x);
                }
                return ok;
            });
        add("inner", "member_iff_fixed_point",
            [family_ce](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BlockFamily f = gen_block_family(g, n);
                const InnerProjection p(f, gen_relation(g, f));
                const Mat t = gen_matrix<R>(g, n);
                const Mat pt = apply(p, t);
                const bool ok = band_member(p, t) == (pt == t) && band_member(p, pt);
                if (!ok) {
                    ce = family_ce(p);
                    ce["matrix"] = io::to_json(t);
                }
                return ok;
            });

        // -- boolean ---------------------------------------------------
        const auto two_relation_ce = [](const BlockFamily& f, const IndexRelation& a,
                                        const IndexRelation& b) {
            return io::json{{"family", io::to_json(f)}, {"gamma", io::to_json(a)},
                            {"delta", io::to_json(b)}};
        };
        add("boolean", "meet_is_composition",
            [two_relation_ce](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BlockFamily f = gen_block_family(g, n);
                const InnerProjection pg(f, gen_relation(g, f)), pd(f, gen_relation(g, f));
                const auto sg = assemble<R>(pg), sd = assemble<R>(pd);
                const bool ok = sg * sd == assemble<R>(boolean_meet(pg, pd)) &&
                                sd * sg == assemble<R>(boolean_meet(pg, pd));
                if (!ok) ce = two_relation_ce(f, pg.relation(), pd.relation());
                return ok;
            });
        add("boolean", "join_inclusion_exclusion",
            [two_relation_ce](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BlockFamily f = gen_block_family(g, n);
                const InnerProjection pg(f, gen_relation(g, f)), pd(f, gen_relation(g, f));
                const auto lhs = assemble<R>(pg) + assemble<R>(pd);
                const auto rhs = assemble<R>(boolean_join(pg, pd)) +
                                 assemble<R>(boolean_meet(pg, pd));
                const bool ok = lhs == rhs;
                if (!ok) ce = two_relation_ce(f, pg.relation(), pd.relation());
                return ok;
            });
        add("boolean", "complement_against_top",
            [family_ce](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BlockFamily f = gen_block_family(g, n);
                const InnerProjection pg(f, gen_relation(g, f));
                const InnerProjection top(f, all_pairs(f));
                const auto stop = assemble<R>(top);
                bool ok = stop - assemble<R>(pg) == assemble<R>(boolean_complement(pg));
                const bool top_is_identity = stop == SuperOperator<R>::identity(n);
                ok = ok && top_is_identity == f.covers_all();
                if (!ok) ce = family_ce(pg);
                return ok;
            });
        add("boolean", "relation_map_injective",
            [two_relation_ce](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BlockFamily f = gen_block_family(g, n);
                const IndexRelation a = gen_relation(g, f), b = gen_relation(g, f);
                const bool equal_rel = a == b;
                const bool equal_op =
                    assemble<R>(InnerProjection(f, a)) == assemble<R>(InnerProjection(f, b));
                const bool ok = equal_rel == equal_op;
                if (!ok) ce = two_relation_ce(f, a, b);
                return ok;
            });

        // -- orthogonality ----------------------------------------------
        add("orthogonality", "criterion_and_witness",
            [two_relation_ce](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const BlockFamily f = gen_block_family(g, n);
                const InnerProjection pg(f, gen_relation(g, f)), pd(f, gen_relation(g, f));
                const bool flag = left_orthogonal(pg, pd);
                const auto witness = orthogonality_witness<R>(pg, pd);
                bool ok = flag == !witness.has_value();
                if (flag) {
                    for (int k = 0; ok && k < 10; ++k) {
                        const Mat t = apply(pg, gen_matrix<R>(g, n));
                        const Mat s = apply(pd, gen_matrix<R>(g, n));
                        ok = (t * s).is_zero();
                    }
                } else if (ok) {
                    ok = band_member(pg, witness->first) && band_member(pd, witness->second) &&
                         !(witness->first * witness->second).is_zero();
                }
                if (!ok) ce = two_relation_ce(f, pg.relation(), pd.relation());
                return ok;
            });

        // -- detect ------------------------------------------------------
        add("detect", "roundtrip",
            [](SplitMix64& g, std::uint64_t trial, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg, 4);
                const AtomRelation gamma = gen_atom_relation(g, n);
                SuperOperator<R> p = assemble<R>(to_inner_projection(gamma, n));
                if (cfg.inject_mutant && trial == 0)
                    p.matrix()(0, 0) = R::from_fraction(1, 2);
                const DetectResult r = detect_band_projection(p);
                const bool ok = r.is_band_projection && r.gamma == gamma;
                if (!ok)
                    ce = {{"gamma", atom_relation_json(gamma)},
                          {"superoperator", io::to_json(p)}};
                return ok;
            });
        add("detect", "permutation_invariance",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg, 4);
                const AtomRelation gamma = gen_atom_relation(g, n);
                const auto sigma = gen_permutation(g, n);
                Mat pm(n);
                for (std::size_t j = 0; j < n; ++j) pm(sigma[j], j) = R(1);
                const auto conj = assemble_mult(pm, pm.transpose()) *
                                  assemble<R>(to_inner_projection(gamma, n)) *
                                  assemble_mult(pm.transpose(), pm);
                AtomRelation expected;
                for (const auto& [a, b] : gamma) expected.insert({sigma[a], sigma[b]});
                const DetectResult r = detect_band_projection(conj);
                const bool ok = r.is_band_projection && r.gamma == expected;
                if (!ok)
                    ce = {{"gamma", atom_relation_json(gamma)},
                          {"superoperator", io::to_json(conj)}};
                return ok;
            });
        add("detect", "accepted_is_contractive",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg, 4);
                const AtomRelation gamma = gen_atom_relation(g, n);
                const auto p = assemble<R>(to_inner_projection(gamma, n));
                for (int k = 0; k < 4; ++k) {
                    const Mat t = gen_matrix<R>(g, n, true);
                    const Mat pt = super_apply(p, t);
                    if (!pt.is_nonneg() || !dominated_by(pt, t)) {
                        ce = {{"gamma", atom_relation_json(gamma)}, {"matrix", io::to_json(t)}};
                        return false;
                    }
                }
                return true;
            });
        add("detect", "rejection_stage_stable",
            [](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = std::max<std::size_t>(2, gen_dim(g, cfg, 4));
                const auto catalog = crafted_non_examples<R>(n);
                const auto& crafted = catalog[g.below(catalog.size())];
                const DetectResult first = detect_band_projection(crafted.op);
                const DetectResult second = detect_band_projection(crafted.op);
                const bool ok = !first.is_band_projection && !second.is_band_projection &&
                                first.rejection_stage == second.rejection_stage &&
                                first.rejection_stage == crafted.expected;
                if (!ok)
                    ce = {{"crafted", crafted.name},
                          {"superoperator", io::to_json(crafted.op)}};
                return ok;
            });

        // -- mult ----------------------------------------------------------
        const auto gen_mult_pair = [](SplitMix64& g, std::size_t n) {
            Mat a(n), b(n);
            switch (g.below(4)) {
                case 0: { // scaled band projection masks
                    const R c = [&] {
                        R x = gen_scalar<R>(g);
                        return x.sign() == 0 ? R(1) : x;
                    }();
                    auto sup_a = gen_support(g, n);
                    auto sup_b = gen_support(g, n);
                    if (sup_a.empty()) sup_a.insert(0);
                    if (sup_b.empty()) sup_b.insert(0);
                    a = c * to_matrix<R>(BandProjection(n, sup_a));
                    b = R(1) / c * to_matrix<R>(BandProjection(n, sup_b));
                    break;
                }
                case 1: { // rank-one positive idempotents
                    const Vec u = gen_vector<R>(g, n, true);
                    Vec v = gen_vector<R>(g, n, true);
                    R pairing(0);
                    for (std::size_t i = 0; i < n; ++i) pairing += u[i] * v[i];
                    if (pairing.sign() == 0) {
                        a = Mat::identity(n);
                    } else {
                        for (std::size_t i = 0; i < n; ++i)
                            for (std::size_t j = 0; j < n; ++j)
                                a(i, j) = u[i] * (v[j] / pairing);
                    }
                    b = gen_nonzero_matrix<R>(g, n, true);
                    break;
                }
                case 2:
                    a = gen_nonzero_matrix<R>(g, n, true);
                    b = gen_nonzero_matrix<R>(g, n, true);
                    break;
                default:
                    a = gen_nonzero_matrix<R>(g, n);
                    b = gen_nonzero_matrix<R>(g, n);
                    break;
            }
            if (a.is_zero()) a = Mat::identity(n);
            if (b.is_zero()) b = Mat::identity(n);
            return std::make_pair(a, b);
        };
        add("mult", "classify_matches_brute_force",
            [gen_mult_pair](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg, 3);
                const auto [a, b] = gen_mult_pair(g, n);
                const bool ok =
                    classify(a, b).band_projection == brute_force_mult_band_check(a, b);
                if (!ok) ce = {{"a", io::to_json(a)}, {"b", io::to_json(b)}};
                return ok;
            });
        add("mult", "scaling_invariance",
            [gen_mult_pair](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const auto [a, b] = gen_mult_pair(g, n);
                R c = gen_scalar<R>(g);
                if (c.sign() == 0) c = R::from_fraction(5, 7);
                const auto base = classify(a, b);
                const auto scaled = classify(c * a, R(1) / c * b);
                bool ok = base.positive == scaled.positive &&
                          base.positive_projection == scaled.positive_projection &&
                          base.band_projection == scaled.band_projection;
                if (base.lambda)
                    ok = ok && scaled.lambda && *scaled.lambda == *base.lambda / c;
                else
                    ok = ok && !scaled.lambda;
                if (!ok)
                    ce = {{"a", io::to_json(a)}, {"b", io::to_json(b)}, {"c", c.str()}};
                return ok;
            });
        add("mult", "positive_projection_idempotent",
            [gen_mult_pair](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const auto [a, b] = gen_mult_pair(g, n);
                const auto cls = classify(a, b);
                if (!cls.positive_projection) return true;
                for (int k = 0; k < 4; ++k) {
                    const Mat t = gen_matrix<R>(g, n);
                    const Mat once = mult_apply(a, b, t);
                    if (!(mult_apply(a, b, once) == once)) {
                        ce = {{"a", io::to_json(a)}, {"b", io::to_json(b)},
                              {"t", io::to_json(t)}};
                        return false;
                    }
                }
                return true;
            });
        add("mult", "positivity_on_generators",
            [gen_mult_pair](SplitMix64& g, std::uint64_t, const FuzzConfig& cfg, io::json& ce) {
                const std::size_t n = gen_dim(g, cfg);
                const auto [a, b] = gen_mult_pair(g, n);
                bool cone_positive = true;
                for (std::size_t i = 0; i < n && cone_positive; ++i)
                    for (std::size_t j = 0; j < n && cone_positive; ++j)
                        cone_positive = mult_apply(a, b, elementary<R>(i, j, n)).is_nonneg();
                const bool ok = classify(a, b).positive == cone_positive;
                if (!ok) ce = {{"a", io::to_json(a)}, {"b", io::to_json(b)}};
                return ok;
            });

        return p;
    }();
    return props;
}

} // namespace detail

/// Runs every registered invariant of the selected modules under a
/// deterministic stream: identical configs give byte-identical reports.
inline RunReport run_fuzz(const FuzzConfig& cfg) {
    if (cfg.max_dim < 1 || cfg.max_dim > 6)
        throw std::invalid_argument("fuzz max_dim must be between 1 and 6");
    for (const std::string& m : cfg.modules)
        if (!all_modules().count(m))
            throw std::invalid_argument("unknown fuzz module \"" + m + "\"");
    const std::set<std::string>& selected =
        cfg.modules.empty() ? all_modules() : cfg.modules;

    RunReport report;
    std::string& text = report.text;
    text += "riesz fuzz report\n";
    text += "version: ";
    text += kVersion;
    text += "\nseed: " + std::to_string(cfg.seed);
    text += "\ntrials: " + std::to_string(cfg.trials);
    text += "\nmax_dim: " + std::to_string(cfg.max_dim);
    text += "\nmodules: ";
    bool first = true;
    for (const std::string& m : selected) {
        if (!first) text += ",";
        text += m;
        first = false;
    }
    text += "\nmutant: ";
    text += cfg.inject_mutant ? "detect_half_entry" : "none";
    text += "\n";

    std::uint64_t prop_index = 0;
    std::size_t passed_props = 0, total_props = 0;
    for (const auto& prop : detail::registry()) {
        const std::uint64_t index = prop_index++;
        if (!selected.count(prop.module)) continue;
        ++total_props;
        PropertyOutcome out;
        out.name = prop.name;
        for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
            SplitMix64 g(derive(cfg.seed, index, trial));
            io::json inputs;
            if (prop.run(g, trial, cfg, inputs)) {
                ++out.passed;
            } else {
                ++out.failed;
                if (!out.first_failure) {
                    out.first_failure = trial;
                    io::json ce{{"property", prop.name}, {"trial", trial}};
                    ce["inputs"] = std::move(inputs);
                    out.counterexample = ce.dump();
                }
            }
        }
        const bool prop_ok = out.failed == 0;
        passed_props += prop_ok ? 1 : 0;
        report.all_passed = report.all_passed && prop_ok;
        text += prop_ok ? "PASS " : "FAIL ";
        text += out.name + " passed=" + std::to_string(out.passed) +
                " failed=" + std::to_string(out.failed);
        if (out.first_failure)
            text += " first_failure_trial=" + std::to_string(*out.first_failure);
        text += "\n";
        if (!out.counterexample.empty())
            text += "counterexample: " + out.counterexample + "\n";
        report.outcomes.push_back(std::move(out));
    }

    text += "summary: " + std::to_string(passed_props) + "/" + std::to_string(total_props) +
            " properties passed\n";
    report.digest = fnv1a64(text);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(report.digest));
    text += "digest: fnv1a64:";
    text += buf;
    text += "\n";
    return report;
}

} // namespace riesz::fuzz
