#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "riesz/dyadic.hpp"
#include "riesz/fuzz.hpp"
#include "riesz/io.hpp"
#include "riesz/multop.hpp"
#include "riesz/superop.hpp"

namespace riesz::cli {

using io::json;

/// RIESZ_SCALAR_MODE from the environment, when set.
inline std::optional<io::ScalarMode> env_scalar_mode() {
    const char* raw = std::getenv("RIESZ_SCALAR_MODE");
    if (!raw) return std::nullopt;
    auto m = io::parse_mode_name(raw);
    if (!m)
        throw ParseError("RIESZ_SCALAR_MODE must be \"exact\" or \"float\"");
    return m;
}

/// One scalar mode per invocation: the environment override when set, else
/// the mode the files declare, else exact. Conflicts are mixed modes.
inline io::ScalarMode effective_mode(std::optional<io::ScalarMode> env,
                                     const std::vector<const json*>& files) {
    std::optional<io::ScalarMode> declared;
    for (const json* f : files) {
        auto m = io::declared_mode(*f);
        if (!m) continue;
        if (declared && *declared != *m)
            throw ParseError("inputs declare different scalar modes (mixed modes)");
        declared = m;
    }
    if (env) {
        if (declared && *declared != *env)
            throw ParseError("RIESZ_SCALAR_MODE conflicts with the scalar mode "
                             "declared by the input (mixed modes)");
        return *env;
    }
    return declared.value_or(io::ScalarMode::exact);
}

namespace detail {

template <ScalarType S>
json project_typed(const json& family, const json& relation, const json& matrix) {
    const Matrix<S> t = io::matrix_from_json<S>(matrix);
    const InnerProjection p(io::family_from_json(family, t.dim()),
                            io::relation_from_json(relation));
    return io::to_json(apply(p, t));
}

template <ScalarType S>
json detect_typed(const json& superop) {
    return io::to_json(detect_band_projection(io::superop_from_json<S>(superop)));
}

template <ScalarType S>
json classify_typed(const json& a, const json& b) {
    return io::to_json(classify(io::matrix_from_json<S>(a), io::matrix_from_json<S>(b)));
}

} // namespace detail

/// `project`: apply the inner projection (family, relation) to a matrix.
inline json cmd_project(const json& family, const json& relation, const json& matrix,
                        std::optional<io::ScalarMode> env = std::nullopt) {
    if (effective_mode(env, {&matrix}) == io::ScalarMode::exact)
        return detail::project_typed<Rational>(family, relation, matrix);
    return detail::project_typed<FloatScalar>(family, relation, matrix);
}

/// `detect`: band projection verdict for a superoperator file.
inline json cmd_detect(const json& superop,
                       std::optional<io::ScalarMode> env = std::nullopt) {
    if (effective_mode(env, {&superop}) == io::ScalarMode::exact)
        return detail::detect_typed<Rational>(superop);
    return detail::detect_typed<FloatScalar>(superop);
}

/// `classify-mult`: classification of L_A R_B from the two symbol files.
inline json cmd_classify_mult(const json& a, const json& b,
                              std::optional<io::ScalarMode> env = std::nullopt) {
    if (effective_mode(env, {&a, &b}) == io::ScalarMode::exact)
        return detail::classify_typed<Rational>(a, b);
    return detail::classify_typed<FloatScalar>(a, b);
}

/// `boolean`: relation-level Boolean algebra over a shared family. The
/// family file carries no dimension, so the smallest lattice containing all
/// listed coordinates hosts it.
inline json cmd_boolean(const json& family_json, const std::string& op, const json& gamma,
                        const json* delta) {
    std::size_t dim = 1;
    if (!family_json.is_object())
        throw ParseError("family file must be an object mapping labels to index arrays");
    for (const auto& [label, arr] : family_json.items()) {
        if (!arr.is_array()) throw ParseError("block \"" + label + "\" must be an array");
        for (const json& c : arr)
            if (c.is_number_integer() && c.get<long long>() >= 0)
                dim = std::max(dim, c.get<std::size_t>() + 1);
    }
    const BlockFamily family = io::family_from_json(family_json, dim);
    const InnerProjection pg(family, io::relation_from_json(gamma));
    if (op == "complement") {
        if (delta) throw ParseError("complement takes a single relation");
        return io::to_json(boolean_complement(pg).relation());
    }
    if (!delta) throw ParseError(op + " needs a second relation (--delta)");
    const InnerProjection pd(family, io::relation_from_json(*delta));
    if (op == "meet") return io::to_json(boolean_meet(pg, pd).relation());
    if (op == "join") return io::to_json(boolean_join(pg, pd).relation());
    throw ParseError("boolean op must be meet, join or complement");
}

/// `dyadic`: the decay table plus the level-2 membership demonstration.
inline std::string cmd_dyadic(unsigned max_level) {
    if (max_level < 1 || max_level > kDyadicMaxLevel)
        throw std::invalid_argument("dyadic --max-level must be in 1.." +
                                    std::to_string(kDyadicMaxLevel));
    std::string out = "level dimension norm(T^I)_l1\n";
    for (unsigned level = 1; level <= max_level; ++level) {
        out += std::to_string(level) + " " +
               std::to_string(std::size_t{1} << level) + " " +
               meet_with_identity_decay<Rational>(level).str() + "\n";
    }
    const auto demo = dyadic_membership_demo<Rational>();
    out += "membership demo at level 2:\n";
    out += std::string("stretching operator in band: ") +
           (demo.stretching_member ? "yes" : "no") + "\n";
    out += std::string("condition-3 violator in band: ") +
           (demo.violator_member ? "yes" : "no") + "\n";
    out += "elementary operators matching support conditions: " +
           std::to_string(demo.elementary_agreements) + "/16\n";
    return out;
}

} // namespace riesz::cli
