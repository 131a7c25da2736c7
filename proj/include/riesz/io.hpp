#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "riesz/blocks.hpp"
#include "riesz/errors.hpp"
#include "riesz/matrix.hpp"
#include "riesz/multop.hpp"
#include "riesz/superop.hpp"
#include "riesz/vector.hpp"

namespace riesz::io {

// Insertion-ordered JSON keeps every serialization byte-stable, which the
// fuzz report digest relies on.
using json = nlohmann::ordered_json;

enum class ScalarMode { exact, floating };

inline const char* mode_name(ScalarMode m) {
    return m == ScalarMode::exact ? "exact" : "float";
}

inline std::optional<ScalarMode> parse_mode_name(std::string_view s) {
    if (s == "exact") return ScalarMode::exact;
    if (s == "float") return ScalarMode::floating;
    return std::nullopt;
}

template <ScalarType S>
constexpr ScalarMode mode_of() {
    return is_exact_scalar_v<S> ? ScalarMode::exact : ScalarMode::floating;
}

/// The "scalar_mode" field of a file, when declared.
inline std::optional<ScalarMode> declared_mode(const json& j) {
    if (!j.is_object() || !j.contains("scalar_mode")) return std::nullopt;
    const json& f = j.at("scalar_mode");
    if (!f.is_string())
        throw ParseError("scalar_mode must be a string");
    auto m = parse_mode_name(f.get<std::string>());
    if (!m) throw ParseError("scalar_mode must be \"exact\" or \"float\"");
    return m;
}

template <ScalarType S>
json scalar_to_json(const S& s) {
    if constexpr (is_exact_scalar_v<S>)
        return json(s.str());
    else
        return json(s.to_double());
}

/// Exact mode takes "p/q" strings and whole JSON numbers; float mode takes
/// JSON numbers. Anything else is a mixed-mode file and is rejected.
template <ScalarType S>
S scalar_from_json(const json& j) {
    if constexpr (is_exact_scalar_v<S>) {
        if (j.is_string()) return Rational::parse(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_number())
            throw ParseError("decimal entry in an exact-mode input (mixed modes)");
        throw ParseError("scalar entry must be a number or a \"p/q\" string");
    } else {
        if (j.is_number()) return FloatScalar(j.get<double>());
        if (j.is_string())
            throw ParseError("string entry in a float-mode input (mixed modes)");
        throw ParseError("scalar entry must be a number");
    }
}

namespace detail {

inline std::size_t read_index(const json& j, const char* what) {
    if (!j.is_number_integer() ||
        (!j.is_number_unsigned() && j.get<long long>() < 0))
        throw ParseError(std::string("expected a nonnegative integer ") + what);
    return j.get<std::size_t>();
}

inline std::size_t read_dim(const json& j) {
    if (!j.is_object() || !j.contains("n"))
        throw ParseError("expected an object with an integer field \"n\"");
    const std::size_t n = read_index(j.at("n"), "field \"n\"");
    if (n == 0) throw DimensionError("field \"n\" must be >= 1");
    return n;
}

template <ScalarType S>
void check_declared_mode(const json& j) {
    if (auto m = declared_mode(j); m && *m != mode_of<S>())
        throw ParseError(std::string("file declares scalar_mode ") + mode_name(*m) +
                         " but is being read as " + mode_name(mode_of<S>()) +
                         " (mixed modes)");
}

} // namespace detail

template <ScalarType S>
json to_json(const Vector<S>& v) {
    json coords = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) coords.push_back(scalar_to_json(v[i]));
    return json{{"scalar_mode", mode_name(mode_of<S>())}, {"n", v.dim()},
                {"coords", std::move(coords)}};
}

template <ScalarType S>
Vector<S> vector_from_json(const json& j) {
    detail::check_declared_mode<S>(j);
    const std::size_t n = detail::read_dim(j);
    if (!j.contains("coords") || !j.at("coords").is_array())
        throw ParseError("vector file needs a \"coords\" array");
    const json& coords = j.at("coords");
    if (coords.size() != n)
        throw DimensionError("\"coords\" length does not match \"n\"");
    Vector<S> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = scalar_from_json<S>(coords[i]);
    return v;
}

template <ScalarType S>
json to_json(const Matrix<S>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"scalar_mode", mode_name(mode_of<S>())}, {"n", m.dim()},
                {"entries", std::move(rows)}};
}

namespace detail {

template <ScalarType S>
Matrix<S> entries_to_matrix(const json& entries, std::size_t n) {
    if (!entries.is_array() || entries.size() != n)
        throw DimensionError("\"entries\" must hold n rows");
    Matrix<S> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = entries[i];
        if (!row.is_array() || row.size() != n)
            throw DimensionError("matrix row " + std::to_string(i) +
                                 " does not have length n");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = scalar_from_json<S>(row[j]);
    }
    return m;
}

} // namespace detail

template <ScalarType S>
Matrix<S> matrix_from_json(const json& j) {
    detail::check_declared_mode<S>(j);
    const std::size_t n = detail::read_dim(j);
    if (!j.contains("entries"))
        throw ParseError("matrix file needs an \"entries\" array");
    return detail::entries_to_matrix<S>(j.at("entries"), n);
}

template <ScalarType S>
json to_json(const SuperOperator<S>& p) {
    const std::size_t nn = p.base_dim() * p.base_dim();
    json rows = json::array();
    for (std::size_t i = 0; i < nn; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < nn; ++j)
            row.push_back(scalar_to_json(p.matrix()(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"scalar_mode", mode_name(mode_of<S>())}, {"n", p.base_dim()},
                {"vec", "col-major"}, {"entries", std::move(rows)}};
}

template <ScalarType S>
SuperOperator<S> superop_from_json(const json& j) {
    detail::check_declared_mode<S>(j);
    const std::size_t n = detail::read_dim(j);
    if (j.contains("vec")) {
        const json& v = j.at("vec");
        if (!v.is_string() || v.get<std::string>() != "col-major")
            throw ParseError("superoperator \"vec\" convention must be \"col-major\"");
    }
    if (!j.contains("entries"))
        throw ParseError("superoperator file needs an \"entries\" array");
    return SuperOperator<S>(n, detail::entries_to_matrix<S>(j.at("entries"), n * n));
}

inline json to_json(const BlockFamily& f) {
    json out = json::object();
    for (const auto& [label, coords] : f.blocks()) {
        json arr = json::array();
        for (std::size_t c : coords) arr.push_back(c);
        out[label] = std::move(arr);
    }
    return out;
}

/// Family files are bare label -> coordinate-array objects; the dimension
/// comes from whatever operator the family is paired with.
inline BlockFamily family_from_json(const json& j, std::size_t dim) {
    if (!j.is_object())
        throw ParseError("family file must be an object mapping labels to index arrays");
    BlockFamily::BlockMap blocks;
    for (const auto& [label, arr] : j.items()) {
        if (!arr.is_array())
            throw ParseError("block \"" + label + "\" must be an array of indices");
        std::set<std::size_t> coords;
        for (const json& c : arr)
            coords.insert(detail::read_index(c, ("entry of block \"" + label + "\"").c_str()));
        blocks[label] = std::move(coords);
    }
    return BlockFamily(dim, std::move(blocks));
}

inline json to_json(const IndexRelation& r) {
    json out = json::array();
    for (const auto& [a, b] : r) out.push_back(json::array({a, b}));
    return out;
}

inline IndexRelation relation_from_json(const json& j) {
    if (!j.is_array())
        throw ParseError("relation file must be an array of [label, label] pairs");
    IndexRelation r;
    for (const json& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            throw ParseError("relation entries must be [label, label] pairs of strings");
        r.insert(p[0].get<std::string>(), p[1].get<std::string>());
    }
    return r;
}

inline json to_json(const DetectResult& r) {
    json out;
    out["is_band_projection"] = r.is_band_projection;
    if (r.is_band_projection) {
        json gamma = json::array();
        for (const auto& [a, b] : r.gamma) gamma.push_back(json::array({a, b}));
        out["gamma"] = std::move(gamma);
    } else {
        out["rejection_stage"] = stage_name(*r.rejection_stage);
    }
    return out;
}

template <ScalarType S>
json to_json(const MultClassification<S>& c) {
    json out;
    out["positive"] = c.positive;
    out["sign_case"] = sign_case_name(c.sign_case);
    out["positive_projection"] = c.positive_projection;
    out["band_projection"] = c.band_projection;
    out["lambda"] = c.lambda ? scalar_to_json(*c.lambda) : json(nullptr);
    return out;
}

} // namespace riesz::io
