#include <catch2/catch_amalgamated.hpp>

#include "riesz/fuzz.hpp"
#include "riesz/superop.hpp"

using riesz::AtomRelation;
using riesz::DetectStage;
using riesz::FloatScalar;
using riesz::Matrix;
using riesz::Rational;
using riesz::SuperOperator;
using riesz::fuzz::SplitMix64;
namespace fz = riesz::fuzz;

using R = Rational;
using Mat = Matrix<R>;

namespace {

AtomRelation full_relation(std::size_t n) {
    AtomRelation r;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) r.insert({a, b});
    return r;
}

} // namespace

TEST_CASE("vectorization convention is column major") {
    Mat t = Mat::from_rows({{R(1), R(2)}, {R(3), R(4)}});
    const auto v = riesz::vec(t);
    CHECK(v == riesz::Vector<R>{R(1), R(3), R(2), R(4)});
    CHECK(riesz::unvec(v, 2) == t);
    CHECK_THROWS_AS(riesz::unvec(v, 3), riesz::DimensionError);
}

TEST_CASE("super apply") {
    SplitMix64 g(73);
    const std::size_t n = 3;
    const Mat t = fz::gen_matrix<R>(g, n);
    CHECK(super_apply(SuperOperator<R>::identity(n), t) == t);
    CHECK(super_apply(SuperOperator<R>(n), t).is_zero());

    const auto gamma = fz::gen_atom_relation(g, n);
    const auto proj = riesz::to_inner_projection(gamma, n);
    CHECK(super_apply(riesz::assemble<R>(proj), t) == apply(proj, t));
}

TEST_CASE("positivity over the cone generators") {
    SplitMix64 g(79);
    const std::size_t n = 2;
    CHECK(riesz::is_positive_super(
        riesz::assemble<R>(riesz::to_inner_projection(fz::gen_atom_relation(g, n), n))));
    CHECK_FALSE(riesz::is_positive_super(R(-1) * SuperOperator<R>::identity(n)));

    // nonnegative combinations of vec(E)vec(E)^t stay positive
    SuperOperator<R> combo(n);
    for (std::size_t slot = 0; slot < n * n; ++slot)
        combo.matrix()(slot, slot) = fz::gen_scalar<R>(g, true);
    CHECK(riesz::is_positive_super(combo));
}

TEST_CASE("detector accepts exactly the entry masks") {
    SECTION("all sixteen masks at n = 2") {
        const std::size_t n = 2;
        for (std::size_t bits = 0; bits < 16; ++bits) {
            AtomRelation gamma;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (bits & (std::size_t{1} << (a * n + b))) gamma.insert({a, b});
            const auto p = riesz::assemble<R>(riesz::to_inner_projection(gamma, n));
            const auto r = riesz::detect_band_projection(p);
            REQUIRE(r.is_band_projection);
            REQUIRE(r.gamma == gamma);
        }
    }
    SECTION("random round trips at n = 3, 4") {
        SplitMix64 g(83);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t n = 3 + g.below(2);
            const auto gamma = fz::gen_atom_relation(g, n);
            const auto r = riesz::detect_band_projection(
                riesz::assemble<R>(riesz::to_inner_projection(gamma, n)));
            REQUIRE(r.is_band_projection);
            REQUIRE(r.gamma == gamma);
        }
    }
}

TEST_CASE("detector rejections carry the first failing stage") {
    const std::size_t n = 2;
    SECTION("half identity is not idempotent") {
        const auto r = riesz::detect_band_projection(
            R::from_fraction(1, 2) * SuperOperator<R>::identity(n));
        REQUIRE_FALSE(r.is_band_projection);
        CHECK(r.rejection_stage == DetectStage::idempotence);
    }
    SECTION("transposition is an involution, not a projection") {
        SuperOperator<R> p(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                p.matrix()(riesz::vec_slot(j, i, n), riesz::vec_slot(i, j, n)) = R(1);
        CHECK(riesz::is_positive_super(p));
        const auto r = riesz::detect_band_projection(p);
        REQUIRE_FALSE(r.is_band_projection);
        CHECK(r.rejection_stage == DetectStage::idempotence);
    }
    SECTION("the crafted catalog fails where expected") {
        for (std::size_t dim = 2; dim <= 3; ++dim)
            for (const auto& crafted : fz::crafted_non_examples<R>(dim)) {
                INFO(crafted.name << " at n=" << dim);
                const auto r = riesz::detect_band_projection(crafted.op);
                REQUIRE_FALSE(r.is_band_projection);
                REQUIRE(r.rejection_stage == crafted.expected);
            }
    }
    SECTION("catalog is large enough for the acceptance sweep") {
        CHECK(fz::crafted_non_examples<R>(2).size() >= 20);
    }
}

TEST_CASE("accepted projections are contractive on the positive cone") {
    SplitMix64 g(89);
    const std::size_t n = 3;
    const auto gamma = fz::gen_atom_relation(g, n);
    const auto p = riesz::assemble<R>(riesz::to_inner_projection(gamma, n));
    for (int trial = 0; trial < 100; ++trial) {
        const Mat t = fz::gen_matrix<R>(g, n, true);
        const Mat pt = super_apply(p, t);
        REQUIRE(pt.is_nonneg());
        REQUIRE(dominated_by(pt, t));
    }
}

TEST_CASE("acceptance is stable under relabelling the atoms") {
    SplitMix64 g(97);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + g.below(3);
        const auto gamma = fz::gen_atom_relation(g, n);
        const auto sigma = fz::gen_permutation(g, n);
        Mat pm(n);
        for (std::size_t j = 0; j < n; ++j) pm(sigma[j], j) = R(1);
        const auto conj = riesz::assemble_mult(pm, pm.transpose()) *
                          riesz::assemble<R>(riesz::to_inner_projection(gamma, n)) *
                          riesz::assemble_mult(pm.transpose(), pm);
        AtomRelation expected;
        for (const auto& [a, b] : gamma) expected.insert({sigma[a], sigma[b]});
        const auto r = riesz::detect_band_projection(conj);
        REQUIRE(r.is_band_projection);
        REQUIRE(r.gamma == expected);
    }
}

TEST_CASE("float mode snaps near-masks and rejects the rest") {
    using F = FloatScalar;
    const std::size_t n = 2;
    SuperOperator<F> p(n);
    const double wobble = 1e-12; // far below the 1e-9 tolerance
    p.matrix()(0, 0) = F(1.0 + wobble);
    p.matrix()(3, 3) = F(1.0 - wobble);
    const auto r = riesz::detect_band_projection(p);
    REQUIRE(r.is_band_projection);
    CHECK(r.gamma == AtomRelation{{0, 0}, {1, 1}});

    SuperOperator<F> bad(n);
    bad.matrix()(0, 0) = F(0.5);
    const auto rb = riesz::detect_band_projection(bad);
    REQUIRE_FALSE(rb.is_band_projection);
    CHECK(rb.rejection_stage == DetectStage::idempotence);
}

TEST_CASE("full relation reconstructs the identity on covered space") {
    const std::size_t n = 2;
    const auto p = riesz::assemble<R>(riesz::to_inner_projection(full_relation(n), n));
    CHECK(p == SuperOperator<R>::identity(n));
}
