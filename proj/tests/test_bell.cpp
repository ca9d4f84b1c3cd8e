#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gsbell/bell.hpp"
#include "gsbell/dense.hpp"
#include "oracle.hpp"

namespace gsbell {
namespace {

PauliString P(std::string_view s) { return PauliString::parse(s); }

PauliSum sum_of(std::initializer_list<std::string_view> words) {
    PauliSum s(PauliString::parse(*words.begin()).num_qubits());
    for (auto w : words) s.add(1.0, P(w));
    return s;
}

TEST(Expression, ParseRenderAndMerge) {
    const auto e = TwoSettingExpression::parse("AA,AB,BA,-BB");
    EXPECT_EQ(e.parties(), 2);
    EXPECT_EQ(e.str(), "+AA +BA +AB -BB");
    EXPECT_EQ(TwoSettingExpression::parse("AB -AB").size(), 0u);
    EXPECT_THROW(TwoSettingExpression::parse("AA,ABA"), ParseError);
    EXPECT_THROW(TwoSettingExpression::parse("AC"), ParseError);
    EXPECT_THROW(TwoSettingExpression::parse(""), ParseError);
}

TEST(Expression, TensorProductShiftsParties) {
    const auto a = TwoSettingExpression::parse("A,B");
    const auto b = TwoSettingExpression::parse("B");
    EXPECT_EQ((a * b).str(), "+AB +BB");
}

TEST(Patterns, MerminTerms) {
    EXPECT_EQ(mermin_pattern(3).str(), "+BAA +ABA +AAB -BBB");
    EXPECT_EQ(mermin_pattern(4).size(), 8u);
    EXPECT_EQ(mermin_pattern(5).size(), 16u);
}

TEST(Patterns, TwoPartyArdehaliIsChsh) {
    EXPECT_EQ(ardehali_pattern(2).str(), TwoSettingExpression::parse("-AA,BA,AB,BB").str());
    EXPECT_THROW(ardehali_pattern(1), PreconditionError);
}

TEST(Patterns, Bounds) {
    const double mermin[] = {2, 2, 4, 4, 8};
    const double ardehali[] = {2, 4, 4, 8, 8};
    for (int m = 2; m <= 6; ++m) {
        EXPECT_EQ(mermin_bound(m), mermin[m - 2]) << m;
        EXPECT_EQ(ardehali_bound(m), ardehali[m - 2]) << m;
    }
}

TEST(Theorem1, ClusterOfThree) {
    const Graph g = family(Family::LC, 3);
    const auto b = theorem1_operator(g, 1, VertexSet{0, 2});
    ASSERT_TRUE(b.pauli_form);
    EXPECT_EQ(b.pauli_form->str(), "+ZXZ +YYZ +ZYY -YXY");
    EXPECT_EQ(b.classical_bound, 2.0);
    EXPECT_EQ(b.label, "B(2,{1,3})");
    EXPECT_EQ(b.layout.size(), 3u);
    EXPECT_EQ(b.observables[0][0].str(), "+IYI");
    EXPECT_EQ(b.observables[0][1].str(), "+IXI");
    EXPECT_EQ(b.observables[1][0].str(), "+ZII");
    EXPECT_EQ(b.observables[1][1].str(), "+YII");
    EXPECT_EQ(expand(b.expression, b.observables, 3), *b.pauli_form);
}

TEST(Theorem1, Preconditions) {
    const Graph lc4 = family(Family::LC, 4);
    try {
        theorem1_operator(lc4, 1, VertexSet{3});
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("is not contained in N(2)"), std::string::npos);
    }
    const Graph fc3 = family(Family::FC, 3);
    try {
        theorem1_operator(fc3, 0, VertexSet{1, 2});
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("connected by an edge"), std::string::npos);
    }
    EXPECT_THROW(theorem1_operator(lc4, 1, VertexSet{}), PreconditionError);
}

TEST(Theorem1, StarOfFive) {
    const Graph g = family(Family::ST, 5);
    const auto b = theorem1_operator(g, 0, g.neighbors(0));
    EXPECT_EQ(b.pauli_form->size(), 16u);
    EXPECT_EQ(b.classical_bound, 4.0);
    EXPECT_EQ(b.layout.size(), 5u);
}

TEST(Triangle, FullyConnectedThree) {
    const Graph g = family(Family::FC, 3);
    const auto b = fc3_operator(g, {0, 1, 2});
    EXPECT_EQ(*b.pauli_form, sum_of({"XZZ", "ZXZ", "ZZX", "-XXX"}));
    EXPECT_EQ(b.classical_bound, 2.0);
    EXPECT_EQ(expand(b.expression, b.observables, 3), *b.pauli_form);
    EXPECT_THROW(fc3_operator(family(Family::LC, 3), {0, 1, 2}), PreconditionError);
}

TEST(Composite, ConflictNamesTheQubit) {
    const Graph g = family(Family::LC, 5);
    const std::vector<BellInequality> parts = {theorem1_operator(g, 1, VertexSet{0, 2}), theorem1_operator(g, 3, VertexSet{2, 4})};
    const auto conflict = composition_conflict(parts);
    ASSERT_TRUE(conflict);
    EXPECT_NE(conflict->find("qubit 3"), std::string::npos) << *conflict;
    EXPECT_THROW(composite(parts), PreconditionError);
}

TEST(Composite, ClusterOfEightHasTwoBlocks) {
    const auto b = lc_composite(8);
    EXPECT_EQ(b.classical_bound, 4.0);
    EXPECT_EQ(b.pauli_form->size(), 16u);
    EXPECT_EQ(b.expression.parties(), 6);
    EXPECT_EQ(b.label, "B(2,{1,3})*B(6,{5,7})");
    EXPECT_EQ(graph_state_expectation(family(Family::LC, 8), *b.pauli_form), 16.0);
    EXPECT_EQ(expand(b.expression, b.observables, 8), *b.pauli_form);
}

TEST(Composite, SinglePartIsUnchanged) {
    const Graph g = family(Family::LC, 3);
    const std::vector<BellInequality> one = {theorem1_operator(g, 1, VertexSet{0, 2})};
    const auto b = composite(one);
    EXPECT_EQ(*b.pauli_form, *one[0].pauli_form);
    EXPECT_EQ(b.label, one[0].label);
}

TEST(Composite, FamilyConstructionsMatchViolationTable) {
    const int lc[] = {2, 2, 2, 2, 4, 4, 4, 4, 8, 8};
    const int rc[] = {2, 2, 2, 2, 2, 4, 4, 4, 4, 8};
    const int st[] = {2, 2, 4, 4, 8, 8, 16, 16, 32, 32};
    for (int n = 3; n <= 12; ++n) {
        for (auto [f, expected] : {std::pair{Family::LC, lc}, std::pair{Family::RC, rc}, std::pair{Family::ST, st}}) {
            const auto b = family_composite(f, n);
            const double q = graph_state_expectation(family(f, n), *b.pauli_form);
            EXPECT_EQ(q / b.classical_bound, expected[n - 3]) << family_name(f) << n;
        }
    }
}

TEST(Blocks, GreedySelection) {
    const auto lc12 = select_blocks(family(Family::LC, 12));
    ASSERT_EQ(lc12.size(), 3u);
    EXPECT_EQ(lc12[0], (Block{1, VertexSet{0, 2}}));
    EXPECT_EQ(lc12[1], (Block{5, VertexSet{4, 6}}));
    EXPECT_EQ(lc12[2], (Block{9, VertexSet{8, 10}}));
    const auto g33 = select_blocks(grid(3, 3));
    ASSERT_EQ(g33.size(), 2u);
    EXPECT_EQ(g33[0], (Block{0, VertexSet{1, 3}}));
    EXPECT_EQ(g33[1], (Block{8, VertexSet{5, 7}}));
    EXPECT_NO_THROW(block_composite(grid(3, 3)));
    EXPECT_THROW(block_composite(family(Family::FC, 4)), PreconditionError);
}

TEST(Ardehali, StarOfFour) {
    const Graph g = family(Family::ST, 4);
    const auto a = ardehali_expression(g, 0, g.neighbors(0));
    const auto b = theorem1_operator(g, 0, g.neighbors(0));
    EXPECT_EQ(a.classical_bound, 4.0);
    EXPECT_TRUE(a.pauli_form->approx_equal(b.pauli_form->scaled(std::numbers::sqrt2), 1e-12));
    EXPECT_NEAR(graph_state_expectation(g, *a.pauli_form), 8 * std::numbers::sqrt2, 1e-12);
    EXPECT_FALSE(a.has_pauli_observables());
    EXPECT_THROW(ardehali_expression(g, 0, VertexSet{1}), PreconditionError);
}

TEST(Conditioning, ClusterBlockAfterZMeasurements) {
    const Graph g = family(Family::LC, 5);
    const auto b = theorem1_operator(g, 2, VertexSet{1, 3});
    const auto psi = graph_state_vector(g);
    for (int o0 : {1, -1})
        for (int o4 : {1, -1}) {
            const auto c = condition_on_z(b, {{0, o0}, {4, o4}});
            EXPECT_EQ(c.pauli_form->support(), 0b01110u);
            // Post-measurement state by explicit projection.
            Eigen::VectorXcd post = psi.amplitudes;
            for (Eigen::Index k = 0; k < post.size(); ++k) {
                const int z0 = (k & 1) ? -1 : 1, z4 = ((k >> 4) & 1) ? -1 : 1;
                if (z0 != o0 || z4 != o4) post[k] = 0;
            }
            post /= post.norm();
            EXPECT_NEAR(oracle::expectation(post, *c.pauli_form), 4.0, 1e-12);
            EXPECT_EQ(expand(c.expression, c.observables, 5), *c.pauli_form);
        }
    const auto plus = condition_on_z(b, {{4, 1}});
    EXPECT_EQ(plus.label, "B(3,{2,4})|Z5=+1");
    EXPECT_THROW(condition_on_z(b, {{2, 1}}), PreconditionError);
    EXPECT_THROW(condition_on_z(b, {{0, 0}}), PreconditionError);
}

TEST(Conditioning, EmptiedPartyIsRejected) {
    const Graph g = family(Family::LC, 3);
    const auto b = theorem1_operator(g, 1, VertexSet{0, 2});
    EXPECT_THROW(condition_on_z(b, {{0, 1}}), PreconditionError);
}

TEST(Decompose, RecoversTheorem1Structure) {
    const Graph g = family(Family::LC, 3);
    const auto b = theorem1_operator(g, 1, VertexSet{0, 2});
    const auto [e, obs] = decompose(*b.pauli_form, b.layout);
    EXPECT_EQ(e.parties(), 3);
    EXPECT_EQ(expand(e, obs, 3), *b.pauli_form);
    const PartyLayout whole{{VertexSet{0, 1, 2}}};
    EXPECT_THROW(decompose(*b.pauli_form, whole), PreconditionError);
}

TEST(Lc4, BaseAndRelabelledMembers) {
    const auto set = lc4_set();
    ASSERT_EQ(set.size(), 8u);
    EXPECT_EQ(*set[0].pauli_form, sum_of({"XIXZ", "ZYYZ", "XIYY", "-ZYXY"}));
    EXPECT_EQ(*set[3].pauli_form, sum_of({"IZXZ", "-YXYZ", "IZYY", "YXXY"}));
    EXPECT_EQ(*set[4].pauli_form, sum_of({"ZXIX", "ZYYZ", "YYIX", "-YXYZ"}));
    const Graph g = family(Family::LC, 4);
    for (const auto& b : set) {
        EXPECT_EQ(b.classical_bound, 2.0);
        EXPECT_EQ(b.expression.parties(), 3);
        EXPECT_EQ(graph_state_expectation(g, *b.pauli_form), 4.0) << b.label;
        EXPECT_EQ(expand(b.expression, b.observables, 4), *b.pauli_form) << b.label;
    }
}

TEST(Nontrivial, PicksCaseByNeighbourhood) {
    EXPECT_EQ(nontrivial_inequality(family(Family::LC, 3)).label, "B(2,{1,3})");
    EXPECT_EQ(nontrivial_inequality(family(Family::FC, 3)).label, "FC3{1,2,3}");
    EXPECT_THROW(nontrivial_inequality(family(Family::LC, 2)), PreconditionError);
}

TEST(BellProperty, ExpansionIdentityOnRandomGraphs) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const Graph g = oracle::random_connected_graph(n, 0.4, rng);
        const auto pick = oracle::random_theorem1_pick(g, rng);
        if (pick.center < 0) continue;
        const auto b = theorem1_operator(g, pick.center, pick.leaves);
        ASSERT_EQ(expand(b.expression, b.observables, n), *b.pauli_form) << b.label;
        ASSERT_EQ(b.pauli_form->size(), std::size_t{1} << pick.leaves.size());
        ASSERT_EQ(graph_state_expectation(g, *b.pauli_form), std::ldexp(1.0, pick.leaves.size()));
        VertexSet seen;
        bool disjoint = true;
        for (const auto& party : b.observables) {
            const VertexSet s = detail::observable_support(party);
            disjoint = disjoint && (seen & s).empty();
            seen = seen | s;
        }
        if (!disjoint) continue;  // shared Z qubits: no per-party restriction exists
        const auto [e, obs] = decompose(*b.pauli_form, b.layout);
        ASSERT_EQ(expand(e, obs, n), *b.pauli_form);
    }
}

TEST(BellProperty, ArdehaliIsScaledTheorem1) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const Graph g = oracle::random_connected_graph(n, 0.35, rng);
        const auto pick = oracle::random_theorem1_pick(g, rng, 2);
        if (pick.center < 0) continue;
        const auto a = ardehali_expression(g, pick.center, pick.leaves);
        const auto b = theorem1_operator(g, pick.center, pick.leaves);
        ASSERT_TRUE(a.pauli_form->approx_equal(b.pauli_form->scaled(std::numbers::sqrt2), 1e-12)) << a.label;
    }
}

TEST(BellProperty, CompositeMultipliesTermsBoundsAndValues) {
    for (int n = 3; n <= 16; ++n) {
        const auto b = lc_composite(n);
        const int blocks = (n - 2 + 3) / 4;
        ASSERT_EQ(b.pauli_form->size(), std::size_t{1} << (2 * blocks)) << n;
        ASSERT_EQ(b.classical_bound, std::ldexp(1.0, blocks)) << n;
        ASSERT_EQ(graph_state_expectation(family(Family::LC, n), *b.pauli_form), std::ldexp(1.0, 2 * blocks)) << n;
    }
}

}  // namespace
}  // namespace gsbell
