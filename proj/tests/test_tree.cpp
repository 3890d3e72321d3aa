#include <cmath>
#include <cstring>
#include <random>

#include <doctest.h>

#include "fractree/error.hpp"
#include "fractree/tree.hpp"

using namespace fractree;

namespace {

Schedule binary_schedule(double lambda = 1.0) {
    return {{BranchEvent{std::nullopt, {{lambda, +1, 1.0}, {lambda, -1, 1.0}}}}};
}

GeneratorField fig1_field() {
    return {AnalyticProfile::exponential(0.88), AnalyticProfile::constant(M_PI / 10.0),
            PhaseMode::global};
}

}  // namespace

TEST_CASE("spawn_children copies the parent state exactly") {
    GeneratorState state{1.0, 2.0, M_PI / 4.0, 1.0};
    GeneratorField field{AnalyticProfile::constant(1.0), AnalyticProfile::constant(0.5),
                         PhaseMode::local};
    BranchEvent event{std::nullopt, {{1.0, +1, 1.0}, {1.0, -1, 1.0}}};

    auto children = spawn_children(state, field, event);
    REQUIRE(children.size() == 2);
    for (const auto& [init, child_field] : children) {
        CHECK(init == state);  // bit-for-bit
        CHECK(child_field.phase_mode == field.phase_mode);
    }
    // kappa signs +/- via the symbolic wrap
    CHECK(children[0].second.kappa.eval(0.3) == 0.5);
    CHECK(children[1].second.kappa.eval(0.3) == -0.5);
}

TEST_CASE("identity rule inherits a field that evaluates identically") {
    GeneratorField field{AnalyticProfile::sinusoid(1.0, 0.5, 2.0),
                         AnalyticProfile::constant(0.7), PhaseMode::local};
    auto children = spawn_children({}, field, {std::nullopt, {{1.0, +1, 1.0}}});
    REQUIRE(children.size() == 1);
    for (int i = 0; i <= 100; ++i) {
        double s = 0.05 * i - 2.0;
        CHECK(children[0].second.rho.eval(s) == field.rho.eval(s));
        CHECK(children[0].second.kappa.eval(s) == field.kappa.eval(s));
    }
}

TEST_CASE("lambda scaling is exact on sampled values") {
    GeneratorField field{AnalyticProfile::constant(2.0), AnalyticProfile::constant(0.0),
                         PhaseMode::local};
    auto children = spawn_children({}, field, {std::nullopt, {{0.5, +1, 1.0}}});
    for (int i = 0; i < 100; ++i) {
        CHECK(children[0].second.rho.eval(0.1 * i) == 1.0);
    }
}

TEST_CASE("rule validation") {
    GeneratorField field;
    CHECK_THROWS_AS(spawn_children({}, field, {std::nullopt, {{0.0, +1, 1.0}}}), Error);
    CHECK_THROWS_AS(spawn_children({}, field, {std::nullopt, {{1.5, +1, 1.0}}}), Error);
    CHECK_THROWS_AS(spawn_children({}, field, {std::nullopt, {{0.5, 0, 1.0}}}), Error);
    CHECK_THROWS_AS(spawn_children({}, field, {std::nullopt, {}}), Error);
}

TEST_CASE("depth 0 grows a single branch") {
    auto tree = grow_tree(fig1_field(), {0, 0, M_PI / 2, 0}, 1.0, binary_schedule(), 0);
    CHECK(tree.branches.size() == 1);
    CHECK_FALSE(tree.branches[0].parent.has_value());
}

TEST_CASE("binary depth 10 yields 2047 branches") {
    auto tree = grow_tree(fig1_field(), {0, 0, M_PI / 2, 0}, 1.0, binary_schedule(), 10);
    CHECK(tree.branches.size() == 2047);
}

TEST_CASE("branch count law for uniform multiplicities") {
    for (int m = 2; m <= 3; ++m) {
        std::vector<InheritanceRule> rules;
        for (int i = 0; i < m; ++i) rules.push_back({1.0, i % 2 == 0 ? +1 : -1, 1.0});
        Schedule schedule{{BranchEvent{std::nullopt, rules}}};
        for (int depth = 0; depth <= 5; ++depth) {
            auto tree = grow_tree({AnalyticProfile::constant(1.0),
                                   AnalyticProfile::constant(0.1), PhaseMode::local},
                                  {}, 1.0, schedule, depth);
            size_t expected = 0, level = 1;
            for (int k = 0; k <= depth; ++k) {
                expected += level;
                level *= static_cast<size_t>(m);
            }
            CHECK(tree.branches.size() == expected);
        }
    }
}

TEST_CASE("fig-1 configuration grows 511 branches at depth 8") {
    auto tree = grow_tree(fig1_field(), {0, 0, M_PI / 2, 0}, 1.0, binary_schedule(), 8);
    CHECK(tree.branches.size() == 511);
    auto report = check_branch_continuity(tree);
    CHECK(report.entries.size() == 510);
    CHECK(report.all_exact());
}

TEST_CASE("no-offset gaps are exactly zero across random configurations") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ul(0.5, 0.95), uw(0.0, M_PI / 4.0);
    std::uniform_int_distribution<int> ud(1, 5);
    for (int i = 0; i < 100; ++i) {
        GeneratorField field{AnalyticProfile::constant(1.0),
                             AnalyticProfile::constant(uw(rng)), PhaseMode::local};
        Schedule schedule = binary_schedule(ul(rng));
        auto tree = grow_tree(field, {0, 0, M_PI / 2, 0}, 1.0, schedule, ud(rng));
        CHECK(check_branch_continuity(tree).all_exact());
    }
}

TEST_CASE("planted continuity violation is flagged on exactly that branch") {
    auto tree = grow_tree(fig1_field(), {0, 0, M_PI / 2, 0}, 1.0, binary_schedule(), 3);
    int victim = 5;
    tree.branches[victim].trajectory.samples.front().state.x += 1e-3;
    auto report = check_branch_continuity(tree);
    int flagged = 0;
    for (const auto& e : report.entries) {
        if (e.position_gap != 0.0) {
            ++flagged;
            CHECK(e.branch_id == victim);
            CHECK(e.position_gap == doctest::Approx(1e-3).epsilon(1e-12));
        }
    }
    CHECK(flagged == 1);
}

TEST_CASE("tau is non-decreasing and increments by the span per depth") {
    auto tree = grow_tree(fig1_field(), {0, 0, M_PI / 2, 0}, 1.0, binary_schedule(), 5);
    for (const auto& b : tree.branches) {
        CHECK(b.init.tau == doctest::Approx(static_cast<double>(b.depth)).epsilon(1e-15));
        CHECK(b.trajectory.end_state().tau ==
              doctest::Approx(static_cast<double>(b.depth) + 1.0).epsilon(1e-15));
        if (b.parent) {
            CHECK(b.init.tau >= tree.branches[*b.parent].init.tau);
        }
    }
}

TEST_CASE("branch budget is enforced") {
    GrowOptions opts;
    opts.branch_cap = 16;
    CHECK_THROWS_WITH_AS(
        grow_tree(fig1_field(), {0, 0, M_PI / 2, 0}, 1.0, binary_schedule(), 10, opts),
        doctest::Contains("budget"), Error);
}

TEST_CASE("growth is deterministic") {
    auto a = grow_tree(fig1_field(), {0, 0, M_PI / 2, 0}, 1.0, binary_schedule(), 6);
    auto b = grow_tree(fig1_field(), {0, 0, M_PI / 2, 0}, 1.0, binary_schedule(), 6);
    REQUIRE(a.branches.size() == b.branches.size());
    for (size_t i = 0; i < a.branches.size(); ++i) {
        CHECK(a.branches[i].init == b.branches[i].init);
        CHECK(a.branches[i].trajectory.end_state() == b.branches[i].trajectory.end_state());
    }
}

TEST_CASE("interior s_b truncates the parent branch") {
    Schedule schedule{{BranchEvent{0.5, {{1.0, +1, 1.0}, {1.0, -1, 1.0}}}}};
    auto tree = grow_tree({AnalyticProfile::constant(1.0), AnalyticProfile::constant(0.0),
                           PhaseMode::local},
                          {0, 0, 0, 0}, 1.0, schedule, 1);
    REQUIRE(tree.branches.size() == 3);
    CHECK(tree.branches[0].span.end == 0.5);
    CHECK(tree.branches[0].trajectory.end_state().x == doctest::Approx(0.5).epsilon(1e-15));
    // children start exactly at the truncation point
    CHECK(tree.branches[1].init.x == tree.branches[0].trajectory.end_state().x);
    // leaves use the full span
    CHECK(tree.branches[1].span.end == 1.0);
}

TEST_CASE("invalid s_b is rejected") {
    Schedule schedule{{BranchEvent{1.5, {{1.0, +1, 1.0}}}}};
    CHECK_THROWS_AS(grow_tree({AnalyticProfile::constant(1.0),
                               AnalyticProfile::constant(0.0), PhaseMode::local},
                              {}, 1.0, schedule, 1),
                    Error);
}
