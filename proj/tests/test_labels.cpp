#include <doctest.h>

#include "indforest/labels.hpp"

using namespace indforest;

TEST_CASE("check_probabilities ranges") {
    CHECK_NOTHROW(check_probabilities(0.5, 0.0));
    CHECK_NOTHROW(check_probabilities(1.0, 0.5));
    CHECK_THROWS_AS(check_probabilities(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(check_probabilities(-0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(check_probabilities(1.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(check_probabilities(0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(check_probabilities(0.5, -0.1), std::invalid_argument);
}

TEST_CASE("sample_labels determinism and shape") {
    auto a = sample_labels(50, 10, 0.3, 0.2, 42);
    auto b = sample_labels(50, 10, 0.3, 0.2, 42);
    CHECK(a.labels == b.labels);
    CHECK(a.horizon == 10);
    CHECK(a.labels.size() == 50);
    for (int v = 0; v < 50; ++v) {
        const auto& s = a.labels[v];
        CHECK(std::is_sorted(s.begin(), s.end()));
        for (int i : s) {
            CHECK(i >= 0);
            CHECK(i <= 10);
            CHECK(a.has_label(v, i));
        }
        CHECK_FALSE(a.has_label(v, 11));
    }
}

TEST_CASE("sample_labels degenerate parameters") {
    // p0 = 1, p = 0: every vertex gets exactly the label set {0}
    auto s = sample_labels(20, 5, 1.0, 0.0, 7);
    for (int v = 0; v < 20; ++v)
        CHECK(s.labels[v] == std::vector<int>{0});

    // p = 0 with any N produces the same label sets as N = 0
    auto x = sample_labels(30, 8, 0.4, 0.0, 11);
    auto y = sample_labels(30, 0, 0.4, 0.0, 11);
    CHECK(x.labels == y.labels);
}

TEST_CASE("sample_labels empirical frequencies") {
    const int n = 20000;
    auto s = sample_labels(n, 2, 0.3, 0.1, 5);
    int c0 = 0, c1 = 0;
    for (int v = 0; v < n; ++v) {
        c0 += s.has_label(v, 0);
        c1 += s.has_label(v, 1);
    }
    // 4 standard errors: sqrt(p(1-p)/n) ~ 0.0032 and 0.0021
    CHECK(std::abs(c0 / double(n) - 0.3) < 0.013);
    CHECK(std::abs(c1 / double(n) - 0.1) < 0.009);
}

TEST_CASE("relevant_labels hand example on a path") {
    Graph path(3, {{0, 1}, {1, 2}});
    LabelSchedule sched;
    sched.horizon = 1;
    sched.p0 = 0.5;
    sched.p = 0.5;
    sched.labels = {{0}, {1}, {1}};
    auto rl = relevant_labels(path, sched);
    // vertex 0 relevant at 0; vertex 1 has exactly one earlier relevant
    // neighbour so becomes relevant at 1; vertex 2 sees no strictly earlier
    // relevant neighbour at the time it holds label 1.
    CHECK(rl == RelevantLabeling({0, 1, kNoLabel}));
}

TEST_CASE("relevant_labels two earlier neighbours blocks") {
    // star centre 0 with leaves 1,2; leaves relevant at 0, centre holds
    // label 1 but has two earlier relevant neighbours.
    Graph star(3, {{0, 1}, {0, 2}});
    LabelSchedule sched;
    sched.horizon = 1;
    sched.p0 = 0.5;
    sched.p = 0.5;
    sched.labels = {{1}, {0}, {0}};
    auto rl = relevant_labels(star, sched);
    CHECK(rl == RelevantLabeling({kNoLabel, 0, 0}));
}

TEST_CASE("relevant_labels structural properties") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto g = generate_regular(60, 3, seed);
        auto sched = sample_labels(60, 6, 0.25, 0.15, seed + 1000);
        auto rl = relevant_labels(g, sched);
        for (int v = 0; v < 60; ++v) {
            if (rl[v] == kNoLabel) continue;
            CHECK(sched.has_label(v, rl[v]));
            if (rl[v] > 0) {
                int earlier = 0;
                for (int u : g.neighbors(v))
                    if (rl[u] != kNoLabel && rl[u] < rl[v]) ++earlier;
                CHECK(earlier == 1);
            }
        }
        // relevant at 0 iff the vertex holds label 0
        for (int v = 0; v < 60; ++v)
            CHECK((rl[v] == 0) == sched.has_label(v, 0));
    }
}

TEST_CASE("coloring_at definitions") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = generate_regular(60, 3, seed);
        auto sched = sample_labels(60, 5, 0.3, 0.2, seed + 77);
        auto rl = relevant_labels(g, sched);
        for (int l = 0; l <= 5; ++l) {
            auto cs = coloring_at(g, rl, l);
            CHECK(cs.time == l);
            for (int v = 0; v < 60; ++v) {
                bool purple = rl[v] != kNoLabel && rl[v] <= l;
                int purple_nb = 0;
                for (int u : g.neighbors(v))
                    if (rl[u] != kNoLabel && rl[u] <= l) ++purple_nb;
                Color expect = purple        ? Color::Purple
                             : purple_nb == 0 ? Color::White
                             : purple_nb == 1 ? Color::Blue
                                              : Color::Orange;
                CHECK(cs.color[v] == expect);
            }
        }
    }
}

TEST_CASE("coloring monotonicity: white set shrinks over time") {
    auto g = generate_regular(80, 4, 3);
    auto sched = sample_labels(80, 8, 0.2, 0.1, 9);
    auto rl = relevant_labels(g, sched);
    auto prev = coloring_at(g, rl, 0);
    for (int l = 1; l <= 8; ++l) {
        auto cur = coloring_at(g, rl, l);
        for (int v = 0; v < 80; ++v) {
            if (cur.color[v] == Color::White) CHECK(prev.color[v] == Color::White);
            if (prev.color[v] == Color::Purple) CHECK(cur.color[v] == Color::Purple);
        }
        prev = cur;
    }
}
