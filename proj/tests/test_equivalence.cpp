#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "topoproj/equivalence.hpp"
#include "topoproj/error.hpp"
#include "topoproj/optimizer.hpp"

using namespace topoproj;

namespace {

PointCloud right_triangle() {
    Eigen::MatrixXd m(3, 2);
    m << 0, 0, 4, 0, 0, 3;
    return PointCloud(m);
}

ProjectionMatrix x_axis() {
    Eigen::MatrixXd p(2, 1);
    p << 1, 0;
    return ProjectionMatrix(p);
}

// Four points whose xy-projection turns a contractible chain into a hollow
// quadrilateral on one scale interval.
PointCloud chain_cloud() {
    Eigen::MatrixXd m(4, 3);
    m << 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1.2, 0.5;
    return PointCloud(m);
}

ProjectionMatrix xy_plane() {
    Eigen::MatrixXd p(3, 2);
    p << 1, 0, 0, 1, 0, 0;
    return ProjectionMatrix(p);
}

SimplicialComplex hollow_triangle() {
    SimplicialComplex k;
    k.simplices = {Simplex({0}), Simplex({1}), Simplex({2}),
                   Simplex({0, 1}), Simplex({0, 2}), Simplex({1, 2})};
    return k;
}

}  // namespace

TEST_SUITE("equivalence") {
    TEST_CASE("triangle projected to a line: the worked measure") {
        const CanonicalEmbedding emb = canonical_embedding(right_triangle(), x_axis(), std::nullopt, 0);
        CHECK(emb.eta == 0.0);
        CHECK(emb.a_n == 2.5);
        CHECK(emb.vertex_map == std::vector<int>{0, 1, 0});
        CHECK(emb.y.size() == 2);
        REQUIRE(emb.grid == std::vector<double>{0.0, 1.5, 2.0, 2.5});

        const auto dx = compute_persistence(emb.fx, 0);
        const auto dy = compute_persistence(emb.fy, 0);
        REQUIRE(dx[0].pairs.size() == 3);
        REQUIRE(dy[0].pairs.size() == 2);

        const MuReport mu = mu_quasi_iso(dx, dy, emb.eta, 5.0);
        CHECK(mu.mu == 0.4);  // exactly (2.5 - 1.5) / 2.5
        REQUIRE(mu.counted.size() == 3);
        CHECK_FALSE(mu.counted[0]);
        CHECK(mu.counted[1]);
        CHECK(mu.counted[2]);

        const SimilarityReport rep = classify_intervals(emb);
        REQUIRE(rep.intervals.size() == 3);
        CHECK(rep.intervals[0].cls == IntervalClass::T0);
        CHECK(rep.intervals[1].cls == IntervalClass::T2);
        CHECK(rep.intervals[2].cls == IntervalClass::T2);
        CHECK(rep.mu_quasi_iso == 0.4);
        CHECK(rep.mu_equiv_lower == 0.4);
        CHECK(rep.mu_equiv_upper == 0.4);

        const double bar = mu_quasi_iso_barcode({to_barcode(dx[0])}, {to_barcode(dy[0])}, emb.eta, 5.0);
        CHECK(bar == mu.mu);
    }

    TEST_CASE("identity projection scores a perfect one") {
        Rng rng(19);
        Eigen::MatrixXd pts(5, 3);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 3; ++j) pts(i, j) = rng.normal();
        const PointCloud x(pts);
        const CanonicalEmbedding emb =
            canonical_embedding(x, ProjectionMatrix(Eigen::MatrixXd::Identity(3, 3)), std::nullopt, 1);
        CHECK(emb.eta == 0.0);
        const SimilarityReport rep = classify_intervals(emb);
        CHECK(rep.mu_quasi_iso == 1.0);
        CHECK(rep.mu_equiv_lower == 1.0);
        CHECK(rep.mu_equiv_upper == 1.0);
        for (const IntervalReport& iv : rep.intervals) CHECK(iv.cls == IntervalClass::T2);
    }

    TEST_CASE("chain flattened to a hollow quadrilateral: full classification") {
        const CanonicalEmbedding emb = canonical_embedding(chain_cloud(), xy_plane(), std::nullopt, 0);
        CHECK(emb.eta == 0.0);
        CHECK(emb.a_n == doctest::Approx(std::sqrt(2.69) / 2.0).epsilon(1e-14));

        const std::vector<double> expected_grid{
            0.0,        0.5, std::sqrt(1.04) / 2.0, std::sqrt(1.29) / 2.0,    0.6, 0.65,
            std::sqrt(2.0) / 2.0, std::sqrt(2.44) / 2.0, std::sqrt(2.69) / 2.0};
        REQUIRE(emb.grid.size() == expected_grid.size());
        for (std::size_t i = 0; i < expected_grid.size(); ++i)
            CHECK(emb.grid[i] == doctest::Approx(expected_grid[i]).epsilon(1e-13));

        const SimilarityReport rep = classify_intervals(emb);
        const std::vector<IntervalClass> expected{
            IntervalClass::T2, IntervalClass::T2, IntervalClass::T0, IntervalClass::T2,
            IntervalClass::T1, IntervalClass::T2, IntervalClass::T2, IntervalClass::T2};
        REQUIRE(rep.intervals.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) CHECK(rep.intervals[i].cls == expected[i]);

        CHECK(rep.mu_equiv_lower == rep.mu_equiv_upper);  // nothing undecided
        const double a_n = std::sqrt(2.69) / 2.0;
        const double t0 = (std::sqrt(1.29) - std::sqrt(1.04)) / 2.0;
        CHECK(rep.mu_quasi_iso == doctest::Approx(1.0 - t0 / a_n).epsilon(1e-12));
        CHECK(rep.mu_equiv_lower == doctest::Approx(1.0 - (t0 + 0.05) / a_n).epsilon(1e-12));
    }

    TEST_CASE("diagram and barcode routes agree bit for bit") {
        Rng rng(37);
        for (int rep = 0; rep < 8; ++rep) {
            Eigen::MatrixXd pts(6, 3);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 3; ++j) pts(i, j) = rng.normal();
            const PointCloud x(pts);
            const ProjectionMatrix p = random_projection(3, 2, rng);
            const CanonicalEmbedding emb = canonical_embedding(x, p, std::nullopt, 1);
            const auto dx = compute_persistence(emb.fx, 1);
            const auto dy = compute_persistence(emb.fy, 1);
            const double diam = diameter(x);

            const MuReport direct = mu_quasi_iso(dx, dy, emb.eta, diam);
            std::vector<Barcode> bx{to_barcode(dx[0]), to_barcode(dx[1])};
            std::vector<Barcode> by{to_barcode(dy[0]), to_barcode(dy[1])};
            CHECK(direct.mu == mu_quasi_iso_barcode(bx, by, emb.eta, diam));

            const SimilarityReport cls = classify_intervals(emb);
            CHECK(cls.mu_quasi_iso == direct.mu);
        }
    }

    TEST_CASE("loop presentations from a spanning tree") {
        const GroupPresentation hollow = edge_path_presentation(hollow_triangle(), 0);
        CHECK(hollow.generators == 1);
        CHECK(hollow.relators.empty());
        CHECK(is_trivial(hollow) == Verdict::Nontrivial);

        SimplicialComplex filled = hollow_triangle();
        filled.simplices.push_back(Simplex({0, 1, 2}));
        const GroupPresentation tri = edge_path_presentation(filled, 0);
        CHECK(tri.generators == 1);
        REQUIRE(tri.relators.size() == 1);
        CHECK(tri.relators[0] == std::vector<int>{1});
        CHECK(is_trivial(tri) == Verdict::Trivial);

        CHECK_THROWS_AS(edge_path_presentation(hollow_triangle(), 7), std::invalid_argument);
    }

    TEST_CASE("presentation sees only the basepoint component") {
        SimplicialComplex k = hollow_triangle();
        k.simplices.push_back(Simplex({7}));
        k.simplices.push_back(Simplex({8}));
        k.simplices.push_back(Simplex({7, 8}));
        std::sort(k.simplices.begin(), k.simplices.end(), simplex_less);
        const GroupPresentation g = edge_path_presentation(k, 7);
        CHECK(g.generators == 0);
        CHECK(g.relators.empty());
    }

    TEST_CASE("collapsing a chain inside a hollow square leaves a loop") {
        SimplicialComplex q;
        q.simplices = {Simplex({0}), Simplex({1}), Simplex({2}), Simplex({3}),
                       Simplex({0, 1}), Simplex({0, 3}), Simplex({1, 2}), Simplex({2, 3})};
        SimplicialComplex k;
        k.simplices = {Simplex({0}), Simplex({1}), Simplex({2}), Simplex({3}),
                       Simplex({0, 1}), Simplex({1, 2}), Simplex({2, 3})};
        const auto comps = pi1_quotient_presentations(k, q, {0, 1, 2, 3});
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].q_root == 0);
        CHECK(comps[0].group.generators == 1);
        CHECK(is_trivial(comps[0].group) == Verdict::Nontrivial);
    }

    TEST_CASE("collapsing the whole cycle kills the loop") {
        SimplicialComplex q;
        q.simplices = {Simplex({0}), Simplex({1}), Simplex({2}), Simplex({3}),
                       Simplex({0, 1}), Simplex({0, 3}), Simplex({1, 2}), Simplex({2, 3})};
        const auto comps = pi1_quotient_presentations(q, q, {0, 1, 2, 3});
        REQUIRE(comps.size() == 1);
        CHECK(is_trivial(comps[0].group) == Verdict::Trivial);
    }

    TEST_CASE("several source components wedge in free loops") {
        SimplicialComplex k;
        k.simplices = {Simplex({0}), Simplex({1})};
        SimplicialComplex q;
        q.simplices = {Simplex({0})};
        const auto comps = pi1_quotient_presentations(k, q, {0, 0});
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].group.generators == 1);  // r - 1 fresh loops
        CHECK(comps[0].group.relators.empty());
        CHECK(is_trivial(comps[0].group) == Verdict::Nontrivial);
    }

    TEST_CASE("triviality rewriting verdicts") {
        CHECK(is_trivial({0, {}}) == Verdict::Trivial);
        CHECK(is_trivial({1, {}}) == Verdict::Nontrivial);            // free of rank one
        CHECK(is_trivial({1, {{1}}}) == Verdict::Trivial);            // a = 1
        CHECK(is_trivial({1, {{1, 1}}}) == Verdict::Nontrivial);      // order two
        CHECK(is_trivial({2, {{1, 2, -1, -2}}}) == Verdict::Nontrivial);  // commutative plane
        CHECK(is_trivial({2, {{2}, {1, -2}}}) == Verdict::Trivial);   // b = 1, then a = b
        // cancellation through an inverted relator occurrence
        CHECK(is_trivial({2, {{1, 2}, {2, 1, 1}}}) == Verdict::Trivial);
        // a perfect two-generator presentation defeats the rewriter honestly
        const GroupPresentation perfect{2, {{1, 2, 1, 2, -1, -1, -1}, {1, 1, 1, -2, -2, -2, -2, -2}}};
        CHECK(is_trivial(perfect, 300) == Verdict::Unknown);
        CHECK_THROWS_AS(is_trivial({1, {{2}}}), std::invalid_argument);
    }

    TEST_CASE("slack beyond the contraction bound is rejected constructively") {
        Eigen::MatrixXd m(2, 1);
        m << 0, 2;
        CHECK_THROWS_AS(canonical_embedding(PointCloud(m),
                                            ProjectionMatrix(Eigen::MatrixXd::Identity(1, 1)), 0.9, 0),
                        numeric_error);
    }

    TEST_CASE("embedding rejects bad parameters") {
        CHECK_THROWS_AS(canonical_embedding(right_triangle(), x_axis(), -0.5, 0),
                        std::invalid_argument);
        CHECK_THROWS_AS(canonical_embedding(right_triangle(), x_axis(), std::nullopt, -1),
                        std::invalid_argument);
    }

    TEST_CASE("a single point is perfectly preserved") {
        Eigen::MatrixXd one(1, 2);
        one << 3, 4;
        const CanonicalEmbedding emb =
            canonical_embedding(PointCloud(one), ProjectionMatrix(Eigen::MatrixXd::Identity(2, 2)),
                                std::nullopt, 0);
        const SimilarityReport rep = classify_intervals(emb);
        CHECK(rep.mu_quasi_iso == 1.0);
        CHECK(rep.mu_equiv_lower == 1.0);
        CHECK(rep.intervals.empty());
    }

    TEST_CASE("measure input validation") {
        PersistenceDiagram d;
        d.pairs = {{0.0, 1.0}};
        CHECK_THROWS_AS(mu_quasi_iso({}, {}, 0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(mu_quasi_iso({d}, {d, d}, 0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(mu_quasi_iso({d}, {d}, -0.1, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(mu_quasi_iso({d}, {d}, 0.0, 0.0), std::invalid_argument);
    }
}
