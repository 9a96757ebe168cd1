#include "doctest.h"
#include "topoproj/optimizer.hpp"
#include "topoproj/point_cloud.hpp"
#include "topoproj/rng.hpp"

using namespace topoproj;

namespace {

PointCloud right_triangle() {
    Eigen::MatrixXd m(3, 2);
    m << 0, 0, 4, 0, 0, 3;
    return PointCloud(m);
}

}  // namespace

TEST_SUITE("point_cloud") {
    TEST_CASE("pairwise distances of a 3-4-5 triangle") {
        const DistanceMatrix d = pairwise_distances(right_triangle());
        CHECK(d.size() == 3);
        CHECK(d(0, 1) == 4.0);
        CHECK(d(0, 2) == 3.0);
        CHECK(d(1, 2) == 5.0);
        for (int i = 0; i < 3; ++i) {
            CHECK(d(i, i) == 0.0);
            for (int j = 0; j < 3; ++j) CHECK(d(i, j) == d(j, i));
        }
    }

    TEST_CASE("diameter") {
        CHECK(diameter(right_triangle()) == 5.0);
        Eigen::MatrixXd one(1, 3);
        one << 1, 2, 3;
        CHECK(diameter(PointCloud(one)) == 0.0);
    }

    TEST_CASE("distance matrix validation") {
        Eigen::MatrixXd bad(2, 2);
        bad << 0, 1, 2, 0;  // not symmetric
        CHECK_THROWS_AS(DistanceMatrix{bad}, std::invalid_argument);
        bad << 1, 1, 1, 0;  // nonzero diagonal
        CHECK_THROWS_AS(DistanceMatrix{bad}, std::invalid_argument);
        bad << 0, -1, -1, 0;  // negative
        CHECK_THROWS_AS(DistanceMatrix{bad}, std::invalid_argument);
    }

    TEST_CASE("projection matrix must be orthonormal") {
        Eigen::MatrixXd p(2, 1);
        p << 1, 1;
        CHECK_THROWS_AS(ProjectionMatrix{p}, std::invalid_argument);
        p << 1, 0;
        CHECK_NOTHROW(ProjectionMatrix(p));
        Eigen::MatrixXd wide(1, 2);
        wide << 1, 0;
        CHECK_THROWS_AS(ProjectionMatrix{wide}, std::invalid_argument);  // k > n
    }

    TEST_CASE("projecting onto the x axis") {
        Eigen::MatrixXd p(2, 1);
        p << 1, 0;
        const PointCloud y = project(right_triangle(), ProjectionMatrix(p));
        CHECK(y.size() == 3);
        CHECK(y.dim() == 1);
        CHECK(y.pts(0, 0) == 0.0);
        CHECK(y.pts(1, 0) == 4.0);
        CHECK(y.pts(2, 0) == 0.0);
    }

    TEST_CASE("identity projection keeps the cloud") {
        const PointCloud x = right_triangle();
        const PointCloud y = project(x, ProjectionMatrix(Eigen::MatrixXd::Identity(2, 2)));
        CHECK((y.pts.array() == x.pts.array()).all());
    }

    TEST_CASE("shrinkage range of the axis projection") {
        Eigen::MatrixXd p(2, 1);
        p << 1, 0;
        const EtaBounds b = eta_bounds(right_triangle(), ProjectionMatrix(p));
        // pair distances 4 -> 4, 3 -> 0, 5 -> 4
        CHECK(b.eta_min == 0.0);
        CHECK(b.eta_max == 3.0);
    }

    TEST_CASE("shrinkage needs at least two points") {
        Eigen::MatrixXd one(1, 2);
        one << 1, 1;
        CHECK_THROWS_AS(eta_bounds(PointCloud(one), ProjectionMatrix(Eigen::MatrixXd::Identity(2, 2))),
                        std::invalid_argument);
    }

    TEST_CASE("projections never expand pairs (random frames)") {
        Rng rng(41);
        for (int rep = 0; rep < 20; ++rep) {
            Eigen::MatrixXd pts(6, 4);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 4; ++j) pts(i, j) = rng.normal();
            const PointCloud x(pts);
            const ProjectionMatrix p = random_projection(4, 2, rng);
            const EtaBounds b = eta_bounds(x, p);
            CHECK(b.eta_min >= 0.0);
            CHECK(b.eta_max >= b.eta_min);
            const DistanceMatrix dx = pairwise_distances(x);
            const DistanceMatrix dy = pairwise_distances(project(x, p));
            for (int i = 0; i < 6; ++i)
                for (int j = i + 1; j < 6; ++j) CHECK(dy(i, j) <= dx(i, j) + 1e-12);
        }
    }
}
