#include "swarmopt/objectives.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace swarmopt;

TEST_CASE("builtin optima evaluate to their stated values") {
    for (const char* name : {"sphere", "rosenbrock", "ackley", "rastrigin"}) {
        for (std::size_t dim : {1, 2, 5, 10}) {
            auto obj = builtin(name, dim);
            REQUIRE(obj.known_optimum.has_value());
            const auto& [point, value] = *obj.known_optimum;
            REQUIRE(std::abs(obj.evaluate(point) - value) <= 1e-12);
        }
    }
}

TEST_CASE("specific objective values") {
    auto sphere = builtin("sphere", 5);
    REQUIRE(sphere.evaluate(std::vector<double>(5, 0.0)) == 0.0);
    REQUIRE(sphere.evaluate(std::vector<double>{1, 2, 3, 4, 5}) == 55.0);

    auto rosen = builtin("rosenbrock", 10);
    REQUIRE(std::abs(rosen.evaluate(std::vector<double>(10, 1.0))) <= 1e-12);

    auto ackley = builtin("ackley", 4);
    REQUIRE(std::abs(ackley.evaluate(std::vector<double>(4, 0.0))) <= 1e-12);

    auto rast = builtin("rastrigin", 2);
    REQUIRE(rast.evaluate(std::vector<double>(2, 0.0)) == 0.0);
}

TEST_CASE("evaluation counter counts every call exactly once") {
    auto obj = builtin("sphere", 3);
    REQUIRE(obj.eval_count == 0);
    const std::vector<double> x{0.1, 0.2, 0.3};
    for (std::size_t k = 1; k <= 1000; ++k) {
        obj.evaluate(x);
        REQUIRE(obj.eval_count == k);
    }
    // copies carry independent counters
    auto copy = obj;
    copy.evaluate(x);
    REQUIRE(copy.eval_count == 1001);
    REQUIRE(obj.eval_count == 1000);
}

TEST_CASE("objective errors") {
    REQUIRE_THROWS_AS(builtin("not-a-function", 3), std::domain_error);
    REQUIRE_THROWS_AS(builtin("sphere", 0), std::domain_error);

    auto obj = builtin("sphere", 3);
    REQUIRE_THROWS_AS(obj.evaluate(std::vector<double>{1.0, 2.0}), std::domain_error);

    ObjectiveSpec bad = obj;
    bad.lower = {0.0, 0.0, 0.0};
    bad.upper = {1.0, 0.0, 1.0}; // lower == upper in one dimension
    REQUIRE_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("builtin bounds can be overridden") {
    auto obj = builtin("sphere", 2, -2.0, 2.0);
    REQUIRE(obj.lower == std::vector<double>{-2.0, -2.0});
    REQUIRE(obj.upper == std::vector<double>{2.0, 2.0});

    auto classic = builtin("ackley", 2);
    REQUIRE(classic.lower.front() == -32.768);
    REQUIRE(classic.upper.front() == 32.768);
}
