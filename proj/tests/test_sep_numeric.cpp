#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "varsep/errors.hpp"
#include "varsep/sep_exact.hpp"
#include "varsep/sep_numeric.hpp"

using namespace varsep;
using varsep::testing::Gen;
using varsep::testing::numbered_vars;

namespace {

CompiledExpr compile(const std::string& source, VariableList vars = {}) {
    auto e = parse(source);
    if (vars.empty()) vars = variables_in_order(*e);
    return CompiledExpr(e, vars);
}

double max_residual(const NumericVerdict& v) {
    double worst = 0.0;
    for (const auto& row : v.residuals) {
        for (double r : row) worst = std::max(worst, r);
    }
    return worst;
}

// The same residual computed with exact rationals, as a reference for the
// floating-point version.
Rational exact_residual(const Polynomial& f, const std::vector<bool>& in_block, const std::vector<Rational>& a,
                        const std::vector<Rational>& x) {
    std::vector<Rational> xi_aj(a.size());
    std::vector<Rational> ai_xj(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        xi_aj[k] = in_block[k] ? x[k] : a[k];
        ai_xj[k] = in_block[k] ? a[k] : x[k];
    }
    const Rational lhs = f.evaluate(a) * f.evaluate(x);
    const Rational rhs = f.evaluate(xi_aj) * f.evaluate(ai_xj);
    const Rational scale = std::max(lhs.abs(), rhs.abs());
    return scale.is_zero() ? Rational(0) : (lhs - rhs).abs() / scale;
}

}  // namespace

TEST_CASE("grids") {
    CHECK(linspace(-1.0, 1.0, 5) == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
    const auto [name, values] = parse_grid_spec("x=-1:1:9");
    CHECK(name == "x");
    REQUIRE(values.size() == 9);
    CHECK(values.front() == -1.0);
    CHECK(values.back() == 1.0);
    CHECK_THROWS_AS(parse_grid_spec("x=-1:1"), InvalidArgument);
    CHECK_THROWS_AS(parse_grid_spec("x=1:1:5"), InvalidArgument);
    CHECK_THROWS_AS(parse_grid_spec("x=0:1:1"), InvalidArgument);
    CHECK_THROWS_AS(parse_grid_spec("=0:1:3"), InvalidArgument);
    CHECK_THROWS_AS(parse_grid_spec("x=a:1:3"), InvalidArgument);
    CHECK_THROWS_AS(SampleGrid({{1.0, 1.0}, {0.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(SampleGrid({{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, SampleGrid::Strategy::Cartesian, 2), InvalidArgument);
    CHECK(SampleGrid::uniform(3).coordinates()[2].size() == 9);
}

TEST_CASE("margin residual") {
    SUBCASE("separable quotient of trig functions") {
        const auto f = compile("sin(x)/cos(y)");
        const std::vector<double> a{1.0, 0.0};
        Gen gen(8);
        std::uniform_real_distribution<double> u(-1.4, 1.4);
        for (int k = 0; k < 100; ++k) {
            const std::vector<double> x{u(gen.engine()), u(gen.engine())};
            CHECK(margin_residual(f, {true, false}, a, x) <= 1e-12);
        }
    }
    SUBCASE("sum of squares") {
        const auto f = compile("x^2+y^2");
        const double r = margin_residual(f, {true, false}, std::vector<double>{1, 1}, std::vector<double>{2, 3});
        // f(a) = 2, f(x) = 13, f(x_I, a_J) = 5, f(a_I, x_J) = 10
        CHECK(r == doctest::Approx(24.0 / 50.0));
        CHECK(r > 0.1);
    }
    SUBCASE("constant") {
        const auto f = compile("7", {"x", "y"});
        CHECK(margin_residual(f, {true, false}, std::vector<double>{0.3, -2}, std::vector<double>{5, 1}) == 0.0);
    }
    SUBCASE("degenerate anchor") {
        const auto f = compile("x*y");
        CHECK_THROWS_AS(margin_residual(f, {true, false}, std::vector<double>{0, 1}, std::vector<double>{1, 1}),
                        DegenerateInput);
        CHECK_THROWS_AS(margin_residual(compile("ln(x)*y"), {true, false}, std::vector<double>{2, 1},
                                        std::vector<double>{-1, 1}),
                        DomainError);
    }
}

TEST_CASE("numeric finest partition") {
    const SampleGrid grid2 = SampleGrid::uniform(2);
    SUBCASE("trig quotient separates") {
        const auto v = numeric_finest_partition(compile("sin(x)/cos(y)"), grid2, 1e-8);
        CHECK(v.kind == NumericKind::Separable);
        CHECK(v.partition == Partition::singletons(2));
        CHECK(max_residual(v) <= 1e-10);
        CHECK(v.samples == 81);
    }
    SUBCASE("sum of squares is one block") {
        const auto v = numeric_finest_partition(compile("x^2+y^2"), grid2, 1e-8);
        CHECK(v.kind == NumericKind::NotSeparable);
        CHECK(v.partition.block_count() == 1);
        CHECK(max_residual(v) >= 0.1);
    }
    SUBCASE("exponential of a sum times a sine") {
        const auto v = numeric_finest_partition(compile("exp(x+y)*sin(z)"), SampleGrid::uniform(3), 1e-8);
        CHECK(v.partition.is_all_singletons());
        CHECK(max_residual(v) <= 1e-10);
    }
    SUBCASE("partial separation") {
        const auto v = numeric_finest_partition(compile("(x*y + 1)*cos(z)"), SampleGrid::uniform(3));
        CHECK(v.kind == NumericKind::Partition);
        CHECK(v.partition == Partition({{0, 1}, {2}}));
    }
    SUBCASE("anchor maximizes |f| over the grid") {
        const auto v = numeric_finest_partition(compile("x^2+y^2"), grid2);
        CHECK(std::fabs(v.anchor[0]) == doctest::Approx(1.2));
        CHECK(std::fabs(v.anchor[1]) == doctest::Approx(1.2));
    }
    SUBCASE("random pair sampling") {
        const SampleGrid random({linspace(-1, 1, 50), linspace(-1, 1, 50), linspace(-1, 1, 50)},
                                SampleGrid::Strategy::RandomPairs, 300, 42);
        const auto v = numeric_finest_partition(compile("exp(x)*(y + z^2)"), random);
        CHECK(v.partition == Partition({{0}, {1, 2}}));
        CHECK(v.samples == 300);
    }
    SUBCASE("domain errors are skipped up to half the samples") {
        const SampleGrid g({linspace(-1, 4, 21), linspace(1, 2, 5)});
        const auto v = numeric_finest_partition(compile("ln(x)*y"), g);
        CHECK(v.skipped > 0);
        CHECK(v.partition.is_all_singletons());
        const SampleGrid mostly_bad({linspace(-4, 1, 21), linspace(1, 2, 5)});
        CHECK_THROWS_AS(numeric_finest_partition(compile("ln(x)*y"), mostly_bad), DegenerateInput);
    }
    SUBCASE("grid points on a zero set of a factor") {
        // 2*x1 + x3 vanishes at x1 = 0.6 when x3 = -1.2
        const auto v = numeric_finest_partition(compile("4*x1^2*x2*x3 + 2*x1*x2*x3^2"), SampleGrid::uniform(3));
        CHECK(v.partition == Partition({{0, 2}, {1}}));
    }
    SUBCASE("vanishing function") {
        CHECK_THROWS_AS(numeric_finest_partition(compile("0*x*y"), grid2), DegenerateInput);
    }
}

TEST_CASE("numeric factor samples") {
    SUBCASE("product of coordinates") {
        const SampleGrid g({linspace(-2, 2, 5), linspace(-2, 2, 5)});
        const std::vector<double> a{1, 1};
        const auto s = numeric_factor_samples(compile("x*y"), g, Partition::singletons(2), a);
        REQUIRE(s.tables.size() == 2);
        for (const auto& table : s.tables) {
            REQUIRE(table.values.size() == 5);
            for (std::size_t k = 0; k < 5; ++k) CHECK(table.values[k] == table.coordinates[k][0]);
        }
        CHECK(s.reconstruction_residual == 0.0);
    }
    SUBCASE("trig quotient reconstructs") {
        const SampleGrid g = SampleGrid::uniform(2);
        const auto v = numeric_finest_partition(compile("sin(x)/cos(y)"), g);
        const auto s = numeric_factor_samples(compile("sin(x)/cos(y)"), g, v.partition, v.anchor);
        CHECK(s.reconstruction_residual <= 1e-10);
        CHECK(s.checked == 81);
    }
    SUBCASE("single block is the function itself") {
        const SampleGrid g = SampleGrid::uniform(2, -1, 1, 4);
        const auto f = compile("x^2+y^2");
        const std::vector<double> a{1, 1};
        const auto s = numeric_factor_samples(f, g, Partition::single_block(2), a);
        REQUIRE(s.tables.size() == 1);
        REQUIRE(s.tables[0].values.size() == 16);
        for (std::size_t k = 0; k < 16; ++k) CHECK(s.tables[0].values[k] == f(s.tables[0].coordinates[k]));
    }
    SUBCASE("incompatible partition") {
        const std::vector<double> a{1, 1};
        CHECK_THROWS_AS(numeric_factor_samples(compile("x^2+y^2"), SampleGrid::uniform(2), Partition::singletons(2), a),
                        NotSeparable);
        CHECK_THROWS_AS(numeric_factor_samples(compile("x*y"), SampleGrid::uniform(2), Partition::singletons(2),
                                               std::vector<double>{0, 1}),
                        DegenerateInput);
    }
}

TEST_CASE("property: residuals match an exact rational computation") {
    Gen gen(12);
    const VariableList vars = numbered_vars(3);
    for (int round = 0; round < 40; ++round) {
        const Polynomial p = gen.dense_random(vars, 2, -3, 3, 0.4);
        const CompiledExpr f(parse(p.to_string()), vars);
        std::vector<Rational> a;
        std::vector<Rational> x;
        for (int k = 0; k < 3; ++k) {
            a.emplace_back(gen.integer(-8, 8), 4);
            x.emplace_back(gen.integer(-8, 8), 4);
        }
        if (p.evaluate(a).is_zero()) continue;
        std::vector<bool> in_block{gen.coin(), gen.coin(), gen.coin()};
        std::vector<double> ad;
        std::vector<double> xd;
        for (int k = 0; k < 3; ++k) {
            ad.push_back(a[k].to_double());
            xd.push_back(x[k].to_double());
        }
        const double exact = exact_residual(p, in_block, a, x).to_double();
        CHECK(margin_residual(f, in_block, ad, xd) == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("property: residuals are scale invariant") {
    Gen gen(13);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (const char* src : {"x^2+y^2", "exp(x*y) + z", "sin(x+y)*cos(z)", "(x - y)^3 + 2*z"}) {
        const auto f = compile(src, {"x", "y", "z"});
        for (const char* scale : {"-3", "0.001", "250"}) {
            const auto g = compile(std::string(scale) + "*(" + src + ")", {"x", "y", "z"});
            for (int k = 0; k < 20; ++k) {
                const std::vector<double> a{u(gen.engine()), u(gen.engine()), u(gen.engine())};
                const std::vector<double> x{u(gen.engine()), u(gen.engine()), u(gen.engine())};
                if (std::fabs(f(a)) < 1e-3) continue;
                const std::vector<bool> block{true, false, false};
                CHECK(margin_residual(g, block, a, x) ==
                      doctest::Approx(margin_residual(f, block, a, x)).epsilon(1e-12).scale(1.0));
            }
        }
    }
}

TEST_CASE("property: verdict does not depend on the anchor for separable functions") {
    Gen gen(14);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    const SampleGrid grid = SampleGrid::uniform(3);
    for (const char* src : {"sin(x)/cos(y)*exp(z)", "(x^2 + 1)*(y*z - 3)", "exp(x + y + z)"}) {
        const auto f = compile(src, {"x", "y", "z"});
        const Partition expected = numeric_finest_partition(f, grid).partition;
        int tried = 0;
        while (tried < 5) {
            std::vector<double> a{u(gen.engine()), u(gen.engine()), u(gen.engine())};
            if (std::fabs(f(a)) < 0.05) continue;
            ++tried;
            CHECK(numeric_finest_partition(f, grid, kDefaultTolerance, a).partition == expected);
        }
    }
}

TEST_CASE("property: factor tables reproduce separable polynomials") {
    Gen gen(15);
    const VariableList vars = numbered_vars(3);
    const SampleGrid grid = SampleGrid::uniform(3, -1.2, 1.2, 5);
    for (int round = 0; round < 20; ++round) {
        Polynomial p = Polynomial::constant(vars, Rational(gen.nonzero(-3, 3)));
        const Partition q = gen.coin() ? Partition({{0, 1}, {2}}) : Partition::singletons(3);
        for (const auto& block : q.blocks()) p *= gen.block_polynomial(vars, block, 2, -3, 3);
        const CompiledExpr f(parse(p.to_string()), vars);
        const auto v = numeric_finest_partition(f, grid);
        const auto s = numeric_factor_samples(f, grid, q, v.anchor);
        CHECK(s.reconstruction_residual <= 10 * kDefaultTolerance);
    }
}

TEST_CASE("property: numeric partition agrees with the exact one on random polynomials") {
    Gen gen(16);
    int agree = 0;
    const int total = 60;
    for (int round = 0; round < total; ++round) {
        const std::size_t n = static_cast<std::size_t>(gen.integer(2, 4));
        const VariableList vars = numbered_vars(n);
        Polynomial p = Polynomial::constant(vars, Rational(gen.nonzero(-3, 3)));
        const auto partitions = varsep::testing::all_partitions(n);
        const Partition& q = partitions[static_cast<std::size_t>(gen.integer(0, static_cast<long>(partitions.size()) - 1))];
        for (const auto& block : q.blocks()) p *= gen.block_polynomial(vars, block, 2, -3, 3);
        const CompiledExpr f(parse(p.to_string()), vars);
        if (numeric_finest_partition(f, SampleGrid::uniform(n)).partition == finest_partition(p).partition) ++agree;
    }
    CHECK(agree >= total - 1);
}
