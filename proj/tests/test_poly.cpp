#include <doctest.h>

#include "support.hpp"
#include "varsep/errors.hpp"
#include "varsep/json_io.hpp"
#include "varsep/polynomial.hpp"

using namespace varsep;
using varsep::testing::Gen;
using varsep::testing::three_var_example;
using varsep::testing::two_var_example;
using varsep::testing::poly;

TEST_CASE("rational values are kept in lowest terms") {
    CHECK(Rational(6, -4).to_string() == "-3/2");
    CHECK(Rational(0, 7).to_string() == "0");
    CHECK(Rational(0, 7).denominator() == 1);
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("-3.50") == Rational(-7, 2));
    CHECK(Rational::parse("12/8") == Rational(3, 2));
    CHECK(Rational::parse("123456789012345678901234567890").to_string() == "123456789012345678901234567890");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
}

TEST_CASE("ring operations") {
    const VariableList xy{"x", "y"};
    SUBCASE("difference of squares") {
        CHECK(poly("x+1") * poly("x-1") == poly("x^2-1"));
    }
    SUBCASE("worked two-variable product has 20 terms") {
        const Polynomial product = poly("x^4-3*x^3+5*x^2+2*x+7", xy) * poly("y^3+2*y^2-y+3", xy);
        CHECK(product.term_count() == 20);
        CHECK(product == two_var_example());
    }
    SUBCASE("additive inverse") {
        const Polynomial p = two_var_example();
        const Polynomial zero(p.vars());
        CHECK((p + (zero - p)).is_zero());
    }
    SUBCASE("registries must match") {
        CHECK_THROWS_AS(poly("x") + poly("y"), InvalidArgument);
        auto [a, b] = align(poly("x*z"), poly("y+z"));
        CHECK(a.vars() == VariableList{"x", "z", "y"});
        CHECK((a * b).to_string() == "x*z^2 + x*z*y");
    }
}

TEST_CASE("partial derivatives") {
    const Polynomial f = poly("x^3*y");
    CHECK(f.partial_derivative(0) == poly("3*x^2*y", f.vars()));
    const Polynomial g = poly("x^3*y + x^2*y^2 + x*y + y^2");
    const unsigned twice_x[] = {2, 0};
    CHECK(g.derivative(twice_x) == poly("6*x*y + 2*y^2", g.vars()));
    CHECK(poly("y^2", {"x", "y"}).partial_derivative(0).is_zero());
    CHECK_THROWS_AS(f.partial_derivative(2), InvalidArgument);
}

TEST_CASE("point evaluation") {
    CHECK(poly("x^2+y^2").evaluate(std::vector<Rational>{1, 2}) == Rational(5));
    CHECK(two_var_example().evaluate(std::vector<Rational>{0, 0}) == Rational(21));
    CHECK(three_var_example().evaluate(std::vector<Rational>{0, 0, 0}) == Rational(0));
    CHECK(poly("x/2").evaluate(std::vector<Rational>{Rational(1, 3)}) == Rational(1, 6));
    CHECK_THROWS_AS(poly("x*y").evaluate(std::vector<Rational>{1}), InvalidArgument);
}

TEST_CASE("margins") {
    CHECK(two_var_example().margin({{1, Rational(0)}}) == poly("3*x^4 - 9*x^3 + 15*x^2 + 6*x + 21"));
    const Polynomial xy = poly("x*y");
    const Polynomial m = xy.margin({{0, Rational(0)}});
    CHECK(m.is_zero());
    CHECK(m.vars() == VariableList{"y"});
    CHECK(two_var_example().margin({}) == two_var_example());
    CHECK_THROWS_AS(xy.margin({{5, Rational(1)}}), InvalidArgument);
}

TEST_CASE("degree vectors") {
    CHECK(poly("x^2*y^3*z^4 + x*y").degree_vector() == std::vector<std::uint32_t>{2, 3, 4});
    CHECK(two_var_example().degree_vector() == std::vector<std::uint32_t>{4, 3});
    CHECK(Polynomial::constant({"x", "y", "z"}, Rational(5)).degree_vector() == std::vector<std::uint32_t>{0, 0, 0});
    CHECK_THROWS_AS(Polynomial({"x"}).degree_vector(), DegenerateInput);
    CHECK_THROWS_AS(Polynomial({"x"}).leading_term(), DegenerateInput);
}

TEST_CASE("affine substitution") {
    const std::vector<std::vector<Rational>> rotate{{1, 1}, {1, -1}};
    const std::vector<Rational> no_shift{0, 0};
    SUBCASE("product of coordinates becomes a difference of squares") {
        const Polynomial out = poly("x*y").apply_affine_transform(rotate, no_shift, {"u", "v"});
        CHECK(out == poly("u^2 - v^2", {"u", "v"}));
    }
    SUBCASE("identity leaves the polynomial unchanged") {
        const std::vector<std::vector<Rational>> id{{1, 0}, {0, 1}};
        CHECK(two_var_example().apply_affine_transform(id, no_shift) == two_var_example());
    }
    SUBCASE("scale and shift") {
        const Polynomial out = poly("x").apply_affine_transform({{2}}, {1}, {"u"});
        CHECK(out.to_string() == "2*u + 1");
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(poly("x*y").apply_affine_transform({{1}}, {0}), InvalidArgument);
    }
    SUBCASE("invertible maps preserve total degree") {
        Gen gen(7);
        const VariableList vars{"x", "y", "z"};
        const std::vector<std::vector<Rational>> t{{1, 2, 0}, {0, 1, -1}, {3, 0, 1}};  // det = 7
        for (int round = 0; round < 20; ++round) {
            const Polynomial p = gen.dense_random(vars, 2, -3, 3, 0.4);
            CHECK(p.apply_affine_transform(t, {1, -2, Rational(1, 2)}).total_degree() == p.total_degree());
        }
    }
}

TEST_CASE("canonical text is graded lex and re-parses") {
    const Polynomial p = poly("1/2*y + x^2 - 3*x*y + 7 - x^3", {"x", "y"});
    CHECK(p.to_string() == "-x^3 + x^2 - 3*x*y + 1/2*y + 7");
    CHECK(poly(p.to_string(), p.vars()) == p);
    CHECK(two_var_example().to_string().starts_with("x^4*y^3 + 2*x^4*y^2 - 3*x^3*y^3 - x^4*y"));
    CHECK(Polynomial({"x"}).to_string() == "0");
}

TEST_CASE("polynomial JSON form") {
    const Polynomial p = poly("x^2*y - 3/4*y + 2");
    const Json j = polynomial_to_json(p);
    CHECK(emit_json(j) ==
          R"({"vars":["x","y"],"terms":[{"exp":[2,1],"coef":"1"},{"exp":[0,1],"coef":"-3/4"},{"exp":[0,0],"coef":"2"}]})");

    Gen gen(11);
    for (int round = 0; round < 25; ++round) {
        const Polynomial q = gen.dense_random({"a", "b", "c"}, 3, -9, 9, 0.3);
        CHECK(polynomial_from_json(Json::parse(emit_json(polynomial_to_json(q)))) == q);
    }

    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"vars":["x"],"terms":[{"exp":[1,2],"coef":"1"}]})")),
                    InvalidArgument);
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"vars":["x"],"terms":[{"exp":[1],"coef":"one"}]})")),
                    InvalidArgument);
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"vars":["x","x"],"terms":[]})")), InvalidArgument);
}

TEST_CASE("property: ring axioms hold exactly") {
    Gen gen(2024);
    const VariableList vars{"x", "y", "z"};
    for (int round = 0; round < 40; ++round) {
        const Polynomial a = gen.dense_random(vars, 2, -4, 4, 0.3);
        const Polynomial b = gen.dense_random(vars, 2, -4, 4, 0.3);
        const Polynomial c = gen.dense_random(vars, 2, -4, 4, 0.3);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) + c == a + (b + c));
    }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
    Gen gen(99);
    const VariableList vars{"x", "y", "z"};
    for (int round = 0; round < 40; ++round) {
        const Polynomial a = gen.dense_random(vars, 3, -5, 5, 0.3);
        const Polynomial b = gen.dense_random(vars, 3, -5, 5, 0.3);
        std::vector<Rational> point;
        for (int k = 0; k < 3; ++k) point.emplace_back(gen.integer(-7, 7), gen.nonzero(1, 5));
        CHECK((a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point));
        CHECK((a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point));
    }
}

TEST_CASE("property: mixed partials commute") {
    Gen gen(5);
    const VariableList vars{"x", "y", "z", "w"};
    for (int round = 0; round < 30; ++round) {
        const Polynomial p = gen.dense_random(vars, 3, -5, 5, 0.2);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                CHECK(p.partial_derivative(i).partial_derivative(j) == p.partial_derivative(j).partial_derivative(i));
            }
        }
    }
}

TEST_CASE("property: margins commute with evaluation") {
    Gen gen(17);
    const VariableList vars{"x", "y", "z", "w"};
    for (int round = 0; round < 30; ++round) {
        const Polynomial p = gen.dense_random(vars, 2, -5, 5, 0.25);
        std::vector<Rational> point;
        for (int k = 0; k < 4; ++k) point.emplace_back(gen.integer(-6, 6), gen.nonzero(1, 4));
        std::map<std::size_t, Rational> fixed;
        std::vector<Rational> rest;
        for (std::size_t k = 0; k < 4; ++k) {
            if (gen.coin()) {
                fixed.emplace(k, point[k]);
            } else {
                rest.push_back(point[k]);
            }
        }
        const Polynomial m = p.margin(fixed);
        CHECK(m.variable_count() == rest.size());
        CHECK(m.evaluate(rest) == p.evaluate(point));
    }
}
