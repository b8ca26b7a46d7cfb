#include <gtest/gtest.h>

#include "toric/io.hpp"

using namespace toric;

TEST(Json, PolynomialRoundTrip) {
    auto c = make_context({"p", "q"});
    auto f = parse_polynomial(c, "123456789012345678901234567890*p^3*q - 7*q^2 + 1");
    auto j = to_json(f);
    EXPECT_EQ(j["vars"], json({"p", "q"}));
    auto g = polynomial_from_json(json::parse(j.dump()));
    EXPECT_EQ(g.to_string(), f.to_string());
}

TEST(Json, PolynomialErrors) {
    EXPECT_THROW(polynomial_from_json(json::parse(R"({"vars": ["x"]})")), PreconditionError);
    EXPECT_THROW(polynomial_from_json(json::parse(R"({"vars": ["x"], "terms": [{"e": [1, 2], "c": 1}]})")),
                 PreconditionError);
}

TEST(Json, ConfigFromB) {
    auto in = config_from_json(json::parse(R"({"B": [[1, 0], [0, 1], [-1, -1]], "vars": ["u", "v", "w"]})"));
    EXPECT_EQ(in.B.size(), 3u);
    EXPECT_FALSE(in.from_a);
    EXPECT_EQ(in.vars, (std::vector<std::string>{"u", "v", "w"}));
    EXPECT_EQ(to_json(in.B)["B"][2], json({-1, -1}));
}

TEST(Json, ConfigFromA) {
    auto in = config_from_json(json::parse(R"({"A": [[1, 1, 1, 1], [0, 1, 2, 3]]})"));
    EXPECT_TRUE(in.from_a);
    EXPECT_EQ(in.B.size(), 4u);
    EXPECT_EQ(compute_stats(in.B).degree, 3);
}

TEST(Json, ConfigErrors) {
    EXPECT_THROW(config_from_json(json::parse(R"({"C": 1})")), PreconditionError);
    EXPECT_THROW(config_from_json(json::parse(R"({"B": [[1, 0, 2], [-1, 0, 1]]})")), PreconditionError);
    EXPECT_THROW(config_from_json(json::parse(R"({"B": [[1, "x"], [-1, 0]]})")), PreconditionError);
    EXPECT_THROW(config_from_json(json::parse(R"({"B": [[1, 0], [0, 1], [-1, -1]], "vars": ["a"]})")),
                 PreconditionError);
    EXPECT_THROW(read_json_file("/nonexistent/input.json"), PreconditionError);
}

TEST(Json, BezoutInput) {
    auto in = bezout_from_json(json::parse(R"({"M": [[[1, 0], [0, 1], [1, 1]], [[0, 0], [2, 0], [0, 2]]]})"));
    EXPECT_EQ(in.m[4], (std::vector<std::int64_t>{2, 0}));
    EXPECT_THROW(bezout_from_json(json::parse(R"({"M": [[[1, 0]]]})")), PreconditionError);
}

TEST(Json, PolygonUsesOneBasedRows) {
    auto b = validate_b({{1, 0}, {0, 1}, {-1, -1}});
    auto j = to_json(build_PB(b));
    EXPECT_EQ(j["vertices"].size(), 3u);
    EXPECT_EQ(j["edges"][0]["rows"], json({1}));
}

TEST(Json, DiscriminantBundle) {
    auto b = validate_b({{1, 0}, {-2, 1}, {1, -2}, {0, 1}});
    auto j = to_json(a_discriminant(b));
    EXPECT_TRUE(j.contains("D_A"));
    EXPECT_TRUE(j.contains("E_A"));
    EXPECT_EQ(polynomial_from_json(j["D_A"]).size(), 5u);
}
