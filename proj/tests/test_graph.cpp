#include <gtest/gtest.h>

#include "support.hpp"

using namespace spliceq;

TEST(GraphIo, ParsesMinimalDocument) {
  const auto g = parse_graph(R"({"vertices":[{"id":"v","euler":-2}],"edges":[]})");
  ASSERT_EQ(g.vertices.size(), 1u);
  EXPECT_EQ(g.vertices[0].euler, -2);
  EXPECT_TRUE(validate(g).ok());
}

TEST(GraphIo, RejectsMalformedInput) {
  auto kind_of = [](const std::string& text) {
    try {
      parse_graph(text);
    } catch (const GraphError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error for " << text;
    return GraphErrorKind::Syntax;
  };
  EXPECT_EQ(kind_of("{"), GraphErrorKind::Syntax);
  EXPECT_EQ(kind_of(R"({"vertices":[{"id":"v"}],"edges":[]})"), GraphErrorKind::Syntax);
  EXPECT_EQ(kind_of(R"({"vertices":[{"id":"v","euler":-2.5}],"edges":[]})"), GraphErrorKind::Syntax);
  EXPECT_EQ(kind_of(R"({"vertices":[{"id":"v","euler":-2},{"id":"v","euler":-3}],"edges":[]})"), GraphErrorKind::DuplicateId);
  EXPECT_EQ(kind_of(R"({"vertices":[{"id":"v","euler":-2}],"edges":[["v","w"]]})"), GraphErrorKind::UnknownEndpoint);
}

TEST(GraphIo, ValidationViolations) {
  auto check = [](const std::string& text, Violation v) {
    const auto rep = validate(parse_graph(text));
    EXPECT_TRUE(rep.has(v)) << text;
  };
  check(R"({"vertices":[],"edges":[]})", Violation::Empty);
  check(R"({"vertices":[{"id":"v","euler":-2,"genus":1}],"edges":[]})", Violation::NonzeroGenus);
  check(R"({"vertices":[{"id":"v","euler":0}],"edges":[]})", Violation::EulerNotNegative);
  check(R"({"vertices":[{"id":"v","euler":-2}],"edges":[["v","v"]]})", Violation::SelfLoop);
  check(R"({"vertices":[{"id":"a","euler":-2},{"id":"b","euler":-2}],"edges":[["a","b"],["b","a"]]})",
        Violation::DuplicateEdge);
  check(R"({"vertices":[{"id":"a","euler":-2},{"id":"b","euler":-2}],"edges":[]})", Violation::NotConnected);
  check(R"({"vertices":[{"id":"a","euler":-3},{"id":"b","euler":-3},{"id":"c","euler":-3}],
            "edges":[["a","b"],["b","c"],["c","a"]]})",
        Violation::NotATree);
}

TEST(GraphIo, MinusOneMinusOneIsNotNegativeDefinite) {
  const auto rep = validate(support::load("minus1_minus1"));
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].kind, Violation::NotNegativeDefinite);
  EXPECT_THROW(LatticeContext{support::load("minus1_minus1")}, InvalidGraph);
}

TEST(GraphIo, FixturesAreValid) {
  for (const auto& name : support::fixture_names()) EXPECT_TRUE(validate(support::load(name)).ok()) << name;
}

TEST(GraphIo, SerializeParseRoundTripIsCanonical) {
  support::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = trial % 2 ? support::random_string(rng, 8) : support::random_star(rng, 3);
    const auto text = serialize_graph(g);
    const auto back = parse_graph(text);
    EXPECT_EQ(back, canonical(g));
    EXPECT_EQ(serialize_graph(back), text);
  }
}

TEST(GraphIo, CanonicalFormSortsIdsAndEndpoints) {
  const auto g = parse_graph(R"({"vertices":[{"id":"b","euler":-2},{"id":"a","euler":-3}],"edges":[["b","a"]]})");
  EXPECT_EQ(serialize_graph(g), R"({"edges":[["a","b"]],"vertices":[{"euler":-3,"id":"a"},{"euler":-2,"id":"b"}]})");
}

TEST(GraphIo, IntersectionMatrixLayout) {
  const auto I = intersection_matrix(support::string_graph({-2, -3, -4}));
  EXPECT_EQ(I(0, 0), -2);
  EXPECT_EQ(I(1, 1), -3);
  EXPECT_EQ(I(0, 1), 1);
  EXPECT_EQ(I(1, 0), 1);
  EXPECT_EQ(I(0, 2), 0);
}
