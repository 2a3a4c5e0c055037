#include <gtest/gtest.h>

#include <random>

#include "helpers.h"
#include "relex/errors.h"
#include "relex/io.h"
#include "relex/structure.h"

namespace relex {
namespace {

using testing::random_structure;

const Signature kGraph{{"R", 2}};

TEST(TupleRank, RoundTripsAndIsLexicographic) {
  for (int n = 1; n <= 4; ++n) {
    for (int arity = 1; arity <= 3; ++arity) {
      Tuple prev;
      for (std::size_t r = 0; r < tuple_space(n, arity); ++r) {
        const Tuple t = tuple_at(n, arity, r);
        EXPECT_EQ(tuple_rank(n, t), r);
        if (r > 0) EXPECT_LT(prev, t);
        prev = t;
      }
    }
  }
}

TEST(Signature, LookupAndErrors) {
  const Signature sig{{"P", 1}, {"R", 3}};
  EXPECT_EQ(sig.index_of("R"), 1u);
  EXPECT_FALSE(sig.find("Q"));
  EXPECT_EQ(sig.max_arity(), 3);
  EXPECT_THROW(sig.index_of("Q"), PreconditionError);
  EXPECT_THROW((Signature{{"P", 1}, {"P", 2}}), PreconditionError);
  EXPECT_THROW((Signature{{"P", 0}}), PreconditionError);
}

TEST(Structure, SetHoldsAndTuples) {
  Structure s(kGraph, 3);
  s.set(0, {1, 2});
  s.set(0, {2, 1});
  EXPECT_TRUE(s.holds(0, {1, 2}));
  EXPECT_FALSE(s.holds(0, {1, 3}));
  EXPECT_EQ(s.tuples(0), (std::vector<Tuple>{{1, 2}, {2, 1}}));
  EXPECT_EQ(s.tuple_count(0), 2u);
  EXPECT_THROW(s.set(0, {1, 4}), PreconditionError);
  EXPECT_THROW(s.holds(0, {1}), PreconditionError);
}

TEST(Structure, FromTuplesValidates) {
  EXPECT_THROW(Structure::from_tuples(kGraph, 2, {{{1, 3}}}), PreconditionError);
  EXPECT_THROW(Structure::from_tuples(kGraph, 2, {{{1}}}), PreconditionError);
  const auto s = Structure::from_tuples(kGraph, 2, {{{2, 1}, {1, 2}}});
  EXPECT_EQ(s.tuple_count(0), 2u);
}

TEST(Structure, OrderingComparesSizeFirst) {
  const Structure small(kGraph, 2);
  Structure big(kGraph, 3);
  EXPECT_LT(small, big);
  Structure a(kGraph, 2);
  a.set(0, {2, 1});
  Structure b(kGraph, 2);
  b.set(0, {1, 2});
  EXPECT_LT(a, b);  // rank of (1,2) is lower, so b's first set byte comes earlier
  EXPECT_NE(a, b);
}

TEST(Injection, ComposeAndInverse) {
  const auto phi = Injection::from_images({3, 1, 4});
  const auto psi = Injection::from_images({2, 3});
  const auto c = phi.compose(psi);
  EXPECT_EQ(c.images(), (std::vector<int>{1, 4}));
  const auto inv = phi.inverse();
  for (int x = 1; x <= 3; ++x) EXPECT_EQ(inv(phi(x)), x);
  EXPECT_THROW(Injection::from_images({1, 1}), PreconditionError);
  EXPECT_EQ(phi.image_set(), (std::vector<int>{1, 3, 4}));
}

// M^phi: s in R iff phi(s) in R, checked tuple by tuple.
TEST(Relabel, MatchesDefinitionOnRandomStructures) {
  std::mt19937_64 rng(5);
  const Signature sig{{"P", 1}, {"R", 2}, {"T", 3}};
  for (int trial = 0; trial < 50; ++trial) {
    const Structure m = random_structure(sig, 5, rng);
    const std::vector<int> images = {4, 2, 5};
    const Structure p = pullback(m, images);
    const auto rel = relabel(m, Injection::from_images(images));
    EXPECT_EQ(p, rel.structure);
    for (std::size_t r = 0; r < sig.size(); ++r) {
      for (std::size_t k = 0; k < p.slot_count(r); ++k) {
        const Tuple t = tuple_at(3, sig[r].arity, k);
        Tuple img;
        for (int x : t) img.push_back(images[static_cast<std::size_t>(x - 1)]);
        EXPECT_EQ(p.bit(r, k), m.holds(r, img));
      }
    }
  }
}

TEST(Restrict, ComposesAndIgnoresDuplicates) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const Structure m = random_structure(kGraph, 6, rng);
    const std::vector<int> s = {2, 3, 5, 6};
    const std::vector<int> inner = {1, 3, 4};  // positions within s: {2,5,6}
    const std::vector<int> direct = {2, 5, 6};
    EXPECT_EQ(restrict(restrict(m, s), inner), restrict(m, direct));
    EXPECT_EQ(restrict(m, {5, 2, 2, 6}), restrict(m, direct));
  }
}

TEST(Json, BitExactSerialization) {
  const auto s = Structure::from_tuples(kGraph, 3, {{{2, 1}, {1, 2}}});
  EXPECT_EQ(dump_structure(s),
            R"({"relations":{"R":[[1,2],[2,1]]},"signature":[{"arity":2,"name":"R"}],"universe":3})");
}

TEST(Json, RoundTripsRandomStructures) {
  std::mt19937_64 rng(7);
  const Signature sig{{"P", 1}, {"R", 2}, {"E", 2}};
  for (int trial = 0; trial < 40; ++trial) {
    const Structure s = random_structure(sig, trial % 5, rng);
    const auto text = dump_structure(s);
    EXPECT_EQ(structure_from_json(nlohmann::json::parse(text)), s);
  }
}

TEST(Json, RejectsMalformedDocuments) {
  using nlohmann::json;
  EXPECT_THROW(structure_from_json(json::array()), PreconditionError);
  EXPECT_THROW(structure_from_json(json::parse(R"({"relations":{},"signature":[]})")), PreconditionError);
  EXPECT_THROW(structure_from_json(json::parse(
                   R"({"relations":{"Q":[]},"signature":[{"arity":2,"name":"R"}],"universe":2})")),
               PreconditionError);
  EXPECT_THROW(structure_from_json(json::parse(
                   R"({"relations":{"R":[[1,5]]},"signature":[{"arity":2,"name":"R"}],"universe":2})")),
               PreconditionError);
}

}  // namespace
}  // namespace relex
