// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

namespace hpp {
namespace {

struct Shape {
  const char* name;
  int n, r;
  std::size_t nonbases;
};

TEST(Builtin, Shapes) {
  const Shape shapes[] = {
      {"Ex4", 4, 2, 1},     {"U24", 4, 2, 0},     {"F7", 7, 3, 7},      {"F7-", 7, 3, 6},
      {"F7--", 7, 3, 5},    {"F7-3", 7, 3, 4},    {"MK4", 6, 3, 4},     {"MK4+e", 7, 3, 4},
      {"P7", 7, 3, 5},      {"CoExtP7", 8, 4, 5}, {"M548", 8, 4, 5},    {"P8", 8, 4, 10},
      {"P8'", 8, 4, 9},     {"P8''", 8, 4, 8},    {"P8'''", 8, 4, 7},   {"V8", 8, 4, 5},
      {"M431", 8, 4, 4},    {"S8", 8, 4, 22},     {"Pappus", 9, 3, 9},  {"NonPappus", 9, 3, 8},
      {"Golay12", 12, 6, 132},
  };
  for (const auto& s : shapes) {
    auto m = builtin(s.name).matroid;
    EXPECT_EQ(m.size(), s.n) << s.name;
    EXPECT_EQ(m.rank(), s.r) << s.name;
    EXPECT_EQ(m.nonbases().size(), s.nonbases) << s.name;
  }
}

TEST(Builtin, AllNamesConstruct) {
  for (const auto& name : builtin_names()) {
    auto e = builtin(name);
    EXPECT_EQ(e.name, name);
    EXPECT_FALSE(e.provenance.empty()) << name;
    EXPECT_TRUE(testing::exchange_oracle(e.matroid)) << name;
  }
}

TEST(Builtin, StructuralClaims) {
  for (const char* name : {"P8", "P8'", "P8''", "P8'''", "CoExtP7", "M431", "V8"}) {
    auto m = builtin(name).matroid;
    EXPECT_TRUE(is_sparse_paving(m)) << name;
    EXPECT_EQ(m.rank(), 4) << name;
  }
  auto p8 = builtin("P8").matroid;
  EXPECT_EQ(circuit_hyperplanes(p8).size(), 10u);
  EXPECT_TRUE(is_isomorphic(p8, dual(p8)));
  auto cp7 = builtin("CoExtP7").matroid;
  EXPECT_FALSE(is_isomorphic(cp7, dual(cp7)));
  EXPECT_TRUE(is_vamos_like(builtin("V8").matroid));
  EXPECT_EQ(builtin("M431").matroid.nonbases().size(), 4u);
  auto s8 = builtin("S8").matroid;
  EXPECT_TRUE(is_isomorphic(s8, dual(s8)));
}

TEST(Builtin, NonPappusMinusNinePlusE) {
  auto m = builtin("NonPappus9+e").matroid;
  EXPECT_EQ(m.size(), 9);
  EXPECT_EQ(m.rank(), 3);
  EXPECT_TRUE(is_simple(m));
  for (const auto& f : seed_forbidden_minors()) EXPECT_FALSE(has_minor(m, f.matroid)) << f.name;
}

TEST(Builtin, DualSuffixAndUniformNames) {
  EXPECT_EQ(builtin("F7*").matroid, dual(builtin("F7").matroid));
  EXPECT_EQ(builtin("U3_7").matroid, Matroid::uniform(3, 7));
  EXPECT_EQ(builtin("U47").matroid, Matroid::uniform(4, 7));
}

TEST(Builtin, UnknownName) {
  try {
    builtin("Q9");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownName);
  }
}

TEST(Format, RoundTripBuiltins) {
  std::vector<CatalogEntry> entries;
  for (const auto& name : builtin_names()) entries.push_back(builtin(name));
  std::stringstream ss;
  write_catalog(ss, entries);
  auto back = parse_catalog(ss);
  ASSERT_EQ(back.size(), entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    EXPECT_EQ(back[k].name, entries[k].name);
    EXPECT_EQ(back[k].matroid, entries[k].matroid);
    EXPECT_EQ(back[k].index, k);
    EXPECT_EQ(back[k].provenance, entries[k].provenance);
  }
}

TEST(Format, BasesBlockAndComments) {
  std::stringstream ss(
      "# a comment\n"
      "matroid ex n=4 r=2\n"
      "bases\n"
      "1 2\n2 3\n1 4\n# inline comment\n2 4\n3 4\n");
  auto es = parse_catalog(ss);
  ASSERT_EQ(es.size(), 1u);
  EXPECT_EQ(es[0].matroid, builtin("Ex4").matroid);
  EXPECT_EQ(es[0].provenance, "a comment");
}

TEST(Format, CompactLines) {
  std::stringstream ss;
  ss << compact_line(builtin("V8").matroid) << "\n" << compact_line(Matroid::uniform(2, 4)) << "\n";
  auto es = parse_catalog(ss);
  ASSERT_EQ(es.size(), 2u);
  EXPECT_EQ(es[0].name, "M0");
  EXPECT_EQ(es[0].matroid, builtin("V8").matroid);
  EXPECT_EQ(es[1].matroid, Matroid::uniform(2, 4));
  EXPECT_EQ(compact_line(builtin("Ex4").matroid), "4 2 1 3");
}

TEST(Format, ValidationErrorNamesEntry) {
  std::stringstream ss("matroid bad n=4 r=2\nbases\n1 2\n3 4\n");
  try {
    parse_catalog(ss);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ValidationError);
    const std::string what = e.what();
    EXPECT_NE(what.find("bad"), std::string::npos);
    EXPECT_NE(what.find("ExchangeAxiomViolation"), std::string::npos);
  }
}

TEST(Format, ParseErrorLineNumber) {
  std::stringstream ss("matroid ok n=3 r=1\nbases\n1\n2\n3\n\nmatroid x n=3 r=1\nbases\n1\n7\n");
  try {
    parse_catalog(ss);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 10"), std::string::npos) << e.what();
  }
  std::stringstream junk("hello\n");
  EXPECT_THROW(parse_catalog(junk), Error);
}

TEST(Format, ResolveFile) {
  const std::string path = ::testing::TempDir() + "hpp_catalog_test.txt";
  write_catalog_file(path, {builtin("P8"), builtin("V8")});
  auto e = resolve_matroid(path);
  EXPECT_EQ(e.name, "P8");
  EXPECT_EQ(parse_catalog_file(path).size(), 2u);
  EXPECT_EQ(resolve_matroid("V8").matroid, builtin("V8").matroid);
  EXPECT_THROW(resolve_matroid("/nonexistent/file"), Error);
}

TEST(Forbidden, SeedList) {
  auto seeds = seed_forbidden_minors();
  EXPECT_EQ(seeds.size(), 10u);
  for (const auto& s : seeds) {
    EXPECT_EQ(s.matroid.size(), 7);
    EXPECT_TRUE(s.matroid.rank() == 3 || s.matroid.rank() == 4);
  }
  // MK4+e is not a relaxation of the Fano plane
  EXPECT_FALSE(is_isomorphic(builtin("MK4+e").matroid, builtin("F7-3").matroid));
}

}  // namespace
}  // namespace hpp
