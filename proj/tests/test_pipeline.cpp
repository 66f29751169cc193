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

#include "support.hpp"

namespace hpp {
namespace {

bool has_type(const Verdict& v, const char* type) {
  for (const auto& c : v.certificates)
    if (std::string(certificate_type(c)) == type) return true;
  return false;
}

void expect_consistent(const Verdict& v, const Matroid& m) {
  bool pro = false, con = false;
  for (const auto& c : v.certificates) {
    std::string why;
    EXPECT_TRUE(verify_certificate(c, m, &why)) << v.id << ": " << why;
    (certifies_not_hpp(c) ? con : pro) = true;
  }
  EXPECT_FALSE(pro && con) << v.id;
  if (v.status == Status::NOT_HPP) {
    EXPECT_TRUE(con) << v.id;
  }
  if (v.status == Status::HPP || v.status == Status::CANDIDATE_HPP) {
    EXPECT_FALSE(con) << v.id;
  }
}

TEST(ClassifyOne, SmallRankIsHpp) {
  auto v = classify_one(Matroid::uniform(2, 6));
  EXPECT_EQ(v.status, Status::HPP);
  EXPECT_FALSE(v.provenance.empty());
}

TEST(ClassifyOne, UniformSos) {
  auto m = Matroid::uniform(3, 6);
  auto v = classify_one(m);
  EXPECT_EQ(v.status, Status::HPP);
  EXPECT_TRUE(has_type(v, "sos"));
  expect_consistent(v, m);
}

TEST(ClassifyOne, FanoExcludedMinor) {
  auto m = builtin("F7").matroid;
  auto v = classify_one(m);
  EXPECT_EQ(v.status, Status::NOT_HPP);
  EXPECT_TRUE(has_type(v, "forbidden_minor"));
  expect_consistent(v, m);
}

TEST(ClassifyOne, P8NonReal) {
  auto m = builtin("P8").matroid;
  auto v = classify_one(m);
  EXPECT_EQ(v.status, Status::NOT_HPP);
  EXPECT_TRUE(has_type(v, "nonreal_direction"));
  expect_consistent(v, m);
}

TEST(ClassifyOne, VamosHpp) {
  auto m = builtin("V8").matroid;
  auto v = classify_one(m);
  EXPECT_EQ(v.status, Status::HPP);
  EXPECT_TRUE(has_type(v, "sos"));
  expect_consistent(v, m);
}

TEST(ClassifyOne, M431NegativePoint) {
  auto m = builtin("M431").matroid;
  auto v = classify_one(m);
  EXPECT_EQ(v.status, Status::NOT_HPP);
  expect_consistent(v, m);
}

TEST(ClassifyOne, LoopsAndParallelsReduce) {
  auto m = direct_sum(Matroid::uniform(3, 6), Matroid::from_bases(2, 1, std::vector<Mask>{mask_of({1}), mask_of({2})}));
  auto v = classify_one(m);
  EXPECT_EQ(v.status, Status::HPP);
  auto loopy = direct_sum(builtin("F7").matroid, Matroid::from_bases(1, 0, std::vector<Mask>{0}));
  auto w = classify_one(loopy);
  EXPECT_EQ(w.status, Status::NOT_HPP);
  expect_consistent(w, loopy);
}

TEST(SosRayleighStatus, Vamos) {
  auto rep = sos_rayleigh_status(builtin("V8").matroid);
  EXPECT_EQ(rep.status, SosRayleigh::NOT_SOS_RAYLEIGH);
  int dual_pairs = 0, certified = 0;
  for (const auto& p : rep.pairs) {
    if (p.outcome == SosOutcome::NotSos) ++dual_pairs;
    if (p.outcome == SosOutcome::Certified) ++certified;
  }
  EXPECT_EQ(dual_pairs, 4);
  EXPECT_EQ(certified, 24);
}

TEST(SosRayleighStatus, Uniform) {
  EXPECT_EQ(sos_rayleigh_status(Matroid::uniform(2, 4)).status, SosRayleigh::SOS_RAYLEIGH);
  EXPECT_EQ(sos_rayleigh_status(builtin("MK4").matroid).status, SosRayleigh::SOS_RAYLEIGH);
}

TEST(Catalog, EmptyReport) {
  auto rep = classify_catalog({});
  EXPECT_TRUE(rep.verdicts.empty());
  EXPECT_EQ(rep.counts[Status::HPP], 0u);
  auto j = report_json(rep);
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_TRUE(j["verdicts"].empty());
}

TEST(Catalog, BuiltinVerdicts) {
  std::vector<CatalogEntry> entries;
  for (const char* name : {"U24", "U36", "MK4", "F7", "F7-", "F7--", "F7-3", "MK4+e", "P7", "CoExtP7", "M548", "P8",
                           "P8'", "P8''", "P8'''", "V8", "M431", "S8", "Pappus"})
    entries.push_back(builtin(name));
  auto rep = classify_catalog(entries, PipelineConfig{}, 2);
  ASSERT_EQ(rep.verdicts.size(), entries.size());
  std::map<std::string, Status> got;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    EXPECT_EQ(rep.verdicts[k].id, entries[k].name);
    got[entries[k].name] = rep.verdicts[k].status;
    expect_consistent(rep.verdicts[k], entries[k].matroid);
  }
  for (const char* name : {"U24", "U36", "MK4", "P7", "V8"}) EXPECT_EQ(got[name], Status::HPP) << name;
  for (const char* name : {"F7", "F7-", "F7--", "F7-3", "MK4+e", "CoExtP7", "M548", "P8", "P8'", "P8''", "P8'''",
                           "M431", "S8", "Pappus"})
    EXPECT_EQ(got[name], Status::NOT_HPP) << name;
  std::size_t total = 0;
  for (const auto& [s, k] : rep.counts) total += k;
  EXPECT_EQ(total, entries.size());
}

TEST(Catalog, JobsDoNotChangeResults) {
  std::vector<CatalogEntry> entries{builtin("U36"), builtin("P7"), builtin("F7*"), builtin("MK4")};
  auto a = classify_catalog(entries, PipelineConfig{}, 1);
  auto b = classify_catalog(entries, PipelineConfig{}, 4);
  for (std::size_t k = 0; k < entries.size(); ++k) EXPECT_EQ(a.verdicts[k].status, b.verdicts[k].status);
  EXPECT_EQ(report_json(a)["counts"], report_json(b)["counts"]);
}

TEST(Invariants, DualityConsistency) {
  Classifier c;
  for (const char* name : {"P7", "F7-", "CoExtP7", "M431", "U36"}) {
    auto m = builtin(name).matroid;
    EXPECT_EQ(c.classify(m).status, c.classify(dual(m)).status) << name;
  }
}

TEST(Invariants, ExcludedMinorMonotone) {
  Classifier c;
  auto f = builtin("F7-").matroid;
  for (const auto& big : {free_extension(f), free_coextension(f), direct_sum(f, Matroid::uniform(1, 2))}) {
    auto v = c.classify(big);
    EXPECT_EQ(v.status, Status::NOT_HPP);
    expect_consistent(v, big);
  }
}

TEST(Invariants, FacesOfHppMatroids) {
  // faces of the matroid polytope of an HPP matroid are HPP
  for (const char* name : {"MK4", "U36", "P7"}) {
    auto m = builtin(name).matroid;
    for (Mask f : flats(m)) {
      if (f == 0 || f == m.ground()) continue;
      auto face = polytope_face_matroid(m, f);
      EXPECT_EQ(classify_one(face).status, Status::HPP) << name << " flat " << format_set(f);
    }
  }
}

TEST(Invariants, MemoizesCanonicalForms) {
  Classifier c;
  auto m = builtin("P7").matroid;
  c.classify(m);
  const auto size = c.memo_size();
  c.classify(relabel(m, {7, 6, 5, 4, 3, 2, 1}));
  EXPECT_EQ(c.memo_size(), size);
}

TEST(Json, VerdictFields) {
  auto v = classify_one(builtin("P8").matroid);
  v.id = "P8";
  auto j = verdict_json(v);
  EXPECT_EQ(j["id"], "P8");
  EXPECT_EQ(j["status"], "NOT_HPP");
  ASSERT_FALSE(j["certificates"].empty());
  EXPECT_EQ(j["certificates"][0]["schema_version"], kCertificateSchemaVersion);
}

}  // namespace
}  // namespace hpp
