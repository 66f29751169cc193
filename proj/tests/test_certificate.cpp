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

Certificate round_trip(const Certificate& c) { return certificate_from_json(Json::parse(to_json(c).dump())); }

Certificate sos_u24() {
  auto m = Matroid::uniform(2, 4);
  return {*certify_pair(basis_polynomial(m), 1, 2).sos, m};
}

Certificate nonreal_p8() {
  auto m = builtin("P8").matroid;
  return {*hyperbolicity_sample_test(basis_polynomial(m)), m};
}

Certificate negative_coext() {
  auto m = builtin("CoExtP7").matroid;
  return {*search_negative(basis_polynomial(m), 6, 7), m};
}

Certificate minor_f7() {
  auto m = builtin("F7").matroid;
  auto f = builtin("F7").matroid;
  return {ForbiddenMinorCertificate{"F7", f, *has_minor(m, f)}, m};
}

TEST(CertificateJson, SosRoundTrip) {
  auto c = sos_u24();
  auto j = to_json(c);
  EXPECT_EQ(j["schema_version"], kCertificateSchemaVersion);
  EXPECT_EQ(j["type"], "sos");
  EXPECT_EQ(j["gram"][0][1], "1/2");
  auto back = round_trip(c);
  EXPECT_TRUE(verify_certificate(back, Matroid::uniform(2, 4)));
  EXPECT_FALSE(certifies_not_hpp(back));
}

TEST(CertificateJson, DisproofsRoundTrip) {
  for (const auto& c : {nonreal_p8(), negative_coext(), minor_f7()}) {
    auto back = round_trip(c);
    EXPECT_EQ(std::string(certificate_type(back)), certificate_type(c));
    std::string why;
    EXPECT_TRUE(verify_certificate(back, c.subject, &why)) << certificate_type(c) << ": " << why;
    EXPECT_TRUE(certifies_not_hpp(back));
  }
}

TEST(CertificateJson, DualRoundTrip) {
  auto m = builtin("V8").matroid;
  auto res = certify_pair(basis_polynomial(m), 1, 2);
  ASSERT_TRUE(res.dual);
  Certificate c{*res.dual, m};
  auto back = round_trip(c);
  EXPECT_EQ(to_json(back)["type"], "dual_psd");
  std::string why;
  EXPECT_TRUE(verify_certificate(back, m, &why)) << why;
  auto& a = std::get<DualPSDCertificate>(back.body).a;
  a(0, 0) = a(0, 0) + 1;
  EXPECT_FALSE(verify_body(back));
}

TEST(CertificateJson, MalformedInput) {
  auto j = to_json(sos_u24());
  j["type"] = "mystery";
  EXPECT_THROW(certificate_from_json(j), Error);
  auto k = to_json(sos_u24());
  k.erase("gram");
  try {
    certificate_from_json(k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
  }
}

TEST(Tampering, NegativeValue) {
  auto c = negative_coext();
  std::get<NegativePointCertificate>(c.body).value += 1;
  std::string why;
  EXPECT_FALSE(verify_body(c, &why));
  EXPECT_FALSE(why.empty());
}

TEST(Tampering, SosGram) {
  auto c = sos_u24();
  auto& g = std::get<SOSCertificate>(c.body).gram;
  g(0, 0) = 2;
  EXPECT_FALSE(verify_body(c));
}

TEST(Tampering, NonRealDirection) {
  auto c = nonreal_p8();
  auto& w = std::get<NonRealWitness>(c.body);
  w.v.pop_back();
  EXPECT_FALSE(verify_body(c));
}

TEST(Tampering, MinorWitness) {
  auto c = minor_f7();
  auto& w = std::get<ForbiddenMinorCertificate>(c.body);
  std::swap(w.witness.relabeling[0], w.witness.relabeling[6]);
  // relabeling the Fano plane by a transposition usually breaks equality
  if (!verify_minor_witness(c.subject, w.minor, w.witness)) {
    EXPECT_FALSE(verify_body(c));
  }
  auto d = minor_f7();
  std::get<ForbiddenMinorCertificate>(d.body).minor = Matroid::uniform(3, 7);
  EXPECT_FALSE(verify_body(d));
}

TEST(Tampering, NotInForbiddenList) {
  auto m = builtin("P8").matroid;
  auto u = Matroid::uniform(2, 4);
  auto w = has_minor(m, u);
  ASSERT_TRUE(w);
  Certificate c{ForbiddenMinorCertificate{"U24", u, *w}, m};
  std::string why;
  EXPECT_FALSE(verify_body(c, &why));
  EXPECT_NE(why.find("forbidden"), std::string::npos);
}

TEST(Subject, MustBeMinorOfTarget) {
  auto c = nonreal_p8();
  std::string why;
  EXPECT_FALSE(verify_certificate(c, Matroid::uniform(2, 4), &why));
  EXPECT_NE(why.find("minor"), std::string::npos);
  // a minor's certificate applies to larger matroids, including via duality
  auto big = free_extension(builtin("P8").matroid);
  EXPECT_TRUE(verify_certificate(c, big));
  EXPECT_TRUE(verify_certificate(c, dual(big)));
}

}  // namespace
}  // namespace hpp
