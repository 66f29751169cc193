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

// Certificates as a tagged union, their JSON form, and an exact verifier.
//
// Every certificate names the matroid it talks about (the subject). The
// subject is often not the matroid a user asked about: the pipeline works on
// simple connected cores, duals and single-element minors. The verifier
// checks that the subject is isomorphic to a minor of M or of its dual
// before checking the body against the subject's basis polynomial.

#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "hpp/catalog.hpp"
#include "hpp/error.hpp"
#include "hpp/matroid.hpp"
#include "hpp/negsearch.hpp"
#include "hpp/poly.hpp"
#include "hpp/realroot.hpp"
#include "hpp/sos.hpp"

namespace hpp {

inline constexpr int kCertificateSchemaVersion = 1;

struct ForbiddenMinorCertificate {
  std::string minor_name;
  Matroid minor;
  MinorWitness witness;  // applied to the subject
};

using CertificateBody = std::variant<SOSCertificate, DualPSDCertificate, NegativePointCertificate, NonRealWitness,
                                     ForbiddenMinorCertificate>;

struct Certificate {
  CertificateBody body;
  Matroid subject;
};

inline const char* certificate_type(const Certificate& c) {
  switch (c.body.index()) {
    case 0: return "sos";
    case 1: return "dual_psd";
    case 2: return "negative_point";
    case 3: return "nonreal_direction";
    case 4: return "forbidden_minor";
  }
  return "?";
}

/// True for the certificate kinds that disprove the half-plane property.
inline bool certifies_not_hpp(const Certificate& c) {
  return std::holds_alternative<NegativePointCertificate>(c.body) || std::holds_alternative<NonRealWitness>(c.body) ||
         std::holds_alternative<ForbiddenMinorCertificate>(c.body);
}

// ---------------------------------------------------------------------------
// JSON

using Json = nlohmann::json;

namespace detail {

inline Json rationals_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

inline std::vector<Rational> rationals_from(const Json& a) {
  std::vector<Rational> v;
  for (const auto& x : a) v.push_back(x.is_number_integer() ? Rational(x.get<long>()) : parse_rational(x.get<std::string>()));
  return v;
}

inline Json matrix_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline QMatrix matrix_from(const Json& rows) {
  const std::size_t n = rows.size();
  const std::size_t c = n == 0 ? 0 : rows[0].size();
  QMatrix m(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != c) throw Error(Errc::ParseError, "ragged matrix in certificate");
    auto row = rationals_from(rows[i]);
    for (std::size_t j = 0; j < c; ++j) m(i, j) = row[j];
  }
  return m;
}

inline Json ldl_json(const LdlResult& f) {
  return Json{{"perm", f.perm}, {"pivots", rationals_json(f.pivots)}, {"lower", matrix_json(f.lower)}};
}

inline LdlResult ldl_from(const Json& j) {
  LdlResult f;
  f.perm = j.at("perm").get<std::vector<std::size_t>>();
  f.pivots = rationals_from(j.at("pivots"));
  f.lower = matrix_from(j.at("lower"));
  f.psd = true;
  f.positive_definite = true;
  for (const auto& d : f.pivots) {
    if (d < 0) f.psd = false;
    if (d <= 0) f.positive_definite = false;
  }
  return f;
}

inline Json sets_json(const std::vector<Mask>& sets) {
  Json a = Json::array();
  for (Mask s : sets) a.push_back(elements_of(s));
  return a;
}

inline Mask mask_from(const Json& a) { return mask_of(a.get<std::vector<int>>()); }

}  // namespace detail

inline Json matroid_json(const Matroid& m) {
  return Json{{"n", m.size()}, {"r", m.rank()}, {"nonbases", detail::sets_json(m.nonbases())}};
}

inline Matroid matroid_from_json(const Json& j) {
  std::vector<Mask> nb;
  for (const auto& s : j.at("nonbases")) nb.push_back(detail::mask_from(s));
  return Matroid::from_nonbases(j.at("n").get<int>(), j.at("r").get<int>(), nb);
}

inline Json to_json(const Certificate& c) {
  Json out{{"schema_version", kCertificateSchemaVersion}, {"type", certificate_type(c)}};
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, SOSCertificate>) {
          out["i"] = b.i;
          out["j"] = b.j;
          Json mono = Json::array();
          for (MonoKey k : b.monomials) mono.push_back(exponents_of(k, b.nvars));
          out["monomials"] = std::move(mono);
          out["gram"] = detail::matrix_json(b.gram);
          out["ldl"] = detail::ldl_json(b.ldl);
        } else if constexpr (std::is_same_v<T, DualPSDCertificate>) {
          out["i"] = b.i;
          out["j"] = b.j;
          out["A"] = detail::matrix_json(b.a);
          out["ldl"] = detail::ldl_json(b.ldl);
        } else if constexpr (std::is_same_v<T, NegativePointCertificate>) {
          out["i"] = b.i;
          out["j"] = b.j;
          out["x"] = detail::rationals_json(b.point);
          out["value"] = to_string(b.value);
        } else if constexpr (std::is_same_v<T, NonRealWitness>) {
          out["e"] = b.e;
          out["v"] = b.v;
          out["real_roots"] = b.real_root_count;
          out["degree"] = b.degree;
        } else {
          out["minor_name"] = b.minor_name;
          out["minor"] = matroid_json(b.minor);
          out["deleted"] = elements_of(b.witness.deleted);
          out["contracted"] = elements_of(b.witness.contracted);
          out["relabeling"] = b.witness.relabeling;
        }
      },
      c.body);
  out["subject"] = matroid_json(c.subject);
  return out;
}

inline Certificate certificate_from_json(const Json& j) {
  try {
    Matroid subject = matroid_from_json(j.at("subject"));
    const std::string type = j.at("type").get<std::string>();
    const int n = subject.size();
    if (type == "sos") {
      SOSCertificate s;
      s.i = j.at("i").get<int>();
      s.j = j.at("j").get<int>();
      s.nvars = n;
      for (const auto& e : j.at("monomials")) s.monomials.push_back(make_key(e.get<std::vector<int>>()));
      s.gram = detail::matrix_from(j.at("gram"));
      if (j.contains("ldl")) s.ldl = detail::ldl_from(j.at("ldl"));
      return {std::move(s), std::move(subject)};
    }
    if (type == "dual_psd") {
      DualPSDCertificate d;
      d.i = j.at("i").get<int>();
      d.j = j.at("j").get<int>();
      d.a = detail::matrix_from(j.at("A"));
      if (j.contains("ldl")) d.ldl = detail::ldl_from(j.at("ldl"));
      return {std::move(d), std::move(subject)};
    }
    if (type == "negative_point") {
      NegativePointCertificate p;
      p.i = j.at("i").get<int>();
      p.j = j.at("j").get<int>();
      p.point = detail::rationals_from(j.at("x"));
      p.value = parse_rational(j.at("value").get<std::string>());
      return {std::move(p), std::move(subject)};
    }
    if (type == "nonreal_direction") {
      NonRealWitness w;
      w.e = j.at("e").get<std::vector<int>>();
      w.v = j.at("v").get<std::vector<int>>();
      w.real_root_count = j.at("real_roots").get<int>();
      w.degree = j.at("degree").get<int>();
      return {std::move(w), std::move(subject)};
    }
    if (type == "forbidden_minor") {
      MinorWitness w;
      w.deleted = detail::mask_from(j.at("deleted"));
      w.contracted = detail::mask_from(j.at("contracted"));
      w.relabeling = j.at("relabeling").get<std::vector<int>>();
      return {ForbiddenMinorCertificate{j.value("minor_name", std::string()), matroid_from_json(j.at("minor")), w},
              std::move(subject)};
    }
    throw Error(Errc::ParseError, "unknown certificate type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("certificate json: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Verification

/// Checks the body against h_subject, exactly.
inline bool verify_body(const Certificate& c, std::string* reason = nullptr,
                        const std::vector<CatalogEntry>& forbidden = seed_forbidden_minors()) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  const int n = c.subject.size();
  auto pair_ok = [&](int i, int j) { return i >= 1 && j >= 1 && i <= n && j <= n && i != j; };
  return std::visit(
      [&](const auto& b) -> bool {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ForbiddenMinorCertificate>) {
          if (!verify_minor_witness(c.subject, b.minor, b.witness)) return fail("minor witness does not apply");
          for (const auto& f : forbidden)
            if (f.matroid.size() == b.minor.size() && f.matroid.rank() == b.minor.rank() &&
                is_isomorphic(f.matroid, b.minor))
              return true;
          return fail("minor is not in the forbidden list");
        } else {
          const Poly h = basis_polynomial(c.subject);
          if constexpr (std::is_same_v<T, SOSCertificate>) {
            if (!pair_ok(b.i, b.j) || b.nvars != n) return fail("pair or variable count out of range");
            return verify_sos(b, rayleigh_difference(h, b.i, b.j), reason);
          } else if constexpr (std::is_same_v<T, DualPSDCertificate>) {
            if (!pair_ok(b.i, b.j)) return fail("pair out of range");
            const Poly delta = rayleigh_difference(h, b.i, b.j);
            const GramSystem sys = gram_system(delta, b.i, b.j, monomial_basis(n, b.i, b.j, h.degree() - 1));
            return verify_dual(b, sys, reason);
          } else if constexpr (std::is_same_v<T, NegativePointCertificate>) {
            if (!pair_ok(b.i, b.j)) return fail("pair out of range");
            if (!verify_negative_point(h, b)) return fail("point does not give the stated negative value");
            return true;
          } else {
            if (static_cast<int>(b.e.size()) != n || static_cast<int>(b.v.size()) != n)
              return fail("direction length differs from the ground set");
            if (!verify_nonreal_witness(h, b)) return fail("restriction is real-rooted or counts differ");
            return true;
          }
        }
      },
      c.body);
}

/// Verifies c as a statement about m: the subject must be isomorphic to a
/// minor of m or of dual(m), and the body must check out exactly.
inline bool verify_certificate(const Certificate& c, const Matroid& m, std::string* reason = nullptr,
                               const std::vector<CatalogEntry>& forbidden = seed_forbidden_minors()) {
  const bool related = c.subject == m || has_minor(m, c.subject).has_value() ||
                       has_minor(dual(m), c.subject).has_value();
  if (!related) {
    if (reason) *reason = "subject is not a minor of the matroid or of its dual";
    return false;
  }
  return verify_body(c, reason, forbidden);
}

}  // namespace hpp
