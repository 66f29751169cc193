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

// Classification driver.
//
// Stages, in order: reduce (loops, parallel elements, components, small
// rank or corank, duality), excluded-minor scan, single-element minors,
// SOS certification of one Rayleigh difference, {0,1} hyperbolicity
// sampling, negative-point search.

#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hpp/catalog.hpp"
#include "hpp/certificate.hpp"
#include "hpp/error.hpp"
#include "hpp/matroid.hpp"
#include "hpp/negsearch.hpp"
#include "hpp/poly.hpp"
#include "hpp/realroot.hpp"
#include "hpp/sos.hpp"

namespace hpp {

enum class Status { HPP, NOT_HPP, CANDIDATE_HPP, UNDETECTED };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::HPP: return "HPP";
    case Status::NOT_HPP: return "NOT_HPP";
    case Status::CANDIDATE_HPP: return "CANDIDATE_HPP";
    case Status::UNDETECTED: return "UNDETECTED";
  }
  return "?";
}

struct Verdict {
  std::string id;
  Status status = Status::UNDETECTED;
  std::vector<Certificate> certificates;
  std::vector<std::string> provenance;  // one line per stage that fired
  std::string reason;
};

struct PipelineConfig {
  SosConfig sos = [] {
    SosConfig c;
    c.try_dual = false;
    return c;
  }();
  bool hyperbolicity = true;
  PairConvention convention = PairConvention::HNonzero;
  bool negative_search = true;
  NegSearchBudget negative = [] {
    NegSearchBudget b;
    b.grid_bound = 3;
    b.multistarts = 60;
    return b;
  }();
};

class Classifier {
 public:
  explicit Classifier(std::vector<CatalogEntry> forbidden = seed_forbidden_minors(), PipelineConfig cfg = {})
      : forbidden_(std::move(forbidden)), cfg_(std::move(cfg)) {}

  const PipelineConfig& config() const { return cfg_; }
  const std::vector<CatalogEntry>& forbidden() const { return forbidden_; }

  Verdict classify(const Matroid& m, const std::string& id = "") {
    const std::string key = compact_line(canonical_form(m));
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        Verdict v = it->second;
        v.id = id;
        return v;
      }
    }
    Verdict v = run(m);
    {
      std::lock_guard<std::mutex> lock(mu_);
      memo_.emplace(key, v);
    }
    v.id = id;
    return v;
  }

  std::size_t memo_size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.size();
  }

 private:
  static Verdict decided(Status s, std::string stage) {
    Verdict v;
    v.status = s;
    v.provenance.push_back(std::move(stage));
    return v;
  }

  // Carries a sub-verdict up with an extra provenance line.
  static Verdict lift(Verdict sub, const std::string& stage) {
    sub.provenance.insert(sub.provenance.begin(), stage);
    return sub;
  }

  Verdict run(const Matroid& m) {
    const int n = m.size(), r = m.rank();

    if (Mask l = loops(m)) return lift(classify(delete_elements(m, l)), "reduce: deleted loops " + format_set(l));
    const auto par = parallel_pairs(m);
    if (!par.empty()) {
      Mask drop = 0;
      for (auto [a, b] : par) drop |= element_bit(b);
      return lift(classify(delete_elements(m, drop)), "reduce: deleted parallel elements " + format_set(drop));
    }
    if (r <= 2 || n - r <= 2) return decided(Status::HPP, "reduce: rank or corank at most 2");
    const auto comps = components(m);
    if (comps.size() > 1) return combine_components(m, comps);
    if (2 * r > n) return lift(classify(dual(m)), "reduce: dualized");

    // Stage 1.
    for (const auto& f : forbidden_) {
      const Matroid& fm = f.matroid;
      if (fm.size() > n || fm.rank() > r || fm.size() - fm.rank() > n - r) continue;
      if (auto w = has_minor(m, fm)) {
        Verdict v = decided(Status::NOT_HPP, "excluded minor " + f.name);
        v.certificates.push_back({ForbiddenMinorCertificate{f.name, fm, *w}, m});
        return v;
      }
    }

    // Stage 2.
    bool minors_hpp = true;
    std::string weak_minor;
    bool minor_undetected = false;
    for (int e = 1; e <= n; ++e) {
      const Mask b = element_bit(e);
      for (int side = 0; side < 2; ++side) {
        const Matroid minor = side == 0 ? delete_elements(m, b) : contract_elements(m, b);
        const std::string label = (side == 0 ? "M\\" : "M/") + std::to_string(e);
        Verdict sub = classify(minor);
        if (sub.status == Status::NOT_HPP) return lift(std::move(sub), "minor " + label + " is NOT_HPP");
        if (sub.status != Status::HPP) {
          minors_hpp = false;
          if (weak_minor.empty()) weak_minor = label + " is " + status_name(sub.status);
          if (sub.status == Status::UNDETECTED) minor_undetected = true;
        }
      }
    }

    // Stage 3.
    const Poly h = basis_polynomial(m);
    struct PairInfo {
      int i, j;
      std::size_t support;
      double lambda = 0.0;
    };
    std::vector<PairInfo> pairs;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const Poly d = rayleigh_difference(h, i, j);
        if (!d.is_zero()) pairs.push_back({i, j, d.size()});
      }
    std::stable_sort(pairs.begin(), pairs.end(), [](const PairInfo& a, const PairInfo& b) { return a.support < b.support; });
    bool numeric_only = false;
    std::optional<SOSCertificate> exact;
    if (!minor_undetected) {
      for (auto& p : pairs) {
        auto res = certify_pair(h, p.i, p.j, cfg_.sos);
        p.lambda = res.lambda_min;
        if (res.outcome == SosOutcome::Certified) {
          exact = std::move(res.sos);
          break;
        }
        if (res.outcome == SosOutcome::NumericOnly) numeric_only = true;
      }
    }
    if (exact) {
      const std::string pair = "(" + std::to_string(exact->i) + "," + std::to_string(exact->j) + ")";
      Verdict v = decided(minors_hpp ? Status::HPP : Status::CANDIDATE_HPP, "sos certificate for pair " + pair);
      if (!minors_hpp) v.reason = "single-element minor " + weak_minor;
      v.certificates.push_back({std::move(*exact), m});
      return v;
    }

    // Stage 4.
    if (cfg_.hyperbolicity) {
      auto scan = hyperbolicity_scan(h, false, cfg_.convention);
      if (scan.first_witness) {
        Verdict v = decided(Status::NOT_HPP, "nonreal restriction on a {0,1} line");
        v.certificates.push_back({*scan.first_witness, m});
        return v;
      }
    }

    // Stage 5: most negative SDP value first.
    if (cfg_.negative_search) {
      std::stable_sort(pairs.begin(), pairs.end(), [](const PairInfo& a, const PairInfo& b) { return a.lambda < b.lambda; });
      for (const auto& p : pairs)
        if (auto c = search_negative(h, p.i, p.j, cfg_.negative)) {
          Verdict v = decided(Status::NOT_HPP, "negative Rayleigh difference at pair (" + std::to_string(p.i) + "," +
                                                   std::to_string(p.j) + ")");
          v.certificates.push_back({std::move(*c), m});
          return v;
        }
    }

    if (numeric_only) {
      Verdict v = decided(Status::CANDIDATE_HPP, "numeric sos only");
      v.reason = "no rational Gram matrix found";
      return v;
    }
    Verdict v = decided(Status::UNDETECTED, "all tests inconclusive");
    if (minor_undetected)
      v.reason = std::string(errc_name(Errc::PreconditionUnverifiable)) + ": single-element minor " + weak_minor;
    return v;
  }

  Verdict combine_components(const Matroid& m, const std::vector<Mask>& comps) {
    Verdict out;
    out.status = Status::HPP;
    out.provenance.push_back("reduce: " + std::to_string(comps.size()) + " components");
    for (Mask c : comps) {
      Verdict sub = classify(restrict_to(m, c));
      if (sub.status == Status::NOT_HPP) return lift(std::move(sub), "component " + format_set(c) + " is NOT_HPP");
      if (sub.status == Status::UNDETECTED) {
        out.status = Status::UNDETECTED;
        out.reason = "component " + format_set(c) + " undetected";
      } else if (sub.status == Status::CANDIDATE_HPP && out.status == Status::HPP) {
        out.status = Status::CANDIDATE_HPP;
      }
      for (auto& cert : sub.certificates) out.certificates.push_back(std::move(cert));
    }
    return out;
  }

  std::vector<CatalogEntry> forbidden_;
  PipelineConfig cfg_;
  mutable std::mutex mu_;
  std::map<std::string, Verdict> memo_;
};

inline Verdict classify_one(const Matroid& m, const std::vector<CatalogEntry>& forbidden = seed_forbidden_minors(),
                            const PipelineConfig& cfg = {}) {
  Classifier c(forbidden, cfg);
  return c.classify(m);
}

// ---------------------------------------------------------------------------
// SOS-Rayleigh

enum class SosRayleigh { SOS_RAYLEIGH, NOT_SOS_RAYLEIGH, INCONCLUSIVE };

inline const char* sos_rayleigh_name(SosRayleigh s) {
  switch (s) {
    case SosRayleigh::SOS_RAYLEIGH: return "SOS_RAYLEIGH";
    case SosRayleigh::NOT_SOS_RAYLEIGH: return "NOT_SOS_RAYLEIGH";
    case SosRayleigh::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

struct SosRayleighReport {
  SosRayleigh status = SosRayleigh::INCONCLUSIVE;
  std::vector<PairSosResult> pairs;
};

/// Runs every unordered pair with dual certificates enabled.
inline SosRayleighReport sos_rayleigh_status(const Matroid& m, SosConfig cfg = {}) {
  cfg.try_dual = true;
  const Poly h = basis_polynomial(m);
  SosRayleighReport out;
  bool all = true, some_dual = false;
  for (int i = 1; i <= m.size(); ++i)
    for (int j = i + 1; j <= m.size(); ++j) {
      PairSosResult p;
      if (rayleigh_difference(h, i, j).is_zero()) {
        p.i = i;
        p.j = j;
        p.outcome = SosOutcome::Certified;  // zero is trivially a sum of squares
      } else {
        p = certify_pair(h, i, j, cfg);
      }
      if (p.outcome != SosOutcome::Certified) all = false;
      if (p.outcome == SosOutcome::NotSos) some_dual = true;
      out.pairs.push_back(std::move(p));
    }
  out.status = some_dual ? SosRayleigh::NOT_SOS_RAYLEIGH : all ? SosRayleigh::SOS_RAYLEIGH : SosRayleigh::INCONCLUSIVE;
  return out;
}

// ---------------------------------------------------------------------------
// Catalog reports

inline constexpr int kReportSchemaVersion = 1;

struct Report {
  std::map<Status, std::size_t> counts;
  std::vector<Verdict> verdicts;  // in entry order
};

inline Report classify_catalog(const std::vector<CatalogEntry>& entries, Classifier& classifier, unsigned jobs = 1) {
  Report rep;
  rep.verdicts.resize(entries.size());
  for (Status s : {Status::HPP, Status::NOT_HPP, Status::CANDIDATE_HPP, Status::UNDETECTED}) rep.counts[s] = 0;
  if (entries.empty()) return rep;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < entries.size(); k = next++)
      rep.verdicts[k] = classifier.classify(entries[k].matroid, entries[k].name);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(entries.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& v : rep.verdicts) ++rep.counts[v.status];
  return rep;
}

inline Report classify_catalog(const std::vector<CatalogEntry>& entries, const PipelineConfig& cfg = {},
                               unsigned jobs = 1) {
  Classifier c(seed_forbidden_minors(), cfg);
  return classify_catalog(entries, c, jobs);
}

inline Json verdict_json(const Verdict& v) {
  Json certs = Json::array();
  for (const auto& c : v.certificates) certs.push_back(to_json(c));
  return Json{{"id", v.id},
              {"status", status_name(v.status)},
              {"provenance", v.provenance},
              {"reason", v.reason},
              {"certificates", std::move(certs)}};
}

inline Json report_json(const Report& rep) {
  Json counts = Json::object();
  for (const auto& [s, k] : rep.counts) counts[status_name(s)] = k;
  Json verdicts = Json::array();
  for (const auto& v : rep.verdicts) verdicts.push_back(verdict_json(v));
  return Json{{"schema_version", kReportSchemaVersion}, {"counts", std::move(counts)}, {"verdicts", std::move(verdicts)}};
}

}  // namespace hpp
