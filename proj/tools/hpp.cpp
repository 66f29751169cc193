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

// hpp: command line front end.
//
// Exit codes: 0 decided, 2 inconclusive, 1 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hpp/hpp.hpp"

namespace {

constexpr int kDecided = 0;
constexpr int kError = 1;
constexpr int kInconclusive = 2;

using hpp::Json;

void emit(const Json& j, const std::string& path) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw hpp::Error(hpp::Errc::ParseError, "cannot write " + path);
  out << j.dump(2) << "\n";
}

Json envelope(const std::string& command, const std::string& subject) {
  return Json{{"schema_version", hpp::kReportSchemaVersion}, {"command", command}, {"matroid", subject}};
}

hpp::Mask parse_flat(const std::string& text) {
  std::vector<int> elems;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) elems.push_back(std::stoi(tok));
  return hpp::mask_of(elems);
}

hpp::PairConvention parse_convention(const std::string& s) {
  if (s == "h-nonzero") return hpp::PairConvention::HNonzero;
  if (s == "e-nonzero") return hpp::PairConvention::ENonzero;
  throw hpp::Error(hpp::Errc::ParseError, "unknown convention '" + s + "'");
}

void print_verdict(std::ostream& out, const hpp::Verdict& v) {
  out << (v.id.empty() ? "matroid" : v.id) << ": " << hpp::status_name(v.status) << "\n";
  for (const auto& p : v.provenance) out << "  " << p << "\n";
  if (!v.reason.empty()) out << "  reason: " << v.reason << "\n";
  for (const auto& c : v.certificates) out << "  certificate: " << hpp::certificate_type(c) << "\n";
}

int verdict_exit(hpp::Status s) {
  return s == hpp::Status::HPP || s == hpp::Status::NOT_HPP ? kDecided : kInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"half-plane property toolkit for matroids"};
  app.require_subcommand(1);

  std::string target, json_path, convention = "h-nonzero";
  int pi = 0, pj = 0;

  auto* list = app.add_subcommand("list", "builtin matroid names");

  auto* check = app.add_subcommand("check", "classify one matroid");
  check->add_option("matroid", target, "builtin name or catalog file")->required();
  check->add_option("--json", json_path, "write the verdict as JSON ('-' for stdout)");
  check->add_option("--convention", convention, "h-nonzero or e-nonzero");

  std::string catalog_path, forbidden_path;
  unsigned jobs = 1;
  auto* classify = app.add_subcommand("classify", "classify every entry of a catalog file");
  classify->add_option("catalog", catalog_path, "catalog file")->required();
  classify->add_option("--forbidden", forbidden_path, "extra excluded minors (catalog file)");
  classify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  classify->add_option("--json", json_path, "write the report as JSON");

  auto* sos = app.add_subcommand("sos", "SOS certificate for one Rayleigh difference");
  auto* dual_cert = app.add_subcommand("dual-cert", "certificate that a Rayleigh difference is not SOS");
  for (auto* sc : {sos, dual_cert}) {
    sc->add_option("matroid", target)->required();
    sc->add_option("--i", pi)->required();
    sc->add_option("--j", pj)->required();
    sc->add_option("--json", json_path, "write the certificate as JSON");
  }

  bool count = false;
  auto* hyper = app.add_subcommand("hyperbolicity", "{0,1} line restriction test");
  hyper->add_option("matroid", target)->required();
  hyper->add_flag("--count", count, "count every failing pair");
  hyper->add_option("--convention", convention, "h-nonzero or e-nonzero");
  hyper->add_option("--json", json_path);

  auto* negative = app.add_subcommand("negative", "search a point with negative Rayleigh difference");
  negative->add_option("matroid", target)->required();
  negative->add_option("--i", pi);
  negative->add_option("--j", pj);
  negative->add_option("--json", json_path);

  std::string flat_text;
  auto* face = app.add_subcommand("face", "face matroid of a flat");
  face->add_option("matroid", target)->required();
  face->add_option("--flat", flat_text, "comma separated elements")->required();
  face->add_option("--json", json_path);

  auto* ingleton = app.add_subcommand("ingleton", "Ingleton violation and Vamos-like search");
  ingleton->add_option("matroid", target)->required();
  ingleton->add_option("--json", json_path);

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "verify a certificate against a matroid");
  verify->add_option("certificate", cert_path)->required();
  verify->add_option("matroid", target)->required();

  CLI11_PARSE(app, argc, argv);
  // with --json - the text summary moves to stderr
  std::ostream& out = json_path == "-" ? std::cerr : std::cout;

  try {
    if (list->parsed()) {
      for (const auto& n : hpp::builtin_names()) out << n << "\n";
      return kDecided;
    }

    if (check->parsed()) {
      auto entry = hpp::resolve_matroid(target);
      hpp::PipelineConfig cfg;
      cfg.convention = parse_convention(convention);
      hpp::Classifier cl(hpp::seed_forbidden_minors(), cfg);
      auto v = cl.classify(entry.matroid, entry.name);
      print_verdict(out, v);
      Json j = envelope("check", entry.name);
      j["verdict"] = hpp::verdict_json(v);
      emit(j, json_path);
      return verdict_exit(v.status);
    }

    if (classify->parsed()) {
      auto entries = hpp::parse_catalog_file(catalog_path);
      auto forbidden = hpp::seed_forbidden_minors();
      if (!forbidden_path.empty())
        for (auto& e : hpp::parse_catalog_file(forbidden_path)) forbidden.push_back(std::move(e));
      hpp::Classifier cl(std::move(forbidden));
      auto rep = hpp::classify_catalog(entries, cl, jobs);
      for (const auto& v : rep.verdicts) out << v.id << "\t" << hpp::status_name(v.status) << "\n";
      for (const auto& [s, k] : rep.counts) out << "# " << hpp::status_name(s) << " " << k << "\n";
      emit(hpp::report_json(rep), json_path);
      const bool all_decided = rep.counts[hpp::Status::CANDIDATE_HPP] + rep.counts[hpp::Status::UNDETECTED] == 0;
      return all_decided ? kDecided : kInconclusive;
    }

    if (sos->parsed() || dual_cert->parsed()) {
      auto entry = hpp::resolve_matroid(target);
      const hpp::Poly h = hpp::basis_polynomial(entry.matroid);
      hpp::SosConfig cfg;
      cfg.try_dual = dual_cert->parsed();
      auto res = hpp::certify_pair(h, pi, pj, cfg);
      out << entry.name << " pair (" << pi << "," << pj << "): " << hpp::sos_outcome_name(res.outcome)
                << " lambda_min=" << res.lambda_min << "\n";
      Json j = envelope(sos->parsed() ? "sos" : "dual-cert", entry.name);
      j["outcome"] = hpp::sos_outcome_name(res.outcome);
      j["lambda_min"] = res.lambda_min;
      if (sos->parsed() && res.sos) {
        j["certificate"] = hpp::to_json({*res.sos, entry.matroid});
        for (const auto& [d, s] : hpp::sos_terms(*res.sos)) out << "  " << d.get_str() << " * (" << s.str() << ")^2\n";
      }
      if (dual_cert->parsed() && res.dual) j["certificate"] = hpp::to_json({*res.dual, entry.matroid});
      emit(j, json_path);
      const bool found = sos->parsed() ? res.sos.has_value() : res.dual.has_value();
      return found ? kDecided : kInconclusive;
    }

    if (hyper->parsed()) {
      auto entry = hpp::resolve_matroid(target);
      const auto scan =
          hpp::hyperbolicity_scan(hpp::basis_polynomial(entry.matroid), count, parse_convention(convention));
      out << entry.name << ": " << scan.pairs_tested << " pairs tested, " << scan.failing_pairs
                << " failing\n";
      Json j = envelope("hyperbolicity", entry.name);
      j["pairs_tested"] = scan.pairs_tested;
      j["failing_pairs"] = scan.failing_pairs;
      if (scan.first_witness) j["certificate"] = hpp::to_json({*scan.first_witness, entry.matroid});
      emit(j, json_path);
      return scan.first_witness ? kDecided : kInconclusive;
    }

    if (negative->parsed()) {
      auto entry = hpp::resolve_matroid(target);
      const hpp::Poly h = hpp::basis_polynomial(entry.matroid);
      auto c = (pi && pj) ? hpp::search_negative(h, pi, pj) : hpp::search_negative_any(h);
      Json j = envelope("negative", entry.name);
      if (c) {
        out << entry.name << ": Delta_" << c->i << "," << c->j << " = " << hpp::to_string(c->value) << " at (";
        for (std::size_t k = 0; k < c->point.size(); ++k) out << (k ? "," : "") << c->point[k];
        out << ")\n";
        j["certificate"] = hpp::to_json({*c, entry.matroid});
      } else {
        out << entry.name << ": no negative point found\n";
      }
      emit(j, json_path);
      return c ? kDecided : kInconclusive;
    }

    if (face->parsed()) {
      auto entry = hpp::resolve_matroid(target);
      const hpp::Mask s = parse_flat(flat_text);
      const auto mf = hpp::polytope_face_matroid(entry.matroid, s);
      const auto h = hpp::basis_polynomial(mf);
      out << "flat " << hpp::format_set(s) << " rank " << entry.matroid.rank(s) << "\n";
      out << "bases " << mf.bases().size() << "\n";
      out << "h = " << h.str() << "\n";
      Json j = envelope("face", entry.name);
      j["flat"] = hpp::elements_of(s);
      j["face_matroid"] = hpp::matroid_json(mf);
      j["polynomial"] = h.str();
      emit(j, json_path);
      return kDecided;
    }

    if (ingleton->parsed()) {
      auto entry = hpp::resolve_matroid(target);
      Json j = envelope("ingleton", entry.name);
      auto viol = hpp::ingleton_search(entry.matroid);
      if (viol) {
        out << "violation:";
        for (auto p : viol->sets) out << " " << hpp::format_set(p);
        out << " lhs=" << viol->value.lhs << " rhs=" << viol->value.rhs << "\n";
        Json sets = Json::array();
        for (auto p : viol->sets) sets.push_back(hpp::elements_of(p));
        j["violation"] = {{"sets", sets}, {"lhs", viol->value.lhs}, {"rhs", viol->value.rhs}};
      } else {
        out << "no violation among disjoint sets of size <= 2\n";
      }
      if (auto w = hpp::is_vamos_like(entry.matroid)) {
        out << "vamos-like:";
        for (auto p : w->pairs) out << " " << hpp::format_set(p);
        out << " K=" << hpp::format_set(w->k) << "\n";
        j["vamos_like"] = true;
      } else {
        j["vamos_like"] = false;
      }
      emit(j, json_path);
      return kDecided;
    }

    if (verify->parsed()) {
      auto entry = hpp::resolve_matroid(target);
      std::ifstream in(cert_path);
      if (!in) throw hpp::Error(hpp::Errc::ParseError, "cannot read " + cert_path);
      Json raw = Json::parse(in);
      if (raw.contains("certificate")) raw = raw["certificate"];
      else if (raw.contains("verdict") && !raw["verdict"]["certificates"].empty()) raw = raw["verdict"]["certificates"][0];
      const auto cert = hpp::certificate_from_json(raw);
      std::string why;
      if (hpp::verify_certificate(cert, entry.matroid, &why)) {
        out << "valid " << hpp::certificate_type(cert) << " certificate\n";
        return kDecided;
      }
      out << "invalid: " << why << "\n";
      return kError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
