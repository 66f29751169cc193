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

// Named matroids and the plain-text matroid formats.
//
// Text format:
//
//   # comment
//   matroid <name> n=<n> r=<r>
//   bases            (or: nonbases)
//   1 2
//   2 3
//   <blank line or end of file>
//
// Compact format, one matroid per line:
//
//   <n> <r> <non-basis>,<non-basis>,...     elements space-separated
//
// Compact entries are named M<k> with k the 0-based entry index in the file,
// so externally ordered catalogs keep their indices.

#pragma once

#include <array>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hpp/error.hpp"
#include "hpp/linalg.hpp"
#include "hpp/matroid.hpp"

namespace hpp {

struct CatalogEntry {
  std::string name;
  Matroid matroid;
  std::string provenance;
  std::size_t index = 0;  // position in the source file
};

namespace detail {

inline Matroid rank3_from_lines(int n, const std::vector<std::vector<int>>& lines) {
  std::vector<Mask> nb;
  for (const auto& l : lines) {
    // Every 3-subset of a line is a non-basis.
    for (Mask s : k_subsets(static_cast<int>(l.size()), 3)) {
      Mask m = 0;
      for (int idx : elements_of(s)) m |= element_bit(l[idx - 1]);
      nb.push_back(m);
    }
  }
  std::sort(nb.begin(), nb.end());
  nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  return Matroid::from_nonbases(n, 3, nb);
}

inline Matroid from_nonbasis_lists(int n, int r, const std::vector<std::vector<int>>& sets) {
  std::vector<Mask> nb;
  for (const auto& s : sets) nb.push_back(mask_of(s));
  return Matroid::from_nonbases(n, r, nb);
}

inline QMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
  QMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

using Point3 = std::array<Rational, 3>;

inline Point3 cross(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Pappus configuration: A1..A3 on one line, B1..B3 on another, and the
/// three cross-joins C1 = A1B2∩A2B1, C2 = A1B3∩A3B1, C3 = A2B3∩A3B2.
/// Elements: A1..A3 = 1..3, B1..B3 = 4..6, C1..C3 = 7..9.
inline Matroid pappus() {
  auto pt = [](long x, long y) { return Point3{Rational(x), Rational(y), Rational(1)}; };
  Point3 a1 = pt(0, 0), a2 = pt(1, 0), a3 = pt(3, 0);
  Point3 b1 = pt(0, 1), b2 = pt(2, 1), b3 = pt(7, 1);
  auto meet = [](const Point3& p, const Point3& q, const Point3& s, const Point3& t) {
    return cross(cross(p, q), cross(s, t));
  };
  Point3 c1 = meet(a1, b2, a2, b1), c2 = meet(a1, b3, a3, b1), c3 = meet(a2, b3, a3, b2);
  std::vector<Point3> pts{a1, a2, a3, b1, b2, b3, c1, c2, c3};
  QMatrix m(3, 9);
  for (std::size_t j = 0; j < pts.size(); ++j)
    for (std::size_t i = 0; i < 3; ++i) m(i, j) = pts[j][i];
  return Matroid::from_matrix(m);
}

inline Matroid builtin_matroid(const std::string& name, std::string& provenance);

}  // namespace detail

/// The sorted list of names accepted by builtin() (a trailing '*' on any of
/// them selects the dual).
inline std::vector<std::string> builtin_names() {
  return {"Ex4",  "U24",        "U25",     "U26",     "U35",     "U36",        "U37",    "U47",
          "U48",  "F7",         "F7-",     "F7--",    "F7-3",    "MK4",        "MK4+e",  "P7",
          "CoExtP7", "M430",    "M548",    "P8",      "M575",    "P8'",        "M570",   "P8''",
          "M467", "P8'''",      "M466",    "V8",      "M502",    "M431",       "S8",     "Pappus",
          "NonPappus", "NonPappus9+e", "Golay12"};
}

/// Builds a named matroid from its defining data.
inline CatalogEntry builtin(const std::string& name) {
  if (!name.empty() && name.back() == '*') {
    CatalogEntry base = builtin(name.substr(0, name.size() - 1));
    return {name, dual(base.matroid), "dual of " + base.name + " (" + base.provenance + ")", 0};
  }
  std::string provenance;
  Matroid m = detail::builtin_matroid(name, provenance);
  return {name, std::move(m), provenance, 0};
}

namespace detail {

inline Matroid builtin_matroid(const std::string& name, std::string& prov) {
  // Uniform matroids: U<r><n> with single digits, or U<r>_<n>.
  if (name.size() >= 3 && name[0] == 'U' && std::isdigit(static_cast<unsigned char>(name[1]))) {
    int r = 0, n = 0;
    auto us = name.find('_');
    if (us != std::string::npos) {
      r = std::stoi(name.substr(1, us - 1));
      n = std::stoi(name.substr(us + 1));
    } else if (name.size() == 3 && std::isdigit(static_cast<unsigned char>(name[2]))) {
      r = name[1] - '0';
      n = name[2] - '0';
    } else {
      throw Error(Errc::UnknownName, "cannot read uniform matroid name '" + name + "'");
    }
    prov = "uniform matroid U_{" + std::to_string(r) + "," + std::to_string(n) + "}";
    return Matroid::uniform(r, n);
  }
  const std::vector<std::vector<int>> fano_lines{{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6},
                                                 {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
  if (name == "Ex4") {
    prov = "rank-2 matroid on 4 elements with the single non-basis {1,3}";
    return Matroid::from_bases(4, 2, std::vector<std::vector<int>>{{1, 2}, {2, 3}, {1, 4}, {2, 4}, {3, 4}});
  }
  if (name == "F7") {
    prov = "Fano plane, lines 123 145 167 246 257 347 356";
    return rank3_from_lines(7, fano_lines);
  }
  if (name == "F7-") {
    prov = "non-Fano: Fano with line 356 relaxed";
    return relax(rank3_from_lines(7, fano_lines), mask_of({3, 5, 6}));
  }
  if (name == "F7--") {
    prov = "Fano with lines 356 and 347 relaxed";
    return relax(relax(rank3_from_lines(7, fano_lines), mask_of({3, 5, 6})), mask_of({3, 4, 7}));
  }
  if (name == "F7-3") {
    prov = "Fano with the non-concurrent lines 356, 347, 246 relaxed";
    Matroid f = rank3_from_lines(7, fano_lines);
    return relax(relax(relax(f, mask_of({3, 5, 6})), mask_of({3, 4, 7})), mask_of({2, 4, 6}));
  }
  if (name == "MK4") {
    // Signed incidence vectors of the edges 12 13 14 23 24 34, vertex 4 grounded.
    prov = "cycle matroid of K4, edges 12 13 14 23 24 34";
    return Matroid::from_matrix(int_matrix({{1, 1, 1, 0, 0, 0}, {-1, 0, 0, 1, 1, 0}, {0, -1, 0, -1, 0, 1}}));
  }
  if (name == "MK4+e") {
    prov = "free extension of M(K4)";
    return free_extension(builtin_matroid("MK4", prov));
  }
  if (name == "P7") {
    // Triangle a,b,c (1,2,3), edge midpoints ab,bc,ac (4,5,6), and the
    // midpoint of ab-bc (7); b is the tip of the spike.
    prov = "ternary 3-spike P7, lines 124 235 136 457 267";
    return rank3_from_lines(7, {{1, 2, 4}, {2, 3, 5}, {1, 3, 6}, {4, 5, 7}, {2, 6, 7}});
  }
  if (name == "CoExtP7" || name == "M430") {
    prov = "free coextension of P7";
    std::string ignore;
    return free_coextension(builtin_matroid("P7", ignore));
  }
  if (name == "M548") {
    prov = "dual of the free coextension of P7";
    std::string ignore;
    return dual(builtin_matroid("CoExtP7", ignore));
  }
  if (name == "P8" || name == "M575") {
    prov = "column matroid of the rational 4x8 P8 matrix";
    return Matroid::from_matrix(int_matrix(
        {{1, 0, 0, 0, 0, 1, 1, 2}, {0, 1, 0, 0, 1, 0, 1, 1}, {0, 0, 1, 0, 1, 1, 0, 1}, {0, 0, 0, 1, 2, 1, 1, 0}}));
  }
  std::string ignore;
  if (name == "P8'" || name == "M570") {
    prov = "P8 with circuit hyperplane 1458 relaxed";
    return relax(builtin_matroid("P8", ignore), mask_of({1, 4, 5, 8}));
  }
  if (name == "P8''" || name == "M467") {
    prov = "P8 with circuit hyperplanes 1458 and 2367 relaxed";
    return relax(builtin_matroid("P8'", ignore), mask_of({2, 3, 6, 7}));
  }
  if (name == "P8'''" || name == "M466") {
    prov = "P8 with circuit hyperplanes 1458, 2367 and 4678 relaxed";
    return relax(builtin_matroid("P8''", ignore), mask_of({4, 6, 7, 8}));
  }
  if (name == "V8" || name == "M502") {
    prov = "Vamos matroid: pairs 12 34 56 78, non-bases P_i∪P_j except 5678";
    return from_nonbasis_lists(8, 4, {{1, 2, 3, 4}, {1, 2, 5, 6}, {1, 2, 7, 8}, {3, 4, 5, 6}, {3, 4, 7, 8}});
  }
  if (name == "M431") {
    prov = "sparse paving, circuit hyperplanes 1234 1256 1357 2358";
    return from_nonbasis_lists(8, 4, {{1, 2, 3, 4}, {1, 2, 5, 6}, {1, 3, 5, 7}, {2, 3, 5, 8}});
  }
  if (name == "S8") {
    prov = "binary matroid [I4 | 0111/1011/1101/1111]";
    Matrix<long> m(4, 8);
    const long rows[4][8] = {{1, 0, 0, 0, 0, 1, 1, 1},
                             {0, 1, 0, 0, 1, 0, 1, 1},
                             {0, 0, 1, 0, 1, 1, 0, 1},
                             {0, 0, 0, 1, 1, 1, 1, 1}};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 8; ++j) m(i, j) = rows[i][j];
    return Matroid::from_matrix_mod_p(m, 2);
  }
  if (name == "Pappus") {
    prov = "Pappus configuration over Q; line {7,8,9} is the Pappus line";
    return pappus();
  }
  if (name == "NonPappus") {
    prov = "Pappus with the Pappus line {7,8,9} relaxed";
    return relax(pappus(), mask_of({7, 8, 9}));
  }
  if (name == "NonPappus9+e") {
    prov = "free extension of non-Pappus minus element 9 (a point of the relaxed line)";
    return free_extension(delete_elements(relax(pappus(), mask_of({7, 8, 9})), element_bit(9)));
  }
  if (name == "Golay12") {
    prov = "extended ternary Golay code, 6x12 generator matrix over GF(3)";
    const long rows[6][12] = {{1, 0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 0}, {0, 1, 0, 0, 0, 0, 1, 1, 2, 1, 0, 2},
                              {0, 0, 1, 0, 0, 0, 1, 2, 1, 0, 1, 2}, {0, 0, 0, 1, 0, 0, 1, 2, 0, 1, 2, 1},
                              {0, 0, 0, 0, 1, 0, 1, 0, 2, 2, 1, 1}, {0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 1}};
    Matrix<long> m(6, 12);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 12; ++j) m(i, j) = rows[i][j];
    return Matroid::from_matrix_mod_p(m, 3);
  }
  throw Error(Errc::UnknownName, "no builtin matroid named '" + name + "'");
}

}  // namespace detail

/// The excluded minors on 7 elements used to seed pruning: F7, F7-, F7--,
/// F7-3, M(K4)+e and their duals.
inline std::vector<CatalogEntry> seed_forbidden_minors() {
  std::vector<CatalogEntry> out;
  for (const char* n : {"F7", "F7-", "F7--", "F7-3", "MK4+e"}) {
    out.push_back(builtin(n));
    out.push_back(builtin(std::string(n) + "*"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text formats

inline void write_entry(std::ostream& os, const std::string& name, const Matroid& m, bool use_nonbases) {
  os << "matroid " << name << " n=" << m.size() << " r=" << m.rank() << "\n";
  os << (use_nonbases ? "nonbases" : "bases") << "\n";
  for (Mask s : use_nonbases ? m.nonbases() : m.bases()) {
    bool first = true;
    for (int e : elements_of(s)) {
      os << (first ? "" : " ") << e;
      first = false;
    }
    os << "\n";
  }
  os << "\n";
}

/// Writes entries in the text format, choosing the shorter block per entry.
inline void write_catalog(std::ostream& os, const std::vector<CatalogEntry>& entries) {
  for (const auto& e : entries) {
    if (!e.provenance.empty()) os << "# " << e.provenance << "\n";
    write_entry(os, e.name, e.matroid, e.matroid.nonbases().size() < e.matroid.bases().size());
  }
}

inline std::string compact_line(const Matroid& m) {
  std::string s = std::to_string(m.size()) + " " + std::to_string(m.rank());
  bool first = true;
  for (Mask nb : m.nonbases()) {
    s += first ? " " : ",";
    bool fe = true;
    for (int e : elements_of(nb)) {
      if (!fe) s += " ";
      s += std::to_string(e);
      fe = false;
    }
    first = false;
  }
  return s;
}

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline Mask parse_subset(const std::string& text, int n, std::size_t line_no) {
  std::istringstream ss(text);
  Mask m = 0;
  std::string tok;
  while (ss >> tok) {
    int e = 0;
    try {
      std::size_t used = 0;
      e = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad element '" + tok + "'");
    }
    if (e < 1 || e > n)
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": element " + tok + " outside 1.." +
                                        std::to_string(n));
    m |= element_bit(e);
  }
  return m;
}

inline Matroid validated(const std::string& name, int n, int r, std::vector<Mask> sets, bool nonbases) {
  try {
    return nonbases ? Matroid::from_nonbases(n, r, sets) : Matroid::from_bases(n, r, std::move(sets));
  } catch (const Error& err) {
    throw Error(Errc::ValidationError, "entry '" + name + "': " + err.what());
  }
}

}  // namespace detail

/// Reads text-format and compact-format entries in file order.
inline std::vector<CatalogEntry> parse_catalog(std::istream& is) {
  std::vector<CatalogEntry> out;
  std::string raw;
  std::size_t line_no = 0;
  std::string pending_comment;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = detail::trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      pending_comment = detail::trim(line.substr(1));
      continue;
    }
    if (line.rfind("matroid", 0) == 0) {
      std::istringstream hs(line);
      std::string kw, name, ntok, rtok;
      hs >> kw >> name >> ntok >> rtok;
      if (kw != "matroid" || name.empty() || ntok.rfind("n=", 0) != 0 || rtok.rfind("r=", 0) != 0)
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": malformed header '" + line + "'");
      int n = 0, r = 0;
      try {
        n = std::stoi(ntok.substr(2));
        r = std::stoi(rtok.substr(2));
      } catch (const std::exception&) {
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad n= or r= value");
      }
      if (n < 0 || n > kMaxElements || r < 0 || r > n)
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": n or r out of range");
      std::string kind;
      while (std::getline(is, raw)) {
        ++line_no;
        kind = detail::trim(raw);
        if (!kind.empty() && kind[0] != '#') break;
      }
      if (kind != "bases" && kind != "nonbases")
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected 'bases' or 'nonbases'");
      std::vector<Mask> sets;
      while (std::getline(is, raw)) {
        ++line_no;
        std::string body = detail::trim(raw);
        if (body.empty()) break;
        if (body[0] == '#') continue;
        sets.push_back(detail::parse_subset(body, n, line_no));
      }
      // A rank-0 basis block holds the single empty basis.
      if (kind == "bases" && sets.empty() && r == 0) sets.push_back(0);
      Matroid m = detail::validated(name, n, r, std::move(sets), kind == "nonbases");
      out.push_back({name, std::move(m), pending_comment, out.size()});
      pending_comment.clear();
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(line[0]))) {
      std::istringstream ls(line);
      int n = 0, r = 0;
      ls >> n >> r;
      if (!ls || n < 0 || n > kMaxElements || r < 0 || r > n)
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad compact header");
      std::string rest;
      std::getline(ls, rest);
      std::vector<Mask> sets;
      std::stringstream parts(rest);
      std::string part;
      while (std::getline(parts, part, ',')) {
        part = detail::trim(part);
        if (part.empty()) continue;
        sets.push_back(detail::parse_subset(part, n, line_no));
      }
      const std::string name = "M" + std::to_string(out.size());
      Matroid m = detail::validated(name, n, r, std::move(sets), true);
      out.push_back({name, std::move(m), pending_comment, out.size()});
      pending_comment.clear();
      continue;
    }
    throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": unexpected content '" + line + "'");
  }
  return out;
}

inline std::vector<CatalogEntry> parse_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  return parse_catalog(in);
}

inline void write_catalog_file(const std::string& path, const std::vector<CatalogEntry>& entries) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot write '" + path + "'");
  write_catalog(out, entries);
}

/// A builtin name, or the first entry of a catalog file.
inline CatalogEntry resolve_matroid(const std::string& name_or_path) {
  try {
    return builtin(name_or_path);
  } catch (const Error& e) {
    if (e.code() != Errc::UnknownName) throw;
  }
  std::ifstream probe(name_or_path);
  if (!probe) throw Error(Errc::UnknownName, "'" + name_or_path + "' is neither a builtin name nor a readable file");
  auto entries = parse_catalog(probe);
  if (entries.empty()) throw Error(Errc::ParseError, "'" + name_or_path + "' contains no matroid");
  return entries.front();
}

}  // namespace hpp
