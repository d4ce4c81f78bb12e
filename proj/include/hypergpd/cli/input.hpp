#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypergpd/core/error.hpp"
#include "hypergpd/dkab/complex.hpp"
#include "hypergpd/hypaff/builtins.hpp"
#include "hypergpd/hypaff/descent.hpp"
#include "hypergpd/rham/forms.hpp"
#include "hypergpd/simpset/finsset.hpp"
#include "hypergpd/simpset/sset.hpp"
#include "hypergpd/simpset/truncated.hpp"

/*
 * Input presentations are JSON documents with a "kind" field:
 *
 *   groupoid        {"components": [{"objects": k, "group": "S3" | "C<n>" | [[mult table]]}], "levels": N}
 *   simplicial-set  {"standard": "delta" | "boundary" | "horn", "n": n, "k": k, "levels": N}
 *                   or {"simplex": n, "faces": [[v0, ...], ...], "levels": N}
 *   chain-complex   {"lo": lo, "ranks": [...], "differentials": [{"degree": k, "matrix": [[...]]}]}
 *   scheme          {"builtin": "P1" | "BGm" | "affine" | "nerve", "top": N, "sheaf": "O(d)", "window": [lo, hi], ...}
 *   forms           {"simplex": m, "samples": ["t1*t2*dt1^dt2", ...]}
 *
 * Matrix entries are integers or "p/q" strings.
 */
namespace hypergpd::cli {

using json = nlohmann::json;

struct Document {
  std::string source;  // file name used in diagnostics
  json root;
  std::string kind;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] inline void schema(const Document& d, const std::string& path, const std::string& what) {
  throw ValidationError(d.source + ": " + path + ": " + what);
}

inline const json& field(const Document& d, const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) schema(d, path, "missing field \"" + key + "\"");
  return obj.at(key);
}

inline long integer(const Document& d, const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema(d, path, "expected an integer");
  return v.get<long>();
}

inline long integer_or(const Document& d, const json& obj, const std::string& path, const std::string& key, long dflt) {
  if (!obj.contains(key)) return dflt;
  return integer(d, obj.at(key), path + "/" + key);
}

inline std::size_t count(const Document& d, const json& v, const std::string& path) {
  long x = integer(d, v, path);
  if (x < 0) schema(d, path, "expected a non-negative integer");
  return std::size_t(x);
}

inline std::string string(const Document& d, const json& v, const std::string& path) {
  if (!v.is_string()) schema(d, path, "expected a string");
  return v.get<std::string>();
}

inline std::vector<std::string> strings(const Document& d, const json& v, const std::string& path) {
  if (!v.is_array()) schema(d, path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string(d, v[i], path + "/" + std::to_string(i)));
  return out;
}

inline Rational rational(const Document& d, const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    Rational q;
    if (q.set_str(v.get<std::string>(), 10) == 0 && q.get_den() != 0) {
      q.canonicalize();
      return q;
    }
  }
  schema(d, path, "expected an integer or a \"p/q\" string");
}

// Re-anchor a position inside an embedded string at its JSON path; line 0
// marks a position that is not a file line.
template <class F>
auto embedded(const Document& d, const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(d.source + ": " + path + ": " + e.what() + " (column " + std::to_string(e.column()) +
                         " of the string)",
                     0, e.column());
  }
}

}  // namespace detail

/// Parse a document; syntax errors carry the line and column of the offending byte.
inline Document parse_document(const std::string& text, const std::string& source) {
  Document d;
  d.source = source;
  try {
    d.root = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_col(text, e.byte);
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw ParseError(source + ": " + what, line, col);
  }
  if (!d.root.is_object()) detail::schema(d, "/", "top level must be an object");
  d.kind = detail::string(d, detail::field(d, d.root, "/", "kind"), "/kind");
  return d;
}

inline Document load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path.filename().string());
}

inline simpset::FiniteGroup read_group(const Document& d, const json& v, const std::string& path) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "S3") return simpset::FiniteGroup::symmetric3();
    if (s == "trivial") return simpset::FiniteGroup::cyclic(1);
    if (s.size() > 1 && s[0] == 'C' && s.find_first_not_of("0123456789", 1) == std::string::npos) {
      std::size_t n = std::stoul(s.substr(1));
      if (n >= 1 && n <= 64) return simpset::FiniteGroup::cyclic(n);
    }
    detail::schema(d, path, "unknown group \"" + s + "\" (use S3, trivial or C<n> with 1 <= n <= 64)");
  }
  if (!v.is_array() || v.empty()) detail::schema(d, path, "expected a group name or a multiplication table");
  simpset::FiniteGroup G;
  std::size_t n = v.size();
  for (std::size_t a = 0; a < n; ++a) {
    std::string row = path + "/" + std::to_string(a);
    if (!v[a].is_array() || v[a].size() != n) detail::schema(d, row, "table rows must have length " + std::to_string(n));
    std::vector<std::size_t> r;
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t x = detail::count(d, v[a][b], row + "/" + std::to_string(b));
      if (x >= n) detail::schema(d, row + "/" + std::to_string(b), "element out of range");
      r.push_back(x);
    }
    G.mul.push_back(std::move(r));
  }
  for (std::size_t a = 0; a < n; ++a)
    if (G.mul[0][a] != a || G.mul[a][0] != a) detail::schema(d, path, "element 0 must be the unit");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (G.mul[G.mul[a][b]][c] != G.mul[a][G.mul[b][c]])
          detail::schema(d, path, "table is not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                      std::to_string(c) + ")");
  return G;
}

inline simpset::Groupoid read_groupoid(const Document& d, const json& obj, const std::string& path) {
  const auto& comps = detail::field(d, obj, path, "components");
  if (!comps.is_array() || comps.empty()) detail::schema(d, path + "/components", "expected a non-empty array");
  std::optional<simpset::Groupoid> G;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::string p = path + "/components/" + std::to_string(i);
    std::size_t k = detail::count(d, detail::field(d, comps[i], p, "objects"), p + "/objects");
    if (k == 0 || k > 16) detail::schema(d, p + "/objects", "expected 1..16 objects");
    auto grp = comps[i].contains("group") ? read_group(d, comps[i]["group"], p + "/group") : simpset::FiniteGroup::cyclic(1);
    auto C = simpset::connected_groupoid(k, grp);
    G = G ? simpset::disjoint_union(*G, C) : C;
  }
  G->validate();
  return *G;
}

inline int levels(const Document& d, int dflt) {
  long N = detail::integer_or(d, d.root, "", "levels", dflt);
  if (N < 1 || N > 8) detail::schema(d, "/levels", "expected 1..8");
  return int(N);
}

inline simpset::FinSSet read_finsset(const Document& d) {
  const auto& r = d.root;
  if (r.contains("standard")) {
    std::string s = detail::string(d, r["standard"], "/standard");
    int n = int(detail::integer(d, detail::field(d, r, "", "n"), "/n"));
    if (n < 0 || n > 6) detail::schema(d, "/n", "expected 0..6");
    if (s == "delta") return simpset::standard_complex(simpset::StandardKind::Delta(n));
    if (s == "boundary") return simpset::standard_complex(simpset::StandardKind::Boundary(n));
    if (s == "horn") {
      int k = int(detail::integer(d, detail::field(d, r, "", "k"), "/k"));
      return simpset::standard_complex(simpset::StandardKind::Horn(n, k));
    }
    detail::schema(d, "/standard", "expected delta, boundary or horn");
  }
  int n = int(detail::integer(d, detail::field(d, r, "", "simplex"), "/simplex"));
  if (n < 0 || n > 6) detail::schema(d, "/simplex", "expected 0..6");
  const auto& faces = detail::field(d, r, "", "faces");
  if (!faces.is_array()) detail::schema(d, "/faces", "expected an array of vertex lists");
  std::vector<std::vector<int>> subsets;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    std::string p = "/faces/" + std::to_string(i);
    if (!faces[i].is_array() || faces[i].empty()) detail::schema(d, p, "expected a non-empty vertex list");
    std::vector<int> s;
    for (std::size_t j = 0; j < faces[i].size(); ++j) {
      long v = detail::integer(d, faces[i][j], p + "/" + std::to_string(j));
      if (v < 0 || v > n) detail::schema(d, p + "/" + std::to_string(j), "vertex out of range");
      if (!s.empty() && v <= s.back()) detail::schema(d, p, "vertices must be strictly increasing");
      s.push_back(int(v));
    }
    subsets.push_back(std::move(s));
  }
  return simpset::subcomplex_of_simplex(n, subsets);
}

/// Simplicial set presentations: groupoid nerves (2-coskeletal) or finite complexes.
inline simpset::TruncatedSSet read_sset(const Document& d) {
  if (d.kind == "groupoid") {
    auto G = read_groupoid(d, d.root, "");
    return simpset::TruncatedSSet::coskeletal(simpset::nerve(G, levels(d, 4)), 2);
  }
  if (d.kind == "simplicial-set") return simpset::TruncatedSSet::from_finsset(read_finsset(d), levels(d, 4));
  throw ArgumentError(d.source + ": expected a groupoid or simplicial-set document, got \"" + d.kind + "\"");
}

template <class T>
dkab::ChainComplex<T> read_complex(const Document& d) {
  if (d.kind != "chain-complex") throw ArgumentError(d.source + ": expected a chain-complex document, got \"" + d.kind + "\"");
  int lo = int(detail::integer_or(d, d.root, "", "lo", 0));
  const auto& rk = detail::field(d, d.root, "", "ranks");
  if (!rk.is_array()) detail::schema(d, "/ranks", "expected an array");
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < rk.size(); ++i) ranks.push_back(detail::count(d, rk[i], "/ranks/" + std::to_string(i)));
  auto C = dkab::make_complex<T>(lo, ranks);
  if (d.root.contains("differentials")) {
    const auto& ds = d.root["differentials"];
    if (!ds.is_array()) detail::schema(d, "/differentials", "expected an array");
    for (std::size_t i = 0; i < ds.size(); ++i) {
      std::string p = "/differentials/" + std::to_string(i);
      int deg = int(detail::integer(d, detail::field(d, ds[i], p, "degree"), p + "/degree"));
      int k = deg - lo;
      if (k < 1 || k >= int(ranks.size())) detail::schema(d, p + "/degree", "no differential out of this degree");
      const auto& m = detail::field(d, ds[i], p, "matrix");
      std::size_t rows = ranks[std::size_t(k - 1)], cols = ranks[std::size_t(k)];
      if (!m.is_array() || m.size() != rows)
        detail::schema(d, p + "/matrix", "expected " + std::to_string(rows) + " rows");
      Matrix<T> M(rows, cols);
      for (std::size_t a = 0; a < rows; ++a) {
        std::string pr = p + "/matrix/" + std::to_string(a);
        if (!m[a].is_array() || m[a].size() != cols) detail::schema(d, pr, "expected " + std::to_string(cols) + " entries");
        for (std::size_t b = 0; b < cols; ++b) {
          Rational q = detail::rational(d, m[a][b], pr + "/" + std::to_string(b));
          if constexpr (std::is_same_v<T, Integer>) {
            if (q.get_den() != 1) detail::schema(d, pr + "/" + std::to_string(b), "expected an integer entry");
            M(a, b) = q.get_num();
          } else {
            M(a, b) = q;
          }
        }
      }
      C.d[std::size_t(k)] = M;
    }
  }
  try {
    C.validate();
  } catch (const Error& e) {
    throw ValidationError(d.source + ": " + e.what());
  }
  return C;
}

struct Forms {
  int simplex = 0;
  std::vector<rham::PolyForm> samples;
};

inline Forms read_forms(const Document& d) {
  if (d.kind != "forms") throw ArgumentError(d.source + ": expected a forms document, got \"" + d.kind + "\"");
  Forms f;
  f.simplex = int(detail::integer(d, detail::field(d, d.root, "", "simplex"), "/simplex"));
  if (f.simplex < 0 || f.simplex > 6) detail::schema(d, "/simplex", "expected 0..6");
  auto texts = detail::strings(d, detail::field(d, d.root, "", "samples"), "/samples");
  for (std::size_t i = 0; i < texts.size(); ++i)
    f.samples.push_back(detail::embedded(d, "/samples/" + std::to_string(i),
                                         [&] { return rham::PolyForm::parse(f.simplex, texts[i]); }));
  return f;
}

struct Scheme {
  hypaff::AffHypergroupoid X;
  std::optional<std::string> sheaf;
  std::optional<std::pair<long, long>> window;
};

inline hypaff::CertificateMap read_certificates(const Document& d) {
  hypaff::CertificateMap out;
  if (!d.root.contains("certificates")) return out;
  const auto& cs = d.root["certificates"];
  if (!cs.is_array()) detail::schema(d, "/certificates", "expected an array");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::string p = "/certificates/" + std::to_string(i);
    int m = int(detail::integer(d, detail::field(d, cs[i], p, "m"), p + "/m"));
    int k = int(detail::integer(d, detail::field(d, cs[i], p, "k"), p + "/k"));
    std::string kind = detail::string(d, detail::field(d, cs[i], p, "kind"), p + "/kind");
    hypaff::CoverCertificate c;
    if (kind == "user_asserted") {
      c.kind = hypaff::CoverCertificate::Kind::user_asserted;
    } else if (kind == "zariski") {
      c.kind = hypaff::CoverCertificate::Kind::zariski;
      c.elements = detail::strings(d, detail::field(d, cs[i], p, "elements"), p + "/elements");
    } else {
      detail::schema(d, p + "/kind", "expected user_asserted or zariski");
    }
    if (cs[i].contains("note")) c.note = detail::string(d, cs[i]["note"], p + "/note");
    out[{m, k}] = std::move(c);
  }
  return out;
}

/// Simplicial affine schemes: the bundled constructions, or discrete nerves of groupoid documents.
inline Scheme read_scheme(const Document& d) {
  Scheme s;
  if (d.kind == "groupoid") {
    auto G = read_groupoid(d, d.root, "");
    s.X = hypaff::discrete(simpset::nerve(G, levels(d, 4)), "nerve");
    return s;
  }
  if (d.kind != "scheme") throw ArgumentError(d.source + ": expected a scheme or groupoid document, got \"" + d.kind + "\"");
  std::string b = detail::string(d, detail::field(d, d.root, "", "builtin"), "/builtin");
  long top = detail::integer_or(d, d.root, "", "top", 3);
  if (top < 1 || top > 6) detail::schema(d, "/top", "expected 1..6");
  if (b == "P1") {
    s.X = hypaff::P1(int(top));
  } else if (b == "BGm") {
    s.X = hypaff::BGm(int(top));
  } else if (b == "affine") {
    auto vars = detail::strings(d, detail::field(d, d.root, "", "variables"), "/variables");
    std::vector<int> weights;
    if (d.root.contains("weights")) {
      const auto& w = d.root["weights"];
      if (!w.is_array() || w.size() != vars.size()) detail::schema(d, "/weights", "expected one weight per variable");
      for (std::size_t i = 0; i < w.size(); ++i) weights.push_back(int(detail::integer(d, w[i], "/weights/" + std::to_string(i))));
    }
    std::vector<std::string> rels;
    if (d.root.contains("relations")) rels = detail::strings(d, d.root["relations"], "/relations");
    std::vector<qalg::Poly> ps;
    for (std::size_t i = 0; i < rels.size(); ++i)
      ps.push_back(detail::embedded(d, "/relations/" + std::to_string(i), [&] { return qalg::parse_poly(rels[i], vars); }));
    s.X = hypaff::affine(qalg::FPAlgebra::make(vars, std::move(ps), weights), int(top));
  } else if (b == "nerve") {
    const auto& g = detail::field(d, d.root, "", "groupoid");
    s.X = hypaff::discrete(simpset::nerve(read_groupoid(d, g, "/groupoid"), int(top)), "nerve");
  } else {
    detail::schema(d, "/builtin", "expected P1, BGm, affine or nerve");
  }
  for (auto& [key, c] : read_certificates(d)) s.X.certificates[key] = c;
  if (d.root.contains("sheaf")) s.sheaf = detail::string(d, d.root["sheaf"], "/sheaf");
  if (d.root.contains("window")) {
    const auto& w = d.root["window"];
    if (!w.is_array() || w.size() != 2) detail::schema(d, "/window", "expected [lo, hi]");
    s.window = {detail::integer(d, w[0], "/window/0"), detail::integer(d, w[1], "/window/1")};
  }
  return s;
}

/// "O", "O(d)" (projective line only) or "0".
inline hypaff::CartesianModule make_sheaf(const hypaff::AffHypergroupoid& X, const std::string& spec) {
  if (spec == "O") return hypaff::structure_sheaf(X);
  if (spec == "0") {
    hypaff::CartesianModule F;
    F.ranks.assign(X.level(0).size(), 0);
    F.gen_weights.assign(X.level(0).size(), {});
    F.omega.assign(X.level(1).size(), {});
    return F;
  }
  if (spec.size() > 3 && spec.rfind("O(", 0) == 0 && spec.back() == ')') {
    std::string num = spec.substr(2, spec.size() - 3);
    std::size_t used = 0;
    int deg = 0;
    try {
      deg = std::stoi(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == num.size() && used > 0) return hypaff::line_bundle_P1(X, deg);
  }
  throw ArgumentError("sheaf \"" + spec + "\" not understood (use O, O(d) or 0)");
}

}  // namespace hypergpd::cli
