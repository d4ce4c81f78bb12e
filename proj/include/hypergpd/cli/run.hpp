#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "hypergpd/cli/input.hpp"
#include "hypergpd/cotan/cotangent.hpp"
#include "hypergpd/cotan/ext.hpp"
#include "hypergpd/dkab/simplicial_module.hpp"
#include "hypergpd/hypaff/certificate.hpp"
#include "hypergpd/hypaff/cohomology.hpp"
#include "hypergpd/rham/integration.hpp"
#include "hypergpd/rham/thom_sullivan.hpp"
#include "hypergpd/simpset/hypergroupoid.hpp"

namespace hypergpd::cli {

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"check-hypergroupoid", "homotopy", "dold-kan",      "cech-cohomology",
                                             "cotangent",           "ext",      "thom-sullivan", "integrate"};
  return c;
}

struct Job {
  std::string command;
  std::string input;    // path; empty when a fixture is named
  std::string fixture;  // resolved against fixture_dir
  std::string fixture_dir;
  std::optional<int> n;
  std::optional<std::string> mode;
  std::optional<int> max_degree;
  std::optional<std::pair<long, long>> weights;
  std::optional<std::string> sheaf;
  std::string format = "text";
};

struct Record {
  std::string type;
  std::vector<std::pair<std::string, std::string>> fields;
  std::string text;
};

struct Output {
  std::vector<Record> records;
  int status = 0;
  void add(std::string type, std::vector<std::pair<std::string, std::string>> fields, std::string text) {
    records.push_back({std::move(type), std::move(fields), std::move(text)});
  }
};

namespace detail {

inline std::string quoted(const std::string& v) {
  bool plain = !v.empty() && v.find_first_of(" \t\"=\\\n") == std::string::npos;
  return plain ? v : json(v).dump();
}

inline std::string tuple(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string list(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s.empty() ? "-" : s;
}

struct CommandSchema {
  std::set<std::string> kinds;
  std::set<std::string> allowed;   // option names
  std::set<std::string> required;
  std::map<std::string, std::set<std::string>> modes;  // only for "mode"
};

inline const CommandSchema& schema_of(const std::string& cmd) {
  static const std::map<std::string, CommandSchema> table = {
      {"check-hypergroupoid",
       {{"groupoid", "simplicial-set", "scheme"}, {"n", "mode"}, {"n"}, {{"mode", {"absolute", "relative", "trivial"}}}}},
      {"homotopy", {{"groupoid", "simplicial-set", "chain-complex"}, {}, {}, {}}},
      {"dold-kan", {{"chain-complex"}, {"n"}, {"n"}, {}}},
      {"cech-cohomology", {{"scheme", "groupoid"}, {"max-degree", "weights", "sheaf"}, {}, {}}},
      {"cotangent", {{"scheme", "groupoid"}, {"n", "mode", "weights"}, {"n"}, {{"mode", {"reduced", "shift"}}}}},
      {"ext", {{"scheme", "groupoid"}, {"n", "max-degree", "weights", "sheaf"}, {"n"}, {}}},
      {"thom-sullivan", {{"chain-complex"}, {"n", "max-degree"}, {}, {}}},
      {"integrate", {{"forms"}, {}, {}, {}}},
  };
  auto it = table.find(cmd);
  if (it == table.end()) throw ArgumentError("unknown command \"" + cmd + "\"");
  return it->second;
}

inline void validate_options(const Job& job) {
  const auto& s = schema_of(job.command);
  std::vector<std::pair<std::string, bool>> given = {{"n", job.n.has_value()},
                                                     {"mode", job.mode.has_value()},
                                                     {"max-degree", job.max_degree.has_value()},
                                                     {"weights", job.weights.has_value()},
                                                     {"sheaf", job.sheaf.has_value()}};
  for (const auto& [name, set] : given) {
    if (set && !s.allowed.count(name)) throw ArgumentError("--" + name + " does not apply to " + job.command);
    if (!set && s.required.count(name)) throw ArgumentError(job.command + " needs --" + name);
  }
  if (job.mode) {
    const auto& ok = s.modes.at("mode");
    if (!ok.count(*job.mode)) {
      std::string list;
      for (const auto& m : ok) list += (list.empty() ? "" : ", ") + m;
      throw ArgumentError("--mode " + *job.mode + " is not one of " + list);
    }
  }
  if (job.n && *job.n < 0) throw ArgumentError("--n must be >= 0");
  if (job.max_degree && *job.max_degree < 0) throw ArgumentError("--max-degree must be >= 0");
  if (job.weights && job.weights->second < job.weights->first) throw ArgumentError("--weights MIN:MAX needs MIN <= MAX");
  if (job.format != "text" && job.format != "records") throw ArgumentError("--format must be text or records");
  if (job.input.empty() == job.fixture.empty()) throw ArgumentError("give exactly one of an input file or --fixture");
}

inline void report_verdict(Output& o, const HypReport& r) {
  o.add("verdict", {{"value", r.verdict ? "true" : "false"}, {"tainted", r.tainted ? "true" : "false"}},
        std::string("verdict: ") + (r.verdict ? "true" : "false") + (r.tainted ? " (relies on asserted covers)" : ""));
  for (const auto& f : r.failures)
    o.add("failure", {{"witness", f.witness()}, {"reason", f.reason}, {"detail", f.detail}},
          "  failure at " + f.witness() + ": " + f.reason + (f.detail.empty() ? "" : " (" + f.detail + ")"));
  for (const auto& n : r.notes) o.add("note", {{"text", n}}, "  note: " + n);
  o.status = r.verdict ? 0 : 1;
}

inline void check_hypergroupoid(const Job& job, const Document& d, Output& o) {
  int n = *job.n;
  std::string mode = job.mode.value_or("absolute");
  o.add("params", {{"n", std::to_string(n)}, {"mode", mode}}, "n = " + std::to_string(n) + ", mode " + mode);
  if (d.kind == "scheme") {
    if (mode != "absolute") throw ArgumentError("schemes are checked in absolute mode only");
    auto s = read_scheme(d);
    report_verdict(o, hypaff::check_scheme_hypergroupoid(s.X, n));
    return;
  }
  auto X = read_sset(d);
  if (mode == "absolute") {
    report_verdict(o, simpset::is_hypergroupoid(X, n));
  } else if (mode == "relative") {
    auto dec = simpset::dec_plus(X);
    report_verdict(o, simpset::is_hypergroupoid(dec.dec, X, dec.counit, n, simpset::HypMode::relative));
  } else {
    auto dec = simpset::dec_plus(X);
    auto X0 = simpset::TruncatedSSet::coskeletal(simpset::constant(X.data().count[0], dec.dec.top()), 0);
    report_verdict(o, simpset::is_hypergroupoid(dec.dec, X0, dec.to_vertex, n, simpset::HypMode::trivial_relative));
  }
}

inline void report_homology(Output& o, const dkab::Homology& h) {
  for (int k = h.lo; k <= h.hi(); ++k) {
    std::string g = h.at(k).str();
    o.add("pi", {{"degree", std::to_string(k)}, {"group", g}}, "pi_" + std::to_string(k) + " = " + g);
  }
}

inline void homotopy(const Document& d, Output& o) {
  if (d.kind == "chain-complex") {
    auto C = read_complex<Integer>(d);
    if (C.lo < 0) throw ArgumentError(d.source + ": homotopy of a complex needs lo >= 0");
    report_homology(o, dkab::homotopy_groups(dkab::denormalize(C, std::max(C.hi(), 0) + 2)));
    return;
  }
  auto X = read_sset(d);
  report_homology(o, dkab::homotopy_groups(dkab::linearize<Integer>(X.data())));
}

inline void dold_kan(const Job& job, const Document& d, Output& o) {
  int n = *job.n;
  auto C = read_complex<Integer>(d);
  if (C.lo < 0) throw ArgumentError(d.source + ": denormalization needs lo >= 0");
  int top = std::max(n + 2, C.hi() + 1);
  auto A = dkab::denormalize(C, top);
  A.validate();
  auto N = dkab::normalize(A).complex;
  bool round = true;
  std::optional<int> bad;
  for (int k = 0; k <= C.hi(); ++k) {
    if (N.rank_at(k) != C.rank_at(k) || (k >= 1 && !(N.diff(k) == C.diff(k)))) {
      round = false;
      if (!bad) bad = k;
    }
  }
  std::vector<std::size_t> ranks(A.ranks.begin(), A.ranks.end());
  o.add("levels", {{"ranks", list(ranks)}}, "denormalized ranks: " + list(ranks));
  o.add("roundtrip", {{"value", round ? "true" : "false"}},
        std::string("normalize after denormalize: ") + (round ? "identity" : "differs at degree " + std::to_string(*bad)));
  bool hyp = dkab::dk_hypergroupoid_check(A, n);
  o.add("verdict", {{"value", hyp && round ? "true" : "false"}},
        std::string("abelian ") + std::to_string(n) + "-hypergroupoid: " + (hyp ? "true" : "false"));
  if (!hyp) {
    for (int m = n + 1; m <= top; ++m)
      if (N.rank_at(m)) {
        o.add("failure", {{"degree", std::to_string(m)}, {"rank", std::to_string(N.rank_at(m))}},
              "  normalized term in degree " + std::to_string(m) + " has rank " + std::to_string(N.rank_at(m)));
        break;
      }
  }
  if (!round) o.add("failure", {{"roundtrip-degree", std::to_string(*bad)}}, "  round trip fails in degree " + std::to_string(*bad));
  o.status = hyp && round ? 0 : 1;
}

inline hypaff::Window window_for(const Job& job, const Scheme& s) {
  hypaff::Window w;
  auto lohi = job.weights ? *job.weights : s.window.value_or(std::pair<long, long>{0, 0});
  w.lo = lohi.first;
  w.hi = lohi.second;
  return w;
}

inline std::string window_text(const hypaff::Window& w, bool filtered) {
  return filtered ? "filtration bound " + std::to_string(w.hi)
                  : "weights " + std::to_string(w.lo) + ":" + std::to_string(w.hi);
}

inline std::string row_label(bool filtered, long w) {
  return (filtered ? "bound " : "weight ") + std::to_string(w);
}

inline void cech(const Job& job, const Document& d, Output& o) {
  auto s = read_scheme(d);
  std::string sheaf = job.sheaf ? *job.sheaf : s.sheaf.value_or("O");
  int D = job.max_degree.value_or(2);
  auto win = window_for(job, s);
  o.add("params", {{"scheme", s.X.name}, {"sheaf", sheaf}, {"max-degree", std::to_string(D)},
                   {"window", std::to_string(win.lo) + ":" + std::to_string(win.hi)}},
        s.X.name + ", sheaf " + sheaf + ", degrees 0.." + std::to_string(D) + ", " + window_text(win, bool(s.X.filtration)));
  auto t = hypaff::cech_cohomology(s.X, make_sheaf(s.X, sheaf), D, win);
  for (std::size_t r = 0; r < t.weights.size(); ++r)
    o.add("row", {{t.filtered ? "bound" : "weight", std::to_string(t.weights[r])}, {"H", list(t.dims[r])}},
          "  " + row_label(t.filtered, t.weights[r]) + ": " + tuple(t.dims[r]));
  o.add("total", {{"H", list(t.total)}}, tuple(t.total));
}

inline void cotangent(const Job& job, const Document& d, Output& o) {
  auto s = read_scheme(d);
  int m = *job.n;
  std::string mode = job.mode.value_or("reduced");
  auto win = window_for(job, s);
  o.add("params", {{"scheme", s.X.name}, {"m", std::to_string(m)}, {"mode", mode},
                   {"window", std::to_string(win.lo) + ":" + std::to_string(win.hi)}},
        s.X.name + ", m = " + std::to_string(m) + ", mode " + mode + ", level-0 weights " + std::to_string(win.lo) + ":" +
            std::to_string(win.hi));
  if (mode == "reduced") {
    auto L = cotan::reduced_cotangent(s.X, m);
    L.validate();
    auto t = cotan::cotangent_homology(L, win.lo, win.hi, win.max_degree);
    for (std::size_t r = 0; r < t.weights.size(); ++r)
      o.add("row", {{"weight", std::to_string(t.weights[r])}, {"H", list(t.dims[r])}},
            "  weight " + std::to_string(t.weights[r]) + ": " + tuple(t.dims[r]));
    for (int q = 0; q <= m; ++q) {
      std::string deg = std::to_string(-q);
      o.add("total", {{"degree", deg}, {"rank", std::to_string(t.total[std::size_t(q)])}},
            "H_" + deg + " = " + std::to_string(t.total[std::size_t(q)]));
    }
    return;
  }
  auto r = cotan::cotangent_shift_check(s.X, m, win);
  for (const auto& row : r.rows)
    o.add("row",
          {{"weight", std::to_string(row.weight)}, {"tot", list(row.tot)}, {"beyond", std::to_string(row.beyond)},
           {"shifted", list(row.shifted)}, {"agree", row.agree ? "true" : "false"}},
          "  weight " + std::to_string(row.weight) + ": truncated " + tuple(row.tot) + ", shifted " + tuple(row.shifted) +
              (row.beyond ? ", H_-" + std::to_string(m + 1) + " = " + std::to_string(row.beyond) : "") +
              (row.agree && !row.beyond ? "" : "  <-- differs"));
  o.add("verdict", {{"value", r.ok() ? "true" : "false"}}, std::string("verdict: ") + (r.ok() ? "true" : "false"));
  for (const auto& row : r.rows)
    if (!row.agree || row.beyond)
      o.add("failure", {{"weight", std::to_string(row.weight)}}, "  forms differ in weight " + std::to_string(row.weight));
  o.status = r.ok() ? 0 : 1;
}

inline void ext(const Job& job, const Document& d, Output& o) {
  auto s = read_scheme(d);
  int m = *job.n, b = job.max_degree.value_or(2);
  std::string sheaf = job.sheaf ? *job.sheaf : s.sheaf.value_or("O");
  auto win = window_for(job, s);
  o.add("params", {{"scheme", s.X.name}, {"m", std::to_string(m)}, {"sheaf", sheaf}, {"max-degree", std::to_string(b)},
                   {"window", std::to_string(win.lo) + ":" + std::to_string(win.hi)}},
        s.X.name + ", m = " + std::to_string(m) + ", sheaf " + sheaf + ", degrees 0.." + std::to_string(b) + ", " +
            window_text(win, bool(s.X.filtration)));
  auto L = cotan::reduced_cotangent(s.X, m);
  auto t = cotan::ext_dims(s.X, L, make_sheaf(s.X, sheaf), 0, b, win);
  for (std::size_t r = 0; r < t.weights.size(); ++r)
    o.add("row", {{t.filtered ? "bound" : "weight", std::to_string(t.weights[r])}, {"Ext", list(t.dims[r])}},
          "  " + row_label(t.filtered, t.weights[r]) + ": " + tuple(t.dims[r]));
  for (int i = 0; i <= b; ++i)
    o.add("total", {{"degree", std::to_string(i)}, {"rank", std::to_string(t.at(i))}},
          "Ext^" + std::to_string(i) + " = " + std::to_string(t.at(i)));
}

inline void thom_sullivan(const Job& job, const Document& d, Output& o) {
  auto B = read_complex<Rational>(d);
  if (B.lo < 0) throw ArgumentError(d.source + ": the Thom-Sullivan construction needs lo >= 0");
  int N = job.n.value_or(std::max(B.hi(), 0) + 2), W = job.max_degree.value_or(3);
  if (N < 1) throw ArgumentError("thom-sullivan needs --n >= 1");
  o.add("params", {{"levels", std::to_string(N)}, {"omega-bound", std::to_string(W)}},
        "levels 0.." + std::to_string(N) + ", polynomial forms of weight <= " + std::to_string(W));
  auto T = rham::thom_sullivan(B, N, W);
  std::vector<std::size_t> ranks(T.ranks.begin(), T.ranks.end());
  o.add("levels", {{"ranks", list(ranks)}}, "level ranks: " + list(ranks));
  auto r = rham::dequiv_check({dkab::denormalize(B, N)}, W);
  const auto& row = r.rows.at(0);
  o.add("pi", {{"denormalized", list(row.pi_A)}, {"thom-sullivan", list(row.pi_T)}},
        "pi_* denormalized " + tuple(row.pi_A) + ", Thom-Sullivan " + tuple(row.pi_T));
  o.add("verdict", {{"value", row.equal ? "true" : "false"}}, std::string("verdict: ") + (row.equal ? "true" : "false"));
  for (std::size_t k = 0; k < row.pi_A.size(); ++k)
    if (row.pi_A[k] != row.pi_T[k]) {
      o.add("failure", {{"degree", std::to_string(k)}}, "  pi_" + std::to_string(k) + " differs");
      break;
    }
  o.status = row.equal ? 0 : 1;
}

inline std::string rational_list(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s.empty() ? "-" : s;
}

inline void integrate(const Document& d, Output& o) {
  auto F = read_forms(d);
  auto r = rham::integration_map_check(F.simplex, F.samples);
  o.add("params", {{"simplex", std::to_string(F.simplex)}}, "forms on the " + std::to_string(F.simplex) + "-simplex");
  for (const auto& s : r.samples) {
    o.add("cochain", {{"form", s.form}, {"degree", std::to_string(s.degree)}, {"values", rational_list(s.cochain)},
                      {"stokes", s.ok ? "true" : "false"}},
          "  " + s.form + " (degree " + std::to_string(s.degree) + "): [" + rational_list(s.cochain) + "]" +
              (s.ok ? "" : "  <-- " + s.failure));
  }
  o.add("verdict", {{"value", r.ok() ? "true" : "false"}}, std::string("verdict: ") + (r.ok() ? "true" : "false"));
  for (const auto& s : r.samples)
    if (!s.ok) o.add("failure", {{"form", s.form}, {"detail", s.failure}}, "  failure: " + s.form + ": " + s.failure);
  o.status = r.ok() ? 0 : 1;
}

}  // namespace detail

inline std::filesystem::path input_path(const Job& job) {
  if (!job.fixture.empty()) {
    if (job.fixture.find('/') != std::string::npos) throw ArgumentError("fixture names may not contain '/'");
    return std::filesystem::path(job.fixture_dir) / (job.fixture + ".json");
  }
  return job.input;
}

/// Compute the job's report; throws on input or validation errors.
inline Output evaluate(const Job& job) {
  detail::validate_options(job);
  auto d = load_document(input_path(job));
  const auto& s = detail::schema_of(job.command);
  if (!s.kinds.count(d.kind)) throw ArgumentError(d.source + ": " + job.command + " does not take \"" + d.kind + "\" input");
  Output o;
  o.add("job", {{"command", job.command}, {"input", d.source}, {"kind", d.kind}},
        job.command + " on " + d.source + " (" + d.kind + ")");
  if (job.command == "check-hypergroupoid") detail::check_hypergroupoid(job, d, o);
  else if (job.command == "homotopy") detail::homotopy(d, o);
  else if (job.command == "dold-kan") detail::dold_kan(job, d, o);
  else if (job.command == "cech-cohomology") detail::cech(job, d, o);
  else if (job.command == "cotangent") detail::cotangent(job, d, o);
  else if (job.command == "ext") detail::ext(job, d, o);
  else if (job.command == "thom-sullivan") detail::thom_sullivan(job, d, o);
  else detail::integrate(d, o);
  return o;
}

inline void render(const Output& o, const std::string& format, std::ostream& out) {
  if (format == "records") {
    out << "#hypergpd-records v1\n";
    for (const auto& r : o.records) {
      out << r.type;
      for (const auto& [k, v] : r.fields) out << ' ' << k << '=' << detail::quoted(v);
      out << '\n';
    }
    out << "exit status=" << o.status << '\n';
    return;
  }
  for (const auto& r : o.records) out << r.text << '\n';
}

/// Exit status 0 (success or a true verdict), 1 (false verdict), 2 (input or validation error).
inline int run(const Job& job, std::ostream& out, std::ostream& err) {
  try {
    auto o = evaluate(job);
    render(o, job.format, out);
    return o.status;
  } catch (const ParseError& e) {
    if (e.line() == 0)
      err << "error: parse-error: " << e.what() << '\n';
    else
      err << "error: parse-error at line " << e.line() << ", column " << e.column() << ": " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "error: input: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace hypergpd::cli
