// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "hypergpd/cli/input.hpp"
#include "hypergpd/cotan/cotangent.hpp"
#include "hypergpd/cotan/ext.hpp"
#include "hypergpd/dkab/cosimplicial.hpp"
#include "hypergpd/dkab/simplicial_module.hpp"
#include "hypergpd/hypaff/cohomology.hpp"
#include "hypergpd/hypaff/resolution.hpp"
#include "hypergpd/rham/integration.hpp"
#include "hypergpd/rham/thom_sullivan.hpp"
#include "hypergpd/simpset/hypergroupoid.hpp"
#include "test_support.hpp"

using namespace hypergpd;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string tuple(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

simpset::TruncatedSSet nerve_t(const simpset::Groupoid& G, int N) {
  return simpset::TruncatedSSet::coskeletal(simpset::nerve(G, N), 2);
}

Outcome hypergroupoid_gate() {
  Outcome o;
  std::mt19937 rng(2024);
  double worst = 0;
  int discrete = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto t0 = Clock::now();
    auto G = testsupport::random_groupoid(rng);
    auto X = nerve_t(G, 4);
    bool one = simpset::is_hypergroupoid(X, 1).verdict;
    bool zero = simpset::is_hypergroupoid(X, 0).verdict;
    discrete += G.discrete();
    o.require(one, "random groupoid " + std::to_string(trial) + " fails n=1");
    o.require(zero == G.discrete(), "random groupoid " + std::to_string(trial) + " has the wrong n=0 verdict");
    worst = std::max(worst, seconds_since(t0));
  }
  // the random draws rarely give a discrete groupoid, so pin one down
  auto pt = simpset::connected_groupoid(1, simpset::FiniteGroup::cyclic(1));
  auto three = simpset::disjoint_union(simpset::disjoint_union(pt, pt), pt);
  o.require(simpset::is_hypergroupoid(nerve_t(three, 4), 0).verdict, "three points fail n=0");
  auto t0 = Clock::now();
  auto D1 = simpset::TruncatedSSet::from_finsset(simpset::standard_complex(simpset::StandardKind::Delta(1)), 4);
  auto r = simpset::is_hypergroupoid(D1, 1);
  worst = std::max(worst, seconds_since(t0));
  o.require(!r.verdict && r.has_failure(2, 0), "Delta^1 does not fail with witness (2,0)");
  o.require(worst < 1.0, "a case took " + std::to_string(worst) + "s");
  if (o.ok)
    o.detail = "10 nerves (" + std::to_string(discrete) + " discrete) plus three points at n=0, Delta^1 witness (2,0), slowest " +
               std::to_string(worst) + "s";
  return o;
}

Outcome dold_kan() {
  Outcome o;
  std::mt19937 rng(99);
  auto t0 = Clock::now();
  int top_classes = 0;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 3;
    auto C = testsupport::random_complex(rng, n);
    auto A = dkab::denormalize(C, n + 2);
    std::string tag = "complex " + std::to_string(trial) + " (n=" + std::to_string(n) + ")";
    o.require(dkab::dk_hypergroupoid_check(A, n), tag + " fails the check at n");
    bool Hn = !dkab::homology(C).at(n).zero();
    if (Hn) {
      ++top_classes;
      o.require(!dkab::dk_hypergroupoid_check(A, n - 1), tag + " passes at n-1 despite H_n != 0");
    }
    auto N = dkab::normalize(A).complex;
    for (int k = 0; k <= n + 2; ++k) {
      o.require(N.rank_at(k) == C.rank_at(k), tag + " round trip changes a rank");
      if (k >= 1 && k <= n) o.require(N.diff(k) == C.diff(k), tag + " round trip changes d_" + std::to_string(k));
    }
  }
  double t = seconds_since(t0);
  o.require(t < 5.0, "took " + std::to_string(t) + "s");
  if (o.ok) o.detail = "20 complexes, " + std::to_string(top_classes) + " with H_n != 0, " + std::to_string(t) + "s";
  return o;
}

Outcome dec_retract() {
  Outcome o;
  for (std::string name : {"s3_nerve", "mixed_groupoid"}) {
    auto X = cli::read_sset(cli::load_document(fs::path(HYPERGPD_FIXTURES) / (name + ".json")));
    auto d = simpset::dec_plus(X);
    int n = 1;
    o.require(simpset::is_hypergroupoid(d.dec, X, d.counit, n - 1, simpset::HypMode::relative).verdict,
              name + ": Dec+X -> X fails the relative check");
    auto X0 = simpset::TruncatedSSet::coskeletal(simpset::constant(X.data().count[0], d.dec.top()), 0);
    o.require(simpset::is_hypergroupoid(d.dec, X0, d.to_vertex, n, simpset::HypMode::trivial_relative).verdict,
              name + ": Dec+X -> X_0 fails the trivial-relative check");
    // one contractible piece per vertex of X
    auto h = dkab::homotopy_groups(dkab::linearize<Integer>(d.dec.data()));
    for (int k = h.lo; k <= h.hi(); ++k) {
      dkab::HomologyGroup want;
      want.rank = k == 0 ? X.data().count[0] : 0;
      o.require(h.at(k) == want, name + ": H_" + std::to_string(k) + " of Dec+X is " + h.at(k).str());
    }
  }
  if (o.ok) o.detail = "S3 nerve and C2/C3 nerve: relative (0), trivial-relative (1), point homology per vertex";
  return o;
}

// h^0 and h^1 of O(d) on the projective line
std::vector<std::size_t> riemann_roch(int d) {
  return {std::size_t(std::max(d + 1, 0)), std::size_t(std::max(-d - 1, 0)), 0};
}

Outcome projective_line() {
  Outcome o;
  auto X = hypaff::P1(3);
  std::map<int, std::vector<std::size_t>> listed = {{0, {1, 0, 0}}, {-2, {0, 1, 0}}, {1, {2, 0, 0}}, {-1, {0, 0, 0}}};
  double worst = 0;
  for (int d = -3; d <= 3; ++d) {
    auto t0 = Clock::now();
    auto M = hypaff::line_bundle_P1(X, d);
    long r = std::abs(d) + 2;
    auto t = hypaff::cech_cohomology(X, M, 2, hypaff::Window{-r, r});
    worst = std::max(worst, seconds_since(t0));
    std::vector<std::size_t> alt(3, 0);
    for (long w = -r; w <= r; ++w) {
      auto h = dkab::cohomology_dims(dkab::alternating_complex(hypaff::cech_slice(X, M, w, 3)));
      for (std::size_t q = 0; q < 3; ++q) alt[q] += q < h.size() ? h[q] : 0;
    }
    std::string tag = "O(" + std::to_string(d) + ")";
    o.require(t.total == alt, tag + ": nerve " + tuple(t.total) + " vs alternating " + tuple(alt));
    o.require(t.total == riemann_roch(d), tag + ": " + tuple(t.total));
    if (listed.count(d)) o.require(t.total == listed[d], tag + ": " + tuple(t.total) + " vs " + tuple(listed[d]));
    long chi = long(t.total[0]) - long(t.total[1]) + long(t.total[2]);
    o.require(chi == d + 1, tag + ": Euler characteristic " + std::to_string(chi));
  }
  o.require(worst < 2.0, "slowest bundle took " + std::to_string(worst) + "s");
  if (o.ok) o.detail = "O, O(-2), O(1), O(-1) exact; chi = d+1 on [-3,3]; slowest " + std::to_string(worst) + "s";
  return o;
}

Outcome classifying_stack() {
  Outcome o;
  auto X = hypaff::BGm(3);
  auto h = hypaff::cech_cohomology(X, hypaff::structure_sheaf(X), 2, hypaff::Window{0, 0});
  o.require(h.total == std::vector<std::size_t>({1, 0, 0}), "H(O) = " + tuple(h.total));
  auto L = cotan::reduced_cotangent(X, 1);
  auto t = cotan::cotangent_homology(L, -2, 2);
  o.require(t.at(-1) == 1 && t.at(0) == 0, "cotangent H_-1 = " + std::to_string(t.at(-1)) + ", H_0 = " + std::to_string(t.at(0)));
  auto e = cotan::ext_dims(X, L, hypaff::structure_sheaf(X), 0, 2, hypaff::Window{0, 0});
  o.require(e.total == std::vector<std::size_t>({0, 1, 0}), "Ext = " + tuple(e.total));
  if (o.ok) o.detail = "H(O) = (1,0,0), cotangent (H_0,H_-1) = (0,1), Ext^0..2 = (0,1,0)";
  return o;
}

// Integrate t_1..t_n from the innermost variable outward over the standard simplex.
Rational iterated_integral(const rham::PolyForm& w) {
  int n = w.dim();
  std::size_t nv = std::size_t(n);
  qalg::Poly p(nv);
  for (const auto& [k, c] : w.terms()) p = p + qalg::Poly::monomial(k.first, c);
  for (int v = n - 1; v >= 0; --v) {
    qalg::Poly anti(nv);
    for (const auto& [m, c] : p.terms()) {
      auto e = m;
      ++e[v];
      anti = anti + qalg::Poly::monomial(e, c / Rational(e[v]));
    }
    std::vector<qalg::Poly> img;
    for (int j = 0; j < n; ++j) img.push_back(qalg::Poly::var(nv, j));
    qalg::Poly upper = qalg::Poly::constant(nv, 1);
    for (int j = 0; j < v; ++j) upper = upper - qalg::Poly::var(nv, j);
    img[v] = upper;
    p = anti.substitute(img, nv);
  }
  Rational r = 0;
  for (const auto& [m, c] : p.terms()) r += c;
  return r;
}

Outcome stokes() {
  Outcome o;
  std::size_t checked = 0;
  for (int n = 1; n <= 3; ++n)
    for (int w = 0; w <= 5; ++w) {
      for (const auto& f : rham::monomial_forms(n, n - 1, w)) {
        ++checked;
        o.require(rham::stokes_holds(f), "face sum fails for " + f.str() + " on Delta^" + std::to_string(n));
      }
      for (int k = 0; k < n - 1; ++k) {
        auto r = rham::integration_map_check(n, rham::monomial_forms(n, k, w));
        checked += r.samples.size();
        o.require(r.ok(), "cochain identity fails on Delta^" + std::to_string(n));
      }
    }
  auto f = rham::PolyForm::parse(2, "t1*t2*dt1^dt2");
  Rational closed = rham::simplex_integral(f), oracle = iterated_integral(f);
  o.require(closed == Rational(1, 24) && oracle == closed, "integral is " + closed.get_str() + ", oracle " + oracle.get_str());
  if (o.ok) o.detail = std::to_string(checked) + " monomial forms; int t1 t2 dt1 dt2 = 1/24 (oracle agrees)";
  return o;
}

Outcome thom_sullivan() {
  Outcome o;
  auto t0 = Clock::now();
  for (int n = 0; n <= 3; ++n)
    for (int W = 0; W <= 4; ++W) {
      auto h = dkab::cohomology_dims(rham::omega_complex(n, W));
      std::vector<std::size_t> want(std::size_t(n + 1), 0);
      want[0] = 1;
      o.require(h == want, "H(Omega_" + std::to_string(n) + ", weight <= " + std::to_string(W) + ") = " + tuple(h));
    }
  // discrete Q[x]: every weight slice is the constant module Q
  std::vector<dkab::SimplicialModule<Rational>> slices(4, dkab::constant_module<Rational>(1, 3));
  auto r = rham::dequiv_check(slices, 3);
  for (const auto& row : r.rows)
    o.require(row.equal && row.pi_A == std::vector<std::size_t>({1, 0, 0}),
              "weight " + std::to_string(row.weight) + ": " + tuple(row.pi_A) + " vs " + tuple(row.pi_T));
  double t = seconds_since(t0);
  o.require(t < 10.0, "took " + std::to_string(t) + "s");
  if (o.ok) o.detail = "Omega_n acyclic above degree 0 for n <= 3, weight <= 4; Q[x] slices 0..3 agree; " + std::to_string(t) + "s";
  return o;
}

Outcome cotangent_shift() {
  Outcome o;
  auto plane = hypaff::affine(qalg::FPAlgebra::make({"x", "y"}, {}, {1, 1}));
  auto nerve = hypaff::discrete(simpset::nerve(simpset::connected_groupoid(2, simpset::FiniteGroup::cyclic(2)), 4), "nerve");
  struct Case {
    std::string name;
    hypaff::AffHypergroupoid X;
    int m;
    hypaff::Window w;
  };
  std::vector<Case> cases = {{"affine plane", plane, 0, {0, 3}},
                             {"BGm", hypaff::BGm(3), 1, {-2, 2}},
                             {"C2 groupoid nerve", nerve, 1, {0, 0}}};
  std::size_t rows = 0;
  for (const auto& c : cases) {
    auto r = cotan::cotangent_shift_check(c.X, c.m, c.w);
    rows += r.rows.size();
    for (const auto& row : r.rows)
      o.require(row.agree && !row.beyond,
                c.name + " weight " + std::to_string(row.weight) + ": " + tuple(row.tot) + " vs " + tuple(row.shifted));
  }
  if (o.ok) o.detail = "affine plane, BGm, C2 nerve agree in " + std::to_string(rows) + " weight rows";
  return o;
}

Outcome recurrence() {
  Outcome o;
  auto f = hypaff::resolution_steps(20);
  for (unsigned long n = 0; n <= 20; ++n) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, n);
    o.require(f[n] == p - 1, "f(" + std::to_string(n) + ") = " + f[n].get_str());
  }
  if (o.ok) o.detail = "f(n) = 2^n - 1 for n <= 20";
  return o;
}

struct Invocation {
  std::string name, args;
  int status;
};

int run_to_file(const std::string& args, const fs::path& out) {
  std::string cmd = std::string("\"") + HYPERGPD_CLI + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const std::vector<Invocation> runs = {
      {"s3_n1", "check-hypergroupoid --fixture s3_nerve --n 1", 0},
      {"s3_n0", "check-hypergroupoid --fixture s3_nerve --n 0", 1},
      {"delta1_n1", "check-hypergroupoid --fixture delta1 --n 1", 1},
      {"mixed_relative", "check-hypergroupoid --fixture mixed_groupoid --n 0 --mode relative", 0},
      {"mixed_trivial", "check-hypergroupoid --fixture mixed_groupoid --n 1 --mode trivial", 0},
      {"p1_scheme", "check-hypergroupoid --fixture p1 --n 1", 0},
      {"s3_homology", "homotopy --fixture s3_nerve", 0},
      {"sphere_dk1", "dold-kan --fixture sphere2 --n 1", 1},
      {"sphere_dk2", "dold-kan --fixture sphere2 --n 2", 0},
      {"p1_O-2", "cech-cohomology --fixture p1 --sheaf 'O(-2)' --max-degree 2", 0},
      {"p1_O1", "cech-cohomology --fixture p1 --sheaf 'O(1)'", 0},
      {"bgm_O", "cech-cohomology --fixture bgm", 0},
      {"bgm_cotangent", "cotangent --fixture bgm --n 1 --weights -2:2", 0},
      {"bgm_shift", "cotangent --fixture bgm --n 1 --mode shift --weights -2:2", 0},
      {"plane_shift", "cotangent --fixture affine_plane --n 0 --mode shift", 0},
      {"nerve_shift", "cotangent --fixture discrete_c2 --n 1 --mode shift", 0},
      {"bgm_ext", "ext --fixture bgm --n 1", 0},
      {"sphere_ts", "thom-sullivan --fixture sphere2 --n 3", 0},
      {"omega_integrate", "integrate --fixture omega_samples", 0},
      {"malformed", "check-hypergroupoid --fixture malformed --n 1", 2},
  };
  fs::path root(HYPERGPD_GOLDEN_DIR);
  for (const char* pass : {"run1", "run2"}) {
    fs::remove_all(root / pass);
    fs::create_directories(root / pass);
    for (const auto& r : runs) {
      int st = run_to_file(r.args + " --format records", root / pass / (r.name + ".records"));
      o.require(st == r.status, std::string(pass) + " " + r.name + ": exit " + std::to_string(st) + ", expected " +
                                    std::to_string(r.status));
    }
  }
  for (const auto& r : runs) {
    auto a = slurp(root / "run1" / (r.name + ".records")), b = slurp(root / "run2" / (r.name + ".records"));
    o.require(!a.empty(), r.name + ": empty output");
    o.require(a == b, r.name + ": outputs differ between runs");
  }
  if (o.ok) o.detail = std::to_string(runs.size()) + " golden files identical across two runs in " + root.string();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"hypergroupoid gate", hypergroupoid_gate},
      {"Dold-Kan", dold_kan},
      {"Dec+ retract", dec_retract},
      {"Cech cohomology of P1", projective_line},
      {"BGm", classifying_stack},
      {"Stokes and integration", stokes},
      {"Thom-Sullivan", thom_sullivan},
      {"cotangent shift", cotangent_shift},
      {"recurrence", recurrence},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - std::size_t(failed)) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed ? 1 : 0;
}
