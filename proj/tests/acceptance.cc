// Acceptance checks: one line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tprym/enumerate.h"
#include "tprym/io.h"
#include "tprym/moments.h"
#include "tprym/oracle.h"
#include "tprym/sampling.h"
#include "tprym/trigonal.h"

using namespace tprym;

namespace {

// Pinned tolerances.
constexpr double kStdErrors = 4.0;                 // criteria 5, 6
constexpr std::int64_t kOracleSamples = 1000000;   // criterion 5
constexpr std::int64_t kHexagonSamples = 1000000;  // criterion 6
constexpr int kOracleCovers = 24;                  // criterion 5 (>= 20)
constexpr int kVolumePoints = 10;                  // criterion 4
constexpr int kTauGraphs = 50;                     // criterion 6
constexpr std::uint64_t kSeed = 20240601;

std::string fixture(const std::string& name) {
  return std::string(TPRYM_FIXTURE_DIR) + "/" + name + ".json";
}

const std::vector<std::string> kCoverFixtures = {
    "dumbbell", "theta_one_odd", "two_odd_loops", "fs2", "fs3", "genus3_fs2",
    "prism",    "k4_one_odd",    "theta_dilated_edges"};
const std::vector<std::string> kGraphFixtures = {"loop", "theta", "dumbbell_graph"};

int jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Line {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

bool report(int n, const std::string& title, const std::function<void(Line&)>& body) {
  Line line;
  auto start = std::chrono::steady_clock::now();
  try {
    body(line);
  } catch (const std::exception& e) {
    line.pass = false;
    line.detail << " [exception: " << e.what() << "]";
  }
  double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char t[32];
  std::snprintf(t, sizeof t, "%.1f", s);
  std::cout << "criterion " << n << " " << (line.pass ? "PASS" : "FAIL") << ": " << title
            << ";" << line.detail.str() << " (" << t << " s)" << std::endl;
  return line.pass;
}

std::vector<Var> vars_of(const Graph& g) { return length_variables(g); }

std::map<Var, LinearForm> zero_lengths(const Graph& g, int e) {
  std::map<Var, LinearForm> z;
  for (const auto& [v, c] : g.length(e).terms()) z[v] = LinearForm();
  return z;
}

// ------------------------------------------------------------------ 1

void counts(Line& line) {
  StageCounts c;
  generic_structures(4, &c);
  line.detail << " trees " << c.trees << ", typed " << c.typed << ", monodromy "
              << c.monodromy << ", generic " << c.generic << ", covers " << c.covers;
  line.require(c.trees == 37, "trees 37");
  line.require(c.typed == 1184, "typed 1184");
  line.require(c.monodromy == 12977, "monodromy 12977");
  line.require(c.generic == 821, "generic 821");
  line.require(c.covers == 12315, "covers 12315");
}

// ------------------------------------------------------------------ 2

void second_moment_identity(Line& line) {
  VerificationOptions opt;
  opt.jobs = jobs();
  VerificationReport r = run_verification(4, opt);
  const std::int64_t n = static_cast<std::int64_t>(r.outcomes.size());
  line.detail << " towers " << n << ", g(Pi)=3 " << r.genus_passed << ", w0 " << r.w0_passed
              << ", p-coefficient 1 passes " << r.passed[0] << ", p-coefficient 2 passes "
              << r.passed[1] << ", errors " << r.errors << ", winning coefficient "
              << r.winning_coefficient << ", q cases " << r.q_cases.size();
  line.require(n == 12315, "12315 towers");
  line.require(r.errors == 0, "no errors");
  line.require(r.genus_passed == n, "g(Pi) = 3 everywhere");
  line.require(r.w0_passed == n, "w0 identity everywhere");
  line.require(r.winning_coefficient != 0, "exactly one coefficient passes all towers");
}

// ------------------------------------------------------------------ 3

void sweeps(Line& line) {
  for (int g : {2, 3}) {
    VerificationOptions opt;
    opt.jobs = jobs();
    VerificationReport r = run_verification(g, opt);
    const std::int64_t n = static_cast<std::int64_t>(r.outcomes.size());
    int k = r.winning_coefficient;
    line.detail << " g=" << g << ": " << r.counts.trees << "/" << r.counts.typed << "/"
                << r.counts.monodromy << "/" << r.counts.generic << "/" << r.counts.covers
                << ", passed " << (k ? r.passed[k - 1] : 0) << "/" << n
                << " with coefficient " << k << ", q cases {";
    for (size_t i = 0; i < r.q_cases.size(); ++i)
      line.detail << (i ? ", " : "") << r.q_cases[i];
    line.detail << "}.";
    line.require(k != 0 && r.passed[k - 1] == n && r.errors == 0,
                 "all genus-" + std::to_string(g) + " towers pass");
    std::int64_t zero = 0, p2_branch = 0, other = 0;
    for (const TowerOutcome& o : r.outcomes) {
      if (o.q_zero)
        ++zero;
      else if (g == 3 && o.q_case == "fs2=1,fs3=0")
        ++p2_branch;
      else
        ++other;
    }
    line.detail << " q = 0 on " << zero << ", p2 branch on " << p2_branch << ";";
    line.require(other == 0, "q outside {0, p2 branch} at genus " + std::to_string(g));
    if (g == 2)
      line.require(r.counts.trees == 4 && r.counts.typed == 32 && r.counts.monodromy == 140 &&
                       r.counts.generic == 121 && r.counts.covers == 363,
                   "genus-2 goldens");
    else
      line.require(r.counts.trees == 11 && r.counts.typed == 176 &&
                       r.counts.monodromy == 1196 && r.counts.generic == 365 &&
                       r.counts.covers == 2555,
                   "genus-3 goldens");
  }
}

// ------------------------------------------------------------------ 4

void volumes(Line& line) {
  std::mt19937_64 rng(kSeed + 4);
  int checked = 0, bad = 0;
  for (const std::string& name : kCoverFixtures) {
    DoubleCover c = cover_from_json(load_json_file(fixture(name)));
    Polynomial w = w0_prym(c), wj = w0_jac(c.base());
    for (int k = 0; k < kVolumePoints; ++k) {
      Point p = random_point(vars_of(c.base()), rng);
      bool prym_ok = determinant(prym_gram(c, p)) == w.evaluate(p);
      bool jac_ok = determinant(jac_gram(c.base(), p)) == wj.evaluate(p);
      checked += 2;
      bad += !prym_ok + !jac_ok;
      if (!prym_ok || !jac_ok) line.detail << " mismatch on " << name;
    }
  }
  for (const std::string& name : kGraphFixtures) {
    Graph g = graph_from_json(load_json_file(fixture(name)));
    Polynomial w = w0_jac(g);
    for (int k = 0; k < kVolumePoints; ++k) {
      Point p = random_point(vars_of(g), rng);
      ++checked;
      if (determinant(jac_gram(g, p)) != w.evaluate(p)) {
        ++bad;
        line.detail << " mismatch on " << name;
      }
    }
  }
  line.detail << " " << checked - bad << "/" << checked
              << " exact determinant identities (Prym and Jacobian)";
  line.require(bad == 0, "all identities exact");
}

// ------------------------------------------------------------------ 5

void oracle_agreement(Line& line) {
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_int_distribution<int> gpick(2, 4), vpick(1, 5);
  int agree = 0, tested = 0;
  double worst = 0;
  while (tested < kOracleCovers) {
    int g = gpick(rng);
    DoubleCover c = random_free_cover(random_graph(g, vpick(rng), rng, "r"), rng);
    Point p = random_point(vars_of(c.base()), rng);
    double formula = i2_prym(c).evaluate(p);
    MomentEstimate m = mc_moment(prym_gram(c, p), kOracleSamples, kSeed + tested);
    double z = std::fabs(m.i2 - formula) / m.std_error;
    worst = std::max(worst, z);
    ++tested;
    agree += z <= kStdErrors;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", worst);
  line.detail << " " << agree << "/" << tested << " random covers (genus 2..4) within "
              << kStdErrors << " SE at " << kOracleSamples << " samples, max |z| " << buf;
  line.require(agree == tested, "all covers within tolerance");
}

// ------------------------------------------------------------------ 6

void jacobian(Line& line) {
  Graph loop = graph_from_json(load_json_file(fixture("loop")));
  MomentExpression m = i2_jac(loop);
  Polynomial e = Polynomial::variable("e");
  bool loop_ok = m.numerator.is_polynomial() && m.numerator.pieces()[0].poly == e * e &&
                 m.radicand == e && m.scale == Rational(1, 12);
  line.detail << " loop e^2/(12 sqrt(e)) " << (loop_ok ? "exact" : "differs") << ";";
  line.require(loop_ok, "loop");

  Graph theta = graph_from_json(load_json_file(fixture("theta")));
  Point ones;
  for (Var v : vars_of(theta)) ones[v] = 1;
  Matrix gram = jac_gram(theta, ones);
  Rational q = voronoi_q_2d(gram);
  auto [num, rad] = i2_jac(theta).evaluate_exact(ones);
  bool exact_ok = rad == determinant(gram) && num == rad * q && q == Rational(5, 18);
  double hexagon = std::sqrt(to_double(rad)) * to_double(q);
  MomentEstimate mc = mc_moment(gram, kHexagonSamples, kSeed + 6);
  double z = std::fabs(mc.i2 - hexagon) / mc.std_error;
  char buf[96];
  std::snprintf(buf, sizeof buf, " unit theta %.6f, hexagon %.6f, MC %.6f (|z| %.2f);",
                i2_jac(theta).evaluate(ones), hexagon, mc.i2, z);
  line.detail << buf;
  line.require(exact_ok, "theta exact polygon integral");
  line.require(z <= kStdErrors, "theta Monte Carlo");

  std::mt19937_64 rng(kSeed + 66);
  std::uniform_int_distribution<int> gpick(1, 5), vpick(1, 7);
  int tau_ok = 0;
  for (int k = 0; k < kTauGraphs; ++k) {
    Graph g = random_graph(gpick(rng), vpick(rng), rng, "y");
    tau_ok += tau_identity_residual(g).is_zero();
  }
  line.detail << " tau identity " << tau_ok << "/" << kTauGraphs << " random graphs";
  line.require(tau_ok == kTauGraphs, "tau identity");
}

// ------------------------------------------------------------------ 7

void structure(Line& line) {
  // q of every tower cover (free edge variables), of every fixture and of the
  // dilated/contracted covers below: wall continuity and homogeneity.
  std::int64_t q_count = 0, q_bad = 0, deg_bad = 0;
  auto check_q = [&](const DoubleCover& c) {
    int t = torus_rank(c);
    QResult q = q_prym(c);
    ++q_count;
    if (!wall_continuity(q.q)) ++q_bad;
    bool deg = w0_prym(c).homogeneous_of_degree(t) && p_prym(c).homogeneous_of_degree(t + 1);
    for (const Piece& piece : q.q.pieces()) deg = deg && piece.poly.homogeneous_of_degree(t + 1);
    if (!deg) ++deg_bad;
  };
  for (int g : {2, 3, 4})
    for (const Tower& t : towers(g, nullptr)) {
      DoubleCover s = stabilized_cover(t.cover);
      check_q(DoubleCover(s.base().with_variable_lengths(), s.markings()));
    }
  std::vector<DoubleCover> fixtures;
  for (const std::string& name : kCoverFixtures)
    fixtures.push_back(cover_from_json(load_json_file(fixture(name))));
  for (const DoubleCover& c : fixtures) check_q(c);
  line.detail << " wall continuity " << q_count - q_bad << "/" << q_count
              << ", homogeneity " << q_count - deg_bad << "/" << q_count << ";";
  line.require(q_bad == 0, "wall continuity");
  line.require(deg_bad == 0, "homogeneity");

  int same = 0, same_ok = 0, drop = 0, drop_ok = 0;
  for (size_t i = 0; i < fixtures.size(); ++i) {
    const DoubleCover& c = fixtures[i];
    MomentExpression m = i2_prym(c);
    for (int e = 0; e < c.base().num_edges(); ++e) {
      DoubleCover d = contract_cover(c, {e}).cover;
      auto z = zero_lengths(c.base(), e);
      Polynomial rad = m.radicand.substitute_partial(z);
      PiecewisePolynomial num = m.numerator.substitute(z);
      if (torus_rank(d) == torus_rank(c)) {
        ++same;
        MomentExpression md = i2_prym(d);
        bool ok = rad == md.radicand && compare_functions(num, md.numerator).empty();
        same_ok += ok;
        if (!ok) line.detail << " limit differs: " << kCoverFixtures[i] << "/" << c.base().edge_id(e);
      } else {
        ++drop;
        bool ok = rad.is_zero() &&
                  compare_functions(num, PiecewisePolynomial(Polynomial())).empty();
        drop_ok += ok;
        if (!ok)
          line.detail << " degenerate limit nonzero: " << kCoverFixtures[i] << "/"
                      << c.base().edge_id(e);
      }
    }
  }
  line.detail << " single-edge contraction limits " << same_ok << "/" << same
              << " exact, rank-dropping limits degenerate " << drop_ok << "/" << drop << ";";
  line.require(same_ok == same && drop_ok == drop, "contraction limits");

  int dil_ok = 0, dil = 0;
  for (const DoubleCover& c : fixtures) {
    std::vector<int> dilated;
    for (int e = 0; e < c.base().num_edges(); ++e)
      if (c.edge_dilated(e)) dilated.push_back(e);
    if (dilated.empty()) continue;
    ++dil;
    DoubleCover d = contract_cover(c, dilated).cover;
    MomentExpression a = i2_prym(c), b = i2_prym(d);
    dil_ok += d.is_edge_free() && a.radicand == b.radicand &&
              compare_functions(a.numerator, b.numerator).empty();
  }
  line.detail << " dilated-edge invariance " << dil_ok << "/" << dil;
  line.require(dil > 0 && dil_ok == dil, "dilated-edge invariance");
}

// ------------------------------------------------------------------ 8

void negative_controls(Line& line) {
  int caught = 0, total = 0;
  auto expect = [&](bool detected, const std::string& what) {
    ++total;
    caught += detected;
    if (!detected) line.detail << " undetected: " << what;
  };
  auto throws = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception&) {
      return true;
    }
    return false;
  };

  Json j = load_json_file(fixture("theta_one_odd"));
  j["edges"][2]["sign"] = 0;
  expect(throws([&] { cover_from_json(j); }), "sign 0");

  Json f = load_json_file(fixture("fs2"));
  f["vertices"][0]["genus"] = 0;
  expect(throws([&] { cover_from_json(f); }), "invalid dilation");

  Json d = load_json_file(fixture("theta_one_odd"));
  d["edges"][2]["sign"] = 1;
  expect(throws([&] { torus_rank(cover_from_json(d)); }), "disconnected total space");

  std::vector<Tower> ts = towers(3, nullptr);
  Tower bad_degree = ts.front();
  bad_degree.trig.edge_degree[0] = bad_degree.trig.edge_degree[0] == 1 ? 2 : 1;
  expect(throws([&] { check_tower(bad_degree); }), "corrupted edge degree");

  Tower bad_length = ts.front();
  bad_length.cover.mutable_base().set_length(0, bad_length.cover.base().length(0) * 2);
  bad_length.trig.source.set_length(0, bad_length.cover.base().length(0));
  expect(throws([&] { check_tower(bad_length); }), "corrupted edge length");

  Json tj = tower_to_json(ts.front());
  tj["vertex_map"].begin().value()["to"] = "no such vertex";
  expect(throws([&] { tower_from_json(tj); }), "corrupted tower json");

  // Pi of one cover class against the Prym volume of another class of the
  // same trigonal structure.
  int swapped = 0, swapped_caught = 0;
  for (size_t i = 0; i + 1 < ts.size() && swapped < 50; ++i) {
    if (tower_to_json(ts[i])["tree"] != tower_to_json(ts[i + 1])["tree"]) continue;
    if (ts[i].cover.base().num_edges() != ts[i + 1].cover.base().num_edges()) continue;
    TowerReport r = verify_tower(ts[i]);
    ++swapped;
    swapped_caught += w0_prym(stabilized_cover(ts[i + 1].cover)) != r.w0_pi;
  }
  line.detail << " swapped cover classes flagged " << swapped_caught << "/" << swapped << ";";
  expect(swapped > 0 && swapped_caught > 0, "swapped cover classes");

  VerificationReport r2 = run_verification(2);
  expect(r2.passed[0] == 0 && r2.winning_coefficient == 2,
         "printed p-coefficient reported as failing");

  DoubleCover k4 = cover_from_json(load_json_file(fixture("k4_one_odd")));
  std::mt19937_64 rng(kSeed + 8);
  Point p = random_point(vars_of(k4.base()), rng);
  Matrix gram = prym_gram(k4, p);
  double formula = i2_prym(k4).evaluate(p);
  MomentEstimate m = mc_moment(gram, 200000, kSeed + 8);
  expect(std::fabs(m.i2 - 1.05 * formula) > kStdErrors * m.std_error,
         "perturbed I2 (+5%) rejected by the oracle");

  DoubleCover other = cover_from_json(load_json_file(fixture("prism")));
  Point pp = random_point(vars_of(other.base()), rng);
  expect(determinant(prym_gram(other, pp)) != w0_jac(other.base()).evaluate(pp),
         "Jacobian volume is not the Prym volume");

  PiecewisePolynomial broken(
      {Piece{Cone{{LinearForm::parse("x - y")}}, Polynomial::parse("x")},
       Piece{Cone{{LinearForm::parse("y - x")}}, Polynomial::parse("2*y")}});
  expect(!wall_continuity(broken), "discontinuous piecewise function");

  line.detail << " " << caught << "/" << total << " corruptions reported";
  line.require(caught == total, "every corruption reported");
}

}  // namespace

int main() {
  std::cout << "acceptance: " << jobs() << " worker thread(s)" << std::endl;
  bool ok = true;
  ok &= report(1, "genus-4 pipeline counts", counts);
  ok &= report(2, "genus-4 second-moment identity on all towers", second_moment_identity);
  ok &= report(3, "genus-2 and genus-3 sweeps", sweeps);
  ok &= report(4, "volume identities", volumes);
  ok &= report(5, "Monte Carlo oracle agreement", oracle_agreement);
  ok &= report(6, "Jacobian second moment", jacobian);
  ok &= report(7, "structural properties", structure);
  ok &= report(8, "negative controls", negative_controls);
  std::cout << (ok ? "ALL PASS" : "SOME CRITERIA FAILED") << std::endl;
  return ok ? 0 : 1;
}
