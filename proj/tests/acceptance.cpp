// Acceptance suite: one PASS/FAIL line per criterion, sub-lines where a
// criterion bundles several families of checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "weilstar/cli.hpp"
#include "weilstar/weil.hpp"

using namespace weilstar;

namespace {

constexpr double kTol = 1e-8;

RingPtr truncated(std::uint32_t p, std::uint32_t m, Involution inv = Involution::NegateX) {
  return make_ring(TruncatedPolySpec{FieldSpec{p, 1, {}}, m, inv});
}

struct Setup {
  explicit Setup(RingPtr r)
      : ring(std::move(r)), ctx(ring), module(ring), table(module), bundle(table, ctx.group()), geom(ctx, bundle) {}
  RingPtr ring;
  WeilContext ctx;
  SelfDualModule module;
  LagrangianTable table;
  Bundle bundle;
  GeometricWeil geom;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string fmt(Scalar z) {
  auto clean = [](double v) { return std::abs(v) < 1e-12 ? 0.0 : v; };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", clean(z.real()), clean(z.imag()));
  return buf;
}

std::string summary(const Check& c) {
  return c.name + ": " + std::to_string(c.checked) + " checked, " + std::to_string(c.failures) +
         " failed, max dev " + fmt(c.max_deviation);
}

int failures = 0;

void line(const std::string& label, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << label << "  " << detail << '\n';
  if (!ok) ++failures;
}

void sub(const std::string& label, bool ok, const std::string& detail) {
  std::cout << "     " << (ok ? "pass " : "FAIL ") << label << "  " << detail << '\n';
}

void info(const std::string& text) { std::cout << "     info " << text << '\n'; }

// Prints every failing check of a list as a sub-line and returns whether all passed.
bool report_checks(const std::string& prefix, const std::vector<Check>& checks) {
  bool ok = !checks.empty();
  for (const auto& c : checks) {
    if (!c.passed()) {
      ok = false;
      sub(prefix, false, summary(c));
      for (const auto& w : c.witnesses) std::cout << "          witness: " << w << '\n';
    }
  }
  return ok;
}

int legendre(std::int64_t a, std::int64_t p) {
  a = ((a % p) + p) % p;
  for (std::int64_t t = 1; t < p; ++t)
    if ((t * t) % p == a) return 1;
  return -1;
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  WeilContext ctx(truncated(3, 1, Involution::Identity));
  const auto elements = ctx.group().enumerate(1000);
  std::vector<OperatorMatrix> ops;
  for (const auto& g : elements) ops.push_back(ctx.rho(g));
  Check hom("rho(g) rho(h) = rho(gh)");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const OperatorMatrix gh = ctx.rho(ctx.group().mul(elements[i], elements[j]));
      hom.record(max_abs(ops[i] * ops[j] - gh), kTol, [&] { return ctx.group().to_string(elements[i]); });
    }
  }
  const double secs = seconds_since(t0);
  line("1 true representation (q=3, m=1, identity involution)",
       hom.passed() && elements.size() == 24 && hom.checked == 576 && secs < 10.0,
       "|G| = " + std::to_string(elements.size()) + ", " + std::to_string(hom.checked) + " pairs, max dev " +
           fmt(hom.max_deviation) + ", " + fmt(secs) + " s");
}

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  WeilContext ctx(truncated(3, 3));
  const auto params = relation_parameters(ctx.group(), 1000, 0);
  const auto report = verify_operator_relations(ctx, params, kTol);
  const double secs = seconds_since(t0);
  double worst = 0.0;
  for (const auto& r : report.relations) worst = std::max(worst, r.max_deviation);
  const bool ok = report_checks("2", report.relations) && params.units.size() >= 18 && secs < 120.0;
  line("2 presentation relations as operators (q=3, m=3, dim 27)", ok,
       std::to_string(report.relations.size()) + " relations, " + std::to_string(params.units.size()) +
           " units, " + std::to_string(params.symmetric.size()) + " symmetric, max dev " + fmt(worst) + ", " +
           fmt(secs) + " s");
}

void criterion3() {
  bool ok = true;
  std::string detail;
  {
    Setup s(truncated(3, 1));
    const auto r = verify_connection(s.bundle, VerifyMode::Exhaustive, 0, 0, kTol);
    const bool sub_ok = report_checks("3 m=1", r.properties) && s.table.size() == 4;
    sub("3a exhaustive, q=3 m=1", sub_ok, std::to_string(s.table.size()) + " Lagrangians, " +
                                              std::to_string(r.properties.size()) + " properties");
    ok = ok && sub_ok;
  }
  {
    Setup s(truncated(3, 3));
    const auto r = verify_connection(s.bundle, VerifyMode::Sampled, 200, 0, kTol);
    std::size_t triples = 0;
    double unitarity = 0.0;
    for (const auto& c : r.properties) {
      if (c.name.rfind("d)", 0) == 0) triples = std::max(triples, c.checked);
      if (c.name.rfind("b)", 0) == 0) unitarity = c.max_deviation;
    }
    const bool sub_ok = report_checks("3 m=3", r.properties) && triples >= 200;
    sub("3b sampled, q=3 m=3", sub_ok,
        std::to_string(triples) + " triples, gamma unitarity dev " + fmt(unitarity));
    ok = ok && sub_ok;
  }
  line("3 connection properties a)-e)", ok, "");
}

void criterion4() {
  Setup s(truncated(3, 3));
  const auto r = verify_cocycle(s.geom, 500, 0, kTol, 1e-6);
  const bool ok = report_checks("4", r.checks) && r.records.size() >= 500;
  double law = 0.0, agree = 0.0, residual = 0.0;
  for (const auto& c : r.checks) {
    if (c.name.rfind("projective", 0) == 0) law = c.max_deviation;
    if (c.name.rfind("formula", 0) == 0) agree = c.max_deviation;
    if (c.name.rfind("operational residual", 0) == 0) residual = c.max_deviation;
  }
  line("4 projective law and cocycle (q=3, m=3)", ok,
       std::to_string(r.records.size()) + " pairs, law dev " + fmt(law) + ", formula vs operational " + fmt(agree) +
           ", residual " + fmt(residual));
  for (const auto& d : r.diagnostics) info(std::string(d.passed() ? "holds: " : "fails: ") + summary(d));
}

void criterion5() {
  bool ok = true;
  for (std::uint32_t m : {1u, 3u}) {
    Setup s(truncated(3, m));
    const auto r = compare_representations(s.geom, 500, 0, kTol);
    const std::string tag = "m=" + std::to_string(m);
    const std::vector<Check> generators(r.checks.begin(), r.checks.begin() + 6);
    bool gen_ok = true;
    for (const auto& c : generators) gen_ok = gen_ok && c.passed();
    std::string gen_detail;
    for (const auto& c : generators) {
      if (!c.passed()) gen_detail += "[" + summary(c) + "] ";
    }
    sub("5 generator identities, q=3 " + tag, gen_ok, gen_ok ? "all parameters" : gen_detail);
    const Check& factor = r.checks[6];
    sub("5 rho(g) = delta(g) sigma_g, q=3 " + tag, factor.passed(), summary(factor));
    const Check& cob = r.checks[7];
    const bool cob_ok = cob.passed() && cob.checked >= 500 && r.orientation != Orientation::None;
    sub("5 coboundary identity, q=3 " + tag, cob_ok,
        std::string("orientation: ") + orientation_name(r.orientation) + "; " + summary(cob));
    info(tag + ": omega = " + fmt(r.omega) + ", kappa = alpha(-1) q^{m/2} / S(1) = " + fmt(r.kappa) +
         ", operational orientation: " + orientation_name(r.operational_orientation));
    for (const auto& d : r.diagnostics) info(tag + " " + (d.passed() ? "holds: " : "fails: ") + summary(d));
    ok = ok && r.passed();
  }
  line("5 comparison and coboundary (q=3, m in {1,3})", ok, "");
}

void criterion6() {
  bool ok = true;
  for (std::uint32_t p : {3u, 5u}) {
    for (std::uint32_t m : {1u, 3u}) {
      WeilContext ctx(truncated(p, m));
      const Ring& r = ctx.ring();
      const auto report = verify_gauss_sums(ctx, kTol);
      // Independent sign character: the Legendre symbol of the constant term.
      Check legendre_check("alpha equals the Legendre symbol of the constant term");
      for (auto a : r.enumerate(Subset::SymmetricUnits)) {
        const int expected = legendre(r.payload(a)[0].code, p);
        legendre_check.record(std::abs(ctx.alpha(a) - double(expected)), kTol, [&] { return r.to_string(a); });
      }
      const double qm = std::pow(double(p), double(m));
      const bool exact_zero = ctx.gauss_sum(r.zero()) == Scalar(qm, 0.0);
      const bool sub_ok = report_checks("6", report.checks) && legendre_check.passed() && exact_zero;
      sub("6 q=" + std::to_string(p) + " m=" + std::to_string(m), sub_ok,
          std::to_string(legendre_check.checked) + " symmetric units, omega = " + fmt(ctx.omega()) +
              ", S(0) = " + fmt(ctx.gauss_sum(r.zero()).real()));
      ok = ok && sub_ok;
    }
  }
  line("6 Gauss-sum facts", ok, "");
}

void criterion7() {
  bool ok = true;
  for (std::uint32_t m : {1u, 3u}) {
    auto ring = truncated(3, m);
    SelfDualModule mod(ring);
    LagrangianTable table(mod);
    bool sizes = true;
    for (const auto& l : table.all()) sizes = sizes && l.size() == mod.dim();
    std::size_t candidates = 0, disagreements = 0;
    for (const auto& c : mod.submodule_candidates()) {
      ++candidates;
      if (mod.is_lagrangian(c.elements) != mod.is_lagrangian_hermitian(c.elements)) ++disagreements;
    }
    bool count_ok = m != 1 || table.size() == 4;
    const bool sub_ok = sizes && disagreements == 0 && count_ok;
    sub("7 q=3 m=" + std::to_string(m), sub_ok,
        std::to_string(table.size()) + " Lagrangians, all of size q^m: " + (sizes ? "yes" : "no") + ", " +
            std::to_string(candidates) + " candidates, " + std::to_string(disagreements) + " disagreements");
    ok = ok && sub_ok;
  }
  {
    auto ring = truncated(3, 1);
    SelfDualModule mod(ring);
    StarGroup group(ring);
    Check preserved("B(g.v, g.w) = B(v, w)");
    for (const auto& g : group.enumerate(1000)) {
      for (std::uint32_t v = 0; v < mod.size(); ++v) {
        for (std::uint32_t w = 0; w < mod.size(); ++w) {
          const auto gv = mod.act(group, g, mod.vector(v)), gw = mod.act(group, g, mod.vector(w));
          preserved.record_bool(mod.form_B(gv, gw) == mod.form_B(mod.vector(v), mod.vector(w)), group.to_string(g));
        }
      }
    }
    sub("7 B-invariance, exhaustive q=3 m=1", preserved.passed(), summary(preserved));
    ok = ok && preserved.passed();
  }
  line("7 Lagrangian geometry", ok, "");
}

void criterion8() {
  bool ok = true;
  {
    StarGroup g(make_ring(MatrixRingSpec{FieldSpec{3, 1, {}}, 2}));
    const auto checks = verify_sampled_words(g, 1000, 0);
    bool sub_ok = true;
    for (const auto& c : checks) {
      sub_ok = sub_ok && c.passed() && c.checked >= 1000;
    }
    std::string detail;
    for (const auto& c : checks) detail += "[" + summary(c) + "] ";
    sub("8 M(2,F_3) sampled words", sub_ok, detail);
    ok = ok && sub_ok;
  }
  {
    auto doubled = make_ring(DoublingSpec{FieldSpec{3, 1, {}}, 1});
    auto base = make_ring(MatrixRingSpec{FieldSpec{3, 1, {}}, 1});
    StarGroup g(doubled);
    std::set<StarMatrix> image;
    bool invertible = true;
    for (const auto& e : g.enumerate(10000)) {
      const auto p = doubling_projection(g, *base, e);
      invertible = invertible && block_invertible(*base, p);
      image.insert(p);
    }
    const bool sub_ok = invertible && image.size() == 48;
    sub("8 doubling over F_3 onto GL(2,F_3)", sub_ok, std::to_string(image.size()) + " images");
    ok = ok && sub_ok;
  }
  {
    const auto n3 = StarGroup(truncated(3, 1)).enumerate(1000).size();
    const auto n5 = StarGroup(truncated(5, 1)).enumerate(1000).size();
    const bool sub_ok = n3 == 24 && n5 == 120;
    sub("8 BFS orders over F_3, F_5", sub_ok, std::to_string(n3) + ", " + std::to_string(n5));
    ok = ok && sub_ok;
  }
  line("8 cross-checks", ok, "");
}

void criterion9() {
  const std::vector<std::string> args{"weil", "compare", "--p", "3", "--m", "3", "--samples", "500", "--seed", "0"};
  std::ostringstream out1, err1, out2, err2;
  const int c1 = run_command(args, out1, err1);
  const int c2 = run_command(args, out2, err2);
  const bool ok = c1 == c2 && out1.str() == out2.str() && err1.str() == err2.str() && !out1.str().empty();
  line("9 determinism of weil compare --p 3 --m 3 --samples 500 --seed 0", ok,
       "exit codes " + std::to_string(c1) + "/" + std::to_string(c2) + ", " + std::to_string(out1.str().size()) +
           " bytes, identical: " + (out1.str() == out2.str() ? "yes" : "no"));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                    criterion6, criterion7, criterion8, criterion9};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      line("criterion aborted", false, e.what());
    }
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << "  ("
            << fmt(seconds_since(t0)) << " s)\n";
  return failures == 0 ? 0 : 1;
}
