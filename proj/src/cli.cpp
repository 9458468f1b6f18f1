#include "weilstar/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "weilstar/config.hpp"
#include "weilstar/weil.hpp"

namespace weilstar {

namespace {

struct Options {
  std::uint32_t p = 3, e = 1, m = 1, n = 2;
  std::vector<std::uint32_t> modulus;
  std::string involution = "negate-x";
  std::string ring = "truncated";
  std::string output = "json";
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  std::string cache_dir;
  std::string report_path;

  std::string method = "bruhat";
  std::string mode;
  std::vector<std::string> element;
  std::size_t limit = 100000;
};

struct Result {
  nlohmann::json body = nlohmann::json::object();
  std::vector<Check> checks;
  std::vector<Check> diagnostics;
  std::vector<std::vector<std::string>> table;  // header row first
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--p", o.p, "Characteristic (odd prime)");
  cmd->add_option("--e", o.e, "Extension degree of the field");
  cmd->add_option("--modulus", o.modulus, "Defining polynomial, constant term first, monic");
  cmd->add_option("--m", o.m, "Truncation degree of A_m");
  cmd->add_option("--involution", o.involution, "negate-x or identity");
  cmd->add_option("--ring", o.ring, "truncated, matrix or doubling");
  cmd->add_option("--n", o.n, "Matrix size for matrix and doubling rings");
  cmd->add_option("--samples", o.samples, "Sample size");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--tolerance", o.tolerance, "Numerical tolerance");
  cmd->add_option("--output", o.output, "json, csv or text");
  cmd->add_option("--cache-dir", o.cache_dir, "Directory for cached Lagrangian tables");
  cmd->add_option("--report", o.report_path, "Write the report to this file instead of stdout");
}

RunConfig make_config(const Options& o) {
  RunConfig c;
  FieldSpec f{o.p, o.e, o.modulus};
  if (o.ring == "truncated") {
    c.ring = TruncatedPolySpec{f, o.m, parse_involution(o.involution)};
  } else if (o.ring == "matrix") {
    c.ring = MatrixRingSpec{f, o.n};
  } else if (o.ring == "doubling") {
    c.ring = DoublingSpec{f, o.n};
  } else {
    throw ConfigError("unknown ring '" + o.ring + "' (expected truncated, matrix or doubling)");
  }
  c.seed = o.seed;
  c.samples = o.samples;
  c.tolerance = o.tolerance;
  c.output = parse_output_format(o.output);
  if (!o.cache_dir.empty()) c.cache_dir = o.cache_dir;
  validate(c);
  return c;
}

RingPtr build_ring(const RunConfig& c) {
  try {
    return make_ring(c.ring);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// Owns everything the Weil commands need, in dependency order.
struct WeilSetup {
  RingPtr ring;
  std::unique_ptr<WeilContext> context;
  std::unique_ptr<SelfDualModule> module;
  std::unique_ptr<LagrangianTable> table;
  std::unique_ptr<Bundle> bundle;
  std::unique_ptr<GeometricWeil> geometric;
};

std::unique_ptr<LagrangianTable> build_table(const SelfDualModule& module, const RunConfig& c) {
  if (c.cache_dir) return std::make_unique<LagrangianTable>(LagrangianTable::load_or_enumerate(module, *c.cache_dir));
  return std::make_unique<LagrangianTable>(module);
}

WeilSetup build_weil(const RunConfig& c, bool geometric) {
  WeilSetup s;
  s.ring = build_ring(c);
  if (!supports_weil(*s.ring)) {
    throw ConfigError("Weil commands require --ring truncated with negate-x and odd m (or m = 1)");
  }
  s.context = std::make_unique<WeilContext>(s.ring);
  if (geometric) {
    s.module = std::make_unique<SelfDualModule>(s.ring);
    s.table = build_table(*s.module, c);
    s.bundle = std::make_unique<Bundle>(*s.table, s.context->group());
    s.geometric = std::make_unique<GeometricWeil>(*s.context, *s.bundle);
  }
  return s;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------

Result ring_info(const RunConfig& c) {
  const RingPtr ring = build_ring(c);
  const Ring& r = *ring;
  Result res;
  res.body["ring"] = describe(r.spec());
  res.body["size"] = r.size();
  res.body["payload_size"] = r.payload_size();
  res.body["q"] = r.field().q();
  nlohmann::json counts;
  counts["all"] = r.size();
  counts["symmetric"] = r.enumerate(Subset::Symmetric).size();
  counts["units"] = r.enumerate(Subset::Units).size();
  counts["symmetric_units"] = r.enumerate(Subset::SymmetricUnits).size();
  counts["central_symmetric_units"] = r.enumerate(Subset::CentralSymmetricUnits).size();
  res.body["counts"] = counts;

  if (std::uint64_t{r.size()} * r.size() <= 1'100'000) {
    Check anti("(ab)* = b* a*");
    Check additive("(a + b)* = a* + b*");
    Check invol("a** = a");
    const auto all = r.enumerate(Subset::All);
    for (auto a : all) {
      invol.record_bool(r.star(r.star(a)) == a, r.to_string(a));
      for (auto b : all) {
        const auto name = [&] { return "a=" + r.to_string(a) + ", b=" + r.to_string(b); };
        anti.record(r.star(r.mul(a, b)) == r.mul(r.star(b), r.star(a)) ? 0.0 : 1.0, 0.5, name);
        additive.record(r.star(r.add(a, b)) == r.add(r.star(a), r.star(b)) ? 0.0 : 1.0, 0.5, name);
      }
    }
    res.checks = {anti, additive, invol};
  }
  if (r.is_truncated_poly()) {
    const std::uint64_t q = r.field().q();
    std::uint64_t expected = q - 1;
    for (std::uint32_t i = 1; i < r.degree_bound(); ++i) expected *= q;
    Check units("unit count = (q-1) q^(m-1)");
    units.record_bool(counts["units"].get<std::uint64_t>() == expected, std::to_string(expected) + " expected");
    res.checks.push_back(units);
  }
  if (supports_weil(r)) {
    WeilContext ctx(ring);
    res.body["omega"] = to_json(ctx.omega());
    res.body["kappa"] = to_json(ctx.kappa());
    nlohmann::json gauss = nlohmann::json::array();
    for (auto a : ctx.group().symmetric_units()) {
      gauss.push_back({{"a", r.to_string(a)},
                       {"gauss_sum", to_json(ctx.gauss_sum(a))},
                       {"alpha", to_json(ctx.alpha(a))},
                       {"sign_character", ctx.sign_character(a)}});
      res.table.push_back({r.to_string(a), fmt(ctx.gauss_sum(a).real()), fmt(ctx.gauss_sum(a).imag()),
                           fmt(ctx.alpha(a).real()), fmt(ctx.alpha(a).imag()), std::to_string(ctx.sign_character(a))});
    }
    res.table.insert(res.table.begin(), {"a", "gauss_re", "gauss_im", "alpha_re", "alpha_im", "sign"});
    res.body["gauss_sums"] = gauss;
    for (auto& ch : verify_gauss_sums(ctx, c.tolerance).checks) res.checks.push_back(ch);
  }
  return res;
}

Result group_enumerate(const RunConfig& c, std::size_t limit) {
  const RingPtr ring = build_ring(c);
  StarGroup group(ring);
  const auto elements = group.enumerate(limit);
  Result res;
  res.body["ring"] = describe(ring->spec());
  res.body["order"] = elements.size();
  Check member("every element lies in SL_*(2, A)");
  Check normal("normal form re-multiplies to the element");
  std::size_t cells[3] = {0, 0, 0};
  for (const auto& g : elements) {
    member.record_bool(group.membership(g) == Membership::SLStar, group.to_string(g));
    bool ok = false;
    try {
      const auto f = group.normal_form(g);
      ok = group.evaluate(f) == g;
      ++cells[f.w_count()];
    } catch (const std::exception&) {
      ok = false;
    }
    normal.record_bool(ok, group.to_string(g));
  }
  res.checks = {member, normal};
  res.body["cells"] = {{"B", cells[0]}, {"BwB", cells[1]}, {"BwBwB", cells[2]}};
  if (ring->is_truncated_poly() && ring->degree_bound() == 1) {
    const std::uint64_t q = ring->field().q();
    Check order("order = q(q^2 - 1)");
    order.record_bool(elements.size() == q * (q * q - 1), std::to_string(elements.size()));
    res.checks.push_back(order);
  }
  if (const auto* ds = std::get_if<DoublingSpec>(&ring->spec())) {
    Ring base(MatrixRingSpec{ds->field, ds->r});
    std::set<std::array<std::uint32_t, 4>> image;
    Check inv("projection lands in GL(2, R)");
    for (const auto& g : elements) {
      const StarMatrix x = doubling_projection(group, base, g);
      image.insert({x.a.code(), x.b.code(), x.c.code(), x.d.code()});
      inv.record_bool(block_invertible(base, x), group.to_string(g));
    }
    res.body["projection_image_size"] = image.size();
    res.checks.push_back(inv);
  }
  constexpr std::size_t kListed = 2000;
  if (elements.size() <= kListed) {
    nlohmann::json list = nlohmann::json::array();
    res.table.push_back({"a", "b", "c", "d"});
    for (const auto& g : elements) {
      list.push_back(group.to_string(g));
      const Ring& r = *ring;
      res.table.push_back({r.to_literal(g.a), r.to_literal(g.b), r.to_literal(g.c), r.to_literal(g.d)});
    }
    res.body["elements"] = list;
  } else {
    res.body["elements_listed"] = false;
  }
  return res;
}

Result group_verify_relations(const RunConfig& c) {
  const RingPtr ring = build_ring(c);
  StarGroup group(ring);
  Result res;
  res.body["ring"] = describe(ring->spec());
  res.checks = verify_relations(group, c.samples, c.seed).relations;
  for (auto& ch : verify_sampled_words(group, c.samples, c.seed)) res.checks.push_back(ch);
  return res;
}

Result group_normal_form(const RunConfig& c, const std::vector<std::string>& literals) {
  const RingPtr ring = build_ring(c);
  StarGroup group(ring);
  if (literals.size() != 4) throw ConfigError("normal-form expects four ring-element literals a b c d");
  const StarMatrix g = parse_matrix(*ring, literals[0], literals[1], literals[2], literals[3]);
  if (group.membership(g) != Membership::SLStar) throw ConfigError("matrix is not in SL_*(2, A): " + group.to_string(g));
  const BruhatForm f = group.normal_form(g);
  Result res;
  res.body["element"] = group.to_string(g);
  res.body["cell"] = cell_name(f.cell);
  res.body["w_length"] = group.w_length(g);
  res.body["word"] = group.to_string(f.word());
  nlohmann::json params{{"t", ring->to_string(f.t)}, {"b1", ring->to_string(f.b1)}};
  if (f.c1) params["c1"] = ring->to_string(*f.c1);
  if (f.d1) params["d1"] = ring->to_string(*f.d1);
  res.body["parameters"] = params;
  Check round("word re-multiplies to the element");
  round.record_bool(group.evaluate(f) == g, group.to_string(f.word()));
  res.checks = {round};
  return res;
}

Result lagrangians_enumerate(const RunConfig& c) {
  const RingPtr ring = build_ring(c);
  SelfDualModule module(ring);
  const auto table = build_table(module, c);
  Result res;
  res.body["ring"] = describe(ring->spec());
  res.body["count"] = table->size();
  nlohmann::json list = nlohmann::json::array();
  res.table.push_back({"id", "generators", "size"});
  Check size("|L| = q^m");
  Check closed("L is an A-submodule");
  for (const auto& l : table->all()) {
    std::string gens;
    for (const auto& g : l.generators) gens += (gens.empty() ? "" : " ") + module.to_string(g);
    list.push_back({{"id", l.id}, {"generators", gens}, {"size", l.size()}});
    res.table.push_back({std::to_string(l.id), gens, std::to_string(l.size())});
    size.record_bool(l.size() == module.dim(), "id " + std::to_string(l.id));
    closed.record_bool(module.is_submodule(l.elements), "id " + std::to_string(l.id));
  }
  res.body["lagrangians"] = list;
  Check agree("B-orthogonal and anti-hermitian characterizations agree on every candidate");
  std::size_t candidates = 0;
  for (const auto& cand : module.submodule_candidates()) {
    ++candidates;
    agree.record_bool(module.is_lagrangian(cand.elements) == module.is_lagrangian_hermitian(cand.elements),
                      std::to_string(cand.elements.size()) + " elements");
  }
  res.body["candidates"] = candidates;
  Check base("<(0,1)> and <(1,0)> are Lagrangians");
  try {
    res.body["base_point"] = table->base_point();
    res.body["supplementary"] = table->supplementary();
    base.record_bool(true, "");
  } catch (const std::exception& e) {
    base.record_bool(false, e.what());
  }
  res.checks = {size, closed, agree, base};
  return res;
}

Result connection_verify(const RunConfig& c, const std::string& mode_name) {
  const RingPtr ring = build_ring(c);
  SelfDualModule module(ring);
  const auto table = build_table(module, c);
  StarGroup group(ring);
  Bundle bundle(*table, group);
  VerifyMode mode;
  if (mode_name.empty()) {
    mode = ring->degree_bound() == 1 ? VerifyMode::Exhaustive : VerifyMode::Sampled;
  } else if (mode_name == "exhaustive") {
    mode = VerifyMode::Exhaustive;
  } else if (mode_name == "sampled") {
    mode = VerifyMode::Sampled;
  } else {
    throw ConfigError("unknown mode '" + mode_name + "' (expected exhaustive or sampled)");
  }
  Result res;
  res.body["ring"] = describe(ring->spec());
  res.body["mode"] = mode == VerifyMode::Exhaustive ? "exhaustive" : "sampled";
  res.body["lagrangians"] = table->size();
  res.checks = verify_connection(bundle, mode, c.samples, c.seed, c.tolerance).properties;
  return res;
}

Result weil_build(const RunConfig& c, const std::string& method, const std::vector<std::string>& literals) {
  const bool geometric = method == "geometric";
  if (!geometric && method != "bruhat") throw ConfigError("unknown method '" + method + "' (expected bruhat or geometric)");
  const WeilSetup s = build_weil(c, geometric);
  const auto& ctx = *s.context;
  const auto& group = ctx.group();
  const Ring& r = *s.ring;
  auto op = [&](const StarMatrix& g) { return geometric ? s.geometric->sigma(g) : ctx.rho(g); };

  StarMatrix element = group.w();
  if (!literals.empty()) {
    if (literals.size() != 4) throw ConfigError("--element expects four ring-element literals");
    element = parse_matrix(r, literals[0], literals[1], literals[2], literals[3]);
    if (group.membership(element) != Membership::SLStar) throw ConfigError("element is not in SL_*(2, A)");
  }

  Result res;
  res.body["method"] = method;
  res.body["dim"] = ctx.dim();
  res.body["element"] = group.to_string(element);
  res.body["word"] = group.to_string(group.normal_form(element).word());
  res.body["matrix"] = matrix_to_json(op(element));

  Check unitary("generator operators are unitary");
  const auto id = OperatorMatrix::Identity(ctx.dim(), ctx.dim());
  std::vector<std::pair<std::string, StarMatrix>> gens;
  for (auto t : group.units()) gens.emplace_back("h(" + r.to_string(t) + ")", group.h(t));
  for (auto b : group.symmetric()) gens.emplace_back("u(" + r.to_string(b) + ")", group.u(b));
  gens.emplace_back("w", group.w());
  for (const auto& [name, g] : gens) {
    const OperatorMatrix m = op(g);
    unitary.record(max_abs(m.adjoint() * m - id), c.tolerance, [&] { return name; });
  }
  res.checks.push_back(unitary);

  std::mt19937_64 rng(c.seed);
  Check law(geometric ? "projective law with the formula cocycle" : "rho(g) rho(h) = rho(gh)");
  for (std::size_t i = 0; i < c.samples; ++i) {
    const StarMatrix g = group.sample(rng);
    const StarMatrix h = group.sample(rng);
    const Scalar scale = geometric ? s.geometric->cocycle_formula(g, h) : Scalar(1.0, 0.0);
    law.record(max_abs(op(g) * op(h) - scale * op(group.mul(g, h))), c.tolerance,
               [&] { return "g=" + group.to_string(g) + ", h=" + group.to_string(h); });
  }
  res.checks.push_back(law);
  return res;
}

nlohmann::json records_to_json(const StarGroup& group, const std::vector<CocycleRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : records) {
    out.push_back({{"g_word", word_to_json(group, r.g_word)},
                   {"h_word", word_to_json(group, r.h_word)},
                   {"c_formula", to_json(r.c_formula)},
                   {"c_operational", to_json(r.c_operational)},
                   {"delta_g", to_json(r.delta_g)},
                   {"delta_h", to_json(r.delta_h)},
                   {"delta_gh", to_json(r.delta_gh)},
                   {"residual", r.residual}});
  }
  return out;
}

std::vector<std::vector<std::string>> records_to_table(const StarGroup& group, const std::vector<CocycleRecord>& records) {
  std::vector<std::vector<std::string>> t{{"g_word", "h_word", "c_formula_re", "c_formula_im", "c_operational_re",
                                           "c_operational_im", "delta_g_re", "delta_g_im", "delta_h_re", "delta_h_im",
                                           "delta_gh_re", "delta_gh_im", "residual"}};
  for (const auto& r : records) {
    t.push_back({group.to_string(r.g_word), group.to_string(r.h_word), fmt(r.c_formula.real()),
                 fmt(r.c_formula.imag()), fmt(r.c_operational.real()), fmt(r.c_operational.imag()),
                 fmt(r.delta_g.real()), fmt(r.delta_g.imag()), fmt(r.delta_h.real()), fmt(r.delta_h.imag()),
                 fmt(r.delta_gh.real()), fmt(r.delta_gh.imag()), fmt(r.residual)});
  }
  return t;
}

Result weil_compare(const RunConfig& c) {
  const WeilSetup s = build_weil(c, true);
  const auto report = compare_representations(*s.geometric, c.samples, c.seed, c.tolerance);
  Result res;
  res.body["ring"] = describe(s.ring->spec());
  res.body["omega"] = to_json(report.omega);
  res.body["kappa"] = to_json(report.kappa);
  res.body["orientation"] = orientation_name(report.orientation);
  res.body["operational_orientation"] = orientation_name(report.operational_orientation);
  res.checks = report.checks;
  Check orient("a coboundary orientation holds on every sampled pair");
  orient.record_bool(report.orientation != Orientation::None, "neither orientation holds");
  res.checks.push_back(orient);
  res.diagnostics = report.diagnostics;
  return res;
}

Result cocycle_table(const RunConfig& c) {
  const WeilSetup s = build_weil(c, true);
  const auto report = verify_cocycle(*s.geometric, c.samples, c.seed, c.tolerance);
  Result res;
  res.body["ring"] = describe(s.ring->spec());
  res.body["records"] = records_to_json(s.context->group(), report.records);
  res.table = records_to_table(s.context->group(), report.records);
  res.checks = report.checks;
  res.diagnostics = report.diagnostics;
  return res;
}

Result character_table(const RunConfig& c) {
  const WeilSetup s = build_weil(c, true);
  const auto& ctx = *s.context;
  const auto& group = ctx.group();
  const auto bruhat = rep_character(RepKind::Bruhat, ctx, nullptr);
  const auto geometric = rep_character(RepKind::Geometric, ctx, s.geometric.get());
  Result res;
  res.body["ring"] = describe(s.ring->spec());
  res.body["order"] = bruhat.elements.size();
  const Scalar ip = character_inner_product(bruhat, bruhat);
  res.body["inner_product_bruhat"] = to_json(ip);
  res.body["inner_product_geometric"] = to_json(character_inner_product(geometric, geometric));
  res.body["inner_product_mixed"] = to_json(character_inner_product(bruhat, geometric));

  Check dim("chi(e) = q^m");
  Check inverse("chi(g^-1) = conj(chi(g))");
  Check integral("<chi, chi> is a positive integer");
  nlohmann::json list = nlohmann::json::array();
  res.table.push_back({"element", "bruhat_re", "bruhat_im", "geometric_re", "geometric_im"});
  for (std::size_t i = 0; i < bruhat.elements.size(); ++i) {
    const auto& g = bruhat.elements[i];
    if (g == group.identity()) {
      dim.record(std::abs(bruhat.values[i] - Scalar(ctx.dim(), 0.0)), c.tolerance, [] { return std::string("e"); });
    }
    const auto gi = group.inv(g);
    const auto it = std::lower_bound(bruhat.elements.begin(), bruhat.elements.end(), gi);
    inverse.record(std::abs(bruhat.values[it - bruhat.elements.begin()] - std::conj(bruhat.values[i])), c.tolerance,
                   [&] { return group.to_string(g); });
    list.push_back({{"element", group.to_string(g)},
                    {"bruhat", to_json(bruhat.values[i])},
                    {"geometric", to_json(geometric.values[i])}});
    res.table.push_back({group.to_string(g), fmt(bruhat.values[i].real()), fmt(bruhat.values[i].imag()),
                         fmt(geometric.values[i].real()), fmt(geometric.values[i].imag())});
  }
  const double nearest = std::round(ip.real());
  integral.record(std::max(std::abs(ip - Scalar(nearest, 0.0)), nearest >= 1.0 ? 0.0 : 1.0), 1e-6,
                  [&] { return "<chi, chi> = " + fmt(ip.real()); });
  res.checks = {dim, inverse, integral};
  res.body["characters"] = list;
  return res;
}

// ---------------------------------------------------------------------------

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void emit(const std::string& command, const RunConfig& c, const Result& res, bool passed, std::ostream& out) {
  switch (c.output) {
    case OutputFormat::Json: {
      nlohmann::json report;
      report["schema_version"] = kReportSchemaVersion;
      report["command"] = command;
      report["config"] = config_to_json(c);
      report["status"] = passed ? "pass" : "fail";
      report["checks"] = to_json(res.checks);
      if (!res.diagnostics.empty()) report["diagnostics"] = to_json(res.diagnostics);
      for (const auto& [k, v] : res.body.items()) report[k] = v;
      out << report.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv: {
      std::vector<std::vector<std::string>> table = res.table;
      if (table.empty()) {
        table.push_back({"check", "status", "checked", "failures", "max_deviation"});
        for (const auto* list : {&res.checks, &res.diagnostics}) {
          for (const auto& ch : *list) {
            table.push_back({ch.name, ch.passed() ? "pass" : "fail", std::to_string(ch.checked),
                             std::to_string(ch.failures), fmt(ch.max_deviation)});
          }
        }
      }
      for (const auto& row : table) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
        out << '\n';
      }
      break;
    }
    case OutputFormat::Text: {
      out << command << ": " << (passed ? "PASS" : "FAIL") << '\n';
      out << "ring: " << describe(c.ring) << '\n';
      for (const auto& [k, v] : res.body.items()) {
        if (k == "ring") continue;
        if (v.is_array() && v.size() > 8) {
          out << k << ": " << v.size() << " entries\n";
        } else {
          out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        }
      }
      auto line = [&](const Check& ch, const char* tag) {
        out << tag << (ch.passed() ? "PASS  " : "FAIL  ") << ch.name << "  (" << ch.checked << " checked, "
            << ch.failures << " failed, max deviation " << ch.max_deviation << ")\n";
        for (const auto& w : ch.witnesses) out << "        witness: " << w << '\n';
      };
      for (const auto& ch : res.checks) line(ch, "");
      for (const auto& ch : res.diagnostics) line(ch, "[info] ");
      break;
    }
  }
}

nlohmann::json witness_list(const std::vector<Check>& checks) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& ch : checks) {
    if (!ch.passed()) failures.push_back({{"check", ch.name}, {"failures", ch.failures}, {"witnesses", ch.witnesses}});
  }
  return {{"status", "fail"}, {"failures", failures}};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weil representations of SL_*(2, A) over finite involutive rings", "weilstar"};
  app.require_subcommand(1);
  Options o;

  std::string command;
  std::function<Result(const RunConfig&)> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, const std::string& full,
                  std::function<Result(const RunConfig&)> fn) {
    CLI::App* cmd = parent->add_subcommand(name, help);
    add_common(cmd, o);
    cmd->callback([&, full, fn] {
      command = full;
      action = fn;
    });
    return cmd;
  };

  CLI::App* ring = app.add_subcommand("ring", "Ring information")->require_subcommand(1);
  leaf(ring, "info", "Sizes, involution axioms and Gauss sums", "ring info", ring_info);

  CLI::App* group = app.add_subcommand("group", "The group SL_*(2, A)")->require_subcommand(1);
  auto* enumerate = leaf(group, "enumerate", "Enumerate the group by breadth-first closure", "group enumerate",
                         [&](const RunConfig& c) { return group_enumerate(c, o.limit); });
  enumerate->add_option("--limit", o.limit, "Maximum group order");
  leaf(group, "verify-relations", "Check the presentation relations", "group verify-relations", group_verify_relations);
  auto* nf = leaf(group, "normal-form", "Bruhat normal form of a matrix", "group normal-form",
                  [&](const RunConfig& c) { return group_normal_form(c, o.element); });
  nf->add_option("entries", o.element, "Ring-element literals a b c d (comma-separated payloads)")->expected(4);

  CLI::App* lag = app.add_subcommand("lagrangians", "Lagrangians of W = A + A")->require_subcommand(1);
  leaf(lag, "enumerate", "Enumerate all Lagrangians", "lagrangians enumerate", lagrangians_enumerate);

  CLI::App* conn = app.add_subcommand("connection", "The connection on the Lagrangian bundle")->require_subcommand(1);
  auto* cv = leaf(conn, "verify", "Check connection properties a) to e)", "connection verify",
                  [&](const RunConfig& c) { return connection_verify(c, o.mode); });
  cv->add_option("--mode", o.mode, "exhaustive or sampled");

  CLI::App* weil = app.add_subcommand("weil", "Weil representations")->require_subcommand(1);
  auto* build = leaf(weil, "build", "Build Weil operators", "weil build",
                     [&](const RunConfig& c) { return weil_build(c, o.method, o.element); });
  build->add_option("--method", o.method, "bruhat or geometric");
  build->add_option("--element", o.element, "Ring-element literals a b c d")->expected(4);
  leaf(weil, "compare", "Compare the two constructions", "weil compare", weil_compare);

  CLI::App* coc = app.add_subcommand("cocycle", "The geometric 2-cocycle")->require_subcommand(1);
  leaf(coc, "table", "Cocycle values on sampled pairs", "cocycle table", cocycle_table);

  CLI::App* chr = app.add_subcommand("character", "Characters of the Weil representations")->require_subcommand(1);
  leaf(chr, "table", "Character values and inner products", "character table", character_table);

  try {
    // CLI11 consumes the vector from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  RunConfig config;
  Result result;
  try {
    config = make_config(o);
    result = action(config);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    Check internal("internal error");
    internal.record_bool(false, e.what());
    err << witness_list({internal}).dump(2) << '\n';
    return 1;
  }

  const bool passed = std::all_of(result.checks.begin(), result.checks.end(), [](const Check& c) { return c.passed(); });
  if (o.report_path.empty()) {
    emit(command, config, result, passed, out);
  } else {
    std::ofstream file(o.report_path);
    if (!file) {
      err << "error: cannot write " << o.report_path << '\n';
      return 2;
    }
    emit(command, config, result, passed, file);
  }
  if (!passed) {
    err << witness_list(result.checks).dump(2) << '\n';
    return 1;
  }
  return 0;
}

}  // namespace weilstar
