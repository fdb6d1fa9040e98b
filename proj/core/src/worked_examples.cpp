#include <effgen/worked_examples.hpp>

#include <algorithm>
#include <stdexcept>

namespace effgen {

std::string to_display(const TorusDivisor& D) {
  std::string out;
  const ToricSurface& X = D.surface();
  for (int i = 0; i < X.ray_count(); ++i) {
    if (D.coeff(i) == 0) continue;
    if (!out.empty()) out += " + ";
    out += rat_to_string(D.coeff(i)) + "*D(" + X.ray(i).x.str() + "," + X.ray(i).y.str() + ")";
  }
  return out.empty() ? "0" : out;
}

namespace {

int cone_index_of(const ToricSurface& X, const LatticePoint& a, const LatticePoint& b) {
  auto i = X.ray_index(a);
  if (!i || !(X.ray((*i + 1) % X.ray_count()) == b))
    throw std::logic_error("expected adjacent rays are not a cone");
  return *i;
}

TorusDivisor ray_class(const ToricSurface& X, const LatticePoint& v) {
  auto i = X.ray_index(v);
  if (!i) throw std::logic_error("missing ray");
  return TorusDivisor::ray_divisor(X, *i);
}

}  // namespace

Int chain_nef_threshold(const Int& r) {
  if (r < 2) throw std::invalid_argument("chain length must be at least 2");
  // Rebuild the surface and sweep the nef inequalities exactly.
  ToricSurface X = ToricSurface::from_rays({{1, 0}, {0, 1}, {-1, -1}});
  X = blow_up(X, cone_index_of(X, {1, 0}, {0, 1})).first;
  for (Int i = 2; i <= r; ++i)
    X = blow_up(X, cone_index_of(X, {1, i - 1}, {0, 1})).first;

  TorusDivisor h = ray_class(X, {-1, -1});
  TorusDivisor G = TorusDivisor::zero(X);
  for (Int i = 1; i <= r; ++i) G += Rat(i, r) * ray_class(X, {1, i});

  Int threshold = 1;
  for (int j = 0; j < X.ray_count(); ++j) {
    Rat hdeg = divisor_curve_degree(h, j);
    Rat gdeg = divisor_curve_degree(G, j);
    if (hdeg == 0) {
      if (2 * r * gdeg > 0) throw std::logic_error("no multiple of h dominates G on this curve");
      continue;
    }
    threshold = std::max(threshold, rat_ceil(2 * r * gdeg / hdeg));
  }
  return threshold;
}

ExampleInstance build_Xr(const Int& r, const Int& a_nef) {
  if (r < 2) throw std::invalid_argument("chain length must be at least 2");
  Int threshold = chain_nef_threshold(r);
  if (a_nef < threshold)
    throw std::invalid_argument("a*h - 2r*G is not nef for a = " + a_nef.str() +
                                "; the smallest admissible a is " + threshold.str());

  ExampleInstance inst;
  inst.name = "chain-blowup r=" + r.str() + " a=" + a_nef.str();

  ToricSurface X = ToricSurface::from_rays({{1, 0}, {0, 1}, {-1, -1}});
  X = blow_up(X, cone_index_of(X, {1, 0}, {0, 1})).first;
  for (Int i = 2; i <= r; ++i)
    X = blow_up(X, cone_index_of(X, {1, i - 1}, {0, 1})).first;
  inst.surface = X;

  TorusDivisor B = Rat(a_nef) * ray_class(X, {-1, -1});
  for (Int i = 1; i <= r; ++i)
    B += (Rat(1, 2) - Rat(2) * i) * ray_class(X, {1, i});
  inst.boundary_class = B;
  inst.adjoint = canonical_divisor(X) + B;

  TorusDivisor fix = TorusDivisor::zero(X);
  for (Int i = 1; i < r; ++i) fix += Rat(r - i, 2 * r) * ray_class(X, {1, i});
  inst.expected_divisors.push_back(
      {"asymptotic-fix", fix, "(1/(2r)) * sum_{i<r} (r-i) e_i"});

  for (Int i = 1; i < r; ++i) inst.expected_contracted.push_back({1, i});

  for (Int i = 1; i < r; ++i) inst.curve_squares.push_back({{1, i}, Rat(-2)});
  inst.curve_squares.push_back({{1, r}, Rat(-1)});

  inst.generation_target = Rat(2) * inst.adjoint;
  inst.generation_lower_bound = r;
  inst.fix_horizon = 8 * r;
  return inst;
}

ExampleInstance build_Fr(const Int& r) {
  if (r < 3) throw std::invalid_argument("degree must be at least 3");
  ExampleInstance inst;
  inst.name = "hirzebruch r=" + r.str();

  ToricSurface X = ToricSurface::from_rays({{1, 0}, {0, 1}, {-1, r}, {0, -1}});
  inst.surface = X;

  TorusDivisor S = ray_class(X, {0, 1});
  TorusDivisor H = ray_class(X, {0, -1});
  inst.boundary_class = S + Rat(2) * H;
  inst.adjoint = canonical_divisor(X) + inst.boundary_class;

  inst.expected_divisors.push_back({"asymptotic-fix", Rat(2, r) * S, "(2/r) * S"});
  inst.expected_contracted = {{0, 1}};
  inst.curve_squares = {{{0, 1}, Rat(-r)}, {{0, -1}, Rat(r)}};
  inst.fix_horizon = 4 * r;
  return inst;
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

VerifyReport verify(const ExampleInstance& instance) {
  VerifyReport report;
  report.instance = instance.name;
  auto add = [&report](std::string name, bool pass, std::string expected, std::string actual) {
    report.checks.push_back({std::move(name), pass, std::move(expected), std::move(actual)});
  };

  for (const auto& cs : instance.curve_squares) {
    auto idx = instance.surface.ray_index(cs.ray);
    Rat actual = instance.surface.curve_self_intersection(*idx);
    add("square of D(" + cs.ray.x.str() + "," + cs.ray.y.str() + ")", actual == cs.expected,
        rat_to_string(cs.expected), rat_to_string(actual));
  }

  LTMResult ltm = run_ltm(instance.surface, instance.boundary_class);
  add("adjoint minimal model reached", ltm.outcome == LTMOutcome::minimal_model,
      "minimal-model", to_string(ltm.outcome));

  std::vector<LatticePoint> contracted;
  for (const auto& s : ltm.steps) contracted.push_back(s.contracted_ray);
  std::sort(contracted.begin(), contracted.end());
  auto expected_contracted = instance.expected_contracted;
  std::sort(expected_contracted.begin(), expected_contracted.end());
  add("contracted rays", contracted == expected_contracted,
      std::to_string(expected_contracted.size()) + " rays",
      std::to_string(contracted.size()) + " rays");

  ZariskiDecomp Z = zariski(instance.adjoint);
  add("decomposition matches minimal model", ltm.exceptional == Z.negative,
      to_display(Z.negative), to_display(ltm.exceptional));

  for (const auto& exp : instance.expected_divisors) {
    if (exp.name != "asymptotic-fix") continue;
    add("asymptotic fixed part", Z.negative == exp.value, to_display(exp.value),
        to_display(Z.negative));
    AsymptoticFixReport fix = asymptotic_fix(instance.adjoint, instance.fix_horizon);
    bool gaps_ok = true;
    for (const auto& e : fix.entries) gaps_ok = gaps_ok && e.gap.is_effective();
    add("fixed parts dominate the limit", gaps_ok, "all gaps >= 0",
        gaps_ok ? "all gaps >= 0" : "negative gap");
    add("fixed parts converge", fix.converged && fix.limit == exp.value,
        "gap 0 at multiples of " + fix.index.str(), fix.converged ? "converged" : "no");
  }

  if (instance.generation_target && instance.generation_lower_bound) {
    GenerationCertificate cert = generation_degree(*instance.generation_target);
    add("generation degree lower bound",
        cert.generation_degree >= *instance.generation_lower_bound,
        ">= " + instance.generation_lower_bound->str(), cert.generation_degree.str());
  }
  return report;
}

}  // namespace effgen
