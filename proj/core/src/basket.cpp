#include <effgen/basket.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace effgen {

std::string to_string(SingKind k) {
  switch (k) {
    case SingKind::cyclic: return "cyclic";
    case SingKind::cA_r: return "cA/r";
    case SingKind::cAx_4: return "cAx/4";
    case SingKind::cD_2: return "cD/2";
    case SingKind::other: return "other";
  }
  return "?";
}

SingKind parse_sing_kind(const std::string& s) {
  if (s == "cyclic") return SingKind::cyclic;
  if (s == "cA/r") return SingKind::cA_r;
  if (s == "cAx/4") return SingKind::cAx_4;
  if (s == "cD/2") return SingKind::cD_2;
  if (s == "other") return SingKind::other;
  throw std::invalid_argument("unknown singularity kind \"" + s + "\"");
}

BasketPoint BasketPoint::cyclic(const Int& r) {
  if (r < 1) throw std::invalid_argument("cyclic index must be positive");
  return {SingKind::cyclic, r, 1};
}

BasketPoint BasketPoint::cA(const Int& r, const Int& aw) {
  if (r < 1 || aw < 1) throw std::invalid_argument("index and axial weight must be positive");
  return {SingKind::cA_r, r, aw};
}

BasketPoint BasketPoint::cAx4(const Int& aw) {
  if (aw < 1) throw std::invalid_argument("axial weight must be positive");
  return {SingKind::cAx_4, 4, aw};
}

BasketPoint BasketPoint::cD2(const Int& aw) {
  if (aw < 1) throw std::invalid_argument("axial weight must be positive");
  return {SingKind::cD_2, 2, aw};
}

std::vector<Int> BasketPoint::basket() const {
  std::vector<Int> out;
  switch (kind) {
    case SingKind::cyclic:
      out.push_back(index);
      break;
    case SingKind::cAx_4:
      out.push_back(4);
      for (Int i = 1; i < axial_weight; ++i) out.push_back(2);
      break;
    case SingKind::cA_r:
    case SingKind::cD_2:
    case SingKind::other:
      for (Int i = 0; i < axial_weight; ++i) out.push_back(index);
      break;
  }
  return out;
}

Int BasketPoint::xi_raw() const {
  Int total = 0;
  for (const Int& r : basket()) total += r;
  return total;
}

bool operator<(const BasketPoint& a, const BasketPoint& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.index != b.index) return a.index < b.index;
  return a.axial_weight < b.axial_weight;
}

ThreefoldModel ThreefoldModel::of(std::vector<BasketPoint> points) {
  ThreefoldModel m;
  for (auto& p : points)
    if (!p.trivial()) m.points.push_back(p);
  std::sort(m.points.begin(), m.points.end());
  return m;
}

Int ThreefoldModel::xi() const {
  Int total = 0;
  for (const auto& p : points) total += p.xi_raw();
  return total;
}

Int ThreefoldModel::aw() const {
  Int total = 0;
  for (const auto& p : points) total += p.axial_weight;
  return total;
}

namespace {

using Env = std::map<std::string, Int>;

// Integer linear expressions: numbers, variables, + - *, parentheses.
class ExprParser {
 public:
  ExprParser(const std::string& text, const Env& env) : text_(text), env_(env) {}

  Int parse() {
    Int v = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw std::invalid_argument("trailing input in expression \"" + text_ + "\"");
    return v;
  }

 private:
  Int expr() {
    Int v = term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v += term();
      } else if (peek() == '-') {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  Int term() {
    Int v = unary();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v *= unary();
      } else {
        return v;
      }
    }
  }

  Int unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    return atom();
  }

  Int atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Int v = expr();
      skip_ws();
      if (peek() != ')') throw std::invalid_argument("missing ')' in \"" + text_ + "\"");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Int(text_.substr(start, pos_ - start));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      auto it = env_.find(name);
      if (it == env_.end())
        throw std::invalid_argument("unknown variable \"" + name + "\" in expression");
      return it->second;
    }
    throw std::invalid_argument("malformed expression \"" + text_ + "\"");
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const std::string& text_;
  const Env& env_;
  std::size_t pos_ = 0;
};

Int eval_expr(const std::string& text, const Env& env) { return ExprParser(text, env).parse(); }

Env base_env(const BasketPoint& p) {
  return {{"index", p.index}, {"aw", p.axial_weight}};
}

bool rule_matches(const BlowupRule& rule, const BasketPoint& p) {
  if (rule.index_pattern && *rule.index_pattern != p.index) return false;
  return std::find(rule.applies_to.begin(), rule.applies_to.end(), p.kind) !=
         rule.applies_to.end();
}

}  // namespace

RuleRegistry RuleRegistry::builtin() {
  RuleRegistry reg;
  // a + b = k*index with k bounded by the axial weight; the split preserves
  // the basket index total. Plain cyclic quotients are the aw = 1 case.
  BlowupRule cAr;
  cAr.name = "cA-split";
  cAr.applies_to = {SingKind::cA_r, SingKind::cyclic};
  cAr.params = {{"k", "1", "aw"}, {"a", "1", "k*index-1"}};
  cAr.outputs = {{SingKind::cyclic, "a", "1"},
                 {SingKind::cyclic, "k*index-a", "1"},
                 {SingKind::cA_r, "index", "aw-k"}};
  cAr.xi_delta = 0;
  cAr.note = "minimal-discrepancy weighted blow-up at a cA/r or cyclic quotient point";
  reg.register_rule(cAr);

  // The index total drops by exactly one.
  BlowupRule cAx;
  cAx.name = "cAx4-step";
  cAx.applies_to = {SingKind::cAx_4};
  cAx.index_pattern = Int(4);
  cAx.params = {{"k", "0", "aw-1"}};
  cAx.outputs = {{SingKind::cyclic, "2*k+3", "1"}, {SingKind::cD_2, "2", "aw-k-1"}};
  cAx.xi_delta = -1;
  cAx.note = "minimal-discrepancy weighted blow-up at a cAx/4 point";
  reg.register_rule(cAx);
  return reg;
}

RuleRegistry RuleRegistry::empty() { return RuleRegistry{}; }

void RuleRegistry::register_rule(BlowupRule rule) {
  if (rule.name.empty()) throw std::invalid_argument("rule needs a name");
  for (const auto& r : rules_)
    if (r.name == rule.name) throw std::invalid_argument("duplicate rule name \"" + rule.name + "\"");
  if (rule.xi_delta < -2)
    throw std::invalid_argument("rule Xi delta below -2 is not admissible");
  if (rule.applies_to.empty()) throw std::invalid_argument("rule applies to no kind");
  if (rule.outputs.empty()) throw std::invalid_argument("rule has no outputs");
  // Parse check with a dummy environment so malformed expressions fail here.
  Env env{{"index", 2}, {"aw", 3}};
  for (const auto& p : rule.params) {
    eval_expr(p.min_expr, env);
    eval_expr(p.max_expr, env);
    env[p.name] = 1;
  }
  for (const auto& o : rule.outputs) {
    eval_expr(o.index_expr, env);
    eval_expr(o.aw_expr, env);
  }
  rules_.push_back(std::move(rule));
}

std::vector<const BlowupRule*> RuleRegistry::applicable(const BasketPoint& p) const {
  std::vector<const BlowupRule*> out;
  for (const auto& r : rules_)
    if (rule_matches(r, p)) out.push_back(&r);
  return out;
}

std::vector<BasketPoint> apply_rule(const BlowupRule& rule, const BasketPoint& point,
                                    const std::vector<std::pair<std::string, Int>>& params) {
  if (!rule_matches(rule, point))
    throw std::invalid_argument("rule \"" + rule.name + "\" does not apply to this point");
  Env env = base_env(point);
  if (params.size() != rule.params.size())
    throw std::invalid_argument("wrong number of parameters for rule \"" + rule.name + "\"");
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& spec = rule.params[i];
    if (params[i].first != spec.name)
      throw std::invalid_argument("parameter \"" + params[i].first + "\" does not match \"" +
                                  spec.name + "\"");
    Int lo = eval_expr(spec.min_expr, env);
    Int hi = eval_expr(spec.max_expr, env);
    if (params[i].second < lo || params[i].second > hi)
      throw std::invalid_argument("parameter \"" + spec.name + "\" out of range");
    env[spec.name] = params[i].second;
  }

  std::vector<BasketPoint> out;
  for (const auto& spec : rule.outputs) {
    Int index = eval_expr(spec.index_expr, env);
    Int aw = eval_expr(spec.aw_expr, env);
    if (aw < 1) continue;  // residual point absent for this parameter choice
    if (index < 1) throw std::invalid_argument("rule produced a non-positive index");
    out.push_back({spec.kind, index, aw});
  }

  Int delta = -point.xi_raw();
  for (const auto& p : out) delta += p.xi_raw();
  if (delta != rule.xi_delta)
    throw std::invalid_argument("rule \"" + rule.name + "\" violated its declared Xi delta");
  return out;
}

std::vector<BasketPoint> apply_cAr_blowup(const BasketPoint& point, const Int& k, const Int& a,
                                          const Int& b) {
  if (point.kind != SingKind::cA_r && point.kind != SingKind::cyclic)
    throw std::invalid_argument("point is not of type cA/r or cyclic");
  if (a < 1 || b < 1 || a + b != k * point.index)
    throw std::invalid_argument("need positive a, b with a + b = k * index");
  if (k < 1 || k > point.axial_weight)
    throw std::invalid_argument("need 1 <= k <= axial weight");
  const RuleRegistry reg = RuleRegistry::builtin();
  return apply_rule(reg.rules()[0], point, {{"k", k}, {"a", a}});
}

std::vector<BasketPoint> apply_cAx4_blowup(const BasketPoint& point, const Int& k) {
  if (point.kind != SingKind::cAx_4) throw std::invalid_argument("point is not of type cAx/4");
  if (k < 0 || k > point.axial_weight - 1)
    throw std::invalid_argument("need 0 <= k <= axial weight - 1");
  const RuleRegistry reg = RuleRegistry::builtin();
  return apply_rule(reg.rules()[1], point, {{"k", k}});
}

namespace {

struct SearchState {
  const RuleRegistry& registry;
  std::map<BasketPoint, std::optional<std::pair<Int, RuleApplication>>> memo;
  std::vector<BasketPoint> in_progress;
  std::vector<std::string> stuck_kinds;

  std::optional<Int> resolve(const BasketPoint& point) {
    auto it = memo.find(point);
    if (it != memo.end())
      return it->second ? std::optional<Int>(it->second->first) : std::nullopt;
    if (std::find(in_progress.begin(), in_progress.end(), point) != in_progress.end())
      return std::nullopt;  // registered-rule cycle; dead branch
    in_progress.push_back(point);

    std::optional<std::pair<Int, RuleApplication>> best;
    auto rules = registry.applicable(point);
    if (rules.empty()) stuck_kinds.push_back(to_string(point.kind));
    for (const auto* rule : rules) {
      enumerate_params(*rule, point, 0, {}, [&](const std::vector<std::pair<std::string, Int>>& params) {
        std::vector<BasketPoint> raw;
        try {
          raw = apply_rule(*rule, point, params);
        } catch (const std::invalid_argument&) {
          return;  // declared delta mismatch for this parameter choice
        }
        Int cost = 1;
        bool ok = true;
        for (const auto& child : raw) {
          if (child.trivial()) continue;
          auto c = resolve(child);
          if (!c) {
            ok = false;
            break;
          }
          cost += *c;
        }
        if (ok && (!best || cost < best->first))
          best = {cost, RuleApplication{point, rule->name, params, raw}};
      });
    }
    in_progress.pop_back();
    memo[point] = best;
    return best ? std::optional<Int>(best->first) : std::nullopt;
  }

  template <typename F>
  void enumerate_params(const BlowupRule& rule, const BasketPoint& point, std::size_t i,
                        std::vector<std::pair<std::string, Int>> chosen, const F& emit) {
    if (i == rule.params.size()) {
      emit(chosen);
      return;
    }
    Env env = base_env(point);
    for (const auto& [name, value] : chosen) env[name] = value;
    Int lo = eval_expr(rule.params[i].min_expr, env);
    Int hi = eval_expr(rule.params[i].max_expr, env);
    for (Int v = lo; v <= hi; ++v) {
      chosen.emplace_back(rule.params[i].name, v);
      enumerate_params(rule, point, i + 1, chosen, emit);
      chosen.pop_back();
    }
  }

  void expand(const BasketPoint& point, std::vector<RuleApplication>& out) {
    const auto& entry = memo.at(point);
    out.push_back(entry->second);
    for (const auto& child : entry->second.outputs_raw)
      if (!child.trivial()) expand(child, out);
  }
};

}  // namespace

WResolution w_resolve(const ThreefoldModel& model, const RuleRegistry& registry) {
  SearchState search{registry, {}, {}, {}};
  WResolution res;
  for (const auto& point : model.points) {
    if (!search.resolve(point)) {
      std::string kinds;
      std::sort(search.stuck_kinds.begin(), search.stuck_kinds.end());
      search.stuck_kinds.erase(std::unique(search.stuck_kinds.begin(), search.stuck_kinds.end()),
                               search.stuck_kinds.end());
      for (const auto& k : search.stuck_kinds) kinds += " " + k;
      throw std::invalid_argument("unsupported singularity type:" + kinds);
    }
  }
  for (const auto& point : model.points) search.expand(point, res.sequence);
  res.length = static_cast<Int>(res.sequence.size());
  return res;
}

std::string to_string(MMPStepKind k) {
  switch (k) {
    case MMPStepKind::flip: return "flip";
    case MMPStepKind::divisorial_to_curve: return "divisorial-to-curve";
    case MMPStepKind::divisorial_to_point: return "divisorial-to-point";
  }
  return "?";
}

RunReport validate_mmp_run(const MMPRun& run) {
  RunReport report;
  if (run.rho_start < 1) {
    report.valid = false;
    report.violations.push_back("Picard number must be positive");
    return report;
  }
  Int dep = 0, diff = 0;
  int step_no = 0;
  for (MMPStepKind step : run.steps) {
    ++step_no;
    switch (step) {
      case MMPStepKind::flip:
        ++report.flips;
        if (diff == 0)
          report.violations.push_back("step " + std::to_string(step_no) +
                                      ": flip with zero difficulty budget");
        else
          --diff;
        if (dep == 0)
          report.violations.push_back("step " + std::to_string(step_no) +
                                      ": flip with zero depth budget");
        else
          --dep;
        break;
      case MMPStepKind::divisorial_to_curve:
        ++report.divisorial;
        ++diff;
        break;
      case MMPStepKind::divisorial_to_point:
        ++report.divisorial;
        ++report.divisorial_to_point;
        ++diff;
        ++dep;
        break;
    }
  }
  if (report.divisorial > run.rho_start - 1)
    report.violations.push_back("divisorial contractions exceed the Picard budget rho - 1");
  report.dep_upper_final = dep;
  report.difficulty_upper_final = diff;
  report.xi_budget = 2 * report.divisorial_to_point;
  report.valid = report.violations.empty();
  return report;
}

BoundTrace xi_bound(const Int& rho) {
  if (rho < 1) throw std::invalid_argument("Picard number must be positive");
  BoundTrace t;
  TraceStep depth{"depth budget of one minimal model run", "dep <= #divisorial <= rho",
                  TraceOp::constant, {Rat(rho)}, {}, {}};
  TraceStep doubled{"basket index total from the depth budget", "Xi <= 2*dep",
                    TraceOp::product, {Rat(2)}, {0}, {}};
  t.steps.push_back(depth);
  t.steps[0].value = Rat(rho);
  t.steps.push_back(doubled);
  t.steps[1].value = Rat(2) * Rat(rho);
  t.value = t.steps[1].value;
  if (!replays_consistently(t)) throw std::logic_error("xi_bound trace failed to replay");
  return t;
}

BlowupRule parse_rule_record(const std::string& record_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(record_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed rule record: ") + e.what());
  }
  auto require = [&doc](const char* key) -> const nlohmann::json& {
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("rule record missing field \"") + key + "\"");
    return doc.at(key);
  };

  BlowupRule rule;
  rule.name = require("name").get<std::string>();
  for (const auto& k : require("applies_to"))
    rule.applies_to.push_back(parse_sing_kind(k.get<std::string>()));
  if (doc.contains("index") && !doc.at("index").is_null())
    rule.index_pattern = Int(doc.at("index").get<long long>());
  if (doc.contains("params")) {
    for (const auto& p : doc.at("params"))
      rule.params.push_back({p.at("name").get<std::string>(), p.at("min").get<std::string>(),
                             p.at("max").get<std::string>()});
  }
  for (const auto& o : require("outputs"))
    rule.outputs.push_back({parse_sing_kind(o.at("kind").get<std::string>()),
                            o.at("index").get<std::string>(), o.at("aw").get<std::string>()});
  rule.xi_delta = Int(require("xi_delta").get<long long>());
  if (doc.contains("analogy_flagged")) rule.analogy_flagged = doc.at("analogy_flagged").get<bool>();
  if (doc.contains("note")) rule.note = doc.at("note").get<std::string>();
  return rule;
}

std::string rule_record_schema() {
  return R"(rule record (JSON object):
  name            string, unique
  applies_to      list of kinds: "cyclic" | "cA/r" | "cAx/4" | "cD/2" | "other"
  index           optional integer restricting the index (omit for any)
  params          list of {name, min, max}; min/max are integer expressions
                  over "index", "aw" and earlier parameter names
  outputs         list of {kind, index, aw}; expressions as above; outputs
                  with axial weight < 1 are dropped
  xi_delta        integer >= -2: raw output Xi minus input Xi, checked at
                  every application
  analogy_flagged optional bool: marks rules inferred by analogy
  note            optional string)";
}

}  // namespace effgen
