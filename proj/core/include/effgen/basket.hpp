#pragma once

#include <effgen/bounds.hpp>

#include <optional>
#include <string>
#include <vector>

namespace effgen {

enum class SingKind { cyclic, cA_r, cAx_4, cD_2, other };

std::string to_string(SingKind k);
SingKind parse_sing_kind(const std::string& s);

/// One terminal point, recorded through its deformation basket. The basket
/// multiset is derived from (kind, index, axial weight):
///   cyclic          {r}, axial weight 1
///   cA/r            aw copies of r
///   cAx/4           one 4 and aw-1 copies of 2
///   cD/2, other     aw copies of the index (analogy, flagged in rules)
struct BasketPoint {
  SingKind kind{SingKind::cyclic};
  Int index{1};
  Int axial_weight{1};

  static BasketPoint cyclic(const Int& r);
  static BasketPoint cA(const Int& r, const Int& aw);
  static BasketPoint cAx4(const Int& aw);
  static BasketPoint cD2(const Int& aw);

  std::vector<Int> basket() const;
  /// Sum over the basket, counting index-1 entries. Normalized models drop
  /// trivial points, so the distinction only matters for raw rule outputs.
  Int xi_raw() const;
  bool trivial() const { return index == 1; }

  friend bool operator==(const BasketPoint&, const BasketPoint&) = default;
  friend bool operator<(const BasketPoint& a, const BasketPoint& b);
};

/// A multiset of basket points with trivial (index-1) points normalized away.
struct ThreefoldModel {
  std::vector<BasketPoint> points;  // sorted, no index-1 entries
  Int depth_upper{0};
  Int difficulty{0};

  static ThreefoldModel of(std::vector<BasketPoint> points);
  Int xi() const;
  Int aw() const;
  bool gorenstein() const { return points.empty(); }
};

struct ParamSpec {
  std::string name;
  std::string min_expr;
  std::string max_expr;
};

struct OutputSpec {
  SingKind kind{SingKind::cyclic};
  std::string index_expr;
  std::string aw_expr;  // outputs with axial weight < 1 are not emitted
};

/// A weighted-blow-up transformation rule on baskets. Expressions may use
/// `index`, `aw` and the rule's parameter names.
struct BlowupRule {
  std::string name;
  std::vector<SingKind> applies_to;
  std::optional<Int> index_pattern;  // restrict to one index; empty = any
  std::vector<ParamSpec> params;
  std::vector<OutputSpec> outputs;
  Int xi_delta{0};  // raw output Xi minus input Xi; must be >= -2
  bool analogy_flagged{false};
  std::string note;
};

/// Parses one registration record (a JSON document) into a rule.
BlowupRule parse_rule_record(const std::string& record_text);
std::string rule_record_schema();  // human-readable format description

class RuleRegistry {
 public:
  /// The two built-in transformation rules, applying to cA/r (also plain
  /// cyclic quotients, their axial-weight-1 case) and to cAx/4 points.
  static RuleRegistry builtin();
  static RuleRegistry empty();

  void register_rule(BlowupRule rule);
  const std::vector<BlowupRule>& rules() const { return rules_; }
  std::vector<const BlowupRule*> applicable(const BasketPoint& p) const;

 private:
  std::vector<BlowupRule> rules_;
};

struct RuleApplication {
  BasketPoint target;
  std::string rule;
  std::vector<std::pair<std::string, Int>> params;
  std::vector<BasketPoint> outputs_raw;  // includes index-1 points
};

/// Applies a rule with explicit parameters; validates the parameter
/// constraints and that the raw Xi delta equals the declared one.
std::vector<BasketPoint> apply_rule(const BlowupRule& rule, const BasketPoint& point,
                                    const std::vector<std::pair<std::string, Int>>& params);

/// cA/r rule: a + b = k * index with 1 <= k <= aw splits off cyclic points of
/// indices a and b, leaving a cA/r of axial weight aw - k when k < aw.
/// Raw Xi delta is 0.
std::vector<BasketPoint> apply_cAr_blowup(const BasketPoint& point, const Int& k, const Int& a,
                                          const Int& b);

/// cAx/4 rule: parameter 0 <= k <= aw - 1 produces a cyclic point of index
/// 2k+3 and, when aw > k+1, a cD/2 point of axial weight aw - k - 1.
/// Raw Xi delta is -1.
std::vector<BasketPoint> apply_cAx4_blowup(const BasketPoint& point, const Int& k);

struct WResolution {
  std::vector<RuleApplication> sequence;
  Int length{0};
};

/// Minimum-length rule sequence taking the model to the Gorenstein (empty)
/// state; the length is the model-level depth witness. Throws
/// std::invalid_argument("unsupported singularity type...") when some point
/// admits no registered rule chain.
WResolution w_resolve(const ThreefoldModel& model,
                      const RuleRegistry& registry = RuleRegistry::builtin());

enum class MMPStepKind { flip, divisorial_to_curve, divisorial_to_point };

std::string to_string(MMPStepKind k);

struct MMPRun {
  Int rho_start{1};
  std::vector<MMPStepKind> steps;
};

struct RunReport {
  bool valid{true};
  std::vector<std::string> violations;
  Int flips{0};
  Int divisorial{0};
  Int divisorial_to_point{0};
  Int dep_upper_final{0};
  Int difficulty_upper_final{0};
  Int xi_budget{0};  // 2 * divisorial_to_point
};

/// Ledger simulation of a minimal model run starting from a smooth variety:
/// flips need positive difficulty and depth budgets, divisorial contractions
/// raise the difficulty budget, and only contractions to a point raise the
/// depth budget. Divisorial steps may not exceed rho - 1.
RunReport validate_mmp_run(const MMPRun& run);

/// 2 * rho, as a replayable trace through the depth and index-sum bounds.
BoundTrace xi_bound(const Int& rho);

}  // namespace effgen
