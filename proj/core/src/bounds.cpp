#include <effgen/bounds.hpp>

#include <stdexcept>

namespace effgen {

namespace {

// Literal arguments precede step-reference arguments.
Rat eval_step(const BoundTrace& trace, const TraceStep& step) {
  std::vector<Rat> args = step.literal_args;
  for (int idx : step.step_args) {
    if (idx < 0 || idx >= static_cast<int>(trace.steps.size()))
      throw std::invalid_argument("trace step references a missing step");
    args.push_back(trace.steps[idx].value);
  }
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw std::invalid_argument("trace step has wrong arity");
  };
  switch (step.op) {
    case TraceOp::constant:
      need(1);
      return args[0];
    case TraceOp::factorial_of:
      need(1);
      if (!is_integer(args[0])) throw std::invalid_argument("factorial of non-integer");
      return Rat(factorial(rat_num(args[0])));
    case TraceOp::product: {
      Rat out = 1;
      for (const Rat& a : args) out *= a;
      return out;
    }
    case TraceOp::quotient:
      need(2);
      if (args[1] == 0) throw std::invalid_argument("trace quotient by zero");
      return args[0] / args[1];
    case TraceOp::power: {
      need(2);
      if (!is_integer(args[1]) || args[1] < 0)
        throw std::invalid_argument("trace power needs a non-negative integer exponent");
      Rat out = 1;
      for (Int i = 0; i < rat_num(args[1]); ++i) out *= args[0];
      return out;
    }
    case TraceOp::ceil_of:
      need(1);
      return Rat(rat_ceil(args[0]));
    case TraceOp::lcm_up_to:
      need(1);
      if (!is_integer(args[0])) throw std::invalid_argument("lcm bound must be an integer");
      return Rat(lcm_range(rat_num(args[0])));
  }
  throw std::logic_error("unknown trace op");
}

int push(BoundTrace& trace, TraceStep step) {
  step.value = eval_step(trace, step);
  trace.steps.push_back(std::move(step));
  return static_cast<int>(trace.steps.size()) - 1;
}

}  // namespace

Rat replay_value(const BoundTrace& trace) {
  if (trace.steps.empty()) throw std::invalid_argument("empty trace");
  BoundTrace scratch;
  for (const auto& step : trace.steps) {
    Rat recomputed = eval_step(scratch, step);
    if (recomputed != step.value) throw std::invalid_argument("trace step value drifted");
    scratch.steps.push_back(step);
  }
  return scratch.steps.back().value;
}

bool replays_consistently(const BoundTrace& trace) {
  try {
    if (trace.steps.empty()) return false;
    for (const auto& step : trace.steps)
      if (step.label.empty() || step.formula.empty()) return false;
    return replay_value(trace) == trace.value;
  } catch (const std::exception&) {
    return false;
  }
}

BoundTrace kollar_q(const Int& n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  BoundTrace t;
  push(t, {"dimension", "n", TraceOp::constant, {Rat(n)}, {}, {}});
  int sf = push(t, {"factorial of n+2", "(n+2)!", TraceOp::factorial_of, {Rat(n + 2)}, {}, {}});
  int sq = push(t, {"base-point-freeness multiple", "4*(n+2)!*(n+1)", TraceOp::product,
                    {Rat(4), Rat(n + 1)}, {sf}, {}});
  t.value = t.steps[sq].value;
  return t;
}

BoundTrace brieskorn_r(const Int& k, const Rat& epsilon) {
  if (k < 1) throw std::invalid_argument("curve count must be positive");
  if (epsilon <= 0 || epsilon > 1)
    throw std::invalid_argument("log discrepancy margin must lie in (0, 1]");
  BoundTrace t;
  int sk = push(t, {"squared curve count", "k^2", TraceOp::power, {Rat(k), Rat(2)}, {}, {}});
  int se = push(t, {"cubed margin", "eps^3", TraceOp::power, {epsilon, Rat(3)}, {}, {}});
  int sn = push(t, {"order numerator", "120*k^2", TraceOp::product, {Rat(120)}, {sk}, {}});
  int sr = push(t, {"group order bound", "120*k^2/eps^3", TraceOp::quotient, {}, {sn, se}, {}});
  push(t, {"integer order bound", "ceil(120*k^2/eps^3)", TraceOp::ceil_of, {}, {sr}, {}});
  t.value = t.steps[sr].value;
  return t;
}

Int trace_ceiling(const BoundTrace& trace) { return rat_ceil(trace.value); }

BoundTrace surface_m(const Int& a, const Int& p) {
  if (a < 1 || p < 1) throw std::invalid_argument("arguments must be positive");
  BoundTrace t;
  push(t, {"discrepancy margin", "eps = 1/a", TraceOp::quotient, {Rat(1), Rat(a)}, {}, {}});
  push(t, {"exceptional curve budget", "k = p", TraceOp::constant, {Rat(p)}, {}, {}});
  int s2 = push(t, {"squared curve budget", "k^2", TraceOp::power, {Rat(p), Rat(2)}, {}, {}});
  int s3 = push(t, {"cubed margin", "eps^3", TraceOp::power, {Rat(1, a), Rat(3)}, {}, {}});
  int sn = push(t, {"order numerator", "120*k^2", TraceOp::product, {Rat(120)}, {s2}, {}});
  int sr = push(t, {"local Cartier order bound", "r = 120*k^2/eps^3", TraceOp::quotient, {},
                    {sn, s3}, {}});
  int sc = push(t, {"integer Cartier order", "ceil(r)", TraceOp::ceil_of, {}, {sr}, {}});
  int sq = push(t, {"dimension-2 base-point-freeness factor", "q2 = 4*4!*3", TraceOp::constant,
                    {kollar_q(2).value}, {}, {}});
  int sm = push(t, {"generation-degree-4 multiple", "m = q2*a*r", TraceOp::product, {Rat(a)},
                    {sq, sc}, {}});
  t.value = t.steps[sm].value;
  t.flags.push_back(kNonEffectiveFlag);
  return t;
}

BoundTrace cartier_index_bound(const Int& rho) {
  if (rho < 1) throw std::invalid_argument("Picard number must be positive");
  BoundTrace t;
  int sx = push(t, {"local index ceiling", "max index <= Xi <= 2*rho", TraceOp::product,
                    {Rat(2), Rat(rho)}, {}, {}});
  int sl = push(t, {"global Cartier multiple", "lcm(1..2*rho)", TraceOp::lcm_up_to, {}, {sx}, {}});
  t.value = t.steps[sl].value;
  return t;
}

BoundTrace threefold_q(const Int& rho) {
  BoundTrace t;
  int sq = push(t, {"dimension-3 base-point-freeness factor", "q3 = 4*5!*4", TraceOp::constant,
                    {kollar_q(3).value}, {}, {}});
  int sr = push(t, {"Cartier index bound", "r = lcm(1..2*rho)", TraceOp::constant,
                    {cartier_index_bound(rho).value}, {}, {}});
  int sv = push(t, {"degree-5 generation multiple", "q = q3*r", TraceOp::product, {}, {sq, sr}, {}});
  t.value = t.steps[sv].value;
  t.flags.push_back(
      "cartier-multiple-reading: base-point-freeness factor taken independent of a; the Cartier "
      "multiple a re-enters downstream, which is the larger composed value");
  return t;
}

BoundTrace corollary_m(const Int& rho, const Int& a) {
  if (a < 1) throw std::invalid_argument("Cartier multiple must be positive");
  BoundTrace t;
  int sq = push(t, {"degree-5 generation multiple", "q(rho)", TraceOp::constant,
                    {threefold_q(rho).value}, {}, {}});
  int sf = push(t, {"degree factorial", "5!", TraceOp::factorial_of, {Rat(5)}, {}, {}});
  int sm = push(t, {"stable base locus multiple", "m = 5!*q*a", TraceOp::product, {Rat(a)},
                    {sq, sf}, {}});
  t.value = t.steps[sm].value;
  return t;
}

}  // namespace effgen
