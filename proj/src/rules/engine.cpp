#include "virtrep/rules/engine.hpp"

#include <string>
#include <vector>

#include "virtrep/rules/builtins.hpp"

namespace virtrep::rules {

namespace {

struct RulePlan {
  std::vector<TriplePattern> patterns;
  std::vector<BuiltinAtom> builtins;  // evaluable order
  std::vector<TriplePattern> head;
};

bool same_value(const rdf::Term& a, const rdf::Term& b) {
  auto x = a.numeric();
  auto y = b.numeric();
  if (x && y) return *x == *y;
  return a == b;
}

// Runs the builtins over a join result; false if any test fails.
bool run_builtins(const RulePlan& plan, rdf::Binding& b) {
  std::vector<rdf::Term> inputs;
  for (const auto& atom : plan.builtins) {
    inputs.clear();
    for (const auto& arg : atom.arguments) {
      auto t = rdf::resolve(arg, b);
      if (!t) return false;
      inputs.push_back(std::move(*t));
    }
    BuiltinResult r;
    try {
      r = apply_builtin(atom.builtin, inputs);
    } catch (const TypeMismatch&) {
      // Non-numeric data simply does not satisfy the body.
      return false;
    }
    switch (r.status) {
      case BuiltinResult::Status::Unsatisfied: return false;
      case BuiltinResult::Status::Satisfied: break;
      case BuiltinResult::Status::Value: {
        const auto& out = *atom.output;
        if (auto current = rdf::resolve(out, b)) {
          if (!same_value(*current, *r.value)) return false;
        } else {
          b.emplace(std::get<rdf::Variable>(out).name, std::move(*r.value));
        }
        break;
      }
    }
  }
  return true;
}

void fire(const RulePlan& plan, std::span<const rdf::Graph* const> sources, const rdf::Graph& full,
          rdf::Graph& fresh) {
  rdf::detail::join(plan.patterns, sources, rdf::Binding{}, [&](const rdf::Binding& joined) {
    rdf::Binding b = joined;
    if (!run_builtins(plan, b)) return;
    for (const auto& h : plan.head) {
      auto t = rdf::instantiate(h, b);
      if (t && !full.contains(*t)) fresh.insert(std::move(*t));
    }
  });
}

}  // namespace

NonTermination::NonTermination(std::size_t limit)
    : std::runtime_error("no fixpoint within " + std::to_string(limit) + " rounds"), limit_(limit) {}

rdf::Graph saturate(const Program& program, const rdf::Graph& base, EvaluationOptions options) {
  if (auto violations = validate_program(program); !violations.empty()) {
    throw SafetyError(std::move(violations.front()));
  }
  std::vector<RulePlan> plans;
  for (const auto& r : program.rules) plans.push_back({r.patterns(), evaluation_order(r), r.head});

  rdf::Graph full = base;
  rdf::Graph delta = base;
  std::vector<const rdf::Graph*> sources;
  for (std::size_t round = 1;; ++round) {
    rdf::Graph fresh;
    for (const auto& plan : plans) {
      if (round == 1) {
        sources.assign(plan.patterns.size(), &full);
        fire(plan, sources, full, fresh);
        continue;
      }
      // Only joins that use at least one triple from the last round can
      // produce something new.
      for (std::size_t i = 0; i < plan.patterns.size(); ++i) {
        sources.assign(plan.patterns.size(), &full);
        sources[i] = &delta;
        fire(plan, sources, full, fresh);
      }
    }
    if (fresh.empty()) return full;
    if (round > options.max_rounds) throw NonTermination(options.max_rounds);
    full.insert(fresh);
    delta = std::move(fresh);
  }
}

rdf::Graph evaluate(const Program& program, const rdf::Graph& seed, const Fetcher& fetcher,
                    EvaluationOptions options) {
  rdf::Graph input = seed;
  if (!program.requests.empty()) {
    if (!fetcher) throw std::invalid_argument("program has request directives but no fetcher was given");
    input.insert(fetcher(program.requests));
  }
  return saturate(program, input, options);
}

}  // namespace virtrep::rules
