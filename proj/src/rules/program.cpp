#include "virtrep/rules/program.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "virtrep/rdf/iri.hpp"
#include "virtrep/rdf/syntax.hpp"
#include "virtrep/rdf/vocabulary.hpp"

namespace virtrep::rules {

namespace {

struct BuiltinInfo {
  Builtin builtin;
  std::string_view name;
  bool arithmetic;
};

constexpr std::array<BuiltinInfo, 9> kBuiltins = {{
    {Builtin::Sum, "sum", true},
    {Builtin::Difference, "difference", true},
    {Builtin::Product, "product", true},
    {Builtin::Quotient, "quotient", true},
    {Builtin::GreaterThan, "greaterThan", false},
    {Builtin::LessThan, "lessThan", false},
    {Builtin::NotGreaterThan, "notGreaterThan", false},
    {Builtin::NotLessThan, "notLessThan", false},
    {Builtin::EqualTo, "equalTo", false},
}};

const BuiltinInfo& info(Builtin b) {
  return *std::find_if(kBuiltins.begin(), kBuiltins.end(), [&](const auto& i) { return i.builtin == b; });
}

void add_variable(const PatternTerm& t, std::set<std::string>& out) {
  if (auto* v = std::get_if<rdf::Variable>(&t)) out.insert(v->name);
}

std::vector<std::string> input_variables(const BuiltinAtom& atom) {
  std::vector<std::string> out;
  for (const auto& arg : atom.arguments) {
    if (auto* v = std::get_if<rdf::Variable>(&arg)) out.push_back(v->name);
  }
  return out;
}

bool arity_ok(const BuiltinAtom& atom) {
  if (atom.arguments.size() != 2) return false;
  return is_arithmetic(atom.builtin) == atom.output.has_value();
}

// Greedy ordering: a builtin becomes runnable once its inputs are bound by
// triple patterns or by earlier builtins' outputs.
struct Ordering {
  std::vector<BuiltinAtom> ordered;
  std::vector<BuiltinAtom> stuck;
  std::set<std::string> bound;
};

Ordering order_builtins(const Rule& rule) {
  Ordering o;
  for (const auto& p : rule.patterns()) {
    for (auto& v : p.variables()) o.bound.insert(v);
  }
  std::vector<BuiltinAtom> pending = rule.builtins();
  bool progress = true;
  while (progress && !pending.empty()) {
    progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      auto inputs = input_variables(*it);
      bool ready = std::all_of(inputs.begin(), inputs.end(), [&](const auto& v) { return o.bound.contains(v); });
      if (ready) {
        if (it->output) add_variable(*it->output, o.bound);
        o.ordered.push_back(*it);
        it = pending.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  o.stuck = std::move(pending);
  return o;
}

// ------------------------------------------------------------------ parsing

using rdf::syntax::Node;
using rdf::syntax::Statement;

class ProgramBuilder {
 public:
  ProgramBuilder(std::string_view text, std::string_view base)
      : parser_(text, std::string(base), rdf::syntax::Dialect{true, true, true}) {}

  Program build() {
    auto statements = parser_.parse_document();
    Rule facts;
    for (const auto& st : statements) {
      const rdf::Term* pred = st.predicate.term();
      if (pred && pred->value() == rdf::log::kImplies) {
        program_.rules.push_back(rule(st));
      } else if (pred && is_request_predicate(pred->value()) && st.subject.term() && st.subject.term()->is_blank()) {
        request_fact(st);
      } else {
        facts.head.push_back(ground(st));
      }
    }
    finish_requests();
    if (!facts.head.empty()) program_.rules.push_back(std::move(facts));
    return std::move(program_);
  }

 private:
  struct PendingRequest {
    const Node* method = nullptr;
    const Node* target = nullptr;
    const Node* first = nullptr;
  };

  [[noreturn]] void fail(const Node& at, const std::string& message) {
    throw rdf::SyntaxError(message, at.line, at.column);
  }

  static bool is_request_predicate(std::string_view iri) {
    return iri == rdf::http_vocab::kMethod || iri == rdf::http_vocab::kRequestUri;
  }

  void request_fact(const Statement& st) {
    const std::string& label = st.subject.term()->value();
    auto [it, inserted] = requests_.try_emplace(label);
    if (inserted) request_order_.push_back(label);
    PendingRequest& r = it->second;
    if (!r.first) r.first = &st.subject;
    const Node*& slot = st.predicate.term()->value() == rdf::http_vocab::kMethod ? r.method : r.target;
    if (slot) fail(st.object, "request has more than one " + st.predicate.term()->to_string());
    slot = &st.object;
  }

  void finish_requests() {
    for (const auto& label : request_order_) {
      const PendingRequest& r = requests_.at(label);
      if (!r.method) fail(*r.first, "request is missing http:mthd");
      if (!r.target) fail(*r.first, "request is missing http:requestURI");
      const rdf::Term* m = r.method->term();
      if (!m || m->value() != rdf::http_vocab::kGet) fail(*r.method, "only httpm:GET requests are supported");
      const rdf::Term* t = r.target->term();
      if (!t || (!t->is_iri() && !t->is_literal()) || !rdf::is_absolute_iri(t->value())) {
        fail(*r.target, "http:requestURI must be an absolute IRI");
      }
      program_.requests.push_back(RequestDirective{"GET", t->value()});
    }
  }

  PatternTerm body_term(const Node& n) {
    if (auto* v = n.variable()) return *v;
    if (auto* t = n.term()) {
      // Blank nodes in a rule body are existential: treat them as variables.
      if (t->is_blank()) return rdf::Variable{"_:" + t->value()};
      return *t;
    }
    fail(n, "nested formulas and lists are only allowed as builtin arguments");
  }

  PatternTerm head_term(const Node& n) {
    if (auto* v = n.variable()) return *v;
    if (auto* t = n.term()) {
      if (t->is_blank()) fail(n, "blank nodes are not supported in rule heads");
      return *t;
    }
    fail(n, "nested formulas and lists are not supported in rule heads");
  }

  TriplePattern ground(const Statement& st) {
    auto term = [&](const Node& n) -> PatternTerm {
      if (auto* t = n.term()) return *t;
      fail(n, "top-level statements must be ground facts, request facts or rules");
    };
    return TriplePattern{term(st.subject), term(st.predicate), term(st.object)};
  }

  Rule rule(const Statement& st) {
    const auto* body = st.subject.formula();
    const auto* head = st.object.formula();
    if (!body || !head) fail(st.predicate, "'=>' must connect two formulas");
    Rule r;
    for (const auto& s : body->statements) {
      const rdf::Term* pred = s.predicate.term();
      if (pred && pred->is_iri() && pred->value().starts_with(rdf::math::kNamespace)) {
        r.body.emplace_back(builtin(s));
      } else {
        r.body.emplace_back(TriplePattern{body_term(s.subject), body_term(s.predicate), body_term(s.object)});
      }
    }
    for (const auto& s : head->statements) {
      const rdf::Term* pred = s.predicate.term();
      if (pred && pred->is_iri() && pred->value().starts_with(rdf::math::kNamespace)) {
        fail(s.predicate, "builtins cannot appear in a rule head");
      }
      r.head.push_back(TriplePattern{head_term(s.subject), head_term(s.predicate), head_term(s.object)});
    }
    return r;
  }

  BuiltinAtom builtin(const Statement& s) {
    auto b = builtin_from_iri(s.predicate.term()->value());
    if (!b) fail(s.predicate, "unsupported builtin " + s.predicate.term()->to_string());
    BuiltinAtom atom{*b, {}, std::nullopt};
    if (is_arithmetic(*b)) {
      const auto* args = s.subject.list();
      if (!args) fail(s.subject, "math:" + std::string(builtin_name(*b)) + " expects an argument list ( a b )");
      for (const auto& n : *args) atom.arguments.push_back(body_term(n));
      atom.output = body_term(s.object);
    } else {
      if (s.subject.list()) fail(s.subject, "math:" + std::string(builtin_name(*b)) + " compares two terms");
      atom.arguments.push_back(body_term(s.subject));
      atom.arguments.push_back(body_term(s.object));
    }
    return atom;
  }

  rdf::syntax::TriplesParser parser_;
  Program program_;
  std::map<std::string, PendingRequest> requests_;
  std::vector<std::string> request_order_;
};

}  // namespace

std::optional<Builtin> builtin_from_iri(std::string_view iri) {
  if (!iri.starts_with(rdf::math::kNamespace)) return std::nullopt;
  iri.remove_prefix(rdf::math::kNamespace.size());
  for (const auto& i : kBuiltins) {
    if (i.name == iri) return i.builtin;
  }
  return std::nullopt;
}

std::string_view builtin_name(Builtin b) { return info(b).name; }

bool is_arithmetic(Builtin b) { return info(b).arithmetic; }

std::vector<TriplePattern> Rule::patterns() const {
  std::vector<TriplePattern> out;
  for (const auto& atom : body) {
    if (auto* p = std::get_if<TriplePattern>(&atom)) out.push_back(*p);
  }
  return out;
}

std::vector<BuiltinAtom> Rule::builtins() const {
  std::vector<BuiltinAtom> out;
  for (const auto& atom : body) {
    if (auto* b = std::get_if<BuiltinAtom>(&atom)) out.push_back(*b);
  }
  return out;
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::UnsafeHeadVariable: return "UnsafeHeadVariable";
    case Violation::Kind::UnboundBuiltinInput: return "UnboundBuiltinInput";
    case Violation::Kind::BuiltinArity: return "BuiltinArity";
  }
  return "Unknown";
}

std::vector<Violation> validate_program(const Program& p) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const Rule& rule = p.rules[i];
    for (const auto& b : rule.builtins()) {
      if (!arity_ok(b)) {
        out.push_back({i, Violation::Kind::BuiltinArity, "",
                       "math:" + std::string(builtin_name(b.builtin)) +
                           (is_arithmetic(b.builtin) ? " needs two inputs and an output" : " needs two inputs")});
      }
    }
    Ordering o = order_builtins(rule);
    std::set<std::string> reported;
    for (const auto& b : o.stuck) {
      for (const auto& v : input_variables(b)) {
        if (!o.bound.contains(v) && reported.insert(v).second) {
          out.push_back({i, Violation::Kind::UnboundBuiltinInput, v,
                         "input ?" + v + " of math:" + std::string(builtin_name(b.builtin)) + " is never bound"});
        }
      }
    }
    std::set<std::string> head_vars;
    for (const auto& h : rule.head) {
      for (auto& v : h.variables()) head_vars.insert(v);
    }
    for (const auto& v : head_vars) {
      if (!o.bound.contains(v)) {
        out.push_back({i, Violation::Kind::UnsafeHeadVariable, v, "head variable ?" + v + " is not bound by the body"});
      }
    }
  }
  return out;
}

std::vector<BuiltinAtom> evaluation_order(const Rule& rule) { return order_builtins(rule).ordered; }

SafetyError::SafetyError(Violation v)
    : std::runtime_error("rule " + std::to_string(v.rule) + ": " + v.message), violation_(std::move(v)) {}

Program parse_program(std::string_view text, std::string_view base) {
  Program p = ProgramBuilder(text, base).build();
  auto violations = validate_program(p);
  if (!violations.empty()) throw SafetyError(std::move(violations.front()));
  return p;
}

}  // namespace virtrep::rules
